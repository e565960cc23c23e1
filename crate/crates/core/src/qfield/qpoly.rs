//! Univariate polynomials in `q` with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial in `q` over the integers, stored sparsely.
///
/// Terms are `(exponent, coefficient)` pairs with strictly increasing exponents and
/// no zero coefficients; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    terms: Vec<(u32, BigInt)>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: BigInt, e: u32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            QPoly { terms: vec![(e, c)] }
        }
    }

    /// `q^e`.
    pub fn q_pow(e: u32) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, BigInt)>,
    {
        let mut v: Vec<(u32, BigInt)> = terms.into_iter().collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(u32, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        QPoly { terms: out }
    }

    fn from_dense(coeffs: Vec<BigInt>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u32, c))
            .collect();
        QPoly { terms }
    }

    fn to_dense(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.degree().map_or(0, |d| d as usize + 1)];
        for (e, c) in &self.terms {
            v[*e as usize] = c.clone();
        }
        v
    }

    pub fn terms(&self) -> &[(u32, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// True for a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn coeff(&self, e: u32) -> BigInt {
        self.terms
            .binary_search_by_key(&e, |(k, _)| *k)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide each of them.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        QPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    debug_assert!((k % c).is_zero());
                    (*e, k / c)
                })
                .collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift_up(&self, k: u32) -> Self {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Divides by `q^k`; `q^k` must divide the polynomial.
    pub fn shift_down(&self, k: u32) -> Self {
        QPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    debug_assert!(*e >= k);
                    (e - k, c.clone())
                })
                .collect(),
        }
    }

    /// `q^deg · p(1/q)`: the coefficient sequence reversed.
    pub fn reversed(&self) -> Self {
        let Some(d) = self.degree() else {
            return Self::zero();
        };
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (d - e, c.clone())).collect();
        terms.reverse();
        QPoly { terms }
    }

    pub fn neg(&self) -> Self {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ea, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        QPoly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (da, db) = (self.degree().unwrap(), other.degree().unwrap());
        let mut acc = vec![BigInt::zero(); (da + db) as usize + 1];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc[(ea + eb) as usize] += ca * cb;
            }
        }
        Self::from_dense(acc)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / divisor` in `Z[q]`. Returns `None` when the division
    /// leaves a remainder or needs non-integer coefficients.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        if divisor.is_monomial() {
            let (e, c) = &divisor.terms[0];
            if self.low_degree().unwrap() < *e || self.terms.iter().any(|(_, k)| !(k % c).is_zero()) {
                return None;
            }
            return Some(self.shift_down(*e).div_exact_scalar(c));
        }
        let mut rem = self.to_dense();
        let div = divisor.to_dense();
        let dd = div.len() - 1;
        if rem.len() < div.len() {
            return None;
        }
        let lc = &div[dd];
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, d) in div.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + i] -= &qk * d;
                }
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(quot))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    /// Greatest common divisor over the rationals, returned primitive with a
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let la = self.low_degree().unwrap();
        let lb = other.low_degree().unwrap();
        let shift = la.min(lb);
        let a = self.shift_down(la);
        let b = other.shift_down(lb);
        let core = if a.is_constant() || b.is_constant() {
            Self::one()
        } else {
            let (a, b) = (a.primitive_part(), b.primitive_part());
            heuristic_gcd(&a, &b).unwrap_or_else(|| prs_gcd(a, b))
        };
        core.shift_up(shift)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let dense = self.to_dense();
        let mut acc = BigRational::zero();
        for c in dense.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Parses the canonical text form produced by `Display`, e.g. `1-2*q+q^3`.
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        if s == "0" {
            return Some(Self::zero());
        }
        let mut terms = Vec::new();
        let bytes = s.as_bytes();
        let mut start = 0;
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
                terms.push(parse_term(&s[start..i])?);
                start = i;
            }
        }
        Some(Self::from_terms(terms))
    }
}

fn parse_term(t: &str) -> Option<(u32, BigInt)> {
    let (sign, body) = match t.as_bytes().first()? {
        b'+' => (BigInt::one(), &t[1..]),
        b'-' => (-BigInt::one(), &t[1..]),
        _ => (BigInt::one(), t),
    };
    if body.is_empty() {
        return None;
    }
    let (coeff, qpart) = match body.find('q') {
        None => (body.parse::<BigInt>().ok()?, None),
        Some(0) => (BigInt::one(), Some(&body[1..])),
        Some(i) => {
            let c = body[..i].strip_suffix('*')?;
            (c.parse::<BigInt>().ok()?, Some(&body[i + 1..]))
        }
    };
    let exp = match qpart {
        None => 0,
        Some("") => 1,
        Some(rest) => rest.strip_prefix('^')?.parse::<u32>().ok()?,
    };
    Some((exp, sign * coeff))
}

/// Primitive polynomial remainder sequence on primitive inputs.
fn max_norm(p: &QPoly) -> BigInt {
    p.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

fn eval_int(p: &QPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.to_dense().iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Heuristic gcd of primitive polynomials: evaluate at a large integer `xi`, take
/// the integer gcd, and read a polynomial back off its balanced base-`xi` digits.
/// With `xi > 2 min(|a|, |b|) + 1` the candidate is the gcd whenever it divides both
/// inputs. Returns `None` if no evaluation point succeeds.
fn heuristic_gcd(a: &QPoly, b: &QPoly) -> Option<QPoly> {
    let mut xi = BigInt::from(2) * max_norm(a).min(max_norm(b)) + 29;
    for _ in 0..6 {
        let mut gamma = eval_int(a, &xi).gcd(&eval_int(b, &xi));
        let half = &xi / 2;
        let mut digits = Vec::new();
        while !gamma.is_zero() {
            let mut d = gamma.mod_floor(&xi);
            if d > half {
                d -= &xi;
            }
            gamma = (gamma - &d) / &xi;
            digits.push(d);
        }
        let g = QPoly::from_dense(digits).primitive_part();
        if !g.is_zero() && a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
            return Some(g);
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn prs_gcd(a: QPoly, b: QPoly) -> QPoly {
    let (mut f, mut g) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    while !g.is_zero() {
        if g.degree() == Some(0) {
            return QPoly::one();
        }
        let r = pseudo_rem(&f, &g);
        f = g;
        g = r.primitive_part();
    }
    f.primitive_part()
}

fn pseudo_rem(f: &QPoly, g: &QPoly) -> QPoly {
    let mut r = f.to_dense();
    let gd = g.to_dense();
    let dg = gd.len() - 1;
    let lg = gd[dg].clone();
    while r.len() > dg {
        let lr = r.pop().unwrap();
        if lr.is_zero() {
            continue;
        }
        let k = r.len() - dg;
        for c in r.iter_mut() {
            *c *= &lg;
        }
        for (i, d) in gd.iter().take(dg).enumerate() {
            r[k + i] -= &lr * d;
        }
        // keep coefficient growth in check
        if r.len() > 8 {
            let mut cont = BigInt::zero();
            for c in &r {
                cont = cont.gcd(c);
            }
            if cont > BigInt::one() {
                for c in r.iter_mut() {
                    *c /= &cont;
                }
            }
        }
    }
    QPoly::from_dense(r)
}

impl fmt::Display for QPoly {
    /// Ascending powers, no spaces: `1-q+3*q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "q")?,
                (_, false) => write!(f, "{mag}*q")?,
            }
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
