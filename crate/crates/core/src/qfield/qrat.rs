use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::QPoly;
use crate::error::{Error, Result};

/// An element of `Q(q)` in canonical reduced form.
///
/// `num` and `den` are coprime over the rationals, their joint integer content is
/// one, and `den` has a positive leading coefficient. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl Default for QRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl QRat {
    pub fn zero() -> Self {
        QRat {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        QRat {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        QRat {
            num: QPoly::constant(BigInt::from(n)),
            den: QPoly::one(),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(QPoly::constant(n.into()), QPoly::constant(d.into())).expect("nonzero denominator")
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(QPoly::constant(r.numer().clone()), QPoly::constant(r.denom().clone()))
            .expect("rational denominators are nonzero")
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self::new(p, QPoly::one()).unwrap()
    }

    /// `q^k` for any integer `k`; negative powers live in the denominator.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            QRat {
                num: QPoly::q_pow(k as u32),
                den: QPoly::one(),
            }
        } else {
            QRat {
                num: QPoly::one(),
                den: QPoly::q_pow((-k) as u32),
            }
        }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// Reduces `num/den` to canonical form.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivideByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_exact_scalar(&c);
            den = den.div_exact_scalar(&c);
        }
        QRat { num, den }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `q`.
    pub fn is_constant(&self) -> bool {
        (self.num.is_zero() || self.num.is_constant()) && self.den.is_constant()
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivideByZero);
        }
        Ok(self.mul_parts(&other.den, &other.num))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Integer power; negative exponents require a nonzero value.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(QRat {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
        .renormalized())
    }

    // coprime parts stay coprime under powering; only the sign/content may need fixing
    fn renormalized(self) -> Self {
        Self::canonical(self.num, self.den)
    }

    fn mul_parts(&self, onum: &QPoly, oden: &QPoly) -> Self {
        if self.num.is_zero() || onum.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.gcd(oden);
        let g2 = onum.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = oden.div_exact(&g1).unwrap();
        let c = onum.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Self::canonical(a.mul(&c), b.mul(&d))
    }

    /// Substitutes `q -> 1/q`.
    pub fn invert_base(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        // num(1/q)/den(1/q) = q^(dd-dn) * rev(num)/rev(den)
        let shift = dd - dn;
        let (num, den) = if shift >= 0 {
            (self.num.reversed().shift_up(shift as u32), self.den.reversed())
        } else {
            (self.num.reversed(), self.den.reversed().shift_up((-shift) as u32))
        };
        Self::canonical(num, den)
    }

    /// Exact value at `q = q0`. Since the form is reduced, removable singularities
    /// (such as `[n]` at `q = 1`) evaluate to their limits.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(q0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint { point: q0.to_string() });
        }
        Ok(self.num.eval_rational(q0) / d)
    }

    pub fn eval_f64(&self, q0: f64) -> Result<f64> {
        let r = BigRational::from_float(q0).ok_or_else(|| Error::InvalidConfig(format!("q = {q0} is not finite")))?;
        let v = self.eval_at(&r)?;
        Ok(ratio_to_f64(&v))
    }

    /// Value at `q = 1`.
    pub fn classical_value(&self) -> Result<BigRational> {
        self.eval_at(&BigRational::one())
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for QRat {
    /// `num` alone when the denominator is one, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = |p: &QPoly, strict: bool| {
            let t = p.to_string();
            if p.terms().len() > 1 || (strict && t.contains('*')) {
                format!("({t})")
            } else {
                t
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", text(&self.num, false), text(&self.den, true))
        }
    }
}

impl FromStr for QRat {
    type Err = Error;

    /// Accepts `num`, `num/den`, or parenthesised forms as printed by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid rational function `{s}`"));
        let strip = |t: &str| -> String {
            let t = t.trim();
            t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t).to_string()
        };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (strip(n), strip(d)),
            None => (strip(s), "1".to_string()),
        };
        let num = QPoly::parse(&n).ok_or_else(bad)?;
        let den = QPoly::parse(&d).ok_or_else(bad)?;
        QRat::new(num, den)
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return QRat::canonical(self.num.add(&o.num), self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let ob = o.den.div_exact(&g).unwrap();
        let sb = self.den.div_exact(&g).unwrap();
        let num = self.num.mul(&ob).add(&o.num.mul(&sb));
        QRat::canonical(num, self.den.mul(&ob))
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self + &(-o)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        self.mul_parts(&o.num, &o.den)
    }
}

impl Div for &QRat {
    type Output = QRat;
    /// Panics on division by zero; see [`QRat::checked_div`].
    fn div(self, o: &QRat) -> QRat {
        self.checked_div(o).expect("QRat division by zero")
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QRat {
            type Output = QRat;
            fn $m(self, o: QRat) -> QRat { (&self).$m(&o) }
        }
        impl $tr<&QRat> for QRat {
            type Output = QRat;
            fn $m(self, o: &QRat) -> QRat { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        QRat::from_int(n)
    }
}

impl Zero for QRat {
    fn zero() -> Self {
        QRat::zero()
    }
    fn is_zero(&self) -> bool {
        QRat::is_zero(self)
    }
}

impl One for QRat {
    fn one() -> Self {
        QRat::one()
    }
}
