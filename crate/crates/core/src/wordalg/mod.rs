//! The free associative algebra on two generators `A`, `B` over `Q(q)`.
//!
//! Polynomials are stored fully expanded, keyed by [`Word`] in graded lexicographic
//! order, so two polynomials are equal exactly when their term maps are equal.

mod word;

pub use word::{Letter, Word};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::qfield::QRat;

/// A noncommutative polynomial: finite map from words to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct NCPoly {
    terms: BTreeMap<Word, QRat>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    /// The identity `I` (empty word).
    pub fn identity() -> Self {
        Self::term(Word::empty(), QRat::one())
    }

    pub fn a() -> Self {
        Self::term(Word::letter(Letter::A), QRat::one())
    }

    pub fn b() -> Self {
        Self::term(Word::letter(Letter::B), QRat::one())
    }

    pub fn term(w: Word, c: QRat) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, QRat::one())
    }

    /// Parses a word string (`"ABA"`) into a unit-coefficient monomial.
    pub fn from_word_str(s: &str) -> Result<Self> {
        Ok(Self::word(s.parse()?))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, QRat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// Adds `c * w` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, w: Word, c: QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> QRat {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms in graded lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &QRat)> {
        self.terms.iter()
    }

    /// `Some(n)` when every word has length `n` (the zero polynomial is homogeneous
    /// of every degree and reports `None`).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::len);
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, n: usize) -> bool {
        self.terms.keys().all(|w| w.len() == n)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&QRat) -> QRat,
    {
        Self::from_terms(self.terms.iter().map(|(w, c)| (*w, f(c))))
    }

    pub fn try_map_coeffs<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&QRat) -> Result<QRat>,
    {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(*w, f(c)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|k| k * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        self.mul_acc_into(other, None, &mut out);
        out
    }

    /// `out += self * other`, keeping only words of length at most `max_len`.
    pub(crate) fn mul_acc_into(&self, other: &Self, max_len: Option<usize>, out: &mut Self) {
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if max_len.is_some_and(|m| wa.len() + wb.len() > m) {
                    continue;
                }
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Keeps only the terms of word length `n`.
    pub fn homogeneous_part(&self, n: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (*w, c.clone())),
        )
    }

    /// Substitutes `q -> 1/q` in every coefficient.
    pub fn invert_base(&self) -> Self {
        self.map_coeffs(QRat::invert_base)
    }

    /// Human-readable sum such as `1/(1+q)*BA + (-q)/(1+q)*AB`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let cs = c.to_string();
            let coeff = if cs.contains(['+', '/']) || cs[1..].contains('-') {
                format!("({cs})")
            } else {
                cs
            };
            if w.is_empty() {
                out.push_str(&coeff);
            } else if c.is_one() {
                out.push_str(&w.pretty());
            } else {
                out.push_str(&format!("{coeff}*{}", w.pretty()));
            }
        }
        out
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, o: &NCPoly) -> NCPoly {
        NCPoly::add(self, o)
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, o: &NCPoly) -> NCPoly {
        NCPoly::sub(self, o)
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, o: &NCPoly) -> NCPoly {
        NCPoly::mul(self, o)
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly::neg(self)
    }
}

/// `[X, Y]_{q^k} = XY - q^k YX`. `k = 0` gives the ordinary commutator.
pub fn q_commutator(x: &NCPoly, y: &NCPoly, k: i64) -> NCPoly {
    x.mul(y).sub(&y.mul(x).scale(&QRat::q_pow(k)))
}

/// `X_1 = [B, A]_q`, `X_n = [X_{n-1}, A]_{q^n}`.
pub fn nested_x(n: usize) -> Result<NCPoly> {
    if n < 1 {
        return Err(Error::InvalidOrder {
            order: n,
            min: 1,
            max: usize::MAX,
        });
    }
    let a = NCPoly::a();
    let mut x = q_commutator(&NCPoly::b(), &a, 1);
    for k in 2..=n {
        x = q_commutator(&x, &a, k as i64);
    }
    Ok(x)
}

/// Normal form modulo `BA = q AB` (all `A` before all `B`).
pub fn normal_order(p: &NCPoly) -> NCPoly {
    normal_order_with(p, 1)
}

/// Normal form modulo `BA = q^k AB`, computed by exhaustively applying the
/// rewrite `BA -> q^k AB` at the leftmost occurrence. Each step removes one
/// inversion, so the rewrite terminates; a single relation is trivially confluent.
pub fn normal_order_with(p: &NCPoly, k: i64) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in p.iter() {
        let (nw, steps) = rewrite_word(*w);
        let factor = QRat::q_pow(k * steps as i64);
        out.add_term(nw, c * &factor);
    }
    out
}

fn rewrite_word(mut w: Word) -> (Word, usize) {
    let mut steps = 0;
    'outer: loop {
        for i in 0..w.len().saturating_sub(1) {
            if w.get(i) == Letter::B && w.get(i + 1) == Letter::A {
                w = w.swap_adjacent(i);
                steps += 1;
                continue 'outer;
            }
        }
        return (w, steps);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> NCPoly {
        NCPoly::from_word_str(s).unwrap()
    }

    fn r(s: &str) -> QRat {
        s.parse().unwrap()
    }

    #[test]
    fn products() {
        let (a, b) = (NCPoly::a(), NCPoly::b());
        assert_eq!(a.mul(&b), w("AB"));
        let s = a.add(&b);
        let sq = s.mul(&s);
        assert_eq!(sq, w("AA").add(&w("AB")).add(&w("BA")).add(&w("BB")));
        assert_eq!(NCPoly::identity().mul(&sq), sq);
        assert_ne!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn q_commutator_examples() {
        let (a, b) = (NCPoly::a(), NCPoly::b());
        assert_eq!(q_commutator(&a, &b, 1), w("AB").sub(&w("BA").scale(&QRat::q())));
        assert!(q_commutator(&a, &a, 0).is_zero());
        let lhs = q_commutator(&b, &a, 1);
        let rhs = q_commutator(&a, &b, -1).scale(&-QRat::q());
        assert_eq!(lhs, rhs);
        // [X,X]_q = (1-q) X^2
        let x = a.add(&w("AB"));
        assert_eq!(q_commutator(&x, &x, 1), x.mul(&x).scale(&r("1-q")));
    }

    #[test]
    fn nested_x_examples() {
        assert_eq!(nested_x(1).unwrap(), w("BA").sub(&w("AB").scale(&QRat::q())));
        let expected = w("BAA")
            .sub(&w("ABA").scale(&r("q+q^2")))
            .add(&w("AAB").scale(&r("q^3")));
        assert_eq!(nested_x(2).unwrap(), expected);
        for n in 1..=6 {
            let x = nested_x(n).unwrap();
            assert!(x.is_homogeneous_of(n + 1));
            assert!(x.iter().all(|(w, _)| w.count(Letter::B) == 1));
        }
        assert!(nested_x(0).is_err());
    }

    #[test]
    fn normal_order_examples() {
        assert_eq!(normal_order(&w("BA")), w("AB").scale(&QRat::q()));
        let c2 = w("BA").sub(&w("AB").scale(&QRat::q())).scale(&r("1/(1+q)"));
        assert!(normal_order(&c2).is_zero());
        assert_eq!(normal_order(&w("AAB")), w("AAB"));
        assert_eq!(normal_order(&w("BBA")), w("ABB").scale(&r("q^2")));
        assert_eq!(normal_order_with(&w("BA"), -1), w("AB").scale(&r("1/q")));
    }

    #[test]
    fn pretty_print() {
        let p = w("BA").sub(&w("AB").scale(&QRat::q())).scale(&r("1/(1+q)"));
        assert_eq!(p.pretty(), "(-q/(1+q))*AB + (1/(1+q))*BA");
        assert_eq!(NCPoly::identity().scale(&r("1/2")).pretty(), "(1/2)");
        assert_eq!(NCPoly::zero().pretty(), "0");
    }
}
