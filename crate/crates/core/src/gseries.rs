//! Truncated power series in a grading variable `x` with [`NCPoly`] coefficients,
//! q-exponential factories, and formal q-calculus.

use crate::error::{Error, Result};
use crate::qfield::{q_factorial, q_int, QRat};
use crate::wordalg::NCPoly;

/// `c_0 + c_1 x + ... + c_N x^N`, truncated at order `N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSeries {
    coeffs: Vec<NCPoly>,
}

impl GradedSeries {
    pub fn zero(order: usize) -> Self {
        GradedSeries {
            coeffs: vec![NCPoly::zero(); order + 1],
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::constant(NCPoly::identity(), order)
    }

    pub fn constant(p: NCPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = p;
        s
    }

    /// `x^grade * p`, or zero if `grade > order`.
    pub fn monomial(p: NCPoly, grade: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if grade <= order {
            s.coeffs[grade] = p;
        }
        s
    }

    /// Builds from a coefficient list; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<NCPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant coefficient");
        GradedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &NCPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[NCPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, p: NCPoly) {
        self.coeffs[n] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(NCPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[0] == NCPoly::identity() && self.coeffs[1..].iter().all(NCPoly::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops coefficients above `order` (or pads with zeros).
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<NCPoly> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, NCPoly::zero());
        GradedSeries { coeffs }
    }

    /// True when each `x^n` coefficient has word length exactly `n`.
    pub fn is_graded_homogeneous(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(n, c)| c.is_homogeneous_of(n))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(GradedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(GradedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        GradedSeries {
            coeffs: self.coeffs.iter().map(NCPoly::neg).collect(),
        }
    }

    pub fn scale(&self, c: &QRat) -> Self {
        GradedSeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Left multiplication of every coefficient by a constant polynomial.
    pub fn left_mul_poly(&self, p: &NCPoly) -> Self {
        GradedSeries {
            coeffs: self.coeffs.iter().map(|c| p.mul(c)).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }
}

/// `e_{q^m}^{x^g W} = sum_{j : g j <= N} x^{g j} W^j / [j]_{q^m}!`.
pub fn qexp(w: &NCPoly, m: i64, g: usize, order: usize) -> Result<GradedSeries> {
    if m == 0 {
        return Err(Error::InvalidBase);
    }
    exp_with(w, g, order, |j| q_factorial(j, m))
}

/// The ordinary exponential `e^{x^g W}`, the `q -> 1` counterpart of [`qexp`].
pub fn classical_exp(w: &NCPoly, g: usize, order: usize) -> GradedSeries {
    exp_with(w, g, order, |j| Ok(QRat::from_int((1..=j as i64).product())))
        .expect("integer factorials are nonzero")
}

fn exp_with<F>(w: &NCPoly, g: usize, order: usize, mut factorial: F) -> Result<GradedSeries>
where
    F: FnMut(u32) -> Result<QRat>,
{
    assert!(g >= 1, "exponent grade must be positive");
    let mut s = GradedSeries::identity(order);
    if w.is_zero() {
        return Ok(s);
    }
    let mut power = NCPoly::identity();
    let mut j = 1usize;
    while g * j <= order {
        power = power.mul(w);
        if power.is_zero() {
            break;
        }
        let c = factorial(j as u32)?.recip()?;
        s.coeffs[g * j] = s.coeffs[g * j].add(&power.scale(&c));
        j += 1;
    }
    Ok(s)
}

/// Cauchy product truncated at the common order.
pub fn series_mul(s: &GradedSeries, t: &GradedSeries) -> Result<GradedSeries> {
    s.check_order(t)?;
    let n = s.order();
    let mut out = GradedSeries::zero(n);
    for (i, a) in s.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in t.coeffs.iter().enumerate().take(n + 1 - i) {
            if b.is_zero() {
                continue;
            }
            a.mul_acc_into(b, None, &mut out.coeffs[i + j]);
        }
    }
    Ok(out)
}

/// Product of a sequence of series, left to right.
pub fn series_product<'a, I>(order: usize, factors: I) -> Result<GradedSeries>
where
    I: IntoIterator<Item = &'a GradedSeries>,
{
    factors
        .into_iter()
        .try_fold(GradedSeries::identity(order), |acc, f| series_mul(&acc, f))
}

/// Two-sided inverse of a series whose constant term is `I`, by unit-triangular
/// recursion `T_n = -sum_{k=1..n} S_k T_{n-k}`.
pub fn series_inverse(s: &GradedSeries) -> Result<GradedSeries> {
    if s.coeffs[0] != NCPoly::identity() {
        return Err(Error::NotInvertible);
    }
    let n = s.order();
    let mut t = GradedSeries::identity(n);
    for m in 1..=n {
        let mut acc = NCPoly::zero();
        for k in 1..=m {
            if s.coeffs[k].is_zero() || t.coeffs[m - k].is_zero() {
                continue;
            }
            s.coeffs[k].mul_acc_into(&t.coeffs[m - k], None, &mut acc);
        }
        t.coeffs[m] = acc.neg();
    }
    Ok(t)
}

/// `sum_j S^j / [j]_{q^m}!` for a series with zero constant term.
pub fn qexp_series(s: &GradedSeries, m: i64) -> Result<GradedSeries> {
    if m == 0 {
        return Err(Error::InvalidBase);
    }
    exp_series_with(s, |j| q_factorial(j, m))
}

/// `sum_j S^j / j!` for a series with zero constant term.
pub fn classical_exp_series(s: &GradedSeries) -> Result<GradedSeries> {
    exp_series_with(s, |j| Ok(QRat::from_int((1..=j as i64).product())))
}

fn exp_series_with<F>(s: &GradedSeries, mut factorial: F) -> Result<GradedSeries>
where
    F: FnMut(u32) -> Result<QRat>,
{
    if !s.coeffs[0].is_zero() {
        return Err(Error::Unsupported(
            "exponential of a series with nonzero constant term".into(),
        ));
    }
    let n = s.order();
    let mut out = GradedSeries::identity(n);
    let mut power = GradedSeries::identity(n);
    for j in 1..=n {
        power = series_mul(&power, s)?;
        if power.is_zero() {
            break;
        }
        let c = factorial(j as u32)?.recip()?;
        out = out.add(&power.scale(&c))?;
    }
    Ok(out)
}

/// `e_{q^{-1}}^{-q x A} B e_q^{x A}`, whose `x^n` coefficient is `X_n / [n]!`.
pub fn conj_expand(order: usize) -> Result<GradedSeries> {
    let a = NCPoly::a();
    let left = qexp(&a.scale(&-QRat::q()), -1, 1, order)?;
    let right = qexp(&a, 1, 1, order)?;
    let mid = GradedSeries::constant(NCPoly::b(), order);
    series_mul(&series_mul(&left, &mid)?, &right)
}

/// Jackson derivative: `(D_q S)_n = [n+1] S_{n+1}`; the order drops by one.
pub fn q_derivative(s: &GradedSeries) -> GradedSeries {
    let n = s.order();
    if n == 0 {
        return GradedSeries::zero(0);
    }
    let coeffs = (0..n)
        .map(|k| s.coeffs[k + 1].scale(&q_int(k as u32 + 1, 1).unwrap()))
        .collect();
    GradedSeries { coeffs }
}

/// Formal q-antiderivative vanishing at `x = 0`: `(J S)_n = S_{n-1} / [n]`.
pub fn q_antiderivative(s: &GradedSeries) -> GradedSeries {
    let n = s.order();
    let mut out = GradedSeries::zero(n);
    for k in 1..=n {
        let c = q_int(k as u32, 1).unwrap().recip().unwrap();
        out.coeffs[k] = s.coeffs[k - 1].scale(&c);
    }
    out
}

/// `S(x) -> S(q^k x)`.
pub fn scale_argument(s: &GradedSeries, k: i64) -> GradedSeries {
    GradedSeries {
        coeffs: s
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&QRat::q_pow(k * n as i64)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordalg::nested_x;

    fn r(s: &str) -> QRat {
        s.parse().unwrap()
    }

    fn w(s: &str) -> NCPoly {
        NCPoly::from_word_str(s).unwrap()
    }

    #[test]
    fn qexp_examples() {
        let e = qexp(&NCPoly::a(), 1, 1, 3).unwrap();
        assert_eq!(e.coeff(0), &NCPoly::identity());
        assert_eq!(e.coeff(1), &w("A"));
        assert_eq!(e.coeff(2), &w("AA").scale(&r("1/(1+q)")));
        assert_eq!(e.coeff(3), &w("AAA").scale(&r("1/(1+2*q+2*q^2+q^3)")));
        assert!(qexp(&NCPoly::zero(), 3, 2, 5).unwrap().is_identity());
        let c = w("AB");
        let e2 = qexp(&c, 2, 2, 4).unwrap();
        assert_eq!(e2.coeff(4), &c.mul(&c).scale(&r("1/(1+q^2)")));
        assert!(e2.coeff(1).is_zero() && e2.coeff(3).is_zero());
        assert_eq!(qexp(&c, 0, 1, 3), Err(Error::InvalidBase));
    }

    #[test]
    fn inverse_identity_for_qexp() {
        let n = 5;
        let a = NCPoly::a();
        let e = qexp(&a, 1, 1, n).unwrap();
        let e_inv = qexp(&a.neg(), -1, 1, n).unwrap();
        assert!(series_mul(&e, &e_inv).unwrap().is_identity());
        assert_eq!(series_inverse(&e).unwrap(), e_inv);
        assert!(series_inverse(&GradedSeries::identity(4)).unwrap().is_identity());
        assert_eq!(series_inverse(&GradedSeries::zero(3)), Err(Error::NotInvertible));
    }

    #[test]
    fn order_mismatch() {
        let s = GradedSeries::identity(3);
        let t = GradedSeries::identity(4);
        assert_eq!(series_mul(&s, &t), Err(Error::OrderMismatch(3, 4)));
    }

    #[test]
    fn conj_expand_matches_nested_commutators() {
        let n = 5;
        let s = conj_expand(n).unwrap();
        assert_eq!(s.coeff(0), &NCPoly::b());
        for k in 1..=n {
            let expected = nested_x(k).unwrap().scale(&q_factorial(k as u32, 1).unwrap().recip().unwrap());
            assert_eq!(s.coeff(k), &expected, "grade {k}");
        }
    }

    #[test]
    fn derivative_rules() {
        let n = 5;
        let a = NCPoly::a();
        let e = qexp(&a, 1, 1, n).unwrap();
        let d = q_derivative(&e);
        assert_eq!(d, e.truncate(n - 1).left_mul_poly(&a));
        assert!(q_derivative(&GradedSeries::constant(w("B"), 4)).is_zero());
        let x2 = GradedSeries::monomial(NCPoly::identity(), 2, 3);
        assert_eq!(q_derivative(&x2), GradedSeries::monomial(NCPoly::identity().scale(&r("1+q")), 1, 2));
    }

    #[test]
    fn antiderivative_rules() {
        let b = GradedSeries::constant(NCPoly::b(), 3);
        assert_eq!(q_antiderivative(&b), GradedSeries::monomial(NCPoly::b(), 1, 3));
        assert!(q_antiderivative(&GradedSeries::zero(3)).is_zero());
        let e = qexp(&w("AB"), 1, 1, 4).unwrap();
        assert_eq!(q_derivative(&q_antiderivative(&e)), e.truncate(3));
    }

    #[test]
    fn argument_scaling() {
        let e = qexp(&w("AB").add(&w("B")), 1, 1, 4).unwrap();
        assert_eq!(scale_argument(&e, 0), e);
        assert_eq!(scale_argument(&scale_argument(&e, 1), -1), e);
    }

    #[test]
    fn exp_of_series_matches_qexp() {
        let n = 4;
        let s = GradedSeries::monomial(w("A").add(&w("B")), 1, n);
        assert_eq!(qexp_series(&s, 1).unwrap(), qexp(&w("A").add(&w("B")), 1, 1, n).unwrap());
        assert_eq!(classical_exp_series(&s).unwrap(), classical_exp(&w("A").add(&w("B")), 1, n));
    }
}
