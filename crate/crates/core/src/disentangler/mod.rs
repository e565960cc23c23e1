//! Order-by-order solvers for the q-Zassenhaus factorizations and the q-BCH exponent.
//!
//! Every derivation works on truncated [`GradedSeries`] and is certified by
//! [`verify_reconstruction`], which multiplies the factors back together.

pub mod printed;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gseries::{
    classical_exp, classical_exp_series, qexp, qexp_series, series_inverse, series_mul, series_product,
    GradedSeries,
};
use crate::qfield::{q_factorial, QRat};
use crate::wordalg::NCPoly;
use crate::MAX_ORDER;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `e_q^A e_q^B e_{q^2}^{C2} e_{q^3}^{C3} ...`: grade-`n` factor has base `q^n`.
    Escalating,
    /// `e_q^A e_q^B e_q^{c2} e_q^{c3} ...`: every factor has base `q`.
    Uniform,
    /// `e_q^A e_q^B = e_q^{A + B + Z2 + Z3 + ...}`.
    Qbch,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Escalating => "escalating",
            Variant::Uniform => "uniform",
            Variant::Qbch => "qbch",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "escalating" => Ok(Variant::Escalating),
            "uniform" => Ok(Variant::Uniform),
            "qbch" => Ok(Variant::Qbch),
            _ => Err(Error::Parse(format!("unknown variant `{s}`"))),
        }
    }
}

/// Which exponential a factor with base exponent `m` and exponent `W` stands for.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Jackson exponential `e_{q^m}^{W} = sum W^j / [j]_{q^m}!`.
    Jackson,
    /// `e_{q^m}(W) = sum W^j / ((1-q^m)...(1-q^{mj}))`, i.e. `e_{q^m}^{W/(1-q^m)}`.
    LowerE,
    /// `E_{q^m}(W) = e_{q^{-m}}^{W/(1-q^m)}`.
    UpperE,
    /// Ordinary exponential; the base exponent is 0.
    Classical,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Jackson => "jackson",
            Convention::LowerE => "e-lower",
            Convention::UpperE => "e-upper",
            Convention::Classical => "classical",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jackson" => Ok(Convention::Jackson),
            "e-lower" => Ok(Convention::LowerE),
            "e-upper" => Ok(Convention::UpperE),
            "classical" => Ok(Convention::Classical),
            _ => Err(Error::Parse(format!("unknown convention `{s}`"))),
        }
    }
}

/// One exponential factor `exp_{q^m}(x^grade * exponent)`, or for the q-BCH variant
/// one term `x^grade * Z_grade` of the single exponent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    pub grade: usize,
    pub base_exponent: i64,
    pub exponent: NCPoly,
}

/// A derived factorization through a truncation order.
///
/// For the Zassenhaus variants the fixed prefix `exp(xA) exp(xB)` is implicit and
/// `factors` lists grades `2..=order`. For [`Variant::Qbch`] the implicit grade-1
/// term is `A + B` and `factors` lists `Z_2 ... Z_order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub variant: Variant,
    pub convention: Convention,
    pub order: usize,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn factor(&self, grade: usize) -> Option<&Factor> {
        self.factors.iter().find(|f| f.grade == grade)
    }

    /// Exponent at `grade`, or zero when absent.
    pub fn exponent(&self, grade: usize) -> NCPoly {
        self.factor(grade).map(|f| f.exponent.clone()).unwrap_or_default()
    }

    /// Drops every factor above `max_grade`.
    pub fn truncated(&self, max_grade: usize) -> Self {
        Factorization {
            factors: self.factors.iter().filter(|f| f.grade <= max_grade).cloned().collect(),
            ..self.clone()
        }
    }

    fn prefix_base(&self) -> i64 {
        if self.convention == Convention::Classical {
            0
        } else {
            1
        }
    }

    /// The series of a single exponential `exp(x^g W)` with base exponent `m`
    /// in this factorization's convention.
    pub fn exp_series(&self, w: &NCPoly, m: i64, g: usize, order: usize) -> Result<GradedSeries> {
        exponential(self.convention, w, m, g, order)
    }
}

/// `exp(x^g W)` with base exponent `m` in the given convention.
pub fn exponential(convention: Convention, w: &NCPoly, m: i64, g: usize, order: usize) -> Result<GradedSeries> {
    match convention {
        Convention::Jackson => qexp(w, m, g, order),
        Convention::LowerE => qexp(&w.scale(&one_minus_q_pow(m)?.recip()?), m, g, order),
        Convention::UpperE => qexp(&w.scale(&one_minus_q_pow(m)?.recip()?), -m, g, order),
        Convention::Classical => Ok(classical_exp(w, g, order)),
    }
}

fn one_minus_q_pow(m: i64) -> Result<QRat> {
    if m == 0 {
        return Err(Error::InvalidBase);
    }
    Ok(&QRat::one() - &QRat::q_pow(m))
}

/// Checks `2 <= order <= cap`.
pub fn check_order(order: usize, cap: usize) -> Result<()> {
    if !(2..=cap).contains(&order) {
        return Err(Error::InvalidOrder {
            order,
            min: 2,
            max: cap,
        });
    }
    Ok(())
}

/// Derives a Zassenhaus factorization of `e_q^{x(A+B)}` through `order` by peeling.
pub fn derive_zassenhaus(variant: Variant, order: usize) -> Result<Factorization> {
    derive_zassenhaus_for(variant, order, &NCPoly::a(), &NCPoly::b())
}

/// Peeling with arbitrary grade-1 generators in place of `A` and `B`.
///
/// `H = e_q^{-xB}-inverse * e_q^{xA}-inverse * e_q^{x(A+B)}`; at each grade `n` the
/// leading coefficient of `H` is the next exponent, and `H` is left-divided by the
/// corresponding factor.
pub fn derive_zassenhaus_for(variant: Variant, order: usize, a: &NCPoly, b: &NCPoly) -> Result<Factorization> {
    check_order(order, MAX_ORDER)?;
    if variant == Variant::Qbch {
        return Err(Error::Unsupported("qbch is not a Zassenhaus variant; use derive_qbch".into()));
    }
    let full = qexp(&a.add(b), 1, 1, order)?;
    let ea_inv = series_inverse(&qexp(a, 1, 1, order)?)?;
    let eb_inv = series_inverse(&qexp(b, 1, 1, order)?)?;
    let mut rest = series_mul(&eb_inv, &series_mul(&ea_inv, &full)?)?;

    let mut factors = Vec::with_capacity(order - 1);
    for n in 2..=order {
        debug_assert!((1..n).all(|k| rest.coeff(k).is_zero()));
        let c = rest.coeff(n).clone();
        let m = match variant {
            Variant::Escalating => n as i64,
            _ => 1,
        };
        if !c.is_zero() {
            let inv = series_inverse(&qexp(&c, m, n, order)?)?;
            rest = series_mul(&inv, &rest)?;
        }
        factors.push(Factor {
            grade: n,
            base_exponent: m,
            exponent: c,
        });
    }
    debug_assert!(rest.is_identity());
    Ok(Factorization {
        variant,
        convention: Convention::Jackson,
        order,
        factors,
    })
}

/// Solves `e_q^{S(x)} = e_q^{xA} e_q^{xB}` for `S = x(A+B) + sum_{n>=2} x^n Z_n`.
///
/// `Z_n` enters the `x^n` coefficient of `e_q^S` only through the linear term, so
/// `Z_n = P_n - sum_{j>=2} (S^j)_n / [j]!` with `P` the product on the left. The
/// grade-`n` coefficient of `S^j` only involves `S_1 ... S_{n-1}`, so a table of
/// powers is extended one grade at a time.
pub fn derive_qbch(order: usize) -> Result<Factorization> {
    check_order(order, MAX_ORDER)?;
    let (a, b) = (NCPoly::a(), NCPoly::b());
    let target = series_mul(&qexp(&a, 1, 1, order)?, &qexp(&b, 1, 1, order)?)?;
    // powers[j][n] = grade-n coefficient of S^j
    let mut powers: Vec<Vec<NCPoly>> = vec![vec![NCPoly::zero(); order + 1]; order + 1];
    let inv_fact: Vec<QRat> = (0..=order as u32)
        .map(|j| q_factorial(j, 1).and_then(|f| f.recip()))
        .collect::<Result<_>>()?;
    let mut factors = Vec::with_capacity(order - 1);
    for n in 1..=order {
        let mut higher = NCPoly::zero();
        for j in 2..=n {
            let mut acc = NCPoly::zero();
            for k in 1..=n - j + 1 {
                powers[1][k].mul_acc_into(&powers[j - 1][n - k], None, &mut acc);
            }
            higher = higher.add(&acc.scale(&inv_fact[j]));
            powers[j][n] = acc;
        }
        let s_n = if n == 1 {
            a.add(&b)
        } else {
            let z = target.coeff(n).sub(&higher);
            factors.push(Factor {
                grade: n,
                base_exponent: 1,
                exponent: z.clone(),
            });
            z
        };
        powers[1][n] = s_n;
    }
    Ok(Factorization {
        variant: Variant::Qbch,
        convention: Convention::Jackson,
        order,
        factors,
    })
}

/// Derives any variant in the Jackson convention.
pub fn derive(variant: Variant, order: usize) -> Result<Factorization> {
    match variant {
        Variant::Qbch => derive_qbch(order),
        v => derive_zassenhaus(v, order),
    }
}

fn limit_exponent(fac: &Factor) -> Result<NCPoly> {
    fac.exponent
        .try_map_coeffs(|c| c.classical_value().map(|v| QRat::from_rational(&v)))
        .map_err(|e| match e {
            Error::PoleAtPoint { point } => Error::PoleAtGrade {
                point,
                grade: fac.grade,
            },
            other => other,
        })
}

/// Replaces every coefficient by its value at `q = 1`.
///
/// Only Jackson-convention input has a classical limit; for `e_q(x)` / `E_q(x)`
/// input the first exponent with a pole at `q = 1` is reported.
pub fn classical_limit(f: &Factorization) -> Result<Factorization> {
    if f.convention != Convention::Jackson && f.convention != Convention::Classical {
        for fac in &f.factors {
            limit_exponent(fac)?;
        }
        return Err(Error::Unsupported(format!(
            "the {} convention has no classical limit",
            f.convention
        )));
    }
    let factors = f
        .factors
        .iter()
        .map(|fac| {
            let exponent = limit_exponent(fac)?;
            Ok(Factor {
                grade: fac.grade,
                base_exponent: 0,
                exponent,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Factorization {
        convention: Convention::Classical,
        factors,
        ..f.clone()
    })
}

/// Target convention for [`transform_variant`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Target {
    LowerE,
    UpperE,
}

/// Rewrites a Jackson-convention Zassenhaus factorization for `e_q(x)` or `E_q(x)`.
///
/// With `A -> A/(1-q)`, `B -> B/(1-q)` a grade-`n` exponent `W` scales by
/// `(1-q)^{-n}`, and `e_{q^m}^{V} = e_{q^m}((1-q^m) V)`. For `E_q` the factorization
/// is first taken at base `q^{-1}` (every coefficient inverted in `q`), then
/// `e_{q^{-m}}^{V} = E_{q^m}((1-q^m) V)`.
pub fn transform_variant(f: &Factorization, target: Target) -> Result<Factorization> {
    if f.convention != Convention::Jackson || f.variant == Variant::Qbch {
        return Err(Error::Unsupported(
            "variant transforms apply to Jackson-convention Zassenhaus factorizations".into(),
        ));
    }
    let one_minus_q = one_minus_q_pow(1)?;
    let factors = f
        .factors
        .iter()
        .map(|fac| {
            let scale = (&one_minus_q_pow(fac.base_exponent)? / &one_minus_q.pow(fac.grade as i64)?).clone();
            let w = match target {
                Target::LowerE => fac.exponent.clone(),
                Target::UpperE => fac.exponent.invert_base(),
            };
            Ok(Factor {
                grade: fac.grade,
                base_exponent: fac.base_exponent,
                exponent: w.scale(&scale),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Factorization {
        convention: match target {
            Target::LowerE => Convention::LowerE,
            Target::UpperE => Convention::UpperE,
        },
        factors,
        ..f.clone()
    })
}

/// Multiplies the factorization back together and subtracts the expanded side;
/// the result is the zero series through `order` for a correct factorization.
pub fn verify_reconstruction(f: &Factorization, order: usize) -> Result<GradedSeries> {
    if order > f.order {
        return Err(Error::InvalidOrder {
            order,
            min: 0,
            max: f.order,
        });
    }
    let (a, b) = (NCPoly::a(), NCPoly::b());
    let pb = f.prefix_base();
    let ea = f.exp_series(&a, pb, 1, order)?;
    let eb = f.exp_series(&b, pb, 1, order)?;
    match f.variant {
        Variant::Qbch => {
            let mut s = GradedSeries::monomial(a.add(&b), 1, order);
            for fac in f.factors.iter().filter(|x| x.grade <= order) {
                s.set_coeff(fac.grade, s.coeff(fac.grade).add(&fac.exponent));
            }
            let lhs = match f.convention {
                Convention::Jackson => qexp_series(&s, 1)?,
                Convention::Classical => classical_exp_series(&s)?,
                c => return Err(Error::Unsupported(format!("qbch in the {c} convention"))),
            };
            lhs.sub(&series_mul(&ea, &eb)?)
        }
        _ => {
            let mut parts = vec![ea, eb];
            for fac in &f.factors {
                parts.push(f.exp_series(&fac.exponent, fac.base_exponent, fac.grade, order)?);
            }
            let product = series_product(order, &parts)?;
            let target = f.exp_series(&a.add(&b), pb, 1, order)?;
            product.sub(&target)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordalg::{normal_order, normal_order_with, q_commutator};

    fn r(s: &str) -> QRat {
        s.parse().unwrap()
    }

    fn c2_expected() -> NCPoly {
        let ba_q = q_commutator(&NCPoly::b(), &NCPoly::a(), 1);
        ba_q.scale(&r("1/(1+q)"))
    }

    #[test]
    fn grade_two_exponents() {
        let esc = derive_zassenhaus(Variant::Escalating, 3).unwrap();
        let uni = derive_zassenhaus(Variant::Uniform, 3).unwrap();
        assert_eq!(esc.exponent(2), c2_expected());
        assert_eq!(uni.exponent(2), c2_expected());
        assert_eq!(esc.exponent(3), uni.exponent(3));
        assert_eq!(esc.factor(3).unwrap().base_exponent, 3);
        assert_eq!(uni.factor(3).unwrap().base_exponent, 1);
    }

    #[test]
    fn zero_b_gives_trivial_factors() {
        let f = derive_zassenhaus_for(Variant::Escalating, 5, &NCPoly::a(), &NCPoly::zero()).unwrap();
        assert!(f.factors.iter().all(|x| x.exponent.is_zero()));
        let lim = classical_limit(&f).unwrap();
        assert!(lim.factors.iter().all(|x| x.exponent.is_zero()));
    }

    #[test]
    fn order_bounds() {
        assert!(matches!(derive_zassenhaus(Variant::Escalating, 1), Err(Error::InvalidOrder { .. })));
        assert!(matches!(derive_qbch(MAX_ORDER + 1), Err(Error::InvalidOrder { .. })));
        assert!(derive_zassenhaus(Variant::Qbch, 3).is_err());
    }

    #[test]
    fn reconstruction_is_exact() {
        for v in [Variant::Escalating, Variant::Uniform, Variant::Qbch] {
            let f = derive(v, 5).unwrap();
            assert!(verify_reconstruction(&f, 5).unwrap().is_zero(), "{v}");
            let lim = classical_limit(&f).unwrap();
            assert!(verify_reconstruction(&lim, 5).unwrap().is_zero(), "classical {v}");
        }
    }

    #[test]
    fn truncated_factor_list_leaves_next_grade() {
        let f = derive_zassenhaus(Variant::Escalating, 6).unwrap();
        let res = verify_reconstruction(&f.truncated(3), 6).unwrap();
        assert_eq!(res.first_nonzero(), Some(4));
        assert_eq!(res.coeff(4), &f.exponent(4).neg());
    }

    #[test]
    fn qbch_z2_and_limit() {
        let f = derive_qbch(3).unwrap();
        let z2 = q_commutator(&NCPoly::a(), &NCPoly::b(), -1).scale(&r("q/(1+q)"));
        assert_eq!(f.exponent(2), z2);
        let lim = classical_limit(&f).unwrap();
        let half_comm = q_commutator(&NCPoly::a(), &NCPoly::b(), 0).scale(&r("1/2"));
        assert_eq!(lim.exponent(2), half_comm);
    }

    #[test]
    fn exponents_vanish_under_normal_ordering() {
        for v in [Variant::Escalating, Variant::Uniform, Variant::Qbch] {
            let f = derive(v, 5).unwrap();
            for fac in &f.factors {
                assert!(fac.exponent.is_homogeneous_of(fac.grade));
                assert!(normal_order(&fac.exponent).is_zero(), "{v} grade {}", fac.grade);
            }
        }
    }

    #[test]
    fn variant_transforms() {
        let f = derive_zassenhaus(Variant::Escalating, 4).unwrap();
        let lower = transform_variant(&f, Target::LowerE).unwrap();
        let upper = transform_variant(&f, Target::UpperE).unwrap();
        let (a, b) = (NCPoly::a(), NCPoly::b());
        let one_minus_q = r("1-q").recip().unwrap();
        assert_eq!(
            lower.exponent(2),
            q_commutator(&a, &b, -1).scale(&(&-QRat::q() * &one_minus_q))
        );
        assert_eq!(upper.exponent(2), q_commutator(&a, &b, 1).scale(&-one_minus_q));
        for g in 2..=4 {
            assert!(normal_order(&lower.exponent(g)).is_zero());
            assert!(normal_order_with(&upper.exponent(g), -1).is_zero());
        }
        assert!(verify_reconstruction(&lower, 4).unwrap().is_zero());
        assert!(verify_reconstruction(&upper, 4).unwrap().is_zero());
        assert!(transform_variant(&lower, Target::UpperE).is_err());
    }

    #[test]
    fn uniform_transforms_reconstruct() {
        let f = derive_zassenhaus(Variant::Uniform, 4).unwrap();
        for t in [Target::LowerE, Target::UpperE] {
            let g = transform_variant(&f, t).unwrap();
            assert!(verify_reconstruction(&g, 4).unwrap().is_zero());
        }
    }

    #[test]
    fn limit_of_transformed_reports_pole() {
        let f = transform_variant(&derive(Variant::Escalating, 3).unwrap(), Target::LowerE).unwrap();
        match classical_limit(&f) {
            Err(Error::PoleAtGrade { grade, .. }) => assert_eq!(grade, 2),
            other => panic!("expected a pole, got {other:?}"),
        }
    }
}
