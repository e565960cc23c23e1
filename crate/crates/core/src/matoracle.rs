//! Numeric cross-checks: concrete matrices for `A`, `B`, a numeric `q`, and a
//! log-log fit of the truncation residual against `x`.

use std::collections::HashMap;

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::disentangler::{Convention, Factorization, Variant};
use crate::error::{Error, Result};
use crate::wordalg::{Letter, NCPoly, Word};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleConfig {
    pub dim: usize,
    pub q0: f64,
    pub x_samples: Vec<f64>,
    pub seed: u64,
    pub entry_bound: f64,
    /// Allowed shortfall of the fitted slope below `N + 1`.
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            dim: 4,
            q0: 0.7,
            x_samples: vec![0.1, 0.05, 0.025],
            seed: 42,
            entry_bound: 1.0,
            tolerance: 0.5,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.dim < 2 {
            return bad(format!("dim = {} but at least 2 is needed for noncommuting matrices", self.dim));
        }
        if !(self.q0.is_finite() && self.q0 > 0.0) || self.q0 == 1.0 {
            return bad(format!("q0 = {} must be positive and different from 1", self.q0));
        }
        if self.x_samples.len() < 2 {
            return bad("at least two x samples are needed for a slope".into());
        }
        if self.x_samples.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return bad("x samples must be positive".into());
        }
        if self.x_samples.windows(2).any(|w| w[1] >= w[0]) {
            return bad("x samples must be strictly decreasing".into());
        }
        if !(self.entry_bound.is_finite() && self.entry_bound > 0.0) {
            return bad("entry bound must be positive".into());
        }
        Ok(())
    }
}

/// Two random `dim x dim` matrices with entries uniform in `[-bound, bound]`,
/// resampled until they do not commute.
pub fn sample_pair(cfg: &OracleConfig) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dist = Uniform::new_inclusive(-cfg.entry_bound, cfg.entry_bound);
    for _ in 0..64 {
        let a = DMatrix::from_fn(cfg.dim, cfg.dim, |_, _| dist.sample(&mut rng));
        let b = DMatrix::from_fn(cfg.dim, cfg.dim, |_, _| dist.sample(&mut rng));
        let comm = &a * &b - &b * &a;
        if comm.norm() > 1e-9 * cfg.entry_bound * cfg.entry_bound {
            return Ok((a, b));
        }
    }
    Err(Error::InvalidConfig("could not sample a noncommuting pair".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub order: usize,
    pub x_samples: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Least-squares slope of `log residual` against `log x`; `None` when every
    /// residual is exactly zero.
    pub slope: Option<f64>,
    pub required_slope: f64,
    pub passed: bool,
}

/// Measures the order of the truncation residual on a random matrix pair.
pub fn residual_order(f: &Factorization, cfg: &OracleConfig) -> Result<ResidualReport> {
    let (a, b) = sample_pair(cfg)?;
    residual_order_with(f, cfg, &a, &b)
}

/// As [`residual_order`] with caller-supplied matrices.
pub fn residual_order_with(
    f: &Factorization,
    cfg: &OracleConfig,
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
) -> Result<ResidualReport> {
    cfg.validate()?;
    let n = f.order;
    let q0 = if f.convention == Convention::Classical { 1.0 } else { cfg.q0 };
    let mut ev = Evaluator::new(a.clone(), b.clone(), q0);
    let exps: Vec<(usize, i64, DMatrix<f64>)> = f
        .factors
        .iter()
        .map(|fac| {
            ev.poly(&fac.exponent)
                .map(|m| (fac.grade, fac.base_exponent, m))
                .map_err(|e| match e {
                    Error::PoleAtPoint { point } => Error::PoleAtGrade {
                        point,
                        grade: fac.grade,
                    },
                    e => e,
                })
        })
        .collect::<Result<_>>()?;
    let sum = a + b;
    let mut residuals = Vec::with_capacity(cfg.x_samples.len());
    for &x in &cfg.x_samples {
        let rhs_ab = &series_exp(f.convention, a, 1, 1, x, n, q0) * &series_exp(f.convention, b, 1, 1, x, n, q0);
        let res = match f.variant {
            Variant::Qbch => {
                let mut s = &sum * x;
                for (g, _, m) in &exps {
                    s += m * x.powi(*g as i32);
                }
                // S is inhomogeneous in x; truncate the exponential at N terms
                let lhs = inhomogeneous_exp(f.convention, &s, n, q0);
                lhs - rhs_ab
            }
            _ => {
                let mut prod = rhs_ab;
                for (g, m, w) in &exps {
                    prod = &prod * &series_exp(f.convention, w, *m, *g, x, n, q0);
                }
                prod - series_exp(f.convention, &sum, 1, 1, x, n, q0)
            }
        };
        residuals.push(res.norm());
    }
    let slope = fit_slope(&cfg.x_samples, &residuals);
    let required = (n + 1) as f64 - cfg.tolerance;
    let passed = match slope {
        Some(s) => s >= required,
        None => residuals.iter().all(|r| *r == 0.0),
    };
    Ok(ResidualReport {
        order: n,
        x_samples: cfg.x_samples.clone(),
        residuals,
        slope,
        required_slope: required,
        passed,
    })
}

/// Least-squares slope of `log r` on `log x`, skipping exact zeros.
fn fit_slope(xs: &[f64], rs: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(rs)
        .filter(|(_, r)| **r > 0.0)
        .map(|(x, r)| (x.ln(), r.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// `[n]_p` for real `p`.
fn q_int_f64(n: u32, p: f64) -> f64 {
    (0..n).map(|i| p.powi(i as i32)).sum()
}

/// `1 / j!`-style weights for the exponential in a convention, with the argument
/// prefactor folded in: returns `(prefactor, base)` so that the factor equals
/// `sum_j (prefactor W)^j / [j]_{base}!`, or base `None` for the ordinary exponential.
fn convention_params(convention: Convention, m: i64, q0: f64) -> (f64, Option<f64>) {
    match convention {
        Convention::Jackson => (1.0, Some(q0.powi(m as i32))),
        Convention::LowerE => (1.0 / (1.0 - q0.powi(m as i32)), Some(q0.powi(m as i32))),
        Convention::UpperE => (1.0 / (1.0 - q0.powi(m as i32)), Some(q0.powi(-m as i32))),
        Convention::Classical => (1.0, None),
    }
}

fn factorial_weight(j: u32, base: Option<f64>) -> f64 {
    (1..=j)
        .map(|i| match base {
            Some(p) => q_int_f64(i, p),
            None => i as f64,
        })
        .product()
}

/// `sum_{j : g j <= N} (x^g W)^j / [j]!` in the given convention.
fn series_exp(convention: Convention, w: &DMatrix<f64>, m: i64, g: usize, x: f64, order: usize, q0: f64) -> DMatrix<f64> {
    let (pre, base) = convention_params(convention, m, q0);
    let arg = w * (pre * x.powi(g as i32));
    let mut out = DMatrix::identity(w.nrows(), w.ncols());
    let mut power = out.clone();
    let mut j = 1;
    while g * j <= order {
        power = &power * &arg;
        out += &power / factorial_weight(j as u32, base);
        j += 1;
    }
    out
}

fn inhomogeneous_exp(convention: Convention, s: &DMatrix<f64>, order: usize, q0: f64) -> DMatrix<f64> {
    let (pre, base) = convention_params(convention, 1, q0);
    let arg = s * pre;
    let mut out = DMatrix::identity(s.nrows(), s.ncols());
    let mut power = out.clone();
    for j in 1..=order {
        power = &power * &arg;
        out += &power / factorial_weight(j as u32, base);
    }
    out
}

/// Evaluates [`NCPoly`] values at fixed matrices, caching word products.
struct Evaluator {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    q0: f64,
    words: HashMap<Word, DMatrix<f64>>,
}

impl Evaluator {
    fn new(a: DMatrix<f64>, b: DMatrix<f64>, q0: f64) -> Self {
        Evaluator {
            a,
            b,
            q0,
            words: HashMap::new(),
        }
    }

    fn word(&mut self, w: &Word) -> DMatrix<f64> {
        if let Some(m) = self.words.get(w) {
            return m.clone();
        }
        let m = if w.is_empty() {
            DMatrix::identity(self.a.nrows(), self.a.ncols())
        } else {
            let prefix = Word::from_letters(w.letters().take(w.len() - 1));
            let last = match w.get(w.len() - 1) {
                Letter::A => &self.a,
                Letter::B => &self.b,
            }
            .clone();
            self.word(&prefix) * last
        };
        self.words.insert(*w, m.clone());
        m
    }

    fn poly(&mut self, p: &NCPoly) -> Result<DMatrix<f64>> {
        let mut out = DMatrix::zeros(self.a.nrows(), self.a.ncols());
        for (w, c) in p.iter() {
            let v = c.eval_f64(self.q0)?;
            out += self.word(w) * v;
        }
        Ok(out)
    }
}

/// Largest graded mismatch `max_n || sum_{i+j=n} A^i B^j / ([i]![j]!) - (A+B)^n / [n]! ||`
/// over `n <= max_degree`, i.e. the failure of `e_q^{xA} e_q^{xB} = e_q^{x(A+B)}`
/// degree by degree.
pub fn graded_sc_residual<T>(a: &DMatrix<T>, b: &DMatrix<T>, q: T, max_degree: usize) -> f64
where
    T: ComplexField<RealField = f64> + Copy,
{
    let qint = |n: usize| (0..n).fold(T::zero(), |acc, i| acc + q.powi(i as i32));
    let fact: Vec<T> = (0..=max_degree)
        .scan(T::one(), |acc, n| {
            if n > 0 {
                *acc *= qint(n);
            }
            Some(*acc)
        })
        .collect();
    let d = a.nrows();
    let pows = |m: &DMatrix<T>| {
        let mut v = vec![DMatrix::<T>::identity(d, d)];
        for i in 1..=max_degree {
            v.push(&v[i - 1] * m);
        }
        v
    };
    let (pa, pb, ps) = (pows(a), pows(b), pows(&(a + b)));
    let mut worst = 0.0f64;
    for n in 0..=max_degree {
        let mut lhs = DMatrix::<T>::zeros(d, d);
        for i in 0..=n {
            let w = fact[i] * fact[n - i];
            lhs += (&pa[i] * &pb[n - i]).map(|x| x / w);
        }
        let rhs = ps[n].map(|x| x / fact[n]);
        worst = worst.max((lhs - rhs).norm());
    }
    worst
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylReport {
    pub dim: usize,
    /// `|| AB - q^{-1} BA ||` for the clock/shift pair at `q = exp(2 pi i / dim)`.
    pub relation_residual: f64,
    /// Norms of `[A,B]_{q^-1}`, `[A,[A,B]_q]_{q^-1}`, `[[A,B]_q,B]_{q^-1}`.
    pub commutator_norms: [f64; 3],
    /// Graded residual at the root of unity, degrees below `dim` (where `[n]!` is nonzero).
    pub root_of_unity_residual: f64,
    pub root_of_unity_degree: usize,
    /// Real `q` realization (nilpotent shift and `diag(q^j)`), graded residual.
    pub real_q: f64,
    pub real_q_residual: f64,
    pub real_q_degree: usize,
    /// Same graded check on a random non-commuting pair; expected to be large.
    pub generic_pair_residual: f64,
    pub passed: bool,
}

pub const WEYL_TOLERANCE: f64 = 1e-10;

/// Checks `e_q^{A} e_q^{B} = e_q^{A+B}` on matrices obeying `AB = q^{-1} BA`.
///
/// The clock/shift pair realizes the relation at a primitive `dim`-th root of
/// unity, where `[dim]_q = 0` limits the check to degrees below `dim`. A second
/// pair, a nilpotent shift with `diag(1, q, q^2, ...)`, realizes it for real `q`
/// and is checked through `degree`.
pub fn weyl_check(dim: usize, real_q: f64, degree: usize, seed: u64) -> Result<WeylReport> {
    if dim < 2 {
        return Err(Error::InvalidConfig("weyl check needs dim >= 2".into()));
    }
    if real_q.is_nan() || real_q <= 0.0 || real_q == 1.0 {
        return Err(Error::InvalidConfig("real q must be positive and different from 1".into()));
    }
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / dim as f64);
    let shift = DMatrix::<Complex64>::from_fn(dim, dim, |i, j| {
        if i == (j + 1) % dim {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let clock = DMatrix::<Complex64>::from_fn(dim, dim, |i, j| if i == j { omega.powi(i as i32) } else { Complex64::new(0.0, 0.0) });
    let (a, b) = (shift, clock);
    let qc = |x: &DMatrix<Complex64>, y: &DMatrix<Complex64>, k: Complex64| x * y - (y * x).map(|v| v * k);
    let relation_residual = qc(&a, &b, omega.inv()).norm();
    let ab_q = qc(&a, &b, omega);
    let commutator_norms = [
        qc(&a, &b, omega.inv()).norm(),
        qc(&a, &ab_q, omega.inv()).norm(),
        qc(&ab_q, &b, omega.inv()).norm(),
    ];
    let root_degree = dim - 1;
    let root_of_unity_residual = graded_sc_residual(&a, &b, omega, root_degree);

    let nil = DMatrix::<f64>::from_fn(dim, dim, |i, j| if i == j + 1 { 1.0 } else { 0.0 });
    let diag = DMatrix::<f64>::from_fn(dim, dim, |i, j| if i == j { real_q.powi(i as i32) } else { 0.0 });
    let real_q_residual = graded_sc_residual(&nil, &diag, real_q, degree);

    let cfg = OracleConfig {
        dim,
        seed,
        ..OracleConfig::default()
    };
    let (ga, gb) = sample_pair(&cfg)?;
    let generic_pair_residual = graded_sc_residual(&ga, &gb, real_q, degree.min(4));

    let passed = relation_residual < WEYL_TOLERANCE
        && commutator_norms.iter().all(|n| *n < WEYL_TOLERANCE)
        && root_of_unity_residual < WEYL_TOLERANCE
        && real_q_residual < WEYL_TOLERANCE
        && generic_pair_residual > WEYL_TOLERANCE;
    Ok(WeylReport {
        dim,
        relation_residual,
        commutator_norms,
        root_of_unity_residual,
        root_of_unity_degree: root_degree,
        real_q,
        real_q_residual,
        real_q_degree: degree,
        generic_pair_residual,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disentangler::{classical_limit, derive};

    #[test]
    fn config_validation() {
        assert!(OracleConfig::default().validate().is_ok());
        let mut c = OracleConfig { dim: 1, ..OracleConfig::default() };
        assert!(sample_pair(&c).is_err());
        c = OracleConfig { q0: 1.0, ..OracleConfig::default() };
        assert!(c.validate().is_err());
        c = OracleConfig { x_samples: vec![0.1, 0.2], ..OracleConfig::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let c = OracleConfig::default();
        let (a1, b1) = sample_pair(&c).unwrap();
        let (a2, b2) = sample_pair(&c).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(b1, b2);
        assert!((&a1 * &b1 - &b1 * &a1).norm() > 0.0);
        assert!(a1.iter().all(|x| x.abs() <= 1.0));
        let (a3, _) = sample_pair(&OracleConfig { seed: 7, ..c }).unwrap();
        assert_ne!(a1, a3);
    }

    #[test]
    fn escalating_slope_order_4() {
        let f = derive(Variant::Escalating, 4).unwrap();
        let rep = residual_order(&f, &OracleConfig::default()).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.slope.unwrap() >= 4.5);
    }

    #[test]
    fn classical_limit_slope() {
        let f = classical_limit(&derive(Variant::Escalating, 4).unwrap()).unwrap();
        let rep = residual_order(&f, &OracleConfig::default()).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn zero_b_gives_zero_residual() {
        let f = derive(Variant::Escalating, 4).unwrap();
        let cfg = OracleConfig::default();
        let (a, _) = sample_pair(&cfg).unwrap();
        let zero = DMatrix::zeros(cfg.dim, cfg.dim);
        let rep = residual_order_with(&f, &cfg, &a, &zero).unwrap();
        assert!(rep.residuals.iter().all(|r| *r < 1e-15), "{rep:?}");
    }

    #[test]
    fn dropping_a_factor_lowers_the_slope() {
        let f = derive(Variant::Escalating, 4).unwrap().truncated(3);
        let rep = residual_order(&f, &OracleConfig::default()).unwrap();
        let s = rep.slope.unwrap();
        assert!((s - 4.0).abs() < 0.3, "slope {s}");
        assert!(!rep.passed);
    }

    #[test]
    fn weyl_pairs() {
        let two = weyl_check(2, 0.7, 12, 1).unwrap();
        assert!(two.commutator_norms[0] < 1e-12);
        let three = weyl_check(3, 0.7, 12, 1).unwrap();
        assert!(three.passed, "{three:?}");
        assert!(three.real_q_residual < 1e-10);
        assert!(three.generic_pair_residual > 1e-3);
        assert!(weyl_check(1, 0.7, 12, 1).is_err());
    }

    #[test]
    fn slope_fit() {
        let xs = [0.1, 0.05, 0.025];
        let rs: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powi(5)).collect();
        assert!((fit_slope(&xs, &rs).unwrap() - 5.0).abs() < 1e-12);
        assert_eq!(fit_slope(&xs, &[0.0, 0.0, 0.0]), None);
    }
}
