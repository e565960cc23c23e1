//! Exact arithmetic in `Q(q)`, the field of rational functions of the deformation
//! parameter with integer coefficients.
//!
//! Values are kept in canonical reduced form so that structural equality is
//! semantic equality. Negative powers of `q` are carried by the denominator.

mod qpoly;
mod qrat;

pub use qpoly::QPoly;
pub use qrat::QRat;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// The q-integer `[n]_{q^k} = (1 - q^{kn}) / (1 - q^k)`.
///
/// For `k < 0` the value is `q^{k(n-1)} (1 + q^{|k|} + ... + q^{|k|(n-1)})`,
/// with the negative power stored in the denominator.
pub fn q_int(n: u32, k: i64) -> Result<QRat> {
    if k == 0 {
        return Err(Error::InvalidBase);
    }
    let step = k.unsigned_abs() as u32;
    let sum = QPoly::from_terms((0..n).map(|i| (i * step, BigInt::one())));
    if k > 0 || n == 0 {
        return Ok(QRat::from_poly(sum));
    }
    QRat::new(sum, QPoly::q_pow(step * (n - 1)))
}

/// `[n]_{q^k}! = [n]_{q^k} [n-1]_{q^k} ... [1]_{q^k}`, with `[0]! = 1`.
pub fn q_factorial(n: u32, k: i64) -> Result<QRat> {
    if k == 0 {
        return Err(Error::InvalidBase);
    }
    let mut acc = QRat::one();
    for i in 2..=n {
        acc = &acc * &q_int(i, k)?;
    }
    Ok(acc)
}

/// Exact evaluation at a rational point; see [`QRat::eval_at`].
pub fn eval_at(r: &QRat, q0: &BigRational) -> Result<BigRational> {
    r.eval_at(q0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn r(s: &str) -> QRat {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn q_int_examples() {
        assert_eq!(q_int(3, 1).unwrap(), r("1+q+q^2"));
        for k in [-3, -1, 1, 2, 5] {
            assert_eq!(q_int(1, k).unwrap(), QRat::one());
        }
        assert_eq!(q_int(3, -1).unwrap(), r("(1+q+q^2)/q^2"));
        assert_eq!(q_int(0, 2).unwrap(), QRat::zero());
        assert_eq!(q_int(3, 0), Err(Error::InvalidBase));
        assert_eq!(q_int(2, 2).unwrap(), r("1+q^2"));
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(q_factorial(3, 1).unwrap(), r("1+2*q+2*q^2+q^3"));
        assert_eq!(q_factorial(0, 1).unwrap(), QRat::one());
        assert_eq!(eval_at(&q_factorial(4, 1).unwrap(), &BigRational::one()).unwrap(), rat(24, 1));
        assert_eq!(q_factorial(2, 0), Err(Error::InvalidBase));
    }

    #[test]
    fn field_op_examples() {
        let a = r("1/(1-q)");
        let b = r("-q/(1-q)");
        assert_eq!(&a + &b, QRat::one());
        assert_eq!(&q_int(2, 1).unwrap() * &q_int(2, 2).unwrap(), r("1+q+q^2+q^3"));
        assert_eq!(q_int(6, 1).unwrap().checked_div(&q_int(3, 1).unwrap()).unwrap(), r("1+q^3"));
        assert_eq!(QRat::one().checked_div(&QRat::zero()), Err(Error::DivideByZero));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_at(&q_int(3, 1).unwrap(), &rat(1, 1)).unwrap(), rat(3, 1));
        assert_eq!(eval_at(&q_int(2, 1).unwrap(), &rat(1, 2)).unwrap(), rat(3, 2));
        assert!(matches!(eval_at(&r("1/(1-q)"), &rat(1, 1)), Err(Error::PoleAtPoint { .. })));
        // removable singularity cancels in canonical form
        let x = r("(1-q^4)/(1-q)");
        assert_eq!(eval_at(&x, &rat(1, 1)).unwrap(), rat(4, 1));
        assert!(eval_at(&QRat::zero(), &rat(0, 1)).unwrap().is_zero());
    }

    #[test]
    fn base_inversion_of_q_integers() {
        for n in 1..12 {
            let lhs = q_int(n, -1).unwrap();
            let rhs = &QRat::q_pow(1 - n as i64) * &q_int(n, 1).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(q_int(n, 1).unwrap().invert_base(), lhs);
        }
    }

    #[test]
    fn q_int_limits_to_n() {
        for n in 1..10u32 {
            for k in [-4i64, -2, -1, 1, 3] {
                let v = eval_at(&q_int(n, k).unwrap(), &BigRational::one()).unwrap();
                assert_eq!(v, rat(n as i64, 1));
            }
        }
    }
}
