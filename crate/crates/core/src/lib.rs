//! Exact q-deformed disentanglement of exponential operators.
//!
//! The crate derives, order by order, the factorizations
//!
//! ```text
//! e_q^{x(A+B)} = e_q^{xA} e_q^{xB} e_{q^2}^{x^2 C2} e_{q^3}^{x^3 C3} ...   (escalating bases)
//! e_q^{x(A+B)} = e_q^{xA} e_q^{xB} e_q^{x^2 c2} e_q^{x^3 c3} ...           (uniform base)
//! e_q^{xA} e_q^{xB} = e_q^{x(A+B) + x^2 Z2 + x^3 Z3 + ...}                  (q-BCH)
//! ```
//!
//! over the free algebra on `A`, `B` with coefficients in `Q(q)`, where `e_q` is the
//! Jackson q-exponential. Results can be taken to the classical limit `q -> 1`,
//! rewritten for the `e_q(x)` / `E_q(x)` conventions, checked symbolically, and
//! cross-checked numerically with random matrices.

pub mod disentangler;
pub mod error;
pub mod export;
pub mod gseries;
pub mod matoracle;
pub mod qfield;
pub mod wordalg;

pub use error::{Error, Result};
pub use qfield::{QPoly, QRat};
pub use wordalg::{Letter, NCPoly, Word};
pub use gseries::GradedSeries;
pub use disentangler::{Convention, Factor, Factorization, Variant};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 6;
/// Largest truncation order any derivation accepts.
pub const MAX_ORDER: usize = 10;
