//! Arithmetic of products and sums of q-brackets `[u] = (q^u − q^{-u})/(q − q^{-1})`
//! after the substitution `x = q^u`.

mod expr;
mod laurent;
mod scalar;
mod term;

pub use expr::{determinant, DegreeBound, LazyFunction, RatExpr, ZeroCertificate};
pub use laurent::Laurent;
pub use scalar::{parse_rat, rat, rat_to_f64, Rat, Scalar, FLOAT_MERGE_TOL};
pub use term::{BracketAtom, FactoredTerm, QField, QParameter, TermSum, FLOAT_VANISH_TOL};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QArithError {
    #[error("q = {0} is not generic (must avoid 0 and ±1)")]
    InvalidQ(String),
    #[error("a denominator bracket vanishes at the evaluation point")]
    PoleAtEvaluationPoint,
    #[error("certified equality needs an exact field; use approx_equals")]
    InexactField,
    #[error("pole of order two or more at the requested point")]
    HigherOrderPole,
    #[error("limit at infinity diverges (positive total degree)")]
    DivergentLimit,
}
