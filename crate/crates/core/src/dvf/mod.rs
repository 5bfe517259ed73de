//! Dressed-vacuum-form functions: box functions, tableau sums, generating
//! series and quantum Jacobi-Trudi determinants.

mod config;
pub mod fixtures;
mod functions;
mod lazy;
mod mixed;
mod roots;
mod sym;

pub use config::{BoxSpec, Preset, QRatio, RootSystemConfig};
pub use functions::{Axis, Dvf, SeriesKind};
pub use lazy::TableauSum;
pub use mixed::{ab_function, ab_series, convolution_residual, crossing_residual, mixed_identity_residual, AbKind};
pub use roots::BetheRootSet;
pub use sym::{AtomKey, Monomial, SymSum};

use thiserror::Error;

use crate::diagrams::DiagramError;
use crate::qarith::QArithError;
use crate::tableaux::TableauError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DvfError {
    #[error("label {0} is not in the label set")]
    UnknownLabel(i32),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("preset {preset} is not defined for r = {r}, s = {s}")]
    PresetRank { preset: &'static str, r: i32, s: i32 },
    #[error("determinant of size {0} exceeds the expansion limit")]
    MatrixTooLarge(usize),
    #[error("the identity needs r != s")]
    EqualRankError,
    #[error("normalizer vanishes for this shape")]
    VanishingNormalizer,
    #[error("root set has {found} colors, preset needs {expected}")]
    ColorMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    QArith(#[from] QArithError),
}
