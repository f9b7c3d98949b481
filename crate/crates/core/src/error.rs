use thiserror::Error;

use crate::spin::Spin;

#[derive(Debug, Error)]
pub enum Error {
    #[error("triangle condition violated by ({0}, {1}, {2})")]
    SelectionRule(Spin, Spin, Spin),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("cannot parse {0:?} as a spin (expected \"n\" or \"n/2\")")]
    ParseSpin(String),

    /// Negative Cayley-Menger determinant: no Euclidean realization exists.
    #[error("geometrically forbidden configuration (Cayley-Menger determinant {determinant:e})")]
    Forbidden { determinant: f64 },

    /// The configuration sits on a caustic (degenerate tetrahedron or a single J4 solution).
    #[error("caustic configuration (normalized margin {margin:e})")]
    Caustic { margin: f64 },

    #[error("angle undefined: vectors {0} are collinear")]
    UndefinedAngle(&'static str),

    #[error("outside the classically allowed region (margins {margin1:e}, {margin2:e})")]
    Region { margin1: f64, margin2: f64 },

    #[error("no admissible j5 for this configuration")]
    EmptyRange,

    #[error("no classically allowed rows to summarize")]
    NoAllowedRows,

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
