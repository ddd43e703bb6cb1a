//! Crate-wide error type.

use thiserror::Error;

/// Domain and runtime errors surfaced by the simulation modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0:?} is not a vertex of the lattice")]
    VertexOutsideLattice([i64; 2]),

    #[error("ball (center {center:?}, radius {radius}) does not fit inside the lattice")]
    BallTooLarge { center: [i64; 2], radius: i64 },

    #[error("invalid lattice parameters: {0}")]
    InvalidLattice(String),

    #[error("invalid environment parameters: {0}")]
    InvalidEnvironment(String),

    #[error("time {t} outside window [{start}, {end}]")]
    TimeOutsideWindow { t: f64, start: f64, end: f64 },

    #[error("spatial shifts require a torus lattice (censored boxes support only time shifts)")]
    SpatialShiftOnBox,

    #[error("operation requires a torus lattice")]
    TorusRequired,

    #[error("jump cap must be positive")]
    NonPositiveJumpCap,

    #[error("start vertex {0:?} lies outside the censoring box")]
    StartOutsideBox([i64; 2]),

    #[error("path is undefined on [{a}, {b}]: explosion cap reached")]
    ExplodedRegion { a: f64, b: f64 },

    #[error("walk pair requires two distinct seeds")]
    EqualSeeds,

    #[error("uniformization tolerance must be positive")]
    NonPositiveTolerance,

    #[error("lattice has {0} vertices, above the dense-kernel cap of {1}")]
    KernelSizeCap(usize, usize),

    #[error("norm order p must satisfy p >= 1")]
    InvalidNormOrder,

    #[error("missing p-norm for order {0}")]
    MissingNorm(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
