use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point ({re}, {im}) is not in the upper half-plane")]
    NotInUpperHalfPlane { re: f64, im: f64 },
    #[error("matrix has determinant {det}, expected 1")]
    InvalidDeterminant { det: f64 },
    #[error("boundary points must be pairwise distinct")]
    DegeneratePoints,
    #[error("geodesics do not intersect in the open half-plane")]
    NoIntersection,
    #[error("elliptic element has no fixed points on the boundary")]
    EllipticElement,
    #[error("ball has more than {cap} elements")]
    BallTooLarge { cap: usize },
    #[error("invalid group spec: {0}")]
    InvalidGroupSpec(&'static str),
    #[error("ray time must be nonnegative, got {0}")]
    NegativeTime(f64),
    #[error("enumerated ball is empty")]
    EmptyBall,
    #[error("only {found} of {required} sequence terms qualify")]
    NoSequenceFound { found: usize, required: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
