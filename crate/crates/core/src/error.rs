use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero vector has no projective meaning")]
    ZeroVector,
    #[error("third homogeneous coordinate vanishes; the vector lies at infinity of the affine chart")]
    PolarAtInfinity,
    #[error("vector is positive (normalized form value {0:e}); it is not a point of the closed ball")]
    PositiveVector(f64),
    #[error("vector is not positive (form value {0:e}); it cannot be a polar vector")]
    NotPolar(f64),
    #[error("vectors are parallel; they do not span a plane")]
    DegenerateSpan,
    #[error("point with |z|^2 = {0} is not inside the ball")]
    OutsideBall(f64),
    #[error("point with |z|^2 = {0} is not on the boundary sphere")]
    NotOnBoundary(f64),
    #[error("distance must be positive, got {0}")]
    NonPositiveDistance(f64),
    #[error("lines are not ultraparallel (N = {0})")]
    NotUltraparallel(f64),
    #[error("lines do not intersect transversally (N = {0})")]
    NotTransversal(f64),
    #[error("perturbation radius {eps} outside (0, {max})")]
    EpsilonOutOfRange { eps: f64, max: f64 },
    #[error("angle {0} outside (0, pi/2]")]
    AngleOutOfRange(f64),
    #[error("parameter |w| = {0} is not inside the unit disc")]
    OutOfBall(f64),
    #[error("parameter {name} = {value} out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("matrix is not in SU(2,1): {0}")]
    NotUnitary(String),
    #[error("isometry does not stabilize the line (residual {0:e})")]
    NotStabilizing(f64),
    #[error("radius must be non-negative, got {0}")]
    NegativeRadius(f64),
    #[error("input {name} must be non-negative, got {value}")]
    NegativeInput { name: &'static str, value: f64 },
    #[error("at least {min} samples required, got {got}")]
    InsufficientSamples { got: usize, min: usize },
    #[error("area must be positive, got {0}")]
    NonPositiveArea(f64),
    #[error("Euler characteristic must be negative, got {0}")]
    NonNegativeChi(i64),
    #[error("Euler characteristic {0} is not that of a closed orientable surface of genus >= 2")]
    InvalidChi(i64),
    #[error("tube volume {vol_tube} is not smaller than the manifold volume {vol_manifold}")]
    TubeExceedsManifold { vol_manifold: f64, vol_tube: f64 },
    #[error("genus {0} is too small; need g >= 2")]
    GenusTooSmall(u32),
    #[error("point is at distance {0:e} from the invariant line")]
    PointOffLine(f64),
    #[error("configuration is not in general position: {0}")]
    NotInGeneralPosition(&'static str),
    #[error("combination precondition fails with margin {margin}")]
    PreconditionFailed { margin: f64 },
    #[error("depth {depth} would enumerate {words} words, over the budget of {budget}")]
    DepthTooLarge { depth: usize, words: u128, budget: u128 },
    #[error("neighborhood condition fails for generator {generator} at boundary sample {sample:?}")]
    NeighborhoodConditionFailed { generator: usize, sample: [f64; 4] },
    #[error("bisector spine endpoint is not a boundary point of its carrier line (residual {0:e})")]
    InvalidSpine(f64),
}
