use thiserror::Error;

/// Errors surfaced by the workbench.
///
/// Rank ambiguities are never resolved silently: whenever a singular value of
/// a rank decision lands inside the configured band around the threshold, the
/// computation aborts with [`Error::AmbiguousRank`].
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unbound parameter `{0}` in expression")]
    UnboundParameter(String),

    #[error("expected a homogeneous polynomial, got mixed degrees {0:?}")]
    NotHomogeneous(Vec<usize>),

    #[error("degree {degree} exceeds the algebra's degree cap {cap}")]
    DegreeAboveCap { degree: usize, cap: usize },

    #[error(
        "ambiguous rank decision in degree {degree}: singular value {sigma:.3e} lies within a \
         factor {band:.0e} of the threshold {threshold:.3e}"
    )]
    AmbiguousRank {
        degree: usize,
        sigma: f64,
        threshold: f64,
        band: f64,
    },

    #[error("no central cubic found (nullity 0); residual floor {residual:.3e}")]
    NoCentralCubic { residual: f64 },

    #[error("linear system inconsistent: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    Inconsistent { residual: f64, tolerance: f64 },

    #[error("matrix factorization invariant violated: {0}")]
    MfInvariant(String),

    #[error("graded matrix has an entry of wrong degree at ({row},{col}): expected {expected}, got {got}")]
    BadEntryDegree {
        row: usize,
        col: usize,
        expected: i64,
        got: usize,
    },

    #[error("point does not lie on the cubic: residual {0:.3e}")]
    NotOnCubic(f64),

    #[error("automorphism undefined: rank of M(p) is {rank} < 2 (kernel candidate {kernel:?})")]
    SigmaUndefined { rank: usize, kernel: Vec<(f64, f64)> },

    #[error("lines are parallel; no transverse intersection")]
    ParallelLines,

    #[error(
        "enumeration window certifies |k| <= {certified} but |k| <= {requested} was requested"
    )]
    WindowTooSmall { certified: i64, requested: i64 },

    #[error("triangle areas do not follow the quadratic lattice pattern: {0}")]
    AreaPattern(String),

    #[error("chain map pattern incompatible: residual {0:.3e}")]
    PatternIncompatible(f64),

    #[error("the solved map is nullhomotopic (residual {0:.3e}); degenerate choice")]
    Nullhomotopic(f64),

    #[error("unsupported derivative convention `{0}`")]
    UnknownConvention(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
