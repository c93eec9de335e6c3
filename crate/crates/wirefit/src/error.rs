use thiserror::Error;

/// Why a parabola pre-fit disqualifies a point run from catenary fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// Quadratic coefficient is negative: the points form an arch, not a sag.
    Concave,
    /// Total sag is below the straightness threshold.
    NearStraight,
}

impl std::fmt::Display for RejectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectReason::Concave => write!(f, "concave"),
            RejectReason::NearStraight => write!(f, "near straight line"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite coordinate")]
    NonFinite,

    #[error("numeric overflow in {0}")]
    Overflow(&'static str),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(&'static str),

    #[error("degenerate parabola: quadratic coefficient is zero")]
    DegenerateParabola,

    #[error("points do not form a catenary: {0}")]
    NotCatenary(RejectReason),

    #[error("too few points: got {got}, need at least {need}")]
    TooFewPoints { got: usize, need: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid curve parameters: {0}")]
    InvalidCurve(&'static str),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at record {line}: {msg}")]
    Parse { line: u64, msg: String },

    #[error("unsupported format: {0}")]
    UnknownFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
