use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("group is not cyclic: {0}")]
    NotCyclic(String),

    #[error("free product factor {index} is not a finite cyclic group")]
    FreeProductFactor { index: usize },

    #[error("orbit exceeds the configured bound of {bound} points")]
    OrbitBound { bound: usize },

    #[error("enumeration guard of {bound} elements exceeded at radius/shell {shell}")]
    EnumerationGuard { bound: usize, shell: usize },

    #[error("isotypic splitting did not converge (max residual {residual:.3e})")]
    SplittingFailed { residual: f64 },

    #[error("{what}: value {value:.9} is {residual:.3e} away from an integer")]
    RoundingResidual { what: String, value: f64, residual: f64 },

    #[error("representation audit failed: {0}")]
    NotUnitaryRep(String),

    #[error("element {lambda} does not fix the class of the representation")]
    NotFixed { lambda: usize },

    #[error("intertwiner space has dimension {dim}, expected 1 (is the representation irreducible?)")]
    Reducible { dim: usize },

    #[error("cocycle mismatch: max deviation {deviation:.3e}")]
    CocycleMismatch { deviation: f64 },

    #[error("completeness audit failed: expected {expected}, got {got}")]
    Completeness { expected: usize, got: usize },

    #[error("fusion sum {0} is not an integer")]
    NonIntegerFusion(String),

    #[error("multiplicity depends on the base point: {0:?}")]
    BasePointDependence(Vec<usize>),

    #[error("element has blocks outside the classified index set: class {0}")]
    OutsideIndex(usize),

    #[error("length function is not invariant: {0}")]
    NotInvariant(String),

    #[error("automorphism set is not closed under composition")]
    NotClosed,

    #[error("class not found: {0}")]
    ClassNotFound(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for the errors that come from a malformed instance rather than a failed audit.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::Config { .. }
                | Error::Json(_)
                | Error::InvalidTable(_)
                | Error::NotHomomorphism(_)
                | Error::NotAutomorphism(_)
                | Error::NotSubgroup(_)
                | Error::NotCyclic(_)
                | Error::FreeProductFactor { .. }
                | Error::Unsupported(_)
        )
    }
}
