use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} must lie in [0, 1], got {value}")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("probabilities must sum to 1 (within 1e-9), got {sum}")]
    Normalization { sum: f64 },

    #[error("joint probability needs projectors from two different bases")]
    SameBasis,

    #[error("conditioning event has probability {probability:e}; the conditional is undefined")]
    UndefinedConditional { probability: f64 },

    #[error("invalid interference spec: {0}")]
    InvalidSpec(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("invalid fit target: {0}")]
    InvalidTarget(String),

    #[error("grid needs at least 2 steps per axis, got {0}")]
    TooFewSteps(usize),

    #[error("frames must be distinct, got `{0}` twice")]
    SameFrame(String),

    #[error("unknown frame `{0}`")]
    UnknownFrame(String),

    #[error("no relation connects frame `{from}` to frame `{to}`")]
    UnknownRelation { from: String, to: String },

    #[error(
        "angle({from}, {to}) = {requested} conflicts with {existing} implied via {via:?} \
         (triangle {from}, {via}, {to})"
    )]
    FrameConflict {
        from: String,
        to: String,
        via: String,
        existing: f64,
        requested: f64,
    },
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
