use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("field {field} does not contain a primitive {r}-th root of unity")]
    MissingRoots { field: String, r: u32 },

    #[error("variable context mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("division is not exact: remainder has term {remainder_term}")]
    NonExactDivision { remainder_term: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("differential squared is not scalar: entry ({row}, {col}) is {entry}, expected {expected}")]
    NotScalarSquare { row: usize, col: usize, entry: String, expected: String },

    #[error("curvature mismatch: {0} vs {1}")]
    CurvatureMismatch(String, String),

    #[error("invariant violated: {what}; residual {residual}")]
    Invariant { what: String, residual: String },

    #[error("could not find a sample point off the support locus after {attempts} attempts")]
    NoSamplePoint { attempts: usize },

    #[error("{0}")]
    Unsupported(String),

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error("{context}: {source}")]
    Context { context: String, source: Box<Error> },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invariant(what: impl Into<String>, residual: impl ToString) -> Self {
        Error::Invariant { what: what.into(), residual: residual.to_string() }
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context { context: context.into(), source: Box::new(self) }
    }

    /// The innermost error under any context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            e => e,
        }
    }
}
