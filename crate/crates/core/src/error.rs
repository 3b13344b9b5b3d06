use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A restriction asked for variables the tuple does not carry.
    #[error("tuple is not defined on {missing}")]
    Domain { missing: String },

    /// A row handed to the table constructor does not fit the schema.
    #[error("row {row} does not match schema {schema}")]
    Construction { row: String, schema: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("value error: {0}")]
    Value(String),

    #[error("cannot compose mappings: {0}")]
    Composition(String),

    #[error("invalid mapping: {0}")]
    Mapping(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("unknown law `{0}`")]
    UnknownLaw(String),

    #[error("invalid model: {0}")]
    Model(String),
}

impl Error {
    pub(crate) fn parse(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let offset = offset.min(src.len());
        let before = &src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse { line, column, message: message.into() }
    }
}
