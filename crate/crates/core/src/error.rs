use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order cap exceeded: closure reached more than {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("degree cap exceeded: degree {degree} is above the cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("subgroup enumeration cap exceeded: group order {order} is above the cap {cap}")]
    SubgroupCapExceeded { order: usize, cap: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element does not normalize the subgroup")]
    NotNormalized,
    #[error("subgroup is not fully normalized in the fusion system")]
    NotFullyNormalized,
    #[error("subgroup is not centric in the fusion system")]
    NotCentric,
    #[error("subgroup is not normal in the fusion system")]
    NotNormalInF,
    #[error("fusion systems live on different Sylow subgroups")]
    MismatchedSylow,
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn bad(msg: impl Into<String>) -> Self {
        Error::BadParameters(msg.into())
    }

    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), message: message.into() }
    }

    /// True for the errors that signal a size limit rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::DegreeCapExceeded { .. }
                | Error::SubgroupCapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
