use thiserror::Error;

/// Errors raised by word parsing and the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message} (near `{token}`)")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },

    #[error("genus must be at least 1")]
    InvalidGenus,

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: u32, right: u32 },

    #[error("degree bound mismatch: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },

    #[error("lattice generators must have integer coordinates")]
    NonIntegralGenerator,

    #[error("expected constant term {expected}, found {found}")]
    ConstantTerm { expected: String, found: String },

    #[error("derivation generator must lie in degree >= 1")]
    DerivationConstant,

    #[error("degree {requested} is outside the supported range ({supported})")]
    DegreeOutOfRange {
        requested: usize,
        supported: &'static str,
    },

    #[error("algebraic intersection is {0}, the twist comparison requires 0")]
    NonzeroIntersection(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(position: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            token: token.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by user input rather than a broken invariant.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_genus(left: u32, right: u32) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::GenusMismatch { left, right })
    }
}
