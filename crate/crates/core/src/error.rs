use thiserror::Error;

/// Errors produced while compiling or projecting a series.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcrError {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("argument out of range: {0}")]
    Domain(String),

    #[error("inadmissible triad ({0}, {1}, {2}) in twice-spin units{3}")]
    InadmissibleTriad(i64, i64, i64, String),

    #[error("unbounded series: {0}")]
    Unbounded(&'static str),

    #[error("unsupported series shape: {0}")]
    Unsupported(String),

    #[error("inadmissible: pole at Phi_{0}")]
    Pole(u32),

    #[error("cyclotomic index {index} exceeds projection table size {d_max}")]
    IndexOutOfTable { index: u32, d_max: u32 },

    #[error("non-finite value in double precision evaluation ({0}); raise the precision")]
    NonFinite(&'static str),

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed triangulation: {0}")]
    Triangulation(String),
}

impl DcrError {
    /// True for errors caused by inadmissible user input rather than a bug or
    /// a numeric breakdown.
    pub fn is_inadmissible(&self) -> bool {
        matches!(
            self,
            DcrError::InadmissibleTriad(..) | DcrError::Pole(_) | DcrError::Domain(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, DcrError>;
