use crate::poly::Context;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("variable signature mismatch: (m={}, n={}) vs (m={}, n={})", left.m, left.n, right.m, right.n)]
    ContextMismatch { left: Context, right: Context },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("relation {column} is not homogeneous: {detail}")]
    NotHomogeneous { column: usize, detail: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{route} route did not stabilize for (i={i}, p={p}) within k_cap={k_cap}: last values {last:?}")]
    StabilizationCapExceeded { route: &'static str, i: i64, p: i64, k_cap: u32, last: [String; 2] },

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for the command-line surface.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::StabilizationCapExceeded { .. } => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}
