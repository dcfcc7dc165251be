use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] monotone_index::Error),

    #[error("{0}")]
    Usage(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    /// 2 usage or parse errors, 3 domain and degeneracy errors, 4 numerical
    /// non-convergence.
    pub fn exit_code(&self) -> i32 {
        use monotone_index::Error as E;
        match self {
            CliError::Core(E::NonConvergence { .. } | E::NonFiniteIntegrand { .. }) => 4,
            CliError::Core(E::InvalidParameter(_)) => 2,
            CliError::Core(_) => 3,
            CliError::Usage(_) | CliError::Input(_) | CliError::Io(_) | CliError::ThreadPool(_) => 2,
        }
    }
}
