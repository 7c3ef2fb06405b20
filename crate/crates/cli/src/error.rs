use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] sundial_core::Error),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for configurations rejected before any computation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use sundial_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Core(
                E::NotPrime(_)
                | E::PrimeTooSmall { .. }
                | E::InvalidDimension(_)
                | E::DimensionTooSmall(_)
                | E::DimensionMismatch { .. }
                | E::OutOfStatedRange { .. },
            ) => 2,
            CliError::Json(e) if e.is_data() || e.is_syntax() => 2,
            _ => 1,
        }
    }
}
