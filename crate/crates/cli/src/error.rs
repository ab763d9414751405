use crate::spec::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] nccr_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 1 for a computation that could not be completed.
    pub fn exit_code(&self) -> u8 {
        use nccr_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Core(
                E::OutOfRange { .. }
                | E::SmallRank(_)
                | E::Length { .. }
                | E::BadTriple(_)
                | E::NotDominant(_)
                | E::NotGenerated(_)
                | E::UnsupportedPair(..),
            ) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}
