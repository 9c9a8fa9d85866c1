use adams_core::cofree_q::CofreeError;
use adams_core::combinatorics::CombinatoricsError;
use adams_core::species::SpeciesError;
use adams_core::spectra::SpectraError;
use adams_core::SeriesError;
use adams_oracle::OracleError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    /// A mathematical or data error, reported under the module's error name.
    #[error("{name}: {message}")]
    Domain { name: String, message: String },
    /// A bad flag combination that clap cannot express.
    #[error("{message}")]
    Usage { subcommand: &'static str, message: String },
}

impl CliError {
    pub fn domain(name: &str, message: impl Into<String>) -> Self {
        CliError::Domain { name: name.to_string(), message: message.into() }
    }

    pub fn usage(subcommand: &'static str, message: impl Into<String>) -> Self {
        CliError::Usage { subcommand, message: message.into() }
    }

    pub fn name(&self) -> &str {
        match self {
            CliError::Domain { name, .. } => name,
            CliError::Usage { .. } => "Usage",
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain { name: e.name().to_string(), message: e.to_string() }
            }
        }
    )*};
}

domain_from!(SpectraError, SeriesError, CombinatoricsError, CofreeError, SpeciesError, OracleError);
