use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} outside domain ({requirement})")]
    Domain {
        function: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("{what}: requested accuracy not reached (estimate {estimate:e}, error bound {error_bound:e})")]
    Accuracy {
        what: &'static str,
        estimate: f64,
        error_bound: f64,
    },

    #[error("probability {0} is singular for binary Fisher information (need 0 < p < 1)")]
    SingularProbability(f64),

    #[error("Fisher information is zero; variance bound is unbounded")]
    UnboundedVariance,
}

impl Error {
    pub(crate) fn domain(function: &'static str, value: f64, requirement: &'static str) -> Self {
        Error::Domain {
            function,
            value,
            requirement,
        }
    }

    pub fn is_accuracy(&self) -> bool {
        matches!(self, Error::Accuracy { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
