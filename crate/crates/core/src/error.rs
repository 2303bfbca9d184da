use alloc::string::String;

use thiserror::Error;

use crate::bits::BitString;
use crate::enumerator::Budget;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A predictor was conditioned on (or asked to extend) a prefix it gives
    /// measure zero.
    #[error("prefix \"{prefix}\" has measure zero under the predictor")]
    OffSupport { prefix: BitString },

    /// The budgeted estimate of `prefix` is zero, so a ratio is undefined.
    #[error("estimate of prefix \"{prefix}\" is zero at this budget; raise the budget")]
    ZeroDenominator { prefix: BitString },

    #[error("invalid predictor spec: {0}")]
    InvalidSpec(String),

    /// `refine` was asked to shrink a budget.
    #[error("budget {requested} is not componentwise >= previous budget {previous}")]
    BudgetRegression { previous: Budget, requested: Budget },

    #[error("refine called with a different machine or target than the previous estimate")]
    EstimateMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable upper-case name used on diagnostic streams.
    pub fn name(&self) -> &'static str {
        match self {
            Error::OffSupport { .. } => "OFF_SUPPORT",
            Error::ZeroDenominator { .. } => "ZERO_DENOMINATOR",
            Error::InvalidSpec(_) => "INVALID_SPEC",
            Error::BudgetRegression { .. } => "BUDGET_REGRESSION",
            Error::EstimateMismatch => "ESTIMATE_MISMATCH",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::Parse(_) => "PARSE_ERROR",
        }
    }
}
