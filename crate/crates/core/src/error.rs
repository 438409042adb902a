use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coin system must contain at least one denomination")]
    EmptyList,

    #[error("smallest denomination must be 1, found {0}")]
    FirstNotOne(u64),

    #[error("denomination at position {index} is {value}; denominations must be positive")]
    NonPositiveValue { index: usize, value: i128 },

    #[error("{}", strictly_increasing_msg(*.index, *.previous, *.value))]
    NotStrictlyIncreasing { index: usize, previous: u64, value: u64 },

    #[error("denomination {0} is too large: pairwise sums must fit in 64 bits")]
    Overflow(u128),

    #[error("dynamic programming table of {requested} entries exceeds the budget of {budget}")]
    LimitExceeded { requested: u64, budget: u64 },

    #[error("operation needs {expected} denominations, system has {found}")]
    WrongArity { expected: &'static str, found: usize },

    #[error("new coin {new} must exceed the current largest coin {largest}")]
    NotAnExtension { largest: u64, new: u64 },

    #[error("precondition not met: {0}")]
    PreconditionUnmet(String),

    #[error("theorem violated: {0}")]
    TheoremViolation(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("cannot parse {token:?} as a denomination")]
    Parse { token: String },
}

fn strictly_increasing_msg(index: usize, previous: u64, value: u64) -> String {
    if previous == value {
        format!("duplicate denomination {value} at position {index}")
    } else {
        format!(
            "denominations must be strictly increasing: {value} at position {index} follows {previous}"
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
