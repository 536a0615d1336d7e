use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{what} fails {law} at basis tuple {witness:?}")]
    Law {
        what: String,
        law: String,
        witness: Vec<usize>,
    },
    #[error("not a strong deformation map")]
    NotStrong,
    #[error("not a weak deformation map")]
    NotWeak,
    #[error("not a twisted Rota-Baxter operator")]
    NotTwistedRotaBaxter,
    #[error("theta is not zero, so this is not a matched pair")]
    ThetaNonzero,
    #[error("element is not Maurer-Cartan")]
    NotMaurerCartan,
    #[error("a bracket of arity {needed} exceeds the window (max arity {max})")]
    WindowOverflow { needed: usize, max: usize },
    #[error("1/{0}! does not exist in characteristic {1}")]
    FactorialNotInvertible(usize, u64),
    #[error("element has degree {0}, expected 0")]
    NotDegreeZero(i64),
    #[error("element is outside the carrier: {0}")]
    NotInCarrier(String),
    #[error("search space of {size} candidates exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("{0}")]
    Invalid(String),
}
