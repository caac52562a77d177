//! Exact sparse polynomial arithmetic over the rationals.

mod int;
mod monomial;
mod ordering;
mod parse;
mod polynomial;

pub use int::{prepare_generators, IntPoly};
pub use monomial::{Exponent, Monomial, MonomialDisplay};
pub use ordering::{MonomialOrdering, OrderedMonomial};
pub use parse::{parse_polynomial, parse_system, PolySystem, VariableSet, MAX_VARS};
pub use polynomial::{homogenize, Coeff, PolyDisplay, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("polynomials use different monomial orderings")]
    OrderingMismatch,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("leading monomial of the reducer does not divide the monomial")]
    NotDivisible,
    #[error("monomial does not occur in the polynomial")]
    MissingMonomial,
    #[error("too many variables ({0}); at most {max} are supported", max = MAX_VARS)]
    TooManyVariables(usize),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}
