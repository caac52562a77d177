//! Involutive bases over the rationals.
//!
//! * [`poly`]: exact sparse polynomials, orderings and the text input format.
//! * [`divisions`]: Janet and Pommaret multiplicative variables.
//! * [`hilbert`]: involutive and brute-force Hilbert functions.
//! * [`signatures`]: module signatures under the Schreyer ordering.
//! * [`moller`]: signature-pruned Buchberger algorithm and a plain Buchberger oracle.
//! * [`involutive`]: signature-based involutive completion with criteria and
//!   Hilbert-driven pruning.
//! * [`quasistable`]: quasi-stability test and the coordinate-change driver.

pub mod divisions;
pub mod hilbert;
pub mod involutive;
pub mod moller;
pub mod poly;
pub mod quasistable;
pub mod signatures;
pub mod stats;

pub use divisions::Division;
pub use poly::{Coeff, Monomial, MonomialOrdering, PolySystem, Polynomial, VariableSet};
pub use stats::RunStats;
