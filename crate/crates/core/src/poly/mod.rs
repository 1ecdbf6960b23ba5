//! Exact multivariate polynomial, Laurent polynomial and rational function
//! arithmetic with arbitrary precision integer coefficients.

mod factor;
mod gcd;
mod laurent;
mod monomial;
mod mpoly;
mod parse;
mod rational;

pub use factor::{irreducible, IrredBudget, Irreducibility};
pub use gcd::gcd;
pub(crate) use gcd::remove_common_factors;
pub use laurent::{is_laurent_unit, LaurentPoly};
pub use monomial::Monomial;
pub use mpoly::MPoly;
pub use parse::parse_expr;
pub(crate) use parse::parse_expr_at;
pub use rational::{compose_laurent, compose_poly, RationalExpr};

#[cfg(test)]
mod proptests;
