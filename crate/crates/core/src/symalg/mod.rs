//! Exact Laurent-polynomial and truncated power-series arithmetic.
//!
//! Coefficients are arbitrary-precision rationals throughout. Half powers
//! (`q^{1/2}`, `a_i^{1/2}`) are carried by separate variables whose
//! exponents are checked for parity before results are rewritten in the
//! original variables.

mod laurent;
mod series;

pub use laurent::{rat, var_names, Exponents, LaurentPoly};
pub use series::{TruncSeries, UniPoly};
