//! Truncated formal power series with exact rational coefficients.

mod bivariate;
mod newton;
mod univariate;

pub use bivariate::BSeries;
pub use newton::{newton_implicit, newton_scalar, solve_linear, FnSystem, ImplicitSystem, SeriesRing};
pub use univariate::USeries;

/// Exact rational coefficient, always kept in lowest terms.
pub type Rat = rug::Rational;
