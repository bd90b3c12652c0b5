//! Exact arithmetic kernel: coefficients, Laurent polynomials, rational
//! functions with factored denominators, and bidirectional Laurent series.

pub mod coeff;
pub mod poly;
pub mod rational;
pub mod series;
pub mod text;
pub mod var;

pub use coeff::Q;
pub use poly::{LaurentPoly, Monomial};
pub use rational::{Factor, RationalFunction};
pub use series::{coefficient_at, delta_coefficient, delta_coefficients, expand_at, limit, Direction, LaurentSeries, DEFAULT_ORDER};
pub use text::{parse_poly, parse_rf, poly_to_string, rf_to_string};
pub use var::{VarId, VarKind};
