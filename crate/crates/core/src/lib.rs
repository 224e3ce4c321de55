//! Colored Jones polynomials of small knots, their cyclotomic and loop
//! expansions, and numerical checks of their large-color asymptotics.

pub mod alexander;
pub mod asymptotics;
pub mod braid;
pub mod cyclotomic;
pub mod error;
pub mod expansions;
pub mod fit;
pub mod jones;
pub mod laurent;
pub mod modular;
pub mod pipeline;
pub mod precision;
pub mod rational;
pub mod series;

pub use rug;
pub use braid::BraidWord;
pub use error::{Error, Result};
pub use jones::{colored_jones, MirrorConvention};
pub use laurent::LaurentPolynomial;
pub use precision::PrecisionComplex;
pub use series::{BivariateSeries, TruncatedSeries};
