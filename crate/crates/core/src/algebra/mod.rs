//! Exact coefficient arithmetic, truncated series and combinatorial constants.

pub mod bivariate;
pub mod combinat;
pub mod poly;
pub mod scalar;
pub mod series;

pub use bivariate::BiSeries;
pub use combinat::{bernoulli, binomial, double_factorial, factorial, odd_double_factorial, stirling_coefficient};
pub use poly::Poly;
pub use scalar::{RingMode, Scalar};
pub use series::{Series, SeriesError};
