//! Exact and high-precision machinery for higher Heegner cycles on modular
//! curves: Weil representations, vector-valued q-expansions, Heegner
//! divisors, Rankin–Cohen brackets, Shimura lifts, the constant-term
//! identity, global height assembly and central L-derivatives.
//!
//! Numerical routines are generic over [`scalars::Real`] and exact ones over
//! [`scalars::Coeff`] / [`scalars::Ring`]; the aliases below fix the scalar
//! types used by the command-line tool.

pub mod error;
pub mod heegner;
pub mod intersect;
pub mod kappa;
pub mod lfunc;
pub mod scalars;
pub mod specfun;
pub mod vvforms;
pub mod weilrep;

pub use error::{Error, Result};

/// Scalar q-series with exact rational coefficients.
pub type RatSeries = vvforms::QSeries<scalars::Rat>;
/// Scalar q-series with coefficients in Q(√d₁, √d₂, …).
pub type RadicalSeries = vvforms::QSeries<scalars::Radical>;
/// Cyclotomic numbers with rational coordinates.
pub type ExactCyclo = scalars::Cyclo<scalars::Rat>;
/// Cyclotomic integers.
pub type IntCyclo = scalars::Cyclo<i64>;
/// L-series evaluated in double precision.
pub type LSeries64 = lfunc::LSeries<f64>;
/// L-series evaluated at the working precision of [`scalars::BigFloat`].
pub type LSeriesBig = lfunc::LSeries<scalars::BigFloat>;
