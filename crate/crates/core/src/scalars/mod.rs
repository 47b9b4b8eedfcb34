//! Exact and high-precision scalar arithmetic.

pub mod bigfloat;
pub mod complex;
pub mod cyclo;
pub mod rat;
pub mod real;
pub mod surd;

pub use bigfloat::{with_precision, working_precision, BigFloat, DEFAULT_PRECISION};
pub use complex::{cx, e_of, Cx};
pub use cyclo::{cyclo_root_of_unity, cyclo_to_bigfloat, Cyclo};
pub use rat::{rat, rat_int, Coeff, Rat, Ring, ToRat};
pub use real::{Real, RealValue};
pub use surd::{surd_mul, Radical, SurdVal};
