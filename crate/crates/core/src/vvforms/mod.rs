//! Vector-valued q-expansions and the operations on them.

pub mod harmonic;
pub mod io;
pub mod ops;
pub mod qseries;

pub use harmonic::{
    input_weight, poincare_principal_part, raising_coeffs, xi_apply, xi_constant, z_sign, ArgScale,
    CuspFormExpansion, HarmonicFormModel, XiImage,
};
pub use qseries::{product_prec, QSeries, Symbolic, VVQExpansion};
pub use io::VVFormFile;
