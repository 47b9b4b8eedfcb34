//! Special functions: Legendre polynomials, binomials at half-integers,
//! complete and incomplete Gamma, Kummer/Whittaker functions.

pub mod gamma;
pub mod legendre;
pub mod whittaker;

pub use gamma::{gamma, gamma_half_integer_over_sqrt_pi, inc_gamma, inc_gamma_recurrence_residual, ln_gamma};
pub use legendre::{half_binom, legendre_beta, legendre_genfun_check, legendre_rodrigues, RatPoly};
pub use whittaker::{hyp1f1, raising_seed_check, whittaker_m_script, whittaker_m_script_truncated};
