//! Real-valued special functions used by the fading laws.
//!
//! All routines are pure, double-precision accurate for `f64`, and generic
//! over [`Real`](crate::Real).

mod bessel;
mod gamma;
mod marcum;
mod quad;

pub use bessel::{
    bessel_crossover, bessel_i, bessel_i_scaled, bessel_i_scaled_asymptotic, bessel_i_scaled_series,
};
pub use gamma::{inv_reg_lower_incomplete_gamma, ln_gamma, reg_lower_incomplete_gamma, reg_upper_incomplete_gamma};
pub use marcum::marcum_q;
pub use quad::{integrate, integrate_from_zero, QuadratureSpec};

pub(crate) use bessel::ln_bessel_i_scaled;
pub(crate) use gamma::{ln_gamma_unchecked, GammaShape};
pub(crate) use marcum::marcum_q_unchecked;
