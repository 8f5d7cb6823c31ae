//! Generalized fading channels and a RIS-aided NOMA downlink.
//!
//! The crate provides
//!
//! * [`specfun`]: log-gamma, regularized incomplete gamma and its inverse,
//!   exponentially scaled modified Bessel I, generalized Marcum Q, and an
//!   adaptive Gauss-Kronrod integrator;
//! * [`fading`]: the κ-μ (power domain) and α-μ (envelope domain) laws,
//!   Nakagami-m, exact samplers and the classical special-case presets;
//! * [`sysmodel`]: the two-user RIS-aided NOMA downlink, phase alignment,
//!   SINRs after SIC and outage events;
//! * [`montecarlo`]: deterministic, shardable outage-probability sweeps;
//! * [`validation`]: the special-case identity suite used by the CLI.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`). The
//! aliases below fix the scalar to `f64`, which is what the accuracy targets
//! and the CLI use.

// `!(x >= 0)` is how domain checks reject NaN along with negatives.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Tabulated constants are kept at the precision they are published with.
#![allow(clippy::excessive_precision)]

pub mod error;
pub mod fading;
pub mod montecarlo;
pub mod real;
pub mod specfun;
pub mod stats;
pub mod sysmodel;
pub mod validation;

pub use error::{Error, Result};
pub use real::Real;

pub type KappaMu = fading::KappaMuParams<f64>;
pub type AlphaMu = fading::AlphaMuParams<f64>;
pub type Nakagami = fading::NakagamiParams<f64>;
pub type FadingModel = fading::FadingModel<f64>;
pub type Preset = fading::DistributionPreset<f64>;
pub type QuadratureSpec = specfun::QuadratureSpec<f64>;
pub type LinkFading = sysmodel::LinkFading<f64>;
pub type SystemConfig = sysmodel::SystemConfig<f64>;
pub type ChannelRealization = sysmodel::ChannelRealization<f64>;
pub type PhaseShiftMatrix = sysmodel::PhaseShiftMatrix<f64>;
pub type SweepSpec = montecarlo::SweepSpec<f64>;
pub type OutageResult = montecarlo::OutageResult<f64>;

pub type KappaMu32 = fading::KappaMuParams<f32>;
pub type AlphaMu32 = fading::AlphaMuParams<f32>;
pub type Nakagami32 = fading::NakagamiParams<f32>;
