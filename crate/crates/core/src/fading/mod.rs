//! κ-μ and α-μ generalized fading, Nakagami-m, and their samplers.
//!
//! Domain conventions:
//!
//! * κ-μ is a law of the instantaneous **power**, parameterized by mean power `x̄`;
//! * α-μ is a law of the **envelope**, parameterized by `Ω`; its power-domain
//!   CDF uses `x̄ = Ω²`;
//! * Nakagami-m is a law of the envelope with mean power `Ω`.
//!
//! Under this assignment every classical row in [`preset`] reproduces its
//! named distribution.
//!
//! Moment generating functions follow the Laplace convention `E[e^{−sX}]`.

mod alpha_mu;
mod kappa_mu;
mod nakagami;
mod preset;
pub mod sampling;

use num_complex::Complex;
use rand::Rng;

use crate::error::Result;
use crate::real::Real;

pub use alpha_mu::AlphaMuParams;
pub use kappa_mu::{KappaMuParams, KAPPA_ZERO_THRESHOLD};
pub use nakagami::NakagamiParams;
pub use preset::{all_presets, preset, DistributionPreset, Family, FamilyParams, PresetName};

/// Common surface of the fading laws used by the link model.
pub trait Fading<T: Real> {
    /// `E[|h|²]`.
    fn mean_power(&self) -> T;

    /// CDF of the power `|h|²`.
    fn power_cdf(&self, y: T) -> Result<T>;

    /// One envelope draw `|h|`.
    fn sample_envelope<R: Rng + ?Sized>(&self, rng: &mut R) -> T;

    /// One power draw `|h|²`.
    fn sample_power<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let r = self.sample_envelope(rng);
        r * r
    }

    /// Complex gain with the law's envelope and an independent phase uniform
    /// on `[0, 2π)`. Envelope uniforms are consumed first, then one for the phase.
    fn sample_complex_gain<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex<T> {
        let r = self.sample_envelope(rng);
        let phase = T::TAU() * sampling::uniform::<T, R>(rng);
        Complex::from_polar(r, phase)
    }
}

/// Any of the supported laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingModel<T> {
    Nakagami(NakagamiParams<T>),
    AlphaMu(AlphaMuParams<T>),
    KappaMu(KappaMuParams<T>),
}

impl<T: Real> Fading<T> for FadingModel<T> {
    fn mean_power(&self) -> T {
        match self {
            FadingModel::Nakagami(p) => Fading::mean_power(p),
            FadingModel::AlphaMu(p) => Fading::mean_power(p),
            FadingModel::KappaMu(p) => Fading::mean_power(p),
        }
    }

    fn power_cdf(&self, y: T) -> Result<T> {
        match self {
            FadingModel::Nakagami(p) => p.power_cdf(y),
            FadingModel::AlphaMu(p) => p.power_cdf(y),
            FadingModel::KappaMu(p) => p.power_cdf(y),
        }
    }

    fn sample_envelope<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        match self {
            FadingModel::Nakagami(p) => p.sample_envelope(rng),
            FadingModel::AlphaMu(p) => p.sample_envelope(rng),
            FadingModel::KappaMu(p) => Fading::sample_envelope(p, rng),
        }
    }

    fn sample_power<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        match self {
            FadingModel::KappaMu(p) => p.sample_power(rng),
            other => {
                let r = other.sample_envelope(rng);
                r * r
            }
        }
    }
}
