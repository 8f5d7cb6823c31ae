use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::real::Real;
use crate::specfun::{ln_bessel_i_scaled, ln_gamma_unchecked, marcum_q_unchecked};

use super::sampling::{sample_gamma, sample_poisson};
use super::Fading;

/// Below this κ the density switches to its exact κ → 0 (gamma) limit.
pub const KAPPA_ZERO_THRESHOLD: f64 = 1e-12;

/// κ-μ law of the instantaneous POWER `X` with mean `x̄`.
///
/// `X · 2μ(1+κ)/x̄` is noncentral χ² with 2μ degrees of freedom and
/// noncentrality `2κμ`, so `κ = 0` gives Gamma(μ, x̄/μ) (Nakagami-m power)
/// and `μ = 1` gives the Rician power with factor κ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaMuParams<T> {
    kappa: T,
    mu: T,
    mean_power: T,
}

impl<T: Real> KappaMuParams<T> {
    pub fn new(kappa: T, mu: T, mean_power: T) -> Result<Self> {
        if !(kappa >= T::zero()) || !kappa.is_finite() {
            return Err(Error::InvalidParams(format!("kappa = {kappa} must be >= 0")));
        }
        if !(mu > T::zero()) || !mu.is_finite() {
            return Err(Error::InvalidParams(format!("mu = {mu} must be > 0")));
        }
        if !(mean_power > T::zero()) || !mean_power.is_finite() {
            return Err(Error::InvalidParams(format!("mean_power = {mean_power} must be > 0")));
        }
        Ok(Self { kappa, mu, mean_power })
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn mean_power(&self) -> T {
        self.mean_power
    }

    /// Density of the power.
    ///
    /// Evaluated in log space; `κ^{−(μ−1)/2}` and the scaled Bessel factor are
    /// combined there, so small κ does not produce 0/0.
    pub fn power_pdf(&self, x: T) -> Result<T> {
        if !(x >= T::zero()) {
            return Err(domain("km_power_pdf", format!("x = {x} must be nonnegative")));
        }
        let (k, m, xb) = (self.kappa, self.mu, self.mean_power);
        let one = T::one();
        let half = T::lit(0.5);
        if x.is_infinite() {
            return Ok(T::zero());
        }
        if x == T::zero() {
            return Ok(if m > one {
                T::zero()
            } else if m == one {
                (one + k) * (-k).exp() / xb
            } else {
                T::infinity()
            });
        }
        if k < T::lit(KAPPA_ZERO_THRESHOLD) {
            let ln = m * m.ln() + (m - one) * x.ln() - m * x / xb - ln_gamma_unchecked(m) - m * xb.ln();
            return Ok(ln.exp());
        }
        let z = T::lit(2.0) * m * (k * (one + k) * x / xb).sqrt();
        let ln = m.ln() + half * (m + one) * (one + k).ln() - half * (m - one) * k.ln() - m * k
            - half * (m + one) * xb.ln()
            + half * (m - one) * x.ln()
            - m * (one + k) * x / xb
            + z
            + ln_bessel_i_scaled(m - one, z);
        Ok(ln.exp())
    }

    /// `1 − Q_μ(√(2κμ), √(2μ(1+κ)y/x̄))`.
    pub fn power_cdf(&self, y: T) -> Result<T> {
        if !(y >= T::zero()) {
            return Err(domain("km_power_cdf", format!("y = {y} must be nonnegative")));
        }
        if y == T::zero() {
            return Ok(T::zero());
        }
        if y.is_infinite() {
            return Ok(T::one());
        }
        let (a, b) = self.marcum_args(y);
        Ok(T::one() - marcum_q_unchecked(self.mu, a, b))
    }

    /// The two Marcum Q arguments at power `y`.
    pub fn marcum_args(&self, y: T) -> (T, T) {
        let two = T::lit(2.0);
        let (k, m, xb) = (self.kappa, self.mu, self.mean_power);
        ((two * k * m).sqrt(), (two * m * (T::one() + k) * y / xb).sqrt())
    }

    /// `E[e^{−sX}]` in closed form.
    pub fn mgf(&self, s: T) -> Result<T> {
        if !(s >= T::zero()) {
            return Err(domain("km_mgf", format!("s = {s} must be nonnegative")));
        }
        let (k, m, xb) = (self.kappa, self.mu, self.mean_power);
        let base = m * (T::one() + k);
        let denom = base + s * xb;
        Ok((base / denom).powf(m) * (m * m * k * (T::one() + k) / denom - k * m).exp())
    }

    /// Draws `J ~ Poisson(κμ)`, `G ~ Gamma(μ + J, 1)` and returns `x̄ G / (μ(1+κ))`.
    ///
    /// Consumes one uniform for `J` (none when `κμ = 0`) and one for `G`.
    pub fn sample_power<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let (k, m, xb) = (self.kappa, self.mu, self.mean_power);
        let j = sample_poisson(k * m, rng);
        let g = sample_gamma(m + T::lit(j as f64), rng);
        xb * g / (m * (T::one() + k))
    }
}

impl<T: Real> Fading<T> for KappaMuParams<T> {
    fn mean_power(&self) -> T {
        self.mean_power
    }

    fn power_cdf(&self, y: T) -> Result<T> {
        KappaMuParams::power_cdf(self, y)
    }

    fn sample_envelope<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        self.sample_power(rng).sqrt()
    }

    fn sample_power<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        KappaMuParams::sample_power(self, rng)
    }
}
