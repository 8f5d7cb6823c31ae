use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::real::Real;
use crate::specfun::{ln_gamma_unchecked, GammaShape};

use super::sampling::uniform;
use super::Fading;

/// Nakagami-m envelope with fading figure `m ≥ 1/2` and mean power `Ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NakagamiParams<T> {
    m: T,
    omega: T,
    gamma: GammaShape<T>,
}

impl<T: Real> NakagamiParams<T> {
    pub fn new(m: T, omega: T) -> Result<Self> {
        if !(m >= T::lit(0.5)) || !m.is_finite() {
            return Err(Error::InvalidParams(format!("nakagami m = {m} must be >= 0.5")));
        }
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(Error::InvalidParams(format!("nakagami omega = {omega} must be > 0")));
        }
        Ok(Self {
            m,
            omega,
            gamma: GammaShape::new(m),
        })
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn envelope_pdf(&self, x: T) -> Result<T> {
        if !(x >= T::zero()) {
            return Err(domain("nakagami_envelope_pdf", format!("x = {x} must be nonnegative")));
        }
        let (m, om) = (self.m, self.omega);
        if x == T::zero() {
            return Ok(if m > T::lit(0.5) {
                T::zero()
            } else {
                (T::lit(2.0) / (T::PI() * om)).sqrt()
            });
        }
        if x.is_infinite() {
            return Ok(T::zero());
        }
        let ln = T::lit(2.0).ln() + m * (m / om).ln() + (T::lit(2.0) * m - T::one()) * x.ln()
            - ln_gamma_unchecked(m)
            - m * x * x / om;
        Ok(ln.exp())
    }

    /// `P(m, m y / Ω)`.
    pub fn power_cdf(&self, y: T) -> Result<T> {
        if !(y >= T::zero()) {
            return Err(domain("nakagami_power_cdf", format!("y = {y} must be nonnegative")));
        }
        if y.is_infinite() {
            return Ok(T::one());
        }
        Ok(self.gamma.pq(self.m * y / self.omega).0)
    }

    /// `√G` with `G ~ Gamma(m, Ω/m)`. One uniform.
    pub fn sample_envelope<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        (self.gamma.invert(uniform(rng)) * self.omega / self.m).sqrt()
    }
}

impl<T: Real> Fading<T> for NakagamiParams<T> {
    fn mean_power(&self) -> T {
        self.omega
    }

    fn power_cdf(&self, y: T) -> Result<T> {
        NakagamiParams::power_cdf(self, y)
    }

    fn sample_envelope<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        NakagamiParams::sample_envelope(self, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_m() {
        assert!(NakagamiParams::new(0.49_f64, 1.0).is_err());
        assert!(NakagamiParams::new(1.0_f64, 0.0).is_err());
        assert!(NakagamiParams::new(0.5_f64, 1.0).is_ok());
    }

    #[test]
    fn rayleigh_special_case() {
        let p = NakagamiParams::new(1.0_f64, 1.0).unwrap();
        assert!((p.envelope_pdf(1.0).unwrap() - 2.0 * (-1.0_f64).exp()).abs() < 1e-15);
        assert!((p.power_cdf(2.0).unwrap() - (1.0 - (-2.0_f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn one_sided_gaussian_density_at_origin() {
        let p = NakagamiParams::new(0.5_f64, 1.0).unwrap();
        let at0 = p.envelope_pdf(0.0).unwrap();
        assert!((at0 - p.envelope_pdf(1e-12).unwrap()).abs() < 1e-9);
    }
}
