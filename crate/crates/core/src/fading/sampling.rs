//! Inverse-CDF samplers for the gamma and Poisson building blocks.
//!
//! Everything here consumes a fixed, documented number of uniforms per draw
//! so that a seeded stream reproduces bit-identical samples on every
//! platform.

use rand::Rng;

use crate::real::Real;
use crate::specfun::{GammaShape, ln_gamma_unchecked};

/// Uniform draw on `[0, 1)` as `T`, never rounding up to 1.
pub fn uniform<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let u: f64 = rng.gen();
    T::lit(u).min(T::one() - T::epsilon())
}

/// Gamma(shape, 1) by inverting P(shape, ·). One uniform per draw.
pub fn sample_gamma<T: Real, R: Rng + ?Sized>(shape: T, rng: &mut R) -> T {
    GammaShape::new(shape).invert(uniform(rng))
}

/// Pre-computed gamma sampler for a fixed shape.
#[derive(Debug, Clone, Copy)]
pub struct GammaSampler<T> {
    shape: GammaShape<T>,
}

impl<T: Real> GammaSampler<T> {
    pub fn new(shape: T) -> Self {
        Self {
            shape: GammaShape::new(shape),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        self.shape.invert(uniform(rng))
    }
}

/// Poisson(λ) by sequential CDF inversion. Consumes one uniform unless
/// `λ = 0`, in which case it returns 0 and consumes nothing.
pub fn sample_poisson<T: Real, R: Rng + ?Sized>(lambda: T, rng: &mut R) -> u64 {
    if lambda <= T::zero() {
        return 0;
    }
    let u: T = uniform(rng);
    poisson_quantile(lambda, u)
}

pub(crate) fn poisson_quantile<T: Real>(lambda: T, u: T) -> u64 {
    let one = T::one();
    if lambda < T::lit(30.0) {
        let mut k = 0u64;
        let mut pmf = (-lambda).exp();
        let mut cdf = pmf;
        while u > cdf {
            k += 1;
            pmf = pmf * lambda / T::lit(k as f64);
            if pmf == T::zero() {
                break;
            }
            cdf = cdf + pmf;
        }
        return k;
    }
    // start at the mode to avoid underflow of e^{−λ}
    let mode = lambda.floor();
    let mut k = mode.to_u64().unwrap_or(0);
    let mut pmf = (mode * lambda.ln() - lambda - ln_gamma_unchecked(mode + one)).exp();
    // P(J ≤ k) = Q(k + 1, λ)
    let mut cdf = GammaShape::new(mode + one).pq(lambda).1;
    if u <= cdf {
        while k > 0 && u <= cdf - pmf {
            cdf = cdf - pmf;
            pmf = pmf * T::lit(k as f64) / lambda;
            k -= 1;
        }
    } else {
        while u > cdf {
            k += 1;
            pmf = pmf * lambda / T::lit(k as f64);
            if pmf == T::zero() {
                break;
            }
            cdf = cdf + pmf;
        }
    }
    k
}
