use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::real::Real;
use crate::specfun::{integrate_from_zero, ln_gamma_unchecked, GammaShape, QuadratureSpec};

use super::sampling::uniform;
use super::Fading;

/// α-μ law of the ENVELOPE `R` with scale `Ω` (`E[R^α] = Ω^α`).
///
/// The power `W = R²` has CDF `P(μ, μ (w/Ω²)^{α/2})`, i.e. the power-domain
/// mean parameter is `x̄ = Ω²`. With `α = 2` this is Nakagami-m with `m = μ`
/// and mean power `Ω²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaMuParams<T> {
    alpha: T,
    mu: T,
    omega: T,
    gamma: GammaShape<T>,
}

impl<T: Real> AlphaMuParams<T> {
    pub fn new(alpha: T, mu: T, omega: T) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("mu", mu), ("omega", omega)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {v} must be > 0")));
            }
        }
        Ok(Self {
            alpha,
            mu,
            omega,
            gamma: GammaShape::new(mu),
        })
    }

    /// Shape `(α, μ)` with `Ω` chosen so that `E[R²] = 1`.
    pub fn unit_power(alpha: T, mu: T) -> Result<Self> {
        let p = Self::new(alpha, mu, T::one())?;
        let omega = p.mean_power().sqrt().recip();
        Self::new(alpha, mu, omega)
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    /// `E[R²] = Ω² Γ(μ + 2/α) / (μ^{2/α} Γ(μ))`.
    pub fn mean_power(&self) -> T {
        let two_over_alpha = T::lit(2.0) / self.alpha;
        let ln = ln_gamma_unchecked(self.mu + two_over_alpha)
            - ln_gamma_unchecked(self.mu)
            - two_over_alpha * self.mu.ln();
        self.omega * self.omega * ln.exp()
    }

    /// `α μ^μ x^{αμ−1} e^{−μ(x/Ω)^α} / (Γ(μ) Ω^{αμ})`, evaluated in log space.
    pub fn envelope_pdf(&self, x: T) -> Result<T> {
        if !(x >= T::zero()) {
            return Err(domain("am_envelope_pdf", format!("x = {x} must be nonnegative")));
        }
        let (a, m, om) = (self.alpha, self.mu, self.omega);
        let am = a * m;
        if x.is_infinite() {
            return Ok(T::zero());
        }
        let log_norm = a.ln() + m * m.ln() - ln_gamma_unchecked(m) - am * om.ln();
        if x == T::zero() {
            return Ok(zero_limit(am, log_norm));
        }
        let ln = log_norm + (am - T::one()) * x.ln() - m * (x / om).powf(a);
        Ok(ln.exp())
    }

    /// `P(μ, μ (r/Ω)^α)`.
    pub fn envelope_cdf(&self, r: T) -> Result<T> {
        if !(r >= T::zero()) {
            return Err(domain("am_envelope_cdf", format!("r = {r} must be nonnegative")));
        }
        if r.is_infinite() {
            return Ok(T::one());
        }
        Ok(self.gamma.pq(self.mu * (r / self.omega).powf(self.alpha)).0)
    }

    /// Density of `W = R²`: `f_R(√w) / (2√w)`.
    pub fn power_pdf(&self, w: T) -> Result<T> {
        if !(w >= T::zero()) {
            return Err(domain("am_power_pdf", format!("w = {w} must be nonnegative")));
        }
        let (a, m, om) = (self.alpha, self.mu, self.omega);
        let half_am = T::lit(0.5) * a * m;
        if w.is_infinite() {
            return Ok(T::zero());
        }
        let log_norm = (T::lit(0.5) * a).ln() + m * m.ln() - ln_gamma_unchecked(m) - a * m * om.ln();
        if w == T::zero() {
            return Ok(zero_limit(half_am, log_norm));
        }
        let ln = log_norm + (half_am - T::one()) * w.ln() - m * (w / (om * om)).powf(T::lit(0.5) * a);
        Ok(ln.exp())
    }

    /// `P(μ, μ (y/Ω²)^{α/2})`.
    pub fn power_cdf(&self, y: T) -> Result<T> {
        if !(y >= T::zero()) {
            return Err(domain("am_power_cdf", format!("y = {y} must be nonnegative")));
        }
        if y.is_infinite() {
            return Ok(T::one());
        }
        let arg = self.mu * (y / (self.omega * self.omega)).powf(T::lit(0.5) * self.alpha);
        Ok(self.gamma.pq(arg).0)
    }

    /// `E[e^{−sW}]` of the power, by quadrature of [`power_pdf`](Self::power_pdf).
    pub fn mgf(&self, s: T, spec: QuadratureSpec<T>) -> Result<T> {
        if !(s >= T::zero()) {
            return Err(domain("am_mgf", format!("s = {s} must be nonnegative")));
        }
        integrate_from_zero(
            |w: T| {
                let pdf = self.power_pdf(w).unwrap_or_else(|_| T::nan());
                if pdf == T::zero() {
                    pdf
                } else {
                    (-s * w).exp() * pdf
                }
            },
            T::lit(0.5) * self.alpha * self.mu,
            spec,
        )
    }

    /// Draws `G ~ Gamma(μ, 1)` and returns `Ω (G/μ)^{1/α}`. One uniform.
    ///
    /// With `R = Ω (G/μ)^{1/α}` the inverse map is `g = μ (r/Ω)^α`, with
    /// Jacobian `dg/dr = αμ r^{α−1} / Ω^α`. Substituting into the Gamma(μ)
    /// density `g^{μ−1} e^{−g} / Γ(μ)`:
    ///
    /// ```text
    /// f_R(r) = [μ^{μ−1} r^{α(μ−1)} / Ω^{α(μ−1)}] e^{−μ(r/Ω)^α} / Γ(μ) · αμ r^{α−1} / Ω^α
    ///        = α μ^μ r^{αμ−1} e^{−μ(r/Ω)^α} / (Γ(μ) Ω^{αμ}),
    /// ```
    ///
    /// which is exactly [`envelope_pdf`](Self::envelope_pdf).
    pub fn sample_envelope<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let g = self.gamma.invert(uniform(rng));
        self.omega * (g / self.mu).powf(self.alpha.recip())
    }
}

/// Value at 0 of `norm · x^{e−1} · (decaying factor)`.
fn zero_limit<T: Real>(e: T, log_norm: T) -> T {
    if e > T::one() {
        T::zero()
    } else if e == T::one() {
        log_norm.exp()
    } else {
        T::infinity()
    }
}

impl<T: Real> Fading<T> for AlphaMuParams<T> {
    fn mean_power(&self) -> T {
        AlphaMuParams::mean_power(self)
    }

    fn power_cdf(&self, y: T) -> Result<T> {
        AlphaMuParams::power_cdf(self, y)
    }

    fn sample_envelope<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        AlphaMuParams::sample_envelope(self, rng)
    }
}
