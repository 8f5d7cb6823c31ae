//! Two-user RIS-aided NOMA downlink.
//!
//! The far user U1 receives the direct BS link plus the RIS-reflected
//! cascade; the near user U2 only the direct link. Received U1 amplitude:
//!
//! ```text
//! h1 = h_u1 √L(d1, η_n) + (Σ_i g1_i β_i e^{jφ_i} conj(h_r,i)) √L(d_ris, η_l) √L(d_r1, η_n)
//! ```
//!
//! with `L(d, η) = 10^{PL_ref/10} (d/d_ref)^{−η}` a power gain. Every small-scale
//! coefficient has unit mean power; path loss is applied here, not in the draw.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fading::{AlphaMuParams, Fading, FadingModel, KappaMuParams, NakagamiParams};
use crate::real::Real;

/// Small-scale law of one link, normalized to unit mean power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum LinkFading<T> {
    Nakagami { m: T },
    AlphaMu { alpha: T, mu: T },
    KappaMu { kappa: T, mu: T },
}

impl<T: Real> LinkFading<T> {
    pub fn rayleigh() -> Self {
        LinkFading::Nakagami { m: T::one() }
    }

    /// The law with its scale fixed so that `E[|h|²] = 1`.
    pub fn model(&self) -> Result<FadingModel<T>> {
        Ok(match *self {
            LinkFading::Nakagami { m } => FadingModel::Nakagami(NakagamiParams::new(m, T::one())?),
            LinkFading::AlphaMu { alpha, mu } => FadingModel::AlphaMu(AlphaMuParams::unit_power(alpha, mu)?),
            LinkFading::KappaMu { kappa, mu } => FadingModel::KappaMu(KappaMuParams::new(kappa, mu, T::one())?),
        })
    }

    /// Compact label without commas, e.g. `kappa_mu:kappa=0;mu=2`.
    pub fn label(&self) -> String {
        match self {
            LinkFading::Nakagami { m } => format!("nakagami:m={m}"),
            LinkFading::AlphaMu { alpha, mu } => format!("alpha_mu:alpha={alpha};mu={mu}"),
            LinkFading::KappaMu { kappa, mu } => format!("kappa_mu:kappa={kappa};mu={mu}"),
        }
    }
}

/// Multiple-access scheme seen by U1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "ris", alias = "ris_noma")]
    RisNoma,
    #[serde(rename = "conventional", alias = "conventional_noma")]
    ConventionalNoma,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::RisNoma => "ris",
            Scheme::ConventionalNoma => "conventional",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ris" | "ris_noma" => Ok(Scheme::RisNoma),
            "conventional" | "conventional_noma" => Ok(Scheme::ConventionalNoma),
            _ => Err(Error::InvalidParams(format!("unknown scheme `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum User {
    U1,
    U2,
}

/// Geometry, budgets, targets and per-link fading.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig<T> {
    /// RIS element count N.
    pub n_elements: usize,
    /// BS→U1 distance (m).
    pub d1: T,
    /// BS→RIS distance (m).
    pub d_ris: T,
    /// RIS→U1 distance (m).
    pub d_r1: T,
    /// BS→U2 distance (m).
    pub d2: T,
    /// Exponent of the direct links and of the RIS→U1 hop.
    pub eta_n: T,
    /// Exponent of the BS→RIS hop.
    pub eta_l: T,
    /// Attenuation at the reference distance (dB, negative).
    pub pl_ref_db: T,
    pub ref_distance: T,
    /// Power fraction of the far user U1.
    pub alpha1_sq: T,
    /// Power fraction of the near user U2.
    pub alpha2_sq: T,
    /// Target rate of U1 (bit/s/Hz).
    pub r1_target: T,
    /// Target rate of U2 (bit/s/Hz).
    pub r2_target: T,
    pub noise_dbm: T,
    pub tx_power_dbm: T,
    /// Reflection amplitude β applied to every element.
    pub reflection_amplitude: T,
    pub direct_u1: LinkFading<T>,
    pub bs_u2: LinkFading<T>,
    /// Nakagami figure of the BS→RIS hop.
    pub m_g1: T,
    /// Nakagami figure of the RIS→U1 hop.
    pub m_hr: T,
}

/// Thermal noise floor `−174 + 10 log10(BW)` in dBm.
pub fn thermal_noise_dbm<T: Real>(bandwidth_hz: T) -> T {
    T::lit(-174.0) + T::lit(10.0) * bandwidth_hz.log10()
}

pub fn dbm_to_mw<T: Real>(dbm: T) -> T {
    T::lit(10.0).powf(dbm / T::lit(10.0))
}

/// Decoding threshold `2^R − 1` for a target rate `R`.
pub fn rate_threshold<T: Real>(rate: T) -> T {
    rate.exp2() - T::one()
}

impl<T: Real> Default for SystemConfig<T> {
    fn default() -> Self {
        Self {
            n_elements: 16,
            d1: T::lit(80.0),
            d_ris: T::lit(40.0),
            d_r1: T::lit(45.0),
            d2: T::lit(20.0),
            eta_n: T::lit(3.5),
            eta_l: T::lit(2.2),
            pl_ref_db: T::lit(-30.0),
            ref_distance: T::one(),
            alpha1_sq: T::lit(0.75),
            alpha2_sq: T::lit(0.25),
            r1_target: T::lit(1.5),
            r2_target: T::one(),
            noise_dbm: thermal_noise_dbm(T::lit(100e6)),
            tx_power_dbm: T::lit(20.0),
            reflection_amplitude: T::one(),
            direct_u1: LinkFading::Nakagami { m: T::lit(2.0) },
            bs_u2: LinkFading::rayleigh(),
            m_g1: T::lit(2.0),
            m_hr: T::lit(2.0),
        }
    }
}

fn cfg_err(field: &'static str, reason: impl Into<String>) -> Error {
    Error::Config {
        field,
        reason: reason.into(),
    }
}

impl<T: Real> SystemConfig<T> {
    /// Checks every field; the first violation is reported by name.
    pub fn validate(&self) -> Result<()> {
        if self.n_elements == 0 {
            return Err(cfg_err("n_elements", "must be at least 1"));
        }
        if !(self.ref_distance > T::zero()) || !self.ref_distance.is_finite() {
            return Err(cfg_err("ref_distance", format!("must be positive, got {}", self.ref_distance)));
        }
        for (field, d) in [("d1", self.d1), ("d_ris", self.d_ris), ("d_r1", self.d_r1), ("d2", self.d2)] {
            if !d.is_finite() || d < self.ref_distance {
                return Err(cfg_err(
                    field,
                    format!("distance {d} must be finite and >= ref_distance {}", self.ref_distance),
                ));
            }
        }
        for (field, e) in [("eta_n", self.eta_n), ("eta_l", self.eta_l)] {
            if !(e > T::zero()) || !e.is_finite() {
                return Err(cfg_err(field, format!("path-loss exponent must be positive, got {e}")));
            }
        }
        if !self.pl_ref_db.is_finite() {
            return Err(cfg_err("pl_ref_db", "must be finite"));
        }
        for (field, a) in [("alpha1_sq", self.alpha1_sq), ("alpha2_sq", self.alpha2_sq)] {
            if !(a >= T::zero() && a <= T::one()) {
                return Err(cfg_err(field, format!("power fraction must lie in [0, 1], got {a}")));
            }
        }
        let sum = self.alpha1_sq + self.alpha2_sq;
        if (sum - T::one()).abs() > T::lit(1e-9) {
            return Err(cfg_err(
                "alpha1_sq + alpha2_sq",
                format!("power fractions must sum to 1, got {} + {} = {sum}", self.alpha1_sq, self.alpha2_sq),
            ));
        }
        if !(self.alpha1_sq > self.alpha2_sq) {
            return Err(cfg_err(
                "alpha1_sq",
                format!(
                    "far user U1 must get the larger share (alpha1_sq {} <= alpha2_sq {})",
                    self.alpha1_sq, self.alpha2_sq
                ),
            ));
        }
        for (field, r) in [("r1_target", self.r1_target), ("r2_target", self.r2_target)] {
            if !(r > T::zero()) || !r.is_finite() {
                return Err(cfg_err(field, format!("target rate must be positive, got {r}")));
            }
        }
        if self.noise_dbm.is_nan() || self.noise_dbm == T::infinity() {
            return Err(cfg_err("noise_dbm", "must be finite or -inf"));
        }
        if !self.tx_power_dbm.is_finite() {
            return Err(cfg_err("tx_power_dbm", "must be finite"));
        }
        if !(self.reflection_amplitude >= T::zero() && self.reflection_amplitude <= T::one()) {
            return Err(cfg_err("reflection_amplitude", "must lie in [0, 1]"));
        }
        self.direct_u1.model().map_err(|e| cfg_err("direct_u1", e.to_string()))?;
        self.bs_u2.model().map_err(|e| cfg_err("bs_u2", e.to_string()))?;
        NakagamiParams::new(self.m_g1, T::one()).map_err(|e| cfg_err("m_g1", e.to_string()))?;
        NakagamiParams::new(self.m_hr, T::one()).map_err(|e| cfg_err("m_hr", e.to_string()))?;
        Ok(())
    }

    /// `2^{R1} − 1`.
    pub fn tau1(&self) -> T {
        rate_threshold(self.r1_target)
    }

    /// `2^{R2} − 1`.
    pub fn tau2(&self) -> T {
        rate_threshold(self.r2_target)
    }
}

/// Power path gain `10^{PL_ref/10} (d/d_ref)^{−η}`; the amplitude factor is its square root.
pub fn path_loss_linear<T: Real>(distance: T, exponent: T, cfg: &SystemConfig<T>) -> Result<T> {
    if !(distance >= cfg.ref_distance) {
        return Err(crate::error::domain(
            "path_loss_linear",
            format!("distance {distance} below reference distance {}", cfg.ref_distance),
        ));
    }
    Ok(dbm_to_mw(cfg.pl_ref_db) * (distance / cfg.ref_distance).powf(-exponent))
}

/// One draw of every small-scale coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization<T> {
    /// BS→U1 direct.
    pub h_u1: Complex<T>,
    /// BS→RIS, one per element.
    pub g1: Vec<Complex<T>>,
    /// RIS→U1, one per element.
    pub h_r: Vec<Complex<T>>,
    /// BS→U2 direct.
    pub h_u2: Complex<T>,
}

impl<T: Real> ChannelRealization<T> {
    pub fn zeros(n: usize) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self {
            h_u1: z,
            g1: vec![z; n],
            h_r: vec![z; n],
            h_u2: z,
        }
    }

    pub fn n_elements(&self) -> usize {
        self.g1.len()
    }
}

/// Diagonal RIS response: element `i` applies `β_i e^{jφ_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseShiftMatrix<T> {
    amplitudes: Vec<T>,
    phases: Vec<T>,
}

impl<T: Real> PhaseShiftMatrix<T> {
    /// Phases are wrapped into `[0, 2π)`.
    pub fn new(amplitudes: Vec<T>, phases: Vec<T>) -> Result<Self> {
        if amplitudes.len() != phases.len() {
            return Err(Error::InvalidParams(format!(
                "{} amplitudes but {} phases",
                amplitudes.len(),
                phases.len()
            )));
        }
        if let Some(b) = amplitudes.iter().find(|b| !(**b >= T::zero() && **b <= T::one())) {
            return Err(Error::InvalidParams(format!("reflection amplitude {b} outside [0, 1]")));
        }
        let phases = phases.into_iter().map(wrap_phase).collect();
        Ok(Self { amplitudes, phases })
    }

    pub fn amplitudes(&self) -> &[T] {
        &self.amplitudes
    }

    pub fn phases(&self) -> &[T] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    /// `Σ_i g1_i β_i e^{jφ_i} conj(h_r,i)`.
    pub fn cascade(&self, r: &ChannelRealization<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..self.len() {
            let reflect = Complex::from_polar(self.amplitudes[i], self.phases[i]);
            acc = acc + r.g1[i] * reflect * r.h_r[i].conj();
        }
        acc
    }
}

fn wrap_phase<T: Real>(phi: T) -> T {
    let tau = T::TAU();
    let w = phi % tau;
    let w = if w < T::zero() { w + tau } else { w };
    // `w + τ` can round up to τ itself
    if w >= tau {
        T::zero()
    } else {
        w
    }
}

/// Co-phasing: β_i = 1 and `φ_i = arg h_u1 − arg g1_i + arg h_r,i`, so every
/// cascaded term is aligned with the direct path.
pub fn align_phases<T: Real>(r: &ChannelRealization<T>) -> PhaseShiftMatrix<T> {
    align_phases_with_amplitude(r, T::one())
}

pub fn align_phases_with_amplitude<T: Real>(r: &ChannelRealization<T>, amplitude: T) -> PhaseShiftMatrix<T> {
    let direct = r.h_u1.arg();
    let phases = r
        .g1
        .iter()
        .zip(&r.h_r)
        .map(|(g, h)| wrap_phase(direct - g.arg() + h.arg()))
        .collect();
    PhaseShiftMatrix {
        amplitudes: vec![amplitude; r.n_elements()],
        phases,
    }
}

/// Path-loss amplitudes and linear budgets derived from a validated config.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget<T> {
    /// `√L(d1, η_n)`.
    pub direct_amplitude: T,
    /// `√L(d_ris, η_l) · √L(d_r1, η_n)`.
    pub ris_amplitude: T,
    /// `L(d2, η_n)`.
    pub u2_gain: T,
    pub noise_mw: T,
    pub alpha1_sq: T,
    pub alpha2_sq: T,
    pub tau1: T,
    pub tau2: T,
}

impl<T: Real> LinkBudget<T> {
    pub fn new(cfg: &SystemConfig<T>) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            direct_amplitude: path_loss_linear(cfg.d1, cfg.eta_n, cfg)?.sqrt(),
            ris_amplitude: path_loss_linear(cfg.d_ris, cfg.eta_l, cfg)?.sqrt()
                * path_loss_linear(cfg.d_r1, cfg.eta_n, cfg)?.sqrt(),
            u2_gain: path_loss_linear(cfg.d2, cfg.eta_n, cfg)?,
            noise_mw: dbm_to_mw(cfg.noise_dbm),
            alpha1_sq: cfg.alpha1_sq,
            alpha2_sq: cfg.alpha2_sq,
            tau1: cfg.tau1(),
            tau2: cfg.tau2(),
        })
    }

    /// `|h1|²` including path loss.
    pub fn gain_u1(&self, r: &ChannelRealization<T>, phi: &PhaseShiftMatrix<T>, scheme: Scheme) -> T {
        let direct = r.h_u1 * self.direct_amplitude;
        let h1 = match scheme {
            Scheme::ConventionalNoma => direct,
            Scheme::RisNoma => direct + phi.cascade(r) * self.ris_amplitude,
        };
        h1.norm_sqr()
    }

    /// `|h_u2|² L(d2, η_n)`.
    pub fn gain_u2(&self, r: &ChannelRealization<T>) -> T {
        r.h_u2.norm_sqr() * self.u2_gain
    }

    /// `α1² P g / (α2² P g + σ²)`.
    pub fn sinr_u1(&self, gain: T, tx_mw: T) -> T {
        let s = tx_mw * gain;
        let num = self.alpha1_sq * s;
        if num == T::zero() {
            return T::zero();
        }
        num / (self.alpha2_sq * s + self.noise_mw)
    }

    /// (U1's message at U2, U2's own message after SIC).
    pub fn sinr_u2(&self, gain2: T, tx_mw: T) -> (T, T) {
        let s = tx_mw * gain2;
        let sic = if s == T::zero() {
            T::zero()
        } else {
            self.alpha1_sq * s / (self.alpha2_sq * s + self.noise_mw)
        };
        let own = if s == T::zero() {
            T::zero()
        } else {
            self.alpha2_sq * s / self.noise_mw
        };
        (sic, own)
    }

    pub fn outage_u1(&self, sinr: T) -> bool {
        sinr < self.tau1
    }

    pub fn outage_u2(&self, sinrs: (T, T)) -> bool {
        sinrs.0 < self.tau1 || sinrs.1 < self.tau2
    }
}

/// `|h1|²` for the given phases; the RIS term is dropped for conventional NOMA.
pub fn effective_gain_u1<T: Real>(
    r: &ChannelRealization<T>,
    phi: &PhaseShiftMatrix<T>,
    cfg: &SystemConfig<T>,
    scheme: Scheme,
) -> Result<T> {
    Ok(LinkBudget::new(cfg)?.gain_u1(r, phi, scheme))
}

/// Far-user SINR at `cfg.tx_power_dbm`, interference from U2's share included.
pub fn sinr_u1<T: Real>(gain: T, cfg: &SystemConfig<T>) -> Result<T> {
    Ok(LinkBudget::new(cfg)?.sinr_u1(gain, dbm_to_mw(cfg.tx_power_dbm)))
}

/// Near-user SINRs at `cfg.tx_power_dbm`: `(decoding U1's message, own message after SIC)`.
pub fn sinr_u2<T: Real>(gain2: T, cfg: &SystemConfig<T>) -> Result<(T, T)> {
    Ok(LinkBudget::new(cfg)?.sinr_u2(gain2, dbm_to_mw(cfg.tx_power_dbm)))
}

pub fn outage_u1<T: Real>(sinr: T, cfg: &SystemConfig<T>) -> bool {
    sinr < cfg.tau1()
}

/// U2 is in outage if either SIC stage misses its threshold.
pub fn outage_u2<T: Real>(sinrs: (T, T), cfg: &SystemConfig<T>) -> bool {
    sinrs.0 < cfg.tau1() || sinrs.1 < cfg.tau2()
}

/// Per-link samplers resolved from a config.
#[derive(Debug, Clone)]
pub struct ChannelSampler<T> {
    n_elements: usize,
    direct_u1: FadingModel<T>,
    bs_ris: FadingModel<T>,
    ris_u1: FadingModel<T>,
    bs_u2: FadingModel<T>,
}

impl<T: Real> ChannelSampler<T> {
    pub fn new(cfg: &SystemConfig<T>) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            n_elements: cfg.n_elements,
            direct_u1: cfg.direct_u1.model()?,
            bs_ris: FadingModel::Nakagami(NakagamiParams::new(cfg.m_g1, T::one())?),
            ris_u1: FadingModel::Nakagami(NakagamiParams::new(cfg.m_hr, T::one())?),
            bs_u2: cfg.bs_u2.model()?,
        })
    }

    pub fn realize<R: Rng + ?Sized>(&self, rng: &mut R) -> ChannelRealization<T> {
        let mut r = ChannelRealization::zeros(self.n_elements);
        self.realize_into(&mut r, rng);
        r
    }

    /// Draw order: `h_u1`, `g1[0..N]`, `h_r[0..N]`, `h_u2`.
    pub fn realize_into<R: Rng + ?Sized>(&self, r: &mut ChannelRealization<T>, rng: &mut R) {
        r.g1.resize(self.n_elements, Complex::new(T::zero(), T::zero()));
        r.h_r.resize(self.n_elements, Complex::new(T::zero(), T::zero()));
        r.h_u1 = self.direct_u1.sample_complex_gain(rng);
        for g in r.g1.iter_mut() {
            *g = self.bs_ris.sample_complex_gain(rng);
        }
        for h in r.h_r.iter_mut() {
            *h = self.ris_u1.sample_complex_gain(rng);
        }
        r.h_u2 = self.bs_u2.sample_complex_gain(rng);
    }
}

/// Draws every coefficient independently with unit mean power.
pub fn realize_channels<T: Real, R: Rng + ?Sized>(cfg: &SystemConfig<T>, rng: &mut R) -> Result<ChannelRealization<T>> {
    Ok(ChannelSampler::new(cfg)?.realize(rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SystemConfig<f64> {
        SystemConfig::default()
    }

    #[test]
    fn default_noise_floor() {
        assert!((cfg().noise_dbm + 94.0).abs() < 1e-12);
    }

    #[test]
    fn default_config_validates() {
        cfg().validate().unwrap();
    }

    #[test]
    fn power_split_must_sum_to_one() {
        let mut c = cfg();
        c.alpha1_sq = 0.4;
        let e = c.validate().unwrap_err();
        assert!(e.to_string().contains("alpha1_sq + alpha2_sq"), "{e}");
    }

    #[test]
    fn far_user_gets_more_power() {
        let mut c = cfg();
        c.alpha1_sq = 0.25;
        c.alpha2_sq = 0.75;
        assert!(matches!(c.validate(), Err(Error::Config { field: "alpha1_sq", .. })));
    }

    #[test]
    fn distances_below_reference_rejected() {
        let mut c = cfg();
        c.d_r1 = 0.5;
        assert!(matches!(c.validate(), Err(Error::Config { field: "d_r1", .. })));
        assert!(path_loss_linear(0.5, 2.0, &cfg()).is_err());
    }

    #[test]
    fn path_loss_values() {
        let c = cfg();
        assert!((path_loss_linear(1.0, 3.5, &c).unwrap() - 1e-3).abs() < 1e-18);
        assert!((path_loss_linear(10.0, 2.0, &c).unwrap() - 1e-5).abs() < 1e-20);
        let want = 1.131_370_849_898_476_039_041_350_979_367_8e-9;
        assert!((path_loss_linear(50.0, 3.5, &c).unwrap() / want - 1.0).abs() < 1e-13);
    }

    #[test]
    fn threshold_values() {
        let c = cfg();
        assert!((c.tau1() - 1.828_427_124_746_190_1).abs() < 1e-14);
        assert_eq!(c.tau2(), 1.0);
        assert!(outage_u1(0.0, &c));
        assert!(!outage_u1(10.0, &c));
        assert!(outage_u2((0.0, f64::INFINITY), &c));
        assert!(outage_u2((3.0, 0.0), &c));
        assert!(!outage_u2((3.0, 10.0), &c));
    }

    #[test]
    fn sinr_limits() {
        let c = cfg();
        assert_eq!(sinr_u1(0.0, &c).unwrap(), 0.0);
        assert!((sinr_u1(1e30, &c).unwrap() - 3.0).abs() < 1e-9);
        assert_eq!(sinr_u2(0.0, &c).unwrap(), (0.0, 0.0));
        let (sic, own) = sinr_u2(1e30, &c).unwrap();
        assert!(sic <= 3.0 && own > 1e20);

        let mut oma = cfg();
        oma.alpha1_sq = 1.0;
        oma.alpha2_sq = 0.0;
        let g = 1e-9;
        let want = 1.0 * dbm_to_mw(oma.tx_power_dbm) * g / dbm_to_mw(oma.noise_dbm);
        assert!((sinr_u1(g, &oma).unwrap() / want - 1.0).abs() < 1e-12);

        let mut quiet = cfg();
        quiet.noise_dbm = f64::NEG_INFINITY;
        assert!((sinr_u2(1e-9, &quiet).unwrap().0 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_element_alignment() {
        let one = Complex::new(1.0, 0.0);
        let r = ChannelRealization {
            h_u1: Complex::new(0.7, 0.0),
            g1: vec![one],
            h_r: vec![one],
            h_u2: one,
        };
        let phi = align_phases(&r);
        assert_eq!(phi.phases(), &[0.0]);
        assert_eq!(phi.amplitudes(), &[1.0]);
    }

    #[test]
    fn conventional_gain_is_direct_path_loss() {
        let mut c = cfg();
        c.d1 = 1.0;
        let r = ChannelRealization {
            h_u1: Complex::new(1.0, 0.0),
            g1: vec![Complex::new(1.0, 0.0)],
            h_r: vec![Complex::new(1.0, 0.0)],
            h_u2: Complex::new(1.0, 0.0),
        };
        let phi = align_phases(&r);
        let g = effective_gain_u1(&r, &phi, &c, Scheme::ConventionalNoma).unwrap();
        assert!((g - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn two_unit_elements_at_reference_distance() {
        let mut c = cfg();
        c.d1 = 1.0;
        c.d_ris = 1.0;
        c.d_r1 = 1.0;
        c.n_elements = 2;
        let r = ChannelRealization {
            h_u1: Complex::from_polar(1.0, 0.3),
            g1: vec![Complex::from_polar(1.0, 1.1), Complex::from_polar(1.0, -2.0)],
            h_r: vec![Complex::from_polar(1.0, 0.4), Complex::from_polar(1.0, 2.9)],
            h_u2: Complex::new(1.0, 0.0),
        };
        let phi = align_phases(&r);
        // (√1e-3 + 2 √1e-3 √1e-3)²
        let want = 0.001_130_491_106_406_735_173_279_955_741_777_3;
        let g = effective_gain_u1(&r, &phi, &c, Scheme::RisNoma).unwrap();
        assert!((g / want - 1.0).abs() < 1e-13, "{g}");
    }

    #[test]
    fn switched_off_ris_equals_conventional() {
        let c = cfg();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        let r = realize_channels(&c, &mut rng).unwrap();
        let off = align_phases_with_amplitude(&r, 0.0);
        let a = effective_gain_u1(&r, &off, &c, Scheme::RisNoma).unwrap();
        let b = effective_gain_u1(&r, &off, &c, Scheme::ConventionalNoma).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn phase_matrix_validation() {
        assert!(PhaseShiftMatrix::new(vec![1.0, 0.5], vec![0.0]).is_err());
        assert!(PhaseShiftMatrix::new(vec![1.5], vec![0.0]).is_err());
        let m = PhaseShiftMatrix::new(vec![1.0, 1.0], vec![-0.5, 7.0]).unwrap();
        for &p in m.phases() {
            assert!((0.0..std::f64::consts::TAU).contains(&p));
        }
    }

    #[test]
    fn config_json_roundtrip() {
        let mut c = cfg();
        c.direct_u1 = LinkFading::KappaMu { kappa: 0.0, mu: 2.0 };
        let s = serde_json::to_string(&c).unwrap();
        let back: SystemConfig<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = s.replace("\"d2\"", "\"d3\"");
        assert!(serde_json::from_str::<SystemConfig<f64>>(&bad).is_err());
    }
}
