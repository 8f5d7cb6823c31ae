//! Special-case identity suite.
//!
//! Each check compares an implemented CDF (or MGF, or OP curve) against an
//! independent reference and records the largest deviation seen. The κ-μ
//! CDF under test is injectable so that a deliberately broken implementation
//! can be shown to fail.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fading::{
    all_presets, AlphaMuParams, Fading, FadingModel, Family, FamilyParams, KappaMuParams, NakagamiParams, PresetName,
};
use crate::montecarlo::{run_sweep, SweepSpec};
use crate::specfun::{bessel_i_scaled, integrate, integrate_from_zero, reg_lower_incomplete_gamma, QuadratureSpec};
use crate::stats::{ks_bound, ks_statistic};
use crate::sysmodel::{LinkFading, Scheme, SystemConfig, User};

/// Outcome of one identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Where the largest deviation occurred, or why the check could not run.
    pub detail: String,
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}  {:<48} max_dev={:.3e}  tol={:.1e}  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.max_deviation,
            self.tolerance,
            self.detail
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<IdentityCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// κ-μ power CDF under test: `(params, y) -> F(y)`.
pub type KappaMuCdf = dyn Fn(&KappaMuParams<f64>, f64) -> Result<f64> + Send + Sync;

pub const KAPPA_ZERO_IDENTITY: &str = "kappa_mu kappa=0 equals gamma CDF";
pub const ALPHA_TWO_IDENTITY: &str = "alpha_mu alpha=2 equals gamma CDF";

/// Tuning knobs and the injected CDF.
pub struct ValidationSuite {
    km_cdf: Box<KappaMuCdf>,
    /// Samples per KS test.
    pub ks_samples: usize,
    /// Random parameter sets per family for the KS tests.
    pub random_sets: usize,
    /// Trials per point of the OP overlap check; 0 skips it.
    pub op_trials: u64,
    pub seed: u64,
}

impl Default for ValidationSuite {
    fn default() -> Self {
        Self {
            km_cdf: Box::new(|p, y| p.power_cdf(y)),
            ks_samples: 100_000,
            random_sets: 5,
            op_trials: 20_000,
            seed: 2024,
        }
    }
}

impl fmt::Debug for ValidationSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValidationSuite")
            .field("ks_samples", &self.ks_samples)
            .field("random_sets", &self.random_sets)
            .field("op_trials", &self.op_trials)
            .field("seed", &self.seed)
            .finish_non_exhaustive()
    }
}

/// Running maximum of `|got − want|` with its location.
struct Worst {
    dev: f64,
    at: String,
    error: Option<String>,
}

impl Worst {
    fn new() -> Self {
        Self {
            dev: 0.0,
            at: String::new(),
            error: None,
        }
    }

    fn record(&mut self, got: Result<f64>, want: f64, at: impl FnOnce() -> String) {
        match got {
            Ok(g) => {
                let d = (g - want).abs();
                if !(d <= self.dev) {
                    // NaN lands here too and poisons the check
                    self.dev = if d.is_nan() { f64::INFINITY } else { d };
                    self.at = at();
                }
            }
            Err(e) => {
                if self.error.is_none() {
                    self.error = Some(format!("{}: {e}", at()));
                }
            }
        }
    }

    fn finish(self, name: &str, tol: f64) -> IdentityCheck {
        let (passed, detail) = match self.error {
            Some(e) => (false, format!("error at {e}")),
            None => (self.dev <= tol, if self.at.is_empty() { String::new() } else { format!("at {}", self.at) }),
        };
        IdentityCheck {
            name: name.to_string(),
            passed,
            max_deviation: self.dev,
            tolerance: tol,
            detail,
        }
    }
}

/// 0.01 to 20, log-spaced, both ends included.
fn power_grid() -> Vec<f64> {
    let n = 60;
    let (lo, hi) = (0.01_f64.ln(), 20.0_f64.ln());
    (0..n).map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp()).collect()
}

const GAMMA_SHAPES: [f64; 4] = [0.5, 1.0, 2.0, 3.7];
const MEAN_POWERS: [f64; 2] = [1.0, 2.5];

impl ValidationSuite {
    /// Replaces the κ-μ power CDF under test.
    pub fn with_kappa_mu_cdf<F>(mut self, f: F) -> Self
    where
        F: Fn(&KappaMuParams<f64>, f64) -> Result<f64> + Send + Sync + 'static,
    {
        self.km_cdf = Box::new(f);
        self
    }

    pub fn run(&self) -> ValidationReport {
        let mut checks = vec![
            self.kappa_zero_identity(),
            self.alpha_two_identity(),
            self.nakagami_equivalence(),
        ];
        checks.extend(self.preset_closed_forms());
        checks.push(self.mgf_closed_form());
        checks.push(self.mgf_cross_family());
        checks.extend(self.ks_checks());
        if self.op_trials > 0 {
            checks.push(self.op_overlap());
        }
        ValidationReport { checks }
    }

    fn km(&self, p: &KappaMuParams<f64>, y: f64) -> Result<f64> {
        (self.km_cdf)(p, y)
    }

    pub fn kappa_zero_identity(&self) -> IdentityCheck {
        let mut w = Worst::new();
        for &m in &GAMMA_SHAPES {
            for &xb in &MEAN_POWERS {
                let p = match KappaMuParams::new(0.0, m, xb) {
                    Ok(p) => p,
                    Err(e) => return failed(KAPPA_ZERO_IDENTITY, 1e-10, e.to_string()),
                };
                for y in power_grid() {
                    let want = reg_lower_incomplete_gamma(m, m * y / xb).unwrap_or(f64::NAN);
                    w.record(self.km(&p, y), want, || format!("mu={m} xbar={xb} y={y:.4}"));
                }
            }
        }
        w.finish(KAPPA_ZERO_IDENTITY, 1e-10)
    }

    pub fn alpha_two_identity(&self) -> IdentityCheck {
        let mut w = Worst::new();
        for &m in &GAMMA_SHAPES {
            for &xb in &MEAN_POWERS {
                let p = match AlphaMuParams::new(2.0, m, xb.sqrt()) {
                    Ok(p) => p,
                    Err(e) => return failed(ALPHA_TWO_IDENTITY, 1e-12, e.to_string()),
                };
                for y in power_grid() {
                    let want = reg_lower_incomplete_gamma(m, m * y / xb).unwrap_or(f64::NAN);
                    w.record(p.power_cdf(y), want, || format!("mu={m} xbar={xb} y={y:.4}"));
                }
            }
        }
        w.finish(ALPHA_TWO_IDENTITY, 1e-12)
    }

    pub fn nakagami_equivalence(&self) -> IdentityCheck {
        let name = "nakagami m equals alpha_mu (2, m)";
        let mut w = Worst::new();
        for &m in &[0.5, 0.8, 1.0, 2.0, 3.7, 6.0] {
            for &om in &[0.4_f64, 1.0, 3.0] {
                let (Ok(nk), Ok(am)) = (NakagamiParams::new(m, om), AlphaMuParams::new(2.0, m, om.sqrt())) else {
                    return failed(name, 1e-12, format!("bad parameters m={m} omega={om}"));
                };
                for y in power_grid() {
                    let want = am.power_cdf(y).unwrap_or(f64::NAN);
                    w.record(nk.power_cdf(y), want, || format!("m={m} omega={om} y={y:.4}"));
                }
            }
        }
        w.finish(name, 1e-12)
    }

    /// Each tabulated row against the closed form of the distribution it names.
    pub fn preset_closed_forms(&self) -> Vec<IdentityCheck> {
        let mut out = Vec::new();
        for preset in all_presets::<f64>() {
            let name = format!("{} {} closed form", preset.family, preset.name);
            let mut w = Worst::new();
            let tol = match (preset.family, preset.name) {
                (Family::KappaMu, PresetName::Rice) => 1e-9,
                _ => 1e-12,
            };
            match preset.params {
                FamilyParams::AlphaMu(p) => {
                    // envelope domain, Ω = 1
                    let (a, om) = (p.alpha(), p.omega());
                    let reference: Box<dyn Fn(f64) -> f64> = match preset.name {
                        PresetName::Exponential | PresetName::Weibull | PresetName::Rayleigh => {
                            Box::new(move |r: f64| -(-(r / om).powf(a)).exp_m1())
                        }
                        PresetName::NakagamiM => Box::new(move |r: f64| {
                            let g = 2.0 * r * r / (om * om);
                            1.0 - (-g).exp() * (1.0 + g)
                        }),
                        PresetName::OneSidedGaussian => Box::new(move |r: f64| libm::erf(r / (om * 2f64.sqrt()))),
                        PresetName::Rice => unreachable!("no alpha-mu Rice row"),
                    };
                    for y in power_grid() {
                        let r = y.sqrt();
                        w.record(p.envelope_cdf(r), reference(r), || format!("r={r:.4}"));
                    }
                }
                FamilyParams::KappaMu(p) => {
                    let xb = p.mean_power();
                    for y in power_grid() {
                        let want = match preset.name {
                            PresetName::Rayleigh => -(-y / xb).exp_m1(),
                            PresetName::NakagamiM => {
                                let g = 2.0 * y / xb;
                                1.0 - (-g).exp() * (1.0 + g)
                            }
                            PresetName::OneSidedGaussian => libm::erf((y / (2.0 * xb)).sqrt()),
                            PresetName::Rice => rice_cdf_by_quadrature(p.kappa(), xb, y),
                            PresetName::Exponential | PresetName::Weibull => unreachable!("no kappa-mu row"),
                        };
                        w.record(self.km(&p, y), want, || format!("y={y:.4}"));
                    }
                }
            }
            out.push(w.finish(&name, tol));
        }
        out
    }

    pub fn mgf_closed_form(&self) -> IdentityCheck {
        let name = "kappa_mu MGF closed form vs quadrature";
        let spec = QuadratureSpec::new(1e-13, 1e-11, 2000).expect("valid tolerances");
        let mut w = Worst::new();
        for &(k, m) in &[(0.0, 1.0), (0.0, 2.5), (1.0, 1.0), (2.0, 1.5), (4.0, 0.7), (0.5, 3.0)] {
            let Ok(p) = KappaMuParams::new(k, m, 1.0) else {
                return failed(name, 1e-8, format!("bad parameters kappa={k} mu={m}"));
            };
            for s in mgf_points() {
                let quad = integrate_from_zero(|x: f64| (-s * x).exp() * p.power_pdf(x).unwrap_or(f64::NAN), m, spec);
                match (p.mgf(s), quad) {
                    (Ok(c), Ok(q)) => w.record(Ok((c - q) / q), 0.0, || format!("kappa={k} mu={m} s={s}")),
                    (Err(e), _) | (_, Err(e)) => w.record(Err(e), 0.0, || format!("kappa={k} mu={m} s={s}")),
                }
            }
        }
        w.finish(name, 1e-8)
    }

    pub fn mgf_cross_family(&self) -> IdentityCheck {
        let name = "alpha_mu (2, m) MGF equals kappa_mu (0, m)";
        let spec = QuadratureSpec::new(1e-13, 1e-11, 2000).expect("valid tolerances");
        let mut w = Worst::new();
        for &m in &GAMMA_SHAPES {
            let (Ok(am), Ok(km)) = (AlphaMuParams::new(2.0, m, 1.0), KappaMuParams::new(0.0, m, 1.0)) else {
                return failed(name, 1e-7, format!("bad parameters m={m}"));
            };
            for s in mgf_points() {
                match km.mgf(s) {
                    Ok(want) => w.record(am.mgf(s, spec).map(|v| (v - want) / want), 0.0, || format!("m={m} s={s}")),
                    Err(e) => w.record(Err(e), 0.0, || format!("m={m} s={s}")),
                }
            }
        }
        w.finish(name, 1e-7)
    }

    /// KS tests for every preset and a few random parameter sets per family.
    pub fn ks_checks(&self) -> Vec<IdentityCheck> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut models: Vec<(String, FadingModel<f64>)> = all_presets::<f64>()
            .into_iter()
            .map(|p| (format!("KS {} {}", p.family, p.name), p.params.model()))
            .collect();
        for _ in 0..self.random_sets {
            let (k, m) = (rng.gen_range(0.0..5.0), rng.gen_range(0.3..4.0));
            if let Ok(p) = KappaMuParams::new(k, m, 1.0) {
                models.push((format!("KS kappa_mu kappa={k:.3} mu={m:.3}"), FadingModel::KappaMu(p)));
            }
            let (a, m) = (rng.gen_range(0.5..4.0), rng.gen_range(0.3..4.0));
            if let Ok(p) = AlphaMuParams::unit_power(a, m) {
                models.push((format!("KS alpha_mu alpha={a:.3} mu={m:.3}"), FadingModel::AlphaMu(p)));
            }
        }
        let bound = ks_bound(self.ks_samples);
        models
            .into_iter()
            .map(|(name, model)| {
                let mut samples: Vec<f64> = (0..self.ks_samples).map(|_| model.sample_power(&mut rng)).collect();
                let d = match model {
                    FadingModel::KappaMu(p) => ks_statistic(&mut samples, |y| self.km(&p, y)),
                    _ => ks_statistic(&mut samples, |y| model.power_cdf(y)),
                };
                match d {
                    Ok(d) => IdentityCheck {
                        name,
                        passed: d < bound,
                        max_deviation: d,
                        tolerance: bound,
                        detail: format!("n={}", self.ks_samples),
                    },
                    Err(e) => failed(&name, bound, e.to_string()),
                }
            })
            .collect()
    }

    /// Nakagami(2), κ-μ(0, 2) and α-μ(2, 2) direct links give the same OP curve.
    pub fn op_overlap(&self) -> IdentityCheck {
        let name = "nakagami-equivalent OP curves overlap";
        let links = [
            LinkFading::Nakagami { m: 2.0 },
            LinkFading::KappaMu { kappa: 0.0, mu: 2.0 },
            LinkFading::AlphaMu { alpha: 2.0, mu: 2.0 },
        ];
        let spec = SweepSpec {
            power_points_dbm: vec![0.0, 10.0, 20.0, 30.0, 40.0],
            trials_per_point: self.op_trials,
            master_seed: self.seed,
            scheme: Scheme::RisNoma,
            user: User::U1,
        };
        let mut curves = Vec::new();
        for link in links {
            let cfg = SystemConfig {
                direct_u1: link,
                ..SystemConfig::default()
            };
            match run_sweep(&cfg, &spec) {
                Ok(c) => curves.push(c),
                Err(e) => return failed(name, 2.0, e.to_string()),
            }
        }
        let (z, at) = max_pairwise_z(&curves);
        IdentityCheck {
            name: name.to_string(),
            passed: z <= 2.0,
            max_deviation: z,
            tolerance: 2.0,
            detail: format!("in combined standard errors, worst at {at} dBm, n={}", self.op_trials),
        }
    }
}

/// Largest `|p_a − p_b| / √(se_a² + se_b²)` over curve pairs and points.
/// A pair that agrees exactly scores 0 even when both standard errors vanish.
pub fn max_pairwise_z(curves: &[Vec<crate::montecarlo::OutageResult<f64>>]) -> (f64, f64) {
    let mut worst = (0.0, f64::NAN);
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            for (a, b) in curves[i].iter().zip(&curves[j]) {
                let diff = (a.op_estimate - b.op_estimate).abs();
                let se2 = binomial_var(a) + binomial_var(b);
                let z = if diff == 0.0 {
                    0.0
                } else if se2 == 0.0 {
                    f64::INFINITY
                } else {
                    diff / se2.sqrt()
                };
                if z > worst.0 || worst.1.is_nan() {
                    worst = (z.max(worst.0), if z >= worst.0 { a.power_dbm } else { worst.1 });
                }
            }
        }
    }
    worst
}

fn binomial_var(r: &crate::montecarlo::OutageResult<f64>) -> f64 {
    r.op_estimate * (1.0 - r.op_estimate) / r.trials as f64
}

fn mgf_points() -> [f64; 7] {
    [0.1, 0.3, 0.7, 1.0, 2.0, 5.0, 10.0]
}

fn failed(name: &str, tol: f64, why: String) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        passed: false,
        max_deviation: f64::INFINITY,
        tolerance: tol,
        detail: why,
    }
}

/// Rician power CDF by integrating its density, with `I₀` from the Bessel
/// routine rather than the Marcum function.
fn rice_cdf_by_quadrature(k: f64, xb: f64, y: f64) -> f64 {
    let spec = QuadratureSpec::new(1e-14, 1e-12, 2000).expect("valid tolerances");
    let c = (1.0 + k) / xb;
    let pdf = |x: f64| {
        let z = 2.0 * (k * c * x).sqrt();
        // e^{−K − c x} I₀(z) = e^{−K − c x + z} · (e^{−z} I₀(z))
        c * (-k - c * x + z).exp() * bessel_i_scaled(0.0, z).unwrap_or(f64::NAN)
    };
    integrate(pdf, 0.0, y, spec).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rice_reference_limits() {
        // K = 0 reduces to the exponential law
        let v = rice_cdf_by_quadrature(0.0, 1.0, 1.3);
        assert!((v + (-1.3_f64).exp_m1()).abs() < 1e-12);
    }

    #[test]
    fn identity_checks_pass_on_fresh_build() {
        let s = ValidationSuite::default();
        let a = s.kappa_zero_identity();
        let b = s.alpha_two_identity();
        assert!(a.passed && b.passed, "{a}\n{b}");
    }

    #[test]
    fn pairwise_z_handles_degenerate_points() {
        use crate::montecarlo::OutageResult;
        let r = |op: f64| OutageResult {
            power_dbm: 0.0,
            op_estimate: op,
            ci_low: op,
            ci_high: op,
            trials: 100,
            outages: (op * 100.0) as u64,
        };
        assert_eq!(max_pairwise_z(&[vec![r(0.0)], vec![r(0.0)]]).0, 0.0);
        assert!(max_pairwise_z(&[vec![r(0.0)], vec![r(1.0)]]).0.is_infinite());
    }
}
