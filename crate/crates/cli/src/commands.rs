use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use risfade_core::fading::{AlphaMuParams, KappaMuParams, NakagamiParams};
use risfade_core::montecarlo::{compare_schemes, run_sweep, OutageResult};
use risfade_core::stats::{ks_bound, ks_statistic};
use risfade_core::sysmodel::{LinkFading, Scheme};
use risfade_core::validation::{ValidationReport, ValidationSuite};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{CliError, Result};

/// Header of the outage CSV.
pub const OP_HEADER: [&str; 8] = ["scheme", "channel", "power_dbm", "op", "ci_low", "ci_high", "trials", "seed"];

/// Number of abscissae written by `dist-curves`.
pub const GRID_POINTS: usize = 512;

/// `dist-curves` stops growing the grid once `1 − CDF(x_max)` drops below this.
pub const TAIL_MASS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpRow {
    pub scheme: &'static str,
    pub channel: String,
    pub power_dbm: f64,
    pub op: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Runs every requested scheme; when both are present they share random numbers.
pub fn op_curve(cfg: &RunConfig) -> Result<Vec<OpRow>> {
    cfg.validate()?;
    let channel = cfg.system.direct_u1.label();
    let seed = cfg.sweep.master_seed;
    let row = |scheme: Scheme, r: &OutageResult<f64>| OpRow {
        scheme: scheme.as_str(),
        channel: channel.clone(),
        power_dbm: r.power_dbm,
        op: r.op_estimate,
        ci_low: r.ci_low,
        ci_high: r.ci_high,
        trials: r.trials,
        seed,
    };

    let both = cfg.schemes.contains(&Scheme::RisNoma) && cfg.schemes.contains(&Scheme::ConventionalNoma);
    let mut rows = Vec::new();
    if both {
        let paired = compare_schemes(&cfg.system, &cfg.sweep_spec(Scheme::RisNoma))?;
        for &scheme in &cfg.schemes {
            for p in &paired {
                let r = match scheme {
                    Scheme::RisNoma => &p.ris,
                    Scheme::ConventionalNoma => &p.conventional,
                };
                rows.push(row(scheme, r));
            }
        }
    } else {
        for &scheme in &cfg.schemes {
            for r in run_sweep(&cfg.system, &cfg.sweep_spec(scheme))? {
                rows.push(row(scheme, &r));
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<R: Serialize>(path: &Path, rows: &[R]) -> Result<()> {
    create_parent(path)?;
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::csv(path, e))?;
    for r in rows {
        w.serialize(r).map_err(|e| CliError::csv(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Writes an OP table, emitting the header even when there are no rows.
pub fn write_op_csv(path: &Path, rows: &[OpRow]) -> Result<()> {
    if rows.is_empty() {
        create_parent(path)?;
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::csv(path, e))?;
        w.write_record(OP_HEADER).map_err(|e| CliError::csv(path, e))?;
        return w.flush().map_err(|e| CliError::io(path, e));
    }
    write_csv(path, rows)
}

fn create_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e)),
        _ => Ok(()),
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    create_parent(path)?;
    let mut f = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| CliError::io(path, e))
}

// dist-curves

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KsSettings {
    /// 0 disables the goodness-of-fit check.
    pub samples: u64,
    pub seed: u64,
}

/// `dist-curves` configuration.
///
/// Abscissa domain: power for κ-μ, envelope for α-μ and Nakagami-m.
/// `scale` is the mean power `x̄` for κ-μ and `Ω` for the other two
/// (for Nakagami-m, `Ω = E[R²]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistConfig {
    pub law: LinkFading<f64>,
    pub scale: f64,
    pub ks: KsSettings,
    pub output: PathBuf,
}

impl Default for DistConfig {
    fn default() -> Self {
        Self {
            law: LinkFading::KappaMu { kappa: 1.0, mu: 1.0 },
            scale: 1.0,
            ks: KsSettings { samples: 0, seed: 1 },
            output: PathBuf::from("dist_curve.csv"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistRow {
    pub x: f64,
    pub pdf: f64,
    pub cdf: f64,
}

enum Law {
    KappaMu(KappaMuParams<f64>),
    AlphaMu(AlphaMuParams<f64>),
    Nakagami(NakagamiParams<f64>),
}

impl Law {
    fn new(cfg: &DistConfig) -> Result<Self> {
        Ok(match cfg.law {
            LinkFading::KappaMu { kappa, mu } => Law::KappaMu(KappaMuParams::new(kappa, mu, cfg.scale)?),
            LinkFading::AlphaMu { alpha, mu } => Law::AlphaMu(AlphaMuParams::new(alpha, mu, cfg.scale)?),
            LinkFading::Nakagami { m } => Law::Nakagami(NakagamiParams::new(m, cfg.scale)?),
        })
    }

    /// A grid end that is certainly inside the support's bulk.
    fn initial_extent(&self) -> f64 {
        match self {
            Law::KappaMu(p) => p.mean_power(),
            Law::AlphaMu(p) => p.omega(),
            Law::Nakagami(p) => p.omega().sqrt(),
        }
    }

    fn pdf(&self, x: f64) -> risfade_core::Result<f64> {
        Ok(match self {
            Law::KappaMu(p) => p.power_pdf(x)?,
            Law::AlphaMu(p) => p.envelope_pdf(x)?,
            Law::Nakagami(p) => p.envelope_pdf(x)?,
        })
    }

    fn cdf(&self, x: f64) -> risfade_core::Result<f64> {
        Ok(match self {
            Law::KappaMu(p) => p.power_cdf(x)?,
            Law::AlphaMu(p) => p.envelope_cdf(x)?,
            Law::Nakagami(p) => p.power_cdf(x * x)?,
        })
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Law::KappaMu(p) => p.sample_power(rng),
            Law::AlphaMu(p) => p.sample_envelope(rng),
            Law::Nakagami(p) => p.sample_envelope(rng),
        }
    }
}

/// Result of the optional sampler check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub bound: f64,
}

impl KsOutcome {
    pub fn passed(&self) -> bool {
        self.statistic <= self.bound
    }
}

pub fn dist_curves(cfg: &DistConfig) -> Result<Vec<DistRow>> {
    if !(cfg.scale > 0.0 && cfg.scale.is_finite()) {
        return Err(CliError::Config(format!("scale: must be positive and finite, got {}", cfg.scale)));
    }
    let law = Law::new(cfg)?;

    let mut x_max = law.initial_extent();
    while law.cdf(x_max)? <= 1.0 - TAIL_MASS {
        x_max *= 2.0;
        if !x_max.is_finite() {
            return Err(CliError::Config("law has too heavy a tail for a finite grid".into()));
        }
    }

    let step = x_max / (GRID_POINTS - 1) as f64;
    (0..GRID_POINTS)
        .map(|i| {
            let x = if i + 1 == GRID_POINTS { x_max } else { i as f64 * step };
            Ok(DistRow {
                x,
                pdf: law.pdf(x)?,
                cdf: law.cdf(x)?,
            })
        })
        .collect()
}

/// KS distance between `cfg.ks.samples` draws and the analytic CDF.
pub fn dist_ks(cfg: &DistConfig) -> Result<Option<KsOutcome>> {
    if cfg.ks.samples == 0 {
        return Ok(None);
    }
    let law = Law::new(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.ks.seed);
    let mut xs: Vec<f64> = (0..cfg.ks.samples).map(|_| law.sample(&mut rng)).collect();
    let statistic = ks_statistic(&mut xs, |x| law.cdf(x))?;
    Ok(Some(KsOutcome {
        statistic,
        bound: ks_bound(xs.len()),
    }))
}

// validate

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateConfig {
    pub ks_samples: usize,
    pub random_sets: usize,
    pub op_trials: u64,
    pub seed: u64,
    /// Optional file receiving the report text.
    pub output: Option<PathBuf>,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        let s = ValidationSuite::default();
        Self {
            ks_samples: s.ks_samples,
            random_sets: s.random_sets,
            op_trials: s.op_trials,
            seed: s.seed,
            output: None,
        }
    }
}

pub fn validate(cfg: &ValidateConfig) -> Result<ValidationReport> {
    if cfg.ks_samples < 2 || cfg.op_trials == 0 {
        return Err(CliError::Config("ks_samples must be >= 2 and op_trials >= 1".into()));
    }
    let mut suite = ValidationSuite::default();
    suite.ks_samples = cfg.ks_samples;
    suite.random_sets = cfg.random_sets;
    suite.op_trials = cfg.op_trials;
    suite.seed = cfg.seed;
    Ok(suite.run())
}

pub fn report_text(report: &ValidationReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    let failed = report.failures().count();
    s.push_str(&format!("{} checks, {} failed\n", report.checks.len(), failed));
    s
}
