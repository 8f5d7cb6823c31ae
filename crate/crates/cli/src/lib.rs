//! Command-line front end: `op-curve`, `dist-curves` and `validate`.
//!
//! Every subcommand reads an optional JSON config, applies `--set path=value`
//! overrides and the dedicated flags, validates, and only then computes.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad config, 3 I/O error.

pub mod commands;
pub mod config;
pub mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use risfade_core::fading::{Family, PresetName};
use risfade_core::sysmodel::{Scheme, User};
use serde_json::Value;

pub use config::{Override, RunConfig};
pub use error::{CliError, Result};

use commands::{DistConfig, ValidateConfig};

#[derive(Debug, Parser)]
#[command(name = "risfade", version, about = "Outage simulation of RIS-aided NOMA over generalized fading")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo outage probability versus transmit power.
    OpCurve(OpCurveArgs),
    /// Tabulate the PDF and CDF of one fading law.
    DistCurves(DistCurvesArgs),
    /// Run the special-case identity suite.
    Validate(ValidateArgs),
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct Common {
    /// JSON config; omitted keys keep their defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Trials (Monte Carlo) or samples (KS check).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Override any config field, e.g. `--set system.n_elements=32`.
    #[arg(long = "set", value_name = "PATH=VALUE")]
    pub set: Vec<Override>,
    /// Write the effective config to this path before running.
    #[arg(long)]
    pub save_config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ChannelFamily {
    Nakagami,
    #[value(alias = "alpha-mu")]
    AlphaMu,
    #[value(alias = "kappa-mu")]
    KappaMu,
}

impl ChannelFamily {
    fn tag(self) -> &'static str {
        match self {
            ChannelFamily::Nakagami => "nakagami",
            ChannelFamily::AlphaMu => "alpha_mu",
            ChannelFamily::KappaMu => "kappa_mu",
        }
    }
}

/// Law selection, applied as overrides below `prefix`.
#[derive(Debug, Clone, Copy, Args)]
pub struct LawArgs {
    /// Fading family; switching family drops the previous family's parameters.
    #[arg(long, alias = "family")]
    pub channel: Option<ChannelFamily>,
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
}

impl LawArgs {
    fn overrides(&self, prefix: &str) -> Vec<Override> {
        let at = |k: &str, v: Value| Override {
            path: format!("{prefix}.{k}"),
            value: v,
        };
        let mut out = Vec::new();
        if let Some(c) = self.channel {
            out.push(at("family", Value::from(c.tag())));
        }
        for (k, v) in [("m", self.m), ("alpha", self.alpha), ("kappa", self.kappa), ("mu", self.mu)] {
            if let Some(v) = v {
                out.push(at(k, Value::from(v)));
            }
        }
        out
    }
}

#[derive(Debug, Args)]
pub struct OpCurveArgs {
    #[command(flatten)]
    pub common: Common,
    /// Direct BS→U1 link law.
    #[command(flatten)]
    pub law: LawArgs,
    /// Comma-separated list of `ris`, `conventional`.
    #[arg(long, value_delimiter = ',', value_parser = parse_scheme)]
    pub schemes: Option<Vec<Scheme>>,
    #[arg(long, value_parser = parse_user)]
    pub user: Option<User>,
    #[arg(long)]
    pub n_elements: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DistCurvesArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub law: LawArgs,
    /// Tabulated special case, e.g. `rayleigh` or `rice`.
    #[arg(long)]
    pub preset: Option<String>,
    /// Mean power (κ-μ) or Ω (α-μ, Nakagami-m).
    #[arg(long, allow_negative_numbers = true)]
    pub scale: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: Common,
}

fn parse_scheme(s: &str) -> std::result::Result<Scheme, String> {
    s.parse().map_err(|e: risfade_core::Error| e.to_string())
}

fn parse_user(s: &str) -> std::result::Result<User, String> {
    match s {
        "u1" | "U1" => Ok(User::U1),
        "u2" | "U2" => Ok(User::U2),
        _ => Err(format!("unknown user `{s}` (expected u1 or u2)")),
    }
}

fn to_value<T: serde::Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("plain value serializes")
}

fn push(out: &mut Vec<Override>, path: &str, v: Option<Value>) {
    if let Some(value) = v {
        out.push(Override {
            path: path.to_string(),
            value,
        });
    }
}

impl OpCurveArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let c = &self.common;
        let mut ov = c.set.clone();
        ov.extend(self.law.overrides("system.direct_u1"));
        push(&mut ov, "schemes", self.schemes.as_ref().map(to_value));
        push(&mut ov, "sweep.user", self.user.map(to_value));
        push(&mut ov, "system.n_elements", self.n_elements.map(to_value));
        push(&mut ov, "sweep.master_seed", c.seed.map(to_value));
        push(&mut ov, "sweep.trials_per_point", c.trials.map(to_value));
        push(&mut ov, "output", c.out.as_ref().map(to_value));
        let cfg: RunConfig = config::load(c.config.as_deref(), &ov)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

impl DistCurvesArgs {
    pub fn resolve(&self) -> Result<DistConfig> {
        let c = &self.common;
        let mut ov = c.set.clone();
        if let Some(name) = &self.preset {
            ov.push(preset_override(name, self.law.channel)?);
        }
        // with a preset, --channel only chose the family
        let law = LawArgs {
            channel: if self.preset.is_some() { None } else { self.law.channel },
            ..self.law
        };
        ov.extend(law.overrides("law"));
        push(&mut ov, "scale", self.scale.map(to_value));
        push(&mut ov, "ks.seed", c.seed.map(to_value));
        push(&mut ov, "ks.samples", c.trials.map(to_value));
        push(&mut ov, "output", c.out.as_ref().map(to_value));
        config::load(c.config.as_deref(), &ov)
    }
}

/// Replaces `law` with a tabulated row. Without an explicit family the α-μ
/// row is preferred when both families tabulate the name.
fn preset_override(name: &str, family: Option<ChannelFamily>) -> Result<Override> {
    let name: PresetName = name.parse()?;
    let families: &[Family] = match family {
        Some(ChannelFamily::AlphaMu) => &[Family::AlphaMu],
        Some(ChannelFamily::KappaMu) => &[Family::KappaMu],
        Some(ChannelFamily::Nakagami) => {
            return Err(CliError::Config("presets belong to alpha_mu or kappa_mu".into()));
        }
        None => &[Family::AlphaMu, Family::KappaMu],
    };
    let mut last_err = None;
    for &f in families {
        match risfade_core::fading::preset::<f64>(name, f) {
            Ok(p) => {
                let law = match p.params {
                    risfade_core::fading::FamilyParams::AlphaMu(a) => {
                        serde_json::json!({"family": "alpha_mu", "alpha": a.alpha(), "mu": a.mu()})
                    }
                    risfade_core::fading::FamilyParams::KappaMu(k) => {
                        serde_json::json!({"family": "kappa_mu", "kappa": k.kappa(), "mu": k.mu()})
                    }
                };
                return Ok(Override {
                    path: "law".into(),
                    value: law,
                });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one family tried").into())
}

impl ValidateArgs {
    pub fn resolve(&self) -> Result<ValidateConfig> {
        let c = &self.common;
        let mut ov = c.set.clone();
        push(&mut ov, "seed", c.seed.map(to_value));
        push(&mut ov, "op_trials", c.trials.map(to_value));
        push(&mut ov, "output", c.out.as_ref().map(to_value));
        config::load(c.config.as_deref(), &ov)
    }
}

fn save_config<T: serde::Serialize>(path: Option<&std::path::Path>, cfg: &T) -> Result<()> {
    match path {
        Some(p) => {
            commands::write_text(p, &config::to_pretty(cfg))?;
            println!("config: {}", p.display());
            Ok(())
        }
        None => Ok(()),
    }
}

/// Runs one parsed invocation, printing progress lines to stdout.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::OpCurve(args) => {
            let cfg = args.resolve()?;
            save_config(args.common.save_config.as_deref(), &cfg)?;
            println!("seed: {}", cfg.sweep.master_seed);
            let rows = commands::op_curve(&cfg)?;
            commands::write_op_csv(&cfg.output, &rows)?;
            println!("wrote {} rows to {}", rows.len(), cfg.output.display());
        }
        Command::DistCurves(args) => {
            let cfg = args.resolve()?;
            save_config(args.common.save_config.as_deref(), &cfg)?;
            let rows = commands::dist_curves(&cfg)?;
            commands::write_csv(&cfg.output, &rows)?;
            println!("law: {}  scale: {}", cfg.law.label(), cfg.scale);
            println!("wrote {} rows to {}", rows.len(), cfg.output.display());
            if let Some(ks) = commands::dist_ks(&cfg)? {
                println!(
                    "{}  ks  D={:.3e}  bound={:.3e}  samples={}  seed={}",
                    if ks.passed() { "PASS" } else { "FAIL" },
                    ks.statistic,
                    ks.bound,
                    cfg.ks.samples,
                    cfg.ks.seed
                );
                if !ks.passed() {
                    return Err(CliError::CheckFailed(1));
                }
            }
        }
        Command::Validate(args) => {
            let cfg = args.resolve()?;
            save_config(args.common.save_config.as_deref(), &cfg)?;
            println!("seed: {}", cfg.seed);
            let report = commands::validate(&cfg)?;
            let text = commands::report_text(&report);
            print!("{text}");
            if let Some(p) = &cfg.output {
                commands::write_text(p, &text)?;
                println!("wrote report to {}", p.display());
            }
            let failed = report.failures().count();
            if failed > 0 {
                return Err(CliError::CheckFailed(failed));
            }
        }
    }
    Ok(())
}
