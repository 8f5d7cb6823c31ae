//! Outage-probability estimation by Monte Carlo.
//!
//! Every trial owns a ChaCha8 stream addressed by `(point index, trial index)`:
//! the master seed fixes the key, the point index selects the stream and the
//! trial index an offset of 2^24 words inside it. A trial therefore draws the
//! same numbers however the work is split across threads or machines, and a
//! sweep is reproducible bit for bit from its seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;
use crate::sysmodel::{
    align_phases_with_amplitude, dbm_to_mw, ChannelRealization, ChannelSampler, LinkBudget, Scheme, SystemConfig, User,
};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;
/// Two-sided 99% normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_901;

const WORDS_PER_TRIAL_LOG2: u32 = 24;

/// A transmit-power sweep for one scheme and user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec<T> {
    /// Strictly increasing.
    pub power_points_dbm: Vec<T>,
    pub trials_per_point: u64,
    pub master_seed: u64,
    pub scheme: Scheme,
    pub user: User,
}

impl<T: Real> SweepSpec<T> {
    /// Evenly spaced points from `start` to `stop` inclusive.
    pub fn linspace_dbm(start: T, stop: T, step: T) -> Result<Vec<T>> {
        if !(step > T::zero()) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidParams(format!(
                "bad power grid start={start} stop={stop} step={step}"
            )));
        }
        let n = ((stop - start) / step + T::lit(1e-9)).floor().to_usize().unwrap_or(0);
        Ok((0..=n).map(|i| start + step * T::from_count(i)).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials_per_point == 0 {
            return Err(Error::Config {
                field: "trials_per_point",
                reason: "must be at least 1".into(),
            });
        }
        if self.power_points_dbm.iter().any(|p| !p.is_finite()) {
            return Err(Error::Config {
                field: "power_points_dbm",
                reason: "every power point must be finite".into(),
            });
        }
        if self.power_points_dbm.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config {
                field: "power_points_dbm",
                reason: "power points must be strictly increasing".into(),
            });
        }
        Ok(())
    }
}

/// Outage estimate at one transmit power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutageResult<T> {
    pub power_dbm: T,
    pub op_estimate: T,
    /// 95% Wilson interval.
    pub ci_low: T,
    pub ci_high: T,
    pub trials: u64,
    pub outages: u64,
}

impl<T: Real> OutageResult<T> {
    fn from_counts(power_dbm: T, outages: u64, trials: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(outages, trials, T::lit(Z_95));
        Self {
            power_dbm,
            op_estimate: T::lit(outages as f64 / trials as f64),
            ci_low,
            ci_high,
            trials,
            outages,
        }
    }

    /// Wilson interval at another confidence level.
    pub fn interval(&self, z: T) -> (T, T) {
        wilson_interval(self.outages, self.trials, z)
    }
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval<T: Real>(successes: u64, trials: u64, z: T) -> (T, T) {
    if trials == 0 {
        return (T::zero(), T::one());
    }
    let n = T::lit(trials as f64);
    let p = T::lit(successes as f64) / n;
    let z2 = z * z;
    let denom = T::one() + z2 / n;
    let center = (p + z2 / (T::lit(2.0) * n)) / denom;
    let half = z * (p * (T::one() - p) / n + z2 / (T::lit(4.0) * n * n)).sqrt() / denom;
    let lo = if successes == 0 { T::zero() } else { (center - half).max(T::zero()) };
    let hi = if successes == trials { T::one() } else { (center + half).min(T::one()) };
    (lo, hi)
}

/// Addresses the random stream of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedContext {
    pub master_seed: u64,
    pub point_index: u64,
}

/// Factory for per-trial generators under one master seed.
#[derive(Debug, Clone)]
pub struct TrialStreams {
    base: ChaCha8Rng,
}

impl TrialStreams {
    pub fn new(master_seed: u64) -> Self {
        Self {
            base: ChaCha8Rng::seed_from_u64(master_seed),
        }
    }

    pub fn rng(&self, point_index: u64, trial_index: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(point_index);
        rng.set_word_pos(u128::from(trial_index) << WORDS_PER_TRIAL_LOG2);
        rng
    }
}

/// The generator of trial `trial_index` at `ctx`.
pub fn trial_rng(ctx: SeedContext, trial_index: u64) -> ChaCha8Rng {
    TrialStreams::new(ctx.master_seed).rng(ctx.point_index, trial_index)
}

/// Outage-style estimate for an arbitrary per-trial indicator, using the
/// same stream addressing and aggregation as the sweeps.
pub fn estimate_indicator<T, F>(power_dbm: T, trials: u64, ctx: SeedContext, indicator: F) -> OutageResult<T>
where
    T: Real,
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    let streams = TrialStreams::new(ctx.master_seed);
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|t| u64::from(indicator(&mut streams.rng(ctx.point_index, t))))
        .sum();
    OutageResult::from_counts(power_dbm, hits, trials)
}

/// Everything a trial needs that does not depend on the draw.
struct Evaluator<T> {
    sampler: ChannelSampler<T>,
    budget: LinkBudget<T>,
    beta: T,
    n: usize,
}

impl<T: Real> Evaluator<T> {
    fn new(cfg: &SystemConfig<T>) -> Result<Self> {
        Ok(Self {
            sampler: ChannelSampler::new(cfg)?,
            budget: LinkBudget::new(cfg)?,
            beta: cfg.reflection_amplitude,
            n: cfg.n_elements,
        })
    }

    fn outage(&self, r: &ChannelRealization<T>, tx_mw: T, scheme: Scheme, user: User) -> bool {
        match user {
            User::U1 => {
                let gain = match scheme {
                    Scheme::ConventionalNoma => (r.h_u1 * self.budget.direct_amplitude).norm_sqr(),
                    Scheme::RisNoma => {
                        let phi = align_phases_with_amplitude(r, self.beta);
                        self.budget.gain_u1(r, &phi, scheme)
                    }
                };
                self.budget.outage_u1(self.budget.sinr_u1(gain, tx_mw))
            }
            User::U2 => self.budget.outage_u2(self.budget.sinr_u2(self.budget.gain_u2(r), tx_mw)),
        }
    }

    /// Parallel fold over trials; `f` maps one realization to a summary.
    fn fold<A, F>(&self, ctx: SeedContext, trials: u64, f: F) -> A
    where
        A: Default + Send + std::ops::Add<Output = A>,
        F: Fn(&ChannelRealization<T>) -> A + Sync,
    {
        let streams = TrialStreams::new(ctx.master_seed);
        (0..trials)
            .into_par_iter()
            .fold(
                || (ChannelRealization::zeros(self.n), A::default()),
                |(mut buf, acc), t| {
                    let mut rng = streams.rng(ctx.point_index, t);
                    self.sampler.realize_into(&mut buf, &mut rng);
                    let v = f(&buf);
                    (buf, acc + v)
                },
            )
            .map(|(_, a)| a)
            .reduce(A::default, |a, b| a + b)
    }
}

/// Estimates the outage probability of `user` under `scheme` at one power.
///
/// Confidence intervals are only meaningful from about a hundred trials.
pub fn estimate_op_point<T: Real>(
    cfg: &SystemConfig<T>,
    power_dbm: T,
    trials: u64,
    ctx: SeedContext,
    scheme: Scheme,
    user: User,
) -> Result<OutageResult<T>> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    if !power_dbm.is_finite() {
        return Err(Error::InvalidParams(format!("power {power_dbm} dBm is not finite")));
    }
    let ev = Evaluator::new(cfg)?;
    Ok(estimate_with(&ev, power_dbm, trials, ctx, scheme, user))
}

fn estimate_with<T: Real>(
    ev: &Evaluator<T>,
    power_dbm: T,
    trials: u64,
    ctx: SeedContext,
    scheme: Scheme,
    user: User,
) -> OutageResult<T> {
    let tx_mw = dbm_to_mw(power_dbm);
    let outages: u64 = ev.fold(ctx, trials, |r| u64::from(ev.outage(r, tx_mw, scheme, user)));
    OutageResult::from_counts(power_dbm, outages, trials)
}

/// One estimate per power point, in order. Point `i` uses stream `i`.
pub fn run_sweep<T: Real>(cfg: &SystemConfig<T>, spec: &SweepSpec<T>) -> Result<Vec<OutageResult<T>>> {
    spec.validate()?;
    if spec.power_points_dbm.is_empty() {
        return Ok(Vec::new());
    }
    let ev = Evaluator::new(cfg)?;
    Ok(spec
        .power_points_dbm
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let ctx = SeedContext {
                master_seed: spec.master_seed,
                point_index: i as u64,
            };
            estimate_with(&ev, p, spec.trials_per_point, ctx, spec.scheme, spec.user)
        })
        .collect())
}

/// RIS and conventional NOMA evaluated on the same channel draws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairedOutage<T> {
    pub power_dbm: T,
    pub ris: OutageResult<T>,
    pub conventional: OutageResult<T>,
    /// `OP_conventional − OP_ris`.
    pub difference: T,
    /// 95% normal interval of the paired difference.
    pub diff_ci_low: T,
    pub diff_ci_high: T,
}

#[derive(Debug, Default, Clone, Copy)]
struct PairCounts {
    ris: u64,
    conventional: u64,
    /// trials where exactly one scheme is in outage, signed
    plus: u64,
    minus: u64,
}

impl std::ops::Add for PairCounts {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            ris: self.ris + o.ris,
            conventional: self.conventional + o.conventional,
            plus: self.plus + o.plus,
            minus: self.minus + o.minus,
        }
    }
}

/// Common-random-number comparison of the two schemes for `spec.user`.
/// `spec.scheme` is ignored.
pub fn compare_schemes<T: Real>(cfg: &SystemConfig<T>, spec: &SweepSpec<T>) -> Result<Vec<PairedOutage<T>>> {
    spec.validate()?;
    let ev = Evaluator::new(cfg)?;
    let n = spec.trials_per_point;
    Ok(spec
        .power_points_dbm
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let ctx = SeedContext {
                master_seed: spec.master_seed,
                point_index: i as u64,
            };
            let tx_mw = dbm_to_mw(p);
            let c = ev.fold(ctx, n, |r| {
                let a = ev.outage(r, tx_mw, Scheme::RisNoma, spec.user);
                let b = ev.outage(r, tx_mw, Scheme::ConventionalNoma, spec.user);
                PairCounts {
                    ris: u64::from(a),
                    conventional: u64::from(b),
                    plus: u64::from(b && !a),
                    minus: u64::from(a && !b),
                }
            });
            let nf = n as f64;
            let d = (c.plus as f64 - c.minus as f64) / nf;
            let second = (c.plus + c.minus) as f64 / nf;
            let se = ((second - d * d).max(0.0) / nf).sqrt();
            PairedOutage {
                power_dbm: p,
                ris: OutageResult::from_counts(p, c.ris, n),
                conventional: OutageResult::from_counts(p, c.conventional, n),
                difference: T::lit(d),
                diff_ci_low: T::lit(d - Z_95 * se),
                diff_ci_high: T::lit(d + Z_95 * se),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn wilson_edges() {
        let (lo, hi) = wilson_interval::<f64>(0, 100, Z_95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval::<f64>(100, 100, Z_95);
        assert_eq!(hi, 1.0);
        assert!(lo > 0.95);
        let (lo, hi) = wilson_interval::<f64>(50, 100, Z_95);
        assert!((lo - 0.403_831_4).abs() < 1e-6 && (hi - 0.596_168_6).abs() < 1e-6, "{lo} {hi}");
    }

    #[test]
    fn streams_are_distinct_and_stable() {
        let s = TrialStreams::new(9);
        let a = s.rng(0, 0).next_u64();
        assert_eq!(a, s.rng(0, 0).next_u64());
        assert_ne!(a, s.rng(1, 0).next_u64());
        assert_ne!(a, s.rng(0, 1).next_u64());
        assert_ne!(a, TrialStreams::new(10).rng(0, 0).next_u64());
    }

    #[test]
    fn linspace_is_inclusive() {
        let p = SweepSpec::<f64>::linspace_dbm(0.0, 40.0, 2.0).unwrap();
        assert_eq!(p.len(), 21);
        assert_eq!(p[20], 40.0);
    }

    #[test]
    fn sweep_spec_validation() {
        let mut s = SweepSpec {
            power_points_dbm: vec![0.0, 10.0],
            trials_per_point: 0,
            master_seed: 1,
            scheme: Scheme::RisNoma,
            user: User::U1,
        };
        assert!(s.validate().is_err());
        s.trials_per_point = 10;
        s.validate().unwrap();
        s.power_points_dbm = vec![10.0, 10.0];
        assert!(s.validate().is_err());
    }
}
