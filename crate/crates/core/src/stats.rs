//! Small statistics helpers shared by tests, the validation suite and the CLI.

use crate::error::Result;
use crate::real::Real;

/// One-sample Kolmogorov-Smirnov statistic `sup |F_n − F|`. Sorts `samples`.
pub fn ks_statistic<T: Real, F: FnMut(T) -> Result<T>>(samples: &mut [T], mut cdf: F) -> Result<T> {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("samples must not be NaN"));
    let n = T::from_count(samples.len());
    let mut d = T::zero();
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x)?;
        let above = T::from_count(i + 1) / n - f;
        let below = f - T::from_count(i) / n;
        d = d.max(above).max(below);
    }
    Ok(d)
}

/// The acceptance bound `1.95 / √n` used for every goodness-of-fit check
/// (about the 0.1 % critical value of the KS distribution).
pub fn ks_bound(n: usize) -> f64 {
    1.95 / (n as f64).sqrt()
}

/// Sample mean and its standard error.
pub fn mean_and_se<T: Real>(xs: &[T]) -> (T, T) {
    let n = T::from_count(xs.len());
    let mean = xs.iter().copied().sum::<T>() / n;
    let var = xs.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>() / (n - T::one());
    (mean, (var / n).sqrt())
}
