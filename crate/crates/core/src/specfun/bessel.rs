//! Modified Bessel function of the first kind, real order, exponentially scaled.
//!
//! Two branches:
//!
//! * ascending series `I_ν(x) = (x/2)^ν Σ (x²/4)^k / (k! Γ(ν+k+1))`, summed
//!   with running rescaling so the result is formed in log space and never
//!   overflows;
//! * large-argument expansion
//!   `e^{−x} I_ν(x) ~ (2πx)^{−1/2} Σ (−1)^k a_k(ν) / x^k` with
//!   `a_k(ν) = Π_{j=1..k} (4ν² − (2j−1)²) / (8j)`.
//!
//! The expansion is used once `x ≥ max(40, 2ν²)`; past that point every
//! successive term shrinks by at least a factor of two until the series has
//! converged to machine precision.

use crate::error::{domain, Result};
use crate::real::Real;

use super::gamma::ln_gamma_unchecked;

const CROSSOVER_MIN: f64 = 40.0;

/// Argument above which [`bessel_i_scaled`] switches to the large-argument branch.
pub fn bessel_crossover<T: Real>(order: T) -> T {
    (T::lit(2.0) * order * order).max(T::lit(CROSSOVER_MIN))
}

fn check<T: Real>(func: &'static str, order: T, x: T) -> Result<()> {
    if !(order > -T::one()) || !order.is_finite() {
        return Err(domain(func, format!("order = {order} must exceed -1")));
    }
    if !(x >= T::zero()) || !x.is_finite() {
        return Err(domain(func, format!("x = {x} must be nonnegative and finite")));
    }
    Ok(())
}

/// `e^{−x} I_order(x)` for `order > −1`, `x ≥ 0`.
pub fn bessel_i_scaled<T: Real>(order: T, x: T) -> Result<T> {
    check("bessel_i_scaled", order, x)?;
    Ok(ln_bessel_i_scaled(order, x).exp())
}

/// Unscaled `I_order(x)`. Overflows to `+∞` once `x` exceeds roughly 710.
pub fn bessel_i<T: Real>(order: T, x: T) -> Result<T> {
    check("bessel_i", order, x)?;
    Ok((ln_bessel_i_scaled(order, x) + x).exp())
}

/// ln(e^{−x} I_order(x)); −∞ at x = 0 for positive order, +∞ for negative order.
pub(crate) fn ln_bessel_i_scaled<T: Real>(order: T, x: T) -> T {
    if x < bessel_crossover(order) {
        ln_series(order, x)
    } else {
        asymptotic(order, x).ln()
    }
}

/// Series branch, exposed for crossover checks.
pub fn bessel_i_scaled_series<T: Real>(order: T, x: T) -> Result<T> {
    check("bessel_i_scaled_series", order, x)?;
    Ok(ln_series(order, x).exp())
}

/// Large-argument branch, exposed for crossover checks. Only accurate for
/// `x` well beyond `order²`.
pub fn bessel_i_scaled_asymptotic<T: Real>(order: T, x: T) -> Result<T> {
    check("bessel_i_scaled_asymptotic", order, x)?;
    if x == T::zero() {
        return Err(domain("bessel_i_scaled_asymptotic", "x must be positive"));
    }
    Ok(asymptotic(order, x))
}

fn ln_series<T: Real>(order: T, x: T) -> T {
    let zero = T::zero();
    let one = T::one();
    if x == zero {
        return if order == zero {
            zero
        } else if order > zero {
            T::neg_infinity()
        } else {
            T::infinity()
        };
    }
    let q = x * x * T::lit(0.25);
    let limit = T::max_value().sqrt();
    let mut term = one;
    let mut sum = one;
    let mut log_scale = zero;
    let mut k = zero;
    loop {
        k = k + one;
        term = term * q / (k * (order + k));
        sum = sum + term;
        if sum > limit {
            sum = sum / limit;
            term = term / limit;
            log_scale = log_scale + limit.ln();
        }
        if k * (order + k) > q && term <= sum * T::epsilon() * T::lit(0.5) {
            break;
        }
    }
    order * (x * T::lit(0.5)).ln() - ln_gamma_unchecked(order + one) - x + sum.ln() + log_scale
}

fn asymptotic<T: Real>(order: T, x: T) -> T {
    let one = T::one();
    let mu = T::lit(4.0) * order * order;
    let eight_x = T::lit(8.0) * x;
    let mut term = one;
    let mut sum = one;
    let mut prev = T::infinity();
    let mut j = 1usize;
    while j < 200 {
        let odd = T::from_count(2 * j - 1);
        term = -term * (mu - odd * odd) / (T::from_count(j) * eight_x);
        let mag = term.abs();
        // the expansion is divergent: stop at its smallest term
        if mag > prev {
            break;
        }
        sum = sum + term;
        if mag <= sum.abs() * T::epsilon() * T::lit(0.5) {
            break;
        }
        prev = mag;
        j += 1;
    }
    sum / (T::TAU() * x).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_i_scaled(0.0_f64, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i_scaled(1.5_f64, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_i_scaled(-0.5_f64, 0.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_i_scaled(-1.0_f64, 1.0).is_err());
        assert!(bessel_i_scaled(0.5_f64, -1.0).is_err());
        assert!(bessel_i_scaled_asymptotic(0.5_f64, 0.0).is_err());
    }

    #[test]
    fn half_order_closed_forms() {
        // I_{1/2}(x) = sqrt(2/(πx)) sinh x, I_{-1/2}(x) = sqrt(2/(πx)) cosh x
        for &x in &[0.1_f64, 1.0, 5.0, 30.0, 45.0, 120.0, 650.0] {
            let c = (2.0 / (std::f64::consts::PI * x)).sqrt();
            let s = c * 0.5 * (1.0 - (-2.0 * x).exp());
            let h = c * 0.5 * (1.0 + (-2.0 * x).exp());
            let gs = bessel_i_scaled(0.5, x).unwrap();
            let gh = bessel_i_scaled(-0.5, x).unwrap();
            assert!((gs / s - 1.0).abs() < 1e-13, "x={x} {gs} {s}");
            assert!((gh / h - 1.0).abs() < 1e-13, "x={x} {gh} {h}");
        }
    }

    #[test]
    fn unscaled_wrapper() {
        let i0 = bessel_i(0.0_f64, 1.0).unwrap();
        assert!((i0 - 1.266_065_877_752_008_4).abs() < 1e-14);
        assert!(bessel_i(0.0_f64, 800.0).unwrap().is_infinite());
    }
}
