//! Generalized Marcum Q function of real order.

use crate::error::{domain, Result};
use crate::real::Real;

use super::gamma::{ln_gamma_unchecked, GammaShape};

/// `Q_ν(a, b)` for `ν > 0`, `a, b ≥ 0`.
///
/// Evaluated as the Poisson mixture of upper regularized gamma tails
///
/// ```text
/// Q_ν(a, b) = Σ_{j≥0} e^{−λ} λ^j / j! · Q(ν + j, y),   λ = a²/2, y = b²/2
/// ```
///
/// Summation starts at the Poisson mode and walks outward in both
/// directions using `Q(s+1, y) = Q(s, y) + y^s e^{−y} / Γ(s+1)`. Since every
/// `Q` lies in `[0, 1]`, the discarded error on each side is bounded by the
/// remaining Poisson mass, which is in turn bounded by a geometric series in
/// the ratio of successive weights; the walk stops once that bound falls
/// below machine precision.
pub fn marcum_q<T: Real>(order: T, a: T, b: T) -> Result<T> {
    if !(order > T::zero()) || !order.is_finite() {
        return Err(domain("marcum_q", format!("order = {order} must be positive")));
    }
    if !(a >= T::zero()) || !a.is_finite() {
        return Err(domain("marcum_q", format!("a = {a} must be nonnegative")));
    }
    if !(b >= T::zero()) || b.is_nan() {
        return Err(domain("marcum_q", format!("b = {b} must be nonnegative")));
    }
    Ok(marcum_q_unchecked(order, a, b))
}

pub(crate) fn marcum_q_unchecked<T: Real>(order: T, a: T, b: T) -> T {
    let zero = T::zero();
    let one = T::one();
    let half = T::lit(0.5);
    if b == zero {
        return one;
    }
    if b.is_infinite() {
        return zero;
    }
    let lambda = half * a * a;
    let y = half * b * b;
    if lambda == zero {
        return GammaShape::new(order).pq(y).1;
    }

    let tol = T::epsilon() * half;
    let mode = lambda.floor();
    let weight_mode =
        (mode * lambda.ln() - lambda - ln_gamma_unchecked(mode + one)).exp();
    let shape = GammaShape::new(order + mode);
    let (_, q_mode, prefix_mode) = shape.pq(y);
    // t(s) = y^s e^{−y} / Γ(s + 1)
    let t_mode = prefix_mode / shape.shape();

    let mut sum = weight_mode * q_mode;

    // upward from the mode
    {
        let mut j = mode;
        let mut s = order + mode;
        let mut w = weight_mode;
        let mut q = q_mode;
        let mut t = t_mode;
        loop {
            q = (q + t).min(one);
            t = t * y / (s + one);
            s = s + one;
            j = j + one;
            w = w * lambda / j;
            sum = sum + w * q;
            let r = lambda / (j + one);
            if r < one && w * r / (one - r) <= tol {
                break;
            }
            if w == zero {
                break;
            }
        }
    }

    // downward from the mode
    {
        let mut j = mode;
        let mut s = order + mode;
        let mut w = weight_mode;
        let mut q = q_mode;
        let mut t = t_mode;
        while j > zero {
            // t(s − 1) = t(s) · s / y,  Q(s − 1) = Q(s) − t(s − 1)
            t = t * s / y;
            s = s - one;
            q = (q - t).max(zero);
            w = w * j / lambda;
            j = j - one;
            sum = sum + w * q;
            let r = j / lambda;
            if w * r / (one - r) <= tol || w == zero {
                break;
            }
        }
    }

    sum.max(zero).min(one)
}
