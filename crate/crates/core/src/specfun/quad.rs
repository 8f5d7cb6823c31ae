//! Globally adaptive Gauss-Kronrod (7/15) quadrature.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::real::Real;

/// Tolerances and subdivision budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_subdivisions: usize,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-10),
            rel_tol: T::lit(1e-8),
            max_subdivisions: 2000,
        }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn new(abs_tol: T, rel_tol: T, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > T::zero()) || !(self.rel_tol > T::zero()) || self.max_subdivisions == 0 {
            return Err(Error::InvalidParams(format!(
                "quadrature tolerances must be positive and max_subdivisions >= 1 (got {:?}, {:?}, {})",
                self.abs_tol, self.rel_tol, self.max_subdivisions
            )));
        }
        Ok(())
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// weights of the embedded 7-point Gauss rule at XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

fn finite_or_err<T: Real>(v: T, at: T) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: at.as_f64() })
    }
}

fn gauss_kronrod<T: Real, F: FnMut(T) -> T>(f: &mut F, lo: T, hi: T) -> Result<Segment<T>> {
    let half = T::lit(0.5);
    let center = half * (lo + hi);
    let half_len = half * (hi - lo);
    let fc = finite_or_err(f(center), center)?;
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    let mut abs_sum = kronrod.abs();
    let mut samples = [T::zero(); 15];
    samples[7] = fc;
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let (xl, xr) = (center - dx, center + dx);
        let fl = finite_or_err(f(xl), xl)?;
        let fr = finite_or_err(f(xr), xr)?;
        samples[j] = fl;
        samples[14 - j] = fr;
        let w = T::lit(WGK[j]);
        kronrod = kronrod + w * (fl + fr);
        abs_sum = abs_sum + w * (fl.abs() + fr.abs());
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * (fl + fr);
        }
    }
    let mean = kronrod * half;
    let mut asc = T::lit(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        asc = asc + T::lit(WGK[j]) * ((samples[j] - mean).abs() + (samples[14 - j] - mean).abs());
    }
    let value = kronrod * half_len;
    let res_abs = abs_sum * half_len.abs();
    let res_asc = asc * half_len.abs();
    let mut error = ((kronrod - gauss) * half_len).abs();
    if res_asc != T::zero() && error != T::zero() {
        let ratio = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = res_asc * ratio.min(T::one());
    }
    let roundoff = T::lit(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) {
        error = error.max(roundoff);
    }
    Ok(Segment { lo, hi, value, error })
}

fn adaptive<T: Real, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let first = gauss_kronrod(&mut f, lo, hi)?;
    let mut segments = vec![first];
    let mut frozen_error = T::zero();
    let mut frozen_value = T::zero();
    loop {
        let total: T = segments.iter().map(|s| s.value).sum::<T>() + frozen_value;
        let error: T = segments.iter().map(|s| s.error).sum::<T>() + frozen_error;
        if !total.is_finite() {
            return Err(Error::NonFinite { at: f64::NAN });
        }
        let target = spec.abs_tol.max(spec.rel_tol * total.abs());
        if error <= target {
            return Ok(total);
        }
        let subdivisions = segments.len();
        if segments.is_empty() || subdivisions >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                subdivisions,
                error: error.as_f64(),
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |best, (i, s)| if s.error > best.1 { (i, s.error) } else { best });
        let seg = segments.swap_remove(worst);
        let mid = T::lit(0.5) * (seg.lo + seg.hi);
        if !(mid > seg.lo && mid < seg.hi) || (seg.hi - seg.lo) <= T::epsilon() * T::lit(100.0) * mid.abs() {
            // too narrow to refine further
            frozen_error = frozen_error + seg.error;
            frozen_value = frozen_value + seg.value;
            continue;
        }
        segments.push(gauss_kronrod(&mut f, seg.lo, mid)?);
        segments.push(gauss_kronrod(&mut f, mid, seg.hi)?);
    }
}

/// Integrates `f` over `[lower, upper]`; `upper` may be `+∞`.
///
/// A semi-infinite range is mapped onto `(0, 1]` by `x = lower + (1 − t)/t`.
/// The Kronrod nodes never touch the endpoints, so integrable endpoint
/// singularities are tolerated.
pub fn integrate<T: Real, F: FnMut(T) -> T>(mut f: F, lower: T, upper: T, spec: QuadratureSpec<T>) -> Result<T> {
    spec.validate()?;
    if !lower.is_finite() {
        return Err(domain("integrate", "lower limit must be finite"));
    }
    if upper.is_nan() || upper == T::neg_infinity() {
        return Err(domain("integrate", "upper limit must be finite or +inf"));
    }
    if upper == lower {
        return Ok(T::zero());
    }
    if upper.is_infinite() {
        let one = T::one();
        adaptive(
            |t: T| {
                let x = lower + (one - t) / t;
                let v = f(x);
                if v == T::zero() {
                    v
                } else {
                    v / (t * t)
                }
            },
            T::zero(),
            one,
            &spec,
        )
    } else if upper > lower {
        adaptive(f, lower, upper, &spec)
    } else {
        adaptive(f, upper, lower, &spec).map(|v| -v)
    }
}

/// `∫_0^∞ f(x) dx` for an `f` that behaves like `x^{e−1}` near the origin.
///
/// For `e < 1` the piece over `[0, 1]` is rewritten with `x = v^{1/e}`, which
/// turns the integrand into the bounded `f(x) x^{1−e} / e`; plain bisection
/// would otherwise crawl towards the singularity one halving at a time.
pub fn integrate_from_zero<T: Real, F: FnMut(T) -> T>(mut f: F, e: T, spec: QuadratureSpec<T>) -> Result<T> {
    if !(e > T::zero()) || !e.is_finite() {
        return Err(domain("integrate_from_zero", format!("edge exponent {e} must be positive")));
    }
    let one = T::one();
    if e >= one {
        return integrate(f, T::zero(), T::infinity(), spec);
    }
    let head = integrate(
        |v: T| {
            let x = v.powf(e.recip());
            if x == T::zero() {
                // v below ~1e-308^e: no measurable mass
                return T::zero();
            }
            f(x) * x.powf(one - e) / e
        },
        T::zero(),
        one,
        spec,
    )?;
    let tail = integrate(&mut f, one, T::infinity(), spec)?;
    Ok(head + tail)
}
