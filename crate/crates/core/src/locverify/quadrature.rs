use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("quadrature did not converge at eps = {eps}: estimate {estimate:?}, error estimate {error:e} after {intervals} intervals")]
pub struct QuadratureError {
    pub eps: f64,
    pub estimate: [f64; 2],
    pub error: f64,
    pub intervals: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod estimate and its difference from the embedded
/// 7-point Gauss rule.
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kronrod += pair * w;
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).norm())
}

/// Adaptive Gauss–Kronrod integration on `[a, b]` to absolute tolerance
/// `tol`, bisecting the interval with the largest error estimate.
pub(crate) fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64, eps: f64) -> Result<Complex64, QuadratureError> {
    const MAX_INTERVALS: usize = 2000;
    let (v, e) = gk15(&f, a, b);
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let total: Complex64 = pieces.iter().map(|p| p.2).sum();
        let error: f64 = pieces.iter().map(|p| p.3).sum();
        if error <= tol {
            return Ok(total);
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(QuadratureError {
                eps,
                estimate: [total.re, total.im],
                error,
                intervals: pieces.len(),
            });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("nonempty");
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

/// `∫_{ε<|z|<r_max} F(z) dx dy`: trapezoid in the angle (exact for the
/// trigonometric polynomials that arise here) and adaptive in the radius.
pub(crate) fn annulus<F: Fn(Complex64) -> Complex64>(
    f: F,
    eps: f64,
    r_max: f64,
    angles: usize,
    tol: f64,
) -> Result<Complex64, QuadratureError> {
    let step = 2.0 * PI / angles as f64;
    let dirs: Vec<Complex64> = (0..angles).map(|k| Complex64::from_polar(1.0, k as f64 * step)).collect();
    let radial = |r: f64| -> Complex64 {
        let ring: Complex64 = dirs.iter().map(|d| f(d * r)).sum();
        ring * (step * r)
    };
    integrate(radial, eps, r_max, tol, eps)
}

/// Polynomial extrapolation to `ε = 0` in the variable `ε²` through the
/// last three samples.
pub fn richardson(samples: &[(f64, Complex64)]) -> Option<Complex64> {
    let tail = samples.get(samples.len().checked_sub(3)?..)?;
    let xs: Vec<f64> = tail.iter().map(|(e, _)| e * e).collect();
    let mut value = Complex64::new(0.0, 0.0);
    for (j, (_, yj)) in tail.iter().enumerate() {
        let mut basis = 1.0;
        for (k, xk) in xs.iter().enumerate() {
            if k != j {
                basis *= xk / (xk - xs[j]);
            }
        }
        value += yj * basis;
    }
    Some(value)
}
