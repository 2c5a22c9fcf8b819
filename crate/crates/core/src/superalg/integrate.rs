use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use crate::constants;
use crate::exact::{c_pow, c_to_f64, creal, int, CRational, Exact, Rational};

use super::{AlgebraError, EvenMonomial, OddMonomial, SuperFunction};

/// `∫_ℂ z^a z̄^b e^{−s z z̄} dx dy`, which is `π·a!/s^{a+1}` for `a = b`
/// and zero otherwise.
pub fn gaussian_moment(a: u32, b: u32, s: &Rational) -> Result<Exact, AlgebraError> {
    if !s.is_positive() {
        return Err(AlgebraError::Divergent { block: 0 });
    }
    if a != b {
        return Ok(Exact::zero());
    }
    let factorial: Rational = (1..=a as i64).map(int).fold(Rational::one(), |acc, k| acc * k);
    let denom = num_traits::pow(s.clone(), a as usize + 1);
    Ok(Exact::monomial(creal(factorial / denom), 1))
}

/// Berezin integral with the frozen per-block measure constant.
pub fn berezin_integral(f: &SuperFunction) -> Result<Exact, AlgebraError> {
    berezin_integral_with(f, &constants::kappa())
}

/// Berezin integral with an explicit per-block measure constant `kappa`:
/// the coefficient of `θ_1θ̄_1⋯θ_mθ̄_m` is integrated against the
/// Gaussian moments and multiplied by `kappa^m`.
pub fn berezin_integral_with(f: &SuperFunction, kappa: &CRational) -> Result<Exact, AlgebraError> {
    if let Some(block) = f.envelope().iter().position(|s| !s.is_positive()) {
        return Err(AlgebraError::Divergent { block });
    }
    let top = OddMonomial::top(f.blocks());
    let mut total = Exact::zero();
    for (c, even, odd) in f.terms() {
        if odd != top {
            continue;
        }
        let mut value = Exact::from_complex(c.clone());
        for (&(a, b), s) in even.exponents().iter().zip(f.envelope()) {
            value = &value * &gaussian_moment(a, b, s)?;
            if value.is_zero() {
                break;
            }
        }
        total = &total + &value;
    }
    Ok(total.scale(&c_pow(kappa, f.blocks() as u32)))
}

/// Value of the reduced function at the origin: the constant term.
pub fn eval_origin(f: &SuperFunction) -> CRational {
    f.coefficient(&EvenMonomial::one(f.blocks()), OddMonomial::ONE)
        .cloned()
        .unwrap_or_else(|| creal(Rational::zero()))
}

impl SuperFunction {
    /// Numerically evaluates the odd-free part at the point `z` (with
    /// `z̄` the complex conjugate), envelope included.
    pub fn eval_reduced(&self, z: &[Complex<f64>]) -> Complex<f64> {
        assert_eq!(z.len(), self.blocks(), "point dimension");
        let mut poly = Complex::new(0.0, 0.0);
        for (c, even, odd) in self.terms() {
            if odd != OddMonomial::ONE {
                continue;
            }
            let mut v = c_to_f64(c);
            for (&(a, b), zi) in even.exponents().iter().zip(z) {
                v *= zi.powu(a) * zi.conj().powu(b);
            }
            poly += v;
        }
        let exponent: f64 = self
            .envelope()
            .iter()
            .zip(z)
            .map(|(s, zi)| num_traits::ToPrimitive::to_f64(s).unwrap_or(f64::NAN) * zi.norm_sqr())
            .sum();
        poly * (-exponent).exp()
    }
}
