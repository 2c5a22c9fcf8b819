//! Checks of the localization formula on linear models `W*`.
//!
//! [`verify_localization`] compares the exact Berezin integral of a
//! Q-equivariant form with `Loc_W` applied to its value at the origin.
//! The regularized pole identities live in [`cauchy_pompeiu_check`] and
//! [`sigma_pairing_check`] and are evaluated by quadrature.

mod distribution;
mod quadrature;
mod sample;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::constants;
use crate::exact::{cint, creal, format_complex, int, CRational, Exact, Rational};
use crate::qrep::{loc_scalar, CSRep, RepError};
use crate::superalg::{
    apply_derivation, berezin_integral, berezin_integral_with, eval_origin, AlgebraError, Coord, Derivation,
    SuperFunction,
};

pub use distribution::{cauchy_pompeiu_check, sigma_pairing_check, DistributionReport, EpsSample, SigmaParts};
pub use quadrature::{richardson, QuadratureError};
pub use sample::{random_form, random_integrable, random_lambda, random_profile, LAMBDA_POOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LocError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("form is not Q-equivariant: Q(f) has {terms} nonzero terms")]
    NotEquivariant { terms: usize },
    #[error("envelope s_{block} = {value} must be positive")]
    NonPositiveEnvelope { block: usize, value: String },
    #[error("expected {expected} profiles, got {got}")]
    ProfileCount { expected: usize, got: usize },
    #[error("block {block} out of range for a model with {blocks} blocks")]
    BlockOutOfRange { block: usize, blocks: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// A linear model `W*` together with its homological vector field.
#[derive(Clone, Debug)]
pub struct LinearModel {
    pub rep: CSRep,
    pub q_field: Derivation,
}

impl LinearModel {
    pub fn blocks(&self) -> usize {
        self.rep.blocks()
    }

    /// The eigenvalue used by block `i` of the vector field.
    pub fn lambda(&self, i: usize) -> CRational {
        self.rep.oriented_lambda(i)
    }

    pub fn apply_q(&self, f: &SuperFunction) -> Result<SuperFunction, AlgebraError> {
        apply_derivation(&self.q_field, f)
    }
}

/// `Q = Σ_i θ_i∂_{z_i} + θ̄_i∂_{z̄_i} + iλ_i(z_i∂_{θ_i} − z̄_i∂_{θ̄_i})`.
pub fn build_model(rep: &CSRep) -> LinearModel {
    let m = rep.blocks();
    let mut q = Derivation::zero(m);
    for i in 0..m {
        let il = cint(0, 1) * rep.oriented_lambda(i);
        q.push(cint(1, 0), &[Coord::Theta(i)], Coord::Z(i)).expect("block in range");
        q.push(cint(1, 0), &[Coord::ThetaBar(i)], Coord::ZBar(i)).expect("block in range");
        q.push(il.clone(), &[Coord::Z(i)], Coord::Theta(i)).expect("block in range");
        q.push(-il, &[Coord::ZBar(i)], Coord::ThetaBar(i)).expect("block in range");
    }
    LinearModel { rep: rep.clone(), q_field: q }
}

/// `Σ_i iλ_i(z_i∂_{z_i} − z̄_i∂_{z̄_i} + θ_i∂_{θ_i} − θ̄_i∂_{θ̄_i})`, which `Q²` must equal.
pub fn torus_derivation(model: &LinearModel) -> Derivation {
    let m = model.blocks();
    let mut t = Derivation::zero(m);
    for i in 0..m {
        let il = cint(0, 1) * model.lambda(i);
        for (coord, sign) in [
            (Coord::Z(i), 1),
            (Coord::ZBar(i), -1),
            (Coord::Theta(i), 1),
            (Coord::ThetaBar(i), -1),
        ] {
            t.push(&il * cint(sign, 0), &[coord], coord).expect("block in range");
        }
    }
    t
}

/// Compares `Q(Q(x))` with the torus derivation on every coordinate generator.
pub fn check_q_square(model: &LinearModel) -> Result<bool, AlgebraError> {
    let m = model.blocks();
    let t = torus_derivation(model);
    for i in 0..m {
        for coord in [Coord::Z(i), Coord::ZBar(i), Coord::Theta(i), Coord::ThetaBar(i)] {
            let x = SuperFunction::coordinate(m, coord)?;
            let qq = model.apply_q(&model.apply_q(&x)?)?;
            if qq != apply_derivation(&t, &x)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn theta_theta_bar(m: usize, i: usize) -> Result<SuperFunction, AlgebraError> {
    SuperFunction::coordinate(m, Coord::Theta(i))?.multiply(&SuperFunction::coordinate(m, Coord::ThetaBar(i))?)
}

/// `u_i = z_i z̄_i − θ_iθ̄_i/(iλ_i)`, without envelope.
pub fn invariant_u(model: &LinearModel, i: usize) -> Result<SuperFunction, LocError> {
    let m = model.blocks();
    if i >= m {
        return Err(LocError::BlockOutOfRange { block: i, blocks: m });
    }
    let zz = SuperFunction::coordinate(m, Coord::Z(i))?.multiply(&SuperFunction::coordinate(m, Coord::ZBar(i))?)?;
    let inv = cint(1, 0) / (cint(0, 1) * model.lambda(i));
    Ok(zz.sub(&theta_theta_bar(m, i)?.scale(&inv))?)
}

/// `exp(−s u_i) = exp(−s z_i z̄_i)(1 + s θ_iθ̄_i/(iλ_i))`.
pub fn exp_minus_su(model: &LinearModel, i: usize, s: &Rational) -> Result<SuperFunction, LocError> {
    let m = model.blocks();
    if i >= m {
        return Err(LocError::BlockOutOfRange { block: i, blocks: m });
    }
    if !s.is_positive() {
        return Err(LocError::NonPositiveEnvelope { block: i, value: s.to_string() });
    }
    let c = creal(s.clone()) / (cint(0, 1) * model.lambda(i));
    let mut envelope = vec![Rational::zero(); m];
    envelope[i] = s.clone();
    let f = SuperFunction::one(m).add(&theta_theta_bar(m, i)?.scale(&c))?;
    Ok(f.with_envelope(envelope)?)
}

/// Per-block test profile `P(u) e^{−s u}` with `P(u) = Σ_k coeffs[k] u^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub coeffs: Vec<CRational>,
    pub s: Rational,
}

impl Profile {
    pub fn gaussian(s: Rational) -> Self {
        Profile { coeffs: vec![cint(1, 0)], s }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// `∏_i P_i(u_i) e^{−s_i u_i}`, expanded exactly.
pub fn make_equivariant_form(model: &LinearModel, profiles: &[Profile]) -> Result<SuperFunction, LocError> {
    let m = model.blocks();
    if profiles.len() != m {
        return Err(LocError::ProfileCount { expected: m, got: profiles.len() });
    }
    let mut f = SuperFunction::one(m);
    for (i, p) in profiles.iter().enumerate() {
        let u = invariant_u(model, i)?;
        let mut poly = SuperFunction::zero(m);
        let mut power = SuperFunction::one(m);
        for c in &p.coeffs {
            poly = poly.add(&power.scale(c))?;
            power = power.multiply(&u)?;
        }
        f = f.multiply(&poly)?.multiply(&exp_minus_su(model, i, &p.s)?)?;
    }
    Ok(f)
}

pub fn is_equivariant(model: &LinearModel, f: &SuperFunction) -> Result<bool, LocError> {
    Ok(model.apply_q(f)?.is_zero())
}

fn require_equivariant(model: &LinearModel, f: &SuperFunction) -> Result<(), LocError> {
    let qf = model.apply_q(f)?;
    if qf.is_zero() {
        Ok(())
    } else {
        Err(LocError::NotEquivariant { terms: qf.len() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Quadrature,
}

/// A value in a report: exact, or a floating-point approximation.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ReportValue {
    Exact(Exact),
    Approx([f64; 2]),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub mode: Mode,
    pub lhs: ReportValue,
    pub rhs: ReportValue,
    pub residual: ReportValue,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_trace: Option<Vec<EpsSample>>,
}

impl VerificationReport {
    pub fn exact(lhs: Exact, rhs: Exact) -> Self {
        let residual = &lhs - &rhs;
        VerificationReport {
            mode: Mode::Exact,
            equal: residual.is_zero(),
            lhs: ReportValue::Exact(lhs),
            rhs: ReportValue::Exact(rhs),
            residual: ReportValue::Exact(residual),
            tolerance: None,
            eps_trace: None,
        }
    }

    pub fn residual_exact(&self) -> Option<&Exact> {
        match &self.residual {
            ReportValue::Exact(e) => Some(e),
            ReportValue::Approx(_) => None,
        }
    }
}

/// `∫ f` against `Loc_W(f|₀)`, both exact.
pub fn verify_localization(model: &LinearModel, f: &SuperFunction) -> Result<VerificationReport, LocError> {
    require_equivariant(model, f)?;
    let lhs = berezin_integral(f)?;
    let rhs = loc_scalar(&model.rep).scale(&eval_origin(f));
    Ok(VerificationReport::exact(lhs, rhs))
}

/// `∫ Q(g)`; zero for every integrable `g`.
pub fn verify_total_derivative(model: &LinearModel, g: &SuperFunction) -> Result<Exact, LocError> {
    let qg = model.apply_q(g)?;
    if qg.is_zero() {
        return Ok(Exact::zero());
    }
    Ok(berezin_integral(&qg)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CalibrationReport {
    pub witness: String,
    pub lambda: String,
    pub raw_integral: Exact,
    pub target: Exact,
    pub kappa_measured: String,
    pub kappa_frozen: String,
    pub loc_sign: i64,
    pub drift: bool,
}

/// Recomputes the per-block measure constant from the witness
/// `f = e^{−u}`, `s = 1`, `λ = 1` and compares with the frozen value.
pub fn calibrate() -> Result<CalibrationReport, LocError> {
    let (re, im) = constants::WITNESS_LAMBDA;
    let lambda = cint(re, im);
    let rep = CSRep::from_lambdas(std::slice::from_ref(&lambda))?;
    let model = build_model(&rep);
    let f = make_equivariant_form(&model, &[Profile::gaussian(int(1))])?;
    let raw = berezin_integral_with(&f, &cint(1, 0))?;
    // Loc_W(e^{−u}|₀) = 2π/λ on one block.
    let target = Exact::monomial(cint(2, 0) / &lambda, 1);
    let measured = target.ratio(&raw).ok_or_else(|| LocError::Precondition("witness integral is not a multiple of the target".into()))?;
    let frozen = constants::kappa();
    let loc_ok = loc_scalar(&rep).scale(&eval_origin(&f)) == target;
    Ok(CalibrationReport {
        witness: "exp(-u)".into(),
        lambda: format_complex(&lambda),
        raw_integral: raw,
        target,
        kappa_measured: format_complex(&measured),
        kappa_frozen: format_complex(&frozen),
        loc_sign: constants::LOC_SIGN,
        drift: measured != frozen || !loc_ok,
    })
}
