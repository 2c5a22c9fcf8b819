//! CS volumes of homogeneous superspaces `X = G/K` from Weyl-group
//! fixed-point counts.
//!
//! Every fixed point contributes `(2π/i)^m`, where `m` is the number of
//! `(1|1)`-blocks of `V` in `𝔭 = V ⊕ V*`, so the volume is
//! `count · (2π/i)^m`. Fixed points are represented by Weyl cosets.

mod chain;
mod flag;
mod isotropic;
mod periplectic;
mod weyl;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{cint, creal, int, Exact};
use crate::qrep::{canonical_volume_fiber, pair, CSRep};

pub use chain::{splitting_chain_report, ChainReport, ChainSpec, ChainStep, Evidence};
pub use flag::{weyl_ratio_flag, RootData, WeylRatio};
pub use isotropic::{fixed_isotropic, fixed_isotropic_oracle};
pub use periplectic::fixed_periplectic;
pub use weyl::{closure, WeylElement};

/// Default cap on the number of elements any single enumeration may visit.
pub const DEFAULT_MAX_ENUM: usize = 1_000_000;

/// The enumeration cap, overridable through `SUPERLOC_MAX_ENUM`.
pub fn enumeration_limit() -> usize {
    std::env::var("SUPERLOC_MAX_ENUM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ENUM)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what}: enumeration needs {needed} elements, limit is {limit} (set SUPERLOC_MAX_ENUM to raise it)")]
    EnumerationLimit { what: &'static str, needed: usize, limit: usize },
    #[error("invalid root data: {0}")]
    RootData(String),
    #[error("|W_d| = {w_d} is not divisible by |W_c| = {w_c}; the 𝔨/𝔠 data is inconsistent")]
    NonIntegralRatio { w_d: usize, w_c: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum HomSpaceSpec {
    /// `SOSp(2n|2n)/GL(n|n)`
    Isotropic { n: usize },
    /// `P(r+s)/(P(r)×P(s))`
    Periplectic { r: usize, s: usize },
    Flag { root_data: RootData },
}

impl HomSpaceSpec {
    pub fn describe(&self) -> String {
        match self {
            HomSpaceSpec::Isotropic { n } => format!("SOSp({0}|{0})/GL({1}|{1})", 2 * n, n),
            HomSpaceSpec::Periplectic { r, s } => format!("P({})/(P({r})xP({s}))", r + s),
            HomSpaceSpec::Flag { root_data } => format!("flag of rank {}", root_data.weights_basis_rank),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Splitting,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeResult {
    pub count: u64,
    pub exponent_m: u32,
    /// The exponent under the reading `dim_ℂ X̲ = 2m`.
    pub alt_exponent: u32,
    pub value: String,
    pub exact: Exact,
    pub nonzero: bool,
    pub verdict: Verdict,
}

impl VolumeResult {
    pub fn new(count: u64, m: u32) -> Self {
        let exact = per_point_contribution(m).scale(&creal(int(count as i64)));
        let nonzero = count > 0;
        VolumeResult {
            count,
            exponent_m: m,
            alt_exponent: 2 * m,
            value: if nonzero { format!("{count}*(2*pi/i)^{m}") } else { "0".into() },
            exact,
            nonzero,
            verdict: if nonzero { Verdict::Splitting } else { Verdict::Inconclusive },
        }
    }

    /// A point: `K = G`.
    pub fn point() -> Self {
        Self::new(1, 0)
    }
}

/// `Loc_p` of the canonical volume form on `m` blocks with distinct
/// generic characters; equals `(2π/i)^m`.
pub fn per_point_contribution(m: u32) -> Exact {
    let lambdas: Vec<_> = (1..=m as i64).map(|k| cint(k, 0)).collect();
    let rep = CSRep::from_lambdas(&lambdas).expect("distinct nonzero characters");
    pair(&rep, &canonical_volume_fiber(&rep))
}

/// A zero volume says nothing: the implication only runs one way.
pub fn splitting_verdict(v: &VolumeResult) -> Verdict {
    if v.nonzero {
        Verdict::Splitting
    } else {
        Verdict::Inconclusive
    }
}

pub fn volume(spec: &HomSpaceSpec) -> Result<VolumeResult, HomError> {
    match spec {
        HomSpaceSpec::Isotropic { n } => {
            let (count, _) = fixed_isotropic(*n)?;
            Ok(VolumeResult::new(count, (n * n) as u32))
        }
        HomSpaceSpec::Periplectic { r, s } => {
            let (count, _) = fixed_periplectic(*r, *s)?;
            Ok(VolumeResult::new(count, (r * s) as u32))
        }
        HomSpaceSpec::Flag { root_data } => {
            let ratio = weyl_ratio_flag(root_data)?;
            Ok(VolumeResult::new(ratio.ratio, root_data.block_exponent()))
        }
    }
}

/// Fixed-point representatives of the isotropic or periplectic family.
pub fn fixed_points(spec: &HomSpaceSpec) -> Result<(u64, Vec<WeylElement>), HomError> {
    match spec {
        HomSpaceSpec::Isotropic { n } => fixed_isotropic(*n),
        HomSpaceSpec::Periplectic { r, s } => fixed_periplectic(*r, *s),
        HomSpaceSpec::Flag { .. } => Err(HomError::InvalidParameter(
            "flag fixed points are counted through weyl_ratio_flag".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qrep::two_pi_over_i_pow;

    #[test]
    fn per_point_is_two_pi_over_i() {
        for m in 0..=5 {
            assert_eq!(per_point_contribution(m), two_pi_over_i_pow(m));
        }
    }

    #[test]
    fn periplectic_2_2() {
        let v = volume(&HomSpaceSpec::Periplectic { r: 2, s: 2 }).unwrap();
        assert_eq!((v.count, v.exponent_m), (2, 4));
        assert_eq!(v.value, "2*(2*pi/i)^4");
        assert_eq!(v.exact, two_pi_over_i_pow(4).scale(&cint(2, 0)));
        assert_eq!(v.verdict, Verdict::Splitting);
    }

    #[test]
    fn periplectic_1_1_is_zero() {
        let v = volume(&HomSpaceSpec::Periplectic { r: 1, s: 1 }).unwrap();
        assert!(!v.nonzero && v.exact.is_zero());
        assert_eq!(splitting_verdict(&v), Verdict::Inconclusive);
    }

    #[test]
    fn isotropic_2() {
        let v = volume(&HomSpaceSpec::Isotropic { n: 2 }).unwrap();
        assert_eq!((v.count, v.exponent_m, v.alt_exponent), (2, 4, 8));
    }

    #[test]
    fn point_splits() {
        assert_eq!(splitting_verdict(&VolumeResult::point()), Verdict::Splitting);
        assert_eq!(VolumeResult::point().exact, Exact::one());
    }

    #[test]
    fn volume_json_fields() {
        let v = volume(&HomSpaceSpec::Periplectic { r: 1, s: 1 }).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["count"], 0);
        assert_eq!(j["verdict"], "Inconclusive");
        assert_eq!(j["value"], "0");
    }

    #[test]
    fn spec_json_round_trip() {
        let s = HomSpaceSpec::Periplectic { r: 3, s: 2 };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"family":"periplectic","r":3,"s":2}"#);
        assert_eq!(serde_json::from_str::<HomSpaceSpec>(&text).unwrap(), s);
    }
}
