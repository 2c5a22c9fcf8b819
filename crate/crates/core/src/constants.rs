//! Frozen measure conventions.
//!
//! The Berezin measure `{dz dz̄ | dθ dθ̄}` on one block equals
//! `κ · dx dy · (extract θθ̄)`. The constant κ was calibrated once on the
//! one-block witness `f = exp(−u)` with `λ = 1`, `s = 1`, where
//! `u = z z̄ − θθ̄/(iλ)`: the raw integral `∫ top · dx dy` is `π/(iλ)` and
//! the localization value is `2π/λ`, giving `κ = 2i`. No other test form
//! feeds into this value; `superloc calibrate` recomputes it and fails on
//! drift.

use crate::exact::{cint, CRational};

pub const KAPPA_RE: i64 = 0;
pub const KAPPA_IM: i64 = 2;

/// Sign of the localization scalar relative to `∏ 2π/λ_i`.
pub const LOC_SIGN: i64 = 1;

/// λ of the calibration witness.
pub const WITNESS_LAMBDA: (i64, i64) = (1, 0);

pub fn kappa() -> CRational {
    cint(KAPPA_RE, KAPPA_IM)
}

pub fn loc_sign() -> CRational {
    cint(LOC_SIGN, 0)
}
