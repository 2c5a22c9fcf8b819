//! Localization on CS linear models and CS volumes of homogeneous superspaces.
//!
//! * [`superalg`]: exact Grassmann–Gaussian superfunctions, derivations and
//!   Berezin integration on `ℝ^{2m|2m}`.
//! * [`qrep`]: nondegenerate CS Q-group representations, the Pfaffian and
//!   the localization functional.
//! * [`locverify`]: independent check of `∫ω = Loc(ω|₀)` on linear models,
//!   plus regularized checks of the pole and interpolation identities.
//! * [`homspace`]: Weyl-group fixed-point counts, CS volumes and splitting
//!   verdicts for homogeneous superspaces.
//! * [`cli`]: the `superloc` command-line front end.

pub mod cli;
pub mod constants;
pub mod exact;
pub mod homspace;
pub mod linalg;
pub mod locverify;
pub mod qrep;
pub mod superalg;
