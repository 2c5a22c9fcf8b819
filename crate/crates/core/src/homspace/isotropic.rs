//! `X = SOSp(2n|2n)/GL(n|n)`. The weight basis is `ε_1, …, ε_n, δ_1, …, δ_n`
//! and fixed points are the sign changes `b ∈ B ≅ ℤ₂^{2n−1}` (even number of
//! sign changes among the `ε`) with `b(α_i) = ±α_i` for `α_i = ε_i − δ_i`.

use rayon::prelude::*;

use super::{enumeration_limit, HomError, WeylElement};

fn check_n(n: usize) -> Result<(), HomError> {
    if n < 1 {
        return Err(HomError::InvalidParameter("isotropic family needs n ≥ 1".into()));
    }
    Ok(())
}

/// Whether `b(ε_i − δ_i) = ±(ε_i − δ_i)` for every `i`.
fn preserves_alphas(signs: &[i8], n: usize) -> bool {
    (0..n).all(|i| signs[i] == signs[n + i])
}

/// Sign vectors in `{±1}^n` with an even number of `−1`, in binary order.
fn even_sign_vectors(n: usize) -> impl Iterator<Item = Vec<i8>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(move |m| (0..n).map(|k| if m >> k & 1 == 1 { -1 } else { 1 }).collect())
}

/// Extends the `δ`-signs one index at a time, dropping a branch as soon as
/// `b(α_i) ≠ ±α_i`.
fn extend(signs: &mut Vec<i8>, n: usize, out: &mut Vec<WeylElement>) {
    let i = signs.len() - n;
    if i == n {
        out.push(WeylElement::from_signs(signs.clone()));
        return;
    }
    for s in [1, -1] {
        signs.push(s);
        if signs[i] == signs[n + i] {
            extend(signs, n, out);
        }
        signs.pop();
    }
}

/// Fixed points by the pruned search over `B`.
pub fn fixed_isotropic(n: usize) -> Result<(u64, Vec<WeylElement>), HomError> {
    check_n(n)?;
    let limit = enumeration_limit();
    let needed = 1usize.checked_shl(n as u32 - 1).unwrap_or(usize::MAX);
    if n > 62 || needed > limit {
        return Err(HomError::EnumerationLimit { what: "isotropic fixed points", needed, limit });
    }
    let mut reps = Vec::new();
    for eps in even_sign_vectors(n) {
        let mut signs = eps;
        extend(&mut signs, n, &mut reps);
    }
    debug_assert!(reps.iter().all(|w| preserves_alphas(&w.signs, n)));
    Ok((reps.len() as u64, reps))
}

/// Exhaustive count over all of `B`, `2^{2n−1}` elements.
pub fn fixed_isotropic_oracle(n: usize) -> Result<u64, HomError> {
    check_n(n)?;
    let limit = enumeration_limit();
    let needed = 1usize.checked_shl(2 * n as u32 - 1).unwrap_or(usize::MAX);
    if 2 * n > 62 || needed > limit {
        return Err(HomError::EnumerationLimit { what: "isotropic oracle", needed, limit });
    }
    let eps: Vec<Vec<i8>> = even_sign_vectors(n).collect();
    let count = eps
        .par_iter()
        .map(|e| {
            (0u64..1 << n)
                .filter(|m| {
                    let delta: Vec<i8> = (0..n).map(|k| if m >> k & 1 == 1 { -1 } else { 1 }).collect();
                    let mut signs = e.clone();
                    signs.extend(delta);
                    preserves_alphas(&signs, n)
                })
                .count() as u64
        })
        .sum();
    Ok(count)
}
