//! `X = P(n)/(P(r)×P(s))`, `n = r + s`. Cosets `wW_K` with
//! `W_K = S_r × S_s` are keyed by the set `w({1..r}) = {j : w⁻¹(j) ≤ r}`;
//! `w` is a fixed point when every pair `(j, j+1)`, `j` odd and `j ≤ 2l`,
//! lies entirely inside or entirely outside that set.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{enumeration_limit, HomError, WeylElement};

fn check(r: usize, s: usize) -> Result<(), HomError> {
    if r < 1 || s < 1 {
        return Err(HomError::InvalidParameter(format!("periplectic family needs r, s ≥ 1, got ({r}, {s})")));
    }
    Ok(())
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// Depth-first search over `v = w⁻¹` in lexicographic order, pruning as
/// soon as a completed pair straddles the `r` boundary. Records the first
/// `v` reaching each coset key.
fn search(v: &mut Vec<usize>, used: &mut [bool], r: usize, n: usize, found: &mut BTreeMap<u32, Vec<usize>>) {
    let j = v.len();
    if j == n {
        let key = v.iter().enumerate().filter(|(_, &x)| x < r).fold(0u32, |acc, (pos, _)| acc | 1 << pos);
        found.entry(key).or_insert_with(|| v.clone());
        return;
    }
    let l = n / 2;
    for x in 0..n {
        if used[x] {
            continue;
        }
        // 0-based positions (2t, 2t+1) are the pairs (j, j+1) with j odd.
        if j % 2 == 1 && j < 2 * l && ((v[j - 1] < r) != (x < r)) {
            continue;
        }
        used[x] = true;
        v.push(x);
        search(v, used, r, n, found);
        v.pop();
        used[x] = false;
    }
}

fn invert(v: &[usize]) -> Vec<usize> {
    let mut w = vec![0; v.len()];
    for (j, &x) in v.iter().enumerate() {
        w[x] = j;
    }
    w
}

/// Fixed-point cosets of `P(n)/(P(r)×P(s))` by search over `S_n`.
pub fn fixed_periplectic(r: usize, s: usize) -> Result<(u64, Vec<WeylElement>), HomError> {
    check(r, s)?;
    let n = r + s;
    let limit = enumeration_limit();
    let needed = factorial(n).unwrap_or(usize::MAX);
    if n > 31 || needed > limit {
        return Err(HomError::EnumerationLimit { what: "periplectic permutations", needed, limit });
    }
    let branches: Vec<BTreeMap<u32, Vec<usize>>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut used = vec![false; n];
            used[first] = true;
            let mut v = vec![first];
            let mut found = BTreeMap::new();
            search(&mut v, &mut used, r, n, &mut found);
            found
        })
        .collect();
    let mut merged: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for branch in branches {
        for (key, v) in branch {
            merged.entry(key).or_insert(v);
        }
    }
    let reps: Vec<WeylElement> = merged.values().map(|v| WeylElement::from_perm(invert(v))).collect();
    Ok((reps.len() as u64, reps))
}
