//! Oracles that do not go through the library's algebra or enumeration.

#![allow(dead_code)]

use num_traits::One;
use superloc::exact::{c_pow, cint, creal, int, CRational, Exact, Rational};

/// `∫ P(u) e^{−su}` on one block by the moment formula.
///
/// With `u = zz̄ − θθ̄/(iλ)` and `e^{−su} = e^{−szz̄}(1 + sθθ̄/(iλ))`, the
/// `θθ̄`-coefficient of `u^k e^{−su}` is `(s(zz̄)^k − k(zz̄)^{k−1}) e^{−szz̄}/(iλ)`.
/// Each `(zz̄)^j e^{−szz̄}` integrates to `π j!/s^{j+1}` against `dx dy`, and
/// the measure contributes `κ = 2i`.
pub fn block_integral(coeffs: &[CRational], s: &Rational, lambda: &CRational) -> Exact {
    let moment = |j: usize| -> Rational {
        let fact = (1..=j as i64).fold(Rational::one(), |acc, k| acc * int(k));
        fact / num_traits::pow(s.clone(), j + 1)
    };
    let mut sum = cint(0, 0);
    for (k, c) in coeffs.iter().enumerate() {
        let mut top = s * moment(k);
        if k > 0 {
            top -= int(k as i64) * moment(k - 1);
        }
        sum = sum + c * creal(top);
    }
    let scale = cint(0, 2) / (cint(0, 1) * lambda);
    Exact::monomial(sum * scale, 1)
}

/// `count · (2π/i)^m`.
pub fn two_pi_over_i(count: u64, m: u32) -> Exact {
    Exact::monomial(c_pow(&cint(0, -2), m) * cint(count as i64, 0), m as i32)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Fixed-point cosets of `P(r+s)/(P(r)×P(s))` counted over `r`-subsets
/// `S = w({1..r})` rather than permutations.
pub fn periplectic_subsets(r: usize, s: usize) -> u64 {
    let n = r + s;
    let l = n / 2;
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .filter(|m| (0..l).all(|t| (m >> (2 * t) & 1) == (m >> (2 * t + 1) & 1)))
        .count() as u64
}

/// `|W_d|` for `gl(m|n)` with `α_i = ε_i − δ_i`, `i < d`, by running over
/// `S_m × S_n` and testing `{±α_i}` setwise.
pub fn gl_w_d(m: usize, n: usize, d: usize) -> u64 {
    let mut count = 0;
    for sigma in permutations(m) {
        for tau in permutations(n) {
            // w(ε_i − δ_i) = ε_{σ(i)} − δ_{τ(i)}; it lies in {±α_j} iff
            // σ(i) = τ(i) = j for some j < d (the sign cannot flip).
            if (0..d).all(|i| sigma[i] == tau[i] && sigma[i] < d) {
                count += 1;
            }
        }
    }
    count
}
