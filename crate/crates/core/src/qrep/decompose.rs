use std::collections::BTreeMap;

use crate::exact::{cint, CRational};
use crate::linalg::{self, Matrix};

use super::{lambda_of, CSRep, Character, QGroupSpec, RepError, Summand};

/// Canonical basis vectors of one `(2|2)` block, as coordinate vectors in
/// the input basis (even coordinates first, then odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockBasis {
    pub z: Vec<CRational>,
    pub z_bar: Vec<CRational>,
    pub theta: Vec<CRational>,
    pub theta_bar: Vec<CRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub rep: CSRep,
    pub basis: Vec<BlockBasis>,
}

/// Splits a `(2m|2m)` representation into character blocks.
///
/// `weights[k]` is the torus character of the `k`-th even basis vector,
/// which must be a weight basis. `q_matrix` is the `4m × 4m` matrix of `Q`
/// acting on column vectors, even coordinates first. The odd basis is
/// arbitrary: `θ = Qz` is read off from `Q`.
///
/// Rejects: odd blocks of `Q` that are not off-diagonal, zero characters,
/// characters whose negatives appear with a different multiplicity,
/// `Q: V_0 → V_1` singular, and `Q²` not acting by `i·χ(Q²)`.
pub fn decompose(weights: &[Character], q_matrix: &Matrix, qgroup: &QGroupSpec) -> Result<Decomposition, RepError> {
    let n0 = weights.len();
    let n = 2 * n0;
    if !linalg::is_rectangular(q_matrix, n, n) {
        return Err(RepError::Shape {
            rows: q_matrix.len(),
            cols: q_matrix.first().map_or(0, Vec::len),
            expected: n,
        });
    }
    let even_even = linalg::submatrix(q_matrix, 0..n0, 0..n0);
    let odd_odd = linalg::submatrix(q_matrix, n0..n, n0..n);
    if linalg::rank(&even_even) != 0 {
        return Err(RepError::NotOdd("even-even"));
    }
    if linalg::rank(&odd_odd) != 0 {
        return Err(RepError::NotOdd("odd-odd"));
    }

    let mut lambdas = Vec::with_capacity(n0);
    for (index, w) in weights.iter().enumerate() {
        if w.is_zero() {
            return Err(RepError::ZeroCharacter { index });
        }
        lambdas.push(lambda_of(w, qgroup)?);
    }

    let mut mult: BTreeMap<&Character, usize> = BTreeMap::new();
    for w in weights {
        *mult.entry(w).or_default() += 1;
    }
    for (w, &plus) in &mult {
        let minus = mult.get(&w.negated()).copied().unwrap_or(0);
        if plus != minus {
            return Err(RepError::Unpaired { character: w.0.clone(), plus, minus });
        }
    }

    let b = linalg::submatrix(q_matrix, n0..n, 0..n0);
    if linalg::rank(&b) < n0 {
        return Err(RepError::SingularQ);
    }
    let c = linalg::submatrix(q_matrix, 0..n0, n0..n);
    let q2_even = linalg::matmul(&c, &b);
    let i = cint(0, 1);
    for (k, lambda) in lambdas.iter().enumerate() {
        for (r, row) in q2_even.iter().enumerate() {
            let want = if r == k { &i * lambda } else { cint(0, 0) };
            if row[k] != want {
                return Err(RepError::QSquareMismatch { index: k });
            }
        }
    }

    let mut used = vec![false; n0];
    let mut summands = Vec::new();
    let mut basis = Vec::new();
    let unit = |k: usize| -> Vec<CRational> { (0..n).map(|j| cint((j == k) as i64, 0)).collect() };
    for k in 0..n0 {
        if used[k] || !weights[k].is_positive() {
            continue;
        }
        let neg = weights[k].negated();
        let partner = (0..n0)
            .find(|&j| !used[j] && weights[j] == neg)
            .expect("multiplicities checked above");
        used[k] = true;
        used[partner] = true;
        let z = unit(k);
        let z_bar = unit(partner);
        let theta = linalg::mat_vec(q_matrix, &z);
        let theta_bar = linalg::mat_vec(q_matrix, &z_bar);
        summands.push(Summand::new(weights[k].clone()));
        basis.push(BlockBasis { z, z_bar, theta, theta_bar });
    }

    let rep = CSRep::new(qgroup.clone(), summands)?;
    Ok(Decomposition { rep, basis })
}
