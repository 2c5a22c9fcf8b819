//! Partial flags `G/K` with `𝔨` the centralizer of `𝔡_0` for a set of
//! mutually orthogonal isotropic roots `α_1, …, α_d`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::weyl::closure;
use super::{enumeration_limit, HomError, WeylElement};

/// Root data in a fixed weight basis. Roots are integer vectors; `gram` is
/// the invariant form on the weight basis. `k_roots`, when nonempty, must
/// be exactly the roots orthogonal to every `α_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootData {
    pub weights_basis_rank: usize,
    pub even_roots: Vec<Vec<i64>>,
    pub odd_roots: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
    #[serde(default)]
    pub weyl_generators: Vec<WeylElement>,
    #[serde(default)]
    pub isotropic_roots: Vec<Vec<i64>>,
    #[serde(default)]
    pub k_roots: Vec<Vec<i64>>,
}

impl RootData {
    /// `gl(m|n)` with weight basis `ε_1..ε_m, δ_1..δ_n`, form
    /// `diag(1,…,1,−1,…,−1)`, adjacent transpositions as Weyl generators and
    /// `α_i = ε_i − δ_i` for `i < d`.
    pub fn gl(m: usize, n: usize, d: usize) -> Result<RootData, HomError> {
        if d > m.min(n) {
            return Err(HomError::InvalidParameter(format!("defect {d} exceeds min({m}, {n})")));
        }
        let rank = m + n;
        let unit = |k: usize| -> Vec<i64> { (0..rank).map(|j| (j == k) as i64).collect() };
        let diff = |a: usize, b: usize| -> Vec<i64> { unit(a).iter().zip(unit(b)).map(|(x, y)| x - y).collect() };
        let mut even_roots = Vec::new();
        for (lo, hi) in [(0, m), (m, rank)] {
            for a in lo..hi {
                for b in lo..hi {
                    if a != b {
                        even_roots.push(diff(a, b));
                    }
                }
            }
        }
        let mut odd_roots = Vec::new();
        for a in 0..m {
            for b in m..rank {
                odd_roots.push(diff(a, b));
                odd_roots.push(diff(b, a));
            }
        }
        let gram = (0..rank)
            .map(|a| (0..rank).map(|b| if a != b { 0 } else if a < m { 1 } else { -1 }).collect())
            .collect();
        let weyl_generators = (0..rank - 1)
            .filter(|&a| a + 1 != m)
            .map(|a| {
                let mut perm: Vec<usize> = (0..rank).collect();
                perm.swap(a, a + 1);
                WeylElement::from_perm(perm)
            })
            .collect();
        let isotropic_roots = (0..d).map(|i| diff(i, m + i)).collect();
        let mut data = RootData {
            weights_basis_rank: rank,
            even_roots,
            odd_roots,
            gram,
            weyl_generators,
            isotropic_roots,
            k_roots: Vec::new(),
        };
        data.k_roots = data.orthogonal_roots();
        Ok(data)
    }

    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        a.iter()
            .zip(&self.gram)
            .map(|(x, row)| x * row.iter().zip(b).map(|(g, y)| g * y).sum::<i64>())
            .sum()
    }

    fn all_roots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.even_roots.iter().chain(&self.odd_roots)
    }

    /// Roots orthogonal to every `α_i`: the roots of `𝔨`.
    pub fn orthogonal_roots(&self) -> Vec<Vec<i64>> {
        self.all_roots()
            .filter(|b| self.isotropic_roots.iter().all(|a| self.form(a, b) == 0))
            .cloned()
            .collect()
    }

    pub fn validate(&self) -> Result<(), HomError> {
        let rank = self.weights_basis_rank;
        let bad = |msg: String| Err(HomError::RootData(msg));
        if self.gram.len() != rank || self.gram.iter().any(|r| r.len() != rank) {
            return bad(format!("gram must be {rank}x{rank}"));
        }
        for a in 0..rank {
            for b in 0..a {
                if self.gram[a][b] != self.gram[b][a] {
                    return bad("gram must be symmetric".into());
                }
            }
        }
        for root in self.all_roots().chain(&self.isotropic_roots).chain(&self.k_roots) {
            if root.len() != rank {
                return bad(format!("root {root:?} has length {} instead of {rank}", root.len()));
            }
        }
        for g in &self.weyl_generators {
            if g.rank() != rank {
                return bad(format!("Weyl generator of rank {} in rank {rank}", g.rank()));
            }
            g.validate()?;
        }
        let odd: BTreeSet<&Vec<i64>> = self.odd_roots.iter().collect();
        for (i, a) in self.isotropic_roots.iter().enumerate() {
            if !odd.contains(a) {
                return bad(format!("isotropic root {a:?} is not an odd root"));
            }
            for (j, b) in self.isotropic_roots.iter().enumerate() {
                if self.form(a, b) != 0 {
                    let what = if i == j { "isotropic" } else { "mutually orthogonal" };
                    return bad(format!("roots {a:?}, {b:?} are not {what}"));
                }
            }
        }
        if !self.k_roots.is_empty() {
            let given: BTreeSet<&Vec<i64>> = self.k_roots.iter().collect();
            let computed = self.orthogonal_roots();
            if given != computed.iter().collect() {
                return bad("k_roots must be exactly the roots orthogonal to every isotropic root".into());
            }
        }
        Ok(())
    }

    /// Reflection `v ↦ v − 2(v,β)/(β,β) β` as a signed permutation of the
    /// weight basis.
    pub fn reflection(&self, beta: &[i64]) -> Result<WeylElement, HomError> {
        let bb = self.form(beta, beta);
        let rank = self.weights_basis_rank;
        let not_signed_perm = || HomError::RootData(format!("reflection in {beta:?} is not a signed permutation of the basis"));
        if bb == 0 {
            return Err(HomError::RootData(format!("even root {beta:?} has zero length")));
        }
        let mut perm = Vec::with_capacity(rank);
        let mut signs = Vec::with_capacity(rank);
        for k in 0..rank {
            let mut e = vec![0; rank];
            e[k] = 1;
            let num = 2 * self.form(&e, beta);
            if num % bb != 0 {
                return Err(not_signed_perm());
            }
            let c = num / bb;
            let image: Vec<i64> = e.iter().zip(beta).map(|(x, b)| x - c * b).collect();
            let nz: Vec<usize> = (0..rank).filter(|&j| image[j] != 0).collect();
            match nz.as_slice() {
                [j] if image[*j].abs() == 1 => {
                    perm.push(*j);
                    signs.push(image[*j] as i8);
                }
                _ => return Err(not_signed_perm()),
            }
        }
        let w = WeylElement { perm, signs };
        w.validate().map_err(|_| not_signed_perm())?;
        Ok(w)
    }

    /// Positive even roots outside `𝔨`: half the even roots not
    /// orthogonal to every `α_i`.
    pub fn block_exponent(&self) -> u32 {
        let outside = self
            .even_roots
            .iter()
            .filter(|b| self.isotropic_roots.iter().any(|a| self.form(a, b) != 0))
            .count();
        (outside / 2) as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylRatio {
    pub w_order: usize,
    pub w_d: usize,
    pub w_c: usize,
    pub ratio: u64,
}

/// `|W_d|`, `|W_c|` and `|W_d|/|W_c|` by enumeration of `W`.
pub fn weyl_ratio_flag(data: &RootData) -> Result<WeylRatio, HomError> {
    data.validate()?;
    let rank = data.weights_basis_rank;
    let limit = enumeration_limit();
    let generators = if data.weyl_generators.is_empty() {
        data.even_roots.iter().map(|b| data.reflection(b)).collect::<Result<Vec<_>, _>>()?
    } else {
        data.weyl_generators.clone()
    };
    let w = closure(rank, &generators, limit)?;

    let alpha_set: BTreeSet<Vec<i64>> = data
        .isotropic_roots
        .iter()
        .flat_map(|a| [a.clone(), a.iter().map(|x| -x).collect()])
        .collect();
    let w_d: BTreeSet<&WeylElement> = w
        .iter()
        .filter(|g| alpha_set.iter().all(|a| alpha_set.contains(&g.apply(a))))
        .collect();

    let c_generators = data
        .even_roots
        .iter()
        .filter(|b| data.isotropic_roots.iter().all(|a| data.form(a, b) == 0))
        .map(|b| data.reflection(b))
        .collect::<Result<Vec<_>, _>>()?;
    let c_generators: Vec<WeylElement> = c_generators
        .into_iter()
        .filter(|s| data.isotropic_roots.iter().all(|a| &s.apply(a) == a))
        .collect();
    let w_c = closure(rank, &c_generators, limit)?;
    if let Some(g) = w_c.iter().find(|g| !w_d.contains(g)) {
        return Err(HomError::RootData(format!("W_c element {g:?} lies outside W_d")));
    }
    if w_d.len() % w_c.len() != 0 {
        return Err(HomError::NonIntegralRatio { w_d: w_d.len(), w_c: w_c.len() });
    }
    Ok(WeylRatio {
        w_order: w.len(),
        w_d: w_d.len(),
        w_c: w_c.len(),
        ratio: (w_d.len() / w_c.len()) as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_2_1_ratio_one() {
        let r = weyl_ratio_flag(&RootData::gl(2, 1, 1).unwrap()).unwrap();
        assert_eq!(r.ratio, 1);
    }

    #[test]
    fn gl_3_2_ratio_two() {
        let r = weyl_ratio_flag(&RootData::gl(3, 2, 2).unwrap()).unwrap();
        assert_eq!((r.w_order, r.w_d, r.w_c, r.ratio), (12, 2, 1, 2));
    }

    #[test]
    fn no_isotropic_roots_gives_ratio_one() {
        let r = weyl_ratio_flag(&RootData::gl(2, 2, 0).unwrap()).unwrap();
        assert_eq!(r.ratio, 1);
        assert_eq!(r.w_d, r.w_order);
    }

    #[test]
    fn reflections_of_gl_are_transpositions() {
        let data = RootData::gl(2, 1, 0).unwrap();
        let s = data.reflection(&[1, -1, 0]).unwrap();
        assert_eq!(s, WeylElement::from_perm(vec![1, 0, 2]));
    }

    #[test]
    fn generators_default_to_reflections() {
        let mut data = RootData::gl(3, 2, 2).unwrap();
        data.weyl_generators.clear();
        assert_eq!(weyl_ratio_flag(&data).unwrap().ratio, 2);
    }

    #[test]
    fn wrong_k_roots_rejected() {
        let mut data = RootData::gl(3, 2, 2).unwrap();
        data.k_roots.pop();
        assert!(matches!(data.validate(), Err(HomError::RootData(_))));
    }

    #[test]
    fn non_orthogonal_alphas_rejected() {
        let mut data = RootData::gl(2, 2, 1).unwrap();
        data.isotropic_roots.push(vec![1, 0, 0, -1]);
        data.k_roots.clear();
        assert!(data.validate().is_err());
    }

    #[test]
    fn exponent_counts_positive_even_roots_outside_k() {
        // gl(3|2), d = 2: all 6 + 2 even roots pair with some α_i; dim_ℂ X = 8.
        assert_eq!(RootData::gl(3, 2, 2).unwrap().block_exponent(), 4);
        assert_eq!(RootData::gl(2, 2, 0).unwrap().block_exponent(), 0);
    }
}
