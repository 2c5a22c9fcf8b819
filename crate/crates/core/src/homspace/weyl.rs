use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::HomError;

/// A signed permutation of the weight basis: `e_k ↦ signs[k]·e_{perm[k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { perm: (0..rank).collect(), signs: vec![1; rank] }
    }

    pub fn from_perm(perm: Vec<usize>) -> Self {
        let n = perm.len();
        WeylElement { perm, signs: vec![1; n] }
    }

    pub fn from_signs(signs: Vec<i8>) -> Self {
        WeylElement { perm: (0..signs.len()).collect(), signs }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn validate(&self) -> Result<(), HomError> {
        let n = self.perm.len();
        if self.signs.len() != n {
            return Err(HomError::RootData(format!("Weyl element has {} signs for {} indices", self.signs.len(), n)));
        }
        if self.signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(HomError::RootData("Weyl element signs must be ±1".into()));
        }
        let mut seen = vec![false; n];
        for &p in &self.perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(HomError::RootData(format!("{:?} is not a permutation", self.perm)));
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (k, &x) in v.iter().enumerate() {
            out[self.perm[k]] = self.signs[k] as i64 * x;
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let signs = other.perm.iter().zip(&other.signs).map(|(&p, &s)| s * self.signs[p]).collect();
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for k in 0..n {
            perm[self.perm[k]] = k;
            signs[self.perm[k]] = self.signs[k];
        }
        WeylElement { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| k == p) && self.signs.iter().all(|&s| s == 1)
    }
}

/// The subgroup generated by `generators`, by breadth-first closure.
pub fn closure(rank: usize, generators: &[WeylElement], limit: usize) -> Result<BTreeSet<WeylElement>, HomError> {
    let id = WeylElement::identity(rank);
    let mut group = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.compose(&g);
            if group.insert(h.clone()) {
                if group.len() > limit {
                    return Err(HomError::EnumerationLimit { what: "group closure", needed: group.len(), limit });
                }
                queue.push_back(h);
            }
        }
    }
    Ok(group)
}
