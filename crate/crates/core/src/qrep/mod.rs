//! Oriented nondegenerate CS Q-group representations.
//!
//! A representation is stored as an ordered list of character blocks
//! `W_χ`, each a `(2|2)` piece with canonical basis `z, z̄, θ = Qz, θ̄ = Qz̄`.
//! A `flipped` block stands for `W_{−χ}^{or}` in place of `W_χ^{or}`: its
//! oriented coordinate is the conjugate one, so it contributes `−χ(Q²)`
//! to the Pfaffian.
//!
//! The localization functional is kept as its scalar against the
//! canonical fiber basis `(z_1∧z̄_1∧⋯)/(θ_1∧θ̄_1∧⋯)`, where it is
//! `(2π)^m / Pf(W)`.

mod decompose;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants;
use crate::exact::{c_is_zero, c_pow, cint, complex_pair_serde, creal, int, CRational, Exact};

pub use decompose::{decompose, BlockBasis, Decomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("torus rank mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("torus rank must be at least 1")]
    InvalidTorusRank,
    #[error("degenerate representation: χ(Q²) = 0 for summand {index}")]
    Degenerate { index: usize },
    #[error("degenerate representation: zero character at basis vector {index}")]
    ZeroCharacter { index: usize },
    #[error("degenerate representation: Q restricted to the even part is singular")]
    SingularQ,
    #[error("not a CS structure: character {character:?} has multiplicity {plus} but its negative has {minus}")]
    Unpaired { character: Vec<i64>, plus: usize, minus: usize },
    #[error("Q is not odd: it has a nonzero entry in the {0} diagonal block")]
    NotOdd(&'static str),
    #[error("Q² does not act by i·χ(Q²) on even basis vector {index}")]
    QSquareMismatch { index: usize },
    #[error("matrix shape {rows}x{cols} does not match {expected}x{expected}")]
    Shape { rows: usize, cols: usize, expected: usize },
    #[error("representations are over different Q-groups")]
    QGroupMismatch,
}

/// A character of the torus, in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<i64>);

impl Character {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn negated(&self) -> Character {
        Character(self.0.iter().map(|c| -c).collect())
    }

    /// Positive half of the lattice: first nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }
}

/// A Q-group, given by its torus rank and `Q² ∈ 𝔱_ℂ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QGroupSpec {
    pub torus_rank: usize,
    #[serde(with = "complex_pair_serde::vec")]
    pub q_square: Vec<CRational>,
}

impl QGroupSpec {
    pub fn new(q_square: Vec<CRational>) -> Result<Self, RepError> {
        if q_square.is_empty() {
            return Err(RepError::InvalidTorusRank);
        }
        Ok(QGroupSpec { torus_rank: q_square.len(), q_square })
    }

    /// The Q-group for `Q' = cQ`, i.e. `Q'² = c²Q²`.
    pub fn rescaled(&self, c: &CRational) -> QGroupSpec {
        let c2 = c * c;
        QGroupSpec {
            torus_rank: self.torus_rank,
            q_square: self.q_square.iter().map(|q| q * &c2).collect(),
        }
    }
}

/// `χ(Q²) = Σ_k χ_k (Q²)_k`.
pub fn lambda_of(chi: &Character, q: &QGroupSpec) -> Result<CRational, RepError> {
    if chi.rank() != q.torus_rank || q.q_square.len() != q.torus_rank {
        return Err(RepError::DimensionMismatch { expected: q.torus_rank, got: chi.rank() });
    }
    Ok(chi
        .0
        .iter()
        .zip(&q.q_square)
        .fold(cint(0, 0), |acc, (&k, q)| acc + q * creal(int(k))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub chi: Character,
    #[serde(default)]
    pub flipped: bool,
}

impl Summand {
    pub fn new(chi: Character) -> Self {
        Summand { chi, flipped: false }
    }

    pub fn flipped(chi: Character) -> Self {
        Summand { chi, flipped: true }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CSRepRecord {
    torus_rank: usize,
    #[serde(with = "complex_pair_serde::vec")]
    q_square: Vec<CRational>,
    summands: Vec<Summand>,
}

/// An oriented nondegenerate CS representation `⊕ W_{χ_i}^{or}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CSRepRecord", into = "CSRepRecord")]
pub struct CSRep {
    qgroup: QGroupSpec,
    summands: Vec<Summand>,
    lambdas: Vec<CRational>,
}

impl CSRep {
    pub fn new(qgroup: QGroupSpec, summands: Vec<Summand>) -> Result<Self, RepError> {
        if qgroup.torus_rank == 0 || qgroup.q_square.len() != qgroup.torus_rank {
            return Err(RepError::InvalidTorusRank);
        }
        let lambdas = summands
            .iter()
            .enumerate()
            .map(|(index, s)| {
                let l = lambda_of(&s.chi, &qgroup)?;
                if c_is_zero(&l) {
                    Err(RepError::Degenerate { index })
                } else {
                    Ok(l)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CSRep { qgroup, summands, lambdas })
    }

    pub fn empty(qgroup: QGroupSpec) -> Self {
        CSRep { qgroup, summands: Vec::new(), lambdas: Vec::new() }
    }

    /// One unflipped block per character.
    pub fn from_characters(qgroup: QGroupSpec, chars: Vec<Character>) -> Result<Self, RepError> {
        Self::new(qgroup, chars.into_iter().map(Summand::new).collect())
    }

    /// Rank-`m` torus with `Q² = (λ_1, …, λ_m)` and characters `e_1, …, e_m`,
    /// so block `i` has `χ_i(Q²) = λ_i`.
    pub fn from_lambdas(lambdas: &[CRational]) -> Result<Self, RepError> {
        let m = lambdas.len().max(1);
        let mut q = lambdas.to_vec();
        if q.is_empty() {
            q.push(cint(1, 0));
        }
        let chars = (0..lambdas.len())
            .map(|i| Character((0..m).map(|k| (k == i) as i64).collect()))
            .collect();
        Self::from_characters(QGroupSpec::new(q)?, chars)
    }

    pub fn qgroup(&self) -> &QGroupSpec {
        &self.qgroup
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Number of `(2|2)` blocks `m`; the representation has dimension `(2m|2m)`.
    pub fn blocks(&self) -> usize {
        self.summands.len()
    }

    /// `χ_i(Q²)` of the stored characters.
    pub fn lambdas(&self) -> &[CRational] {
        &self.lambdas
    }

    /// `(−1)^{flipped_i} χ_i(Q²)`: the eigenvalue seen by the oriented
    /// coordinate of block `i`.
    pub fn oriented_lambda(&self, i: usize) -> CRational {
        if self.summands[i].flipped {
            -self.lambdas[i].clone()
        } else {
            self.lambdas[i].clone()
        }
    }

    pub fn oriented_lambdas(&self) -> Vec<CRational> {
        (0..self.blocks()).map(|i| self.oriented_lambda(i)).collect()
    }

    /// Same blocks over the Q-group of `Q' = cQ`.
    pub fn rescaled(&self, c: &CRational) -> Result<CSRep, RepError> {
        CSRep::new(self.qgroup.rescaled(c), self.summands.clone())
    }

    pub fn with_flips(&self, flips: &[bool]) -> CSRep {
        let mut out = self.clone();
        for (s, &f) in out.summands.iter_mut().zip(flips) {
            s.flipped = f;
        }
        out
    }
}

impl TryFrom<CSRepRecord> for CSRep {
    type Error = RepError;

    fn try_from(r: CSRepRecord) -> Result<Self, RepError> {
        if r.torus_rank != r.q_square.len() {
            return Err(RepError::DimensionMismatch { expected: r.torus_rank, got: r.q_square.len() });
        }
        CSRep::new(QGroupSpec::new(r.q_square)?, r.summands)
    }
}

impl From<CSRep> for CSRepRecord {
    fn from(rep: CSRep) -> Self {
        CSRepRecord {
            torus_rank: rep.qgroup.torus_rank,
            q_square: rep.qgroup.q_square,
            summands: rep.summands,
        }
    }
}

/// `Pf(W) = ∏_i (−1)^{flipped_i} χ_i(Q²)`; never zero.
pub fn pfaffian(rep: &CSRep) -> CRational {
    rep.oriented_lambdas().iter().fold(cint(1, 0), |acc, l| acc * l)
}

/// Scalar `L` with `Loc_W(ω|₀) = L · coeff`, for `ω|₀` written in the
/// canonical fiber basis: `L = (2π)^m / Pf(W)`.
pub fn loc_scalar(rep: &CSRep) -> Exact {
    let m = rep.blocks() as u32;
    let c = constants::loc_sign() * c_pow(&cint(2, 0), m) / pfaffian(rep);
    Exact::monomial(c, m as i32)
}

pub fn direct_sum(a: &CSRep, b: &CSRep) -> Result<CSRep, RepError> {
    if a.qgroup != b.qgroup {
        return Err(RepError::QGroupMismatch);
    }
    let mut summands = a.summands.clone();
    summands.extend(b.summands.iter().cloned());
    let mut lambdas = a.lambdas.clone();
    lambdas.extend(b.lambdas.iter().cloned());
    Ok(CSRep { qgroup: a.qgroup.clone(), summands, lambdas })
}

/// Coordinate of a Berezinian fiber vector in the canonical basis
/// `(z_1∧z̄_1∧⋯)/(θ_1∧θ̄_1∧⋯)` of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BerFiber {
    #[serde(with = "complex_pair_serde")]
    pub coeff: CRational,
}

impl BerFiber {
    pub fn new(coeff: CRational) -> Self {
        BerFiber { coeff }
    }

    /// The same fiber vector after the odd canonical basis is rescaled by
    /// `c` (as happens under `Q → cQ`): each block's `{·|dθ dθ̄}` picks up
    /// `c²`, so the coordinate is multiplied by `c^{2m}`.
    pub fn in_rescaled_basis(&self, c: &CRational, blocks: usize) -> BerFiber {
        BerFiber { coeff: &self.coeff * c_pow(c, 2 * blocks as u32) }
    }
}

/// `Loc_W` paired with a fiber vector.
pub fn pair(rep: &CSRep, fiber: &BerFiber) -> Exact {
    loc_scalar(rep).scale(&fiber.coeff)
}

/// The canonical volume form of `W = V ⊕ V*` for distinct characters,
/// expressed in the canonical fiber basis. With `z_i^∨ = z̄_i`, the odd
/// dual vectors satisfy `θ_i^∨ = θ̄_i / (−iλ_i)`, so the coordinate is
/// `∏_i (−iλ_i)`.
pub fn canonical_volume_fiber(rep: &CSRep) -> BerFiber {
    let minus_i = cint(0, -1);
    BerFiber::new(rep.oriented_lambdas().iter().fold(cint(1, 0), |acc, l| acc * &minus_i * l))
}

/// `(2π/i)^m` as an exact value.
pub fn two_pi_over_i_pow(m: u32) -> Exact {
    Exact::monomial(c_pow(&cint(0, -2), m), m as i32)
}
