//! Grassmann–Gaussian superfunctions on the linear model ℝ^{2m|2m}.
//!
//! Each block `i` carries even coordinates `z_i, z̄_i` and odd coordinates
//! `θ_i, θ̄_i`. A [`SuperFunction`] is a finite sum of terms
//! `c · z^a z̄^b · θ^mask` times one Gaussian envelope `∏ exp(−s_i z_i z̄_i)`
//! shared by the whole function.
//!
//! Odd generators are kept in the canonical order
//! `θ_1, θ̄_1, θ_2, θ̄_2, …`; bit `2i` of the mask is `θ_i` and bit `2i+1`
//! is `θ̄_i`. Reordering signs are folded into the coefficient.

mod derivation;
mod integrate;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{c_is_zero, cint, format_complex, format_rational, CRational, Rational};

pub use derivation::{apply_derivation, Derivation, DerivationTerm};
pub use integrate::{berezin_integral, berezin_integral_with, eval_origin, gaussian_moment};

/// Masks are `u64`, two bits per block.
pub const MAX_BLOCKS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("block count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("cannot add functions with different Gaussian envelopes")]
    EnvelopeMismatch,
    #[error("envelope coefficient of block {block} is negative ({value})")]
    NegativeEnvelope { block: usize, value: String },
    #[error("divergent integral: envelope of block {block} is not strictly positive")]
    Divergent { block: usize },
    #[error("block {block} out of range for a {blocks}-block model")]
    BlockOutOfRange { block: usize, blocks: usize },
    #[error("function is not homogeneous in parity")]
    NotHomogeneous,
}

/// A coordinate function of the linear model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Z(usize),
    ZBar(usize),
    Theta(usize),
    ThetaBar(usize),
}

impl Coord {
    pub fn block(self) -> usize {
        match self {
            Coord::Z(i) | Coord::ZBar(i) | Coord::Theta(i) | Coord::ThetaBar(i) => i,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Coord::Theta(_) | Coord::ThetaBar(_))
    }

    /// Position of an odd coordinate in the canonical order.
    pub(crate) fn odd_bit(self) -> Option<u32> {
        match self {
            Coord::Theta(i) => Some(2 * i as u32),
            Coord::ThetaBar(i) => Some(2 * i as u32 + 1),
            _ => None,
        }
    }
}

/// Powers `(a_i, b_i)` of `z_i` and `z̄_i`, one pair per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenMonomial(Vec<(u32, u32)>);

impl EvenMonomial {
    pub fn one(blocks: usize) -> Self {
        EvenMonomial(vec![(0, 0); blocks])
    }

    pub fn from_exponents(exponents: Vec<(u32, u32)>) -> Self {
        EvenMonomial(exponents)
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn blocks(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&(a, b)| a == 0 && b == 0)
    }

    pub fn times(&self, other: &EvenMonomial) -> EvenMonomial {
        EvenMonomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&(a, b), &(c, d))| (a + c, b + d))
                .collect(),
        )
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [(u32, u32)] {
        &mut self.0
    }
}

/// A product of distinct odd generators in canonical order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddMonomial(pub u64);

impl OddMonomial {
    pub const ONE: OddMonomial = OddMonomial(0);

    /// `θ_1θ̄_1⋯θ_mθ̄_m`
    pub fn top(blocks: usize) -> Self {
        if blocks == 0 {
            OddMonomial(0)
        } else {
            OddMonomial(u64::MAX >> (64 - 2 * blocks as u32))
        }
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn parity(self) -> u8 {
        (self.degree() % 2) as u8
    }

    pub fn contains(self, bit: u32) -> bool {
        self.0 >> bit & 1 == 1
    }

    /// Product `self · other` as `(negated, result)`, or `None` if a
    /// generator repeats.
    pub fn times(self, other: OddMonomial) -> Option<(bool, OddMonomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each generator of `other` moves left past every generator of
        // `self` with a larger index.
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let bit = rest.trailing_zeros();
            swaps += (self.0 >> bit).count_ones();
            rest &= rest - 1;
        }
        Some((swaps % 2 == 1, OddMonomial(self.0 | other.0)))
    }
}

/// Exact Grassmann–Gaussian superfunction; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperFunction {
    blocks: usize,
    envelope: Vec<Rational>,
    terms: BTreeMap<(OddMonomial, EvenMonomial), CRational>,
}

impl SuperFunction {
    pub fn zero(blocks: usize) -> Self {
        assert!(blocks <= MAX_BLOCKS, "at most {MAX_BLOCKS} blocks are supported");
        SuperFunction {
            blocks,
            envelope: vec![Rational::zero(); blocks],
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(blocks: usize, c: CRational) -> Self {
        let mut f = Self::zero(blocks);
        f.add_term(c, EvenMonomial::one(blocks), OddMonomial::ONE);
        f
    }

    pub fn one(blocks: usize) -> Self {
        Self::constant(blocks, cint(1, 0))
    }

    /// The coordinate function `coord` (no envelope).
    pub fn coordinate(blocks: usize, coord: Coord) -> Result<Self, AlgebraError> {
        check_block(coord.block(), blocks)?;
        let mut even = EvenMonomial::one(blocks);
        let mut odd = OddMonomial::ONE;
        match coord {
            Coord::Z(i) => even.0[i].0 = 1,
            Coord::ZBar(i) => even.0[i].1 = 1,
            Coord::Theta(_) | Coord::ThetaBar(_) => odd = OddMonomial(1 << coord.odd_bit().unwrap()),
        }
        let mut f = Self::zero(blocks);
        f.add_term(cint(1, 0), even, odd);
        Ok(f)
    }

    /// `∏_i exp(−s_i z_i z̄_i)`
    pub fn gaussian(envelope: Vec<Rational>) -> Result<Self, AlgebraError> {
        Self::one(envelope.len()).with_envelope(envelope)
    }

    pub fn from_terms<I>(blocks: usize, envelope: Vec<Rational>, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (CRational, EvenMonomial, OddMonomial)>,
    {
        let mut f = Self::zero(blocks).with_envelope(envelope)?;
        for (c, even, odd) in terms {
            if even.blocks() != blocks {
                return Err(AlgebraError::DimensionMismatch { left: blocks, right: even.blocks() });
            }
            if odd.0 & !OddMonomial::top(blocks).0 != 0 {
                return Err(AlgebraError::BlockOutOfRange { block: (63 - odd.0.leading_zeros() as usize) / 2, blocks });
            }
            f.add_term(c, even, odd);
        }
        Ok(f)
    }

    /// Replaces the envelope; the polynomial part is unchanged.
    pub fn with_envelope(mut self, envelope: Vec<Rational>) -> Result<Self, AlgebraError> {
        if envelope.len() != self.blocks {
            return Err(AlgebraError::DimensionMismatch { left: self.blocks, right: envelope.len() });
        }
        if let Some((block, s)) = envelope.iter().enumerate().find(|(_, s)| s.is_negative()) {
            return Err(AlgebraError::NegativeEnvelope { block, value: format_rational(s) });
        }
        self.envelope = envelope;
        Ok(self)
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn envelope(&self) -> &[Rational] {
        &self.envelope
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CRational, &EvenMonomial, OddMonomial)> {
        self.terms.iter().map(|((odd, even), c)| (c, even, *odd))
    }

    pub fn coefficient(&self, even: &EvenMonomial, odd: OddMonomial) -> Option<&CRational> {
        self.terms.get(&(odd, even.clone()))
    }

    /// `Some(0)` for even, `Some(1)` for odd, `None` if mixed. Zero is even.
    pub fn parity(&self) -> Option<u8> {
        let mut parities = self.terms.keys().map(|(odd, _)| odd.parity());
        let first = parities.next().unwrap_or(0);
        parities.all(|p| p == first).then_some(first)
    }

    /// The purely even function multiplying `odd` in `self`, keeping the envelope.
    pub fn odd_component(&self, odd: OddMonomial) -> SuperFunction {
        let mut out = SuperFunction { terms: BTreeMap::new(), ..self.clone() };
        for ((o, e), c) in &self.terms {
            if *o == odd {
                out.add_term(c.clone(), e.clone(), OddMonomial::ONE);
            }
        }
        out
    }

    pub(crate) fn add_term(&mut self, c: CRational, even: EvenMonomial, odd: OddMonomial) {
        if c_is_zero(&c) {
            return;
        }
        let key = (odd, even);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing = &*existing + &c;
                if c_is_zero(existing) {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub(crate) fn empty_like(&self) -> SuperFunction {
        SuperFunction {
            blocks: self.blocks,
            envelope: self.envelope.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&self, other: &SuperFunction) -> Result<SuperFunction, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for ((odd, even), c) in &other.terms {
            out.add_term(c.clone(), even.clone(), *odd);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SuperFunction) -> Result<SuperFunction, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SuperFunction {
        self.scale(&cint(-1, 0))
    }

    pub fn scale(&self, c: &CRational) -> SuperFunction {
        let mut out = self.empty_like();
        for ((odd, even), v) in &self.terms {
            out.add_term(v * c, even.clone(), *odd);
        }
        out
    }

    /// Graded product. Envelopes add blockwise.
    pub fn multiply(&self, other: &SuperFunction) -> Result<SuperFunction, AlgebraError> {
        if self.blocks != other.blocks {
            return Err(AlgebraError::DimensionMismatch { left: self.blocks, right: other.blocks });
        }
        let envelope = self.envelope.iter().zip(&other.envelope).map(|(a, b)| a + b).collect();
        let mut out = SuperFunction {
            blocks: self.blocks,
            envelope,
            terms: BTreeMap::new(),
        };
        for ((oa, ea), ca) in &self.terms {
            for ((ob, eb), cb) in &other.terms {
                let Some((negated, odd)) = oa.times(*ob) else { continue };
                let c = ca * cb;
                out.add_term(if negated { -c } else { c }, ea.times(eb), odd);
            }
        }
        Ok(out)
    }

    /// Left multiplication by a single monomial `c · even · odd`.
    pub(crate) fn left_monomial(&self, c: &CRational, even: &EvenMonomial, odd: OddMonomial) -> SuperFunction {
        let mut out = self.empty_like();
        for ((o, e), v) in &self.terms {
            let Some((negated, prod)) = odd.times(*o) else { continue };
            let coeff = c * v;
            out.add_term(if negated { -coeff } else { coeff }, even.times(e), prod);
        }
        out
    }

    fn check_compatible(&self, other: &SuperFunction) -> Result<(), AlgebraError> {
        if self.blocks != other.blocks {
            return Err(AlgebraError::DimensionMismatch { left: self.blocks, right: other.blocks });
        }
        if self.envelope != other.envelope {
            return Err(AlgebraError::EnvelopeMismatch);
        }
        Ok(())
    }
}

pub(crate) fn check_block(block: usize, blocks: usize) -> Result<(), AlgebraError> {
    if block < blocks {
        Ok(())
    } else {
        Err(AlgebraError::BlockOutOfRange { block, blocks })
    }
}

impl fmt::Display for SuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.envelope.iter().any(|s| !s.is_zero()) {
            let parts: Vec<String> = self
                .envelope
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(i, s)| format!("{}*z{}zb{}", format_rational(s), i + 1, i + 1))
                .collect();
            write!(f, "exp(-({}))*", parts.join(" + "))?;
        }
        if self.terms.is_empty() {
            return f.write_str("(0)");
        }
        let mut rendered = Vec::new();
        for ((odd, even), c) in &self.terms {
            let mut factors = vec![format!("({})", format_complex(c))];
            for (i, &(a, b)) in even.exponents().iter().enumerate() {
                for (name, p) in [("z", a), ("zb", b)] {
                    match p {
                        0 => {}
                        1 => factors.push(format!("{name}{}", i + 1)),
                        _ => factors.push(format!("{name}{}^{p}", i + 1)),
                    }
                }
            }
            for bit in 0..64 {
                if odd.contains(bit) {
                    let name = if bit % 2 == 0 { "th" } else { "thb" };
                    factors.push(format!("{name}{}", bit / 2 + 1));
                }
            }
            rendered.push(factors.join("*"));
        }
        write!(f, "({})", rendered.join(" + "))
    }
}
