use num_traits::Zero;

use crate::exact::{cint, creal, int, CRational};

use super::{check_block, AlgebraError, Coord, EvenMonomial, OddMonomial, SuperFunction};

/// One summand `coeff · even · odd · ∂/∂partial` of a vector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTerm {
    pub coeff: CRational,
    pub even: EvenMonomial,
    pub odd: OddMonomial,
    pub partial: Coord,
}

impl DerivationTerm {
    pub fn parity(&self) -> u8 {
        (self.odd.parity() + self.partial.is_odd() as u8) % 2
    }
}

/// A vector field: a finite sum of coordinate monomials times coordinate
/// partial derivatives. The monomial acts by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    blocks: usize,
    terms: Vec<DerivationTerm>,
}

impl Derivation {
    pub fn zero(blocks: usize) -> Self {
        Derivation { blocks, terms: Vec::new() }
    }

    /// The bare partial derivative `∂/∂coord`.
    pub fn partial(blocks: usize, coord: Coord) -> Result<Self, AlgebraError> {
        let mut d = Self::zero(blocks);
        d.push(cint(1, 0), &[], coord)?;
        Ok(d)
    }

    /// Adds `coeff · f_1 ⋯ f_k · ∂/∂partial`, with the coordinate factors
    /// multiplied left to right.
    pub fn push(&mut self, coeff: CRational, factors: &[Coord], partial: Coord) -> Result<&mut Self, AlgebraError> {
        check_block(partial.block(), self.blocks)?;
        let mut mono = SuperFunction::constant(self.blocks, coeff);
        for &f in factors {
            mono = mono.multiply(&SuperFunction::coordinate(self.blocks, f)?)?;
        }
        for (c, even, odd) in mono.terms() {
            self.terms.push(DerivationTerm {
                coeff: c.clone(),
                even: even.clone(),
                odd,
                partial,
            });
        }
        Ok(self)
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn terms(&self) -> &[DerivationTerm] {
        &self.terms
    }

    /// `Some(p)` when every summand has parity `p`.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.iter().map(DerivationTerm::parity);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }
}

/// Applies a vector field with the graded Leibniz rule. Even partials
/// also differentiate the Gaussian envelope.
pub fn apply_derivation(d: &Derivation, f: &SuperFunction) -> Result<SuperFunction, AlgebraError> {
    if d.blocks != f.blocks() {
        return Err(AlgebraError::DimensionMismatch { left: d.blocks, right: f.blocks() });
    }
    let mut out = f.empty_like();
    for term in &d.terms {
        let partial = apply_partial(term.partial, f);
        let shifted = partial.left_monomial(&term.coeff, &term.even, term.odd);
        for (c, even, odd) in shifted.terms() {
            out.add_term(c.clone(), even.clone(), odd);
        }
    }
    Ok(out)
}

fn apply_partial(coord: Coord, f: &SuperFunction) -> SuperFunction {
    let mut out = f.empty_like();
    match coord {
        Coord::Z(i) | Coord::ZBar(i) => {
            let holomorphic = matches!(coord, Coord::Z(_));
            let s = &f.envelope()[i];
            for (c, even, odd) in f.terms() {
                let (a, b) = even.exponents()[i];
                let own = if holomorphic { a } else { b };
                if own > 0 {
                    let mut e = even.clone();
                    let slot = &mut e.exps_mut()[i];
                    if holomorphic { slot.0 -= 1 } else { slot.1 -= 1 }
                    out.add_term(c * creal(int(own as i64)), e, odd);
                }
                // ∂_z exp(−s z z̄) = −s z̄ exp(−s z z̄), and symmetrically for ∂_z̄.
                if !s.is_zero() {
                    let mut e = even.clone();
                    let slot = &mut e.exps_mut()[i];
                    if holomorphic { slot.1 += 1 } else { slot.0 += 1 }
                    out.add_term(-(c * creal(s.clone())), e, odd);
                }
            }
        }
        Coord::Theta(_) | Coord::ThetaBar(_) => {
            let bit = coord.odd_bit().expect("odd coordinate");
            for (c, even, odd) in f.terms() {
                if !odd.contains(bit) {
                    continue;
                }
                let before = (odd.0 & ((1u64 << bit) - 1)).count_ones();
                let rest = OddMonomial(odd.0 & !(1u64 << bit));
                out.add_term(if before % 2 == 1 { -c.clone() } else { c.clone() }, even.clone(), rest);
            }
        }
    }
    out
}
