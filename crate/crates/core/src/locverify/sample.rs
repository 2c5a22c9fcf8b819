use rand::seq::SliceRandom;
use rand::Rng;

use crate::exact::{cint, int, rat, CRational, Rational};
use crate::superalg::{EvenMonomial, OddMonomial, SuperFunction};

use super::{make_equivariant_form, LinearModel, LocError, Profile};

/// Eigenvalues drawn by the random suites: `±1±2i, ±3i, 2, 5i`.
pub const LAMBDA_POOL: [(i64, i64); 8] = [(1, 2), (1, -2), (-1, 2), (-1, -2), (0, 3), (0, -3), (2, 0), (0, 5)];

pub fn random_lambda<R: Rng + ?Sized>(rng: &mut R) -> CRational {
    let (re, im) = *LAMBDA_POOL.choose(rng).expect("nonempty pool");
    cint(re, im)
}

fn random_envelope<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    [rat(1, 2), int(1), int(2)].choose(rng).expect("nonempty").clone()
}

fn small_complex<R: Rng + ?Sized>(rng: &mut R) -> CRational {
    cint(rng.gen_range(-3..=3), rng.gen_range(-3..=3))
}

/// A polynomial of degree at most `max_degree` with small Gaussian-integer
/// coefficients and a random envelope from `{1/2, 1, 2}`.
pub fn random_profile<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> Profile {
    let degree = rng.gen_range(0..=max_degree);
    let mut coeffs: Vec<CRational> = (0..=degree).map(|_| small_complex(rng)).collect();
    if coeffs.iter().all(crate::exact::c_is_zero) {
        coeffs[0] = cint(1, 0);
    }
    Profile { coeffs, s: random_envelope(rng) }
}

pub fn random_form<R: Rng + ?Sized>(
    rng: &mut R,
    model: &LinearModel,
    max_degree: usize,
) -> Result<(Vec<Profile>, SuperFunction), LocError> {
    let profiles: Vec<Profile> = (0..model.blocks()).map(|_| random_profile(rng, max_degree)).collect();
    let f = make_equivariant_form(model, &profiles)?;
    Ok((profiles, f))
}

/// A random integrable superfunction: a handful of monomials with even
/// exponents up to 2 and arbitrary odd parts, times a positive Gaussian.
pub fn random_integrable<R: Rng + ?Sized>(rng: &mut R, blocks: usize) -> SuperFunction {
    let envelope = (0..blocks).map(|_| random_envelope(rng)).collect();
    let top = OddMonomial::top(blocks).0;
    let terms: Vec<_> = (0..rng.gen_range(1..=6))
        .map(|_| {
            let even = EvenMonomial::from_exponents((0..blocks).map(|_| (rng.gen_range(0..=2), rng.gen_range(0..=2))).collect());
            let odd = OddMonomial(rng.gen::<u64>() & top);
            (small_complex(rng), even, odd)
        })
        .collect();
    SuperFunction::from_terms(blocks, envelope, terms).expect("shapes match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locverify::{build_model, is_equivariant};
    use crate::qrep::CSRep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_forms_are_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 1..=2 {
            let lambdas: Vec<_> = (0..m).map(|_| random_lambda(&mut rng)).collect();
            let md = build_model(&CSRep::from_lambdas(&lambdas).unwrap());
            let (_, f) = random_form(&mut rng, &md, 3).unwrap();
            assert!(is_equivariant(&md, &f).unwrap());
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = random_integrable(&mut ChaCha8Rng::seed_from_u64(3), 2);
        let b = random_integrable(&mut ChaCha8Rng::seed_from_u64(3), 2);
        assert_eq!(a, b);
    }
}
