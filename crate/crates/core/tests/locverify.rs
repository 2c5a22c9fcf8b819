mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superloc::exact::{cint, int, rat, CRational, Exact};
use superloc::locverify::{
    build_model, check_q_square, is_equivariant, make_equivariant_form, random_form, random_integrable, random_lambda,
    verify_localization, verify_total_derivative, LocError, Profile, ReportValue, LAMBDA_POOL,
};
use superloc::qrep::CSRep;
use superloc::superalg::SuperFunction;

fn lambda_strategy() -> impl Strategy<Value = CRational> {
    prop::sample::select(LAMBDA_POOL.to_vec()).prop_map(|(a, b)| cint(a, b))
}

fn profile_strategy() -> impl Strategy<Value = Profile> {
    (
        prop::collection::vec((-3i64..=3, -3i64..=3).prop_map(|(a, b)| cint(a, b)), 1..=5),
        prop::sample::select(vec![(1, 2), (1, 1), (2, 1)]),
    )
        .prop_map(|(coeffs, (p, q))| Profile { coeffs, s: rat(p, q) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn localization_matches_moment_oracle(
        blocks in prop::collection::vec((lambda_strategy(), profile_strategy()), 1..=3),
        flips in prop::collection::vec(any::<bool>(), 3),
    ) {
        let lambdas: Vec<CRational> = blocks.iter().map(|b| b.0.clone()).collect();
        let rep = CSRep::from_lambdas(&lambdas).unwrap().with_flips(&flips);
        let model = build_model(&rep);
        let profiles: Vec<Profile> = blocks.iter().map(|b| b.1.clone()).collect();
        let f = make_equivariant_form(&model, &profiles).unwrap();
        let report = verify_localization(&model, &f).unwrap();
        prop_assert!(report.equal);
        let oracle = profiles
            .iter()
            .enumerate()
            .fold(Exact::one(), |acc, (i, p)| &acc * &common::block_integral(&p.coeffs, &p.s, &rep.oriented_lambda(i)));
        prop_assert_eq!(report.lhs, ReportValue::Exact(oracle));
    }

    #[test]
    fn q_squares_to_torus_action(lambdas in prop::collection::vec(lambda_strategy(), 1..=3)) {
        prop_assert!(check_q_square(&build_model(&CSRep::from_lambdas(&lambdas).unwrap())).unwrap());
    }
}

#[test]
fn total_derivatives_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=3 {
        for _ in 0..30 {
            let lambdas: Vec<_> = (0..m).map(|_| random_lambda(&mut rng)).collect();
            let model = build_model(&CSRep::from_lambdas(&lambdas).unwrap());
            let g = random_integrable(&mut rng, m);
            assert!(verify_total_derivative(&model, &g).unwrap().is_zero());
        }
    }
}

#[test]
fn perturbing_any_coefficient_breaks_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in 1..=2 {
        let lambdas: Vec<_> = (0..m).map(|_| random_lambda(&mut rng)).collect();
        let model = build_model(&CSRep::from_lambdas(&lambdas).unwrap());
        let (_, f) = random_form(&mut rng, &model, 2).unwrap();
        assert!(is_equivariant(&model, &f).unwrap());
        let terms: Vec<_> = f.terms().map(|(c, e, o)| (c.clone(), e.clone(), o)).collect();
        for k in 0..terms.len() {
            let mut perturbed = terms.clone();
            perturbed[k].0 = &perturbed[k].0 + cint(1, 0);
            let g = SuperFunction::from_terms(m, f.envelope().to_vec(), perturbed).unwrap();
            assert!(!is_equivariant(&model, &g).unwrap(), "term {k} of {}", terms.len());
            assert!(matches!(verify_localization(&model, &g), Err(LocError::NotEquivariant { .. })));
        }
    }
}

#[test]
fn two_block_gaussian_product() {
    let (l1, l2) = (cint(0, 5), cint(-1, 2));
    let model = build_model(&CSRep::from_lambdas(&[l1.clone(), l2.clone()]).unwrap());
    let f = make_equivariant_form(&model, &[Profile::gaussian(int(1)), Profile::gaussian(int(1))]).unwrap();
    let r = verify_localization(&model, &f).unwrap();
    assert!(r.equal);
    assert_eq!(r.rhs, ReportValue::Exact(Exact::monomial(cint(4, 0) / (l1 * l2), 2)));
}

#[test]
fn report_json_shape() {
    let model = build_model(&CSRep::from_lambdas(&[cint(0, 3)]).unwrap());
    let f = make_equivariant_form(&model, &[Profile::gaussian(int(1))]).unwrap();
    let j = serde_json::to_value(verify_localization(&model, &f).unwrap()).unwrap();
    assert_eq!(j["mode"], "exact");
    assert_eq!(j["equal"], true);
    assert_eq!(j["residual"]["text"], "0");
    assert!(j.get("eps_trace").is_none());
}
