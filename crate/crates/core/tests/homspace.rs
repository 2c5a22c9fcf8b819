mod common;

use proptest::prelude::*;

use superloc::homspace::{
    fixed_isotropic, fixed_isotropic_oracle, fixed_periplectic, splitting_verdict, volume, weyl_ratio_flag,
    HomSpaceSpec, RootData, Verdict, WeylElement,
};

fn weyl_element(n: usize) -> impl Strategy<Value = WeylElement> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(prop::bool::ANY, n))
        .prop_map(|(perm, signs)| WeylElement { perm, signs: signs.into_iter().map(|b| if b { -1 } else { 1 }).collect() })
}

proptest! {
    #[test]
    fn group_axioms(a in weyl_element(5), b in weyl_element(5), c in weyl_element(5), v in prop::collection::vec(-5i64..=5, 5)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.inverse().compose(&a).is_identity());
        prop_assert_eq!(WeylElement::identity(5).compose(&a), a.clone());
        prop_assert_eq!(a.compose(&b).apply(&v), a.apply(&b.apply(&v)));
    }
}

#[test]
fn isotropic_counts_and_oracle() {
    for n in 1..=10 {
        assert_eq!(fixed_isotropic(n).unwrap().0, 1 << (n - 1), "n = {n}");
    }
    for n in 1..=8 {
        assert_eq!(fixed_isotropic_oracle(n).unwrap(), 1 << (n - 1), "n = {n}");
    }
}

#[test]
fn periplectic_counts_against_subset_oracle() {
    for n in 2..=9usize {
        for r in 1..n {
            let s = n - r;
            let count = fixed_periplectic(r, s).unwrap().0;
            assert_eq!(count, common::periplectic_subsets(r, s), "({r}, {s})");
            assert_eq!(count, fixed_periplectic(s, r).unwrap().0, "symmetry ({r}, {s})");
            let l = (n / 2) as u64;
            let want = match (r % 2, s % 2) {
                (0, _) => common::binomial(l, r as u64 / 2),
                (1, 0) => common::binomial(l, s as u64 / 2),
                _ => 0,
            };
            assert_eq!(count, want, "({r}, {s})");
        }
    }
}

#[test]
fn flag_ratio_against_brute_force() {
    for m in 1..=4usize {
        for n in 1..=4usize {
            let d = m.min(n);
            let r = weyl_ratio_flag(&RootData::gl(m, n, d).unwrap()).unwrap();
            assert_eq!(r.w_d as u64, common::gl_w_d(m, n, d), "gl({m}|{n})");
            assert_eq!(r.w_c as u64, common::factorial((m - d) as u64) * common::factorial((n - d) as u64));
            assert_eq!(r.ratio, common::factorial(d as u64), "gl({m}|{n})");
        }
    }
}

#[test]
fn shipped_root_data_matches_builder() {
    for (m, n, file) in [(3, 2, "gl3_2.json"), (2, 1, "gl2_1.json")] {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/").to_string() + file;
        let data: RootData = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(data, RootData::gl(m, n, m.min(n)).unwrap());
    }
}

#[test]
fn volumes_and_verdicts() {
    for r in 1..=4 {
        for s in 1..=4 {
            let v = volume(&HomSpaceSpec::Periplectic { r, s }).unwrap();
            assert_eq!(v.nonzero, v.count > 0);
            assert_eq!(v.nonzero, r * s % 2 == 0, "({r}, {s})");
            assert_eq!(splitting_verdict(&v) == Verdict::Splitting, v.nonzero);
            assert_eq!(v.exact, common::two_pi_over_i(v.count, (r * s) as u32));
        }
    }
    let flag = volume(&HomSpaceSpec::Flag { root_data: RootData::gl(3, 2, 2).unwrap() }).unwrap();
    assert_eq!((flag.count, flag.exponent_m), (2, 4));
}
