//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superloc::exact::{c_pow, cint, int, rat, CRational, Exact};
use superloc::homspace::{
    fixed_isotropic, fixed_isotropic_oracle, fixed_periplectic, splitting_chain_report, volume, weyl_ratio_flag,
    ChainSpec, Evidence, HomSpaceSpec, RootData, Verdict,
};
use superloc::locverify::{
    build_model, cauchy_pompeiu_check, make_equivariant_form, random_form, random_integrable, random_lambda,
    sigma_pairing_check, verify_localization, verify_total_derivative, Profile, ReportValue,
};
use superloc::qrep::{
    canonical_volume_fiber, direct_sum, loc_scalar, pair, pfaffian, BerFiber, CSRep, Character, QGroupSpec, Summand,
};
use superloc::superalg::SuperFunction;

const EPS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];
const DIST_TOL: f64 = 1e-4;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn to_f64(c: &CRational) -> Complex64 {
    use num_traits::ToPrimitive;
    Complex64::new(c.re.to_f64().unwrap(), c.im.to_f64().unwrap())
}

/// 1. Exact localization on ≥ 200 random forms, compared against the moment oracle.
fn linear_localization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for m in 1..=3 {
        for _ in 0..70 {
            let lambdas: Vec<_> = (0..m).map(|_| random_lambda(&mut rng)).collect();
            let flips: Vec<bool> = (0..m).map(|_| rng.gen()).collect();
            let rep = CSRep::from_lambdas(&lambdas).map_err(|e| e.to_string())?.with_flips(&flips);
            let model = build_model(&rep);
            let (profiles, f) = random_form(&mut rng, &model, 4).map_err(|e| e.to_string())?;
            let report = verify_localization(&model, &f).map_err(|e| e.to_string())?;
            let residual = report.residual_exact().ok_or("quadrature report for an exact check")?;
            ensure!(residual.is_zero(), "m = {m}, lambdas {lambdas:?}: residual {residual}");
            let oracle = profiles.iter().enumerate().fold(Exact::one(), |acc, (i, p)| {
                &acc * &common::block_integral(&p.coeffs, &p.s, &rep.oriented_lambda(i))
            });
            ensure!(report.lhs == ReportValue::Exact(oracle.clone()), "m = {m}: lhs differs from oracle {oracle}");
            checked += 1;
        }
    }
    ensure!(checked >= 200, "only {checked} forms");
    Ok(())
}

/// 2. `f = e^{−u}` on one block with `λ = 3i`: both sides are `2π/(3i)`.
fn closed_form() -> Outcome {
    let model = build_model(&CSRep::from_lambdas(&[cint(0, 3)]).map_err(|e| e.to_string())?);
    let f = make_equivariant_form(&model, &[Profile::gaussian(int(1))]).map_err(|e| e.to_string())?;
    let r = verify_localization(&model, &f).map_err(|e| e.to_string())?;
    let want = ReportValue::Exact(Exact::monomial(cint(2, 0) / cint(0, 3), 1));
    ensure!(r.lhs == want, "lhs {:?}", r.lhs);
    ensure!(r.rhs == want, "rhs {:?}", r.rhs);
    Ok(())
}

/// 3. `∫Q g = 0` for 100 random integrable `g` per block count.
fn total_derivative() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 1..=2 {
        for k in 0..100 {
            let lambdas: Vec<_> = (0..m).map(|_| random_lambda(&mut rng)).collect();
            let model = build_model(&CSRep::from_lambdas(&lambdas).map_err(|e| e.to_string())?);
            let g = random_integrable(&mut rng, m);
            let v = verify_total_derivative(&model, &g).map_err(|e| e.to_string())?;
            ensure!(v.is_zero(), "m = {m}, sample {k}: {v}");
        }
    }
    Ok(())
}

fn random_rep(rng: &mut ChaCha8Rng, q: &QGroupSpec) -> CSRep {
    let n = rng.gen_range(0..=3);
    let summands = (0..n)
        .map(|_| loop {
            let chi = Character(vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
            if !chi.is_zero() {
                let chi = if chi.is_positive() { chi } else { chi.negated() };
                break Summand { chi, flipped: rng.gen() };
            }
        })
        .collect();
    CSRep::new(q.clone(), summands).expect("characters are nondegenerate")
}

/// `(2π)^m / ∏λ_eff` straight from the characters.
fn loc_oracle(rep: &CSRep) -> Exact {
    let mut denom = cint(1, 0);
    for s in rep.summands() {
        let lambda: CRational = s.chi.0.iter().zip(&rep.qgroup().q_square).map(|(&a, x)| x * cint(a, 0)).sum();
        denom = denom * if s.flipped { -lambda } else { lambda };
    }
    let m = rep.summands().len() as u32;
    Exact::monomial(c_pow(&cint(2, 0), m) / denom, m as i32)
}

/// 4. Multiplicativity under direct sums and invariance under `Q → cQ`.
fn multiplicativity() -> Outcome {
    let q = QGroupSpec::new(vec![cint(1, 2), cint(3, 0)]).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..50 {
        let a = random_rep(&mut rng, &q);
        let b = random_rep(&mut rng, &q);
        let sum = direct_sum(&a, &b).map_err(|e| e.to_string())?;
        ensure!(loc_scalar(&a) == loc_oracle(&a), "pair {k}: scalar of a");
        ensure!(loc_scalar(&sum) == &loc_scalar(&a) * &loc_scalar(&b), "pair {k}: not multiplicative");
        for c in [cint(2, 0), cint(0, 1), cint(1, 1)] {
            let scaled = sum.rescaled(&c).map_err(|e| e.to_string())?;
            let fiber = BerFiber::new(cint(k as i64 + 1, -1));
            let moved = fiber.in_rescaled_basis(&c, sum.blocks());
            ensure!(pair(&scaled, &moved) == pair(&sum, &fiber), "pair {k}, c = {c}: pairing moved");
            ensure!(
                pair(&scaled, &canonical_volume_fiber(&scaled)) == pair(&sum, &canonical_volume_fiber(&sum)),
                "pair {k}, c = {c}: canonical volume moved"
            );
        }
    }
    Ok(())
}

/// 5. Every flip pattern for `m ≤ 3` changes the sign by the flip-count parity.
fn pfaffian_flips() -> Outcome {
    let pool = [cint(1, 2), cint(0, -3), cint(2, 0), cint(-1, -2), cint(0, 5)];
    for start in 0..pool.len() {
        for m in 0..=3 {
            let lambdas: Vec<_> = (0..m).map(|i| pool[(start + i) % pool.len()].clone()).collect();
            let rep = CSRep::from_lambdas(&lambdas).map_err(|e| e.to_string())?;
            let plain: CRational = lambdas.iter().fold(cint(1, 0), |acc, l| acc * l);
            ensure!(pfaffian(&rep) == plain, "unflipped pfaffian for {lambdas:?}");
            for pattern in 0u32..1 << m {
                let flips: Vec<bool> = (0..m).map(|i| pattern >> i & 1 == 1).collect();
                let sign = if pattern.count_ones() % 2 == 1 { cint(-1, 0) } else { cint(1, 0) };
                ensure!(pfaffian(&rep.with_flips(&flips)) == &plain * sign, "{lambdas:?} flips {flips:?}");
            }
        }
    }
    Ok(())
}

/// 6. Isotropic fixed points.
fn isotropic_counts() -> Outcome {
    for n in 1..=10 {
        let (count, reps) = fixed_isotropic(n).map_err(|e| e.to_string())?;
        ensure!(count == 1 << (n - 1), "n = {n}: {count}");
        ensure!(reps.len() as u64 == count, "n = {n}: {} representatives", reps.len());
    }
    for n in 1..=8 {
        let count = fixed_isotropic_oracle(n).map_err(|e| e.to_string())?;
        ensure!(count == 1 << (n - 1), "oracle n = {n}: {count}");
    }
    Ok(())
}

/// 7. Periplectic counts and the vanishing pattern of volumes.
fn periplectic_theorem() -> Outcome {
    for n in 2..=9usize {
        for r in 1..n {
            let s = n - r;
            let count = fixed_periplectic(r, s).map_err(|e| e.to_string())?.0;
            ensure!(count == common::periplectic_subsets(r, s), "({r}, {s}): {count} vs subset oracle");
            if r % 2 == 0 {
                let want = common::binomial((n / 2) as u64, (r / 2) as u64);
                ensure!(count == want, "({r}, {s}): {count} vs C({}, {}) = {want}", n / 2, r / 2);
            }
            let v = volume(&HomSpaceSpec::Periplectic { r, s }).map_err(|e| e.to_string())?;
            let odd = r * s % 2 == 1;
            ensure!(v.exact.is_zero() == odd, "({r}, {s}): volume {} with rs odd = {odd}", v.exact);
            ensure!(v.exact == common::two_pi_over_i(count, (r * s) as u32), "({r}, {s}): volume {}", v.exact);
        }
    }
    Ok(())
}

/// 8. `|W_D|/|W_C| = min(m, n)!` on `gl(m|n)`.
fn flag_ratio() -> Outcome {
    for m in 1..=4usize {
        for n in 1..=4usize {
            let d = m.min(n);
            let r = weyl_ratio_flag(&RootData::gl(m, n, d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let w_d = common::gl_w_d(m, n, d);
            let w_c = common::factorial((m - d) as u64) * common::factorial((n - d) as u64);
            ensure!(r.w_d as u64 == w_d, "gl({m}|{n}): |W_D| = {} vs {w_d}", r.w_d);
            ensure!(r.w_c as u64 == w_c, "gl({m}|{n}): |W_C| = {} vs {w_c}", r.w_c);
            ensure!(w_d / w_c == common::factorial(d as u64), "gl({m}|{n}): oracle ratio");
            ensure!(r.ratio == common::factorial(d as u64), "gl({m}|{n}): ratio {}", r.ratio);
        }
    }
    Ok(())
}

/// 9. Pole constant and the weak sigma identity by quadrature.
fn distributions() -> Outcome {
    let g = SuperFunction::gaussian(vec![int(1)]).map_err(|e| e.to_string())?;
    let r = cauchy_pompeiu_check(&g, &EPS).map_err(|e| e.to_string())?;
    let c = r.implied_constant.ok_or("no implied constant")?;
    let err = (Complex64::new(c[0], c[1]) - Complex64::new(0.0, -2.0 * PI)).norm();
    ensure!(err <= DIST_TOL, "implied constant {c:?}, error {err:e}");
    let lhs = Complex64::new(r.extrapolated[0], r.extrapolated[1]);
    ensure!((lhs + PI).norm() <= DIST_TOL, "pole pairing {lhs}");

    let cases = [
        (cint(0, 3), Profile::gaussian(int(1))),
        (cint(1, -2), Profile { coeffs: vec![cint(1, 0), cint(-1, 1), cint(0, 2)], s: rat(1, 2) }),
    ];
    for (lambda, profile) in cases {
        let model = build_model(&CSRep::from_lambdas(&[lambda.clone()]).map_err(|e| e.to_string())?);
        let f = make_equivariant_form(&model, &[profile.clone()]).map_err(|e| e.to_string())?;
        let r = sigma_pairing_check(&model, &f, &EPS).map_err(|e| e.to_string())?;
        let integral = common::block_integral(&profile.coeffs, &profile.s, &lambda).approx();
        let target = integral - 2.0 * PI / to_f64(&lambda) * to_f64(&profile.coeffs[0]);
        let got = Complex64::new(r.extrapolated[0], r.extrapolated[1]);
        let err = (got - target).norm();
        ensure!(err <= DIST_TOL, "lambda = {lambda}: {got} vs {target}, error {err:e}");
    }
    Ok(())
}

/// 10. Headline volumes, exact.
fn headline_volumes() -> Outcome {
    for n in 1..=6usize {
        let v = volume(&HomSpaceSpec::Isotropic { n }).map_err(|e| e.to_string())?;
        ensure!(v.count == 1 << (n - 1), "isotropic {n}: count {}", v.count);
        ensure!(v.exact == common::two_pi_over_i(1 << (n - 1), v.exponent_m), "isotropic {n}: {}", v.exact);
    }
    for n in 2..=8usize {
        for r in (2..n).step_by(2) {
            let s = n - r;
            let v = volume(&HomSpaceSpec::Periplectic { r, s }).map_err(|e| e.to_string())?;
            let want = common::two_pi_over_i(common::binomial((n / 2) as u64, (r / 2) as u64), (r * s) as u32);
            ensure!(v.exact == want, "periplectic ({r}, {s}): {} vs {want}", v.exact);
        }
    }
    Ok(())
}

/// 11. Splitting chains.
fn splitting_chains() -> Outcome {
    let flag = splitting_chain_report(&ChainSpec::Flag { root_data: RootData::gl(3, 2, 2).map_err(|e| e.to_string())? })
        .map_err(|e| e.to_string())?;
    ensure!(flag.statement == "D is splitting in G", "flag statement {:?}", flag.statement);
    ensure!(flag.conclusion == Verdict::Splitting && flag.broken_at.is_none(), "flag chain broken");

    let p = splitting_chain_report(&ChainSpec::Periplectic { parts: vec![2, 2] }).map_err(|e| e.to_string())?;
    ensure!(p.statement == "P(2)^2 is splitting in P(4)", "periplectic statement {:?}", p.statement);
    ensure!(p.conclusion == Verdict::Splitting && p.broken_at.is_none(), "periplectic chain broken");
    for report in [&flag, &p] {
        ensure!(report.steps.iter().all(|s| s.splitting), "{}: a step is not splitting", report.chain);
        for step in &report.steps {
            if let Evidence::Volume { result, .. } = &step.evidence {
                ensure!(result.nonzero && !result.exact.is_zero(), "{} < {}: zero volume", step.sub, step.sup);
            }
        }
    }
    ensure!(p.steps.iter().any(|s| matches!(s.evidence, Evidence::Volume { .. })), "no volume step");
    Ok(())
}

fn main() {
    let criteria: [(&str, Option<f64>, fn() -> Outcome); 11] = [
        ("linear localization, exact", Some(10.0), linear_localization),
        ("one-block closed form", Some(0.1), closed_form),
        ("total derivatives vanish", Some(5.0), total_derivative),
        ("multiplicativity and scale invariance", Some(1.0), multiplicativity),
        ("pfaffian flip parity", Some(1.0), pfaffian_flips),
        ("isotropic counts", Some(10.0), isotropic_counts),
        ("periplectic counts and vanishing", Some(60.0), periplectic_theorem),
        ("flag Weyl ratio", Some(5.0), flag_ratio),
        ("regularized distribution identities", Some(30.0), distributions),
        ("headline volumes", None, headline_volumes),
        ("splitting chains", Some(10.0), splitting_chains),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(()), Some(b)) if elapsed > Duration::from_secs_f64(*b) => Err(format!("took longer than {b} s")),
            (o, _) => o,
        };
        let time = format!("{:.3} s", elapsed.as_secs_f64());
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({time})", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({time}): {e}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
