//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use sp2n_zeta::characters::{
    alternant, character_oracle, weyl_character, weyl_dimension, CharacterCache,
};
use sp2n_zeta::euler::{factorization_check, EulerInput};
use sp2n_zeta::rootdata::{build_root_datum, CartanType, Weight};
use sp2n_zeta::symalg::{rat, LaurentPoly, TruncSeries};
use sp2n_zeta::whittaker::{cs_whittaker_value, Group};
use sp2n_zeta::zeta::{
    check_sp2n_series, local_zeta_series, standard_lfactor_poly, verify_gln_identity,
    verify_sp2n_identity, ChiPowerComparison,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn sp2n_identity() -> Outcome {
    let start = Instant::now();
    let cache = CharacterCache::in_memory();
    for n in 1..=3 {
        let r = verify_sp2n_identity(n, 12, &cache).map_err(|e| e.to_string())?;
        ensure(r.passed && r.coefficient_diff.is_none(), || {
            format!("n={n}: passed={} diff={:?}", r.passed, r.coefficient_diff)
        })?;
        ensure(
            r.chi_power_comparison == Some(ChiPowerComparison::MatchesChiSquared),
            || format!("n={n}: {:?}", r.chi_power_comparison),
        )?;
    }
    let t = within(Duration::from_secs(60), start)?;
    Ok(format!("n=1,2,3 N=12 exact, matches_chi_squared, {t:.2?}"))
}

fn gln_identity() -> Outcome {
    let start = Instant::now();
    let cache = CharacterCache::in_memory();
    for n in 1..=4 {
        let r = verify_gln_identity(n, 10, &cache).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("n={n}: {:?}", r.coefficient_diff))?;
    }
    let t = within(Duration::from_secs(10), start)?;
    Ok(format!("n=1..4 N=10 exact, {t:.2?}"))
}

fn characters() -> Outcome {
    let b1 = build_root_datum(CartanType::B, 1).unwrap();
    let b2 = build_root_datum(CartanType::B, 2).unwrap();
    let cases = (0..=6)
        .map(|m| (&b1, Weight::first_fundamental(1, m)))
        .chain((0..=4).map(|m| (&b2, Weight::first_fundamental(2, m))));
    let mut checked = 0;
    for (d, lam) in cases {
        let a = weyl_character(d, &lam).map_err(|e| e.to_string())?;
        let b = character_oracle(d, &lam).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{}{} {lam}: formula and oracle differ", d.cartan_type, d.rank))?;
        checked += 1;
    }
    let b3 = build_root_datum(CartanType::B, 3).unwrap();
    for (d, n, m, want) in [(&b2, 2, 1, 5), (&b2, 2, 2, 14), (&b2, 2, 3, 30), (&b3, 3, 1, 7)] {
        let got = weyl_dimension(d, &Weight::first_fundamental(n, m)).unwrap();
        let k = 2 * n as i64 + 1;
        let sym = binom(k - 1 + m, m) - binom(k - 1 + m - 2, m - 2);
        ensure(got == BigInt::from(want) && sym == got, || {
            format!("dim B{n} {m}w1: {got}, expected {want}, sym difference {sym}")
        })?;
    }
    Ok(format!("{checked} characters equal the oracle; dims 5, 14, 30, 7"))
}

fn whittaker_support() -> Outcome {
    let cache = CharacterCache::in_memory();
    let mut zeros = 0;
    let mut total = 0;
    for group in [Group::Sp2n, Group::GLn] {
        for n in 1..=3usize {
            let dominant = build_root_datum(group.group_type(), group.datum_rank(n)).unwrap();
            let mut coords = vec![-4i64; n];
            loop {
                let lam = Weight::from_integral(&coords);
                let w = cs_whittaker_value(group, n, &lam, &cache).map_err(|e| e.to_string())?;
                let dom = dominant.is_dominant(&lam).unwrap();
                ensure(w.is_zero == !dom, || format!("{group} n={n} {lam}: is_zero={}", w.is_zero))?;
                if w.is_zero {
                    ensure(w.char_part.is_zero(), || format!("{group} {lam}: nonzero part"))?;
                    zeros += 1;
                }
                total += 1;
                // odometer over [-4, 4]^n
                let mut i = 0;
                while i < n && coords[i] == 4 {
                    coords[i] = -4;
                    i += 1;
                }
                if i == n {
                    break;
                }
                coords[i] += 1;
            }
            let w = cs_whittaker_value(group, n, &Weight::zero(n), &cache).unwrap();
            ensure(!w.is_zero && w.q_exponent2 == 0 && w.char_part.is_one(), || {
                format!("{group} n={n}: value at 0 is not 1")
            })?;
        }
    }
    Ok(format!("{zeros} of {total} weights non-dominant and zero; value 1 at origin"))
}

fn numeric_factorization() -> Outcome {
    let start = Instant::now();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/primes_n2.json");
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let input = EulerInput::from_json(&text).map_err(|e| e.to_string())?;
    let data = input.to_data().map_err(|e| e.to_string())?;
    ensure(input.n == 2 && data.iter().map(|d| d.q).eq([2, 3, 5]), || {
        "shipped file is not the q = 2, 3, 5 rank-2 example".into()
    })?;
    let cache = CharacterCache::in_memory();
    let r = factorization_check(&data, Complex64::new(2.0, 0.0), 1e-10, &cache)
        .map_err(|e| e.to_string())?;
    ensure(r.abs_err_chi2 < 1e-9, || format!("abs_err_chi2 = {:e}", r.abs_err_chi2))?;
    let t = within(Duration::from_secs(5), start)?;
    Ok(format!(
        "abs_err_chi2 = {:.3e} (abs_err_chi = {:.3e}), {t:.2?}",
        r.abs_err_chi2, r.abs_err_chi
    ))
}

fn mutation_sensitivity() -> Outcome {
    let cache = CharacterCache::in_memory();
    let order = 8;
    let mut planted = 0;
    for n in 1..=3 {
        let z = local_zeta_series(n, order, &cache).map_err(|e| e.to_string())?;
        let b = build_root_datum(CartanType::B, n).unwrap();

        // replace the coefficient at x^2 with the one at x^1
        let mut swapped = z.clone();
        let chi1 = cache.character(&b, &Weight::first_fundamental(n, 1)).unwrap();
        swapped.series.set_coeff(2, chi1.as_ref().clone()).unwrap();
        let r = check_sp2n_series(n, &swapped, None).map_err(|e| e.to_string())?;
        ensure(!r.passed && r.first_failure_order == Some(2), || {
            format!("n={n} swap: passed={} first={:?}", r.passed, r.first_failure_order)
        })?;
        planted += 1;

        for k in 0..=order {
            let mut bumped = z.clone();
            let c = bumped.series.coeff(k).try_add(&LaurentPoly::one(bumped.series.coeff_vars())).unwrap();
            bumped.series.set_coeff(k, c).unwrap();
            let r = check_sp2n_series(n, &bumped, None).map_err(|e| e.to_string())?;
            ensure(!r.passed && r.first_failure_order == Some(k), || {
                format!("n={n} bump at {k}: passed={} first={:?}", r.passed, r.first_failure_order)
            })?;
            planted += 1;
        }
    }
    Ok(format!("{planted} planted faults all detected at the right order"))
}

fn coeff() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    let vars = vec!["a1".to_string(), "a2".to_string()];
    prop::collection::vec(((-3i32..=3, -3i32..=3), coeff()), 0..=5).prop_map(move |t| {
        LaurentPoly::from_terms(&vars, t.into_iter().map(|((a, b), c)| (vec![a, b], c))).unwrap()
    })
}

const CASES: u32 = 256;

fn run_prop<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Outcome {
    let vars = vec!["a1".to_string(), "a2".to_string()];
    run_prop("ring", (poly(), poly(), poly()), |(p, q, r)| {
        let pq = p.try_mul(&q).unwrap();
        prop_assert_eq!(&pq, &q.try_mul(&p).unwrap());
        prop_assert_eq!(pq.try_mul(&r).unwrap(), p.try_mul(&q.try_mul(&r).unwrap()).unwrap());
        prop_assert_eq!(
            p.try_mul(&q.try_add(&r).unwrap()).unwrap(),
            pq.try_add(&p.try_mul(&r).unwrap()).unwrap()
        );
        Ok(())
    })?;
    run_prop("div", (poly(), poly().prop_filter("nonzero", |d| !d.is_zero())), |(p, d)| {
        prop_assert_eq!(p.try_mul(&d).unwrap().exact_div(&d).unwrap(), p);
        Ok(())
    })?;
    let v2 = vars.clone();
    let unit = ((-2i32..=2, -2i32..=2, coeff().prop_filter("unit", |c| *c != rat(0))), prop::collection::vec(poly(), 4));
    run_prop("inverse", unit, move |((a, b, c0), rest)| {
        let mut coeffs = vec![LaurentPoly::monomial(&v2, vec![a, b], c0).unwrap()];
        coeffs.extend(rest);
        let s = TruncSeries::from_coeffs("x", coeffs).unwrap();
        prop_assert_eq!(s.try_mul(&s.inverse().unwrap()).unwrap(), TruncSeries::one("x", 4, &v2));
        Ok(())
    })?;

    let b2 = build_root_datum(CartanType::B, 2).unwrap();
    run_prop("alternant", (prop::collection::vec(-7i64..=7, 2), 0usize..8), |(c, idx)| {
        let w = &b2.weyl_elements[idx];
        let mu = Weight(c);
        prop_assert_eq!(
            alternant(&b2, &w.act(&mu)).unwrap(),
            alternant(&b2, &mu).unwrap().scale(&rat(w.sign as i64))
        );
        Ok(())
    })?;

    // Weyl invariance of every character the zeta series uses
    let cache = CharacterCache::in_memory();
    let mut invariant = 0;
    for n in 1..=3 {
        let d = build_root_datum(CartanType::B, n).unwrap();
        for m in 0..=6 {
            let chi = cache.character(&d, &Weight::first_fundamental(n, m)).unwrap();
            for w in &d.weyl_elements {
                let mut img = chi.permute_vars(&w.perm);
                for (i, &s) in w.signs.iter().enumerate() {
                    if s < 0 {
                        img = img.invert_var(w.perm[i]);
                    }
                }
                ensure(img == *chi, || format!("B{n} {m}w1 not invariant"))?;
            }
            invariant += 1;
        }
    }

    for n in 1..=5 {
        let det = standard_lfactor_poly(n).unwrap();
        let top = 2 * n + 1;
        for k in 0..=top {
            ensure(det.coeff(k) == det.coeff(top - k).neg(), || {
                format!("n={n}: L-factor not antipalindromic at {k}")
            })?;
        }
    }

    // warm re-runs read back byte-identical records
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cold = CharacterCache::on_disk(dir.path());
    let cold_report = verify_sp2n_identity(2, 8, &cold).map_err(|e| e.to_string())?;
    let warm = CharacterCache::on_disk(dir.path());
    let warm_report = verify_sp2n_identity(2, 8, &warm).map_err(|e| e.to_string())?;
    ensure(
        serde_json::to_string(&cold_report).unwrap() == serde_json::to_string(&warm_report).unwrap(),
        || "warm report differs".into(),
    )?;
    for m in 0..=8 {
        let lam = Weight::first_fundamental(2, m);
        let a = cold.character(&b2, &lam).unwrap().to_record();
        let b = warm.character(&b2, &lam).unwrap().to_record();
        ensure(a == b, || format!("cache record differs at {m}w1"))?;
    }
    ensure(warm.stats().unwrap().files() > 0, || "nothing cached on disk".into())?;

    Ok(format!(
        "ring/div/inverse/alternant {CASES} cases each; {invariant} characters invariant; \
         L-factors antipalindromic; cache byte-identical"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 sp2n local identity", sp2n_identity),
        ("2 gln hecke identity", gln_identity),
        ("3 character correctness", characters),
        ("4 whittaker support and normalization", whittaker_support),
        ("5 numeric factorization", numeric_factorization),
        ("6 mutation sensitivity", mutation_sensitivity),
        ("7 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match std::panic::catch_unwind(f) {
            Ok(Ok(detail)) => println!("PASS criterion {name}: {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL criterion {name}: panicked");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
