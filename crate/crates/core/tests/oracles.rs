//! Cross-checks against independent routes: brute-force weight enumeration,
//! series inversion, closed forms and numeric evaluation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;

use sp2n_zeta::characters::{
    character_oracle, hom_sym, satake_vars, weyl_character, weyl_dimension, CharacterCache,
};
use sp2n_zeta::euler::{numeric_local_zeta, synthetic_unitary_data, SatakeData};
use sp2n_zeta::rootdata::{build_root_datum, CartanType, Weight};
use sp2n_zeta::symalg::{rat, LaurentPoly, TruncSeries};
use sp2n_zeta::whittaker::{cs_whittaker_value, Group};
use sp2n_zeta::zeta::{local_zeta_series, standard_lfactor_poly};

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn assignment(d: &SatakeData) -> HashMap<String, Complex64> {
    satake_vars(d.rank()).into_iter().zip(d.satake.iter().copied()).collect()
}

#[test]
fn first_fundamental_dimensions_match_sym_difference() {
    for n in 1..=4 {
        let d = build_root_datum(CartanType::B, n).unwrap();
        let k = 2 * n as i64 + 1;
        for m in 0..=8 {
            let want = binom(k - 1 + m, m) - binom(k - 1 + m - 2, m - 2);
            let got = weyl_dimension(&d, &Weight::first_fundamental(n, m)).unwrap();
            assert_eq!(got, want, "B{n} m={m}");
        }
    }
}

#[test]
fn character_at_identity_is_dimension() {
    for n in 1..=3 {
        let d = build_root_datum(CartanType::B, n).unwrap();
        let ones: Vec<f64> = vec![1.0; n];
        for m in 0..=6 {
            let lam = Weight::first_fundamental(n, m);
            let chi = weyl_character(&d, &lam).unwrap();
            let sum: BigInt = chi.terms().map(|(_, c)| c.to_integer()).sum();
            assert_eq!(sum, weyl_dimension(&d, &lam).unwrap());
            let v = chi.eval_slice(&ones.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>());
            assert!((v.unwrap().re - sum.to_string().parse::<f64>().unwrap()).abs() < 1e-9);
        }
    }
}

#[test]
fn weyl_formula_agrees_with_weight_enumeration() {
    for (t, lams) in [
        (CartanType::B, vec![vec![1, 1], vec![2, 1], vec![3, 2], vec![1, 0]]),
        (CartanType::C, vec![vec![1, 1], vec![2, 0], vec![3, 1]]),
        (CartanType::A, vec![vec![2, 1, 0], vec![3, 1, -1], vec![2, 2, 0]]),
    ] {
        let d = build_root_datum(t, 2).unwrap();
        for lam in lams {
            let w = Weight::from_integral(&lam);
            assert_eq!(weyl_character(&d, &w).unwrap(), character_oracle(&d, &w).unwrap());
        }
    }
}

/// Coefficients of `(1 - x²) · det(1 - A x)^{-1}` by series inversion.
fn inverse_route(n: usize, order: usize) -> TruncSeries {
    let vars = satake_vars(n);
    let det = standard_lfactor_poly(n).unwrap();
    let inv = det.to_series(order).inverse().unwrap();
    let mut num = vec![LaurentPoly::zero(&vars); order + 1];
    num[0] = LaurentPoly::one(&vars);
    if order >= 2 {
        num[2] = LaurentPoly::constant(&vars, rat(-1));
    }
    let num = TruncSeries::from_coeffs("y", num).unwrap();
    num.try_mul(&inv).unwrap()
}

#[test]
fn zeta_coefficients_match_inverse_route() {
    let cache = CharacterCache::in_memory();
    for (n, order) in [(1, 10), (2, 8), (3, 6)] {
        let z = local_zeta_series(n, order, &cache).unwrap();
        let other = inverse_route(n, order);
        for m in 0..=order {
            assert_eq!(z.series.coeff(m), other.coeff(m), "n={n} m={m}");
        }
    }
}

#[test]
fn gln_whittaker_coefficients_are_complete_homogeneous() {
    let cache = CharacterCache::in_memory();
    for n in 1..=3 {
        for m in 0..=5 {
            let w = cs_whittaker_value(Group::GLn, n, &Weight::first_fundamental(n, m), &cache)
                .unwrap();
            assert_eq!(w.char_part, hom_sym(n, m).unwrap());
            assert_eq!(w.q_exponent2, -(m * (n as i64 - 1)));
        }
    }
}

#[test]
fn numeric_zeta_matches_symbolic_truncation() {
    let cache = CharacterCache::in_memory();
    let order = 40;
    let z = local_zeta_series(2, order, &cache).unwrap();
    let data = synthetic_unitary_data(2, &[2, 3], 7).unwrap();
    let s = Complex64::new(2.0, 0.0);
    for d in &data {
        let asg = assignment(d);
        let x = d.chi * Complex64::new(d.q as f64, 0.0).powc(-(2.0 * s - 0.5));
        let mut sym = Complex64::new(0.0, 0.0);
        for m in (0..=order).rev() {
            sym = sym * x + z.series.coeff(m).eval(&asg).unwrap();
        }
        let num = numeric_local_zeta(d, s, 1e-13, &cache).unwrap().value;
        assert!((num - sym).norm() < 1e-10, "q={}: {num} vs {sym}", d.q);
    }
}

#[test]
fn numeric_zeta_matches_rational_closed_form() {
    let cache = CharacterCache::in_memory();
    let tol = 1e-11;
    for n in 1..=3 {
        let data = synthetic_unitary_data(n, &[2, 3, 5, 7], 100 + n as u64).unwrap();
        for s in [Complex64::new(1.5, 0.0), Complex64::new(2.0, 1.0)] {
            for d in &data {
                let x = d.chi * Complex64::new(d.q as f64, 0.0).powc(-(2.0 * s - 0.5));
                let det = standard_lfactor_poly(n).unwrap().eval(&assignment(d), x).unwrap();
                let closed = (Complex64::new(1.0, 0.0) - x * x) / det;
                let num = numeric_local_zeta(d, s, tol, &cache).unwrap().value;
                assert!((num - closed).norm() < 10.0 * tol, "n={n} q={}", d.q);
            }
        }
    }
}

#[test]
fn whittaker_zero_weight_is_one() {
    let cache = CharacterCache::in_memory();
    for n in 1..=3 {
        for g in [Group::Sp2n, Group::GLn] {
            let w = cs_whittaker_value(g, n, &Weight::zero(n), &cache).unwrap();
            assert!(!w.is_zero && w.q_exponent2 == 0 && w.char_part.is_one());
        }
    }
}
