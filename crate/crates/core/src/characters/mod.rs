//! Weyl characters at Satake parameters.
//!
//! The trusted route is the alternant ratio `A(λ+ρ) / A(ρ)`, computed in the
//! half-power variables `b_i = a_i^{1/2}` (exponents are the doubled
//! coordinates) and rewritten in `a_i` after a parity check. Freudenthal's
//! multiplicity recursion and brute-force complete homogeneous sums serve as
//! independent oracles.

mod cache;
mod freudenthal;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rootdata::{pairing2, RootDatum, Weight};
use crate::symalg::{rat, var_names, LaurentPoly};

pub use cache::{CacheStats, CharacterCache, CharacterKey, CACHE_SCHEMA_VERSION};
pub use freudenthal::character_oracle;

/// Satake variables `a1..an`.
pub fn satake_vars(dim: usize) -> Vec<String> {
    var_names("a", dim)
}

/// Square-root variables `b1..bn`, `b_i^2 = a_i`.
pub fn half_vars(dim: usize) -> Vec<String> {
    var_names("b", dim)
}

fn exps_of(w: &Weight) -> Vec<i32> {
    w.0.iter().map(|&c| c as i32).collect()
}

/// `Σ_w sgn(w) b^{w·μ}` over the whole Weyl group.
pub fn alternant(datum: &RootDatum, w8: &Weight) -> Result<LaurentPoly> {
    let terms = datum.weyl_orbit_terms(w8)?;
    LaurentPoly::from_terms(
        &half_vars(datum.dim()),
        terms
            .into_iter()
            .map(|(sign, image)| (exps_of(&image), rat(sign as i64))),
    )
}

/// The factors `b^{α} - b^{-α}` (α in true coordinates) of the Weyl
/// denominator, one per positive root. Their product is `alternant(ρ)`.
pub fn weyl_denominator_factors(datum: &RootDatum) -> Result<Vec<LaurentPoly>> {
    let vars = half_vars(datum.dim());
    datum
        .positive_roots
        .iter()
        .map(|alpha| {
            let half: Vec<i32> = alpha.0.iter().map(|&c| (c / 2) as i32).collect();
            let neg: Vec<i32> = half.iter().map(|c| -c).collect();
            LaurentPoly::from_terms(&vars, [(half, rat(1)), (neg, rat(-1))])
        })
        .collect()
}

fn check_highest_weight(datum: &RootDatum, lambda: &Weight) -> Result<()> {
    datum.check_len(lambda)?;
    if !lambda.is_integral() {
        return Err(Error::NotIntegral(lambda.0.clone()));
    }
    if !datum.is_dominant(lambda)? {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    Ok(())
}

/// Character of the irreducible representation of highest weight `λ` of the
/// group with root datum `datum`, as a Laurent polynomial in `a1..an`.
///
/// The numerator alternant is divided exactly by the Weyl denominator one
/// positive-root factor at a time; the product of the factors equals
/// `alternant(ρ)`, so the quotient is the same as a single exact division.
pub fn weyl_character(datum: &RootDatum, lambda: &Weight) -> Result<LaurentPoly> {
    check_highest_weight(datum, lambda)?;
    let mut quotient = alternant(datum, &lambda.add(&datum.rho2))?;
    for factor in weyl_denominator_factors(datum)? {
        quotient = quotient.exact_div(&factor)?;
    }
    quotient.halve_exponents(&satake_vars(datum.dim()))
}

/// Weyl dimension formula `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dimension(datum: &RootDatum, lambda: &Weight) -> Result<BigInt> {
    check_highest_weight(datum, lambda)?;
    let shifted = lambda.add(&datum.rho2);
    let mut acc = BigRational::one();
    for alpha in &datum.positive_roots {
        let num = pairing2(&shifted, alpha)?;
        let den = pairing2(&datum.rho2, alpha)?;
        acc *= BigRational::new(num.into(), den.into());
    }
    debug_assert!(acc.is_integer());
    Ok(acc.to_integer())
}

/// Complete homogeneous symmetric polynomial `h_m(a1..an)` by enumerating
/// every exponent vector of total degree `m`.
pub fn hom_sym(n_vars: usize, m: i64) -> Result<LaurentPoly> {
    if m < 0 {
        return Err(Error::NegativeDegree(m));
    }
    let vars = satake_vars(n_vars);
    let mut terms = Vec::new();
    let mut current = vec![0i32; n_vars];
    fn fill(slot: usize, left: i32, current: &mut Vec<i32>, out: &mut Vec<(Vec<i32>, BigRational)>) {
        if slot + 1 == current.len() {
            current[slot] = left;
            out.push((current.clone(), rat(1)));
            return;
        }
        for k in 0..=left {
            current[slot] = k;
            fill(slot + 1, left - k, current, out);
        }
    }
    if n_vars == 0 {
        return Ok(if m == 0 {
            LaurentPoly::one(&vars)
        } else {
            LaurentPoly::zero(&vars)
        });
    }
    fill(0, m as i32, &mut current, &mut terms);
    LaurentPoly::from_terms(&vars, terms)
}

/// True if every coefficient is a non-negative integer.
pub fn has_natural_coefficients(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| c.is_integer() && *c >= BigRational::zero())
}
