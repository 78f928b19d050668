use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::{check_highest_weight, satake_vars};
use crate::error::{Error, Result};
use crate::rootdata::{pairing2, RootDatum, Weight};
use crate::symalg::LaurentPoly;

const MAX_ORACLE_RANK: usize = 2;
const MAX_ORACLE_HEIGHT: i64 = 12;
const MAX_ORACLE_WEIGHTS: usize = 5_000;

/// Character by Freudenthal's multiplicity recursion
///
/// `(|λ+ρ|² - |μ+ρ|²) m(μ) = 2 Σ_{α>0} Σ_{k≥1} (μ+kα, α) m(μ+kα)`,
///
/// walking down from `λ` one simple root at a time. Candidates are kept only
/// if their dominant conjugate lies below `λ` (the weight set of an
/// irreducible module is saturated), which keeps every left-hand factor
/// positive. Capped at rank 2 and doubled height 12.
pub fn character_oracle(datum: &RootDatum, lambda: &Weight) -> Result<LaurentPoly> {
    check_highest_weight(datum, lambda)?;
    if datum.rank > MAX_ORACLE_RANK {
        return Err(Error::OracleBudgetExceeded(format!(
            "rank {} exceeds {MAX_ORACLE_RANK}",
            datum.rank
        )));
    }
    let height: i64 = lambda.0.iter().map(|c| c.abs()).sum();
    if height > MAX_ORACLE_HEIGHT {
        return Err(Error::OracleBudgetExceeded(format!(
            "doubled height {height} exceeds {MAX_ORACLE_HEIGHT}"
        )));
    }

    let rho = &datum.rho2;
    let top = pairing2(&lambda.add(rho), &lambda.add(rho))?;
    let max_k = 2 * height + 2;

    let mut mult: BTreeMap<Weight, BigRational> = BTreeMap::new();
    mult.insert(lambda.clone(), BigRational::from_integer(1.into()));
    let mut level = vec![lambda.clone()];

    while !level.is_empty() {
        let mut next: Vec<Weight> = Vec::new();
        for mu in &level {
            for alpha in &datum.simple_roots {
                let cand = mu.sub(alpha);
                if mult.contains_key(&cand) || next.contains(&cand) {
                    continue;
                }
                let dominant = datum.dominant_conjugate(&cand)?;
                let below = datum
                    .simple_root_coords(&lambda.sub(&dominant))?
                    .is_some_and(|c| c.iter().all(|&x| x >= 0));
                if below {
                    next.push(cand);
                }
            }
        }
        for mu in &next {
            let mut rhs = BigRational::zero();
            for alpha in &datum.positive_roots {
                for k in 1..=max_k {
                    let up = mu.add(&alpha.scaled(k));
                    if let Some(m) = mult.get(&up) {
                        rhs += m * BigRational::from_integer(pairing2(&up, alpha)?.into());
                    }
                }
            }
            let lhs = top - pairing2(&mu.add(rho), &mu.add(rho))?;
            if lhs <= 0 {
                return Err(Error::OracleBudgetExceeded(format!(
                    "non-positive Freudenthal denominator at {mu}"
                )));
            }
            let m = rhs * BigRational::from_integer(2.into())
                / BigRational::from_integer(lhs.into());
            mult.insert(mu.clone(), m);
        }
        if mult.len() > MAX_ORACLE_WEIGHTS {
            return Err(Error::OracleBudgetExceeded("too many weights".into()));
        }
        level = next;
    }

    LaurentPoly::from_terms(
        &satake_vars(datum.dim()),
        mult.into_iter()
            .map(|(w, m)| (w.0.iter().map(|&c| (c / 2) as i32).collect(), m)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::weyl_character;
    use crate::rootdata::{build_root_datum, CartanType};
    use crate::symalg::rat;

    #[test]
    fn small_cases() {
        let b1 = build_root_datum(CartanType::B, 1).unwrap();
        let v = satake_vars(1);
        let expected =
            LaurentPoly::from_terms(&v, [(vec![1], rat(1)), (vec![0], rat(1)), (vec![-1], rat(1))])
                .unwrap();
        assert_eq!(character_oracle(&b1, &Weight::first_fundamental(1, 1)).unwrap(), expected);

        let b2 = build_root_datum(CartanType::B, 2).unwrap();
        let trace = character_oracle(&b2, &Weight::first_fundamental(2, 1)).unwrap();
        assert_eq!(trace.to_string(), "a1 + a2 + 1 + a2^-1 + a1^-1");

        let lam = Weight::first_fundamental(2, 2);
        assert_eq!(
            character_oracle(&b2, &lam).unwrap(),
            weyl_character(&b2, &lam).unwrap()
        );
    }

    #[test]
    fn other_types_and_weights() {
        let c2 = build_root_datum(CartanType::C, 2).unwrap();
        let a2 = build_root_datum(CartanType::A, 2).unwrap();
        let b2 = build_root_datum(CartanType::B, 2).unwrap();
        for (d, lam) in [
            (&c2, Weight::from_integral(&[1, 1])),
            (&c2, Weight::from_integral(&[2, 1])),
            (&a2, Weight::from_integral(&[2, 1, 0])),
            (&b2, Weight::from_integral(&[1, 1])),
            (&b2, Weight::from_integral(&[2, 1])),
        ] {
            assert_eq!(
                character_oracle(d, &lam).unwrap(),
                weyl_character(d, &lam).unwrap(),
                "{:?} {lam}",
                d.cartan_type
            );
        }
    }

    #[test]
    fn budget() {
        let b3 = build_root_datum(CartanType::B, 3).unwrap();
        assert!(matches!(
            character_oracle(&b3, &Weight::first_fundamental(3, 1)),
            Err(Error::OracleBudgetExceeded(_))
        ));
        let b1 = build_root_datum(CartanType::B, 1).unwrap();
        assert!(matches!(
            character_oracle(&b1, &Weight::first_fundamental(1, 7)),
            Err(Error::OracleBudgetExceeded(_))
        ));
    }
}
