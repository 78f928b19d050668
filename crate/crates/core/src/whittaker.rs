//! Spherical Whittaker values on torus cocharacters (Casselman–Shalika).
//!
//! `W⁰(ϖ^λ) = δ_B^{1/2}(ϖ^λ) · χ_λ(A)` for dominant `λ` and zero otherwise,
//! where `δ_B^{1/2}(ϖ^λ) = q^{-⟨ρ,λ⟩}` and `χ_λ` is the character of the dual
//! group. `Sp(2n)` pairs with `SO(2n+1)` (type C with dual type B) and
//! `GL(n)` with itself (type A).

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::characters::{satake_vars, CharacterCache};
use crate::error::{Error, Result};
use crate::rootdata::{pairing2, root_datum, CartanType, RootDatum, Weight};
use crate::symalg::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Sp2n,
    GLn,
}

impl Group {
    /// Root datum of the group itself (used for the modulus character).
    pub fn group_type(self) -> CartanType {
        match self {
            Group::Sp2n => CartanType::C,
            Group::GLn => CartanType::A,
        }
    }

    /// Root datum of the dual group (used for the character).
    pub fn dual_type(self) -> CartanType {
        match self {
            Group::Sp2n => CartanType::B,
            Group::GLn => CartanType::A,
        }
    }

    /// Rank of the datum for the group with `n` torus coordinates.
    pub fn datum_rank(self, n: usize) -> usize {
        match self {
            Group::Sp2n => n,
            Group::GLn => n.saturating_sub(1),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Sp2n => write!(f, "sp2n"),
            Group::GLn => write!(f, "gln"),
        }
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sp2n" | "sp" => Ok(Group::Sp2n),
            "gln" | "gl" => Ok(Group::GLn),
            other => Err(Error::Usage(format!("unknown group `{other}`"))),
        }
    }
}

/// `W⁰(ϖ^λ) = q^{q_exponent2 / 2} · char_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerValue {
    pub q_exponent2: i64,
    pub char_part: LaurentPoly,
    pub is_zero: bool,
}

impl WhittakerValue {
    fn zero(dim: usize) -> Self {
        WhittakerValue {
            q_exponent2: 0,
            char_part: LaurentPoly::zero(&satake_vars(dim)),
            is_zero: true,
        }
    }
}

/// `⟨ρ_group, λ⟩`, so that `δ_B^{1/2}(ϖ^λ) = q^{-⟨ρ,λ⟩}`.
pub fn modulus_half_exponent(group_datum: &RootDatum, coweight: &Weight) -> Result<Rational64> {
    group_datum.check_len(coweight)?;
    Ok(Rational64::new(pairing2(&group_datum.rho2, coweight)?, 4))
}

pub fn cs_whittaker_value(
    group: Group,
    n: usize,
    lambda: &Weight,
    cache: &CharacterCache,
) -> Result<WhittakerValue> {
    if n == 0 {
        return Err(Error::UnsupportedRank {
            cartan: group.dual_type().letter(),
            rank: 0,
        });
    }
    let rank = group.datum_rank(n);
    let group_datum = root_datum(group.group_type(), rank)?;
    let dual = root_datum(group.dual_type(), rank)?;
    group_datum.check_len(lambda)?;
    if !lambda.is_integral() {
        return Err(Error::NotIntegral(lambda.0.clone()));
    }
    if !group_datum.is_dominant(lambda)? {
        return Ok(WhittakerValue::zero(n));
    }
    let half = modulus_half_exponent(&group_datum, lambda)?;
    let doubled = half * 2;
    debug_assert!(doubled.is_integer());
    Ok(WhittakerValue {
        q_exponent2: -doubled.to_integer(),
        char_part: cache.character(&dual, lambda)?.as_ref().clone(),
        is_zero: false,
    })
}
