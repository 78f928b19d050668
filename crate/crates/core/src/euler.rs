//! Numeric local zeta integrals and finite Euler products over synthetic
//! unramified data.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{satake_vars, weyl_dimension, CharacterCache};
use crate::error::{Error, Result};
use crate::rootdata::{root_datum, CartanType, Weight};
use crate::zeta::{abelian_lfactor_poly, standard_lfactor_poly};

/// Largest admissible `|x| · max|eigenvalue|` in a local zeta sum.
pub const CONVERGENCE_RATIO: f64 = 0.9;
/// Hard cap on the number of terms of a local zeta sum.
pub const TERM_CAP: usize = 10_000;
/// Local factors whose denominator is smaller than this count as poles.
pub const POLE_DISTANCE: f64 = 1e-12;
const UNITARITY_TOL: f64 = 1e-12;

/// Per-prime unramified data: residue field size, Satake parameters and
/// `χ(ϖ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeData {
    pub q: u64,
    pub satake: Vec<Complex64>,
    pub chi: Complex64,
}

impl SatakeData {
    pub fn new(q: u64, satake: Vec<Complex64>, chi: Complex64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidSatake(format!("q = {q} must be at least 2")));
        }
        if satake.is_empty() {
            return Err(Error::InvalidSatake("no Satake parameters".into()));
        }
        if satake.iter().any(|a| a.norm() == 0.0) {
            return Err(Error::InvalidSatake(format!("zero Satake parameter at q = {q}")));
        }
        if (chi.norm() - 1.0).abs() > UNITARITY_TOL {
            return Err(Error::InvalidSatake(format!(
                "|chi(varpi)| = {} at q = {q} is not 1",
                chi.norm()
            )));
        }
        Ok(SatakeData { q, satake, chi })
    }

    pub fn rank(&self) -> usize {
        self.satake.len()
    }

    /// Largest absolute value among the eigenvalues of
    /// `A = diag(a, 1, a^-1)`.
    pub fn spectral_radius(&self) -> f64 {
        self.satake
            .iter()
            .flat_map(|a| [a.norm(), 1.0 / a.norm()])
            .fold(1.0, f64::max)
    }

    fn assignment(&self) -> HashMap<String, Complex64> {
        satake_vars(self.rank()).into_iter().zip(self.satake.iter().copied()).collect()
    }

    /// `q^{-z}`.
    fn q_pow_neg(&self, z: Complex64) -> Complex64 {
        (-z * (self.q as f64).ln()).exp()
    }
}

/// Value of a numerically summed local zeta integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalZeta {
    pub value: Complex64,
    pub terms: usize,
}

/// `Σ_{m≥0} χ_{mω₁}(A) x^m` with `x = χ(ϖ) q^{-(2s-1/2)}`.
///
/// `|χ_{mω₁}(A)| ≤ d_m R^m` with `d_m = dim V_{mω₁}` and `R` the spectral
/// radius of `A`, and `d_{m+1}/d_m` decreases in `m`, so with `r = R|x|` the
/// tail after term `M` is at most `d_{M+1} r^{M+1} / (1 - r d_{M+2}/d_{M+1})`.
/// Summation stops once that bound is below `tol`.
pub fn numeric_local_zeta(
    d: &SatakeData,
    s: Complex64,
    tol: f64,
    cache: &CharacterCache,
) -> Result<LocalZeta> {
    let n = d.rank();
    let x = d.chi * d.q_pow_neg(2.0 * s - 0.5);
    let ratio = d.spectral_radius() * x.norm();
    if ratio > CONVERGENCE_RATIO {
        return Err(Error::DivergenceGuard {
            ratio,
            limit: CONVERGENCE_RATIO,
        });
    }
    let datum = root_datum(CartanType::B, n)?;
    let dim = |m: usize| -> Result<f64> {
        let w = Weight::first_fundamental(n, m as i64);
        Ok(weyl_dimension(&datum, &w)?.to_f64().unwrap_or(f64::INFINITY))
    };
    // the number of terms depends only on dimensions, so the cap is
    // enforced before any character is built
    let mut terms = 0;
    loop {
        if terms >= TERM_CAP {
            return Err(Error::TermCapExceeded(TERM_CAP));
        }
        let (d1, d2) = (dim(terms + 1)?, dim(terms + 2)?);
        let step = ratio * d2 / d1;
        terms += 1;
        if step < 1.0 && d1 * ratio.powi(terms as i32) / (1.0 - step) < tol {
            break;
        }
    }

    let assignment = d.assignment();
    let mut total = Complex64::new(0.0, 0.0);
    let mut x_pow = Complex64::new(1.0, 0.0);
    for m in 0..terms {
        let chi = cache.character(&datum, &Weight::first_fundamental(n, m as i64))?;
        total += chi.eval(&assignment)? * x_pow;
        x_pow *= x;
    }
    Ok(LocalZeta {
        value: total,
        terms,
    })
}

/// Which partial L-function [`partial_l`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LKind {
    /// `L^S(2s - 1/2, π × χ)`.
    StandardTwisted,
    /// `L^S(4s - 1, χ)`.
    AbelianChi,
    /// `L^S(4s - 1, χ²)`.
    AbelianChi2,
}

/// Denominator of the local factor of `kind` at one prime.
fn local_denominator(d: &SatakeData, s: Complex64, kind: LKind) -> Result<Complex64> {
    let no_vars = HashMap::new();
    match kind {
        LKind::StandardTwisted => {
            let y = d.chi * d.q_pow_neg(2.0 * s - 0.5);
            standard_lfactor_poly(d.rank())?.eval(&d.assignment(), y)
        }
        LKind::AbelianChi | LKind::AbelianChi2 => {
            let power = if kind == LKind::AbelianChi { 1 } else { 2 };
            let y = d.q_pow_neg(4.0 * s - 1.0);
            let mut asg = no_vars;
            asg.insert("c".to_string(), d.chi);
            abelian_lfactor_poly(power)?.eval(&asg, y)
        }
    }
}

/// Finite Euler product of local factors of `kind`, multiplied in input
/// order.
pub fn partial_l(data: &[SatakeData], s: Complex64, kind: LKind) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for d in data {
        let den = local_denominator(d, s, kind)?;
        if den.norm() <= POLE_DISTANCE {
            return Err(Error::PoleProximity {
                q: d.q,
                magnitude: den.norm(),
            });
        }
        acc /= den;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationCheckResult {
    pub lhs: JsonComplex,
    pub rhs_chi2: JsonComplex,
    pub rhs_chi: JsonComplex,
    pub abs_err_chi2: f64,
    pub abs_err_chi: f64,
    /// `(q, terms)` per prime, in input order.
    pub terms_used: Vec<(u64, usize)>,
}

/// Product of numeric local zetas against `L^S(2s-1/2, π×χ) / L^S(4s-1, χ^k)`
/// for `k = 2` and `k = 1`.
pub fn factorization_check(
    data: &[SatakeData],
    s: Complex64,
    tol: f64,
    cache: &CharacterCache,
) -> Result<FactorizationCheckResult> {
    let locals = data
        .par_iter()
        .map(|d| numeric_local_zeta(d, s, tol, cache))
        .collect::<Result<Vec<_>>>()?;
    let lhs = locals
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, z| acc * z.value);
    let standard = partial_l(data, s, LKind::StandardTwisted)?;
    let rhs_chi2 = standard / partial_l(data, s, LKind::AbelianChi2)?;
    let rhs_chi = standard / partial_l(data, s, LKind::AbelianChi)?;
    Ok(FactorizationCheckResult {
        lhs: lhs.into(),
        rhs_chi2: rhs_chi2.into(),
        rhs_chi: rhs_chi.into(),
        abs_err_chi2: (lhs - rhs_chi2).norm(),
        abs_err_chi: (lhs - rhs_chi).norm(),
        terms_used: data.iter().zip(&locals).map(|(d, z)| (d.q, z.terms)).collect(),
    })
}

/// Seeded unitary Satake parameters and characters for the given primes.
pub fn synthetic_unitary_data(n: usize, primes: &[u64], seed: u64) -> Result<Vec<SatakeData>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit = || Complex64::from_polar(1.0, rng.random::<f64>() * TAU);
    primes
        .iter()
        .map(|&q| {
            let satake = (0..n).map(|_| unit()).collect();
            SatakeData::new(q, satake, unit())
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        JsonComplex { re: z.re, im: z.im }
    }
}

impl From<JsonComplex> for Complex64 {
    fn from(z: JsonComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub q: u64,
    pub satake: Vec<JsonComplex>,
    pub chi: JsonComplex,
}

/// Input file for the numeric factorization check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerInput {
    pub n: usize,
    pub primes: Vec<PrimeEntry>,
}

impl EulerInput {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Usage(format!("invalid input JSON: {e}")))
    }

    pub fn to_data(&self) -> Result<Vec<SatakeData>> {
        self.primes
            .iter()
            .map(|p| {
                if p.satake.len() != self.n {
                    return Err(Error::InvalidSatake(format!(
                        "prime {} has {} Satake parameters, rank is {}",
                        p.q,
                        p.satake.len(),
                        self.n
                    )));
                }
                SatakeData::new(p.q, p.satake.iter().map(|&z| z.into()).collect(), p.chi.into())
            })
            .collect()
    }

    pub fn from_data(n: usize, data: &[SatakeData]) -> Self {
        EulerInput {
            n,
            primes: data
                .iter()
                .map(|d| PrimeEntry {
                    q: d.q,
                    satake: d.satake.iter().map(|&z| z.into()).collect(),
                    chi: d.chi.into(),
                })
                .collect(),
        }
    }
}
