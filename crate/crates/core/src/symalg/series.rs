use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::Zero;

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Power series in one formal variable, truncated after order `N`, with
/// Laurent-polynomial coefficients. Always stores exactly `N + 1`
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    var: String,
    coeffs: Vec<LaurentPoly>,
}

impl TruncSeries {
    pub fn zero(var: &str, order: usize, coeff_vars: &[String]) -> Self {
        TruncSeries {
            var: var.to_string(),
            coeffs: vec![LaurentPoly::zero(coeff_vars); order + 1],
        }
    }

    pub fn one(var: &str, order: usize, coeff_vars: &[String]) -> Self {
        let mut s = Self::zero(var, order, coeff_vars);
        s.coeffs[0] = LaurentPoly::one(coeff_vars);
        s
    }

    /// Builds a series of order `coeffs.len() - 1`.
    pub fn from_coeffs(var: &str, coeffs: Vec<LaurentPoly>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::SeriesMismatch("a series needs at least one coefficient".into()))?;
        for c in &coeffs[1..] {
            first.check_vars(c)?;
        }
        Ok(TruncSeries {
            var: var.to_string(),
            coeffs,
        })
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff_vars(&self) -> &[String] {
        self.coeffs[0].vars()
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// Replaces one coefficient (used to plant deliberate faults in tests and
    /// mutation checks).
    pub fn set_coeff(&mut self, k: usize, value: LaurentPoly) -> Result<()> {
        self.coeffs[0].check_vars(&value)?;
        self.coeffs[k] = value;
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::SeriesMismatch(format!(
                "series variables `{}` and `{}`",
                self.var, other.var
            )));
        }
        if self.order() != other.order() {
            return Err(Error::SeriesMismatch(format!(
                "truncation orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        self.coeffs[0].check_vars(&other.coeffs[0])
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(TruncSeries {
            var: self.var.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_sub(b))
            .collect::<Result<_>>()?;
        Ok(TruncSeries {
            var: self.var.clone(),
            coeffs,
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = LaurentPoly::zero(self.coeff_vars());
            for j in 0..=k {
                let (a, b) = (&self.coeffs[j], &other.coeffs[k - j]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.try_add(&a.try_mul(b)?)?;
            }
            coeffs.push(acc);
        }
        Ok(TruncSeries {
            var: self.var.clone(),
            coeffs,
        })
    }

    /// Multiplicative inverse modulo `var^(N+1)`. The constant coefficient
    /// must be a single monomial (a unit of the Laurent ring).
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.len() != 1 {
            return Err(Error::NonUnitConstantTerm);
        }
        let (e, c) = c0.leading_term().expect("one term");
        let inv0 = LaurentPoly::monomial(
            c0.vars(),
            e.iter().map(|k| -k).collect(),
            c.recip(),
        )?;
        let n = self.order();
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = LaurentPoly::zero(c0.vars());
            for j in 1..=k {
                if self.coeffs[j].is_zero() || out[k - j].is_zero() {
                    continue;
                }
                acc = acc.try_add(&self.coeffs[j].try_mul(&out[k - j])?)?;
            }
            out.push(acc.try_mul(&inv0)?.neg());
        }
        Ok(TruncSeries {
            var: self.var.clone(),
            coeffs: out,
        })
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }

    pub fn map_coeffs<F>(&self, f: F) -> Result<Self>
    where
        F: FnMut(&LaurentPoly) -> Result<LaurentPoly>,
    {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(&self.var, coeffs)
    }
}

/// Polynomial in one variable with Laurent-polynomial coefficients, e.g.
/// `det(1 - A y)`. Trailing zero coefficients are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<LaurentPoly>,
}

impl UniPoly {
    pub fn new(var: &str, mut coeffs: Vec<LaurentPoly>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::SeriesMismatch("a polynomial needs a coefficient list".into()))?
            .clone();
        for c in &coeffs {
            first.check_vars(c)?;
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(UniPoly {
            var: var.to_string(),
            coeffs,
        })
    }

    /// `1 - coeff * var`.
    pub fn one_minus(var: &str, coeff: LaurentPoly) -> Result<Self> {
        let one = LaurentPoly::one(coeff.vars());
        Self::new(var, vec![one, coeff.neg()])
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff_vars(&self) -> &[String] {
        self.coeffs[0].vars()
    }

    pub fn coeff(&self, k: usize) -> LaurentPoly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.coeff_vars()))
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.var != other.var {
            return Err(Error::SeriesMismatch(format!(
                "polynomial variables `{}` and `{}`",
                self.var, other.var
            )));
        }
        let vars = self.coeff_vars().to_vec();
        let mut coeffs = vec![LaurentPoly::zero(&vars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Self::new(&self.var, coeffs)
    }

    /// The polynomial as a series truncated (or zero-padded) to `order`.
    pub fn to_series(&self, order: usize) -> TruncSeries {
        let coeffs = (0..=order).map(|k| self.coeff(k)).collect();
        TruncSeries {
            var: self.var.clone(),
            coeffs,
        }
    }

    /// Numeric value with coefficient variables assigned and the polynomial
    /// variable set to `y`.
    pub fn eval(&self, assignment: &HashMap<String, Complex64>, y: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c.eval(assignment)?;
        }
        Ok(acc)
    }
}
