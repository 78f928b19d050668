use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vector, one slot per variable of the owning polynomial.
pub type Exponents = Vec<i32>;

/// Exact multivariate Laurent polynomial with big-rational coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration is lexicographic on the
/// exponent vectors and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn var_names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

impl LaurentPoly {
    pub fn zero(vars: &[String]) -> Self {
        LaurentPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &[String], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn monomial(vars: &[String], exps: Exponents, coeff: BigRational) -> Result<Self> {
        if exps.len() != vars.len() {
            return Err(Error::ExponentLength {
                expected: vars.len(),
                got: exps.len(),
            });
        }
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        Ok(p)
    }

    /// The variable `name` raised to `power`.
    pub fn var_power(vars: &[String], name: &str, power: i32) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnassignedVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = power;
        Self::monomial(vars, exps, BigRational::one())
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(vars: &[String], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut acc: HashMap<Exponents, BigRational> = HashMap::new();
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::ExponentLength {
                    expected: vars.len(),
                    got: e.len(),
                });
            }
            *acc.entry(e).or_insert_with(BigRational::zero) += c;
        }
        Ok(Self::from_accumulator(vars, acc))
    }

    fn from_accumulator(vars: &[String], acc: HashMap<Exponents, BigRational>) -> Self {
        LaurentPoly {
            vars: vars.to_vec(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn coeff(&self, exps: &[i32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Returns the rational value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.last_key_value()
    }

    pub fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut acc: HashMap<Exponents, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        Ok(Self::from_accumulator(&self.vars, acc))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.vars);
        for _ in 0..k {
            out = out.try_mul(self).expect("same variables");
        }
        out
    }

    fn add_term(&mut self, e: &[i32], c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(e);
                }
            }
            None => {
                self.terms.insert(e.to_vec(), c);
            }
        }
    }

    /// Per-variable minimum and maximum exponent (the bounding box of the
    /// Newton polytope). Undefined for the zero polynomial.
    fn exponent_box(&self) -> (Vec<i32>, Vec<i32>) {
        let n = self.vars.len();
        let mut lo = vec![i32::MAX; n];
        let mut hi = vec![i32::MIN; n];
        for e in self.terms.keys() {
            for i in 0..n {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        (lo, hi)
    }

    /// Exact division: returns `r` with `r * d == self`, or `NotDivisible`.
    ///
    /// Long division on lexicographic leading terms. Every term of a true
    /// quotient lies in the box `[min(p) - min(d), max(p) - max(d)]`
    /// coordinatewise, and the quotient terms are produced in strictly
    /// decreasing order, so leaving the box proves non-divisibility and
    /// the loop is finite.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        self.check_vars(d)?;
        let Some((dlead_e, dlead_c)) = d.leading_term() else {
            return Err(Error::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let n = self.vars.len();
        let (plo, phi) = self.exponent_box();
        let (dlo, dhi) = d.exponent_box();
        let lo: Vec<i32> = (0..n).map(|i| plo[i] - dlo[i]).collect();
        let hi: Vec<i32> = (0..n).map(|i| phi[i] - dhi[i]).collect();
        if (0..n).any(|i| lo[i] > hi[i]) {
            return Err(Error::NotDivisible);
        }

        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((e, c)) = rem.terms.last_key_value() {
            let qe: Exponents = e.iter().zip(dlead_e).map(|(a, b)| a - b).collect();
            if (0..n).any(|i| qe[i] < lo[i] || qe[i] > hi[i]) {
                return Err(Error::NotDivisible);
            }
            let qc = c / dlead_c;
            for (de, dc) in &d.terms {
                let te: Exponents = qe.iter().zip(de).map(|(a, b)| a + b).collect();
                rem.add_term(&te, -(&qc * dc));
            }
            quot.insert(qe, qc);
        }
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms: quot,
        })
    }

    /// Numeric evaluation at complex values of the variables.
    pub fn eval(&self, assignment: &HashMap<String, Complex64>) -> Result<Complex64> {
        let values = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::UnassignedVariable(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.eval_slice(&values)
    }

    /// Numeric evaluation with values given in variable order.
    pub fn eval_slice(&self, values: &[Complex64]) -> Result<Complex64> {
        if values.len() != self.vars.len() {
            return Err(Error::ExponentLength {
                expected: self.vars.len(),
                got: values.len(),
            });
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut term = Complex64::new(rational_to_f64(c), 0.0);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if k < 0 && values[i] == Complex64::new(0.0, 0.0) {
                    return Err(Error::ZeroToNegativePower(self.vars[i].clone()));
                }
                term *= values[i].powi(k);
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes a rational value for `name` and drops it from the
    /// variable list.
    pub fn specialize(&self, name: &str, value: &BigRational) -> Result<Self> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnassignedVariable(name.to_string()))?;
        let mut vars = self.vars.clone();
        vars.remove(idx);
        let mut acc: HashMap<Exponents, BigRational> = HashMap::new();
        for (e, c) in &self.terms {
            let k = e[idx];
            if k < 0 && value.is_zero() {
                return Err(Error::ZeroToNegativePower(name.to_string()));
            }
            let factor = rational_pow(value, k);
            let mut e2 = e.clone();
            e2.remove(idx);
            *acc.entry(e2).or_insert_with(BigRational::zero) += c * factor;
        }
        Ok(Self::from_accumulator(&vars, acc))
    }

    /// Re-expresses the polynomial over another variable list, matching by
    /// name. Variables missing from `vars` must not occur.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        let mut slot = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            slot.push(vars.iter().position(|w| w == v));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                match slot[i] {
                    Some(j) => e2[j] = k,
                    None if k == 0 => {}
                    None => {
                        return Err(Error::VariableMismatch {
                            left: self.vars.clone(),
                            right: vars.to_vec(),
                        })
                    }
                }
            }
            terms.insert(e2, c.clone());
        }
        Ok(LaurentPoly {
            vars: vars.to_vec(),
            terms,
        })
    }

    /// Substitutes `x_i -> x_i^{-1}`.
    pub fn invert_var(&self, idx: usize) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[idx] = -e2[idx];
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `x_i -> x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = vec![0; e.len()];
                    for (i, &k) in e.iter().enumerate() {
                        e2[perm[i]] = k;
                    }
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Halves every exponent and renames the variables, e.g. from square
    /// roots `b_i` back to `a_i = b_i^2`. Fails on any odd exponent.
    pub fn halve_exponents(&self, vars: &[String]) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::ExponentLength {
                expected: self.vars.len(),
                got: vars.len(),
            });
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.iter().any(|k| k % 2 != 0) {
                return Err(Error::NonIntegralResult);
            }
            terms.insert(e.iter().map(|k| k / 2).collect(), c.clone());
        }
        Ok(LaurentPoly {
            vars: vars.to_vec(),
            terms,
        })
    }

    /// Text record: a `vars:` header and one `e1 e2 ... : num/den` line per
    /// term in lexicographic order, LF terminated.
    pub fn to_record(&self) -> String {
        let mut out = String::from("vars:");
        for v in &self.vars {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        for (e, c) in &self.terms {
            let exps: Vec<String> = e.iter().map(|k| k.to_string()).collect();
            out.push_str(&exps.join(" "));
            out.push_str(&format!(" : {}/{}\n", c.numer(), c.denom()));
        }
        out
    }

    pub fn from_record(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty record".into(),
        })?;
        let rest = header.strip_prefix("vars:").ok_or(Error::Parse {
            line: 1,
            msg: "missing `vars:` header".into(),
        })?;
        let vars: Vec<String> = rest.split_whitespace().map(String::from).collect();
        let mut terms = BTreeMap::new();
        for (i, line) in lines {
            let lineno = i + 1;
            let perr = |msg: &str| Error::Parse {
                line: lineno,
                msg: msg.to_string(),
            };
            if line.trim().is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once(':').ok_or_else(|| perr("missing `:`"))?;
            let exps = lhs
                .split_whitespace()
                .map(|t| t.parse::<i32>().map_err(|_| perr("bad exponent")))
                .collect::<Result<Vec<_>>>()?;
            if exps.len() != vars.len() {
                return Err(perr("exponent count does not match vars"));
            }
            let (num, den) = rhs
                .trim()
                .split_once('/')
                .ok_or_else(|| perr("coefficient must be num/den"))?;
            let num: BigInt = num.trim().parse().map_err(|_| perr("bad numerator"))?;
            let den: BigInt = den.trim().parse().map_err(|_| perr("bad denominator"))?;
            if den.is_zero() {
                return Err(perr("zero denominator"));
            }
            let c = BigRational::new(num, den);
            if c.is_zero() {
                return Err(perr("zero coefficient"));
            }
            if terms.insert(exps, c).is_some() {
                return Err(perr("duplicate exponent vector"));
            }
        }
        Ok(LaurentPoly { vars, terms })
    }
}

pub(crate) fn rational_pow(x: &BigRational, k: i32) -> BigRational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    let mut out = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        out *= &base;
    }
    out
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for LaurentPoly {
    /// Human-readable form, terms in descending lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (v, &p) in self.vars.iter().zip(e) {
                match p {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{p}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
