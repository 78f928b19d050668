//! Root data of types A, B and C with enumerated Weyl groups.
//!
//! All weights use doubled epsilon-coordinates so that the half-integral
//! Weyl vector of type B stays in the integers. A datum of type A and rank
//! `r` lives in `r + 1` ambient coordinates (the torus of `GL_{r+1}`); types
//! B and C of rank `n` live in `n` coordinates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest supported rank. `|W(B_6)| = 46080`.
pub const MAX_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
}

impl CartanType {
    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
        }
    }

    /// Number of epsilon-coordinates for a datum of this type and rank.
    pub fn ambient_dim(self, rank: usize) -> usize {
        match self {
            CartanType::A => rank + 1,
            CartanType::B | CartanType::C => rank,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            other => Err(Error::Usage(format!("unknown Cartan type `{other}`"))),
        }
    }
}

/// A weight in doubled epsilon-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![0; dim])
    }

    /// From ordinary (undoubled) integer coordinates.
    pub fn from_integral(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|c| 2 * c).collect())
    }

    /// `m * e_1` in `dim` coordinates.
    pub fn first_fundamental(dim: usize, m: i64) -> Self {
        let mut w = Self::zero(dim);
        w.0[0] = 2 * m;
        w
    }

    pub fn coords2(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Integral for `SO(2n+1)` / `GL_n`: every doubled coordinate is even.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

/// Standard bilinear form in doubled coordinates (four times the true
/// pairing).
pub fn pairing2(w: &Weight, v: &Weight) -> Result<i64> {
    if w.dim() != v.dim() {
        return Err(Error::WeightLength {
            expected: w.dim(),
            got: v.dim(),
        });
    }
    Ok(w.0.iter().zip(&v.0).map(|(a, b)| a * b).sum())
}

/// A signed permutation: coordinate `i` is sent to slot `perm[i]` and
/// multiplied by `signs[i]`. Type-A elements have all signs `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
    /// `(-1)^length`, equal to the determinant of the signed permutation.
    pub sign: i8,
}

impl WeylElement {
    pub fn act(&self, w: &Weight) -> Weight {
        let mut out = vec![0; w.dim()];
        for (i, &c) in w.0.iter().enumerate() {
            out[self.perm[i]] = self.signs[i] as i64 * c;
        }
        Weight(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            signs[i] = other.signs[i] * self.signs[j];
        }
        WeylElement {
            perm,
            signs,
            sign: self.sign * other.sign,
        }
    }
}

fn perm_sign(perm: &[usize]) -> i8 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub positive_roots: Vec<Weight>,
    pub simple_roots: Vec<Weight>,
    /// The Weyl vector in doubled coordinates, i.e. the plain sum of the
    /// positive roots in true coordinates.
    pub rho2: Weight,
    pub weyl_elements: Vec<WeylElement>,
}

fn unit(dim: usize, i: usize, k: i64) -> Weight {
    let mut w = Weight::zero(dim);
    w.0[i] = 2 * k;
    w
}

pub fn build_root_datum(cartan_type: CartanType, rank: usize) -> Result<RootDatum> {
    let min_rank = if cartan_type == CartanType::A { 0 } else { 1 };
    if rank < min_rank || rank > MAX_RANK {
        return Err(Error::UnsupportedRank {
            cartan: cartan_type.letter(),
            rank,
        });
    }
    let dim = cartan_type.ambient_dim(rank);

    let mut positive_roots = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            positive_roots.push(unit(dim, i, 1).sub(&unit(dim, j, 1)));
            if cartan_type != CartanType::A {
                positive_roots.push(unit(dim, i, 1).add(&unit(dim, j, 1)));
            }
        }
        match cartan_type {
            CartanType::A => {}
            CartanType::B => positive_roots.push(unit(dim, i, 1)),
            CartanType::C => positive_roots.push(unit(dim, i, 2)),
        }
    }

    let mut simple_roots: Vec<Weight> = (0..dim.saturating_sub(1))
        .map(|i| unit(dim, i, 1).sub(&unit(dim, i + 1, 1)))
        .collect();
    match cartan_type {
        CartanType::A => {}
        CartanType::B => simple_roots.push(unit(dim, dim - 1, 1)),
        CartanType::C => simple_roots.push(unit(dim, dim - 1, 2)),
    }

    // sum of true coordinates = (sum of doubled coordinates) / 2
    let mut rho2 = Weight::zero(dim);
    for r in &positive_roots {
        rho2 = rho2.add(r);
    }
    let rho2 = Weight(rho2.0.iter().map(|c| c / 2).collect());

    let mut weyl_elements = Vec::new();
    for perm in (0..dim).permutations(dim) {
        let psign = perm_sign(&perm);
        if cartan_type == CartanType::A {
            weyl_elements.push(WeylElement {
                signs: vec![1; dim],
                sign: psign,
                perm,
            });
            continue;
        }
        for mask in 0u32..(1 << dim) {
            let signs: Vec<i8> = (0..dim)
                .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                .collect();
            let flips = mask.count_ones();
            weyl_elements.push(WeylElement {
                perm: perm.clone(),
                signs,
                sign: if flips % 2 == 0 { psign } else { -psign },
            });
        }
    }

    Ok(RootDatum {
        cartan_type,
        rank,
        positive_roots,
        simple_roots,
        rho2,
        weyl_elements,
    })
}

/// Shared, memoized root datum.
pub fn root_datum(cartan_type: CartanType, rank: usize) -> Result<Arc<RootDatum>> {
    static DATA: OnceLock<Mutex<HashMap<(CartanType, usize), Arc<RootDatum>>>> = OnceLock::new();
    let table = DATA.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = table.lock().expect("root datum table").get(&(cartan_type, rank)) {
        return Ok(d.clone());
    }
    let built = Arc::new(build_root_datum(cartan_type, rank)?);
    let mut guard = table.lock().expect("root datum table");
    Ok(guard.entry((cartan_type, rank)).or_insert(built).clone())
}

impl RootDatum {
    pub fn dim(&self) -> usize {
        self.cartan_type.ambient_dim(self.rank)
    }

    pub fn check_len(&self, w: &Weight) -> Result<()> {
        if w.dim() != self.dim() {
            return Err(Error::WeightLength {
                expected: self.dim(),
                got: w.dim(),
            });
        }
        Ok(())
    }

    /// `(sign(w), w·weight)` for every Weyl element, in enumeration order.
    pub fn weyl_orbit_terms(&self, w8: &Weight) -> Result<Vec<(i8, Weight)>> {
        self.check_len(w8)?;
        Ok(self
            .weyl_elements
            .iter()
            .map(|el| (el.sign, el.act(w8)))
            .collect())
    }

    /// Non-negative pairing with every simple root.
    pub fn is_dominant(&self, w8: &Weight) -> Result<bool> {
        self.check_len(w8)?;
        for a in &self.simple_roots {
            if pairing2(w8, a)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The dominant element of the Weyl orbit of `w8`.
    pub fn dominant_conjugate(&self, w8: &Weight) -> Result<Weight> {
        self.check_len(w8)?;
        let mut c = w8.0.clone();
        if self.cartan_type != CartanType::A {
            c.iter_mut().for_each(|x| *x = x.abs());
        }
        c.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Weight(c))
    }

    /// Coordinates of `w8` in the basis of simple roots, if they are all
    /// integers.
    pub fn simple_root_coords(&self, w8: &Weight) -> Result<Option<Vec<i64>>> {
        self.check_len(w8)?;
        let dim = self.dim();
        let mut partial = 0;
        let mut out = Vec::with_capacity(self.simple_roots.len());
        for (i, &c) in w8.0.iter().enumerate() {
            partial += c;
            let last = i + 1 == dim;
            let (num, den) = match (self.cartan_type, last) {
                (CartanType::A, true) => {
                    if partial != 0 {
                        return Ok(None);
                    }
                    continue;
                }
                (CartanType::C, true) => (partial, 4),
                _ => (partial, 2),
            };
            if num % den != 0 {
                return Ok(None);
            }
            out.push(num / den);
        }
        Ok(Some(out))
    }

    /// Simple reflections as Weyl elements.
    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        let dim = self.dim();
        let mut gens = Vec::new();
        for i in 0..dim.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..dim).collect();
            perm.swap(i, i + 1);
            gens.push(WeylElement {
                perm,
                signs: vec![1; dim],
                sign: -1,
            });
        }
        if self.cartan_type != CartanType::A {
            let mut signs = vec![1; dim];
            signs[dim - 1] = -1;
            gens.push(WeylElement {
                perm: (0..dim).collect(),
                signs,
                sign: -1,
            });
        }
        gens
    }
}
