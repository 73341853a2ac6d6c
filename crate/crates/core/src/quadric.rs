//! Cohomology of line bundles and of twisted ideal sheaves of fiber points on
//! the quadric `X = P¹ × P¹`.
//!
//! Conventions: `O(a, b)` restricts to `O(a)` on every fiber `S_x = pr₂⁻¹(x)` and
//! to `O(b)` on the fibers `P = pr₁⁻¹(0)`, `P′ = pr₁⁻¹(∞)`. Point sets live on
//! `P′` and are given by their (affine, finite) second coordinates.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension_ledger::{les_quotient_intervals, HInterval};
use crate::ratlinalg::{parse_rational, RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiDegree {
    pub a: i64,
    pub b: i64,
}

impl BiDegree {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn plus(self, other: BiDegree) -> Self {
        Self::new(self.a + other.a, self.b + other.b)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// `(h⁰, h¹, h²)` together with the Euler characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTriple {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    pub chi: i64,
}

impl CohomologyTriple {
    pub fn new(h0: u64, h1: u64, h2: u64, chi: i64) -> Result<Self> {
        if h0 as i64 - h1 as i64 + h2 as i64 != chi {
            return Err(Error::InvariantBreach(format!(
                "h0 - h1 + h2 = {} but chi = {chi}",
                h0 as i64 - h1 as i64 + h2 as i64
            )));
        }
        Ok(Self { h0, h1, h2, chi })
    }

    pub fn from_h(h0: u64, h1: u64, h2: u64) -> Self {
        Self {
            h0,
            h1,
            h2,
            chi: h0 as i64 - h1 as i64 + h2 as i64,
        }
    }

    pub fn zero() -> Self {
        Self::from_h(0, 0, 0)
    }

    pub fn h(&self, i: usize) -> u64 {
        [self.h0, self.h1, self.h2][i]
    }

    pub fn is_consistent(&self) -> bool {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64 == self.chi
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_h(self.h0 + other.h0, self.h1 + other.h1, self.h2 + other.h2)
    }
}

impl fmt::Display for CohomologyTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}", self.h0, self.h1, self.h2, self.chi)
    }
}

fn p(n: i64) -> u64 {
    (n + 1).max(0) as u64
}

fn q(n: i64) -> u64 {
    (-n - 1).max(0) as u64
}

/// Künneth over the two factors.
pub fn h_line(bd: BiDegree) -> CohomologyTriple {
    let (a, b) = (bd.a, bd.b);
    CohomologyTriple {
        h0: p(a) * p(b),
        h1: p(a) * q(b) + q(a) * p(b),
        h2: q(a) * q(b),
        chi: (a + 1) * (b + 1),
    }
}

/// Reduced points `(∞, x_ij)` on `P′`, grouped as `Z₂, …, Z_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPointSet {
    groups: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct FiberPointSetJson {
    groups: Vec<Vec<String>>,
}

impl FiberPointSet {
    pub fn new(groups: Vec<Vec<Rational>>) -> Result<Self> {
        let mut seen: Vec<&Rational> = Vec::new();
        for x in groups.iter().flatten() {
            if seen.contains(&x) {
                return Err(Error::InvalidInput(format!("duplicate point parameter {x}")));
            }
            seen.push(x);
        }
        Ok(Self { groups })
    }

    pub fn empty() -> Self {
        Self { groups: Vec::new() }
    }

    /// A single group, e.g. the complete intersection `Z_k` on its own.
    pub fn single(points: Vec<Rational>) -> Result<Self> {
        Self::new(vec![points])
    }

    pub fn groups(&self) -> &[Vec<Rational>] {
        &self.groups
    }

    pub fn group(&self, i: usize) -> Result<&[Rational]> {
        self.groups
            .get(i)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::IndexOutOfRange(format!("group {i} of {}", self.groups.len())))
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = &Rational> {
        self.groups.iter().flatten()
    }

    pub fn to_json(&self) -> String {
        let j = FiberPointSetJson {
            groups: self
                .groups
                .iter()
                .map(|g| g.iter().map(|x| x.to_string()).collect())
                .collect(),
        };
        serde_json::to_string(&j).expect("string lists always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: FiberPointSetJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("point set JSON: {e}")))?;
        let groups = j
            .groups
            .iter()
            .map(|g| g.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(groups)
    }
}

/// Evaluation matrix of the bihomogeneous monomials `s₀ⁱ s₁^{a−i} u₀ʲ u₁^{b−j}` at
/// the points `([0:1], [1:x])`. Only `i = 0` survives on `P′`.
fn evaluation_matrix(z: &FiberPointSet, bd: BiDegree) -> RatMatrix {
    let (a, b) = (bd.a as usize, bd.b as usize);
    let cols = (a + 1) * (b + 1);
    let mut m = RatMatrix::zeros(z.len(), cols);
    for (row, x) in z.points().enumerate() {
        let mut power = Rational::one();
        // Column (i = 0, j) carries x^{b-j}; fill from j = b downwards.
        for j in (0..=b).rev() {
            m.set(row, j, power.clone());
            power *= x;
        }
    }
    m
}

pub fn h0_ideal(z: &FiberPointSet, bd: BiDegree) -> u64 {
    if bd.a < 0 || bd.b < 0 {
        return 0;
    }
    if z.is_empty() {
        return h_line(bd).h0;
    }
    evaluation_matrix(z, bd).kernel_dim() as u64
}

/// Full triple of `I_Z(a, b)` from the restriction sequence
/// `0 → I_Z(a,b) → O(a,b) → O_Z → 0`.
pub fn h_ideal(z: &FiberPointSet, bd: BiDegree) -> Result<CohomologyTriple> {
    let line = h_line(bd);
    let h0 = h0_ideal(z, bd);
    let h2 = line.h2;
    let chi = line.chi - z.len() as i64;
    let h1 = h0 as i64 + h2 as i64 - chi;
    if h1 < 0 {
        return Err(Error::InvariantBreach(format!(
            "negative h1 = {h1} for I_Z{bd} with |Z| = {}",
            z.len()
        )));
    }
    CohomologyTriple::new(h0, h1 as u64, h2, chi)
}

/// Interval bounds on the cohomology of `I_{Z_k}(0, a_k) ⊗ O(bd)` read off the
/// twisted Koszul resolution
/// `0 → O(−1,0) → O ⊕ O(−1,a_k) → I_{Z_k}(0,a_k) → 0`,
/// where `Z_k` is group `group_index` of `z` and `a_k = |Z_k|`.
pub fn koszul_h(z: &FiberPointSet, group_index: usize, bd: BiDegree) -> Result<HInterval> {
    let ak = z.group(group_index)?.len() as i64;
    let kernel = h_line(BiDegree::new(-1, 0).plus(bd));
    let middle = h_line(bd).add(&h_line(BiDegree::new(-1, ak).plus(bd)));
    les_quotient_intervals(&kernel, &middle)
}

/// `I_{Z_k}(0, a_k) ⊗ O(bd)` as an ideal-sheaf twist, for comparing with [`koszul_h`].
pub fn koszul_target(z: &FiberPointSet, group_index: usize, bd: BiDegree) -> Result<CohomologyTriple> {
    let group = z.group(group_index)?;
    let single = FiberPointSet::single(group.to_vec())?;
    h_ideal(&single, BiDegree::new(0, group.len() as i64).plus(bd))
}
