//! Splitting types of vector bundles on P¹ and on chains of rational curves.
//!
//! A bundle on a rational curve is a sum of line bundles `O(d₁) ⊕ … ⊕ O(d_k)`;
//! everything here works on the degree tuple alone.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Nonincreasing degree tuple `d₁ ≥ … ≥ d_k`, `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    /// Accepts the degrees in any order and sorts them.
    pub fn new(mut degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidInput("splitting type of rank 0".into()));
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(degrees))
    }

    /// Rank-`k` trivial type shifted by `d`: `O(d)^k`.
    pub fn balanced(rank: usize, d: i64) -> Result<Self> {
        Self::new(vec![d; rank])
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn d1(&self) -> i64 {
        self.0[0]
    }

    /// The smallest degree `d_k`.
    pub fn dmin(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn gap(&self) -> i64 {
        self.d1() - self.dmin()
    }

    pub fn dual(&self) -> Self {
        Self(self.0.iter().rev().map(|d| -d).collect())
    }

    pub fn twist(&self, n: i64) -> Self {
        Self(self.0.iter().map(|d| d + n).collect())
    }

    pub fn h0(&self) -> u64 {
        self.0.iter().map(|&d| (d + 1).max(0) as u64).sum()
    }

    pub fn h1(&self) -> u64 {
        self.0.iter().map(|&d| (-d - 1).max(0) as u64).sum()
    }

    /// Direct sum of two bundles on the same curve.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable_by(|a, b| b.cmp(a));
        Self(v)
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SplittingType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let degrees = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad degree {p:?} in splitting type {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(degrees)
    }
}

pub fn gap(st: &SplittingType) -> i64 {
    st.gap()
}

pub fn dual(st: &SplittingType) -> SplittingType {
    st.dual()
}

pub fn twist(st: &SplittingType, n: i64) -> SplittingType {
    st.twist(n)
}

pub fn h0_p1(st: &SplittingType) -> u64 {
    st.h0()
}

pub fn h1_p1(st: &SplittingType) -> u64 {
    st.h1()
}

/// Restriction of one bundle to the components `C₁, …, C_r` of a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBundle(Vec<SplittingType>);

impl ChainBundle {
    pub fn new(components: Vec<SplittingType>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidInput("chain with no components".into()));
        };
        let rank = first.rank();
        if let Some(bad) = components.iter().find(|c| c.rank() != rank) {
            return Err(Error::InvalidInput(format!(
                "component ranks differ: {rank} and {}",
                bad.rank()
            )));
        }
        Ok(Self(components))
    }

    pub fn components(&self) -> &[SplittingType] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.0[0].rank()
    }

    pub fn dual(&self) -> Self {
        Self(self.0.iter().map(SplittingType::dual).collect())
    }
}

impl fmt::Display for ChainBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(";"))
    }
}

impl FromStr for ChainBundle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.split(';').map(str::parse).collect::<Result<Vec<_>>>()?)
    }
}

/// Upper bound for `h⁰` of the chain bundle twisted by `O_C(n₁, …, n_r)`, with
/// component 1 as the anchor.
pub fn chain_h0_bound(cb: &ChainBundle, twists: &[i64]) -> Result<u64> {
    chain_h0_bound_anchored(cb, twists, 0)
}

/// Same bound with an arbitrary anchor component (0-based).
///
/// Peeling the chain off the anchor one node at a time gives exact triples in
/// which every non-anchor component is twisted down by the node it is attached
/// through, so the anchor keeps its full degree and every other component loses 1.
pub fn chain_h0_bound_anchored(cb: &ChainBundle, twists: &[i64], anchor: usize) -> Result<u64> {
    if twists.len() != cb.len() {
        return Err(Error::Shape(format!(
            "{} twists for a chain of {} components",
            twists.len(),
            cb.len()
        )));
    }
    if anchor >= cb.len() {
        return Err(Error::IndexOutOfRange(format!(
            "anchor {anchor} in a chain of {} components",
            cb.len()
        )));
    }
    Ok(cb
        .components()
        .iter()
        .zip(twists)
        .enumerate()
        .map(|(i, (c, &n))| {
            let shift = if i == anchor { n } else { n - 1 };
            c.twist(shift).h0()
        })
        .sum())
}

/// Evaluates the vanishing of `h⁰(E(−d₁(E|C₁) − δ₁, …, −d₁(E|C_r) − δ_r))`.
///
/// The anchor is the first component with `δᵢ > 0`; there its twisted type is
/// strictly negative, and every other component is negative after the node shift.
pub fn lemma_ineq2_check(cb: &ChainBundle, deltas: &[u64]) -> Result<bool> {
    if deltas.len() != cb.len() {
        return Err(Error::Shape(format!(
            "{} deltas for a chain of {} components",
            deltas.len(),
            cb.len()
        )));
    }
    let Some(anchor) = deltas.iter().position(|&d| d > 0) else {
        return Err(Error::InvalidInput("all deltas are zero".into()));
    };
    let twists: Vec<i64> = cb
        .components()
        .iter()
        .zip(deltas)
        .map(|(c, &d)| -c.d1() - d as i64)
        .collect();
    Ok(chain_h0_bound_anchored(cb, &twists, anchor)? == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeformationBounds {
    pub d1_max: i64,
    pub dmin_min: i64,
    pub gap_max: i64,
    pub total_degree: i64,
}

impl DeformationBounds {
    pub fn dual(&self) -> Self {
        Self {
            d1_max: -self.dmin_min,
            dmin_min: -self.d1_max,
            gap_max: self.gap_max,
            total_degree: -self.total_degree,
        }
    }

    /// Whether a splitting type of a smoothing respects every bound.
    pub fn admits(&self, st: &SplittingType) -> bool {
        st.degree() == self.total_degree
            && st.d1() <= self.d1_max
            && st.dmin() >= self.dmin_min
            && st.gap() <= self.gap_max
    }
}

pub fn deformation_bounds(cb: &ChainBundle) -> DeformationBounds {
    let cs = cb.components();
    DeformationBounds {
        d1_max: cs.iter().map(SplittingType::d1).sum(),
        dmin_min: cs.iter().map(SplittingType::dmin).sum(),
        gap_max: cs.iter().map(SplittingType::gap).sum(),
        total_degree: cs.iter().map(SplittingType::degree).sum(),
    }
}

/// All rank-`rank` splitting types satisfying the bounds, in decreasing
/// lexicographic order.
pub fn compatible_types(db: &DeformationBounds, rank: usize) -> Result<Vec<SplittingType>> {
    if rank == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(rank);
    extend_types(db, rank, db.d1_max, db.total_degree, &mut current, &mut out);
    Ok(out.into_iter().map(SplittingType).collect())
}

// Depth-first over nonincreasing tuples; `cap` is the largest degree still allowed.
fn extend_types(
    db: &DeformationBounds,
    rank: usize,
    cap: i64,
    remaining: i64,
    current: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let left = (rank - current.len()) as i64;
    if left == 0 {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    let floor = match current.first() {
        Some(&d1) => db.dmin_min.max(d1 - db.gap_max),
        None => db.dmin_min,
    };
    let mut d = cap;
    while d >= floor {
        // The remaining entries lie in [floor, d].
        if remaining - d > (left - 1) * d {
            break;
        }
        if remaining - d >= (left - 1) * floor {
            current.push(d);
            extend_types(db, rank, d, remaining - d, current, out);
            current.pop();
        }
        d -= 1;
    }
}

pub fn segre_gap_bound(r: u64, gap: i64) -> i64 {
    r as i64 * gap
}

pub fn double_segre_gap_bound(r: u64, gap: i64) -> i64 {
    2 * r as i64 * gap
}
