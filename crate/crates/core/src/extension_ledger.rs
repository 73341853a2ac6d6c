//! Invariant ledger for the extension bundles `E₁, …, E_r` on `P¹ × P¹`.
//!
//! `E₁ = O(0, a₁)` and `0 → E_{k−1} → E_k → I_{Z_k}(0, a_k) → 0`. The bundles are
//! never built; each level is described by the cohomology of a fixed set of
//! twists, pushed through the long exact sequence. A level is accepted only when
//! every interval collapses to a single value and matches its closed form.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::p1bundles::SplittingType;
use crate::quadric::{h_ideal, h_line, BiDegree, CohomologyTriple, FiberPointSet};
use crate::sampling::Sampler;

/// Componentwise bounds on `(h⁰, h¹, h²)`; the Euler characteristic is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HInterval {
    pub lo: [u64; 3],
    pub hi: [u64; 3],
    pub chi: i64,
}

impl HInterval {
    pub fn exact_triple(t: &CohomologyTriple) -> Self {
        let h = [t.h0, t.h1, t.h2];
        Self { lo: h, hi: h, chi: t.chi }
    }

    pub fn is_collapsed(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact(&self) -> Option<CohomologyTriple> {
        self.is_collapsed()
            .then(|| CohomologyTriple::from_h(self.lo[0], self.lo[1], self.lo[2]))
    }

    pub fn contains(&self, t: &CohomologyTriple) -> bool {
        (0..3).all(|i| self.lo[i] <= t.h(i) && t.h(i) <= self.hi[i]) && t.chi == self.chi
    }

    pub fn contains_h0(&self, h0: u64) -> bool {
        self.lo[0] <= h0 && h0 <= self.hi[0]
    }
}

/// Bounds on the middle term `B` of `0 → A → B → C → 0`.
///
/// The connecting maps `H⁰C → H¹A` and `H¹C → H²A` have unknown ranks
/// `ρ₀ ≤ min(h⁰C, h¹A)` and `ρ₁ ≤ min(h¹C, h²A)`.
pub fn les_intervals(a: &CohomologyTriple, c: &CohomologyTriple) -> HInterval {
    let r0 = c.h0.min(a.h1);
    let r1 = c.h1.min(a.h2);
    let h0 = a.h0 + c.h0;
    let h1 = a.h1 + c.h1;
    let h2 = a.h2 + c.h2;
    HInterval {
        lo: [h0 - r0, h1 - r0 - r1, h2 - r1],
        hi: [h0, h1, h2],
        chi: a.chi + c.chi,
    }
}

/// Bounds on the quotient `C` of `0 → K → M → C → 0` with `K`, `M` known.
///
/// `H⁰K → H⁰M` is injective; the ranks `ρ₁`, `ρ₂` of `H¹K → H¹M` and
/// `H²K → H²M` are unknown.
pub fn les_quotient_intervals(k: &CohomologyTriple, m: &CohomologyTriple) -> Result<HInterval> {
    if k.h0 > m.h0 {
        return Err(Error::InvariantBreach(format!(
            "h0 of the subsheaf ({}) exceeds h0 of the middle term ({})",
            k.h0, m.h0
        )));
    }
    let r1 = k.h1.min(m.h1);
    let r2 = k.h2.min(m.h2);
    let h0 = m.h0 - k.h0 + k.h1;
    let h1 = m.h1 + k.h2;
    let h2 = m.h2;
    Ok(HInterval {
        lo: [h0 - r1, h1 - r1 - r2, h2 - r2],
        hi: [h0, h1, h2],
        chi: m.chi - k.chi,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least two parts, got {}",
                parts.len()
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("parts {parts:?} are not nonincreasing")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn d(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn a(&self, i: usize) -> u64 {
        self.parts[i - 1]
    }

    /// All nonincreasing partitions with exactly `r` nonnegative parts summing to `d`.
    pub fn enumerate(r: usize, d: u64) -> Vec<Partition> {
        fn rec(r: usize, cap: u64, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if cur.len() == r {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let slots = (r - cur.len()) as u64;
            for x in (0..=cap.min(left)).rev() {
                if x * slots < left {
                    break;
                }
                cur.push(x);
                rec(r, x, left - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if r >= 2 {
            rec(r, d, d, &mut Vec::new(), &mut out);
        }
        out.into_iter().map(|parts| Partition { parts }).collect()
    }

    /// Random point groups `Z₂, …, Z_r` of sizes `a₂, …, a_r`, all parameters distinct.
    pub fn sample_points(&self, sampler: &mut Sampler) -> FiberPointSet {
        let total = (self.d() - self.parts[0]) as usize;
        let mut all = sampler.distinct_rationals(total).into_iter();
        let groups = self.parts[1..]
            .iter()
            .map(|&ai| all.by_ref().take(ai as usize).collect())
            .collect();
        FiberPointSet::new(groups).expect("sampled parameters are distinct")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad part {p:?} in partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// Twists whose `h⁰` has a closed form at every level.
pub const NAMED_TWISTS: [BiDegree; 5] = [
    BiDegree::new(0, -1),
    BiDegree::new(0, 0),
    BiDegree::new(1, -1),
    BiDegree::new(1, 0),
    BiDegree::new(2, 0),
];

/// Twists whose `h¹` vanishes at every level.
pub const H1_ZERO_TWISTS: [BiDegree; 5] = [
    BiDegree::new(0, -1),
    BiDegree::new(0, 0),
    BiDegree::new(1, -1),
    BiDegree::new(1, 0),
    BiDegree::new(2, 0),
];

/// Closed form of `h⁰(E_k ⊗ O(twist))` for a named twist.
pub fn closed_form_h0(p: &Partition, k: usize, twist: BiDegree) -> Option<u64> {
    let a1 = p.a(1);
    let tail: u64 = (2..=k).map(|i| p.a(i)).sum();
    let k = k as u64;
    match (twist.a, twist.b) {
        (0, -1) => Some(a1),
        (0, 0) => Some(a1 + k),
        (1, -1) => Some(2 * a1 + tail),
        (1, 0) => Some(2 * a1 + tail + 2 * k),
        (2, 0) => Some(3 * a1 + 2 * tail + 3 * k),
        _ => None,
    }
}

fn formula_id(twist: BiDegree) -> Option<&'static str> {
    match (twist.a, twist.b) {
        (0, -1) => Some("h0=a1"),
        (0, 0) => Some("h0=a1+k"),
        (1, -1) => Some("h0=2a1+a2+..+ak"),
        (1, 0) => Some("h0=2a1+a2+..+ak+2k"),
        (2, 0) => Some("h0=3a1+2a2+..+2ak+3k"),
        _ => None,
    }
}

/// Riemann–Roch on `P¹ × P¹` for a rank `k` bundle with `c₁ = (0, e)`:
/// `χ(E(a,b)) = k(a+1)(b+1) + e(a+1) − c₂`.
fn riemann_roch_chi(rank: u64, c1_b: i64, c2: i64, t: BiDegree) -> i64 {
    rank as i64 * (t.a + 1) * (t.b + 1) + c1_b * (t.a + 1) - c2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistRow {
    pub twist: BiDegree,
    pub h: CohomologyTriple,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub k: usize,
    pub rows: Vec<TwistRow>,
    pub h0_values: BTreeMap<String, u64>,
    pub h1_vanishing: Vec<BiDegree>,
    pub h2_vanishing: Vec<BiDegree>,
    /// `c₁(E_k)` as a bidegree class `(c, e)`: degree `c` on `S_x`, `e` on `P`, `P′`.
    pub c1: BiDegree,
    pub c2: i64,
    pub restriction_generic_fiber: SplittingType,
    /// `None` while no point group has been used yet.
    pub restriction_jumping_fiber: Option<SplittingType>,
    #[serde(rename = "restriction_P")]
    pub restriction_p: SplittingType,
    #[serde(rename = "restriction_Pprime")]
    pub restriction_pprime: SplittingType,
}

impl LedgerEntry {
    pub fn triple(&self, twist: BiDegree) -> Option<&CohomologyTriple> {
        self.rows.iter().find(|r| r.twist == twist).map(|r| &r.h)
    }

    pub fn h0(&self, twist: BiDegree) -> Option<u64> {
        self.triple(twist).map(|t| t.h0)
    }
}

fn tracked_twists(p: &Partition) -> Vec<BiDegree> {
    let mut twists: Vec<BiDegree> = NAMED_TWISTS.to_vec();
    for &ai in p.parts() {
        let t = BiDegree::new(0, -(ai as i64));
        if !twists.contains(&t) {
            twists.push(t);
        }
    }
    twists.sort();
    twists
}

fn breach(msg: String) -> Error {
    Error::InvariantBreach(msg)
}

pub fn build_ledger(p: &Partition, z: &FiberPointSet) -> Result<Vec<LedgerEntry>> {
    let expected: Vec<usize> = p.parts()[1..].iter().map(|&a| a as usize).collect();
    if z.sizes() != expected {
        return Err(Error::InvalidInput(format!(
            "point groups have sizes {:?}, partition needs {expected:?}",
            z.sizes()
        )));
    }
    let twists = tracked_twists(p);
    let r = p.r();

    let a1 = p.a(1) as i64;
    let mut current: BTreeMap<BiDegree, CohomologyTriple> = twists
        .iter()
        .map(|&t| (t, h_line(BiDegree::new(0, a1).plus(t))))
        .collect();
    let mut c1 = BiDegree::new(0, a1);
    let mut c2 = 0i64;

    let mut entries = Vec::with_capacity(r);
    entries.push(finish_entry(p, 1, &twists, &current, c1, c2)?);

    for k in 2..=r {
        let ak = p.a(k) as i64;
        let zk = FiberPointSet::single(z.group(k - 2)?.to_vec())?;
        let mut next = BTreeMap::new();
        for &t in &twists {
            let a = &current[&t];
            let c = h_ideal(&zk, BiDegree::new(0, ak).plus(t))?;
            let iv = les_intervals(a, &c);
            if iv.chi != a.chi + c.chi {
                return Err(breach(format!("chi not additive at level {k}, twist {t}")));
            }
            let Some(b) = iv.exact() else {
                return Err(breach(format!(
                    "interval did not collapse at level {k}, twist {t}: {iv:?} (A = {a:?}, C = {c:?})"
                )));
            };
            next.insert(t, b);
        }
        // c(E_k) = c(E_{k-1}) c(I_Z(0,a_k)); (0,x)·(0,y) = 0 on P¹×P¹.
        c1 = c1.plus(BiDegree::new(0, ak));
        c2 += zk.len() as i64;
        current = next;
        entries.push(finish_entry(p, k, &twists, &current, c1, c2)?);
    }
    Ok(entries)
}

fn finish_entry(
    p: &Partition,
    k: usize,
    twists: &[BiDegree],
    triples: &BTreeMap<BiDegree, CohomologyTriple>,
    c1: BiDegree,
    c2: i64,
) -> Result<LedgerEntry> {
    let r = p.r();
    let mut h0_values = BTreeMap::new();
    for &t in &NAMED_TWISTS {
        let got = triples[&t].h0;
        let want = closed_form_h0(p, k, t).expect("named twists have closed forms");
        if got != want {
            return Err(breach(format!(
                "level {k}: h0(E_k{t}) = {got}, closed form gives {want}"
            )));
        }
        h0_values.insert(t.to_string(), got);
    }

    let mut h1_vanishing = Vec::new();
    for &t in &H1_ZERO_TWISTS {
        if triples[&t].h1 != 0 {
            return Err(breach(format!("level {k}: h1(E_k{t}) = {}", triples[&t].h1)));
        }
        h1_vanishing.push(t);
    }

    let mut h2_twists = vec![BiDegree::new(0, -1)];
    for i in k + 1..=r {
        let t = BiDegree::new(0, -(p.a(i) as i64));
        if !h2_twists.contains(&t) {
            h2_twists.push(t);
        }
    }
    for &t in &h2_twists {
        if triples[&t].h2 != 0 {
            return Err(breach(format!("level {k}: h2(E_k{t}) = {}", triples[&t].h2)));
        }
    }

    for (&t, h) in triples {
        if !h.is_consistent() {
            return Err(breach(format!("level {k}, twist {t}: {h:?} violates h0-h1+h2=chi")));
        }
        let rr = riemann_roch_chi(k as u64, c1.b, c2, t);
        if h.chi != rr {
            return Err(breach(format!(
                "level {k}, twist {t}: chi = {} but Riemann-Roch gives {rr}",
                h.chi
            )));
        }
    }

    let partial: i64 = (1..=k).map(|i| p.a(i) as i64).sum();
    let generic = SplittingType::balanced(k, 0)?;
    let jumping = (k >= 2 && partial > p.a(1) as i64).then(|| {
        let mut v = vec![0; k - 2];
        v.extend([1, -1]);
        SplittingType::new(v).expect("rank k >= 2")
    });
    let on_p = SplittingType::new((1..=k).map(|i| p.a(i) as i64).collect())?;
    let mut pp = vec![0; k - 1];
    pp.push(partial);
    let on_pprime = SplittingType::new(pp)?;

    // c₁ bookkeeping: fibers S_x see c1.a, the fibers P and P′ see c1.b.
    if c1.a != 0
        || generic.degree() != c1.a
        || jumping.as_ref().is_some_and(|j| j.degree() != c1.a)
        || on_p.degree() != c1.b
        || on_pprime.degree() != c1.b
        || c1.b != partial
    {
        return Err(breach(format!("level {k}: restriction degrees disagree with c1 = {c1}")));
    }
    for st in [Some(&generic), jumping.as_ref(), Some(&on_p), Some(&on_pprime)]
        .into_iter()
        .flatten()
    {
        if st.rank() != k {
            return Err(breach(format!("level {k}: restriction {st} has the wrong rank")));
        }
    }

    let rows = twists
        .iter()
        .map(|&t| {
            let source = match formula_id(t) {
                Some(id) => id.to_string(),
                None if h2_twists.contains(&t) => "h2=0".to_string(),
                None => "tracked".to_string(),
            };
            TwistRow { twist: t, h: triples[&t], source }
        })
        .collect();

    Ok(LedgerEntry {
        k,
        rows,
        h0_values,
        h1_vanishing,
        h2_vanishing: h2_twists,
        c1,
        c2,
        restriction_generic_fiber: generic,
        restriction_jumping_fiber: jumping,
        restriction_p: on_p,
        restriction_pprime: on_pprime,
    })
}

/// Invariants of `F = E_r(2, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremFRecord {
    pub r: usize,
    pub d: u64,
    pub h0_f_m1_m1: u64,
    pub h0_f_m1_0: u64,
    pub h0_f: u64,
    /// `h¹(F(−1,−1))`, `h¹(F(−2,0))`, `h¹(F(−2,−1))`, `h¹(F(−1,0))`.
    pub h1_vanishing: Vec<(BiDegree, u64)>,
    pub h2_f_m2_m1: u64,
    pub restriction_generic_fiber: SplittingType,
    pub restriction_jumping_fiber: Option<SplittingType>,
    #[serde(rename = "restriction_P")]
    pub restriction_p: SplittingType,
    #[serde(rename = "restriction_Pprime")]
    pub restriction_pprime: SplittingType,
}

pub fn theorem_f_invariants(p: &Partition, z: &FiberPointSet) -> Result<TheoremFRecord> {
    let ledger = build_ledger(p, z)?;
    theorem_f_from_ledger(p, &ledger)
}

pub fn theorem_f_from_ledger(p: &Partition, ledger: &[LedgerEntry]) -> Result<TheoremFRecord> {
    let top = ledger
        .last()
        .filter(|e| e.k == p.r())
        .ok_or_else(|| Error::InvalidInput("ledger does not reach level r".into()))?;
    let shift = BiDegree::new(2, 0);
    let f = |a: i64, b: i64| -> Result<CohomologyTriple> {
        let t = BiDegree::new(a, b).plus(shift);
        top.triple(t)
            .copied()
            .ok_or_else(|| breach(format!("twist {t} not tracked")))
    };
    let (r, d, a1) = (p.r() as u64, p.d(), p.a(1));

    let record = TheoremFRecord {
        r: p.r(),
        d,
        h0_f_m1_m1: f(-1, -1)?.h0,
        h0_f_m1_0: f(-1, 0)?.h0,
        h0_f: f(0, 0)?.h0,
        h1_vanishing: [(-1, -1), (-2, 0), (-2, -1), (-1, 0)]
            .into_iter()
            .map(|(a, b)| Ok((BiDegree::new(a, b), f(a, b)?.h1)))
            .collect::<Result<_>>()?,
        h2_f_m2_m1: f(-2, -1)?.h2,
        restriction_generic_fiber: top.restriction_generic_fiber.twist(2),
        restriction_jumping_fiber: top.restriction_jumping_fiber.as_ref().map(|j| j.twist(2)),
        restriction_p: top.restriction_p.clone(),
        restriction_pprime: top.restriction_pprime.clone(),
    };

    let checks = [
        (record.h0_f_m1_m1, a1 + d, "h0(F(-1,-1)) = a1+d"),
        (record.h0_f_m1_0, a1 + d + 2 * r, "h0(F(-1,0)) = a1+d+2r"),
        (record.h0_f, a1 + 2 * d + 3 * r, "h0(F) = a1+2d+3r"),
        (record.h2_f_m2_m1, 0, "h2(F(-2,-1)) = 0"),
    ];
    for (got, want, what) in checks {
        if got != want {
            return Err(breach(format!("{what}: got {got}, expected {want}")));
        }
    }
    if let Some((t, h1)) = record.h1_vanishing.iter().find(|(_, h1)| *h1 != 0) {
        return Err(breach(format!("h1(F{t}) = {h1}, expected 0")));
    }
    Ok(record)
}

/// `dim H⁰(Ext¹(I_{Z_k}(0,a_k), E_{k−1})) = (k−1)·a_k`.
pub fn local_ext_dim(k: usize, ak: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("level {k} < 2 has no extension")));
    }
    Ok((k as u64 - 1) * ak)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Codimensions {
    /// Codimension of the non-surjective locus over one point.
    pub pointwise: u64,
    /// Lower bound for the union over all points off `P′`.
    pub global_bound: u64,
}

pub fn nonsurjective_codim(dim_v: u64, r: u64) -> Result<Codimensions> {
    if dim_v < r + 2 {
        return Err(Error::InvalidInput(format!("dim V = {dim_v} < r + 2 = {}", r + 2)));
    }
    Ok(Codimensions {
        pointwise: dim_v - r + 1,
        global_bound: dim_v - r - 1,
    })
}

pub fn ledger_tsv(ledger: &[LedgerEntry]) -> String {
    let mut out = String::from("k\ttwist\th0\th1\th2\tsource\n");
    for e in ledger {
        for row in &e.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                e.k, row.twist, row.h.h0, row.h.h1, row.h.h2, row.source
            );
        }
    }
    out
}

pub fn ledger_json(ledger: &[LedgerEntry]) -> String {
    serde_json::to_string_pretty(ledger).expect("ledger entries always serialize")
}
