//! Degree bookkeeping for chains of Grassmannian embeddings and the
//! inequality that forces `D_m = 0` once the cumulative degree is large.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratlinalg::Rational;

/// A sequence indexed by `m ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Sequence {
    Const { value: u64 },
    /// `values[m-1]`; undefined past the end.
    List { values: Vec<u64> },
    /// `initial · ratio^(m-1)`.
    Geometric { initial: u64, ratio: u64 },
    /// `Σ coeffs[i] · m^i`.
    Poly { coeffs: Vec<i64> },
}

impl Sequence {
    pub fn value(&self, m: u64) -> Result<BigUint> {
        if m == 0 {
            return Err(Error::InvalidInput("sequences are indexed from m = 1".into()));
        }
        match self {
            Sequence::Const { value } => Ok(BigUint::from(*value)),
            Sequence::List { values } => values
                .get(m as usize - 1)
                .map(|&v| BigUint::from(v))
                .ok_or_else(|| {
                    Error::InvalidInput(format!("list has {} entries, m = {m} requested", values.len()))
                }),
            Sequence::Geometric { initial, ratio } => {
                Ok(BigUint::from(*initial) * BigUint::from(*ratio).pow((m - 1) as u32))
            }
            Sequence::Poly { coeffs } => {
                let mb = BigInt::from(m);
                let v = coeffs
                    .iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, &c| acc * &mb + BigInt::from(c));
                v.to_biguint()
                    .ok_or_else(|| Error::InvalidInput(format!("polynomial sequence is negative at m = {m}")))
            }
        }
    }

    fn is_closed_form(&self) -> bool {
        !matches!(self, Sequence::List { .. })
    }

    /// Exponential base when the sequence is eventually `c·b^m`-like with
    /// polynomial factors ignored: 1 for constants and polynomials.
    fn growth_base(&self) -> Option<u64> {
        match self {
            Sequence::List { .. } => None,
            Sequence::Const { .. } | Sequence::Poly { .. } => Some(1),
            Sequence::Geometric { ratio, .. } => Some(*ratio),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndGrassSpec {
    pub r: Sequence,
    pub deg: Sequence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Sequence>,
    /// Rank `k` of the bundle.
    pub rank: u64,
    #[serde(rename = "D1")]
    pub d1: u64,
}

impl IndGrassSpec {
    pub fn constant(r: u64, deg: u64, rank: u64, d1: u64) -> Self {
        Self {
            r: Sequence::Const { value: r },
            deg: Sequence::Const { value: deg },
            n: None,
            rank,
            d1,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if spec.rank == 0 {
            return Err(Error::InvalidInput("bundle rank must be at least 1".into()));
        }
        Ok(spec)
    }

    pub fn r_at(&self, m: u64) -> Result<BigUint> {
        let r = self.r.value(m)?;
        if r < BigUint::from(2u32) {
            return Err(Error::InvalidInput(format!("r_{m} = {r} < 2")));
        }
        Ok(r)
    }

    pub fn deg_at(&self, m: u64) -> Result<BigUint> {
        let d = self.deg.value(m)?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("deg phi_{m} = 0")));
        }
        Ok(d)
    }
}

/// `deg Φ_m = deg φ₁ ⋯ deg φ_{m−1}`.
pub fn cumulative_degree(spec: &IndGrassSpec, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    (1..m).try_fold(BigUint::one(), |acc, i| Ok(acc * spec.deg_at(i)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedVerdict {
    /// Finite-horizon check: some `m₀ ≤ M` after which the ratio is at most ε
    /// and nonincreasing up to `M`. Says nothing about the actual limit.
    pub holds_at_horizon: bool,
    pub m0: Option<u64>,
    /// `(m, r_m / deg Φ_m)` for `m = 1..=M`.
    pub trace: Vec<(u64, String)>,
    /// Exact limit decision, available when both sequences are closed-form.
    pub symbolic: Option<bool>,
}

/// Whether `r_m / deg Φ_m → 0`, decided from the descriptors alone.
pub fn symbolic_limit(spec: &IndGrassSpec) -> Option<bool> {
    if !spec.r.is_closed_form() || !spec.deg.is_closed_form() {
        return None;
    }
    // deg Φ_m grows superexponentially when deg φ_m itself grows.
    let deg_growing = match &spec.deg {
        Sequence::Geometric { ratio, .. } => *ratio >= 2,
        Sequence::Poly { coeffs } => coeffs.iter().skip(1).any(|&c| c != 0),
        _ => false,
    };
    if deg_growing {
        return Some(true);
    }
    // Otherwise deg φ_m is a constant c and deg Φ_m = c^(m−1).
    let c = spec.deg.value(1).ok()?.to_u64()?;
    let r_base = spec.r.growth_base()?;
    if c <= 1 {
        // r_m ≥ 2 never tends to 0.
        return Some(false);
    }
    Some(r_base < c)
}

pub fn sufficiently_twisted(spec: &IndGrassSpec, epsilon: &Rational, horizon: u64) -> Result<TwistedVerdict> {
    if horizon < 2 {
        return Err(Error::InvalidInput(format!("horizon {horizon} < 2")));
    }
    if !epsilon.is_positive() {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let ratios = (1..=horizon)
        .map(|m| {
            let r = BigInt::from(spec.r_at(m)?);
            let d = BigInt::from(cumulative_degree(spec, m)?);
            Ok(Rational::new(r, d))
        })
        .collect::<Result<Vec<_>>>()?;

    // Walk backwards while the tail stays small and monotone.
    let mut m0 = None;
    for i in (0..ratios.len()).rev() {
        let ok_here = ratios[i] <= *epsilon && (i + 1 == ratios.len() || ratios[i] >= ratios[i + 1]);
        if !ok_here {
            break;
        }
        m0 = Some(i as u64 + 1);
    }
    Ok(TwistedVerdict {
        holds_at_horizon: m0.is_some(),
        m0,
        trace: ratios
            .iter()
            .enumerate()
            .map(|(i, q)| (i as u64 + 1, q.to_string()))
            .collect(),
        symbolic: symbolic_limit(spec),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityEval {
    pub holds: bool,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

fn rhs_at(spec: &IndGrassSpec, r: &BigUint, dm: &BigInt) -> BigInt {
    let k = BigInt::from(spec.rank);
    let r = BigInt::from(r.clone());
    BigInt::from(4) * &k * BigInt::from(spec.d1 + 2) * (BigInt::from(2) * r * dm + 1) - BigInt::from(2) * k
}

/// `deg Φ_m · D_m ≤ 4k(D₁+2)(2r_m D_m + 1) − 2k`.
pub fn main_inequality(spec: &IndGrassSpec, m: u64, dm: u64) -> Result<InequalityEval> {
    let dm = BigInt::from(dm);
    let lhs = BigInt::from(cumulative_degree(spec, m)?) * &dm;
    let rhs = rhs_at(spec, &spec.r_at(m)?, &dm);
    Ok(InequalityEval {
        holds: lhs <= rhs,
        lhs,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdRow {
    pub m: u64,
    pub deg_phi: BigUint,
    pub r: BigUint,
    pub lhs1: BigInt,
    pub rhs1: BigInt,
    pub fails_all: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    /// `None` when no `m` up to the horizon excludes every `D_m ≥ 1`.
    pub threshold: Option<u64>,
    pub rows: Vec<ThresholdRow>,
}

impl ThresholdReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("m\tdegPhi\tr_m\tlhs(1)\trhs(1)\tfails_all\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                row.m, row.deg_phi, row.r, row.lhs1, row.rhs1, row.fails_all
            );
        }
        match self.threshold {
            Some(m) => {
                let _ = writeln!(out, "threshold: {m}");
            }
            None => out.push_str("threshold: none within horizon\n"),
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "m": r.m,
                    "degPhi": r.deg_phi.to_string(),
                    "r_m": r.r.to_string(),
                    "lhs1": r.lhs1.to_string(),
                    "rhs1": r.rhs1.to_string(),
                    "fails_all": r.fails_all,
                })
            })
            .collect();
        serde_json::json!({ "threshold": self.threshold, "rows": rows })
    }
}

/// Both sides are affine in `D_m`, so the inequality fails for every `D_m ≥ 1`
/// exactly when the left slope beats the right slope and it already fails at 1.
pub fn fails_for_all_positive(deg_phi: &BigUint, spec: &IndGrassSpec, r: &BigUint) -> bool {
    let d = BigInt::from(deg_phi.clone());
    let slope = BigInt::from(8 * spec.rank * (spec.d1 + 2)) * BigInt::from(r.clone());
    d > slope && d > rhs_at(spec, r, &BigInt::one())
}

pub fn triviality_threshold(spec: &IndGrassSpec, horizon: u64) -> Result<ThresholdReport> {
    if horizon < 2 {
        return Err(Error::InvalidInput(format!("horizon {horizon} < 2")));
    }
    let mut rows = Vec::with_capacity(horizon as usize);
    let mut deg_phi = BigUint::one();
    for m in 1..=horizon {
        if m > 1 {
            deg_phi *= spec.deg_at(m - 1)?;
        }
        let r = spec.r_at(m)?;
        rows.push(ThresholdRow {
            m,
            lhs1: BigInt::from(deg_phi.clone()),
            rhs1: rhs_at(spec, &r, &BigInt::one()),
            fails_all: fails_for_all_positive(&deg_phi, spec, &r),
            deg_phi: deg_phi.clone(),
            r,
        });
    }
    let threshold = rows.iter().find(|r| r.fails_all).map(|r| r.m);
    Ok(ThresholdReport { threshold, rows })
}

fn check_partition(lambda: &[u64]) -> Result<()> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(format!("{lambda:?} is not nonincreasing")));
    }
    Ok(())
}

/// `dim S^λ(ℂⁿ)` by the hook-content formula; zero when λ has more than `n`
/// nonzero parts.
pub fn schur_dimension(lambda: &[u64], n: u64) -> Result<BigUint> {
    check_partition(lambda)?;
    let parts: Vec<u64> = lambda.iter().copied().filter(|&p| p > 0).collect();
    if parts.len() as u64 > n {
        return Ok(BigUint::zero());
    }
    let conj = |j: u64| parts.iter().filter(|&&p| p > j).count() as u64;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, &row) in parts.iter().enumerate() {
        let i = i as u64;
        for j in 0..row {
            num *= n + j - i;
            den *= (row - j - 1) + (conj(j) - i - 1) + 1;
        }
    }
    Ok(num / den)
}

/// Sections of `O(1) ⊠ O(k)` on the incidence variety `Fl(1, r; ℂⁿ)`, read as
/// the irreducible representation with highest weight `(k+1, k^{r−1})`.
pub fn flag_sections_dim(n: u64, r: u64, k: u64) -> Result<BigUint> {
    if r < 2 || k < 1 || n < r + 1 {
        return Err(Error::InvalidInput(format!(
            "flag_sections_dim needs r >= 2, k >= 1, n >= r + 1; got n={n}, r={r}, k={k}"
        )));
    }
    let mut lambda = vec![k + 1];
    lambda.extend(std::iter::repeat_n(k, r as usize - 1));
    schur_dimension(&lambda, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::{rat, ratio};
    use proptest::prelude::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Counts semistandard tableaux cell by cell.
    fn ssyt_count(lambda: &[u64], n: u64) -> u64 {
        let cells: Vec<(usize, usize)> = lambda
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (0..l as usize).map(move |j| (i, j)))
            .collect();
        let mut grid: Vec<Vec<u64>> = lambda.iter().map(|&l| vec![0; l as usize]).collect();
        fn go(idx: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u64>>, n: u64) -> u64 {
            let Some(&(i, j)) = cells.get(idx) else { return 1 };
            let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
            let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
            let mut total = 0;
            for v in lo_row.max(lo_col)..=n {
                grid[i][j] = v;
                total += go(idx + 1, cells, grid, n);
            }
            total
        }
        go(0, &cells, &mut grid, n)
    }

    fn partitions(total: u64, max: u64) -> Vec<Vec<u64>> {
        if total == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(total)).rev() {
            for mut rest in partitions(total - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    /// Brute force over `D_m ∈ [1, limit]` in machine integers.
    fn brute_fails_all(spec: &IndGrassSpec, m: u64, limit: i128) -> bool {
        let d = cumulative_degree(spec, m).unwrap().to_i128().unwrap();
        let r = spec.r_at(m).unwrap().to_i128().unwrap();
        let k = spec.rank as i128;
        let d1 = spec.d1 as i128;
        (1..=limit).all(|dm| d * dm > 4 * k * (d1 + 2) * (2 * r * dm + 1) - 2 * k)
    }

    #[test]
    fn cumulative_degree_examples() {
        let ones = IndGrassSpec::constant(2, 1, 1, 0);
        assert_eq!(cumulative_degree(&ones, 9).unwrap(), BigUint::one());
        let twos = IndGrassSpec::constant(2, 2, 1, 0);
        assert_eq!(cumulative_degree(&twos, 8).unwrap(), BigUint::from(128u32));
        assert_eq!(cumulative_degree(&twos, 1).unwrap(), BigUint::one());
        let mut alt = twos.clone();
        alt.deg = Sequence::List {
            values: vec![2, 3, 2, 3, 2, 3],
        };
        assert_eq!(cumulative_degree(&alt, 5).unwrap(), BigUint::from(36u32));
        assert!(cumulative_degree(&alt, 0).is_err());
    }

    #[test]
    fn main_inequality_examples() {
        let spec = IndGrassSpec::constant(2, 2, 2, 0);
        let e = main_inequality(&spec, 7, 1).unwrap();
        assert_eq!((e.lhs, e.rhs.clone(), e.holds), (BigInt::from(64), BigInt::from(76), true));
        let e = main_inequality(&spec, 8, 1).unwrap();
        assert_eq!((e.lhs, e.rhs, e.holds), (BigInt::from(128), BigInt::from(76), false));
        assert!(main_inequality(&spec, 30, 0).unwrap().holds);
    }

    #[test]
    fn threshold_examples() {
        let spec = IndGrassSpec::constant(2, 2, 2, 0);
        let rep = triviality_threshold(&spec, 20).unwrap();
        assert_eq!(rep.threshold, Some(8));
        assert!(rep.to_tsv().ends_with("threshold: 8\n"));
        assert!(rep.to_tsv().starts_with("m\tdegPhi\tr_m\tlhs(1)\trhs(1)\tfails_all\n"));

        let flat = IndGrassSpec::constant(2, 1, 2, 0);
        assert_eq!(triviality_threshold(&flat, 50).unwrap().threshold, None);

        let threes = IndGrassSpec::constant(2, 3, 1, 0);
        let rep = triviality_threshold(&threes, 20).unwrap();
        let m = rep.threshold.unwrap();
        assert!(brute_fails_all(&threes, m, 100_000));
        assert!(!brute_fails_all(&threes, m - 1, 100_000));
    }

    #[test]
    fn threshold_matches_brute_force() {
        for (r, deg, k, d1) in [(2, 2, 2, 0), (3, 2, 1, 1), (2, 3, 1, 0), (4, 5, 3, 2), (2, 1, 1, 0)] {
            let spec = IndGrassSpec::constant(r, deg, k, d1);
            let rep = triviality_threshold(&spec, 15).unwrap();
            for row in &rep.rows {
                assert_eq!(row.fails_all, brute_fails_all(&spec, row.m, 10_000), "{spec:?} m={}", row.m);
            }
        }
    }

    #[test]
    fn twisted_examples() {
        let eps = ratio(1, 10);
        let v = sufficiently_twisted(&IndGrassSpec::constant(3, 2, 1, 0), &eps, 20).unwrap();
        assert!(v.holds_at_horizon);
        assert_eq!(v.symbolic, Some(true));

        let v = sufficiently_twisted(&IndGrassSpec::constant(3, 1, 1, 0), &rat(2), 20).unwrap();
        assert!(!v.holds_at_horizon);
        assert_eq!(v.symbolic, Some(false));

        let mut exp = IndGrassSpec::constant(2, 2, 1, 0);
        exp.r = Sequence::Geometric { initial: 2, ratio: 2 };
        let v = sufficiently_twisted(&exp, &rat(1), 20).unwrap();
        assert!(!v.holds_at_horizon);
        assert!(v.trace.iter().all(|(_, q)| q == "2"));
        assert_eq!(v.symbolic, Some(false));

        let mut listed = IndGrassSpec::constant(2, 2, 1, 0);
        listed.deg = Sequence::List { values: vec![2; 10] };
        assert_eq!(sufficiently_twisted(&listed, &eps, 10).unwrap().symbolic, None);
        assert!(sufficiently_twisted(&listed, &eps, 12).is_err());
        assert!(sufficiently_twisted(&listed, &rat(0), 5).is_err());
    }

    #[test]
    fn symbolic_growth_classes() {
        let mut s = IndGrassSpec::constant(2, 3, 1, 0);
        s.r = Sequence::Geometric { initial: 2, ratio: 2 };
        assert_eq!(symbolic_limit(&s), Some(true));
        s.deg = Sequence::Poly { coeffs: vec![1, 1] };
        s.r = Sequence::Geometric { initial: 2, ratio: 50 };
        assert_eq!(symbolic_limit(&s), Some(true));
        s.deg = Sequence::Const { value: 2 };
        s.r = Sequence::Poly { coeffs: vec![2, 0, 5] };
        assert_eq!(symbolic_limit(&s), Some(true));
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = IndGrassSpec::from_json(
            r#"{"r": {"kind":"const","value":2}, "deg": {"kind":"const","value":2}, "rank": 2, "D1": 0}"#,
        )
        .unwrap();
        assert_eq!(spec, IndGrassSpec::constant(2, 2, 2, 0));
        let back = IndGrassSpec::from_json(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        assert!(IndGrassSpec::from_json(r#"{"r": 2}"#).is_err());
    }

    #[test]
    fn schur_examples() {
        for n in 1..7 {
            assert_eq!(schur_dimension(&[1], n).unwrap(), BigUint::from(n));
        }
        for k in 0..6 {
            assert_eq!(schur_dimension(&[k], 2).unwrap(), BigUint::from(k + 1));
        }
        assert_eq!(schur_dimension(&[2, 1], 3).unwrap(), BigUint::from(8u32));
        assert_eq!(schur_dimension(&[1, 1, 1], 2).unwrap(), BigUint::zero());
        assert!(schur_dimension(&[1, 2], 3).is_err());
    }

    #[test]
    fn schur_matches_tableaux() {
        for total in 0..=8 {
            for lambda in partitions(total, total) {
                for n in 1..=6 {
                    assert_eq!(
                        schur_dimension(&lambda, n).unwrap(),
                        BigUint::from(ssyt_count(&lambda, n)),
                        "{lambda:?} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn flag_sections_examples() {
        assert_eq!(flag_sections_dim(3, 2, 1).unwrap(), BigUint::from(8u32));
        assert_eq!(flag_sections_dim(3, 2, 2).unwrap(), BigUint::from(15u32));
        assert_eq!(flag_sections_dim(4, 2, 1).unwrap(), BigUint::from(20u32));
        assert!(flag_sections_dim(3, 1, 1).is_err());
        assert!(flag_sections_dim(2, 2, 1).is_err());
        assert!(flag_sections_dim(4, 2, 0).is_err());
    }

    #[test]
    fn incidence_divisor_oracle() {
        // Fl(1, n−1; ℂⁿ) is a (1,1) divisor in P^{n−1} × P^{n−1}.
        for n in 3..=6 {
            for k in 1..=4 {
                let expected = n * binom(k + n - 1, n - 1) - binom(k + n - 2, n - 1);
                assert_eq!(flag_sections_dim(n, n - 1, k).unwrap(), BigUint::from(expected));
            }
        }
    }

    proptest! {
        #[test]
        fn zero_dm_always_survives(r in 2u64..50, deg in 1u64..6, k in 1u64..8, d1 in 0u64..10, m in 1u64..40) {
            let spec = IndGrassSpec::constant(r, deg, k, d1);
            prop_assert!(main_inequality(&spec, m, 0).unwrap().holds);
        }

        #[test]
        fn failure_persists_for_constant_ranks(r in 2u64..6, deg in 1u64..4, k in 1u64..4, d1 in 0u64..3) {
            let spec = IndGrassSpec::constant(r, deg, k, d1);
            let rep = triviality_threshold(&spec, 25).unwrap();
            if let Some(t) = rep.threshold {
                prop_assert!(rep.rows.iter().all(|row| row.fails_all == (row.m >= t)));
            }
        }
    }
}
