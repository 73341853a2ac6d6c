//! Segre curves, chains of lines and polarized chains, built from explicit
//! rational subspaces.
//!
//! Subspaces are row spaces of [`RatMatrix`] values. A point of `G(r, V)` is an
//! `r`-row matrix of full rank, compared up to row operations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratlinalg::{contained_in, intersection, intersection_dim, same_span, RatMatrix, Rational};
use crate::sampling::Sampler;

/// Three mutually transverse `r`-planes `V′, V″, V‴` with `V‴ ⊂ V′ ⊕ V″`, and a
/// splitting of `V′` into lines.
///
/// The derived lines are normalized so that `V′ᵢ = span(v′ᵢ)`, `V″ᵢ = span(v″ᵢ)`
/// and `V‴ᵢ = span(v′ᵢ + v″ᵢ)`; the affine coordinate `t` on `P(V′ᵢ ⊕ V″ᵢ)` then
/// sends `t` to `span(v′ᵢ + t·v″ᵢ)`.
#[derive(Clone, Debug)]
pub struct SubspaceConfig {
    n: usize,
    r: usize,
    v1: RatMatrix,
    v2: RatMatrix,
    v3: RatMatrix,
    /// Normalized `v′ᵢ`, one per row.
    prime: RatMatrix,
    /// Normalized `v″ᵢ`, one per row.
    second: RatMatrix,
}

fn single_row(m: &RatMatrix, i: usize) -> RatMatrix {
    RatMatrix::from_rows(m.cols(), vec![m.row(i).to_vec()]).expect("row has the right length")
}

fn rows_of(m: &RatMatrix, idx: impl IntoIterator<Item = usize>) -> Vec<Vec<Rational>> {
    idx.into_iter().map(|i| m.row(i).to_vec()).collect()
}

fn breach(msg: String) -> Error {
    Error::InvariantBreach(msg)
}

impl SubspaceConfig {
    /// Validates the configuration and derives `V″ᵢ = V″ ∩ (V‴ ⊕ V′ᵢ)` and
    /// `V‴ᵢ = V‴ ∩ (V′ᵢ ⊕ V″ᵢ)`.
    pub fn new(v1: RatMatrix, v2: RatMatrix, v3: RatMatrix, lines: RatMatrix) -> Result<Self> {
        let n = v1.cols();
        let r = v1.rows();
        for (name, m) in [("V''", &v2), ("V'''", &v3), ("lines", &lines)] {
            if m.cols() != n || m.rows() != r {
                return Err(Error::Shape(format!(
                    "{name} is {}x{}, expected {r}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for (name, m) in [("V'", &v1), ("V''", &v2), ("V'''", &v3), ("lines", &lines)] {
            if m.rank() != r {
                return Err(Error::InvalidInput(format!("{name} does not have dimension {r}")));
            }
        }
        for (name, a, b) in [("V'∩V''", &v1, &v2), ("V'∩V'''", &v1, &v3), ("V''∩V'''", &v2, &v3)] {
            if intersection_dim(a, b)? != 0 {
                return Err(Error::InvalidInput(format!("{name} is nonzero")));
            }
        }
        if !contained_in(&v3, &v1.vstack(&v2)?)? {
            return Err(Error::InvalidInput("V''' is not inside V' + V''".into()));
        }
        if !contained_in(&lines, &v1)? {
            return Err(Error::InvalidInput("the lines V'_i are not inside V'".into()));
        }

        let mut prime = Vec::with_capacity(r);
        let mut second = Vec::with_capacity(r);
        for i in 0..r {
            let li = single_row(&lines, i);
            let v2i = intersection(&v2, &v3.vstack(&li)?)?;
            if v2i.rows() != 1 {
                return Err(Error::InvalidInput(format!(
                    "V'' ∩ (V''' + V'_{}) has dimension {}",
                    i + 1,
                    v2i.rows()
                )));
            }
            let plane = li.vstack(&v2i)?;
            let v3i = intersection(&v3, &plane)?;
            if v3i.rows() != 1 {
                return Err(Error::InvalidInput(format!(
                    "V''' ∩ (V'_{0} + V''_{0}) has dimension {1}",
                    i + 1,
                    v3i.rows()
                )));
            }
            // Write w = α·l + β·v'' and rescale so that w = v' + v''.
            let coeffs = solve_in_span(&plane, v3i.row(0))?;
            let (alpha, beta) = (&coeffs[0], &coeffs[1]);
            if alpha.is_zero() || beta.is_zero() {
                return Err(breach(format!("degenerate V'''_{} on its projective line", i + 1)));
            }
            prime.push(li.row(0).iter().map(|x| x * alpha).collect());
            second.push(v2i.row(0).iter().map(|x| x * beta).collect());
        }
        Ok(Self {
            n,
            r,
            v1,
            v2,
            v3,
            prime: RatMatrix::from_rows(n, prime)?,
            second: RatMatrix::from_rows(n, second)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn v_prime(&self) -> &RatMatrix {
        &self.v1
    }

    pub fn v_second(&self) -> &RatMatrix {
        &self.v2
    }

    pub fn v_third(&self) -> &RatMatrix {
        &self.v3
    }

    /// Normalized generator of `V′ᵢ` (0-based `i`).
    pub fn line_prime(&self, i: usize) -> RatMatrix {
        single_row(&self.prime, i)
    }

    pub fn line_second(&self, i: usize) -> RatMatrix {
        single_row(&self.second, i)
    }

    pub fn line_third(&self, i: usize) -> RatMatrix {
        let row: Vec<Rational> = self
            .prime
            .row(i)
            .iter()
            .zip(self.second.row(i))
            .map(|(a, b)| a + b)
            .collect();
        RatMatrix::from_rows(self.n, vec![row]).expect("row length n")
    }

    fn span(&self, second: impl IntoIterator<Item = usize>, prime: impl IntoIterator<Item = usize>) -> RatMatrix {
        let mut rows = rows_of(&self.second, second);
        rows.extend(rows_of(&self.prime, prime));
        RatMatrix::from_rows(self.n, rows).expect("rows of length n")
    }
}

/// Coefficients of `target` in the basis given by the rows of `basis`.
fn solve_in_span(basis: &RatMatrix, target: &[Rational]) -> Result<Vec<Rational>> {
    // [basisᵀ | target] and read off the reduced echelon form.
    let k = basis.rows();
    let mut aug = RatMatrix::zeros(basis.cols(), k + 1);
    for (c, t) in target.iter().enumerate() {
        for r in 0..k {
            aug.set(c, r, basis.get(r, c).clone());
        }
        aug.set(c, k, t.clone());
    }
    let (red, pivots) = aug.rref();
    if pivots.contains(&k) || pivots.len() != k {
        return Err(breach("vector is not in the span of an independent family".into()));
    }
    Ok((0..k).map(|i| red.get(i, k).clone()).collect())
}

/// `V′ = ⟨e₁..e_r⟩`, `V″ = ⟨e_{r+1}..e_{2r}⟩`, `V‴ = ⟨eᵢ + e_{r+i}⟩` in `ℚ^{3r}`, with
/// `V′ᵢ = ⟨eᵢ⟩`.
pub fn standard_config(r: usize) -> Result<SubspaceConfig> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("r = {r} < 2")));
    }
    let n = 3 * r;
    let unit = |i: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let v1: Vec<Vec<i64>> = (0..r).map(unit).collect();
    let v2: Vec<Vec<i64>> = (0..r).map(|i| unit(r + i)).collect();
    let v3: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = unit(i);
            v[r + i] = 1;
            v
        })
        .collect();
    SubspaceConfig::new(
        RatMatrix::from_ints(&v1),
        RatMatrix::from_ints(&v2),
        RatMatrix::from_ints(&v3),
        RatMatrix::from_ints(&v1),
    )
}

/// A random configuration in `ℚ^{3r}`: `V‴` is the graph of a random invertible
/// map `V′ → V″`, and the lines `V′ᵢ` are random.
pub fn random_config(r: usize, sampler: &mut Sampler) -> Result<SubspaceConfig> {
    let n = 3 * r;
    loop {
        let basis = |sampler: &mut Sampler, offset: usize| {
            let rows = (0..r)
                .map(|_| {
                    let mut v = vec![Rational::zero(); n];
                    for x in v.iter_mut().skip(offset).take(r) {
                        *x = sampler.rational();
                    }
                    v
                })
                .collect();
            RatMatrix::from_rows(n, rows).expect("rows of length n")
        };
        let v1 = basis(sampler, 0);
        let v2 = basis(sampler, r);
        let map = RatMatrix::from_rows(r, (0..r).map(|_| (0..r).map(|_| sampler.rational()).collect()).collect())?;
        let lines = basis(sampler, 0);
        if v1.rank() != r || v2.rank() != r || map.rank() != r || lines.rank() != r {
            continue;
        }
        // V''' = { x + φ(x) : x ∈ V' } with φ sending row i of v1 to a combination of v2.
        let phi = map.mul(&v2)?;
        let v3_rows = (0..r)
            .map(|i| v1.row(i).iter().zip(phi.row(i)).map(|(a, b)| a + b).collect())
            .collect();
        let v3 = RatMatrix::from_rows(n, v3_rows)?;
        match SubspaceConfig::new(v1, v2, v3, lines) {
            Ok(cfg) => return Ok(cfg),
            Err(Error::InvalidInput(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveParam {
    Finite(Rational),
    Infinity,
}

fn check_t_values(cfg: &SubspaceConfig, t_values: &[Rational]) -> Result<Vec<Rational>> {
    if t_values.len() + 1 != cfg.r {
        return Err(Error::Shape(format!(
            "{} t-values for r = {} (need r - 1)",
            t_values.len(),
            cfg.r
        )));
    }
    if t_values.iter().any(Zero::is_zero) {
        return Err(Error::InvalidInput("t-values must be nonzero".into()));
    }
    let mut scales = vec![Rational::one()];
    scales.extend(t_values.iter().cloned());
    Ok(scales)
}

/// The point `t ↦ V_{t·1,1} ⊕ V_{t·t₂,2} ⊕ … ⊕ V_{t·t_r,r}` of the Segre curve for
/// the triple `(V′, V″, V^{(t₂,…,t_r)})`.
pub fn segre_plane(cfg: &SubspaceConfig, t_values: &[Rational], param: &CurveParam) -> Result<RatMatrix> {
    let scales = check_t_values(cfg, t_values)?;
    let rows = match param {
        CurveParam::Infinity => rows_of(&cfg.second, 0..cfg.r),
        CurveParam::Finite(u) => (0..cfg.r)
            .map(|i| {
                let c = u * &scales[i];
                cfg.prime
                    .row(i)
                    .iter()
                    .zip(cfg.second.row(i))
                    .map(|(a, b)| a + &c * b)
                    .collect()
            })
            .collect(),
    };
    RatMatrix::from_rows(cfg.n, rows)
}

/// `(t, t², …, t^{r−1})`.
pub fn family_t_values(r: usize, t: &Rational) -> Vec<Rational> {
    let mut out = Vec::with_capacity(r.saturating_sub(1));
    let mut p = t.clone();
    for _ in 1..r {
        out.push(p.clone());
        p *= t;
    }
    out
}

/// All `r × r` minors of an `r`-plane, indexed by increasing column subsets.
pub fn plucker_point(plane: &RatMatrix) -> Result<Vec<Rational>> {
    let rows: Vec<usize> = (0..plane.rows()).collect();
    subsets(plane.cols(), plane.rows())
        .iter()
        .map(|cols| plane.minor(&rows, cols))
        .collect()
}

/// Whether two Plücker vectors are proportional and nonzero.
pub fn same_plucker_point(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() || a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
        return false;
    }
    let m = RatMatrix::from_rows(a.len(), vec![a.to_vec(), b.to_vec()]).expect("equal lengths");
    m.rank() == 1
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Plücker coordinates of a curve in `G(r, n)` as polynomials in its parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerCurve {
    n: usize,
    r: usize,
    entries: Vec<(Vec<usize>, Poly)>,
}

impl PluckerCurve {
    pub fn entries(&self) -> &[(Vec<usize>, Poly)] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn content(&self) -> Poly {
        self.entries
            .iter()
            .fold(Poly::zero(), |g, (_, p)| g.gcd(p))
    }

    /// Divides out the common polynomial factor of all coordinates.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        let entries = self
            .entries
            .iter()
            .map(|(s, p)| (s.clone(), p.div_rem(&g).0))
            .collect();
        Self {
            n: self.n,
            r: self.r,
            entries,
        }
    }

    pub fn eval(&self, t: &Rational) -> Vec<Rational> {
        self.entries.iter().map(|(_, p)| p.eval(t)).collect()
    }

    /// JSON object from 1-based subset strings (`"1,3"`) to coefficient lists.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, Vec<String>> = self
            .entries
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(s, p)| {
                let key: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
                (key.join(","), p.coeffs().iter().map(|c| c.to_string()).collect())
            })
            .collect();
        serde_json::to_value(map).expect("string maps always serialize")
    }
}

/// Degree of the curve: the largest coordinate degree of the primitive vector.
pub fn curve_degree(pc: &PluckerCurve) -> usize {
    pc.primitive()
        .entries
        .iter()
        .filter_map(|(_, p)| p.degree())
        .max()
        .unwrap_or(0)
}

/// Plücker curve of the pencil of planes spanned by the rows of `base + t·direction`.
pub fn plucker_of_pencil(base: &RatMatrix, direction: &RatMatrix) -> Result<PluckerCurve> {
    if base.rows() != direction.rows() || base.cols() != direction.cols() {
        return Err(Error::Shape("pencil matrices differ in shape".into()));
    }
    let (r, n) = (base.rows(), base.cols());
    let polys: Vec<Vec<Poly>> = (0..r)
        .map(|i| {
            (0..n)
                .map(|j| Poly::new(vec![base.get(i, j).clone(), direction.get(i, j).clone()]))
                .collect()
        })
        .collect();
    let perms = permutations(r);
    let entries: Vec<(Vec<usize>, Poly)> = subsets(n, r)
        .into_iter()
        .map(|cols| {
            let det = perms.iter().fold(Poly::zero(), |acc, (perm, sign)| {
                let factors: Vec<&Poly> = perm.iter().enumerate().map(|(i, &j)| &polys[i][cols[j]]).collect();
                if factors.iter().any(|p| p.is_zero()) {
                    return acc;
                }
                let term = factors
                    .into_iter()
                    .fold(Poly::constant(Rational::one()), |t, p| &t * p);
                if *sign {
                    &acc + &term
                } else {
                    &acc - &term
                }
            });
            (cols, det)
        })
        .collect();
    if entries.iter().all(|(_, p)| p.is_zero()) {
        return Err(breach("Plücker vector vanishes identically".into()));
    }
    Ok(PluckerCurve { n, r, entries })
}

/// Permutations of `0..k` with their sign (`true` = even).
fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, bool)>) {
        if cur.len() == k {
            let inversions = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| cur[i] > cur[j])
                .count();
            out.push((cur.clone(), inversions % 2 == 0));
            return;
        }
        for j in 0..k {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                rec(k, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

pub fn plucker_curve(cfg: &SubspaceConfig, t_values: &[Rational]) -> Result<PluckerCurve> {
    let scales = check_t_values(cfg, t_values)?;
    let dir_rows = (0..cfg.r)
        .map(|i| cfg.second.row(i).iter().map(|x| x * &scales[i]).collect())
        .collect();
    plucker_of_pencil(&cfg.prime, &RatMatrix::from_rows(cfg.n, dir_rows)?)
}

/// A line of `G(r, V)`: all `r`-planes between `V₁` (dim `r−1`) and `V₂` (dim `r+1`).
#[derive(Clone, Debug)]
pub struct LineFlag {
    pub v1: RatMatrix,
    pub v2: RatMatrix,
}

impl LineFlag {
    pub fn new(v1: RatMatrix, v2: RatMatrix, r: usize) -> Result<Self> {
        if v1.rank() + 1 != r || v2.rank() != r + 1 || !contained_in(&v1, &v2)? {
            return Err(breach(format!(
                "not a flag of dimensions ({}, {}): got ({}, {})",
                r - 1,
                r + 1,
                v1.rank(),
                v2.rank()
            )));
        }
        Ok(Self { v1, v2 })
    }

    pub fn contains_plane(&self, plane: &RatMatrix) -> Result<bool> {
        Ok(contained_in(&self.v1, plane)? && contained_in(plane, &self.v2)?)
    }
}

#[derive(Clone, Debug)]
pub enum LineMeet {
    Empty,
    Point(RatMatrix),
    /// The two flags define the same line.
    Same,
}

pub fn meet_lines(a: &LineFlag, b: &LineFlag) -> Result<LineMeet> {
    let r = a.v1.rank() + 1;
    let lower = a.v1.vstack(&b.v1)?.row_space_basis();
    let upper = intersection(&a.v2, &b.v2)?;
    if lower.rows() > r || upper.rows() < r || !contained_in(&lower, &upper)? {
        return Ok(LineMeet::Empty);
    }
    if lower.rows() == r {
        return Ok(LineMeet::Point(lower));
    }
    if upper.rows() == r {
        return Ok(LineMeet::Point(upper));
    }
    Ok(LineMeet::Same)
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub lines: Vec<LineFlag>,
    /// `incidence[i][j]` is true when lines `i` and `j` (i ≠ j) share a point.
    pub incidence: Vec<Vec<bool>>,
    /// Common point of lines `i` and `i+1`.
    pub nodes: Vec<RatMatrix>,
    pub y0_on_first_line: bool,
}

impl ChainReport {
    pub fn is_path(&self) -> bool {
        let r = self.incidence.len();
        (0..r).all(|i| (0..r).all(|j| self.incidence[i][j] == (i.abs_diff(j) == 1)))
    }
}

/// The lines `l₁, …, l_r` with flags
/// `V″₁⊕…⊕V″_{i−1}⊕V′_{i+1}⊕…⊕V′_r ⊂ V″₁⊕…⊕V″ᵢ⊕V′ᵢ⊕…⊕V′_r`.
pub fn chain_of_lines(cfg: &SubspaceConfig) -> Result<ChainReport> {
    let r = cfg.r;
    let lines = (0..r)
        .map(|i| LineFlag::new(cfg.span(0..i, i + 1..r), cfg.span(0..=i, i..r), r))
        .collect::<Result<Vec<_>>>()?;

    let mut incidence = vec![vec![false; r]; r];
    let mut nodes = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let meet = meet_lines(&lines[i], &lines[j])?;
            let hit = match meet {
                LineMeet::Empty => false,
                LineMeet::Point(p) => {
                    if j == i + 1 {
                        let expected = cfg.span(0..=i, i + 1..r);
                        if !same_span(&p, &expected)? {
                            return Err(breach(format!("lines {} and {} meet off the expected node", i + 1, j + 1)));
                        }
                        nodes.push(p);
                    }
                    true
                }
                LineMeet::Same => {
                    return Err(breach(format!("lines {} and {} coincide", i + 1, j + 1)));
                }
            };
            incidence[i][j] = hit;
            incidence[j][i] = hit;
        }
    }
    let y0_on_first_line = lines[0].contains_plane(cfg.v_prime())?;
    let report = ChainReport {
        lines,
        incidence,
        nodes,
        y0_on_first_line,
    };
    if !report.is_path() || !report.y0_on_first_line {
        return Err(breach("chain of lines is not a chain through y0".into()));
    }
    Ok(report)
}

/// Two Segre curves sharing `V″`, the second built on `W′ ⊕ V″` with
/// `W′ ∩ (V′ ⊕ V″) = 0`.
#[derive(Clone, Debug)]
pub struct TwoChain {
    pub cfg: SubspaceConfig,
    pub cfg_w: SubspaceConfig,
    /// `dim (V′⊕V″) ∩ (W′⊕V″)`; equal to `r` means the only common plane is `V″`.
    pub ambient_meet_dim: usize,
    pub ambient_meet_is_v_second: bool,
    pub cap_zero: bool,
}

pub fn two_chain_config(r: usize) -> Result<TwoChain> {
    let cfg = standard_config(r)?;
    let n = 3 * r;
    let unit_sum = |idx: &[usize]| -> Vec<i64> {
        let mut v = vec![0; n];
        for &i in idx {
            v[i] = 1;
        }
        v
    };
    let w1 = RatMatrix::from_ints(&(0..r).map(|i| unit_sum(&[2 * r + i])).collect::<Vec<_>>());
    let w3 = RatMatrix::from_ints(&(0..r).map(|i| unit_sum(&[2 * r + i, r + i])).collect::<Vec<_>>());
    let cfg_w = SubspaceConfig::new(w1.clone(), cfg.v_second().clone(), w3, w1.clone())?;

    // The lines of W'' must be the lines of V'' for the two curves to share a chart.
    for i in 0..r {
        if !same_span(&cfg_w.line_second(i), &cfg.line_second(i))? {
            return Err(breach(format!("W''_{} differs from V''_{}", i + 1, i + 1)));
        }
    }
    let cap_zero = intersection_dim(&w1, &cfg.v_prime().vstack(cfg.v_second())?)? == 0;
    let left = cfg.v_prime().vstack(cfg.v_second())?;
    let right = w1.vstack(cfg.v_second())?;
    let meet = intersection(&left, &right)?;
    let ambient_meet_is_v_second = same_span(&meet, cfg.v_second())?;
    if !cap_zero || !ambient_meet_is_v_second {
        return Err(breach("two-chain configuration is not transverse".into()));
    }
    Ok(TwoChain {
        ambient_meet_dim: meet.rows(),
        cfg,
        cfg_w,
        ambient_meet_is_v_second,
        cap_zero,
    })
}

/// Strict partition check for [`embed_chain`]: all parts positive.
fn check_degrees(degrees: &[u64]) -> Result<()> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidInput(format!(
            "degrees {degrees:?} must be a nonempty list of positive integers"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbedReport {
    pub degrees: Vec<u64>,
    /// Target projective space `P^n`, `n = Σ nᵢ`.
    pub n: u64,
    /// First coordinate of each component's block.
    pub offsets: Vec<usize>,
    pub span_dim: usize,
    pub component_span_dims: Vec<usize>,
    /// `meet_dims[i][j]`: dimension of the intersection of the linear spans.
    pub meet_dims: Vec<Vec<usize>>,
    pub nodes_on_both: bool,
}

impl EmbedReport {
    pub fn linearly_normal(&self) -> bool {
        self.span_dim as u64 == self.n + 1
    }

    pub fn incidences_ok(&self) -> bool {
        let r = self.degrees.len();
        self.nodes_on_both
            && (0..r).all(|i| {
                (0..r).all(|j| i == j || self.meet_dims[i][j] == usize::from(i.abs_diff(j) == 1))
            })
    }
}

/// Point of component `i` at affine parameter `s`; `None` is the point at ∞.
fn chain_point(n: usize, offset: usize, degree: usize, s: Option<&Rational>) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n + 1];
    match s {
        None => v[offset + degree] = Rational::one(),
        Some(s) => {
            let mut p = Rational::one();
            for j in 0..=degree {
                v[offset + j] = p.clone();
                p *= s;
            }
        }
    }
    v
}

/// Glues rational normal curves of degrees `n₁, …, n_r` into a chain in `P^n`:
/// component `i` lives on coordinates `oᵢ..=oᵢ+nᵢ`, and its point at ∞ is the
/// point at 0 of component `i+1`.
pub fn embed_chain(degrees: &[u64]) -> Result<EmbedReport> {
    check_degrees(degrees)?;
    let n: u64 = degrees.iter().sum();
    let dim = n as usize;
    let mut offsets = Vec::with_capacity(degrees.len());
    let mut o = 0usize;
    for &d in degrees {
        offsets.push(o);
        o += d as usize;
    }

    let spans: Vec<RatMatrix> = degrees
        .iter()
        .zip(&offsets)
        .map(|(&d, &off)| {
            let rows = (0..=d as i64)
                .map(|s| chain_point(dim, off, d as usize, Some(&Rational::from_integer(s.into()))))
                .collect();
            RatMatrix::from_rows(dim + 1, rows)
        })
        .collect::<Result<_>>()?;

    let all = spans
        .iter()
        .skip(1)
        .try_fold(spans[0].clone(), |acc, s| acc.vstack(s))?;
    let r = degrees.len();
    let mut meet_dims = vec![vec![0; r]; r];
    for i in 0..r {
        for j in 0..r {
            if i != j {
                meet_dims[i][j] = intersection_dim(&spans[i], &spans[j])?;
            }
        }
    }
    let mut nodes_on_both = true;
    for i in 0..r.saturating_sub(1) {
        let end = chain_point(dim, offsets[i], degrees[i] as usize, None);
        let start = chain_point(dim, offsets[i + 1], degrees[i + 1] as usize, Some(&Rational::zero()));
        nodes_on_both &= same_plucker_point(&end, &start);
    }
    Ok(EmbedReport {
        degrees: degrees.to_vec(),
        n,
        offsets,
        span_dim: all.rank(),
        component_span_dims: spans.iter().map(RatMatrix::rank).collect(),
        meet_dims,
        nodes_on_both,
    })
}
