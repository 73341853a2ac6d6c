//! Exact linear algebra over the rationals.
//!
//! Matrices are small (a few hundred columns at most), so elimination is plain
//! Gaussian elimination with full reduction of every entry.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7/2"` and the like into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged integer matrix");
            entries.extend(r.as_ref().iter().map(|&x| rat(x)));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            entries.extend(r);
        }
        Ok(Self { rows: n, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(found) = (pr..m.rows).find(|&r| !m.get(r, pc).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, found);
            let inv = m.get(pr, pc).recip();
            for c in pc..m.cols {
                let v = m.get(pr, c) * &inv;
                m.set(pr, c, v);
            }
            for r in 0..m.rows {
                if r == pr || m.get(r, pc).is_zero() {
                    continue;
                }
                let factor = m.get(r, pc).clone();
                for c in pc..m.cols {
                    let v = m.get(r, c) - &factor * m.get(pr, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; no back substitution needed for the rank.
        let mut m = self.clone();
        let mut pr = 0;
        for pc in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(found) = (pr..m.rows).find(|&r| !m.get(r, pc).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, found);
            let pivot = m.get(pr, pc).clone();
            for r in pr + 1..m.rows {
                if m.get(r, pc).is_zero() {
                    continue;
                }
                let factor = m.get(r, pc) / &pivot;
                m.set(r, pc, Rational::zero());
                for c in pc + 1..m.cols {
                    if m.get(pr, c).is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &factor * m.get(pr, c);
                    m.set(r, c, v);
                }
            }
            pr += 1;
        }
        pr
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel `{x : M x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let mut entries = Vec::with_capacity(pivots.len() * self.cols);
        for row in 0..pivots.len() {
            entries.extend(r.row(row).iter().cloned());
        }
        Self {
            rows: pivots.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut m = self.clone();
        let mut det = Rational::one();
        for pc in 0..m.cols {
            let Some(found) = (pc..m.rows).find(|&r| !m.get(r, pc).is_zero()) else {
                return Ok(Rational::zero());
            };
            if found != pc {
                m.swap_rows(pc, found);
                det = -det;
            }
            let pivot = m.get(pc, pc).clone();
            det *= &pivot;
            for r in pc + 1..m.rows {
                if m.get(r, pc).is_zero() {
                    continue;
                }
                let factor = m.get(r, pc) / &pivot;
                for c in pc..m.cols {
                    let v = m.get(r, c) - &factor * m.get(pc, c);
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Determinant of the square submatrix on the given row and column indices.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Rational> {
        if rows.len() != cols.len() {
            return Err(Error::Shape(format!(
                "non-square selection: {} rows, {} columns",
                rows.len(),
                cols.len()
            )));
        }
        check_indices(rows, self.rows, "row")?;
        check_indices(cols, self.cols, "column")?;
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        Self::new(rows.len(), cols.len(), entries)?.determinant()
    }
}

fn check_indices(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    for (i, &x) in idx.iter().enumerate() {
        if x >= bound {
            return Err(Error::IndexOutOfRange(format!("{what} index {x} >= {bound}")));
        }
        if idx[..i].contains(&x) {
            return Err(Error::IndexOutOfRange(format!("repeated {what} index {x}")));
        }
    }
    Ok(())
}

pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}

pub fn kernel_dim(m: &RatMatrix) -> usize {
    m.kernel_dim()
}

pub fn minor(m: &RatMatrix, rows: &[usize], cols: &[usize]) -> Result<Rational> {
    m.minor(rows, cols)
}

/// Dimension of the intersection of two row spaces.
pub fn intersection_dim(a: &RatMatrix, b: &RatMatrix) -> Result<usize> {
    Ok(a.rank() + b.rank() - a.vstack(b)?.rank())
}

/// Row-space basis of the intersection of two row spaces.
pub fn intersection(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    let a = a.row_space_basis();
    let b = b.row_space_basis();
    // x A = y B  <=>  [x | -y] [A; B] = 0, i.e. left kernel of the stack.
    let stacked = a.vstack(&b)?;
    let left_kernel = stacked.transpose().kernel_basis();
    let rows: Vec<Vec<Rational>> = left_kernel
        .iter()
        .map(|coeffs| {
            (0..a.cols())
                .map(|c| {
                    (0..a.rows())
                        .map(|r| &coeffs[r] * a.get(r, c))
                        .fold(Rational::zero(), |s, x| s + x)
                })
                .collect()
        })
        .collect();
    Ok(RatMatrix::from_rows(a.cols(), rows)?.row_space_basis())
}

/// True when the row space of `sub` lies inside the row space of `sup`.
pub fn contained_in(sub: &RatMatrix, sup: &RatMatrix) -> Result<bool> {
    Ok(sup.vstack(sub)?.rank() == sup.rank())
}

/// True when the two row spaces coincide.
pub fn same_span(a: &RatMatrix, b: &RatMatrix) -> Result<bool> {
    Ok(a.rank() == b.rank() && contained_in(a, b)?)
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
