//! Dense matrices of polynomials, with fraction-free determinants and
//! signed cofactors.
//!
//! Cofactor convention: `cofactor(m, p, q) = (-1)^(p+q) · det(m without row p
//! and column q)`, so that `m⁻¹[i][j] = cofactor(m, j, i) / det(m)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ring::MPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("index ({row}, {col}) out of range for a {dim}x{dim} matrix")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },
}

/// Rectangular matrix with [`MPoly`] entries and optional row/column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MPoly>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

/// Above this window width the banded expansion falls back to Bareiss.
const MAX_BAND_WINDOW: usize = 20;

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MPoly::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { MPoly::one() } else { MPoly::zero() },
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            entries,
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn from_rows(rows: Vec<Vec<MPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        assert_eq!(row_labels.len(), self.rows);
        assert_eq!(col_labels.len(), self.cols);
        for labels in [&row_labels, &col_labels] {
            let mut seen = labels.clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), labels.len(), "labels must be unique");
        }
        self.row_labels = Some(row_labels);
        self.col_labels = Some(col_labels);
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: MPoly) {
        self.entries[i * self.cols + j] = value;
    }

    /// Canonical text of every entry, row by row.
    pub fn entries_text(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entry(i, j).to_string())
                    .collect()
            })
            .collect()
    }

    /// `1 - factor · self`, keeping labels.
    pub fn identity_minus_scaled(&self, factor: &MPoly) -> PolyMatrix {
        assert_eq!(self.rows, self.cols);
        let mut m = Self::from_fn(self.rows, self.cols, |i, j| {
            let delta = if i == j { MPoly::one() } else { MPoly::zero() };
            delta - factor * self.entry(i, j)
        });
        m.row_labels = self.row_labels.clone();
        m.col_labels = self.col_labels.clone();
        m
    }

    pub fn mul_vec(&self, v: &[MPoly]) -> Vec<MPoly> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !self.entry(i, j).is_zero() && !v[j].is_zero())
                    .map(|j| self.entry(i, j) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// The matrix with row `p` and column `q` removed.
    pub fn minor(&self, p: usize, q: usize) -> PolyMatrix {
        let mut out = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != p) {
            for j in (0..self.cols).filter(|&j| j != q) {
                out.push(self.entry(i, j).clone());
            }
        }
        PolyMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries: out,
            row_labels: None,
            col_labels: None,
        }
    }

    fn check_square(&self) -> Result<(), LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    fn check_index(&self, p: usize, q: usize) -> Result<(), LinalgError> {
        self.check_square()?;
        if p >= self.rows || q >= self.cols {
            return Err(LinalgError::IndexOutOfRange {
                row: p,
                col: q,
                dim: self.rows,
            });
        }
        Ok(())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Each step replaces `m[i][j]` by
    /// `(m[k][k]·m[i][j] - m[i][k]·m[k][j]) / previous pivot`, a division that
    /// is exact over any integral domain. Pivots are found by row swaps only
    /// (nonzero entry with the fewest terms); a column with no nonzero pivot
    /// candidate means the determinant is zero. The empty matrix has
    /// determinant 1.
    pub fn det(&self) -> MPoly {
        self.check_square()
            .expect("determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return MPoly::one();
        }
        let mut m: Vec<Vec<MPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = MPoly::one();
        for k in 0..n - 1 {
            let pivot = (k..n)
                .filter(|&i| !m[i][k].is_zero())
                .min_by_key(|&i| (m[i][k].num_terms(), i));
            let Some(pivot) = pivot else {
                return MPoly::zero();
            };
            if pivot != k {
                m.swap(pivot, k);
                negate = !negate;
            }
            let (top, bottom) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                let factor = row[k].clone();
                for j in k + 1..n {
                    let lhs = if row[j].is_zero() {
                        MPoly::zero()
                    } else {
                        &pivot_row[k] * &row[j]
                    };
                    let next = if factor.is_zero() || pivot_row[j].is_zero() {
                        lhs
                    } else {
                        lhs - &factor * &pivot_row[j]
                    };
                    row[j] = if prev.is_one() || next.is_zero() {
                        next
                    } else {
                        next.exact_div(&prev)
                            .expect("Bareiss division is exact over an integral domain")
                    };
                }
                row[k] = MPoly::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// `(-1)^(p+q) · det(minor(p, q))`.
    pub fn cofactor(&self, p: usize, q: usize) -> Result<MPoly, LinalgError> {
        self.check_index(p, q)?;
        let d = self.minor(p, q).det();
        Ok(if (p + q) % 2 == 1 { -d } else { d })
    }

    /// Same value as [`cofactor`](Self::cofactor), computed with
    /// [`det_banded`](Self::det_banded).
    pub fn cofactor_banded(&self, p: usize, q: usize) -> Result<MPoly, LinalgError> {
        self.check_index(p, q)?;
        let d = self.minor(p, q).det_banded();
        Ok(if (p + q) % 2 == 1 { -d } else { d })
    }

    /// Lower and upper bandwidth of the nonzero pattern.
    pub fn bandwidths(&self) -> (usize, usize) {
        let mut lo = 0;
        let mut hi = 0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.entry(i, j).is_zero() {
                    if i > j {
                        lo = lo.max(i - j);
                    } else {
                        hi = hi.max(j - i);
                    }
                }
            }
        }
        (lo, hi)
    }

    /// Determinant by permutation expansion restricted to the band.
    ///
    /// Rows are processed in order; the state is the set of already used
    /// columns inside the sliding window `[i - lo, i + hi]`. Every column left
    /// of the window must already be used, so the state space has at most
    /// `2^(lo+hi+1)` elements and no division is ever performed. Intended for
    /// long banded matrices; wide bands fall back to [`det`](Self::det).
    pub fn det_banded(&self) -> MPoly {
        self.check_square()
            .expect("determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return MPoly::one();
        }
        let (lo, hi) = self.bandwidths();
        let width = lo + hi + 1;
        if width > MAX_BAND_WINDOW {
            return self.det();
        }
        // Bit t of a state stands for column (i - lo + t) when row i is next.
        // Columns left of 0 are marked as used from the start.
        let mut states: BTreeMap<u32, MPoly> = BTreeMap::new();
        states.insert((1u32 << lo) - 1, MPoly::one());
        for i in 0..n {
            let base = i as i64 - lo as i64;
            let mut next: BTreeMap<u32, MPoly> = BTreeMap::new();
            for (&mask, value) in &states {
                for t in 0..width {
                    let col = base + t as i64;
                    if col < 0 || col >= n as i64 || mask & (1 << t) != 0 {
                        continue;
                    }
                    let e = self.entry(i, col as usize);
                    if e.is_zero() {
                        continue;
                    }
                    let used = mask | (1 << t);
                    // Column `base` is unreachable from row i + 1 on.
                    if used & 1 == 0 {
                        continue;
                    }
                    let inversions = (mask >> (t + 1)).count_ones();
                    let contribution = value * e;
                    let contribution = if inversions % 2 == 1 {
                        -contribution
                    } else {
                        contribution
                    };
                    let slot = next.entry(used >> 1).or_default();
                    *slot = &*slot + &contribution;
                }
            }
            next.retain(|_, v| !v.is_zero());
            states = next;
        }
        states.into_values().sum()
    }

    /// `cofactor(ℓ, 0)` for every row `ℓ`, sharing work between rows.
    ///
    /// Deleting column 0 amounts to starting the banded expansion with that
    /// column already used; deleting row `ℓ` to skipping it. A forward pass
    /// over rows `0..ℓ` and a backward pass over rows `ℓ+1..n` are computed
    /// once and joined at every `ℓ`.
    pub fn first_column_cofactors(&self) -> Vec<MPoly> {
        self.check_square()
            .expect("cofactors of a non-square matrix");
        let n = self.rows;
        let (lo, hi) = self.bandwidths();
        let width = lo + hi + 1;
        if width > MAX_BAND_WINDOW {
            return (0..n)
                .map(|l| self.cofactor(l, 0).expect("in range"))
                .collect();
        }
        // One row step of the expansion; `visit(next_mask, sign, entry)`.
        let step = |i: usize, mask: u32, visit: &mut dyn FnMut(u32, bool, &MPoly)| {
            let base = i as i64 - lo as i64;
            for t in 0..width {
                let col = base + t as i64;
                if col < 0 || col >= n as i64 || mask & (1 << t) != 0 {
                    continue;
                }
                let e = self.entry(i, col as usize);
                let used = mask | (1 << t);
                if e.is_zero() || used & 1 == 0 {
                    continue;
                }
                let negative = (mask >> (t + 1)).count_ones() % 2 == 1;
                visit(used >> 1, negative, e);
            }
        };
        // backward[i][mask]: signed sum over completions of rows i..n.
        let mut backward: Vec<BTreeMap<u32, MPoly>> = vec![BTreeMap::new(); n + 1];
        backward[n].insert((1u32 << lo) - 1, MPoly::one());
        for i in (0..n).rev() {
            let masks = (0u32..1 << width).filter(|m| m.count_ones() as usize == lo);
            let mut layer = BTreeMap::new();
            for mask in masks {
                let mut acc = MPoly::zero();
                step(i, mask, &mut |next, negative, e| {
                    if let Some(rest) = backward[i + 1].get(&next) {
                        let term = e * rest;
                        acc = if negative { &acc - &term } else { &acc + &term };
                    }
                });
                if !acc.is_zero() {
                    layer.insert(mask, acc);
                }
            }
            backward[i] = layer;
        }
        let mut out = Vec::with_capacity(n);
        let mut forward: BTreeMap<u32, MPoly> = BTreeMap::new();
        forward.insert((1u32 << (lo + 1)) - 1, MPoly::one());
        for l in 0..n {
            let mut cof = MPoly::zero();
            for (&mask, value) in forward.iter().filter(|(m, _)| *m & 1 != 0) {
                if let Some(rest) = backward[l + 1].get(&(mask >> 1)) {
                    cof = cof + value * rest;
                }
            }
            out.push(if l % 2 == 1 { -cof } else { cof });
            let mut next: BTreeMap<u32, MPoly> = BTreeMap::new();
            for (&mask, value) in &forward {
                step(l, mask, &mut |m, negative, e| {
                    let term = value * e;
                    let slot = next.entry(m).or_default();
                    *slot = if negative {
                        &*slot - &term
                    } else {
                        &*slot + &term
                    };
                });
            }
            next.retain(|_, v| !v.is_zero());
            forward = next;
        }
        out
    }
}
