//! Subsets, the transfer matrix `T` and the rational generating function of
//! the sequence `F_k`.
//!
//! Rows and columns of `T` are the `a`-subsets of `⟦-b, a-1⟧`, stored as
//! bitmasks (bit `i` stands for the element `-b + i`). The same construction,
//! run on a shifted universe with other weights, gives the meander matrix `T̃`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::binomial;
use crate::linalg::PolyMatrix;
use crate::model::{ModelError, StepModel};
use crate::ring::series::truncated_product;
use crate::ring::{MPoly, VarName, LENGTH_VAR};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{what}: expected z-degree {expected}, found {found}")]
    DegreeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{what}: expected leading term ±{expected}, found {found}")]
    LeadingTermMismatch {
        what: &'static str,
        expected: String,
        found: String,
    },
    #[error("{what}: series disagrees at z^{k}")]
    SeriesMismatch { what: &'static str, k: usize },
    #[error("structure check failed: {0}")]
    StructureViolation(String),
}

/// All `size`-subsets of `⟦lo, lo + width - 1⟧` in ascending bitmask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetIndex {
    lo: i64,
    width: usize,
    size: usize,
    masks: Vec<u64>,
    positions: HashMap<u64, usize>,
}

impl SubsetIndex {
    pub fn new(lo: i64, width: usize, size: usize) -> Self {
        assert!(size <= width && width < 64);
        let masks: Vec<u64> = (0u64..1 << width)
            .filter(|m| m.count_ones() as usize == size)
            .collect();
        let positions = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        SubsetIndex {
            lo,
            width,
            size,
            masks,
            positions,
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, pos: usize) -> u64 {
        self.masks[pos]
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn position(&self, mask: u64) -> Option<usize> {
        self.positions.get(&mask).copied()
    }

    pub fn contains(&self, mask: u64, x: i64) -> bool {
        let i = x - self.lo;
        (0..self.width as i64).contains(&i) && mask & (1 << i) != 0
    }

    pub fn elements(&self, mask: u64) -> Vec<i64> {
        (0..self.width)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.lo + i as i64)
            .collect()
    }

    /// Mask of a set of elements; panics on elements outside the universe.
    pub fn mask_of(&self, elements: &[i64]) -> u64 {
        elements.iter().fold(0, |m, &x| {
            let i = x - self.lo;
            assert!((0..self.width as i64).contains(&i), "{x} outside universe");
            m | 1 << i
        })
    }

    /// `y`/`n` per element of the universe, smallest element first.
    pub fn marks(&self, mask: u64) -> String {
        (0..self.width)
            .map(|i| if mask & (1 << i) != 0 { 'y' } else { 'n' })
            .collect()
    }

    /// `⟦m, m + size - 1⟧` with every element reduced into the universe.
    pub fn cyclic_interval(&self, m: i64) -> u64 {
        let w = self.width as i64;
        (m..m + self.size as i64).fold(0, |acc, x| acc | 1 << (x - self.lo).rem_euclid(w))
    }
}

/// `(-1)^#{i ∈ I : i < s}`.
pub fn epsilon_s(elements: &[i64], s: i64) -> i64 {
    if elements.iter().filter(|&&i| i < s).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A transfer matrix on the `top`-subsets of `⟦lo, top - 1⟧`.
///
/// `T[I, J] = ε_s(I)·β_s` when `I ∪ {top} = (J + 1) ∪ {s}`, zero otherwise.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    index: SubsetIndex,
    top: i64,
    mat: PolyMatrix,
    beta_low: MPoly,
    beta_top: MPoly,
}

/// `𝐅_k`, one entry per subset in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    pub k: usize,
    pub entries: Vec<MPoly>,
}

impl TransferMatrix {
    /// `T` for a step set with `a ≥ 1`, `b ≥ 1`.
    pub fn from_model(model: &StepModel) -> Result<Self, TransferError> {
        let (a, b) = model.require_two_sided()?;
        Ok(Self::with_weights(-(b as i64), a as i64, |s| model.beta(s)))
    }

    /// The construction for an arbitrary universe `⟦lo, top - 1⟧` and weight
    /// function `s ↦ β_s`, `lo ≤ s ≤ top`.
    pub fn with_weights(lo: i64, top: i64, beta: impl Fn(i64) -> MPoly) -> Self {
        assert!(lo < 0 && top >= 0);
        let width = (top - lo) as usize;
        let index = SubsetIndex::new(lo, width, top as usize);
        let betas: Vec<MPoly> = (lo..=top).map(&beta).collect();
        let n = index.len();
        let mut mat = PolyMatrix::zeros(n, n);
        for (row, &i_mask) in index.masks().iter().enumerate() {
            let elements = index.elements(i_mask);
            // I ∪ {top} over ⟦lo, top⟧, bit `width` standing for top.
            let with_top = i_mask | 1 << width;
            for bit in (0..=width).filter(|&bit| with_top & (1 << bit) != 0) {
                let shifted = with_top & !(1 << bit);
                // J + 1 never contains lo.
                if shifted & 1 != 0 {
                    continue;
                }
                let j_mask = shifted >> 1;
                let col = index.position(j_mask).expect("subset of the right size");
                let s = lo + bit as i64;
                let weight = &betas[bit];
                if weight.is_zero() {
                    continue;
                }
                let entry = if epsilon_s(&elements, s) < 0 {
                    -weight
                } else {
                    weight.clone()
                };
                debug_assert!(mat.entry(row, col).is_zero(), "two steps for one pair");
                mat.set(row, col, entry);
            }
        }
        let labels: Vec<String> = index.masks().iter().map(|&m| index.marks(m)).collect();
        let mat = mat.with_labels(labels.clone(), labels);
        TransferMatrix {
            beta_low: betas[0].clone(),
            beta_top: betas[width].clone(),
            index,
            top,
            mat,
        }
    }

    pub fn index(&self) -> &SubsetIndex {
        &self.index
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn entry(&self, i_mask: u64, j_mask: u64) -> &MPoly {
        let i = self.index.position(i_mask).expect("known subset");
        let j = self.index.position(j_mask).expect("known subset");
        self.mat.entry(i, j)
    }

    /// Position of `I_m`, `lo ≤ m ≤ top`.
    pub fn distinguished(&self, m: i64) -> usize {
        assert!((self.index.lo()..=self.top).contains(&m));
        self.index
            .position(self.index.cyclic_interval(m))
            .expect("interval subset is listed")
    }

    /// Position of `I_0 = ⟦0, top - 1⟧`.
    pub fn i0(&self) -> usize {
        self.distinguished(0)
    }

    /// True when the extreme weights are nonzero, so the degree statements
    /// hold.
    pub fn nondegenerate(&self) -> bool {
        !self.beta_low.is_zero() && !self.beta_top.is_zero()
    }

    /// `𝐅_0 .. 𝐅_kmax` with `𝐅_0 = e_{I_0}` and `𝐅_{k+1} = T·𝐅_k`.
    pub fn iterate_f(&self, kmax: usize) -> Vec<FVector> {
        let mut start = vec![MPoly::zero(); self.dim()];
        start[self.i0()] = MPoly::one();
        self.iterate_from(start, kmax)
    }

    pub(crate) fn iterate_from(&self, start: Vec<MPoly>, kmax: usize) -> Vec<FVector> {
        let mut out = vec![FVector {
            k: 0,
            entries: start,
        }];
        for k in 1..=kmax {
            let next = self.mat.mul_vec(&out[k - 1].entries);
            out.push(FVector { k, entries: next });
        }
        out
    }

    /// `F_0 .. F_kmax`, the `I_0` entries of the iterated vectors.
    pub fn f_sequence(&self, kmax: usize) -> Vec<MPoly> {
        let i0 = self.i0();
        self.iterate_f(kmax)
            .into_iter()
            .map(|v| v.entries[i0].clone())
            .collect()
    }

    /// `1 - factor·T`.
    pub fn one_minus(&self, factor: &MPoly) -> PolyMatrix {
        self.mat.identity_minus_scaled(factor)
    }

    pub fn det_t(&self) -> MPoly {
        self.mat.det()
    }

    /// `β_lo^C(w-1, size-1) · β_top^C(w-1, size)`, equal to `det T` up to sign.
    pub fn det_closed_form(&self) -> MPoly {
        let w = self.index.width();
        let size = self.index.size();
        let low_exp = if size == 0 {
            0
        } else {
            binomial(w - 1, size - 1)
        };
        self.beta_low.pow(low_exp as u32) * self.beta_top.pow(binomial(w - 1, size) as u32)
    }

    /// `D(z) = det(1 - zT)`, with its degree and leading coefficient checked.
    pub fn d_of_z(&self) -> Result<MPoly, TransferError> {
        let z = z_var();
        let d = self.one_minus(&MPoly::var(&z)).det();
        if !self.nondegenerate() {
            log::warn!("extreme step weight is zero; skipping degree checks on D(z)");
            return Ok(d);
        }
        let expected = self.dim();
        let found = d.degree_in(&z) as usize;
        if found != expected {
            return Err(TransferError::DegreeMismatch {
                what: "D(z)",
                expected,
                found,
            });
        }
        let lead = d.coeff_of(&z, found as u32);
        let closed = self.det_closed_form();
        if lead != closed && lead != -&closed {
            return Err(TransferError::LeadingTermMismatch {
                what: "D(z)",
                expected: closed.to_string(),
                found: lead.to_string(),
            });
        }
        Ok(d)
    }

    /// `N(z)`, the `(I_0, I_0)` cofactor of `1 - zT`, checked against the
    /// iterated sequence: `D(z)·Σ F_k z^k ≡ N(z) mod z^{K+1}`, `K = 2·dim`.
    pub fn n_of_z(&self) -> Result<MPoly, TransferError> {
        let d = self.d_of_z()?;
        self.n_of_z_with(&d)
    }

    pub(crate) fn n_of_z_with(&self, d: &MPoly) -> Result<MPoly, TransferError> {
        let z = z_var();
        let i0 = self.i0();
        let n = self
            .one_minus(&MPoly::var(&z))
            .cofactor(i0, i0)
            .expect("square matrix");
        if self.nondegenerate() {
            let expected = self.dim() - self.index.width();
            let found = n.degree_in(&z) as usize;
            if found != expected {
                return Err(TransferError::DegreeMismatch {
                    what: "N(z)",
                    expected,
                    found,
                });
            }
        } else {
            log::warn!("extreme step weight is zero; skipping degree checks on N(z)");
        }
        let order = 2 * self.dim();
        let product = truncated_product(&d.coeffs_in(&z), &self.f_sequence(order), order);
        let n_coeffs = n.coeffs_in(&z);
        for (k, c) in product.iter().enumerate() {
            let expected = n_coeffs.get(k).cloned().unwrap_or_else(MPoly::zero);
            if *c != expected {
                return Err(TransferError::SeriesMismatch { what: "N(z)", k });
            }
        }
        Ok(n)
    }

    /// Rows containing `lo` have a single nonzero entry `β_lo`; columns
    /// missing `top - 1` have a single nonzero entry `(-1)^top·β_top`.
    pub fn check_single_arcs(&self) -> Result<(), TransferError> {
        let n = self.dim();
        let lo = self.index.lo();
        let sign_top = if self.top % 2 == 0 {
            self.beta_top.clone()
        } else {
            -&self.beta_top
        };
        for (pos, &mask) in self.index.masks().iter().enumerate() {
            let label = self.index.marks(mask);
            if self.index.contains(mask, lo) {
                let row: Vec<&MPoly> = (0..n)
                    .map(|j| self.mat.entry(pos, j))
                    .filter(|e| !e.is_zero())
                    .collect();
                let expected = usize::from(!self.beta_low.is_zero());
                if row.len() != expected || row.iter().any(|e| **e != self.beta_low) {
                    return Err(TransferError::StructureViolation(format!(
                        "row {label} should hold exactly β_lo"
                    )));
                }
            }
            if !self.index.contains(mask, self.top - 1) {
                let col: Vec<&MPoly> = (0..n)
                    .map(|i| self.mat.entry(i, pos))
                    .filter(|e| !e.is_zero())
                    .collect();
                let expected = usize::from(!self.beta_top.is_zero());
                if col.len() != expected || col.iter().any(|e| **e != sign_top) {
                    return Err(TransferError::StructureViolation(format!(
                        "column {label} should hold exactly ±β_top"
                    )));
                }
            }
        }
        Ok(())
    }

    /// For `0 < m ≤ top` the only arc out of `I_m` goes to `I_{m-1}`; for
    /// `lo ≤ m < 0` the only arc into `I_m` comes from `I_{m+1}`.
    pub fn check_forced_cycle(&self) -> Result<(), TransferError> {
        if !self.nondegenerate() {
            log::warn!("extreme step weight is zero; skipping forced-path check");
            return Ok(());
        }
        let n = self.dim();
        for m in 1..=self.top {
            let from = self.distinguished(m);
            let outs: Vec<usize> = (0..n)
                .filter(|&j| !self.mat.entry(from, j).is_zero())
                .collect();
            if outs != [self.distinguished(m - 1)] {
                return Err(TransferError::StructureViolation(format!(
                    "I_{m} should only lead to I_{}",
                    m - 1
                )));
            }
        }
        for m in self.index.lo()..0 {
            let to = self.distinguished(m);
            let ins: Vec<usize> = (0..n)
                .filter(|&i| !self.mat.entry(i, to).is_zero())
                .collect();
            if ins != [self.distinguished(m + 1)] {
                return Err(TransferError::StructureViolation(format!(
                    "I_{m} should only be reached from I_{}",
                    m + 1
                )));
            }
        }
        Ok(())
    }

    /// Graphviz text of the graph with adjacency matrix `T`.
    pub fn export_graph(&self) -> String {
        let mut out = String::from("digraph G {\n  node [shape=box, fontname=\"monospace\"];\n");
        self.write_graph_body(&mut out, "g");
        out.push_str("}\n");
        out
    }

    pub(crate) fn write_graph_body(&self, out: &mut String, prefix: &str) {
        let i0 = self.i0();
        for (pos, &mask) in self.index.masks().iter().enumerate() {
            let fill = if pos == i0 {
                ", style=filled, fillcolor=gray"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "  {prefix}{pos} [label=\"{}\"{fill}];",
                self.index.marks(mask)
            );
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let e = self.mat.entry(i, j);
                if !e.is_zero() {
                    let _ = writeln!(out, "  {prefix}{i} -> {prefix}{j} [label=\"{e}\"];");
                }
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TransferDump {
            universe: (self.index.lo(), self.top - 1),
            subsets: self
                .index
                .masks()
                .iter()
                .map(|&m| self.index.marks(m))
                .collect(),
            i0: self.index.marks(self.index.mask(self.i0())),
            entries: self.mat.entries_text(),
        })
        .expect("plain data serializes")
    }
}

#[derive(Serialize)]
struct TransferDump {
    universe: (i64, i64),
    subsets: Vec<String>,
    i0: String,
    entries: Vec<Vec<String>>,
}

pub(crate) fn z_var() -> VarName {
    VarName::new(LENGTH_VAR).expect("valid name")
}
