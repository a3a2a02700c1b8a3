//! Meanders: the shifted matrix `T̃`, the connection matrix `U`, the
//! polynomials `F_{k,ℓ}` and the bivariate generating function
//! `Ñ(u,z) / (D̃(uz)·D(z))`.

use serde::Serialize;

use crate::binomial;
use crate::linalg::{LinalgError, PolyMatrix};
use crate::model::StepModel;
use crate::ring::series::truncated_product;
use crate::ring::{reduce_fraction, MPoly, VarName, HEIGHT_VAR};
use crate::transfer::{z_var, TransferError, TransferMatrix};

/// `T`, `T̃` (weights `β̃_s = -β_{s+1}` on the `(a-1)`-subsets of
/// `⟦-b-1, a-2⟧`) and `U[I, J] = [I ∪ {a-1} = J]`.
#[derive(Debug, Clone)]
pub struct MeanderSystem {
    a: usize,
    b: usize,
    base: TransferMatrix,
    tilde: TransferMatrix,
    u: PolyMatrix,
}

/// `F_{k,ℓ}` for `0 ≤ ℓ ≤ k ≤ kmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeanderTable {
    pub kmax: usize,
    /// `rows[k][ℓ]`.
    #[serde(serialize_with = "serialize_rows")]
    pub rows: Vec<Vec<MPoly>>,
}

fn serialize_rows<S: serde::Serializer>(rows: &[Vec<MPoly>], s: S) -> Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|p| p.to_string()).collect())
        .collect();
    text.serialize(s)
}

impl MeanderTable {
    pub fn get(&self, k: usize, l: usize) -> &MPoly {
        &self.rows[k][l]
    }

    /// `Σ_{k,ℓ} F_{k,ℓ} u^ℓ z^k` truncated after `z^kmax`, as coefficients
    /// of `z`.
    pub fn bivariate_coeffs(&self) -> Vec<MPoly> {
        let u = MPoly::var(&u_var());
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, f)| !f.is_zero())
                    .map(|(l, f)| f * &u.pow(l as u32))
                    .sum()
            })
            .collect()
    }
}

/// `M_k = G_k / F_{k+1}` kept as a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanderSum {
    pub k: usize,
    pub g: MPoly,
    pub f_next: MPoly,
}

impl MeanderSum {
    /// Common factors cancelled, denominator with positive constant term.
    pub fn reduced(&self) -> (MPoly, MPoly) {
        reduce_fraction(&self.g, &self.f_next)
    }
}

impl MeanderSystem {
    pub fn from_model(model: &StepModel) -> Result<Self, TransferError> {
        let (a, b) = model.require_two_sided()?;
        let base = TransferMatrix::from_model(model)?;
        let tilde =
            TransferMatrix::with_weights(-(b as i64) - 1, a as i64 - 1, |s| -model.beta(s + 1));
        let ti = tilde.index();
        let bi = base.index();
        let u = PolyMatrix::from_fn(ti.len(), bi.len(), |i, j| {
            let mut elements = ti.elements(ti.mask(i));
            if elements.first() == Some(&(-(b as i64) - 1)) {
                return MPoly::zero();
            }
            elements.push(a as i64 - 1);
            if bi.mask_of(&elements) == bi.mask(j) {
                MPoly::one()
            } else {
                MPoly::zero()
            }
        });
        let row_labels = ti.masks().iter().map(|&m| ti.marks(m)).collect();
        let col_labels = bi.masks().iter().map(|&m| bi.marks(m)).collect();
        let u = u.with_labels(row_labels, col_labels);
        Ok(MeanderSystem {
            a,
            b,
            base,
            tilde,
            u,
        })
    }

    pub fn base(&self) -> &TransferMatrix {
        &self.base
    }

    pub fn tilde(&self) -> &TransferMatrix {
        &self.tilde
    }

    pub fn u_matrix(&self) -> &PolyMatrix {
        &self.u
    }

    /// `F_{k,ℓ}` as the `Ĩ_0` entry of `𝐅_{k,ℓ}`, where `𝐅_{k,0} = U·𝐅_k`
    /// and `𝐅_{k+1,ℓ+1} = T̃·𝐅_{k,ℓ}`.
    pub fn iterate_fkl(&self, kmax: usize) -> MeanderTable {
        let it0 = self.tilde.i0();
        let base = self.base.iterate_f(kmax);
        let mut vectors: Vec<Vec<Vec<MPoly>>> = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let mut row = Vec::with_capacity(k + 1);
            row.push(self.u.mul_vec(&base[k].entries));
            for l in 1..=k {
                row.push(self.tilde.matrix().mul_vec(&vectors[k - 1][l - 1]));
            }
            vectors.push(row);
        }
        let rows = vectors
            .into_iter()
            .map(|row| row.into_iter().map(|v| v[it0].clone()).collect())
            .collect();
        MeanderTable { kmax, rows }
    }

    /// `D̃(z) = det(1 - zT̃)` and
    /// `Ñ(u,z) = Σ_{U[I,J]=1} cof(1 - uzT̃; I, Ĩ_0)·cof(1 - zT; I_0, J)`.
    ///
    /// Checks the degree of `D̃`, the dominant term of `Ñ`, and that
    /// `Ñ(u,z) / (D̃(uz)·D(z))` expands to the table of `F_{k,ℓ}`.
    pub fn d_tilde_and_n_tilde(&self) -> Result<(MPoly, MPoly), TransferError> {
        let d = self.base.d_of_z()?;
        self.d_tilde_and_n_tilde_with(&d)
    }

    pub(crate) fn d_tilde_and_n_tilde_with(
        &self,
        d: &MPoly,
    ) -> Result<(MPoly, MPoly), TransferError> {
        let z = z_var();
        let u = u_var();
        let zp = MPoly::var(&z);
        let uz = &MPoly::var(&u) * &zp;
        let d_tilde = self.tilde.d_of_z()?;
        let left = self.tilde.one_minus(&uz);
        let right = self.base.one_minus(&zp);
        let it0 = self.tilde.i0();
        let i0 = self.base.i0();
        let mut n_tilde = MPoly::zero();
        for i in 0..self.u.rows() {
            for j in 0..self.u.cols() {
                if self.u.entry(i, j).is_one() {
                    let l = left.cofactor(i, it0).expect("square");
                    if l.is_zero() {
                        continue;
                    }
                    n_tilde = n_tilde + l * right.cofactor(i0, j).expect("square");
                }
            }
        }
        if self.base.nondegenerate() {
            let (a, b) = (self.a, self.b);
            let z_deg = binomial(a + b + 1, a) - a - b - 1;
            let found = n_tilde.degree_in(&z) as usize;
            if found != z_deg {
                return Err(TransferError::DegreeMismatch {
                    what: "Ñ(u,z) in z",
                    expected: z_deg,
                    found,
                });
            }
            let u_deg = binomial(a + b, a - 1) - a;
            let found = n_tilde.coeff_of(&z, z_deg as u32).degree_in(&u) as usize;
            if found != u_deg {
                return Err(TransferError::DegreeMismatch {
                    what: "Ñ(u,z) dominant term in u",
                    expected: u_deg,
                    found,
                });
            }
        } else {
            log::warn!("extreme step weight is zero; skipping dominant-term check on Ñ(u,z)");
        }
        let order = 2 * (self.base.dim() + self.tilde.dim());
        let table = self.iterate_fkl(order);
        let den = d_tilde.substitute(&z, &uz) * d;
        let product = truncated_product(&table.bivariate_coeffs(), &den.coeffs_in(&z), order);
        let n_coeffs = n_tilde.coeffs_in(&z);
        for (k, c) in product.iter().enumerate() {
            if *c != n_coeffs.get(k).cloned().unwrap_or_else(MPoly::zero) {
                return Err(TransferError::SeriesMismatch { what: "Ñ(u,z)", k });
            }
        }
        Ok((d_tilde, n_tilde))
    }

    /// `G_k = Σ_ℓ F_{k,ℓ}` paired with `F_{k+1}` for `k ≤ kmax`, after
    /// checking that `Σ G_k z^k · D̃(z)·D(z)` agrees with `Ñ(1, z)`.
    pub fn meander_sums(&self, kmax: usize) -> Result<Vec<MeanderSum>, TransferError> {
        let z = z_var();
        let table = self.iterate_fkl(kmax);
        let f = self.base.f_sequence(kmax + 1);
        let g: Vec<MPoly> = table.rows.iter().map(|row| row.iter().sum()).collect();
        let d = self.base.d_of_z()?;
        let (d_tilde, n_tilde) = self.d_tilde_and_n_tilde_with(&d)?;
        let den = d_tilde * d;
        let num = n_tilde.substitute(&u_var(), &MPoly::one());
        let product = truncated_product(&g, &den.coeffs_in(&z), kmax);
        let n_coeffs = num.coeffs_in(&z);
        for (k, c) in product.iter().enumerate() {
            if *c != n_coeffs.get(k).cloned().unwrap_or_else(MPoly::zero) {
                return Err(TransferError::SeriesMismatch {
                    what: "G_k recurrence",
                    k,
                });
            }
        }
        Ok(g.into_iter()
            .enumerate()
            .map(|(k, g)| MeanderSum {
                k,
                g,
                f_next: f[k + 1].clone(),
            })
            .collect())
    }

    /// `U` is 0/1, rows of subsets holding `-b-1` are empty, every other row
    /// has its single 1 in the column `I ∪ {a-1}` (which contains `a-1`);
    /// both graphs satisfy the transfer-matrix structure checks.
    pub fn check_structure(&self) -> Result<(), TransferError> {
        self.base.check_single_arcs()?;
        self.base.check_forced_cycle()?;
        self.tilde.check_single_arcs()?;
        self.tilde.check_forced_cycle()?;
        let ti = self.tilde.index();
        let bi = self.base.index();
        let low = -(self.b as i64) - 1;
        let top = self.a as i64 - 1;
        for i in 0..self.u.rows() {
            let ones: Vec<usize> = (0..self.u.cols())
                .filter(|&j| !self.u.entry(i, j).is_zero())
                .collect();
            if ones.iter().any(|&j| !self.u.entry(i, j).is_one()) {
                return Err(TransferError::StructureViolation(
                    "U entry other than 0/1".into(),
                ));
            }
            let row_mask = ti.mask(i);
            let label = ti.marks(row_mask);
            if ti.contains(row_mask, low) {
                if !ones.is_empty() {
                    return Err(TransferError::StructureViolation(format!(
                        "U row {label} should be empty"
                    )));
                }
                continue;
            }
            match ones.as_slice() {
                [j] if bi.contains(bi.mask(*j), top) => {}
                _ => {
                    return Err(TransferError::StructureViolation(format!(
                        "U row {label} should have one arc into a subset holding a-1"
                    )))
                }
            }
        }
        Ok(())
    }

    /// Graphviz text of the union of both graphs plus the arcs of `U`.
    pub fn export_graph(&self) -> String {
        let mut out = String::from("digraph H {\n  node [shape=box, fontname=\"monospace\"];\n");
        self.tilde.write_graph_body(&mut out, "h");
        self.base.write_graph_body(&mut out, "g");
        for i in 0..self.u.rows() {
            for j in 0..self.u.cols() {
                if self.u.entry(i, j).is_one() {
                    out.push_str(&format!("  h{i} -> g{j} [label=\"1\", style=dashed];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `F_{k,ℓ} = cof(1 - A_k; ℓ, 0)`.
pub fn fkl_by_cofactor(model: &StepModel, k: usize, l: usize) -> Result<MPoly, LinalgError> {
    model.one_minus_a(k).cofactor(l, 0)
}

pub(crate) fn u_var() -> VarName {
    VarName::new(HEIGHT_VAR).expect("valid name")
}
