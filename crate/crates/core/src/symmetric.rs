//! Symmetric step sets: the factorisation `F_k = F_k^+·F_k^-`, the folded
//! meander identities and the generating functions of the `±` sequences.
//!
//! Every identity is checked with denominators cleared, so no division by 2
//! (or by anything) is ever needed.

use serde::Serialize;
use thiserror::Error;

use crate::meander::{u_var, MeanderSystem};
use crate::model::{ModelError, StepModel};
use crate::ring::series::truncated_product;
use crate::ring::MPoly;
use crate::transfer::{z_var, TransferError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetricError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error("identity `{identity}` fails at k = {k}, l = {l}")]
    IdentityFailed {
        identity: &'static str,
        k: usize,
        l: usize,
    },
    #[error("{which}: coefficient of z^{degree} should vanish")]
    TailNotZero { which: &'static str, degree: usize },
}

/// Outcome of one checked identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub identity: String,
    pub holds: bool,
}

pub const PRODUCT_IDENTITY: &str = "F_plus_times_F_minus_equals_F";
pub const PLUS_IDENTITY: &str = "meander_sum_pairs_equal_F_plus_cofactors";
pub const MINUS_IDENTITY: &str = "meander_difference_pairs_equal_F_minus_cofactors";
pub const MIDDLE_IDENTITY: &str = "middle_meander_equals_F_plus_cofactor";
pub const MEANDER_SUM_IDENTITY: &str = "meander_sum_reduces_to_F_plus";

/// `F_k^±` for `k ≤ kmax`, cofactor tables `F_{k,ℓ}^±` and the verdicts of
/// every identity, with the first failure of each.
#[derive(Debug, Clone)]
pub struct SymReport {
    pub kmax: usize,
    /// `F_0^+ .. F_{kmax+1}^+`.
    pub f_plus: Vec<MPoly>,
    pub f_minus: Vec<MPoly>,
    /// `cof_plus[k][ℓ]` for `ℓ ≤ k/2`.
    pub cof_plus: Vec<Vec<MPoly>>,
    /// `cof_minus[k][ℓ]` for `ℓ < k/2`.
    pub cof_minus: Vec<Vec<MPoly>>,
    /// `Σ_{ℓ ≤ k/2} F_{k,ℓ}^+`, the folded meander numerator.
    pub meander_numerators: Vec<MPoly>,
    pub verdicts: Vec<Verdict>,
    failures: Vec<SymmetricError>,
}

impl SymReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }

    /// The report itself, or the first failed identity.
    pub fn into_result(self) -> Result<SymReport, SymmetricError> {
        match self.failures.first() {
            Some(e) => Err(e.clone()),
            None => Ok(self),
        }
    }
}

/// `F_k^± = det(1 - A_{k-1}^±)` for `0 ≤ k ≤ kmax`, with `F_0^± = 1`.
pub fn sym_f(model: &StepModel, kmax: usize) -> Result<(Vec<MPoly>, Vec<MPoly>), SymmetricError> {
    let mut plus = vec![MPoly::one()];
    let mut minus = vec![MPoly::one()];
    for k in 1..=kmax {
        let band = model.sym_band(k - 1)?;
        plus.push(band.plus.det_banded());
        minus.push(band.minus.det_banded());
    }
    if kmax == 0 && !model.is_symmetric() {
        return Err(ModelError::NotSymmetric.into());
    }
    Ok((plus, minus))
}

/// Rows `[k][ℓ]` of cofactors.
pub type CofactorTable = Vec<Vec<MPoly>>;

/// `F_{k,ℓ}^± = cof(1 - A_k^±; ℓ, 0)` for every valid `ℓ`, `k ≤ kmax`.
pub fn sym_cofactors(
    model: &StepModel,
    kmax: usize,
) -> Result<(CofactorTable, CofactorTable), SymmetricError> {
    let mut plus = Vec::with_capacity(kmax + 1);
    let mut minus = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let band = model.sym_band(k)?;
        plus.push(column_cofactors(&band.plus));
        minus.push(column_cofactors(&band.minus));
    }
    Ok((plus, minus))
}

fn column_cofactors(m: &crate::linalg::PolyMatrix) -> Vec<MPoly> {
    m.first_column_cofactors()
}

/// Checks `F_k = F_k^+ F_k^-` for `k ≤ kmax + 1` and, for `k ≤ kmax`,
///
/// - `(F_{k,ℓ} + F_{k,k-ℓ})·F_{k+1}^+ = F_{k,ℓ}^+·F_{k+1}` for `ℓ < k/2`,
/// - `(F_{k,ℓ} - F_{k,k-ℓ})·F_{k+1}^- = F_{k,ℓ}^-·F_{k+1}` for `ℓ < k/2`,
/// - `F_{k,k/2}·F_{k+1}^+ = F_{k,k/2}^+·F_{k+1}` for even `k`,
/// - `G_k·F_{k+1}^+ = (Σ_{ℓ ≤ k/2} F_{k,ℓ}^+)·F_{k+1}`.
pub fn sym_meander_identities(model: &StepModel, kmax: usize) -> Result<SymReport, SymmetricError> {
    if !model.is_symmetric() {
        return Err(ModelError::NotSymmetric.into());
    }
    let sys = MeanderSystem::from_model(model)?;
    let table = sys.iterate_fkl(kmax);
    let f = sys.base().f_sequence(kmax + 1);
    let (f_plus, f_minus) = sym_f(model, kmax + 1)?;
    let (cof_plus, cof_minus) = sym_cofactors(model, kmax)?;

    let mut failures = Vec::new();
    let mut check = |identity: &'static str, k: usize, l: usize, holds: bool| {
        if !holds {
            failures.push(SymmetricError::IdentityFailed { identity, k, l });
        }
    };
    for k in 0..=kmax + 1 {
        check(PRODUCT_IDENTITY, k, 0, &f_plus[k] * &f_minus[k] == f[k]);
    }
    let mut meander_numerators = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let (fp, fm, fk) = (&f_plus[k + 1], &f_minus[k + 1], &f[k + 1]);
        for l in (0..=k).take_while(|&l| 2 * l < k) {
            let (near, far) = (table.get(k, l), table.get(k, k - l));
            check(
                PLUS_IDENTITY,
                k,
                l,
                (near + far) * fp == &cof_plus[k][l] * fk,
            );
            check(
                MINUS_IDENTITY,
                k,
                l,
                (near - far) * fm == &cof_minus[k][l] * fk,
            );
        }
        if k % 2 == 0 {
            let l = k / 2;
            check(
                MIDDLE_IDENTITY,
                k,
                l,
                table.get(k, l) * fp == &cof_plus[k][l] * fk,
            );
        }
        let numerator: MPoly = cof_plus[k].iter().sum();
        let g: MPoly = table.rows[k].iter().sum();
        check(MEANDER_SUM_IDENTITY, k, 0, g * fp == &numerator * fk);
        meander_numerators.push(numerator);
    }

    let verdicts = [
        PRODUCT_IDENTITY,
        PLUS_IDENTITY,
        MINUS_IDENTITY,
        MIDDLE_IDENTITY,
        MEANDER_SUM_IDENTITY,
    ]
    .iter()
    .map(|&name| Verdict {
        identity: name.to_string(),
        holds: !failures.iter().any(
            |e| matches!(e, SymmetricError::IdentityFailed { identity, .. } if *identity == name),
        ),
    })
    .collect();
    Ok(SymReport {
        kmax,
        f_plus,
        f_minus,
        cof_plus,
        cof_minus,
        meander_numerators,
        verdicts,
        failures,
    })
}

/// Pairs `(Σ_{ℓ ≤ k/2} F_{k,ℓ}^+, F_{k+1}^+)` whose quotient is the
/// generating function of meanders of height at most `k`.
pub fn sym_meander_sum(
    model: &StepModel,
    kmax: usize,
) -> Result<Vec<(MPoly, MPoly)>, SymmetricError> {
    let report = sym_meander_identities(model, kmax)?;
    if let Some(e) = report.failures.iter().find(
        |e| matches!(e, SymmetricError::IdentityFailed { identity, .. } if *identity == MEANDER_SUM_IDENTITY),
    ) {
        return Err(e.clone());
    }
    Ok(report
        .meander_numerators
        .into_iter()
        .zip(report.f_plus.into_iter().skip(1))
        .collect())
}

/// Numerators of the four `±` generating functions over `D(z²)` and
/// `D̃(uz²)·D(z²)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymNumerators {
    pub d_z2: MPoly,
    pub d_tilde_uz2: MPoly,
    pub n_plus: MPoly,
    pub n_minus: MPoly,
    pub n_tilde_plus: MPoly,
    pub n_tilde_minus: MPoly,
}

/// How far past the denominator degree the `±` recurrences may take to
/// settle. The default is `2a + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailMargin(pub usize);

impl TailMargin {
    pub fn for_model(model: &StepModel) -> Self {
        TailMargin(2 * model.a().max(0) as usize + 2)
    }
}

/// Numerators by series matching: the sequences are expanded up to
/// `2·(deg den + margin)`, multiplied by the denominator, and every
/// coefficient past `deg den + margin` must vanish.
pub fn sym_numerators(model: &StepModel) -> Result<SymNumerators, SymmetricError> {
    sym_numerators_with(model, TailMargin::for_model(model))
}

pub fn sym_numerators_with(
    model: &StepModel,
    margin: TailMargin,
) -> Result<SymNumerators, SymmetricError> {
    if !model.is_symmetric() {
        return Err(ModelError::NotSymmetric.into());
    }
    let z = z_var();
    let zp = MPoly::var(&z);
    let z2 = zp.pow(2);
    let uz2 = MPoly::var(&u_var()) * &z2;
    let sys = MeanderSystem::from_model(model)?;
    let d = sys.base().d_of_z()?;
    let (d_tilde, _) = sys.d_tilde_and_n_tilde_with(&d)?;
    let d_z2 = d.substitute(&z, &z2);
    let d_tilde_uz2 = d_tilde.substitute(&z, &uz2);

    let bound = d_z2.degree_in(&z) as usize + margin.0;
    let order = 2 * bound;
    let (f_plus, f_minus) = sym_f(model, order)?;
    let n_plus = match_numerator(&f_plus, &d_z2, bound, order, "N+(z)")?;
    let n_minus = match_numerator(&f_minus, &d_z2, bound, order, "N-(z)")?;

    let den2 = &d_tilde_uz2 * &d_z2;
    let bound2 = den2.degree_in(&z) as usize + margin.0;
    let order2 = 2 * bound2;
    let (cof_plus, cof_minus) = sym_cofactors(model, order2)?;
    let n_tilde_plus = match_numerator(&bivariate(&cof_plus), &den2, bound2, order2, "Ñ+(u,z)")?;
    let n_tilde_minus = match_numerator(&bivariate(&cof_minus), &den2, bound2, order2, "Ñ-(u,z)")?;
    Ok(SymNumerators {
        d_z2,
        d_tilde_uz2,
        n_plus,
        n_minus,
        n_tilde_plus,
        n_tilde_minus,
    })
}

/// `Σ_ℓ c_ℓ u^ℓ` per row.
fn bivariate(table: &[Vec<MPoly>]) -> Vec<MPoly> {
    let u = MPoly::var(&u_var());
    table
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| c * &u.pow(l as u32))
                .sum()
        })
        .collect()
}

fn match_numerator(
    seq: &[MPoly],
    den: &MPoly,
    bound: usize,
    order: usize,
    which: &'static str,
) -> Result<MPoly, SymmetricError> {
    let z = z_var();
    let product = truncated_product(seq, &den.coeffs_in(&z), order);
    if let Some(degree) = (bound + 1..=order).find(|&n| !product[n].is_zero()) {
        return Err(SymmetricError::TailNotZero { which, degree });
    }
    Ok(MPoly::from_coeffs_in(&z, &product[..=bound]))
}
