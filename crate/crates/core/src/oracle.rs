//! Brute-force ground truth: weighted path counting by dynamic programming
//! and direct enumeration of the signed permutation sums behind `𝐅_k`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::LinalgError;
use crate::model::{ModelError, StepModel};
use crate::ring::{rational_series, Grading, MPoly, RingError};

/// Largest order accepted by [`iperm_sums`].
pub const MAX_IPERM_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("permutation enumeration is limited to order {MAX_IPERM_ORDER}, got {0}")]
    OrderTooLarge(usize),
    #[error("final height {l} exceeds the bound {k}")]
    HeightOutOfRange { l: usize, k: usize },
}

/// `counts[n][h]`: total weight of length-`n` paths from 0 to `h` that stay
/// within `[0, k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountTable {
    /// `None` when unbounded.
    pub bound: Option<usize>,
    pub nmax: usize,
    pub counts: Vec<Vec<MPoly>>,
}

impl PathCountTable {
    pub fn excursions(&self, n: usize) -> &MPoly {
        &self.counts[n][0]
    }

    pub fn ending_at(&self, n: usize, h: usize) -> MPoly {
        self.counts[n].get(h).cloned().unwrap_or_else(MPoly::zero)
    }

    pub fn meanders(&self, n: usize) -> MPoly {
        self.counts[n].iter().sum()
    }
}

/// Straight recurrence `counts[n][h] = Σ_s counts[n-1][h-s]·ω_s`.
///
/// Without a bound the ceiling is `nmax·max(a, 0)`, which no path of length
/// at most `nmax` can reach past.
pub fn dp_count(model: &StepModel, bound: Option<usize>, nmax: usize) -> PathCountTable {
    let top = bound.unwrap_or(nmax * model.a().max(0) as usize);
    let steps: Vec<(i64, MPoly)> = model
        .steps()
        .map(|s| (s, model.weight(s)))
        .filter(|(_, w)| !w.is_zero())
        .collect();
    let mut counts = Vec::with_capacity(nmax + 1);
    let mut row = vec![MPoly::zero(); top + 1];
    row[0] = MPoly::one();
    counts.push(row);
    for n in 1..=nmax {
        let prev = &counts[n - 1];
        let mut row = vec![MPoly::zero(); top + 1];
        for (h, cell) in row.iter_mut().enumerate() {
            for (s, w) in &steps {
                let from = h as i64 - s;
                if (0..=top as i64).contains(&from) && !prev[from as usize].is_zero() {
                    *cell = &*cell + &(&prev[from as usize] * w);
                }
            }
        }
        counts.push(row);
    }
    PathCountTable {
        bound,
        nmax,
        counts,
    }
}

/// `Σ_σ ε(σ)·Π_{i<k} β_{σ(i)-i}` over the `I`-permutations of order `k`, for
/// every `a`-subset `I` of `⟦-b, a-1⟧` (keyed by its sorted elements).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IPermRecord {
    pub k: usize,
    pub sums: BTreeMap<Vec<i64>, MPoly>,
}

pub fn iperm_sums(model: &StepModel, k: usize) -> Result<IPermRecord, OracleError> {
    if k > MAX_IPERM_ORDER {
        return Err(OracleError::OrderTooLarge(k));
    }
    let (a, b) = model.require_two_sided()?;
    let (a, b) = (a as i64, b as i64);
    let ki = k as i64;
    let mut sums = BTreeMap::new();
    for subset in subsets(-b, a - 1, a as usize) {
        let targets: Vec<i64> = if ki >= a {
            subset.iter().copied().chain(a..ki).collect()
        } else if (ki..a).all(|x| subset.contains(&x)) {
            subset.iter().copied().filter(|&x| x < ki).collect()
        } else {
            sums.insert(subset, MPoly::zero());
            continue;
        };
        let mut total = MPoly::zero();
        let mut used = vec![false; targets.len()];
        let mut images = Vec::with_capacity(k);
        enumerate(
            model,
            &targets,
            &mut used,
            &mut images,
            0,
            MPoly::one(),
            &mut total,
        );
        sums.insert(subset, total);
    }
    Ok(IPermRecord { k, sums })
}

/// Assigns `σ(i)` for `i = images.len()`; `product` is the unsigned weight so
/// far and `inversions` decides the sign.
fn enumerate(
    model: &StepModel,
    targets: &[i64],
    used: &mut [bool],
    images: &mut Vec<i64>,
    inversions: usize,
    product: MPoly,
    total: &mut MPoly,
) {
    let i = images.len() as i64;
    if images.len() == targets.len() {
        *total = if inversions.is_multiple_of(2) {
            &*total + &product
        } else {
            &*total - &product
        };
        return;
    }
    for (idx, &v) in targets.iter().enumerate() {
        if used[idx] {
            continue;
        }
        let beta = model.beta(v - i);
        if beta.is_zero() {
            continue;
        }
        let added = images.iter().filter(|&&w| w > v).count();
        used[idx] = true;
        images.push(v);
        enumerate(
            model,
            targets,
            used,
            images,
            inversions + added,
            &product * &beta,
            total,
        );
        images.pop();
        used[idx] = false;
    }
}

/// All `size`-subsets of `⟦lo, hi⟧`, each sorted.
fn subsets(lo: i64, hi: i64, size: usize) -> Vec<Vec<i64>> {
    fn go(next: i64, hi: i64, size: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in next..=hi {
            cur.push(x);
            go(x + 1, hi, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lo, hi, size, &mut Vec::new(), &mut out);
    out
}

/// Which generating function of height-`k` paths to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesTarget {
    /// `F_k / F_{k+1}`.
    Excursions,
    /// `F_{k,ℓ} / F_{k+1}`.
    FinalHeight(usize),
    /// `G_k / F_{k+1}`.
    AllMeanders,
}

/// Coefficient-by-coefficient comparison of a fraction with path counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub target: SeriesTarget,
    pub k: usize,
    pub nmax: usize,
    /// Homogeneous parts of the fraction's expansion, degrees `0..=nmax`.
    pub series: Vec<MPoly>,
    /// Path counts regrouped by total weight degree.
    pub counts: Vec<MPoly>,
    pub first_disagreement: Option<usize>,
}

impl SeriesReport {
    pub fn agrees(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

/// Expands the fraction by total weight degree and compares it with
/// [`dp_count`] up to degree `nmax`.
///
/// Every weight has no constant term, so a path of length `n` only
/// contributes in degrees `≥ n`; counting lengths up to `nmax` is enough.
pub fn verify_series(
    model: &StepModel,
    k: usize,
    target: SeriesTarget,
    nmax: usize,
) -> Result<SeriesReport, OracleError> {
    let den = model.one_minus_a(k).det();
    let cofactors = || -> Result<Vec<MPoly>, LinalgError> {
        let m = model.one_minus_a(k);
        (0..=k).map(|l| m.cofactor(l, 0)).collect()
    };
    let num = match target {
        SeriesTarget::Excursions => {
            if k == 0 {
                MPoly::one()
            } else {
                model.one_minus_a(k - 1).det()
            }
        }
        SeriesTarget::FinalHeight(l) => {
            if l > k {
                return Err(OracleError::HeightOutOfRange { l, k });
            }
            model.one_minus_a(k).cofactor(l, 0)?
        }
        SeriesTarget::AllMeanders => cofactors()?.into_iter().sum(),
    };
    let series = rational_series(&num, &den, Grading::TotalWeightDegree, nmax)?.coeffs;

    let table = dp_count(model, Some(k), nmax);
    let mut counts = vec![MPoly::zero(); nmax + 1];
    for n in 0..=nmax {
        let value = match target {
            SeriesTarget::Excursions => table.excursions(n).clone(),
            SeriesTarget::FinalHeight(l) => table.ending_at(n, l),
            SeriesTarget::AllMeanders => table.meanders(n),
        };
        let parts = value.graded_parts(|v| !v.is_reserved());
        for (d, part) in parts.into_iter().enumerate().take(nmax + 1) {
            counts[d] = &counts[d] + &part;
        }
    }
    let first_disagreement = (0..=nmax).find(|&d| series[d] != counts[d]);
    Ok(SeriesReport {
        target,
        k,
        nmax,
        series,
        counts,
        first_disagreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    fn dyck() -> StepModel {
        "1:t,-1:t".parse().unwrap()
    }

    #[test]
    fn catalan_count() {
        let table = dp_count(&dyck(), None, 6);
        assert_eq!(table.excursions(6), &p("5*t^6"));
        assert_eq!(table.counts[0][0], MPoly::one());
        assert!(table.counts[0][1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn height_one_meanders() {
        let table = dp_count(&dyck(), Some(1), 7);
        for n in 0..=7 {
            assert_eq!(
                table.ending_at(n, n % 2),
                MPoly::var_named("t").unwrap().pow(n as u32)
            );
            assert_eq!(
                table.meanders(n),
                MPoly::var_named("t").unwrap().pow(n as u32)
            );
        }
    }

    #[test]
    fn permutation_sums() {
        let r = iperm_sums(&dyck(), 0).unwrap();
        assert_eq!(r.sums[&vec![0]], MPoly::one());
        assert_eq!(r.sums[&vec![-1]], MPoly::zero());
        let r = iperm_sums(&dyck(), 1).unwrap();
        assert_eq!(r.sums[&vec![-1]], p("-t"));
        let r = iperm_sums(&dyck(), 2).unwrap();
        assert_eq!(r.sums[&vec![0]], p("1 - t^2"));
        assert!(matches!(
            iperm_sums(&dyck(), 9),
            Err(OracleError::OrderTooLarge(9))
        ));
    }

    #[test]
    fn permutation_sums_match_transfer_iteration() {
        use crate::transfer::TransferMatrix;
        for steps in [
            "1:t,-1:t",
            "0:0,1:t1,-1:t1,2:t2,-2:t2",
            "2:x,-1:y",
            "1:p,-3:q",
        ] {
            let model: StepModel = steps.parse().unwrap();
            let t = TransferMatrix::from_model(&model).unwrap();
            for fv in t.iterate_f(5) {
                let brute = iperm_sums(&model, fv.k).unwrap();
                for (pos, mask) in t.index().masks().iter().enumerate() {
                    let key = t.index().elements(*mask);
                    assert_eq!(
                        brute.sums[&key], fv.entries[pos],
                        "{steps} k={} {key:?}",
                        fv.k
                    );
                }
            }
        }
    }

    #[test]
    fn series_checks() {
        let r = verify_series(&dyck(), 3, SeriesTarget::Excursions, 6).unwrap();
        assert!(r.agrees());
        assert_eq!(r.series[6], p("5*t^6"));
        assert_eq!(r.series[0], MPoly::one());
        let bb: StepModel = "0:0,1:t1,-1:t1,2:t2,-2:t2".parse().unwrap();
        assert!(verify_series(&bb, 2, SeriesTarget::FinalHeight(1), 6)
            .unwrap()
            .agrees());
        assert!(verify_series(&bb, 2, SeriesTarget::AllMeanders, 6)
            .unwrap()
            .agrees());
        let r = verify_series(&dyck(), 0, SeriesTarget::Excursions, 5).unwrap();
        assert!(r.agrees());
        assert!(r.series[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn disagreement_is_reported() {
        // Lower bound for the counts than for the fraction.
        let mut r = verify_series(&dyck(), 2, SeriesTarget::Excursions, 6).unwrap();
        let other = dp_count(&dyck(), Some(1), 6);
        r.counts = (0..=6).map(|n| other.excursions(n).clone()).collect();
        let first = (0..=6).find(|&d| r.series[d] != r.counts[d]);
        assert_eq!(first, Some(4));
    }
}
