//! Step sets with weights, the quantities `β_s`, and the band matrices
//! `1 - A_k` (plus their folded halves for symmetric step sets).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::PolyMatrix;
use crate::ring::{MPoly, RingError, VarName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("empty step set")]
    Empty,
    #[error("step {0} listed twice")]
    DuplicateStep(i64),
    #[error("cannot parse step-set entry `{0}`")]
    BadEntry(String),
    #[error("weight of step {step}: {source}")]
    BadWeight { step: i64, source: RingError },
    #[error("weight of step {step} uses reserved variable `{var}`")]
    ReservedVariable { step: i64, var: String },
    #[error("weight of step {0} has a nonzero constant term")]
    ConstantTerm(i64),
    #[error("need a positive and a negative step (a = {a}, b = {b})")]
    InvalidModel { a: i64, b: i64 },
    #[error("step set is not symmetric")]
    NotSymmetric,
}

/// A validated finite step set with a weight `ω_s` for every step.
///
/// Weights may be zero; such a step is kept (so `a` and `b` do not change)
/// but contributes nothing.
#[derive(Clone, PartialEq, Eq)]
pub struct StepModel {
    weights: BTreeMap<i64, MPoly>,
}

impl StepModel {
    pub fn new(weights: BTreeMap<i64, MPoly>) -> Result<Self, ModelError> {
        if weights.is_empty() {
            return Err(ModelError::Empty);
        }
        for (&s, w) in &weights {
            if let Some(v) = w.variables().iter().find(|v| v.is_reserved()) {
                return Err(ModelError::ReservedVariable {
                    step: s,
                    var: v.to_string(),
                });
            }
            if !w.constant_term().is_zero() {
                return Err(ModelError::ConstantTerm(s));
            }
        }
        Ok(StepModel { weights })
    }

    /// Steps with a fresh weight variable each: `w_2`, `w_0`, `w_m1`, ...
    pub fn with_default_weights(steps: &[i64]) -> Result<Self, ModelError> {
        let mut weights = BTreeMap::new();
        for &s in steps {
            if weights.insert(s, default_weight(s)).is_some() {
                return Err(ModelError::DuplicateStep(s));
            }
        }
        Self::new(weights)
    }

    pub fn steps(&self) -> impl Iterator<Item = i64> + '_ {
        self.weights.keys().copied()
    }

    /// Largest step.
    pub fn a(&self) -> i64 {
        *self.weights.keys().next_back().expect("nonempty")
    }

    /// Minus the smallest step.
    pub fn b(&self) -> i64 {
        -*self.weights.keys().next().expect("nonempty")
    }

    /// `ω_s`, zero when `s ∉ S`.
    pub fn weight(&self, s: i64) -> MPoly {
        self.weights.get(&s).cloned().unwrap_or_else(MPoly::zero)
    }

    /// `β_s = δ_{s,0} - ω_s`.
    pub fn beta(&self, s: i64) -> MPoly {
        let delta = if s == 0 { MPoly::one() } else { MPoly::zero() };
        delta - self.weight(s)
    }

    /// Transfer-matrix constructions need `a ≥ 1` and `b ≥ 1`.
    pub fn require_two_sided(&self) -> Result<(usize, usize), ModelError> {
        let (a, b) = (self.a(), self.b());
        if a < 1 || b < 1 {
            return Err(ModelError::InvalidModel { a, b });
        }
        Ok((a as usize, b as usize))
    }

    /// `-S = S` and `ω_{-s} = ω_s`.
    pub fn is_symmetric(&self) -> bool {
        self.weights
            .iter()
            .all(|(&s, w)| self.weights.get(&-s).is_some_and(|w2| w2 == w))
    }

    /// True when the extreme steps carry nonzero weight, i.e. `β_a`, `β_{-b}`
    /// are nonzero and the degree statements about `D` and `N` apply.
    pub fn extreme_weights_nonzero(&self) -> bool {
        !self.beta(self.a()).is_zero() && !self.beta(-self.b()).is_zero()
    }

    /// The weight variables used by this model.
    pub fn weight_variables(&self) -> Vec<VarName> {
        let mut v: Vec<VarName> = self
            .weights
            .values()
            .flat_map(|w| w.variables().iter().cloned())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// `(k+1) × (k+1)` matrix `1 - A_k` with entry `(i, j) = β_{j-i}`.
    pub fn one_minus_a(&self, k: usize) -> PolyMatrix {
        let labels: Vec<String> = (0..=k).map(|i| i.to_string()).collect();
        PolyMatrix::from_fn(k + 1, k + 1, |i, j| self.beta(j as i64 - i as i64))
            .with_labels(labels.clone(), labels)
    }

    /// Folded matrices `1 - A_k^+` and `1 - A_k^-` of a symmetric model.
    pub fn sym_band(&self, k: usize) -> Result<SymBandMatrices, ModelError> {
        if !self.is_symmetric() {
            return Err(ModelError::NotSymmetric);
        }
        let k = k as i64;
        let w = |s: i64| self.weight(s);
        let delta = |i: usize, j: usize| if i == j { MPoly::one() } else { MPoly::zero() };
        // 0 ≤ i, j ≤ k/2
        let plus_dim = (k / 2 + 1) as usize;
        let plus = PolyMatrix::from_fn(plus_dim, plus_dim, |i, j| {
            let (ii, jj) = (i as i64, j as i64);
            let mut entry = w(jj - ii);
            if 2 * jj < k {
                entry = entry + w(k - jj - ii);
            }
            delta(i, j) - entry
        });
        // 0 ≤ i, j < k/2
        let minus_dim = (k - k / 2) as usize;
        let minus = PolyMatrix::from_fn(minus_dim, minus_dim, |i, j| {
            let (ii, jj) = (i as i64, j as i64);
            delta(i, j) - (w(jj - ii) - w(k - jj - ii))
        });
        Ok(SymBandMatrices { plus, minus })
    }
}

fn default_weight(s: i64) -> MPoly {
    let name = if s < 0 {
        format!("w_m{}", -s)
    } else {
        format!("w_{s}")
    };
    MPoly::var(&VarName::new(&name).expect("valid generated name"))
}

/// `1 - A_k^+` (dimension `⌊k/2⌋ + 1`) and `1 - A_k^-` (dimension `⌈k/2⌉`).
#[derive(Debug, Clone)]
pub struct SymBandMatrices {
    pub plus: PolyMatrix,
    pub minus: PolyMatrix,
}

impl FromStr for StepModel {
    type Err = ModelError;

    /// `1:t,-1:t`, `0:0,1:t1,-1:t1,2:t2,-2:t2`, or bare steps `1,-1` for
    /// default weights.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut weights = BTreeMap::new();
        for entry in text.split(',') {
            let entry = entry.trim();
            if entry.is_empty() {
                return Err(ModelError::BadEntry(entry.to_string()));
            }
            let (step_txt, weight_txt) = match entry.split_once(':') {
                Some((s, w)) => (s.trim(), Some(w.trim())),
                None => (entry, None),
            };
            let step: i64 = step_txt
                .parse()
                .map_err(|_| ModelError::BadEntry(entry.to_string()))?;
            let weight = match weight_txt {
                Some(w) => w
                    .parse::<MPoly>()
                    .map_err(|source| ModelError::BadWeight { step, source })?,
                None => default_weight(step),
            };
            if weights.insert(step, weight).is_some() {
                return Err(ModelError::DuplicateStep(step));
            }
        }
        StepModel::new(weights)
    }
}

impl fmt::Display for StepModel {
    /// Canonical step-set text, steps in decreasing order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .weights
            .iter()
            .rev()
            .map(|(s, w)| format!("{s}:{w}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for StepModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepModel({self})")
    }
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

    fn basketball() -> StepModel {
        "0:0,1:t1,-1:t1,2:t2,-2:t2".parse().unwrap()
    }

    #[test]
    fn parse_and_derived_bounds() {
        let m = basketball();
        assert_eq!((m.a(), m.b()), (2, 2));
        assert_eq!(m.steps().collect::<Vec<_>>(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(m.to_string(), "2:t2,1:t1,0:0,-1:t1,-2:t2");
        let r: StepModel = "3:r,-1:s".parse().unwrap();
        assert_eq!((r.a(), r.b()), (3, 1));
    }

    #[test]
    fn default_weights() {
        let m: StepModel = "1, -1, 0".parse().unwrap();
        assert_eq!(m.weight(1), p("w_1"));
        assert_eq!(m.weight(-1), p("w_m1"));
        assert_eq!(m.weight(0), p("w_0"));
        assert_eq!(
            StepModel::with_default_weights(&[2, -2])
                .unwrap()
                .weight(-2),
            p("w_m2")
        );
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            "".parse::<StepModel>(),
            Err(ModelError::BadEntry(_))
        ));
        assert!(matches!(
            "1:t,1:s".parse::<StepModel>(),
            Err(ModelError::DuplicateStep(1))
        ));
        assert!(matches!(
            "1:z,-1:t".parse::<StepModel>(),
            Err(ModelError::ReservedVariable { .. })
        ));
        assert!(matches!(
            "1:1+t,-1:t".parse::<StepModel>(),
            Err(ModelError::ConstantTerm(1))
        ));
        assert!(matches!(
            "x:t".parse::<StepModel>(),
            Err(ModelError::BadEntry(_))
        ));
        assert!(matches!(
            "1:t+".parse::<StepModel>(),
            Err(ModelError::BadWeight { .. })
        ));
        let up: StepModel = "1:t,2:s".parse().unwrap();
        assert!(matches!(
            up.require_two_sided(),
            Err(ModelError::InvalidModel { .. })
        ));
    }

    #[test]
    fn beta_values() {
        let m = dyck();
        assert_eq!(m.beta(0), MPoly::one());
        assert_eq!(m.beta(1), p("-t"));
        assert_eq!(m.beta(5), MPoly::zero());
        assert_eq!(basketball().beta(0), MPoly::one());
        let motz: StepModel = "0:w0,1:t,-1:t".parse().unwrap();
        assert_eq!(motz.beta(0), p("1 - w0"));
    }

    #[test]
    fn band_matrices() {
        let m = dyck();
        let a1 = m.one_minus_a(1);
        assert_eq!(a1.entry(0, 0), &MPoly::one());
        assert_eq!(a1.entry(0, 1), &p("-t"));
        assert_eq!(a1.entry(1, 0), &p("-t"));
        assert_eq!(m.one_minus_a(0).entry(0, 0), &MPoly::one());
        let b2 = basketball().one_minus_a(2);
        assert_eq!(b2.entry(0, 2), &p("-t2"));
        // Toeplitz nesting.
        let big = basketball().one_minus_a(5);
        let small = basketball().one_minus_a(4);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(big.entry(i, j), small.entry(i, j));
            }
        }
    }

    #[test]
    fn symmetric_model_mirror_property() {
        let m = basketball();
        for k in 0..7 {
            let a = m.one_minus_a(k);
            for i in 0..=k {
                for j in 0..=k {
                    assert_eq!(a.entry(i, j), a.entry(k - i, k - j));
                }
            }
        }
    }

    #[test]
    fn folded_matrices() {
        let m = dyck();
        let s = m.sym_band(3).unwrap();
        assert_eq!(
            s.plus.entries_text(),
            vec![vec!["1", "-t"], vec!["-t", "1 - t"]]
        );
        assert_eq!(
            s.minus.entries_text(),
            vec![vec!["1", "-t"], vec!["-t", "1 + t"]]
        );
        let s0 = m.sym_band(0).unwrap();
        assert_eq!(s0.plus.entries_text(), vec![vec!["1"]]);
        assert_eq!(s0.minus.rows(), 0);
        for k in 0..12 {
            let s = basketball().sym_band(k).unwrap();
            assert_eq!(s.plus.rows() + s.minus.rows(), k + 1);
        }
        let skew: StepModel = "1:x,-2:y".parse().unwrap();
        assert!(matches!(skew.sym_band(2), Err(ModelError::NotSymmetric)));
        let uneven: StepModel = "1:x,-1:y".parse().unwrap();
        assert!(!uneven.is_symmetric());
    }
}
