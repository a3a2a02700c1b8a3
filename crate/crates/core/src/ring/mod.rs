//! Sparse multivariate polynomials with integer coefficients.
//!
//! Every quantity in the crate (weights, determinants, cofactors, generating
//! function numerators and denominators) is an [`MPoly`]. Variables are named;
//! `z` and `u` are reserved for the length and final-height formal variables.
//!
//! Internally a polynomial stores its own sorted variable list and a list of
//! dense exponent vectors over that list, kept sorted in lexicographic order.
//! Only variables that actually occur are kept, so structural equality is
//! polynomial equality.

mod gcd;
pub(crate) mod series;
mod text;

pub use gcd::{reduce_fraction, univariate_gcd_in};
pub use series::{rational_series, Grading, TruncatedSeries};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

/// Formal variable counting path length.
pub const LENGTH_VAR: &str = "z";
/// Formal variable marking the final height of a meander.
pub const HEIGHT_VAR: &str = "u";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator constant term is not a unit: {0}")]
    NonUnitConstantTerm(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A variable name matching `[a-zA-Z][a-zA-Z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName(Arc<str>);

impl VarName {
    pub fn new(name: &str) -> Result<Self, RingError> {
        let mut chars = name.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            _ => false,
        };
        if ok {
            Ok(VarName(Arc::from(name)))
        } else {
            Err(RingError::InvalidVariable(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `z` and `u` may not be used as weight variables.
    pub fn is_reserved(&self) -> bool {
        self.as_str() == LENGTH_VAR || self.as_str() == HEIGHT_VAR
    }
}

impl fmt::Debug for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) type Exps = SmallVec<[u32; 4]>;

/// Sparse polynomial in named variables over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Arc<[VarName]>,
    terms: Vec<(Exps, BigInt)>,
}

fn no_vars() -> Arc<[VarName]> {
    Arc::from(Vec::<VarName>::new())
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            vars: no_vars(),
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.push((Exps::new(), c));
        }
        p
    }

    pub fn var(name: &VarName) -> Self {
        MPoly {
            vars: Arc::from(vec![name.clone()]),
            terms: vec![(SmallVec::from_slice(&[1]), BigInt::one())],
        }
    }

    /// Convenience constructor for a variable given by name.
    pub fn var_named(name: &str) -> Result<Self, RingError> {
        Ok(Self::var(&VarName::new(name)?))
    }

    /// Single term `coeff * Π vars^exps`.
    pub fn monomial(coeff: BigInt, powers: &[(VarName, u32)]) -> Self {
        let mut acc = Self::from_bigint(coeff);
        for (v, e) in powers {
            acc = &acc * &Self::var(v).pow(*e);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.vars.is_empty() && self.terms[0].1.is_one()
    }

    /// True for polynomials without any variable (including zero).
    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The variables occurring in the polynomial, sorted by name.
    pub fn variables(&self) -> &[VarName] {
        &self.vars
    }

    pub fn contains_var(&self, var: &VarName) -> bool {
        self.var_index(var).is_some()
    }

    fn var_index(&self, var: &VarName) -> Option<usize> {
        self.vars.binary_search(var).ok()
    }

    pub fn constant_term(&self) -> BigInt {
        match self.terms.first() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => c.clone(),
            _ => BigInt::zero(),
        }
    }

    /// Iterates over `(coefficient, [(var, exponent)])` in internal order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, Vec<(&VarName, u32)>)> + '_ {
        self.terms.iter().map(move |(e, c)| {
            let powers = self
                .vars
                .iter()
                .zip(e.iter())
                .filter(|(_, &x)| x > 0)
                .map(|(v, &x)| (v, x))
                .collect();
            (c, powers)
        })
    }

    /// Builds a polynomial from raw pieces, sorting, combining and
    /// dropping unused variables.
    fn build(vars: Arc<[VarName]>, mut terms: Vec<(Exps, BigInt)>) -> Self {
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Exps, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        Self::trimmed(vars, out)
    }

    /// Drops variables with identically zero exponent. `terms` must already
    /// be sorted, combined and free of zeros.
    fn trimmed(vars: Arc<[VarName]>, terms: Vec<(Exps, BigInt)>) -> Self {
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.iter().any(|(e, _)| e[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return MPoly { vars, terms };
        }
        let new_vars: Vec<VarName> = vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = terms
            .into_iter()
            .map(|(e, c)| {
                let ne: Exps = e
                    .iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(&x, _)| x)
                    .collect();
                (ne, c)
            })
            .collect();
        MPoly {
            vars: Arc::from(new_vars),
            terms,
        }
    }

    /// Re-expresses the terms over a superset of variables. Inserting zero
    /// columns keeps lexicographic order intact.
    fn terms_over(&self, vars: &[VarName]) -> Vec<(Exps, BigInt)> {
        if *self.vars == *vars {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("superset of variables"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne: Exps = SmallVec::from_elem(0, vars.len());
                for (i, &x) in e.iter().enumerate() {
                    ne[map[i]] = x;
                }
                (ne, c.clone())
            })
            .collect()
    }

    fn union_vars(&self, other: &MPoly) -> Arc<[VarName]> {
        if *self.vars == *other.vars {
            return self.vars.clone();
        }
        let mut v: Vec<VarName> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        v.sort();
        v.dedup();
        Arc::from(v)
    }

    fn add_impl(&self, other: &MPoly, negate_other: bool) -> MPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate_other { -other } else { other.clone() };
        }
        let vars = self.union_vars(other);
        let a = self.terms_over(&vars);
        let b = other.terms_over(&vars);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut ia = a.into_iter().peekable();
        let mut ib = b
            .into_iter()
            .map(|(e, c)| (e, if negate_other { -c } else { c }))
            .peekable();
        loop {
            let ord = match (ia.peek(), ib.peek()) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(ia.next().unwrap()),
                Ordering::Greater => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let (e, c1) = ia.next().unwrap();
                    let (_, c2) = ib.next().unwrap();
                    let c = c1 + c2;
                    if !c.is_zero() {
                        out.push((e, c));
                    }
                }
            }
        }
        Self::trimmed(vars, out)
    }

    fn mul_impl(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let vars = self.union_vars(other);
        let a = self.terms_over(&vars);
        let b = other.terms_over(&vars);
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        if small.len() == 1 {
            // Multiplying by a monomial preserves the term order.
            let (me, mc) = &small[0];
            let terms = large
                .into_iter()
                .map(|(e, c)| {
                    let ne: Exps = e.iter().zip(me.iter()).map(|(x, y)| x + y).collect();
                    (ne, c * mc)
                })
                .collect();
            return MPoly { vars, terms };
        }
        let mut prods = Vec::with_capacity(small.len() * large.len());
        for (e1, c1) in &small {
            for (e2, c2) in &large {
                let ne: Exps = e1.iter().zip(e2.iter()).map(|(x, y)| x + y).collect();
                prods.push((ne, c1 * c2));
            }
        }
        Self::build(vars, prods)
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Leading-term division in lexicographic order: the polynomials are
    /// viewed as univariate in their first variable, with coefficients that
    /// are again divided recursively. Fails with `NotDivisible` as soon as a
    /// leading term cannot be cancelled.
    pub fn exact_div(&self, divisor: &MPoly) -> Result<MPoly, RingError> {
        if divisor.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(MPoly::zero());
        }
        if divisor.is_constant() {
            let d = &divisor.terms[0].1;
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return Err(RingError::NotDivisible);
                }
                terms.push((e.clone(), q));
            }
            return Ok(MPoly {
                vars: self.vars.clone(),
                terms,
            });
        }
        // Every variable of the divisor must occur in the dividend.
        if divisor.vars.iter().any(|v| !self.contains_var(v)) {
            return Err(RingError::NotDivisible);
        }
        let vars = self.vars.clone();
        let q = divisor.terms_over(&vars);
        let (lead_e, lead_c) = q.last().cloned().unwrap();
        let mut rem: BTreeMap<Exps, BigInt> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Exps, BigInt)> = Vec::new();
        while let Some((e, c)) = rem.pop_last() {
            if e.iter().zip(lead_e.iter()).any(|(x, y)| x < y) {
                return Err(RingError::NotDivisible);
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(RingError::NotDivisible);
            }
            let shift: Exps = e.iter().zip(lead_e.iter()).map(|(x, y)| x - y).collect();
            for (de, dc) in &q[..q.len() - 1] {
                let key: Exps = de.iter().zip(shift.iter()).map(|(x, y)| x + y).collect();
                let delta = dc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            quot.push((shift, qc));
        }
        quot.reverse();
        Ok(Self::trimmed(vars, quot))
    }

    pub fn degree_in(&self, var: &VarName) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.iter().map(|(e, _)| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Total degree over the variables accepted by `filter`.
    pub fn total_degree_by(&self, filter: impl Fn(&VarName) -> bool) -> u32 {
        let mask: Vec<bool> = self.vars.iter().map(&filter).collect();
        self.terms
            .iter()
            .map(|(e, _)| {
                e.iter()
                    .zip(&mask)
                    .filter(|(_, &m)| m)
                    .map(|(x, _)| x)
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }

    /// Splits `self = Σ_i c_i · var^i`; the `c_i` do not contain `var`.
    pub fn coeffs_in(&self, var: &VarName) -> Vec<MPoly> {
        let Some(idx) = self.var_index(var) else {
            return if self.is_zero() {
                Vec::new()
            } else {
                vec![self.clone()]
            };
        };
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Exps, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let d = ne[idx] as usize;
            ne[idx] = 0;
            buckets[d].push((ne, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Self::build(self.vars.clone(), t))
            .collect()
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(var: &VarName, coeffs: &[MPoly]) -> MPoly {
        let x = MPoly::var(var);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Coefficient of `var^e`.
    pub fn coeff_of(&self, var: &VarName, e: u32) -> MPoly {
        self.coeffs_in(var)
            .into_iter()
            .nth(e as usize)
            .unwrap_or_else(MPoly::zero)
    }

    /// Parts of total degree 0, 1, ..., over the variables accepted by `filter`.
    pub fn graded_parts(&self, filter: impl Fn(&VarName) -> bool) -> Vec<MPoly> {
        let mask: Vec<bool> = self.vars.iter().map(&filter).collect();
        let mut buckets: BTreeMap<u32, Vec<(Exps, BigInt)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d: u32 = e
                .iter()
                .zip(&mask)
                .filter(|(_, &m)| m)
                .map(|(x, _)| x)
                .sum();
            buckets.entry(d).or_default().push((e.clone(), c.clone()));
        }
        let top = buckets
            .keys()
            .next_back()
            .copied()
            .map_or(0, |d| d as usize + 1);
        let mut out = vec![MPoly::zero(); top];
        for (d, t) in buckets {
            out[d as usize] = Self::build(self.vars.clone(), t);
        }
        out
    }

    /// Replaces `var` by `value`.
    pub fn substitute(&self, var: &VarName, value: &MPoly) -> MPoly {
        if !self.contains_var(var) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(var);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Coefficient of the lexicographically largest term.
    pub(crate) fn leading_integer_coeff(&self) -> BigInt {
        self.terms.last().map(|t| t.1.clone()).unwrap_or_default()
    }

    /// gcd of the integer coefficients (0 for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
    }

    /// Multiplies by -1 if the lexicographically leading coefficient is negative.
    pub(crate) fn with_positive_lead(self) -> MPoly {
        if self.leading_integer_coeff().is_negative() {
            -self
        } else {
            self
        }
    }

    /// Terms sorted for printing: ascending in the last variable, then the
    /// one before it, and so on.
    fn display_order(&self) -> Vec<&(Exps, BigInt)> {
        let mut v: Vec<&(Exps, BigInt)> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.iter().rev().cmp(b.0.iter().rev()));
        v
    }
}

impl Default for MPoly {
    fn default() -> Self {
        MPoly::zero()
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> Self {
        MPoly::constant(c)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                let f: fn(&MPoly, &MPoly) -> MPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl std::iter::Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a MPoly> for MPoly {
    fn sum<I: Iterator<Item = &'a MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::zero(), |a, b| &a + b)
    }
}

impl std::iter::Product for MPoly {
    fn product<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("1 + z") * p("1 - z"), p("1 - z^2"));
    }

    #[test]
    fn additive_inverse() {
        let q = p("3*t1^2*z - 7*u + 2");
        assert!((&q + &(-&q)).is_zero());
        assert_eq!((&q - &q).variables().len(), 0);
    }

    #[test]
    fn hand_expansion_matches_termwise_product() {
        let a = p("1 - z + t^2*z^2");
        let b = p("1 + z");
        // Term-by-term accumulation, independent of mul_impl.
        let mut acc = MPoly::zero();
        for (ca, pa) in a.terms() {
            for (cb, pb) in b.terms() {
                let mut powers: Vec<(VarName, u32)> =
                    pa.iter().map(|(v, e)| ((*v).clone(), *e)).collect();
                powers.extend(pb.iter().map(|(v, e)| ((*v).clone(), *e)));
                acc = acc + MPoly::monomial(ca * cb, &powers);
            }
        }
        let expected = p("1 + t^2*z^2 + t^2*z^3 - z^2");
        assert_eq!(acc, expected);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("1 - z^2").exact_div(&p("1 + z")).unwrap(), p("1 - z"));
        let q = p("5*t1*z^3 - t2 + 4");
        assert_eq!(q.exact_div(&MPoly::one()).unwrap(), q);
        assert_eq!(
            p("1 + z^2").exact_div(&p("1 + z")),
            Err(RingError::NotDivisible)
        );
        assert_eq!(p("3*z").exact_div(&p("2")), Err(RingError::NotDivisible));
        assert_eq!(
            p("z").exact_div(&MPoly::zero()),
            Err(RingError::DivisionByZero)
        );
    }

    #[test]
    fn basketball_denominator_factor() {
        let d = p(
            "1 - z - 2*t2*z + t1^2*z^2 + 2*t2*z^2 + 2*t2^2*z^2 - t2^2*z^3 - 2*t2^3*z^3 + t2^4*z^4",
        );
        let sq = p("1 + t2*z").pow(2);
        let full = &sq * &d;
        assert_eq!(full.exact_div(&sq).unwrap(), d);
    }

    #[test]
    fn unused_variables_are_dropped() {
        let a = p("x + y");
        let b = p("x");
        let c = &a - &b;
        assert_eq!(c.variables().len(), 1);
        assert_eq!(c, p("y"));
    }

    #[test]
    fn coefficient_views() {
        let q = p("1 + t*z + 3*t^2*z^2 - u*z^2");
        let z = VarName::new("z").unwrap();
        let cs = q.coeffs_in(&z);
        assert_eq!(cs, vec![p("1"), p("t"), p("3*t^2 - u")]);
        assert_eq!(MPoly::from_coeffs_in(&z, &cs), q);
        assert_eq!(q.degree_in(&z), 2);
        let u = VarName::new("u").unwrap();
        assert_eq!(
            q.substitute(&u, &MPoly::one()),
            p("1 + t*z + 3*t^2*z^2 - z^2")
        );
        assert_eq!(
            q.substitute(&z, &p("z^2")),
            p("1 + t*z^2 + 3*t^2*z^4 - u*z^4")
        );
    }

    #[test]
    fn graded_parts_split_by_weight_degree() {
        let q = p("1 + t + 2*s*t*z - t^3");
        let parts = q.graded_parts(|v| !v.is_reserved());
        assert_eq!(parts, vec![p("1"), p("t"), p("2*s*t*z"), p("-t^3")]);
    }

    #[test]
    fn var_names() {
        assert!(VarName::new("t1").is_ok());
        assert!(VarName::new("w_m1").is_ok());
        assert!(VarName::new("1t").is_err());
        assert!(VarName::new("").is_err());
        assert!(VarName::new("z").unwrap().is_reserved());
    }
}
