//! Fraction-free gcd of polynomials viewed as univariate in one variable.
//!
//! Contents (gcds of coefficients in the remaining variables) are computed
//! recursively with the same routine, so the univariate gcd can be made
//! primitive without ever leaving the integers.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MPoly, VarName};

type UPoly = Vec<MPoly>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &UPoly) -> usize {
    p.len() - 1
}

fn div_coeffs(p: &UPoly, d: &MPoly) -> UPoly {
    p.iter()
        .map(|c| {
            c.exact_div(d)
                .expect("exact division in subresultant sequence")
        })
        .collect()
}

/// `lc(b)^(deg a - deg b + 1) · a mod b`.
fn pseudo_rem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = deg(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut steps_left = deg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * bc);
        }
        trim(&mut r);
        steps_left -= 1;
    }
    if steps_left > 0 {
        let f = lb.pow(steps_left as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Last nonzero element of the subresultant remainder sequence.
fn subresultant(a: UPoly, b: UPoly) -> UPoly {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![MPoly::one()];
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = div_coeffs(&r, &divisor);
        g = a[deg(&a)].clone();
        if delta > 0 {
            h = g
                .pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("exact division in subresultant sequence");
        }
    }
}

/// Full gcd over the integers, leading coefficient made positive.
pub(crate) fn gcd(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() {
        return q.clone().with_positive_lead();
    }
    if q.is_zero() {
        return p.clone().with_positive_lead();
    }
    if p.is_constant() || q.is_constant() {
        let c = p.integer_content().gcd(&q.integer_content());
        return MPoly::from_bigint(c);
    }
    let x = p
        .variables()
        .iter()
        .chain(q.variables())
        .min()
        .cloned()
        .expect("non-constant");
    let cp = content_in(p, &x);
    let cq = content_in(q, &x);
    let c = gcd(&cp, &cq);
    let pp = p.exact_div(&cp).expect("content divides");
    let qq = q.exact_div(&cq).expect("content divides");
    if pp.degree_in(&x) == 0 || qq.degree_in(&x) == 0 {
        return c;
    }
    let g = primitive_poly(subresultant(pp.coeffs_in(&x), qq.coeffs_in(&x)), &x);
    (&c * &g).with_positive_lead()
}

/// gcd of the coefficients of `p` viewed as univariate in `x`.
fn content_in(p: &MPoly, x: &VarName) -> MPoly {
    let mut acc = MPoly::zero();
    for c in p.coeffs_in(x).iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    if p.leading_integer_coeff().is_negative() {
        -acc
    } else {
        acc
    }
}

fn primitive_poly(mut u: UPoly, x: &VarName) -> MPoly {
    trim(&mut u);
    let p = MPoly::from_coeffs_in(x, &u);
    let c = content_in(&p, x);
    let pp = p.exact_div(&c).expect("content divides");
    let lead_sign_negative = u
        .last()
        .is_some_and(|lc| lc.leading_integer_coeff().is_negative());
    if lead_sign_negative == c.leading_integer_coeff().is_negative() {
        pp
    } else {
        -pp
    }
}

/// Greatest common divisor of `p` and `q` as univariate polynomials in `var`
/// over the fraction field of the other variables.
///
/// The result is primitive with respect to `var` (no factor free of `var`
/// remains, integer content included) and its leading coefficient in `var`
/// has a positive leading integer coefficient.
pub fn univariate_gcd_in(p: &MPoly, q: &MPoly, var: &VarName) -> MPoly {
    assert!(!p.is_zero() && !q.is_zero(), "gcd of the zero polynomial");
    if p.degree_in(var) == 0 || q.degree_in(var) == 0 {
        return MPoly::one();
    }
    let pp = primitive_poly(p.coeffs_in(var), var);
    let qq = primitive_poly(q.coeffs_in(var), var);
    let g = primitive_poly(subresultant(pp.coeffs_in(var), qq.coeffs_in(var)), var);
    debug_assert!(p.exact_div(&g).is_ok() && q.exact_div(&g).is_ok());
    g
}

/// Cancels every common factor of `num / den`.
///
/// Factors involving some variable are removed one variable at a time with
/// [`univariate_gcd_in`]; the remaining integer content is divided out last.
/// The denominator is returned with a positive constant term (or positive
/// leading coefficient when it has no constant term).
pub fn reduce_fraction(num: &MPoly, den: &MPoly) -> (MPoly, MPoly) {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return (MPoly::zero(), MPoly::one());
    }
    let mut n = num.clone();
    let mut d = den.clone();
    let mut vars: Vec<VarName> = n.variables().iter().chain(d.variables()).cloned().collect();
    vars.sort();
    vars.dedup();
    for v in &vars {
        if n.degree_in(v) == 0 || d.degree_in(v) == 0 {
            continue;
        }
        let g = univariate_gcd_in(&n, &d, v);
        if !g.is_one() {
            n = n.exact_div(&g).expect("gcd divides numerator");
            d = d.exact_div(&g).expect("gcd divides denominator");
        }
    }
    let c = n.integer_content().gcd(&d.integer_content());
    if !c.is_one() && !c.is_zero() {
        let c = MPoly::from_bigint(c);
        n = n.exact_div(&c).unwrap();
        d = d.exact_div(&c).unwrap();
    }
    let flip = match d.constant_term() {
        c if c.is_zero() => d.leading_integer_coeff().is_negative(),
        c => c.is_negative(),
    };
    if flip {
        (-n, -d)
    } else {
        (n, d)
    }
}
