use num_traits::One;

use super::{MPoly, RingError, VarName};

/// How a rational function is cut into series coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grading {
    /// Coefficients of powers of one variable; they no longer contain it.
    PowerOf(VarName),
    /// Homogeneous parts by total degree in the weight variables
    /// (everything except the reserved `z` and `u`).
    TotalWeightDegree,
}

impl Grading {
    fn slices(&self, p: &MPoly) -> Vec<MPoly> {
        match self {
            Grading::PowerOf(v) => p.coeffs_in(v),
            Grading::TotalWeightDegree => p.graded_parts(|v| !v.is_reserved()),
        }
    }
}

/// Series coefficients `coeffs[0..=order]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub grading: Grading,
    pub order: usize,
    pub coeffs: Vec<MPoly>,
}

impl TruncatedSeries {
    pub fn coeff(&self, i: usize) -> &MPoly {
        &self.coeffs[i]
    }
}

/// Expands `num / den` up to and including `order`.
///
/// The denominator's degree-0 slice must be a unit (±1); the coefficients
/// then follow from `c_n = (num_n - Σ_{i≥1} den_i c_{n-i}) / den_0`.
pub fn rational_series(
    num: &MPoly,
    den: &MPoly,
    grading: Grading,
    order: usize,
) -> Result<TruncatedSeries, RingError> {
    let num_s = grading.slices(num);
    let den_s = grading.slices(den);
    let d0 = den_s.first().cloned().unwrap_or_else(MPoly::zero);
    let unit = d0.is_constant() && {
        let c = d0.constant_term();
        c.is_one() || (-c).is_one()
    };
    if !unit {
        return Err(RingError::NonUnitConstantTerm(d0.to_string()));
    }
    let sign = d0.constant_term();
    let mut coeffs: Vec<MPoly> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = num_s.get(n).cloned().unwrap_or_else(MPoly::zero);
        for i in 1..=n.min(den_s.len().saturating_sub(1)) {
            if den_s[i].is_zero() || coeffs[n - i].is_zero() {
                continue;
            }
            acc = acc - &den_s[i] * &coeffs[n - i];
        }
        coeffs.push(acc.scale(&sign));
    }
    Ok(TruncatedSeries {
        grading,
        order,
        coeffs,
    })
}

/// Multiplies two truncated coefficient lists, keeping indices `0..=order`.
pub(crate) fn truncated_product(a: &[MPoly], b: &[MPoly], order: usize) -> Vec<MPoly> {
    (0..=order)
        .map(|n| {
            (0..=n)
                .filter(|&i| i < a.len() && n - i < b.len())
                .filter(|&i| !a[i].is_zero() && !b[n - i].is_zero())
                .map(|i| &a[i] * &b[n - i])
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    fn z() -> Grading {
        Grading::PowerOf(VarName::new("z").unwrap())
    }

    #[test]
    fn fibonacci_polynomials() {
        let s = rational_series(&MPoly::one(), &p("1 - z + t^2*z^2"), z(), 4).unwrap();
        let expected: Vec<MPoly> = ["1", "1", "1 - t^2", "1 - 2*t^2", "1 - 3*t^2 + t^4"]
            .iter()
            .map(|x| p(x))
            .collect();
        assert_eq!(s.coeffs, expected);
    }

    #[test]
    fn denominator_one_returns_slices() {
        let num = p("3 + t*z - z^3");
        let s = rational_series(&num, &MPoly::one(), z(), 4).unwrap();
        assert_eq!(s.coeffs, vec![p("3"), p("t"), p("0"), p("-1"), p("0")]);
        let s = rational_series(
            &p("1 + a + a*b"),
            &MPoly::one(),
            Grading::TotalWeightDegree,
            2,
        )
        .unwrap();
        assert_eq!(s.coeffs, vec![p("1"), p("a"), p("a*b")]);
    }

    #[test]
    fn geometric_series() {
        let s = rational_series(&MPoly::one(), &p("1 - t^2*z*z"), z(), 4).unwrap();
        assert_eq!(s.coeffs, vec![p("1"), p("0"), p("t^2"), p("0"), p("t^4")]);
    }

    #[test]
    fn non_unit_constant_term() {
        assert!(matches!(
            rational_series(&MPoly::one(), &p("2 - z"), z(), 3),
            Err(RingError::NonUnitConstantTerm(_))
        ));
        assert!(matches!(
            rational_series(&MPoly::one(), &p("t - z"), z(), 3),
            Err(RingError::NonUnitConstantTerm(_))
        ));
        assert!(rational_series(&MPoly::one(), &p("-1 + z"), z(), 3).is_ok());
    }
}
