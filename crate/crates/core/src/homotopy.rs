//! Poincaré homotopy operators centered at the coordinate origin.
//!
//! For a term `f dξ^I` with `k` scaled slots, the operator returns
//! `Σ_j (-1)^(j-1) ξ^{I_j} T(f) dξ^{I \ I_j}`, where `T` divides each monomial
//! of scaled degree `m` by `m + k`. That is the exact value of
//! `∫_0^1 t^(k-1) f(tξ) dt` on polynomials, and `d I + I d = id` in positive
//! degree.

use crate::error::{Error, Result};
use crate::form::DifferentialForm;
use crate::scalar::Scalar;

fn homotopy_where<S: Scalar>(a: &DifferentialForm<S>, scaled: &dyn Fn(usize) -> bool) -> DifferentialForm<S> {
    let chart = a.chart().clone();
    let mut out = DifferentialForm::zero(&chart, a.degree().saturating_sub(1));
    if a.degree() == 0 {
        return out;
    }
    for (idx, c) in a.terms() {
        let k = idx.indices().iter().filter(|&&v| scaled(v)).count() as i64;
        if k == 0 {
            continue;
        }
        let t = c.map_terms(|m| S::one() / S::from_i64(m.degree_where(scaled) as i64 + k));
        for (pos, &v) in idx.indices().iter().enumerate() {
            if !scaled(v) {
                continue;
            }
            let mut term = &crate::poly::Polynomial::var(v) * &t;
            if pos % 2 == 1 {
                term = -term;
            }
            out.add_term(idx.without(pos), term);
        }
    }
    out
}

/// Homotopy operator `I` for `d`, scaling every coordinate.
pub fn poincare_homotopy<S: Scalar>(a: &DifferentialForm<S>) -> Result<DifferentialForm<S>> {
    if a.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    Ok(homotopy_where(a, &|_| true))
}

/// Homotopy operator for `d_V`: only vertical coordinates are scaled, base
/// coordinates and their differentials ride along as parameters. Satisfies
/// `d_V I_V + I_V d_V = id` on forms of positive vertical degree.
pub fn vertical_homotopy<S: Scalar>(a: &DifferentialForm<S>) -> DifferentialForm<S> {
    let chart = a.chart().clone();
    homotopy_where(a, &|v| chart.is_vertical(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Chart;
    use crate::{Rational, RationalForm, RationalPoly};

    fn half() -> Rational {
        Rational::new(1.into(), 2.into())
    }

    #[test]
    fn area_form_primitive() {
        // I(dx1∧dx2) = ½(x1 dx2 − x2 dx1)
        let c = Chart::extended(2, 1).unwrap();
        let area = RationalForm::basis(&c, &[0, 1]);
        let expected = &RationalForm::differential(&c, 1).mul_function(&RationalPoly::var(0).scale(&half()))
            - &RationalForm::differential(&c, 0).mul_function(&RationalPoly::var(1).scale(&half()));
        let prim = poincare_homotopy(&area).unwrap();
        assert_eq!(prim, expected);
        assert_eq!(prim.exterior_derivative(), area);
    }

    #[test]
    fn exact_one_form_of_linear_function() {
        let c = Chart::ordinary(1, 1, 1).unwrap();
        let dq = RationalForm::differential(&c, 1);
        assert_eq!(poincare_homotopy(&dq).unwrap(), RationalForm::function(&c, RationalPoly::var(1)));
    }

    #[test]
    fn degree_zero_is_rejected() {
        let c = Chart::ordinary(1, 1, 1).unwrap();
        let f = RationalForm::function(&c, RationalPoly::var(1));
        assert_eq!(poincare_homotopy(&f), Err(Error::DegreeZero));
    }

    #[test]
    fn vertical_homotopy_keeps_base_as_parameter() {
        // d_V(x q^2) = 2 x q dq, and I_V recovers x q^2
        let c = Chart::ordinary(1, 1, 1).unwrap();
        let f = RationalForm::function(
            &c,
            &RationalPoly::var(0) * &(&RationalPoly::var(1) * &RationalPoly::var(1)),
        );
        let df = f.vertical_derivative();
        assert_eq!(vertical_homotopy(&df), f);
    }
}
