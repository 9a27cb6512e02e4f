//! Formal WKB series from the Riccati recurrence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formal::text::poly_to_text;
use crate::formal::{DiffPolynomial, GaussRational, GradedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WkbSeries {
    pub series: GradedSeries,
    pub generated_to: usize,
}

/// `k^2` as a polynomial.
pub fn k_squared_poly() -> DiffPolynomial {
    DiffPolynomial::k_power(GaussRational::one(), 2)
}

/// `Y_0 .. Y_{N-1}` with `Y_0 = i k` and
/// `Y_m = -(1/(2 Y_0)) (Y'_{m-1} + sum_{j=1}^{m-1} Y_j Y_{m-j})`.
pub fn wkb_terms(order_cap: usize) -> Result<WkbSeries> {
    if order_cap < 1 {
        return Err(Error::usage("wkb_terms needs order_cap >= 1"));
    }
    let mut ys: Vec<DiffPolynomial> = Vec::with_capacity(order_cap);
    ys.push(DiffPolynomial::k_power(GaussRational::i(), 1));
    // -1/(2 i k) = (i/2) k^-1
    let factor = GaussRational::i_ratio(1, 2);
    for m in 1..order_cap {
        let mut acc = ys[m - 1].diff();
        for j in 1..m {
            acc = &acc + &(&ys[j] * &ys[m - j]);
        }
        ys.push(acc.mul_k_power(&factor, -1));
    }
    Ok(WkbSeries { series: GradedSeries::from_coeffs(ys)?, generated_to: order_cap })
}

/// `g y' + k^2 + y^2`, truncated at the series cap.
pub fn riccati_residual(series: &GradedSeries) -> GradedSeries {
    let n = series.order_cap();
    let sq = series.mul(series).expect("same cap");
    let k2 = GradedSeries::constant(k_squared_poly(), n);
    series.g_derivative().add(&k2).and_then(|s| s.add(&sq)).expect("same cap")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderVerdict {
    pub order: usize,
    pub equal: bool,
    pub lhs: String,
    pub rhs: String,
}

/// Exact per-order comparison. Orders present in only one operand are unequal.
pub fn golden_compare(series: &GradedSeries, fixture: &GradedSeries) -> Vec<OrderVerdict> {
    let n = series.order_cap().max(fixture.order_cap());
    (0..n)
        .map(|m| {
            let l = series.coeffs().get(m);
            let r = fixture.coeffs().get(m);
            OrderVerdict {
                order: m,
                equal: matches!((l, r), (Some(a), Some(b)) if a == b),
                lhs: l.map(poly_to_text).unwrap_or_else(|| "<absent>".into()),
                rhs: r.map(poly_to_text).unwrap_or_else(|| "<absent>".into()),
            }
        })
        .collect()
}

pub fn all_equal(verdicts: &[OrderVerdict]) -> bool {
    verdicts.iter().all(|v| v.equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::structural_violations;
    use crate::formal::text::parse_poly;
    use crate::formal::MonoKey;

    #[test]
    fn low_orders() {
        let w = wkb_terms(5).unwrap().series;
        assert_eq!(w.coeff(0), &parse_poly("(1 i) k").unwrap());
        assert_eq!(w.coeff(1), &parse_poly("(-1/2) k^-1 k1").unwrap());
        assert_eq!(w.coeff(2), &parse_poly("(3/8 i) k^-3 k1^2 + (-1/4 i) k^-2 k2").unwrap());
        assert_eq!(w.coeff(4).coeff(&MonoKey::new(-7, vec![4])), GaussRational::i_ratio(-297, 128));
    }

    #[test]
    fn rejects_zero_cap() {
        assert!(matches!(wkb_terms(0), Err(Error::Usage(_))));
    }

    #[test]
    fn residual_vanishes_and_detects_perturbation() {
        let w = wkb_terms(8).unwrap().series;
        assert!(riccati_residual(&w).is_zero());
        let mut bad = w.clone();
        bad.set_coeff(1, parse_poly("(1/2) k^-1 k1").unwrap());
        let r = riccati_residual(&bad);
        assert_eq!(r.leading_order(), Some(1));
    }

    #[test]
    fn structure_holds_to_twelve() {
        let w = wkb_terms(12).unwrap().series;
        assert!(structural_violations(&w).is_empty());
        assert!(riccati_residual(&w).is_zero());
    }

    #[test]
    fn self_compare_is_all_equal() {
        let w = wkb_terms(4).unwrap().series;
        assert!(all_equal(&golden_compare(&w, &w)));
        let shorter = w.with_order_cap(3);
        let v = golden_compare(&w, &shorter);
        assert!(!v[3].equal && v[..3].iter().all(|v| v.equal));
    }
}
