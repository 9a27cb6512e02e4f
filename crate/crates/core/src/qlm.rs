//! Formal g-expansion of QLM iterates.

use crate::error::{Error, Result};
use crate::formal::{GaussRational, GradedSeries};
use crate::wkb::k_squared_poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QlmFormalIterate {
    pub p: usize,
    pub series: GradedSeries,
}

fn check_leading(y_prev: &GradedSeries) -> Result<()> {
    if y_prev.coeff(0) != GradedSeries::ik(1).coeff(0) {
        return Err(Error::SingularLeadingTerm(y_prev.coeff(0).to_string()));
    }
    Ok(())
}

/// `f = (y^2 - k^2) / (2 y)`.
pub fn qlm_f(y_prev: &GradedSeries) -> Result<GradedSeries> {
    let n = y_prev.order_cap();
    let num = y_prev.mul(y_prev)?.sub(&GradedSeries::constant(k_squared_poly(), n))?;
    let recip = y_prev.scale(&GaussRational::from(2)).reciprocal()?;
    num.mul(&recip)
}

/// One QLM step: `sum_{n < N} L_n` with `L_0 = f` and
/// `L_n = (1/(2 y_prev)) * (-g d/dr L_{n-1})`.
pub fn qlm_iterate_series(y_prev: &GradedSeries) -> Result<GradedSeries> {
    check_leading(y_prev)?;
    let n = y_prev.order_cap();
    let recip = y_prev.scale(&GaussRational::from(2)).reciprocal()?;
    let mut l = qlm_f(y_prev)?;
    let mut sum = l.clone();
    for idx in 1..n {
        l = l.g_derivative().neg().mul(&recip)?;
        // g d/dr raises the order by one and 1/(2y) starts at order 0.
        assert!(l.leading_order().is_none_or(|o| o >= idx), "L_{idx} has leading order below {idx}");
        if l.is_zero() {
            break;
        }
        sum = sum.add(&l)?;
    }
    Ok(sum)
}

/// `y_0 = i k` followed by `p` QLM steps.
pub fn qlm_pth_series(p: usize, order_cap: usize) -> Result<QlmFormalIterate> {
    if order_cap < 1 {
        return Err(Error::usage("qlm_pth_series needs order_cap >= 1"));
    }
    let mut y = GradedSeries::ik(order_cap);
    for _ in 0..p {
        y = qlm_iterate_series(&y)?;
    }
    Ok(QlmFormalIterate { p, series: y })
}

/// All iterates `y_0 ..= y_p`.
pub fn qlm_iterates(p: usize, order_cap: usize) -> Result<Vec<GradedSeries>> {
    if order_cap < 1 {
        return Err(Error::usage("qlm_iterates needs order_cap >= 1"));
    }
    let mut out = vec![GradedSeries::ik(order_cap)];
    for i in 0..p {
        let next = qlm_iterate_series(&out[i])?;
        out.push(next);
    }
    Ok(out)
}

/// Number of leading orders on which `a` and `b` agree exactly.
pub fn match_prefix(a: &GradedSeries, b: &GradedSeries) -> Result<usize> {
    if a.order_cap() != b.order_cap() {
        return Err(Error::usage(format!(
            "match_prefix needs equal caps, got {} and {}",
            a.order_cap(),
            b.order_cap()
        )));
    }
    Ok(a.coeffs().iter().zip(b.coeffs()).take_while(|(x, y)| x == y).count())
}

/// `g y_p' - (y_{p-1}^2 - 2 y_p y_{p-1} - k^2)`.
pub fn linearized_residual(y_p: &GradedSeries, y_prev: &GradedSeries) -> Result<GradedSeries> {
    let n = y_p.order_cap();
    let rhs = y_prev
        .mul(y_prev)?
        .sub(&y_p.mul(y_prev)?.scale(&GaussRational::from(2)))?
        .sub(&GradedSeries::constant(k_squared_poly(), n))?;
    y_p.g_derivative().sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::structural_violations;
    use crate::formal::text::parse_poly;
    use crate::wkb::wkb_terms;

    #[test]
    fn f_of_ik_is_ik() {
        let f = qlm_f(&GradedSeries::ik(3)).unwrap();
        assert_eq!(f, GradedSeries::ik(3));
    }

    #[test]
    fn f_on_the_exact_series() {
        // On a Riccati solution f(y) = y + g y'/(2y), so only order 0 survives
        // unchanged; the full step (sum of L_n) is what fixes y.
        let w = wkb_terms(8).unwrap().series;
        let f = qlm_f(&w).unwrap();
        assert_eq!(f.coeff(0), w.coeff(0));
        let expected =
            w.add(&w.g_derivative().mul(&w.scale(&GaussRational::from(2)).reciprocal().unwrap()).unwrap()).unwrap();
        assert_eq!(f, expected);
        let y1 = qlm_pth_series(1, 8).unwrap().series;
        assert_eq!(qlm_f(&y1).unwrap().coeff(0), w.coeff(0));
    }

    #[test]
    fn exact_series_is_a_fixed_point_of_the_step() {
        let w = wkb_terms(8).unwrap().series;
        assert_eq!(qlm_iterate_series(&w).unwrap(), w);
    }

    #[test]
    fn first_iterate_low_orders() {
        let y1 = qlm_pth_series(1, 3).unwrap().series;
        assert_eq!(y1.coeff(1), &parse_poly("(-1/2) k^-1 k1").unwrap());
        assert_eq!(y1.coeff(2), &parse_poly("(1/4 i) k^-3 k1^2 + (-1/4 i) k^-2 k2").unwrap());
    }

    #[test]
    fn two_to_the_p_law_small_caps() {
        for n in [4usize, 8, 10] {
            let w = wkb_terms(n).unwrap().series;
            let ys = qlm_iterates(3, n).unwrap();
            for (p, y) in ys.iter().enumerate() {
                assert_eq!(match_prefix(y, &w).unwrap(), (1usize << p).min(n), "p={p} N={n}");
            }
        }
    }

    #[test]
    fn linearized_residual_and_structure() {
        let ys = qlm_iterates(3, 8).unwrap();
        let w = wkb_terms(8).unwrap().series;
        for p in 1..ys.len() {
            assert!(linearized_residual(&ys[p], &ys[p - 1]).unwrap().is_zero());
            assert!(structural_violations(&ys[p]).is_empty());
            for m in 0..8 {
                for key in ys[p].coeff(m).keys() {
                    assert!(w.coeff(m).keys().any(|k| k == key), "p={p} m={m} extra key {key:?}");
                }
            }
        }
    }

    #[test]
    fn match_prefix_needs_equal_caps() {
        assert!(match_prefix(&GradedSeries::ik(2), &GradedSeries::ik(3)).is_err());
        assert_eq!(match_prefix(&GradedSeries::ik(3), &GradedSeries::ik(3)).unwrap(), 3);
    }

    #[test]
    fn bad_leading_term_is_rejected() {
        let s = GradedSeries::one(3);
        assert!(matches!(qlm_iterate_series(&s), Err(Error::SingularLeadingTerm(_))));
    }
}
