//! Truncated power series in g with differential-polynomial coefficients.

use super::poly::DiffPolynomial;
use super::rational::GaussRational;
use crate::error::{Error, Result};

/// Default truncation: orders g^0 .. g^7.
pub const DEFAULT_ORDER_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    coeffs: Vec<DiffPolynomial>,
}

impl GradedSeries {
    /// All-zero series with `order_cap` slots.
    pub fn zero(order_cap: usize) -> Self {
        assert!(order_cap >= 1, "order_cap must be at least 1");
        GradedSeries { coeffs: vec![DiffPolynomial::zero(); order_cap] }
    }

    pub fn one(order_cap: usize) -> Self {
        Self::constant(DiffPolynomial::one(), order_cap)
    }

    /// `p` at order 0, zero above.
    pub fn constant(p: DiffPolynomial, order_cap: usize) -> Self {
        let mut s = Self::zero(order_cap);
        s.coeffs[0] = p;
        s
    }

    /// `i k` at order 0.
    pub fn ik(order_cap: usize) -> Self {
        Self::constant(DiffPolynomial::k_power(GaussRational::i(), 1), order_cap)
    }

    /// Builds a series from its coefficients; the length becomes the order cap.
    pub fn from_coeffs(coeffs: Vec<DiffPolynomial>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::usage("a graded series needs order_cap >= 1"));
        }
        Ok(GradedSeries { coeffs })
    }

    pub fn order_cap(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, m: usize) -> &DiffPolynomial {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[DiffPolynomial] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, m: usize, p: DiffPolynomial) {
        self.coeffs[m] = p;
    }

    fn check_caps(&self, other: &GradedSeries) -> Result<()> {
        if self.order_cap() != other.order_cap() {
            return Err(Error::usage(format!("order caps differ: {} vs {}", self.order_cap(), other.order_cap())));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.check_caps(other)?;
        Ok(GradedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.check_caps(other)?;
        Ok(GradedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn neg(&self) -> GradedSeries {
        GradedSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &GaussRational) -> GradedSeries {
        GradedSeries { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Multiply every coefficient by the polynomial `p` (order-0 factor).
    pub fn mul_poly(&self, p: &DiffPolynomial) -> GradedSeries {
        GradedSeries { coeffs: self.coeffs.iter().map(|a| a * p).collect() }
    }

    /// Cauchy product truncated at the common cap.
    pub fn mul(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.check_caps(other)?;
        let n = self.order_cap();
        let mut coeffs = vec![DiffPolynomial::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(GradedSeries { coeffs })
    }

    /// Formal inverse. The order-0 coefficient must be a single `c k^d`.
    pub fn reciprocal(&self) -> Result<GradedSeries> {
        let (key, c) = self.coeffs[0]
            .as_monomial()
            .filter(|(k, _)| k.max_derivative() == 0)
            .ok_or_else(|| Error::SingularLeadingTerm(self.coeffs[0].to_string()))?;
        let inv_c = c.inverse().expect("stored coefficients are nonzero");
        let d = key.kpow();
        let n = self.order_cap();
        let mut r: Vec<DiffPolynomial> = Vec::with_capacity(n);
        r.push(DiffPolynomial::k_power(inv_c.clone(), -d));
        let neg_inv = -&inv_c;
        for m in 1..n {
            let mut acc = DiffPolynomial::zero();
            for j in 1..=m {
                if self.coeffs[j].is_zero() || r[m - j].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[j] * &r[m - j]);
            }
            // r_m = -(1/a_0) * sum_{j>=1} a_j r_{m-j}
            r.push(acc.mul_k_power(&neg_inv, -d));
        }
        Ok(GradedSeries { coeffs: r })
    }

    /// `g d/dr`: order m of the result is d/dr of order m-1; the top order falls off.
    pub fn g_derivative(&self) -> GradedSeries {
        let n = self.order_cap();
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(DiffPolynomial::zero());
        for m in 1..n {
            coeffs.push(self.coeffs[m - 1].diff());
        }
        GradedSeries { coeffs }
    }

    /// Lowest order with a nonzero coefficient, or `None` for the zero series.
    pub fn leading_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.leading_order().is_none()
    }

    /// Same coefficients with a smaller or larger cap (new slots are zero).
    pub fn with_order_cap(&self, order_cap: usize) -> GradedSeries {
        let mut s = Self::zero(order_cap);
        for (m, c) in self.coeffs.iter().take(order_cap).enumerate() {
            s.coeffs[m] = c.clone();
        }
        s
    }
}

pub fn series_mul(a: &GradedSeries, b: &GradedSeries) -> Result<GradedSeries> {
    a.mul(b)
}

pub fn series_reciprocal(a: &GradedSeries) -> Result<GradedSeries> {
    a.reciprocal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::text::parse_poly;

    fn series(orders: &[&str]) -> GradedSeries {
        GradedSeries::from_coeffs(orders.iter().map(|s| parse_poly(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn unit_is_identity() {
        let a = series(&["(1 i) k", "(-1/2) k^-1 k1", "(3/8 i) k^-3 k1^2"]);
        assert_eq!(a.mul(&GradedSeries::one(3)).unwrap(), a);
    }

    #[test]
    fn square_of_first_two_wkb_terms() {
        let a = series(&["(1 i) k", "(-1/2) k^-1 k1", "0"]);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, series(&["(-1) k^2", "(-1 i) k1", "(1/4) k^-2 k1^2"]));
        let b = series(&["(1 i) k", "0"]);
        assert_eq!(b.mul(&b).unwrap(), series(&["(-1) k^2", "0"]));
    }

    #[test]
    fn reciprocals() {
        assert_eq!(GradedSeries::ik(1).reciprocal().unwrap(), series(&["(-1 i) k^-1"]));
        let a = series(&["(1 i) k", "(-1/2) k^-1 k1"]);
        let r = a.reciprocal().unwrap();
        assert_eq!(r, series(&["(-1 i) k^-1", "(-1/2) k^-3 k1"]));
        assert_eq!(a.mul(&r).unwrap(), GradedSeries::one(2));
        let two_ik = series(&["(2 i) k"]);
        assert_eq!(two_ik.reciprocal().unwrap(), series(&["(-1/2 i) k^-1"]));
    }

    #[test]
    fn reciprocal_rejects_bad_leading_terms() {
        for lead in ["0", "(1) k + (1) k1", "(1) k1"] {
            let s = series(&[lead, "(1) k"]);
            assert!(matches!(s.reciprocal(), Err(Error::SingularLeadingTerm(_))));
        }
    }

    #[test]
    fn mismatched_caps_are_usage_errors() {
        assert!(matches!(GradedSeries::one(2).mul(&GradedSeries::one(3)), Err(Error::Usage(_))));
    }

    #[test]
    fn g_derivative_shifts_order() {
        let a = series(&["(1) k", "(1) k1", "(1) k2"]);
        assert_eq!(a.g_derivative(), series(&["0", "(1) k1", "(1) k2"]));
    }
}
