//! Exact formal algebra: Gaussian rationals, differential polynomials in k, and
//! truncated series in g.

pub mod poly;
pub mod rational;
pub mod series;
pub mod text;

pub use poly::{
    homogeneity_signature, poly_add, poly_diff, poly_eval, poly_mul, DiffMonomial, DiffPolynomial, Graded, MonoKey,
    NumericJet,
};
pub use rational::{ExactRational, GaussRational};
pub use series::{series_mul, series_reciprocal, GradedSeries, DEFAULT_ORDER_CAP};

/// Checks the structure every WKB-type coefficient has: order m is homogeneous
/// of degree `1 - m` and weight `m`, with imaginary coefficients for even m and
/// real ones for odd m. Returns a description of each violation.
pub fn structural_violations(s: &GradedSeries) -> Vec<String> {
    let mut out = Vec::new();
    for (m, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let want = (Graded::Uniform(1 - m as i64), Graded::Uniform(m as i64));
        let got = c.homogeneity_signature();
        if got != want {
            out.push(format!("order {m}: signature {got:?}, expected {want:?}"));
        }
        let parity_ok =
            if m % 2 == 0 { c.all_coeffs(GaussRational::is_imaginary) } else { c.all_coeffs(GaussRational::is_real) };
        if !parity_ok {
            out.push(format!(
                "order {m}: coefficients should be purely {}",
                if m % 2 == 0 { "imaginary" } else { "real" }
            ));
        }
    }
    out
}
