//! Least-squares pole fits on sampled iterates.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::sampled::SampledFunction;
use crate::error::{Error, Result};
use crate::spectra::{PotentialKind, PotentialSpec};

/// Analytic large-z behaviour removed before fitting `alpha / z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LeadingModel {
    /// `y ~ slope * z` (oscillators).
    Linear { slope: f64 },
    /// `y ~ value` (wells vanishing at infinity).
    Constant { value: f64 },
}

impl LeadingModel {
    pub fn eval(self, z: Complex64) -> Complex64 {
        match self {
            LeadingModel::Linear { slope } => slope * z,
            LeadingModel::Constant { value } => Complex64::new(value, 0.0),
        }
    }

    /// `-hbar omega z / 2` for oscillators, `-sqrt(-E)` for wells with `V -> 0`.
    pub fn for_potential(spec: &PotentialSpec, e: f64) -> Option<Self> {
        match spec.kind {
            PotentialKind::Ho1d | PotentialKind::Ho3d => {
                Some(LeadingModel::Linear { slope: -0.5 * spec.hbar() * spec.p("omega") })
            }
            _ if spec.asymptote_right() == Some(0.0) && e < 0.0 => Some(LeadingModel::Constant { value: -(-e).sqrt() }),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueFit {
    /// Coefficients of `1/z, ..., 1/z^5`.
    pub coeffs: [Complex64; TAIL_TERMS],
    pub points: usize,
    pub rel_residual: f64,
}

impl ResidueFit {
    pub fn alpha(&self) -> f64 {
        self.coeffs[0].re
    }
}

/// Fraction of the usable range, counted from its outer end, used by the residue fit.
pub const OUTER_FRACTION: f64 = 0.2;
/// Samples where the boundary condition still leaks in by more than this are dropped.
pub const BOUNDARY_LEAK: f64 = 1e-10;
const MAX_REL_RESIDUAL: f64 = 1e-3;
const TAIL_TERMS: usize = 5;

/// Returns the solution and the residual norm relative to `scale`.
fn least_squares(rows: &[Vec<Complex64>], rhs: &[Complex64], cols: usize, scale: f64) -> Result<(Vec<Complex64>, f64)> {
    if rows.len() < 2 * cols {
        return Err(Error::FitQuality(format!("only {} usable samples for {cols} unknowns", rows.len())));
    }
    let a = DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    let b = DVector::from_column_slice(rhs);
    let svd = a.clone().svd(true, true);
    let sol = svd.solve(&b, 1e-14).map_err(|e| Error::FitQuality(e.to_string()))?;
    let res = (&a * &sol - &b).norm();
    let rel = if res == 0.0 { 0.0 } else { res / scale };
    Ok((sol.iter().copied().collect(), rel))
}

/// Fits `y - leading = a1/z + ... + a5/z^5` over the outer part of the grid.
pub fn residue_fit(y: &SampledFunction, leading: LeadingModel) -> Result<ResidueFit> {
    let n = y.len();
    if n < 16 {
        return Err(Error::FitQuality("too few samples".into()));
    }
    // |exp(2 int_z^{z_max} y)| measures how much of the boundary mismatch survives at z
    let mut leak = vec![0.0; n];
    let mut acc = Complex64::default();
    for j in (0..n - 1).rev() {
        let dz = y.grid[j + 1] - y.grid[j];
        acc += 0.5 * (y.values[j] + y.values[j + 1]) * dz;
        leak[j] = (2.0 * acc.re).exp();
    }
    leak[n - 1] = 1.0;
    // usable range ends where the boundary layer starts
    let Some(cut) = (0..n).rev().find(|&j| leak[j] < BOUNDARY_LEAK) else {
        return Err(Error::FitQuality("boundary layer covers the whole grid".into()));
    };
    let (lo, hi) = (y.grid[0], y.grid[cut]);
    let start = hi - OUTER_FRACTION * (hi - lo);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    // measured against y itself: y - leading vanishes when the residue does
    let mut scale = 0.0;
    for (j, &lk) in leak.iter().enumerate().take(cut + 1) {
        if y.grid[j] < start || lk >= BOUNDARY_LEAK {
            continue;
        }
        let z = y.z(j);
        let w = z.inv();
        rows.push((1..=TAIL_TERMS as i32).map(|k| w.powi(k)).collect());
        rhs.push(y.values[j] - leading.eval(z));
        scale += y.values[j].norm_sqr();
    }
    let (sol, rel) = least_squares(&rows, &rhs, TAIL_TERMS, scale.sqrt())?;
    if rel > MAX_REL_RESIDUAL || !rel.is_finite() {
        return Err(Error::FitQuality(format!("relative residual {rel:.3e} exceeds {MAX_REL_RESIDUAL:e}")));
    }
    let coeffs = std::array::from_fn(|k| sol[k]);
    Ok(ResidueFit { coeffs, points: rows.len(), rel_residual: rel })
}

/// Real part of the `1/z` coefficient at infinity.
pub fn asymptotic_residue_fit(y: &SampledFunction, leading: LeadingModel) -> Result<f64> {
    residue_fit(y, leading).map(|f| f.alpha())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InnerFit {
    /// `y ~ a/z + b + c z` near the inner end.
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub points: usize,
    pub rel_residual: f64,
}

/// Fits `a/z + b + c z` over the innermost `fraction` of the grid.
pub fn inner_pole_fit(y: &SampledFunction, fraction: f64) -> Result<InnerFit> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::usage(format!("fraction must lie in (0, 1], got {fraction}")));
    }
    let (lo, hi) = (y.grid[0], y.grid[y.len() - 1]);
    let end = lo + fraction * (hi - lo);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..y.len() {
        if y.grid[j] > end {
            break;
        }
        let z = y.z(j);
        rows.push(vec![z.inv(), Complex64::new(1.0, 0.0), z]);
        rhs.push(y.values[j]);
    }
    let scale = rhs.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let (sol, rel) = least_squares(&rows, &rhs, 3, scale)?;
    if rel > MAX_REL_RESIDUAL || !rel.is_finite() {
        return Err(Error::FitQuality(format!("relative residual {rel:.3e} exceeds {MAX_REL_RESIDUAL:e}")));
    }
    Ok(InnerFit { a: sol[0], b: sol[1], c: sol[2], points: rows.len(), rel_residual: rel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn synthetic_oscillator_tail() {
        let g = grid(0.0, 40.0, 4001);
        let y = SampledFunction::from_fn(&g, 0.5, |z| -z / 2.0 + 3.0 / z).unwrap();
        let a = asymptotic_residue_fit(&y, LeadingModel::Linear { slope: -0.5 }).unwrap();
        assert!((a - 3.0).abs() < 1e-8, "{a}");
    }

    #[test]
    fn synthetic_constant_tail_with_subleading_terms() {
        let g = grid(1.0, 60.0, 3001);
        let y = SampledFunction::from_fn(&g, 0.5, |z| -0.7 + 1.25 / z - 0.3 / (z * z)).unwrap();
        let f = residue_fit(&y, LeadingModel::Constant { value: -0.7 }).unwrap();
        assert!((f.alpha() - 1.25).abs() < 1e-9);
        assert!((f.coeffs[1] + 0.3).norm() < 1e-7);
    }

    #[test]
    fn bad_model_is_rejected() {
        let g = grid(0.0, 40.0, 2001);
        let y = SampledFunction::from_fn(&g, 0.5, |z| -z / 2.0 + 3.0 / z + 0.1 * (5.0 * z).sin()).unwrap();
        assert!(matches!(asymptotic_residue_fit(&y, LeadingModel::Linear { slope: -0.5 }), Err(Error::FitQuality(_))));
    }

    #[test]
    fn inner_pole() {
        let g = grid(0.2, 40.0, 4001);
        let y = SampledFunction::from_fn(&g, 0.5, |z| 2.0 / z - z / 2.0).unwrap();
        let f = inner_pole_fit(&y, 0.05).unwrap();
        assert!((f.a - 2.0).norm() < 1e-10);
        assert!((f.c + 0.5).norm() < 1e-10);
    }
}
