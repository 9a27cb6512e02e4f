//! Grid samples of complex functions along the line `z = t + i*shift`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledFunction {
    /// Real parts `t_j` of the sample points, strictly increasing.
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    /// Imaginary offset of the sampling line.
    pub shift: f64,
}

impl SampledFunction {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>, shift: f64) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::usage(format!("grid has {} points but {} values", grid.len(), values.len())));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::usage("grid must be strictly increasing"));
        }
        Ok(SampledFunction { grid, values, shift })
    }

    /// Samples `f` on the line.
    pub fn from_fn(grid: &[f64], shift: f64, mut f: impl FnMut(Complex64) -> Complex64) -> Result<Self> {
        let values = grid.iter().map(|&t| f(Complex64::new(t, shift))).collect();
        Self::new(grid.to_vec(), values, shift)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn z(&self, j: usize) -> Complex64 {
        Complex64::new(self.grid[j], self.shift)
    }

    pub fn last(&self) -> Complex64 {
        *self.values.last().expect("non-empty samples")
    }

    /// `max_j |a_j - b_j|`.
    pub fn sup_diff(&self, other: &SampledFunction) -> Result<f64> {
        if self.grid != other.grid || self.shift != other.shift {
            return Err(Error::usage("sup_diff needs samples on the same grid"));
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Six-point Lagrange interpolation at parameter `t` (uniform grids only).
    pub fn interpolate(&self, t: f64) -> Complex64 {
        lagrange_uniform(&self.grid, &self.values, t)
    }
}

/// Six-point Lagrange interpolation on a uniform grid, window centred on `t`.
pub fn lagrange_uniform(grid: &[f64], values: &[Complex64], t: f64) -> Complex64 {
    const W: usize = 6;
    let n = grid.len();
    assert!(n >= W, "interpolation needs at least {W} samples");
    let h = (grid[n - 1] - grid[0]) / (n - 1) as f64;
    let pos = ((t - grid[0]) / h).floor() as isize;
    let start = (pos - 2).clamp(0, (n - W) as isize) as usize;
    let xs = &grid[start..start + W];
    let ys = &values[start..start + W];
    if let Some(j) = xs.iter().position(|&x| x == t) {
        return ys[j];
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..W {
        let mut w = 1.0;
        for m in 0..W {
            if m != j {
                w *= (t - xs[m]) / (xs[j] - xs[m]);
            }
        }
        acc += ys[j] * w;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterateHistory {
    /// `y_0, y_1, ..., y_p`.
    pub iterates: Vec<SampledFunction>,
    /// `sup_diffs[i] = |y_{i+1} - y_i|_inf`.
    pub sup_diffs: Vec<f64>,
}

impl IterateHistory {
    pub fn last(&self) -> &SampledFunction {
        self.iterates.last().expect("history holds y_0")
    }

    /// Empirical orders `ln d_{i+1} / ln d_i` for every `d_i < gate`.
    pub fn convergence_orders(&self, gate: f64) -> Vec<(usize, f64)> {
        convergence_orders(&self.sup_diffs, gate)
    }
}

pub fn convergence_orders(sup_diffs: &[f64], gate: f64) -> Vec<(usize, f64)> {
    sup_diffs
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] < gate && w[0] > 0.0 && w[1] > 0.0)
        .map(|(i, w)| (i, w[1].ln() / w[0].ln()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_is_exact_for_quintics() {
        let grid: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let f = |t: f64| Complex64::new(t.powi(5) - 2.0 * t, t * t);
        let values: Vec<_> = grid.iter().map(|&t| f(t)).collect();
        for t in [0.05, 1.37, 5.1, 5.69] {
            assert!((lagrange_uniform(&grid, &values, t) - f(t)).norm() < 1e-9);
        }
    }

    #[test]
    fn validation_and_norm() {
        assert!(SampledFunction::new(vec![0.0, 0.0], vec![Complex64::default(); 2], 0.0).is_err());
        assert!(SampledFunction::new(vec![0.0, 1.0], vec![Complex64::default()], 0.0).is_err());
        let a = SampledFunction::from_fn(&[0.0, 1.0, 2.0], 0.5, |z| z).unwrap();
        let b = SampledFunction::from_fn(&[0.0, 1.0, 2.0], 0.5, |z| z * 2.0).unwrap();
        assert!((a.sup_diff(&b).unwrap() - Complex64::new(2.0, 0.5).norm()).abs() < 1e-15);
    }

    #[test]
    fn orders() {
        let d = [0.6, 0.5, 0.09, 9e-4, 3e-8];
        let o = convergence_orders(&d, 0.1);
        assert_eq!(o.len(), 2);
        assert!(o.iter().all(|&(_, r)| r > 1.8));
    }
}
