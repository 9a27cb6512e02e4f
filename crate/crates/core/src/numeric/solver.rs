//! QLM iterates on a grid: closed-form first iterate and the linear ODE recurrence.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ode::{Dopri5, Tolerances};
use super::sampled::{lagrange_uniform, IterateHistory, SampledFunction};
use crate::error::{Error, Result};
use crate::spectra::{Domain, PotentialSpec};

/// Largest default outer boundary.
pub const Z_MAX_CAP: f64 = 40.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub z_min: f64,
    pub z_max: f64,
    pub grid_points: usize,
    /// Offset `delta` of the integration line `Im z = delta`.
    pub imag_shift: f64,
    pub ode_rel_tol: f64,
    pub quadrature_order: usize,
}

impl SolveConfig {
    /// Defaults for `spec` at energy `e`. Interval potentials are not supported.
    pub fn for_potential(spec: &PotentialSpec, e: f64) -> Result<Self> {
        let z_min = match spec.domain() {
            Domain::FullLine => 0.0,
            Domain::HalfLine => 0.1,
            Domain::Interval(_) => {
                return Err(Error::InvalidPotential {
                    kind: spec.kind.name().into(),
                    reason: "numeric iterates need an unbounded domain".into(),
                })
            }
        };
        let cfg = SolveConfig {
            z_min,
            z_max: default_z_max(spec, e, z_min),
            grid_points: 8001,
            imag_shift: 0.5,
            ode_rel_tol: 1e-10,
            quadrature_order: 16,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::usage(m));
        if !self.z_min.is_finite() || !self.z_max.is_finite() || self.z_min >= self.z_max {
            return bad(format!("need z_min < z_max, got {} and {}", self.z_min, self.z_max));
        }
        if self.grid_points < 16 {
            return bad(format!("grid_points must be >= 16, got {}", self.grid_points));
        }
        if !self.imag_shift.is_finite() || self.imag_shift < 0.0 {
            return bad(format!("imag_shift must be >= 0, got {}", self.imag_shift));
        }
        if !(self.ode_rel_tol > 0.0 && self.ode_rel_tol <= 1e-3) {
            return bad(format!("ode_rel_tol must lie in (0, 1e-3], got {}", self.ode_rel_tol));
        }
        if self.quadrature_order == 0 {
            return bad("quadrature_order must be >= 1".into());
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.grid_points - 1;
        let h = (self.z_max - self.z_min) / n as f64;
        (0..=n).map(|j| if j == n { self.z_max } else { self.z_min + h * j as f64 }).collect()
    }
}

/// Smallest z with `|V| <= 1e-8 |E|` beyond the well, capped at `Z_MAX_CAP`.
fn default_z_max(spec: &PotentialSpec, e: f64, z_min: f64) -> f64 {
    if spec.asymptote_right().is_none() || e == 0.0 {
        return Z_MAX_CAP;
    }
    let lam = spec.z_scale();
    let small = |z: f64| spec.v(Complex64::new(z / lam, 0.0)).norm() <= 1e-8 * e.abs();
    // scan down from the cap to the last point where V is still large
    let step = 0.01;
    let mut z = Z_MAX_CAP;
    if !small(z) {
        return Z_MAX_CAP;
    }
    while z - step > z_min && small(z - step) {
        z -= step;
    }
    z
}

/// `k^2(z) = E - V(z / lambda) - l(l+1)/z^2`.
pub fn k_squared(spec: &PotentialSpec, e: f64, z: Complex64) -> Result<Complex64> {
    let x = z / spec.z_scale();
    let cent = spec.centrifugal_coeff();
    if spec.is_singular_at(x) || (cent != 0.0 && z.norm() == 0.0) {
        return Err(Error::SingularPoint(format!("{z}")));
    }
    let mut k2 = e - spec.v(x);
    if cent != 0.0 {
        k2 -= cent / (z * z);
    }
    Ok(k2)
}

/// `d k^2 / dz`.
pub fn k_squared_derivative(spec: &PotentialSpec, z: Complex64) -> Complex64 {
    let lam = spec.z_scale();
    let mut d = -spec.dv(z / lam) / lam;
    let cent = spec.centrifugal_coeff();
    if cent != 0.0 {
        d += 2.0 * cent / (z * z * z);
    }
    d
}

/// `sqrt` of `k2` on the branch closest to `near`.
fn root_near(k2: Complex64, near: Complex64) -> Complex64 {
    let r = k2.sqrt();
    if (r - near).norm() <= (r + near).norm() {
        r
    } else {
        -r
    }
}

/// Precomputed `k^2` and `k` on the line, with `Im k > 0` at `z_max`.
struct Line<'a> {
    spec: &'a PotentialSpec,
    e: f64,
    grid: Vec<f64>,
    shift: f64,
    k2: Vec<Complex64>,
    k: Vec<Complex64>,
}

impl<'a> Line<'a> {
    fn new(spec: &'a PotentialSpec, e: f64, cfg: &SolveConfig) -> Result<Self> {
        cfg.validate()?;
        let grid = cfg.grid();
        let shift = cfg.imag_shift;
        let k2 = grid.iter().map(|&t| k_squared(spec, e, Complex64::new(t, shift))).collect::<Result<Vec<_>>>()?;
        let scale = k2.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (j, v) in k2.iter().enumerate() {
            if v.norm() <= 1e-14 * scale {
                return Err(Error::Path(format!(
                    "turning point on the path at z = {}",
                    Complex64::new(grid[j], shift)
                )));
            }
        }
        if shift == 0.0 {
            if let Some(w) = k2.windows(2).position(|w| (w[0].re > 0.0) != (w[1].re > 0.0)) {
                return Err(Error::Path(format!(
                    "turning point between z = {} and {} lies on the real path; use imag_shift > 0",
                    grid[w],
                    grid[w + 1]
                )));
            }
        }
        let n = grid.len();
        let mut k = vec![Complex64::default(); n];
        let last = k2[n - 1].sqrt();
        k[n - 1] = if last.im > 0.0 || (last.im == 0.0 && last.re > 0.0) { last } else { -last };
        for j in (0..n - 1).rev() {
            k[j] = root_near(k2[j], k[j + 1]);
        }
        Ok(Line { spec, e, grid, shift, k2, k })
    }

    fn z(&self, t: f64) -> Complex64 {
        Complex64::new(t, self.shift)
    }

    fn k2_at(&self, t: f64) -> Complex64 {
        k_squared(self.spec, self.e, self.z(t)).expect("the path avoids singular points")
    }

    fn boundary(&self) -> Complex64 {
        Complex64::i() * self.k[self.k.len() - 1]
    }

    fn check_grid(&self, y: &SampledFunction) -> Result<()> {
        if y.grid != self.grid || y.shift != self.shift {
            return Err(Error::usage("previous iterate is not sampled on the configured grid"));
        }
        Ok(())
    }
}

/// `y_0 = i k` on the grid.
pub fn zeroth_iterate(spec: &PotentialSpec, e: f64, cfg: &SolveConfig) -> Result<SampledFunction> {
    let line = Line::new(spec, e, cfg)?;
    let values = line.k.iter().map(|k| Complex64::i() * k).collect();
    SampledFunction::new(line.grid, values, line.shift)
}

/// `y_1(z) = i k(z) - i * int_{z_max}^{z} k'(s) exp(-2i int_s^z k) ds`, by nested
/// Gauss-Legendre quadrature, one grid interval at a time.
pub fn first_iterate_closed_form(spec: &PotentialSpec, e: f64, cfg: &SolveConfig) -> Result<SampledFunction> {
    let line = Line::new(spec, e, cfg)?;
    let order = NonZeroUsize::new(cfg.quadrature_order).ok_or_else(|| Error::usage("quadrature_order must be >= 1"))?;
    let rule = GaussLegendre::new(order);
    let pairs = rule.as_node_weight_pairs();
    let i = Complex64::i();
    let n = line.grid.len();

    let mut values = vec![Complex64::default(); n];
    values[n - 1] = line.boundary();
    let mut acc = Complex64::default();
    for j in (0..n - 1).rev() {
        let (a, b) = (line.grid[j + 1], line.grid[j]);
        let (ka, kb) = (line.k[j + 1], line.k[j]);
        // branch of k inside the interval follows the linear interpolant of the ends
        let k_at = |t: f64| {
            let w = (t - a) / (b - a);
            root_near(line.k2_at(t), ka + (kb - ka) * w)
        };
        let integral_k = |from: f64, to: f64| -> Complex64 {
            let half = 0.5 * (to - from);
            let mid = 0.5 * (to + from);
            pairs.iter().map(|&(x, w)| w * k_at(mid + half * x)).sum::<Complex64>() * half
        };
        let phase = integral_k(a, b);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let local: Complex64 = pairs
            .iter()
            .map(|&(x, w)| {
                let s = mid + half * x;
                let ks = k_at(s);
                let dk = k_squared_derivative(spec, line.z(s)) / (2.0 * ks);
                w * dk * (-2.0 * i * integral_k(s, b)).exp()
            })
            .sum::<Complex64>()
            * half;
        acc = (-2.0 * i * phase).exp() * acc + local;
        values[j] = i * line.k[j] - i * acc;
    }
    SampledFunction::new(line.grid, values, line.shift)
}

/// Solves `y' = y_prev^2 - 2 y y_prev - k^2` from `z_max` inward with `y(z_max) = i k(z_max)`.
pub fn qlm_step_numeric(
    y_prev: &SampledFunction,
    spec: &PotentialSpec,
    e: f64,
    cfg: &SolveConfig,
) -> Result<SampledFunction> {
    let line = Line::new(spec, e, cfg)?;
    line.check_grid(y_prev)?;
    step_on_line(&line, y_prev, cfg)
}

fn step_on_line(line: &Line<'_>, y_prev: &SampledFunction, cfg: &SolveConfig) -> Result<SampledFunction> {
    let n = line.grid.len();
    let mut ode = Dopri5::new(Tolerances { rtol: cfg.ode_rel_tol, atol: 1e-3 * cfg.ode_rel_tol });
    let mut values = vec![Complex64::default(); n];
    values[n - 1] = line.boundary();
    let grid = &line.grid;
    let prev = &y_prev.values;
    for j in (0..n - 1).rev() {
        let rhs = |t: f64, y: Complex64| {
            let yp = if t == grid[j] {
                prev[j]
            } else if t == grid[j + 1] {
                prev[j + 1]
            } else {
                lagrange_uniform(grid, prev, t)
            };
            let k2 = if t == grid[j] {
                line.k2[j]
            } else if t == grid[j + 1] {
                line.k2[j + 1]
            } else {
                line.k2_at(t)
            };
            yp * yp - 2.0 * y * yp - k2
        };
        values[j] = ode
            .integrate(rhs, grid[j + 1], values[j + 1], grid[j])
            .map_err(|u| Error::Integration { z: format!("{}", line.z(u.t)), reason: "step size underflow".into() })?;
        if !values[j].is_finite() {
            return Err(Error::Integration { z: format!("{}", line.z(grid[j])), reason: "solution overflowed".into() });
        }
    }
    SampledFunction::new(line.grid.clone(), values, line.shift)
}

/// `y_0 = i k` followed by `p_max` ODE steps.
pub fn solve_qlm(spec: &PotentialSpec, e: f64, p_max: usize, cfg: &SolveConfig) -> Result<IterateHistory> {
    if p_max < 1 {
        return Err(Error::usage("solve_qlm needs p_max >= 1"));
    }
    let line = Line::new(spec, e, cfg)?;
    let y0 = SampledFunction::new(line.grid.clone(), line.k.iter().map(|k| Complex64::i() * k).collect(), line.shift)?;
    let mut iterates = vec![y0];
    let mut sup_diffs = Vec::with_capacity(p_max);
    for p in 0..p_max {
        let next = step_on_line(&line, &iterates[p], cfg)?;
        sup_diffs.push(next.sup_diff(&iterates[p])?);
        iterates.push(next);
    }
    Ok(IterateHistory { iterates, sup_diffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::PotentialKind;

    fn ho() -> PotentialSpec {
        PotentialSpec::documented(PotentialKind::Ho1d)
    }

    #[test]
    fn k_squared_examples() {
        let z0 = Complex64::new(0.0, 0.0);
        assert!((k_squared(&ho(), 0.5, z0).unwrap() - 0.5).norm() < 1e-15);
        let c = PotentialSpec::documented(PotentialKind::Coulomb);
        let z = Complex64::new(2.0 * 2f64.sqrt(), 0.0);
        assert!(k_squared(&c, -0.5, z).unwrap().norm() < 1e-15);
        assert!(matches!(k_squared(&c, -0.5, z0), Err(Error::SingularPoint(_))));
        let t = Complex64::new(2.0 * 5f64.sqrt(), 0.0);
        assert!(k_squared(&ho(), 5.0, t).unwrap().norm() < 1e-14);
    }

    #[test]
    fn derivative_of_k_squared() {
        let s = PotentialSpec::new(PotentialKind::Coulomb, &[("Z", 1.0), ("l", 1.0)]).unwrap();
        let z = Complex64::new(1.3, 0.4);
        let h = 1e-6;
        let fd = (k_squared(&s, -0.2, z + h).unwrap() - k_squared(&s, -0.2, z - h).unwrap()) / (2.0 * h);
        assert!((fd - k_squared_derivative(&s, z)).norm() < 1e-7);
    }

    #[test]
    fn config_defaults_and_validation() {
        let cfg = SolveConfig::for_potential(&ho(), 2.5).unwrap();
        assert_eq!(cfg.z_max, Z_MAX_CAP);
        assert_eq!(cfg.grid()[cfg.grid_points - 1], cfg.z_max);
        let mpt = PotentialSpec::documented(PotentialKind::ModifiedPt);
        let m = SolveConfig::for_potential(&mpt, -4.5).unwrap();
        assert!((m.z_max - 14.2).abs() < 0.05, "{}", m.z_max);
        let cot = PotentialSpec::documented(PotentialKind::Cotangent);
        assert!(SolveConfig::for_potential(&cot, 1.0).is_err());
        let mut bad = cfg.clone();
        bad.ode_rel_tol = 1e-2;
        assert!(bad.validate().is_err());
        bad = cfg.clone();
        bad.grid_points = 8;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn real_path_through_a_turning_point_is_rejected() {
        let mut cfg = SolveConfig::for_potential(&ho(), 2.5).unwrap();
        cfg.imag_shift = 0.0;
        assert!(matches!(solve_qlm(&ho(), 2.5, 1, &cfg), Err(Error::Path(_))));
    }

    #[test]
    fn boundary_value_is_exact() {
        let mut cfg = SolveConfig::for_potential(&ho(), 2.5).unwrap();
        cfg.grid_points = 801;
        let h = solve_qlm(&ho(), 2.5, 2, &cfg).unwrap();
        let zmax = Complex64::new(cfg.z_max, cfg.imag_shift);
        let k = k_squared(&ho(), 2.5, zmax).unwrap().sqrt();
        let ik = Complex64::i() * if k.im > 0.0 { k } else { -k };
        for y in &h.iterates {
            assert_eq!(y.last(), ik);
        }
        assert_eq!(first_iterate_closed_form(&ho(), 2.5, &cfg).unwrap().last(), ik);
    }

    #[test]
    fn closed_form_matches_ode_step() {
        let mut cfg = SolveConfig::for_potential(&ho(), 2.5).unwrap();
        cfg.grid_points = 2001;
        let h = solve_qlm(&ho(), 2.5, 1, &cfg).unwrap();
        let cf = first_iterate_closed_form(&ho(), 2.5, &cfg).unwrap();
        let d = cf.sup_diff(&h.iterates[1]).unwrap();
        assert!(d < 1e-6, "{d}");
    }
}
