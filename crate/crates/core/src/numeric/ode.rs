//! Dormand-Prince 5(4) for a complex scalar ODE over a real parameter.

use num_complex::Complex64;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order weights minus the embedded fourth-order ones
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integration stalled: the step size fell below resolution at parameter `t`.
#[derive(Clone, Copy, Debug)]
pub struct StepUnderflow {
    pub t: f64,
}

/// Adaptive integrator that keeps its step size between calls.
#[derive(Clone, Debug)]
pub struct Dopri5 {
    tol: Tolerances,
    h: Option<f64>,
    pub stats: StepStats,
}

impl Dopri5 {
    pub fn new(tol: Tolerances) -> Self {
        Dopri5 { tol, h: None, stats: StepStats::default() }
    }

    /// Advances `y` from `t0` to `t1` (either direction).
    pub fn integrate<F>(&mut self, mut f: F, t0: f64, y0: Complex64, t1: f64) -> Result<Complex64, StepUnderflow>
    where
        F: FnMut(f64, Complex64) -> Complex64,
    {
        let span = t1 - t0;
        if span == 0.0 {
            return Ok(y0);
        }
        let dir = span.signum();
        let min_step = 1e-13 * span.abs().max(t0.abs().max(t1.abs()) * 1e-3);
        let mut t = t0;
        let mut y = y0;
        let mut h = self.h.unwrap_or(span.abs()).min(span.abs());
        let mut k1 = f(t, y);
        loop {
            let remaining = (t1 - t) * dir;
            if remaining <= 0.0 {
                break;
            }
            let last = h >= remaining;
            let step = if last { remaining } else { h } * dir;

            let k2 = f(t + C2 * step, y + step * (A21 * k1));
            let k3 = f(t + C3 * step, y + step * (A31 * k1 + A32 * k2));
            let k4 = f(t + C4 * step, y + step * (A41 * k1 + A42 * k2 + A43 * k3));
            let k5 = f(t + C5 * step, y + step * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
            let k6 = f(t + step, y + step * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
            let y_new = y + step * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
            let k7 = f(t + step, y_new);
            let err_vec = step * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
            let scale = self.tol.atol + self.tol.rtol * y.norm().max(y_new.norm());
            let err = err_vec.norm() / scale;

            if err <= 1.0 {
                self.stats.accepted += 1;
                t = if last { t1 } else { t + step };
                y = y_new;
                k1 = k7;
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                if !last || grow < 1.0 {
                    h = step.abs() * grow;
                }
            } else {
                self.stats.rejected += 1;
                let shrink = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.9) } else { 0.1 };
                h = step.abs() * shrink;
                if h < min_step {
                    return Err(StepUnderflow { t });
                }
            }
        }
        self.h = Some(h);
        Ok(y)
    }
}
