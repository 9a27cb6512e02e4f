//! Pole residues and the quantization relations assembled from them.
//!
//! The contour integral of `y` around the classically allowed region is
//! replaced by the contributions of the poles outside it. Finite poles are
//! encircled clockwise (orientation -1), the pole at infinity counterclockwise
//! (+1). The resulting relation is
//! `cut_symmetry * sum(orientation * residue) = n + rhs_offset`.

use serde::Serialize;

use super::potential::{PotentialKind, PotentialSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleLocation {
    Zero,
    One,
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PoleDatum {
    pub location: PoleLocation,
    pub residue: f64,
    pub orientation: i8,
}

impl PoleDatum {
    fn finite(location: PoleLocation, residue: f64) -> Self {
        PoleDatum { location, residue, orientation: -1 }
    }

    fn infinity(residue: f64) -> Self {
        PoleDatum { location: PoleLocation::Infinity, residue, orientation: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Wkb,
    Qlm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantizationRelation {
    pub poles: Vec<PoleDatum>,
    pub residue_sum: f64,
    pub cut_symmetry: f64,
    /// The right-hand side is `n + rhs_offset`.
    pub rhs_offset: f64,
}

impl QuantizationRelation {
    /// Left side minus right side for quantum number `n`.
    pub fn mismatch(&self, n: u32) -> f64 {
        self.cut_symmetry * self.residue_sum - (n as f64 + self.rhs_offset)
    }
}

/// Combines pole data into a relation. WKB uses `n + 1/2`, QLM uses `n`.
pub fn assemble_quantization(poles: Vec<PoleDatum>, cut_symmetry: f64, mode: Mode) -> QuantizationRelation {
    assert!(!poles.is_empty(), "a quantization relation needs at least one pole");
    let residue_sum = poles.iter().map(|p| p.orientation as f64 * p.residue).sum();
    let rhs_offset = match mode {
        Mode::Wkb => 0.5,
        Mode::Qlm => 0.0,
    };
    QuantizationRelation { poles, residue_sum, cut_symmetry, rhs_offset }
}

/// `sqrt(2 m a^2) / hbar`, the dimensionless width that multiplies momentum-like residues.
pub(crate) fn width_factor(s: &PotentialSpec) -> f64 {
    (2.0 * s.mass() * s.p("a").powi(2)).sqrt() / s.hbar()
}

/// `2 m a^2 / hbar^2`, computed without a square root so threshold cases stay exact.
pub(crate) fn width_factor_sq(s: &PotentialSpec) -> f64 {
    2.0 * s.mass() * s.p("a").powi(2) / s.hbar().powi(2)
}

/// `2 m V a^2 / (pi^2 hbar^2)` for the trigonometric wells.
pub(crate) fn trig_strength(s: &PotentialSpec, v: f64) -> f64 {
    2.0 * s.mass() * v * s.p("a").powi(2) / (std::f64::consts::PI * s.hbar()).powi(2)
}

/// Fixed-point exponent at a 1/x^2-type singularity: `1/2 + sqrt(1/4 + q)`.
pub(crate) fn fixed_point_index(q: f64) -> f64 {
    0.5 + (0.25 + q).sqrt()
}

/// Residues at energy `e`, or `None` where a residue is not real
/// (e.g. `E >= 0` for a state that must be bound).
pub fn pole_data(s: &PotentialSpec, mode: Mode, e: f64) -> Option<(Vec<PoleDatum>, f64)> {
    use PoleLocation::*;
    let qlm = mode == Mode::Qlm;
    let eps = -e;
    let root = |v: f64| if v >= 0.0 { Some(v.sqrt()) } else { None };
    let hb = s.hbar();
    let m = s.mass();
    let out = match s.kind {
        PotentialKind::Ho1d => {
            let w = hb * s.p("omega");
            let r = if qlm { e / w - 0.5 } else { e / w };
            (vec![PoleDatum::infinity(r)], 1.0)
        }
        PotentialKind::Ho3d => {
            let w = hb * s.p("omega");
            let l = s.l() as f64;
            let (r0, rinf) = if qlm { (l + 1.0, e / w - 0.5) } else { (l + 0.5, e / w) };
            (vec![PoleDatum::finite(Zero, r0), PoleDatum::infinity(rinf)], 0.5)
        }
        PotentialKind::Coulomb => {
            if eps <= 0.0 {
                return None;
            }
            let l = s.l() as f64;
            let rinf = s.p("Z") / hb * (m / (2.0 * eps)).sqrt();
            let r0 = if qlm { l + 1.0 } else { l + 0.5 };
            (vec![PoleDatum::finite(Zero, r0), PoleDatum::infinity(rinf)], 1.0)
        }
        PotentialKind::Cotangent => {
            let v0 = s.p("V0");
            let rinf = s.p("a") / (std::f64::consts::PI * hb) * root(2.0 * m * (e + v0))?;
            let q = trig_strength(s, v0);
            let r0 = if qlm { fixed_point_index(q) } else { q.sqrt() };
            (vec![PoleDatum::finite(Zero, r0), PoleDatum::infinity(rinf)], 1.0)
        }
        PotentialKind::PtHole => {
            // The well occupies half the period of sin^2, so every residue is halved.
            let rinf = s.p("a") / (2.0 * std::f64::consts::PI * hb) * root(2.0 * m * e)?;
            let (q1, q2) = (trig_strength(s, s.p("V1")), trig_strength(s, s.p("V2")));
            let (r0, r1) = if qlm {
                (fixed_point_index(q1) / 2.0, fixed_point_index(q2) / 2.0)
            } else {
                (q1.sqrt() / 2.0, q2.sqrt() / 2.0)
            };
            (vec![PoleDatum::finite(Zero, r0), PoleDatum::finite(One, r1), PoleDatum::infinity(rinf)], 1.0)
        }
        PotentialKind::ModifiedPt | PotentialKind::Hylleraas => {
            if eps <= 0.0 {
                return None;
            }
            let c = width_factor(s);
            let v0 = s.p("V0");
            // lambda - 1 with lambda = 1/2 + sqrt(1/4 + c^2 V0)
            let s_exp = fixed_point_index(c * c * v0) - 1.0;
            let r0 = if qlm { -s_exp } else { -c * v0.sqrt() };
            let rinf = -c * eps.sqrt();
            if s.kind == PotentialKind::ModifiedPt {
                (vec![PoleDatum::finite(Zero, r0), PoleDatum::infinity(rinf)], 1.0)
            } else {
                // Odd states of the full-line well: n_full = 2n - 1, so residues are halved
                // and the QLM zero residue picks up the extra half from the shift.
                let r0 = if qlm { -(s_exp + 1.0) / 2.0 } else { r0 / 2.0 };
                (vec![PoleDatum::finite(Zero, r0), PoleDatum::infinity(rinf / 2.0)], 1.0)
            }
        }
        PotentialKind::Eckart1d => {
            let a_ = s.p("A");
            if eps <= 0.0 || eps < a_ {
                return None;
            }
            let c = width_factor(s);
            let s_exp = 0.5 * ((1.0 + 8.0 * m * s.p("a").powi(2) * s.p("B") / (hb * hb)).sqrt() - 1.0);
            let r1 = if qlm { -s_exp } else { -c * s.p("B").sqrt() };
            (
                vec![
                    PoleDatum::finite(Zero, c * eps.sqrt()),
                    PoleDatum::finite(One, r1),
                    PoleDatum::infinity(-c * (eps - a_).sqrt()),
                ],
                1.0,
            )
        }
        PotentialKind::Eckart3d | PotentialKind::Hulthen => {
            if eps <= 0.0 {
                return None;
            }
            let c = width_factor(s);
            let b = if s.kind == PotentialKind::Eckart3d { s.p("b") } else { 0.0 };
            let r1 = if qlm {
                0.5 * (1.0 + (1.0 + 8.0 * m * s.p("a").powi(2) * b / (hb * hb)).sqrt())
            } else {
                c * b.sqrt()
            };
            (
                vec![
                    PoleDatum::finite(Zero, c * eps.sqrt()),
                    PoleDatum::finite(One, r1),
                    PoleDatum::infinity(c * (eps + s.p("lambda")).sqrt()),
                ],
                1.0,
            )
        }
        PotentialKind::Morse => {
            if eps <= 0.0 {
                return None;
            }
            let c = width_factor(s);
            let d = c * s.p("B") / (2.0 * s.p("A").sqrt());
            let r0 = if qlm { 0.5 - d } else { -d };
            (vec![PoleDatum::finite(Zero, r0), PoleDatum::infinity(-c * eps.sqrt())], 1.0)
        }
    };
    Some(out)
}

/// The relation at energy `e`. Hylleraas WKB carries offset `-1/2` (its levels
/// are labelled n = 1, 2, ... with the printed `2n - 1` shift).
pub fn relation_at(s: &PotentialSpec, mode: Mode, e: f64) -> Option<QuantizationRelation> {
    let (poles, cut) = pole_data(s, mode, e)?;
    let mut rel = assemble_quantization(poles, cut, mode);
    if s.kind == PotentialKind::Hylleraas && mode == Mode::Wkb {
        rel.rhs_offset = -0.5;
    }
    Some(rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillator_relations() {
        let ho = PotentialSpec::documented(PotentialKind::Ho1d);
        let r = relation_at(&ho, Mode::Qlm, 2.5).unwrap();
        assert_eq!(r.poles.len(), 1);
        assert!(r.mismatch(2).abs() < 1e-15);

        let ho3 = PotentialSpec::new(PotentialKind::Ho3d, &[("l", 1.0)]).unwrap();
        let r = relation_at(&ho3, Mode::Qlm, 2.0 * 1.0 + 1.0 + 1.5).unwrap();
        assert_eq!(r.cut_symmetry, 0.5);
        assert!(r.mismatch(1).abs() < 1e-15);

        let c = PotentialSpec::documented(PotentialKind::Coulomb);
        assert!(relation_at(&c, Mode::Qlm, -0.5).unwrap().mismatch(0).abs() < 1e-15);
        assert!(relation_at(&c, Mode::Qlm, 0.1).is_none());
    }

    #[test]
    fn orientations() {
        for k in PotentialKind::ALL {
            let s = PotentialSpec::documented(k);
            for mode in [Mode::Wkb, Mode::Qlm] {
                let e = match k {
                    PotentialKind::Ho1d | PotentialKind::Ho3d | PotentialKind::PtHole => 3.0,
                    PotentialKind::Cotangent => 1.0,
                    _ => -0.1,
                };
                let r = relation_at(&s, mode, e).unwrap();
                for p in &r.poles {
                    let want = if p.location == PoleLocation::Infinity { 1 } else { -1 };
                    assert_eq!(p.orientation, want, "{k}");
                }
            }
        }
    }
}
