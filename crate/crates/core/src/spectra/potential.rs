//! The eleven solvable potentials, their parameters and V(x).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    Ho1d,
    Ho3d,
    Coulomb,
    Cotangent,
    PtHole,
    ModifiedPt,
    Hylleraas,
    Eckart1d,
    Eckart3d,
    Hulthen,
    Morse,
}

impl PotentialKind {
    pub const ALL: [PotentialKind; 11] = [
        PotentialKind::Ho1d,
        PotentialKind::Ho3d,
        PotentialKind::Coulomb,
        PotentialKind::Cotangent,
        PotentialKind::PtHole,
        PotentialKind::ModifiedPt,
        PotentialKind::Hylleraas,
        PotentialKind::Eckart1d,
        PotentialKind::Eckart3d,
        PotentialKind::Hulthen,
        PotentialKind::Morse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PotentialKind::Ho1d => "ho1d",
            PotentialKind::Ho3d => "ho3d",
            PotentialKind::Coulomb => "coulomb",
            PotentialKind::Cotangent => "cotangent",
            PotentialKind::PtHole => "pt_hole",
            PotentialKind::ModifiedPt => "modified_pt",
            PotentialKind::Hylleraas => "hylleraas",
            PotentialKind::Eckart1d => "eckart1d",
            PotentialKind::Eckart3d => "eckart3d",
            PotentialKind::Hulthen => "hulthen",
            PotentialKind::Morse => "morse",
        }
    }

    /// Physical parameters accepted by this kind (besides `hbar` and `m`).
    fn allowed(self) -> &'static [&'static str] {
        match self {
            PotentialKind::Ho1d => &["omega"],
            PotentialKind::Ho3d => &["omega", "l"],
            PotentialKind::Coulomb => &["Z", "l"],
            PotentialKind::Cotangent => &["V0", "a"],
            PotentialKind::PtHole => &["V1", "V2", "a"],
            PotentialKind::ModifiedPt | PotentialKind::Hylleraas => &["V0", "a"],
            PotentialKind::Eckart1d => &["A", "B", "a"],
            PotentialKind::Eckart3d => &["lambda", "b", "a"],
            PotentialKind::Hulthen => &["lambda", "a"],
            PotentialKind::Morse => &["A", "B", "a"],
        }
    }

    /// Parameters without a default.
    fn required(self) -> &'static [&'static str] {
        match self {
            PotentialKind::Ho1d | PotentialKind::Ho3d => &[],
            PotentialKind::Coulomb => &["Z"],
            PotentialKind::Cotangent | PotentialKind::ModifiedPt | PotentialKind::Hylleraas => &["V0"],
            PotentialKind::PtHole => &["V1", "V2"],
            PotentialKind::Eckart1d | PotentialKind::Morse => &["A", "B"],
            PotentialKind::Eckart3d => &["lambda", "b"],
            PotentialKind::Hulthen => &["lambda"],
        }
    }

    /// Reference parameter set used by the test suite and examples.
    pub fn documented_params(self) -> &'static [(&'static str, f64)] {
        match self {
            PotentialKind::Ho1d => &[],
            PotentialKind::Ho3d => &[("l", 0.0)],
            PotentialKind::Coulomb => &[("Z", 1.0), ("l", 0.0)],
            PotentialKind::Cotangent => &[("V0", 1.0), ("a", 1.0)],
            PotentialKind::PtHole => &[("V1", 1.0), ("V2", 2.0), ("a", 1.0)],
            PotentialKind::ModifiedPt => &[("V0", 6.0), ("a", 1.0)],
            PotentialKind::Hylleraas => &[("V0", 20.0), ("a", 1.0)],
            PotentialKind::Eckart1d => &[("A", 0.0), ("B", 3.0), ("a", 1.0)],
            PotentialKind::Eckart3d => &[("lambda", 10.0), ("b", 0.5), ("a", 1.0)],
            PotentialKind::Hulthen => &[("lambda", 2.0), ("a", 1.0)],
            PotentialKind::Morse => &[("A", 1.0), ("B", 1.0), ("a", 1.0)],
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PotentialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PotentialKind::ALL.iter().copied().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = PotentialKind::ALL.iter().map(|k| k.name()).collect();
            Error::usage(format!("unknown potential `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

/// Where the coordinate lives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    FullLine,
    HalfLine,
    /// Finite box `(0, length)`.
    Interval(f64),
}

/// A validated potential with its parameters. Units default to hbar = m = 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    pub params: BTreeMap<String, f64>,
}

fn canonical_name(name: &str) -> &str {
    match name {
        "λ" | "lam" => "lambda",
        "V_0" => "V0",
        "V_1" => "V1",
        "V_2" => "V2",
        "ω" | "w" => "omega",
        "mass" => "m",
        "ħ" | "h" => "hbar",
        other => other,
    }
}

impl PotentialSpec {
    pub fn new(kind: PotentialKind, params: &[(&str, f64)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, v) in params {
            map.insert(canonical_name(name).to_string(), *v);
        }
        Self::from_map(kind, map)
    }

    pub fn documented(kind: PotentialKind) -> Self {
        Self::new(kind, kind.documented_params()).expect("documented parameters are valid")
    }

    pub fn from_map(kind: PotentialKind, mut map: BTreeMap<String, f64>) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidPotential { kind: kind.name().into(), reason };
        for name in map.keys() {
            if !kind.allowed().contains(&name.as_str()) && name != "hbar" && name != "m" {
                return Err(invalid(format!(
                    "unknown parameter `{name}`; accepted: {}, hbar, m",
                    kind.allowed().join(", ")
                )));
            }
        }
        for name in kind.required() {
            if !map.contains_key(*name) {
                return Err(invalid(format!("missing parameter `{name}`")));
            }
        }
        for (name, v) in &map {
            if !v.is_finite() {
                return Err(invalid(format!("parameter `{name}` is not finite")));
            }
        }
        let defaults = [("a", 1.0), ("l", 0.0), ("omega", 1.0)];
        for (name, v) in defaults {
            if kind.allowed().contains(&name) {
                map.entry(name.to_string()).or_insert(v);
            }
        }
        map.entry("hbar".into()).or_insert(1.0);
        map.entry("m".into()).or_insert(1.0);

        let spec = PotentialSpec { kind, params: map };
        let p = |n: &str| spec.params[n];
        let positive = |n: &str| -> Result<()> {
            if p(n) > 0.0 {
                Ok(())
            } else {
                Err(invalid(format!("`{n}` must be > 0, got {}", p(n))))
            }
        };
        positive("hbar")?;
        positive("m")?;
        if kind.allowed().contains(&"a") {
            positive("a")?;
        }
        if kind.allowed().contains(&"omega") {
            positive("omega")?;
        }
        if kind.allowed().contains(&"l") {
            let l = p("l");
            if l < 0.0 || l.fract() != 0.0 {
                return Err(invalid(format!("`l` must be a non-negative integer, got {l}")));
            }
        }
        match kind {
            PotentialKind::Cotangent | PotentialKind::ModifiedPt | PotentialKind::Hylleraas => positive("V0")?,
            PotentialKind::PtHole => {
                positive("V1")?;
                positive("V2")?;
            }
            PotentialKind::Coulomb => positive("Z")?,
            PotentialKind::Eckart1d => {
                if p("B") <= p("A").abs() {
                    return Err(invalid(format!("need B > |A|, got A = {}, B = {}", p("A"), p("B"))));
                }
            }
            PotentialKind::Eckart3d => {
                positive("lambda")?;
                // b = 0 is kept so the reduction to Hulthen can be checked directly
                if p("b") < 0.0 {
                    return Err(invalid(format!("`b` must be >= 0, got {}", p("b"))));
                }
            }
            PotentialKind::Hulthen => positive("lambda")?,
            PotentialKind::Morse => {
                positive("A")?;
                positive("B")?;
            }
            PotentialKind::Ho1d | PotentialKind::Ho3d => {}
        }
        Ok(spec)
    }

    /// Parameter value (after defaults). Panics on a name the kind does not carry.
    pub fn p(&self, name: &str) -> f64 {
        *self.params.get(canonical_name(name)).unwrap_or_else(|| panic!("{} has no parameter `{name}`", self.kind))
    }

    pub fn hbar(&self) -> f64 {
        self.p("hbar")
    }

    pub fn mass(&self) -> f64 {
        self.p("m")
    }

    /// Scale between z and the physical coordinate: `z = lambda x`, `lambda = sqrt(2m)/hbar`.
    pub fn z_scale(&self) -> f64 {
        (2.0 * self.mass()).sqrt() / self.hbar()
    }

    /// `l` for kinds with an explicit centrifugal term, otherwise 0.
    pub fn l(&self) -> u32 {
        match self.kind {
            PotentialKind::Ho3d | PotentialKind::Coulomb => self.p("l") as u32,
            _ => 0,
        }
    }

    pub fn domain(&self) -> Domain {
        match self.kind {
            PotentialKind::Ho1d | PotentialKind::ModifiedPt | PotentialKind::Eckart1d | PotentialKind::Morse => {
                Domain::FullLine
            }
            PotentialKind::Ho3d
            | PotentialKind::Coulomb
            | PotentialKind::Hylleraas
            | PotentialKind::Eckart3d
            | PotentialKind::Hulthen => Domain::HalfLine,
            PotentialKind::Cotangent => Domain::Interval(self.p("a")),
            PotentialKind::PtHole => Domain::Interval(self.p("a") / 2.0),
        }
    }

    /// V(x) in physical units; complex argument allowed.
    pub fn v(&self, x: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self.kind {
            PotentialKind::Ho1d | PotentialKind::Ho3d => {
                let w = self.p("omega");
                0.5 * self.mass() * w * w * x * x
            }
            PotentialKind::Coulomb => -self.p("Z") / x,
            PotentialKind::Cotangent => {
                let u = std::f64::consts::PI * x / self.p("a");
                let c = u.cos() / u.sin();
                self.p("V0") * c * c
            }
            PotentialKind::PtHole => {
                let u = std::f64::consts::PI * x / self.p("a");
                let (s, c) = (u.sin(), u.cos());
                self.p("V1") / (s * s) + self.p("V2") / (c * c)
            }
            PotentialKind::ModifiedPt | PotentialKind::Hylleraas => {
                let c = (x / self.p("a")).cosh();
                -self.p("V0") / (c * c)
            }
            PotentialKind::Eckart1d => {
                // t/(1+t) = 1/(1+1/t); pick the form whose exponential cannot overflow
                let a = self.p("a");
                if x.re >= 0.0 {
                    let t = (-x / a).exp();
                    -self.p("A") * t / (one + t) - self.p("B") * t / ((one + t) * (one + t))
                } else {
                    let u = (x / a).exp();
                    -self.p("A") / (one + u) - self.p("B") * u / ((one + u) * (one + u))
                }
            }
            PotentialKind::Eckart3d | PotentialKind::Hulthen => {
                let t = (-x / self.p("a")).exp();
                let b = if self.kind == PotentialKind::Eckart3d { self.p("b") } else { 0.0 };
                -self.p("lambda") * t / (one - t) + b * t / ((one - t) * (one - t))
            }
            PotentialKind::Morse => {
                let t = (-x / self.p("a")).exp();
                self.p("A") * t * t - self.p("B") * t
            }
        }
    }

    /// dV/dx.
    pub fn dv(&self, x: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self.kind {
            PotentialKind::Ho1d | PotentialKind::Ho3d => {
                let w = self.p("omega");
                self.mass() * w * w * x
            }
            PotentialKind::Coulomb => self.p("Z") / (x * x),
            PotentialKind::Cotangent => {
                let k = std::f64::consts::PI / self.p("a");
                let u = k * x;
                let s = u.sin();
                -2.0 * self.p("V0") * k * u.cos() / (s * s * s)
            }
            PotentialKind::PtHole => {
                let k = std::f64::consts::PI / self.p("a");
                let u = k * x;
                let (s, c) = (u.sin(), u.cos());
                k * (-2.0 * self.p("V1") * c / (s * s * s) + 2.0 * self.p("V2") * s / (c * c * c))
            }
            PotentialKind::ModifiedPt | PotentialKind::Hylleraas => {
                let a = self.p("a");
                let u = x / a;
                let c = u.cosh();
                2.0 * self.p("V0") * u.sinh() / (a * c * c * c)
            }
            PotentialKind::Eckart1d => {
                let a = self.p("a");
                if x.re >= 0.0 {
                    let t = (-x / a).exp();
                    let q = one + t;
                    t / a * (self.p("A") / (q * q) + self.p("B") * (one - t) / (q * q * q))
                } else {
                    let u = (x / a).exp();
                    let q = one + u;
                    u / a * (self.p("A") / (q * q) + self.p("B") * (u - one) / (q * q * q))
                }
            }
            PotentialKind::Eckart3d | PotentialKind::Hulthen => {
                let a = self.p("a");
                let t = (-x / a).exp();
                let q = one - t;
                let b = if self.kind == PotentialKind::Eckart3d { self.p("b") } else { 0.0 };
                let dvdt = -self.p("lambda") / (q * q) + b * (one + t) / (q * q * q);
                -dvdt * t / a
            }
            PotentialKind::Morse => {
                let a = self.p("a");
                let t = (-x / a).exp();
                (-2.0 * self.p("A") * t * t + self.p("B") * t) / a
            }
        }
    }

    /// True where V itself is singular (poles of the potential on the real line).
    pub fn is_singular_at(&self, x: Complex64) -> bool {
        let zero = x.norm() == 0.0;
        match self.kind {
            PotentialKind::Coulomb | PotentialKind::Eckart3d | PotentialKind::Hulthen => zero,
            PotentialKind::Ho3d => zero && self.l() > 0,
            PotentialKind::Cotangent => (std::f64::consts::PI * x / self.p("a")).sin().norm() == 0.0,
            PotentialKind::PtHole => {
                let u = std::f64::consts::PI * x / self.p("a");
                u.sin().norm() == 0.0 || u.cos().norm() == 0.0
            }
            _ => false,
        }
    }

    /// Limit of V as x -> +infinity (`None` when V grows without bound).
    pub fn asymptote_right(&self) -> Option<f64> {
        match self.kind {
            PotentialKind::Ho1d | PotentialKind::Ho3d => None,
            PotentialKind::Cotangent | PotentialKind::PtHole => None,
            _ => Some(0.0),
        }
    }

    /// Limit of V as x -> -infinity for full-line kinds.
    pub fn asymptote_left(&self) -> Option<f64> {
        match self.kind {
            PotentialKind::ModifiedPt => Some(0.0),
            PotentialKind::Eckart1d => Some(-self.p("A")),
            _ => None,
        }
    }

    /// `hbar^2 l(l+1) / (2 m x^2)` added to V for radial kinds; the z-form coefficient is `l(l+1)`.
    pub fn centrifugal_coeff(&self) -> f64 {
        let l = self.l() as f64;
        l * (l + 1.0)
    }

    /// Short description for reports.
    pub fn describe(&self) -> String {
        let ps: Vec<String> = self
            .params
            .iter()
            .filter(|(k, _)| self.kind.allowed().contains(&k.as_str()))
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}({})", self.kind, ps.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(PotentialSpec::new(PotentialKind::Eckart1d, &[("A", 2.0), ("B", 1.0)]).is_err());
        assert!(PotentialSpec::new(PotentialKind::Coulomb, &[("Z", 1.0), ("l", 0.5)]).is_err());
        assert!(PotentialSpec::new(PotentialKind::Coulomb, &[("Z", 1.0), ("V0", 1.0)]).is_err());
        assert!(PotentialSpec::new(PotentialKind::Morse, &[("A", 1.0)]).is_err());
        assert!(PotentialSpec::new(PotentialKind::Hulthen, &[("λ", 2.0)]).is_ok());
        for k in PotentialKind::ALL {
            let s = PotentialSpec::documented(k);
            assert_eq!(s.kind, k);
            assert_eq!(k.name().parse::<PotentialKind>().unwrap(), k);
        }
        assert!("nope".parse::<PotentialKind>().is_err());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-6;
        for k in PotentialKind::ALL {
            let s = PotentialSpec::documented(k);
            let x = match s.domain() {
                Domain::Interval(len) => Complex64::new(0.37 * len, 0.01),
                _ => Complex64::new(0.8, 0.1),
            };
            let fd = (s.v(x + h) - s.v(x - h)) / (2.0 * h);
            let an = s.dv(x);
            assert!((fd - an).norm() < 1e-6 * (1.0 + an.norm()), "{k}: {fd} vs {an}");
        }
    }

    #[test]
    fn oscillator_in_z_units() {
        let s = PotentialSpec::documented(PotentialKind::Ho1d);
        let z = 3.0;
        let v = s.v(Complex64::new(z / s.z_scale(), 0.0));
        assert!((v.re - z * z / 4.0).abs() < 1e-14);
    }
}
