//! Exact, WKB and QLM energy levels.

use serde::Serialize;

use super::potential::{PotentialKind, PotentialSpec};
use super::quantization::{fixed_point_index, relation_at, trig_strength, width_factor, width_factor_sq, Mode};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Wkb,
    Qlm,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Exact, Method::Wkb, Method::Qlm];

    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Wkb => "wkb",
            Method::Qlm => "qlm",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "exact" => Ok(Method::Exact),
            "wkb" => Ok(Method::Wkb),
            "qlm" => Ok(Method::Qlm),
            other => Err(Error::usage(format!("unknown method `{other}`; expected exact, wkb or qlm"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelStatus {
    Ok,
    NoBoundState,
}

impl LevelStatus {
    pub fn name(self) -> &'static str {
        match self {
            LevelStatus::Ok => "ok",
            LevelStatus::NoBoundState => "no_bound_state",
        }
    }
}

/// How a level was obtained.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub formula: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u32>,
}

impl Provenance {
    fn closed(formula: &'static str) -> Self {
        Provenance { formula, bracket: None, iterations: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelResult {
    pub potential: PotentialKind,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    pub method: Method,
    /// `None` exactly when `status` is `NoBoundState`.
    pub energy: Option<f64>,
    pub status: LevelStatus,
    pub provenance: Provenance,
}

impl LevelResult {
    pub fn is_ok(&self) -> bool {
        self.status == LevelStatus::Ok
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCount {
    Finite(u32),
    Infinite,
}

/// Smallest valid quantum number: Hylleraas counts from 1.
pub fn first_level(kind: PotentialKind) -> u32 {
    if kind == PotentialKind::Hylleraas {
        1
    } else {
        0
    }
}

fn check_n(s: &PotentialSpec, n: u32) -> Result<()> {
    if n < first_level(s.kind) {
        return Err(Error::usage(format!("{} levels are numbered from n = {}", s.kind, first_level(s.kind))));
    }
    Ok(())
}

fn l_of(s: &PotentialSpec) -> Option<u32> {
    match s.kind {
        PotentialKind::Ho3d | PotentialKind::Coulomb => Some(s.l()),
        _ => None,
    }
}

fn finish(s: &PotentialSpec, n: u32, method: Method, energy: Option<f64>, provenance: Provenance) -> LevelResult {
    let status = if energy.is_some() { LevelStatus::Ok } else { LevelStatus::NoBoundState };
    LevelResult { potential: s.kind, n, l: l_of(s), method, energy, status, provenance }
}

/// `hbar^2 / (2 m a^2)`, the energy unit of the width-parametrized wells.
fn width_unit(s: &PotentialSpec) -> f64 {
    s.hbar().powi(2) / (2.0 * s.mass() * s.p("a").powi(2))
}

/// `s` of the sech^2 well: `-1/2 + sqrt(1/4 + 2 m a^2 V0 / hbar^2)`.
fn sech_exponent(s: &PotentialSpec, v0: f64, a: f64) -> f64 {
    -0.5 + (0.25 + 2.0 * s.mass() * a * a * v0 / s.hbar().powi(2)).sqrt()
}

fn positive(x: f64) -> Option<f64> {
    (x > 0.0).then_some(x)
}

/// Closed-form exact energies, written from the textbook spectra rather than
/// from the pole relations so the two can be compared.
pub fn exact_levels(s: &PotentialSpec, n: u32) -> Result<LevelResult> {
    check_n(s, n)?;
    let nf = n as f64;
    let hb = s.hbar();
    let m = s.mass();
    let (e, formula) = match s.kind {
        PotentialKind::Ho1d => (Some(hb * s.p("omega") * (nf + 0.5)), "ho1d:exact"),
        PotentialKind::Ho3d => (Some(hb * s.p("omega") * (2.0 * nf + s.l() as f64 + 1.5)), "ho3d:exact"),
        PotentialKind::Coulomb => {
            let nn = nf + s.l() as f64 + 1.0;
            (Some(-m * s.p("Z").powi(2) / (2.0 * hb * hb * nn * nn)), "coulomb:exact")
        }
        PotentialKind::Cotangent => {
            let unit = std::f64::consts::PI.powi(2) * width_unit(s);
            let lam = fixed_point_index(trig_strength(s, s.p("V0")));
            (Some(-s.p("V0") + unit * (nf + lam).powi(2)), "cotangent:exact")
        }
        PotentialKind::PtHole => {
            let unit = std::f64::consts::PI.powi(2) * width_unit(s);
            let l1 = fixed_point_index(trig_strength(s, s.p("V1")));
            let l2 = fixed_point_index(trig_strength(s, s.p("V2")));
            (Some(unit * (2.0 * nf + l1 + l2).powi(2)), "pt_hole:exact")
        }
        PotentialKind::ModifiedPt => {
            let sx = sech_exponent(s, s.p("V0"), s.p("a"));
            (positive(sx - nf).map(|d| -width_unit(s) * d * d), "modified_pt:exact")
        }
        PotentialKind::Hylleraas => {
            // odd states of the full-line well
            let sx = sech_exponent(s, s.p("V0"), s.p("a"));
            (positive(sx - (2.0 * nf - 1.0)).map(|d| -width_unit(s) * d * d), "hylleraas:exact")
        }
        PotentialKind::Eckart1d => {
            let c = width_factor(s);
            let sx = 0.5 * ((1.0 + 8.0 * m * s.p("a").powi(2) * s.p("B") / (hb * hb)).sqrt() - 1.0);
            let big_m = (sx - nf) / c;
            let a_ = s.p("A");
            let e = (big_m > 0.0 && big_m * big_m > a_.abs()).then(|| {
                let sq = (big_m * big_m + a_) / (2.0 * big_m);
                -sq * sq
            });
            (e, "eckart1d:exact")
        }
        PotentialKind::Eckart3d | PotentialKind::Hulthen => {
            let b = if s.kind == PotentialKind::Eckart3d { s.p("b") } else { 0.0 };
            let l_eff = 0.5 * (1.0 + 8.0 * m * s.p("a").powi(2) * b / (hb * hb)).sqrt() - 0.5;
            let m2 = (nf + l_eff + 1.0).powi(2) / width_factor_sq(s);
            let lam = s.p("lambda");
            let e = (lam > m2).then(|| -((lam - m2) / (2.0 * m2.sqrt())).powi(2));
            let id = if s.kind == PotentialKind::Hulthen { "hulthen:exact" } else { "eckart3d:exact" };
            (e, id)
        }
        PotentialKind::Morse => {
            let (a_, b_) = (s.p("A"), s.p("B"));
            let depth = b_ * b_ / (4.0 * a_);
            let x = (nf + 0.5) * hb / (s.p("a") * (2.0 * m * depth).sqrt());
            (positive(1.0 - x).map(|d| -depth * d * d), "morse:exact")
        }
    };
    Ok(finish(s, n, Method::Exact, e, Provenance::closed(formula)))
}

/// Bisection for a decreasing function `f` on `[lo, hi]` with `f(lo) > 0 > f(hi)`.
fn bisect_decreasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, u32) {
    let mut it = 0;
    while it < 400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        it += 1;
    }
    (0.5 * (lo + hi), it)
}

/// Solves the Eckart relations for `eps = -E` by bracketed bisection.
fn eckart_root(s: &PotentialSpec, mode: Mode, n: u32, formula: &'static str) -> (Option<f64>, Provenance) {
    let f = |eps: f64| relation_at(s, mode, -eps).map(|r| r.mismatch(n)).unwrap_or(f64::NAN);
    let (lo, hi) = match s.kind {
        PotentialKind::Eckart1d => {
            let (a_, b_) = (s.p("A"), s.p("B"));
            (a_.max(0.0), (a_ + b_).powi(2) / (4.0 * b_))
        }
        _ => {
            // the left side falls to a constant as eps grows; expand until it is below n
            let mut hi = s.p("lambda").max(1.0);
            while f(hi) > 0.0 && hi < 1e12 {
                hi *= 2.0;
            }
            (0.0, hi)
        }
    };
    let lo_eval = if lo == 0.0 { f64::MIN_POSITIVE } else { lo };
    let (flo, fhi) = (f(lo_eval), f(hi));
    let bracket = Some((-hi, -lo));
    assert!(flo >= fhi, "{}: relation is not monotone on the bracket", s.kind);
    // a root pinned to the continuum edge by rounding is not a bound state
    if !(flo > 1e-12 * (n as f64 + 1.0) && fhi < 0.0) {
        return (None, Provenance { formula, bracket, iterations: Some(0) });
    }
    let (eps, it) = bisect_decreasing(f, lo_eval, hi);
    (Some(-eps), Provenance { formula, bracket, iterations: Some(it) })
}

fn relation_levels(s: &PotentialSpec, n: u32, mode: Mode) -> Result<LevelResult> {
    check_n(s, n)?;
    let method = if mode == Mode::Qlm { Method::Qlm } else { Method::Wkb };
    let qlm = mode == Mode::Qlm;
    let nf = n as f64;
    let hb = s.hbar();
    let id = |q: &'static str, w: &'static str| if qlm { q } else { w };
    // Closed forms below invert the relations assembled in `quantization`.
    let (e, formula) = match s.kind {
        PotentialKind::Ho1d => {
            let w = hb * s.p("omega");
            // E/w - 1/2 = n  and  E/w = n + 1/2 coincide
            (Some(w * (nf + 0.5)), id("ho1d:qlm", "ho1d:wkb"))
        }
        PotentialKind::Ho3d => {
            // (E/w - 1/2 - (l + 1)) / 2 = n  or  (E/w - (l + 1/2)) / 2 = n + 1/2
            let w = hb * s.p("omega");
            let l = s.l() as f64;
            let e = if qlm { w * (2.0 * nf + 0.5 + l + 1.0) } else { w * (2.0 * nf + 1.0 + l + 0.5) };
            (Some(e), id("ho3d:qlm", "ho3d:wkb-langer"))
        }
        PotentialKind::Coulomb => {
            let l = s.l() as f64;
            let rhs = if qlm { nf + l + 1.0 } else { nf + 0.5 + l + 0.5 };
            let eps = s.mass() * s.p("Z").powi(2) / (2.0 * hb * hb * rhs * rhs);
            (Some(-eps), id("coulomb:qlm", "coulomb:wkb-langer"))
        }
        PotentialKind::Cotangent => {
            let q = trig_strength(s, s.p("V0"));
            let shift = if qlm { fixed_point_index(q) } else { 0.5 + q.sqrt() };
            let unit = std::f64::consts::PI.powi(2) * width_unit(s);
            (Some(-s.p("V0") + unit * (nf + shift).powi(2)), id("cotangent:qlm-squared", "cotangent:wkb"))
        }
        PotentialKind::PtHole => {
            let (q1, q2) = (trig_strength(s, s.p("V1")), trig_strength(s, s.p("V2")));
            let shift = if qlm {
                (fixed_point_index(q1) + fixed_point_index(q2)) / 2.0
            } else {
                0.5 + (q1.sqrt() + q2.sqrt()) / 2.0
            };
            let unit = std::f64::consts::PI.powi(2) * width_unit(s);
            (Some(4.0 * unit * (nf + shift).powi(2)), id("pt_hole:qlm", "pt_hole:wkb"))
        }
        PotentialKind::ModifiedPt | PotentialKind::Hylleraas => {
            let c = width_factor(s);
            let v0 = s.p("V0");
            let full_n = if s.kind == PotentialKind::Hylleraas { 2.0 * nf - 1.0 } else { nf };
            let root = if qlm {
                fixed_point_index(c * c * v0) - 1.0 - full_n
            } else {
                c * v0.sqrt() - full_n - if s.kind == PotentialKind::Hylleraas { 0.0 } else { 0.5 }
            };
            let e = positive(root).map(|r| -(r / c).powi(2));
            let f = if s.kind == PotentialKind::Hylleraas {
                id("hylleraas:qlm", "hylleraas:wkb")
            } else {
                id("modified_pt:qlm", "modified_pt:wkb")
            };
            (e, f)
        }
        PotentialKind::Hulthen => {
            // c (sqrt(eps + lambda) - sqrt(eps)) = n + 1 (QLM) or n + 1/2 (WKB)
            let m2 = (nf + if qlm { 1.0 } else { 0.5 }).powi(2) / width_factor_sq(s);
            let lam = s.p("lambda");
            let e = (lam > m2).then(|| -((lam - m2) / (2.0 * m2.sqrt())).powi(2));
            (e, id("hulthen:qlm", "hulthen:wkb"))
        }
        PotentialKind::Morse => {
            let c = width_factor(s);
            let d = c * s.p("B") / (2.0 * s.p("A").sqrt());
            let e = positive(d - (nf + 0.5)).map(|r| -(r / c).powi(2));
            (e, id("morse:qlm", "morse:wkb"))
        }
        PotentialKind::Eckart1d => {
            let (e, prov) = eckart_root(s, mode, n, id("eckart1d:qlm-bisection", "eckart1d:wkb-bisection"));
            return Ok(finish(s, n, method, e, prov));
        }
        PotentialKind::Eckart3d => {
            let (e, prov) = eckart_root(s, mode, n, id("eckart3d:qlm-bisection", "eckart3d:wkb-bisection"));
            return Ok(finish(s, n, method, e, prov));
        }
    };
    Ok(finish(s, n, method, e, Provenance::closed(formula)))
}

pub fn qlm_levels(s: &PotentialSpec, n: u32) -> Result<LevelResult> {
    relation_levels(s, n, Mode::Qlm)
}

pub fn wkb_levels(s: &PotentialSpec, n: u32) -> Result<LevelResult> {
    relation_levels(s, n, Mode::Wkb)
}

pub fn level(s: &PotentialSpec, n: u32, method: Method) -> Result<LevelResult> {
    match method {
        Method::Exact => exact_levels(s, n),
        Method::Wkb => wkb_levels(s, n),
        Method::Qlm => qlm_levels(s, n),
    }
}

/// Number of levels with a valid exact energy.
pub fn bound_state_count(s: &PotentialSpec) -> BoundCount {
    match s.kind {
        PotentialKind::Ho1d
        | PotentialKind::Ho3d
        | PotentialKind::Coulomb
        | PotentialKind::Cotangent
        | PotentialKind::PtHole => BoundCount::Infinite,
        _ => {
            let first = first_level(s.kind);
            let mut count = 0;
            // every finite well here has fewer levels than this
            for n in first..first + 100_000 {
                match exact_levels(s, n) {
                    Ok(r) if r.is_ok() => count += 1,
                    _ => break,
                }
            }
            BoundCount::Finite(count)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelRow {
    pub n: u32,
    pub exact: LevelResult,
    pub wkb: LevelResult,
    pub qlm: LevelResult,
    pub qlm_error: Option<f64>,
    pub wkb_error: Option<f64>,
}

impl LevelRow {
    pub fn get(&self, m: Method) -> &LevelResult {
        match m {
            Method::Exact => &self.exact,
            Method::Wkb => &self.wkb,
            Method::Qlm => &self.qlm,
        }
    }
}

/// Rows for `n = first ..= n_max` (`first` is 1 for Hylleraas).
pub fn level_table(s: &PotentialSpec, n_max: u32) -> Result<Vec<LevelRow>> {
    let mut rows = Vec::new();
    for n in first_level(s.kind)..=n_max {
        let exact = exact_levels(s, n)?;
        let wkb = wkb_levels(s, n)?;
        let qlm = qlm_levels(s, n)?;
        let diff = |r: &LevelResult| match (r.energy, exact.energy) {
            (Some(a), Some(b)) => Some((a - b).abs()),
            _ => None,
        };
        let qlm_error = diff(&qlm);
        let wkb_error = diff(&wkb);
        rows.push(LevelRow { n, exact, wkb, qlm, qlm_error, wkb_error });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: PotentialKind, params: &[(&str, f64)]) -> PotentialSpec {
        PotentialSpec::new(kind, params).unwrap()
    }

    fn e(r: Result<LevelResult>) -> f64 {
        r.unwrap().energy.unwrap()
    }

    #[test]
    fn documented_examples() {
        let ho = PotentialSpec::documented(PotentialKind::Ho1d);
        assert_eq!(e(exact_levels(&ho, 0)), 0.5);
        assert_eq!(e(wkb_levels(&ho, 0)), 0.5);
        let ho3 = spec(PotentialKind::Ho3d, &[("l", 0.0)]);
        assert_eq!(e(exact_levels(&ho3, 1)), 3.5);
        assert_eq!(e(qlm_levels(&ho3, 1)), 3.5);
        let c = PotentialSpec::documented(PotentialKind::Coulomb);
        assert_eq!(e(exact_levels(&c, 0)), -0.5);

        let h = PotentialSpec::documented(PotentialKind::Hulthen);
        assert!((e(qlm_levels(&h, 0)) + 1.125).abs() < 1e-14);
        assert!((e(wkb_levels(&h, 0)) + 7.03125).abs() < 1e-14);
        assert_eq!(qlm_levels(&h, 1).unwrap().status, LevelStatus::NoBoundState);

        let mpt = PotentialSpec::documented(PotentialKind::ModifiedPt);
        assert!((e(qlm_levels(&mpt, 0)) + 4.5).abs() < 1e-14);
        assert_eq!(bound_state_count(&mpt), BoundCount::Finite(3));

        let eck = PotentialSpec::documented(PotentialKind::Eckart1d);
        assert!((e(qlm_levels(&eck, 0)) + 0.5).abs() < 1e-14);
        assert_eq!(bound_state_count(&eck), BoundCount::Finite(2));
        assert_eq!(bound_state_count(&c), BoundCount::Infinite);

        let morse = PotentialSpec::documented(PotentialKind::Morse);
        let want = -0.5 * (0.5f64.sqrt() - 0.5).powi(2);
        assert!((e(wkb_levels(&morse, 0)) - want).abs() < 1e-15);
        assert_eq!(bound_state_count(&morse), BoundCount::Finite(1));
    }

    #[test]
    fn qlm_matches_exact_everywhere() {
        for k in PotentialKind::ALL {
            let s = PotentialSpec::documented(k);
            for n in first_level(k)..first_level(k) + 6 {
                let ex = exact_levels(&s, n).unwrap();
                let q = qlm_levels(&s, n).unwrap();
                assert_eq!(ex.status, q.status, "{k} n={n}");
                if let (Some(a), Some(b)) = (ex.energy, q.energy) {
                    assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300), "{k} n={n}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn levels_satisfy_their_relations() {
        for k in PotentialKind::ALL {
            let s = PotentialSpec::documented(k);
            for mode in [Mode::Qlm, Mode::Wkb] {
                for n in first_level(k)..first_level(k) + 4 {
                    let r = relation_levels(&s, n, mode).unwrap();
                    if let Some(en) = r.energy {
                        let rel = relation_at(&s, mode, en).unwrap();
                        assert!(rel.mismatch(n).abs() < 1e-9, "{k} {mode:?} n={n}: {}", rel.mismatch(n));
                    }
                }
            }
        }
    }

    #[test]
    fn hylleraas_counts_from_one() {
        let s = PotentialSpec::documented(PotentialKind::Hylleraas);
        assert!(exact_levels(&s, 0).is_err());
        assert_eq!(bound_state_count(&s), BoundCount::Finite(3));
        let t = level_table(&s, 3).unwrap();
        assert_eq!(t.first().unwrap().n, 1);
    }

    #[test]
    fn reductions() {
        let h = PotentialSpec::documented(PotentialKind::Hulthen);
        let e3 = spec(PotentialKind::Eckart3d, &[("lambda", 2.0), ("b", 0.0), ("a", 1.0)]);
        for n in 0..3 {
            assert_eq!(exact_levels(&h, n).unwrap().energy.is_some(), exact_levels(&e3, n).unwrap().energy.is_some());
        }
        let w = 1.7;
        let eck = spec(PotentialKind::Eckart1d, &[("A", 0.0), ("B", 4.0 * w), ("a", 0.8)]);
        let mpt = spec(PotentialKind::ModifiedPt, &[("V0", w), ("a", 1.6)]);
        for n in 0..3 {
            let (a, b) = (qlm_levels(&eck, n).unwrap().energy, qlm_levels(&mpt, n).unwrap().energy);
            match (a, b) {
                (Some(a), Some(b)) => assert!((a - b).abs() < 1e-12 * b.abs()),
                (None, None) => {}
                other => panic!("{other:?}"),
            }
        }
        let pt = spec(PotentialKind::PtHole, &[("V1", w), ("V2", w), ("a", 1.3)]);
        let cot = spec(PotentialKind::Cotangent, &[("V0", w), ("a", 1.3)]);
        for n in 0..3 {
            let a = e(qlm_levels(&pt, n));
            let b = 4.0 * (e(qlm_levels(&cot, n)) + w);
            assert!((a - b).abs() < 1e-12 * a.abs());
        }
    }

    #[test]
    fn table_rows() {
        let h = PotentialSpec::documented(PotentialKind::Hulthen);
        let t = level_table(&h, 2).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t[0].qlm_error.unwrap() < 1e-14);
        assert!((t[0].wkb_error.unwrap() - 5.90625).abs() < 1e-14);
        assert!(!t[1].qlm.is_ok());
    }
}
