//! The acceptance checks behind `qlmwkb verify` and the `acceptance` test target.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures::GoldenSet;
use crate::formal::{structural_violations, GradedSeries};
use crate::numeric::{asymptotic_residue_fit, first_iterate_closed_form, solve_qlm, LeadingModel, SolveConfig};
use crate::qlm::{linearized_residual, match_prefix, qlm_iterates, qlm_pth_series};
use crate::spectra::{
    bound_state_count, exact_levels, first_level, level, qlm_levels, shooting_oracle, wkb_levels, BoundCount,
    LevelResult, Method, PotentialKind, PotentialSpec,
};
use crate::wkb::{golden_compare, riccati_residual, wkb_terms};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Formal,
    Numeric,
    Spectra,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Formal => "formal",
            Suite::Numeric => "numeric",
            Suite::Spectra => "spectra",
            Suite::All => "all",
        }
    }

    fn covers(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formal" => Ok(Suite::Formal),
            "numeric" => Ok(Suite::Numeric),
            "spectra" => Ok(Suite::Spectra),
            "all" => Ok(Suite::All),
            other => Err(Error::usage(format!("unknown suite `{other}`; expected formal, numeric, spectra or all"))),
        }
    }
}

/// Inputs shared by the checks. A fixture set that failed to load is kept as
/// its error so the golden checks fail instead of aborting the run.
pub struct VerifyContext {
    pub golden: std::result::Result<GoldenSet, String>,
}

impl VerifyContext {
    pub fn builtin() -> Self {
        VerifyContext { golden: GoldenSet::builtin().map_err(|e| e.to_string()) }
    }

    pub fn from_dir(dir: &Path) -> Self {
        VerifyContext { golden: GoldenSet::from_dir(dir).map_err(|e| format!("{}: {e}", dir.display())) }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, ok: impl Into<String>) -> Self {
        if failures.is_empty() {
            Outcome { passed: true, detail: ok.into() }
        } else {
            let mut detail = failures[..failures.len().min(5)].join("; ");
            if failures.len() > 5 {
                write!(detail, "; and {} more", failures.len() - 5).unwrap();
            }
            Outcome { passed: false, detail }
        }
    }
}

pub struct Criterion {
    pub id: u8,
    pub suite: Suite,
    pub title: &'static str,
    pub budget: Option<Duration>,
    pub check: fn(&VerifyContext) -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: u8,
    pub suite: Suite,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_seconds: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl Criterion {
    /// Runs the check and applies the runtime budget.
    pub fn run(&self, ctx: &VerifyContext) -> CheckReport {
        let start = Instant::now();
        let mut out = (self.check)(ctx);
        let elapsed = start.elapsed();
        if let Some(b) = self.budget {
            if elapsed > b {
                out.passed = false;
                out.detail = format!("{} (took {:.2} s, budget {} s)", out.detail, elapsed.as_secs_f64(), b.as_secs());
            }
        }
        CheckReport {
            id: self.id,
            suite: self.suite,
            title: self.title,
            passed: out.passed,
            detail: out.detail,
            seconds: elapsed.as_secs_f64(),
            budget_seconds: self.budget.map(|b| b.as_secs_f64()),
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { id: 1, suite: Suite::Formal, title: "golden WKB series", budget: secs(1), check: golden_wkb },
        Criterion { id: 2, suite: Suite::Formal, title: "golden QLM iterates", budget: secs(5), check: golden_qlm },
        Criterion { id: 3, suite: Suite::Formal, title: "2^p prefix law", budget: None, check: prefix_law },
        Criterion { id: 4, suite: Suite::Formal, title: "residual and structure", budget: None, check: residuals },
        Criterion { id: 5, suite: Suite::Spectra, title: "energy formulas", budget: secs(1), check: energy_formulas },
        Criterion { id: 6, suite: Suite::Spectra, title: "shooting oracle", budget: secs(30), check: oracle },
        Criterion { id: 7, suite: Suite::Spectra, title: "WKB vs QLM discrepancy", budget: None, check: discrepancy },
        Criterion { id: 8, suite: Suite::Numeric, title: "numeric QLM iterates", budget: secs(60), check: numeric },
        Criterion { id: 9, suite: Suite::Spectra, title: "reduction identities", budget: None, check: reductions },
    ]
}

pub fn run_suite(suite: Suite, ctx: &VerifyContext) -> VerifyReport {
    let checks: Vec<CheckReport> = criteria().iter().filter(|c| suite.covers(c.suite)).map(|c| c.run(ctx)).collect();
    VerifyReport { suite, passed: checks.iter().all(|c| c.passed), checks }
}

fn golden(ctx: &VerifyContext) -> std::result::Result<&GoldenSet, Outcome> {
    ctx.golden.as_ref().map_err(|e| Outcome { passed: false, detail: format!("fixtures unusable: {e}") })
}

fn compare_exact(name: &str, got: &GradedSeries, want: &GradedSeries, failures: &mut Vec<String>) {
    for v in golden_compare(got, want).into_iter().filter(|v| !v.equal) {
        failures.push(format!("{name} order {}: computed `{}`, fixture `{}`", v.order, v.lhs, v.rhs));
    }
}

fn golden_wkb(ctx: &VerifyContext) -> Outcome {
    let g = match golden(ctx) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let mut failures = Vec::new();
    match wkb_terms(8) {
        Ok(w) => compare_exact("wkb", &w.series, &g.wkb, &mut failures),
        Err(e) => failures.push(e.to_string()),
    }
    Outcome::from_failures(failures, "orders 0-7 equal")
}

fn golden_qlm(ctx: &VerifyContext) -> Outcome {
    let g = match golden(ctx) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let mut failures = Vec::new();
    for (p, want) in [(1, &g.qlm_y1), (2, &g.qlm_y2)] {
        match qlm_pth_series(p, 8) {
            Ok(y) => compare_exact(&format!("y_{p}"), &y.series, want, &mut failures),
            Err(e) => failures.push(e.to_string()),
        }
    }
    Outcome::from_failures(failures, "y_1 and y_2 equal at orders 0-7")
}

fn prefix_law(_: &VerifyContext) -> Outcome {
    let run = || -> Result<Vec<String>> {
        let w = wkb_terms(8)?.series;
        let ys = qlm_iterates(3, 8)?;
        let mut failures = Vec::new();
        for (p, y) in ys.iter().enumerate() {
            let m = match_prefix(y, &w)?;
            if m != 1 << p {
                failures.push(format!("p = {p}: match_prefix {m}, expected {}", 1 << p));
            }
        }
        if ys[3] != w {
            failures.push("y_3 differs from the WKB series at cap 8".into());
        }
        Ok(failures)
    };
    match run() {
        Ok(f) => Outcome::from_failures(f, "match_prefix 1, 2, 4, 8; y_3 equals the WKB series"),
        Err(e) => Outcome { passed: false, detail: e.to_string() },
    }
}

fn residuals(_: &VerifyContext) -> Outcome {
    let run = || -> Result<Vec<String>> {
        let mut failures = Vec::new();
        let w = wkb_terms(12)?.series;
        if let Some(m) = riccati_residual(&w).leading_order() {
            failures.push(format!("WKB residual non-zero at order {m}"));
        }
        failures.extend(structural_violations(&w).into_iter().map(|v| format!("wkb {v}")));
        let ys = qlm_iterates(4, 10)?;
        for p in 1..ys.len() {
            if let Some(m) = linearized_residual(&ys[p], &ys[p - 1])?.leading_order() {
                failures.push(format!("y_{p} linearized residual non-zero at order {m}"));
            }
            failures.extend(structural_violations(&ys[p]).into_iter().map(|v| format!("y_{p} {v}")));
        }
        Ok(failures)
    };
    match run() {
        Ok(f) => Outcome::from_failures(f, "WKB to order 11 and y_1..y_4 at cap 10"),
        Err(e) => Outcome { passed: false, detail: e.to_string() },
    }
}

/// `|a - b| <= tol * max(|a|, |b|)`.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn same_level(what: &str, a: &LevelResult, b: &LevelResult, tol: f64, failures: &mut Vec<String>) {
    let ok = match (a.energy, b.energy) {
        (Some(x), Some(y)) => rel_close(x, y, tol),
        (None, None) => true,
        _ => false,
    };
    if !ok {
        failures.push(format!("{what} n = {}: {:?} vs {:?}", a.n, a.energy, b.energy));
    }
}

fn spec(kind: PotentialKind, params: &[(&str, f64)]) -> PotentialSpec {
    PotentialSpec::new(kind, params).expect("fixed parameter set is valid")
}

/// Levels to check: every bound level plus the first missing one, or `n <= 5`.
fn levels_to_check(s: &PotentialSpec) -> std::ops::RangeInclusive<u32> {
    let first = first_level(s.kind);
    match bound_state_count(s) {
        BoundCount::Finite(c) => first..=first + c,
        BoundCount::Infinite => first..=5,
    }
}

fn energy_formulas(_: &VerifyContext) -> Outcome {
    let mut failures = Vec::new();
    let mut cases = vec![spec(PotentialKind::Ho1d, &[])];
    for l in 0..=2 {
        cases.push(spec(PotentialKind::Ho3d, &[("l", l as f64)]));
        cases.push(spec(PotentialKind::Coulomb, &[("Z", 1.0), ("l", l as f64)]));
    }
    let mut checked = 0;
    for s in &cases {
        let top = if s.kind == PotentialKind::Ho1d { 5 } else { 3 };
        for n in 0..=top {
            match (exact_levels(s, n), qlm_levels(s, n)) {
                (Ok(e), Ok(q)) => same_level(&s.describe(), &q, &e, 1e-12, &mut failures),
                (a, b) => failures.push(format!("{} n = {n}: {:?} / {:?}", s.describe(), a.err(), b.err())),
            }
            checked += 1;
        }
    }
    for kind in [
        PotentialKind::Hulthen,
        PotentialKind::ModifiedPt,
        PotentialKind::Hylleraas,
        PotentialKind::PtHole,
        PotentialKind::Cotangent,
        PotentialKind::Eckart1d,
        PotentialKind::Eckart3d,
        PotentialKind::Morse,
    ] {
        let s = PotentialSpec::documented(kind);
        for n in levels_to_check(&s) {
            match (exact_levels(&s, n), qlm_levels(&s, n), wkb_levels(&s, n)) {
                (Ok(e), Ok(q), Ok(w)) => {
                    same_level(&s.describe(), &q, &e, 1e-12, &mut failures);
                    if kind == PotentialKind::Morse {
                        same_level("morse wkb", &w, &e, 1e-12, &mut failures);
                    }
                }
                (a, b, c) => {
                    failures.push(format!("{} n = {n}: {:?} {:?} {:?}", s.describe(), a.err(), b.err(), c.err()))
                }
            }
            checked += 1;
        }
    }
    Outcome::from_failures(failures, format!("{checked} levels agree to 1e-12"))
}

fn oracle(_: &VerifyContext) -> Outcome {
    let cases = [
        spec(PotentialKind::Hulthen, &[("a", 1.0), ("lambda", 2.0)]),
        spec(PotentialKind::Morse, &[("A", 1.0), ("B", 1.0), ("a", 1.0)]),
        spec(PotentialKind::ModifiedPt, &[("V0", 6.0), ("a", 1.0)]),
        spec(PotentialKind::Eckart1d, &[("A", 0.0), ("B", 3.0), ("a", 1.0)]),
    ];
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for s in &cases {
        let first = first_level(s.kind);
        let count = match bound_state_count(s) {
            BoundCount::Finite(c) => c.min(3),
            BoundCount::Infinite => 3,
        };
        for n in first..first + count {
            let q = qlm_levels(s, n).ok().and_then(|r| r.energy);
            match (q, shooting_oracle(s, n)) {
                (Some(q), Ok(o)) => {
                    let rel = (q - o).abs() / q.abs();
                    worst = worst.max(rel);
                    if rel > 1e-6 {
                        failures.push(format!("{} n = {n}: qlm {q}, oracle {o}", s.describe()));
                    }
                }
                (q, o) => failures.push(format!("{} n = {n}: qlm {q:?}, oracle {:?}", s.describe(), o.err())),
            }
            checked += 1;
        }
    }
    Outcome::from_failures(failures, format!("{checked} levels, worst relative difference {worst:.1e}"))
}

fn discrepancy(_: &VerifyContext) -> Outcome {
    let mut failures = Vec::new();
    let h = spec(PotentialKind::Hulthen, &[("a", 1.0), ("lambda", 2.0)]);
    for (method, want) in [(Method::Wkb, -7.03125), (Method::Qlm, -1.125)] {
        match level(&h, 0, method).map(|r| r.energy) {
            Ok(Some(e)) if rel_close(e, want, 1e-12) => {}
            other => failures.push(format!("hulthen {} n = 0: {other:?}, expected {want}", method.name())),
        }
    }
    let mut cases = vec![spec(PotentialKind::Ho1d, &[])];
    for l in 0..=2 {
        cases.push(spec(PotentialKind::Coulomb, &[("Z", 1.0), ("l", l as f64)]));
    }
    for s in &cases {
        for n in 0..=5 {
            match (wkb_levels(s, n), qlm_levels(s, n)) {
                (Ok(w), Ok(q)) => same_level(&format!("{} wkb/qlm", s.describe()), &w, &q, 1e-12, &mut failures),
                (a, b) => failures.push(format!("{} n = {n}: {:?} {:?}", s.describe(), a.err(), b.err())),
            }
        }
    }
    Outcome::from_failures(failures, "hulthen wkb -7.03125, qlm -1.125; ho1d and coulomb wkb = qlm")
}

fn numeric(_: &VerifyContext) -> Outcome {
    let run = || -> Result<Vec<String>> {
        let ho = spec(PotentialKind::Ho1d, &[]);
        let cfg = SolveConfig::for_potential(&ho, 2.5)?;
        let h = solve_qlm(&ho, 2.5, 5, &cfg)?;
        let mut failures = Vec::new();
        let alpha = asymptotic_residue_fit(&h.iterates[3], LeadingModel::Linear { slope: -0.5 })?;
        if (alpha - 2.0).abs() > 1e-4 {
            failures.push(format!("residue of y_3 is {alpha}, expected 2.0"));
        }
        let closed = first_iterate_closed_form(&ho, 2.5, &cfg)?;
        let d = closed.sup_diff(&h.iterates[1])?;
        if d > 1e-6 {
            failures.push(format!("closed-form and ODE y_1 differ by {d:e}"));
        }
        let orders = h.convergence_orders(0.1);
        let span: Vec<_> = orders.iter().filter(|(i, _)| (2..=3).contains(i)).collect();
        if span.len() < 2 || span.iter().any(|&&(_, r)| r < 1.8) {
            failures.push(format!("convergence orders {orders:?}"));
        }
        Ok(failures)
    };
    match run() {
        Ok(f) => Outcome::from_failures(f, "residue 2.0, closed form matches ODE, orders >= 1.8"),
        Err(e) => Outcome { passed: false, detail: e.to_string() },
    }
}

/// Checks the three reductions at one `(W, a)`, all methods, first 3 levels.
pub fn reduction_failures(w: f64, a: f64) -> Vec<String> {
    let mut failures = Vec::new();
    let mut pair = |what: &str, x: &PotentialSpec, y: &PotentialSpec, map: &dyn Fn(f64) -> f64| {
        for n in 0..3 {
            for m in Method::ALL {
                match (level(x, n, m), level(y, n, m)) {
                    (Ok(p), Ok(mut q)) => {
                        q.energy = q.energy.map(map);
                        same_level(&format!("{what} {} W = {w} a = {a}", m.name()), &p, &q, 1e-12, &mut failures);
                    }
                    (p, q) => failures.push(format!("{what} n = {n}: {:?} {:?}", p.err(), q.err())),
                }
            }
        }
    };
    let lam = 1.0 / a + w;
    pair(
        "eckart3d(b=0)/hulthen",
        &spec(PotentialKind::Eckart3d, &[("lambda", lam), ("b", 0.0), ("a", a)]),
        &spec(PotentialKind::Hulthen, &[("lambda", lam), ("a", a)]),
        &|e| e,
    );
    pair(
        "eckart1d/modified_pt",
        &spec(PotentialKind::Eckart1d, &[("A", 0.0), ("B", 4.0 * w), ("a", a)]),
        &spec(PotentialKind::ModifiedPt, &[("V0", w), ("a", 2.0 * a)]),
        &|e| e,
    );
    pair(
        "pt_hole/cotangent",
        &spec(PotentialKind::PtHole, &[("V1", w), ("V2", w), ("a", a)]),
        &spec(PotentialKind::Cotangent, &[("V0", w), ("a", a)]),
        &|e| 4.0 * (e + w),
    );
    failures
}

fn reductions(_: &VerifyContext) -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for w in [0.3, 1.0, 2.5, 6.0, 17.0] {
        for a in [0.5, 1.0, 1.7, 3.0] {
            failures.extend(reduction_failures(w, a));
            cases += 1;
        }
    }
    Outcome::from_failures(failures, format!("{cases} parameter pairs, 3 levels, all methods"))
}
