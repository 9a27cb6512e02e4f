//! The `qlmwkb` command line: `expand`, `compare`, `solve`, `spectrum` and `verify`.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 usage error.

pub mod config;
pub mod output;
pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formal::text::{key_to_text, series_to_json, series_to_latex, series_to_text};
use crate::formal::GradedSeries;
use crate::numeric::{residue_fit, solve_qlm, LeadingModel, SolveConfig};
use crate::qlm::{match_prefix, qlm_pth_series};
use crate::spectra::{bound_state_count, level_table, LevelResult, Method, PotentialKind, PotentialSpec};
use crate::wkb::{golden_compare, wkb_terms};
use config::FileConfig;
use output::{format_sig15, to_json, Sink};
use verify::{run_suite, Suite, VerifyContext};

/// Environment variable overriding the formal order caps.
pub const MAX_ORDER_ENV: &str = "QLMWKB_MAX_ORDER";
pub const WKB_MAX_ORDER: usize = 12;
pub const QLM_MAX_ORDER: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "qlmwkb",
    version,
    about = "WKB and quasilinearization for the Riccati form of the Schrodinger equation"
)]
pub struct Cli {
    /// JSON configuration file (flags override it).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory, or a file path with an extension. Prints to stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format: text|latex|json for expand, csv|json for spectrum, json otherwise.
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the formal WKB series or a QLM iterate.
    Expand(ExpandArgs),
    /// Compare a QLM iterate with the WKB series order by order.
    Compare(CompareArgs),
    /// Compute numeric QLM iterates for a potential at a fixed energy.
    Solve(SolveArgs),
    /// Tabulate exact, WKB and QLM energy levels.
    Spectrum(SpectrumArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Wkb,
    Qlm,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long, value_enum)]
    pub target: Option<Target>,
    /// QLM iterate index p (qlm target only).
    #[arg(long)]
    pub iterate: Option<usize>,
    /// Number of orders g^0 .. g^(N-1).
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub iterate: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub potential: Option<String>,
    /// Potential parameter as name=value; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    /// Number of QLM steps p.
    #[arg(long)]
    pub iterates: Option<usize>,
    #[arg(long)]
    pub z_min: Option<f64>,
    #[arg(long)]
    pub z_max: Option<f64>,
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long)]
    pub imag_shift: Option<f64>,
    #[arg(long)]
    pub ode_rel_tol: Option<f64>,
    #[arg(long)]
    pub quadrature_order: Option<usize>,
    /// Store every iterate instead of only the last one.
    #[arg(long)]
    pub all_iterates: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub potential: Option<String>,
    /// Potential parameter as name=value; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Highest quantum number n.
    #[arg(long)]
    pub levels: Option<u32>,
    /// Comma-separated subset of exact,wkb,qlm.
    #[arg(long)]
    pub methods: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: Option<String>,
    /// Directory holding wkb.txt, qlm_y1.txt and qlm_y2.txt to check instead of the built-in set.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command. Returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::InvalidPotential { .. } | Error::Parse(_) => 2,
        _ => 1,
    }
}

/// Runs a parsed command. `Ok` carries the exit code (1 when a comparison or check fails).
pub fn run(cli: Cli) -> Result<i32> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let out = cli.out.clone().or_else(|| file.out.clone());
    let format = cli.format.clone().or_else(|| file.format.clone());
    let sink = Sink::new(out);
    match cli.command {
        Command::Expand(a) => cmd_expand(a, &file, format, sink),
        Command::Compare(a) => cmd_compare(a, &file, format, sink),
        Command::Solve(a) => cmd_solve(a, &file, format, sink),
        Command::Spectrum(a) => cmd_spectrum(a, &file, format, sink),
        Command::Verify(a) => cmd_verify(a, &file, format, sink),
    }
}

fn check_format<'a>(format: &'a Option<String>, allowed: &[&'a str]) -> Result<&'a str> {
    let f = format.as_deref().unwrap_or(allowed[0]);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::usage(format!("format `{f}` not available here; choose one of {}", allowed.join(", "))))
    }
}

/// Formal order cap for `target`, honouring the environment override.
pub fn max_order(target: Target) -> Result<usize> {
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::usage(format!("{MAX_ORDER_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(match target {
            Target::Wkb => WKB_MAX_ORDER,
            Target::Qlm => QLM_MAX_ORDER,
        }),
    }
}

fn check_order(order: usize, target: Target) -> Result<()> {
    let cap = max_order(target)?;
    if order < 1 {
        return Err(Error::usage("order must be at least 1"));
    }
    if order > cap {
        return Err(Error::usage(format!(
            "order {order} exceeds the {} limit of {cap} (set {MAX_ORDER_ENV} to raise it)",
            match target {
                Target::Wkb => "wkb",
                Target::Qlm => "qlm",
            }
        )));
    }
    Ok(())
}

fn cmd_expand(a: ExpandArgs, file: &FileConfig, format: Option<String>, mut sink: Sink) -> Result<i32> {
    let fmt = check_format(&format, &["text", "latex", "json"])?;
    let target = match a.target {
        Some(t) => t,
        None => match file.expand.target.as_deref() {
            None | Some("wkb") => Target::Wkb,
            Some("qlm") => Target::Qlm,
            Some(other) => return Err(Error::usage(format!("unknown target `{other}` in config"))),
        },
    };
    let order = a.order.or(file.expand.order).unwrap_or(8);
    let iterate = a.iterate.or(file.expand.iterate).unwrap_or(1);
    check_order(order, target)?;
    let (series, name) = match target {
        Target::Wkb => (wkb_terms(order)?.series, format!("wkb_order{order}")),
        Target::Qlm => (qlm_pth_series(iterate, order)?.series, format!("qlm_p{iterate}_order{order}")),
    };
    let (body, ext) = match fmt {
        "text" => (series_to_text(&series), "txt"),
        "latex" => (series_to_latex(&series), "tex"),
        _ => (to_json(&series_to_json(&series))?, "json"),
    };
    sink.emit(&format!("{name}.{ext}"), &body)?;
    let mut echo = json!({"target": target, "order": order, "format": fmt});
    if target == Target::Qlm {
        echo["iterate"] = json!(iterate);
    }
    sink.finish("expand", echo)?;
    Ok(0)
}

#[derive(Serialize)]
struct RatioEntry {
    monomial: String,
    ratio: Option<f64>,
}

#[derive(Serialize)]
struct CompareRow {
    order: usize,
    equal: bool,
    lhs: String,
    rhs: String,
    /// QLM coefficient over WKB coefficient per WKB monomial, for unequal orders.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    ratios: Vec<RatioEntry>,
}

#[derive(Serialize)]
struct CompareReport {
    iterate: usize,
    order: usize,
    match_prefix: usize,
    expected: usize,
    passed: bool,
    rows: Vec<CompareRow>,
}

fn coefficient_ratios(qlm: &GradedSeries, wkb: &GradedSeries, m: usize) -> Vec<RatioEntry> {
    let q = qlm.coeff(m);
    wkb.coeff(m)
        .terms()
        .map(|(key, cw)| {
            let cq = q.coeff(key);
            let ratio = (!cq.is_zero()).then(|| (cq.to_complex() / cw.to_complex()).re);
            RatioEntry { monomial: key_to_text(key), ratio }
        })
        .collect()
}

fn cmd_compare(a: CompareArgs, file: &FileConfig, format: Option<String>, mut sink: Sink) -> Result<i32> {
    check_format(&format, &["json"])?;
    let p = a.iterate.or(file.compare.iterate).unwrap_or(3);
    let order = a.order.or(file.compare.order).unwrap_or(8);
    check_order(order, Target::Qlm)?;
    let y = qlm_pth_series(p, order)?.series;
    let w = wkb_terms(order)?.series;
    let prefix = match_prefix(&y, &w)?;
    let expected = 1usize.checked_shl(p as u32).unwrap_or(usize::MAX).min(order);
    let rows = golden_compare(&y, &w)
        .into_iter()
        .map(|v| CompareRow {
            ratios: if v.equal { Vec::new() } else { coefficient_ratios(&y, &w, v.order) },
            order: v.order,
            equal: v.equal,
            lhs: v.lhs,
            rhs: v.rhs,
        })
        .collect();
    let report = CompareReport { iterate: p, order, match_prefix: prefix, expected, passed: prefix == expected, rows };
    sink.emit(&format!("compare_p{p}_order{order}.json"), &to_json(&report)?)?;
    sink.finish("compare", json!({"iterate": p, "order": order}))?;
    Ok(if report.passed { 0 } else { 1 })
}

/// Merges config-file parameters with `name=value` flags (flags win).
fn merge_params(from_file: &BTreeMap<String, f64>, flags: &[String]) -> Result<BTreeMap<String, f64>> {
    let mut map = from_file.clone();
    for p in flags {
        let (k, v) = p.split_once('=').ok_or_else(|| Error::usage(format!("--param expects name=value, got `{p}`")))?;
        let v: f64 =
            v.trim().parse().map_err(|_| Error::usage(format!("parameter `{k}` has non-numeric value `{v}`")))?;
        map.insert(k.trim().to_string(), v);
    }
    Ok(map)
}

fn build_spec(potential: Option<&str>, params: BTreeMap<String, f64>) -> Result<PotentialSpec> {
    let name = potential.ok_or_else(|| Error::usage("--potential is required"))?;
    let kind: PotentialKind = name.parse()?;
    let pairs: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    PotentialSpec::new(kind, &pairs)
}

#[derive(Serialize)]
struct IterateSamples {
    p: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize)]
struct SolveReport {
    potential: String,
    params: BTreeMap<String, f64>,
    energy: f64,
    iterates: usize,
    config: SolveConfig,
    /// Sample points are `grid[j] + i * shift`.
    grid: Vec<f64>,
    shift: f64,
    samples: Vec<IterateSamples>,
    sup_diffs: Vec<f64>,
    convergence_orders: Vec<(usize, f64)>,
    residue_fit: Value,
}

fn cmd_solve(a: SolveArgs, file: &FileConfig, format: Option<String>, mut sink: Sink) -> Result<i32> {
    check_format(&format, &["json"])?;
    let f = &file.solve;
    let spec = build_spec(a.potential.as_deref().or(f.potential.as_deref()), merge_params(&f.params, &a.params)?)?;
    let e = a.energy.or(f.energy).ok_or_else(|| Error::usage("--energy is required"))?;
    if !e.is_finite() {
        return Err(Error::usage("energy must be finite"));
    }
    let p = a.iterates.or(f.iterates).unwrap_or(4);
    let mut cfg = SolveConfig::for_potential(&spec, e)?;
    cfg.z_min = a.z_min.or(f.z_min).unwrap_or(cfg.z_min);
    cfg.z_max = a.z_max.or(f.z_max).unwrap_or(cfg.z_max);
    cfg.grid_points = a.grid_points.or(f.grid_points).unwrap_or(cfg.grid_points);
    cfg.imag_shift = a.imag_shift.or(f.imag_shift).unwrap_or(cfg.imag_shift);
    cfg.ode_rel_tol = a.ode_rel_tol.or(f.ode_rel_tol).unwrap_or(cfg.ode_rel_tol);
    cfg.quadrature_order = a.quadrature_order.or(f.quadrature_order).unwrap_or(cfg.quadrature_order);
    cfg.validate()?;
    let all = a.all_iterates || f.all_iterates.unwrap_or(false);

    let h = solve_qlm(&spec, e, p, &cfg)?;
    let pick: Vec<usize> = if all { (0..h.iterates.len()).collect() } else { vec![h.iterates.len() - 1] };
    let samples = pick
        .into_iter()
        .map(|i| {
            let y = &h.iterates[i];
            IterateSamples {
                p: i,
                re: y.values.iter().map(|c| c.re).collect(),
                im: y.values.iter().map(|c| c.im).collect(),
            }
        })
        .collect();
    let residue = match LeadingModel::for_potential(&spec, e) {
        None => json!({"skipped": "no leading model for this potential and energy"}),
        Some(model) => match residue_fit(h.last(), model) {
            Ok(fit) => {
                json!({"model": model, "alpha": fit.alpha(), "points": fit.points, "rel_residual": fit.rel_residual})
            }
            Err(err) => json!({"model": model, "error": err.to_string()}),
        },
    };
    let report = SolveReport {
        potential: spec.kind.name().into(),
        params: spec.params.clone(),
        energy: e,
        iterates: p,
        grid: h.last().grid.clone(),
        shift: h.last().shift,
        config: cfg.clone(),
        samples,
        convergence_orders: h.convergence_orders(0.1),
        sup_diffs: h.sup_diffs,
        residue_fit: residue,
    };
    sink.emit("run.json", &to_json(&report)?)?;
    sink.finish(
        "solve",
        json!({"potential": spec.kind.name(), "params": spec.params, "energy": e, "iterates": p, "config": cfg, "all_iterates": all}),
    )?;
    Ok(0)
}

fn parse_methods(list: &[String]) -> Result<Vec<Method>> {
    let mut out: Vec<Method> = Vec::new();
    for m in list {
        let m: Method = m.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(Error::usage("--methods needs at least one of exact, wkb, qlm"));
    }
    Ok(out)
}

/// Long-format CSV: one `n,method,energy,status` row per level and method.
pub fn levels_csv(results: &[LevelResult]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["n", "method", "energy", "status"]).map_err(csv_err)?;
    for r in results {
        let energy = r.energy.map(format_sig15).unwrap_or_default();
        w.write_record([r.n.to_string().as_str(), r.method.name(), &energy, r.status.name()]).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV fields are UTF-8"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn cmd_spectrum(a: SpectrumArgs, file: &FileConfig, format: Option<String>, mut sink: Sink) -> Result<i32> {
    let fmt = check_format(&format, &["csv", "json"])?;
    let f = &file.spectrum;
    let spec = build_spec(a.potential.as_deref().or(f.potential.as_deref()), merge_params(&f.params, &a.params)?)?;
    let n_max = a.levels.or(f.levels).unwrap_or(5);
    let methods = match (&a.methods, &f.methods) {
        (Some(s), _) => parse_methods(&s.split(',').map(str::to_string).collect::<Vec<_>>())?,
        (None, Some(list)) => parse_methods(list)?,
        (None, None) => Method::ALL.to_vec(),
    };
    let rows = level_table(&spec, n_max)?;
    let results: Vec<LevelResult> = rows.iter().flat_map(|r| methods.iter().map(|&m| r.get(m).clone())).collect();
    let body = match fmt {
        "csv" => levels_csv(&results)?,
        _ => to_json(&json!({
            "potential": spec.kind.name(),
            "params": spec.params,
            "levels": n_max,
            "methods": methods,
            "bound_states": bound_state_count(&spec),
            "rows": results,
        }))?,
    };
    sink.emit(&format!("table.{fmt}"), &body)?;
    sink.finish(
        "spectrum",
        json!({"potential": spec.kind.name(), "params": spec.params, "levels": n_max, "methods": methods, "format": fmt}),
    )?;
    Ok(0)
}

fn cmd_verify(a: VerifyArgs, file: &FileConfig, format: Option<String>, mut sink: Sink) -> Result<i32> {
    check_format(&format, &["json"])?;
    let suite: Suite = a.suite.as_deref().or(file.verify.suite.as_deref()).unwrap_or("all").parse()?;
    let fixtures = a.fixtures.or_else(|| file.verify.fixtures.clone());
    let ctx = match &fixtures {
        Some(dir) if !dir.is_dir() => {
            return Err(Error::usage(format!("fixtures directory {} does not exist", dir.display())))
        }
        Some(dir) => VerifyContext::from_dir(dir),
        None => VerifyContext::builtin(),
    };
    let report = run_suite(suite, &ctx);
    for c in &report.checks {
        eprintln!("{} [{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.title, c.detail);
    }
    sink.emit("verify.json", &to_json(&report)?)?;
    sink.finish(
        "verify",
        json!({"suite": suite, "fixtures": fixtures.map(|p| p.display().to_string()).unwrap_or_else(|| "builtin".into())}),
    )?;
    Ok(if report.passed { 0 } else { 1 })
}
