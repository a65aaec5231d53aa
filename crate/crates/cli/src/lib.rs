//! Front end for the `skt` binary.
//!
//! Every subcommand builds a [`Report`] holding a human-readable text and a
//! JSON value with the same numbers; `--json` selects the latter. Inputs are
//! JSON documents (a path, or `-` for stdin) or `catalogue:<name>`. When the
//! `SKTLIE_CATALOGUE` environment variable names a directory, a file
//! `<name>.json` there takes precedence over the built-in entry.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use skt_core::catalogue::{self, Entry};
use skt_core::document::{parse_document, AlgebraDocument};
use skt_core::families::{self, Family1Params, Family2Params, GenericMetric, Verdict};
use skt_core::linalg::RMatrix;
use skt_core::tamed::{self, FeasibilityReport, SearchOptions};
use skt_core::{Complex64, ComplexStructure, Hermitian, HermitianMetric, LieAlgebra};

/// Environment variable naming a directory of catalogue overrides.
pub const CATALOGUE_ENV: &str = "SKTLIE_CATALOGUE";

#[derive(Debug, Parser)]
#[command(
    name = "skt",
    version,
    about = "SKT metrics, taming forms and obstructions on Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = skt_core::TOL_EQ)]
    pub tol_eq: f64,
    #[arg(long, global = true, default_value_t = skt_core::TOL_PD)]
    pub tol_pd: f64,
    /// Number of multistart trials for feasibility searches.
    #[arg(long, global = true, default_value_t = 64)]
    pub trials: usize,
    /// Iterations per trial.
    #[arg(long, global = true, default_value_t = 500)]
    pub iters: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi identity, integrability of J and compatibility of g.
    Check { input: String },
    /// Central series, center, Betti numbers and J-nilpotency.
    Invariants { input: String },
    #[command(subcommand)]
    Skt(SktCommand),
    #[command(subcommand)]
    Tamed(TamedCommand),
    /// Structural obstructions to taming forms and SKT metrics.
    Obstruct { input: String },
    /// Place an 8-dimensional nilpotent algebra in one of the two SKT families.
    Classify8 { input: String },
    /// First family: SKT residual of given parameters.
    Family1 {
        #[arg(long)]
        params: String,
        /// Coefficients `a1..a10` of a general Hermitian metric.
        #[arg(long)]
        metric_coeffs: Option<String>,
        /// Print the realised algebra as a document instead of a report.
        #[arg(long)]
        export: bool,
    },
    /// Second family: the six SKT residuals of given parameters.
    Family2 {
        #[arg(long)]
        params: String,
        #[arg(long)]
        export: bool,
    },
    #[command(subcommand)]
    Hkt(HktCommand),
    #[command(subcommand)]
    Catalogue(CatalogueCommand),
}

#[derive(Debug, Subcommand)]
pub enum SktCommand {
    /// Test whether the given metric is SKT.
    Check {
        input: String,
        #[arg(long, value_enum, default_value_t = MetricChoice::Document)]
        metric: MetricChoice,
    },
    /// Search for an SKT metric compatible with J.
    Find { input: String },
}

#[derive(Debug, Subcommand)]
pub enum TamedCommand {
    /// Search for a symplectic form taming J.
    Find { input: String },
}

#[derive(Debug, Subcommand)]
pub enum HktCommand {
    /// Abelian hypercomplex and HKT tests for the document's triple.
    Check { input: String },
}

#[derive(Debug, Subcommand)]
pub enum CatalogueCommand {
    List,
    Show { name: String },
    Export { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricChoice {
    /// The document's metric, or the standard one when absent.
    Document,
    /// `(Id + J^T J) / 2`, the identity for orthogonal J.
    Standard,
}

/// Output of one subcommand.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    /// False when the input failed validation (exit code 1).
    pub valid: bool,
    /// Print `text` even under `--json` (document exports).
    pub verbatim: bool,
}

impl Report {
    fn answered(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            valid: true,
            verbatim: false,
        }
    }
}

/// Parse arguments, run, write the report to `out` and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let written = if cli.json && !report.verbatim {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report.json).unwrap_or_default()
                )
            } else {
                write!(out, "{}", report.text)
            };
            if written.is_err() {
                return 2;
            }
            if report.valid {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "error: {e:#}");
            code
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if cause.downcast_ref::<skt_core::Error>().is_some()
            || cause.downcast_ref::<InputError>().is_some()
        {
            return 1;
        }
    }
    2
}

/// Problems with the user's input that are not geometric errors.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(String);

fn input_error(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(InputError(msg.into()))
}

pub fn options(cli: &Cli) -> SearchOptions {
    SearchOptions {
        trials: cli.trials,
        iterations: cli.iters,
        seed: cli.seed,
        tol_eq: cli.tol_eq,
        tol_pd: cli.tol_pd,
    }
}

/// Resolve an input argument to a catalogue entry.
pub fn load(input: &str) -> anyhow::Result<Entry> {
    if let Some(name) = input.strip_prefix("catalogue:") {
        if let Some(dir) = std::env::var_os(CATALOGUE_ENV) {
            let path = PathBuf::from(dir).join(format!("{name}.json"));
            if path.is_file() {
                return load_file(&path);
            }
        }
        return Ok(catalogue::get(name)?);
    }
    if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        return Ok(parse_document(&text)?.to_entry()?);
    }
    load_file(&PathBuf::from(input))
}

fn load_file(path: &std::path::Path) -> anyhow::Result<Entry> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let doc = parse_document(&text).with_context(|| format!("in {}", path.display()))?;
    Ok(doc.to_entry()?)
}

fn require_j(e: &Entry) -> anyhow::Result<ComplexStructure> {
    e.complex_structure
        .clone()
        .ok_or_else(|| input_error(format!("`{}` has no complex structure", e.name)))
}

fn metric_of(
    e: &Entry,
    j: &ComplexStructure,
    choice: MetricChoice,
) -> anyhow::Result<HermitianMetric> {
    match (&e.metric, choice) {
        (Some(g), MetricChoice::Document) => Ok(HermitianMetric::new(g.clone(), j)?),
        _ => Ok(HermitianMetric::averaged_identity(j)),
    }
}

pub fn execute(cli: &Cli) -> anyhow::Result<Report> {
    let opts = options(cli);
    match &cli.command {
        Command::Check { input } => check(&load(input)?),
        Command::Invariants { input } => invariants(&load(input)?),
        Command::Skt(SktCommand::Check { input, metric }) => skt_check(&load(input)?, *metric),
        Command::Skt(SktCommand::Find { input }) => {
            let e = load(input)?;
            let r = tamed::skt_find(&e.algebra, &require_j(&e)?, &opts)?;
            Ok(search_report("skt find", &e, &r, &opts))
        }
        Command::Tamed(TamedCommand::Find { input }) => {
            let e = load(input)?;
            let r = tamed::tamed_find(&e.algebra, &require_j(&e)?, &opts)?;
            Ok(search_report("tamed find", &e, &r, &opts))
        }
        Command::Obstruct { input } => obstruct(&load(input)?),
        Command::Classify8 { input } => classify(&load(input)?, &opts),
        Command::Family1 {
            params,
            metric_coeffs,
            export,
        } => family1(params, metric_coeffs.as_deref(), *export),
        Command::Family2 { params, export } => family2(params, *export),
        Command::Hkt(HktCommand::Check { input }) => hkt(&load(input)?),
        Command::Catalogue(c) => catalogue_command(c),
    }
}

fn vec_json(v: &nalgebra::DVector<f64>) -> Value {
    json!(v.iter().map(|x| clean(*x)).collect::<Vec<_>>())
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else {
        x
    }
}

fn c_json(z: Complex64) -> Value {
    json!([clean(z.re), clean(z.im)])
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.6}{:+.6}i", clean(z.re), clean(z.im))
}

fn fmt_vec(v: &nalgebra::DVector<f64>) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{:.6}", clean(*x))).collect();
    format!("({})", parts.join(", "))
}

fn matrix_json(m: &RMatrix) -> Value {
    json!((0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| clean(m[(r, c)])).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// `de8 = 1*e1^e2 + ...` lines, 1-based.
pub fn format_equations(alg: &LieAlgebra) -> String {
    let mut lines = vec![Vec::new(); alg.dim()];
    for (k, i, j, c) in alg.entries() {
        lines[k].push(format!("{c}*e{}^e{}", i + 1, j + 1));
    }
    let mut s = String::new();
    for (k, terms) in lines.iter().enumerate() {
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        let _ = writeln!(s, "  de{} = {}", k + 1, rhs);
    }
    s
}

fn check(e: &Entry) -> anyhow::Result<Report> {
    let jacobi = e.algebra.jacobi_residual();
    let jacobi_ok = jacobi <= skt_core::TOL_CATALOGUE;
    let mut text = format!("{}: dim {}\n", e.name, e.algebra.dim());
    let _ = writeln!(
        text,
        "Jacobi residual: {jacobi:e} ({})",
        if jacobi_ok { "ok" } else { "FAIL" }
    );
    let mut valid = jacobi_ok;
    let mut out = json!({"name": e.name, "dim": e.algebra.dim(), "jacobi_residual": jacobi, "jacobi_ok": jacobi_ok});
    if let Some(j) = &e.complex_structure {
        let nij = j.nijenhuis_residual(&e.algebra)?;
        let integrable = nij <= skt_core::complex::INTEGRABLE_TOL;
        valid &= integrable;
        let _ = writeln!(
            text,
            "Nijenhuis residual: {nij:e} ({})",
            if integrable { "integrable" } else { "FAIL" }
        );
        out["nijenhuis_residual"] = json!(nij);
        out["integrable"] = json!(integrable);
        if let Some(g) = &e.metric {
            let compat = skt_core::linalg::sup_norm(&(j.matrix().transpose() * g * j.matrix() - g));
            let ok = compat <= skt_core::TOL_EQ && HermitianMetric::new(g.clone(), j).is_ok();
            valid &= ok;
            let _ = writeln!(
                text,
                "metric compatibility: {compat:e} ({})",
                if ok { "ok" } else { "FAIL" }
            );
            out["metric_compatibility"] = json!(compat);
            out["metric_ok"] = json!(ok);
        }
    }
    out["valid"] = json!(valid);
    Ok(Report {
        text,
        json: out,
        valid,
        verbatim: false,
    })
}

fn invariants(e: &Entry) -> anyhow::Result<Report> {
    let alg = &e.algebra;
    let series = alg.lower_central_series();
    let dims: Vec<usize> = series.terms.iter().map(|s| s.dim()).collect();
    let xi = alg.center();
    let betti = skt_core::exterior::betti_numbers(alg.equations())?;
    let mut text = format!("{}: dim {}\n", e.name, alg.dim());
    let _ = writeln!(text, "lower central series dims: {dims:?}");
    match series.nil_step {
        Some(s) => {
            let _ = writeln!(text, "nilpotent, step {s}");
        }
        None => {
            let _ = writeln!(text, "not nilpotent");
        }
    }
    let _ = writeln!(text, "dim [g,g] = {}", alg.derived().dim());
    let _ = writeln!(text, "center (dim {}):", xi.dim());
    for v in xi.basis() {
        let _ = writeln!(text, "  {}", fmt_vec(v));
    }
    let _ = writeln!(text, "Betti numbers: {betti:?}");
    let mut out = json!({
        "name": e.name,
        "dim": alg.dim(),
        "lower_central_series": dims,
        "nil_step": series.nil_step,
        "derived_dim": alg.derived().dim(),
        "center": xi.basis().iter().map(vec_json).collect::<Vec<_>>(),
        "betti": betti,
    });
    if let Some(j) = &e.complex_structure {
        let (terms, nilpotent) = j.ascending_series(alg)?;
        let jdims: Vec<usize> = terms.iter().map(|s| s.dim()).collect();
        let invariant = j.preserves(&xi, 1e-8);
        let _ = writeln!(
            text,
            "J-ascending series dims: {jdims:?} (J {}nilpotent)",
            if nilpotent { "" } else { "not " }
        );
        let _ = writeln!(text, "center J-invariant: {invariant}");
        out["j_series"] = json!(jdims);
        out["j_nilpotent"] = json!(nilpotent);
        out["center_j_invariant"] = json!(invariant);
    }
    Ok(Report::answered(text, out))
}

fn skt_check(e: &Entry, choice: MetricChoice) -> anyhow::Result<Report> {
    let j = require_j(e)?;
    let g = metric_of(e, &j, choice)?;
    let h = Hermitian::new(e.algebra.clone(), j, g)?;
    let r = h.skt_residual()?;
    let tol = skt_core::complex::SKT_TOL;
    let skt = r.is_skt(tol);
    let text = format!(
        "{}: SKT: {skt}\nresidual: {:e} (del delbar omega {:e}, dc {:e}, tolerance {tol:e})\n",
        e.name,
        r.value(),
        r.ddbar,
        r.dc
    );
    let out = json!({
        "name": e.name,
        "metric": format!("{choice:?}").to_lowercase(),
        "skt": skt,
        "residual": r.value(),
        "ddbar_residual": r.ddbar,
        "dc_residual": r.dc,
        "tolerance": tol,
    });
    Ok(Report::answered(text, out))
}

fn obstruction_json(r: &FeasibilityReport) -> Value {
    match &r.obstruction {
        None => Value::Null,
        Some(o) => json!({
            "kind": o.kind,
            "reason": o.reason,
            "witness": o.witness.as_ref().map(vec_json),
        }),
    }
}

fn search_report(what: &str, e: &Entry, r: &FeasibilityReport, opts: &SearchOptions) -> Report {
    let mut text = format!(
        "{what} {}: {}\n",
        e.name,
        if r.found() { "found" } else { "not_found" }
    );
    let _ = writeln!(text, "  {}", r.certainty());
    if let Some(o) = &r.obstruction {
        let _ = writeln!(text, "  obstruction: {}", o.reason);
        if let Some(w) = &o.witness {
            let _ = writeln!(text, "  witness: {}", fmt_vec(w));
        }
    }
    match r.best_min_eigenvalue {
        Some(v) => {
            let _ = writeln!(
                text,
                "  best unit-trace min eigenvalue: {v:e} (trial {}, {} iterations)",
                r.best_trial.unwrap_or(0),
                r.iterations
            );
        }
        None => {
            let _ = writeln!(text, "  numeric search skipped");
        }
    }
    let _ = writeln!(
        text,
        "  variables {}, kernel dim {}, seed {}, trials {}, iterations/trial {}, tol_eq {:e}, tol_pd {:e}",
        r.variables, r.kernel_dim, r.seed, r.trials, r.iterations_per_trial, opts.tol_eq, opts.tol_pd
    );
    let certificate = r.certificate.as_ref().map(|c| {
        let _ = writeln!(
            text,
            "  certificate: residual {:e}, min eigenvalue {:e}",
            c.constraint_residual, c.min_eigenvalue
        );
        json!({
            "metric": matrix_json(&c.metric),
            "constraint_residual": c.constraint_residual,
            "min_eigenvalue": c.min_eigenvalue,
        })
    });
    let out = json!({
        "name": e.name,
        "search": what,
        "status": r.status,
        "certainty": r.certainty(),
        "best_min_eigenvalue": r.best_min_eigenvalue,
        "best_trial": r.best_trial,
        "iterations": r.iterations,
        "variables": r.variables,
        "kernel_dim": r.kernel_dim,
        "seed": r.seed,
        "trials": r.trials,
        "iterations_per_trial": r.iterations_per_trial,
        "tol_eq": opts.tol_eq,
        "tol_pd": opts.tol_pd,
        "obstruction": obstruction_json(r),
        "certificate": certificate,
    });
    Report::answered(text, out)
}

fn obstruct(e: &Entry) -> anyhow::Result<Report> {
    let j = require_j(e)?;
    let hs = tamed::hs_obstruction(&e.algebra, &j)?;
    let skt = tamed::skt_obstruction(&e.algebra, &j)?;
    let mut text = format!("{}:\n", e.name);
    if hs.blocked {
        let _ = writeln!(text, "Jξ ∩ [g,g] ≠ {{0}}: no symplectic form tames J");
        if let Some(w) = &hs.witness {
            let _ = writeln!(text, "  witness: {}", fmt_vec(w));
        }
    } else {
        let _ = writeln!(text, "Jξ ∩ [g,g] = {{0}}: obstruction does not apply");
    }
    match &skt {
        Some(o) => {
            let _ = writeln!(text, "SKT obstruction: {}", o.reason);
        }
        None => {
            let _ = writeln!(text, "SKT obstruction: none");
        }
    }
    let out = json!({
        "name": e.name,
        "taming_blocked": hs.blocked,
        "taming_witness": hs.witness.as_ref().map(vec_json),
        "skt_obstruction": skt.as_ref().map(|o| json!({"kind": o.kind, "reason": o.reason})),
    });
    Ok(Report::answered(text, out))
}

fn params_json<const N: usize>(names: [&str; N], values: [Complex64; N]) -> Value {
    let mut m = serde_json::Map::new();
    for (n, v) in names.iter().zip(values) {
        m.insert(n.to_string(), c_json(v));
    }
    Value::Object(m)
}

fn params_text<const N: usize>(names: [&str; N], values: [Complex64; N]) -> String {
    names
        .iter()
        .zip(values)
        .filter(|(_, v)| v.norm() > 1e-14)
        .map(|(n, v)| format!("{n}={}", fmt_c(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn classify(e: &Entry, opts: &SearchOptions) -> anyhow::Result<Report> {
    let j = require_j(e)?;
    let verdict = families::classify8(&e.algebra, &j, opts)?;
    let (text, out) = match &verdict {
        Verdict::Torus => ("torus (abelian)\n".to_string(), json!({"verdict": "torus"})),
        Verdict::Family1 { params, residual } => (
            format!(
                "family 1: {}\nSKT residual {residual:e}\n",
                params_text(Family1Params::NAMES, params.to_array())
            ),
            json!({"verdict": "family1", "params": params_json(Family1Params::NAMES, params.to_array()), "residual": residual}),
        ),
        Verdict::Family2 { params, residuals } => (
            format!(
                "family 2: {}\nSKT residuals max {:e}\n",
                params_text(Family2Params::NAMES, params.to_array()),
                families::max_modulus(residuals)
            ),
            json!({
                "verdict": "family2",
                "params": params_json(Family2Params::NAMES, params.to_array()),
                "residuals": residuals.iter().map(|z| c_json(*z)).collect::<Vec<_>>(),
            }),
        ),
        Verdict::NoSkt { reason, certified } => (
            format!(
                "no SKT metric: {reason}{}\n",
                if *certified { "" } else { " [search only]" }
            ),
            json!({"verdict": "no_skt", "reason": reason, "certified": certified}),
        ),
    };
    let mut out = out;
    out["name"] = json!(e.name);
    out["seed"] = json!(opts.seed);
    out["trials"] = json!(opts.trials);
    out["iterations_per_trial"] = json!(opts.iterations);
    Ok(Report::answered(format!("{}: {text}", e.name), out))
}

fn family_summary(
    alg: &LieAlgebra,
    j: &ComplexStructure,
) -> anyhow::Result<(Option<usize>, bool, usize)> {
    let (_, nilpotent) = j.ascending_series(alg)?;
    Ok((alg.nil_step(), nilpotent, alg.derived().dim()))
}

fn export_report(e: Entry) -> Report {
    let doc = AlgebraDocument::from_entry(&e);
    Report {
        text: doc.to_json(),
        json: Value::Null,
        valid: true,
        verbatim: true,
    }
}

fn family1(params: &str, metric_coeffs: Option<&str>, export: bool) -> anyhow::Result<Report> {
    let p = Family1Params::parse(params)?;
    let (alg, j) = families::build_family1(&p)?;
    if export {
        return Ok(export_report(catalogue::get(&format!("family1:{params}"))?));
    }
    let h = families::standard_hermitian(&alg, &j)?;
    let residual = families::family1_skt_residual(&p);
    let coordinate_free = families::family1_coordinate_free(&p)?;
    let (skt, skt_residual) = h.is_skt()?;
    let (step, j_nil, g1) = family_summary(&alg, &j)?;
    let mut text = format!(
        "family 1: {}\n",
        params_text(Family1Params::NAMES, p.to_array())
    );
    let _ = writeln!(
        text,
        "SKT polynomial residual: {residual:e} (coordinate-free {coordinate_free:e})"
    );
    let _ = writeln!(
        text,
        "standard metric SKT: {skt} (residual {skt_residual:e})"
    );
    let _ = writeln!(
        text,
        "nil step {}, J nilpotent {j_nil}, dim [g,g] {g1}",
        step.map_or_else(|| "none".to_string(), |s| s.to_string())
    );
    let mut out = json!({
        "family": 1,
        "params": params_json(Family1Params::NAMES, p.to_array()),
        "residual": residual,
        "coordinate_free": coordinate_free,
        "skt": skt,
        "skt_residual": skt_residual,
        "nil_step": step,
        "j_nilpotent": j_nil,
        "derived_dim": g1,
    });
    if let Some(coeffs) = metric_coeffs {
        let m = GenericMetric::parse(coeffs)?;
        let metric = m.metric(&j)?;
        let poly = families::family1_generic_metric_polynomial(&p, &m);
        let hg = Hermitian::new(alg.clone(), j.clone(), metric)?;
        let (gskt, gres) = hg.is_skt()?;
        let _ = writeln!(
            text,
            "generic metric polynomial: {} (SKT {gskt}, residual {gres:e})",
            fmt_c(poly)
        );
        out["generic_metric"] = json!({
            "a": m.a.iter().map(|z| c_json(*z)).collect::<Vec<_>>(),
            "polynomial": c_json(poly),
            "skt": gskt,
            "skt_residual": gres,
        });
    }
    Ok(Report::answered(text, out))
}

fn family2(params: &str, export: bool) -> anyhow::Result<Report> {
    let p = Family2Params::parse(params)?;
    let (alg, j) = families::build_family2(&p)?;
    if export {
        return Ok(export_report(catalogue::get(&format!("family2:{params}"))?));
    }
    let residuals = families::family2_skt_residuals(&p)?;
    let h = families::standard_hermitian(&alg, &j)?;
    let (skt, skt_residual) = h.is_skt()?;
    let (step, j_nil, g1) = family_summary(&alg, &j)?;
    let mut text = format!(
        "family 2: {}\n",
        params_text(Family2Params::NAMES, p.to_array())
    );
    for (k, r) in residuals.iter().enumerate() {
        let _ = writeln!(text, "  equation {}: {}", k + 1, fmt_c(*r));
    }
    let _ = writeln!(
        text,
        "standard metric SKT: {skt} (residual {skt_residual:e})"
    );
    let _ = writeln!(
        text,
        "nil step {}, J nilpotent {j_nil}, dim [g,g] {g1}",
        step.map_or_else(|| "none".to_string(), |s| s.to_string())
    );
    let out = json!({
        "family": 2,
        "params": params_json(Family2Params::NAMES, p.to_array()),
        "residuals": residuals.iter().map(|z| c_json(*z)).collect::<Vec<_>>(),
        "skt": skt,
        "skt_residual": skt_residual,
        "nil_step": step,
        "j_nilpotent": j_nil,
        "derived_dim": g1,
    });
    Ok(Report::answered(text, out))
}

fn hkt(e: &Entry) -> anyhow::Result<Report> {
    let [j1, j2, j3] = e
        .hypercomplex
        .clone()
        .ok_or_else(|| input_error(format!("`{}` has no hypercomplex triple", e.name)))?;
    let dim = e.algebra.dim();
    let g = e
        .metric
        .clone()
        .unwrap_or_else(|| RMatrix::identity(dim, dim));
    let abelian = families::abelian_hypercomplex_check(&e.algebra, &j1, &j2, &j3)?;
    let report = families::hkt_residual(&e.algebra, &j1, &j2, &j3, &g)?;
    let tol = skt_core::TOL_EQ;
    let (is_hkt, strong) = (report.is_hkt(tol), report.is_strong(tol));
    let kind = match (is_hkt, strong) {
        (true, true) => "strong",
        (true, false) => "weak",
        _ => "none",
    };
    let mut text = format!("{}:\n", e.name);
    let _ = writeln!(
        text,
        "abelian hypercomplex: {} (residual {:e})",
        abelian.abelian, abelian.residual
    );
    let _ = writeln!(
        text,
        "HKT: {is_hkt} (residual {:e}), |dc| = {:e}: {kind}",
        report.residual, report.dc_norm
    );
    let out = json!({
        "name": e.name,
        "abelian": abelian.abelian,
        "abelian_residual": abelian.residual,
        "weak_hkt_from_abelian": abelian.weak_hkt,
        "hkt": is_hkt,
        "hkt_residual": report.residual,
        "dc_norm": report.dc_norm,
        "kind": kind,
        "tolerance": tol,
    });
    Ok(Report::answered(text, out))
}

fn catalogue_command(c: &CatalogueCommand) -> anyhow::Result<Report> {
    match c {
        CatalogueCommand::List => {
            let mut text = String::new();
            let mut items = Vec::new();
            for name in catalogue::NAMES {
                let e = catalogue::get(name)?;
                let _ = writeln!(text, "{name:<12} dim {:<3} {}", e.algebra.dim(), e.source);
                items.push(json!({"name": name, "dim": e.algebra.dim(), "source": e.source}));
            }
            let _ = writeln!(
                text,
                "{:<12} parametric: family1:<B1=..,..>, family2:<F1=..,..>, torus-<2n>",
                "hooks"
            );
            Ok(Report::answered(text, json!({"entries": items})))
        }
        CatalogueCommand::Show { name } => {
            let e = load(&format!("catalogue:{name}"))?;
            let mut text = format!("{} ({}), dim {}\n", e.name, e.source, e.algebra.dim());
            text.push_str(&format_equations(&e.algebra));
            if let Some(j) = &e.complex_structure {
                let _ = writeln!(text, "J:");
                for r in 0..j.dim() {
                    let row: Vec<String> = (0..j.dim())
                        .map(|c| format!("{:>3}", clean(j.matrix()[(r, c)])))
                        .collect();
                    let _ = writeln!(text, "  {}", row.join(" "));
                }
            }
            let doc = AlgebraDocument::from_entry(&e);
            Ok(Report::answered(text, serde_json::to_value(&doc)?))
        }
        CatalogueCommand::Export { name } => Ok(export_report(load(&format!("catalogue:{name}"))?)),
    }
}

/// `main` body; kept here so tests can drive the binary logic directly.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    run(args, &mut out, &mut err)
}
