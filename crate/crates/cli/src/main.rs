use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use specgap::bounds::{bound_report, to_f64};
use specgap::certify::{
    self, certify_min_degree, certify_non_complete, lemma_grid, reverify, SLACK_TOL,
};
use specgap::format::parse_auto;
use specgap::graph::Graph;
use specgap::harness::{random_sweep, sweep, Check, SweepConfig, SweepReport};
use specgap::rigidity::{classify_equality, edge_removal_demo, equality_eigenbasis, VerdictKind};
use specgap::spectral::{spectrum, MULTIPLICITY_TOL};

#[derive(Parser)]
#[command(
    name = "specgap",
    version,
    about = "Largest normalized Laplacian eigenvalue: bounds, certificates, sweeps"
)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sorted spectrum of the normalized Laplacian.
    Spectrum { file: PathBuf },
    /// Every applicable lower bound next to the computed λ_n.
    Bounds { file: PathBuf },
    /// Build a witness certificate and audit it pointwise.
    Certify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::NonComplete)]
        method: MethodArg,
        /// Serialize the certificate and re-check it from the record alone.
        #[arg(long)]
        verify: bool,
    },
    /// Decide whether the graph attains λ_n = (n+1)/(n-1).
    Classify { file: PathBuf },
    /// Exhaustive sweep over all labeled graphs, or a seeded random sweep with --random.
    Sweep {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// Comma-separated subset of non_complete,equality,min_degree,classical,bipartite,spectral,records.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Allow n = 8 (hours).
        #[arg(long)]
        long_run: bool,
        /// Random connected graphs on this many vertices instead of enumeration.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Add each missing edge to two K_k sharing a vertex.
    Counterexample {
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Evaluate the minimum-degree lemma on its whole integer domain up to n_max.
    Lemma {
        #[arg(long, default_value_t = 200)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// (n+1)/(n-1), for non-complete graphs.
    #[value(name = "non-complete", alias = "thm1")]
    NonComplete,
    /// 1 + 1/sqrt(d(n-1-d)) with d the minimum degree.
    #[value(name = "min-degree", alias = "thm3")]
    MinDegree,
}

struct Outcome {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

fn outcome<T: Serialize>(text: String, value: &T, ok: bool) -> Result<Outcome, String> {
    let json = serde_json::to_value(value).map_err(|e| e.to_string())?;
    Ok(Outcome { text, json, ok })
}

fn read_graph(path: &PathBuf) -> Result<Graph, String> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    parse_auto(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_spectrum(g: &Graph) -> Result<Outcome, String> {
    let sp = spectrum(g).map_err(|e| e.to_string())?;
    let mut text = String::new();
    for (v, m) in sp.grouped(MULTIPLICITY_TOL) {
        // Roundoff below zero would print as -0.000000000000.
        let v = if v.abs() < 1e-12 { 0.0 } else { v };
        let _ = writeln!(text, "{v:.12}  x{m}");
    }
    let _ = writeln!(text, "lambda_n = {:.12}", sp.lambda_max());
    let _ = writeln!(
        text,
        "components = {}, residual = {:.2e}",
        sp.components,
        sp.max_residual()
    );
    outcome(text, &sp.record(), true)
}

fn cmd_bounds(g: &Graph) -> Result<Outcome, String> {
    let r = bound_report(g, true).map_err(|e| e.to_string())?;
    let violations = r.violations(1e-9);
    let mut text = format!(
        "n = {}, m = {}, d_min = {}, max degree = {}\n",
        r.n, r.m, r.d_min, r.delta
    );
    for (kind, b) in r.present() {
        let exact = b.exact.map(|q| format!(" = {q}")).unwrap_or_default();
        let _ = writeln!(text, "{:<12} {:.12}{exact}", format!("{kind:?}"), b.value);
    }
    let _ = writeln!(text, "best         {:?} {:.12}", r.best_kind, r.best.value);
    if let Some(l) = r.lambda_n {
        let _ = writeln!(text, "lambda_n     {l:.12}");
    }
    for (k, v) in &violations {
        let _ = writeln!(text, "VIOLATION: {k:?} bound {v} exceeds lambda_n");
    }
    outcome(text, &r, violations.is_empty())
}

#[derive(Serialize)]
struct CertifyJson {
    certificate: certify::CertificateRecord,
    lambda_n: f64,
    min_slack: f64,
    audit_holds: bool,
    reverification: Option<certify::Reverification>,
}

fn cmd_certify(g: &Graph, method: MethodArg, verify: bool) -> Result<Outcome, String> {
    let (cert, audit) = match method {
        MethodArg::NonComplete => certify_non_complete(g),
        MethodArg::MinDegree => certify_min_degree(g),
    }
    .map_err(|e| e.to_string())?;
    let lambda = spectrum(g).map_err(|e| e.to_string())?.lambda_max();
    let record = cert.record(g, &audit);
    let rev = if verify {
        let s = serde_json::to_string(&record).map_err(|e| e.to_string())?;
        let back: certify::CertificateRecord =
            serde_json::from_str(&s).map_err(|e| e.to_string())?;
        Some(reverify(&back).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let holds = audit.holds(SLACK_TOL);
    let sound = holds && cert.rayleigh <= lambda + 1e-9 && rev.as_ref().is_none_or(|r| r.valid);

    let mut text = format!("method    {:?}", cert.method);
    if let Some(c) = cert.closing {
        let _ = write!(text, " (closing {c:?})");
    }
    text.push('\n');
    let exact = cert
        .bound
        .exact
        .map(|q| format!(" = {q}"))
        .unwrap_or_default();
    let _ = writeln!(text, "bound     {:.4}{exact}", cert.bound.value);
    if cert.component_bound != cert.bound {
        let _ = writeln!(text, "component {:.4}", cert.component_bound.value);
    }
    if let Some((v, w)) = cert.pair {
        let _ = writeln!(
            text,
            "pair      ({v}, {w}), common {:?}, A = {}",
            cert.common.to_vec(),
            cert.a
        );
    }
    if let Some(eta) = cert.eta {
        let _ = writeln!(text, "eta       {eta:.6}");
    }
    let _ = writeln!(text, "witness   {:?}", cert.witness.0);
    let _ = writeln!(text, "rayleigh  {:.4}", cert.rayleigh);
    let _ = writeln!(text, "lambda_n  {lambda:.4}");
    let _ = writeln!(
        text,
        "min slack {:.3e} ({})",
        audit.min_slack(),
        if holds { "holds" } else { "FAILS" }
    );
    if let Some(r) = &rev {
        let _ = writeln!(text, "re-verify {}", if r.valid { "ok" } else { "FAILED" });
        for p in &r.problems {
            let _ = writeln!(text, "  {p}");
        }
    }
    let json = CertifyJson {
        certificate: record,
        lambda_n: lambda,
        min_slack: audit.min_slack(),
        audit_holds: holds,
        reverification: rev,
    };
    outcome(text, &json, sound)
}

#[derive(Serialize)]
struct ClassifyJson {
    verdict: specgap::rigidity::RigidityVerdict,
    lambda_n: f64,
    target: f64,
    spectral_equality: bool,
    eigenbasis: Option<specgap::rigidity::EqualityEigenbasis>,
    note: Option<String>,
}

fn cmd_classify(g: &Graph) -> Result<Outcome, String> {
    let verdict = classify_equality(g).map_err(|e| e.to_string())?;
    let n = g.n();
    let lambda = spectrum(g).map_err(|e| e.to_string())?.lambda_max();
    let target = if n >= 3 {
        (n as f64 + 1.0) / (n as f64 - 1.0)
    } else {
        f64::NAN
    };
    let spectral_equality = (lambda - target).abs() <= 1e-9;
    let mut text = verdict.tag().to_string();
    let mut note = None;
    match &verdict.kind {
        VerdictKind::SingleEdgeComplement { v, w } => {
            let _ = write!(text, ": missing edge ({v}, {w})");
            note = Some(format!(
                "remaining eigenvalue is n/(n-1) = {}/{} by the trace identity, not n/(n+1)",
                n,
                n - 1
            ));
        }
        VerdictKind::BalancedBipartiteComplement { p_v, p_w, center } => {
            let _ = write!(
                text,
                ": parts {p_v:?} and {p_w:?} of size {}, center {center}",
                p_v.len()
            );
        }
        VerdictKind::NotEquality => {}
    }
    text.push('\n');
    if !verdict.removed_isolated.is_empty() {
        let _ = writeln!(
            text,
            "universal vertices dropped from the complement: {:?}",
            verdict.removed_isolated
        );
    }
    let _ = writeln!(text, "lambda_n = {lambda:.12}, (n+1)/(n-1) = {target:.12}");
    let eigenbasis = if verdict.is_equality() {
        let b = equality_eigenbasis(g, &verdict).map_err(|e| e.to_string())?;
        let parts: Vec<String> = b
            .multiplicities()
            .iter()
            .map(|(q, m)| format!("{q} x{m}"))
            .collect();
        let _ = writeln!(
            text,
            "spectrum from explicit eigenfunctions: {}",
            parts.join(", ")
        );
        Some(b)
    } else {
        None
    };
    if let Some(s) = &note {
        let _ = writeln!(text, "note: {s}");
    }
    let ok = spectral_equality == verdict.is_equality();
    if !ok {
        let _ = writeln!(text, "VIOLATION: classifier and spectrum disagree");
    }
    let json = ClassifyJson {
        verdict,
        lambda_n: lambda,
        target,
        spectral_equality,
        eigenbasis,
        note,
    };
    outcome(text, &json, ok)
}

fn sweep_text(r: &SweepReport) -> String {
    let mut text = format!("{} sweep n = {}..={}\n", r.mode, r.n_min, r.n_max);
    let _ = writeln!(
        text,
        "{:>3} {:>9} {:>9} {:>7} {:>7} {:>9}",
        "n", "scanned", "connected", "single", "balanced", "certs"
    );
    for l in &r.levels {
        let _ = writeln!(
            text,
            "{:>3} {:>9} {:>9} {:>7} {:>7} {:>9}",
            l.n,
            l.scanned,
            l.connected,
            l.single_edge_complement,
            l.balanced_bipartite_complement,
            l.certificates
        );
    }
    let _ = writeln!(
        text,
        "graphs {} (enumerated {}), worst slack {:.3e}, max residual {:.3e}, {:.1}s",
        r.graphs_scanned, r.graphs_enumerated, r.worst_slack, r.max_residual, r.runtime_seconds
    );
    for v in r.violations.iter().take(20) {
        let _ = writeln!(
            text,
            "VIOLATION {}: {} (observed {}, expected {})",
            v.graph6, v.claim, v.observed, v.expected
        );
    }
    let _ = writeln!(text, "{} violations", r.violation_count);
    text
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    n_min: usize,
    n_max: usize,
    checks: Option<Vec<String>>,
    long_run: bool,
    random: Option<usize>,
    trials: usize,
    seed: u64,
) -> Result<Outcome, String> {
    let r = if let Some(n) = random {
        random_sweep(n, trials, seed).map_err(|e| e.to_string())?
    } else {
        let mut cfg = SweepConfig::new(n_min, n_max);
        cfg.long_run = long_run;
        if let Some(names) = checks {
            cfg.checks = names
                .iter()
                .map(|s| Check::parse(s).ok_or_else(|| format!("unknown check {s:?}")))
                .collect::<Result<_, _>>()?;
        }
        sweep(&cfg).map_err(|e| e.to_string())?
    };
    outcome(sweep_text(&r), &r, r.passed())
}

fn cmd_counterexample(k: usize) -> Result<Outcome, String> {
    let r = edge_removal_demo(k).map_err(|e| e.to_string())?;
    let mut text = format!(
        "two K_{k} sharing a vertex, n = {}: lambda_n = {:.12} (target {} = {:.12})\n",
        r.n,
        r.lambda_base,
        r.target,
        to_f64(r.target)
    );
    for a in &r.additions {
        let _ = writeln!(text, "  + ({}, {}) -> {:.12}", a.u, a.v, a.lambda_n);
    }
    let _ = writeln!(
        text,
        "min increase {:.6}; removing any of these edges lowers lambda_n: {}",
        r.min_increase, r.strictly_decreases
    );
    let ok = r.strictly_decreases && r.base_error <= 1e-10;
    outcome(text, &r, ok)
}

fn cmd_lemma(n_max: usize) -> Result<Outcome, String> {
    if n_max < 3 {
        return Err(format!("--n-max must be at least 3, got {n_max}"));
    }
    let grid = lemma_grid(n_max);
    let mut text = format!(
        "{} points up to n = {n_max}, worst slack {:.3e}\nboundary d_w = n-1-d_v: {} points, max |slack| {:.3e}\n",
        grid.points, grid.worst_slack, grid.boundary_points, grid.boundary_max_abs_slack
    );
    for f in grid.failures.iter().take(20) {
        let _ = writeln!(
            text,
            "FAIL n={} d_v={} d_w={} slack {:.3e}",
            f.n, f.d_v, f.d_w, f.slack
        );
    }
    let _ = writeln!(text, "{} failures", grid.failures.len());
    let ok = grid.failures.is_empty();
    outcome(text, &grid, ok)
}

fn run(cli: Cli) -> Result<Outcome, String> {
    match cli.cmd {
        Cmd::Spectrum { file } => cmd_spectrum(&read_graph(&file)?),
        Cmd::Bounds { file } => cmd_bounds(&read_graph(&file)?),
        Cmd::Certify {
            file,
            method,
            verify,
        } => cmd_certify(&read_graph(&file)?, method, verify),
        Cmd::Classify { file } => cmd_classify(&read_graph(&file)?),
        Cmd::Sweep {
            n_min,
            n_max,
            checks,
            long_run,
            random,
            trials,
            seed,
        } => cmd_sweep(n_min, n_max, checks, long_run, random, trials, seed),
        Cmd::Counterexample { k } => cmd_counterexample(k),
        Cmd::Lemma { n_max } => cmd_lemma(n_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({ "error": e }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
