//! `lts` — controllability checks and flow certification for driftless
//! systems on matrix symmetric spaces.
//!
//! Exit codes: 0 = controllable / check verified, 1 = not controllable
//! / check failed, 2 = usage or input error. The report is always
//! written before exiting.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use lts_core::catalog::{self, CatalogEntry};
use lts_core::engine::{
    chow_check, lts_closure, minimal_generators, verify_lts_axioms, AxiomOptions, AxiomReport,
    ClosureOptions, ClosureReport, GeneratorSet, SearchMode,
};
use lts_core::flow::{gamma_tangency, phi_jacobian_rank, word_tangency, TangencyReport};
use lts_core::{BracketWord, Error, Matrix};

const DEFAULT_T_GRID: [f64; 5] = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];

#[derive(Parser)]
#[command(
    name = "lts",
    version,
    about = "Lie-triple-system controllability on matrix symmetric spaces"
)]
struct Cli {
    /// Rank tolerance (overrides the LTS_TOL environment variable;
    /// default 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Annotate reports with published bracket values wherever they
    /// diverge from the computed ones.
    #[arg(long, global = true)]
    paper_mode: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide global controllability of the selected control system.
    Check(InputArgs),
    /// Run the closure to stabilization and report the full basis.
    Close(InputArgs),
    /// Search for minimal generating control subsets.
    MinControls {
        #[command(flatten)]
        input: InputArgs,
        /// Search strategy.
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
    },
    /// Verify the Lie-triple-system identities on the ambient basis.
    VerifyAxioms {
        #[command(flatten)]
        input: InputArgs,
        /// Scan the derivation identity even above the quintuple cap.
        #[arg(long)]
        lift_cap: bool,
    },
    /// Numerical flow certificates.
    #[command(subcommand)]
    FlowCert(FlowCert),
    /// Built-in symmetric-space bases.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Greedy,
}

#[derive(Subcommand)]
enum FlowCert {
    /// Convergence of the ten-factor commutator curve toward the
    /// double bracket, over all generator triples.
    Gamma {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated decreasing times, e.g. "1e-1,3e-2,1e-2".
        #[arg(long)]
        t_grid: Option<String>,
        /// Fitted convergence order required to pass.
        #[arg(long, default_value_t = 0.9)]
        min_order: f64,
    },
    /// Tangency of one word flow: (Psi^I_t - id)/t^|I| against the
    /// word's bracket value.
    Word {
        #[command(flatten)]
        input: InputArgs,
        /// The bracket word, e.g. "[[2,4],5]".
        #[arg(long)]
        word: String,
        #[arg(long)]
        t_grid: Option<String>,
        #[arg(long, default_value_t = 0.9)]
        min_order: f64,
    },
    /// Rank of the chained-flow Jacobian built from the
    /// controllability certificate.
    Phi {
        #[command(flatten)]
        input: InputArgs,
        /// Central-difference step.
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List the built-in bases.
    List,
    /// Emit one entry with its matrices.
    Export {
        id: String,
        /// Screw pitch, required for se3_lts_2.
        #[arg(long)]
        pitch: Option<f64>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Catalog id (see `lts catalog list`).
    #[arg(long, conflicts_with = "file")]
    catalog: Option<String>,

    /// JSON file: {"generators": [matrix…], "target_dim": n,
    /// "labels": [..]} or a bare array of matrices.
    #[arg(long)]
    file: Option<PathBuf>,

    /// Comma-separated generator labels (or indices) to use as
    /// controls, e.g. "a1,a3,a4". Defaults to the entry's suggested
    /// controls (catalog) or all generators (file).
    #[arg(long)]
    generators: Option<String>,

    /// Target dimension the closure must reach. Defaults to the
    /// catalog entry's dimension; required for file input.
    #[arg(long)]
    target: Option<usize>,

    /// Screw pitch, required for se3_lts_2.
    #[arg(long)]
    pitch: Option<f64>,

    /// Cap on closure sweeps.
    #[arg(long)]
    max_depth: Option<usize>,
}

/// A resolved control problem: the controls, the ambient family they
/// came from, the target dimension, and the catalog entry if any.
struct Problem {
    gens: GeneratorSet,
    ambient: GeneratorSet,
    labels: Vec<String>,
    target: usize,
    entry: Option<CatalogEntry>,
}

#[derive(Deserialize)]
struct FileInput {
    generators: Vec<Matrix>,
    #[serde(default)]
    target_dim: Option<usize>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

fn input_err(msg: impl Into<String>) -> String {
    msg.into()
}

impl InputArgs {
    fn resolve(&self) -> Result<Problem, String> {
        if let Some(id) = &self.catalog {
            let entry = catalog::get(id, self.pitch).map_err(|e| e.to_string())?;
            let ambient = entry.ambient_set().map_err(|e| e.to_string())?;
            let gens = match &self.generators {
                Some(list) => {
                    let labels: Vec<&str> = list.split(',').map(str::trim).collect();
                    entry.select(&labels).map_err(|e| e.to_string())?
                }
                None => entry.generator_set().map_err(|e| e.to_string())?,
            };
            let target = self.target.unwrap_or(entry.target_dim);
            let labels = entry.labels().iter().map(|s| s.to_string()).collect();
            Ok(Problem {
                gens,
                ambient,
                labels,
                target,
                entry: Some(entry),
            })
        } else if let Some(path) = &self.file {
            let text = fs::read_to_string(path)
                .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
            // Either {"generators": [...], ...} or a bare matrix array.
            let parsed: FileInput = if text.trim_start().starts_with('[') {
                let generators: Vec<Matrix> = serde_json::from_str(&text)
                    .map_err(|e| input_err(format!("malformed JSON in {}: {e}", path.display())))?;
                FileInput {
                    generators,
                    target_dim: None,
                    labels: None,
                }
            } else {
                serde_json::from_str(&text)
                    .map_err(|e| input_err(format!("malformed JSON in {}: {e}", path.display())))?
            };
            let FileInput {
                generators: matrices,
                target_dim,
                labels,
            } = parsed;
            if matrices.is_empty() {
                return Err(input_err("field `generators` must not be empty"));
            }
            let labels: Vec<String> = match labels {
                Some(l) if l.len() == matrices.len() => l,
                Some(_) => {
                    return Err(input_err(
                        "field `labels` must have one entry per generator",
                    ))
                }
                None => (1..=matrices.len()).map(|i| i.to_string()).collect(),
            };
            let ambient =
                GeneratorSet::from_matrices(matrices.clone()).map_err(|e| e.to_string())?;
            let gens = match &self.generators {
                Some(list) => {
                    let wanted: Vec<&str> = list.split(',').map(str::trim).collect();
                    let mut pairs = Vec::new();
                    for w in &wanted {
                        let pos = labels
                            .iter()
                            .position(|l| l == w)
                            .or_else(|| {
                                w.parse::<usize>()
                                    .ok()
                                    .filter(|&i| (1..=matrices.len()).contains(&i))
                                    .map(|i| i - 1)
                            })
                            .ok_or_else(|| input_err(format!("unknown generator `{w}`")))?;
                        pairs.push((pos + 1, matrices[pos].clone()));
                    }
                    GeneratorSet::with_indices(pairs).map_err(|e| e.to_string())?
                }
                None => ambient.clone(),
            };
            let target = self.target.or(target_dim).ok_or_else(|| {
                input_err(
                    "target dimension required: pass --target or set `target_dim` in the file",
                )
            })?;
            Ok(Problem {
                gens,
                ambient,
                labels,
                target,
                entry: None,
            })
        } else {
            Err(input_err("pass --catalog <ID> or --file <PATH>"))
        }
    }
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, String> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("LTS_TOL") {
            Ok(text) => text
                .parse::<f64>()
                .map_err(|e| input_err(format!("LTS_TOL: {e}")))?,
            Err(_) => lts_core::DEFAULT_TOL,
        },
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(input_err(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

fn parse_t_grid(flag: &Option<String>) -> Result<Vec<f64>, String> {
    let Some(text) = flag else {
        return Ok(DEFAULT_T_GRID.to_vec());
    };
    let grid: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| input_err(format!("--t-grid: {e}")))?;
    if grid.is_empty()
        || grid
            .iter()
            .any(|&t| t.is_nan() || t <= 0.0 || !t.is_finite())
    {
        return Err(input_err("--t-grid values must be positive"));
    }
    if grid.windows(2).any(|w| w[0] <= w[1]) {
        return Err(input_err("--t-grid values must be strictly decreasing"));
    }
    Ok(grid)
}

/// Stable JSON: route through `Value` so keys come out sorted.
fn to_sorted_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report serialization")
}

struct Reporter {
    format: Format,
    output: Option<PathBuf>,
}

impl Reporter {
    fn emit(&self, json: &Value, text: &str) -> Result<(), String> {
        let body = match self.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(json).expect("render json");
                s.push('\n');
                s
            }
            Format::Text => text.to_string(),
        };
        match &self.output {
            Some(path) => fs::write(path, body)
                .map_err(|e| input_err(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    }
}

fn paper_claims(entry: &Option<CatalogEntry>) -> Vec<Value> {
    entry
        .as_ref()
        .map(|e| {
            e.claims
                .iter()
                .map(|c| json!({"published": c.published, "computed": c.computed}))
                .collect()
        })
        .unwrap_or_default()
}

fn closure_text(report: &ClosureReport, claims: &[Value], header: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{header}: dim {} of target {} -> {}\n",
        report.dim,
        report.target_dim,
        if report.controllable {
            "controllable"
        } else {
            "NOT controllable"
        }
    ));
    out.push_str(&format!("depth: {}\n", report.depth));
    let words: Vec<String> = report.words.iter().map(|w| w.to_string()).collect();
    out.push_str(&format!("words: {}\n", words.join(", ")));
    for claim in claims {
        out.push_str(&format!(
            "note: published {} | computed {}\n",
            claim["published"].as_str().unwrap_or(""),
            claim["computed"].as_str().unwrap_or("")
        ));
    }
    out
}

fn run_closure(
    cli: &Cli,
    input: &InputArgs,
    header: &str,
    reporter: &Reporter,
) -> Result<u8, String> {
    let problem = input.resolve()?;
    let tol = resolve_tol(cli.tol)?;
    let opts = ClosureOptions {
        tol,
        max_depth: input.max_depth,
    };
    let (report, stabilized) = match lts_closure(&problem.gens, problem.target, &opts) {
        Ok(report) => (report, true),
        Err(Error::DepthExceeded { report, .. }) => (*report, false),
        Err(e) => return Err(e.to_string()),
    };
    let claims = if cli.paper_mode {
        paper_claims(&problem.entry)
    } else {
        Vec::new()
    };
    // On a failed catalog check, name the ambient directions the
    // closure never reached: the witness of the defect.
    let unreached: Vec<String> = if report.controllable {
        Vec::new()
    } else {
        let span = report.basis_set(tol).map_err(|e| e.to_string())?;
        problem
            .ambient
            .iter()
            .filter(|g| !matches!(span.in_span(&g.matrix), Ok((true, _))))
            .map(|g| {
                problem
                    .entry
                    .as_ref()
                    .and_then(|e| {
                        e.elements
                            .iter()
                            .find(|el| el.index == g.index)
                            .map(|el| el.label.clone())
                    })
                    .unwrap_or_else(|| g.index.to_string())
            })
            .collect()
    };
    let mut json = to_sorted_json(&report);
    if cli.paper_mode {
        json["paper_claims"] = Value::Array(claims.clone());
    }
    if !stabilized {
        json["stabilized"] = Value::Bool(false);
    }
    if !unreached.is_empty() {
        json["unreached"] = serde_json::to_value(&unreached).unwrap();
    }
    let mut text = closure_text(&report, &claims, header);
    if !unreached.is_empty() {
        text.push_str(&format!(
            "unreached ambient directions: {}\n",
            unreached.join(", ")
        ));
    }
    if !stabilized {
        text.push_str("warning: closure did not stabilize within max depth\n");
    }
    reporter.emit(&json, &text)?;
    Ok(if report.controllable && stabilized {
        0
    } else {
        1
    })
}

fn run_min_controls(
    cli: &Cli,
    input: &InputArgs,
    mode: Mode,
    reporter: &Reporter,
) -> Result<u8, String> {
    let problem = input.resolve()?;
    let tol = resolve_tol(cli.tol)?;
    let mode = match mode {
        Mode::Exhaustive => SearchMode::Exhaustive,
        Mode::Greedy => SearchMode::Greedy,
    };
    let subsets = minimal_generators(&problem.ambient, problem.target, mode, tol)
        .map_err(|e| e.to_string())?;
    let label_of = |index: usize| -> String {
        problem
            .entry
            .as_ref()
            .and_then(|e| {
                e.elements
                    .iter()
                    .find(|el| el.index == index)
                    .map(|el| el.label.clone())
            })
            .unwrap_or_else(|| index.to_string())
    };
    let labelled: Vec<Vec<String>> = subsets
        .iter()
        .map(|s| s.iter().map(|&i| label_of(i)).collect())
        .collect();
    let json = json!({
        "mode": match mode { SearchMode::Exhaustive => "exhaustive", SearchMode::Greedy => "greedy" },
        "target_dim": problem.target,
        "minimum_cardinality": subsets.first().map(|s| s.len()),
        "subsets": subsets,
        "subset_labels": labelled,
    });
    let mut text = String::new();
    match subsets.first() {
        Some(first) => {
            text.push_str(&format!(
                "minimum controls: {} (of {} ambient directions)\n",
                first.len(),
                problem.labels.len()
            ));
            for labels in &labelled {
                text.push_str(&format!("  {{{}}}\n", labels.join(", ")));
            }
        }
        None => text.push_str("no generating subset reaches the target dimension\n"),
    }
    reporter.emit(&to_sorted_json(&json), &text)?;
    Ok(if subsets.is_empty() { 1 } else { 0 })
}

fn axiom_text(report: &AxiomReport) -> String {
    let fmt = |name: &str, check: &Option<&lts_core::engine::AxiomCheck>| match check {
        Some(c) if c.max_residual == 0.0 => format!(
            "{name}: {} (residual exactly 0)\n",
            if c.passed { "pass" } else { "FAIL" }
        ),
        Some(c) => format!(
            "{name}: {} (max residual {:.3e} at {:?})\n",
            if c.passed { "pass" } else { "FAIL" },
            c.max_residual,
            c.worst
        ),
        None => format!("{name}: skipped (basis above quintuple cap)\n"),
    };
    let mut out = String::new();
    out.push_str(&fmt("alternation", &Some(&report.alternation)));
    out.push_str(&fmt("cyclic sum", &Some(&report.cyclic)));
    out.push_str(&fmt("derivation", &report.derivation.as_ref()));
    out
}

fn run_verify_axioms(
    cli: &Cli,
    input: &InputArgs,
    lift_cap: bool,
    reporter: &Reporter,
) -> Result<u8, String> {
    let problem = input.resolve()?;
    let tol = resolve_tol(cli.tol)?;
    let basis = problem.ambient.matrices();
    let opts = AxiomOptions {
        tol,
        quintuple_cap: if lift_cap { basis.len() } else { 8 },
    };
    let report = verify_lts_axioms(&basis, &opts).map_err(|e| e.to_string())?;
    let passed = report.all_passed();
    let mut json = to_sorted_json(&report);
    json["passed"] = Value::Bool(passed);
    reporter.emit(&json, &axiom_text(&report))?;
    Ok(if passed { 0 } else { 1 })
}

fn tangency_text(report: &TangencyReport, min_order: f64, exact: bool) -> String {
    if exact {
        return format!(
            "word {}: tangency exact to machine precision\n",
            report.word
        );
    }
    let pairs: Vec<String> = report
        .t_grid
        .iter()
        .zip(&report.residuals)
        .map(|(t, r)| format!("t={t:.1e} residual={r:.3e}"))
        .collect();
    format!(
        "word {}: fitted order {:.3} (needs >= {min_order})\n  {}\n",
        report.word,
        report.fitted_order,
        pairs.join("\n  ")
    )
}

fn machine_exact(report: &TangencyReport) -> bool {
    report.residuals.iter().all(|&r| r <= 1e-12)
}

fn run_flow_gamma(
    cli: &Cli,
    input: &InputArgs,
    t_grid: &Option<String>,
    min_order: f64,
    reporter: &Reporter,
) -> Result<u8, String> {
    let _ = resolve_tol(cli.tol)?;
    let problem = input.resolve()?;
    let grid = parse_t_grid(t_grid)?;
    let n = problem.gens.dim();
    let x = Matrix::identity(n);
    let gens: Vec<_> = problem.gens.iter().collect();
    let mut reports = Vec::new();
    let mut all_pass = true;
    for a in &gens {
        for b in &gens {
            for c in &gens {
                let bracket = lts_core::double_bracket(&a.matrix, &b.matrix, &c.matrix)
                    .map_err(|e| e.to_string())?;
                if bracket.frobenius_norm() <= 1e-9 {
                    continue; // degenerate triple, nothing to certify
                }
                let label = format!("[[{},{}],{}]", a.index, b.index, c.index);
                let report = gamma_tangency(&label, &a.matrix, &b.matrix, &c.matrix, &x, &grid)
                    .map_err(|e| e.to_string())?;
                all_pass &= machine_exact(&report) || report.fitted_order >= min_order;
                reports.push(report);
            }
        }
    }
    if reports.is_empty() {
        return Err(input_err(
            "all generator triples have vanishing double brackets; nothing to certify",
        ));
    }
    let json = json!({
        "min_order": min_order,
        "passed": all_pass,
        "reports": reports,
    });
    let text: String = reports
        .iter()
        .map(|r| tangency_text(r, min_order, machine_exact(r)))
        .collect();
    reporter.emit(&to_sorted_json(&json), &text)?;
    Ok(if all_pass { 0 } else { 1 })
}

fn run_flow_word(
    cli: &Cli,
    input: &InputArgs,
    word: &str,
    t_grid: &Option<String>,
    min_order: f64,
    reporter: &Reporter,
) -> Result<u8, String> {
    let _ = resolve_tol(cli.tol)?;
    let problem = input.resolve()?;
    let word: BracketWord = word.parse().map_err(|e: Error| e.to_string())?;
    let grid = parse_t_grid(t_grid)?;
    let x = Matrix::identity(problem.gens.dim());
    let report = word_tangency(&word, &x, &problem.gens, &grid).map_err(|e| e.to_string())?;
    let exact = machine_exact(&report);
    let passed = exact || report.fitted_order >= min_order;
    let mut json = to_sorted_json(&report);
    json["passed"] = Value::Bool(passed);
    json["exact"] = Value::Bool(exact);
    reporter.emit(&json, &tangency_text(&report, min_order, exact))?;
    Ok(if passed { 0 } else { 1 })
}

fn run_flow_phi(cli: &Cli, input: &InputArgs, h: f64, reporter: &Reporter) -> Result<u8, String> {
    let problem = input.resolve()?;
    let tol = resolve_tol(cli.tol)?;
    let chow = chow_check(&problem.gens, problem.target, tol).map_err(|e| e.to_string())?;
    if !chow.controllable {
        let json = json!({
            "controllable": false,
            "certificate": [],
            "dim": chow.report.dim,
            "target_dim": chow.report.target_dim,
        });
        let text = format!(
            "not controllable (dim {} of {}); no certificate to differentiate\n",
            chow.report.dim, chow.report.target_dim
        );
        reporter.emit(&json, &text)?;
        return Ok(1);
    }
    let x = Matrix::identity(problem.gens.dim());
    let rank = phi_jacobian_rank(&chow.certificate, &x, &problem.gens, h, tol)
        .map_err(|e| e.to_string())?;
    let full = rank.rank == chow.certificate.len();
    let words: Vec<String> = chow.certificate.iter().map(|w| w.to_string()).collect();
    let json = json!({
        "controllable": true,
        "full_rank": full,
        "rank": rank.rank,
        "certificate": words,
        "singular_values": rank.singular_values,
        "h": h,
    });
    let text = format!(
        "phi Jacobian rank {} of {} at h={h:.1e} -> {}\nsingular values: {}\n",
        rank.rank,
        words.len(),
        if full { "full rank" } else { "RANK DEFICIENT" },
        rank.singular_values
            .iter()
            .map(|s| format!("{s:.6e}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    reporter.emit(&to_sorted_json(&json), &text)?;
    Ok(if full { 0 } else { 1 })
}

fn entry_json(entry: &CatalogEntry) -> Value {
    json!({
        "id": entry.id,
        "description": entry.description,
        "target_dim": entry.target_dim,
        "labels": entry.labels(),
        "ambient": entry.ambient(),
        "suggested_generators": entry.suggested,
        "verified_alternative": entry.verified_alternative,
        "pitch": entry.pitch,
        "provenance": entry.provenance,
        "paper_claims": entry.claims.iter().map(|c| json!({
            "published": c.published, "computed": c.computed,
        })).collect::<Vec<_>>(),
    })
}

fn run_catalog(cmd: &CatalogCmd, reporter: &Reporter) -> Result<u8, String> {
    match cmd {
        CatalogCmd::List => {
            let entries = catalog::list_entries();
            let json = to_sorted_json(&entries);
            let text: String = entries
                .iter()
                .map(|e| format!("{:<16} dim {:>2}  {}\n", e.id, e.dim, e.description))
                .collect();
            reporter.emit(&json, &text)?;
            Ok(0)
        }
        CatalogCmd::Export { id, pitch } => {
            let entry = catalog::get(id, *pitch).map_err(|e| e.to_string())?;
            let json = entry_json(&entry);
            let mut text = format!(
                "{}: dim {}, elements {{{}}}\n",
                entry.id,
                entry.target_dim,
                entry.labels().join(", ")
            );
            text.push_str(&format!(
                "suggested controls: {{{}}}\n",
                entry.suggested.join(", ")
            ));
            for note in &entry.provenance {
                text.push_str(&format!("note: {note}\n"));
            }
            reporter.emit(&to_sorted_json(&json), &text)?;
            Ok(0)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    let reporter = Reporter {
        format: cli.format,
        output: cli.output.clone(),
    };
    match &cli.command {
        Command::Check(input) => run_closure(cli, input, "check", &reporter),
        Command::Close(input) => run_closure(cli, input, "closure", &reporter),
        Command::MinControls { input, mode } => run_min_controls(cli, input, *mode, &reporter),
        Command::VerifyAxioms { input, lift_cap } => {
            run_verify_axioms(cli, input, *lift_cap, &reporter)
        }
        Command::FlowCert(FlowCert::Gamma {
            input,
            t_grid,
            min_order,
        }) => run_flow_gamma(cli, input, t_grid, *min_order, &reporter),
        Command::FlowCert(FlowCert::Word {
            input,
            word,
            t_grid,
            min_order,
        }) => run_flow_word(cli, input, word, t_grid, *min_order, &reporter),
        Command::FlowCert(FlowCert::Phi { input, h }) => run_flow_phi(cli, input, *h, &reporter),
        Command::Catalog(cmd) => run_catalog(cmd, &reporter),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
