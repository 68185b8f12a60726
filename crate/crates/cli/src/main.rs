mod error;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use suspla::bialgebra::{
    check_bialgebra, check_pgc, gp_lie, is_cocommutative, is_gpg, is_left_sided, is_torsion_free_bialgebra, rigid_violations, PresentedBialgebra,
};
use suspla::dyer_lashof::{DlElement, DyerLashof, Generator, KAdicFiltration, Monomial};
use suspla::enveloping::{assoc_graded, assoc_graded_z, build_w, build_z};
use suspla::milnor_moore::{sample_adjunction, verify_mm_left_sided, verify_mm_torsion_free};
use suspla::monoid::DegreeWindow;
use suspla::suspensive::SuspensiveLieAlgebra;

use error::{CliError, Status};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "suspla", version, about = "Suspensive Lie algebras, rigid bialgebras and Dyer-Lashof algebras")]
struct Cli {
    /// Report format; documents default to json, checks to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    W,
    Z,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Tf,
    Ls,
}

#[derive(Subcommand)]
enum Command {
    /// Check a Lie algebra or bialgebra document.
    Check {
        file: PathBuf,
        #[arg(long)]
        window: Option<u32>,
    },
    /// Generalized primitives of a bialgebra.
    Gp { file: PathBuf },
    /// Build W(L) or Z(L).
    Envelope {
        construction: Construction,
        file: PathBuf,
        #[arg(long)]
        window: Option<u32>,
        #[arg(long)]
        lie_cap: Option<usize>,
    },
    /// Associated graded of W(L) or Z(L) for the Lie filtration.
    Graded {
        construction: Construction,
        file: PathBuf,
        #[arg(long)]
        window: Option<u32>,
        #[arg(long)]
        lie_cap: Option<usize>,
    },
    /// Verify a Milnor-Moore equivalence on a truncation.
    Mm {
        theorem: Theorem,
        file: PathBuf,
        #[arg(long)]
        window: Option<u32>,
        #[arg(long)]
        lie_cap: Option<usize>,
        /// Number of sampled endomorphisms for the adjunction check.
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Dyer-Lashof algebra computations.
    Dl {
        #[command(subcommand)]
        op: DlCommand,
    },
}

#[derive(Subcommand)]
enum DlCommand {
    /// Adem normal form of a monomial.
    Normalize {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        e: i64,
        monomial: String,
    },
    /// Admissible basis in one internal degree.
    Basis {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        e: i64,
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        length_bound: Option<usize>,
    },
    /// Coproduct of a monomial.
    Coproduct {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        e: i64,
        monomial: String,
    },
    /// Product of two classes in the associated graded for the K-adic filtration.
    E0 {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        e: i64,
        x: String,
        y: String,
    },
}

/// A finished run: its status, the report, and optional text overriding
/// the generic rendering.
struct Outcome {
    status: Status,
    report: Map<String, Value>,
    text: Option<String>,
    default_format: Format,
}

impl Outcome {
    fn new(status: Status, report: Value, default_format: Format) -> Self {
        let report = match report {
            Value::Object(map) => map,
            other => {
                let mut map = Map::new();
                map.insert("result".into(), other);
                map
            }
        };
        Outcome {
            status,
            report,
            text: None,
            default_format,
        }
    }

    fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports are serializable")
}

/// The report of a check, or the error it stopped on.
fn attempt<T: Serialize, E: Into<CliError>>(r: Result<T, E>) -> Value {
    match r {
        Ok(v) => to_value(v),
        Err(e) => {
            let e: CliError = e.into();
            json!({ "status": e.status.label(), "error": e.message })
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::schema(format!("{}: {e}", path.display())))
}

fn load_lie(path: &Path) -> Result<SuspensiveLieAlgebra, CliError> {
    Ok(SuspensiveLieAlgebra::from_json(&read(path)?)?)
}

/// Finite monoids use every element. Over the free monoid the bound comes
/// from the flag, else the document's data window, else the top degree of a
/// basis known to be complete.
fn window_for(lie: &SuspensiveLieAlgebra, flag: Option<u32>) -> Result<DegreeWindow, CliError> {
    let m = lie.monoid();
    if m.is_finite() {
        return Ok(m.enumerate_window(0)?);
    }
    let top = match flag.or(lie.data_window()) {
        Some(top) => top,
        None => {
            let mut top = 0;
            for b in &lie.to_doc().basis {
                top = top.max(m.parse_element(&b.degree)?.0);
            }
            top
        }
    };
    Ok(m.enumerate_window(top as i64)?)
}

fn window_names(lie: &SuspensiveLieAlgebra, window: &DegreeWindow) -> Vec<String> {
    window.iter().map(|d| lie.monoid().name(d)).collect()
}

fn check(file: &Path, window: Option<u32>) -> Result<Outcome, CliError> {
    let text = read(file)?;
    let doc: Value = serde_json::from_str(&text)?;
    if doc.get("mult").is_some() || doc.get("comult").is_some() {
        return check_bialgebra_doc(&text);
    }
    let lie = SuspensiveLieAlgebra::from_json(&text)?;
    let w = window_for(&lie, window)?;
    let report = lie.check_suspensive(&w)?;
    let status = if !report.violations.is_empty() {
        Status::Fail
    } else if report.indeterminate > 0 {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    let body = json!({
        "kind": "lie",
        "window": window_names(&lie, &w),
        "dim": lie.dim(),
        "suspensive": to_value(&report),
        "torsion": attempt(lie.torsion_flags(&w)),
    });
    Ok(Outcome::new(status, body, Format::Text))
}

fn check_bialgebra_doc(text: &str) -> Result<Outcome, CliError> {
    let a = PresentedBialgebra::from_json(text)?;
    let axioms = check_bialgebra(&a);
    let mut body = Map::new();
    body.insert("kind".into(), json!("bialgebra"));
    body.insert("dim".into(), json!(a.dim()));
    body.insert("axioms".into(), to_value(&axioms));
    body.insert("cocommutative".into(), json!(is_cocommutative(&a)));
    let mut status = if !axioms.passed {
        Status::Fail
    } else if axioms.indeterminate > 0 {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    if a.rigid().is_some() {
        let rigid = rigid_violations(&a)?;
        if !rigid.is_empty() {
            status = Status::Fail;
        }
        body.insert("rigid_violations".into(), json!(rigid));
        body.insert("primitive_grouplike_compatible".into(), attempt(check_pgc(&a)));
        body.insert("generated_by_gp".into(), attempt(is_gpg(&a)));
        body.insert("left_sided".into(), attempt(is_left_sided(&a)));
        body.insert("torsion".into(), attempt(is_torsion_free_bialgebra(&a)));
    }
    Ok(Outcome::new(status, Value::Object(body), Format::Text))
}

fn gp(file: &Path) -> Result<Outcome, CliError> {
    let a = PresentedBialgebra::from_json(&read(file)?)?;
    let gp = gp_lie(&a)?;
    let embedding: Map<String, Value> = gp
        .lie
        .names()
        .iter()
        .zip(&gp.embedding)
        .map(|(n, v)| (n.clone(), json!(a.format(v))))
        .collect();
    let body = json!({
        "lie": to_value(gp.lie.to_doc()),
        "embedding": embedding,
    });
    Ok(Outcome::new(Status::Pass, body, Format::Json))
}

/// `degree -> level -> dim` for a filtered algebra.
fn bidegree_dims(a: &PresentedBialgebra, levels: &[usize], lie: &SuspensiveLieAlgebra, window: &DegreeWindow) -> Map<String, Value> {
    window
        .iter()
        .map(|d| {
            let mut by_level = std::collections::BTreeMap::<usize, usize>::new();
            for i in a.block(d) {
                *by_level.entry(levels[i]).or_default() += 1;
            }
            let inner: Map<String, Value> = by_level.into_iter().map(|(l, n)| (l.to_string(), json!(n))).collect();
            (lie.monoid().name(d), Value::Object(inner))
        })
        .collect()
}

fn degree_dims(a: &PresentedBialgebra, lie: &SuspensiveLieAlgebra, window: &DegreeWindow) -> Map<String, Value> {
    window.iter().map(|d| (lie.monoid().name(d), json!(a.block(d).len()))).collect()
}

fn dims_text(dims: &Map<String, Value>) -> String {
    dims.iter().map(|(d, n)| format!("{d}: {n}")).collect::<Vec<_>>().join("\n")
}

/// The bialgebra document with its Lie filtration and truncation data.
fn envelope_doc(a: &PresentedBialgebra, levels: &[usize], lie: &SuspensiveLieAlgebra, window: &DegreeWindow, cap: usize) -> Map<String, Value> {
    let Value::Object(mut doc) = to_value(a.to_doc()) else {
        unreachable!("bialgebra documents are objects")
    };
    let filtration: Map<String, Value> = a.names().iter().zip(levels).map(|(n, l)| (n.clone(), json!(l))).collect();
    doc.insert("filtration".into(), Value::Object(filtration));
    doc.insert("window".into(), json!(window_names(lie, window)));
    doc.insert("lie_cap".into(), json!(cap));
    doc.insert("degree_dims".into(), Value::Object(degree_dims(a, lie, window)));
    doc
}

fn envelope(construction: Construction, file: &Path, window: Option<u32>, lie_cap: Option<usize>) -> Result<Outcome, CliError> {
    let lie = load_lie(file)?;
    let w = window_for(&lie, window)?;
    let (doc, status) = match construction {
        Construction::W => {
            let env = build_w(&lie, &w, lie_cap)?;
            (envelope_doc(&env.algebra, &env.levels, &lie, &w, env.cap), Status::Pass)
        }
        Construction::Z => {
            let z = build_z(&lie, &w, lie_cap)?;
            let mut doc = envelope_doc(&z.algebra, &z.levels, &lie, &w, z.w.cap);
            doc.insert("ideal_dim".into(), json!(z.ideal_dim));
            doc.insert("bi_ideal_violation".into(), json!(z.bi_ideal_violation));
            doc.insert("warnings".into(), json!(z.warnings));
            let status = if z.bi_ideal_violation.is_some() { Status::Fail } else { Status::Pass };
            (doc, status)
        }
    };
    let text = dims_text(doc["degree_dims"].as_object().expect("degree_dims is an object"));
    Ok(Outcome::new(status, Value::Object(doc), Format::Json).with_text(text))
}

fn graded(construction: Construction, file: &Path, window: Option<u32>, lie_cap: Option<usize>) -> Result<Outcome, CliError> {
    let lie = load_lie(file)?;
    let w = window_for(&lie, window)?;
    let (g, levels, cap) = match construction {
        Construction::W => {
            let env = build_w(&lie, &w, lie_cap)?;
            (assoc_graded(&env)?, env.levels.clone(), env.cap)
        }
        Construction::Z => {
            let z = build_z(&lie, &w, lie_cap)?;
            (assoc_graded_z(&z)?, z.levels.clone(), z.w.cap)
        }
    };
    let mut doc = envelope_doc(&g, &levels, &lie, &w, cap);
    let bi = bidegree_dims(&g, &levels, &lie, &w);
    let text = bi
        .iter()
        .map(|(d, levels)| {
            let parts: Vec<String> = levels.as_object().into_iter().flatten().map(|(l, n)| format!("{l}:{n}")).collect();
            format!("{d}: {}", parts.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n");
    doc.insert("bidegree_dims".into(), Value::Object(bi));
    Ok(Outcome::new(Status::Pass, Value::Object(doc), Format::Json).with_text(text))
}

fn mm(theorem: Theorem, file: &Path, window: Option<u32>, lie_cap: Option<usize>, seed: u64, samples: usize) -> Result<Outcome, CliError> {
    let lie = load_lie(file)?;
    let w = window_for(&lie, window)?;
    let mut report = match theorem {
        Theorem::Tf => verify_mm_torsion_free(&lie, &w, lie_cap)?,
        Theorem::Ls => verify_mm_left_sided(&lie, &w, lie_cap)?,
    };
    let env = build_w(&lie, &w, Some(report.lie_cap))?;
    let adjunction = sample_adjunction(&env, seed, samples)?;
    report.checks.insert("adjunction".into(), adjunction.passed());
    report.witnesses.extend(adjunction.failures.iter().cloned());
    let verdict = report.verdict && adjunction.passed();
    let status = if verdict { Status::Pass } else { Status::Fail };
    let body = json!({
        "theorem": match theorem { Theorem::Tf => "torsion-free", Theorem::Ls => "left-sided" },
        "verdict": status.label(),
        "per_degree_dims": { "unit": to_value(&report.unit), "counit": to_value(&report.counit) },
        "witnesses": report.witnesses,
        "window": report.window,
        "lie_cap": report.lie_cap,
        "checks": report.checks,
        "samples": adjunction.samples,
    });
    Ok(Outcome::new(status, body, Format::Text))
}

/// An algebra whose degree cap covers every monomial given and every
/// tensor factor of their coproducts and products.
fn dl_algebra(p: u64, e: i64, monomials: &[&str]) -> Result<(DyerLashof, Vec<DlElement>), CliError> {
    let probe = DyerLashof::new(p, e, 1)?;
    let parsed = monomials.iter().map(|s| Monomial::parse(s)).collect::<Result<Vec<_>, _>>()?;
    let cap = parsed
        .iter()
        .flat_map(|m| &m.0)
        .map(|g| probe.generator_degree(Generator::q(g.index)).max(0))
        .sum::<i64>()
        .max(1);
    let algebra = DyerLashof::new(p, e, cap)?;
    for m in &parsed {
        algebra.validate(m)?;
    }
    Ok((algebra, parsed.into_iter().map(DlElement::monomial).collect()))
}

fn dl(op: &DlCommand) -> Result<Outcome, CliError> {
    match op {
        DlCommand::Normalize { p, e, monomial } => {
            let (algebra, xs) = dl_algebra(*p, *e, &[monomial])?;
            let n = algebra.normalize(&xs[0])?;
            let body = json!({ "p": p, "e": e, "input": monomial, "terms": n.term_list() });
            Ok(Outcome::new(Status::Pass, body, Format::Text).with_text(n.to_string()))
        }
        DlCommand::Basis { p, e, degree, length_bound } => {
            let algebra = DyerLashof::new(*p, *e, (*degree).max(1))?;
            let basis: Vec<String> = algebra.basis_in_degree(*degree, *length_bound)?.iter().map(ToString::to_string).collect();
            let text = basis.join("\n");
            let body = json!({ "p": p, "e": e, "degree": degree, "length_bound": length_bound, "basis": basis });
            Ok(Outcome::new(Status::Pass, body, Format::Text).with_text(text))
        }
        DlCommand::Coproduct { p, e, monomial } => {
            let (algebra, xs) = dl_algebra(*p, *e, &[monomial])?;
            let d = algebra.coproduct(&xs[0])?;
            let body = json!({ "p": p, "e": e, "input": monomial, "terms": d.term_list() });
            Ok(Outcome::new(Status::Pass, body, Format::Text).with_text(d.to_string()))
        }
        DlCommand::E0 { p, e, x, y } => {
            let (algebra, xs) = dl_algebra(*p, *e, &[x, y])?;
            let filt = KAdicFiltration::new(&algebra)?;
            let prod = filt.e0_multiply(&xs[0], &xs[1])?;
            let text = format!("{} in degree {} at level {}", prod.value, prod.degree, prod.level);
            let body = json!({
                "p": p, "e": e, "x": x, "y": y,
                "degree": prod.degree, "level": prod.level, "terms": prod.value.term_list(),
            });
            Ok(Outcome::new(Status::Pass, body, Format::Text).with_text(text))
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { file, window } => check(file, *window),
        Command::Gp { file } => gp(file),
        Command::Envelope {
            construction,
            file,
            window,
            lie_cap,
        } => envelope(*construction, file, *window, *lie_cap),
        Command::Graded {
            construction,
            file,
            window,
            lie_cap,
        } => graded(*construction, file, *window, *lie_cap),
        Command::Mm {
            theorem,
            file,
            window,
            lie_cap,
            samples,
        } => mm(*theorem, file, *window, *lie_cap, cli.seed, *samples),
        Command::Dl { op } => dl(op),
    }
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(m) if !m.is_empty() => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(v))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar_text(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(value))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(", "),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

fn render(outcome: &Outcome, format: Format, seed: u64) -> String {
    let mut report = outcome.report.clone();
    report.insert("status".into(), json!(outcome.status.label()));
    report.insert("version".into(), json!(VERSION));
    report.insert("seed".into(), json!(seed));
    match format {
        Format::Json => serde_json::to_string_pretty(&Value::Object(report)).expect("reports are serializable") + "\n",
        Format::Text => match &outcome.text {
            Some(text) => format!("{text}\n"),
            None => {
                let mut out = String::new();
                render_text(&Value::Object(report), 0, &mut out);
                out
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Schema as u8 } else { 0 });
        }
    };
    let outcome = run(&cli).unwrap_or_else(|e| {
        eprintln!("suspla: {e}");
        let mut body = json!({ "error": e.message });
        if let Some(w) = e.witness {
            body["witnesses"] = json!([w]);
        }
        Outcome::new(e.status, body, Format::Text)
    });
    let format = cli.format.unwrap_or(outcome.default_format);
    let rendered = render(&outcome, format, cli.seed);
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("suspla: {}: {e}", path.display());
                return ExitCode::from(Status::Schema as u8);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(outcome.status as u8)
}
