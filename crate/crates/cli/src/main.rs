use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use contsem_core::discourse::{expand_symbolic, interpret, parse_document, InitialArgs};
use contsem_core::lambda::{
    parse_term, parse_type, pretty, trace, type_of, Signature, Term, TraceStep, DEFAULT_MAX_STEPS,
};
use contsem_core::lexicon::{Lexicon, Profile};
use contsem_core::logic::{reify, simplify, Formula};
use contsem_core::normalize;
use contsem_core::resolver::{report, resolve, AccessReport, ResolveStrategy};

#[derive(Parser)]
#[command(name = "contsem", version, about = "Compile small discourses into logical forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a discourse file (or a term file with `--mode term`).
    Run(RunArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Interpret,
    Symbolic,
    Term,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Resolve {
    Symbolic,
    Recency,
}

#[derive(clap::Args)]
struct RunArgs {
    file: PathBuf,
    /// Overrides the file's `profile` line.
    #[arg(long)]
    profile: Option<Profile>,
    /// Shorthand for `--mode symbolic`.
    #[arg(long)]
    symbolic: bool,
    /// Defaults to `symbolic` for files with a `symbolic` line, else
    /// `interpret`.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Also print the formula with `sel` sites resolved.
    #[arg(long, value_enum)]
    resolve: Option<Resolve>,
    /// Print the raw (unsimplified) formula. On by default.
    #[arg(long, overrides_with = "no_raw")]
    raw: bool,
    #[arg(long)]
    no_raw: bool,
    /// Print the normal-order reduction sequence.
    #[arg(long)]
    trace: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Extra lexicon entries, one `category word` per line.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Use the negation entry that scopes over the rest of the discourse.
    #[arg(long)]
    rejected_negation: bool,
    /// Initial argument terms, in order; replaces the profile's defaults.
    #[arg(long = "init", value_name = "TERM")]
    init: Vec<String>,
}

/// Reported on stderr; exit status 1 for pipeline errors, 2 for usage.
struct Failure(String, u8);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string(), 1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run(args) = cli.command;
    let src = match std::fs::read_to_string(&args.file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            eprintln!("usage: contsem run <FILE> [OPTIONS]  (see contsem run --help)");
            return ExitCode::from(2);
        }
    };
    let result = match (args.symbolic, args.mode) {
        (true, _) => run_discourse(&src, &args, Some(Mode::Symbolic)),
        (false, Some(Mode::Term)) => run_term(&src, &args),
        (false, mode) => run_discourse(&src, &args, mode),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(msg, code)) => {
            eprintln!("error: {}: {msg}", args.file.display());
            ExitCode::from(code)
        }
    }
}

#[derive(Default)]
struct Output {
    fields: Vec<(&'static str, String, Value)>,
}

impl Output {
    fn push(&mut self, key: &'static str, text: String, value: Value) {
        self.fields.push((key, text, value));
    }

    fn render(self, format: Format, labels: &[(&str, &str)]) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for (key, text, _) in &self.fields {
                    let label = labels.iter().find(|(k, _)| k == key).map_or(*key, |(_, l)| l);
                    if text.contains('\n') {
                        let _ = writeln!(out, "{label}:");
                        for line in text.lines() {
                            let _ = writeln!(out, "  {line}");
                        }
                    } else {
                        let _ = writeln!(out, "{label}: {text}");
                    }
                }
                out
            }
            Format::Json => {
                let map: serde_json::Map<String, Value> =
                    self.fields.into_iter().map(|(k, _, v)| (k.to_string(), v)).collect();
                let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json serializes");
                s.push('\n');
                s
            }
        }
    }
}

const LABELS: &[(&str, &str)] = &[
    ("composed_term", "composed"),
    ("trace", "trace"),
    ("normal_form", "normal"),
    ("raw_formula", "raw"),
    ("simplified_formula", "simplified"),
    ("access_reports", "report"),
    ("resolved_formula", "resolved"),
    ("expansion", "expansion"),
    ("term", "term"),
    ("type", "type"),
];

fn formula_value(f: &Formula) -> Value {
    json!({ "text": f.to_string(), "ast": f.to_json() })
}

fn trace_text(steps: &[TraceStep]) -> String {
    if steps.is_empty() {
        return "(already normal)".to_string();
    }
    steps
        .iter()
        .map(|s| format!("{} at {}: {}", s.index, s.redex, pretty(&s.result)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn trace_value(steps: &[TraceStep]) -> Value {
    Value::Array(
        steps
            .iter()
            .map(|s| json!({ "step": s.index, "redex": s.redex.to_string(), "term": pretty(&s.result) }))
            .collect(),
    )
}

fn push_trace(out: &mut Output, term: &Term, max_steps: usize) -> Result<(), Failure> {
    let steps = trace(term, max_steps)?;
    out.push("trace", trace_text(&steps), trace_value(&steps));
    Ok(())
}

fn push_reports(out: &mut Output, reports: &[AccessReport]) {
    let text = if reports.is_empty() {
        "(no sel sites)".to_string()
    } else {
        reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
    };
    let value = Value::Array(reports.iter().map(AccessReport::to_json).collect());
    out.push("access_reports", text, value);
}

fn run_discourse(src: &str, args: &RunArgs, mode: Option<Mode>) -> Result<String, Failure> {
    let doc = parse_document(src)?;
    let mode = mode.unwrap_or(if doc.symbolic { Mode::Symbolic } else { Mode::Interpret });
    let profile = args
        .profile
        .or(doc.profile)
        .ok_or_else(|| Failure("no profile: add a `profile` line or pass --profile".into(), 2))?;
    let mut lexicon = Lexicon::standard(profile);
    if let Some(path) = &args.lexicon {
        let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display()), 2))?;
        lexicon = lexicon.extended(&text)?;
    }
    if args.rejected_negation {
        lexicon = lexicon.with_rejected_negation()?;
    }
    let tree = doc.tree(&lexicon)?;
    let mut out = Output::default();

    if mode == Mode::Symbolic {
        let t = expand_symbolic(&tree, &lexicon, args.max_steps)?;
        if args.trace {
            push_trace(&mut out, &contsem_core::compose(&tree, &lexicon)?, args.max_steps)?;
        }
        out.push("expansion", pretty(&t), Value::String(pretty(&t)));
        return Ok(out.render(args.format, LABELS));
    }

    let init = if args.init.is_empty() {
        InitialArgs::default_for(profile)
    } else {
        let texts: Vec<&str> = args.init.iter().map(String::as_str).collect();
        InitialArgs::parse(profile, &texts, &lexicon.signature())?
    };
    let result = interpret(&tree, &lexicon, &init, args.max_steps)?;
    let composed = pretty(&result.composed);
    out.push("composed_term", composed.clone(), Value::String(composed));
    if args.trace {
        push_trace(&mut out, &result.applied, args.max_steps)?;
    }
    let normal = pretty(&result.normal);
    out.push("normal_form", normal.clone(), Value::String(normal));
    if !args.no_raw {
        out.push("raw_formula", result.raw.to_string(), formula_value(&result.raw));
    } else if args.format == Format::Json {
        out.push("raw_formula", String::new(), Value::Null);
    }
    out.push("simplified_formula",
        result.simplified.to_string(),
        formula_value(&result.simplified),
    );
    push_reports(&mut out, &report(&result.simplified));
    match args.resolve {
        Some(r) => {
            let strategy = match r {
                Resolve::Symbolic => ResolveStrategy::Symbolic,
                Resolve::Recency => ResolveStrategy::Recency,
            };
            let resolved = resolve(&result.simplified, strategy)?;
            out.push("resolved_formula", resolved.to_string(), formula_value(&resolved));
        }
        None if args.format == Format::Json => out.push("resolved_formula", String::new(), Value::Null),
        None => {}
    }
    Ok(out.render(args.format, LABELS))
}

/// Term files: `const name : type` declarations, then `term = ...`, which
/// runs to the end of the file.
fn run_term(src: &str, args: &RunArgs) -> Result<String, Failure> {
    let mut sig = Signature::new();
    let mut term_src = None;
    for (idx, line) in src.lines().enumerate() {
        let code = line.split('#').next().unwrap_or("").trim();
        if let Some(rest) = code.strip_prefix("term") {
            let Some(body) = rest.trim_start().strip_prefix('=') else {
                return Err(Failure(format!("line {}: expected `term = ...`", idx + 1), 1));
            };
            let tail: Vec<&str> = std::iter::once(body).chain(src.lines().skip(idx + 1)).collect();
            term_src = Some((tail.join("\n"), idx + 1));
            break;
        }
        if code.is_empty() {
            continue;
        }
        let decl = code
            .strip_prefix("const")
            .and_then(|r| r.split_once(':'))
            .ok_or_else(|| Failure(format!("line {}: expected `const name : type`", idx + 1), 1))?;
        let ty = parse_type(decl.1.trim()).map_err(|e| Failure(format!("line {}: {e}", idx + 1), 1))?;
        sig.declare(decl.0.trim(), ty);
    }
    let (text, line) = term_src.ok_or_else(|| Failure("missing `term = ...`".into(), 1))?;
    let term = parse_term(&text, &sig).map_err(|e| Failure(format!("term starting on line {line}: {e}"), 1))?;
    let ty = type_of(&term)?;
    let mut out = Output::default();
    out.push("term", pretty(&term), Value::String(pretty(&term)));
    out.push("type", ty.to_string(), Value::String(ty.to_string()));
    if args.trace {
        push_trace(&mut out, &term, args.max_steps)?;
    }
    let nf = normalize(&term, args.max_steps)?;
    out.push("normal_form", pretty(&nf), Value::String(pretty(&nf)));
    if ty == contsem_core::SemType::T {
        let raw = reify(&nf)?;
        let simplified = simplify(&raw);
        if !args.no_raw {
            out.push("raw_formula", raw.to_string(), formula_value(&raw));
        }
        out.push("simplified_formula", simplified.to_string(), formula_value(&simplified));
        push_reports(&mut out, &report(&simplified));
    }
    Ok(out.render(args.format, LABELS))
}
