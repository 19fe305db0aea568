//! Command-line front end. Exit codes: 0 success or verdict printed,
//! 1 violation found, 2 usage, parse or validation error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::classifiers::{classify_ideal, PredicateId, PredicateVerdict, SubmoduleClassifier, Witness};
use crate::error::{Error, Result};
use crate::format::parse_structure_file;
use crate::harness::report::{render_fields, render_search, render_verdict, render_verification, ReportFormat};
use crate::harness::{
    build_standard_corpus, describe, search_counterexample, verify_all, Corpus, Expr, Proposition, CORPUS_VERSION,
    DEFAULT_BUDGET,
};
use crate::subobjects::SubobjectKind;

#[derive(Parser, Debug)]
#[command(
    name = "gcoprimary",
    version,
    about = "Checks graded ring and module structures exhaustively"
)]
struct Cli {
    /// Largest carrier whose subobject lattice is enumerated.
    #[arg(long, global = true, default_value_t = 512)]
    max_elements: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Plain)]
    report: ReportFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a structure file.
    Validate { file: PathBuf },
    /// Classify a named ideal or submodule, or the module itself.
    Classify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        predicate: String,
    },
    /// Check propositions over a corpus.
    Verify(VerifyArgs),
    /// Find the first corpus submodule satisfying an expression.
    Search {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Directory of structure files replacing the standard corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `all` is the only suite.
    #[arg(long, value_parser = ["all"], conflicts_with = "prop", required_unless_present = "prop")]
    suite: Option<String>,
    #[arg(long)]
    prop: Option<String>,
    /// Directory of structure files replacing the standard corpus.
    #[arg(long)]
    corpus: Option<PathBuf>,
}

fn file_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into())
}

fn load_corpus(dir: Option<&Path>, cap: usize) -> Result<(Corpus, String)> {
    let Some(dir) = dir else {
        return Ok((build_standard_corpus(cap)?, format!("standard-v{CORPUS_VERSION}")));
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "gstruct"))
        .collect();
    files.sort();
    let entries = files
        .iter()
        .map(|f| {
            let text = std::fs::read_to_string(f)?;
            parse_structure_file(&text, &file_id(f), cap)
        })
        .collect::<Result<_>>()?;
    Ok((Corpus::new(entries), dir.display().to_string()))
}

fn witness_text(w: &Witness, ring: &dyn Fn(usize) -> String, carrier: &dyn Fn(&crate::ElemSet) -> String) -> String {
    match w {
        Witness::Scalars(v) => format!("({})", v.iter().map(|&x| ring(x)).collect::<Vec<_>>().join(",")),
        Witness::PairWithSubmodule { x, y, k } => format!("x={}, y={}, K={}", ring(*x), ring(*y), carrier(k)),
        Witness::Submodule(n) => format!("N={}", carrier(n)),
    }
}

fn classify(file: &Path, target: Option<&str>, predicate: &str, cap: usize, format: ReportFormat) -> Result<String> {
    let text = std::fs::read_to_string(file)?;
    let entry = parse_structure_file(&text, &file_id(file), cap)?;
    let id: PredicateId = predicate.parse()?;
    let m = entry.module();
    let ring = m.ring();
    let ring_label = |x: usize| ring.ring().label(x).to_string();
    let module_set = |s: &crate::ElemSet| describe(&**m, s);
    let ring_set = |s: &crate::ElemSet| describe(&**ring, s);
    let render = |target: &str, v: PredicateVerdict, sets: &dyn Fn(&crate::ElemSet) -> String| {
        let w = v.witness.as_ref().map(|w| witness_text(w, &ring_label, sets));
        render_verdict(target, predicate, v.value, w.as_deref(), format)
    };
    if id == PredicateId::Comultiplication {
        let classifier = SubmoduleClassifier::new(m, cap)?;
        return Ok(render(
            target.unwrap_or("M"),
            classifier.is_comultiplication(),
            &module_set,
        ));
    }
    let name = target.ok_or_else(|| Error::PreconditionViolation("--target is required for this predicate".into()))?;
    let handle = entry
        .find_named(name)
        .ok_or_else(|| Error::PreconditionViolation(format!("no ideal or submodule named `{name}`")))?;
    match (id.ideal(), handle.kind()) {
        (Some(p), SubobjectKind::Ideal) => Ok(render(name, classify_ideal(ring, handle, p)?, &ring_set)),
        (None, SubobjectKind::Submodule) => {
            let p = id.submodule(m)?.expect("submodule predicate");
            let v = SubmoduleClassifier::new(m, cap)?.classify(handle, p)?;
            Ok(render(name, v, &module_set))
        }
        (Some(_), _) => Err(Error::PreconditionViolation(format!("`{predicate}` applies to ideals"))),
        (None, _) => Err(Error::PreconditionViolation(format!(
            "`{predicate}` applies to submodules"
        ))),
    }
}

fn validate(file: &Path, cap: usize, format: ReportFormat) -> Result<String> {
    let text = std::fs::read_to_string(file)?;
    let entry = parse_structure_file(&text, &file_id(file), cap)?;
    let a = entry.analysis();
    let mut fields = vec![
        ("structure", entry.id().to_string()),
        ("status", "valid".to_string()),
        ("group-order", a.ring().group().order().to_string()),
        ("ring-size", a.ring().size().to_string()),
        ("module-size", a.module().size().to_string()),
    ];
    if let Ok(subs) = a.submodules() {
        fields.push(("graded-submodules", subs.len().to_string()));
    }
    for (name, s) in entry.named() {
        let text = match s.kind() {
            SubobjectKind::Ideal => describe(&**a.ring(), s.members()),
            SubobjectKind::Submodule => describe(&**a.module(), s.members()),
        };
        let graded = if s.graded() { "graded" } else { "not graded" };
        fields.push(("named", format!("{name} = {text} ({} elements, {graded})", s.len())));
    }
    Ok(render_fields("validate", &fields, format))
}

/// Rendered output and exit code.
fn run(cli: Cli) -> Result<(String, i32)> {
    let cap = cli.max_elements;
    let format = cli.report;
    match cli.command {
        Command::Validate { file } => Ok((validate(&file, cap, format)?, 0)),
        Command::Classify {
            file,
            target,
            predicate,
        } => Ok((classify(&file, target.as_deref(), &predicate, cap, format)?, 0)),
        Command::Verify(args) => {
            let props: Vec<Proposition> = match args.prop {
                Some(p) => vec![p.parse()?],
                None => Proposition::ALL.to_vec(),
            };
            let (corpus, name) = load_corpus(args.corpus.as_deref(), cap)?;
            let reports = verify_all(&props, &corpus);
            let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
            Ok((
                render_verification(&reports, &name, corpus.entries().len(), format),
                code,
            ))
        }
        Command::Search { expr, budget, corpus } => {
            let parsed: Expr = expr.parse()?;
            let (corpus, _) = load_corpus(corpus.as_deref(), cap)?;
            let outcome = search_counterexample(&parsed, &corpus, budget)?;
            Ok((render_search(&expr, &outcome, format), 0))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run_cli<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match pool.install(|| run(cli)) {
        Ok((text, code)) => {
            if let Err(e) = out.write_all(text.as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
