//! Plain and machine renderings. Machine output is one record per line,
//! tab-separated `key=value` fields in a fixed order, and carries no timing
//! so that repeated runs are byte-identical.

use std::fmt::Write;

use super::search::SearchOutcome;
use super::verify::VerificationReport;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    #[default]
    Plain,
    Machine,
}

fn clean(v: &str) -> String {
    v.replace(['\t', '\n'], " ")
}

fn record(out: &mut String, kind: &str, fields: &[(&str, String)]) {
    out.push_str(kind);
    for (k, v) in fields {
        let _ = write!(out, "\t{k}={}", clean(v));
    }
    out.push('\n');
}

pub fn render_verification(
    reports: &[VerificationReport],
    corpus: &str,
    entries: usize,
    format: ReportFormat,
) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Machine => {
            record(
                &mut out,
                "corpus",
                &[("id", corpus.to_string()), ("entries", entries.to_string())],
            );
            for r in reports {
                let skipped: Vec<String> = r.skipped.iter().map(|(k, n)| format!("{k}:{n}")).collect();
                record(
                    &mut out,
                    "proposition",
                    &[
                        ("id", r.proposition.to_string()),
                        ("status", if r.passed() { "pass" } else { "fail" }.into()),
                        ("instances", r.instances.to_string()),
                        ("violations", r.violations.len().to_string()),
                        ("skipped", skipped.join(";")),
                    ],
                );
                for v in &r.violations {
                    record(
                        &mut out,
                        "violation",
                        &[
                            ("id", r.proposition.to_string()),
                            ("entry", v.entry.clone()),
                            ("rechecked", v.rechecked.to_string()),
                            ("witness", v.witness.clone()),
                        ],
                    );
                }
            }
        }
        ReportFormat::Plain => {
            let _ = writeln!(
                out,
                "corpus {corpus} ({entries} entries); pass means no counterexample among the corpus instances"
            );
            for r in reports {
                let _ = writeln!(
                    out,
                    "{:<24} {}  instances={} violations={} ({:.2}s)",
                    r.proposition.to_string(),
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.instances,
                    r.violations.len(),
                    r.wall_time.as_secs_f64()
                );
                for (reason, n) in &r.skipped {
                    let _ = writeln!(out, "    skipped {n:>8}  {reason}");
                }
                for v in &r.violations {
                    let tag = if v.rechecked { "re-checked" } else { "NOT re-checked" };
                    let _ = writeln!(out, "    violation [{}] {} ({tag})", v.entry, v.witness);
                }
            }
        }
    }
    out
}

pub fn render_search(expr: &str, outcome: &SearchOutcome, format: ReportFormat) -> String {
    let mut out = String::new();
    match (format, outcome) {
        (ReportFormat::Machine, SearchOutcome::Found { witness, evaluations }) => record(
            &mut out,
            "search",
            &[
                ("expr", expr.to_string()),
                ("result", "found".into()),
                ("evaluations", evaluations.to_string()),
                ("entry", witness.entry.clone()),
                ("generators", witness.generators.clone()),
                ("members", witness.member_labels.join(",")),
            ],
        ),
        (ReportFormat::Machine, SearchOutcome::NotFound { evaluations }) => record(
            &mut out,
            "search",
            &[
                ("expr", expr.to_string()),
                ("result", "none".into()),
                ("evaluations", evaluations.to_string()),
            ],
        ),
        (ReportFormat::Machine, SearchOutcome::BudgetExhausted { evaluations }) => record(
            &mut out,
            "search",
            &[
                ("expr", expr.to_string()),
                ("result", "budget-exhausted".into()),
                ("evaluations", evaluations.to_string()),
            ],
        ),
        (ReportFormat::Plain, SearchOutcome::Found { witness, evaluations }) => {
            let _ = writeln!(out, "found in {}: N = {}", witness.entry, witness.generators);
            let _ = writeln!(out, "members: {{{}}}", witness.member_labels.join(", "));
            let _ = writeln!(out, "{evaluations} predicate evaluations");
        }
        (ReportFormat::Plain, SearchOutcome::NotFound { evaluations }) => {
            let _ = writeln!(out, "none ({evaluations} predicate evaluations)");
        }
        (ReportFormat::Plain, SearchOutcome::BudgetExhausted { evaluations }) => {
            let _ = writeln!(out, "budget exhausted after {evaluations} predicate evaluations");
        }
    }
    out
}

/// A classification verdict; `witness` is already rendered with labels.
pub fn render_verdict(
    target: &str,
    predicate: &str,
    value: bool,
    witness: Option<&str>,
    format: ReportFormat,
) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Machine => {
            let mut fields = vec![
                ("target", target.to_string()),
                ("predicate", predicate.to_string()),
                ("value", value.to_string()),
            ];
            if let Some(w) = witness {
                fields.push(("witness", w.to_string()));
            }
            record(&mut out, "verdict", &fields);
        }
        ReportFormat::Plain => {
            let _ = writeln!(out, "{value}");
            if let Some(w) = witness {
                let _ = writeln!(out, "witness: {w}");
            }
        }
    }
    out
}

pub fn render_fields(kind: &str, fields: &[(&str, String)], format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Machine => record(&mut out, kind, fields),
        ReportFormat::Plain => {
            for (k, v) in fields {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
    }
    out
}
