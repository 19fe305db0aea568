//! Standard corpus, proposition checkers, counterexample search and report
//! rendering.

pub mod corpus;
pub mod report;
pub mod search;
pub mod verify;

pub use corpus::{build_standard_corpus, Corpus, CorpusEntry, ModuleAnalysis, CORPUS_VERSION};
pub use search::{search_counterexample, Expr, SearchOutcome, SearchWitness, DEFAULT_BUDGET};
pub use verify::{verify_all, verify_proposition, Proposition, VerificationReport, Violation};

use crate::elemset::ElemSet;
use crate::grading::Carrier;
use crate::subobjects::span;

/// A subobject by a small generating set, e.g. `<(1,0,0),(0,1,0)>`; `0` for zero.
pub fn describe<C: Carrier + ?Sized>(c: &C, members: &ElemSet) -> String {
    let mut gens = Vec::new();
    let mut current = ElemSet::singleton(c.size(), c.zero());
    for x in members.iter() {
        if !current.contains(x) {
            gens.push(x);
            current = span(c, gens.iter().copied()).members().clone();
        }
    }
    if gens.is_empty() {
        return "0".into();
    }
    let labels: Vec<&str> = gens.iter().map(|&x| c.label(x)).collect();
    format!("<{}>", labels.join(","))
}
