//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use graded_coprimary::algebra::{
    make_group, make_module, make_ring, GroupDescriptor, ModuleDescriptor, RingDescriptor,
};
use graded_coprimary::classifiers::{
    classify_ideal, classify_submodule, recheck_submodule_witness, IdealPredicate, SubmodulePredicate, Witness,
};
use graded_coprimary::cli::run_cli;
use graded_coprimary::constructions::localization::localize;
use graded_coprimary::grading::{Carrier, GradedModule, GradedRing};
use graded_coprimary::harness::{
    build_standard_corpus, search_counterexample, verify_all, Corpus, Proposition, DEFAULT_BUDGET,
};
use graded_coprimary::subobjects::{annihilator, enumerate_graded_subobjects, graded_radical, span, whole};

const CAP: usize = 512;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn zmod(n: i64) -> Arc<GradedRing> {
    let g = make_group(&GroupDescriptor::Trivial).unwrap();
    GradedRing::trivial(&make_ring(&RingDescriptor::IntegersMod(n)).unwrap(), &g).unwrap()
}

fn model() -> Arc<GradedModule> {
    let r = zmod(180);
    let m = make_module(&ModuleDescriptor::DirectSum(vec![4, 9, 5]), r.ring()).unwrap();
    GradedModule::trivial(&m, &r).unwrap()
}

fn model_n(m: &GradedModule) -> graded_coprimary::subobjects::SubobjectHandle {
    span(m, [m.find("(1,0,0)").unwrap(), m.find("(0,1,0)").unwrap()])
}

fn ints<C: Carrier + ?Sized>(c: &C, set: impl Iterator<Item = usize>) -> BTreeSet<u64> {
    set.map(|x| c.label(x).parse().unwrap()).collect()
}

fn divisor_count(n: u64) -> u64 {
    (1..=n).filter(|&d| n.is_multiple_of(d)).count() as u64
}

fn worked_example() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let start = Instant::now();
    let (def, strong) = pool.install(|| {
        let m = model();
        let n = model_n(&m);
        let def = classify_submodule(&m, &n, SubmodulePredicate::TwoAbsorbingCoprimary, CAP).unwrap();
        let strong = classify_submodule(&m, &n, SubmodulePredicate::StronglyTwoAbsorbingSecond, CAP).unwrap();
        (def, strong)
    });
    let elapsed = start.elapsed();
    let detail = format!(
        "coprimary={} strong={} in {:.2?} (coprimary witness {:?})",
        def.value, strong.value, elapsed, def.witness
    );
    if def.value && !strong.value && elapsed < Duration::from_secs(30) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lattice_count() -> Outcome {
    let m = model();
    let subs = enumerate_graded_subobjects(&*m, CAP).map_err(|e| e.to_string())?;
    // Z4 ⊕ Z9 ⊕ Z5 has pairwise coprime orders, so subgroups split by component.
    let expected = divisor_count(4) * divisor_count(9) * divisor_count(5);
    let distinct: BTreeSet<_> = subs.iter().map(|s| s.members().clone()).collect();
    let detail = format!("{} submodules, oracle {}", subs.len(), expected);
    if subs.len() as u64 == expected && distinct.len() == subs.len() && expected == 18 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn characterization(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for entry in corpus.entries() {
        for (n, v) in entry.analysis().nonzero().map_err(|e| e.to_string())? {
            checked += 1;
            if v.coprimary.value != v.characterization.value {
                mismatches.push(format!("{} {:?}", entry.id(), n.members()));
            }
        }
    }
    let detail = format!("{checked} submodules, {} mismatches", mismatches.len());
    if mismatches.is_empty() && checked > 0 {
        Ok(detail)
    } else {
        Err(format!("{detail}: {mismatches:?}"))
    }
}

fn implication_chain(corpus: &Corpus) -> Outcome {
    let mut violations = 0;
    for entry in corpus.entries() {
        for (_, v) in entry.analysis().nonzero().map_err(|e| e.to_string())? {
            if (v.second.value && !v.strong.value) || (v.strong.value && !v.coprimary.value) {
                violations += 1;
            }
        }
    }
    let strict = search_counterexample(
        &"2a-coprimary and not strong-2a-second".parse().unwrap(),
        corpus,
        DEFAULT_BUDGET,
    )
    .map_err(|e| e.to_string())?;
    let none = search_counterexample(&"second and not 2a-coprimary".parse().unwrap(), corpus, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?;
    let found = strict.witness().map(|w| format!("{} {}", w.entry, w.generators));
    let detail = format!(
        "{violations} chain violations, strictness witness {:?}, reverse witness {:?}",
        found,
        none.witness().map(|w| &w.entry)
    );
    let complete = !matches!(none, graded_coprimary::harness::SearchOutcome::BudgetExhausted { .. });
    if violations == 0 && found.is_some() && none.witness().is_none() && complete {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn proposition_suite(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let reports = verify_all(&Proposition::ALL, corpus);
    let elapsed = start.elapsed();
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed() || r.instances == 0)
        .map(|r| {
            format!(
                "{}({} violations, {} instances)",
                r.proposition,
                r.violations.len(),
                r.instances
            )
        })
        .collect();
    let detail = format!("{} ids in {:.2?}", reports.len(), elapsed);
    if bad.is_empty() && reports.len() == Proposition::ALL.len() && elapsed < Duration::from_secs(300) {
        Ok(detail)
    } else {
        Err(format!("{detail}; failing: {}", bad.join(", ")))
    }
}

fn radical_oracle() -> Outcome {
    let r = zmod(12);
    let four = span(&*r, [4]);
    let rad = graded_radical(&r, &four).map_err(|e| e.to_string())?;
    let got = ints(&*r, rad.members().iter());
    let ideal: BTreeSet<u64> = (0..12).map(|k| 4 * k % 12).collect();
    let oracle: BTreeSet<u64> = (0..12u64)
        .filter(|&x| (1..=12u32).any(|k| ideal.contains(&(x.pow(k) % 12))))
        .collect();
    let detail = format!("Grad((4)) = {got:?}");
    if got == oracle && oracle == BTreeSet::from([0, 2, 4, 6, 8, 10]) {
        Ok(detail)
    } else {
        Err(format!("{detail}, oracle {oracle:?}"))
    }
}

fn annihilator_oracle() -> Outcome {
    let m = model();
    let n = model_n(&m);
    let ann = annihilator(&*m, &n);
    let got = ints(m.ring().as_ref(), ann.members().iter());
    let oracle: BTreeSet<u64> = (0..180u64).filter(|r| r % 4 == 0 && r % 9 == 0).collect();
    let tap = classify_ideal(m.ring(), &ann, IdealPredicate::TwoAbsorbingPrimary).map_err(|e| e.to_string())?;
    let detail = format!("Ann(N) = {got:?}, 2-absorbing primary = {}", tap.value);
    if got == oracle && tap.value && oracle == BTreeSet::from([0, 36, 72, 108, 144]) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn localization_oracle() -> Outcome {
    let r = zmod(12);
    let m = GradedModule::regular(&r).unwrap();
    let loc = localize(&m, &[1, 3, 9]).map_err(|e| e.to_string())?;
    let s = [1u64, 3, 9];
    let pairs: Vec<(u64, u64)> = (0..12).flat_map(|a| s.iter().map(move |&t| (a, t))).collect();
    let equiv =
        |(a, s1): (u64, u64), (b, t): (u64, u64)| s.iter().any(|u| u * ((t * a + 12 * 12 - s1 * b) % 12) % 12 == 0);
    let mut reps: Vec<(u64, u64)> = Vec::new();
    for &p in &pairs {
        if !reps.iter().any(|&q| equiv(p, q)) {
            reps.push(p);
        }
    }
    let sub = span(&*m, [4]);
    let image = loc.localize_subobject(&sub);
    let detail = format!(
        "{} classes (oracle {}), <4> localizes to {} elements",
        loc.class_count(),
        reps.len(),
        image.len()
    );
    if loc.class_count() == reps.len() && reps.len() == 4 && image.is_zero() && sub.len() == 3 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn negative_witness() -> Outcome {
    let r = zmod(12);
    let m = GradedModule::regular(&r).unwrap();
    let n = whole(&*m);
    let v = classify_submodule(&m, &n, SubmodulePredicate::TwoAbsorbingCoprimary, CAP).map_err(|e| e.to_string())?;
    let w = v.witness.clone().ok_or("no witness")?;
    let rechecked = recheck_submodule_witness(&m, n.members(), SubmodulePredicate::TwoAbsorbingCoprimary, &w);
    let detail = match &w {
        Witness::PairWithSubmodule { x, y, k } => format!("x={x} y={y} K={:?}, recheck={rechecked}", k),
        other => format!("{other:?}, recheck={rechecked}"),
    };
    if !v.value && rechecked {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn machine_run() -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(
        [
            "gcoprimary",
            "verify",
            "--suite",
            "all",
            "--threads",
            "4",
            "--report",
            "machine",
        ],
        &mut out,
        &mut err,
    );
    (code, out)
}

fn determinism() -> Outcome {
    let (c1, a) = machine_run();
    let (c2, b) = machine_run();
    let detail = format!("{} bytes, exit codes {c1}/{c2}", a.len());
    if a == b && !a.is_empty() && c1 != 2 && c1 == c2 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() -> ExitCode {
    let corpus = build_standard_corpus(CAP).expect("standard corpus");
    let criteria: Vec<Criterion> = vec![
        (
            "worked example: coprimary and not strongly 2-absorbing second",
            Box::new(worked_example),
        ),
        ("submodule lattice of Z4+Z9+Z5 has 18 members", Box::new(lattice_count)),
        (
            "definitional and characterization coprimary agree",
            Box::new(|| characterization(&corpus)),
        ),
        (
            "implication chain and strictness",
            Box::new(|| implication_chain(&corpus)),
        ),
        ("proposition suite passes", Box::new(|| proposition_suite(&corpus))),
        ("graded radical of (4) in Z12", Box::new(radical_oracle)),
        ("annihilator of N in the Z180 model", Box::new(annihilator_oracle)),
        ("localization of Z12 at {1,3,9}", Box::new(localization_oracle)),
        ("Z12 is not 2-absorbing coprimary", Box::new(negative_witness)),
        ("machine reports are deterministic", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}  [{detail}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}  [{detail}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
