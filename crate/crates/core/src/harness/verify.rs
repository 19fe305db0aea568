//! One checker per proposition. A checker walks every corpus instance of the
//! hypothesis, tests the conclusion, and records violations with witnesses
//! that are re-checked through independent code paths.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::corpus::{Corpus, CorpusEntry, ModuleAnalysis};
use super::describe;
use crate::classifiers::{
    classify_ideal, coprimary_via_characterization, recheck_ideal_witness, recheck_submodule_witness, IdealPredicate,
    SubmodulePredicate,
};
use crate::constructions::{hom_image, hom_kernel, hom_preimage, product_submodule, split_product};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::grading::{Carrier, GradedModule, GradedRing};
use crate::subobjects::{annihilator, colon, combine, graded_radical, ideal_component, Combine, SubobjectHandle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Proposition {
    ClosureLemma,
    Colon2AP,
    Ann2AP,
    GradAnn2A,
    ScalarMultiple,
    HomImage,
    HomPreimage,
    CharacterizationEquiv,
    Localization,
    IdealLemma,
    TwoIdealTheorem,
    Comultiplication,
    ProductPart1,
    ProductPart2,
    ProductPart3,
    ProductPart4,
}

impl Proposition {
    pub const ALL: [Proposition; 16] = [
        Proposition::ClosureLemma,
        Proposition::Colon2AP,
        Proposition::Ann2AP,
        Proposition::GradAnn2A,
        Proposition::ScalarMultiple,
        Proposition::HomImage,
        Proposition::HomPreimage,
        Proposition::CharacterizationEquiv,
        Proposition::Localization,
        Proposition::IdealLemma,
        Proposition::TwoIdealTheorem,
        Proposition::Comultiplication,
        Proposition::ProductPart1,
        Proposition::ProductPart2,
        Proposition::ProductPart3,
        Proposition::ProductPart4,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Proposition::ClosureLemma => "closure-lemma",
            Proposition::Colon2AP => "colon-2AP",
            Proposition::Ann2AP => "ann-2AP",
            Proposition::GradAnn2A => "grad-ann-2A",
            Proposition::ScalarMultiple => "scalar-multiple",
            Proposition::HomImage => "hom-image",
            Proposition::HomPreimage => "hom-preimage",
            Proposition::CharacterizationEquiv => "characterization-equiv",
            Proposition::Localization => "localization",
            Proposition::IdealLemma => "ideal-lemma",
            Proposition::TwoIdealTheorem => "two-ideal-theorem",
            Proposition::Comultiplication => "comultiplication",
            Proposition::ProductPart1 => "product-part-1",
            Proposition::ProductPart2 => "product-part-2",
            Proposition::ProductPart3 => "product-part-3",
            Proposition::ProductPart4 => "product-part-4",
        }
    }
}

impl FromStr for Proposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Proposition::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| Error::UnknownProposition(s.to_string()))
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub entry: String,
    pub witness: String,
    /// The independent re-check reproduced the failure.
    pub rechecked: bool,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub proposition: Proposition,
    pub instances: u64,
    pub violations: Vec<Violation>,
    pub skipped: BTreeMap<String, u64>,
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    instances: u64,
    violations: Vec<Violation>,
    skipped: BTreeMap<String, u64>,
}

impl Tally {
    fn skip(&mut self, reason: &str) {
        *self.skipped.entry(reason.to_string()).or_default() += 1;
    }

    fn violation(&mut self, entry: &CorpusEntry, witness: String, rechecked: bool) {
        self.violations.push(Violation {
            entry: entry.id().to_string(),
            witness,
            rechecked,
        });
    }
}

pub fn verify_proposition(p: Proposition, corpus: &Corpus) -> VerificationReport {
    verify_all(&[p], corpus).pop().expect("one report")
}

/// Checks every `(proposition, entry)` pair, possibly in parallel, and merges
/// the results in canonical order.
pub fn verify_all(props: &[Proposition], corpus: &Corpus) -> Vec<VerificationReport> {
    let tasks: Vec<(Proposition, &CorpusEntry)> = props
        .iter()
        .flat_map(|&p| corpus.entries().iter().map(move |e| (p, e)))
        .collect();
    let results: Vec<(Tally, Duration)> = tasks
        .par_iter()
        .map(|&(p, e)| {
            let start = Instant::now();
            let mut t = Tally::default();
            match check(p, e, &mut t) {
                Ok(()) => {}
                Err(Error::TooLarge { .. }) => t.skip("size cap"),
                Err(err) => t.violation(e, format!("checker error: {err}"), false),
            }
            (t, start.elapsed())
        })
        .collect();
    let mut reports: Vec<VerificationReport> = props
        .iter()
        .map(|&p| VerificationReport {
            proposition: p,
            instances: 0,
            violations: Vec::new(),
            skipped: BTreeMap::new(),
            wall_time: Duration::ZERO,
        })
        .collect();
    for ((p, _), (t, time)) in tasks.iter().zip(results) {
        let r = reports.iter_mut().find(|r| r.proposition == *p).expect("report");
        r.instances += t.instances;
        r.violations.extend(t.violations);
        for (reason, n) in t.skipped {
            *r.skipped.entry(reason).or_default() += n;
        }
        r.wall_time += time;
    }
    reports
}

fn check(p: Proposition, e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    match p {
        Proposition::ClosureLemma => closure_lemma(e, t),
        Proposition::Colon2AP => colon_2ap(e, t),
        Proposition::Ann2AP => ann_2ap(e, t),
        Proposition::GradAnn2A => grad_ann_2a(e, t),
        Proposition::ScalarMultiple => scalar_multiple(e, t),
        Proposition::HomImage => hom_image_check(e, t),
        Proposition::HomPreimage => hom_preimage_check(e, t),
        Proposition::CharacterizationEquiv => characterization_equiv(e, t),
        Proposition::Localization => localization(e, t),
        Proposition::IdealLemma => ideal_lemma(e, t),
        Proposition::TwoIdealTheorem => two_ideal_theorem(e, t),
        Proposition::Comultiplication => comultiplication(e, t),
        Proposition::ProductPart1 => product_part_1(e, t),
        Proposition::ProductPart2 => product_part_2(e, t),
        Proposition::ProductPart3 => product_part_3(e, t, true),
        Proposition::ProductPart4 => product_part_3(e, t, false),
    }
}

// ---------------------------------------------------------------------------
// Failure descriptions with independent re-checks.

/// Why `p` fails `predicate`, and whether the witness survives a re-check.
fn ideal_failure(ring: &GradedRing, p: &SubobjectHandle, predicate: IdealPredicate) -> (String, bool) {
    match classify_ideal(ring, p, predicate) {
        Ok(v) => match v.witness {
            Some(crate::classifiers::Witness::Scalars(w)) => {
                let ok = recheck_ideal_witness(
                    ring,
                    p.members(),
                    predicate,
                    &crate::classifiers::Witness::Scalars(w.clone()),
                );
                let labels: Vec<&str> = w.iter().map(|&x| ring.ring().label(x)).collect();
                (format!("not {predicate:?} at ({})", labels.join(",")), ok)
            }
            _ => ("verdict without witness".into(), false),
        },
        Err(e) => (e.to_string(), false),
    }
}

/// Why `n` is not 2-absorbing coprimary in `m`. The re-check requires the
/// definitional witness to re-verify and the characterization to agree.
fn coprimary_failure(m: &GradedModule, analysis: &ModuleAnalysis, n: &ElemSet) -> (String, bool) {
    let verdict = match analysis.verdict(n) {
        Ok(Some(v)) => v.coprimary.clone(),
        Ok(None) => return ("zero submodule".into(), false),
        Err(e) => return (e.to_string(), false),
    };
    let Some(w) = verdict.witness else {
        return ("verdict without witness".into(), false);
    };
    let handle = SubobjectHandle::closed(m, n.clone());
    let independent = coprimary_via_characterization(m, &handle)
        .map(|v| !v.value)
        .unwrap_or(false);
    let ok = recheck_submodule_witness(m, n, SubmodulePredicate::TwoAbsorbingCoprimary, &w) && independent;
    let text = match &w {
        crate::classifiers::Witness::PairWithSubmodule { x, y, k } => {
            let r = m.ring().ring();
            format!(
                "not 2a-coprimary at x={}, y={}, K={}",
                r.label(*x),
                r.label(*y),
                describe(m, k)
            )
        }
        other => format!("{other:?}"),
    };
    (text, ok)
}

// ---------------------------------------------------------------------------

fn closure_lemma(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let a = e.analysis();
    closure_pairs(&**a.ring(), a.graded_ideals()?, e, t);
    closure_pairs(&**a.module(), a.submodules()?, e, t);
    Ok(())
}

fn closure_pairs<C: Carrier>(c: &C, subs: &[SubobjectHandle], e: &CorpusEntry, t: &mut Tally) {
    for (i, a) in subs.iter().enumerate() {
        for b in &subs[i..] {
            t.instances += 1;
            let sum = combine(c, a, Combine::Sum(b)).expect("same carrier");
            let meet = combine(c, a, Combine::Intersect(b)).expect("same carrier");
            for (op, s) in [("+", sum), ("∩", meet)] {
                if !s.graded() {
                    // Re-check: some member has a component outside the set.
                    let g = c.grading();
                    let ok = s
                        .members()
                        .iter()
                        .any(|x| g.decompose(x).iter().any(|&p| !s.contains(p)));
                    let w = format!(
                        "{} {op} {} is not graded",
                        describe(c, a.members()),
                        describe(c, b.members())
                    );
                    t.violation(e, w, ok);
                }
            }
        }
    }
}

fn colon_2ap(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let a = e.analysis();
    let m = &**a.module();
    let subs = a.submodules()?;
    for (n, v) in a.nonzero()? {
        if !v.coprimary.value {
            t.skip("N not 2a-coprimary");
            continue;
        }
        for k in subs {
            if n.is_subset(k) {
                t.skip("N ⊆ K");
                continue;
            }
            t.instances += 1;
            let p = colon(m, k, n);
            if !p.graded() || !a.ideal_holds(&p, IdealPredicate::TwoAbsorbingPrimary)? {
                let (why, ok) = ideal_failure(a.ring(), &p, IdealPredicate::TwoAbsorbingPrimary);
                let w = format!(
                    "N={}, K={}: (K:N)={} {why}",
                    describe(m, n.members()),
                    describe(m, k.members()),
                    describe(&**a.ring(), p.members())
                );
                t.violation(e, w, ok);
            }
        }
    }
    Ok(())
}

fn ann_2ap(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let a = e.analysis();
    let m = &**a.module();
    for (n, v) in a.nonzero()? {
        if !v.coprimary.value {
            t.skip("N not 2a-coprimary");
            continue;
        }
        t.instances += 1;
        let p = annihilator(m, n);
        if !p.graded() || !a.ideal_holds(&p, IdealPredicate::TwoAbsorbingPrimary)? {
            let (why, ok) = ideal_failure(a.ring(), &p, IdealPredicate::TwoAbsorbingPrimary);
            t.violation(e, format!("N={}: Ann(N) {why}", describe(m, n.members())), ok);
        }
    }
    Ok(())
}

fn grad_ann_2a(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let a = e.analysis();
    let m = &**a.module();
    for (n, v) in a.nonzero()? {
        if !v.coprimary.value {
            t.skip("N not 2a-coprimary");
            continue;
        }
        t.instances += 1;
        let p = graded_radical(a.ring(), &annihilator(m, n))?;
        if !a.ideal_holds(&p, IdealPredicate::TwoAbsorbing)? {
            let (why, ok) = ideal_failure(a.ring(), &p, IdealPredicate::TwoAbsorbing);
            t.violation(e, format!("N={}: Grad(Ann(N)) {why}", describe(m, n.members())), ok);
        }
    }
    Ok(())
}

fn scalar_multiple(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let a = e.analysis();
    let m = &**a.module();
    let r = a.ring();
    for (n, v) in a.nonzero()? {
        if !v.coprimary.value {
            t.skip("N not 2a-coprimary");
            continue;
        }
        let ann = annihilator(m, n);
        for x in r.grading().homogeneous_elements().iter() {
            if ann.contains(x) {
                t.skip("a ∈ Ann(N)");
                continue;
            }
            t.instances += 1;
            let an = combine(m, n, Combine::ScalarProduct(x))?;
            if !a.is_coprimary(an.members())? {
                let (why, ok) = coprimary_failure(m, a, an.members());
                let w = format!(
                    "N={}, a={}: aN={} {why}",
                    describe(m, n.members()),
                    r.ring().label(x),
                    describe(m, an.members())
                );
                t.violation(e, w, ok);
            }
        }
    }
    Ok(())
}

fn hom_image_check(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    for case in e.homs()? {
        let f = &case.hom;
        let (src, tgt) = (&case.source, &case.target);
        let kernel = hom_kernel(f);
        for (n, v) in src.nonzero()? {
            if !v.coprimary.value {
                t.skip("N not 2a-coprimary");
                continue;
            }
            if n.is_subset(&kernel) {
                t.skip("N ⊆ Ker f");
                continue;
            }
            t.instances += 1;
            let image = hom_image(f, n);
            if !image.graded() || !tgt.is_coprimary(image.members())? {
                let (why, ok) = coprimary_failure(tgt.module(), tgt, image.members());
                let w = format!(
                    "f={}, N={}: f(N)={} {why}",
                    case.name,
                    describe(&**src.module(), n.members()),
                    describe(&**tgt.module(), image.members())
                );
                t.violation(e, w, ok);
            }
        }
    }
    Ok(())
}

fn hom_preimage_check(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    for case in e.homs()? {
        let f = &case.hom;
        let (src, tgt) = (&case.source, &case.target);
        let range = f.range();
        for (k, v) in tgt.nonzero()? {
            if !v.coprimary.value {
                t.skip("K not 2a-coprimary");
                continue;
            }
            if !k.is_subset(&range) {
                t.skip("K ⊄ f(M)");
                continue;
            }
            t.instances += 1;
            let pre = hom_preimage(f, k);
            if !pre.graded() || !src.is_coprimary(pre.members())? {
                let (why, ok) = coprimary_failure(src.module(), src, pre.members());
                let w = format!(
                    "f={} (injective: {}), K={}: f⁻¹(K)={} {why}",
                    case.name,
                    if f.is_injective() { "yes" } else { "no" },
                    describe(&**tgt.module(), k.members()),
                    describe(&**src.module(), pre.members())
                );
                t.violation(e, w, ok);
            }
        }
    }
    Ok(())
}

fn characterization_equiv(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let a = e.analysis();
    let m = &**a.module();
    for (n, v) in a.nonzero()? {
        t.instances += 1;
        if v.coprimary.value != v.characterization.value {
            // Whichever form says false carries a witness for the definition.
            let w = if v.coprimary.value {
                &v.characterization
            } else {
                &v.coprimary
            }
            .witness
            .as_ref();
            let ok = w.is_some_and(|w| {
                recheck_submodule_witness(m, n.members(), SubmodulePredicate::TwoAbsorbingCoprimary, w)
            });
            let w = format!(
                "N={}: definitional={}, characterization={}",
                describe(m, n.members()),
                v.coprimary.value,
                v.characterization.value
            );
            t.violation(e, w, ok);
        }
    }
    Ok(())
}

fn localization(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let a = e.analysis();
    let m = &**a.module();
    let coprimary: Vec<&SubobjectHandle> = a
        .nonzero()?
        .filter(|(_, v)| v.coprimary.value)
        .map(|(n, _)| n)
        .collect();
    let skipped = a.nonzero()?.count() - coprimary.len();
    for case in e.localizations() {
        let (loc, la) = match &case.localized {
            Ok(pair) => pair,
            Err(reason) => {
                t.instances += 1;
                t.violation(e, format!("S={}: localization failed: {reason}", case.name), true);
                continue;
            }
        };
        for _ in 0..skipped {
            t.skip("N not 2a-coprimary");
        }
        for n in &coprimary {
            let sn = loc.localize_subobject(n);
            if sn.is_zero() {
                t.skip("S⁻¹N = 0");
                continue;
            }
            t.instances += 1;
            let lm = &**la.module();
            if !sn.graded() || !la.is_coprimary(sn.members())? {
                let (why, ok) = coprimary_failure(lm, la, sn.members());
                let w = format!(
                    "S={}, N={}: S⁻¹N={} {why}",
                    case.name,
                    describe(m, n.members()),
                    describe(lm, sn.members())
                );
                t.violation(e, w, ok);
            }
        }
    }
    Ok(())
}

/// Per-`N` data for the g-form checks: `Grad((K :_R N))` for every `K`, and `Ann(N)`.
struct ColonTable {
    colons: Vec<ElemSet>,
    radicals: Vec<ElemSet>,
    ann: ElemSet,
}

impl ColonTable {
    fn new(a: &ModuleAnalysis, n: &SubobjectHandle) -> Result<Self> {
        let m = &**a.module();
        let mut colons = Vec::new();
        let mut radicals = Vec::new();
        for k in a.submodules()? {
            let c = colon(m, k, n);
            radicals.push(graded_radical(a.ring(), &c)?.members().clone());
            colons.push(c.members().clone());
        }
        Ok(ColonTable {
            colons,
            radicals,
            ann: annihilator(m, n).members().clone(),
        })
    }
}

fn g_coprimary_submodules<'a>(a: &'a ModuleAnalysis, g: usize, t: &mut Tally) -> Result<Vec<&'a SubobjectHandle>> {
    let mut out = Vec::new();
    for (n, v) in a.nonzero()? {
        if v.g_coprimary[g].value {
            out.push(n);
        } else {
            t.skip("N not g-2a-coprimary");
        }
    }
    Ok(out)
}

fn ideal_lemma(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let a = e.analysis();
    let m = &**a.module();
    let ring = a.ring();
    let r = ring.ring();
    let ideals = a.graded_ideals()?;
    let subs = a.submodules()?;
    for g in ring.group().elements() {
        let rg: Vec<usize> = ring.grading().component(g).iter().collect();
        let components: Vec<ElemSet> = ideals
            .iter()
            .map(|i| ideal_component(ring, i, g))
            .collect::<Result<_>>()?;
        for n in g_coprimary_submodules(a, g, t)? {
            let table = ColonTable::new(a, n)?;
            for (i, ig) in ideals.iter().zip(&components) {
                for &x in &rg {
                    // IxN ⊆ K iff Ix ⊆ (K :_R N).
                    let ix = ElemSet::from_elems(r.size(), i.members().iter().map(|y| r.mul(y, x)));
                    let igx_killed = ig.iter().all(|y| table.ann.contains(r.mul(y, x)));
                    for (ki, k) in subs.iter().enumerate() {
                        if !ix.is_subset(&table.colons[ki]) {
                            t.skip("IxN ⊄ K");
                            continue;
                        }
                        t.instances += 1;
                        let rad = &table.radicals[ki];
                        if !(rad.contains(x) || ig.is_subset(rad) || igx_killed) {
                            let ok = !some_power_maps_into(m, x, n, k)
                                && !ig.iter().all(|y| some_power_maps_into(m, y, n, k))
                                && ig
                                    .iter()
                                    .any(|y| n.members().iter().any(|z| m.act(r.mul(y, x), z) != m.zero()));
                            let w = format!(
                                "g={}, N={}, I={}, x={}, K={}",
                                ring.group().label(g),
                                describe(m, n.members()),
                                describe(&**ring, i.members()),
                                r.label(x),
                                describe(m, k.members())
                            );
                            t.violation(e, w, ok);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `x^e N ⊆ K` for some `1 ≤ e ≤ |R|`, computed directly.
fn some_power_maps_into(m: &GradedModule, x: usize, n: &SubobjectHandle, k: &SubobjectHandle) -> bool {
    let r = m.ring().ring();
    let mut p = x;
    for _ in 0..r.size() {
        if n.members().iter().all(|z| k.contains(m.act(p, z))) {
            return true;
        }
        p = r.mul(p, x);
    }
    false
}

fn two_ideal_theorem(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let a = e.analysis();
    let m = &**a.module();
    let ring = a.ring();
    let r = ring.ring();
    let ideals = a.graded_ideals()?;
    let subs = a.submodules()?;
    let products: Vec<Vec<ElemSet>> = ideals
        .iter()
        .map(|i| {
            ideals
                .iter()
                .map(|j| Ok(combine(&**ring, i, Combine::IdealProduct(j))?.members().clone()))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    for g in ring.group().elements() {
        let components: Vec<ElemSet> = ideals
            .iter()
            .map(|i| ideal_component(ring, i, g))
            .collect::<Result<_>>()?;
        for n in g_coprimary_submodules(a, g, t)? {
            let table = ColonTable::new(a, n)?;
            for (ii, ig) in components.iter().enumerate() {
                for (ji, jg) in components.iter().enumerate() {
                    let killed = ig.iter().all(|x| jg.iter().all(|y| table.ann.contains(r.mul(x, y))));
                    for (ki, k) in subs.iter().enumerate() {
                        // IJN ⊆ K iff IJ ⊆ (K :_R N).
                        if !products[ii][ji].is_subset(&table.colons[ki]) {
                            t.skip("IJN ⊄ K");
                            continue;
                        }
                        t.instances += 1;
                        let rad = &table.radicals[ki];
                        if !(ig.is_subset(rad) || jg.is_subset(rad) || killed) {
                            let ok = !ig.iter().all(|x| some_power_maps_into(m, x, n, k))
                                && !jg.iter().all(|y| some_power_maps_into(m, y, n, k));
                            let w = format!(
                                "g={}, N={}, I={}, J={}, K={}",
                                ring.group().label(g),
                                describe(m, n.members()),
                                describe(&**ring, ideals[ii].members()),
                                describe(&**ring, ideals[ji].members()),
                                describe(m, k.members())
                            );
                            t.violation(e, w, ok);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn comultiplication(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let a = e.analysis();
    let m = &**a.module();
    if !a.comultiplication()?.value {
        t.skip("M not comultiplication");
        return Ok(());
    }
    for (n, v) in a.nonzero()? {
        if !v.coprimary.value {
            t.skip("N not 2a-coprimary");
            continue;
        }
        let ann = annihilator(m, n);
        if graded_radical(a.ring(), &ann)?.members() != ann.members() {
            t.skip("Grad(Ann(N)) ≠ Ann(N)");
            continue;
        }
        t.instances += 1;
        if !v.strong.value {
            let ok = v.strong.witness.as_ref().is_some_and(|w| {
                recheck_submodule_witness(m, n.members(), SubmodulePredicate::StronglyTwoAbsorbingSecond, w)
            });
            t.violation(
                e,
                format!("N={} is not strongly 2-absorbing second", describe(m, n.members())),
                ok,
            );
        }
    }
    Ok(())
}

fn product_factors<'a>(
    e: &'a CorpusEntry,
    t: &mut Tally,
) -> Option<&'a (std::sync::Arc<ModuleAnalysis>, std::sync::Arc<ModuleAnalysis>)> {
    let f = e.factors();
    if f.is_none() {
        t.skip("entry is not a product");
    }
    f
}

fn product_part_1(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let Some((a1, a2)) = product_factors(e, t) else {
        return Ok(());
    };
    let a = e.analysis();
    let m = &**a.module();
    for (n, v) in a.nonzero()? {
        if !v.coprimary.value {
            t.skip("N not 2a-coprimary");
            continue;
        }
        let (n1, n2) = split_product(m, n);
        if n1.is_zero() || n2.is_zero() {
            t.skip("zero factor (handled by parts 3/4)");
            continue;
        }
        t.instances += 1;
        for (fa, ni) in [(a1, &n1), (a2, &n2)] {
            let ann = annihilator(&**fa.module(), ni);
            if !fa.ideal_holds(&ann, IdealPredicate::Primary)? {
                let (why, ok) = ideal_failure(fa.ring(), &ann, IdealPredicate::Primary);
                t.violation(
                    e,
                    format!(
                        "N={}: Ann of factor {} {why}",
                        describe(m, n.members()),
                        describe(&**fa.module(), ni.members())
                    ),
                    ok,
                );
            }
        }
    }
    Ok(())
}

fn product_part_2(e: &CorpusEntry, t: &mut Tally) -> Result<()> {
    let Some((a1, a2)) = product_factors(e, t) else {
        return Ok(());
    };
    let a = e.analysis();
    let m = &**a.module();
    let primary = |fa: &ModuleAnalysis, n: &SubobjectHandle| {
        fa.ideal_holds(&annihilator(&**fa.module(), n), IdealPredicate::Primary)
    };
    for (n1, _) in a1.nonzero()? {
        let p1 = primary(a1, n1)?;
        for (n2, _) in a2.nonzero()? {
            if !p1 || !primary(a2, n2)? {
                t.skip("Ann(N1) or Ann(N2) not primary");
                continue;
            }
            t.instances += 1;
            let n = product_submodule(m, n1, n2);
            let ann = annihilator(m, &n);
            if !a.ideal_holds(&ann, IdealPredicate::TwoAbsorbingPrimary)? {
                let (why, ok) = ideal_failure(a.ring(), &ann, IdealPredicate::TwoAbsorbingPrimary);
                t.violation(e, format!("N={}: Ann(N) {why}", describe(m, n.members())), ok);
            }
        }
    }
    Ok(())
}

/// Parts 3 and 4: `N1 × 0` (or `0 × N2`) with a coprimary factor.
fn product_part_3(e: &CorpusEntry, t: &mut Tally, first: bool) -> Result<()> {
    let Some((a1, a2)) = product_factors(e, t) else {
        return Ok(());
    };
    let a = e.analysis();
    let m = &**a.module();
    let (fa, other) = if first { (a1, a2) } else { (a2, a1) };
    let zero = crate::subobjects::zero_subobject(&**other.module());
    for (ni, v) in fa.nonzero()? {
        if !v.coprimary.value {
            t.skip("factor submodule not 2a-coprimary");
            continue;
        }
        t.instances += 1;
        let n = if first {
            product_submodule(m, ni, &zero)
        } else {
            product_submodule(m, &zero, ni)
        };
        let ann = annihilator(m, &n);
        if !a.ideal_holds(&ann, IdealPredicate::TwoAbsorbingPrimary)? {
            let (why, ok) = ideal_failure(a.ring(), &ann, IdealPredicate::TwoAbsorbingPrimary);
            t.violation(e, format!("N={}: Ann(N) {why}", describe(m, n.members())), ok);
        }
    }
    Ok(())
}
