//! The standard corpus and the cached per-module analysis the checkers share.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::algebra::module::direct_sum_coords;
use crate::algebra::{
    make_group, make_module, make_ring, GroupDescriptor, ModuleDescriptor, ModuleKind, RingDescriptor, RingKind,
};
use crate::classifiers::{
    classify_ideal, coprimary_via_characterization, IdealPredicate, PredicateVerdict, SubmoduleClassifier,
    SubmodulePredicate,
};
use crate::constructions::{localize, make_hom, GradedHom, LocalizedModule};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::grading::{Carrier, GradedModule, GradedRing};
use crate::subobjects::{enumerate_graded_subobjects, SubobjectHandle};

/// Bumped whenever the standard corpus changes, so reported counts stay comparable.
pub const CORPUS_VERSION: &str = "1";

/// Verdicts for one non-zero graded submodule.
#[derive(Clone, Debug)]
pub struct SubVerdicts {
    pub second: PredicateVerdict,
    pub strong: PredicateVerdict,
    pub coprimary: PredicateVerdict,
    pub characterization: PredicateVerdict,
    /// Indexed by grading group element.
    pub g_coprimary: Vec<PredicateVerdict>,
}

/// A graded module with lazily computed submodule lattice and verdicts.
#[derive(Debug)]
pub struct ModuleAnalysis {
    module: Arc<GradedModule>,
    cap: usize,
    subs: OnceLock<std::result::Result<Vec<SubobjectHandle>, usize>>,
    index: OnceLock<HashMap<ElemSet, usize>>,
    verdicts: OnceLock<Vec<Option<SubVerdicts>>>,
    ideals: OnceLock<std::result::Result<Vec<SubobjectHandle>, usize>>,
    ideal_verdicts: Mutex<HashMap<(IdealPredicate, ElemSet), bool>>,
    comultiplication: OnceLock<PredicateVerdict>,
}

impl ModuleAnalysis {
    pub fn new(module: Arc<GradedModule>, cap: usize) -> Arc<Self> {
        Arc::new(ModuleAnalysis {
            module,
            cap,
            subs: OnceLock::new(),
            index: OnceLock::new(),
            verdicts: OnceLock::new(),
            ideals: OnceLock::new(),
            ideal_verdicts: Mutex::new(HashMap::new()),
            comultiplication: OnceLock::new(),
        })
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        self.module.ring()
    }

    fn too_large(&self, size: usize) -> Error {
        Error::TooLarge { size, cap: self.cap }
    }

    /// All graded submodules in canonical order.
    pub fn submodules(&self) -> Result<&[SubobjectHandle]> {
        let subs = self
            .subs
            .get_or_init(|| enumerate_graded_subobjects(&*self.module, self.cap).map_err(|_| self.module.size()));
        subs.as_deref().map_err(|&size| self.too_large(size))
    }

    /// Position of a graded submodule in [`Self::submodules`].
    pub fn position(&self, members: &ElemSet) -> Result<usize> {
        let subs = self.submodules()?;
        let index = self
            .index
            .get_or_init(|| subs.iter().enumerate().map(|(i, s)| (s.members().clone(), i)).collect());
        index
            .get(members)
            .copied()
            .ok_or_else(|| Error::PreconditionViolation("not a graded submodule of this module".into()))
    }

    /// Verdicts aligned with [`Self::submodules`]; `None` for the zero submodule.
    pub fn verdicts(&self) -> Result<&[Option<SubVerdicts>]> {
        let subs = self.submodules()?;
        let m = &*self.module;
        Ok(self.verdicts.get_or_init(|| {
            let classifier = SubmoduleClassifier::with_submodules(m, subs);
            let group = m.ring().group();
            subs.par_iter()
                .map(|n| {
                    if n.is_zero() {
                        return None;
                    }
                    let run = |p| classifier.classify(n, p).expect("non-zero graded submodule");
                    Some(SubVerdicts {
                        second: run(SubmodulePredicate::Second),
                        strong: run(SubmodulePredicate::StronglyTwoAbsorbingSecond),
                        coprimary: run(SubmodulePredicate::TwoAbsorbingCoprimary),
                        characterization: coprimary_via_characterization(m, n).expect("non-zero graded submodule"),
                        g_coprimary: group
                            .elements()
                            .map(|g| run(SubmodulePredicate::GTwoAbsorbingCoprimary(g)))
                            .collect(),
                    })
                })
                .collect()
        }))
    }

    pub fn verdict(&self, members: &ElemSet) -> Result<Option<&SubVerdicts>> {
        let i = self.position(members)?;
        Ok(self.verdicts()?[i].as_ref())
    }

    /// Non-zero and 2-absorbing coprimary (definitional form).
    pub fn is_coprimary(&self, members: &ElemSet) -> Result<bool> {
        Ok(self.verdict(members)?.is_some_and(|v| v.coprimary.value))
    }

    /// Pairs `(N, verdicts)` for the non-zero graded submodules.
    pub fn nonzero(&self) -> Result<impl Iterator<Item = (&SubobjectHandle, &SubVerdicts)>> {
        let subs = self.submodules()?;
        let verdicts = self.verdicts()?;
        Ok(subs
            .iter()
            .zip(verdicts)
            .filter_map(|(n, v)| v.as_ref().map(|v| (n, v))))
    }

    pub fn graded_ideals(&self) -> Result<&[SubobjectHandle]> {
        let ring = self.ring();
        let ideals = self
            .ideals
            .get_or_init(|| enumerate_graded_subobjects(&**ring, self.cap).map_err(|_| ring.size()));
        ideals.as_deref().map_err(|&size| self.too_large(size))
    }

    /// Cached ideal classification of a proper graded ideal.
    pub fn ideal_holds(&self, p: &SubobjectHandle, predicate: IdealPredicate) -> Result<bool> {
        let key = (predicate, p.members().clone());
        if let Some(&v) = self.ideal_verdicts.lock().expect("poisoned").get(&key) {
            return Ok(v);
        }
        let v = classify_ideal(self.ring(), p, predicate)?.value;
        self.ideal_verdicts.lock().expect("poisoned").insert(key, v);
        Ok(v)
    }

    pub fn comultiplication(&self) -> Result<&PredicateVerdict> {
        let subs = self.submodules()?;
        Ok(self
            .comultiplication
            .get_or_init(|| SubmoduleClassifier::with_submodules(&self.module, subs).is_comultiplication()))
    }
}

/// A member of the canonical hom family of an entry.
#[derive(Debug)]
pub struct HomCase {
    pub name: String,
    pub hom: GradedHom,
    pub source: Arc<ModuleAnalysis>,
    pub target: Arc<ModuleAnalysis>,
}

#[derive(Debug)]
pub struct LocalizationCase {
    pub name: String,
    pub denominators: Vec<usize>,
    /// The localized module, or the reason it could not be built.
    pub localized: std::result::Result<(LocalizedModule, Arc<ModuleAnalysis>), String>,
}

#[derive(Debug)]
pub struct CorpusEntry {
    id: String,
    note: Option<String>,
    analysis: Arc<ModuleAnalysis>,
    named: Vec<(String, SubobjectHandle)>,
    denominators: Vec<(String, Vec<usize>)>,
    homs: OnceLock<std::result::Result<Vec<HomCase>, String>>,
    localizations: OnceLock<Vec<LocalizationCase>>,
    factors: OnceLock<Option<(Arc<ModuleAnalysis>, Arc<ModuleAnalysis>)>>,
}

impl CorpusEntry {
    pub fn new(id: impl Into<String>, module: Arc<GradedModule>, cap: usize) -> Self {
        CorpusEntry {
            id: id.into(),
            note: None,
            analysis: ModuleAnalysis::new(module, cap),
            named: Vec::new(),
            denominators: Vec::new(),
            homs: OnceLock::new(),
            localizations: OnceLock::new(),
            factors: OnceLock::new(),
        }
    }

    /// Analyses of `M1` and `M2` when the module is a product.
    pub fn factors(&self) -> Option<&(Arc<ModuleAnalysis>, Arc<ModuleAnalysis>)> {
        self.factors
            .get_or_init(|| {
                self.module().factors().map(|(a, b)| {
                    (
                        ModuleAnalysis::new(a.clone(), self.analysis.cap),
                        ModuleAnalysis::new(b.clone(), self.analysis.cap),
                    )
                })
            })
            .as_ref()
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_named(mut self, name: impl Into<String>, subobject: SubobjectHandle) -> Self {
        self.named.push((name.into(), subobject));
        self
    }

    pub fn with_denominators(mut self, name: impl Into<String>, s: Vec<usize>) -> Self {
        self.denominators.push((name.into(), s));
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn analysis(&self) -> &Arc<ModuleAnalysis> {
        &self.analysis
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        self.analysis.module()
    }

    pub fn named(&self) -> &[(String, SubobjectHandle)] {
        &self.named
    }

    pub fn find_named(&self, name: &str) -> Option<&SubobjectHandle> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn declared_denominators(&self) -> &[(String, Vec<usize>)] {
        &self.denominators
    }

    /// Identity, non-zero scalar endomorphisms by degree-`e` elements, and
    /// reductions, projections and inclusions to and from cyclic summands.
    pub fn homs(&self) -> Result<&[HomCase]> {
        self.homs
            .get_or_init(|| self.build_homs().map_err(|e| e.to_string()))
            .as_deref()
            .map_err(|e| Error::PreconditionViolation(format!("hom family of {}: {e}", self.id)))
    }

    fn build_homs(&self) -> Result<Vec<HomCase>> {
        let src = &self.analysis;
        let m = self.module();
        let ring = m.ring();
        let r = ring.ring();
        let n = m.size();
        let mut out = Vec::new();
        let mut push =
            |name: String, s: &Arc<ModuleAnalysis>, t: &Arc<ModuleAnalysis>, map: Vec<usize>| -> Result<()> {
                let hom = make_hom(s.module(), t.module(), map)?;
                out.push(HomCase {
                    name,
                    hom,
                    source: s.clone(),
                    target: t.clone(),
                });
                Ok(())
            };
        push("id".into(), src, src, (0..n).collect())?;
        let identity = ring.group().identity();
        for a in ring.grading().component(identity).iter() {
            if a == r.zero() || a == r.one() {
                continue;
            }
            push(
                format!("scale({})", r.label(a)),
                src,
                src,
                (0..n).map(|x| m.act(a, x)).collect(),
            )?;
        }
        let cap = src.cap;
        let cyclic = |d: usize| -> Result<Arc<ModuleAnalysis>> {
            let module = make_module(&ModuleDescriptor::DirectSum(vec![d as i64]), r)?;
            Ok(ModuleAnalysis::new(GradedModule::trivial(&module, ring)?, cap))
        };
        match (r.kind(), m.module().kind()) {
            (RingKind::IntegersMod(modulus), ModuleKind::Regular) => {
                let modulus = *modulus;
                for d in (2..modulus).filter(|d| modulus % d == 0) {
                    let aux = cyclic(d)?;
                    push(format!("reduce(Z{d})"), src, &aux, (0..n).map(|x| x % d).collect())?;
                    push(
                        format!("include(Z{d})"),
                        &aux,
                        src,
                        (0..d).map(|x| x * (modulus / d)).collect(),
                    )?;
                }
            }
            (RingKind::IntegersMod(_), ModuleKind::DirectSum(moduli)) if moduli.len() > 1 => {
                for (i, &d) in moduli.iter().enumerate() {
                    let aux = cyclic(d)?;
                    let project = (0..n).map(|x| direct_sum_coords(x, moduli)[i]).collect();
                    push(format!("project({i})"), src, &aux, project)?;
                    let include = (0..d)
                        .map(|v| {
                            moduli
                                .iter()
                                .enumerate()
                                .fold(0, |acc, (j, &mj)| acc * mj + if i == j { v } else { 0 })
                        })
                        .collect();
                    push(format!("include({i})"), &aux, src, include)?;
                }
            }
            _ => {}
        }
        Ok(out)
    }

    /// Monoids `{1, x, x², …}` for every homogeneous `x`, plus declared sets,
    /// deduplicated and in canonical order.
    pub fn localizations(&self) -> &[LocalizationCase] {
        self.localizations.get_or_init(|| {
            let ring = self.analysis.ring();
            let r = ring.ring();
            let mut sets: Vec<Vec<usize>> = ring
                .grading()
                .homogeneous_elements()
                .iter()
                .map(|x| {
                    let mut s: Vec<usize> = ring.power_set(x).iter().collect();
                    s.push(r.one());
                    s.sort_unstable();
                    s.dedup();
                    s
                })
                .collect();
            for (_, s) in &self.denominators {
                let mut s = s.clone();
                s.sort_unstable();
                s.dedup();
                sets.push(s);
            }
            sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            sets.dedup();
            sets.into_par_iter()
                .map(|s| {
                    let name = format!("{{{}}}", s.iter().map(|&x| r.label(x)).collect::<Vec<_>>().join(","));
                    let localized = localize(self.module(), &s)
                        .map(|loc| {
                            let analysis = ModuleAnalysis::new(loc.module().clone(), self.analysis.cap);
                            (loc, analysis)
                        })
                        .map_err(|e| e.to_string());
                    LocalizationCase {
                        name,
                        denominators: s,
                        localized,
                    }
                })
                .collect()
        })
    }
}

#[derive(Debug)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn new(entries: Vec<CorpusEntry>) -> Self {
        Corpus { entries }
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

fn trivial_group() -> Result<Arc<crate::algebra::GradingGroup>> {
    make_group(&GroupDescriptor::Trivial)
}

fn zmod_ring(n: i64) -> Result<Arc<GradedRing>> {
    GradedRing::trivial(&make_ring(&RingDescriptor::IntegersMod(n))?, &trivial_group()?)
}

fn regular_zmod(n: i64) -> Result<Arc<GradedModule>> {
    GradedModule::regular(&zmod_ring(n)?)
}

fn group_ring(p: i64, order: i64) -> Result<Arc<GradedRing>> {
    let g = make_group(&GroupDescriptor::Cyclic(order))?;
    GradedRing::natural(&make_ring(&RingDescriptor::GroupRing { p, group: g.clone() })?, &g)
}

/// The versioned standard corpus. Entry order is part of the contract:
/// searches report the first match in this order.
pub fn build_standard_corpus(cap: usize) -> Result<Corpus> {
    let mut entries = Vec::new();
    for n in [4, 6, 9] {
        entries.push(CorpusEntry::new(format!("zmod{n}"), regular_zmod(n)?, cap));
    }
    entries.push(CorpusEntry::new("zmod12", regular_zmod(12)?, cap).with_denominators("S", vec![1, 3, 9]));

    let z180 = zmod_ring(180)?;
    let m = make_module(&ModuleDescriptor::DirectSum(vec![4, 9, 5]), z180.ring())?;
    let m = GradedModule::trivial(&m, &z180)?;
    let n = crate::subobjects::span(
        &*m,
        [m.find("(1,0,0)").expect("label"), m.find("(0,1,0)").expect("label")],
    );
    entries.push(
        CorpusEntry::new("directsum(4,9,5)/zmod180", m, cap)
            .with_note("finite model, exponent 180")
            .with_named("N", n),
    );

    for n in [8, 36] {
        entries.push(CorpusEntry::new(format!("zmod{n}"), regular_zmod(n)?, cap));
    }
    for p in [2, 3] {
        entries.push(CorpusEntry::new(
            format!("F{p}[C2]"),
            GradedModule::regular(&group_ring(p, 2)?)?,
            cap,
        ));
    }

    let z4 = zmod_ring(4)?;
    let m = make_module(&ModuleDescriptor::DirectSum(vec![2, 4]), z4.ring())?;
    entries.push(CorpusEntry::new(
        "directsum(2,4)/zmod4",
        GradedModule::trivial(&m, &z4)?,
        cap,
    ));

    let c2 = make_group(&GroupDescriptor::Cyclic(2))?;
    let z4_over_c2 = GradedRing::trivial(&make_ring(&RingDescriptor::IntegersMod(4))?, &c2)?;
    let product = GradedModule::product(
        &GradedModule::regular(&group_ring(2, 2)?)?,
        &GradedModule::regular(&z4_over_c2)?,
    )?;
    entries.push(CorpusEntry::new("F2[C2]xzmod4", product, cap));

    for (a, b) in [(4, 6), (4, 9)] {
        let product = GradedModule::product(&regular_zmod(a)?, &regular_zmod(b)?)?;
        entries.push(CorpusEntry::new(format!("zmod{a}xzmod{b}"), product, cap));
    }
    Ok(Corpus::new(entries))
}
