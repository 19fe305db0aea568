//! Graded classification predicates for ideals and submodules.
//!
//! Submodule predicates come in a definitional form, which quantifies the
//! test submodule `K` over every graded submodule, and a characterization
//! form for 2-absorbing coprimality that only compares `x^k N` with `xyN`.
//! Every negative verdict carries a witness that the `recheck_*` functions
//! re-evaluate from the raw tables.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::grading::{Carrier, GradedModule, GradedRing};
use crate::subobjects::{
    annihilator, colon, enumerate_graded_subobjects, graded_radical, scale, SubobjectHandle, SubobjectKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdealPredicate {
    Prime,
    Primary,
    TwoAbsorbing,
    TwoAbsorbingPrimary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubmodulePredicate {
    Second,
    StronglyTwoAbsorbingSecond,
    TwoAbsorbingCoprimary,
    /// Pairs restricted to one component `R_g`; holds the group element index.
    GTwoAbsorbingCoprimary(usize),
}

/// Stable string identifiers used by the CLI, reports and search expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PredicateId {
    Prime,
    Primary,
    TwoAbsorbing,
    TwoAbsorbingPrimary,
    Second,
    StrongSecond,
    Coprimary,
    /// `g-2a-coprimary:<g>` with the group element label.
    GCoprimary(String),
    Comultiplication,
}

impl FromStr for PredicateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "prime" => PredicateId::Prime,
            "primary" => PredicateId::Primary,
            "2-absorbing" => PredicateId::TwoAbsorbing,
            "2-absorbing-primary" => PredicateId::TwoAbsorbingPrimary,
            "second" => PredicateId::Second,
            "strong-2a-second" => PredicateId::StrongSecond,
            "2a-coprimary" => PredicateId::Coprimary,
            "comultiplication" => PredicateId::Comultiplication,
            _ => match s.strip_prefix("g-2a-coprimary:") {
                Some(g) if !g.is_empty() => PredicateId::GCoprimary(g.to_string()),
                _ => return Err(Error::UnknownPredicate(s.to_string())),
            },
        })
    }
}

impl fmt::Display for PredicateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateId::Prime => f.write_str("prime"),
            PredicateId::Primary => f.write_str("primary"),
            PredicateId::TwoAbsorbing => f.write_str("2-absorbing"),
            PredicateId::TwoAbsorbingPrimary => f.write_str("2-absorbing-primary"),
            PredicateId::Second => f.write_str("second"),
            PredicateId::StrongSecond => f.write_str("strong-2a-second"),
            PredicateId::Coprimary => f.write_str("2a-coprimary"),
            PredicateId::GCoprimary(g) => write!(f, "g-2a-coprimary:{g}"),
            PredicateId::Comultiplication => f.write_str("comultiplication"),
        }
    }
}

impl PredicateId {
    pub fn ideal(&self) -> Option<IdealPredicate> {
        match self {
            PredicateId::Prime => Some(IdealPredicate::Prime),
            PredicateId::Primary => Some(IdealPredicate::Primary),
            PredicateId::TwoAbsorbing => Some(IdealPredicate::TwoAbsorbing),
            PredicateId::TwoAbsorbingPrimary => Some(IdealPredicate::TwoAbsorbingPrimary),
            _ => None,
        }
    }

    /// Resolves a submodule predicate against a module's grading group.
    /// `Ok(None)` for ideal predicates and `comultiplication`.
    pub fn submodule(&self, module: &GradedModule) -> Result<Option<SubmodulePredicate>> {
        Ok(match self {
            PredicateId::Second => Some(SubmodulePredicate::Second),
            PredicateId::StrongSecond => Some(SubmodulePredicate::StronglyTwoAbsorbingSecond),
            PredicateId::Coprimary => Some(SubmodulePredicate::TwoAbsorbingCoprimary),
            PredicateId::GCoprimary(label) => {
                let g = module
                    .ring()
                    .group()
                    .find(label)
                    .ok_or_else(|| Error::UnknownPredicate(format!("{self}: no group element `{label}`")))?;
                Some(SubmodulePredicate::GTwoAbsorbingCoprimary(g))
            }
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Ring elements breaking an ideal predicate, or the scalar breaking `second`.
    Scalars(Vec<usize>),
    /// `x`, `y` and a graded submodule `K` with `xyN ⊆ K` and no escape.
    PairWithSubmodule { x: usize, y: usize, k: ElemSet },
    /// A graded submodule `N` with `N ≠ (0 :_M Ann(N))`.
    Submodule(ElemSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateVerdict {
    pub value: bool,
    pub witness: Option<Witness>,
}

impl PredicateVerdict {
    fn holds() -> Self {
        PredicateVerdict {
            value: true,
            witness: None,
        }
    }

    fn fails(w: Witness) -> Self {
        PredicateVerdict {
            value: false,
            witness: Some(w),
        }
    }
}

fn check_ideal(ring: &GradedRing, p: &SubobjectHandle) -> Result<()> {
    if p.kind() != SubobjectKind::Ideal || p.members().universe() != ring.size() {
        return Err(Error::PreconditionViolation("expected an ideal of this ring".into()));
    }
    if !p.graded() {
        return Err(Error::PreconditionViolation("ideal is not graded".into()));
    }
    if p.is_whole() {
        return Err(Error::PreconditionViolation("ideal is not proper".into()));
    }
    Ok(())
}

/// Exhaustive check of an ideal predicate over homogeneous elements.
pub fn classify_ideal(ring: &GradedRing, p: &SubobjectHandle, predicate: IdealPredicate) -> Result<PredicateVerdict> {
    check_ideal(ring, p)?;
    let r = ring.ring();
    let pm = p.members();
    let h: Vec<usize> = ring.grading().homogeneous_elements().iter().collect();
    let rad = match predicate {
        IdealPredicate::Prime | IdealPredicate::TwoAbsorbing => None,
        _ => Some(graded_radical(ring, p)?.members().clone()),
    };
    match predicate {
        IdealPredicate::Prime | IdealPredicate::Primary => {
            let escape = rad.as_ref().unwrap_or(pm);
            for &a in &h {
                if pm.contains(a) {
                    continue;
                }
                for &b in &h {
                    if pm.contains(r.mul(a, b)) && !escape.contains(b) {
                        return Ok(PredicateVerdict::fails(Witness::Scalars(vec![a, b])));
                    }
                }
            }
        }
        IdealPredicate::TwoAbsorbing | IdealPredicate::TwoAbsorbingPrimary => {
            let escape = rad.as_ref().unwrap_or(pm);
            for &a in &h {
                for &b in &h {
                    let ab = r.mul(a, b);
                    if pm.contains(ab) {
                        continue;
                    }
                    for &c in &h {
                        if pm.contains(r.mul(ab, c)) && !escape.contains(r.mul(a, c)) && !escape.contains(r.mul(b, c)) {
                            return Ok(PredicateVerdict::fails(Witness::Scalars(vec![a, b, c])));
                        }
                    }
                }
            }
        }
    }
    Ok(PredicateVerdict::holds())
}

/// Per-submodule tables: `r ↦ rN` for every ring element, and `Ann(N)`.
struct ScaledSubmodule {
    sets: Vec<ElemSet>,
    ann: ElemSet,
}

impl ScaledSubmodule {
    fn new(m: &GradedModule, n: &SubobjectHandle) -> Self {
        let sets: Vec<ElemSet> = m.ring().ring().elements().map(|r| scale(m, r, n.members())).collect();
        let ann = ElemSet::from_elems(sets.len(), (0..sets.len()).filter(|&r| sets[r].len() == 1));
        ScaledSubmodule { sets, ann }
    }
}

fn check_submodule(m: &GradedModule, n: &SubobjectHandle) -> Result<()> {
    if n.kind() != SubobjectKind::Submodule || n.members().universe() != m.size() {
        return Err(Error::PreconditionViolation(
            "expected a submodule of this module".into(),
        ));
    }
    if !n.graded() {
        return Err(Error::PreconditionViolation("submodule is not graded".into()));
    }
    if n.is_zero() {
        return Err(Error::PreconditionViolation("submodule must be non-zero".into()));
    }
    Ok(())
}

/// Definitional classifier bound to one graded module and its list of
/// graded submodules (the range of `K`).
pub struct SubmoduleClassifier<'m> {
    module: &'m GradedModule,
    submodules: Cow<'m, [SubobjectHandle]>,
}

impl<'m> SubmoduleClassifier<'m> {
    pub fn new(module: &'m GradedModule, cap: usize) -> Result<Self> {
        let submodules = enumerate_graded_subobjects(module, cap)?;
        Ok(SubmoduleClassifier {
            module,
            submodules: Cow::Owned(submodules),
        })
    }

    /// Reuses an already enumerated list of all graded submodules.
    pub fn with_submodules(module: &'m GradedModule, submodules: &'m [SubobjectHandle]) -> Self {
        SubmoduleClassifier {
            module,
            submodules: Cow::Borrowed(submodules),
        }
    }

    pub fn module(&self) -> &GradedModule {
        self.module
    }

    pub fn submodules(&self) -> &[SubobjectHandle] {
        &self.submodules
    }

    pub fn classify(&self, n: &SubobjectHandle, predicate: SubmodulePredicate) -> Result<PredicateVerdict> {
        check_submodule(self.module, n)?;
        let m = self.module;
        let ring = m.ring();
        let r = ring.ring();
        let scaled = ScaledSubmodule::new(m, n);
        let h: Vec<usize> = match predicate {
            SubmodulePredicate::GTwoAbsorbingCoprimary(g) => ring.grading().component(g).iter().collect(),
            _ => ring.grading().homogeneous_elements().iter().collect(),
        };

        match predicate {
            SubmodulePredicate::Second => {
                for &a in &h {
                    let an = &scaled.sets[a];
                    if an.len() != 1 && an != n.members() {
                        return Ok(PredicateVerdict::fails(Witness::Scalars(vec![a])));
                    }
                }
            }
            SubmodulePredicate::StronglyTwoAbsorbingSecond => {
                for &x in &h {
                    for &y in &h {
                        let xy = r.mul(x, y);
                        if scaled.ann.contains(xy) {
                            continue;
                        }
                        let xyn = &scaled.sets[xy];
                        for k in self.submodules.iter() {
                            let k = k.members();
                            if xyn.is_subset(k) && !scaled.sets[x].is_subset(k) && !scaled.sets[y].is_subset(k) {
                                return Ok(PredicateVerdict::fails(Witness::PairWithSubmodule {
                                    x,
                                    y,
                                    k: k.clone(),
                                }));
                            }
                        }
                    }
                }
            }
            SubmodulePredicate::TwoAbsorbingCoprimary | SubmodulePredicate::GTwoAbsorbingCoprimary(_) => {
                // Grad((K :_R N)) for every K, through the operators themselves.
                let radicals: Vec<ElemSet> = self
                    .submodules
                    .iter()
                    .map(|k| Ok(graded_radical(ring, &colon(m, k, n))?.members().clone()))
                    .collect::<Result<_>>()?;
                for &x in &h {
                    for &y in &h {
                        let xy = r.mul(x, y);
                        if scaled.ann.contains(xy) {
                            continue;
                        }
                        let xyn = &scaled.sets[xy];
                        for (k, rad) in self.submodules.iter().zip(&radicals) {
                            if xyn.is_subset(k.members()) && !rad.contains(x) && !rad.contains(y) {
                                return Ok(PredicateVerdict::fails(Witness::PairWithSubmodule {
                                    x,
                                    y,
                                    k: k.members().clone(),
                                }));
                            }
                        }
                    }
                }
            }
        }
        Ok(PredicateVerdict::holds())
    }

    /// Every graded `N` satisfies `N = (0 :_M Ann(N))`.
    pub fn is_comultiplication(&self) -> PredicateVerdict {
        let m = self.module;
        for n in self.submodules.iter() {
            let ann: Vec<usize> = annihilator(m, n).members().iter().collect();
            let closure = ElemSet::from_elems(
                m.size(),
                (0..m.size()).filter(|&x| ann.iter().all(|&r| m.act(r, x) == m.zero())),
            );
            if &closure != n.members() {
                return PredicateVerdict::fails(Witness::Submodule(n.members().clone()));
            }
        }
        PredicateVerdict::holds()
    }
}

pub fn classify_submodule(
    m: &GradedModule,
    n: &SubobjectHandle,
    predicate: SubmodulePredicate,
    cap: usize,
) -> Result<PredicateVerdict> {
    check_submodule(m, n)?;
    SubmoduleClassifier::new(m, cap)?.classify(n, predicate)
}

pub fn is_graded_comultiplication_module(m: &GradedModule, cap: usize) -> Result<PredicateVerdict> {
    Ok(SubmoduleClassifier::new(m, cap)?.is_comultiplication())
}

/// 2-absorbing coprimality without quantifying over `K`: for all homogeneous
/// `x, y`, some `x^k N` or `y^k N` lies in `xyN`, or `xy` kills `N`.
pub fn coprimary_via_characterization(m: &GradedModule, n: &SubobjectHandle) -> Result<PredicateVerdict> {
    check_submodule(m, n)?;
    let ring = m.ring();
    let r = ring.ring();
    let scaled = ScaledSubmodule::new(m, n);
    let h: Vec<usize> = ring.grading().homogeneous_elements().iter().collect();
    let absorbed = |x: usize, target: &ElemSet| ring.power_set(x).iter().any(|p| scaled.sets[p].is_subset(target));
    for &x in &h {
        for &y in &h {
            let xy = r.mul(x, y);
            if scaled.ann.contains(xy) {
                continue;
            }
            let xyn = &scaled.sets[xy];
            if !absorbed(x, xyn) && !absorbed(y, xyn) {
                return Ok(PredicateVerdict::fails(Witness::PairWithSubmodule {
                    x,
                    y,
                    k: xyn.clone(),
                }));
            }
        }
    }
    Ok(PredicateVerdict::holds())
}

// ---------------------------------------------------------------------------
// Witness re-checks, computed straight from the tables.

fn direct_pow(r: &crate::algebra::FiniteRing, x: usize, k: usize) -> usize {
    let mut acc = x;
    for _ in 1..k {
        acc = r.mul(acc, x);
    }
    acc
}

fn carries_into<C: Carrier + ?Sized>(c: &C, r: usize, n: &ElemSet, k: &ElemSet) -> bool {
    n.iter().all(|m| k.contains(c.act(r, m)))
}

fn some_power_carries_into(m: &GradedModule, x: usize, n: &ElemSet, k: &ElemSet) -> bool {
    let r = m.ring().ring();
    (1..=r.size()).any(|e| carries_into(m, direct_pow(r, x, e), n, k))
}

fn some_power_in(r: &crate::algebra::FiniteRing, x: usize, p: &ElemSet) -> bool {
    (1..=r.size()).any(|e| p.contains(direct_pow(r, x, e)))
}

/// True iff `w` genuinely violates `predicate` for the ideal `p`.
pub fn recheck_ideal_witness(ring: &GradedRing, p: &ElemSet, predicate: IdealPredicate, w: &Witness) -> bool {
    let r = ring.ring();
    let homogeneous = |x: usize| ring.grading().is_homogeneous(x).is_some();
    let in_rad = |x: usize| {
        ring.grading()
            .decompose(x)
            .iter()
            .all(|&part| some_power_in(r, part, p))
    };
    match (predicate, w) {
        (IdealPredicate::Prime, Witness::Scalars(v)) if v.len() == 2 => {
            let (a, b) = (v[0], v[1]);
            homogeneous(a) && homogeneous(b) && p.contains(r.mul(a, b)) && !p.contains(a) && !p.contains(b)
        }
        (IdealPredicate::Primary, Witness::Scalars(v)) if v.len() == 2 => {
            let (a, b) = (v[0], v[1]);
            homogeneous(a) && homogeneous(b) && p.contains(r.mul(a, b)) && !p.contains(a) && !in_rad(b)
        }
        (IdealPredicate::TwoAbsorbing, Witness::Scalars(v)) if v.len() == 3 => {
            let (a, b, c) = (v[0], v[1], v[2]);
            [a, b, c].iter().all(|&x| homogeneous(x))
                && p.contains(r.mul(r.mul(a, b), c))
                && !p.contains(r.mul(a, b))
                && !p.contains(r.mul(a, c))
                && !p.contains(r.mul(b, c))
        }
        (IdealPredicate::TwoAbsorbingPrimary, Witness::Scalars(v)) if v.len() == 3 => {
            let (a, b, c) = (v[0], v[1], v[2]);
            [a, b, c].iter().all(|&x| homogeneous(x))
                && p.contains(r.mul(r.mul(a, b), c))
                && !p.contains(r.mul(a, b))
                && !in_rad(r.mul(a, c))
                && !in_rad(r.mul(b, c))
        }
        _ => false,
    }
}

/// True iff `w` genuinely violates `predicate` for the submodule `n`.
pub fn recheck_submodule_witness(m: &GradedModule, n: &ElemSet, predicate: SubmodulePredicate, w: &Witness) -> bool {
    let ring = m.ring();
    let r = ring.ring();
    let allowed = |x: usize| match predicate {
        SubmodulePredicate::GTwoAbsorbingCoprimary(g) => ring.grading().component(g).contains(x),
        _ => ring.grading().is_homogeneous(x).is_some(),
    };
    let kills = |s: usize| n.iter().all(|x| m.act(s, x) == m.zero());
    match (predicate, w) {
        (SubmodulePredicate::Second, Witness::Scalars(v)) if v.len() == 1 => {
            let a = v[0];
            let an = ElemSet::from_elems(m.size(), n.iter().map(|x| m.act(a, x)));
            allowed(a) && !kills(a) && &an != n
        }
        (_, Witness::PairWithSubmodule { x, y, k }) => {
            let (x, y) = (*x, *y);
            let Ok(k_handle) = SubobjectHandle::from_members(m, k.clone()) else {
                return false;
            };
            let xy = r.mul(x, y);
            let base = allowed(x) && allowed(y) && k_handle.graded() && carries_into(m, xy, n, k) && !kills(xy);
            base && match predicate {
                SubmodulePredicate::Second => false,
                SubmodulePredicate::StronglyTwoAbsorbingSecond => {
                    !carries_into(m, x, n, k) && !carries_into(m, y, n, k)
                }
                SubmodulePredicate::TwoAbsorbingCoprimary | SubmodulePredicate::GTwoAbsorbingCoprimary(_) => {
                    !some_power_carries_into(m, x, n, k) && !some_power_carries_into(m, y, n, k)
                }
            }
        }
        _ => false,
    }
}

/// True iff the witnessed submodule is graded and differs from `(0 :_M Ann(N))`.
pub fn recheck_comultiplication_witness(m: &GradedModule, w: &Witness) -> bool {
    let Witness::Submodule(n) = w else {
        return false;
    };
    let Ok(handle) = SubobjectHandle::from_members(m, n.clone()) else {
        return false;
    };
    let r = m.ring().ring();
    let ann: Vec<usize> = r
        .elements()
        .filter(|&s| n.iter().all(|x| m.act(s, x) == m.zero()))
        .collect();
    let closure = ElemSet::from_elems(
        m.size(),
        (0..m.size()).filter(|&x| ann.iter().all(|&s| m.act(s, x) == m.zero())),
    );
    handle.graded() && &closure != n
}
