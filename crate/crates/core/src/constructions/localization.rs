//! Fractions `x/s` with `x/s = y/t` iff `u(t·x − s·y) = 0` for some `u ∈ S`.
//!
//! Classes are numbered in order of their smallest pair
//! `(numerator, position of the denominator in S)`. The localized structure is
//! graded by giving `x/s`, with `x` of degree `h` and `s` of degree `d`, the
//! degree `d⁻¹h`; the resulting components are validated like any other
//! grading.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{FiniteModule, FiniteRing, ModuleKind, RingKind};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::grading::{Carrier, ComponentAssignment, GradedModule, GradedRing};
use crate::subobjects::SubobjectHandle;

/// Sorted, deduplicated `S` after checking `1 ∈ S`, `S ⊆ h(R)` and closure.
pub fn check_denominators(ring: &GradedRing, s: &[usize]) -> Result<Vec<usize>> {
    let r = ring.ring();
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&x) = s.iter().find(|&&x| x >= r.size()) {
        return Err(Error::InvalidDenominators(format!("{x} is not a ring element")));
    }
    if !s.contains(&r.one()) {
        return Err(Error::InvalidDenominators("1 is missing".into()));
    }
    if let Some(&x) = s.iter().find(|&&x| ring.grading().is_homogeneous(x).is_none()) {
        return Err(Error::InvalidDenominators(format!("{} is not homogeneous", r.label(x))));
    }
    for &a in &s {
        for &b in &s {
            if s.binary_search(&r.mul(a, b)).is_err() {
                return Err(Error::InvalidDenominators(format!(
                    "{} · {} = {} is not in S",
                    r.label(a),
                    r.label(b),
                    r.label(r.mul(a, b))
                )));
            }
        }
    }
    Ok(s)
}

#[derive(Debug)]
struct Fractions {
    s: Vec<usize>,
    /// Class of the pair `(x, S[i])` at `x * |S| + i`.
    class_of: Vec<usize>,
    reps: Vec<(usize, usize)>,
}

impl Fractions {
    fn build<C: Carrier + ?Sized>(c: &C, s: Vec<usize>) -> Self {
        let ns = s.len();
        let n = c.size();
        let unassigned = usize::MAX;
        let mut class_of = vec![unassigned; n * ns];
        let mut reps: Vec<(usize, usize)> = Vec::new();
        let equivalent = |(x, i): (usize, usize), (y, j): (usize, usize)| {
            let diff = c.add(c.act(s[j], x), c.neg(c.act(s[i], y)));
            s.iter().any(|&u| c.act(u, diff) == c.zero())
        };
        for x in 0..n {
            for i in 0..ns {
                let found = reps.iter().position(|&rep| equivalent(rep, (x, i)));
                class_of[x * ns + i] = found.unwrap_or_else(|| {
                    reps.push((x, i));
                    reps.len() - 1
                });
            }
        }
        Fractions { s, class_of, reps }
    }

    fn position(&self, s: usize) -> Option<usize> {
        self.s.binary_search(&s).ok()
    }

    fn class(&self, x: usize, i: usize) -> usize {
        self.class_of[x * self.s.len() + i]
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    fn labels(&self, numerator: impl Fn(usize) -> String, denominator: impl Fn(usize) -> String) -> Vec<String> {
        let wrap = |l: String| if l.contains('+') { format!("({l})") } else { l };
        self.reps
            .iter()
            .map(|&(x, i)| format!("{}/{}", wrap(numerator(x)), wrap(denominator(self.s[i]))))
            .collect()
    }

    /// Components of the induced grading.
    fn components<C: Carrier + ?Sized>(&self, c: &C, ring: &GradedRing) -> Vec<ElemSet> {
        let group = ring.group();
        let mut components = vec![ElemSet::singleton(self.len(), self.class(c.zero(), 0)); group.order()];
        for x in c.grading().homogeneous_elements().iter() {
            if x == c.zero() {
                continue;
            }
            let h = c.grading().is_homogeneous(x).expect("homogeneous");
            for (i, &s) in self.s.iter().enumerate() {
                let d = ring.grading().is_homogeneous(s).expect("denominators are homogeneous");
                components[group.op(group.inverse(d), h)].insert(self.class(x, i));
            }
        }
        components
    }

    fn localize_set(&self, members: &ElemSet) -> ElemSet {
        ElemSet::from_elems(
            self.len(),
            members
                .iter()
                .flat_map(|x| (0..self.s.len()).map(move |i| self.class(x, i))),
        )
    }
}

/// `S⁻¹R` with the map from pairs to classes.
#[derive(Debug)]
pub struct LocalizedRing {
    base: Arc<GradedRing>,
    fractions: Fractions,
    ring: Arc<GradedRing>,
}

pub fn localize_ring(base: &Arc<GradedRing>, s: &[usize]) -> Result<Arc<LocalizedRing>> {
    let s = check_denominators(base, s)?;
    let r = base.ring();
    let fr = Fractions::build(&**base, s);
    let n = fr.len();
    let s_mul = |i: usize, j: usize| fr.position(r.mul(fr.s[i], fr.s[j])).expect("S is closed");
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for (p, &(a, i)) in fr.reps.iter().enumerate() {
        for (q, &(b, j)) in fr.reps.iter().enumerate() {
            let st = s_mul(i, j);
            add[p * n + q] = fr.class(r.add(r.mul(fr.s[j], a), r.mul(fr.s[i], b)), st);
            mul[p * n + q] = fr.class(r.mul(a, b), st);
        }
    }
    let one_pos = fr.position(r.one()).expect("1 ∈ S");
    let labels = fr.labels(|x| r.label(x).to_string(), |s| r.label(s).to_string());
    let zero = fr.class(r.zero(), one_pos);
    let one = fr.class(r.one(), one_pos);
    let ring = if n == 1 {
        // 0 ∈ S: the zero ring, whose only failed axiom is 1 ≠ 0.
        FiniteRing::from_tables_unchecked(RingKind::Tables, labels, add, mul, zero, one)
    } else {
        FiniteRing::from_tables(RingKind::Tables, labels, add, mul, zero, one)?
    };
    let ring = Arc::new(ring);
    let components = fr.components(&**base, base);
    let ring = GradedRing::new(ring, base.group(), &ComponentAssignment::Explicit(components))?;
    Ok(Arc::new(LocalizedRing {
        base: base.clone(),
        fractions: fr,
        ring,
    }))
}

impl LocalizedRing {
    pub fn base(&self) -> &Arc<GradedRing> {
        &self.base
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn denominators(&self) -> &[usize] {
        &self.fractions.s
    }

    pub fn class_count(&self) -> usize {
        self.fractions.len()
    }

    /// Class of `x/s`; `None` if `s ∉ S`.
    pub fn fraction(&self, x: usize, s: usize) -> Option<usize> {
        self.fractions.position(s).map(|i| self.fractions.class(x, i))
    }

    /// Smallest `(numerator, denominator)` pair of a class.
    pub fn representative(&self, class: usize) -> (usize, usize) {
        let (x, i) = self.fractions.reps[class];
        (x, self.fractions.s[i])
    }

    /// `S⁻¹I` as an ideal of `S⁻¹R`.
    pub fn localize_subobject(&self, i: &SubobjectHandle) -> SubobjectHandle {
        SubobjectHandle::closed(&*self.ring, self.fractions.localize_set(i.members()))
    }
}

/// `S⁻¹M` over `S⁻¹R`.
#[derive(Debug)]
pub struct LocalizedModule {
    base: Arc<GradedModule>,
    ring: Arc<LocalizedRing>,
    fractions: Fractions,
    module: Arc<GradedModule>,
}

pub fn localize_module(base: &Arc<GradedModule>, ring: &Arc<LocalizedRing>) -> Result<LocalizedModule> {
    if !Arc::ptr_eq(base.ring(), &ring.base) && **base.ring().ring() != **ring.base.ring() {
        return Err(Error::PreconditionViolation("module is over a different ring".into()));
    }
    let m = &**base;
    let r = ring.base.ring();
    let rf = &ring.fractions;
    let fr = Fractions::build(m, rf.s.clone());
    let n = fr.len();
    let s_mul = |i: usize, j: usize| fr.position(r.mul(fr.s[i], fr.s[j])).expect("S is closed");
    let mut add = vec![0; n * n];
    for (p, &(x, i)) in fr.reps.iter().enumerate() {
        for (q, &(y, j)) in fr.reps.iter().enumerate() {
            add[p * n + q] = fr.class(m.add(m.act(fr.s[j], x), m.act(fr.s[i], y)), s_mul(i, j));
        }
    }
    let nr = rf.len();
    let mut action = vec![0; nr * n];
    for (p, &(a, i)) in rf.reps.iter().enumerate() {
        for (q, &(x, j)) in fr.reps.iter().enumerate() {
            action[p * n + q] = fr.class(m.act(a, x), s_mul(i, j));
        }
    }
    let one_pos = fr.position(r.one()).expect("1 ∈ S");
    let labels = fr.labels(|x| m.label(x).to_string(), |s| r.label(s).to_string());
    let zero = fr.class(m.zero(), one_pos);
    let module = FiniteModule::from_tables(ring.ring.ring().clone(), ModuleKind::Tables, labels, add, zero, action)?;
    let components = fr.components(m, &ring.base);
    let module = GradedModule::new(Arc::new(module), &ring.ring, &ComponentAssignment::Explicit(components))?;
    Ok(LocalizedModule {
        base: base.clone(),
        ring: ring.clone(),
        fractions: fr,
        module,
    })
}

/// Localizes the scalar ring at `s`, then the module.
pub fn localize(base: &Arc<GradedModule>, s: &[usize]) -> Result<LocalizedModule> {
    let ring = localize_ring(base.ring(), s)?;
    localize_module(base, &ring)
}

impl LocalizedModule {
    pub fn base(&self) -> &Arc<GradedModule> {
        &self.base
    }

    pub fn ring(&self) -> &Arc<LocalizedRing> {
        &self.ring
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn denominators(&self) -> &[usize] {
        &self.fractions.s
    }

    pub fn class_count(&self) -> usize {
        self.fractions.len()
    }

    pub fn fraction(&self, x: usize, s: usize) -> Option<usize> {
        self.fractions.position(s).map(|i| self.fractions.class(x, i))
    }

    pub fn representative(&self, class: usize) -> (usize, usize) {
        let (x, i) = self.fractions.reps[class];
        (x, self.fractions.s[i])
    }

    /// `S⁻¹N`: all classes `x/s` with `x ∈ N`.
    pub fn localize_subobject(&self, n: &SubobjectHandle) -> SubobjectHandle {
        SubobjectHandle::closed(&*self.module, self.fractions.localize_set(n.members()))
    }
}

/// Pairs `(x, s)` grouped by class, for callers that want to inspect the
/// congruence directly.
pub fn classes_by_pair(loc: &LocalizedModule) -> HashMap<usize, Vec<(usize, usize)>> {
    let mut out: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for x in 0..loc.base.size() {
        for &s in &loc.fractions.s {
            out.entry(loc.fraction(x, s).expect("s ∈ S")).or_default().push((x, s));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::*;
    use crate::subobjects::{span, whole, zero_subobject};

    fn zmod(n: i64) -> Arc<GradedModule> {
        let r = make_ring(&RingDescriptor::IntegersMod(n)).unwrap();
        let r = GradedRing::trivial(&r, &make_group(&GroupDescriptor::Trivial).unwrap()).unwrap();
        GradedModule::regular(&r).unwrap()
    }

    #[test]
    fn z12_at_powers_of_three_has_four_classes() {
        let m = zmod(12);
        let loc = localize(&m, &[1, 3, 9]).unwrap();
        assert_eq!(loc.class_count(), 4);
        assert_eq!(loc.ring().class_count(), 4);
        let n = span(&*m, [4]);
        assert!(loc.localize_subobject(&n).is_zero());
        assert!(loc.localize_subobject(&whole(&*m)).is_whole());
        assert!(loc.localize_subobject(&zero_subobject(&*m)).is_zero());
        // 3/1 is a unit: 3/1 · 3/9 = 9/9 = 1.
        let r = loc.ring().ring().ring();
        let three = loc.ring().fraction(3, 1).unwrap();
        let inv = loc.ring().fraction(3, 9).unwrap();
        assert_eq!(r.mul(three, inv), r.one());
    }

    #[test]
    fn trivial_denominators_change_nothing() {
        let m = zmod(6);
        let loc = localize(&m, &[1]).unwrap();
        assert_eq!(loc.class_count(), 6);
        for x in 0..6 {
            assert_eq!(loc.representative(loc.fraction(x, 1).unwrap()), (x, 1));
        }
    }

    #[test]
    fn nilpotent_denominator_collapses_everything() {
        let loc = localize(&zmod(12), &[0, 1, 6]).unwrap();
        assert_eq!(loc.class_count(), 1);
    }

    #[test]
    fn bad_denominators_are_rejected() {
        let m = zmod(12);
        for s in [&[3, 9][..], &[1, 2][..], &[1, 13][..]] {
            assert!(matches!(localize(&m, s), Err(Error::InvalidDenominators(_))));
        }
    }

    #[test]
    fn group_ring_localization_is_graded() {
        let g = make_group(&GroupDescriptor::Cyclic(2)).unwrap();
        let r = make_ring(&RingDescriptor::GroupRing { p: 3, group: g.clone() }).unwrap();
        let r = GradedRing::natural(&r, &g).unwrap();
        let m = GradedModule::regular(&r).unwrap();
        let gen = r.ring().find("g").unwrap();
        // g² = 1, so {1, g} is multiplicative and g is already a unit.
        let loc = localize(&m, &[r.ring().one(), gen]).unwrap();
        assert_eq!(loc.class_count(), 9);
        let pairs = classes_by_pair(&loc);
        assert_eq!(pairs.values().map(Vec::len).sum::<usize>(), 18);
    }
}
