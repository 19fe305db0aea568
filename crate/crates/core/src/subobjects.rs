//! Graded ideals and graded submodules as closed element sets, with the
//! operator calculus on them: sums, intersections, products, colons,
//! annihilators and graded radicals, plus exhaustive enumeration.
//!
//! Everything is written against [`Carrier`], so an ideal is simply a
//! subobject of the ring acting on itself.

use std::collections::HashSet;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::grading::{Carrier, GradedRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubobjectKind {
    Ideal,
    Submodule,
}

/// A subobject (ideal or submodule) with its gradedness certificate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubobjectHandle {
    kind: SubobjectKind,
    members: ElemSet,
    graded: bool,
}

impl Ord for SubobjectHandle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members).then(self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for SubobjectHandle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl SubobjectHandle {
    /// Wraps a member set after checking it is closed under addition and the
    /// scalar action.
    pub fn from_members<C: Carrier + ?Sized>(c: &C, members: ElemSet) -> Result<Self> {
        if members.universe() != c.size() {
            return Err(Error::PreconditionViolation(
                "member set over a different carrier".into(),
            ));
        }
        if !members.contains(c.zero()) {
            return Err(Error::PreconditionViolation("subobject must contain 0".into()));
        }
        let r = c.scalars();
        for a in members.iter() {
            for s in r.ring().elements() {
                if !members.contains(c.act(s, a)) {
                    return Err(Error::PreconditionViolation(format!(
                        "{} · {} leaves the set",
                        r.ring().label(s),
                        c.label(a)
                    )));
                }
            }
            for b in members.iter() {
                if !members.contains(c.add(a, b)) {
                    return Err(Error::PreconditionViolation(format!(
                        "{} + {} leaves the set",
                        c.label(a),
                        c.label(b)
                    )));
                }
            }
        }
        Ok(Self::closed(c, members))
    }

    /// For sets already known to be closed.
    pub(crate) fn closed<C: Carrier + ?Sized>(c: &C, members: ElemSet) -> Self {
        let graded = is_graded(c, &members);
        SubobjectHandle {
            kind: c.subobject_kind(),
            members,
            graded,
        }
    }

    pub fn kind(&self) -> SubobjectKind {
        self.kind
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn graded(&self) -> bool {
        self.graded
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subset(&self, other: &SubobjectHandle) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.members.universe()
    }
}

/// True iff every homogeneous component of every member is a member.
pub fn is_graded<C: Carrier + ?Sized>(c: &C, members: &ElemSet) -> bool {
    let grading = c.grading();
    members
        .iter()
        .all(|x| grading.decompose(x).iter().all(|&part| members.contains(part)))
}

pub fn zero_subobject<C: Carrier + ?Sized>(c: &C) -> SubobjectHandle {
    SubobjectHandle::closed(c, ElemSet::singleton(c.size(), c.zero()))
}

pub fn whole<C: Carrier + ?Sized>(c: &C) -> SubobjectHandle {
    SubobjectHandle::closed(c, ElemSet::full(c.size()))
}

/// `R·x`, the cyclic subobject generated by `x`.
pub fn cyclic<C: Carrier + ?Sized>(c: &C, x: usize) -> ElemSet {
    ElemSet::from_elems(c.size(), c.scalars().ring().elements().map(|r| c.act(r, x)))
}

/// `{a + b}` for two subobjects; again a subobject.
pub(crate) fn sum_sets<C: Carrier + ?Sized>(c: &C, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut out = ElemSet::empty(c.size());
    let bs: Vec<usize> = b.iter().collect();
    for x in a.iter() {
        for &y in &bs {
            out.insert(c.add(x, y));
        }
    }
    out
}

/// Smallest subobject containing `generators`: the sum of the cyclic
/// subobjects `R·g`.
pub fn span<C: Carrier + ?Sized, I: IntoIterator<Item = usize>>(c: &C, generators: I) -> SubobjectHandle {
    let mut members = ElemSet::singleton(c.size(), c.zero());
    for g in generators {
        if !members.contains(g) {
            members = sum_sets(c, &members, &cyclic(c, g));
        }
    }
    SubobjectHandle::closed(c, members)
}

/// Second operand of [`combine`].
#[derive(Clone, Copy, Debug)]
pub enum Combine<'a> {
    Sum(&'a SubobjectHandle),
    Intersect(&'a SubobjectHandle),
    /// `I·N` for an ideal `I` of the scalar ring.
    IdealProduct(&'a SubobjectHandle),
    /// `r·N` for a homogeneous scalar `r`.
    ScalarProduct(usize),
}

pub fn combine<C: Carrier + ?Sized>(c: &C, a: &SubobjectHandle, op: Combine<'_>) -> Result<SubobjectHandle> {
    match op {
        Combine::Sum(b) => Ok(SubobjectHandle::closed(c, sum_sets(c, &a.members, &b.members))),
        Combine::Intersect(b) => Ok(SubobjectHandle::closed(c, a.members.intersection(&b.members))),
        Combine::IdealProduct(ideal) => {
            if ideal.kind != SubobjectKind::Ideal {
                return Err(Error::PreconditionViolation("ideal product needs an ideal".into()));
            }
            let mut products = ElemSet::empty(c.size());
            for i in ideal.members.iter() {
                for n in a.members.iter() {
                    products.insert(c.act(i, n));
                }
            }
            Ok(span(c, products.iter()))
        }
        Combine::ScalarProduct(r) => {
            if c.scalars().grading().is_homogeneous(r).is_none() {
                return Err(Error::PreconditionViolation(format!(
                    "scalar {} is not homogeneous",
                    c.scalars().ring().label(r)
                )));
            }
            Ok(SubobjectHandle::closed(c, scale(c, r, &a.members)))
        }
    }
}

/// `r·N` as a set, no homogeneity requirement.
pub(crate) fn scale<C: Carrier + ?Sized>(c: &C, r: usize, n: &ElemSet) -> ElemSet {
    ElemSet::from_elems(c.size(), n.iter().map(|m| c.act(r, m)))
}

/// `(K :_R N) = {r : r·N ⊆ K}`, an ideal of the scalar ring.
pub fn colon<C: Carrier + ?Sized>(c: &C, k: &SubobjectHandle, n: &SubobjectHandle) -> SubobjectHandle {
    let ring = c.scalars();
    let nm: Vec<usize> = n.members.iter().collect();
    let members = ElemSet::from_elems(
        ring.size(),
        ring.ring()
            .elements()
            .filter(|&r| nm.iter().all(|&m| k.members.contains(c.act(r, m)))),
    );
    SubobjectHandle::closed(ring, members)
}

/// `(K :_M x) = {m : x·m ∈ K}` for homogeneous `x`.
pub fn colon_element<C: Carrier + ?Sized>(c: &C, k: &SubobjectHandle, x: usize) -> Result<SubobjectHandle> {
    if c.scalars().grading().is_homogeneous(x).is_none() {
        return Err(Error::PreconditionViolation(format!(
            "{} is not homogeneous",
            c.scalars().ring().label(x)
        )));
    }
    let members = ElemSet::from_elems(c.size(), (0..c.size()).filter(|&m| k.members.contains(c.act(x, m))));
    Ok(SubobjectHandle::closed(c, members))
}

/// `Ann_R(N) = (0 :_R N)`.
pub fn annihilator<C: Carrier + ?Sized>(c: &C, n: &SubobjectHandle) -> SubobjectHandle {
    colon(c, &zero_subobject(c), n)
}

/// Whether a homogeneous `x` lies in `Grad(P)`: some `x^k`, `1 <= k <= |R|`, is in `P`.
pub fn radical_contains_homogeneous(ring: &GradedRing, p: &ElemSet, x: usize) -> bool {
    ring.power_set(x).intersects(p)
}

/// `Grad(P)`: elements all of whose homogeneous components have a power in `P`.
pub fn graded_radical(ring: &GradedRing, p: &SubobjectHandle) -> Result<SubobjectHandle> {
    if p.kind != SubobjectKind::Ideal || p.members.universe() != ring.size() {
        return Err(Error::PreconditionViolation(
            "graded radical needs an ideal of this ring".into(),
        ));
    }
    if !p.graded {
        return Err(Error::PreconditionViolation(
            "graded radical is only defined on graded ideals".into(),
        ));
    }
    let grading = ring.grading();
    let members = ElemSet::from_elems(
        ring.size(),
        ring.ring().elements().filter(|&r| {
            grading
                .decompose(r)
                .iter()
                .all(|&part| radical_contains_homogeneous(ring, &p.members, part))
        }),
    );
    Ok(SubobjectHandle::closed(ring, members))
}

/// `I ∩ R_g`.
pub fn ideal_component(ring: &GradedRing, i: &SubobjectHandle, g: usize) -> Result<ElemSet> {
    if i.kind != SubobjectKind::Ideal || !i.graded {
        return Err(Error::PreconditionViolation(
            "ideal component needs a graded ideal".into(),
        ));
    }
    Ok(i.members.intersection(ring.grading().component(g)))
}

fn lattice_walk<C: Carrier + ?Sized>(c: &C, generators: impl Iterator<Item = usize>) -> Vec<SubobjectHandle> {
    let mut cyclics: Vec<ElemSet> = generators.map(|x| cyclic(c, x)).collect();
    cyclics.sort();
    cyclics.dedup();
    let zero = ElemSet::singleton(c.size(), c.zero());
    let mut seen: HashSet<ElemSet> = HashSet::from([zero.clone()]);
    let mut stack = vec![zero];
    while let Some(s) = stack.pop() {
        for g in &cyclics {
            if g.is_subset(&s) {
                continue;
            }
            let t = sum_sets(c, &s, g);
            if seen.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    let mut all: Vec<SubobjectHandle> = seen.into_iter().map(|m| SubobjectHandle::closed(c, m)).collect();
    all.sort();
    all
}

/// All graded subobjects in canonical order. Graded subobjects are exactly
/// those generated by homogeneous elements, so the walk joins cyclic
/// subobjects of homogeneous elements until no new set appears.
pub fn enumerate_graded_subobjects<C: Carrier + ?Sized>(c: &C, cap: usize) -> Result<Vec<SubobjectHandle>> {
    if c.size() > cap {
        return Err(Error::TooLarge { size: c.size(), cap });
    }
    Ok(lattice_walk(c, c.grading().homogeneous_elements().iter()))
}

/// All subobjects, graded or not, in canonical order.
pub fn enumerate_all_subobjects<C: Carrier + ?Sized>(c: &C, cap: usize) -> Result<Vec<SubobjectHandle>> {
    if c.size() > cap {
        return Err(Error::TooLarge { size: c.size(), cap });
    }
    Ok(lattice_walk(c, 0..c.size()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::*;
    use crate::grading::GradedModule;
    use std::sync::Arc;

    fn zmod(n: i64) -> Arc<GradedRing> {
        let r = make_ring(&RingDescriptor::IntegersMod(n)).unwrap();
        GradedRing::trivial(&r, &make_group(&GroupDescriptor::Trivial).unwrap()).unwrap()
    }

    fn f2c2() -> Arc<GradedRing> {
        let g = make_group(&GroupDescriptor::Cyclic(2)).unwrap();
        let r = make_ring(&RingDescriptor::GroupRing { p: 2, group: g.clone() }).unwrap();
        GradedRing::natural(&r, &g).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> ElemSet {
        ElemSet::from_elems(n, xs.iter().copied())
    }

    fn example_model() -> Arc<GradedModule> {
        let r = zmod(180);
        let m = make_module(&ModuleDescriptor::DirectSum(vec![4, 9, 5]), r.ring()).unwrap();
        GradedModule::trivial(&m, &r).unwrap()
    }

    #[test]
    fn span_of_two_in_z12() {
        let r = zmod(12);
        assert_eq!(span(&*r, [2]).members(), &set(12, &[0, 2, 4, 6, 8, 10]));
        assert!(span(&*r, []).is_zero());
        assert!(span(&*r, []).graded());
    }

    #[test]
    fn span_of_one_plus_g_is_not_graded() {
        let r = f2c2();
        let x = r.ring().find("1+g").unwrap();
        let s = span(&*r, [x]);
        assert_eq!(s.members(), &set(4, &[0, x]));
        assert!(!s.graded());
        assert!(!is_graded(&*r, s.members()));
    }

    #[test]
    fn trivially_graded_ideals_are_graded() {
        let r = zmod(4);
        assert!(is_graded(&*r, &set(4, &[0, 2])));
        assert!(whole(&*r).graded());
    }

    #[test]
    fn sums_intersections_and_scalar_products_in_z12() {
        let r = zmod(12);
        let a = span(&*r, [4]);
        let b = span(&*r, [6]);
        assert_eq!(
            combine(&*r, &a, Combine::Sum(&b)).unwrap().members(),
            &set(12, &[0, 2, 4, 6, 8, 10])
        );
        let two = span(&*r, [2]);
        let three = span(&*r, [3]);
        assert_eq!(
            combine(&*r, &two, Combine::Intersect(&three)).unwrap().members(),
            &set(12, &[0, 6])
        );
        assert_eq!(combine(&*r, &two, Combine::ScalarProduct(1)).unwrap(), two);
        // (2)(3) = (6)
        assert_eq!(
            combine(&*r, &three, Combine::IdealProduct(&two)).unwrap().members(),
            &set(12, &[0, 6])
        );
    }

    #[test]
    fn scalar_product_requires_homogeneous_scalar() {
        let r = f2c2();
        let x = r.ring().find("1+g").unwrap();
        let w = whole(&*r);
        assert!(matches!(
            combine(&*r, &w, Combine::ScalarProduct(x)),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn colon_examples() {
        let r = zmod(4);
        let m = GradedModule::regular(&r).unwrap();
        let k = span(&*m, [2]);
        assert_eq!(colon(&*m, &k, &whole(&*m)).members(), &set(4, &[0, 2]));
        assert_eq!(colon_element(&*m, &k, 1).unwrap(), k);
    }

    #[test]
    fn annihilator_of_example_submodule() {
        let m = example_model();
        let n = span(&*m, [m.find("(1,0,0)").unwrap(), m.find("(0,1,0)").unwrap()]);
        assert_eq!(n.len(), 36);
        let ann = annihilator(&*m, &n);
        assert_eq!(ann.members(), &set(180, &[0, 36, 72, 108, 144]));
        assert_eq!(annihilator(&*m, &zero_subobject(&*m)).len(), 180);
        let reg = GradedModule::regular(&zmod(12)).unwrap();
        assert!(annihilator(&*reg, &whole(&*reg)).is_zero());
    }

    #[test]
    fn graded_radical_examples() {
        let r = zmod(12);
        let four = span(&*r, [4]);
        assert_eq!(
            graded_radical(&r, &four).unwrap().members(),
            &set(12, &[0, 2, 4, 6, 8, 10])
        );
        let r4 = zmod(4);
        assert_eq!(
            graded_radical(&r4, &zero_subobject(&*r4)).unwrap().members(),
            &set(4, &[0, 2])
        );
        assert!(graded_radical(&r4, &whole(&*r4)).unwrap().is_whole());
    }

    #[test]
    fn graded_radical_rejects_non_graded_ideal() {
        let r = f2c2();
        let x = r.ring().find("1+g").unwrap();
        assert!(matches!(
            graded_radical(&r, &span(&*r, [x])),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn example_model_has_eighteen_graded_submodules() {
        let m = example_model();
        let subs = enumerate_graded_subobjects(&*m, 512).unwrap();
        assert_eq!(subs.len(), 18);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ideals_of_z4_and_group_ring() {
        let r = zmod(4);
        let ideals = enumerate_graded_subobjects(&*r, 512).unwrap();
        let sets: Vec<Vec<usize>> = ideals.iter().map(|i| i.members().to_vec()).collect();
        assert_eq!(sets, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);

        let g = f2c2();
        let x = g.ring().find("1+g").unwrap();
        let graded = enumerate_graded_subobjects(&*g, 512).unwrap();
        assert_eq!(graded.len(), 2);
        assert!(graded.iter().all(|i| !i.contains(x) || i.is_whole()));
        let all = enumerate_all_subobjects(&*g, 512).unwrap();
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn ideal_component_examples() {
        let r = zmod(12);
        let two = span(&*r, [2]);
        assert_eq!(ideal_component(&r, &two, 0).unwrap(), *two.members());
        let g = f2c2();
        let gg = g.ring().find("g").unwrap();
        let ideal = span(&*g, [gg]);
        assert!(ideal.is_whole());
        assert_eq!(ideal_component(&g, &ideal, 1).unwrap(), set(4, &[0, gg]));
        assert_eq!(ideal_component(&g, &zero_subobject(&*g), 1).unwrap(), set(4, &[0]));
    }

    #[test]
    fn too_large_carrier_is_refused() {
        let m = example_model();
        assert!(matches!(
            enumerate_graded_subobjects(&*m, 100),
            Err(Error::TooLarge { .. })
        ));
    }
}
