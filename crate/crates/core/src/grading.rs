//! G-gradings on finite rings and modules.
//!
//! A [`Grading`] assigns an additive subgroup to every element of the grading
//! group and certifies that the carrier is their internal direct sum. The
//! certificate is the exhaustive summation map from the product of the
//! components onto the carrier, which doubles as the decomposition table
//! behind [`Grading::decompose`].

use std::sync::Arc;

use crate::algebra::{FiniteModule, FiniteRing, GradingGroup, ModuleKind, RingKind};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::subobjects::SubobjectKind;

#[derive(Clone, Debug)]
pub struct Grading {
    group: Arc<GradingGroup>,
    components: Vec<ElemSet>,
    /// `decomposition[x * |G| + g]` is the degree-`g` part of `x`.
    decomposition: Vec<usize>,
    degree: Vec<Option<usize>>,
    homogeneous: ElemSet,
}

/// The structure a grading is attached to. Module gradings need the grading
/// of the scalar ring over the same group.
#[derive(Clone, Copy)]
pub enum GradingCarrier<'a> {
    Ring(&'a FiniteRing),
    Module(&'a FiniteModule, &'a Grading),
}

#[derive(Clone, Debug)]
pub enum ComponentAssignment {
    /// Everything in the identity component.
    Trivial,
    /// Coefficient lines of a group ring; trivial on `integers_mod`.
    Natural,
    Explicit(Vec<ElemSet>),
}

fn invalid(axiom: &str, witness: impl Into<String>) -> Error {
    Error::GradingInvalid {
        axiom: axiom.into(),
        witness: witness.into(),
    }
}

impl GradingCarrier<'_> {
    fn size(&self) -> usize {
        match self {
            GradingCarrier::Ring(r) => r.size(),
            GradingCarrier::Module(m, _) => m.size(),
        }
    }

    fn zero(&self) -> usize {
        match self {
            GradingCarrier::Ring(r) => r.zero(),
            GradingCarrier::Module(m, _) => m.zero(),
        }
    }

    fn add(&self, a: usize, b: usize) -> usize {
        match self {
            GradingCarrier::Ring(r) => r.add(a, b),
            GradingCarrier::Module(m, _) => m.add(a, b),
        }
    }

    fn label(&self, x: usize) -> &str {
        match self {
            GradingCarrier::Ring(r) => r.label(x),
            GradingCarrier::Module(m, _) => m.label(x),
        }
    }
}

/// Validates a component assignment and returns the grading it defines.
pub fn attach_grading(
    carrier: GradingCarrier<'_>,
    group: &Arc<GradingGroup>,
    assignment: &ComponentAssignment,
) -> Result<Grading> {
    let components = match assignment {
        ComponentAssignment::Trivial => trivial_components(carrier.size(), carrier.zero(), group),
        ComponentAssignment::Natural => natural_components(carrier, group)?,
        ComponentAssignment::Explicit(c) => c.clone(),
    };
    Grading::from_components(carrier, group, components)
}

fn trivial_components(size: usize, zero: usize, group: &GradingGroup) -> Vec<ElemSet> {
    group
        .elements()
        .map(|g| {
            if g == group.identity() {
                ElemSet::full(size)
            } else {
                ElemSet::singleton(size, zero)
            }
        })
        .collect()
}

fn natural_components(carrier: GradingCarrier<'_>, group: &Arc<GradingGroup>) -> Result<Vec<ElemSet>> {
    match carrier {
        GradingCarrier::Ring(ring) => match ring.kind() {
            RingKind::GroupRing { p, group: rg } => {
                if **rg != **group {
                    return Err(invalid("natural grading group", "group ring is over a different group"));
                }
                let order = group.order();
                Ok(group
                    .elements()
                    .map(|g| {
                        ElemSet::from_elems(
                            ring.size(),
                            (0..*p).map(|c| {
                                let mut coeffs = vec![0; order];
                                coeffs[g] = c;
                                crate::algebra::ring::group_ring_index(&coeffs, *p)
                            }),
                        )
                    })
                    .collect())
            }
            RingKind::IntegersMod(_) | RingKind::Tables => Ok(trivial_components(ring.size(), ring.zero(), group)),
            RingKind::Product(..) => Err(invalid(
                "natural grading",
                "product rings are graded through GradedRing::natural",
            )),
        },
        GradingCarrier::Module(module, ring_grading) => match module.kind() {
            ModuleKind::Regular => Ok(ring_grading.components.clone()),
            ModuleKind::DirectSum(_) | ModuleKind::Tables => {
                Ok(trivial_components(module.size(), module.zero(), group))
            }
            ModuleKind::Product(..) => Err(invalid(
                "natural grading",
                "product modules are graded through GradedModule::natural",
            )),
        },
    }
}

impl Grading {
    /// Checks every grading axiom for `components` and builds the
    /// decomposition table.
    pub fn from_components(
        carrier: GradingCarrier<'_>,
        group: &Arc<GradingGroup>,
        components: Vec<ElemSet>,
    ) -> Result<Grading> {
        let n = carrier.size();
        let zero = carrier.zero();
        let order = group.order();
        if components.len() != order {
            return Err(invalid(
                "one component per group element",
                format!("{} components for a group of order {order}", components.len()),
            ));
        }
        for (g, comp) in components.iter().enumerate() {
            if comp.universe() != n {
                return Err(invalid("component lies in carrier", group.label(g)));
            }
            if !comp.contains(zero) {
                return Err(invalid(
                    "component is an additive subgroup",
                    format!("0 missing from component {}", group.label(g)),
                ));
            }
            for a in comp.iter() {
                for b in comp.iter() {
                    if !comp.contains(carrier.add(a, b)) {
                        return Err(invalid(
                            "component is an additive subgroup",
                            format!(
                                "{} + {} leaves component {}",
                                carrier.label(a),
                                carrier.label(b),
                                group.label(g)
                            ),
                        ));
                    }
                }
            }
        }

        // Direct sum: summation from the product of components must be a bijection.
        let members: Vec<Vec<usize>> = components.iter().map(ElemSet::to_vec).collect();
        let tuples = members
            .iter()
            .try_fold(1usize, |acc, m| acc.checked_mul(m.len()))
            .unwrap_or(usize::MAX);
        if tuples != n {
            return Err(invalid(
                "direct sum",
                format!("product of component sizes is {tuples}, carrier has {n} elements"),
            ));
        }
        let mut decomposition = vec![usize::MAX; n * order];
        let mut digits = vec![0usize; order];
        for _ in 0..tuples {
            let parts: Vec<usize> = digits.iter().zip(&members).map(|(&d, m)| m[d]).collect();
            let sum = parts.iter().fold(zero, |acc, &x| carrier.add(acc, x));
            if decomposition[sum * order] != usize::MAX {
                return Err(invalid(
                    "direct sum",
                    format!("{} has two decompositions", carrier.label(sum)),
                ));
            }
            decomposition[sum * order..(sum + 1) * order].copy_from_slice(&parts);
            for (d, m) in digits.iter_mut().zip(&members) {
                *d += 1;
                if *d < m.len() {
                    break;
                }
                *d = 0;
            }
        }

        match carrier {
            GradingCarrier::Ring(ring) => {
                if !components[group.identity()].contains(ring.one()) {
                    return Err(invalid("1 lies in the identity component", ring.label(ring.one())));
                }
                for g in group.elements() {
                    for h in group.elements() {
                        let target = &components[group.op(g, h)];
                        for a in members[g].iter() {
                            for b in members[h].iter() {
                                if !target.contains(ring.mul(*a, *b)) {
                                    return Err(invalid(
                                        "R_g R_h ⊆ R_gh",
                                        format!("{} · {}", ring.label(*a), ring.label(*b)),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            GradingCarrier::Module(module, ring_grading) => {
                if **ring_grading.group() != **group {
                    return Err(invalid("same grading group as the ring", ""));
                }
                let ring = module.ring();
                for g in group.elements() {
                    for h in group.elements() {
                        let target = &components[group.op(g, h)];
                        for r in ring_grading.components[g].iter() {
                            for m in members[h].iter() {
                                if !target.contains(module.act(r, *m)) {
                                    return Err(invalid(
                                        "R_g M_h ⊆ M_gh",
                                        format!("{} · {}", ring.label(r), module.label(*m)),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }

        let mut degree = vec![None; n];
        let mut homogeneous = ElemSet::empty(n);
        for g in group.elements().rev() {
            for x in components[g].iter() {
                degree[x] = Some(g);
                homogeneous.insert(x);
            }
        }
        degree[zero] = Some(group.identity());
        Ok(Grading {
            group: group.clone(),
            components,
            decomposition,
            degree,
            homogeneous,
        })
    }

    pub fn group(&self) -> &Arc<GradingGroup> {
        &self.group
    }

    /// `R_g` or `M_g`.
    pub fn component(&self, g: usize) -> &ElemSet {
        &self.components[g]
    }

    pub fn components(&self) -> &[ElemSet] {
        &self.components
    }

    /// The homogeneous parts of `x`, indexed by group element.
    pub fn decompose(&self, x: usize) -> &[usize] {
        let k = self.group.order();
        &self.decomposition[x * k..(x + 1) * k]
    }

    /// Degree of `x` if it is homogeneous. Zero reports the identity.
    pub fn is_homogeneous(&self, x: usize) -> Option<usize> {
        self.degree[x]
    }

    /// `h(R)` or `h(M)`.
    pub fn homogeneous_elements(&self) -> &ElemSet {
        &self.homogeneous
    }
}

/// A finite ring together with a validated grading.
#[derive(Debug)]
pub struct GradedRing {
    ring: Arc<FiniteRing>,
    grading: Grading,
    factors: Option<(Arc<GradedRing>, Arc<GradedRing>)>,
    /// Distinct positive powers `x^k`, `1 <= k <= |R|`, per element.
    powers: Vec<ElemSet>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Trivial,
    Natural,
}

impl GradedRing {
    pub fn new(
        ring: Arc<FiniteRing>,
        group: &Arc<GradingGroup>,
        assignment: &ComponentAssignment,
    ) -> Result<Arc<Self>> {
        let grading = attach_grading(GradingCarrier::Ring(&ring), group, assignment)?;
        Ok(Arc::new(Self::assemble(ring, grading, None)))
    }

    pub fn trivial(ring: &Arc<FiniteRing>, group: &Arc<GradingGroup>) -> Result<Arc<Self>> {
        Self::build(ring, group, Mode::Trivial)
    }

    /// Coefficient-line grading on group rings, trivial on `integers_mod`,
    /// product grading on products.
    pub fn natural(ring: &Arc<FiniteRing>, group: &Arc<GradingGroup>) -> Result<Arc<Self>> {
        Self::build(ring, group, Mode::Natural)
    }

    fn build(ring: &Arc<FiniteRing>, group: &Arc<GradingGroup>, mode: Mode) -> Result<Arc<Self>> {
        if let RingKind::Product(a, b) = ring.kind() {
            let a = Self::build(a, group, mode)?;
            let b = Self::build(b, group, mode)?;
            return Self::product_over(ring.clone(), &a, &b);
        }
        let assignment = match mode {
            Mode::Trivial => ComponentAssignment::Trivial,
            Mode::Natural => ComponentAssignment::Natural,
        };
        Self::new(ring.clone(), group, &assignment)
    }

    /// `R1 × R2` with `(R1 × R2)_g = (R1)_g × (R2)_g`.
    pub fn product(a: &Arc<GradedRing>, b: &Arc<GradedRing>) -> Result<Arc<Self>> {
        let ring = Arc::new(crate::algebra::ring::product(&a.ring, &b.ring)?);
        Self::product_over(ring, a, b)
    }

    fn product_over(ring: Arc<FiniteRing>, a: &Arc<GradedRing>, b: &Arc<GradedRing>) -> Result<Arc<Self>> {
        let group = a.grading.group();
        if **group != **b.grading.group() {
            return Err(invalid("product grading", "factors are graded by different groups"));
        }
        let nb = b.ring.size();
        let components = group
            .elements()
            .map(|g| {
                let mut c = ElemSet::empty(ring.size());
                for x in a.grading.component(g).iter() {
                    for y in b.grading.component(g).iter() {
                        c.insert(x * nb + y);
                    }
                }
                c
            })
            .collect();
        let grading = Grading::from_components(GradingCarrier::Ring(&ring), group, components)?;
        Ok(Arc::new(Self::assemble(ring, grading, Some((a.clone(), b.clone())))))
    }

    fn assemble(ring: Arc<FiniteRing>, grading: Grading, factors: Option<(Arc<GradedRing>, Arc<GradedRing>)>) -> Self {
        let n = ring.size();
        let powers = (0..n)
            .map(|x| {
                let mut set = ElemSet::empty(n);
                let mut cur = x;
                set.insert(cur);
                for _ in 2..=n {
                    cur = ring.mul(cur, x);
                    set.insert(cur);
                }
                set
            })
            .collect();
        GradedRing {
            ring,
            grading,
            factors,
            powers,
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn group(&self) -> &Arc<GradingGroup> {
        self.grading.group()
    }

    pub fn factors(&self) -> Option<&(Arc<GradedRing>, Arc<GradedRing>)> {
        self.factors.as_ref()
    }

    /// `{x^k : 1 <= k <= |R|}`; every power of `x` already occurs in this range.
    pub fn power_set(&self, x: usize) -> &ElemSet {
        &self.powers[x]
    }

    pub fn size(&self) -> usize {
        self.ring.size()
    }
}

/// A finite module together with a validated grading compatible with its
/// graded scalar ring.
#[derive(Debug)]
pub struct GradedModule {
    module: Arc<FiniteModule>,
    ring: Arc<GradedRing>,
    grading: Grading,
    factors: Option<(Arc<GradedModule>, Arc<GradedModule>)>,
}

impl GradedModule {
    pub fn new(
        module: Arc<FiniteModule>,
        ring: &Arc<GradedRing>,
        assignment: &ComponentAssignment,
    ) -> Result<Arc<Self>> {
        if **module.ring() != **ring.ring() {
            return Err(invalid(
                "module over the graded ring",
                "module is over a different ring",
            ));
        }
        let grading = attach_grading(GradingCarrier::Module(&module, &ring.grading), ring.group(), assignment)?;
        Ok(Arc::new(GradedModule {
            module,
            ring: ring.clone(),
            grading,
            factors: None,
        }))
    }

    pub fn trivial(module: &Arc<FiniteModule>, ring: &Arc<GradedRing>) -> Result<Arc<Self>> {
        Self::build(module, ring, Mode::Trivial)
    }

    /// Ring grading on the regular module, trivial on direct sums, product
    /// grading on products.
    pub fn natural(module: &Arc<FiniteModule>, ring: &Arc<GradedRing>) -> Result<Arc<Self>> {
        Self::build(module, ring, Mode::Natural)
    }

    fn build(module: &Arc<FiniteModule>, ring: &Arc<GradedRing>, mode: Mode) -> Result<Arc<Self>> {
        if let ModuleKind::Product(m1, m2) = module.kind() {
            let Some((r1, r2)) = ring.factors() else {
                return Err(invalid("product module grading", "scalar ring has no product factors"));
            };
            let a = Self::build(m1, r1, mode)?;
            let b = Self::build(m2, r2, mode)?;
            return Self::product_over(module.clone(), ring, &a, &b);
        }
        let assignment = match mode {
            Mode::Trivial => ComponentAssignment::Trivial,
            Mode::Natural => ComponentAssignment::Natural,
        };
        Self::new(module.clone(), ring, &assignment)
    }

    /// The ring acting on itself, graded like the ring.
    pub fn regular(ring: &Arc<GradedRing>) -> Result<Arc<Self>> {
        let module = crate::algebra::make_module(&crate::algebra::ModuleDescriptor::RingAsModule, ring.ring())?;
        Self::new(
            module,
            ring,
            &ComponentAssignment::Explicit(ring.grading.components.clone()),
        )
    }

    /// `M1 × M2` over the product of their graded rings, with `M_g = (M1)_g × (M2)_g`.
    pub fn product(a: &Arc<GradedModule>, b: &Arc<GradedModule>) -> Result<Arc<Self>> {
        let ring = GradedRing::product(&a.ring, &b.ring)?;
        let module = Arc::new(crate::algebra::module::product(ring.ring(), &a.module, &b.module));
        Self::product_over(module, &ring, a, b)
    }

    fn product_over(
        module: Arc<FiniteModule>,
        ring: &Arc<GradedRing>,
        a: &Arc<GradedModule>,
        b: &Arc<GradedModule>,
    ) -> Result<Arc<Self>> {
        let group = ring.group();
        let nb = b.module.size();
        let components = group
            .elements()
            .map(|g| {
                let mut c = ElemSet::empty(module.size());
                for x in a.grading.component(g).iter() {
                    for y in b.grading.component(g).iter() {
                        c.insert(x * nb + y);
                    }
                }
                c
            })
            .collect();
        let grading = Grading::from_components(GradingCarrier::Module(&module, &ring.grading), group, components)?;
        Ok(Arc::new(GradedModule {
            module,
            ring: ring.clone(),
            grading,
            factors: Some((a.clone(), b.clone())),
        }))
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn factors(&self) -> Option<&(Arc<GradedModule>, Arc<GradedModule>)> {
        self.factors.as_ref()
    }

    pub fn size(&self) -> usize {
        self.module.size()
    }
}

/// Uniform view of graded rings (acting on themselves) and graded modules,
/// so that ideals and submodules share one implementation.
pub trait Carrier {
    fn size(&self) -> usize;
    fn zero(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;
    /// Scalar action `r·m`; multiplication when the carrier is the ring.
    fn act(&self, r: usize, m: usize) -> usize;
    fn scalars(&self) -> &GradedRing;
    fn grading(&self) -> &Grading;
    fn label(&self, x: usize) -> &str;
    fn find(&self, label: &str) -> Option<usize>;
    fn subobject_kind(&self) -> SubobjectKind;
}

impl Carrier for GradedRing {
    fn size(&self) -> usize {
        self.ring.size()
    }
    fn zero(&self) -> usize {
        self.ring.zero()
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.ring.add(a, b)
    }
    fn neg(&self, a: usize) -> usize {
        self.ring.neg(a)
    }
    fn act(&self, r: usize, m: usize) -> usize {
        self.ring.mul(r, m)
    }
    fn scalars(&self) -> &GradedRing {
        self
    }
    fn grading(&self) -> &Grading {
        &self.grading
    }
    fn label(&self, x: usize) -> &str {
        self.ring.label(x)
    }
    fn find(&self, label: &str) -> Option<usize> {
        self.ring.find(label)
    }
    fn subobject_kind(&self) -> SubobjectKind {
        SubobjectKind::Ideal
    }
}

impl Carrier for GradedModule {
    fn size(&self) -> usize {
        self.module.size()
    }
    fn zero(&self) -> usize {
        self.module.zero()
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.module.add(a, b)
    }
    fn neg(&self, a: usize) -> usize {
        self.module.neg(a)
    }
    fn act(&self, r: usize, m: usize) -> usize {
        self.module.act(r, m)
    }
    fn scalars(&self) -> &GradedRing {
        &self.ring
    }
    fn grading(&self) -> &Grading {
        &self.grading
    }
    fn label(&self, x: usize) -> &str {
        self.module.label(x)
    }
    fn find(&self, label: &str) -> Option<usize> {
        self.module.find(label)
    }
    fn subobject_kind(&self) -> SubobjectKind {
        SubobjectKind::Submodule
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_group, make_module, make_ring, GroupDescriptor, ModuleDescriptor, RingDescriptor};

    fn c2() -> Arc<GradingGroup> {
        make_group(&GroupDescriptor::Cyclic(2)).unwrap()
    }

    fn f2c2() -> Arc<GradedRing> {
        let g = c2();
        let r = make_ring(&RingDescriptor::GroupRing { p: 2, group: g.clone() }).unwrap();
        GradedRing::natural(&r, &g).unwrap()
    }

    #[test]
    fn trivial_grading_puts_everything_in_identity() {
        let r = make_ring(&RingDescriptor::IntegersMod(12)).unwrap();
        let g = make_group(&GroupDescriptor::Trivial).unwrap();
        let gr = GradedRing::trivial(&r, &g).unwrap();
        assert_eq!(gr.grading().component(0).len(), 12);
        for x in 0..12 {
            assert_eq!(gr.grading().decompose(x), &[x]);
        }
    }

    #[test]
    fn natural_grading_on_group_ring() {
        let gr = f2c2();
        let r = gr.ring();
        let (one, g, opg) = (r.find("1").unwrap(), r.find("g").unwrap(), r.find("1+g").unwrap());
        assert_eq!(gr.grading().component(0), &ElemSet::from_elems(4, [0, one]));
        assert_eq!(gr.grading().component(1), &ElemSet::from_elems(4, [0, g]));
        assert_eq!(gr.grading().decompose(opg), &[one, g]);
        assert_eq!(gr.grading().decompose(0), &[0, 0]);
        assert_eq!(gr.grading().is_homogeneous(g), Some(1));
        assert_eq!(gr.grading().is_homogeneous(opg), None);
        assert_eq!(gr.grading().is_homogeneous(0), Some(0));
        assert_eq!(
            gr.grading().homogeneous_elements(),
            &ElemSet::from_elems(4, [0, one, g])
        );
    }

    #[test]
    fn unity_outside_identity_component_is_rejected() {
        let g = c2();
        let r = make_ring(&RingDescriptor::GroupRing { p: 2, group: g.clone() }).unwrap();
        let (one, gg) = (r.find("1").unwrap(), r.find("g").unwrap());
        // swap the two coefficient lines
        let swapped = vec![ElemSet::from_elems(4, [0, gg]), ElemSet::from_elems(4, [0, one])];
        let err = GradedRing::new(r, &g, &ComponentAssignment::Explicit(swapped)).unwrap_err();
        match err {
            Error::GradingInvalid { axiom, .. } => assert!(axiom.contains("1 lies")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn overlapping_components_fail_direct_sum() {
        let r = make_ring(&RingDescriptor::IntegersMod(4)).unwrap();
        let g = c2();
        let comps = vec![ElemSet::full(4), ElemSet::from_elems(4, [0, 2])];
        let err = GradedRing::new(r, &g, &ComponentAssignment::Explicit(comps)).unwrap_err();
        assert!(matches!(err, Error::GradingInvalid { ref axiom, .. } if axiom == "direct sum"));
    }

    #[test]
    fn product_grading_of_trivially_graded_rings_is_trivial() {
        let g = make_group(&GroupDescriptor::Trivial).unwrap();
        let r = make_ring(&RingDescriptor::Product(
            Box::new(RingDescriptor::IntegersMod(2)),
            Box::new(RingDescriptor::IntegersMod(3)),
        ))
        .unwrap();
        let gr = GradedRing::trivial(&r, &g).unwrap();
        assert_eq!(gr.grading().homogeneous_elements().len(), 6);
        assert!(gr.factors().is_some());
    }

    #[test]
    fn module_grading_on_regular_group_ring_module() {
        let gr = f2c2();
        let m = make_module(&ModuleDescriptor::RingAsModule, gr.ring()).unwrap();
        let gm = GradedModule::natural(&m, &gr).unwrap();
        assert_eq!(gm.grading().components(), gr.grading().components());
    }

    #[test]
    fn mixed_product_grading_over_c2() {
        let g = c2();
        let a = f2c2();
        let z4 = make_ring(&RingDescriptor::IntegersMod(4)).unwrap();
        let b = GradedRing::natural(&z4, &g).unwrap();
        let p = GradedRing::product(&a, &b).unwrap();
        // (R1 × R2)_g = {0, g} × {0}
        assert_eq!(p.grading().component(1).len(), 2);
        assert_eq!(p.grading().component(0).len(), 8);
        assert_eq!(p.grading().homogeneous_elements().len(), 9);
    }
}
