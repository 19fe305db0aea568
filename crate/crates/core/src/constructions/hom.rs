use std::sync::Arc;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::grading::{Carrier, GradedModule};
use crate::subobjects::{SubobjectHandle, SubobjectKind};

/// A graded module homomorphism stored as its full element table.
#[derive(Clone, Debug)]
pub struct GradedHom {
    source: Arc<GradedModule>,
    target: Arc<GradedModule>,
    map: Vec<usize>,
}

fn invalid(axiom: &str, witness: String) -> Error {
    Error::HomInvalid {
        axiom: axiom.into(),
        witness,
    }
}

/// Validates additivity, linearity and `f(M_g) ⊆ S_g` exhaustively.
pub fn make_hom(source: &Arc<GradedModule>, target: &Arc<GradedModule>, map: Vec<usize>) -> Result<GradedHom> {
    let (m, s) = (&**source, &**target);
    if **m.ring().ring() != **s.ring().ring() || **m.ring().group() != **s.ring().group() {
        return Err(invalid(
            "same graded ring",
            "source and target are over different rings".into(),
        ));
    }
    if map.len() != m.size() {
        return Err(invalid(
            "total",
            format!("{} values for {} elements", map.len(), m.size()),
        ));
    }
    if let Some(x) = (0..m.size()).find(|&x| map[x] >= s.size()) {
        return Err(invalid("total", format!("f({}) out of range", m.label(x))));
    }
    for a in 0..m.size() {
        for b in 0..m.size() {
            if map[m.add(a, b)] != s.add(map[a], map[b]) {
                return Err(invalid("additive", format!("a={}, b={}", m.label(a), m.label(b))));
            }
        }
    }
    let ring = m.ring().ring();
    for r in ring.elements() {
        for x in 0..m.size() {
            if map[m.act(r, x)] != s.act(r, map[x]) {
                return Err(invalid("linear", format!("r={}, m={}", ring.label(r), m.label(x))));
            }
        }
    }
    for g in m.ring().group().elements() {
        let target_g = s.grading().component(g);
        if let Some(x) = m.grading().component(g).iter().find(|&x| !target_g.contains(map[x])) {
            let label = m.ring().group().label(g);
            return Err(invalid("graded", format!("m={} in degree {label}", m.label(x))));
        }
    }
    Ok(GradedHom {
        source: source.clone(),
        target: target.clone(),
        map,
    })
}

impl GradedHom {
    pub fn source(&self) -> &Arc<GradedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let image = ElemSet::from_elems(self.target.size(), self.map.iter().copied());
        image.len() == self.source.size()
    }

    /// `f(M)`.
    pub fn range(&self) -> SubobjectHandle {
        hom_image(self, &crate::subobjects::whole(&*self.source))
    }
}

fn expect_submodule(n: &SubobjectHandle, size: usize) {
    assert!(
        n.kind() == SubobjectKind::Submodule && n.members().universe() == size,
        "subobject does not belong to this module"
    );
}

pub fn hom_image(f: &GradedHom, l: &SubobjectHandle) -> SubobjectHandle {
    expect_submodule(l, f.source.size());
    let members = ElemSet::from_elems(f.target.size(), l.members().iter().map(|x| f.map[x]));
    SubobjectHandle::closed(&*f.target, members)
}

pub fn hom_preimage(f: &GradedHom, k: &SubobjectHandle) -> SubobjectHandle {
    expect_submodule(k, f.target.size());
    let members = ElemSet::from_elems(f.source.size(), (0..f.source.size()).filter(|&x| k.contains(f.map[x])));
    SubobjectHandle::closed(&*f.source, members)
}

pub fn hom_kernel(f: &GradedHom) -> SubobjectHandle {
    hom_preimage(f, &crate::subobjects::zero_subobject(&*f.target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::*;
    use crate::grading::GradedRing;
    use crate::subobjects::{span, whole, zero_subobject};

    fn z4_and_z2() -> (Arc<GradedModule>, Arc<GradedModule>) {
        let r = make_ring(&RingDescriptor::IntegersMod(4)).unwrap();
        let r = GradedRing::trivial(&r, &make_group(&GroupDescriptor::Trivial).unwrap()).unwrap();
        let z4 = GradedModule::regular(&r).unwrap();
        let z2 = make_module(&ModuleDescriptor::DirectSum(vec![2]), r.ring()).unwrap();
        (z4, GradedModule::trivial(&z2, &r).unwrap())
    }

    fn reduction() -> GradedHom {
        let (z4, z2) = z4_and_z2();
        make_hom(&z4, &z2, (0..4).map(|m| m % 2).collect()).unwrap()
    }

    #[test]
    fn identity_and_reduction_are_valid() {
        let (z4, _) = z4_and_z2();
        let id = make_hom(&z4, &z4, (0..4).collect()).unwrap();
        assert!(hom_kernel(&id).is_zero());
        assert!(id.is_injective());
        let f = reduction();
        assert_eq!(hom_kernel(&f).members().to_vec(), vec![0, 2]);
        assert!(!f.is_injective());
    }

    #[test]
    fn translation_is_not_additive() {
        let (z4, _) = z4_and_z2();
        let err = make_hom(&z4, &z4, (0..4).map(|m| (m + 1) % 4).collect()).unwrap_err();
        assert!(matches!(err, Error::HomInvalid { ref axiom, .. } if axiom == "additive"));
    }

    #[test]
    fn images_and_preimages() {
        let f = reduction();
        let (z4, z2) = (f.source().clone(), f.target().clone());
        assert!(hom_image(&f, &whole(&*z4)).is_whole());
        let two = span(&*z4, [2]);
        assert!(hom_image(&f, &two).is_zero());
        assert!(hom_image(&f, &zero_subobject(&*z4)).is_zero());
        assert!(hom_preimage(&f, &whole(&*z2)).is_whole());
        assert!(hom_image(&f, &two).graded());
        let zero = make_hom(&z4, &z2, vec![0; 4]).unwrap();
        assert!(hom_kernel(&zero).is_whole());
    }
}
