use crate::elemset::ElemSet;
use crate::grading::{GradedModule, GradedRing};
use crate::subobjects::SubobjectHandle;

/// `N1 × N2` inside a product module.
///
/// # Panics
/// If `m` was not built as a product.
pub fn product_submodule(m: &GradedModule, n1: &SubobjectHandle, n2: &SubobjectHandle) -> SubobjectHandle {
    let (_, m2) = m.factors().expect("product module");
    SubobjectHandle::closed(m, pair_set(m.size(), m2.size(), n1.members(), n2.members()))
}

/// `I1 × I2` inside a product ring.
pub fn product_ideal(r: &GradedRing, i1: &SubobjectHandle, i2: &SubobjectHandle) -> SubobjectHandle {
    let (_, r2) = r.factors().expect("product ring");
    SubobjectHandle::closed(r, pair_set(r.size(), r2.size(), i1.members(), i2.members()))
}

fn pair_set(size: usize, second: usize, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut out = ElemSet::empty(size);
    for x in a.iter() {
        for y in b.iter() {
            out.insert(x * second + y);
        }
    }
    out
}

/// The projections `(N1, N2)` of a submodule of `M1 × M2`. Every submodule
/// over `R1 × R2` is the product of its projections.
pub fn split_product(m: &GradedModule, n: &SubobjectHandle) -> (SubobjectHandle, SubobjectHandle) {
    let (m1, m2) = m.factors().expect("product module");
    let k = m2.size();
    let first = ElemSet::from_elems(m1.size(), n.members().iter().map(|x| x / k));
    let second = ElemSet::from_elems(k, n.members().iter().map(|x| x % k));
    (
        SubobjectHandle::closed(&**m1, first),
        SubobjectHandle::closed(&**m2, second),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::*;
    use crate::subobjects::{annihilator, enumerate_graded_subobjects, whole, zero_subobject};
    use std::sync::Arc;

    fn zmod(n: i64) -> Arc<GradedModule> {
        let r = make_ring(&RingDescriptor::IntegersMod(n)).unwrap();
        let r = GradedRing::trivial(&r, &make_group(&GroupDescriptor::Trivial).unwrap()).unwrap();
        GradedModule::regular(&r).unwrap()
    }

    #[test]
    fn products_of_whole_and_zero() {
        let (a, b) = (zmod(4), zmod(9));
        let m = GradedModule::product(&a, &b).unwrap();
        assert_eq!(m.size(), 36);
        let n = product_submodule(&m, &whole(&*a), &zero_subobject(&*b));
        assert_eq!(n.len(), 4);
        assert!(n.graded());
        assert!(product_submodule(&m, &zero_subobject(&*a), &zero_subobject(&*b)).is_zero());
        assert!(product_submodule(&m, &whole(&*a), &whole(&*b)).is_whole());
    }

    #[test]
    fn every_submodule_splits_and_annihilators_multiply() {
        let (a, b) = (zmod(4), zmod(6));
        let m = GradedModule::product(&a, &b).unwrap();
        let subs = enumerate_graded_subobjects(&*m, 512).unwrap();
        assert_eq!(subs.len(), 3 * 4);
        for n in &subs {
            let (n1, n2) = split_product(&m, n);
            assert_eq!(&product_submodule(&m, &n1, &n2), n);
            let ann = annihilator(&*m, n);
            let expected = product_ideal(m.ring(), &annihilator(&*a, &n1), &annihilator(&*b, &n2));
            assert_eq!(ann.members(), expected.members());
        }
    }
}
