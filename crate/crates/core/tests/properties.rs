use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use graded_coprimary::algebra::{
    make_group, make_module, make_ring, GroupDescriptor, ModuleDescriptor, RingDescriptor,
};
use graded_coprimary::classifiers::{
    classify_ideal, coprimary_via_characterization, recheck_ideal_witness, recheck_submodule_witness, IdealPredicate,
    SubmoduleClassifier, SubmodulePredicate,
};
use graded_coprimary::constructions::{
    hom_image, hom_kernel, hom_preimage, localize, make_hom, product_ideal, product_submodule,
};
use graded_coprimary::grading::{Carrier, GradedModule, GradedRing};
use graded_coprimary::subobjects::{
    annihilator, combine, enumerate_all_subobjects, enumerate_graded_subobjects, graded_radical, is_graded, span,
    Combine, SubobjectHandle,
};
use graded_coprimary::ElemSet;

const CAP: usize = 512;

fn zmod(n: i64) -> Arc<GradedRing> {
    let g = make_group(&GroupDescriptor::Trivial).unwrap();
    GradedRing::trivial(&make_ring(&RingDescriptor::IntegersMod(n)).unwrap(), &g).unwrap()
}

fn regular(n: i64) -> Arc<GradedModule> {
    GradedModule::regular(&zmod(n)).unwrap()
}

fn group_ring(p: i64, order: i64) -> Arc<GradedRing> {
    let g = make_group(&GroupDescriptor::Cyclic(order)).unwrap();
    GradedRing::natural(
        &make_ring(&RingDescriptor::GroupRing { p, group: g.clone() }).unwrap(),
        &g,
    )
    .unwrap()
}

fn direct_sum(n: i64, moduli: Vec<i64>) -> Arc<GradedModule> {
    let r = zmod(n);
    let m = make_module(&ModuleDescriptor::DirectSum(moduli), r.ring()).unwrap();
    GradedModule::trivial(&m, &r).unwrap()
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Small modules over `Z/n`: the regular module or a sum of two cyclic factors.
fn small_module() -> impl Strategy<Value = Arc<GradedModule>> {
    prop_oneof![
        (2i64..=16).prop_map(regular),
        (2i64..=12)
            .prop_flat_map(|n| (
                Just(n),
                prop::sample::select(divisors(n)),
                prop::sample::select(divisors(n))
            ))
            .prop_map(|(n, a, b)| direct_sum(n, vec![a, b])),
    ]
}

/// Every additive subgroup closed under the action, by filtering all subsets.
fn brute_force_subobjects<C: Carrier + ?Sized>(c: &C) -> BTreeSet<ElemSet> {
    let size = c.size();
    let scalars = c.scalars().size();
    (0u32..1 << size)
        .map(|mask| ElemSet::from_elems(size, (0..size).filter(|i| mask >> i & 1 == 1)))
        .filter(|s| {
            s.contains(c.zero())
                && s.iter().all(|a| s.iter().all(|b| s.contains(c.add(a, b))))
                && s.iter().all(|a| (0..scalars).all(|r| s.contains(c.act(r, a))))
        })
        .collect()
}

fn handles(v: &[SubobjectHandle]) -> BTreeSet<ElemSet> {
    v.iter().map(|h| h.members().clone()).collect()
}

proptest! {
    #[test]
    fn zmod_arithmetic_matches_native(n in 2usize..60, a in 0usize..60, b in 0usize..60, k in 1usize..12) {
        let r = make_ring(&RingDescriptor::IntegersMod(n as i64)).unwrap();
        let (a, b) = (a % n, b % n);
        prop_assert_eq!(r.add(a, b), (a + b) % n);
        prop_assert_eq!(r.mul(a, b), a * b % n);
        prop_assert_eq!(r.sub(a, b), (a + n - b) % n);
        let native = (0..k).fold(1 % n, |acc, _| acc * a % n);
        prop_assert_eq!(r.pow(a, k), native);
    }

    #[test]
    fn homogeneous_parts_sum_back(p in prop::sample::select(vec![2i64, 3]), order in 1i64..=3, x in 0usize..729) {
        let r = group_ring(p, order);
        let x = x % r.size();
        let g = r.grading();
        let parts = g.decompose(x);
        let total = parts.iter().fold(r.zero(), |acc, &c| r.add(acc, c));
        prop_assert_eq!(total, x);
        for (deg, &c) in parts.iter().enumerate() {
            prop_assert!(g.component(deg).contains(c));
        }
    }

    #[test]
    fn span_is_idempotent(m in small_module(), gens in prop::collection::vec(0usize..400, 0..3)) {
        let gens: Vec<usize> = gens.into_iter().map(|g| g % m.size()).collect();
        let s = span(&*m, gens.iter().copied());
        prop_assert!(gens.iter().all(|&g| s.contains(g)));
        let again = span(&*m, s.members().iter());
        prop_assert_eq!(again.members(), s.members());
    }

    #[test]
    fn radical_is_extensive_and_idempotent(n in 2i64..=40, g in 0usize..40) {
        let r = zmod(n);
        let p = span(&*r, [g % n as usize]);
        let rad = graded_radical(&r, &p).unwrap();
        prop_assert!(p.is_subset(&rad));
        let rad2 = graded_radical(&r, &rad).unwrap();
        prop_assert_eq!(rad2.members(), rad.members());
    }

    #[test]
    fn enumeration_matches_subset_filter(m in small_module().prop_filter("small carrier", |m| m.size() <= 16)) {
        let found = enumerate_graded_subobjects(&*m, CAP).unwrap();
        prop_assert_eq!(handles(&found), brute_force_subobjects(&*m));
    }

    #[test]
    fn implication_chain_holds(m in small_module()) {
        let classifier = SubmoduleClassifier::new(&m, CAP).unwrap();
        for n in classifier.submodules().iter().filter(|n| !n.is_zero()) {
            let second = classifier.classify(n, SubmodulePredicate::Second).unwrap();
            let strong = classifier.classify(n, SubmodulePredicate::StronglyTwoAbsorbingSecond).unwrap();
            let coprimary = classifier.classify(n, SubmodulePredicate::TwoAbsorbingCoprimary).unwrap();
            let by_char = coprimary_via_characterization(&m, n).unwrap();
            let at_identity = classifier.classify(n, SubmodulePredicate::GTwoAbsorbingCoprimary(0)).unwrap();
            prop_assert!(!second.value || strong.value);
            prop_assert!(!strong.value || coprimary.value);
            prop_assert_eq!(coprimary.value, by_char.value);
            prop_assert_eq!(coprimary.value, at_identity.value);
            for (pred, v) in [
                (SubmodulePredicate::Second, &second),
                (SubmodulePredicate::StronglyTwoAbsorbingSecond, &strong),
                (SubmodulePredicate::TwoAbsorbingCoprimary, &coprimary),
            ] {
                if let Some(w) = &v.witness {
                    prop_assert!(!v.value);
                    prop_assert!(recheck_submodule_witness(&m, n.members(), pred, w));
                }
            }
        }
    }

    #[test]
    fn ideal_predicates_form_a_chain(n in 2i64..=60, d in 1usize..60) {
        let r = zmod(n);
        let p = span(&*r, [d % n as usize]);
        prop_assume!(!p.is_whole());
        let v = |pred| classify_ideal(&r, &p, pred).unwrap();
        let prime = v(IdealPredicate::Prime);
        let primary = v(IdealPredicate::Primary);
        let two = v(IdealPredicate::TwoAbsorbing);
        let two_primary = v(IdealPredicate::TwoAbsorbingPrimary);
        prop_assert!(!prime.value || (primary.value && two.value));
        prop_assert!(!primary.value || two_primary.value);
        prop_assert!(!two.value || two_primary.value);
        for (pred, verdict) in [
            (IdealPredicate::Prime, &prime),
            (IdealPredicate::Primary, &primary),
            (IdealPredicate::TwoAbsorbing, &two),
            (IdealPredicate::TwoAbsorbingPrimary, &two_primary),
        ] {
            if let Some(w) = &verdict.witness {
                prop_assert!(recheck_ideal_witness(&r, p.members(), pred, w));
            }
        }
    }

    #[test]
    fn scaling_hom_image_and_preimage(n in 2i64..=24, a in 0usize..24, g in 0usize..24, h in 0usize..24) {
        let m = regular(n);
        let size = n as usize;
        let f = make_hom(&m, &m, (0..size).map(|x| a % size * x % size).collect()).unwrap();
        let l = span(&*m, [g % size]);
        let k = span(&*m, [h % size]);
        let ker = hom_kernel(&f);
        let back = hom_preimage(&f, &hom_image(&f, &l));
        let sum = combine(&*m, &l, Combine::Sum(&ker)).unwrap();
        prop_assert_eq!(back.members(), sum.members());
        let forward = hom_image(&f, &hom_preimage(&f, &k));
        let meet = combine(&*m, &k, Combine::Intersect(&f.range())).unwrap();
        prop_assert_eq!(forward.members(), meet.members());
    }

    #[test]
    fn localization_classes_follow_the_fraction_relation(n in 2i64..=30, x in 1usize..30) {
        let m = regular(n);
        let size = n as usize;
        let x = x % size;
        let mut s: Vec<usize> = Vec::new();
        let mut p = 1 % size;
        while !s.contains(&p) {
            s.push(p);
            p = p * x % size;
        }
        let loc = localize(&m, &s).unwrap();
        for a in 0..size {
            for &t in &s {
                for b in 0..size {
                    for &u in &s {
                        let same = s.iter().any(|&w| (w * ((u * a + size * size - t * b) % size)).is_multiple_of(size));
                        prop_assert_eq!(loc.fraction(a, t) == loc.fraction(b, u), same);
                    }
                }
            }
        }
        let subs = enumerate_graded_subobjects(&*m, CAP).unwrap();
        for i in &subs {
            for j in &subs {
                let sum = combine(&*m, i, Combine::Sum(j)).unwrap();
                let lifted = combine(
                    &**loc.module(),
                    &loc.localize_subobject(i),
                    Combine::Sum(&loc.localize_subobject(j)),
                ).unwrap();
                let localized = loc.localize_subobject(&sum);
                prop_assert_eq!(localized.members(), lifted.members());
            }
        }
    }

    #[test]
    fn annihilator_of_product_splits(a in 2i64..=8, b in 2i64..=8, i in 0usize..8, j in 0usize..8) {
        let (m1, m2) = (regular(a), regular(b));
        let m = GradedModule::product(&m1, &m2).unwrap();
        let n1 = span(&*m1, [i % a as usize]);
        let n2 = span(&*m2, [j % b as usize]);
        let n = product_submodule(&m, &n1, &n2);
        let expected = product_ideal(m.ring(), &annihilator(&*m1, &n1), &annihilator(&*m2, &n2));
        let ann = annihilator(&*m, &n);
        prop_assert_eq!(ann.members(), expected.members());
    }
}

#[test]
fn group_ring_enumeration_matches_graded_filter() {
    for p in [2, 3] {
        let m = GradedModule::regular(&group_ring(p, 2)).unwrap();
        let all = enumerate_all_subobjects(&*m, CAP).unwrap();
        check_graded_enumeration(&m, &all);
    }
}

fn check_graded_enumeration(m: &GradedModule, all: &[SubobjectHandle]) {
    assert_eq!(handles(all), brute_force_subobjects(m));
    let graded = enumerate_graded_subobjects(m, CAP).unwrap();
    let oracle: BTreeSet<ElemSet> = brute_force_subobjects(m)
        .into_iter()
        .filter(|s| {
            s.iter()
                .all(|x| m.grading().decompose(x).iter().all(|&c| s.contains(c)))
        })
        .collect();
    assert_eq!(handles(&graded), oracle);
    assert!(graded.iter().all(|h| is_graded(m, h.members())));
}
