//! Finite unital modules over finite commutative rings.

use std::collections::HashMap;
use std::sync::Arc;

use super::ring::{FiniteRing, RingKind};
use super::validate::{check_abelian_group, Validate, ValidationReport};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDescriptor {
    /// The ring acting on itself.
    RingAsModule,
    /// `Z/m_1 ⊕ ... ⊕ Z/m_k` over `integers_mod(n)`, each `m_i | n`.
    DirectSum(Vec<i64>),
    /// `M1 × M2` over a product ring `R1 × R2`.
    Product(Box<ModuleDescriptor>, Box<ModuleDescriptor>),
}

#[derive(Clone, Debug)]
pub enum ModuleKind {
    /// Element indices coincide with ring element indices.
    Regular,
    /// Mixed radix over the moduli, first coordinate most significant.
    DirectSum(Vec<usize>),
    /// Element `(a, b)` has index `a * |M2| + b`.
    Product(Arc<FiniteModule>, Arc<FiniteModule>),
    Tables,
}

#[derive(Clone, Debug)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    kind: ModuleKind,
    labels: Vec<String>,
    add: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    action: Vec<usize>,
    lookup: HashMap<String, usize>,
}

impl FiniteModule {
    /// Raw constructor; `action[r * |M| + m] = r·m`. No axioms are checked.
    pub fn from_tables_unchecked(
        ring: Arc<FiniteRing>,
        kind: ModuleKind,
        labels: Vec<String>,
        add: Vec<usize>,
        zero: usize,
        action: Vec<usize>,
    ) -> Self {
        let n = labels.len();
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add.get(a * n + b) == Some(&zero)).unwrap_or(zero))
            .collect();
        let lookup = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        FiniteModule {
            ring,
            kind,
            labels,
            add,
            neg,
            zero,
            action,
            lookup,
        }
    }

    pub fn from_tables(
        ring: Arc<FiniteRing>,
        kind: ModuleKind,
        labels: Vec<String>,
        add: Vec<usize>,
        zero: usize,
        action: Vec<usize>,
    ) -> Result<Self> {
        let m = Self::from_tables_unchecked(ring, kind, labels, add, zero, action);
        let report = m.validate_axioms();
        if report.is_ok() {
            Ok(m)
        } else {
            Err(Error::AxiomsViolated(report))
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.action[r * self.size() + m]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }
}

impl Validate for FiniteModule {
    fn validate_axioms(&self) -> ValidationReport {
        let mut report = ValidationReport::new("module");
        let n = self.size();
        let r = &self.ring;
        let nr = r.size();
        let l = |x: usize| self.labels.get(x).cloned().unwrap_or_else(|| format!("#{x}"));
        if self.add.len() != n * n || self.action.len() != nr * n || self.zero >= n {
            report.fail("table shape", vec![n.to_string()]);
            return report;
        }
        check_abelian_group(&mut report, n, |a, b| self.add(a, b), self.zero, l);
        if let Some(i) = self.action.iter().position(|&v| v >= n) {
            report.fail("action closure", vec![r.label(i / n).to_string(), l(i % n)]);
            return report;
        }
        for m in 0..n {
            if self.act(r.one(), m) != m {
                report.fail("unital action", vec![l(m)]);
            }
        }
        for a in 0..nr {
            for m in 0..n {
                let am = self.act(a, m);
                for m2 in 0..n {
                    if self.act(a, self.add(m, m2)) != self.add(am, self.act(a, m2)) {
                        report.fail("r(m+m') = rm + rm'", vec![r.label(a).into(), l(m), l(m2)]);
                    }
                }
                for b in 0..nr {
                    if self.act(r.add(a, b), m) != self.add(am, self.act(b, m)) {
                        report.fail("(r+r')m = rm + r'm", vec![r.label(a).into(), r.label(b).into(), l(m)]);
                    }
                    if self.act(r.mul(a, b), m) != self.act(a, self.act(b, m)) {
                        report.fail("(rr')m = r(r'm)", vec![r.label(a).into(), r.label(b).into(), l(m)]);
                    }
                }
            }
        }
        report
    }
}

pub fn make_module(desc: &ModuleDescriptor, ring: &Arc<FiniteRing>) -> Result<Arc<FiniteModule>> {
    let module = build(desc, ring)?;
    let report = module.validate_axioms();
    if !report.is_ok() {
        return Err(Error::AxiomsViolated(report));
    }
    Ok(Arc::new(module))
}

fn build(desc: &ModuleDescriptor, ring: &Arc<FiniteRing>) -> Result<FiniteModule> {
    match desc {
        ModuleDescriptor::RingAsModule => {
            let n = ring.size();
            let mut add = Vec::with_capacity(n * n);
            let mut action = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    add.push(ring.add(a, b));
                    action.push(ring.mul(a, b));
                }
            }
            Ok(FiniteModule::from_tables_unchecked(
                ring.clone(),
                ModuleKind::Regular,
                ring.labels().to_vec(),
                add,
                ring.zero(),
                action,
            ))
        }
        ModuleDescriptor::DirectSum(moduli) => direct_sum(moduli, ring),
        ModuleDescriptor::Product(d1, d2) => {
            let RingKind::Product(r1, r2) = ring.kind() else {
                return Err(Error::ActionIllDefined("product module needs a product ring".into()));
            };
            let m1 = Arc::new(build(d1, r1)?);
            let m2 = Arc::new(build(d2, r2)?);
            Ok(product(ring, &m1, &m2))
        }
    }
}

fn direct_sum(moduli: &[i64], ring: &Arc<FiniteRing>) -> Result<FiniteModule> {
    let RingKind::IntegersMod(n) = *ring.kind() else {
        return Err(Error::ActionIllDefined(
            "direct sum of cyclic groups needs an integers_mod ring".into(),
        ));
    };
    if moduli.is_empty() {
        return Err(Error::InvalidDescriptor("direct sum needs at least one summand".into()));
    }
    for &m in moduli {
        if m < 1 || n as i64 % m != 0 {
            return Err(Error::ActionIllDefined(format!(
                "Z/{m} is not a module over integers mod {n}: {m} does not divide {n}"
            )));
        }
    }
    let moduli: Vec<usize> = moduli.iter().map(|&m| m as usize).collect();
    let size: usize = moduli.iter().product();
    if size > 1 << 14 {
        return Err(Error::TooLarge { size, cap: 1 << 14 });
    }
    let coords: Vec<Vec<usize>> = (0..size).map(|i| direct_sum_coords(i, &moduli)).collect();
    let index = |c: &[usize]| c.iter().zip(&moduli).fold(0, |acc, (&x, &m)| acc * m + x);
    let labels = coords
        .iter()
        .map(|c| {
            if c.len() == 1 {
                c[0].to_string()
            } else {
                let parts: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    let mut add = Vec::with_capacity(size * size);
    for a in &coords {
        for b in &coords {
            let s: Vec<usize> = a.iter().zip(b).zip(&moduli).map(|((x, y), m)| (x + y) % m).collect();
            add.push(index(&s));
        }
    }
    let mut action = Vec::with_capacity(n * size);
    for r in 0..n {
        for c in &coords {
            let s: Vec<usize> = c.iter().zip(&moduli).map(|(x, m)| r * x % m).collect();
            action.push(index(&s));
        }
    }
    Ok(FiniteModule::from_tables_unchecked(
        ring.clone(),
        ModuleKind::DirectSum(moduli),
        labels,
        add,
        0,
        action,
    ))
}

pub(crate) fn direct_sum_coords(mut i: usize, moduli: &[usize]) -> Vec<usize> {
    let mut c = vec![0; moduli.len()];
    for (slot, &m) in c.iter_mut().zip(moduli).rev() {
        *slot = i % m;
        i /= m;
    }
    c
}

/// `M1 × M2` over `ring = R1 × R2` (ring indices follow the product convention).
pub fn product(ring: &Arc<FiniteRing>, m1: &Arc<FiniteModule>, m2: &Arc<FiniteModule>) -> FiniteModule {
    let (n1, n2) = (m1.size(), m2.size());
    let nr2 = m2.ring().size();
    let n = n1 * n2;
    let labels = (0..n)
        .map(|i| format!("({},{})", m1.label(i / n2), m2.label(i % n2)))
        .collect();
    let mut add = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            add.push(m1.add(x / n2, y / n2) * n2 + m2.add(x % n2, y % n2));
        }
    }
    let mut action = Vec::with_capacity(ring.size() * n);
    for r in 0..ring.size() {
        let (r1, r2) = (r / nr2, r % nr2);
        for x in 0..n {
            action.push(m1.act(r1, x / n2) * n2 + m2.act(r2, x % n2));
        }
    }
    FiniteModule::from_tables_unchecked(
        ring.clone(),
        ModuleKind::Product(m1.clone(), m2.clone()),
        labels,
        add,
        m1.zero() * n2 + m2.zero(),
        action,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{make_ring, RingDescriptor};

    #[test]
    fn regular_module_over_z4() {
        let r = make_ring(&RingDescriptor::IntegersMod(4)).unwrap();
        let m = make_module(&ModuleDescriptor::RingAsModule, &r).unwrap();
        assert_eq!(m.size(), 4);
        assert_eq!(m.act(2, 3), 2);
    }

    #[test]
    fn example_model_has_180_elements() {
        let r = make_ring(&RingDescriptor::IntegersMod(180)).unwrap();
        let m = make_module(&ModuleDescriptor::DirectSum(vec![4, 9, 5]), &r).unwrap();
        assert_eq!(m.size(), 180);
        let x = m.find("(1,1,1)").unwrap();
        assert_eq!(m.label(m.act(7, x)), "(3,7,2)");
    }

    #[test]
    fn z2_over_z4_reduces_scalars() {
        let r = make_ring(&RingDescriptor::IntegersMod(4)).unwrap();
        let m = make_module(&ModuleDescriptor::DirectSum(vec![2]), &r).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.act(2, 1), 0);
        assert_eq!(m.act(3, 1), 1);
    }

    #[test]
    fn non_dividing_modulus_is_ill_defined() {
        let r = make_ring(&RingDescriptor::IntegersMod(4)).unwrap();
        assert!(matches!(
            make_module(&ModuleDescriptor::DirectSum(vec![3]), &r),
            Err(Error::ActionIllDefined(_))
        ));
    }

    #[test]
    fn product_module_over_product_ring() {
        let r = make_ring(&RingDescriptor::Product(
            Box::new(RingDescriptor::IntegersMod(4)),
            Box::new(RingDescriptor::IntegersMod(9)),
        ))
        .unwrap();
        let m = make_module(
            &ModuleDescriptor::Product(
                Box::new(ModuleDescriptor::RingAsModule),
                Box::new(ModuleDescriptor::DirectSum(vec![3])),
            ),
            &r,
        )
        .unwrap();
        assert_eq!(m.size(), 12);
        let x = m.find("(1,1)").unwrap();
        let s = r.find("(2,2)").unwrap();
        assert_eq!(m.label(m.act(s, x)), "(2,2)");
    }
}
