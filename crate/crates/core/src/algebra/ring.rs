//! Finite commutative rings with unity, stored as addition and multiplication tables.

use std::collections::HashMap;
use std::sync::Arc;

use super::group::GradingGroup;
use super::validate::{check_abelian_group, Validate, ValidationReport};
use crate::error::{Error, Result};

/// Upper bound on table-backed ring sizes produced from descriptors.
const MAX_DESCRIPTOR_SIZE: usize = 1 << 14;

#[derive(Clone, Debug)]
pub enum RingDescriptor {
    IntegersMod(i64),
    GroupRing { p: i64, group: Arc<GradingGroup> },
    Product(Box<RingDescriptor>, Box<RingDescriptor>),
}

/// How the tables were produced. Index conventions of each kind are relied
/// upon by gradings and module constructions.
#[derive(Clone, Debug)]
pub enum RingKind {
    /// Element `i` is the residue `i`.
    IntegersMod(usize),
    /// Element index is `sum_h c_h * p^h` over group element indices `h`.
    GroupRing {
        p: usize,
        group: Arc<GradingGroup>,
    },
    /// Element `(a, b)` has index `a * |R2| + b`.
    Product(Arc<FiniteRing>, Arc<FiniteRing>),
    Tables,
}

#[derive(Clone, Debug)]
pub struct FiniteRing {
    kind: RingKind,
    labels: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
    lookup: HashMap<String, usize>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.add == other.add
            && self.mul == other.mul
            && self.zero == other.zero
            && self.one == other.one
    }
}

impl FiniteRing {
    /// Builds a ring from raw row-major tables without validating the axioms.
    pub fn from_tables_unchecked(
        kind: RingKind,
        labels: Vec<String>,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Self {
        let n = labels.len();
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add.get(a * n + b) == Some(&zero)).unwrap_or(zero))
            .collect();
        let lookup = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        FiniteRing {
            kind,
            labels,
            add,
            mul,
            neg,
            zero,
            one,
            lookup,
        }
    }

    /// Builds a ring from raw tables and rejects it unless every axiom holds.
    pub fn from_tables(
        kind: RingKind,
        labels: Vec<String>,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let ring = Self::from_tables_unchecked(kind, labels, add, mul, zero, one);
        let report = ring.validate_axioms();
        if report.is_ok() {
            Ok(ring)
        } else {
            Err(Error::AxiomsViolated(report))
        }
    }

    pub fn kind(&self) -> &RingKind {
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
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size() + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// `x^k` by repeated table lookup, `k >= 1`.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1, "exponent must be positive");
        (1..k).fold(x, |acc, _| self.mul(acc, x))
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    /// Copy of this ring with one multiplication-table cell overwritten, unchecked.
    pub fn with_mul_cell(&self, a: usize, b: usize, value: usize) -> Self {
        let mut mul = self.mul.clone();
        mul[a * self.size() + b] = value;
        Self::from_tables_unchecked(
            self.kind.clone(),
            self.labels.clone(),
            self.add.clone(),
            mul,
            self.zero,
            self.one,
        )
    }
}

impl Validate for FiniteRing {
    fn validate_axioms(&self) -> ValidationReport {
        let mut report = ValidationReport::new("ring");
        let n = self.size();
        let l = |x: usize| self.labels.get(x).cloned().unwrap_or_else(|| format!("#{x}"));
        if self.add.len() != n * n || self.mul.len() != n * n || self.zero >= n || self.one >= n {
            report.fail("table shape", vec![n.to_string()]);
            return report;
        }
        check_abelian_group(&mut report, n, |a, b| self.add(a, b), self.zero, l);
        if let Some(i) = self.mul.iter().position(|&v| v >= n) {
            report.fail("multiplicative closure", vec![l(i / n), l(i % n)]);
            return report;
        }
        if self.one == self.zero {
            report.fail("nonzero unity", vec![l(self.one)]);
        }
        for a in 0..n {
            if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                report.fail("multiplicative identity", vec![l(a)]);
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                if ab != self.mul(b, a) {
                    report.fail("commutativity", vec![l(a), l(b)]);
                }
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        report.fail("multiplicative associativity", vec![l(a), l(b), l(c)]);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(ab, self.mul(a, c)) {
                        report.fail("left distributivity", vec![l(a), l(b), l(c)]);
                    }
                    if self.mul(self.add(b, c), a) != self.add(self.mul(b, a), self.mul(c, a)) {
                        report.fail("right distributivity", vec![l(a), l(b), l(c)]);
                    }
                }
            }
        }
        report
    }
}

pub fn make_ring(desc: &RingDescriptor) -> Result<Arc<FiniteRing>> {
    let ring = match desc {
        &RingDescriptor::IntegersMod(n) => integers_mod(n)?,
        RingDescriptor::GroupRing { p, group } => group_ring(*p, group)?,
        RingDescriptor::Product(a, b) => {
            let a = make_ring(a)?;
            let b = make_ring(b)?;
            product(&a, &b)?
        }
    };
    let report = ring.validate_axioms();
    if !report.is_ok() {
        return Err(Error::AxiomsViolated(report));
    }
    Ok(Arc::new(ring))
}

fn integers_mod(n: i64) -> Result<FiniteRing> {
    if n < 2 {
        return Err(Error::InvalidDescriptor(format!("integers_mod needs n >= 2, got {n}")));
    }
    let n = n as usize;
    if n > MAX_DESCRIPTOR_SIZE {
        return Err(Error::TooLarge {
            size: n,
            cap: MAX_DESCRIPTOR_SIZE,
        });
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
    Ok(FiniteRing::from_tables_unchecked(
        RingKind::IntegersMod(n),
        labels,
        add,
        mul,
        0,
        1,
    ))
}

pub(crate) fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Coefficient vector of a group ring element, indexed by group element.
pub(crate) fn group_ring_coefficients(index: usize, p: usize, order: usize) -> Vec<usize> {
    let mut x = index;
    (0..order)
        .map(|_| {
            let c = x % p;
            x /= p;
            c
        })
        .collect()
}

pub(crate) fn group_ring_index(coeffs: &[usize], p: usize) -> usize {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn basis_label(group: &GradingGroup, h: usize) -> String {
    if h == group.identity() {
        return "1".into();
    }
    match group.label(h).parse::<usize>() {
        Ok(1) => "g".into(),
        Ok(k) => format!("g^{k}"),
        Err(_) => format!("g{}", group.label(h)),
    }
}

fn group_ring_label(coeffs: &[usize], group: &GradingGroup) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(h, &c)| {
            let basis = basis_label(group, h);
            match (c, basis.as_str()) {
                (1, _) => basis,
                (c, "1") => c.to_string(),
                (c, _) => format!("{c}{basis}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn group_ring(p: i64, group: &Arc<GradingGroup>) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::InvalidDescriptor(format!(
            "group ring coefficient modulus {p} is not prime"
        )));
    }
    let p = p as usize;
    let order = group.order();
    let size = (0..order).try_fold(1usize, |acc, _| {
        acc.checked_mul(p).filter(|&s| s <= MAX_DESCRIPTOR_SIZE)
    });
    let Some(n) = size else {
        return Err(Error::TooLarge {
            size: usize::MAX,
            cap: MAX_DESCRIPTOR_SIZE,
        });
    };
    let coeffs: Vec<Vec<usize>> = (0..n).map(|i| group_ring_coefficients(i, p, order)).collect();
    let labels = coeffs.iter().map(|c| group_ring_label(c, group)).collect();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in &coeffs {
        for b in &coeffs {
            let sum: Vec<usize> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
            add.push(group_ring_index(&sum, p));
            let mut prod = vec![0; order];
            for (g, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
                for (h, &y) in b.iter().enumerate().filter(|(_, &y)| y != 0) {
                    let gh = group.op(g, h);
                    prod[gh] = (prod[gh] + x * y) % p;
                }
            }
            mul.push(group_ring_index(&prod, p));
        }
    }
    let mut one = vec![0; order];
    one[group.identity()] = 1;
    let one = group_ring_index(&one, p);
    Ok(FiniteRing::from_tables_unchecked(
        RingKind::GroupRing {
            p,
            group: group.clone(),
        },
        labels,
        add,
        mul,
        0,
        one,
    ))
}

/// Componentwise product ring `R1 × R2`.
pub fn product(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> Result<FiniteRing> {
    let (na, nb) = (a.size(), b.size());
    let n = na * nb;
    if n > MAX_DESCRIPTOR_SIZE {
        return Err(Error::TooLarge {
            size: n,
            cap: MAX_DESCRIPTOR_SIZE,
        });
    }
    let labels = (0..n)
        .map(|i| format!("({},{})", a.label(i / nb), b.label(i % nb)))
        .collect();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (x1, x2, y1, y2) = (x / nb, x % nb, y / nb, y % nb);
            add.push(a.add(x1, y1) * nb + b.add(x2, y2));
            mul.push(a.mul(x1, y1) * nb + b.mul(x2, y2));
        }
    }
    Ok(FiniteRing::from_tables_unchecked(
        RingKind::Product(a.clone(), b.clone()),
        labels,
        add,
        mul,
        a.zero() * nb + b.zero(),
        a.one() * nb + b.one(),
    ))
}
