//! Finite grading groups as explicit Cayley tables.

use std::collections::HashMap;
use std::sync::Arc;

use super::validate::{Validate, ValidationReport};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    Trivial,
    Cyclic(i64),
    Product(Box<GroupDescriptor>, Box<GroupDescriptor>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingGroup {
    labels: Vec<String>,
    op: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    lookup: HashMap<String, usize>,
}

impl GradingGroup {
    /// Builds a group from raw tables without checking the axioms.
    /// `op` is row-major: `op[a * n + b] = a·b`.
    pub fn from_tables(labels: Vec<String>, op: Vec<usize>, identity: usize, inverse: Vec<usize>) -> Self {
        let lookup = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        GradingGroup {
            labels,
            op,
            identity,
            inverse,
            lookup,
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.order() + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
}

pub fn make_group(desc: &GroupDescriptor) -> Result<Arc<GradingGroup>> {
    build(desc).map(Arc::new)
}

fn build(desc: &GroupDescriptor) -> Result<GradingGroup> {
    match desc {
        GroupDescriptor::Trivial => Ok(GradingGroup::from_tables(vec!["e".into()], vec![0], 0, vec![0])),
        &GroupDescriptor::Cyclic(n) => {
            if n <= 0 {
                return Err(Error::InvalidDescriptor(format!(
                    "cyclic group order must be positive, got {n}"
                )));
            }
            let n = n as usize;
            let labels = (0..n).map(|i| i.to_string()).collect();
            let op = (0..n * n).map(|i| (i / n + i % n) % n).collect();
            let inverse = (0..n).map(|a| (n - a) % n).collect();
            Ok(GradingGroup::from_tables(labels, op, 0, inverse))
        }
        GroupDescriptor::Product(a, b) => {
            let a = build(a)?;
            let b = build(b)?;
            let (na, nb) = (a.order(), b.order());
            let n = na * nb;
            let labels = (0..n)
                .map(|i| format!("({},{})", a.label(i / nb), b.label(i % nb)))
                .collect();
            let mut op = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    op.push(a.op(x / nb, y / nb) * nb + b.op(x % nb, y % nb));
                }
            }
            let inverse = (0..n).map(|x| a.inverse(x / nb) * nb + b.inverse(x % nb)).collect();
            Ok(GradingGroup::from_tables(
                labels,
                op,
                a.identity() * nb + b.identity(),
                inverse,
            ))
        }
    }
}

impl Validate for GradingGroup {
    fn validate_axioms(&self) -> ValidationReport {
        let mut report = ValidationReport::new("group");
        let n = self.order();
        let l = |x: usize| self.labels.get(x).cloned().unwrap_or_else(|| format!("#{x}"));
        if self.op.len() != n * n || self.inverse.len() != n || self.identity >= n {
            report.fail("table shape", vec![n.to_string()]);
            return report;
        }
        if let Some(i) = self.op.iter().position(|&v| v >= n) {
            report.fail("closure", vec![l(i / n), l(i % n)]);
            return report;
        }
        let e = self.identity;
        for a in 0..n {
            if self.op(a, e) != a || self.op(e, a) != a {
                report.fail("identity", vec![l(a)]);
            }
            let inv = self.inverse[a];
            if inv >= n || self.op(a, inv) != e || self.op(inv, a) != e {
                report.fail("inverse", vec![l(a)]);
            }
            for b in 0..n {
                for c in 0..n {
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                        report.fail("associativity", vec![l(a), l(b), l(c)]);
                    }
                }
            }
        }
        report
    }
}
