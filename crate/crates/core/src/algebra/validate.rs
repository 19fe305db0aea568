use std::fmt;

/// One failed axiom together with the tuple of element labels that breaks it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub witness: Vec<String>,
}

/// Outcome of an exhaustive axiom check. Only the first failure of each
/// axiom is recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub structure: String,
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub(crate) fn new(structure: impl Into<String>) -> Self {
        ValidationReport {
            structure: structure.into(),
            failures: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, axiom: &str) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }

    pub(crate) fn fail(&mut self, axiom: &'static str, witness: Vec<String>) {
        if !self.failed(axiom) {
            self.failures.push(AxiomFailure { axiom, witness });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "{}: all axioms hold", self.structure);
        }
        for failure in &self.failures {
            writeln!(
                f,
                "{}: {} fails at ({})",
                self.structure,
                failure.axiom,
                failure.witness.join(", ")
            )?;
        }
        Ok(())
    }
}

/// Exhaustive axiom checking for a finite table-defined structure.
pub trait Validate {
    fn validate_axioms(&self) -> ValidationReport;
}

pub fn validate_axioms(structure: &dyn Validate) -> ValidationReport {
    structure.validate_axioms()
}

/// Checks that `(0..n, add, zero)` is an abelian group. Shared by rings and modules.
pub(crate) fn check_abelian_group(
    report: &mut ValidationReport,
    n: usize,
    add: impl Fn(usize, usize) -> usize,
    zero: usize,
    label: impl Fn(usize) -> String,
) {
    for a in 0..n {
        for b in 0..n {
            if add(a, b) >= n {
                report.fail("additive closure", vec![label(a), label(b)]);
                return;
            }
        }
    }
    for a in 0..n {
        if add(a, zero) != a || add(zero, a) != a {
            report.fail("additive identity", vec![label(a)]);
        }
        if !(0..n).any(|b| add(a, b) == zero) {
            report.fail("additive inverse", vec![label(a)]);
        }
        for b in 0..n {
            let ab = add(a, b);
            if ab != add(b, a) {
                report.fail("additive commutativity", vec![label(a), label(b)]);
            }
            for c in 0..n {
                if add(ab, c) != add(a, add(b, c)) {
                    report.fail("additive associativity", vec![label(a), label(b), label(c)]);
                    break;
                }
            }
        }
    }
}
