//! Pass/fail reports for the coefficient-level property checks.

/// Outcome of one named check: empty violation list means pass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    label: String,
    violations: Vec<String>,
}

impl Report {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            violations: Vec::new(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[String] {
        &self.violations
    }

    pub fn record(&mut self, violation: impl Into<String>) {
        self.violations.push(violation.into());
    }

    /// Fold another report's violations into this one, prefixed by its label.
    pub fn absorb(&mut self, other: Report) {
        for v in other.violations {
            self.violations.push(format!("{}: {}", other.label, v));
        }
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            write!(f, "[PASS] {}", self.label)
        } else {
            writeln!(f, "[FAIL] {} ({} violations)", self.label, self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "    {v}")?;
            }
            Ok(())
        }
    }
}
