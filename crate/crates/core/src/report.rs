//! Machine-readable verification reports.

use std::fmt;

use serde::Serialize;

use crate::genus0::Convention;
use crate::scalars::Field;
use crate::tseries::TSeries;

/// One comparison. `difference` is `"0"` exactly when the check holds for
/// value comparisons; composite checks aggregate their `items`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub claimed: String,
    pub computed: String,
    pub difference: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<CheckReport>,
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        claimed: impl fmt::Display,
        computed: impl fmt::Display,
        difference: impl fmt::Display,
        pass: bool,
    ) -> Self {
        CheckReport {
            name: name.into(),
            claimed: claimed.to_string(),
            computed: computed.to_string(),
            difference: difference.to_string(),
            pass,
            items: Vec::new(),
        }
    }

    /// `computed - claimed` in the field; passes iff it is zero.
    pub fn equal<F: Field>(name: impl Into<String>, claimed: &F, computed: &F) -> Self {
        let d = computed.clone() - claimed;
        let pass = d.is_zero();
        Self::new(name, claimed, computed, d, pass)
    }

    pub fn equal_series<C: Field>(name: impl Into<String>, claimed: &TSeries<C>, computed: &TSeries<C>) -> Self {
        let d = computed - claimed;
        let pass = d.is_zero();
        Self::new(name, claimed, computed, d, pass)
    }

    /// A yes/no property; `detail` goes into `computed`.
    pub fn holds(name: impl Into<String>, claim: impl fmt::Display, detail: impl fmt::Display, pass: bool) -> Self {
        Self::new(name, claim, detail, if pass { "0" } else { "counterexample" }, pass)
    }

    pub fn failed(name: impl Into<String>, claim: impl fmt::Display, err: impl fmt::Display) -> Self {
        Self::new(name, claim, format!("error: {err}"), "error", false)
    }

    /// Passes iff every item passes.
    pub fn group(name: impl Into<String>, claim: impl fmt::Display, items: Vec<CheckReport>) -> Self {
        let ok = items.iter().filter(|c| c.pass).count();
        let pass = ok == items.len();
        let mut r =
            Self::new(name, claim, format!("{ok}/{} sub-checks hold", items.len()), if pass { "0" } else { "failing sub-checks" }, pass);
        r.items = items;
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportConfig {
    pub order: u32,
    pub cyclotomic_order: u32,
    pub convention: Convention,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportBundle {
    pub config: ReportConfig,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

impl ReportBundle {
    pub fn new(config: ReportConfig, checks: Vec<CheckReport>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        ReportBundle { config, checks, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    /// One line per check: `PASS name` / `FAIL name: computed`.
    pub fn lines(&self) -> Vec<String> {
        self.checks.iter().map(|c| if c.pass { format!("PASS {}", c.name) } else { format!("FAIL {}: {}", c.name, c.computed) }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rational};

    #[test]
    fn counts_follow_the_list() {
        let a = CheckReport::equal::<Rational>("a", &rat(1, 2), &rat(1, 2));
        let b = CheckReport::equal::<Rational>("b", &rat(1, 2), &rat(1, 3));
        assert_eq!(a.difference, "0");
        assert_eq!(b.difference, "-1/6");
        let g = CheckReport::group("g", "both", vec![a.clone(), b.clone()]);
        assert!(!g.pass);
        let cfg = ReportConfig { order: 3, cyclotomic_order: 12, convention: Convention::Monomial };
        let bundle = ReportBundle::new(cfg, vec![a, b, g]);
        assert_eq!(bundle.summary, Summary { total: 3, passed: 1, failed: 2 });
        assert_eq!(bundle.lines()[0], "PASS a");
    }
}
