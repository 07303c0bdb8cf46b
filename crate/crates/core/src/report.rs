//! Pass/fail records for identity checks.

use std::fmt;

use serde::Serialize;

use crate::incidence::IncidenceFunction;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Labels of the interval endpoints, when the identity is interval-wise.
    pub interval: Option<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity: String,
    pub passed: bool,
    pub mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), checks: Vec::new() }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&mut self, identity: impl Into<String>, passed: bool, mismatch: Option<Mismatch>) {
        self.checks.push(Check { identity: identity.into(), passed, mismatch: if passed { None } else { mismatch } });
    }

    pub fn check_equal<T: PartialEq + fmt::Display>(&mut self, identity: impl Into<String>, lhs: &T, rhs: &T) {
        let passed = lhs == rhs;
        let mismatch = Mismatch { interval: None, lhs: lhs.to_string(), rhs: rhs.to_string() };
        self.check(identity, passed, Some(mismatch));
    }

    /// Compares two incidence functions interval by interval, recording the
    /// first interval where they differ.
    pub fn check_functions(&mut self, identity: impl Into<String>, lhs: &IncidenceFunction, rhs: &IncidenceFunction) {
        let poset = lhs.poset();
        let found = poset
            .pairs()
            .iter()
            .zip(lhs.values().iter().zip(rhs.values()))
            .find(|(_, (a, b))| a != b);
        let mismatch = found.map(|(&(s, t), (a, b))| Mismatch {
            interval: Some((poset.label(s).to_string(), poset.label(t).to_string())),
            lhs: a.to_string(),
            rhs: b.to_string(),
        });
        let passed = mismatch.is_none() && lhs.values().len() == rhs.values().len();
        self.check(identity, passed, mismatch);
    }

    /// Like [`Report::check_equal`] for polynomials on a named interval.
    pub fn check_on(&mut self, identity: impl Into<String>, interval: (&str, &str), lhs: &Polynomial, rhs: &Polynomial) {
        let mismatch = Mismatch {
            interval: Some((interval.0.to_string(), interval.1.to_string())),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        };
        self.check(identity, lhs == rhs, Some(mismatch));
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for c in &self.checks {
            if c.passed {
                writeln!(f, "  PASS {}", c.identity)?;
            } else {
                write!(f, "  FAIL {}", c.identity)?;
                if let Some(m) = &c.mismatch {
                    if let Some((s, t)) = &m.interval {
                        write!(f, " on [{s}, {t}]")?;
                    }
                    write!(f, ": {} != {}", m.lhs, m.rhs)?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
