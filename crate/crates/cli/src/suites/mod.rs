//! Seeded property suites behind `chtube verify`.
//!
//! A suite is a list of parts; each part returns named checks, each check a
//! worst observed value compared against a bound.

use serde::Serialize;

use crate::error::CliError;

mod groups;
mod holonomy;
mod metric;
mod projection;
mod tubes;
mod volume;

pub const SUITES: [&str; 6] = ["metric", "projection", "holonomy", "volume", "tubes", "groups"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity or inequality being checked, as a formula.
    pub statement: String,
    pub samples: u64,
    pub worst: f64,
    pub relation: Relation,
    pub bound: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: &str, statement: &str, samples: u64, worst: f64, bound: f64) -> Check {
        Check {
            name: name.into(),
            statement: statement.into(),
            samples,
            worst,
            relation: Relation::AtMost,
            bound,
            passed: worst <= bound,
        }
    }

    pub fn at_least(name: &str, statement: &str, samples: u64, worst: f64, bound: f64) -> Check {
        Check {
            name: name.into(),
            statement: statement.into(),
            samples,
            worst,
            relation: Relation::AtLeast,
            bound,
            passed: worst >= bound,
        }
    }

    /// A yes/no check; `worst` is 1 when it holds.
    pub fn holds(name: &str, statement: &str, samples: u64, ok: bool) -> Check {
        Check::at_least(name, statement, samples, if ok { 1.0 } else { 0.0 }, 1.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartResult {
    pub part: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub parts: Vec<PartResult>,
    pub passed: bool,
}

pub type Part = (&'static str, fn(u64) -> Vec<Check>);

pub fn parts(suite: &str) -> Option<&'static [Part]> {
    Some(match suite {
        "metric" => metric::PARTS,
        "projection" => projection::PARTS,
        "holonomy" => holonomy::PARTS,
        "volume" => volume::PARTS,
        "tubes" => tubes::PARTS,
        "groups" => groups::PARTS,
        _ => return None,
    })
}

/// Run one part by name.
pub fn run_part(suite: &str, part: &str, seed: u64) -> Option<Vec<Check>> {
    parts(suite)?.iter().find(|(n, _)| *n == part).map(|(_, f)| f(seed))
}

pub fn run_suite(suite: &str, seed: u64) -> Result<SuiteResult, CliError> {
    let parts = parts(suite).ok_or_else(|| {
        CliError::Usage(format!("unknown suite `{suite}`; expected one of {}, all", SUITES.join(", ")))
    })?;
    let parts: Vec<PartResult> =
        parts.iter().map(|(name, f)| PartResult { part: name.to_string(), checks: f(seed) }).collect();
    let passed = parts.iter().all(|p| p.checks.iter().all(|c| c.passed));
    Ok(SuiteResult { suite: suite.to_string(), parts, passed })
}

/// `all` expands to every suite in order.
pub fn run(name: &str, seed: u64) -> Result<Vec<SuiteResult>, CliError> {
    if name == "all" {
        SUITES.iter().map(|s| run_suite(s, seed)).collect()
    } else {
        Ok(vec![run_suite(name, seed)?])
    }
}

/// Largest value, with NaN dominating so that it fails any bound.
pub(crate) fn max_nan(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

pub(crate) fn min_nan(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.min(b)
    }
}
