//! Catalog of identities, each checked by exact evaluation of both sides over a
//! finite parameter grid.
//!
//! A record is either evaluable (two evaluators and a grid) or carries the reason
//! it cannot be evaluated. Verified claims are expected to hold on their whole
//! grid; audited claims are evaluated as printed and their failures are findings.
//! The validity summary attached to a report describes the tested grid only.

mod registry;
mod summary;

use std::fmt;
use std::sync::OnceLock;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{serde_exact, ExactInt, ExactRat};

pub use registry::{face_count_claim, OUT_OF_SCOPE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "VERIFIED_CLAIM")]
    Verified,
    #[serde(rename = "AUDITED_CLAIM")]
    Audited,
    #[serde(rename = "NON_EVALUABLE")]
    NonEvaluable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "VERIFIED_CLAIM",
            Status::Audited => "AUDITED_CLAIM",
            Status::NonEvaluable => "NON_EVALUABLE",
        })
    }
}

/// A grid variable taking the values `lo/denom, (lo+1)/denom, ..., hi/denom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Var {
    pub name: &'static str,
    pub lo: i64,
    pub hi: i64,
    pub denom: i64,
}

impl Var {
    pub fn values(&self) -> Vec<ExactRat> {
        (self.lo..=self.hi)
            .map(|i| ExactRat::new(i.into(), self.denom.into()))
            .collect()
    }

    fn describe(&self) -> String {
        if self.denom == 1 {
            format!("{} in [{}, {}]", self.name, self.lo, self.hi)
        } else {
            format!(
                "{} in [{}, {}] step {}",
                self.name,
                ExactRat::new(self.lo.into(), self.denom.into()),
                ExactRat::new(self.hi.into(), self.denom.into()),
                ExactRat::new(1.into(), self.denom.into()),
            )
        }
    }
}

/// One grid point: variable values in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    coords: Vec<(&'static str, ExactRat)>,
}

impl Point {
    pub fn new(coords: Vec<(&'static str, ExactRat)>) -> Self {
        Point { coords }
    }

    pub fn coords(&self) -> &[(&'static str, ExactRat)] {
        &self.coords
    }

    pub fn rat(&self, name: &str) -> &ExactRat {
        self.coords
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v)
            .unwrap_or_else(|| panic!("grid point has no variable `{name}`"))
    }

    pub fn int(&self, name: &str) -> ExactInt {
        let v = self.rat(name);
        assert!(v.is_integer(), "variable `{name}` is not an integer");
        v.to_integer()
    }

    pub fn i64(&self, name: &str) -> i64 {
        self.int(name).to_i64().expect("machine-sized grid value")
    }

    pub fn u64(&self, name: &str) -> u64 {
        self.int(name).to_u64().expect("nonnegative grid value")
    }

    pub fn u32(&self, name: &str) -> u32 {
        self.int(name).to_u32().expect("nonnegative grid value")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("(single point)");
        }
        for (i, (name, v)) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coords.len()))?;
        for (name, v) in &self.coords {
            map.serialize_entry(name, &v.to_string())?;
        }
        map.end()
    }
}

pub type Evaluator = fn(&Point) -> ExactRat;
pub type Constraint = fn(&Point) -> bool;
pub type Supplement = fn(&[Failure]) -> Vec<String>;

/// Cartesian grid over the variables, optionally filtered by a constraint.
/// Points are enumerated lexicographically with the first variable outermost.
#[derive(Debug, Clone, Default)]
pub struct Domain {
    pub vars: Vec<Var>,
    constraint: Option<(&'static str, Constraint)>,
}

impl Domain {
    pub fn new() -> Self {
        Domain::default()
    }

    pub fn var(self, name: &'static str, lo: i64, hi: i64) -> Self {
        self.rat_var(name, lo, hi, 1)
    }

    /// Variable with values `lo/denom ..= hi/denom` in steps of `1/denom`.
    pub fn rat_var(mut self, name: &'static str, lo: i64, hi: i64, denom: i64) -> Self {
        assert!(lo <= hi && denom > 0);
        self.vars.push(Var {
            name,
            lo,
            hi,
            denom,
        });
        self
    }

    pub fn when(mut self, text: &'static str, f: Constraint) -> Self {
        self.constraint = Some((text, f));
        self
    }

    pub fn var_named(&self, name: &str) -> Option<&Var> {
        self.vars.iter().find(|v| v.name == name)
    }

    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![Point::new(Vec::new())];
        for var in &self.vars {
            let values = var.values();
            out = out
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut coords = p.coords.clone();
                        coords.push((var.name, v.clone()));
                        Point::new(coords)
                    })
                })
                .collect();
        }
        if let Some((_, keep)) = self.constraint {
            out.retain(|p| keep(p));
        }
        out
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.vars.iter().map(Var::describe).collect();
        if parts.is_empty() {
            parts.push("single point".to_string());
        }
        let mut s = parts.join(", ");
        if let Some((text, _)) = self.constraint {
            s.push_str("; ");
            s.push_str(text);
        }
        s
    }

    /// Replaces the integer range of one variable, keeping its step.
    pub fn with_override(&self, id: &str, o: &DomainOverride) -> Result<Domain> {
        let mut d = self.clone();
        let var = d
            .vars
            .iter_mut()
            .find(|v| v.name == o.var)
            .ok_or_else(|| Error::UnknownVariable {
                id: id.to_string(),
                var: o.var.clone(),
            })?;
        if o.lo > o.hi {
            return Err(crate::error::domain(format!(
                "empty range {}..{} for `{}`",
                o.lo, o.hi, o.var
            )));
        }
        var.lo = o.lo;
        var.hi = o.hi;
        Ok(d)
    }
}

/// New numerator range for one grid variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainOverride {
    pub var: String,
    pub lo: i64,
    pub hi: i64,
}

impl std::str::FromStr for DomainOverride {
    type Err = Error;

    /// Parses `name=lo..hi` or `name=value`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || crate::error::domain(format!("range `{s}` is not of the form name=lo..hi"));
        let (var, range) = s.split_once('=').ok_or_else(bad)?;
        let (lo, hi) = match range.split_once("..") {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let v: i64 = range.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        Ok(DomainOverride {
            var: var.trim().to_string(),
            lo,
            hi,
        })
    }
}

pub struct Check {
    pub domain: Domain,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
    /// Absolute tolerance per point; exact equality when absent.
    pub tolerance: Option<Evaluator>,
    /// Extra report lines derived from the failures.
    pub supplement: Option<Supplement>,
}

pub enum Body {
    Evaluable(Check),
    NonEvaluable { reason: &'static str },
}

pub struct IdentityRecord {
    pub id: &'static str,
    /// The identity as a formula, `lhs = rhs`.
    pub citation: &'static str,
    pub status: Status,
    pub body: Body,
    pub notes: Vec<&'static str>,
}

impl IdentityRecord {
    pub fn check(&self) -> Option<&Check> {
        match &self.body {
            Body::Evaluable(c) => Some(c),
            Body::NonEvaluable { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub point: Point,
    #[serde(serialize_with = "serde_exact::rat")]
    pub lhs: ExactRat,
    #[serde(serialize_with = "serde_exact::rat")]
    pub rhs: ExactRat,
    /// `lhs - rhs`
    #[serde(serialize_with = "serde_exact::rat")]
    pub residual: ExactRat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub id: String,
    pub citation: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub domain: String,
    pub points_tested: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
    pub validity_summary: String,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl AuditReport {
    pub fn failure_at(&self, point: &[(&str, i64)]) -> Option<&Failure> {
        self.failures.iter().find(|f| {
            f.point.coords.len() == point.len()
                && point
                    .iter()
                    .all(|(n, v)| *f.point.rat(n) == ExactRat::from_integer((*v).into()))
        })
    }

    /// A verified claim that failed somewhere on its grid.
    pub fn is_verified_failure(&self) -> bool {
        self.status == Status::Verified && !self.passed
    }
}

/// All records, ordered by id.
pub fn registry() -> &'static [IdentityRecord] {
    static REGISTRY: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut v = registry::build();
        v.sort_by(|a, b| a.id.cmp(b.id));
        v
    })
}

pub fn find(id: &str) -> Option<&'static IdentityRecord> {
    registry().iter().find(|r| r.id == id)
}

/// Evaluates one record on its default grid, with optional range overrides.
pub fn audit(id: &str, overrides: &[DomainOverride]) -> Result<AuditReport> {
    let record = find(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    let check = match &record.body {
        Body::Evaluable(c) => c,
        Body::NonEvaluable { reason } => {
            return Err(Error::NonEvaluable {
                id: id.to_string(),
                reason: reason.to_string(),
            })
        }
    };
    let mut domain = check.domain.clone();
    for o in overrides {
        domain = domain.with_override(id, o)?;
    }
    Ok(evaluate(record, check, &domain))
}

fn evaluate(record: &IdentityRecord, check: &Check, domain: &Domain) -> AuditReport {
    let points = domain.points();
    let evaluated: Vec<(ExactRat, ExactRat, bool)> = points
        .par_iter()
        .map(|p| {
            let lhs = (check.lhs)(p);
            let rhs = (check.rhs)(p);
            let residual = &lhs - &rhs;
            let ok = match check.tolerance {
                None => residual.is_zero(),
                Some(tol) => residual.abs() <= tol(p),
            };
            (lhs, rhs, ok)
        })
        .collect();
    let pass: Vec<bool> = evaluated.iter().map(|e| e.2).collect();
    let failures: Vec<Failure> = points
        .iter()
        .zip(evaluated)
        .filter(|(_, e)| !e.2)
        .map(|(p, (lhs, rhs, _))| Failure {
            point: p.clone(),
            residual: &lhs - &rhs,
            lhs,
            rhs,
        })
        .collect();
    let mut notes: Vec<String> = record.notes.iter().map(|s| s.to_string()).collect();
    if let Some(extra) = check.supplement {
        notes.extend(extra(&failures));
    }
    AuditReport {
        id: record.id.to_string(),
        citation: record.citation.to_string(),
        status: record.status,
        reason: None,
        domain: domain.describe(),
        points_tested: points.len(),
        failure_count: failures.len(),
        passed: failures.is_empty(),
        validity_summary: summary::synthesize(&points, &pass),
        failures,
        notes,
    }
}

fn non_evaluable_report(record: &IdentityRecord, reason: &str) -> AuditReport {
    AuditReport {
        id: record.id.to_string(),
        citation: record.citation.to_string(),
        status: record.status,
        reason: Some(reason.to_string()),
        domain: String::new(),
        points_tested: 0,
        failure_count: 0,
        failures: Vec::new(),
        validity_summary: "not evaluated".to_string(),
        notes: record.notes.iter().map(|s| s.to_string()).collect(),
        passed: true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRun {
    pub records: Vec<AuditReport>,
    pub verified_total: usize,
    pub verified_failed: usize,
    pub audited_total: usize,
    pub non_evaluable_total: usize,
}

impl AuditRun {
    pub fn from_reports(records: Vec<AuditReport>) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        AuditRun {
            verified_total: count(Status::Verified),
            verified_failed: records.iter().filter(|r| r.is_verified_failure()).count(),
            audited_total: count(Status::Audited),
            non_evaluable_total: count(Status::NonEvaluable),
            records,
        }
    }

    pub fn get(&self, id: &str) -> Option<&AuditReport> {
        self.records.iter().find(|r| r.id == id)
    }

    /// 0 when every verified claim held, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verified_failed == 0 {
            0
        } else {
            2
        }
    }
}

pub fn report_for(record: &IdentityRecord) -> AuditReport {
    match &record.body {
        Body::Evaluable(c) => evaluate(record, c, &c.domain),
        Body::NonEvaluable { reason } => non_evaluable_report(record, reason),
    }
}

/// Every record on its default grid, in id order.
pub fn audit_all() -> AuditRun {
    AuditRun::from_reports(registry().iter().map(report_for).collect())
}

/// Failure rows shown per record in text output; JSON lists all of them.
pub const TEXT_FAILURE_LIMIT: usize = 50;

pub fn render_report_text(r: &AuditReport, out: &mut String) {
    use std::fmt::Write;
    let _ = writeln!(out, "== {} [{}]", r.id, r.status);
    let _ = writeln!(out, "identity: {}", r.citation);
    if let Some(reason) = &r.reason {
        let _ = writeln!(out, "not evaluated: {reason}");
    } else {
        let _ = writeln!(out, "domain: {} ({} points)", r.domain, r.points_tested);
        let _ = writeln!(out, "failures: {}", r.failure_count);
        for f in r.failures.iter().take(TEXT_FAILURE_LIMIT) {
            let _ = writeln!(
                out,
                "  {}: lhs={} rhs={} residual={}",
                f.point, f.lhs, f.rhs, f.residual
            );
        }
        if r.failure_count > TEXT_FAILURE_LIMIT {
            let _ = writeln!(out, "  ... {} more", r.failure_count - TEXT_FAILURE_LIMIT);
        }
        let _ = writeln!(out, "summary: {}", r.validity_summary);
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let verdict = match (r.status, r.passed) {
        (Status::NonEvaluable, _) => "skipped",
        (Status::Verified, true) => "ok",
        (Status::Verified, false) => "FAILED",
        (Status::Audited, true) => "holds on grid",
        (Status::Audited, false) => "finding",
    };
    let _ = writeln!(out, "verdict: {verdict}");
}

pub fn render_text(run: &AuditRun) -> String {
    let mut out = String::new();
    for r in &run.records {
        render_report_text(r, &mut out);
        out.push('\n');
    }
    out.push_str(&format!(
        "verified: {} of {} green; audited: {}; non-evaluable: {}\n",
        run.verified_total - run.verified_failed,
        run.verified_total,
        run.audited_total,
        run.non_evaluable_total
    ));
    out
}

pub fn render_json(run: &AuditRun) -> String {
    let mut s = serde_json::to_string_pretty(run).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn points_are_lexicographic() {
        let d = Domain::new().var("a", 0, 1).var("b", 5, 6);
        let pts: Vec<String> = d.points().iter().map(ToString::to_string).collect();
        assert_eq!(pts, ["a=0, b=5", "a=0, b=6", "a=1, b=5", "a=1, b=6"]);
    }

    #[test]
    fn constraint_filters_points() {
        let d = Domain::new()
            .var("n", 0, 3)
            .var("k", 0, 3)
            .when("k <= n", |p| p.i64("k") <= p.i64("n"));
        assert_eq!(d.points().len(), 10);
        assert_eq!(d.describe(), "n in [0, 3], k in [0, 3]; k <= n");
    }

    #[test]
    fn rational_variable() {
        let d = Domain::new().rat_var("h", -2, 2, 4);
        let vals: Vec<ExactRat> = d.points().iter().map(|p| p.rat("h").clone()).collect();
        assert_eq!(vals, vec![rat(-1, 2), rat(-1, 4), rat(0, 1), rat(1, 4), rat(1, 2)]);
        assert_eq!(d.describe(), "h in [-1/2, 1/2] step 1/4");
    }

    #[test]
    fn empty_domain_is_one_point() {
        assert_eq!(Domain::new().points().len(), 1);
    }

    #[test]
    fn override_parsing() {
        let o: DomainOverride = "x=2..5".parse().unwrap();
        assert_eq!((o.var.as_str(), o.lo, o.hi), ("x", 2, 5));
        let o: DomainOverride = "n=4".parse().unwrap();
        assert_eq!((o.lo, o.hi), (4, 4));
        assert!("x:3".parse::<DomainOverride>().is_err());
    }

    #[test]
    fn unknown_and_non_evaluable_ids() {
        assert!(matches!(audit("NOPE", &[]), Err(Error::UnknownIdentity(_))));
        assert!(matches!(audit("E4_1", &[]), Err(Error::NonEvaluable { .. })));
        let bad = DomainOverride {
            var: "zz".into(),
            lo: 0,
            hi: 1,
        };
        assert!(matches!(audit("E3_14", &[bad]), Err(Error::UnknownVariable { .. })));
    }

    #[test]
    fn override_narrows_grid() {
        let o = vec!["x=3..3".parse().unwrap(), "n=4..4".parse().unwrap()];
        let r = audit("E3_14", &o).unwrap();
        assert_eq!(r.points_tested, 1);
        assert_eq!(r.failures[0].residual, rat(1, 1));
    }
}
