//! Exhaustive verification of an identity over a parameter box.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use super::{find_identity, IdentityDescriptor};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Inclusive integer interval, written `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        IntRange { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::usage(format!("invalid range `{s}`, expected a..b")))
        };
        match s.split_once("..") {
            Some((a, b)) => Ok(IntRange::new(parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?)),
            None => {
                let v = parse(s)?;
                Ok(IntRange::new(v, v))
            }
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Per-parameter ranges keyed by parameter name.
pub type Ranges = BTreeMap<String, IntRange>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub jobs: usize,
    pub fail_fast: bool,
    /// Ignore the identity's hypotheses and sweep the raw ranges.
    pub outside_domain: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { jobs: 1, fail_fast: false, outside_domain: false }
    }
}

/// One side of a mismatch: a value, or the reason it could not be computed
/// (only possible when sweeping outside the stated domain).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SideValue {
    Value(Rational),
    Undefined(String),
}

impl fmt::Display for SideValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideValue::Value(r) => write!(f, "{r}"),
            SideValue::Undefined(why) => write!(f, "undefined ({why})"),
        }
    }
}

impl Serialize for SideValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub assignment: BTreeMap<String, i64>,
    pub lhs: SideValue,
    pub rhs: SideValue,
    #[serde(skip)]
    values: Vec<i64>,
}

impl Mismatch {
    /// Parameter values in declaration order.
    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}: lhs {} != rhs {}", at.join(", "), self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepDomain {
    pub ranges: BTreeMap<String, IntRange>,
    pub constraints: String,
    pub outside_domain: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub domain: SweepDomain,
    /// Cells evaluated. Equals the domain size unless a fail-fast sweep
    /// stopped early, in which case `stopped_early` is set.
    pub cells: u64,
    pub status: Status,
    pub mismatches: Vec<Mismatch>,
    pub stopped_early: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Resolved per-parameter limits: each parameter is swept over the user box
/// intersected with its (possibly dependent) hypotheses.
struct Plan<'a> {
    desc: &'a IdentityDescriptor,
    user: Vec<Option<IntRange>>,
    outside: bool,
}

impl Plan<'_> {
    fn bounds(&self, idx: usize, prefix: &[i64]) -> (i64, i64) {
        let p = &self.desc.params[idx];
        let user = self.user[idx];
        let (mut lo, mut hi) = match user {
            Some(r) => (r.lo, r.hi),
            None => (i64::MIN, i64::MAX),
        };
        if !self.outside || user.is_none() {
            lo = lo.max(p.min.eval(prefix));
            if let Some(max) = &p.max {
                hi = hi.min(max.eval(prefix));
            }
        }
        (lo, hi)
    }

    /// Visits every cell whose first parameter equals `first`, in row-major
    /// order. Returns false if the visitor asked to stop.
    fn walk(&self, values: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        let idx = values.len();
        if idx == self.desc.params.len() {
            return visit(values);
        }
        let (lo, hi) = self.bounds(idx, values);
        for v in lo..=hi {
            values.push(v);
            let go_on = self.walk(values, visit);
            values.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    fn outer_values(&self) -> Vec<i64> {
        let (lo, hi) = self.bounds(0, &[]);
        (lo..=hi).collect()
    }

    fn count(&self, first: i64) -> u64 {
        let mut n = 0u64;
        self.walk(&mut vec![first], &mut |_| {
            n += 1;
            true
        });
        n
    }
}

#[derive(Default)]
struct Partial {
    cells: u64,
    mismatches: Vec<Mismatch>,
    error: Option<Error>,
}

fn check_cell(desc: &IdentityDescriptor, values: &[i64], outside: bool) -> Result<Option<Mismatch>> {
    let (l, r) = desc.sides_unchecked(values);
    let side = |res: Result<Rational>| -> Result<SideValue> {
        match res {
            Ok(v) => Ok(SideValue::Value(v)),
            Err(e) if outside => Ok(SideValue::Undefined(e.to_string())),
            Err(e) => Err(Error::integrity(format!(
                "{} at {:?}: evaluator failed inside its domain: {e}",
                desc.id, values
            ))),
        }
    };
    let (l, r) = (side(l)?, side(r)?);
    if l == r && matches!(l, SideValue::Value(_)) {
        return Ok(None);
    }
    let assignment = desc.params.iter().zip(values).map(|(p, &v)| (p.name.to_string(), v)).collect();
    Ok(Some(Mismatch { assignment, lhs: l, rhs: r, values: values.to_vec() }))
}

/// Sweeps `desc` over `ranges` intersected with its domain.
///
/// Parameters missing from `ranges` fall back to the identity's own bounds;
/// a parameter left without an upper bound is a usage error, as is an empty
/// admissible domain.
pub fn verify_identity(
    desc: &IdentityDescriptor,
    ranges: &Ranges,
    opts: SweepOptions,
) -> Result<VerificationReport> {
    let started = Instant::now();
    for name in ranges.keys() {
        if !desc.params.iter().any(|p| p.name == name) {
            return Err(Error::usage(format!(
                "{} has no parameter `{name}` (parameters: {})",
                desc.id,
                desc.param_names().join(", ")
            )));
        }
    }
    let user: Vec<Option<IntRange>> = desc.params.iter().map(|p| ranges.get(p.name).copied()).collect();
    for (p, r) in desc.params.iter().zip(&user) {
        if r.is_none() && p.max.is_none() {
            return Err(Error::usage(format!("{}: parameter `{}` needs an explicit range", desc.id, p.name)));
        }
    }
    let plan = Plan { desc, user, outside: opts.outside_domain };

    let outer = plan.outer_values();
    let total: u64 = outer.iter().map(|&v| plan.count(v)).sum();
    if total == 0 {
        return Err(Error::usage(format!(
            "{}: no admissible cells in the requested ranges ({})",
            desc.id,
            desc.constraints()
        )));
    }

    let stop = AtomicBool::new(false);
    let run_outer = |first: i64| -> Partial {
        let mut part = Partial::default();
        plan.walk(&mut vec![first], &mut |values| {
            if opts.fail_fast && stop.load(Ordering::Relaxed) {
                return false;
            }
            part.cells += 1;
            match check_cell(desc, values, opts.outside_domain) {
                Ok(None) => true,
                Ok(Some(m)) => {
                    part.mismatches.push(m);
                    if opts.fail_fast {
                        stop.store(true, Ordering::Relaxed);
                        return false;
                    }
                    true
                }
                Err(e) => {
                    part.error = Some(e);
                    stop.store(true, Ordering::Relaxed);
                    false
                }
            }
        });
        part
    };

    let partials: Vec<Partial> = if opts.jobs <= 1 {
        outer.iter().map(|&v| run_outer(v)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::usage(format!("cannot start {} workers: {e}", opts.jobs)))?;
        pool.install(|| outer.par_iter().map(|&v| run_outer(v)).collect())
    };

    let mut cells = 0;
    let mut mismatches = Vec::new();
    for part in partials {
        if let Some(e) = part.error {
            return Err(e);
        }
        cells += part.cells;
        mismatches.extend(part.mismatches);
    }
    mismatches.sort_by(|a, b| a.values.cmp(&b.values));

    let status = if mismatches.is_empty() { Status::Pass } else { Status::Fail };
    Ok(VerificationReport {
        identity: desc.id.to_string(),
        domain: SweepDomain {
            ranges: desc
                .params
                .iter()
                .zip(&plan.user)
                .filter_map(|(p, r)| r.map(|r| (p.name.to_string(), r)))
                .collect(),
            constraints: desc.constraints(),
            outside_domain: opts.outside_domain,
        },
        cells,
        status,
        mismatches,
        stopped_early: cells < total,
        elapsed_ms: Some(started.elapsed().as_millis() as u64),
    })
}

/// [`verify_identity`] by registry id.
pub fn verify(id: &str, ranges: &Ranges, opts: SweepOptions) -> Result<VerificationReport> {
    verify_identity(find_identity(id)?, ranges, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranges(pairs: &[(&str, i64, i64)]) -> Ranges {
        pairs.iter().map(|&(k, a, b)| (k.to_string(), IntRange::new(a, b))).collect()
    }

    #[test]
    fn parse_ranges() {
        assert_eq!("1..40".parse::<IntRange>().unwrap(), IntRange::new(1, 40));
        assert_eq!("1..=40".parse::<IntRange>().unwrap(), IntRange::new(1, 40));
        assert_eq!("7".parse::<IntRange>().unwrap(), IntRange::new(7, 7));
        assert_eq!("-3..2".parse::<IntRange>().unwrap(), IntRange::new(-3, 2));
        assert!("a..b".parse::<IntRange>().is_err());
        assert!("1..".parse::<IntRange>().is_err());
    }

    #[test]
    fn recurrence_sweep_passes() {
        let r = verify("prop-recurrence", &ranges(&[("m", 1, 50), ("k", 2, 50)]), SweepOptions::default())
            .unwrap();
        assert!(r.passed());
        assert_eq!(r.cells, 50 * 49);
        assert!(!r.stopped_early);
    }

    #[test]
    fn convolution_sweep_passes() {
        let r = verify("eq-convolution", &ranges(&[("n", 1, 30)]), SweepOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.cells, 30 * 31 / 2);
    }

    #[test]
    fn empty_domain_is_usage_error() {
        let err = verify("thm-square-sum", &ranges(&[("m", 1, 0), ("n", 1, 3)]), SweepOptions::default());
        assert!(matches!(err, Err(Error::Usage(_))));
        let err = verify("thm-linear-sum", &ranges(&[("m", 1, 1), ("n", 1, 3)]), SweepOptions::default());
        assert!(matches!(err, Err(Error::Usage(_))));
    }

    #[test]
    fn unbounded_and_unknown_params_rejected() {
        let err = verify("thm-square-sum", &ranges(&[("m", 1, 4)]), SweepOptions::default());
        assert!(matches!(err, Err(Error::Usage(_))));
        let err = verify("eq-dixon", &ranges(&[("n", 1, 4), ("z", 0, 1)]), SweepOptions::default());
        assert!(matches!(err, Err(Error::Usage(_))));
    }

    #[test]
    fn dependent_bounds_follow_outer_parameter() {
        let r = verify("thm-alt-sum", &ranges(&[("m", 2, 10), ("n", 1, 100)]), SweepOptions::default())
            .unwrap();
        // n runs over 1..=m-1 for each m.
        assert_eq!(r.cells, (2..=10).map(|m| m - 1).sum::<u64>());
    }

    #[test]
    fn perturbed_identity_fails_everywhere() {
        let desc = find_identity("thm-linear-sum").unwrap().perturbed();
        let r = verify_identity(&desc, &ranges(&[("m", 2, 12), ("n", 1, 12)]), SweepOptions::default()).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.mismatches.len() as u64, r.cells);
        assert_eq!(r.cells, 11 * 12);
    }

    #[test]
    fn fail_fast_stops_early() {
        let desc = find_identity("thm-linear-sum").unwrap().perturbed();
        let opts = SweepOptions { fail_fast: true, ..Default::default() };
        let r = verify_identity(&desc, &ranges(&[("m", 2, 12), ("n", 1, 12)]), opts).unwrap();
        assert_eq!(r.mismatches.len(), 1);
        assert!(r.stopped_early);
        assert_eq!(r.mismatches[0].values(), &[2, 1]);
    }

    #[test]
    fn outside_domain_records_undefined_sides() {
        let opts = SweepOptions { outside_domain: true, ..Default::default() };
        // thm-alt-sum at m = 1 needs row 0 on the right-hand side.
        let r = verify("thm-alt-sum", &ranges(&[("m", 1, 3), ("n", 1, 2)]), opts).unwrap();
        assert_eq!(r.cells, 6);
        assert!(r.mismatches.iter().any(|m| matches!(m.rhs, SideValue::Undefined(_))));
        let json = r.to_json();
        assert!(json.contains("undefined"));
    }

    #[test]
    fn parallel_report_matches_serial() {
        let desc = find_identity("thm-cube-sum").unwrap().perturbed();
        let rs = ranges(&[("m", 1, 20), ("n", 1, 20)]);
        let serial = verify_identity(&desc, &rs, SweepOptions::default()).unwrap().without_timing();
        let par = verify_identity(&desc, &rs, SweepOptions { jobs: 4, ..Default::default() })
            .unwrap()
            .without_timing();
        assert_eq!(serial, par);
        assert_eq!(serial.to_json(), par.to_json());
    }

    #[test]
    fn report_json_shape() {
        let r = verify("eq-dixon", &ranges(&[("n", 1, 5)]), SweepOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["identity", "domain", "cells", "status", "mismatches", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["status"], "PASS");
        assert_eq!(v["cells"], 5);
    }
}
