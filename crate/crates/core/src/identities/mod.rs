//! Registry of exact identities and the engine that sweeps them.
//!
//! Each identity is an [`IdentityDescriptor`]: an ordered parameter list with
//! machine-checkable bounds, and two evaluators returning exact rationals.
//! Bounds of a parameter may refer to earlier parameters (`1 <= n <= m - 1`).

mod registry;
mod sweep;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exact::{ratio, Rational};

pub use sweep::{
    verify, verify_identity, IntRange, Mismatch, Ranges, SideValue, Status, SweepDomain,
    SweepOptions, VerificationReport,
};

/// An evaluator maps parameter values, in declaration order, to an exact value.
pub type Evaluator = Arc<dyn Fn(&[i64]) -> Result<Rational> + Send + Sync>;

/// `offset`, or `offset + params[base]` when `base` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub base: Option<usize>,
    pub offset: i64,
}

impl Bound {
    pub const fn lit(v: i64) -> Self {
        Bound { base: None, offset: v }
    }

    pub const fn param(index: usize, offset: i64) -> Self {
        Bound { base: Some(index), offset }
    }

    pub fn eval(&self, values: &[i64]) -> i64 {
        self.offset + self.base.map_or(0, |i| values[i])
    }

    fn render(&self, params: &[Param]) -> String {
        match (self.base, self.offset) {
            (None, v) => v.to_string(),
            (Some(i), 0) => params[i].name.to_string(),
            (Some(i), v) if v > 0 => format!("{} + {v}", params[i].name),
            (Some(i), v) => format!("{} - {}", params[i].name, -v),
        }
    }
}

/// A named integer parameter with an inclusive lower bound and an optional
/// upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: &'static str,
    pub min: Bound,
    pub max: Option<Bound>,
}

impl Param {
    pub const fn at_least(name: &'static str, min: i64) -> Self {
        Param { name, min: Bound::lit(min), max: None }
    }

    pub const fn between(name: &'static str, min: Bound, max: Bound) -> Self {
        Param { name, min, max: Some(max) }
    }
}

/// A registered identity `lhs == rhs` over a parameter domain.
#[derive(Clone)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    pub statement: &'static str,
    /// Where the identity comes from, by name of the result.
    pub anchor: &'static str,
    pub params: Vec<Param>,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
    /// Default per-parameter cap for full-registry sweeps.
    pub sweep_cap: i64,
}

impl fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("id", &self.id)
            .field("statement", &self.statement)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

impl IdentityDescriptor {
    pub fn param_names(&self) -> Vec<&'static str> {
        self.params.iter().map(|p| p.name).collect()
    }

    /// Human-readable domain, e.g. `m >= 2, 1 <= n <= m - 1`.
    pub fn constraints(&self) -> String {
        self.params
            .iter()
            .map(|p| match &p.max {
                Some(max) => format!(
                    "{} <= {} <= {}",
                    p.min.render(&self.params),
                    p.name,
                    max.render(&self.params)
                ),
                None => format!("{} >= {}", p.name, p.min.render(&self.params)),
            })
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Checks `values` against the domain. On failure returns the violated
    /// constraint.
    pub fn admits(&self, values: &[i64]) -> std::result::Result<(), String> {
        if values.len() != self.params.len() {
            return Err(format!("expected {} parameters, got {}", self.params.len(), values.len()));
        }
        for (p, &v) in self.params.iter().zip(values) {
            let lo = p.min.eval(values);
            if v < lo {
                return Err(format!("{} = {v} violates {} >= {}", p.name, p.name, p.min.render(&self.params)));
            }
            if let Some(max) = &p.max {
                if v > max.eval(values) {
                    return Err(format!("{} = {v} violates {} <= {}", p.name, p.name, max.render(&self.params)));
                }
            }
        }
        Ok(())
    }

    /// Orders a name-keyed assignment by declaration order.
    pub fn values_of(&self, assignment: &BTreeMap<String, i64>) -> Result<Vec<i64>> {
        for name in assignment.keys() {
            if !self.params.iter().any(|p| p.name == name) {
                return Err(Error::Constraint {
                    id: self.id.to_string(),
                    message: format!("unknown parameter `{name}` (expected {})", self.param_names().join(", ")),
                });
            }
        }
        self.params
            .iter()
            .map(|p| {
                assignment.get(p.name).copied().ok_or_else(|| Error::Constraint {
                    id: self.id.to_string(),
                    message: format!("missing parameter `{}`", p.name),
                })
            })
            .collect()
    }

    /// One range per parameter, from its smallest admissible value up to
    /// `cap`. Dependent bounds still apply during the sweep.
    pub fn capped_ranges(&self, cap: i64) -> Ranges {
        let mut lows = Vec::with_capacity(self.params.len());
        let mut out = Ranges::new();
        for p in &self.params {
            let lo = p.min.eval(&lows);
            lows.push(lo);
            out.insert(p.name.to_string(), IntRange::new(lo, cap));
        }
        out
    }

    /// Both sides at a point, without checking the domain.
    pub fn sides_unchecked(&self, values: &[i64]) -> (Result<Rational>, Result<Rational>) {
        ((self.lhs)(values), (self.rhs)(values))
    }

    /// Copy with the two sides exchanged.
    pub fn swapped(&self) -> Self {
        IdentityDescriptor {
            lhs: Arc::clone(&self.rhs),
            rhs: Arc::clone(&self.lhs),
            ..self.clone()
        }
    }

    /// Copy whose right-hand side is off by one everywhere.
    pub fn perturbed(&self) -> Self {
        let rhs = Arc::clone(&self.rhs);
        IdentityDescriptor {
            rhs: Arc::new(move |v| Ok(rhs(v)? + ratio(1))),
            ..self.clone()
        }
    }
}

/// Every registered identity, in a stable order.
pub fn list_identities() -> &'static [IdentityDescriptor] {
    static REGISTRY: OnceLock<Vec<IdentityDescriptor>> = OnceLock::new();
    REGISTRY.get_or_init(registry::build)
}

pub fn find_identity(id: &str) -> Result<&'static IdentityDescriptor> {
    list_identities()
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownIdentity { id: id.to_string() })
}

/// Evaluates both sides of identity `id` at `assignment`.
pub fn evaluate_sides(id: &str, assignment: &BTreeMap<String, i64>) -> Result<(Rational, Rational)> {
    let desc = find_identity(id)?;
    let values = desc.values_of(assignment)?;
    desc.admits(&values).map_err(|message| Error::Constraint { id: id.to_string(), message })?;
    let (l, r) = desc.sides_unchecked(&values);
    Ok((l?, r?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn at(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn required_entries_present() {
        let ids: Vec<_> = list_identities().iter().map(|d| d.id).collect();
        for id in [
            "prop-recurrence", "rec-B", "rec-A", "thm-linear-sum", "thm-alt-sum", "cor-alt-B",
            "cor-alt-A", "eq-linear-B", "eq-linear-A", "eq-square-B", "eq-square-A",
            "eq-convolution", "thm-square-sum", "thm-alt-square-sum", "cor-square-i",
            "cor-square-ii", "cor-square-iii", "cor-square-iv", "thm-square-decomp-i",
            "thm-square-decomp-ii", "thm-square-decomp-remark", "eq-vandermonde", "eq-alt-square",
            "eq-amm", "thm-cube-sum", "thm-alt-cube-sum", "cor-cube-B", "cor-cube-A",
            "cor-alt-cube-A", "eq-dixon", "thm-b-cube", "rem-b-cube-factored",
            "rem-a-cube-factored", "thm-harmonic", "cor-harmonic-C", "cor-harmonic-B",
            "cor-harmonic-A", "rem-ps13", "rel-gen-catalan",
        ] {
            assert!(ids.contains(&id), "missing {id}");
        }
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len(), "duplicate ids");
    }

    #[test]
    fn bounds_only_reference_earlier_params() {
        for d in list_identities() {
            for (i, p) in d.params.iter().enumerate() {
                for b in std::iter::once(&p.min).chain(p.max.as_ref()) {
                    if let Some(j) = b.base {
                        assert!(j < i, "{}: {} refers forward", d.id, p.name);
                    }
                }
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let (l, r) = evaluate_sides("thm-linear-sum", &at(&[("m", 6), ("n", 3)])).unwrap();
        assert_eq!((l, r), (ratio(10), ratio(10)));
        let (l, r) = evaluate_sides("cor-alt-B", &at(&[("n", 3)])).unwrap();
        assert_eq!((l, r), (ratio(-2), ratio(-2)));
        let (l, r) = evaluate_sides("thm-b-cube", &at(&[("n", 2)])).unwrap();
        assert_eq!((l, r), (ratio(9), ratio(9)));
        let (l, r) = evaluate_sides("eq-convolution", &at(&[("n", 2), ("i", 1)])).unwrap();
        assert_eq!((l, r), (ratio(6), ratio(6)));
        let (l, r) = evaluate_sides("cor-harmonic-A", &at(&[("n", 2)])).unwrap();
        assert_eq!((l, r), (ratio(6), ratio(6)));
        let (l, _) = evaluate_sides("cor-harmonic-B", &at(&[("n", 1)])).unwrap();
        // B(1,0) H_1 = 0
        assert_eq!(l, frac(0, 1));
    }

    #[test]
    fn evaluate_errors_are_distinct() {
        assert!(matches!(
            evaluate_sides("no-such-identity", &at(&[("n", 1)])),
            Err(Error::UnknownIdentity { .. })
        ));
        assert!(matches!(
            evaluate_sides("thm-linear-sum", &at(&[("m", 1), ("n", 1)])),
            Err(Error::Constraint { .. })
        ));
        assert!(matches!(
            evaluate_sides("thm-linear-sum", &at(&[("m", 4)])),
            Err(Error::Constraint { .. })
        ));
        assert!(matches!(
            evaluate_sides("thm-linear-sum", &at(&[("m", 4), ("n", 1), ("q", 2)])),
            Err(Error::Constraint { .. })
        ));
    }

    #[test]
    fn constraint_rendering() {
        assert_eq!(find_identity("thm-alt-sum").unwrap().constraints(), "m >= 2, 1 <= n <= m - 1");
        assert_eq!(find_identity("eq-convolution").unwrap().constraints(), "n >= 1, 1 <= i <= n");
    }
}
