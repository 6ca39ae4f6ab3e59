//! Counterexample searches for two open conjectures about Catalan triangles.
//!
//! Divisibility: for odd `p`, `binom(m-1,n)` divides `sum_{k=0}^{n} C(m,k)^p`
//! whenever `m > n >= 1`. Its B and A specializations claim that
//! `(n+1)/2 C_n` divides `sum_k B(n,k)^p` and `(n+1) C_n` divides
//! `sum_k A(n,k)^p`.
//!
//! Mixed cube: with `r = min(n,m)`, `s = max(n,m)`,
//!
//! ```text
//! sum_{k=1}^{r} B(n,k)^2 B(m,k) = 1/2 binom(2n,n)^2 binom(2m,m)
//!     * [1 - (n+2m)/r * binom(n+m,n)^-1 * binom(n+r,n)^-1
//!            * sum_{j=0}^{r-1} binom(s+j,s) binom(n+j,n-1)]
//! ```
//!
//! A scan only ever reports evidence over a finite domain. Scans walk cells
//! in a fixed total order and can be checkpointed and resumed; a resumed scan
//! ends in the same state as an uninterrupted one.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, exact_div, frac, ratio, Rational};
use crate::identities::IntRange;
use crate::numbers::{catalan, Triangle};

pub const CHECKPOINT_VERSION: u32 = 1;

/// Which conjecture a scan targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Conjecture {
    /// `binom(m-1,n) | sum_{k=0}^{n} C(m,k)^p`
    #[serde(rename = "c-powers")]
    CPowers,
    /// `(n+1)/2 C_n | sum_{k=1}^{n} B(n,k)^p`
    #[serde(rename = "b-powers")]
    BPowers,
    /// `(n+1) C_n | sum_{k=1}^{n+1} A(n,k)^p`
    #[serde(rename = "a-powers")]
    APowers,
    /// The mixed `B^2 B` sum identity.
    #[serde(rename = "mixed-cube")]
    MixedCube,
}

impl Conjecture {
    pub fn name(self) -> &'static str {
        match self {
            Conjecture::CPowers => "c-powers",
            Conjecture::BPowers => "b-powers",
            Conjecture::APowers => "a-powers",
            Conjecture::MixedCube => "mixed-cube",
        }
    }

    pub fn is_divisibility(self) -> bool {
        self != Conjecture::MixedCube
    }

    fn uses_m(self) -> bool {
        matches!(self, Conjecture::CPowers | Conjecture::MixedCube)
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" | "c-powers" | "c-cubes" => Ok(Conjecture::CPowers),
            "b" | "b-powers" | "b-cubes" => Ok(Conjecture::BPowers),
            "a" | "a-powers" | "a-cubes" => Ok(Conjecture::APowers),
            "mixed" | "mixed-cube" => Ok(Conjecture::MixedCube),
            other => Err(Error::usage(format!(
                "unknown conjecture `{other}` (expected c-powers, b-powers, a-powers or mixed)"
            ))),
        }
    }
}

/// A point of a scan. One-parameter scans leave `m` empty. Cells order
/// lexicographically by `(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    pub n: i64,
}

impl Cell {
    pub fn mn(m: i64, n: i64) -> Self {
        Cell { m: Some(m), n }
    }

    pub fn n(n: i64) -> Self {
        Cell { m: None, n }
    }

    fn m_or(&self, what: &str) -> Result<i64> {
        self.m.ok_or_else(|| Error::usage(format!("{what} needs an m coordinate")))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            Some(m) => write!(f, "(m={m}, n={})", self.n),
            None => write!(f, "(n={})", self.n),
        }
    }
}

/// Parameter ranges of a scan. Missing ranges default to the conjecture's
/// own constraints where those are bounded (`n` in `1..m-1` for c-powers).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanDomain {
    pub m: Option<IntRange>,
    pub n: Option<IntRange>,
}

impl ScanDomain {
    /// All cells in scan order.
    pub fn cells(&self, conj: Conjecture) -> Result<Vec<Cell>> {
        let n_range = |what: &str| {
            self.n.ok_or_else(|| Error::usage(format!("{what} needs an n range")))
        };
        let cells: Vec<Cell> = match conj {
            Conjecture::CPowers => {
                let m = self.m.ok_or_else(|| Error::usage("c-powers needs an m range"))?;
                (m.lo.max(2)..=m.hi)
                    .flat_map(|m| {
                        let (lo, hi) = match self.n {
                            Some(r) => (r.lo.max(1), r.hi.min(m - 1)),
                            None => (1, m - 1),
                        };
                        (lo..=hi).map(move |n| Cell::mn(m, n))
                    })
                    .collect()
            }
            Conjecture::BPowers | Conjecture::APowers => {
                if self.m.is_some() {
                    return Err(Error::usage(format!("{conj} takes no m range")));
                }
                let n = n_range(conj.name())?;
                (n.lo.max(1)..=n.hi).map(Cell::n).collect()
            }
            Conjecture::MixedCube => {
                let m = self.m.ok_or_else(|| Error::usage("mixed-cube needs an m range"))?;
                let n = n_range("mixed-cube")?;
                (m.lo.max(1)..=m.hi)
                    .flat_map(|m| (n.lo.max(1)..=n.hi).map(move |n| Cell::mn(m, n)))
                    .collect()
            }
        };
        if cells.is_empty() {
            return Err(Error::usage(format!("{conj}: the requested domain has no cells")));
        }
        Ok(cells)
    }
}

/// A claimed divisibility `divisor | dividend` at one cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityClaim {
    pub cell: Cell,
    pub p: u32,
    pub dividend: BigInt,
    pub divisor: BigInt,
}

impl DivisibilityClaim {
    /// `None` when the divisor is zero and the claim is vacuous.
    pub fn remainder(&self) -> Option<BigInt> {
        (!self.divisor.is_zero()).then(|| self.dividend.mod_floor(&self.divisor))
    }

    pub fn holds(&self) -> Option<bool> {
        self.remainder().map(|r| r.is_zero())
    }

    pub fn quotient(&self) -> Option<BigInt> {
        match self.holds() {
            Some(true) => Some(&self.dividend / &self.divisor),
            _ => None,
        }
    }
}

fn power_sum(tri: Triangle, row: i64, cols: std::ops::RangeInclusive<i64>, p: u32) -> Result<BigInt> {
    let first = *tri.columns(row).start();
    let entries = tri.row(row)?;
    Ok(cols.map(|k| entries[(k - first) as usize].pow(p)).sum())
}

/// The divisibility claim of `conj` at `cell` for exponent `p`, with the
/// divisor shifted by `divisor_offset` (zero for the genuine claim).
pub fn divisibility_claim(conj: Conjecture, p: u32, cell: Cell, divisor_offset: i64) -> Result<DivisibilityClaim> {
    let n = cell.n;
    let (dividend, divisor) = match conj {
        Conjecture::CPowers => {
            let m = cell.m_or("c-powers")?;
            if !(m > n && n >= 1) {
                return Err(Error::domain(format!("c-powers needs m > n >= 1, got {cell}")));
            }
            (power_sum(Triangle::C, m, 0..=n, p)?, binomial(m - 1, n)?)
        }
        Conjecture::BPowers => {
            if n < 1 {
                return Err(Error::domain(format!("b-powers needs n >= 1, got {cell}")));
            }
            let d = exact_div(&((n + 1) * catalan(n)?), &BigInt::from(2))?;
            (power_sum(Triangle::B, n, 1..=n, p)?, d)
        }
        Conjecture::APowers => {
            if n < 1 {
                return Err(Error::domain(format!("a-powers needs n >= 1, got {cell}")));
            }
            (power_sum(Triangle::A, n, 1..=n + 1, p)?, (n + 1) * catalan(n)?)
        }
        Conjecture::MixedCube => {
            return Err(Error::usage("mixed-cube is an identity, not a divisibility claim"));
        }
    };
    Ok(DivisibilityClaim { cell, p, dividend, divisor: divisor + divisor_offset })
}

/// Both sides of the mixed-cube identity at `(n, m)` and whether they agree.
pub fn check_mixed_cube(n: i64, m: i64) -> Result<(Rational, Rational, bool)> {
    if n < 1 || m < 1 {
        return Err(Error::domain(format!("mixed cube needs n, m >= 1, got n={n}, m={m}")));
    }
    let (r, s) = (n.min(m), n.max(m));
    let bn = Triangle::B.row(n)?;
    let bm = Triangle::B.row(m)?;
    let lhs: BigInt = (1..=r).map(|k| bn[k as usize].pow(2) * &bm[k as usize]).sum();

    let inner: BigInt = (0..r)
        .map(|j| Ok(binomial(s + j, s)? * binomial(n + j, n - 1)?))
        .sum::<Result<BigInt>>()?;
    let correction = frac(n + 2 * m, r) * Rational::new(inner, binomial(n + m, n)? * binomial(n + r, n)?);
    let scale = frac(1, 2) * ratio(binomial(2 * n, n)?.pow(2) * binomial(2 * m, m)?);
    let rhs = scale * (ratio(1) - correction);
    let lhs = ratio(lhs);
    let equal = lhs == rhs;
    Ok((lhs, rhs, equal))
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("invalid integer `{s}`")))
    }
}

mod fraction {
    use crate::exact::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("invalid rational `{s}`")))
    }
}

/// A cell where a conjecture fails, with the values that show it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    Divisibility {
        cell: Cell,
        #[serde(with = "decimal")]
        dividend: BigInt,
        #[serde(with = "decimal")]
        divisor: BigInt,
        #[serde(with = "decimal")]
        remainder: BigInt,
    },
    Identity {
        cell: Cell,
        #[serde(with = "fraction")]
        lhs: Rational,
        #[serde(with = "fraction")]
        rhs: Rational,
    },
}

impl Counterexample {
    pub fn cell(&self) -> Cell {
        match self {
            Counterexample::Divisibility { cell, .. } | Counterexample::Identity { cell, .. } => *cell,
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Divisibility { cell, dividend, divisor, remainder } => {
                write!(f, "{cell}: {dividend} mod {divisor} = {remainder}")
            }
            Counterexample::Identity { cell, lhs, rhs } => write!(f, "{cell}: lhs {lhs} != rhs {rhs}"),
        }
    }
}

/// Resumable progress of a scan. Also the on-disk checkpoint format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanState {
    pub version: u32,
    pub conjecture: Conjecture,
    /// Exponent for the divisibility conjectures.
    pub p: Option<u32>,
    pub domain: ScanDomain,
    /// Added to every divisor. Non-zero only for negative controls.
    #[serde(default)]
    pub divisor_offset: i64,
    /// Next unprocessed cell; `None` once the domain is exhausted.
    pub frontier: Option<Cell>,
    pub processed: u64,
    /// Cells whose divisor is zero; the claim is vacuous there.
    #[serde(default)]
    pub zero_divisor_cells: Vec<Cell>,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u64,
}

impl ScanState {
    /// A fresh scan positioned at the first cell.
    pub fn new(conjecture: Conjecture, p: Option<u32>, domain: ScanDomain) -> Result<Self> {
        match (conjecture.is_divisibility(), p) {
            (true, None) => return Err(Error::usage(format!("{conjecture} needs an exponent p"))),
            (true, Some(p)) if p % 2 == 0 => {
                return Err(Error::usage(format!("exponent p must be odd, got {p}")))
            }
            (false, Some(_)) => return Err(Error::usage("mixed-cube takes no exponent")),
            _ => {}
        }
        if !conjecture.uses_m() && domain.m.is_some() {
            return Err(Error::usage(format!("{conjecture} takes no m range")));
        }
        let cells = domain.cells(conjecture)?;
        Ok(ScanState {
            version: CHECKPOINT_VERSION,
            conjecture,
            p,
            domain,
            divisor_offset: 0,
            frontier: cells.first().copied(),
            processed: 0,
            zero_divisor_cells: Vec::new(),
            counterexamples: Vec::new(),
            elapsed_ms: 0,
        })
    }

    /// Shifts every divisor by `offset`; a negative control.
    pub fn with_divisor_offset(mut self, offset: i64) -> Self {
        self.divisor_offset = offset;
        self
    }

    pub fn is_complete(&self) -> bool {
        self.frontier.is_none()
    }

    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }

    fn remaining(&self) -> Result<Vec<Cell>> {
        let Some(frontier) = self.frontier else {
            return Ok(Vec::new());
        };
        let cells = self.domain.cells(self.conjecture)?;
        let start = cells.partition_point(|c| *c < frontier);
        if cells.get(start) != Some(&frontier) {
            return Err(Error::integrity(format!("frontier {frontier} is not a cell of the scan domain")));
        }
        if start as u64 != self.processed {
            return Err(Error::integrity(format!(
                "checkpoint claims {} cells processed but frontier {frontier} is cell #{start}",
                self.processed
            )));
        }
        Ok(cells[start..].to_vec())
    }

    fn evaluate(&self, cell: Cell) -> Result<Outcome> {
        if self.conjecture == Conjecture::MixedCube {
            let m = cell.m_or("mixed-cube")?;
            let (lhs, rhs, ok) = check_mixed_cube(cell.n, m)?;
            return Ok(if ok { Outcome::Holds } else { Outcome::Fails(Counterexample::Identity { cell, lhs, rhs }) });
        }
        let p = self.p.ok_or_else(|| Error::integrity("divisibility scan without exponent"))?;
        let claim = divisibility_claim(self.conjecture, p, cell, self.divisor_offset)?;
        Ok(match claim.remainder() {
            None => Outcome::ZeroDivisor,
            Some(r) if r.is_zero() => Outcome::Holds,
            Some(remainder) => Outcome::Fails(Counterexample::Divisibility {
                cell,
                dividend: claim.dividend,
                divisor: claim.divisor,
                remainder,
            }),
        })
    }

    /// Re-evaluates every recorded counterexample and checks it still fails
    /// with the same values.
    pub fn reverify(&self) -> Result<bool> {
        for ce in &self.counterexamples {
            match self.evaluate(ce.cell())? {
                Outcome::Fails(again) if &again == ce => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    pub fn summary(&self) -> String {
        let p = self.p.map(|p| format!(" p={p}")).unwrap_or_default();
        let status = if self.is_complete() {
            "complete".to_string()
        } else {
            format!("paused at {}", self.frontier.expect("incomplete"))
        };
        let zero = if self.zero_divisor_cells.is_empty() {
            String::new()
        } else {
            format!(", {} zero-divisor cells", self.zero_divisor_cells.len())
        };
        format!(
            "{}{p}: {} cells, {} counterexamples{zero} ({status})",
            self.conjecture,
            self.processed,
            self.counterexamples.len()
        )
    }
}

enum Outcome {
    Holds,
    ZeroDivisor,
    Fails(Counterexample),
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub jobs: usize,
    /// Cells per batch; the frontier advances and checkpoints are written
    /// between batches.
    pub batch: usize,
    /// Stop after this many cells in this run.
    pub max_cells: Option<u64>,
    pub checkpoint: Option<PathBuf>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { jobs: 1, batch: 64, max_cells: None, checkpoint: None }
    }
}

/// Continues `state` from its frontier until the domain is exhausted or the
/// cell budget runs out.
pub fn run_scan(mut state: ScanState, opts: &ScanOptions) -> Result<ScanState> {
    if state.version != CHECKPOINT_VERSION {
        return Err(Error::integrity(format!(
            "scan state version {}, expected {CHECKPOINT_VERSION}",
            state.version
        )));
    }
    let started = Instant::now();
    let base_elapsed = state.elapsed_ms;
    let mut todo = state.remaining()?;
    if let Some(max) = opts.max_cells {
        todo.truncate(max.min(usize::MAX as u64) as usize);
    }
    let cells_all = state.domain.cells(state.conjecture)?;

    let pool = if opts.jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs)
                .build()
                .map_err(|e| Error::usage(format!("cannot start {} workers: {e}", opts.jobs)))?,
        )
    } else {
        None
    };

    for chunk in todo.chunks(opts.batch.max(1)) {
        let results: Vec<Result<Outcome>> = match &pool {
            Some(pool) => pool.install(|| chunk.par_iter().map(|&c| state.evaluate(c)).collect()),
            None => chunk.iter().map(|&c| state.evaluate(c)).collect(),
        };
        for (cell, outcome) in chunk.iter().zip(results) {
            match outcome? {
                Outcome::Holds => {}
                Outcome::ZeroDivisor => state.zero_divisor_cells.push(*cell),
                Outcome::Fails(ce) => state.counterexamples.push(ce),
            }
        }
        state.processed += chunk.len() as u64;
        state.frontier = cells_all.get(state.processed as usize).copied();
        state.elapsed_ms = base_elapsed + started.elapsed().as_millis() as u64;
        if let Some(path) = &opts.checkpoint {
            save_checkpoint(&state, path)?;
        }
    }
    state.elapsed_ms = base_elapsed + started.elapsed().as_millis() as u64;
    Ok(state)
}

/// Scans a divisibility conjecture, resuming from `checkpoint` when given.
pub fn scan_divisibility(
    conjecture: Conjecture,
    p: u32,
    domain: ScanDomain,
    checkpoint: Option<ScanState>,
    opts: &ScanOptions,
) -> Result<ScanState> {
    if !conjecture.is_divisibility() {
        return Err(Error::usage(format!("{conjecture} is not a divisibility conjecture")));
    }
    let fresh = ScanState::new(conjecture, Some(p), domain)?;
    let state = match checkpoint {
        Some(saved) => {
            if saved.conjecture != conjecture || saved.p != Some(p) || saved.domain != domain {
                return Err(Error::integrity(format!(
                    "checkpoint is for {} p={:?} over {:?}, not {conjecture} p={p} over {domain:?}",
                    saved.conjecture, saved.p, saved.domain
                )));
            }
            saved
        }
        None => fresh,
    };
    run_scan(state, opts)
}

/// Writes `state` to `path` via a temporary file and rename.
pub fn save_checkpoint(state: &ScanState, path: &Path) -> Result<()> {
    let json = serde_json::to_vec_pretty(state)?;
    let mut tmp_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_else(|| "checkpoint".into());
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&json)?;
        f.write_all(b"\n")?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads a checkpoint, rejecting unknown versions and malformed content as
/// integrity errors.
pub fn load_checkpoint(path: &Path) -> Result<ScanState> {
    let bytes = fs::read(path)?;
    let value: serde_json::Value = serde_json::from_slice(&bytes)
        .map_err(|e| Error::integrity(format!("{}: not a JSON checkpoint: {e}", path.display())))?;
    match value.get("version").and_then(|v| v.as_u64()) {
        Some(v) if v == CHECKPOINT_VERSION as u64 => {}
        Some(v) => {
            return Err(Error::integrity(format!(
                "{}: checkpoint version {v}, expected {CHECKPOINT_VERSION}",
                path.display()
            )))
        }
        None => return Err(Error::integrity(format!("{}: checkpoint has no version tag", path.display()))),
    }
    let state: ScanState = serde_json::from_value(value)
        .map_err(|e| Error::integrity(format!("{}: corrupt checkpoint: {e}", path.display())))?;
    state.remaining()?;
    Ok(state)
}

/// `sum_{k=0}^{n} C(m,k)^3 / binom(m-1,n)` rearranged from the cube-sum
/// closed form: `4 binom(m-1,n)^2 - 3 sum_j binom(j,n) binom(j,m-n-1)`.
pub fn c_cube_quotient(m: i64, n: i64) -> Result<BigInt> {
    let b = binomial(m - 1, n)?;
    let kernel: BigInt = (0..m)
        .map(|j| Ok(binomial(j, n)? * binomial(j, m - n - 1)?))
        .sum::<Result<BigInt>>()?;
    Ok(4 * b.pow(2) - 3 * kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{seq_a, seq_b};

    fn dom(m: Option<(i64, i64)>, n: Option<(i64, i64)>) -> ScanDomain {
        ScanDomain {
            m: m.map(|(a, b)| IntRange::new(a, b)),
            n: n.map(|(a, b)| IntRange::new(a, b)),
        }
    }

    #[test]
    fn c_scan_p1_clean() {
        let s = scan_divisibility(Conjecture::CPowers, 1, dom(Some((2, 40)), None), None, &Default::default())
            .unwrap();
        assert!(s.is_complete());
        assert!(s.counterexamples.is_empty());
        assert_eq!(s.processed, (2..=40).map(|m| m as u64 - 1).sum::<u64>());
    }

    #[test]
    fn quotients_match_closed_forms() {
        for m in 2..=40 {
            for n in 1..m {
                let c1 = divisibility_claim(Conjecture::CPowers, 1, Cell::mn(m, n), 0).unwrap();
                assert_eq!(c1.quotient(), Some(BigInt::from(1)));
                let c3 = divisibility_claim(Conjecture::CPowers, 3, Cell::mn(m, n), 0).unwrap();
                assert_eq!(c3.quotient().unwrap(), c_cube_quotient(m, n).unwrap());
            }
        }
        for n in 1..=30 {
            let b3 = divisibility_claim(Conjecture::BPowers, 3, Cell::n(n), 0).unwrap();
            assert_eq!(b3.quotient().unwrap(), seq_b(n).unwrap());
            let a3 = divisibility_claim(Conjecture::APowers, 3, Cell::n(n), 0).unwrap();
            let f = (n + 1) * catalan(n).unwrap();
            assert_eq!(a3.quotient().unwrap(), (BigInt::from(2) * f).pow(2) - 3 * seq_a(n).unwrap());
        }
    }

    #[test]
    fn even_or_missing_exponent_rejected() {
        assert!(matches!(ScanState::new(Conjecture::BPowers, Some(4), dom(None, Some((1, 5)))), Err(Error::Usage(_))));
        assert!(matches!(ScanState::new(Conjecture::BPowers, None, dom(None, Some((1, 5)))), Err(Error::Usage(_))));
        assert!(matches!(ScanState::new(Conjecture::MixedCube, Some(3), dom(Some((1, 2)), Some((1, 5)))), Err(Error::Usage(_))));
        assert!(matches!(ScanState::new(Conjecture::BPowers, Some(3), dom(Some((1, 2)), Some((1, 5)))), Err(Error::Usage(_))));
        assert!(matches!(ScanState::new(Conjecture::BPowers, Some(3), dom(None, Some((5, 1)))), Err(Error::Usage(_))));
    }

    #[test]
    fn perturbed_divisor_is_caught() {
        let s = ScanState::new(Conjecture::BPowers, Some(5), dom(None, Some((1, 20)))).unwrap().with_divisor_offset(1);
        let s = run_scan(s, &Default::default()).unwrap();
        // n = 1 has divisor 1 + 1 = 2 and dividend 1.
        assert!(!s.counterexamples.is_empty());
        assert!(s.reverify().unwrap());
    }

    #[test]
    fn zero_divisor_cells_are_reported() {
        // binom(m-1, n) - binom(m-1, n) = 0 everywhere.
        let mut s = ScanState::new(Conjecture::BPowers, Some(1), dom(None, Some((1, 1)))).unwrap();
        s.divisor_offset = -1;
        let s = run_scan(s, &Default::default()).unwrap();
        assert_eq!(s.zero_divisor_cells, vec![Cell::n(1)]);
        assert!(s.counterexamples.is_empty());
    }

    #[test]
    fn mixed_cube_small_cases() {
        let (l, r, ok) = check_mixed_cube(2, 1).unwrap();
        assert_eq!(l, ratio(4));
        assert_eq!(r, ratio(4));
        assert!(ok);
        let (l, r, ok) = check_mixed_cube(1, 3).unwrap();
        assert!(ok, "{l} vs {r}");
        assert!(check_mixed_cube(0, 2).is_err());
    }

    #[test]
    fn interrupted_scan_resumes_identically() {
        let d = dom(Some((2, 30)), None);
        let whole = scan_divisibility(Conjecture::CPowers, 3, d, None, &Default::default()).unwrap();
        let opts = ScanOptions { max_cells: Some(100), batch: 7, ..Default::default() };
        let half = scan_divisibility(Conjecture::CPowers, 3, d, None, &opts).unwrap();
        assert!(!half.is_complete());
        assert_eq!(half.processed, 100);
        let resumed = scan_divisibility(Conjecture::CPowers, 3, d, Some(half), &Default::default()).unwrap();
        assert_eq!(resumed.without_timing(), whole.without_timing());
    }

    #[test]
    fn checkpoint_for_other_scan_rejected() {
        let s = ScanState::new(Conjecture::CPowers, Some(3), dom(Some((2, 5)), None)).unwrap();
        let err = scan_divisibility(Conjecture::CPowers, 5, dom(Some((2, 5)), None), Some(s), &Default::default());
        assert!(matches!(err, Err(Error::Integrity(_))));
    }

    #[test]
    fn conjecture_names_parse() {
        assert_eq!("b-cubes".parse::<Conjecture>().unwrap(), Conjecture::BPowers);
        assert_eq!("mixed".parse::<Conjecture>().unwrap(), Conjecture::MixedCube);
        assert!("d".parse::<Conjecture>().is_err());
    }
}
