//! Catalan numbers, the unified triangle `C(m,k)`, the triangles `B(n,k)` and
//! `A(n,k)`, generalized Catalan numbers and the sequences `a(n)`, `b(n)`.
//!
//! Triangle entries are computed from their closed forms with exact division
//! and memoized whole rows at a time (see [`RowMemo`]).

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{approx_bytes, binomial, binomial_row, exact_div};

/// The three triangles.
///
/// * `C`: `C(m,k) = (m - 2k)/m * binom(m, k)`, rows `m >= 1`, columns `0..=m`.
/// * `B`: `B(n,k) = k/n * binom(2n, n - k)`, rows `n >= 1`, columns `0..=n`
///   (column 0 is identically zero).
/// * `A`: `A(n,k) = (2k - 1)/(2n + 1) * binom(2n + 1, n + 1 - k)`, rows
///   `n >= 1`, columns `1..=n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Triangle {
    C,
    B,
    A,
}

impl Triangle {
    pub fn name(self) -> &'static str {
        match self {
            Triangle::C => "C",
            Triangle::B => "B",
            Triangle::A => "A",
        }
    }

    /// Valid column range for `row`.
    pub fn columns(self, row: i64) -> RangeInclusive<i64> {
        match self {
            Triangle::C | Triangle::B => 0..=row,
            Triangle::A => 1..=row + 1,
        }
    }

    fn first_column(self) -> i64 {
        match self {
            Triangle::A => 1,
            _ => 0,
        }
    }

    pub fn check(self, idx: TriangleIndex) -> Result<()> {
        if idx.row < 1 {
            return Err(Error::domain(format!(
                "{}({}, {}): row index must be >= 1",
                self.name(),
                idx.row,
                idx.col
            )));
        }
        if !self.columns(idx.row).contains(&idx.col) {
            let cols = self.columns(idx.row);
            return Err(Error::domain(format!(
                "{}({}, {}): column must lie in {}..={}",
                self.name(),
                idx.row,
                idx.col,
                cols.start(),
                cols.end()
            )));
        }
        Ok(())
    }

    /// The entry at `(row, col)`, served from the row memo.
    pub fn value(self, row: i64, col: i64) -> Result<BigInt> {
        self.check(TriangleIndex { row, col })?;
        let r = row_memo().row(self, row)?;
        Ok(r[(col - self.first_column()) as usize].clone())
    }

    /// The whole row as a shared slice, starting at the first valid column.
    pub fn row(self, row: i64) -> Result<Arc<[BigInt]>> {
        if row < 1 {
            return Err(Error::domain(format!("{} row index must be >= 1, got {row}", self.name())));
        }
        row_memo().row(self, row)
    }

    fn build_row(self, row: i64) -> Result<Arc<[BigInt]>> {
        let cols = self.columns(row);
        let mut out = Vec::with_capacity((cols.end() - cols.start() + 1) as usize);
        match self {
            Triangle::C => {
                let binoms = binomial_row(row)?;
                let m = BigInt::from(row);
                for k in cols {
                    let v = exact_div(&((row - 2 * k) * &binoms[k as usize]), &m)?;
                    debug_assert_eq!(v, c_witness(row, k));
                    out.push(v);
                }
            }
            Triangle::B => {
                let binoms = binomial_row(2 * row)?;
                let n = BigInt::from(row);
                for k in cols {
                    let v = exact_div(&(k * &binoms[(row - k) as usize]), &n)?;
                    debug_assert_eq!(v, c_witness(2 * row, row - k));
                    out.push(v);
                }
            }
            Triangle::A => {
                let binoms = binomial_row(2 * row + 1)?;
                let d = BigInt::from(2 * row + 1);
                for k in cols {
                    let v = exact_div(&((2 * k - 1) * &binoms[(row + 1 - k) as usize]), &d)?;
                    debug_assert_eq!(v, c_witness(2 * row + 1, row + 1 - k));
                    out.push(v);
                }
            }
        }
        Ok(out.into())
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Position in a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriangleIndex {
    pub row: i64,
    pub col: i64,
}

/// Integrality witness `C(m,k) = binom(m,k) - 2 binom(m-1,k-1)`.
pub fn c_witness(m: i64, k: i64) -> BigInt {
    binomial(m, k).expect("m >= 1") - 2 * binomial(m - 1, k - 1).expect("m >= 1")
}

struct MemoEntry {
    row: Arc<[BigInt]>,
    bytes: usize,
    last_used: AtomicU64,
}

/// Process-wide cache of triangle rows.
///
/// Rows are built outside the lock and inserted whole. When the estimated
/// footprint exceeds the byte budget the least recently used rows are
/// evicted. A budget of zero disables caching.
pub struct RowMemo {
    rows: RwLock<HashMap<(Triangle, i64), MemoEntry>>,
    budget: AtomicUsize,
    used: AtomicUsize,
    clock: AtomicU64,
}

pub const DEFAULT_ROW_MEMO_BUDGET: usize = 256 << 20;

impl RowMemo {
    pub fn new(budget: usize) -> Self {
        RowMemo {
            rows: RwLock::new(HashMap::new()),
            budget: AtomicUsize::new(budget),
            used: AtomicUsize::new(0),
            clock: AtomicU64::new(0),
        }
    }

    pub fn set_budget(&self, budget: usize) {
        self.budget.store(budget, Ordering::Relaxed);
        let mut rows = self.rows.write().unwrap_or_else(|e| e.into_inner());
        self.evict(&mut rows, 0);
    }

    pub fn budget(&self) -> usize {
        self.budget.load(Ordering::Relaxed)
    }

    /// Estimated bytes currently held.
    pub fn used(&self) -> usize {
        self.used.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.rows.read().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        let mut rows = self.rows.write().unwrap_or_else(|e| e.into_inner());
        rows.clear();
        self.used.store(0, Ordering::Relaxed);
    }

    pub fn row(&self, tri: Triangle, row: i64) -> Result<Arc<[BigInt]>> {
        let tick = self.clock.fetch_add(1, Ordering::Relaxed);
        if let Some(e) = self.rows.read().unwrap_or_else(|e| e.into_inner()).get(&(tri, row)) {
            e.last_used.store(tick, Ordering::Relaxed);
            return Ok(Arc::clone(&e.row));
        }
        let built = tri.build_row(row)?;
        let bytes: usize = built.iter().map(approx_bytes).sum();
        if bytes > self.budget() {
            return Ok(built);
        }
        let mut rows = self.rows.write().unwrap_or_else(|e| e.into_inner());
        if let Some(e) = rows.get(&(tri, row)) {
            return Ok(Arc::clone(&e.row));
        }
        self.evict(&mut rows, bytes);
        self.used.fetch_add(bytes, Ordering::Relaxed);
        rows.insert(
            (tri, row),
            MemoEntry {
                row: Arc::clone(&built),
                bytes,
                last_used: AtomicU64::new(tick),
            },
        );
        Ok(built)
    }

    /// Drops least recently used rows until `incoming` more bytes fit.
    fn evict(&self, rows: &mut HashMap<(Triangle, i64), MemoEntry>, incoming: usize) {
        let budget = self.budget();
        while self.used() + incoming > budget && !rows.is_empty() {
            let oldest = rows
                .iter()
                .min_by_key(|(_, e)| e.last_used.load(Ordering::Relaxed))
                .map(|(k, _)| *k)
                .expect("non-empty");
            let e = rows.remove(&oldest).expect("present");
            self.used.fetch_sub(e.bytes, Ordering::Relaxed);
        }
    }
}

/// The shared row memo used by all generators.
pub fn row_memo() -> &'static RowMemo {
    static MEMO: OnceLock<RowMemo> = OnceLock::new();
    MEMO.get_or_init(|| RowMemo::new(DEFAULT_ROW_MEMO_BUDGET))
}

/// The Catalan number `binom(2n, n) / (n + 1)`.
pub fn catalan(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::domain(format!("catalan({n}): n must be >= 0")));
    }
    exact_div(&binomial(2 * n, n)?, &BigInt::from(n + 1))
}

/// `C(m,k) = (m - 2k)/m * binom(m,k)` for `m >= 1`, `0 <= k <= m`.
pub fn c_number(m: i64, k: i64) -> Result<BigInt> {
    Triangle::C.value(m, k)
}

/// `B(n,k) = k/n * binom(2n, n-k)` for `n >= 1`, `0 <= k <= n`.
pub fn b_number(n: i64, k: i64) -> Result<BigInt> {
    Triangle::B.value(n, k)
}

/// `A(n,k) = (2k-1)/(2n+1) * binom(2n+1, n+1-k)` for `n >= 1`, `1 <= k <= n+1`.
pub fn a_number(n: i64, k: i64) -> Result<BigInt> {
    Triangle::A.value(n, k)
}

/// The generalized Catalan number `binom(nk, n-1) / n`.
pub fn gen_catalan(k: i64, n: i64) -> Result<BigInt> {
    if k < 1 || n < 1 {
        return Err(Error::domain(format!("gen_catalan({k}, {n}): need k >= 1 and n >= 1")));
    }
    exact_div(&binomial(n * k, n - 1)?, &BigInt::from(n))
}

/// `a(n) = sum_{k=0}^{n} binom(n+k, n)^2`.
pub fn seq_a(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::domain(format!("a({n}): n must be >= 0")));
    }
    (0..=n).try_fold(BigInt::zero(), |acc, k| Ok(acc + binomial(n + k, n)?.pow(2)))
}

/// `b(n) = sum_{k=0}^{n} k/n * binom(2n-k-1, n-1)^2`.
pub fn seq_b(n: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::domain(format!("b({n}): n must be >= 1")));
    }
    let numer = (0..=n).try_fold(BigInt::zero(), |acc, k| {
        Ok::<_, Error>(acc + k * binomial(2 * n - k - 1, n - 1)?.pow(2))
    })?;
    exact_div(&numer, &BigInt::from(n))
}

/// The second form of `b(n)`: `sum_{k=0}^{n} (n-k)/n * binom(n-1+k, n-1)^2`.
pub fn seq_b_alt(n: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::domain(format!("b({n}): n must be >= 1")));
    }
    let numer = (0..=n).try_fold(BigInt::zero(), |acc, k| {
        Ok::<_, Error>(acc + (n - k) * binomial(n - 1 + k, n - 1)?.pow(2))
    })?;
    exact_div(&numer, &BigInt::from(n))
}

/// Which sequence or triangle row to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    Catalan,
    /// Generalized Catalan numbers for a fixed `k`, indexed by `n`.
    GenCatalan(i64),
    SeqA,
    SeqB,
    CRow(i64),
    BRow(i64),
    ARow(i64),
}

impl SequenceKind {
    /// Indices at which the sequence is defined. `None` as upper bound means
    /// unbounded.
    pub fn domain(self) -> (i64, Option<i64>) {
        match self {
            SequenceKind::Catalan | SequenceKind::SeqA => (0, None),
            SequenceKind::GenCatalan(_) | SequenceKind::SeqB => (1, None),
            SequenceKind::CRow(m) => (0, Some(m)),
            SequenceKind::BRow(n) => (0, Some(n)),
            SequenceKind::ARow(n) => (1, Some(n + 1)),
        }
    }

    pub fn term(self, i: i64) -> Result<BigInt> {
        match self {
            SequenceKind::Catalan => catalan(i),
            SequenceKind::GenCatalan(k) => gen_catalan(k, i),
            SequenceKind::SeqA => seq_a(i),
            SequenceKind::SeqB => seq_b(i),
            SequenceKind::CRow(m) => c_number(m, i),
            SequenceKind::BRow(n) => b_number(n, i),
            SequenceKind::ARow(n) => a_number(n, i),
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::Catalan => write!(f, "catalan"),
            SequenceKind::GenCatalan(k) => write!(f, "gen-catalan({k})"),
            SequenceKind::SeqA => write!(f, "a"),
            SequenceKind::SeqB => write!(f, "b"),
            SequenceKind::CRow(m) => write!(f, "c-row({m})"),
            SequenceKind::BRow(n) => write!(f, "b-row({n})"),
            SequenceKind::ARow(n) => write!(f, "a-row({n})"),
        }
    }
}

/// A contiguous slice `start .. start + count` of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceSpec {
    pub kind: SequenceKind,
    pub start: i64,
    pub count: usize,
}

impl SequenceSpec {
    pub fn new(kind: SequenceKind, start: i64, count: usize) -> Self {
        SequenceSpec { kind, start, count }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::domain("count must be >= 1"));
        }
        match self.kind {
            SequenceKind::GenCatalan(k) if k < 1 => {
                return Err(Error::domain(format!("gen-catalan parameter must be >= 1, got {k}")))
            }
            SequenceKind::CRow(r) | SequenceKind::BRow(r) | SequenceKind::ARow(r) if r < 1 => {
                return Err(Error::domain(format!("row index must be >= 1, got {r}")))
            }
            _ => {}
        }
        let (lo, hi) = self.kind.domain();
        let last = self.start + self.count as i64 - 1;
        if self.start < lo || hi.is_some_and(|hi| last > hi) {
            let upper = hi.map_or_else(|| "inf".to_string(), |h| h.to_string());
            return Err(Error::domain(format!(
                "{}: indices {}..={} fall outside {}..={}",
                self.kind, self.start, last, lo, upper
            )));
        }
        Ok(())
    }

    pub fn indices(&self) -> RangeInclusive<i64> {
        self.start..=self.start + self.count as i64 - 1
    }
}

/// The requested slice of a sequence or triangle row.
pub fn generate(spec: &SequenceSpec) -> Result<Vec<BigInt>> {
    spec.validate()?;
    spec.indices().map(|i| spec.kind.term(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Catalan numbers from `C_0 = 1`, `C_n = sum C_i C_{n-1-i}`.
    fn catalan_by_recurrence(n: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::from(1)];
        for i in 1..=n {
            let next = (0..i).map(|j| &c[j] * &c[i - 1 - j]).sum();
            c.push(next);
        }
        c
    }

    #[test]
    fn catalan_first_terms() {
        let got: Vec<_> = (0..=6).map(|n| catalan(n).unwrap()).collect();
        assert_eq!(got, ints(&[1, 1, 2, 5, 14, 42, 132]));
        assert_eq!(catalan(3).unwrap(), BigInt::from(5));
        assert_eq!(catalan(10).unwrap(), BigInt::from(16796));
        assert!(matches!(catalan(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn catalan_matches_recurrence() {
        let oracle = catalan_by_recurrence(60);
        for (n, expected) in oracle.iter().enumerate() {
            assert_eq!(&catalan(n as i64).unwrap(), expected);
        }
    }

    #[test]
    fn c_number_table_entries() {
        assert_eq!(c_number(6, 2).unwrap(), BigInt::from(5));
        assert_eq!(c_number(1, 1).unwrap(), BigInt::from(-1));
        assert_eq!(c_number(10, 5).unwrap(), BigInt::from(0));
        assert!(matches!(c_number(3, 4), Err(Error::Domain(_))));
        assert!(matches!(c_number(3, -1), Err(Error::Domain(_))));
        assert!(matches!(c_number(0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn b_and_a_entries() {
        assert_eq!(b_number(6, 3).unwrap(), BigInt::from(110));
        assert_eq!(b_number(5, 1).unwrap(), BigInt::from(42));
        assert_eq!(b_number(7, 0).unwrap(), BigInt::from(0));
        assert_eq!(a_number(6, 3).unwrap(), BigInt::from(275));
        assert_eq!(a_number(4, 1).unwrap(), BigInt::from(14));
        for n in 1..40 {
            assert_eq!(b_number(n, n).unwrap(), BigInt::from(1));
            assert_eq!(a_number(n, n + 1).unwrap(), BigInt::from(1));
        }
        assert!(matches!(b_number(3, 4), Err(Error::Domain(_))));
        assert!(matches!(b_number(3, -1), Err(Error::Domain(_))));
        assert!(matches!(a_number(3, 0), Err(Error::Domain(_))));
        assert!(matches!(a_number(3, 5), Err(Error::Domain(_))));
        assert!(matches!(a_number(0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn gen_catalan_values() {
        for n in 1..=30 {
            assert_eq!(gen_catalan(2, n).unwrap(), catalan(n).unwrap());
        }
        assert_eq!(gen_catalan(3, 2).unwrap(), BigInt::from(3));
        assert_eq!(c_number(7, 2).unwrap(), (3 * gen_catalan(3, 2).unwrap()));
        assert_eq!(c_number(7, 2).unwrap(), BigInt::from(9));
        assert!(matches!(gen_catalan(0, 2), Err(Error::Domain(_))));
        assert!(matches!(gen_catalan(2, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn seq_a_values() {
        let got: Vec<_> = (0..=4).map(|n| seq_a(n).unwrap()).collect();
        assert_eq!(got, ints(&[1, 5, 46, 517, 6376]));
        // 1^2 + 3^2 + 6^2
        assert_eq!(seq_a(2).unwrap(), BigInt::from(1 + 9 + 36));
        assert!(matches!(seq_a(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn seq_b_values() {
        // The fifth term is 1626 from the defining sum:
        // (980 + 490 + 135 + 20 + 1) = 1/5 (4900 + 2*1225 + 3*225 + 4*25 + 5).
        let got: Vec<_> = (1..=5).map(|n| seq_b(n).unwrap()).collect();
        assert_eq!(got, ints(&[1, 3, 19, 163, 1626]));
        // (2-0)/2 * 1^2 + (2-1)/2 * 2^2
        assert_eq!(seq_b_alt(2).unwrap(), BigInt::from(3));
        assert!(matches!(seq_b(0), Err(Error::Domain(_))));
        assert!(matches!(seq_b_alt(0), Err(Error::Domain(_))));
    }

    #[test]
    fn both_forms_of_b_agree() {
        for n in 1..=200 {
            assert_eq!(seq_b(n).unwrap(), seq_b_alt(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn generate_rows() {
        let c6 = generate(&SequenceSpec::new(SequenceKind::CRow(6), 0, 7)).unwrap();
        assert_eq!(c6, ints(&[1, 4, 5, 0, -5, -4, -1]));
        let b4 = generate(&SequenceSpec::new(SequenceKind::BRow(4), 1, 4)).unwrap();
        assert_eq!(b4, ints(&[14, 14, 6, 1]));
        let a5 = generate(&SequenceSpec::new(SequenceKind::ARow(5), 1, 6)).unwrap();
        assert_eq!(a5, ints(&[42, 90, 75, 35, 9, 1]));
    }

    #[test]
    fn generate_rejects_bad_specs() {
        let bad = [
            SequenceSpec::new(SequenceKind::Catalan, 0, 0),
            SequenceSpec::new(SequenceKind::Catalan, -1, 3),
            SequenceSpec::new(SequenceKind::SeqB, 0, 3),
            SequenceSpec::new(SequenceKind::CRow(6), 0, 8),
            SequenceSpec::new(SequenceKind::ARow(5), 0, 2),
            SequenceSpec::new(SequenceKind::BRow(0), 0, 1),
            SequenceSpec::new(SequenceKind::GenCatalan(0), 1, 1),
        ];
        for spec in bad {
            assert!(matches!(generate(&spec), Err(Error::Domain(_))), "{spec:?}");
        }
    }

    #[test]
    fn integrality_witness_and_antisymmetry() {
        for m in 1..=200 {
            let row = Triangle::C.row(m).unwrap();
            for k in 0..=m {
                assert_eq!(row[k as usize], c_witness(m, k));
                assert_eq!(row[k as usize], -row[(m - k) as usize].clone());
            }
        }
    }

    #[test]
    fn bridges_to_c_triangle() {
        for n in 1..=100 {
            for k in 1..=n {
                assert_eq!(b_number(n, k).unwrap(), c_number(2 * n, n - k).unwrap());
            }
            for k in 1..=n + 1 {
                assert_eq!(a_number(n, k).unwrap(), c_number(2 * n + 1, n + 1 - k).unwrap());
            }
            let cn = catalan(n).unwrap();
            assert_eq!(c_number(2 * n, n - 1).unwrap(), cn);
            assert_eq!(c_number(2 * n + 1, n).unwrap(), cn);
        }
    }

    #[test]
    fn b_and_a_recurrences() {
        for n in 2..=100 {
            for tri in [Triangle::B, Triangle::A] {
                let prev = |k: i64| {
                    if tri.columns(n - 1).contains(&k) {
                        tri.value(n - 1, k).unwrap()
                    } else {
                        BigInt::zero()
                    }
                };
                for k in 2..=*tri.columns(n).end() {
                    let rhs = prev(k - 1) + 2 * prev(k) + prev(k + 1);
                    assert_eq!(tri.value(n, k).unwrap(), rhs, "{tri}({n},{k})");
                }
            }
        }
    }

    #[test]
    fn memo_evicts_least_recently_used() {
        let memo = RowMemo::new(usize::MAX);
        let r10 = memo.row(Triangle::C, 10).unwrap();
        memo.row(Triangle::C, 20).unwrap();
        let both = memo.used();
        // Room for the most recent row only.
        memo.set_budget(both - 1);
        assert_eq!(memo.len(), 1);
        memo.row(Triangle::C, 20).unwrap();
        assert!(memo.used() < both);
        // Evicted rows are rebuilt identically.
        assert_eq!(memo.row(Triangle::C, 10).unwrap(), r10);
        memo.set_budget(0);
        assert!(memo.is_empty());
        assert_eq!(memo.used(), 0);
        assert_eq!(memo.row(Triangle::B, 5).unwrap().len(), 6);
        assert!(memo.is_empty());
    }

    #[test]
    fn memo_shared_across_threads() {
        let memo = RowMemo::new(1 << 16);
        std::thread::scope(|s| {
            for t in 0..8 {
                let memo = &memo;
                s.spawn(move || {
                    for m in 1..120 {
                        let m = (m * 7 + t) % 119 + 1;
                        let row = memo.row(Triangle::C, m).unwrap();
                        assert_eq!(row.len(), m as usize + 1);
                        assert_eq!(row[0], BigInt::from(1));
                    }
                });
            }
        });
        assert!(memo.used() <= 1 << 16);
    }
}
