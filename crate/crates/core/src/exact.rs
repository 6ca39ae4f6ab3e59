//! Exact integer and rational primitives.
//!
//! Integers are [`num_bigint::BigInt`] and rationals are
//! [`num_rational::BigRational`], which keeps every value reduced with a
//! positive denominator, so `==` is canonical-form equality.
//!
//! Binomial coefficients follow the zero convention: `C(u, v) = 0` whenever
//! `v < 0` or `v > u`. Rows of Pascal's triangle up to a configurable limit
//! are cached process-wide; rows are built outside the lock and published
//! whole, so concurrent readers never observe a partial row.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Rows with index above this are computed on demand and not cached.
pub const DEFAULT_PASCAL_CACHE_LIMIT: u64 = 512;

static PASCAL_LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_PASCAL_CACHE_LIMIT);

fn pascal_rows() -> &'static RwLock<HashMap<u64, Arc<[BigInt]>>> {
    static ROWS: OnceLock<RwLock<HashMap<u64, Arc<[BigInt]>>>> = OnceLock::new();
    ROWS.get_or_init(Default::default)
}

/// Sets the largest row index kept in the Pascal-row cache. Already cached
/// rows above the new limit are dropped.
pub fn set_pascal_cache_limit(limit: u64) {
    PASCAL_LIMIT.store(limit, Ordering::Relaxed);
    let mut rows = pascal_rows().write().unwrap_or_else(|e| e.into_inner());
    rows.retain(|&u, _| u <= limit);
}

pub fn pascal_cache_limit() -> u64 {
    PASCAL_LIMIT.load(Ordering::Relaxed)
}

/// Embeds an integer into the rationals.
pub fn ratio(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `a / b` as an exact rational. `b` must be non-zero.
pub fn frac(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Rational {
    Rational::new(a.into(), b.into())
}

/// `(-1)^e` as a small integer.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `2^e` for `e >= 0`.
pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

/// Divides `a` by `b`, failing unless the division is exact.
///
/// Every closed form in this crate that is written as a quotient is known to
/// be integral, so an error here means a bug upstream.
pub fn exact_div(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if b.is_zero() {
        return Err(Error::integrity(format!("division of {a} by zero")));
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::integrity(format!("{a} is not divisible by {b}")));
    }
    Ok(q)
}

/// Builds row `u` of Pascal's triangle with the multiplicative recurrence
/// `C(u, k+1) = C(u, k) (u - k) / (k + 1)`, mirroring the second half.
fn build_row(u: u64) -> Arc<[BigInt]> {
    let len = u as usize + 1;
    let mut row: Vec<BigInt> = Vec::with_capacity(len);
    row.push(BigInt::one());
    let half = u / 2;
    for k in 0..half {
        let next = row[k as usize].clone() * (u - k) / (k + 1);
        row.push(next);
    }
    for k in (half + 1)..=u {
        let mirrored = row[(u - k) as usize].clone();
        row.push(mirrored);
    }
    row.into()
}

/// Row `u` of Pascal's triangle, `[C(u,0), ..., C(u,u)]`.
pub fn binomial_row(u: i64) -> Result<Arc<[BigInt]>> {
    if u < 0 {
        return Err(Error::domain(format!("binomial row index must be >= 0, got {u}")));
    }
    let u = u as u64;
    if u > pascal_cache_limit() {
        return Ok(build_row(u));
    }
    if let Some(row) = pascal_rows().read().unwrap_or_else(|e| e.into_inner()).get(&u) {
        return Ok(Arc::clone(row));
    }
    let row = build_row(u);
    let mut rows = pascal_rows().write().unwrap_or_else(|e| e.into_inner());
    Ok(Arc::clone(rows.entry(u).or_insert(row)))
}

fn binomial_multiplicative(u: u64, v: u64) -> BigInt {
    let v = v.min(u - v);
    let mut acc = BigInt::one();
    for i in 1..=v {
        acc = acc * (u - v + i) / i;
    }
    acc
}

/// The binomial coefficient `C(u, v)`.
///
/// Zero when `v < 0` or `v > u`; a negative `u` is a domain error.
pub fn binomial(u: i64, v: i64) -> Result<BigInt> {
    if u < 0 {
        return Err(Error::domain(format!("binomial({u}, {v}): upper index must be >= 0")));
    }
    if v < 0 || v > u {
        return Ok(BigInt::zero());
    }
    if (u as u64) <= pascal_cache_limit() {
        let row = binomial_row(u)?;
        return Ok(row[v as usize].clone());
    }
    Ok(binomial_multiplicative(u as u64, v as u64))
}

/// The harmonic number `H_n = 1 + 1/2 + ... + 1/n`, reduced.
pub fn harmonic(n: i64) -> Result<Rational> {
    if n < 1 {
        return Err(Error::domain(format!("harmonic number needs n >= 1, got {n}")));
    }
    // Sum over the common denominator lcm(1..n), reduce once at the end.
    let lcm = (2..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
    let numer = (1..=n).fold(BigInt::zero(), |acc, k| acc + &lcm / k);
    Ok(Rational::new(numer, lcm))
}

/// Integer value of a rational known to be integral.
pub fn to_integer(r: &Rational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.numer().clone())
    } else {
        Err(Error::integrity(format!("{r} is not an integer")))
    }
}

/// `|x|` bit length, used for memory accounting.
pub(crate) fn approx_bytes(x: &BigInt) -> usize {
    (x.abs().bits() as usize).div_ceil(8) + std::mem::size_of::<BigInt>()
}
