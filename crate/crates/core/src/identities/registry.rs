//! The identity table.
//!
//! Sums read triangle entries through [`Row::at`], which returns zero outside
//! the stored columns. That matches the binomial zero convention for every
//! index reached below (`A(n,0)` is never read).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Bound, IdentityDescriptor, Param};
use crate::error::Result;
use crate::exact::{binomial, exact_div, frac, harmonic, pow2, ratio, sign_pow, Rational};
use crate::numbers::{catalan, gen_catalan, seq_a, seq_b, Triangle};

struct Row {
    data: Arc<[BigInt]>,
    first: i64,
}

impl Row {
    fn at(&self, k: i64) -> &BigInt {
        let idx = k - self.first;
        if idx < 0 || idx as usize >= self.data.len() {
            &BigInt::ZERO
        } else {
            &self.data[idx as usize]
        }
    }
}

fn row(tri: Triangle, r: i64) -> Result<Row> {
    let first = match tri {
        Triangle::A => 1,
        _ => 0,
    };
    Ok(Row { data: tri.row(r)?, first })
}

fn c_row(m: i64) -> Result<Row> {
    row(Triangle::C, m)
}

fn b_row(n: i64) -> Result<Row> {
    row(Triangle::B, n)
}

fn a_row(n: i64) -> Result<Row> {
    row(Triangle::A, n)
}

fn binom(u: i64, v: i64) -> Result<BigInt> {
    binomial(u, v)
}

/// `sum_{k=lo}^{hi} f(k)` over integers; empty when `hi < lo`.
fn isum(lo: i64, hi: i64, f: impl Fn(i64) -> Result<BigInt>) -> Result<BigInt> {
    (lo..=hi).try_fold(BigInt::zero(), |acc, k| Ok(acc + f(k)?))
}

/// `sum_{k=lo}^{hi} (-1)^k x_k`.
fn alt_sum(lo: i64, hi: i64, f: impl Fn(i64) -> Result<BigInt>) -> Result<BigInt> {
    isum(lo, hi, |k| Ok(sign_pow(k) * f(k)?))
}

/// `L = lcm(1..=n)` and `[L*H_0, L*H_1, ..., L*H_n]`, all integers.
fn scaled_harmonics(n: i64) -> (BigInt, Vec<BigInt>) {
    let lcm = (2..=n.max(1)).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BigInt::zero());
    for k in 1..=n {
        let next = &out[k as usize - 1] + &lcm / k;
        out.push(next);
    }
    (lcm, out)
}

fn int(x: BigInt) -> Result<Rational> {
    Ok(ratio(x))
}

struct Def {
    desc: IdentityDescriptor,
}

impl Def {
    fn cap(mut self, cap: i64) -> Self {
        self.desc.sweep_cap = cap;
        self
    }
}

fn def<L, R>(
    id: &'static str,
    statement: &'static str,
    anchor: &'static str,
    params: Vec<Param>,
    lhs: L,
    rhs: R,
) -> Def
where
    L: Fn(&[i64]) -> Result<Rational> + Send + Sync + 'static,
    R: Fn(&[i64]) -> Result<Rational> + Send + Sync + 'static,
{
    Def {
        desc: IdentityDescriptor {
            id,
            statement,
            anchor,
            params,
            lhs: Arc::new(lhs),
            rhs: Arc::new(rhs),
            sweep_cap: 100,
        },
    }
}

fn n_from(min: i64) -> Vec<Param> {
    vec![Param::at_least("n", min)]
}

fn m_n(m_min: i64) -> Vec<Param> {
    vec![Param::at_least("m", m_min), Param::at_least("n", 1)]
}

pub(super) fn build() -> Vec<IdentityDescriptor> {
    let defs = vec![
        // Recurrences.
        def(
            "prop-recurrence",
            "C(m+2,k) = C(m,k) + 2 C(m,k-1) + C(m,k-2)",
            "recurrence of the unified triangle",
            vec![Param::at_least("m", 1), Param::at_least("k", 2)],
            |v| int(c_row(v[0] + 2)?.at(v[1]).clone()),
            |v| {
                let r = c_row(v[0])?;
                let k = v[1];
                int(r.at(k) + 2 * r.at(k - 1) + r.at(k - 2))
            },
        ),
        def(
            "rec-B",
            "B(n,k) = B(n-1,k-1) + 2 B(n-1,k) + B(n-1,k+1)",
            "recurrence of the B triangle",
            vec![Param::at_least("n", 2), Param::between("k", Bound::lit(2), Bound::param(0, 0))],
            |v| int(b_row(v[0])?.at(v[1]).clone()),
            |v| {
                let p = b_row(v[0] - 1)?;
                let k = v[1];
                int(p.at(k - 1) + 2 * p.at(k) + p.at(k + 1))
            },
        ),
        def(
            "rec-A",
            "A(n,k) = A(n-1,k-1) + 2 A(n-1,k) + A(n-1,k+1)",
            "recurrence of the A triangle",
            vec![Param::at_least("n", 2), Param::between("k", Bound::lit(2), Bound::param(0, 1))],
            |v| int(a_row(v[0])?.at(v[1]).clone()),
            |v| {
                let p = a_row(v[0] - 1)?;
                let k = v[1];
                int(p.at(k - 1) + 2 * p.at(k) + p.at(k + 1))
            },
        ),
        // Linear and alternating sums.
        def(
            "thm-linear-sum",
            "sum_{k=0}^{n} C(m,k) = binom(m-1,n)",
            "linear sum of a C-row prefix",
            m_n(2),
            |v| {
                let r = c_row(v[0])?;
                int(isum(0, v[1], |k| Ok(r.at(k).clone()))?)
            },
            |v| int(binom(v[0] - 1, v[1])?),
        ),
        def(
            "thm-alt-sum",
            "sum_{k=0}^{n} (-1)^k C(m,k) = (-1)^n C(m-1,n)",
            "alternating sum of a C-row prefix",
            vec![Param::at_least("m", 2), Param::between("n", Bound::lit(1), Bound::param(0, -1))],
            |v| {
                let r = c_row(v[0])?;
                int(alt_sum(0, v[1], |k| Ok(r.at(k).clone()))?)
            },
            |v| int(sign_pow(v[1]) * c_row(v[0] - 1)?.at(v[1])),
        ),
        def(
            "cor-alt-B",
            "sum_{k=1}^{n} (-1)^k B(n,k) = -C_{n-1}",
            "alternating sum of a B-row",
            n_from(1),
            |v| {
                let r = b_row(v[0])?;
                int(alt_sum(1, v[0], |k| Ok(r.at(k).clone()))?)
            },
            |v| int(-catalan(v[0] - 1)?),
        ),
        def(
            "cor-alt-A",
            "sum_{k=1}^{n+1} (-1)^k A(n,k) = 0",
            "alternating sum of an A-row",
            n_from(1),
            |v| {
                let r = a_row(v[0])?;
                int(alt_sum(1, v[0] + 1, |k| Ok(r.at(k).clone()))?)
            },
            |_| Ok(ratio(0)),
        ),
        def(
            "eq-linear-B",
            "sum_{k=1}^{n} B(n,k) = (n+1)/2 C_n",
            "row sum of the B triangle",
            n_from(1),
            |v| {
                let r = b_row(v[0])?;
                int(isum(1, v[0], |k| Ok(r.at(k).clone()))?)
            },
            |v| Ok(frac(v[0] + 1, 2) * ratio(catalan(v[0])?)),
        ),
        def(
            "eq-linear-A",
            "sum_{k=1}^{n+1} A(n,k) = (n+1) C_n",
            "row sum of the A triangle",
            n_from(1),
            |v| {
                let r = a_row(v[0])?;
                int(isum(1, v[0] + 1, |k| Ok(r.at(k).clone()))?)
            },
            |v| int((v[0] + 1) * catalan(v[0])?),
        ),
        def(
            "eq-square-B",
            "sum_{k=1}^{n} B(n,k)^2 = C_{2n-1}",
            "sum of squares of a B-row",
            n_from(1),
            |v| {
                let r = b_row(v[0])?;
                int(isum(1, v[0], |k| Ok(r.at(k).pow(2)))?)
            },
            |v| int(catalan(2 * v[0] - 1)?),
        ),
        def(
            "eq-square-A",
            "sum_{k=1}^{n+1} A(n,k)^2 = C_{2n}",
            "sum of squares of an A-row",
            n_from(1),
            |v| {
                let r = a_row(v[0])?;
                int(isum(1, v[0] + 1, |k| Ok(r.at(k).pow(2)))?)
            },
            |v| int(catalan(2 * v[0])?),
        ),
        def(
            "eq-convolution",
            "sum_{k=1}^{i} B(n,k) B(n,n+k-i) (n+2k-i) = (n+1) C_n binom(2(n-1), i-1)",
            "weighted B-row convolution",
            vec![Param::at_least("n", 1), Param::between("i", Bound::lit(1), Bound::param(0, 0))],
            |v| {
                let (n, i) = (v[0], v[1]);
                let r = b_row(n)?;
                int(isum(1, i, |k| Ok(r.at(k) * r.at(n + k - i) * (n + 2 * k - i)))?)
            },
            |v| {
                let (n, i) = (v[0], v[1]);
                int((n + 1) * catalan(n)? * binom(2 * (n - 1), i - 1)?)
            },
        )
        .cap(40),
        // Squares.
        def(
            "thm-square-sum",
            "sum_{k=0}^{n} C(m,k)^2 = (m-2n)/m binom(m-1,n)^2 + 2/m sum_{k=0}^{n-1} binom(m-1,k)^2",
            "sum of squares of a C-row prefix",
            m_n(1),
            |v| {
                let r = c_row(v[0])?;
                int(isum(0, v[1], |k| Ok(r.at(k).pow(2)))?)
            },
            |v| {
                let (m, n) = (v[0], v[1]);
                let tail = isum(0, n - 1, |k| Ok(binom(m - 1, k)?.pow(2)))?;
                Ok(frac(m - 2 * n, m) * ratio(binom(m - 1, n)?.pow(2)) + frac(2, m) * ratio(tail))
            },
        ),
        def(
            "thm-alt-square-sum",
            "sum_{k=0}^{n} (-1)^k C(m,k)^2 = 2 (-1)^n binom(m-1,n)^2 - sum_{k=0}^{n} (-1)^k binom(m,k)^2",
            "alternating sum of squares of a C-row prefix",
            m_n(1),
            |v| {
                let r = c_row(v[0])?;
                int(alt_sum(0, v[1], |k| Ok(r.at(k).pow(2)))?)
            },
            |v| {
                let (m, n) = (v[0], v[1]);
                let tail = alt_sum(0, n, |k| Ok(binom(m, k)?.pow(2)))?;
                int(2 * sign_pow(n) * binom(m - 1, n)?.pow(2) - tail)
            },
        ),
        def(
            "cor-square-i",
            "sum_{k=0}^{n} C(n,k)^2 = 2 C_{n-1}",
            "sum of squares of a full C-row",
            n_from(1),
            |v| {
                let r = c_row(v[0])?;
                int(isum(0, v[0], |k| Ok(r.at(k).pow(2)))?)
            },
            |v| int(2 * catalan(v[0] - 1)?),
        ),
        def(
            "cor-square-ii",
            "sum_{k=1}^{n} B(n,k)^2 = C_{2n-1}",
            "sum of squares of a B-row, via the C triangle",
            n_from(1),
            |v| {
                // B(n,k) = C(2n, n-k)
                let r = c_row(2 * v[0])?;
                int(isum(0, v[0] - 1, |k| Ok(r.at(k).pow(2)))?)
            },
            |v| int(catalan(2 * v[0] - 1)?),
        ),
        def(
            "cor-square-iii",
            "sum_{k=1}^{n+1} A(n,k)^2 = C_{2n}",
            "sum of squares of an A-row, via the C triangle",
            n_from(1),
            |v| {
                // A(n,k) = C(2n+1, n+1-k)
                let r = c_row(2 * v[0] + 1)?;
                int(isum(0, v[0], |k| Ok(r.at(k).pow(2)))?)
            },
            |v| int(catalan(2 * v[0])?),
        ),
        def(
            "cor-square-iv",
            "sum_{k=1}^{n} (-1)^k B(n,k)^2 = -(n+1)/2 C_n",
            "alternating sum of squares of a B-row",
            n_from(1),
            |v| {
                let r = b_row(v[0])?;
                int(alt_sum(1, v[0], |k| Ok(r.at(k).pow(2)))?)
            },
            |v| Ok(-frac(v[0] + 1, 2) * ratio(catalan(v[0])?)),
        ),
        def(
            "thm-square-decomp-i",
            "binom(m,n)^2 = sum_{j=n}^{m} (2j-n)/n binom(j-1,n-1)^2",
            "square of a binomial as a weighted sum of squares",
            vec![Param::at_least("m", 1), Param::between("n", Bound::lit(1), Bound::param(0, 0))],
            |v| int(binom(v[0], v[1])?.pow(2)),
            |v| {
                let (m, n) = (v[0], v[1]);
                let s = isum(n, m, |j| Ok((2 * j - n) * binom(j - 1, n - 1)?.pow(2)))?;
                Ok(Rational::new(s, BigInt::from(n)))
            },
        ),
        def(
            "thm-square-decomp-ii",
            "binom(2n,n)^2 = sum_{k=0}^{n} (3n-2k)/n binom(2n-1-k,n-1)^2",
            "square of a central binomial as a weighted sum of squares",
            n_from(1),
            |v| int(binom(2 * v[0], v[0])?.pow(2)),
            |v| {
                let n = v[0];
                let s = isum(0, n, |k| Ok((3 * n - 2 * k) * binom(2 * n - 1 - k, n - 1)?.pow(2)))?;
                Ok(Rational::new(s, BigInt::from(n)))
            },
        ),
        def(
            "thm-square-decomp-remark",
            "binom(2n,n)^2 = sum_{j=0}^{n} (n+2j)/n binom(n-1+j,n-1)^2",
            "reindexed central-binomial square decomposition",
            n_from(1),
            |v| int(binom(2 * v[0], v[0])?.pow(2)),
            |v| {
                let n = v[0];
                let s = isum(0, n, |j| Ok((n + 2 * j) * binom(n - 1 + j, n - 1)?.pow(2)))?;
                Ok(Rational::new(s, BigInt::from(n)))
            },
        ),
        def(
            "eq-vandermonde",
            "sum_{k=0}^{n} binom(n,k)^2 = binom(2n,n)",
            "Vandermonde's identity",
            n_from(0),
            |v| int(isum(0, v[0], |k| Ok(binom(v[0], k)?.pow(2)))?),
            |v| int(binom(2 * v[0], v[0])?),
        ),
        def(
            "eq-alt-square",
            "sum_{k=0}^{2n} (-1)^k binom(2n,k)^2 = (-1)^n binom(2n,n)",
            "alternating sum of squared binomials",
            n_from(0),
            |v| int(alt_sum(0, 2 * v[0], |k| Ok(binom(2 * v[0], k)?.pow(2)))?),
            |v| int(sign_pow(v[0]) * binom(2 * v[0], v[0])?),
        ),
        // Cubes.
        def(
            "eq-amm",
            "sum_{k=0}^{n} (m-2k) binom(m,k)^3 = (m-n) binom(m,n) sum_{j=0}^{m-1} binom(j,n) binom(j,m-n-1)",
            "weighted cube sum of binomials",
            m_n(1),
            |v| {
                let (m, n) = (v[0], v[1]);
                int(isum(0, n, |k| Ok((m - 2 * k) * binom(m, k)?.pow(3)))?)
            },
            |v| {
                let (m, n) = (v[0], v[1]);
                int((m - n) * binom(m, n)? * cube_kernel(m, n)?)
            },
        )
        .cap(40),
        def(
            "thm-cube-sum",
            "sum_{k=0}^{n} C(m,k)^3 = 4 binom(m-1,n)^3 - 3 binom(m-1,n) sum_{j=0}^{m-1} binom(j,n) binom(j,m-n-1)",
            "sum of cubes of a C-row prefix",
            m_n(1),
            |v| {
                let r = c_row(v[0])?;
                int(isum(0, v[1], |k| Ok(r.at(k).pow(3)))?)
            },
            |v| {
                let (m, n) = (v[0], v[1]);
                let b = binom(m - 1, n)?;
                int(4 * b.pow(3) - 3 * b * cube_kernel(m, n)?)
            },
        )
        .cap(40),
        def(
            "thm-alt-cube-sum",
            "sum_{k=0}^{n} (-1)^k C(m,k)^3 = (m-3n)/m (-1)^n binom(m-1,n)^3 - (m-3)/m sum_{k=0}^{n-1} (-1)^k binom(m-1,k)^3",
            "alternating sum of cubes of a C-row prefix",
            m_n(1),
            |v| {
                let r = c_row(v[0])?;
                int(alt_sum(0, v[1], |k| Ok(r.at(k).pow(3)))?)
            },
            |v| {
                let (m, n) = (v[0], v[1]);
                let tail = alt_sum(0, n - 1, |k| Ok(binom(m - 1, k)?.pow(3)))?;
                Ok(frac(m - 3 * n, m) * ratio(sign_pow(n) * binom(m - 1, n)?.pow(3))
                    - frac(m - 3, m) * ratio(tail))
            },
        ),
        def(
            "cor-cube-B",
            "sum_{k=0}^{n} B(n,k)^3 = 1/2 binom(2n,n)^3 - 3/2 binom(2n,n) sum_{j=n}^{2n-1} binom(j,n) binom(j,n-1)",
            "sum of cubes of a B-row",
            n_from(1),
            |v| {
                let r = b_row(v[0])?;
                int(isum(0, v[0], |k| Ok(r.at(k).pow(3)))?)
            },
            |v| {
                let n = v[0];
                let c = binom(2 * n, n)?;
                let s = isum(n, 2 * n - 1, |j| Ok(binom(j, n)? * binom(j, n - 1)?))?;
                Ok(frac(1, 2) * ratio(c.pow(3)) - frac(3, 2) * ratio(c * s))
            },
        ),
        def(
            "cor-cube-A",
            "sum_{k=1}^{n+1} A(n,k)^3 = binom(2n,n)^3 - 3 binom(2n,n) sum_{j=n}^{2n-1} binom(j,n)^2",
            "sum of cubes of an A-row",
            n_from(1),
            |v| {
                let r = a_row(v[0])?;
                int(isum(1, v[0] + 1, |k| Ok(r.at(k).pow(3)))?)
            },
            |v| {
                let n = v[0];
                let c = binom(2 * n, n)?;
                let s = isum(n, 2 * n - 1, |j| Ok(binom(j, n)?.pow(2)))?;
                int(c.pow(3) - 3 * c * s)
            },
        ),
        def(
            "cor-alt-cube-A",
            "sum_{k=1}^{n+1} (-1)^k A(n,k)^3 = (n-1)/(2n+1) binom(2n,n) binom(3n,n)",
            "alternating sum of cubes of an A-row",
            n_from(1),
            |v| {
                let r = a_row(v[0])?;
                int(alt_sum(1, v[0] + 1, |k| Ok(r.at(k).pow(3)))?)
            },
            |v| {
                let n = v[0];
                Ok(frac(n - 1, 2 * n + 1) * ratio(binom(2 * n, n)? * binom(3 * n, n)?))
            },
        ),
        def(
            "eq-dixon",
            "sum_{k=0}^{2n} (-1)^k binom(2n,k)^3 = (-1)^n binom(2n,n) binom(3n,n)",
            "Dixon's identity",
            n_from(1),
            |v| int(alt_sum(0, 2 * v[0], |k| Ok(binom(2 * v[0], k)?.pow(3)))?),
            |v| {
                let n = v[0];
                int(sign_pow(n) * binom(2 * n, n)? * binom(3 * n, n)?)
            },
        ),
        def(
            "thm-b-cube",
            "sum_{k=1}^{n} B(n,k)^3 = 1/(2n) binom(2n,n) sum_{k=1}^{n} k binom(2n-k-1,n-1)^2",
            "closed form for the cube sum of a B-row",
            n_from(1),
            |v| {
                let r = b_row(v[0])?;
                int(isum(1, v[0], |k| Ok(r.at(k).pow(3)))?)
            },
            |v| {
                let n = v[0];
                let s = isum(1, n, |k| Ok(k * binom(2 * n - k - 1, n - 1)?.pow(2)))?;
                Ok(Rational::new(binom(2 * n, n)? * s, BigInt::from(2 * n)))
            },
        ),
        def(
            "rem-b-cube-factored",
            "sum_{k=1}^{n} B(n,k)^3 = (n+1)/2 C_n b(n)",
            "B-row cube sum factored through b(n)",
            n_from(1),
            |v| {
                let r = b_row(v[0])?;
                int(isum(1, v[0], |k| Ok(r.at(k).pow(3)))?)
            },
            |v| Ok(frac(v[0] + 1, 2) * ratio(catalan(v[0])? * seq_b(v[0])?)),
        ),
        def(
            "rem-a-cube-factored",
            "sum_{k=1}^{n+1} A(n,k)^3 = (n+1) C_n ((2(n+1) C_n)^2 - 3 a(n))",
            "A-row cube sum factored through a(n)",
            n_from(1),
            |v| {
                let r = a_row(v[0])?;
                int(isum(1, v[0] + 1, |k| Ok(r.at(k).pow(3)))?)
            },
            |v| {
                let n = v[0];
                let f: BigInt = (n + 1) * catalan(n)?;
                let g: BigInt = 2 * &f;
                int(&f * (g.pow(2) - 3 * seq_a(n)?))
            },
        ),
        // Harmonic numbers.
        def(
            "thm-harmonic",
            "sum_{k=1}^{n} C(m,k) H_k = binom(m-1,n) H_n - 1/m sum_{k=1}^{n} binom(m,k)",
            "harmonic-weighted sum of a C-row prefix",
            m_n(1),
            |v| {
                let (m, n) = (v[0], v[1]);
                let r = c_row(m)?;
                let (lcm, lh) = scaled_harmonics(n.min(m));
                let s = isum(1, n.min(m), |k| Ok(r.at(k) * &lh[k as usize]))?;
                Ok(Rational::new(s, lcm))
            },
            |v| {
                let (m, n) = (v[0], v[1]);
                let s = isum(1, n, |k| binom(m, k))?;
                Ok(ratio(binom(m - 1, n)?) * harmonic(n)? - Rational::new(s, BigInt::from(m)))
            },
        ),
        def(
            "cor-harmonic-C",
            "sum_{k=1}^{n} C(n,k) H_k = (1 - 2^n)/n",
            "harmonic-weighted sum of a full C-row",
            n_from(1),
            |v| {
                let n = v[0];
                let r = c_row(n)?;
                let (lcm, lh) = scaled_harmonics(n);
                Ok(Rational::new(isum(1, n, |k| Ok(r.at(k) * &lh[k as usize]))?, lcm))
            },
            |v| Ok(Rational::new(1 - pow2(v[0] as u32), BigInt::from(v[0]))),
        ),
        def(
            "cor-harmonic-B",
            "sum_{k=0}^{n-1} B(n,k) H_{n-k} = (2n H_n - 1)/(4n) binom(2n,n) - (2^{2n-1} - 1)/(2n)",
            "harmonic-weighted sum of a B-row",
            n_from(1),
            |v| {
                let n = v[0];
                let r = b_row(n)?;
                let (lcm, lh) = scaled_harmonics(n);
                Ok(Rational::new(isum(0, n - 1, |k| Ok(r.at(k) * &lh[(n - k) as usize]))?, lcm))
            },
            |v| {
                let n = v[0];
                let first = (ratio(2 * n) * harmonic(n)? - ratio(1)) / ratio(4 * n) * ratio(binom(2 * n, n)?);
                Ok(first - Rational::new(pow2(2 * n as u32 - 1) - 1, BigInt::from(2 * n)))
            },
        ),
        def(
            "cor-harmonic-A",
            "sum_{k=1}^{n} A(n,k) H_{n-k+1} = H_n binom(2n,n) - (2^{2n} - 1)/(2n+1)",
            "harmonic-weighted sum of an A-row",
            n_from(1),
            |v| {
                let n = v[0];
                let r = a_row(n)?;
                let (lcm, lh) = scaled_harmonics(n);
                Ok(Rational::new(isum(1, n, |k| Ok(r.at(k) * &lh[(n - k + 1) as usize]))?, lcm))
            },
            |v| {
                let n = v[0];
                Ok(harmonic(n)? * ratio(binom(2 * n, n)?)
                    - Rational::new(pow2(2 * n as u32) - 1, BigInt::from(2 * n + 1)))
            },
        ),
        def(
            "rem-ps13",
            "sum_{k=1}^{n} (n-2k) H_k binom(n,k) = 1 - 2^n",
            "harmonic-weighted binomial sum",
            n_from(1),
            |v| {
                let n = v[0];
                let (lcm, lh) = scaled_harmonics(n);
                let s = isum(1, n, |k| Ok((n - 2 * k) * &lh[k as usize] * binom(n, k)?))?;
                Ok(Rational::new(s, lcm))
            },
            |v| int(1 - pow2(v[0] as u32)),
        ),
        // Relations between the number families.
        def(
            "rel-gen-catalan",
            "C(kn+1,n) = ((k-2)n+1) kC_n",
            "C-triangle entries as generalized Catalan numbers",
            vec![Param::at_least("k", 1), Param::at_least("n", 1)],
            |v| {
                // Closed form, not the row memo: rows kn+1 get long.
                let (k, n) = (v[0], v[1]);
                let m = k * n + 1;
                int(exact_div(&((m - 2 * n) * binom(m, n)?), &BigInt::from(m))?)
            },
            |v| {
                let (k, n) = (v[0], v[1]);
                int(((k - 2) * n + 1) * gen_catalan(k, n)?)
            },
        )
        .cap(40),
        def(
            "rel-catalan-even",
            "C(2n,n-1) = C_n",
            "Catalan numbers in even C-rows",
            n_from(1),
            |v| int(c_row(2 * v[0])?.at(v[0] - 1).clone()),
            |v| int(catalan(v[0])?),
        ),
        def(
            "rel-catalan-odd",
            "C(2n+1,n) = C_n",
            "Catalan numbers in odd C-rows",
            n_from(1),
            |v| int(c_row(2 * v[0] + 1)?.at(v[0]).clone()),
            |v| int(catalan(v[0])?),
        ),
        def(
            "rel-b-bridge",
            "B(n,k) = C(2n,n-k)",
            "B triangle inside the C triangle",
            vec![Param::at_least("n", 1), Param::between("k", Bound::lit(1), Bound::param(0, 0))],
            |v| int(b_row(v[0])?.at(v[1]).clone()),
            |v| int(c_row(2 * v[0])?.at(v[0] - v[1]).clone()),
        ),
        def(
            "rel-a-bridge",
            "A(n,k) = C(2n+1,n+1-k)",
            "A triangle inside the C triangle",
            vec![Param::at_least("n", 1), Param::between("k", Bound::lit(1), Bound::param(0, 1))],
            |v| int(a_row(v[0])?.at(v[1]).clone()),
            |v| int(c_row(2 * v[0] + 1)?.at(v[0] + 1 - v[1]).clone()),
        ),
    ];
    defs.into_iter().map(|d| d.desc).collect()
}

/// `sum_{j=0}^{m-1} binom(j,n) binom(j,m-n-1)`.
pub(crate) fn cube_kernel(m: i64, n: i64) -> Result<BigInt> {
    isum(0, m - 1, |j| Ok(binom(j, n)? * binom(j, m - n - 1)?))
}
