//! Non-recursive exact formulas.
//!
//! Every infinite sum here is an alternating sum of binomials whose index
//! runs until all arguments are negative. Sums are accumulated in signed
//! arithmetic and narrowed once at the end.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binomial_signed, catalan, narrow, Count};

/// Family of `+-1` walks from `(0, 0)` to `(2n, 0)` confined to `[-lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WalkSpec {
    pub n: u32,
    pub lower: u32,
    pub upper: u32,
}

impl WalkSpec {
    pub fn new(n: u32, lower: u32, upper: u32) -> Self {
        Self { n, lower, upper }
    }
}

/// Number of walks in the band described by `spec`, by inclusion-exclusion
/// over reflections across both barriers.
pub fn bounded_walk_count(spec: WalkSpec) -> Count {
    let n = i64::from(spec.n);
    let h = i64::from(spec.lower);
    let t = i64::from(spec.upper);
    let len = 2 * u64::from(spec.n);
    let period = h + t + 2;

    let mut total = BigInt::zero();
    let mut j = 0i64;
    // n - j * period is the largest argument; once negative, every term is zero.
    while n - j * period >= 0 {
        let base = n - j * period;
        total += binomial_signed(len, base);
        total -= binomial_signed(len, base - h - 1);
        total -= binomial_signed(len, base - t - 1);
        total += binomial_signed(len, n - (j + 1) * period);
        j += 1;
    }
    narrow(total, "bounded_walk_count")
}

/// `A_{n,t}`: Dyck paths of semilength `n` with height at most `t`.
///
/// `A_{0,t} = 1` for every `t`.
pub fn a_bounded(n: u32, t: u32) -> Count {
    bounded_walk_count(WalkSpec::new(n, 0, t))
}

/// `B_{n,k}` from the two-sum binomial expression.
pub fn b_explicit(n: u32, k: u32) -> Count {
    assert!(k >= 1, "b_explicit requires k >= 1");
    let (n, k) = (i64::from(n), i64::from(k));
    let step = k + 1;
    let mut total = BigInt::zero();
    for j in 1..=(n + 1) / step {
        total += binomial_signed(2 * n as u64 + 2, n + 1 - j * step);
    }
    let mut inner = BigInt::zero();
    for j in 1..=n / step {
        inner += binomial_signed(2 * n as u64, n - j * step);
    }
    total -= inner * 4;
    narrow(total, "b_explicit")
}

/// `B_{n,k}` from the three-term second-difference expression.
pub fn b_alt(n: u32, k: u32) -> Count {
    assert!(k >= 1, "b_alt requires k >= 1");
    let (n, k) = (i64::from(n), i64::from(k));
    let len = 2 * n as u64;
    let step = k + 1;
    let mut total = BigInt::zero();
    let mut j = 1i64;
    while n + 1 - j * step >= 0 {
        let shift = j * step;
        total += binomial_signed(len, n + 1 - shift);
        total -= binomial_signed(len, n - shift) * 2;
        total += binomial_signed(len, n - 1 - shift);
        j += 1;
    }
    narrow(total, "b_alt")
}

/// `B_{n,k} = C_n - A_{n,k-1}`.
///
/// With `a_bounded` evaluated by the two-barrier reflection sum this is the
/// one-sided reflection formula for `B` written as a composition.
pub fn b_complement(n: u32, k: u32) -> Count {
    assert!(n >= 1 && k >= 1, "b_complement requires n >= 1 and k >= 1");
    let total = catalan(n as usize);
    let below = a_bounded(n, k - 1);
    assert!(below <= total, "A_{{n,k-1}} exceeds C_n at n={n}, k={k}");
    total - below
}

/// `A_{n,t}` from the cosine power-sum reduction.
///
/// Only valid when `n >= t + 2`; outside that range this returns a domain
/// error instead of falling back to another route.
pub fn a_binomial_form(n: u32, t: u32) -> Result<Count> {
    if n < t + 2 {
        return Err(Error::Domain(format!(
            "a_binomial_form needs n >= t + 2, got n={n}, t={t}"
        )));
    }
    let (n, t) = (i64::from(n), i64::from(t));
    let step = t + 2;
    let len = 2 * n as u64;

    let mut first = binomial_signed(len - 1, n - 1);
    for j in 1..=n / step {
        first += binomial_signed(len, n - j * step);
    }
    let mut second = binomial_signed(len + 1, n);
    for j in 1..=(n + 1) / step {
        second += binomial_signed(len + 2, n + 1 - j * step);
    }
    Ok(narrow(first * 4 - second, "a_binomial_form"))
}
