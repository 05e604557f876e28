//! Exact integer primitives shared by every counting route.
//!
//! Counts are arbitrary-precision unsigned integers. Probabilities are exact
//! fractions of counts kept in lowest terms. Floating point only appears in
//! the explicitly approximate helpers at the bottom of this module.

use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

/// Exact nonnegative path count.
pub type Count = BigUint;

/// Exact nonnegative fraction in lowest terms.
pub type Fraction = Ratio<Count>;

/// Binomial coefficient `C(n, r)`, zero when `r < 0` or `r > n`.
///
/// The zero convention lets every alternating sum below run over a plain
/// index range and drop out-of-range terms on its own.
pub fn binomial(n: u64, r: i64) -> Count {
    if r < 0 || r as u64 > n {
        return Count::zero();
    }
    let r = (r as u64).min(n - r as u64);
    let mut acc = Count::one();
    for i in 0..r {
        // acc = C(n, i) here, so acc * (n - i) is divisible by i + 1.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn catalan_memo() -> &'static RwLock<Vec<Count>> {
    static MEMO: OnceLock<RwLock<Vec<Count>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(vec![Count::one()]))
}

/// The `n`th Catalan number `C(2n, n) / (n + 1)`.
///
/// Values are cached in a process-wide table grown with the ratio
/// `C_{m+1} = C_m * 2(2m + 1) / (m + 2)`.
pub fn catalan(n: usize) -> Count {
    {
        let memo = catalan_memo().read().expect("catalan memo poisoned");
        if let Some(c) = memo.get(n) {
            return c.clone();
        }
    }
    let mut memo = catalan_memo().write().expect("catalan memo poisoned");
    while memo.len() <= n {
        let m = (memo.len() - 1) as u64;
        let next = memo.last().expect("memo is never empty") * (2 * (2 * m + 1)) / (m + 2);
        memo.push(next);
    }
    memo[n].clone()
}

/// `C_0..=C_n` as a vector.
pub fn catalan_prefix(n: usize) -> Vec<Count> {
    catalan(n);
    let memo = catalan_memo().read().expect("catalan memo poisoned");
    memo[..=n].to_vec()
}

/// Catalan numbers through the convolution `C_{m+1} = sum_i C_i C_{m-i}`.
///
/// Quadratic and uncached; it exists as a second route to check `catalan`.
pub fn catalan_via_convolution(n: usize) -> Count {
    let mut table: Vec<Count> = Vec::with_capacity(n + 1);
    table.push(Count::one());
    for m in 0..n {
        let next = (0..=m).map(|i| &table[i] * &table[m - i]).sum();
        table.push(next);
    }
    table.swap_remove(n)
}

/// Stirling-based approximation `4^n / (n^{3/2} sqrt(pi))` of `C_n`.
///
/// Overflows to infinity for `n` beyond roughly 510; use
/// [`catalan_stirling_ln`] there.
pub fn catalan_stirling_approx(n: u32) -> f64 {
    catalan_stirling_ln(n).exp()
}

/// Natural logarithm of [`catalan_stirling_approx`].
pub fn catalan_stirling_ln(n: u32) -> f64 {
    let n = f64::from(n);
    n * 4f64.ln() - 1.5 * n.ln() - 0.5 * PI.ln()
}

/// Natural logarithm of a positive count, accurate to double precision for
/// counts of any size.
pub fn ln_count(value: &Count) -> f64 {
    assert!(!value.is_zero(), "logarithm of zero count");
    let bits = value.bits();
    if bits <= 1000 {
        return value.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let head = (value >> shift).to_f64().expect("64-bit head fits in f64");
    head.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Converts a signed intermediate to a count, panicking if it is negative.
///
/// A negative value can only come from a mistranscribed formula, never from
/// caller input, so it is treated as an internal invariant violation.
pub(crate) fn narrow(value: BigInt, what: &str) -> Count {
    match value.sign() {
        Sign::Minus => panic!("{what} produced a negative count: {value}"),
        _ => value.magnitude().clone(),
    }
}

/// Signed binomial for alternating sums.
pub(crate) fn binomial_signed(n: u64, r: i64) -> BigInt {
    BigInt::from(binomial(n, r))
}

/// `numerator / denominator` as a decimal string with `digits` places after
/// the point, rounded half up.
pub fn fraction_to_decimal(value: &Fraction, digits: usize) -> String {
    let scale = num_traits::pow(Count::from(10u32), digits);
    let scaled = value.numer() * &scale * 2u32 + value.denom();
    let rounded = scaled / (value.denom() * 2u32);
    let whole = &rounded / &scale;
    let frac = &rounded % &scale;
    if digits == 0 {
        return whole.to_string();
    }
    format!("{whole}.{:0>width$}", frac.to_string(), width = digits)
}

/// Double-precision value of an exact fraction, correct for operands far
/// beyond the `f64` range.
pub fn fraction_to_f64(value: &Fraction) -> f64 {
    if value.numer().is_zero() {
        return 0.0;
    }
    let (n, d) = (value.numer(), value.denom());
    if n.bits() < 1000 && d.bits() < 1000 {
        return n.to_f64().unwrap() / d.to_f64().unwrap();
    }
    (ln_count(n) - ln_count(d)).exp()
}
