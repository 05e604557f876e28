//! Trigonometric closed forms for `A_{n,t}` and the asymptotics of the hit
//! probability.
//!
//! These are floating-point routes. Each evaluation that claims an integer
//! carries its residual, and is refused when the residual is too large to
//! trust the rounding.

use std::f64::consts::PI;

use num_integer::Integer;
use serde::Serialize;

use crate::closedform::b_explicit;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::numeric::{binomial, catalan, fraction_to_f64, Count, Fraction};

/// Largest `n` for which the trigonometric sums are evaluated in `f64`.
pub const TRIG_MAX_N: u32 = 25;

/// Largest accepted distance between the raw sum and its rounding.
pub const RESIDUAL_LIMIT: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
pub struct TrigEvaluation {
    pub raw: f64,
    pub rounded: Count,
    pub residual: f64,
}

/// `(cos^2, sin^2)` of `j * pi / d`.
///
/// Where the value is rational (only when `2j/d` reduces to a denominator of
/// 1, 2 or 3) it is returned exactly. Elsewhere the angle is formed per term
/// and both functions are evaluated directly so small angles keep their
/// relative accuracy in `sin^2`.
pub(crate) fn cos_sin_squared(j: u64, d: u64) -> (f64, f64) {
    let g = (2 * j).gcd(&d);
    let (p, q) = (2 * j / g, d / g);
    // cos(2 theta) = cos(p pi / q); cos^2 = (1 + cos 2theta) / 2.
    let exact_cos2 = match q {
        1 => Some(if p % 2 == 0 { 1.0 } else { -1.0 }),
        2 => Some(0.0),
        3 => Some(if p % 6 == 1 || p % 6 == 5 { 0.5 } else { -0.5 }),
        _ => None,
    };
    if let Some(c2theta) = exact_cos2 {
        return ((1.0 + c2theta) / 2.0, (1.0 - c2theta) / 2.0);
    }
    let theta = (j as f64 * PI) / d as f64;
    let (s, c) = theta.sin_cos();
    (c * c, s * s)
}

/// Neumaier compensated sum.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

fn check_envelope(n: u32) -> Result<()> {
    if n == 0 || n > TRIG_MAX_N {
        return Err(Error::Domain(format!(
            "trigonometric evaluation needs 1 <= n <= {TRIG_MAX_N}, got n={n}"
        )));
    }
    Ok(())
}

fn accept(n: u32, t: u32, raw: f64) -> Result<TrigEvaluation> {
    let nearest = raw.round();
    let residual = (raw - nearest).abs();
    if residual.is_nan() || residual >= RESIDUAL_LIMIT || nearest < 0.0 {
        return Err(Error::Precision {
            n,
            t,
            residual,
            limit: RESIDUAL_LIMIT,
        });
    }
    Ok(TrigEvaluation {
        raw,
        rounded: Count::from(nearest as u64),
        residual,
    })
}

// 1 <= j <= (t + 1) / 2
fn half_range(t: u32) -> u64 {
    u64::from(t + 1) / 2
}

/// `4^{n+1}`, exact in `f64` inside the envelope.
fn four_pow(n: u32) -> f64 {
    2f64.powi(2 * n as i32 + 2)
}

/// `A_{n,t}` as `(1/(t+2)) sum_j 4^{n+1} sin^2(j pi/(t+2)) cos^{2n}(j pi/(t+2))`.
pub fn a_trig(n: u32, t: u32) -> Result<TrigEvaluation> {
    check_envelope(n)?;
    let d = u64::from(t) + 2;
    let scale = four_pow(n);
    let terms = (1..=half_range(t)).map(|j| {
        let (c2, s2) = cos_sin_squared(j, d);
        s2 * c2.powi(n as i32) * scale
    });
    let raw = compensated_sum(terms) / d as f64;
    accept(n, t, raw)
}

/// Same sum after replacing `sin^2` with `1 - cos^2`:
/// `4^{n+1}/(t+2) (sum_j cos^{2n} - sum_j cos^{2n+2})`.
pub fn a_trig_split(n: u32, t: u32) -> Result<TrigEvaluation> {
    check_envelope(n)?;
    let d = u64::from(t) + 2;
    let powers: Vec<(f64, f64)> = (1..=half_range(t))
        .map(|j| {
            let (c2, _) = cos_sin_squared(j, d);
            let low = c2.powi(n as i32);
            (low, low * c2)
        })
        .collect();
    let low = compensated_sum(powers.iter().map(|p| p.0));
    let high = compensated_sum(powers.iter().map(|p| p.1));
    let raw = four_pow(n) * (low - high) / d as f64;
    accept(n, t, raw)
}

/// Both sides of the cosine power-sum identity
/// `sum_{j<N} cos^{2m}(j pi/N) = 2^{1-2m} N (C(2m-1, m-1) + sum_{p>=1} C(2m, m-pN))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSumCheck {
    pub m: u32,
    pub period: u32,
    /// Left side, evaluated in floating point.
    pub lhs: f64,
    /// Right side, exact.
    pub rhs: Fraction,
}

impl PowerSumCheck {
    /// `|lhs - rhs| / max(1, rhs)`.
    pub fn relative_gap(&self) -> f64 {
        let rhs = fraction_to_f64(&self.rhs);
        (self.lhs - rhs).abs() / rhs.max(1.0)
    }
}

/// Evaluates both sides of the power-sum identity for `m >= N >= 1`.
pub fn cos_power_sum(m: u32, period: u32) -> Result<PowerSumCheck> {
    if period == 0 || m < period {
        return Err(Error::Domain(format!(
            "cos_power_sum needs m >= N >= 1, got m={m}, N={period}"
        )));
    }
    let d = u64::from(period);
    let lhs = compensated_sum((0..d).map(|j| cos_sin_squared(j, d).0.powi(m as i32)));

    let (m64, step) = (u64::from(m), i64::from(period));
    let mut bracket = binomial(2 * m64 - 1, i64::from(m) - 1);
    for p in 1..=(i64::from(m) / step) {
        bracket += binomial(2 * m64, i64::from(m) - p * step);
    }
    let numer = bracket * 2u32 * period;
    let denom = num_traits::pow(Count::from(2u32), 2 * m as usize);
    Ok(PowerSumCheck {
        m,
        period,
        lhs,
        rhs: Fraction::new(numer, denom),
    })
}

/// Leading term `(1/(k+1)) 4^{n+1} sin^2(pi/(k+1)) cos^{2n}(pi/(k+1))` of the
/// trigonometric sum for `A_{n,k-1}`.
pub fn dominant_term(n: u32, k: u32) -> f64 {
    let d = u64::from(k) + 1;
    let (c2, s2) = cos_sin_squared(1, d);
    4.0 * s2 * (4.0 * c2).powi(n as i32) / d as f64
}

/// Stirling form `(4(n+1)/(k+1)) sqrt(pi n) sin^2(pi/(k+1)) cos^{2n}(pi/(k+1))`
/// of `1 - P_{n,k}`. Evaluates to zero at `k = 1`.
pub fn one_minus_p_estimate(n: u32, k: u32) -> f64 {
    let d = u64::from(k) + 1;
    let (c2, s2) = cos_sin_squared(1, d);
    let n_f = f64::from(n);
    4.0 * (n_f + 1.0) / d as f64 * (PI * n_f).sqrt() * s2 * c2.powi(n as i32)
}

/// Exact `P_{n,k} = B_{n,k} / C_n` under the uniform-path model.
pub fn uniform_hit_probability(n: u32, k: u32) -> Fraction {
    Fraction::new(b_explicit(n, k), catalan(n as usize))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u32,
    #[serde(serialize_with = "serialize_fraction")]
    pub p_exact: Fraction,
    pub p_float: f64,
    /// Stirling estimate of `1 - P_{n,k}`.
    pub bound: f64,
}

fn serialize_fraction<S: serde::Serializer>(
    value: &Fraction,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", value.numer(), value.denom()))
}

/// Rows `n = k..=n_max` of exact `P_{n,k}`, its float value and the
/// asymptotic estimate of `1 - P_{n,k}`.
pub fn convergence_series(k: u32, n_max: u32) -> Result<Vec<ConvergenceRow>> {
    convergence_series_with(k, n_max, Execution::default())
}

pub fn convergence_series_with(k: u32, n_max: u32, exec: Execution) -> Result<Vec<ConvergenceRow>> {
    if k == 0 || n_max < k {
        return Err(Error::Argument(format!(
            "convergence series needs k >= 1 and n_max >= k, got k={k}, n_max={n_max}"
        )));
    }
    let rows = exec.map(k as usize..n_max as usize + 1, |n| {
        let n = n as u32;
        let p_exact = uniform_hit_probability(n, k);
        ConvergenceRow {
            n,
            p_float: fraction_to_f64(&p_exact),
            p_exact,
            bound: one_minus_p_estimate(n, k),
        }
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::a_bounded;
    use crate::numeric::ln_count;
    use num_traits::ToPrimitive;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn exact_special_angles() {
        assert_eq!(cos_sin_squared(1, 3), (0.25, 0.75));
        assert_eq!(cos_sin_squared(1, 4), (0.5, 0.5));
        assert_eq!(cos_sin_squared(1, 2), (0.0, 1.0));
        assert_eq!(cos_sin_squared(1, 6), (0.75, 0.25));
        assert_eq!(cos_sin_squared(2, 3), (0.25, 0.75));
        assert_eq!(cos_sin_squared(0, 5), (1.0, 0.0));
        let (c2, s2) = cos_sin_squared(1, 5);
        assert!((c2 - (PI / 5.0).cos().powi(2)).abs() < 1e-15);
        assert!((c2 + s2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn trig_examples() {
        assert_eq!(a_trig(2, 1).unwrap().rounded, c(1));
        assert_eq!(a_trig(3, 2).unwrap().rounded, c(4));
        assert_eq!(a_trig(10, 2).unwrap().rounded, c(512));
        assert_eq!(a_trig_split(2, 1).unwrap().rounded, c(1));
        assert_eq!(a_trig_split(5, 2).unwrap().rounded, c(16));
        assert_eq!(a_trig_split(1, 1).unwrap().rounded, c(1));
        assert_eq!(a_trig(4, 0).unwrap().rounded, c(0));
    }

    #[test]
    fn trig_envelope_is_enforced() {
        assert!(matches!(a_trig(0, 3), Err(Error::Domain(_))));
        assert!(matches!(a_trig(26, 3), Err(Error::Domain(_))));
        assert!(matches!(a_trig_split(26, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn trig_routes_match_exact_counts() {
        for n in 1..=TRIG_MAX_N {
            for t in 0..=12 {
                let exact = a_bounded(n, t);
                let direct = a_trig(n, t).unwrap();
                let split = a_trig_split(n, t).unwrap();
                assert_eq!(direct.rounded, exact, "a_trig n={n} t={t}");
                assert_eq!(split.rounded, exact, "a_trig_split n={n} t={t}");
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        for (m, period) in [(2, 2), (3, 2), (2, 1)] {
            let check = cos_power_sum(m, period).unwrap();
            assert_eq!(check.rhs, Fraction::from_integer(c(1)));
            assert!((check.lhs - 1.0).abs() < 1e-15, "{check:?}");
        }
        assert!(matches!(cos_power_sum(2, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn dominant_term_examples() {
        for n in [1, 2, 7, 50, 300] {
            assert_eq!(dominant_term(n, 2), 1.0);
        }
        assert_eq!(dominant_term(10, 3), 512.0);
        let ratio = dominant_term(50, 3) / a_bounded(50, 2).to_f64().unwrap();
        assert!((0.999..=1.001).contains(&ratio), "{ratio}");
    }

    #[test]
    fn estimate_examples() {
        let expected = 8.0 * PI.sqrt() * 0.75 * 0.25 / 3.0;
        assert!((one_minus_p_estimate(1, 2) - expected).abs() < 1e-12);
        assert_eq!(one_minus_p_estimate(5, 1), 0.0);

        let exact = |n: u32| (ln_count(&a_bounded(n, 2)) - ln_count(&catalan(n as usize))).exp();
        let rel = (one_minus_p_estimate(200, 3) / exact(200) - 1.0).abs();
        assert!(rel < 0.02, "{rel}");
        let step = exact(201) / exact(200);
        assert!((step / 0.5 - 1.0).abs() < 0.01, "{step}");
    }

    #[test]
    fn convergence_examples() {
        for row in convergence_series(1, 12).unwrap() {
            assert_eq!(row.p_exact, Fraction::from_integer(c(1)));
            assert_eq!(row.bound, 0.0);
        }
        let k2 = convergence_series(2, 15).unwrap();
        assert_eq!(
            k2.last().unwrap().p_exact,
            Fraction::new(c(9_694_844), c(9_694_845))
        );
        let k3 = convergence_series(3, 15).unwrap();
        let last = k3.last().unwrap();
        assert_eq!(last.p_exact, Fraction::new(c(9_678_461), c(9_694_845)));
        assert!((last.p_float - 0.99831).abs() < 5e-6);
        assert!(convergence_series(3, 2).is_err());
        assert!(convergence_series(0, 4).is_err());
    }

    #[test]
    fn convergence_modes_agree() {
        let a = convergence_series_with(4, 40, Execution::Sequential).unwrap();
        let b = convergence_series_with(4, 40, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
