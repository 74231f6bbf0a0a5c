//! Divisor function arithmetic: the sieved divisor table, the summatory
//! function `D(x)`, the Dirichlet error term and the wavenumber counting
//! function.
//!
//! Two independent evaluation routes are kept deliberately: an
//! increment-by-multiples sieve for tables and an `O(sqrt(x))` hyperbola-method
//! query for single points. They cross-check each other in the test suite.

use crate::error::{Error, Result};
use crate::EULER_GAMMA;

/// Largest supported sieve limit (keeps the table under ~2 GB).
pub const MAX_SIEVE_LIMIT: u64 = 1_000_000_000;

/// Sieved table of divisor counts `d(n)` for `1 <= n <= limit`.
///
/// Immutable once built; safe to share across threads.
#[derive(Debug, Clone)]
pub struct DivisorTable {
    limit: u64,
    counts: Vec<u16>,
}

impl DivisorTable {
    /// Number of divisors of `n`. Panics if `n` is out of range.
    #[inline]
    pub fn d(&self, n: u64) -> u64 {
        assert!(n >= 1 && n <= self.limit, "n = {n} outside table range");
        self.counts[(n - 1) as usize] as u64
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Iterates `d(1), d(2), ..., d(limit)`.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.iter().map(|&c| c as u64)
    }

    /// Partial sum `D(x)` read off the table (`x <= limit`).
    pub fn summatory(&self, x: u64) -> u64 {
        assert!(x <= self.limit, "x = {x} outside table range");
        self.counts[..x as usize].iter().map(|&c| c as u64).sum()
    }
}

/// Builds the divisor table by adding 1 to every multiple of every `a <= limit`.
pub fn divisor_sieve(limit: u64) -> Result<DivisorTable> {
    if limit == 0 {
        return Err(Error::InvalidInput("sieve limit must be positive".into()));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::InvalidInput(format!(
            "sieve limit {limit} exceeds memory budget (max {MAX_SIEVE_LIMIT})"
        )));
    }
    let n = limit as usize;
    let mut counts = vec![0u16; n];
    for a in 1..=n {
        let mut m = a - 1;
        while m < n {
            counts[m] += 1;
            m += a;
        }
    }
    Ok(DivisorTable {
        limit,
        counts,
    })
}

/// `D(x) = sum_{n<=x} d(n)` by the hyperbola method:
/// `2 * sum_{n<=sqrt(x)} floor(x/n) - floor(sqrt(x))^2`.
pub fn divisor_summatory(x: u64) -> Result<u64> {
    if x == 0 {
        return Ok(0);
    }
    let r = x.isqrt();
    let mut s: u64 = 0;
    for n in 1..=r {
        s = s
            .checked_add(x / n)
            .ok_or(Error::Overflow("divisor_summatory"))?;
    }
    let twice = s.checked_mul(2).ok_or(Error::Overflow("divisor_summatory"))?;
    twice
        .checked_sub(r * r)
        .ok_or(Error::Overflow("divisor_summatory"))
}

/// One record of the Dirichlet error-term scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisorSummary {
    pub x: u64,
    /// `D(x)`
    pub big_d: u64,
    /// `Delta(x) = D(x) - x ln x - (2 gamma - 1) x`
    pub delta: f64,
    /// `Delta(x) / (x^{1/3} ln x)`, defined for `x >= 2`
    pub normalized_delta: Option<f64>,
}

/// Evaluates `Delta(x)` at an integer point.
pub fn delta_term(x: u64) -> Result<DivisorSummary> {
    if x == 0 {
        return Err(Error::Domain("delta_term requires x >= 1".into()));
    }
    let big_d = divisor_summatory(x)?;
    let xf = x as f64;
    let delta = big_d as f64 - xf * xf.ln() - (2.0 * EULER_GAMMA - 1.0) * xf;
    let normalized_delta = if x >= 2 {
        Some(delta / (xf.cbrt() * xf.ln()))
    } else {
        None
    };
    Ok(DivisorSummary {
        x,
        big_d,
        delta,
        normalized_delta,
    })
}

/// Wavenumber counting function `N(k) = D(floor(k))`; the spectrum sits at
/// the positive integers with multiplicity `d(n)`.
pub fn counting_function(k: f64) -> Result<u64> {
    if !(k > 0.0) {
        return Err(Error::Domain("counting_function requires k > 0".into()));
    }
    let x = k.floor();
    if x < 1.0 {
        return Ok(0);
    }
    if x > (1u64 << 53) as f64 {
        return Err(Error::InvalidInput("k too large for exact floor".into()));
    }
    divisor_summatory(x as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn table_1m() -> &'static DivisorTable {
        static TABLE: OnceLock<DivisorTable> = OnceLock::new();
        TABLE.get_or_init(|| divisor_sieve(1_000_000).unwrap())
    }

    /// Independent oracle: count divisors by trial division.
    fn d_trial(n: u64) -> u64 {
        let mut count = 0;
        let r = n.isqrt();
        for a in 1..=r {
            if n % a == 0 {
                count += 2;
            }
        }
        if r * r == n {
            count -= 1;
        }
        count
    }

    #[test]
    fn sieve_small_values() {
        let t = divisor_sieve(6).unwrap();
        let got: Vec<u64> = t.iter().collect();
        assert_eq!(got, vec![1, 2, 2, 3, 2, 4]);
    }

    #[test]
    fn sieve_prime_has_two_divisors() {
        let t = divisor_sieve(8000).unwrap();
        assert_eq!(t.d(7919), 2);
    }

    #[test]
    fn sieve_d36_is_nine() {
        let t = divisor_sieve(36).unwrap();
        assert_eq!(t.d(36), d_trial(36));
        assert_eq!(t.d(36), 9);
    }

    #[test]
    fn sieve_rejects_bad_limits() {
        assert!(matches!(divisor_sieve(0), Err(Error::InvalidInput(_))));
        assert!(matches!(
            divisor_sieve(MAX_SIEVE_LIMIT + 1),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn summatory_small_values() {
        assert_eq!(divisor_summatory(1).unwrap(), 1);
        assert_eq!(divisor_summatory(10).unwrap(), 27);
    }

    #[test]
    fn summatory_matches_sieve_exhaustively() {
        let t = table_1m();
        let mut acc = 0u64;
        for n in 1..=100_000u64 {
            acc += t.d(n);
            assert_eq!(divisor_summatory(n).unwrap(), acc, "mismatch at x = {n}");
        }
    }

    #[test]
    fn summatory_overflow_is_reported() {
        assert!(matches!(
            divisor_summatory(u64::MAX),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn delta_term_known_points() {
        let s1 = delta_term(1).unwrap();
        assert_eq!(s1.big_d, 1);
        assert!((s1.delta - (2.0 - 2.0 * EULER_GAMMA)).abs() < 1e-12);
        assert!(s1.normalized_delta.is_none());

        let s2 = delta_term(2).unwrap();
        let expect = 3.0 - 2.0 * (2.0f64).ln() - 2.0 * (2.0 * EULER_GAMMA - 1.0);
        assert!((s2.delta - expect).abs() < 1e-12);
        // the x = 2 point sits above the empirical normalized envelope
        assert!((s2.normalized_delta.unwrap() - 1.4941337).abs() < 1e-6);
    }

    #[test]
    fn delta_envelope_sqrt_bound() {
        // |Delta(x)| <= 2 sqrt(x) over a moderate scan
        let t = divisor_sieve(20_000).unwrap();
        let mut acc = 0u64;
        for n in 1..=20_000u64 {
            acc += t.d(n);
            let xf = n as f64;
            let delta = acc as f64 - xf * xf.ln() - (2.0 * EULER_GAMMA - 1.0) * xf;
            assert!(
                delta.abs() <= 2.0 * xf.sqrt(),
                "envelope violated at x = {n}: {delta}"
            );
        }
    }

    #[test]
    fn counting_function_floor_semantics() {
        assert_eq!(counting_function(0.5).unwrap(), 0);
        assert_eq!(counting_function(10.0).unwrap(), 27);
        assert_eq!(counting_function(10.7).unwrap(), 27);
        assert!(counting_function(-1.0).is_err());
        assert!(counting_function(0.0).is_err());
    }

    #[test]
    fn counting_function_jumps_by_d() {
        let t = divisor_sieve(50).unwrap();
        for n in 2..=50u64 {
            let below = counting_function(n as f64 - 0.5).unwrap();
            let at = counting_function(n as f64).unwrap();
            assert_eq!(at - below, t.d(n), "jump at n = {n}");
            assert_eq!(counting_function(n as f64 + 0.25).unwrap(), at);
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    proptest! {
        #[test]
        fn sieve_matches_trial_division(n in 1u64..1_000_000) {
            prop_assert_eq!(table_1m().d(n), d_trial(n));
        }

        #[test]
        fn divisor_count_is_multiplicative(m in 1u64..1000, n in 1u64..1000) {
            prop_assume!(gcd(m, n) == 1);
            let t = table_1m();
            prop_assert_eq!(t.d(m * n), t.d(m) * t.d(n));
        }

        #[test]
        fn hyperbola_matches_table(x in 1u64..1_000_000) {
            prop_assert_eq!(divisor_summatory(x).unwrap(), table_1m().summatory(x));
        }
    }
}
