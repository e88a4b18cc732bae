//! Size guard for exhaustive enumerations and closed-form cardinalities.

use crate::error::{Error, Result};

/// Refuses enumerations whose predicted cardinality exceeds a limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard {
    limit: Option<u128>,
}

impl SizeGuard {
    pub const DEFAULT_LIMIT: u128 = 5_000_000;

    pub fn new(limit: u128) -> Self {
        SizeGuard { limit: Some(limit) }
    }

    /// A guard that admits everything.
    pub fn unlimited() -> Self {
        SizeGuard { limit: None }
    }

    pub fn limit(&self) -> Option<u128> {
        self.limit
    }

    pub fn admit(&self, what: &str, estimate: u128) -> Result<()> {
        match self.limit {
            Some(limit) if estimate > limit => Err(Error::SizeGuard {
                what: what.to_string(),
                estimate,
                limit,
            }),
            _ => Ok(()),
        }
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard::new(Self::DEFAULT_LIMIT)
    }
}

// Saturating u128 arithmetic: the counts only feed the guard and reports.

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        // exact at each step: acc * (n-i) / (i+1) is C(n, i+1)
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub fn power(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// Stirling numbers of the second kind `S(n, k)` for `k = 0..=n`.
pub fn stirling2_row(n: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    for i in 1..=n {
        let mut next = vec![0u128; i + 1];
        for k in 1..=i {
            let stay = if k < i { row[k].saturating_mul(k as u128) } else { 0 };
            next[k] = stay.saturating_add(row[k - 1]);
        }
        row = next;
    }
    row
}

/// `Σ_ℓ C(n−1, ℓ−1)·m^ℓ`, the number of G-compositions of `n` for `|G| = m`.
pub fn count_gcompositions(n: usize, m: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    (1..=n).fold(0u128, |acc, l| {
        acc.saturating_add(binomial(n - 1, l - 1).saturating_mul(power(m, l)))
    })
}

/// `Σ_k k!·S(n,k)·m^k`, the cardinality of the semigroup of ordered G-partitions.
pub fn count_ordered_gpartitions(n: usize, m: usize) -> u128 {
    stirling2_row(n).iter().enumerate().skip(1).fold(0u128, |acc, (k, &s)| {
        acc.saturating_add(factorial(k).saturating_mul(s).saturating_mul(power(m, k)))
    })
}

/// `m^n · n!`, the order of the wreath product.
pub fn count_wreath(n: usize, m: usize) -> u128 {
    power(m, n).saturating_mul(factorial(n))
}

/// `n! / (a₁!⋯a_k!)`.
pub fn multinomial(sizes: &[usize]) -> u128 {
    let mut remaining: usize = sizes.iter().sum();
    let mut acc = 1u128;
    for &a in sizes {
        acc = acc.saturating_mul(binomial(remaining, a));
        remaining -= a;
    }
    acc
}
