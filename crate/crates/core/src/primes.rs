//! Prime tables and the elementary prime sums used as reference curves.

use crate::error::{Error, Result};

/// Largest sieve limit accepted by [`sieve_primes`].
pub const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000_000;

/// Above this many entries the sieve runs segment by segment.
const SEGMENT_THRESHOLD: u64 = 10_000_000;
const SEGMENT_LEN: usize = 1 << 18;

/// All primes up to `limit`, in increasing order. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&p| p as u64)
    }

    /// Primes `p ≤ x`.
    pub fn up_to(&self, x: f64) -> Result<&[u32]> {
        let count = self.prime_count(x)? as usize;
        Ok(&self.primes[..count])
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= u32::MAX as u64 && self.primes.binary_search(&(n as u32)).is_ok()
    }

    /// `π(x)`, the number of primes `≤ x`.
    pub fn prime_count(&self, x: f64) -> Result<u64> {
        let floor = self.check_range(x)?;
        Ok(self.primes.partition_point(|&p| (p as u64) <= floor) as u64)
    }

    /// `Σ_{p ≤ x} 1/p`, summed in increasing prime order.
    pub fn mertens_sum(&self, x: f64) -> Result<f64> {
        let floor = self.check_range(x)?;
        Ok(self.primes.iter().take_while(|&&p| (p as u64) <= floor).fold(0.0, |acc, &p| acc + 1.0 / p as f64))
    }

    fn check_range(&self, x: f64) -> Result<u64> {
        if x.is_nan() || x > self.limit as f64 {
            return Err(Error::OutOfRange { what: "x", value: x.to_string(), limit: self.limit.to_string() });
        }
        if x < 0.0 {
            return Ok(0);
        }
        Ok(x.floor() as u64)
    }
}

/// Sieve of Eratosthenes up to `limit` with the default memory budget.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    sieve_primes_with_budget(limit, DEFAULT_SIEVE_LIMIT)
}

pub fn sieve_primes_with_budget(limit: u64, max_limit: u64) -> Result<PrimeTable> {
    let max_limit = max_limit.min(u32::MAX as u64);
    if limit > max_limit {
        return Err(Error::ResourceLimit(format!("sieve limit {limit} exceeds the configured maximum {max_limit}")));
    }
    let primes = if limit <= SEGMENT_THRESHOLD { plain_sieve(limit as usize) } else { segmented_sieve(limit) };
    Ok(PrimeTable { limit, primes })
}

fn plain_sieve(limit: usize) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u32);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn segmented_sieve(limit: u64) -> Vec<u32> {
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = plain_sieve(root as usize);
    let mut primes: Vec<u32> = base.iter().copied().filter(|&p| p as u64 <= limit).collect();
    let mut low = root + 1;
    let mut segment = vec![false; SEGMENT_LEN];
    while low <= limit {
        let high = (low + SEGMENT_LEN as u64 - 1).min(limit);
        let len = (high - low + 1) as usize;
        segment[..len].fill(false);
        for &p in &base {
            let p = p as u64;
            if p * p > high {
                break;
            }
            let mut start = low.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= high {
                segment[(j - low) as usize] = true;
                j += p;
            }
        }
        primes.extend(segment[..len].iter().enumerate().filter(|(_, &c)| !c).map(|(i, _)| (low + i as u64) as u32));
        low = high + 1;
    }
    primes
}

/// Deterministic trial-division primality, for small arguments.
pub fn is_prime_small(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
