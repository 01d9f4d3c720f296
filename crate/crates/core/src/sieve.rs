//! Segmented sieve of Eratosthenes.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_N: u64 = 100_000_000;

const SEGMENT: u64 = 1 << 18;

/// All primes `<= limit` by a plain sieve.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            (i * i..=n).step_by(i).for_each(|j| composite[j] = true);
        }
        i += 1;
    }
    (2..=n).filter(|&i| !composite[i]).map(|i| i as u64).collect()
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p * p > hi {
            break;
        }
        let first = (p * p).max(lo.div_ceil(p) * p);
        let mut m = first;
        while m <= hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|&(i, &c)| !c && lo + i as u64 >= 2)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

/// Ascending primes in `[lo, hi]`. Segments are sieved in parallel and
/// concatenated in order.
pub fn primes_in_range(lo: u64, hi: u64, max_n: u64) -> Result<Vec<u64>> {
    if hi > max_n {
        return Err(Error::budget("N", hi, max_n));
    }
    if hi < lo.max(2) {
        return Ok(Vec::new());
    }
    let lo = lo.max(2);
    let base = small_primes(isqrt(hi));
    let segments = (hi - lo) / SEGMENT + 1;
    let parts: Vec<Vec<u64>> = (0..segments)
        .into_par_iter()
        .map(|s| {
            let a = lo + s * SEGMENT;
            let b = (a + SEGMENT - 1).min(hi);
            sieve_segment(a, b, &base)
        })
        .collect();
    Ok(parts.concat())
}

/// `π(n)`.
pub fn prime_count(n: u64, max_n: u64) -> Result<u64> {
    Ok(primes_in_range(1, n, max_n)?.len() as u64)
}
