//! Small number-theoretic kernels: factorization by trial division, Euler's
//! totient and the Möbius function.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use num_integer::{gcd, lcm};

/// Prime factorization `n = Π p^e`, primes ascending. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factorize(0)");
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while n.is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p.checked_mul(p).is_some_and(|pp| pp <= n) {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi_from(factors: &[(u64, u32)]) -> u64 {
    factors
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn euler_phi(n: u64) -> u64 {
    euler_phi_from(&factorize(n))
}

pub fn mobius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

type Factors = Arc<[(u64, u32)]>;

/// Memoized [`factorize`], shareable across threads.
#[derive(Default)]
pub struct FactorCache {
    map: Mutex<HashMap<u64, Factors>>,
}

impl FactorCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn factors(&self, n: u64) -> Factors {
        if let Some(f) = self.map.lock().unwrap().get(&n) {
            return f.clone();
        }
        let f: Factors = factorize(n).into();
        self.map.lock().unwrap().insert(n, f.clone());
        f
    }

    pub fn phi(&self, n: u64) -> u64 {
        euler_phi_from(&self.factors(n))
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
