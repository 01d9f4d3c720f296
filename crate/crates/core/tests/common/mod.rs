//! Independent reference implementations shared by the integration tests.
//! Nothing here calls the engines it is used to check.
#![allow(dead_code)]

use std::f64::consts::TAU;

use adicergo::{eval_poly, AdicInt, Basis, Character, Complex64};
use num_traits::ToPrimitive;

pub fn e(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * t)
}

/// `e(num/den)` with the numerator reduced first.
pub fn e_frac(num: u64, den: u64) -> Complex64 {
    e((num % den) as f64 / den as f64)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn trial_primes(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Möbius and Euler functions on `0..=n` from a smallest-prime-factor sieve.
pub fn mobius_phi_table(n: usize) -> (Vec<i64>, Vec<u64>) {
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    let mut mu = vec![0i64; n + 1];
    let mut phi = vec![0u64; n + 1];
    if n >= 1 {
        mu[1] = 1;
        phi[1] = 1;
    }
    for i in 2..=n {
        let p = spf[i];
        let m = i / p;
        if m.is_multiple_of(p) {
            mu[i] = 0;
            phi[i] = phi[m] * p as u64;
        } else {
            mu[i] = -mu[m];
            phi[i] = phi[m] * (p as u64 - 1);
        }
    }
    (mu, phi)
}

/// `G = (1/φ(A)) Σ_{m ∈ (ℤ/A)^×} χ(ρ(m))` and `H = (1/A) Σ_{m<A} χ(ρ(m))`,
/// evaluated pointwise with `A = A(level)`.
pub fn brute_multipliers(chi: &Character, rho: &[AdicInt]) -> (Complex64, Complex64) {
    let a = chi.modulus().to_u64().unwrap();
    let (mut g, mut h, mut units) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0u64);
    for m in 0..a {
        let v = chi.eval(&eval_poly(rho, m).unwrap()).unwrap();
        h += v;
        if gcd(m, a) == 1 {
            g += v;
            units += 1;
        }
    }
    (g / units as f64, h / a as f64)
}

/// `F(ℓ) = (1/A) Σ_c f(c) e(-ℓc/A)` by direct summation.
pub fn direct_dft(values: &[Complex64]) -> Vec<Complex64> {
    let a = values.len() as u64;
    (0..a)
        .map(|l| {
            let s: Complex64 = values
                .iter()
                .enumerate()
                .map(|(c, v)| v * e_frac((a - l * c as u64 % a) % a, a))
                .sum();
            s / a as f64
        })
        .collect()
}

/// `#{n ∈ source, n ≤ N : ρ(n) ≡ c mod A}` by evaluating ρ with plain integers.
pub fn naive_histogram(coeffs: &[i64], modulus: u64, ns: &[u64]) -> Vec<u64> {
    let m = modulus as i128;
    let mut counts = vec![0u64; modulus as usize];
    for &n in ns {
        let mut acc: i128 = 0;
        let mut pow: i128 = 1;
        for &c in coeffs {
            acc = (acc + c as i128 * pow).rem_euclid(m);
            pow = pow * n as i128 % m;
        }
        counts[acc as usize] += 1;
    }
    counts
}

pub fn bases() -> Vec<Basis> {
    ["const:2", "const:3", "cycle:2,3,5", "list:3,2,7,2"].iter().map(|s| s.parse().unwrap()).collect()
}

pub fn window_bases() -> Vec<Basis> {
    ["const:2@offset:-2", "cycle:2,3,5@offset:-1", "cycle:2,3@offset:-3", "list:5,2,3,2,7@offset:-2"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}
