//! Deterministic complex summation and unit-circle phases.
//!
//! Sums are split into fixed blocks of [`BLOCK`] consecutive terms. Each block
//! is reduced by a pairwise tree, then the block sums are reduced by the same
//! tree. The shape of the tree depends only on the number of terms, so the
//! result is bit-identical for any rayon thread count.

use std::f64::consts::TAU;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

pub const BLOCK: usize = 1 << 12;

const LEAF: usize = 8;

pub fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    if terms.len() <= LEAF {
        return terms.iter().fold(Complex64::zero(), |a, &b| a + b);
    }
    let (lo, hi) = terms.split_at(terms.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

/// `Σ_{i < len} term(i)` with the fixed block/pairwise tree, evaluated in parallel.
pub fn block_sum<F>(len: usize, term: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let blocks = len.div_ceil(BLOCK);
    let partial: Vec<Complex64> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(len);
            let terms: Vec<Complex64> = (lo..hi).map(&term).collect();
            pairwise_sum(&terms)
        })
        .collect();
    pairwise_sum(&partial)
}

/// `e(t) = exp(2πi t)` after reducing `t` to `[-1/2, 1/2)`.
pub fn e(t: f64) -> Complex64 {
    let t = t - t.round();
    Complex64::from_polar(1.0, TAU * t)
}

/// `e(num/den)` for integers, reduced exactly before conversion to floating point.
pub fn e_ratio(num: u64, den: u64) -> Complex64 {
    debug_assert!(den > 0);
    let num = num % den;
    let signed = if num > den / 2 { num as i128 - den as i128 } else { num as i128 };
    Complex64::from_polar(1.0, TAU * (signed as f64 / den as f64))
}

/// `e(num/den)` for arbitrary-precision integers. The fraction `num mod den`
/// is resolved to 64 fractional bits in exact arithmetic first.
pub fn e_ratio_big(num: &BigUint, den: &BigUint) -> Complex64 {
    if let (Some(n), Some(d)) = ((num % den).to_u64(), den.to_u64()) {
        return e_ratio(n, d);
    }
    let frac: BigUint = ((num % den) << 64u32) / den;
    let bits = frac.to_u64().expect("fraction below 2^64");
    e(bits as f64 / 18446744073709551616.0)
}
