//! Empirical Weyl sums over primes and naturals on a-adic characters.
//!
//! `ρ(n) mod A(r)` is binned once into an [`OrbitHistogram`]; every character
//! of level `r` is then a weighted sum over the `A(r)` bins.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adic::{horner_mod, residues_u64, AdicInt};
use crate::basis::Basis;
use crate::duality::Character;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::multipliers::MultiplierKind;
use crate::sieve::primes_in_range;
use crate::summation::{block_sum, e_ratio};

/// The range of the summation parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Primes,
    Naturals,
}

impl Source {
    /// The multiplier describing the limit of averages over this source.
    pub fn kind(self) -> MultiplierKind {
        match self {
            Source::Primes => MultiplierKind::Prime,
            Source::Naturals => MultiplierKind::Natural,
        }
    }
}

impl From<MultiplierKind> for Source {
    fn from(kind: MultiplierKind) -> Self {
        match kind {
            MultiplierKind::Prime => Source::Primes,
            MultiplierKind::Natural => Source::Naturals,
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Primes => "primes",
            Source::Naturals => "naturals",
        })
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "primes" | "prime" => Ok(Source::Primes),
            "naturals" | "natural" => Ok(Source::Naturals),
            other => Err(Error::invalid("source", format!("expected primes or naturals, got {other:?}"))),
        }
    }
}

/// The summation parameters `n <= N` of a source, ascending.
pub fn population(source: Source, n: u64, limits: &Limits) -> Result<Vec<u64>> {
    if n > limits.max_n {
        return Err(Error::budget("N", n, limits.max_n));
    }
    let out = match source {
        Source::Primes => primes_in_range(1, n, limits.max_n)?,
        Source::Naturals => (1..=n).collect(),
    };
    if out.is_empty() {
        return Err(Error::EmptyRange(format!("no {source} up to N = {n}")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitHistogram {
    pub basis: Basis,
    pub r: i64,
    /// `counts[c] = #{n <= N in source : ρ(n) ≡ c mod A(r)}`.
    pub counts: Vec<u64>,
    pub total: u64,
    pub n: u64,
    pub source: Source,
}

impl OrbitHistogram {
    pub fn modulus(&self) -> u64 {
        self.counts.len() as u64
    }

    /// `(1/total) Σ_c counts[c]·χ(c)`.
    pub fn weyl_sum(&self, chi: &Character) -> Result<Complex64> {
        if chi.basis() != &self.basis {
            return Err(Error::BasisMismatch { left: self.basis.to_string(), right: chi.basis().to_string() });
        }
        if chi.level() > self.r {
            return Err(Error::PrecisionMismatch { left: self.r, right: chi.level() });
        }
        let chi = chi.raise(self.r)?;
        let m = self.modulus();
        let ell = chi.numerator().to_u64().expect("numerator below modulus");
        let sum = block_sum(self.counts.len(), |c| {
            let k = self.counts[c];
            if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                let phase = ((ell as u128 * c as u128) % m as u128) as u64;
                e_ratio(phase, m) * k as f64
            }
        });
        Ok(sum / self.total as f64)
    }

    /// Bin weights `counts[c]/total`.
    pub fn weights(&self) -> Vec<f64> {
        let t = self.total as f64;
        self.counts.iter().map(|&k| k as f64 / t).collect()
    }
}

/// Bins `ρ(n) mod A(r)` over the source, `r` being the common precision of the coefficients.
pub fn orbit_histogram(rho: &[AdicInt], n: u64, source: Source, limits: &Limits) -> Result<OrbitHistogram> {
    let first = rho.first().ok_or(Error::EmptyPolynomial)?;
    let basis = first.basis().clone();
    let r = first.precision();
    if rho.iter().any(|c| c.basis() != &basis || c.precision() != r) {
        return Err(Error::invalid("rho", "coefficients must share basis and precision"));
    }
    let m = basis.modulus_u64(r, limits.max_modulus)?;
    let coeffs = residues_u64(rho);
    let mut counts = vec![0u64; m as usize];
    let total = match source {
        Source::Naturals if n >= m => {
            if n > limits.max_n {
                return Err(Error::budget("N", n, limits.max_n));
            }
            // n ≡ c (mod m) occurs ⌊N/m⌋ times, plus once more for 1 ≤ c ≤ N mod m
            let (full, rem) = (n / m, n % m);
            for c in 0..m {
                let k = full + u64::from(c >= 1 && c <= rem);
                counts[horner_mod(&coeffs, c, m) as usize] += k;
            }
            n
        }
        _ => {
            let pop = population(source, n, limits)?;
            let bins: Vec<u64> = pop.par_iter().map(|&p| horner_mod(&coeffs, p, m)).collect();
            for b in bins {
                counts[b as usize] += 1;
            }
            pop.len() as u64
        }
    };
    if total == 0 {
        return Err(Error::EmptyRange(format!("no {source} up to N = {n}")));
    }
    Ok(OrbitHistogram { basis, r, counts, total, n, source })
}

/// `(1/π_N) Σ_{p≤N} χ(ρ(p))` for primes, `(1/N) Σ_{n≤N} χ(ρ(n))` for naturals.
pub fn adic_weyl_sum(chi: &Character, rho: &[AdicInt], n: u64, source: Source, limits: &Limits) -> Result<Complex64> {
    let rho_r: Vec<AdicInt> = rho.iter().map(|c| c.reduce_to(chi.level())).collect::<Result<_>>()?;
    orbit_histogram(&rho_r, n, source, limits)?.weyl_sum(chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adic::embed_poly;
    use crate::summation::e;

    fn square(b: &Basis, r: i64) -> Vec<AdicInt> {
        embed_poly(&[0.into(), 0.into(), 1.into()], b, r).unwrap()
    }

    #[test]
    fn histogram_of_squares_of_small_primes() {
        let b = Basis::constant(2).unwrap();
        let h = orbit_histogram(&square(&b, 2), 10, Source::Primes, &Limits::default()).unwrap();
        assert_eq!(h.counts, vec![0, 3, 0, 0, 1, 0, 0, 0]);
        assert_eq!(h.total, 4);
    }

    #[test]
    fn uniform_residues() {
        let b = Basis::cycle(&[2, 3, 5]).unwrap();
        let lin = embed_poly(&[0.into(), 1.into()], &b, 2).unwrap();
        let h = orbit_histogram(&lin, 90, Source::Naturals, &Limits::default()).unwrap();
        assert!(h.counts.iter().all(|&k| k == 3));
        assert_eq!(h.total, 90);
        // the short path (N < A) must agree with the periodic one
        let h = orbit_histogram(&lin, 29, Source::Naturals, &Limits::default()).unwrap();
        assert_eq!(h.counts.iter().sum::<u64>(), 29);
        assert_eq!(h.counts[0], 0);
    }

    #[test]
    fn weyl_example_over_small_primes() {
        let b = Basis::constant(2).unwrap();
        let chi = Character::parse("1/8", &b).unwrap();
        let s = adic_weyl_sum(&chi, &square(&b, 2), 10, Source::Primes, &Limits::default()).unwrap();
        let expect = (e(4.0 / 8.0) + 3.0 * e(1.0 / 8.0)) / 4.0;
        assert!((s - expect).norm() < 1e-15);
    }

    #[test]
    fn trivial_character_and_errors() {
        let b = Basis::cycle(&[2, 3, 5]).unwrap();
        let chi = Character::new(&b, 2, 0u32).unwrap();
        for source in [Source::Primes, Source::Naturals] {
            let s = adic_weyl_sum(&chi, &square(&b, 2), 1000, source, &Limits::default()).unwrap();
            assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
        assert!(matches!(
            adic_weyl_sum(&chi, &square(&b, 2), 1, Source::Primes, &Limits::default()),
            Err(Error::EmptyRange(_))
        ));
        let tight = Limits { max_n: 100, ..Limits::default() };
        assert!(adic_weyl_sum(&chi, &square(&b, 2), 101, Source::Primes, &tight).is_err());
    }

    #[test]
    fn lower_level_character_on_finer_histogram() {
        let b = Basis::constant(2).unwrap();
        let h = orbit_histogram(&square(&b, 4), 500, Source::Primes, &Limits::default()).unwrap();
        let chi = Character::parse("1/8", &b).unwrap();
        let direct = adic_weyl_sum(&chi, &square(&b, 2), 500, Source::Primes, &Limits::default()).unwrap();
        assert!((h.weyl_sum(&chi).unwrap() - direct).norm() < 1e-14);
    }
}
