//! The limit multipliers of the averages.
//!
//! For a reduced phase `e(c + γ(m)/D)`:
//!
//! * prime multiplier `G = e(c)/φ(D) · Σ_{1≤m≤D, (m,D)=1} e(γ(m)/D)`,
//! * natural multiplier `H = e(c)/D · Σ_{1≤m≤D} e(γ(m)/D)`.
//!
//! `γ(m) mod D` is always evaluated in integer arithmetic; the complex terms
//! go through the deterministic block/pairwise sum.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adic::{horner_mod, AdicInt};
use crate::basis::Basis;
use crate::duality::{reduce_phase, Character, ReducedPhase};
use crate::error::{Error, Result};
use crate::numtheory::{euler_phi_from, factorize};
use crate::summation::{block_sum, e_ratio, pairwise_sum};

/// Largest `D` the multiplier kernels will sum over.
pub const PHASE_MODULUS_LIMIT: u64 = 1 << 36;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MultiplierKind {
    Prime,
    Natural,
}

impl fmt::Display for MultiplierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MultiplierKind::Prime => "prime",
            MultiplierKind::Natural => "natural",
        })
    }
}

impl FromStr for MultiplierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "prime" | "primes" => Ok(MultiplierKind::Prime),
            "natural" | "naturals" => Ok(MultiplierKind::Natural),
            other => Err(Error::invalid("kind", format!("expected prime or natural, got {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiplierValue {
    pub value: Complex64,
    pub modulus: u64,
    pub kind: MultiplierKind,
}

pub fn multiplier_prime(phase: &ReducedPhase) -> Result<MultiplierValue> {
    let (d, g) = phase.machine(PHASE_MODULUS_LIMIT)?;
    let factors = factorize(d);
    let primes: Vec<u64> = factors.iter().map(|&(p, _)| p).collect();
    let sum = block_sum(d as usize, |i| {
        let m = i as u64 + 1;
        if primes.iter().any(|&p| m.is_multiple_of(p)) {
            Complex64::new(0.0, 0.0)
        } else {
            e_ratio(horner_mod(&g, m, d), d)
        }
    });
    let phi = euler_phi_from(&factors) as f64;
    Ok(MultiplierValue {
        value: phase.constant_phase() * sum / phi,
        modulus: d,
        kind: MultiplierKind::Prime,
    })
}

pub fn multiplier_natural(phase: &ReducedPhase) -> Result<MultiplierValue> {
    let (d, g) = phase.machine(PHASE_MODULUS_LIMIT)?;
    let sum = block_sum(d as usize, |i| e_ratio(horner_mod(&g, i as u64 + 1, d), d));
    Ok(MultiplierValue {
        value: phase.constant_phase() * sum / d as f64,
        modulus: d,
        kind: MultiplierKind::Natural,
    })
}

pub fn multiplier(phase: &ReducedPhase, kind: MultiplierKind) -> Result<MultiplierValue> {
    match kind {
        MultiplierKind::Prime => multiplier_prime(phase),
        MultiplierKind::Natural => multiplier_natural(phase),
    }
}

/// Multiplier of `χ` for the polynomial `ρ` (coefficients constant term first).
pub fn character_multiplier(chi: &Character, rho: &[AdicInt], kind: MultiplierKind) -> Result<MultiplierValue> {
    multiplier(&reduce_phase(chi, rho)?, kind)
}

/// Complete exponential sum `S(ψ|q) = Σ_{0≤r<q} e(ψ(r)/q)`.
/// `coeffs[j]` is the coefficient of `x^j`; negative values are reduced mod `q`.
pub fn complete_exp_sum(coeffs: &[i64], q: u64) -> Complex64 {
    assert!(q >= 1, "modulus must be positive");
    let g: Vec<u64> = coeffs
        .iter()
        .map(|&c| (c as i128).rem_euclid(q as i128) as u64)
        .collect();
    block_sum(q as usize, |r| e_ratio(horner_mod(&g, r as u64, q), q))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WienerPoint {
    pub r: i64,
    pub modulus: u64,
    pub energy: f64,
}

/// `W(r) = (1/A(r)) Σ_{0≤ℓ<A(r)} |m(χ_{ℓ/A(r)})|²` for `r = 0..=r_max`.
///
/// Every character of level `s ≤ r` appears exactly once among the level-`r`
/// numerators, so the sum runs over `ℓ < A(r)`.
pub fn wiener_energy(
    basis: &Basis,
    rho: &[AdicInt],
    r_max: i64,
    kind: MultiplierKind,
    max_characters: u64,
) -> Result<Vec<WienerPoint>> {
    if rho.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    let start = basis.offset().max(0);
    (start..=r_max)
        .map(|r| {
            let a = basis.modulus_u64(r, max_characters)?;
            let rho_r: Vec<AdicInt> = rho.iter().map(|c| c.reduce_to(r)).collect::<Result<_>>()?;
            let energies: Vec<Result<Complex64>> = (0..a)
                .into_par_iter()
                .map(|ell| {
                    let chi = Character::new(basis, r, ell)?;
                    let m = character_multiplier(&chi, &rho_r, kind)?;
                    Ok(Complex64::new(m.value.norm_sqr(), 0.0))
                })
                .collect();
            let energies: Vec<Complex64> = energies.into_iter().collect::<Result<_>>()?;
            Ok(WienerPoint { r, modulus: a, energy: pairwise_sum(&energies).re / a as f64 })
        })
        .collect()
}

/// `|S(ψ|q)|/q`, maximized over the unit multiples `a·ψ`, `gcd(a, q) = 1`.
pub fn max_normalized_exp_sum(coeffs: &[i64], q: u64) -> f64 {
    (1..q)
        .filter(|a| num_integer::gcd(*a, q) == 1)
        .map(|a| {
            let scaled: Vec<i64> = coeffs
                .iter()
                .map(|&c| ((c as i128 * a as i128).rem_euclid(q as i128)).to_i64().unwrap())
                .collect();
            complete_exp_sum(&scaled, q).norm() / q as f64
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summation::e;

    fn phase(d: u64, g: &[u64]) -> ReducedPhase {
        ReducedPhase::from_parts(d, g).unwrap()
    }

    #[test]
    fn prime_multiplier_examples() {
        assert_eq!(multiplier_prime(&phase(1, &[])).unwrap().value, Complex64::new(1.0, 0.0));
        // (1/2)(e(1/4) + e(3/4)) = 0
        assert!(multiplier_prime(&phase(4, &[0, 1])).unwrap().value.norm() < 1e-15);
        // odd squares are 1 mod 8
        let g = multiplier_prime(&phase(8, &[0, 0, 1])).unwrap();
        assert!((g.value - e(1.0 / 8.0)).norm() < 1e-15);
        assert_eq!(g.modulus, 8);
    }

    #[test]
    fn natural_multiplier_examples() {
        assert_eq!(multiplier_natural(&phase(1, &[])).unwrap().value, Complex64::new(1.0, 0.0));
        assert!(multiplier_natural(&phase(2, &[0, 0, 1])).unwrap().value.norm() < 1e-15);
        let h = multiplier_natural(&phase(3, &[0, 0, 1])).unwrap().value;
        let expect = (Complex64::new(1.0, 0.0) + 2.0 * e(1.0 / 3.0)) / 3.0;
        assert!((h - expect).norm() < 1e-15);
        assert!((h.norm() - 3f64.powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn complete_sum_examples() {
        assert!((complete_exp_sum(&[0, 0, 1], 5).norm() - 5f64.sqrt()).abs() < 1e-12);
        for q in 2..40 {
            assert!(complete_exp_sum(&[0, 1], q).norm() < 1e-12);
        }
        let s = complete_exp_sum(&[0, 0, 1], 3);
        assert!((s - (Complex64::new(1.0, 0.0) + 2.0 * e(1.0 / 3.0))).norm() < 1e-14);
        assert!((complete_exp_sum(&[0, 0, -1], 7) - complete_exp_sum(&[0, 0, 6], 7)).norm() < 1e-14);
    }

    #[test]
    fn natural_is_normalized_complete_sum() {
        let p = phase(45, &[0, 7, 0, 11]);
        let h = multiplier_natural(&p).unwrap().value;
        assert!((h - complete_exp_sum(&[0, 7, 0, 11], 45) / 45.0).norm() < 1e-14);
    }

    #[test]
    fn wiener_first_level() {
        let b = Basis::constant(2).unwrap();
        let rho = crate::adic::embed_poly(&[0.into(), 0.into(), 1.into()], &b, 3).unwrap();
        let w = wiener_energy(&b, &rho, 3, MultiplierKind::Prime, 1 << 16).unwrap();
        assert_eq!(w.len(), 4);
        assert!((w[0].energy - 1.0).abs() < 1e-15);
        assert!(w.iter().all(|p| p.energy >= 1.0 / p.modulus as f64 - 1e-15));
        assert!(wiener_energy(&b, &rho, 3, MultiplierKind::Prime, 4).is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("prime".parse::<MultiplierKind>().unwrap(), MultiplierKind::Prime);
        assert_eq!("naturals".parse::<MultiplierKind>().unwrap(), MultiplierKind::Natural);
        assert!("x".parse::<MultiplierKind>().is_err());
    }
}
