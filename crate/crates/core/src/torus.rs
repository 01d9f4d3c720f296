//! Weyl sums and ergodic averages on the tori `ℝ^d/ℤ^d`.
//!
//! A polynomial `ρ_*` with real coefficients drives the orbit `ρ_*(p)`. Each
//! coefficient is an `f64`, i.e. an exact dyadic rational `M·2^-s`; the phase
//! `frac(m·β·n^j)` is computed exactly from that representation with wrapping
//! integer arithmetic mod `2^s` before a single rounding to `f64`.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::summation::{block_sum, e};
use crate::weyl::{population, Source};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Dyadic {
    mant: i64,
    shift: i32,
}

impl Dyadic {
    fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::invalid("beta", format!("coefficient {beta} is not finite")));
        }
        if beta == 0.0 {
            return Ok(Dyadic { mant: 0, shift: 0 });
        }
        let bits = beta.to_bits();
        let exp_bits = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mut mant, exp) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        let mut shift = -exp;
        while mant & 1 == 0 && shift > 0 {
            mant >>= 1;
            shift -= 1;
        }
        let mant = if beta < 0.0 { -(mant as i64) } else { mant as i64 };
        Ok(Dyadic { mant, shift })
    }

    /// `frac(β · freq · n^j)` in `[0, 1]`.
    fn frac_mul(self, freq: i64, n: u64, j: u32) -> f64 {
        if self.mant == 0 || self.shift <= 0 || freq == 0 {
            return 0.0;
        }
        if self.shift <= 128 {
            let k = (freq as i128 as u128).wrapping_mul((n as u128).wrapping_pow(j));
            let mut x = (self.mant as i128 as u128).wrapping_mul(k);
            if self.shift < 128 {
                x &= (1u128 << self.shift) - 1;
            }
            return x as f64 * (-(self.shift as f64)).exp2();
        }
        let modulus = BigInt::one() << self.shift as u32;
        let x = (BigInt::from(self.mant) * BigInt::from(freq) * BigInt::from(n).pow(j)) % &modulus;
        let x = if x.is_negative() { x + &modulus } else { x };
        let x: BigUint = x.to_biguint().expect("reduced into range");
        // keep the top 64 bits of the fraction
        let top = if self.shift > 64 { x >> (self.shift as u32 - 64) } else { x << (64 - self.shift as u32) };
        top.to_u64().unwrap_or(0) as f64 / 18446744073709551616.0
    }
}

/// `ρ_*: ℕ → ℝ^d`, one coefficient list (constant term first) per component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusPolynomial {
    components: Vec<Vec<f64>>,
}

impl TorusPolynomial {
    pub fn new(components: Vec<Vec<f64>>) -> Result<Self> {
        if components.is_empty() || components.iter().any(Vec::is_empty) {
            return Err(Error::EmptyPolynomial);
        }
        for c in components.iter().flatten() {
            Dyadic::new(*c)?;
        }
        Ok(TorusPolynomial { components })
    }

    /// One-dimensional polynomial.
    pub fn circle(coeffs: &[f64]) -> Result<Self> {
        Self::new(vec![coeffs.to_vec()])
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<f64>] {
        &self.components
    }

    /// Parses `b0,b1,...` per component, components separated by `;`.
    pub fn parse(s: &str) -> Result<Self> {
        let components = s
            .split(';')
            .map(|comp| {
                comp.split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::invalid("beta", format!("bad coefficient {v:?}")))
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        Self::new(components)
    }

    fn dyadics(&self) -> Vec<Vec<Dyadic>> {
        self.components
            .iter()
            .map(|c| c.iter().map(|&b| Dyadic::new(b).expect("validated")).collect())
            .collect()
    }

    /// `frac(m · ρ_*(n))` for a frequency vector `m`.
    pub fn phase(&self, freq: &[i64], n: u64) -> f64 {
        phase_of(&self.dyadics(), freq, n)
    }
}

fn phase_of(dy: &[Vec<Dyadic>], freq: &[i64], n: u64) -> f64 {
    let t: f64 = dy
        .iter()
        .zip(freq)
        .flat_map(|(coeffs, &m)| coeffs.iter().enumerate().map(move |(j, d)| d.frac_mul(m, n, j as u32)))
        .sum();
    t.rem_euclid(1.0)
}

fn weyl_over(poly: &TorusPolynomial, freq: &[i64], pop: &[u64]) -> Result<Complex64> {
    if freq.len() != poly.dimension() {
        return Err(Error::invalid("frequency", format!("expected {} components, got {}", poly.dimension(), freq.len())));
    }
    let dy = poly.dyadics();
    let sum = block_sum(pop.len(), |i| e(phase_of(&dy, freq, pop[i])));
    Ok(sum / pop.len() as f64)
}

/// `(1/|S_N|) Σ_{n∈S_N} e(m·ρ_*(n))`.
pub fn torus_weyl_sum_freq(poly: &TorusPolynomial, freq: &[i64], n: u64, source: Source, limits: &Limits) -> Result<Complex64> {
    weyl_over(poly, freq, &population(source, n, limits)?)
}

/// `(1/π_N) Σ_{p≤N} e(ρ_*(p))` (resp. over naturals) for real coefficients `β_0..β_k`.
pub fn torus_weyl_sum(beta: &[f64], n: u64, source: Source, limits: &Limits) -> Result<Complex64> {
    torus_weyl_sum_freq(&TorusPolynomial::circle(beta)?, &[1], n, source, limits)
}

/// One term `c·e(m·t)` of a trigonometric polynomial on the torus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub freq: Vec<i64>,
    pub coeff: Complex64,
}

impl TrigTerm {
    /// Parses `m1[,m2...]=re,im`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::invalid("term", format!("expected <freq,...>=<re>,<im>, got {s:?}"));
        let (freq, coeff) = s.split_once('=').ok_or_else(bad)?;
        let freq = freq
            .split(',')
            .map(|v| v.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let (re, im) = coeff.split_once(',').ok_or_else(bad)?;
        let re: f64 = re.trim().parse().map_err(|_| bad())?;
        let im: f64 = im.trim().parse().map_err(|_| bad())?;
        Ok(TrigTerm { freq, coeff: Complex64::new(re, im) })
    }
}

/// `∫ f`: the sum of the zero-frequency coefficients.
pub fn torus_mean(trig: &[TrigTerm]) -> Complex64 {
    trig.iter()
        .filter(|t| t.freq.iter().all(|&m| m == 0))
        .map(|t| t.coeff)
        .sum()
}

/// `(1/|S_N|) Σ_{n∈S_N} f(x + ρ_*(n))` for `f(t) = Σ c_m e(m·t)`,
/// evaluated frequency by frequency as `Σ c_m e(m·x) S_N(m)`.
pub fn torus_average(
    trig: &[TrigTerm],
    poly: &TorusPolynomial,
    x: &[f64],
    n: u64,
    source: Source,
    limits: &Limits,
) -> Result<Complex64> {
    if x.len() != poly.dimension() {
        return Err(Error::invalid("x", format!("expected {} components, got {}", poly.dimension(), x.len())));
    }
    let pop = population(source, n, limits)?;
    let mut acc = Complex64::zero();
    for t in trig {
        let s = weyl_over(poly, &t.freq, &pop)?;
        let shift: f64 = t.freq.iter().zip(x).map(|(&m, &xi)| (m as f64 * xi).rem_euclid(1.0)).sum();
        acc += t.coeff * e(shift) * s;
    }
    Ok(acc)
}
