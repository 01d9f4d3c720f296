//! Cylinder functions on `ℤ_a/Λ_{r+1} ≅ ℤ/A(r)ℤ`, their Fourier transform,
//! the empirical averages `A_N f` and the limits predicted by the multipliers.
//!
//! The same code serves negative-offset windows: a function on `Λ_k` at
//! precision `r` is a function of the window residue mod `A(r)`.

use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::adic::AdicInt;
use crate::basis::Basis;
use crate::duality::{reduce_phase, Character};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::multipliers::{multiplier, MultiplierKind};
use crate::summation::{e_ratio, pairwise_sum};
use crate::weyl::{orbit_histogram, OrbitHistogram, Source};

#[derive(Clone, Debug, PartialEq)]
pub struct CylinderFunction {
    basis: Basis,
    r: i64,
    values: Vec<Complex64>,
}

/// Fourier coefficients `F(f)(ℓ)`, `0 <= ℓ < A(r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    basis: Basis,
    r: i64,
    coefficients: Vec<Complex64>,
}

fn vector_len(basis: &Basis, r: i64, limit: u64) -> Result<usize> {
    Ok(basis.modulus_u64(r, limit)? as usize)
}

impl CylinderFunction {
    pub fn new(basis: &Basis, r: i64, values: Vec<Complex64>) -> Result<Self> {
        let m = basis.modulus(r)?;
        if m.to_usize() != Some(values.len()) {
            return Err(Error::invalid("values", format!("expected A({r}) = {m} values, got {}", values.len())));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::invalid("values", "values must be finite"));
        }
        Ok(CylinderFunction { basis: basis.clone(), r, values })
    }

    pub fn from_fn(basis: &Basis, r: i64, limit: u64, f: impl Fn(u64) -> Complex64) -> Result<Self> {
        let m = vector_len(basis, r, limit)?;
        Self::new(basis, r, (0..m as u64).map(f).collect())
    }

    pub fn constant(basis: &Basis, r: i64, c: Complex64, limit: u64) -> Result<Self> {
        Self::from_fn(basis, r, limit, |_| c)
    }

    /// `x ↦ χ(x)` at the precision of the character.
    pub fn character(chi: &Character, limit: u64) -> Result<Self> {
        let m = chi.basis().modulus_u64(chi.level(), limit)?;
        let ell = chi.numerator().to_u64().expect("numerator below modulus");
        Self::from_fn(chi.basis(), chi.level(), limit, |c| {
            e_ratio(((ell as u128 * c as u128) % m as u128) as u64, m)
        })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn precision(&self) -> i64 {
        self.r
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn modulus(&self) -> u64 {
        self.values.len() as u64
    }

    /// `x ↦ f(x + y)`.
    pub fn translate(&self, y: u64) -> CylinderFunction {
        let m = self.values.len();
        let y = (y % m as u64) as usize;
        let values = (0..m).map(|x| self.values[(x + y) % m]).collect();
        CylinderFunction { values, ..self.clone() }
    }

    pub fn scale(&self, a: Complex64) -> CylinderFunction {
        CylinderFunction { values: self.values.iter().map(|v| v * a).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &CylinderFunction) -> Result<CylinderFunction> {
        self.check_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(CylinderFunction { values, ..self.clone() })
    }

    fn check_compatible(&self, other: &CylinderFunction) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch { left: self.basis.to_string(), right: other.basis.to_string() });
        }
        if self.r != other.r {
            return Err(Error::PrecisionMismatch { left: self.r, right: other.r });
        }
        Ok(())
    }

    /// Whether `f` vanishes off the subgroup `Λ_j`, i.e. at every residue not divisible by `A(j-1)`.
    pub fn is_supported_on(&self, j: i64) -> Result<bool> {
        let step = self.basis.modulus_u64(j - 1, self.modulus())? as usize;
        Ok(self
            .values
            .iter()
            .enumerate()
            .all(|(c, v)| c % step == 0 || v.is_zero()))
    }

    /// `sup_x |f(x) - g(x)|` and the Haar `L²` distance `((1/A) Σ |f - g|²)^{1/2}`.
    pub fn distances(&self, other: &CylinderFunction) -> Result<(f64, f64)> {
        self.check_compatible(other)?;
        let diffs: Vec<f64> = self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).collect();
        let sup = diffs.iter().copied().fold(0.0, f64::max);
        let sq: Vec<Complex64> = diffs.iter().map(|d| Complex64::new(d * d, 0.0)).collect();
        let l2 = (pairwise_sum(&sq).re / diffs.len() as f64).sqrt();
        Ok((sup, l2))
    }
}

impl Spectrum {
    pub fn new(basis: &Basis, r: i64, coefficients: Vec<Complex64>) -> Result<Self> {
        let f = CylinderFunction::new(basis, r, coefficients)?;
        Ok(Spectrum { basis: f.basis, r: f.r, coefficients: f.values })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn precision(&self) -> i64 {
        self.r
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }
}

fn fft(values: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let mut planner = FftPlanner::<f64>::new();
    let plan: Arc<dyn rustfft::Fft<f64>> = if inverse {
        planner.plan_fft_inverse(values.len())
    } else {
        planner.plan_fft_forward(values.len())
    };
    let mut buf = values.to_vec();
    plan.process(&mut buf);
    buf
}

/// `F(f)(ℓ) = (1/A) Σ_c f(c) · conj(χ_ℓ(c))`.
pub fn dft(f: &CylinderFunction, limits: &Limits) -> Result<Spectrum> {
    vector_len(&f.basis, f.r, limits.max_modulus)?;
    let a = f.values.len() as f64;
    let coefficients = fft(&f.values, false).into_iter().map(|v| v / a).collect();
    Ok(Spectrum { basis: f.basis.clone(), r: f.r, coefficients })
}

/// `f(c) = Σ_ℓ F(ℓ) χ_ℓ(c)`.
pub fn idft(spec: &Spectrum, limits: &Limits) -> Result<CylinderFunction> {
    vector_len(&spec.basis, spec.r, limits.max_modulus)?;
    Ok(CylinderFunction { basis: spec.basis.clone(), r: spec.r, values: fft(&spec.coefficients, true) })
}

/// `A_N f(x) = Σ_c w_N(c) f(x + c)` with the orbit weights of a histogram at the precision of `f`.
pub fn average_with_histogram(f: &CylinderFunction, hist: &OrbitHistogram) -> Result<CylinderFunction> {
    if hist.basis != f.basis || hist.r != f.r {
        return Err(Error::invalid("histogram", "histogram and function must share basis and precision"));
    }
    let m = f.values.len();
    let weights: Vec<(usize, f64)> = hist
        .weights()
        .into_iter()
        .enumerate()
        .filter(|&(_, w)| w != 0.0)
        .collect();
    let values = (0..m)
        .into_par_iter()
        .map(|x| {
            let terms: Vec<Complex64> = weights.iter().map(|&(c, w)| f.values[(x + c) % m] * w).collect();
            pairwise_sum(&terms)
        })
        .collect();
    Ok(CylinderFunction { values, ..f.clone() })
}

fn rho_at(rho: &[AdicInt], f: &CylinderFunction) -> Result<Vec<AdicInt>> {
    if rho.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    rho.iter()
        .map(|c| {
            if c.basis() != &f.basis {
                return Err(Error::BasisMismatch { left: f.basis.to_string(), right: c.basis().to_string() });
            }
            c.reduce_to(f.r)
        })
        .collect()
}

/// `A_N f(x) = (1/|S_N|) Σ_{n∈S_N} f(x + ρ(n))` for every `x`.
pub fn empirical_average(
    f: &CylinderFunction,
    rho: &[AdicInt],
    n: u64,
    source: Source,
    limits: &Limits,
) -> Result<CylinderFunction> {
    let hist = orbit_histogram(&rho_at(rho, f)?, n, source, limits)?;
    average_with_histogram(f, &hist)
}

/// The multiplier of every character `χ_{ℓ/A(r)}`, `0 <= ℓ < A(r)`.
pub fn multiplier_table(
    basis: &Basis,
    r: i64,
    rho: &[AdicInt],
    kind: MultiplierKind,
    limits: &Limits,
) -> Result<Vec<Complex64>> {
    let m = basis.modulus_u64(r, limits.max_modulus)?;
    let rho_r: Vec<AdicInt> = rho.iter().map(|c| c.reduce_to(r)).collect::<Result<_>>()?;
    let table: Vec<Result<Complex64>> = (0..m)
        .into_par_iter()
        .map(|ell| {
            let chi = Character::new(basis, r, ell)?;
            Ok(multiplier(&reduce_phase(&chi, &rho_r)?, kind)?.value)
        })
        .collect();
    table.into_iter().collect()
}

/// The limit function whose Fourier coefficients are `m(χ_ℓ)·F(f)(ℓ)`.
pub fn predicted_limit(
    f: &CylinderFunction,
    rho: &[AdicInt],
    kind: MultiplierKind,
    limits: &Limits,
) -> Result<CylinderFunction> {
    let table = multiplier_table(&f.basis, f.r, &rho_at(rho, f)?, kind, limits)?;
    limit_from_table(f, &table, limits)
}

fn limit_from_table(f: &CylinderFunction, table: &[Complex64], limits: &Limits) -> Result<CylinderFunction> {
    let spec = dft(f, limits)?;
    let coefficients = spec.coefficients.iter().zip(table).map(|(c, m)| c * m).collect();
    idft(&Spectrum { coefficients, ..spec }, limits)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterMultiplier {
    pub ell: u64,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub source: Source,
    pub kind: MultiplierKind,
    pub n: Vec<u64>,
    pub sup_norm: Vec<f64>,
    pub l2_norm: Vec<f64>,
    pub sup_non_increasing: bool,
    pub l2_non_increasing: bool,
    pub multipliers: Vec<CharacterMultiplier>,
}

fn non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0])
}

/// Distances between `A_N f` and the predicted limit along an `N` schedule.
pub fn compare(
    f: &CylinderFunction,
    rho: &[AdicInt],
    n_list: &[u64],
    source: Source,
    limits: &Limits,
) -> Result<ComparisonReport> {
    let kind = source.kind();
    let rho_r = rho_at(rho, f)?;
    let table = multiplier_table(&f.basis, f.r, &rho_r, kind, limits)?;
    let limit = limit_from_table(f, &table, limits)?;
    let mut sup_norm = Vec::with_capacity(n_list.len());
    let mut l2_norm = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let avg = average_with_histogram(f, &orbit_histogram(&rho_r, n, source, limits)?)?;
        let (s, l) = avg.distances(&limit)?;
        sup_norm.push(s);
        l2_norm.push(l);
    }
    Ok(ComparisonReport {
        source,
        kind,
        n: n_list.to_vec(),
        sup_non_increasing: non_increasing(&sup_norm),
        l2_non_increasing: non_increasing(&l2_norm),
        sup_norm,
        l2_norm,
        multipliers: table
            .iter()
            .enumerate()
            .map(|(ell, m)| CharacterMultiplier { ell: ell as u64, re: m.re, im: m.im })
            .collect(),
    })
}

/// On-disk form of a [`CylinderFunction`] or [`Spectrum`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionFile {
    pub basis: String,
    pub r: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub values: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coefficients: Option<Vec<[f64; 2]>>,
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

fn complexes(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

impl From<&CylinderFunction> for FunctionFile {
    fn from(f: &CylinderFunction) -> Self {
        FunctionFile { basis: f.basis.to_string(), r: f.r, values: Some(pairs(&f.values)), coefficients: None }
    }
}

impl From<&Spectrum> for FunctionFile {
    fn from(s: &Spectrum) -> Self {
        FunctionFile { basis: s.basis.to_string(), r: s.r, values: None, coefficients: Some(pairs(&s.coefficients)) }
    }
}

impl TryFrom<&FunctionFile> for CylinderFunction {
    type Error = Error;

    fn try_from(file: &FunctionFile) -> Result<Self> {
        let values = file.values.as_deref().ok_or_else(|| Error::invalid("values", "missing"))?;
        CylinderFunction::new(&file.basis.parse()?, file.r, complexes(values))
    }
}

impl TryFrom<&FunctionFile> for Spectrum {
    type Error = Error;

    fn try_from(file: &FunctionFile) -> Result<Self> {
        let c = file.coefficients.as_deref().ok_or_else(|| Error::invalid("coefficients", "missing"))?;
        Spectrum::new(&file.basis.parse()?, file.r, complexes(c))
    }
}
