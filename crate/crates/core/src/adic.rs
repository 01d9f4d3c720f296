//! Elements of `ℤ_a` (and of the windows `Λ_k`) truncated to a fixed precision.
//!
//! An [`AdicInt`] at precision `r` is stored as its residue `v mod A(r)`.
//! The digit sequence is a codec on top of that residue: [`Digits`] converts
//! both ways, and [`add_carry`] runs the digitwise carry rule so it can be
//! checked against residue addition.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::basis::Basis;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdicInt {
    basis: Basis,
    r: i64,
    v: BigUint,
}

/// Mixed-radix digits `d_offset, ..., d_r`, least significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digits {
    basis: Basis,
    digits: Vec<u64>,
}

fn check_same(x: &AdicInt, y: &AdicInt) -> Result<()> {
    if x.basis != y.basis {
        return Err(Error::BasisMismatch { left: x.basis.to_string(), right: y.basis.to_string() });
    }
    if x.r != y.r {
        return Err(Error::PrecisionMismatch { left: x.r, right: y.r });
    }
    Ok(())
}

/// Reduces a signed integer into `[0, m)`.
pub(crate) fn reduce_signed(n: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, m.clone());
    n.mod_floor(&m).to_biguint().expect("mod_floor of a positive modulus is non-negative")
}

impl AdicInt {
    /// `n·u` at precision `r`, i.e. the residue `n mod A(r)`.
    pub fn embed(n: impl Into<BigInt>, basis: &Basis, r: i64) -> Result<Self> {
        let m = basis.modulus(r)?;
        Ok(AdicInt { v: reduce_signed(&n.into(), &m), basis: basis.clone(), r })
    }

    pub fn from_residue(v: BigUint, basis: &Basis, r: i64) -> Result<Self> {
        let m = basis.modulus(r)?;
        if v >= m {
            return Err(Error::invalid("residue", format!("{v} is not below A({r}) = {m}")));
        }
        Ok(AdicInt { basis: basis.clone(), r, v })
    }

    pub fn zero(basis: &Basis, r: i64) -> Result<Self> {
        Self::embed(0, basis, r)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn precision(&self) -> i64 {
        self.r
    }

    pub fn residue(&self) -> &BigUint {
        &self.v
    }

    pub fn modulus(&self) -> BigUint {
        self.basis.modulus(self.r).expect("precision validated at construction")
    }

    pub fn to_digits(&self) -> Digits {
        let mut rest = self.v.clone();
        let digits = self
            .basis
            .radices(self.r)
            .expect("precision validated at construction")
            .into_iter()
            .map(|a| {
                let (q, d) = rest.div_rem(&BigUint::from(a));
                rest = q;
                d.to_u64().expect("digit below radix")
            })
            .collect();
        Digits { basis: self.basis.clone(), digits }
    }

    pub fn add(&self, other: &AdicInt) -> Result<AdicInt> {
        check_same(self, other)?;
        let m = self.modulus();
        Ok(AdicInt { v: (&self.v + &other.v) % m, ..self.clone() })
    }

    pub fn neg(&self) -> AdicInt {
        let m = self.modulus();
        let v = if self.v.is_zero() { BigUint::zero() } else { m - &self.v };
        AdicInt { v, ..self.clone() }
    }

    /// Residue multiplication mod `A(r)`. On a negative-offset window this is
    /// the ring product of the rebased ring.
    pub fn mul(&self, other: &AdicInt) -> Result<AdicInt> {
        check_same(self, other)?;
        let m = self.modulus();
        Ok(AdicInt { v: (&self.v * &other.v) % m, ..self.clone() })
    }

    /// Integer multiple `n·x`.
    pub fn scale(&self, n: impl Into<BigInt>) -> AdicInt {
        let m = self.modulus();
        let n = reduce_signed(&n.into(), &m);
        AdicInt { v: (n * &self.v) % m, ..self.clone() }
    }

    /// Truncates to a lower precision `s <= r`.
    pub fn reduce_to(&self, s: i64) -> Result<AdicInt> {
        if s > self.r {
            return Err(Error::PrecisionMismatch { left: self.r, right: s });
        }
        let m = self.basis.modulus(s)?;
        Ok(AdicInt { basis: self.basis.clone(), r: s, v: &self.v % m })
    }

    /// Unit criterion `gcd(v, A(r)) = 1`: `x` generates `ℤ/A(r)ℤ` additively.
    pub fn is_generator(&self) -> bool {
        self.v.gcd(&self.modulus()).is_one()
    }

    /// Reindexes a window element so that its lowest digit sits at position 0.
    pub fn rebase(&self) -> AdicInt {
        AdicInt {
            basis: self.basis.rebased(),
            r: self.r - self.basis.offset(),
            v: self.v.clone(),
        }
    }

    /// Inverse of [`AdicInt::rebase`]: moves an offset-0 element into the window starting at `k`.
    pub fn unrebase(&self, k: i64) -> Result<AdicInt> {
        Ok(AdicInt { basis: self.basis.windowed(k)?, r: self.r + k, v: self.v.clone() })
    }

    /// The inclusion `ℤ_a ⊂ Λ_k`: the same digits placed at positions `>= 0` of `window`.
    pub fn include_into(&self, window: &Basis) -> Result<AdicInt> {
        let z = window.integer_part()?;
        if z != self.basis {
            return Err(Error::BasisMismatch { left: self.basis.to_string(), right: z.to_string() });
        }
        let v = &self.v * window.window_index()?;
        AdicInt::from_residue(v, window, self.r)
    }
}

impl Digits {
    /// Digits for `basis` starting at `basis.offset()`; precision is `offset + len - 1`.
    pub fn new(basis: &Basis, digits: Vec<u64>) -> Result<Self> {
        let r = basis.offset() + digits.len() as i64 - 1;
        let radices = basis.radices(r)?;
        for (i, (&d, &a)) in digits.iter().zip(&radices).enumerate() {
            if d >= a {
                return Err(Error::DigitOutOfRange { index: basis.offset() + i as i64, digit: d, radix: a });
            }
        }
        Ok(Digits { basis: basis.clone(), digits })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn precision(&self) -> i64 {
        self.basis.offset() + self.digits.len() as i64 - 1
    }

    /// `v = d_0 + a_0 d_1 + a_0 a_1 d_2 + ⋯`.
    pub fn to_adic(&self) -> AdicInt {
        let radices = self.basis.radices(self.precision()).expect("validated");
        let mut weight = BigUint::one();
        let mut v = BigUint::zero();
        for (&d, &a) in self.digits.iter().zip(&radices) {
            v += &weight * d;
            weight *= a;
        }
        AdicInt { basis: self.basis.clone(), r: self.precision(), v }
    }
}

/// Digitwise addition with carries: `x_i + y_i + t_{i-1} = t_i a_i + z_i`.
/// The carry out of the top digit is dropped.
pub fn add_carry(x: &Digits, y: &Digits) -> Result<Digits> {
    if x.basis != y.basis {
        return Err(Error::BasisMismatch { left: x.basis.to_string(), right: y.basis.to_string() });
    }
    if x.digits.len() != y.digits.len() {
        return Err(Error::PrecisionMismatch { left: x.precision(), right: y.precision() });
    }
    let radices = x.basis.radices(x.precision())?;
    let mut carry = 0u128;
    let digits = x
        .digits
        .iter()
        .zip(&y.digits)
        .zip(&radices)
        .map(|((&xi, &yi), &a)| {
            let s = xi as u128 + yi as u128 + carry;
            carry = s / a as u128;
            (s % a as u128) as u64
        })
        .collect();
    Ok(Digits { basis: x.basis.clone(), digits })
}

/// Horner evaluation of `ρ(n) = α_k n^k + ⋯ + α_1 n + α_0`, coefficients given
/// constant term first. Only integer multiples and sums are used, so this is
/// valid on windows as well as on `ℤ_a`.
pub fn eval_poly(rho: &[AdicInt], n: impl Into<BigInt>) -> Result<AdicInt> {
    let (top, rest) = rho.split_last().ok_or(Error::EmptyPolynomial)?;
    for c in rest {
        check_same(c, top)?;
    }
    let m = top.modulus();
    let n = reduce_signed(&n.into(), &m);
    let v = rest
        .iter()
        .rev()
        .fold(top.v.clone(), |acc, c| (acc * &n + &c.v) % &m);
    Ok(AdicInt { v, ..top.clone() })
}

/// Embeds integer coefficients at precision `r`.
pub fn embed_poly(coeffs: &[BigInt], basis: &Basis, r: i64) -> Result<Vec<AdicInt>> {
    if coeffs.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    coeffs.iter().map(|c| AdicInt::embed(c.clone(), basis, r)).collect()
}

/// Residues of the coefficients as machine words (requires `A(r) <= u64::MAX`).
pub(crate) fn residues_u64(rho: &[AdicInt]) -> Vec<u64> {
    rho.iter().map(|c| c.v.to_u64().expect("modulus fits u64")).collect()
}

/// `ρ(n) mod m` in machine words, coefficients already reduced mod `m`.
#[inline]
pub(crate) fn horner_mod(coeffs: &[u64], n: u64, m: u64) -> u64 {
    let n = (n % m) as u128;
    let m = m as u128;
    coeffs
        .iter()
        .rev()
        .fold(0u128, |acc, &c| (acc * n + c as u128) % m) as u64
}
