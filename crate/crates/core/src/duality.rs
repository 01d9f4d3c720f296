//! Characters of `ℤ_a` and of the windows `Λ_k`, and the reduction of
//! `χ(ρ(n))` to a single exponential `e((c + γ(n))/D)`.
//!
//! A [`Character`] of level `r` is `χ_{ℓ/A(r)}`, acting on an element with
//! residue `v` by `e(ℓ v / A(r))`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::adic::{reduce_signed, AdicInt};
use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::summation::e_ratio_big;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    basis: Basis,
    level: i64,
    ell: BigUint,
}

impl Character {
    pub fn new(basis: &Basis, level: i64, ell: impl Into<BigUint>) -> Result<Self> {
        let ell = ell.into();
        let m = basis.modulus(level)?;
        if ell >= m {
            return Err(Error::InvalidCharacter(format!(
                "numerator {ell} must be below A({level}) = {m}"
            )));
        }
        Ok(Character { basis: basis.clone(), level, ell })
    }

    pub fn trivial(basis: &Basis) -> Self {
        Character { basis: basis.clone(), level: basis.offset() - 1, ell: BigUint::zero() }
    }

    /// Parses `<ℓ>/<A>` (with `A = A(r)` for some `r`) or `<ℓ>@level:<r>`.
    pub fn parse(s: &str, basis: &Basis) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::InvalidCharacter(format!("{s:?}: {msg}"));
        if let Some((ell, level)) = s.split_once("@level:") {
            let ell: BigUint = ell.trim().parse().map_err(|_| bad("bad numerator"))?;
            let level: i64 = level.trim().parse().map_err(|_| bad("bad level"))?;
            return Character::new(basis, level, ell);
        }
        let (ell, den) = s.split_once('/').ok_or_else(|| bad("expected <l>/<A> or <l>@level:<r>"))?;
        let ell: BigUint = ell.trim().parse().map_err(|_| bad("bad numerator"))?;
        let den: BigUint = den.trim().parse().map_err(|_| bad("bad denominator"))?;
        let level = basis
            .level_of_modulus(&den)
            .ok_or_else(|| bad(&format!("{den} is not A(r) for basis {basis}")))?;
        Character::new(basis, level, ell)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn numerator(&self) -> &BigUint {
        &self.ell
    }

    pub fn modulus(&self) -> BigUint {
        self.basis.modulus(self.level).expect("level validated at construction")
    }

    pub fn is_trivial(&self) -> bool {
        self.ell.is_zero()
    }

    /// The same character written at a higher level `s`: `ℓ/A(r) = ℓ·(A(s)/A(r))/A(s)`.
    pub fn raise(&self, s: i64) -> Result<Character> {
        if s < self.level {
            return Err(Error::PrecisionMismatch { left: self.level, right: s });
        }
        let factor = self.basis.modulus(s)? / self.modulus();
        Character::new(&self.basis, s, &self.ell * factor)
    }

    /// `χ` evaluated on a residue mod `A(level)`.
    pub fn eval_residue(&self, v: &BigUint) -> Complex64 {
        let m = self.modulus();
        e_ratio_big(&((&self.ell * (v % &m)) % &m), &m)
    }

    pub fn eval(&self, x: &AdicInt) -> Result<Complex64> {
        if x.basis() != &self.basis {
            return Err(Error::BasisMismatch { left: self.basis.to_string(), right: x.basis().to_string() });
        }
        if x.precision() < self.level {
            return Err(Error::PrecisionMismatch { left: self.level, right: x.precision() });
        }
        Ok(self.eval_residue(x.residue()))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.ell, self.modulus())
    }
}

/// Restriction of a window character to `ℤ_a`.
///
/// On `x ∈ ℤ_a` the window residue is `P·v` with `P = a(k)⋯a(-1)`, so
/// `e(ℓ P v / A(r)) = e(ℓ v / (A(r)/P))`: the restriction is `ℓ mod A'(r)`
/// over the integer basis, `A'(r) = a(0)⋯a(r)`.
pub fn psi_restrict(chi: &Character) -> Result<Character> {
    let z = chi.basis.integer_part()?;
    if chi.level < 0 {
        return Ok(Character::trivial(&z));
    }
    let m = z.modulus(chi.level)?;
    Character::new(&z, chi.level, &chi.ell % m)
}

/// A fraction in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: BigUint,
    pub den: BigUint,
}

impl Fraction {
    pub fn reduced(num: BigUint, den: BigUint) -> Self {
        let g = num.gcd(&den);
        if g.is_zero() {
            return Fraction { num, den };
        }
        Fraction { num: num / &g, den: den / g }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `χ(ρ(n)) = e(c) · e(γ(n)/D)` with `γ(x) = Σ_{j≥1} g_j x^j`.
///
/// The constant `c = m_0/B_0` comes from `α_0` and is kept as its own reduced
/// fraction, since `B_0` need not divide `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPhase {
    modulus: BigUint,
    coeffs: Vec<BigUint>,
    constant: Fraction,
    fractions: Vec<Fraction>,
}

impl ReducedPhase {
    /// Builds `γ` directly from coefficients mod `D` (index = degree; index 0 is ignored).
    pub fn from_parts(modulus: u64, coeffs: &[u64]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("modulus", "D must be positive"));
        }
        let d = BigUint::from(modulus);
        let mut g: Vec<BigUint> = coeffs.iter().map(|&c| BigUint::from(c) % &d).collect();
        if g.is_empty() {
            g.push(BigUint::zero());
        }
        g[0] = BigUint::zero();
        let fractions = g[1..].iter().map(|c| Fraction::reduced(c.clone(), d.clone())).collect();
        Ok(ReducedPhase {
            modulus: d,
            coeffs: g,
            constant: Fraction { num: BigUint::zero(), den: BigUint::one() },
            fractions,
        })
    }

    /// `D`.
    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// `g_j` mod `D`, indexed by degree; `g_0 = 0`.
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Fraction {
        &self.constant
    }

    /// `m_j/B_j` for `j = 1..k`.
    pub fn fractions(&self) -> &[Fraction] {
        &self.fractions
    }

    pub fn constant_phase(&self) -> Complex64 {
        e_ratio_big(&self.constant.num, &self.constant.den)
    }

    /// `γ(n) mod D`.
    pub fn gamma(&self, n: &BigInt) -> BigUint {
        let n = reduce_signed(n, &self.modulus);
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, g| (acc * &n + g) % &self.modulus)
    }

    /// `e(c) · e(γ(n)/D)`.
    pub fn value_at(&self, n: &BigInt) -> Complex64 {
        self.constant_phase() * e_ratio_big(&self.gamma(n), &self.modulus)
    }

    /// `D` and `g_j` as machine words, for the summation kernels.
    pub(crate) fn machine(&self, limit: u64) -> Result<(u64, Vec<u64>)> {
        let d = match self.modulus.to_u64() {
            Some(d) if d <= limit => d,
            _ => return Err(Error::budget("phase modulus D", &self.modulus, limit)),
        };
        let g = self.coeffs.iter().map(|c| c.to_u64().expect("below D")).collect();
        Ok((d, g))
    }
}

/// Reduces `χ_{ℓ/A(r)}(ρ(n))` to `e(c + γ(n)/D)`.
///
/// `l_j = ℓ·v_j mod A(r)` with `v_j` the residue of `α_j` at precision `r`,
/// `m_j/B_j = l_j/A(r)` in lowest terms, `D = lcm(B_1..B_k)` and
/// `g_j = m_j·D/B_j`. Coefficients of higher precision are truncated to `r`.
pub fn reduce_phase(chi: &Character, rho: &[AdicInt]) -> Result<ReducedPhase> {
    if rho.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    let a = chi.modulus();
    let mut fractions = Vec::with_capacity(rho.len());
    for alpha in rho {
        if alpha.basis() != chi.basis() {
            return Err(Error::BasisMismatch { left: chi.basis().to_string(), right: alpha.basis().to_string() });
        }
        if alpha.precision() < chi.level() {
            return Err(Error::PrecisionMismatch { left: chi.level(), right: alpha.precision() });
        }
        let v = alpha.residue() % &a;
        let l = (&chi.ell * v) % &a;
        fractions.push(Fraction::reduced(l, a.clone()));
    }
    let constant = fractions.remove(0);
    let d = fractions.iter().fold(BigUint::one(), |acc, f| acc.lcm(&f.den));
    let mut coeffs = vec![BigUint::zero()];
    coeffs.extend(fractions.iter().map(|f| (&f.num * (&d / &f.den)) % &d));
    Ok(ReducedPhase { modulus: d, coeffs, constant, fractions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adic::embed_poly;
    use crate::summation::e;

    fn dyadic() -> Basis {
        Basis::constant(2).unwrap()
    }

    fn poly(c: &[i64], b: &Basis, r: i64) -> Vec<AdicInt> {
        let c: Vec<BigInt> = c.iter().map(|&x| x.into()).collect();
        embed_poly(&c, b, r).unwrap()
    }

    #[test]
    fn eval_examples() {
        let b = dyadic();
        let x = AdicInt::embed(3, &b, 2).unwrap();
        let chi = Character::parse("1/8", &b).unwrap();
        assert!((chi.eval(&x).unwrap() - e(3.0 / 8.0)).norm() < 1e-15);
        let triv = Character::new(&b, 2, 0u32).unwrap();
        assert_eq!(triv.eval(&x).unwrap(), Complex64::new(1.0, 0.0));
        let chi = Character::parse("2@level:2", &b).unwrap();
        let y = AdicInt::embed(5, &b, 2).unwrap();
        assert!((chi.eval(&y).unwrap() - e(2.0 / 8.0)).norm() < 1e-15);
    }

    #[test]
    fn parse_errors() {
        let b = dyadic();
        assert!(Character::parse("8/8", &b).is_err());
        assert!(Character::parse("1/12", &b).is_err());
        assert!(Character::parse("1", &b).is_err());
        assert_eq!(Character::parse("3/16", &b).unwrap().to_string(), "3/16");
    }

    #[test]
    fn eval_requires_precision() {
        let b = dyadic();
        let chi = Character::parse("1/8", &b).unwrap();
        let x = AdicInt::embed(3, &b, 1).unwrap();
        assert!(chi.eval(&x).is_err());
        let hi = AdicInt::embed(11, &b, 5).unwrap();
        assert!((chi.eval(&hi).unwrap() - e(3.0 / 8.0)).norm() < 1e-15);
    }

    #[test]
    fn reduce_linear_example() {
        let b = dyadic();
        let chi = Character::new(&b, 2, 2u32).unwrap();
        let ph = reduce_phase(&chi, &poly(&[0, 1], &b, 2)).unwrap();
        assert_eq!(ph.modulus(), &BigUint::from(4u32));
        assert_eq!(ph.coefficients()[1], BigUint::from(1u32));
        assert_eq!(ph.fractions()[0].to_string(), "1/4");
    }

    #[test]
    fn reduce_square_example() {
        let b = dyadic();
        let chi = Character::new(&b, 2, 1u32).unwrap();
        let ph = reduce_phase(&chi, &poly(&[0, 0, 1], &b, 2)).unwrap();
        assert_eq!(ph.modulus(), &BigUint::from(8u32));
        assert_eq!(ph.coefficients(), &[0u32.into(), 0u32.into(), 1u32.into()]);
    }

    #[test]
    fn reduce_trivial_and_constant_only() {
        let b = Basis::cycle(&[2, 3, 5]).unwrap();
        let triv = Character::new(&b, 2, 0u32).unwrap();
        let ph = reduce_phase(&triv, &poly(&[4, 5, 7], &b, 2)).unwrap();
        assert!(ph.modulus().is_one());
        assert_eq!(ph.value_at(&17.into()), Complex64::new(1.0, 0.0));

        let chi = Character::new(&b, 2, 7u32).unwrap();
        let ph = reduce_phase(&chi, &poly(&[4], &b, 2)).unwrap();
        assert!(ph.modulus().is_one());
        assert_eq!(ph.constant().to_string(), "14/15");
    }

    #[test]
    fn constant_not_dividing_d() {
        // 2n² + 1 at level 2 of the dyadic basis with ℓ = 1: D = 4 but c = 1/8
        let b = dyadic();
        let chi = Character::new(&b, 2, 1u32).unwrap();
        let rho = poly(&[1, 0, 2], &b, 2);
        let ph = reduce_phase(&chi, &rho).unwrap();
        assert_eq!(ph.modulus(), &BigUint::from(4u32));
        assert_eq!(ph.constant().to_string(), "1/8");
        for n in -20i64..20 {
            let direct = chi.eval(&crate::adic::eval_poly(&rho, n).unwrap()).unwrap();
            assert!((direct - ph.value_at(&n.into())).norm() < 1e-12);
        }
    }

    #[test]
    fn level_raising_preserves_values() {
        let b = Basis::cycle(&[2, 3, 5]).unwrap();
        let chi = Character::new(&b, 1, 5u32).unwrap();
        let up = chi.raise(3).unwrap();
        assert_eq!(up.numerator(), &BigUint::from(50u32));
        for n in 0..60 {
            let x = AdicInt::embed(n, &b, 3).unwrap();
            assert!((chi.eval(&x).unwrap() - up.eval(&x).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn psi_identity_and_annihilator() {
        let b = Basis::cycle(&[2, 3, 5]).unwrap();
        let chi = Character::new(&b, 2, 7u32).unwrap();
        assert_eq!(psi_restrict(&chi).unwrap(), chi);

        let w: Basis = "cycle:2,3,5@offset:-2".parse().unwrap();
        // index of ℤ_a in the window is a(-2)a(-1) = 3·5
        let ann = Character::new(&w, 1, 30u32).unwrap();
        assert!(psi_restrict(&ann).unwrap().is_trivial());
        let low = Character::new(&w, -1, 4u32).unwrap();
        assert!(psi_restrict(&low).unwrap().is_trivial());
    }
}
