//! C ABI for `adicergo`.
//!
//! Every fallible function returns an [`AdicergoStatus`] and writes its
//! result through an out-pointer. On failure the message is available from
//! [`adicergo_last_error`] on the calling thread until the next failing call.
//! Handles are opaque; release them with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use adicergo::multipliers::character_multiplier;
use adicergo::sieve::prime_count;
use adicergo::{
    adic_weyl_sum, complete_exp_sum, embed_poly, multiplier, reduce_phase, torus_weyl_sum, Basis, Character, Error,
    Limits, MultiplierKind, ReducedPhase, Source,
};
use adicergo::Complex64;
use num_bigint::BigInt;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdicergoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    EmptyRange = 4,
    Utf8 = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdicergoKind {
    Prime = 0,
    Natural = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdicergoSource {
    Primes = 0,
    Naturals = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AdicergoComplex {
    pub re: f64,
    pub im: f64,
}

/// Opaque basis handle.
pub struct AdicergoBasis(Basis);

/// Opaque reduced-phase handle.
pub struct AdicergoPhase(ReducedPhase);

impl From<AdicergoKind> for MultiplierKind {
    fn from(k: AdicergoKind) -> Self {
        match k {
            AdicergoKind::Prime => MultiplierKind::Prime,
            AdicergoKind::Natural => MultiplierKind::Natural,
        }
    }
}

impl From<AdicergoSource> for Source {
    fn from(s: AdicergoSource) -> Self {
        match s {
            AdicergoSource::Primes => Source::Primes,
            AdicergoSource::Naturals => Source::Naturals,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(AdicergoStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::BudgetExceeded { .. } => AdicergoStatus::BudgetExceeded,
            Error::EmptyRange(_) => AdicergoStatus::EmptyRange,
            _ => AdicergoStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(AdicergoStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AdicergoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AdicergoStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            AdicergoStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn string<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Failure(AdicergoStatus::Utf8, format!("{what} is not valid UTF-8")))
}

unsafe fn basis<'a>(b: *const AdicergoBasis) -> Result<&'a Basis, Failure> {
    b.as_ref().map(|b| &b.0).ok_or_else(|| null("basis"))
}

fn limits(max_n: u64) -> Limits {
    let mut l = Limits::default();
    if max_n != 0 {
        l.max_n = max_n;
    }
    l
}

fn complex(z: Complex64) -> AdicergoComplex {
    AdicergoComplex { re: z.re, im: z.im }
}

fn big(coeffs: &[i64]) -> Vec<BigInt> {
    coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

/// NUL-terminated library version. Static; do not free.
#[no_mangle]
pub extern "C" fn adicergo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Valid until the next
/// failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn adicergo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Parses a basis spec such as `const:2` or `cycle:2,3,5@offset:-1`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn adicergo_basis_parse(spec: *const c_char, out: *mut *mut AdicergoBasis) -> AdicergoStatus {
    guard(|| {
        let b: Basis = string(spec, "spec")?.parse()?;
        write(out, Box::into_raw(Box::new(AdicergoBasis(b))))
    })
}

/// # Safety
/// `b` must come from [`adicergo_basis_parse`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn adicergo_basis_free(b: *mut AdicergoBasis) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// `A(r)`; fails if it does not fit in 64 bits.
///
/// # Safety
/// `b` must be a live basis handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn adicergo_basis_modulus(b: *const AdicergoBasis, r: i64, out: *mut u64) -> AdicergoStatus {
    guard(|| {
        let m = basis(b)?.modulus_u64(r, u64::MAX)?;
        write(out, m)
    })
}

/// Reduced phase of `χ_{ell/A(level)}(ρ(n))`, with `rho` given constant term first.
///
/// # Safety
/// `b` must be a live basis handle, `rho` must point to `rho_len` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adicergo_phase_new(
    b: *const AdicergoBasis,
    level: i64,
    ell: u64,
    rho: *const i64,
    rho_len: usize,
    out: *mut *mut AdicergoPhase,
) -> AdicergoStatus {
    guard(|| {
        let b = basis(b)?;
        let chi = Character::new(b, level, ell)?;
        let rho = embed_poly(&big(slice(rho, rho_len, "rho")?), b, level)?;
        let phase = reduce_phase(&chi, &rho)?;
        write(out, Box::into_raw(Box::new(AdicergoPhase(phase))))
    })
}

/// Phase `e(γ(n)/d)` from coefficients `g_0..g_k` (index = degree; `g_0` is ignored).
///
/// # Safety
/// `coeffs` must point to `len` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adicergo_phase_from_parts(
    d: u64,
    coeffs: *const u64,
    len: usize,
    out: *mut *mut AdicergoPhase,
) -> AdicergoStatus {
    guard(|| {
        let phase = ReducedPhase::from_parts(d, slice(coeffs, len, "coeffs")?)?;
        write(out, Box::into_raw(Box::new(AdicergoPhase(phase))))
    })
}

/// # Safety
/// `p` must come from a phase constructor and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn adicergo_phase_free(p: *mut AdicergoPhase) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Common denominator `D` of a phase.
///
/// # Safety
/// `p` must be a live phase handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn adicergo_phase_modulus(p: *const AdicergoPhase, out: *mut u64) -> AdicergoStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("phase"))?;
        let d = u64::try_from(p.0.modulus()).map_err(|_| Failure(AdicergoStatus::BudgetExceeded, "D exceeds 64 bits".into()))?;
        write(out, d)
    })
}

/// Prime (`G`) or natural (`H`) multiplier of a phase.
///
/// # Safety
/// `p` must be a live phase handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn adicergo_multiplier(
    p: *const AdicergoPhase,
    kind: AdicergoKind,
    out: *mut AdicergoComplex,
) -> AdicergoStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("phase"))?;
        write(out, complex(multiplier(&p.0, kind.into())?.value))
    })
}

/// Multiplier of `χ_{ell/A(level)}` for `ρ` in one call.
///
/// # Safety
/// `b` must be a live basis handle, `rho` must point to `rho_len` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adicergo_character_multiplier(
    b: *const AdicergoBasis,
    level: i64,
    ell: u64,
    rho: *const i64,
    rho_len: usize,
    kind: AdicergoKind,
    out: *mut AdicergoComplex,
) -> AdicergoStatus {
    guard(|| {
        let b = basis(b)?;
        let chi = Character::new(b, level, ell)?;
        let rho = embed_poly(&big(slice(rho, rho_len, "rho")?), b, level)?;
        write(out, complex(character_multiplier(&chi, &rho, kind.into())?.value))
    })
}

/// `Σ_{0≤x<q} e(ψ(x)/q)` with `ψ` given constant term first.
///
/// # Safety
/// `coeffs` must point to `len` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adicergo_complete_exp_sum(
    coeffs: *const i64,
    len: usize,
    q: u64,
    out: *mut AdicergoComplex,
) -> AdicergoStatus {
    guard(|| {
        if q == 0 {
            return Err(Failure(AdicergoStatus::InvalidArgument, "q must be positive".into()));
        }
        write(out, complex(complete_exp_sum(slice(coeffs, len, "coeffs")?, q)))
    })
}

/// Normalized Weyl sum of `χ_{ell/A(level)}(ρ(n))` over `n ≤ n_max` in the source.
/// `max_n = 0` keeps the default budget.
///
/// # Safety
/// `b` must be a live basis handle, `rho` must point to `rho_len` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adicergo_weyl_sum(
    b: *const AdicergoBasis,
    level: i64,
    ell: u64,
    rho: *const i64,
    rho_len: usize,
    n_max: u64,
    source: AdicergoSource,
    max_n: u64,
    out: *mut AdicergoComplex,
) -> AdicergoStatus {
    guard(|| {
        let b = basis(b)?;
        let chi = Character::new(b, level, ell)?;
        let rho = embed_poly(&big(slice(rho, rho_len, "rho")?), b, level)?;
        write(out, complex(adic_weyl_sum(&chi, &rho, n_max, source.into(), &limits(max_n))?))
    })
}

/// Normalized `Σ e(β_0 + β_1 n + …)` over `n ≤ n_max` in the source.
///
/// # Safety
/// `beta` must point to `len` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adicergo_torus_weyl_sum(
    beta: *const f64,
    len: usize,
    n_max: u64,
    source: AdicergoSource,
    max_n: u64,
    out: *mut AdicergoComplex,
) -> AdicergoStatus {
    guard(|| {
        let beta = slice(beta, len, "beta")?;
        write(out, complex(torus_weyl_sum(beta, n_max, source.into(), &limits(max_n))?))
    })
}

/// `π(n)`. `max_n = 0` keeps the default budget.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn adicergo_prime_count(n: u64, max_n: u64, out: *mut u64) -> AdicergoStatus {
    guard(|| write(out, prime_count(n, limits(max_n).max_n)?))
}
