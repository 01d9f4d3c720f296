//! Ergodic averages of polynomials in primes on the a-adic integers.
//!
//! The crate provides exact arithmetic in `ℤ_a` and its windows `Λ_k`, the
//! characters of these groups, the Gauss-sum type multipliers that describe
//! the limits of the averages, empirical Weyl sums over primes and naturals,
//! and the finite Fourier analysis that ties them together.
//!
//! ```
//! use adicergo::*;
//!
//! let basis: Basis = "const:2".parse()?;
//! let chi = Character::parse("1/8", &basis)?;
//! let rho = embed_poly(&[0.into(), 0.into(), 1.into()], &basis, chi.level())?;
//! let g = multiplier(&reduce_phase(&chi, &rho)?, MultiplierKind::Prime)?;
//! let s = adic_weyl_sum(&chi, &rho, 100_000, Source::Primes, &Limits::default())?;
//! assert!((s - g.value).norm() < 1e-3);
//! # Ok::<(), adicergo::Error>(())
//! ```

pub mod adic;
pub mod basis;
pub mod cli;
pub mod config;
pub mod duality;
pub mod ergodic;
pub mod error;
pub mod limits;
pub mod multipliers;
pub mod numtheory;
pub mod report;
pub mod sieve;
pub mod summation;
pub mod torus;
pub mod weyl;

pub use adic::{add_carry, embed_poly, eval_poly, AdicInt, Digits};
pub use basis::{Basis, BasisKind};
pub use cli::run_command;
pub use config::{parse_config, ExperimentConfig};
pub use duality::{psi_restrict, reduce_phase, Character, Fraction, ReducedPhase};
pub use ergodic::{
    compare, dft, empirical_average, idft, predicted_limit, ComparisonReport, CylinderFunction, Spectrum,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use limits::Limits;
pub use report::{emit_report, Report};
pub use multipliers::{
    complete_exp_sum, multiplier, multiplier_natural, multiplier_prime, wiener_energy, MultiplierKind,
    MultiplierValue,
};
pub use torus::{torus_average, torus_weyl_sum, TorusPolynomial, TrigTerm};
pub use weyl::{adic_weyl_sum, orbit_histogram, OrbitHistogram, Source};
