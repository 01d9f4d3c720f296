mod common;

use adicergo::sieve::{prime_count, primes_in_range};
use adicergo::{adic_weyl_sum, embed_poly, orbit_histogram, Basis, Character, Complex64, Limits, Source};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sieve_matches_trial_division(lo in 0u64..20_000, len in 0u64..3000) {
        let hi = lo + len;
        let expect: Vec<u64> = (lo..=hi).filter(|&n| common::is_prime(n)).collect();
        prop_assert_eq!(primes_in_range(lo, hi, 1 << 20).unwrap(), expect);
    }

    #[test]
    fn histogram_matches_direct_binning(
        idx in 0usize..4,
        r in 0i64..=3,
        coeffs in prop::collection::vec(-20i64..20, 1..4),
        n in 2u64..3000,
        primes in any::<bool>(),
    ) {
        let b = common::bases()[idx].clone();
        let r = r.min(b.max_index().unwrap_or(i64::MAX));
        let big: Vec<BigInt> = coeffs.iter().map(|&c| c.into()).collect();
        let rho = embed_poly(&big, &b, r).unwrap();
        let (source, ns) = if primes {
            (Source::Primes, common::trial_primes(n))
        } else {
            (Source::Naturals, (1..=n).collect())
        };
        let h = orbit_histogram(&rho, n, source, &Limits::default()).unwrap();
        let m = b.modulus(r).unwrap().to_u64().unwrap();
        prop_assert_eq!(&h.counts, &common::naive_histogram(&coeffs, m, &ns));
        prop_assert_eq!(h.total, ns.len() as u64);
    }

    #[test]
    fn weyl_sum_matches_pointwise_sum(
        idx in 0usize..4,
        r in 0i64..=3,
        seed in any::<u64>(),
        n in 2u64..2000,
    ) {
        let b = common::bases()[idx].clone();
        let r = r.min(b.max_index().unwrap_or(i64::MAX));
        let a = b.modulus(r).unwrap().to_u64().unwrap();
        let ell = seed % a;
        let chi = Character::new(&b, r, ell).unwrap();
        let rho = embed_poly(&[1.into(), 1.into(), 1.into()], &b, r).unwrap();
        let ps = common::trial_primes(n);
        let direct: Complex64 = ps
            .iter()
            .map(|&p| common::e_frac(ell * ((1 + p + p * p) % a) % a, a))
            .sum::<Complex64>() / ps.len() as f64;
        let s = adic_weyl_sum(&chi, &rho, n, Source::Primes, &Limits::default()).unwrap();
        prop_assert!(common::close(s, direct, 1e-12));
    }
}

#[test]
fn prime_counts() {
    assert_eq!(prime_count(100, 1 << 20).unwrap(), 25);
    assert_eq!(prime_count(10_000, 1 << 20).unwrap(), 1229);
    assert_eq!(prime_count(10_000_000, 100_000_000).unwrap(), 664_579);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let b = Basis::cycle(&[2, 3, 5]).unwrap();
    let rho = embed_poly(&[0.into(), 0.into(), 1.into()], &b, 3).unwrap();
    let chi = Character::parse("7/60", &b).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| adic_weyl_sum(&chi, &rho, 300_000, Source::Primes, &Limits::default()).unwrap())
    };
    let one = run(1);
    for t in [2, 3, 8] {
        let z = run(t);
        assert_eq!(z.re.to_bits(), one.re.to_bits());
        assert_eq!(z.im.to_bits(), one.im.to_bits());
    }
}
