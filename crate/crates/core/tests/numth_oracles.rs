//! Number-theory routines against brute force.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use vfive::numth::{
    factor_biguint, factor_u64, is_prime_u64, is_sum_two_squares_filter, r4_count,
    sqrt_minus_one_u64, two_squares_decompose, two_squares_prime_u64, FactorBudget, FilterVerdict,
    NumthError, SquaresFilter,
};

fn r2_table(limit: usize) -> Vec<u32> {
    let mut r2 = vec![0u32; limit + 1];
    let r = (limit as f64).sqrt() as i64 + 1;
    for x in -r..=r {
        for y in -r..=r {
            let n = (x * x + y * y) as usize;
            if n <= limit {
                r2[n] += 1;
            }
        }
    }
    r2
}

#[test]
fn r4_matches_four_fold_enumeration() {
    // Direct count over all signed 4-tuples up to 2000.
    let limit = 2000usize;
    let mut r4 = vec![0u64; limit + 1];
    let r = (limit as f64).sqrt() as i64;
    for a in -r..=r {
        for b in -r..=r {
            let ab = a * a + b * b;
            if ab as usize > limit {
                continue;
            }
            for c in -r..=r {
                let abc = ab + c * c;
                if abc as usize > limit {
                    continue;
                }
                for d in -r..=r {
                    let n = (abc + d * d) as usize;
                    if n <= limit {
                        r4[n] += 1;
                    }
                }
            }
        }
    }
    for (n, &want) in r4.iter().enumerate() {
        assert_eq!(r4_count(n as u64), want as u128, "n = {n}");
    }
}

#[test]
fn r4_closed_form_at_powers_of_five() {
    // 8 · σ(5^L) for odd n, with σ(5^L) = (5^{L+1} - 1)/4.
    for l in 0..=20u32 {
        let n = 5u64.pow(l);
        assert_eq!(r4_count(n), 2 * (5u128.pow(l + 1) - 1), "L = {l}");
    }
}

#[test]
fn two_squares_representability_up_to_20000() {
    let r2 = r2_table(20_000);
    for (n, &count) in r2.iter().enumerate() {
        let got = two_squares_decompose(&BigInt::from(n));
        assert_eq!(got.is_ok(), count > 0, "n = {n}");
        if let Ok(t) = got {
            assert_eq!(&t.x * &t.x + &t.y * &t.y, BigInt::from(n));
        }
    }
}

#[test]
fn filter_never_rejects_a_sum_of_two_squares() {
    let r2 = r2_table(50_000);
    let filter = SquaresFilter::new(1000);
    for (n, &count) in r2.iter().enumerate() {
        let v = is_sum_two_squares_filter(&BigInt::from(n), 1000);
        assert_eq!(v, filter.verdict(n as u128), "n = {n}");
        if count > 0 {
            assert_ne!(v, FilterVerdict::No, "n = {n}");
        } else {
            assert_ne!(v, FilterVerdict::Yes, "n = {n}");
        }
    }
}

#[test]
fn filter_on_wide_inputs() {
    // 2^64 + 1 = 274177 · 67280421310721, both 1 mod 4.
    let f = SquaresFilter::new(1000);
    let n = (1u128 << 64) + 1;
    assert_ne!(f.verdict(n), FilterVerdict::No);
    // 3 · 2^70 has 3 to an odd power.
    assert_eq!(f.verdict(3u128 << 70), FilterVerdict::No);
    assert_eq!(f.verdict(9u128 << 70), FilterVerdict::Yes);
}

#[test]
fn prime_decomposition_and_roots() {
    for p in (5u64..50_000).filter(|&p| p % 4 == 1 && is_prime_u64(p)) {
        let r = sqrt_minus_one_u64(p).unwrap();
        assert_eq!((r as u128 * r as u128 + 1) % p as u128, 0);
        let (x, y) = two_squares_prime_u64(p).unwrap();
        assert_eq!(x as u128 * x as u128 + y as u128 * y as u128, p as u128);
    }
    let p = 1_000_000_000_000_000_009u64;
    if is_prime_u64(p) && p % 4 == 1 {
        let (x, y) = two_squares_prime_u64(p).unwrap();
        assert_eq!(x as u128 * x as u128 + y as u128 * y as u128, p as u128);
    }
}

#[test]
fn factorization_round_trips() {
    for n in 1u64..5000 {
        let f = factor_u64(n);
        let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(back, n);
        assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
    }
    let n = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64) * BigUint::from(97u32);
    let f = factor_biguint(&n, FactorBudget::default()).unwrap();
    let back = f.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
    assert_eq!(back, n);
}

#[test]
fn factorization_budget_is_reported() {
    let n = ((BigUint::one() << 61) - 1u32) * ((BigUint::one() << 31) - 1u32);
    let tiny = FactorBudget { rho_iterations: 10 };
    assert!(matches!(factor_biguint(&n, tiny), Err(NumthError::FactorizationTimeout)));
}
