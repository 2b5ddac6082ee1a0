use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Uniform integer in `[lo, hi)` by rejection on the bit length of `hi - lo`.
pub(crate) fn random_in_range<R: Rng>(rng: &mut R, lo: &BigUint, hi: &BigUint) -> BigUint {
    let span = hi - lo;
    let bits = span.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask = if bits % 32 == 0 { u32::MAX } else { (1u32 << (bits % 32)) - 1 };
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.random()).collect();
        if let Some(last) = digits.last_mut() {
            *last &= top_mask;
        }
        let x = BigUint::new(digits);
        if x < span {
            return lo + x;
        }
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn mr_witness_u64(n: u64, d: u64, s: u32, a: u64) -> bool {
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return false;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return false;
        }
    }
    true
}

/// Exact primality for 64-bit inputs (Miller–Rabin with the first twelve
/// prime bases, which has no pseudoprimes below 3.3·10^24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    SMALL_PRIMES[..12]
        .iter()
        .all(|&a| !mr_witness_u64(n, d, s, a))
}

/// Miller–Rabin over arbitrary precision with `rounds` bases drawn from a
/// ChaCha stream seeded by `seed`. Inputs below 2^64 are decided exactly.
pub fn is_probable_prime_seeded(n: &BigUint, rounds: u32, seed: u64) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for p in SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let two = BigUint::from(2u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'outer: for _ in 0..rounds.max(1) {
        let a = random_in_range(&mut rng, &two, &n1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Probable-prime test with error at most `4^-rounds` for composites above
/// 2^64; deterministic (fixed internal seed).
pub fn is_probable_prime(n: &BigInt, rounds: u32) -> bool {
    match n.sign() {
        Sign::Minus | Sign::NoSign => false,
        Sign::Plus => is_probable_prime_seeded(n.magnitude(), rounds, 0x5eed_0f_5),
    }
}

pub(crate) fn is_prime_u128(n: u128) -> bool {
    match u64::try_from(n) {
        Ok(s) => is_prime_u64(s),
        Err(_) => is_probable_prime_seeded(&BigUint::from(n), 24, 0x5eed_0f_5),
    }
}

pub(crate) fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).is_none_or(|v| v > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|v| v <= n) {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), trial(n), "n = {n}");
        }
    }

    #[test]
    fn examples() {
        assert!(is_probable_prime(&BigInt::from(5), 20));
        assert!(!is_probable_prime(&BigInt::from(25), 20));
        assert!(!is_probable_prime(&BigInt::from(1_220_703_105u64), 20));
        // Carmichael numbers and a strong pseudoprime to base 2.
        for c in [561u64, 1105, 1729, 2047, 3_215_031_751] {
            assert!(!is_prime_u64(c));
        }
        // 2^89 - 1 and 2^127 - 1 are Mersenne primes; 2^128+1 is composite.
        let m89 = (BigInt::one() << 89) - 1;
        let m127 = (BigInt::one() << 127) - 1;
        assert!(is_probable_prime(&m89, 20));
        assert!(is_probable_prime(&m127, 20));
        assert!(!is_probable_prime(&((BigInt::one() << 128) + 1), 20));
        assert!(is_prime_u128((1u128 << 127) - 1));
    }

    #[test]
    fn integer_sqrt() {
        for n in 0..5000u128 {
            let r = isqrt_u128(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        let big = u128::MAX;
        let r = isqrt_u128(big);
        assert_eq!(r, u64::MAX as u128);
    }
}
