//! Sums of two squares: prime decomposition, general decomposition through
//! factorization, and a cheap necessary-condition filter.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor::{factor_biguint, FactorBudget};
use super::primality::{
    is_prime_u64, is_probable_prime_seeded, isqrt_u128, mul_mod, pow_mod, random_in_range,
};
use super::NumthError;

/// `(x, y)` with `x² + y² = n` for the queried `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSquares {
    pub x: BigInt,
    pub y: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterVerdict {
    Yes,
    No,
    Unknown,
}

/// A square root of -1 modulo a prime `p ≡ 1 (mod 4)`, found by raising
/// random residues to `(p-1)/4`.
pub fn sqrt_minus_one_u64(p: u64) -> Option<u64> {
    if p == 2 {
        return Some(1);
    }
    if p % 4 != 1 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let e = (p - 1) / 4;
    for _ in 0..256 {
        let c = rng.random_range(2..p);
        let t = pow_mod(c, e, p);
        if mul_mod(t, t, p) == p - 1 {
            return Some(t);
        }
    }
    None
}

/// Hermite–Serret descent: Euclid on `(p, r)` stops at the first remainder
/// below `√p`, which is one coordinate.
fn descend_u128(p: u128, r: u128) -> Option<(u128, u128)> {
    let (mut a, mut b) = (p, r);
    while b * b > p {
        let t = a % b;
        a = b;
        b = t;
    }
    let rest = p - b * b;
    let y = isqrt_u128(rest);
    (y * y == rest).then_some((b, y))
}

/// `p = x² + y²` for a prime `p` fitting in 64 bits, `None` when `p ≡ 3 (mod 4)`.
pub fn two_squares_prime_u64(p: u64) -> Option<(u64, u64)> {
    if p == 2 {
        return Some((1, 1));
    }
    let r = sqrt_minus_one_u64(p)?;
    descend_u128(p as u128, r as u128).map(|(x, y)| (x as u64, y as u64))
}

/// `p = x² + y²` for a (probable) prime `p ≡ 1 (mod 4)` of any size.
pub fn two_squares_prime(p: &BigUint) -> Option<(BigUint, BigUint)> {
    if let Some(s) = p.to_u64() {
        return two_squares_prime_u64(s).map(|(x, y)| (x.into(), y.into()));
    }
    let four = BigUint::from(4u32);
    if (p % &four) != BigUint::one() {
        return None;
    }
    let pm1 = p - 1u32;
    let e = &pm1 / &four;
    let seed = (p % BigUint::from(u64::MAX)).to_u64().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    let mut root = None;
    for _ in 0..256 {
        let c = random_in_range(&mut rng, &two, &pm1);
        let t = c.modpow(&e, p);
        if (&t * &t) % p == pm1 {
            root = Some(t);
            break;
        }
    }
    let r = root?;
    let (mut a, mut b) = (p.clone(), r);
    while &b * &b > *p {
        let t = &a % &b;
        a = b;
        b = t;
    }
    let rest = p - &b * &b;
    let y = rest.sqrt();
    (&y * &y == rest).then_some((b, y))
}

/// Gaussian-integer product `(a + bi)(c + di)`.
fn gmul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gpow(base: &(BigInt, BigInt), e: u32) -> (BigInt, BigInt) {
    let mut acc = (BigInt::one(), BigInt::zero());
    for _ in 0..e {
        acc = gmul(&acc, base);
    }
    acc
}

/// Decomposes `n` as `x² + y²`.
///
/// A prime `n` takes the square-root-of-minus-one path directly; otherwise
/// `n` is factored and the prime representations are multiplied as Gaussian
/// integers.
pub fn two_squares_decompose(n: &BigInt) -> Result<TwoSquares, NumthError> {
    two_squares_decompose_with(n, FactorBudget::default())
}

pub fn two_squares_decompose_with(n: &BigInt, budget: FactorBudget) -> Result<TwoSquares, NumthError> {
    if n.is_negative() {
        return Err(NumthError::NotRepresentable);
    }
    if n.is_zero() {
        return Ok(TwoSquares {
            x: BigInt::zero(),
            y: BigInt::zero(),
        });
    }
    let m = n.magnitude();
    if m.bit(0) && (m % 4u32) == BigUint::from(3u32) {
        return Err(NumthError::NotRepresentable);
    }
    if is_probable_prime_seeded(m, 24, 0x7357) {
        let (x, y) = two_squares_prime(m).ok_or(NumthError::NotRepresentable)?;
        return Ok(TwoSquares {
            x: x.into(),
            y: y.into(),
        });
    }
    let factors = factor_biguint(m, budget)?;
    let mut acc = (BigInt::one(), BigInt::zero());
    for (p, e) in &factors {
        let p_mod4 = (p % 4u32).to_u32().unwrap();
        let part = if p_mod4 == 3 {
            if e % 2 == 1 {
                return Err(NumthError::NotRepresentable);
            }
            (BigInt::from(p.clone()).pow(e / 2), BigInt::zero())
        } else if p_mod4 == 2 {
            gpow(&(BigInt::one(), BigInt::one()), *e)
        } else {
            let (x, y) = two_squares_prime(p).ok_or(NumthError::NotRepresentable)?;
            gpow(&(x.into(), y.into()), *e)
        };
        acc = gmul(&acc, &part);
    }
    let out = TwoSquares {
        x: acc.0.abs(),
        y: acc.1.abs(),
    };
    debug_assert_eq!(&out.x * &out.x + &out.y * &out.y, *n);
    Ok(out)
}

/// Small primes `q ≡ 3 (mod 4)` up to `bound`.
pub(crate) fn primes_3_mod_4(bound: u64) -> Vec<u64> {
    (3..=bound)
        .step_by(4)
        .filter(|&q| is_prime_u64(q))
        .collect()
}

/// Reusable two-squares filter for machine-size integers.
///
/// For 64-bit inputs, divisibility by each odd prime `q` is tested as
/// `n · q⁻¹ mod 2^64 ≤ ⌊(2^64 - 1)/q⌋`, and exact division is the same
/// multiplication.
#[derive(Clone, Debug)]
pub struct SquaresFilter {
    /// `(q, q⁻¹ mod 2^64, ⌊(2^64 - 1)/q⌋)` for primes `q ≡ 3 (mod 4)`.
    primes: Vec<(u64, u64, u64)>,
    trial_bound: u64,
}

impl SquaresFilter {
    pub fn new(trial_bound: u64) -> Self {
        let trial_bound = trial_bound.max(2);
        let primes = primes_3_mod_4(trial_bound)
            .into_iter()
            .map(|q| {
                let mut inv = q;
                for _ in 0..5 {
                    inv = inv.wrapping_mul(2u64.wrapping_sub(q.wrapping_mul(inv)));
                }
                (q, inv, u64::MAX / q)
            })
            .collect();
        Self {
            primes,
            trial_bound,
        }
    }

    /// Verdict for a 128-bit input; see [`is_sum_two_squares_filter`].
    pub fn verdict(&self, n: u128) -> FilterVerdict {
        if n == 0 {
            return FilterVerdict::Yes;
        }
        let exhausted;
        let m: u128 = match u64::try_from(n) {
            Ok(small) => {
                let mut m = small >> small.trailing_zeros();
                if m % 4 == 3 {
                    return FilterVerdict::No;
                }
                let mut ex = true;
                for &(q, inv, lim) in &self.primes {
                    if q.checked_mul(q).is_none_or(|qq| qq > m) {
                        ex = false;
                        break;
                    }
                    let mut odd = false;
                    loop {
                        let t = m.wrapping_mul(inv);
                        if t > lim {
                            break;
                        }
                        m = t;
                        odd = !odd;
                    }
                    if odd {
                        return FilterVerdict::No;
                    }
                }
                exhausted = ex;
                m as u128
            }
            Err(_) => {
                let mut m = n >> n.trailing_zeros();
                if m % 4 == 3 {
                    return FilterVerdict::No;
                }
                let mut ex = true;
                for &(q, _, _) in &self.primes {
                    let q = q as u128;
                    if q * q > m {
                        ex = false;
                        break;
                    }
                    let mut odd = false;
                    while m % q == 0 {
                        m /= q;
                        odd = !odd;
                    }
                    if odd {
                        return FilterVerdict::No;
                    }
                }
                exhausted = ex;
                m
            }
        };
        if m % 4 == 3 {
            return FilterVerdict::No;
        }
        // Every prime q ≡ 3 (mod 4) with q² ≤ m has been divided out, so m
        // keeps at most one such prime, to the first power, and then
        // m ≡ 3 (mod 4). The same holds when m < bound².
        let b = self.trial_bound as u128;
        if m == 1 || !exhausted || m < b * b {
            return FilterVerdict::Yes;
        }
        if super::primality::is_prime_u128(m) {
            return FilterVerdict::Yes;
        }
        FilterVerdict::Unknown
    }
}

/// Cheap test for "n is a sum of two squares".
///
/// `No` is certain: a prime `q ≡ 3 (mod 4)` up to `trial_bound` divides `n`
/// to an odd power, or the odd cofactor is `≡ 3 (mod 4)`. `Yes` needs a
/// complete certificate. Anything else is `Unknown`.
pub fn is_sum_two_squares_filter(n: &BigInt, trial_bound: u64) -> FilterVerdict {
    if n.is_negative() {
        return FilterVerdict::No;
    }
    if let Some(small) = n.to_u128() {
        return SquaresFilter::new(trial_bound).verdict(small);
    }
    let primes3 = primes_3_mod_4(trial_bound.max(2));
    let mut m = n.magnitude().clone();
    let tz = m.trailing_zeros().unwrap_or(0);
    m >>= tz;
    let three = BigUint::from(3u32);
    if &m % 4u32 == three {
        return FilterVerdict::No;
    }
    for q in primes3 {
        let mut odd = false;
        loop {
            let (d, r) = m.div_rem(&BigUint::from(q));
            if !r.is_zero() {
                break;
            }
            m = d;
            odd = !odd;
        }
        if odd {
            return FilterVerdict::No;
        }
    }
    if &m % 4u32 == three {
        return FilterVerdict::No;
    }
    if m.is_one() || is_probable_prime_seeded(&m, 24, 0x7357) {
        return FilterVerdict::Yes;
    }
    FilterVerdict::Unknown
}
