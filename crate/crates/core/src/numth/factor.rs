//! Trial division plus Pollard–Brent rho.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primality::{is_prime_u64, is_probable_prime_seeded, mul_mod};
use super::NumthError;

/// Iteration budget for the rho stage of big-integer factorization.
#[derive(Clone, Copy, Debug)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self {
            rho_iterations: 2_000_000,
        }
    }
}

fn rho_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let m = 128u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    (1..).find_map(|c| rho_u64(n, c)).expect("rho terminates for composite n")
}

/// Complete factorization of a 64-bit integer as sorted `(prime, exponent)`.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut rest = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            primes.push(m);
            continue;
        }
        let d = split_u64(m);
        stack.push(d);
        stack.push(m / d);
    }
    collect_powers(primes)
}

fn collect_powers<T: Ord + Clone>(mut primes: Vec<T>) -> Vec<(T, u32)> {
    primes.sort();
    let mut out: Vec<(T, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn charge(budget: &mut u64, steps: u64) -> Option<()> {
    if *budget < steps {
        *budget = 0;
        return None;
    }
    *budget -= steps;
    Some(())
}

fn rho_big(n: &BigUint, c: u64, budget: &mut u64) -> Option<BigUint> {
    let cb = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &cb) % n;
    let one = BigUint::one();
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = one.clone();
    let mut g = one.clone();
    let mut r = 1u64;
    let m = 64u64;
    let absdiff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    while g.is_one() {
        x = y.clone();
        charge(budget, r)?;
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = m.min(r - k);
            charge(budget, steps)?;
            for _ in 0..steps {
                y = f(&y);
                q = (q * absdiff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = absdiff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
            charge(budget, 1)?;
        }
    }
    (&g != n).then_some(g)
}

/// Factorization of an arbitrary positive integer, giving up with
/// [`NumthError::FactorizationTimeout`] when rho exceeds the budget.
pub fn factor_biguint(n: &BigUint, budget: FactorBudget) -> Result<Vec<(BigUint, u32)>, NumthError> {
    if n.is_zero() {
        return Ok(Vec::new());
    }
    if let Some(small) = n.to_u64() {
        return Ok(factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect());
    }
    let mut primes: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();
    for p in 2u32..10_000 {
        if p > 2 && p % 2 == 0 {
            continue;
        }
        let pb = BigUint::from(p);
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            primes.push(pb.clone());
        }
    }
    let mut left = budget.rho_iterations;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(s) = m.to_u64() {
            primes.extend(factor_u64(s).into_iter().flat_map(|(p, e)| {
                std::iter::repeat_n(BigUint::from(p), e as usize)
            }));
            continue;
        }
        if is_probable_prime_seeded(&m, 32, 0xfac7) {
            primes.push(m);
            continue;
        }
        let mut found = None;
        for c in 1..64u64 {
            match rho_big(&m, c, &mut left) {
                Some(d) => {
                    found = Some(d);
                    break;
                }
                None if left == 0 => return Err(NumthError::FactorizationTimeout),
                None => {}
            }
        }
        let d = found.ok_or(NumthError::FactorizationTimeout)?;
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }
    Ok(collect_powers(primes))
}
