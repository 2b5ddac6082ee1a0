//! Four-square counts and enumeration.

use super::factor::factor_u64;
use super::NumthError;

/// Default enumeration cap for [`enumerate_s4`] and [`visit_s4`]: `5^9`.
pub const DEFAULT_S4_CAP: u64 = 1_953_125;

/// Jacobi's count `r4(n) = 8 Σ_{d | n, 4 ∤ d} d` of ordered signed tuples.
pub fn r4_count(n: u64) -> u128 {
    if n == 0 {
        return 1;
    }
    // σ over divisors not divisible by 4: the odd part's σ times (1 + 2) if
    // 2 | n, else 1.
    let mut sigma_odd: u128 = 1;
    let mut two_part = 1u128;
    for (p, e) in factor_u64(n) {
        if p == 2 {
            two_part = 3;
            continue;
        }
        let p = p as u128;
        let mut s = 0u128;
        let mut pk = 1u128;
        for _ in 0..=e {
            s += pk;
            pk *= p;
        }
        sigma_odd *= s;
    }
    8 * sigma_odd * two_part
}

/// Integer square root for `u64`.
pub(crate) fn isqrt_u64(n: u64) -> u64 {
    super::primality::isqrt_u128(n as u128) as u64
}

/// All signed pairs `(z, w)` with `z² + w² = m`, for every `m ≤ n`, in
/// compressed-row form.
struct PairTable {
    offsets: Vec<u32>,
    pairs: Vec<(i32, i32)>,
}

impl PairTable {
    fn build(n: u64) -> Self {
        let n_us = n as usize;
        let r = isqrt_u64(n) as i64;
        let mut counts = vec![0u32; n_us + 2];
        for z in -r..=r {
            let rest = n as i64 - z * z;
            let wmax = isqrt_u64(rest as u64) as i64;
            for w in -wmax..=wmax {
                counts[(z * z + w * w) as usize + 1] += 1;
            }
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let mut fill = counts.clone();
        let mut pairs = vec![(0i32, 0i32); counts[n_us + 1] as usize];
        for z in -r..=r {
            let rest = n as i64 - z * z;
            let wmax = isqrt_u64(rest as u64) as i64;
            for w in -wmax..=wmax {
                let m = (z * z + w * w) as usize;
                pairs[fill[m] as usize] = (z as i32, w as i32);
                fill[m] += 1;
            }
        }
        Self {
            offsets: counts,
            pairs,
        }
    }

    fn get(&self, m: u64) -> &[(i32, i32)] {
        let m = m as usize;
        &self.pairs[self.offsets[m] as usize..self.offsets[m + 1] as usize]
    }
}

/// Calls `f` on every ordered signed `(x, y, z, w)` with
/// `x² + y² + z² + w² = n`, without materializing the list.
pub fn visit_s4(n: u64, cap: u64, mut f: impl FnMut([i64; 4])) -> Result<(), NumthError> {
    if n > cap {
        return Err(NumthError::CapExceeded { n, cap });
    }
    let table = PairTable::build(n);
    let r = isqrt_u64(n) as i64;
    for x in -r..=r {
        let rest = n - (x * x) as u64;
        let ymax = isqrt_u64(rest) as i64;
        for y in -ymax..=ymax {
            let m = rest - (y * y) as u64;
            for &(z, w) in table.get(m) {
                f([x, y, z as i64, w as i64]);
            }
        }
    }
    Ok(())
}

/// Every ordered signed `(x, y, z, w)` with `x² + y² + z² + w² = n`.
pub fn enumerate_s4(n: u64, cap: u64) -> Result<Vec<[i64; 4]>, NumthError> {
    if n > cap {
        return Err(NumthError::CapExceeded { n, cap });
    }
    let mut out = Vec::with_capacity(r4_count(n.max(1)) as usize);
    visit_s4(n, cap, |t| out.push(t))?;
    Ok(out)
}
