//! Lattice-point experiments: ring and segment projection counts, angle
//! uniformity, spherical-cap volume and the exclusion zone around Paulis.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::numth::{isqrt_u128, is_prime_u64, two_squares_decompose, visit_s4, NumthError};

/// Enumeration budget for ring and segment counts: `Δ·p^{L/2}`.
pub const RING_BUDGET: f64 = 1e8;
/// Largest sum-of-two-squares sieve; bigger ranges use factorization.
const SIEVE_LIMIT: u128 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("ring requires a prime p ≡ 1 (mod 4), got {0}")]
    BadPrime(u64),
    #[error("Delta must be finite and > 1, got {0}")]
    BadDelta(f64),
    #[error("ring too large for the enumeration budget")]
    BudgetExceeded,
    #[error("empty sample")]
    EmptySample,
    #[error(transparent)]
    Numth(#[from] NumthError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Population {
    /// Points of the ring `(√N - Δ)² < x² + y² < N`.
    #[default]
    Ring,
    /// Points of the disk `x² + y² ≤ N`.
    Disk,
}

/// `R(N, Δ)` for `N = p^L`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RingSpec {
    pub p: u64,
    pub level: u32,
    pub delta: f64,
}

impl RingSpec {
    pub fn new(p: u64, level: u32, delta: f64) -> Result<Self, GeomError> {
        if !is_prime_u64(p) || p % 4 != 1 {
            return Err(GeomError::BadPrime(p));
        }
        if !(delta.is_finite() && delta > 1.0) {
            return Err(GeomError::BadDelta(delta));
        }
        let spec = Self { p, level, delta };
        spec.n().ok_or(GeomError::BudgetExceeded)?;
        Ok(spec)
    }

    pub fn n(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.level)
    }

    /// Whether `2·Δ·p^{L/2} < p^L`.
    pub fn in_window(&self) -> bool {
        let n = self.n().unwrap_or(u128::MAX) as f64;
        2.0 * self.delta * n.sqrt() < n
    }
}

/// Ring intersected with the half-plane `x cos t + y sin t > √N - Δ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SegmentSpec {
    pub ring: RingSpec,
    pub tangent_angle: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ProjectionCounts {
    pub grid_points: u64,
    pub projection_points: u64,
}

impl ProjectionCounts {
    pub fn ratio(&self) -> f64 {
        if self.grid_points == 0 {
            0.0
        } else {
            self.projection_points as f64 / self.grid_points as f64
        }
    }
}

/// `x = M / 2^k` exactly.
fn dyadic(x: f64) -> (BigInt, u32) {
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    if e >= 0 {
        (BigInt::from(mant) << e as usize, 0)
    } else {
        (BigInt::from(mant), (-e) as u32)
    }
}

/// Exact test of `m > (√N - Δ)²`.
struct InnerBound {
    n: BigInt,
    m_delta: BigInt,
    k: u32,
}

impl InnerBound {
    fn new(n: u128, delta: f64) -> Self {
        let (m_delta, k) = dyadic(delta);
        Self {
            n: BigInt::from(n),
            m_delta,
            k,
        }
    }

    /// `m > N - 2Δ√N + Δ²` ⇔ `2Δ√N > N + Δ² - m`. Scaled by `4^k`:
    /// `2·M·2^k·√N > T` with `T = (N - m)·4^k + M²`.
    fn above(&self, m: u128) -> bool {
        let t: BigInt = (&self.n - BigInt::from(m)) * (BigInt::from(1) << (2 * self.k) as usize)
            + &self.m_delta * &self.m_delta;
        if t.is_negative() {
            return true;
        }
        let lhs = &self.m_delta * &self.m_delta * (BigInt::from(1) << (2 * self.k) as usize) * 4 * &self.n;
        lhs > &t * &t
    }

    /// Smallest integer `m` with `m > (√N - Δ)²`.
    fn min_m(&self, estimate: f64) -> u128 {
        let mut m = estimate.max(0.0).floor() as u128;
        while m > 0 && self.above(m - 1) {
            m -= 1;
        }
        while !self.above(m) {
            m += 1;
        }
        m
    }
}

/// Sum-of-two-squares membership for `0..=limit`.
fn two_squares_sieve(limit: u128) -> Vec<bool> {
    let n = limit as usize;
    let mut out = vec![false; n + 1];
    let mut a = 0usize;
    while a * a <= n {
        let mut b = a;
        while a * a + b * b <= n {
            out[a * a + b * b] = true;
            b += 1;
        }
        a += 1;
    }
    out
}

fn ceil_sqrt(n: u128) -> u128 {
    let r = isqrt_u128(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Membership oracle for `N - m`, with `N - m ≤ span`.
enum Representable {
    Sieve(Vec<bool>),
    Exact,
}

impl Representable {
    fn new(span: u128) -> Self {
        if span <= SIEVE_LIMIT {
            Representable::Sieve(two_squares_sieve(span))
        } else {
            Representable::Exact
        }
    }

    fn test(&self, k: u128) -> Result<bool, GeomError> {
        match self {
            Representable::Sieve(s) => Ok(s[k as usize]),
            Representable::Exact => match two_squares_decompose(&BigInt::from(k)) {
                Ok(_) => Ok(true),
                Err(NumthError::NotRepresentable) => Ok(false),
                Err(e) => Err(e.into()),
            },
        }
    }
}

/// Visits the ring (or disk) points as `(x, y, is_projection)`.
fn visit_points(
    spec: &RingSpec,
    population: Population,
    mut f: impl FnMut(i64, i64, bool),
) -> Result<(), GeomError> {
    let n = spec.n().ok_or(GeomError::BudgetExceeded)?;
    let sqrt_n = (n as f64).sqrt();
    let m_min = match population {
        Population::Ring => {
            if spec.delta * sqrt_n > RING_BUDGET {
                return Err(GeomError::BudgetExceeded);
            }
            InnerBound::new(n, spec.delta).min_m((sqrt_n - spec.delta).powi(2))
        }
        Population::Disk => {
            if n as f64 > RING_BUDGET {
                return Err(GeomError::BudgetExceeded);
            }
            0
        }
    };
    // Ring: x² + y² ≤ N - 1. Disk: x² + y² ≤ N.
    let m_max = match population {
        Population::Ring => n - 1,
        Population::Disk => n,
    };
    if m_min > m_max {
        return Ok(());
    }
    let oracle = Representable::new(n - m_min);
    let r = isqrt_u128(m_max) as i64;
    for x in -r..=r {
        let xx = (x as i128 * x as i128) as u128;
        let y_max = isqrt_u128(m_max - xx);
        let y_min = ceil_sqrt(m_min.saturating_sub(xx));
        if y_min > y_max {
            continue;
        }
        for ya in y_min..=y_max {
            let m = xx + ya * ya;
            let proj = oracle.test(n - m)?;
            let ya = ya as i64;
            f(x, ya, proj);
            if ya != 0 {
                f(x, -ya, proj);
            }
        }
    }
    Ok(())
}

/// Grid and projection counts for the ring `R(N, Δ)`.
pub fn count_ring_projections(spec: &RingSpec) -> Result<ProjectionCounts, GeomError> {
    let mut c = ProjectionCounts::default();
    visit_points(spec, Population::Ring, |_, _, proj| {
        c.grid_points += 1;
        c.projection_points += proj as u64;
    })?;
    Ok(c)
}

/// Counts restricted to the segment cut off by the tangent half-plane.
pub fn count_segment_projections(spec: &SegmentSpec) -> Result<ProjectionCounts, GeomError> {
    let n = spec.ring.n().ok_or(GeomError::BudgetExceeded)? as f64;
    let cut = n.sqrt() - spec.ring.delta;
    let (st, ct) = spec.tangent_angle.sin_cos();
    let mut c = ProjectionCounts::default();
    visit_points(&spec.ring, Population::Ring, |x, y, proj| {
        if x as f64 * ct + y as f64 * st > cut {
            c.grid_points += 1;
            c.projection_points += proj as u64;
        }
    })?;
    Ok(c)
}

/// Polar angles in `[0, 2π)` of the projection points of a population.
pub fn projection_angles(spec: &RingSpec, population: Population) -> Result<Vec<f64>, GeomError> {
    let mut out = Vec::new();
    visit_points(spec, population, |x, y, proj| {
        if proj {
            out.push((y as f64).atan2(x as f64).rem_euclid(2.0 * PI));
        }
    })?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsResult {
    pub d: f64,
    pub p_value: f64,
}

/// Kolmogorov survival function `Q(λ) = P(K > λ)`.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // Theta-function form, fast for small λ.
        let c = PI * PI / (8.0 * lambda * lambda);
        let s: f64 = (0..20)
            .map(|j| {
                let k = (2 * j + 1) as f64;
                (-k * k * c).exp()
            })
            .sum();
        (1.0 - (2.0 * PI).sqrt() / lambda * s).clamp(0.0, 1.0)
    } else {
        let s: f64 = (1..=100)
            .map(|k| {
                let k = k as f64;
                let sign = if k as i64 % 2 == 1 { 1.0 } else { -1.0 };
                sign * (-2.0 * k * k * lambda * lambda).exp()
            })
            .sum();
        (2.0 * s).clamp(0.0, 1.0)
    }
}

/// One-sample two-sided KS test against the uniform law on `[0, 2π)`.
///
/// The p-value is the asymptotic Kolmogorov tail at `λ = √n·D`, accurate
/// for roughly `n ≥ 35`.
pub fn ks_uniformity(angles: &[f64]) -> Result<KsResult, GeomError> {
    if angles.is_empty() {
        return Err(GeomError::EmptySample);
    }
    let mut xs: Vec<f64> = angles
        .iter()
        .map(|a| (a / (2.0 * PI)).clamp(0.0, 1.0))
        .collect();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let d = xs
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max);
    Ok(KsResult {
        d,
        p_value: kolmogorov_q(n.sqrt() * d),
    })
}

/// Volume of the cap `C_ε` on the 3-sphere of radius `R`:
/// `2πR³(ψ - ½ sin 2ψ)` with `ψ = arccos(1 - ε²)`.
pub fn cap_volume(radius: f64, epsilon: f64) -> f64 {
    let psi = (1.0 - epsilon * epsilon).acos();
    2.0 * PI * radius.powi(3) * (psi - 0.5 * (2.0 * psi).sin())
}

/// Leading term `8π√2 ε³ R³ / 3` of [`cap_volume`].
pub fn cap_volume_leading(radius: f64, epsilon: f64) -> f64 {
    8.0 * PI * 2f64.sqrt() * epsilon.powi(3) * radius.powi(3) / 3.0
}

/// Minimum trace distance from each Pauli (`I, X, Y, Z`) over the level-`L`
/// exact points other than that Pauli itself.
pub fn min_distance_to_each_pauli(level: u32) -> Result<[f64; 4], GeomError> {
    let n = 5u64
        .checked_pow(level)
        .filter(|&n| n <= crate::numth::DEFAULT_S4_CAP)
        .ok_or(GeomError::BudgetExceeded)?;
    let s = (n as f64).sqrt();
    let s_int = isqrt_u128(n as u128) as i64;
    let square = s_int * s_int == n as i64;
    let mut best = [f64::INFINITY; 4];
    visit_s4(n, crate::numth::DEFAULT_S4_CAP, |q| {
        for (k, slot) in best.iter_mut().enumerate() {
            let c = q[k].abs();
            if square && c == s_int {
                continue;
            }
            // 1 - |c|/s computed as (s - |c|)/s to keep precision.
            let d = ((s - c as f64) / s).max(0.0).sqrt();
            if d < *slot {
                *slot = d;
            }
        }
    })?;
    Ok(best)
}

/// Minimum trace distance from the identity over the non-identity level-`L`
/// exact points.
pub fn min_distance_to_pauli(level: u32) -> Result<f64, GeomError> {
    Ok(min_distance_to_each_pauli(level)?[0])
}

/// Row of the conjecture report.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureRow {
    pub p: u64,
    pub level: u32,
    pub delta: f64,
    pub grid_points: u64,
    pub projection_points: u64,
    pub ratio: f64,
    pub ks_d: f64,
    pub ks_p: f64,
}

/// Ring counts plus the KS test on projection angles.
pub fn conjecture_row(spec: &RingSpec, population: Population) -> Result<ConjectureRow, GeomError> {
    let counts = count_ring_projections(spec)?;
    let angles = projection_angles(spec, population)?;
    let ks = ks_uniformity(&angles)?;
    Ok(ConjectureRow {
        p: spec.p,
        level: spec.level,
        delta: spec.delta,
        grid_points: counts.grid_points,
        projection_points: counts.projection_points,
        ratio: counts.ratio(),
        ks_d: ks.d,
        ks_p: ks.p_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_ring(n: i64, delta: f64) -> ProjectionCounts {
        let inner = ((n as f64).sqrt() - delta).powi(2);
        let r = (n as f64).sqrt() as i64 + 1;
        let mut c = ProjectionCounts::default();
        for x in -r..=r {
            for y in -r..=r {
                let m = x * x + y * y;
                if (m as f64) > inner && m < n {
                    c.grid_points += 1;
                    let k = n - m;
                    let rep = (0..=k).take_while(|a| a * a <= k).any(|a| {
                        let b = ((k - a * a) as f64).sqrt().round() as i64;
                        b * b == k - a * a
                    });
                    c.projection_points += rep as u64;
                }
            }
        }
        c
    }

    #[test]
    fn ring_matches_brute_force() {
        for (l, delta) in [(2u32, 4.0), (4, 4.0), (4, 2.5), (3, 1.5)] {
            let spec = RingSpec::new(5, l, delta).unwrap();
            let got = count_ring_projections(&spec).unwrap();
            assert_eq!(got, brute_ring(5i64.pow(l), delta), "L = {l}, Δ = {delta}");
        }
    }

    #[test]
    fn inner_bound_is_exact() {
        // N = 625, Δ = 5: (25 - 5)² = 400, so 400 itself is excluded.
        let b = InnerBound::new(625, 5.0);
        assert!(!b.above(400));
        assert!(b.above(401));
        assert_eq!(b.min_m(399.7), 401);
    }

    #[test]
    fn segment_symmetry() {
        let ring = RingSpec::new(5, 4, 4.0).unwrap();
        let a = count_segment_projections(&SegmentSpec { ring, tangent_angle: 0.3 }).unwrap();
        let b = count_segment_projections(&SegmentSpec {
            ring,
            tangent_angle: 0.3 + PI / 2.0,
        })
        .unwrap();
        assert_eq!(a.grid_points, b.grid_points);
        let full = count_ring_projections(&ring).unwrap();
        assert!(a.grid_points <= full.grid_points);
    }

    #[test]
    fn ks_examples() {
        let one = ks_uniformity(&[PI]).unwrap();
        assert!((one.d - 0.5).abs() < 1e-15);
        let grid: Vec<f64> = (0..1000).map(|k| 2.0 * PI * k as f64 / 1000.0).collect();
        let g = ks_uniformity(&grid).unwrap();
        assert!((g.d - 1e-3).abs() < 1e-12);
        assert!(g.p_value > 0.999);
        let zeros = ks_uniformity(&[0.0; 100]).unwrap();
        assert_eq!(zeros.d, 1.0);
        assert!(zeros.p_value < 1e-12);
        assert_eq!(ks_uniformity(&[]), Err(GeomError::EmptySample));
    }

    #[test]
    fn kolmogorov_branches_agree() {
        for lam in [1.0, 1.1, 1.18, 1.25] {
            let c = PI * PI / (8.0 * lam * lam);
            let theta: f64 = 1.0
                - (2.0 * PI).sqrt() / lam
                    * (0..40).map(|j| (-(2 * j + 1) as f64 * (2 * j + 1) as f64 * c).exp()).sum::<f64>();
            let alt: f64 = 2.0
                * (1..200)
                    .map(|k| {
                        let s = if k % 2 == 1 { 1.0 } else { -1.0 };
                        s * (-2.0 * (k * k) as f64 * lam * lam).exp()
                    })
                    .sum::<f64>();
            assert!((theta - alt).abs() < 1e-12);
            assert!((kolmogorov_q(lam) - alt).abs() < 1e-12);
        }
    }

    #[test]
    fn cap_examples() {
        let v = cap_volume(1.0, 0.1);
        let lead = cap_volume_leading(1.0, 0.1);
        assert!((lead - 0.011848).abs() < 5e-7);
        assert!(((v - lead) / lead).abs() < 0.01);
        assert!(cap_volume(1.0, 1e-6) < 1e-16);
    }

    #[test]
    fn pauli_exclusion_small_levels() {
        assert_eq!(min_distance_to_pauli(0).unwrap(), 1.0);
        let d2 = min_distance_to_pauli(2).unwrap();
        assert!((d2 - 0.2f64.sqrt()).abs() < 1e-15);
    }
}
