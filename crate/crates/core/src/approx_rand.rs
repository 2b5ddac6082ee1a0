//! Randomized approximation of Z rotations, and of general unitaries through
//! a Z–X–Z Euler split.
//!
//! For `Rz(θ) = cos(θ/2) I + i sin(θ/2) Z` at level `L` (scale `s = 5^{L/2}`)
//! the search looks for integers `(x, b, c, z)` with
//! `x² + b² + c² + z² = 5^L` and `(x cos(θ/2) + z sin(θ/2)) / s > 1 - ε²`,
//! which is exactly `dist < ε`. The `z` coordinate is drawn at random from a
//! window of width about `2√2 ε s`; for each `z` every admissible `x` is
//! scanned and `5^L - x² - z²` is split into two squares.

use std::collections::HashSet;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::{Circuit, GateToken};
use crate::exact::exact_synthesize_quaternion;
use crate::numth::{is_prime_u128, isqrt_u128, two_squares_decompose, two_squares_prime};
use crate::quat::LipschitzQuaternion;
use crate::result::ApproxResult;
use crate::unitary::{trace_distance, UnitVector4};

/// Highest level the `i128` search arithmetic supports (`5^54 < 2^127`).
pub const MAX_LEVEL: u32 = 54;

/// Above this many candidates the window is sampled with a visited set
/// instead of an explicit shuffled list.
const SHUFFLE_LIMIT: i128 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RandError {
    #[error("precision {0} is not below 2*5^-4")]
    EpsilonTooLarge(f64),
    #[error("precision {0} must lie in (0, 1)")]
    BadPrecision(f64),
    #[error("search window exhausted at level {level}")]
    WindowExhausted { level: u32 },
    #[error("level {0} exceeds the supported maximum {MAX_LEVEL}")]
    LevelTooLarge(u32),
    #[error("non-finite angle")]
    BadAngle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CompletionMode {
    /// Only even `x, z`, and `5^L - x² - z²` must be prime.
    #[default]
    Prime,
    /// Any `x, z`; the remainder goes through the general two-squares split.
    General,
}

#[derive(Clone, Copy, Debug)]
pub struct RandConfig {
    pub mode: CompletionMode,
    /// Number of `L ← L + 1` retries after an exhausted window.
    pub max_escalations: u32,
}

impl Default for RandConfig {
    fn default() -> Self {
        Self {
            mode: CompletionMode::Prime,
            max_escalations: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Rotation `cos(θ/2) I + i sin(θ/2) P` about `axis`, with `θ ∈ (-π, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationTarget {
    pub axis: Axis,
    pub theta: f64,
}

impl RotationTarget {
    pub fn new(axis: Axis, theta: f64) -> Result<Self, RandError> {
        if !theta.is_finite() {
            return Err(RandError::BadAngle);
        }
        Ok(Self {
            axis,
            theta: reduce_angle(theta),
        })
    }

    pub fn unit_vector(&self) -> UnitVector4 {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let v = match self.axis {
            Axis::X => [c, s, 0.0, 0.0],
            Axis::Y => [c, 0.0, s, 0.0],
            Axis::Z => [c, 0.0, 0.0, s],
        };
        UnitVector4::from_components(v[0], v[1], v[2], v[3])
    }
}

/// `θ` reduced to `(-π, π]`.
pub fn reduce_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// The random-sampling window for the `Z` coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchWindow {
    pub level: u32,
    pub phi: f64,
    /// Smallest integer inside the open interval.
    pub w_lo: BigInt,
    /// Largest integer inside the open interval.
    pub w_hi: BigInt,
}

/// `4 log5(2/ε)`, snapped to the nearest integer when within `1e-9`.
fn four_log5(x: f64) -> (f64, bool) {
    let v = 4.0 * x.ln() / 5f64.ln();
    let r = v.round();
    if (v - r).abs() < 1e-9 {
        (r, true)
    } else {
        (v, false)
    }
}

/// Largest `L` with `ε < 2·5^{-L/4}`.
pub fn choose_level(epsilon: f64) -> Result<u32, RandError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(RandError::BadPrecision(epsilon));
    }
    if epsilon >= 2.0 * 5f64.powi(-4) {
        return Err(RandError::EpsilonTooLarge(epsilon));
    }
    let (x, exact) = four_log5(2.0 / epsilon);
    let level = if exact { x - 1.0 } else { x.floor() };
    Ok(level as u32)
}

fn pow5(level: u32) -> i128 {
    5i128.pow(level)
}

/// `I_w = (s sin(θ/2 - φ), s sin(θ/2 + φ))` with `φ = √2 ε (1 - ε²/4)`.
pub fn search_window(theta: f64, epsilon: f64, level: u32) -> SearchWindow {
    let phi = std::f64::consts::SQRT_2 * epsilon * (1.0 - epsilon * epsilon / 4.0);
    let s = (pow5(level) as f64).sqrt();
    let lo = s * (theta / 2.0 - phi).sin();
    let hi = s * (theta / 2.0 + phi).sin();
    // Integers strictly inside (lo, hi).
    let mut w_lo = lo.ceil() as i128;
    if (w_lo as f64) <= lo {
        w_lo += 1;
    }
    let mut w_hi = hi.floor() as i128;
    if (w_hi as f64) >= hi {
        w_hi -= 1;
    }
    SearchWindow {
        level,
        phi,
        w_lo: w_lo.into(),
        w_hi: w_hi.into(),
    }
}

/// Random order over the integers of `[lo, hi]` (even ones only if
/// `even_only`), without replacement.
enum Sampler {
    Shuffle { items: Vec<i128>, next: usize },
    Sparse { lo: i128, count: i128, step: i128, seen: HashSet<i128> },
}

impl Sampler {
    fn new(lo: i128, hi: i128, even_only: bool) -> Self {
        let (lo, step) = if even_only {
            (lo + lo.rem_euclid(2), 2)
        } else {
            (lo, 1)
        };
        let count = if hi < lo { 0 } else { (hi - lo) / step + 1 };
        if count <= SHUFFLE_LIMIT {
            Sampler::Shuffle {
                items: (0..count).map(|k| lo + k * step).collect(),
                next: 0,
            }
        } else {
            Sampler::Sparse {
                lo,
                count,
                step,
                seen: HashSet::new(),
            }
        }
    }

    fn next(&mut self, rng: &mut ChaCha8Rng) -> Option<i128> {
        match self {
            Sampler::Shuffle { items, next } => {
                if *next >= items.len() {
                    return None;
                }
                let j = rng.random_range(*next..items.len());
                items.swap(*next, j);
                *next += 1;
                Some(items[*next - 1])
            }
            Sampler::Sparse {
                lo,
                count,
                step,
                seen,
            } => {
                if seen.len() as i128 >= *count {
                    return None;
                }
                loop {
                    let k = rng.random_range(0..*count);
                    if seen.insert(k) {
                        return Some(*lo + k * *step);
                    }
                }
            }
        }
    }
}

/// `(x, b, c, z)` at `level` within `epsilon` of `Rz(theta)`, for
/// `|theta| ≤ π/2`.
fn search_level(
    theta: f64,
    epsilon: f64,
    level: u32,
    rng: &mut ChaCha8Rng,
    mode: CompletionMode,
) -> Option<[i128; 4]> {
    let n5 = pow5(level);
    let s = (n5 as f64).sqrt();
    let (sh, ch) = (theta / 2.0).sin_cos();
    let target = UnitVector4::rz(theta);
    let window = search_window(theta, epsilon, level);
    let lo = window.w_lo.to_i128()?;
    let hi = window.w_hi.to_i128()?;
    let even_only = mode == CompletionMode::Prime;
    let mut sampler = Sampler::new(lo, hi, even_only);
    let threshold = s * (1.0 - epsilon * epsilon);
    // Float slack for the x range; the exact check decides.
    let slack = 2.0 + s * 4e-16;
    while let Some(z) = sampler.next(rng) {
        let zz = z * z;
        if zz > n5 {
            continue;
        }
        let x_max = isqrt_u128((n5 - zz) as u128) as i128;
        let x_min_f = ((threshold - z as f64 * sh) / ch - slack).ceil().max(0.0);
        if x_min_f > x_max as f64 {
            continue;
        }
        let mut x = x_min_f as i128;
        if even_only && x % 2 != 0 {
            x += 1;
        }
        let x_step = if even_only { 2 } else { 1 };
        while x <= x_max {
            let rest = n5 - x * x - zz;
            if let Some((b, c)) = complete(rest, mode) {
                let q = [x, b, c, z];
                debug_assert_eq!(q.iter().map(|v| v * v).sum::<i128>(), n5);
                let u = UnitVector4::from_components(
                    x as f64 / s,
                    b as f64 / s,
                    c as f64 / s,
                    z as f64 / s,
                );
                if trace_distance(&u, &target) < epsilon {
                    return Some(q);
                }
            }
            x += x_step;
        }
    }
    None
}

fn complete(rest: i128, mode: CompletionMode) -> Option<(i128, i128)> {
    if rest < 0 {
        return None;
    }
    match mode {
        CompletionMode::Prime => {
            if !is_prime_u128(rest as u128) {
                return None;
            }
            let (b, c) = two_squares_prime(&(rest as u128).into())?;
            Some((b.to_i128()?, c.to_i128()?))
        }
        CompletionMode::General => {
            let t = two_squares_decompose(&BigInt::from(rest)).ok()?;
            Some((t.x.to_i128()?, t.y.to_i128()?))
        }
    }
}

/// Clifford prefix `Rz(kπ/2)` and the residual angle in `[-π/4, π/4]`.
fn split_quarter_turns(theta: f64) -> (Vec<GateToken>, f64) {
    let theta = reduce_angle(theta);
    let k = (theta / FRAC_PI_2).round() as i64;
    let rest = theta - k as f64 * FRAC_PI_2;
    let prefix = match k {
        1 => vec![GateToken::Sd],
        -1 => vec![GateToken::S],
        2 | -2 => vec![GateToken::Z],
        _ => vec![],
    };
    (prefix, rest)
}

/// Circuit for `Rz(theta)` with the leg searched at precision `epsilon`,
/// starting at `level` and escalating per `cfg`. Returns the circuit and the
/// level the leg used (0 for a Clifford-only circuit).
fn rz_circuit(
    theta: f64,
    epsilon: f64,
    level: u32,
    seed: u64,
    cfg: &RandConfig,
) -> Result<(Circuit, u32), RandError> {
    let (prefix, rest) = split_quarter_turns(theta);
    let mut circuit = Circuit::from_tokens(prefix);
    let residual = UnitVector4::rz(rest);
    if trace_distance(&residual, &UnitVector4::identity()) < epsilon {
        return Ok((circuit, 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut l = level;
    for _ in 0..=cfg.max_escalations {
        if l > MAX_LEVEL {
            return Err(RandError::LevelTooLarge(l));
        }
        if let Some([x, b, c, z]) = search_level(rest, epsilon, l, &mut rng, cfg.mode) {
            let q = LipschitzQuaternion::new(x, b, c, z);
            let leg = exact_synthesize_quaternion(&q).expect("norm is 5^L by construction");
            circuit.extend_from(&leg);
            return Ok((circuit, l));
        }
        l += 1;
    }
    Err(RandError::WindowExhausted { level: l - 1 })
}

fn finish(circuit: Circuit, target: &UnitVector4, level: u32, seed: u64, start: Instant) -> ApproxResult {
    let achieved_distance = trace_distance(&circuit.evaluate(), target);
    ApproxResult {
        circuit,
        achieved_distance,
        level,
        elapsed: start.elapsed(),
        seed: Some(seed),
    }
}

/// Approximates `Rz(theta)` within `epsilon` with the default configuration.
pub fn approx_rz(theta: f64, epsilon: f64, seed: u64) -> Result<ApproxResult, RandError> {
    approx_rz_with(theta, epsilon, seed, &RandConfig::default())
}

pub fn approx_rz_with(
    theta: f64,
    epsilon: f64,
    seed: u64,
    cfg: &RandConfig,
) -> Result<ApproxResult, RandError> {
    if !theta.is_finite() {
        return Err(RandError::BadAngle);
    }
    let start = Instant::now();
    let level = choose_level(epsilon)?;
    let (circuit, used) = rz_circuit(theta, epsilon, level, seed, cfg)?;
    let out = finish(circuit, &UnitVector4::rz(theta), used, seed, start);
    debug_assert!(out.achieved_distance < epsilon);
    Ok(out)
}

/// Single search at a fixed `level` with precision `2·5^{-level/4}` and no
/// escalation.
pub fn approx_rz_at_level(
    theta: f64,
    level: u32,
    seed: u64,
    mode: CompletionMode,
) -> Result<ApproxResult, RandError> {
    let epsilon = 2.0 * 5f64.powf(-(level as f64) / 4.0);
    if epsilon >= 1.0 {
        return Err(RandError::BadPrecision(epsilon));
    }
    let start = Instant::now();
    let cfg = RandConfig {
        mode,
        max_escalations: 0,
    };
    let (circuit, used) = rz_circuit(theta, epsilon, level, seed, &cfg)?;
    Ok(finish(circuit, &UnitVector4::rz(theta), used, seed, start))
}

/// Rotation about any axis. X legs are conjugated by H and Y legs by
/// `Sd · H … H · S`.
pub fn approx_rotation(
    target: RotationTarget,
    epsilon: f64,
    seed: u64,
) -> Result<ApproxResult, RandError> {
    let start = Instant::now();
    let cfg = RandConfig::default();
    let level = choose_level(epsilon)?;
    let (leg, used) = rz_circuit(target.theta, epsilon, level, seed, &cfg)?;
    let circuit = match target.axis {
        Axis::Z => leg,
        Axis::X => conjugate_by_h(&leg),
        Axis::Y => {
            let mut c = Circuit::from_tokens(vec![GateToken::Sd]);
            c.extend_from(&conjugate_by_h(&leg));
            c.push(GateToken::S);
            c
        }
    };
    Ok(finish(circuit, &target.unit_vector(), used, seed, start))
}

fn conjugate_by_h(leg: &Circuit) -> Circuit {
    if leg.is_empty() {
        return Circuit::new();
    }
    let mut c = Circuit::from_tokens(vec![GateToken::H]);
    c.extend_from(leg);
    c.push(GateToken::H);
    c
}

/// Z–X–Z Euler angles `(a, b, c)` with `g = Rz(a) · Rx(b) · Rz(c)`.
///
/// `b` is `None` when `|sin(b/2)| < 1e-12`; then `g = Rz(a + c)` and the
/// whole rotation is returned in `a`.
pub fn euler_zxz(g: &UnitVector4) -> (f64, Option<f64>, f64) {
    let [w, x, y, z] = g.components();
    let cb = (w * w + z * z).sqrt();
    let sb = (x * x + y * y).sqrt();
    let plus = z.atan2(w);
    if sb < 1e-12 {
        return (2.0 * plus, None, 0.0);
    }
    let minus = y.atan2(x);
    let b = 2.0 * sb.atan2(cb);
    (plus + minus, Some(b), plus - minus)
}

fn leg_seed(seed: u64, leg: u64) -> u64 {
    let mut z = seed ^ leg.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Approximates an arbitrary PSU(2) element within `epsilon`.
///
/// Each Euler leg is searched at precision `ε/3`, starting from the level
/// chosen for `ε`. The reported level is the sum of the leg levels.
pub fn approx_unitary(g: &UnitVector4, epsilon: f64, seed: u64) -> Result<ApproxResult, RandError> {
    approx_unitary_with(g, epsilon, seed, &RandConfig::default())
}

pub fn approx_unitary_with(
    g: &UnitVector4,
    epsilon: f64,
    seed: u64,
    cfg: &RandConfig,
) -> Result<ApproxResult, RandError> {
    let start = Instant::now();
    let level = choose_level(epsilon)?;
    let leg_eps = epsilon / 3.0;
    let (a, b, c) = euler_zxz(g);
    let Some(b) = b else {
        let (circuit, used) = rz_circuit(a, epsilon, level, leg_seed(seed, 0), cfg)?;
        return Ok(finish(circuit, g, used, seed, start));
    };
    let (leg_a, la) = rz_circuit(a, leg_eps, level, leg_seed(seed, 0), cfg)?;
    let (leg_b, lb) = rz_circuit(b, leg_eps, level, leg_seed(seed, 1), cfg)?;
    let (leg_c, lc) = rz_circuit(c, leg_eps, level, leg_seed(seed, 2), cfg)?;
    let mut circuit = leg_a;
    circuit.extend_from(&conjugate_by_h(&leg_b));
    circuit.extend_from(&leg_c);
    Ok(finish(circuit, g, la + lb + lc, seed, start))
}
