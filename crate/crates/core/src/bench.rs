//! Seeded batch runs over Haar-random targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::approx_direct::{direct_search_with, DirectConfig};
use crate::approx_rand::approx_unitary;
use crate::circuit::GateToken;
use crate::exact::{exact_synthesize, ExactUnitary};
use crate::quat::LipschitzQuaternion;
use crate::unitary::{trace_distance, UnitVector4};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BenchMode {
    Ra,
    Ds,
    ExactRoundtrip,
}

impl BenchMode {
    pub fn name(self) -> &'static str {
        match self {
            BenchMode::Ra => "RA",
            BenchMode::Ds => "DS",
            BenchMode::ExactRoundtrip => "EXACT",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSpec {
    pub count: usize,
    pub eps_list: Vec<f64>,
    pub seed: u64,
    pub mode: BenchMode,
}

/// One row per `(ε, method)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub eps: f64,
    pub method: &'static str,
    pub median_vc: f64,
    pub mean_vc: f64,
    pub worst_vc: usize,
    pub mean_dist: f64,
    pub failures: usize,
}

/// SplitMix64 finalizer of `seed + index`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Haar-random PSU(2) element: a normalized 4-dimensional Gaussian.
pub fn haar_target<R: Rng>(rng: &mut R) -> UnitVector4 {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        if let Ok(u) = UnitVector4::normalized(v[0], v[1], v[2], v[3]) {
            return u;
        }
    }
}

/// `count` Haar targets; target `i` is drawn from its own derived seed.
pub fn haar_targets(count: usize, seed: u64) -> Vec<UnitVector4> {
    (0..count)
        .map(|i| haar_target(&mut ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64))))
        .collect()
}

/// Random product of up to `max_len` generators and units, as a quaternion.
pub fn random_generator_product<R: Rng>(rng: &mut R, max_len: usize) -> LipschitzQuaternion {
    let len = rng.random_range(0..=max_len);
    (0..len).fold(LipschitzQuaternion::one(), |acc, _| {
        let t = GateToken::ALL[rng.random_range(0..9)];
        let [a, b, c, d] = t.integer_quaternion();
        acc.multiply(&LipschitzQuaternion::new(a, b, c, d))
    })
}

/// `(v_count, distance)` per target, `None` for failures.
fn run_one(mode: BenchMode, eps: f64, target: &UnitVector4, seed: u64, ds: &DirectConfig) -> Option<(usize, f64)> {
    match mode {
        BenchMode::Ra => approx_unitary(target, eps, seed)
            .ok()
            .filter(|r| r.achieved_distance < eps)
            .map(|r| (r.v_count(), r.achieved_distance)),
        BenchMode::Ds => direct_search_with(target, eps, ds)
            .ok()
            .filter(|r| r.achieved_distance < eps)
            .map(|r| (r.v_count(), r.achieved_distance)),
        BenchMode::ExactRoundtrip => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = random_generator_product(&mut rng, 20);
            let u = ExactUnitary::new(q).ok()?;
            let c = exact_synthesize(&u);
            let d = trace_distance(&c.evaluate(), &u.to_unit_vector());
            (c.v_count() as u32 <= u.level() && d < 1e-9).then_some((c.v_count(), d))
        }
    }
}

pub fn median(sorted: &[usize]) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => sorted[n / 2] as f64,
        n => (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0,
    }
}

/// Runs the benchmark; rows are sorted by `(ε, method)`.
pub fn run_bench(spec: &BenchSpec) -> Vec<BenchRow> {
    let targets = haar_targets(spec.count, spec.seed);
    let ds = DirectConfig::from_env();
    let mut rows: Vec<BenchRow> = spec
        .eps_list
        .iter()
        .map(|&eps| {
            let outcomes: Vec<Option<(usize, f64)>> = targets
                .par_iter()
                .enumerate()
                .map(|(i, t)| run_one(spec.mode, eps, t, derive_seed(spec.seed ^ 0xa5a5, i as u64), &ds))
                .collect();
            let ok: Vec<(usize, f64)> = outcomes.iter().flatten().copied().collect();
            let mut vcs: Vec<usize> = ok.iter().map(|o| o.0).collect();
            vcs.sort_unstable();
            let n = ok.len().max(1) as f64;
            BenchRow {
                eps,
                method: spec.mode.name(),
                median_vc: median(&vcs),
                mean_vc: vcs.iter().sum::<usize>() as f64 / n,
                worst_vc: vcs.last().copied().unwrap_or(0),
                mean_dist: ok.iter().map(|o| o.1).sum::<f64>() / n,
                failures: outcomes.len() - ok.len(),
            }
        })
        .collect();
    rows.sort_by(|a, b| a.eps.total_cmp(&b.eps).then(a.method.cmp(b.method)));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_are_reproducible() {
        assert_eq!(haar_targets(5, 3), haar_targets(5, 3));
        assert_ne!(haar_targets(1, 3), haar_targets(1, 4));
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[1, 2, 3]), 2.0);
        assert_eq!(median(&[1, 2, 3, 4]), 2.5);
    }

    #[test]
    fn exact_roundtrip_row() {
        let rows = run_bench(&BenchSpec {
            count: 20,
            eps_list: vec![1e-3],
            seed: 1,
            mode: BenchMode::ExactRoundtrip,
        });
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].failures, 0);
    }
}
