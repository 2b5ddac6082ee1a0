//! Cost model for preparing `|H_i⟩` states by a ladder of probabilistic
//! steps, and for the V gate built on `|H_2⟩`.
//!
//! The walk has states `E` (no state in hand) and `0, 1, …, target` (holding
//! `|H_i⟩`). Buying a fresh `|H_0⟩` moves `E → 0` at cost 1. A step from
//! level `i` consumes one fresh `|H_0⟩` (cost 1) and succeeds with
//! probability `p_i`, moving to `i + 1`. On failure level 0 falls to `E`,
//! level `i ≥ 2` falls to `i - 1`, and level 1 falls to `0` when the returned
//! `|H_0⟩` is reused, or to `E` when it is discarded.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Trials per independently seeded chunk; chunk `k` uses `seed + k`.
pub const CHUNK_TRIALS: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReusePolicy {
    ReuseReturnedH0,
    #[default]
    DiscardOnDescent,
}

impl ReusePolicy {
    pub fn name(self) -> &'static str {
        match self {
            ReusePolicy::ReuseReturnedH0 => "reuse",
            ReusePolicy::DiscardOnDescent => "discard",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LadderConfig {
    pub theta0: f64,
    pub target_level: u32,
    pub trials: u64,
    pub seed: u64,
    pub reuse_policy: ReusePolicy,
}

impl Default for LadderConfig {
    fn default() -> Self {
        Self {
            theta0: FRAC_PI_8,
            target_level: 1,
            trials: 1_000_000,
            seed: 0,
            reuse_policy: ReusePolicy::default(),
        }
    }
}

/// `θ_i` with `tan θ_i = tan^{i+1} θ_0` (equivalently `cot θ_i = cot^{i+1} θ_0`).
pub fn ladder_angle(i: u32, theta0: f64) -> f64 {
    theta0.tan().powi(i as i32 + 1).atan()
}

/// Success probability `cos²θ_i cos²θ_0 + sin²θ_i sin²θ_0` of the step from
/// level `i`.
pub fn ladder_step_prob(i: u32, theta0: f64) -> f64 {
    let ti = ladder_angle(i, theta0);
    let (si, ci) = ti.sin_cos();
    let (s0, c0) = theta0.sin_cos();
    ci * ci * c0 * c0 + si * si * s0 * s0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Empty,
    Level(u32),
}

fn step(state: State, target: u32, probs: &[f64], policy: ReusePolicy, u: f64) -> State {
    match state {
        State::Empty => State::Level(0),
        State::Level(i) => {
            debug_assert!(i < target);
            if u < probs[i as usize] {
                State::Level(i + 1)
            } else {
                match (i, policy) {
                    (0, _) => State::Empty,
                    (1, ReusePolicy::ReuseReturnedH0) => State::Level(0),
                    (1, ReusePolicy::DiscardOnDescent) => State::Empty,
                    (i, _) => State::Level(i - 1),
                }
            }
        }
    }
}

/// Expected `|H_0⟩` cost to reach `target_level` from nothing, by solving the
/// absorbing chain's linear system.
pub fn analytic_ladder_cost(target_level: u32, theta0: f64, policy: ReusePolicy) -> f64 {
    assert!((1..=10).contains(&target_level), "target level must be in 1..=10");
    let probs: Vec<f64> = (0..target_level).map(|i| ladder_step_prob(i, theta0)).collect();
    // Index 0 is E, index i + 1 is level i; the target is absorbing.
    let n = target_level as usize + 1;
    let index = |s: State| match s {
        State::Empty => Some(0),
        State::Level(i) if i < target_level => Some(i as usize + 1),
        State::Level(_) => None,
    };
    let mut a = DMatrix::<f64>::identity(n, n);
    let b = DVector::<f64>::from_element(n, 1.0);
    for row in 0..n {
        let s = if row == 0 {
            State::Empty
        } else {
            State::Level(row as u32 - 1)
        };
        match s {
            State::Empty => a[(row, 1)] -= 1.0,
            State::Level(i) => {
                let p = probs[i as usize];
                if let Some(col) = index(step(s, target_level, &probs, policy, 0.0)) {
                    a[(row, col)] -= p;
                }
                if let Some(col) = index(step(s, target_level, &probs, policy, 1.0)) {
                    a[(row, col)] -= 1.0 - p;
                }
            }
        }
    }
    let x = a.lu().solve(&b).expect("transient chain matrix is nonsingular");
    x[0]
}

#[derive(Clone, Debug, PartialEq)]
pub struct LadderStats {
    pub trials: u64,
    pub mean_h0_cost: f64,
    pub median_h0_cost: u64,
    pub stderr: f64,
    /// Cost → number of trials.
    pub histogram: BTreeMap<u64, u64>,
}

fn run_chunk(cfg: &LadderConfig, probs: &[f64], chunk: u64, trials: u64) -> BTreeMap<u64, u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(chunk));
    let mut hist = BTreeMap::new();
    for _ in 0..trials {
        let mut state = State::Empty;
        let mut cost = 0u64;
        while state != State::Level(cfg.target_level) {
            let u = match state {
                State::Empty => 0.0,
                State::Level(_) => rng.random::<f64>(),
            };
            state = step(state, cfg.target_level, probs, cfg.reuse_policy, u);
            cost += 1;
        }
        *hist.entry(cost).or_insert(0) += 1;
    }
    hist
}

/// Monte Carlo of the walk. Trials are split into chunks of
/// [`CHUNK_TRIALS`]; results do not depend on the number of threads.
pub fn simulate_ladder(cfg: &LadderConfig) -> LadderStats {
    assert!(cfg.trials >= 1, "at least one trial");
    assert!(cfg.target_level >= 1, "target level must be at least 1");
    let probs: Vec<f64> = (0..cfg.target_level)
        .map(|i| ladder_step_prob(i, cfg.theta0))
        .collect();
    let chunks = cfg.trials.div_ceil(CHUNK_TRIALS);
    let histogram = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let n = CHUNK_TRIALS.min(cfg.trials - k * CHUNK_TRIALS);
            run_chunk(cfg, &probs, k, n)
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let n = cfg.trials as f64;
    let (sum, sum_sq) = histogram.iter().fold((0.0, 0.0), |(s, q), (&c, &m)| {
        let c = c as f64;
        let m = m as f64;
        (s + c * m, q + c * c * m)
    });
    let mean = sum / n;
    let var = if cfg.trials > 1 {
        (sum_sq - n * mean * mean) / (n - 1.0)
    } else {
        0.0
    };
    let half = cfg.trials.div_ceil(2);
    let mut seen = 0;
    let mut median = 0;
    for (&c, &m) in &histogram {
        seen += m;
        if seen >= half {
            median = c;
            break;
        }
    }
    LadderStats {
        trials: cfg.trials,
        mean_h0_cost: mean,
        median_h0_cost: median,
        stderr: (var.max(0.0) / n).sqrt(),
        histogram,
    }
}

/// Attempt model for one V gate built from `|H_2⟩` states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostModel {
    /// `|H_0⟩` cost of one `|H_2⟩`.
    pub c_h2: f64,
    /// Cost of the single T gate in the V-gate circuit.
    pub t_gate_cost: f64,
    /// Per-attempt success probability.
    pub success_prob: f64,
    /// Cost charged when every attempt fails and a fallback is used.
    pub backoff_cost: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            c_h2: 4.35,
            t_gate_cost: 1.0,
            success_prob: 0.5,
            backoff_cost: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AttemptCost {
    pub attempt: u32,
    /// Resource cost `r(k)` of attempt `k`.
    pub resource_cost: f64,
    /// T gate plus `r(1) + … + r(k)`.
    pub cumulative: f64,
    /// `r(k)` for `k ≥ 3` extrapolates the factor 4 and is an estimate.
    pub estimate: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VGateCost {
    pub expected_h0: f64,
    pub expected_attempts: f64,
    pub success_path_cost: f64,
    pub failure_then_success_cost: f64,
    pub per_attempt: Vec<AttemptCost>,
}

/// Cost of a V gate with up to `attempts_before_backoff` attempts.
/// `r(1) = c_h2` and `r(k + 1) = 4 r(k)`.
pub fn v_gate_cost(model: &CostModel, attempts_before_backoff: u32) -> VGateCost {
    assert!(attempts_before_backoff >= 1, "need at least one attempt");
    assert!(
        model.success_prob > 0.0 && model.success_prob < 1.0,
        "success probability must lie in (0, 1)"
    );
    let mut per_attempt = Vec::new();
    let mut r = model.c_h2;
    let mut cumulative = model.t_gate_cost;
    let mut expected = model.t_gate_cost;
    let mut reach = 1.0;
    for k in 1..=attempts_before_backoff {
        cumulative += r;
        expected += reach * r;
        per_attempt.push(AttemptCost {
            attempt: k,
            resource_cost: r,
            cumulative,
            estimate: k >= 3,
        });
        reach *= 1.0 - model.success_prob;
        r *= 4.0;
    }
    expected += reach * model.backoff_cost;
    let success_path_cost = per_attempt[0].cumulative;
    let failure_then_success_cost = model.t_gate_cost + model.c_h2 + 4.0 * model.c_h2;
    VGateCost {
        expected_h0: expected,
        expected_attempts: 1.0 / model.success_prob,
        success_path_cost,
        failure_then_success_cost,
        per_attempt,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct V3Angles {
    /// `arccos(-3/5)` on the branch in `(π, 2π)`.
    pub theta: f64,
    /// `arccos(3/5)`.
    pub theta_prime: f64,
    /// Ladder angle at level 2 for `θ_0 = π/8`.
    pub theta2: f64,
    /// `θ - θ' - π`.
    pub branch_residual: f64,
    /// `θ' - 2θ_2 - π/4`.
    pub relation_residual: f64,
}

/// Angles of `V3`'s Z rotation and their relation to the ladder.
pub fn v3_angle_identities() -> V3Angles {
    let theta = (-0.8f64).atan2(-0.6).rem_euclid(2.0 * PI);
    let theta_prime = 0.6f64.acos();
    let theta2 = ladder_angle(2, FRAC_PI_8);
    V3Angles {
        theta,
        theta_prime,
        theta2,
        branch_residual: theta - theta_prime - PI,
        relation_residual: theta_prime - 2.0 * theta2 - FRAC_PI_4,
    }
}
