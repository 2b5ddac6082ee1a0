//! Direct search for a level-`L` point near an arbitrary target.
//!
//! A point `(a, b, c, d)` with `a² + b² + c² + d² = 5^L` is split into the
//! blocks `(b, c)` and `(a, d)`. All `(b, c)` near `(β, γ)·s` are hashed by
//! the residue `5^L - b² - c²`; then every `(a, d)` near `(α, δ)·s` looks up
//! `a² + d²`. Levels are tried from 0 upwards and the first point within `ε`
//! wins, so the V count is the lowest level that has such a point.

use std::time::Instant;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::exact::exact_synthesize_quaternion;
use crate::numth::{FilterVerdict, SquaresFilter};
use crate::quat::LipschitzQuaternion;
use crate::result::ApproxResult;
use crate::unitary::{trace_distance, UnitVector4};

/// Default cap on residue-table entries.
pub const DEFAULT_MAX_TABLE_ENTRIES: usize = 50_000_000;

/// Highest supported level (`5^54 < 2^127`).
pub const MAX_LEVEL: u32 = 54;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DirectError {
    #[error("precision {0} must lie in (0, 0.1]")]
    BadPrecision(f64),
    #[error("no point within the requested precision up to level {max_level}")]
    SearchExhausted { max_level: u32 },
    #[error("residue table at level {level} needs more than {cap} entries")]
    TableCapExceeded { level: u32, cap: usize },
}

#[derive(Clone, Debug)]
pub struct DirectConfig {
    pub max_table_entries: usize,
    /// Keep every `(b, c)` per residue rather than the best one.
    pub all_collisions: bool,
    /// Skip residues the two-squares filter rejects.
    pub use_filter: bool,
    pub trial_bound: u64,
}

impl Default for DirectConfig {
    fn default() -> Self {
        Self {
            max_table_entries: DEFAULT_MAX_TABLE_ENTRIES,
            all_collisions: false,
            use_filter: true,
            trial_bound: 1000,
        }
    }
}

impl DirectConfig {
    /// Defaults, with the table cap taken from `VFIVE_MAX_TABLE` when set.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(cap) = std::env::var("VFIVE_MAX_TABLE")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            cfg.max_table_entries = cap;
        }
        cfg
    }
}

/// One pass of the search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchPlan {
    pub level: u32,
    /// Radius of each block disk, in units of the unit sphere.
    pub tau: f64,
    pub escalation_round: u32,
    pub max_level: u32,
}

fn log5(x: f64) -> f64 {
    x.ln() / 5f64.ln()
}

fn snapped_ceil(x: f64) -> u32 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as u32
    } else {
        x.ceil() as u32
    }
}

/// `⌈3 log5(1/ε)⌉`, the level at which `5^{-L/3} ≤ ε`.
pub fn starting_level(epsilon: f64) -> u32 {
    snapped_ceil(3.0 * log5(1.0 / epsilon))
}

/// `⌈4 log5(2/ε)⌉ + 2`.
pub fn max_level(epsilon: f64) -> u32 {
    snapped_ceil(4.0 * log5(2.0 / epsilon)) + 2
}

/// Residue table: best `(b, c)` per residue, with optional extra witnesses.
pub struct ResidueTable {
    best: FxHashMap<u128, (i64, i64, f64)>,
    extras: FxHashMap<u128, Vec<(i64, i64)>>,
}

impl ResidueTable {
    pub fn len(&self) -> usize {
        self.best.len()
    }

    pub fn is_empty(&self) -> bool {
        self.best.is_empty()
    }

    fn witnesses(&self, key: u128) -> impl Iterator<Item = (i64, i64)> + '_ {
        let first = self.best.get(&key).map(|&(b, c, _)| (b, c));
        let rest = self.extras.get(&key).into_iter().flatten().copied();
        first.into_iter().chain(rest)
    }
}

struct Geometry {
    n5: i128,
    s: f64,
    target: UnitVector4,
}

fn build_table(
    geo: &Geometry,
    tau: f64,
    level: u32,
    cfg: &DirectConfig,
    filter: &SquaresFilter,
) -> Result<ResidueTable, DirectError> {
    let [alpha, beta, gamma, delta] = geo.target.components();
    let s = geo.s;
    let r = tau * s;
    let (cb, cc) = (beta * s, gamma * s);
    let rho = (alpha * alpha + delta * delta).sqrt();
    let n5f = geo.n5 as f64;
    // Residue window, widened by a relative float margin.
    let pad = 1.0 + n5f * 1e-12;
    let lo = if rho > tau { n5f * (rho - tau).powi(2) - pad } else { f64::NEG_INFINITY };
    let hi = (n5f * (rho + tau).powi(2)).min(n5f) + pad;
    let mut table = ResidueTable {
        best: FxHashMap::default(),
        extras: FxHashMap::default(),
    };
    let b_lo = (cb - r).ceil() as i64;
    let b_hi = (cb + r).floor() as i64;
    for b in b_lo..=b_hi {
        let db = b as f64 - cb;
        let half = (r * r - db * db).max(0.0).sqrt();
        let c_lo = (cc - half).ceil() as i64;
        let c_hi = (cc + half).floor() as i64;
        for c in c_lo..=c_hi {
            let dc = c as f64 - cc;
            let err = db * db + dc * dc;
            if err >= r * r {
                continue;
            }
            let rest = geo.n5 - (b as i128) * (b as i128) - (c as i128) * (c as i128);
            if rest < 0 {
                continue;
            }
            let rf = rest as f64;
            if rf < lo || rf > hi {
                continue;
            }
            let key = rest as u128;
            if cfg.use_filter && filter.verdict(key) == FilterVerdict::No {
                continue;
            }
            match table.best.get_mut(&key) {
                Some(slot) => {
                    if cfg.all_collisions {
                        table.extras.entry(key).or_default().push((b, c));
                    }
                    if err < slot.2 {
                        *slot = (b, c, err);
                    }
                }
                None => {
                    if table.best.len() >= cfg.max_table_entries {
                        return Err(DirectError::TableCapExceeded {
                            level,
                            cap: cfg.max_table_entries,
                        });
                    }
                    table.best.insert(key, (b, c, err));
                }
            }
        }
    }
    // With all collisions on, `extras` may hold the pair that later became
    // best; duplicates are harmless for the probe.
    Ok(table)
}

fn distance_of(q: [i64; 4], geo: &Geometry) -> f64 {
    let s = geo.s;
    let u = UnitVector4::from_components(
        q[0] as f64 / s,
        q[1] as f64 / s,
        q[2] as f64 / s,
        q[3] as f64 / s,
    );
    trace_distance(&u, &geo.target)
}

/// One pass at fixed `level` with block radius `tau`; accepts the first
/// point, in probe order, with trace distance below `accept`.
pub fn search_pass(
    g: &UnitVector4,
    level: u32,
    tau: f64,
    accept: f64,
    cfg: &DirectConfig,
) -> Result<Option<[i64; 4]>, DirectError> {
    if level > MAX_LEVEL {
        return Err(DirectError::SearchExhausted { max_level: MAX_LEVEL });
    }
    let n5 = 5i128.pow(level);
    let geo = Geometry {
        n5,
        s: (n5 as f64).sqrt(),
        target: *g,
    };
    let filter = SquaresFilter::new(cfg.trial_bound);
    let table = build_table(&geo, tau, level, cfg, &filter)?;
    if table.is_empty() {
        return Ok(None);
    }
    let [alpha, _, _, delta] = g.components();
    let s = geo.s;
    let r = tau * s;
    let (ca, cd) = (alpha * s, delta * s);
    let a_lo = (ca - r).ceil() as i64;
    let a_hi = (ca + r).floor() as i64;
    let mut order: Vec<i64> = (a_lo..=a_hi).collect();
    order.sort_by(|x, y| {
        let dx = (*x as f64 - ca).abs();
        let dy = (*y as f64 - ca).abs();
        dx.total_cmp(&dy).then(x.cmp(y))
    });
    for a in order {
        let da = a as f64 - ca;
        let half = (r * r - da * da).max(0.0).sqrt();
        let d_lo = (cd - half).ceil() as i64;
        let d_hi = (cd + half).floor() as i64;
        for d in d_lo..=d_hi {
            let dd = d as f64 - cd;
            if da * da + dd * dd >= r * r {
                continue;
            }
            let key = (a as i128 * a as i128 + d as i128 * d as i128) as u128;
            for (b, c) in table.witnesses(key) {
                let q = [a, b, c, d];
                let sum: i128 = q.iter().map(|&v| v as i128 * v as i128).sum();
                if sum != n5 {
                    continue;
                }
                if distance_of(q, &geo) < accept {
                    return Ok(Some(q));
                }
            }
        }
    }
    Ok(None)
}

fn to_result(q: [i64; 4], g: &UnitVector4, level: u32, start: Instant) -> ApproxResult {
    let lq = LipschitzQuaternion::new(q[0], q[1], q[2], q[3]);
    let circuit = exact_synthesize_quaternion(&lq).expect("norm is 5^L by construction");
    let achieved_distance = trace_distance(&circuit.evaluate(), g);
    ApproxResult {
        circuit,
        achieved_distance,
        level,
        elapsed: start.elapsed(),
        seed: None,
    }
}

/// Lowest-level circuit within `epsilon` of `g`, with the default configuration.
pub fn direct_search(g: &UnitVector4, epsilon: f64) -> Result<ApproxResult, DirectError> {
    direct_search_with(g, epsilon, &DirectConfig::default())
}

/// Sweeps `L = 0, 1, …, max_level(ε)` with one pass per level at
/// `τ = √2 ε`.
///
/// `dist(q, g) < ε` means `|q/s - g| < √2 ε` for the sign-aligned
/// representative, so each block is within `√2 ε` of its target and the
/// best witness per residue completes it: the pass misses nothing at its
/// level.
pub fn direct_search_with(
    g: &UnitVector4,
    epsilon: f64,
    cfg: &DirectConfig,
) -> Result<ApproxResult, DirectError> {
    if !(epsilon > 0.0 && epsilon <= 0.1) {
        return Err(DirectError::BadPrecision(epsilon));
    }
    let start = Instant::now();
    let top = max_level(epsilon).min(MAX_LEVEL);
    let tau = std::f64::consts::SQRT_2 * epsilon;
    for level in 0..=top {
        if let Some(q) = search_pass(g, level, tau, epsilon, cfg)? {
            return Ok(to_result(q, g, level, start));
        }
    }
    Err(DirectError::SearchExhausted { max_level: top })
}

/// Fixed-level search with the goal `5^{-L/3}`, tripled after each miss.
/// Returns the result and the goal that produced it.
pub fn search_at_level(
    g: &UnitVector4,
    level: u32,
    cfg: &DirectConfig,
) -> Result<Option<(ApproxResult, f64)>, DirectError> {
    let start = Instant::now();
    let mut goal = 5f64.powf(-(level as f64) / 3.0);
    for _ in 0..12 {
        if let Some(q) = search_pass(g, level, goal, goal, cfg)? {
            return Ok(Some((to_result(q, g, level, start), goal)));
        }
        goal *= 3.0;
        if goal >= 1.0 {
            break;
        }
    }
    Ok(None)
}
