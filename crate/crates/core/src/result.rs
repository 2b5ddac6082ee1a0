use std::time::Duration;

use serde_json::json;

use crate::circuit::Circuit;

/// Outcome of an approximation search.
#[derive(Clone, Debug)]
pub struct ApproxResult {
    pub circuit: Circuit,
    /// Trace distance of `circuit` from the target, recomputed from the
    /// circuit after the search.
    pub achieved_distance: f64,
    pub level: u32,
    pub elapsed: Duration,
    /// RNG seed for randomized searches; `None` for deterministic ones.
    pub seed: Option<u64>,
}

impl ApproxResult {
    pub fn v_count(&self) -> usize {
        self.circuit.v_count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "circuit": self.circuit.to_string(),
            "v_count": self.circuit.v_count(),
            "distance": self.achieved_distance,
            "level": self.level,
            "seed": self.seed,
            "millis": self.elapsed.as_secs_f64() * 1e3,
        })
    }
}
