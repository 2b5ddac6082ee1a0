//! Single-qubit gate synthesis over the V basis.
//!
//! The six V gates `(I ± 2iP)/√5` for `P ∈ {X, Y, Z}`, together with the
//! Paulis, generate exactly the unitaries `(aI + biX + ciY + diZ)/5^{L/2}`
//! with integer `a, b, c, d` and `a² + b² + c² + d² = 5^L`. This crate
//! provides:
//!
//! * [`exact`]: exact synthesis of such unitaries by quaternion division,
//! * [`approx_rand`]: randomized approximation of Z rotations (and general
//!   unitaries through an Euler split) with about `4 log5(1/ε)` V gates per
//!   axis,
//! * [`approx_direct`]: meet-in-the-middle direct search with about
//!   `3 log5(1/ε)` V gates,
//! * [`geomlab`] and [`ladder`]: the supporting lattice-point experiments and
//!   the magic-state ladder cost model,
//! * [`bench`]: a seeded batch harness over Haar-random targets.

pub mod approx_direct;
pub mod approx_rand;
pub mod bench;
pub mod circuit;
pub mod exact;
pub mod geomlab;
pub mod ladder;
pub mod numth;
pub mod quat;
pub mod unitary;

mod result;

pub use circuit::{evaluate, parse_circuit, Circuit, GateToken, ParseCircuitError};
pub use quat::LipschitzQuaternion;
pub use result::ApproxResult;
pub use unitary::{trace_distance, Precision, UnitVector4};
