//! Integer number theory used by the searches: primality, factoring, sums of
//! two and four squares.

mod factor;
mod four;
mod primality;
mod squares;

use thiserror::Error;

pub use factor::{factor_biguint, factor_u64, FactorBudget};
pub use four::{enumerate_s4, r4_count, visit_s4, DEFAULT_S4_CAP};
pub use primality::{is_prime_u64, is_probable_prime, is_probable_prime_seeded};
pub use squares::{
    is_sum_two_squares_filter, sqrt_minus_one_u64, two_squares_decompose,
    two_squares_decompose_with, two_squares_prime, two_squares_prime_u64, FilterVerdict,
    SquaresFilter, TwoSquares,
};

pub(crate) use primality::{is_prime_u128, isqrt_u128};

/// Density constant of integers that are sums of two squares. Reported in
/// diagnostics only.
pub const LANDAU_RAMANUJAN: f64 = 0.7642236535;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumthError {
    #[error("not a sum of two squares")]
    NotRepresentable,
    #[error("factorization exceeded its iteration budget")]
    FactorizationTimeout,
    #[error("enumeration of s4({n}) exceeds the cap {cap}")]
    CapExceeded { n: u64, cap: u64 },
}
