//! Exact synthesis: quaternions of norm `5^L` to circuits over V gates and
//! Paulis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::circuit::{Circuit, GateToken};
use crate::quat::{norm_five_generators, LipschitzQuaternion};
use crate::unitary::UnitVector4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("norm {0} is not a power of 5")]
    NotRepresentable(BigInt),
    #[error("quaternion is not a member of the generator set")]
    NotAGenerator,
    #[error("no generator divides a quaternion of norm 5^{0}")]
    NoDivisor(u32),
}

/// `(aI + biX + ciY + diZ) / 5^{L/2}` with `a² + b² + c² + d² = 5^L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactUnitary {
    q: LipschitzQuaternion,
    level: u32,
}

impl ExactUnitary {
    pub fn new(q: LipschitzQuaternion) -> Result<Self, ExactError> {
        match is_exactly_representable(&q) {
            Some(level) => Ok(Self { q, level }),
            None => Err(ExactError::NotRepresentable(q.norm())),
        }
    }

    pub fn from_components(a: i64, b: i64, c: i64, d: i64) -> Result<Self, ExactError> {
        Self::new(LipschitzQuaternion::new(a, b, c, d))
    }

    pub fn quaternion(&self) -> &LipschitzQuaternion {
        &self.q
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn to_unit_vector(&self) -> UnitVector4 {
        let [a, b, c, d] = self.q.to_unit_f64();
        UnitVector4::from_components(a, b, c, d)
    }

    /// PSU(2) equality after aligning levels: `q·5^{k} = ±q'·5^{k'}`.
    pub fn psu_eq(&self, other: &Self) -> bool {
        let (a, b) = if self.level >= other.level {
            (&self.q, &other.q)
        } else {
            (&other.q, &self.q)
        };
        let diff = self.level.abs_diff(other.level);
        if diff % 2 == 1 {
            return false;
        }
        let scale = BigInt::from(5u32).pow(diff / 2);
        let scaled = LipschitzQuaternion {
            a: &b.a * &scale,
            b: &b.b * &scale,
            c: &b.c * &scale,
            d: &b.d * &scale,
        };
        *a == scaled || *a == -scaled
    }
}

/// `Some(L)` when `norm(q) = 5^L`.
pub fn is_exactly_representable(q: &LipschitzQuaternion) -> Option<u32> {
    let mut n = q.norm();
    if n.is_zero() {
        return None;
    }
    let five = BigInt::from(5u32);
    let mut level = 0;
    while !n.is_one() {
        let (d, r) = n.div_rem(&five);
        if !r.is_zero() {
            return None;
        }
        n = d;
        level += 1;
    }
    Some(level)
}

/// Gate token of a member of the generator set; signs of units are dropped.
pub fn gate_of_generator(g: &LipschitzQuaternion) -> Result<GateToken, ExactError> {
    let small = |x: &BigInt| -> Option<i64> { num_traits::ToPrimitive::to_i64(x) };
    let (Some(a), Some(b), Some(c), Some(d)) = (small(&g.a), small(&g.b), small(&g.c), small(&g.d))
    else {
        return Err(ExactError::NotAGenerator);
    };
    use GateToken::*;
    Ok(match (a, b, c, d) {
        (1, 2, 0, 0) => V1,
        (1, -2, 0, 0) => V1d,
        (1, 0, 2, 0) => V2,
        (1, 0, -2, 0) => V2d,
        (1, 0, 0, 2) => V3,
        (1, 0, 0, -2) => V3d,
        (1 | -1, 0, 0, 0) => I,
        (0, 1 | -1, 0, 0) => X,
        (0, 0, 1 | -1, 0) => Y,
        (0, 0, 0, 1 | -1) => Z,
        _ => return Err(ExactError::NotAGenerator),
    })
}

/// Synthesizes a circuit equal to `u` in PSU(2) with at most `u.level()` V
/// gates.
///
/// Common factors of 5 are removed first (they are a global scale). Then the
/// six generators are probed as right divisors in the fixed order
/// `1+2i, 1-2i, 1+2j, 1-2j, 1+2k, 1-2k`; each hit peels off the rightmost
/// factor. The unit left at the end becomes the first token, or disappears
/// if it is `±1`.
pub fn exact_synthesize(u: &ExactUnitary) -> Circuit {
    synthesize_quaternion(&u.q, u.level).expect("norm 5^L always has a generator divisor")
}

/// [`exact_synthesize`] on a raw quaternion, checking the norm first.
pub fn exact_synthesize_quaternion(q: &LipschitzQuaternion) -> Result<Circuit, ExactError> {
    let level = is_exactly_representable(q).ok_or_else(|| ExactError::NotRepresentable(q.norm()))?;
    synthesize_quaternion(q, level)
}

fn synthesize_quaternion(q: &LipschitzQuaternion, level: u32) -> Result<Circuit, ExactError> {
    let five = BigInt::from(5u32);
    let mut rest = q.clone();
    let mut level = level;
    while level >= 2 {
        match rest.try_scalar_divide(&five) {
            Some(r) => {
                rest = r;
                level -= 2;
            }
            None => break,
        }
    }
    let generators = norm_five_generators();
    let mut peeled = Vec::with_capacity(level as usize);
    while level > 0 {
        let hit = generators
            .iter()
            .find_map(|g| rest.try_right_divide(g).ok().map(|r| (g, r)));
        let Some((g, quotient)) = hit else {
            return Err(ExactError::NoDivisor(level));
        };
        peeled.push(gate_of_generator(g)?);
        rest = quotient;
        level -= 1;
    }
    let mut tokens = Vec::with_capacity(peeled.len() + 1);
    match gate_of_generator(&rest)? {
        GateToken::I => {}
        pauli => tokens.push(pauli),
    }
    tokens.extend(peeled.into_iter().rev());
    Ok(Circuit::from_tokens(tokens))
}
