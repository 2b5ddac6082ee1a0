//! Gate alphabet and circuits.
//!
//! A circuit is a list of tokens. Its value is the quaternion product of the
//! token quaternions taken in list order, so `V1 V2` evaluates to
//! `(1+2i)(1+2j) = 1+2i+2j+4k`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::quat::LipschitzQuaternion;
use crate::unitary::UnitVector4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateToken {
    V1,
    V1d,
    V2,
    V2d,
    V3,
    V3d,
    X,
    Y,
    Z,
    H,
    S,
    Sd,
    I,
}

impl GateToken {
    pub const ALL: [GateToken; 13] = [
        GateToken::V1,
        GateToken::V1d,
        GateToken::V2,
        GateToken::V2d,
        GateToken::V3,
        GateToken::V3d,
        GateToken::X,
        GateToken::Y,
        GateToken::Z,
        GateToken::H,
        GateToken::S,
        GateToken::Sd,
        GateToken::I,
    ];

    pub const V_GATES: [GateToken; 6] = [
        GateToken::V1,
        GateToken::V1d,
        GateToken::V2,
        GateToken::V2d,
        GateToken::V3,
        GateToken::V3d,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            GateToken::V1 => "V1",
            GateToken::V1d => "V1d",
            GateToken::V2 => "V2",
            GateToken::V2d => "V2d",
            GateToken::V3 => "V3",
            GateToken::V3d => "V3d",
            GateToken::X => "X",
            GateToken::Y => "Y",
            GateToken::Z => "Z",
            GateToken::H => "H",
            GateToken::S => "S",
            GateToken::Sd => "Sd",
            GateToken::I => "I",
        }
    }

    pub fn from_symbol(s: &str) -> Option<GateToken> {
        GateToken::ALL.into_iter().find(|t| t.symbol() == s)
    }

    pub fn is_v(self) -> bool {
        matches!(
            self,
            GateToken::V1
                | GateToken::V1d
                | GateToken::V2
                | GateToken::V2d
                | GateToken::V3
                | GateToken::V3d
        )
    }

    /// Integer quaternion proportional to the gate; the scale is `sqrt(norm)`
    /// (5 for V gates, 2 for H, S and Sd, 1 for Paulis).
    pub fn integer_quaternion(self) -> [i64; 4] {
        match self {
            GateToken::V1 => [1, 2, 0, 0],
            GateToken::V1d => [1, -2, 0, 0],
            GateToken::V2 => [1, 0, 2, 0],
            GateToken::V2d => [1, 0, -2, 0],
            GateToken::V3 => [1, 0, 0, 2],
            GateToken::V3d => [1, 0, 0, -2],
            GateToken::X => [0, 1, 0, 0],
            GateToken::Y => [0, 0, 1, 0],
            GateToken::Z => [0, 0, 0, 1],
            GateToken::H => [0, 1, 0, 1],
            GateToken::S => [1, 0, 0, -1],
            GateToken::Sd => [1, 0, 0, 1],
            GateToken::I => [1, 0, 0, 0],
        }
    }

    /// Normalized unit quaternion of the gate.
    pub fn unit_quaternion(self) -> [f64; 4] {
        let q = self.integer_quaternion().map(|x| x as f64);
        let r = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        q.map(|x| x / r)
    }
}

impl fmt::Display for GateToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseCircuitError {
    #[error("unknown token {lexeme:?} at position {position}")]
    UnknownToken { position: usize, lexeme: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Circuit {
    tokens: Vec<GateToken>,
    v_count: usize,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_tokens(tokens: Vec<GateToken>) -> Self {
        let v_count = tokens.iter().filter(|t| t.is_v()).count();
        Self { tokens, v_count }
    }

    pub fn tokens(&self) -> &[GateToken] {
        &self.tokens
    }

    pub fn v_count(&self) -> usize {
        self.v_count
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn push(&mut self, t: GateToken) {
        self.v_count += t.is_v() as usize;
        self.tokens.push(t);
    }

    pub fn extend_from(&mut self, other: &Circuit) {
        self.tokens.extend_from_slice(&other.tokens);
        self.v_count += other.v_count;
    }

    pub fn concat(&self, other: &Circuit) -> Circuit {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// Exact integer product of the token quaternions, in token order.
    pub fn integer_product(&self) -> LipschitzQuaternion {
        self.tokens.iter().fold(LipschitzQuaternion::one(), |acc, t| {
            let [a, b, c, d] = t.integer_quaternion();
            acc.multiply(&LipschitzQuaternion::new(a, b, c, d))
        })
    }

    /// Canonical PSU(2) value of the circuit.
    pub fn evaluate(&self) -> UnitVector4 {
        let [a, b, c, d] = self.integer_product().to_unit_f64();
        UnitVector4::from_components(a, b, c, d)
    }
}

/// Free-function form of [`Circuit::evaluate`].
pub fn evaluate(c: &Circuit) -> UnitVector4 {
    c.evaluate()
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseCircuitError> {
    text.parse()
}

impl FromStr for Circuit {
    type Err = ParseCircuitError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut c = Circuit::new();
        for (position, lexeme) in text.split_ascii_whitespace().enumerate() {
            match GateToken::from_symbol(lexeme) {
                Some(t) => c.push(t),
                None => {
                    return Err(ParseCircuitError::UnknownToken {
                        position,
                        lexeme: lexeme.chars().take(32).collect(),
                    })
                }
            }
        }
        Ok(c)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(t.symbol())?;
        }
        Ok(())
    }
}

impl FromIterator<GateToken> for Circuit {
    fn from_iter<T: IntoIterator<Item = GateToken>>(iter: T) -> Self {
        Circuit::from_tokens(iter.into_iter().collect())
    }
}
