//! Lipschitz quaternions (integer components) over arbitrary-precision integers.
//!
//! The group generated by the Lipschitz units and the six norm-5 quaternions
//! `1 ± 2i`, `1 ± 2j`, `1 ± 2k` is exactly the set of Lipschitz quaternions
//! whose norm is a power of five. Exact synthesis peels those generators off
//! one at a time with [`LipschitzQuaternion::try_right_divide`].

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuatError {
    #[error("divisor does not right-divide the quaternion")]
    NotDivisible,
    #[error("division by a zero quaternion")]
    ZeroDivisor,
    #[error("malformed quaternion text {text:?}: {reason}")]
    Parse { text: String, reason: &'static str },
}

/// `a + b i + c j + d k` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LipschitzQuaternion {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl LipschitzQuaternion {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0, 0)
    }

    pub fn components(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// `a² + b² + c² + d²`.
    pub fn norm(&self) -> BigInt {
        self.components().iter().map(|x| *x * *x).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|x| x.is_zero())
    }

    /// True for the eight Lipschitz units `±1, ±i, ±j, ±k`.
    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Hamilton product `self · rhs`.
    pub fn multiply(&self, rhs: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        Self {
            a: a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            b: a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            c: a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            d: a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        }
    }

    /// Returns `q'` with `self = q' · divisor` when `q'` is again a Lipschitz
    /// quaternion.
    ///
    /// Divisibility is decided without rationals: `q' = self · conj(divisor) /
    /// norm(divisor)`, so every component of `self · conj(divisor)` must be a
    /// multiple of `norm(divisor)`.
    pub fn try_right_divide(&self, divisor: &Self) -> Result<Self, QuatError> {
        let n = divisor.norm();
        if n.is_zero() {
            return Err(QuatError::ZeroDivisor);
        }
        let p = self.multiply(&divisor.conjugate());
        let mut out = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (slot, x) in out.iter_mut().zip(p.components()) {
            let (q, r) = x.div_rem(&n);
            if !r.is_zero() {
                return Err(QuatError::NotDivisible);
            }
            *slot = q;
        }
        let [a, b, c, d] = out;
        Ok(Self { a, b, c, d })
    }

    /// Divides every component by `k`, if all of them are multiples of `k`.
    pub fn try_scalar_divide(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() || self.components().iter().any(|x| !x.is_multiple_of(k)) {
            return None;
        }
        Some(Self {
            a: &self.a / k,
            b: &self.b / k,
            c: &self.c / k,
            d: &self.d / k,
        })
    }

    /// `±self` with the first nonzero component positive.
    pub fn sign_normalized(&self) -> Self {
        let first = self.components().into_iter().find(|x| !x.is_zero());
        match first {
            Some(x) if x.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }

    /// Components as `f64`, divided by `sqrt(norm)`.
    pub fn to_unit_f64(&self) -> [f64; 4] {
        use num_traits::ToPrimitive;
        let norm = self.norm();
        // Scale down huge values before converting so the f64 range is safe.
        let bits = norm.bits();
        let shift = bits.saturating_sub(1000) / 2;
        let scaled: Vec<f64> = self
            .components()
            .iter()
            .map(|x| (*x >> shift as usize).to_f64().unwrap_or(f64::NAN))
            .collect();
        let r = scaled.iter().map(|x| x * x).sum::<f64>().sqrt();
        [scaled[0] / r, scaled[1] / r, scaled[2] / r, scaled[3] / r]
    }
}

impl Mul for &LipschitzQuaternion {
    type Output = LipschitzQuaternion;
    fn mul(self, rhs: Self) -> LipschitzQuaternion {
        self.multiply(rhs)
    }
}

impl Mul for LipschitzQuaternion {
    type Output = LipschitzQuaternion;
    fn mul(self, rhs: Self) -> LipschitzQuaternion {
        self.multiply(&rhs)
    }
}

impl Neg for LipschitzQuaternion {
    type Output = LipschitzQuaternion;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}

impl fmt::Display for LipschitzQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for LipschitzQuaternion {
    type Err = QuatError;

    /// Parses `"a,b,c,d"`; each field is an optionally signed base-10 integer,
    /// surrounding ASCII whitespace is ignored.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason| QuatError::Parse {
            text: text.chars().take(64).collect(),
            reason,
        };
        let fields: Vec<&str> = text.trim().split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(err("expected four comma-separated integers"));
        }
        let mut parsed = Vec::with_capacity(4);
        for field in fields {
            let digits = field.strip_prefix(['+', '-']).unwrap_or(field);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("component is not a decimal integer"));
            }
            let v: BigInt = field
                .trim_start_matches('+')
                .parse()
                .map_err(|_| err("component is not a decimal integer"))?;
            parsed.push(v);
        }
        let mut it = parsed.into_iter();
        Ok(Self {
            a: it.next().unwrap(),
            b: it.next().unwrap(),
            c: it.next().unwrap(),
            d: it.next().unwrap(),
        })
    }
}

/// The generating set of the norm-`5^l` group: first the eight Lipschitz
/// units in the order `1, -1, i, -i, j, -j, k, -k`, then the six norm-5
/// generators in the order `1+2i, 1-2i, 1+2j, 1-2j, 1+2k, 1-2k`.
pub fn generator_set() -> Vec<LipschitzQuaternion> {
    let mut out = Vec::with_capacity(14);
    out.extend(lipschitz_units());
    out.extend(norm_five_generators());
    out
}

pub fn lipschitz_units() -> [LipschitzQuaternion; 8] {
    type Q = LipschitzQuaternion;
    [
        Q::new(1, 0, 0, 0),
        Q::new(-1, 0, 0, 0),
        Q::new(0, 1, 0, 0),
        Q::new(0, -1, 0, 0),
        Q::new(0, 0, 1, 0),
        Q::new(0, 0, -1, 0),
        Q::new(0, 0, 0, 1),
        Q::new(0, 0, 0, -1),
    ]
}

/// `1+2i, 1-2i, 1+2j, 1-2j, 1+2k, 1-2k`; this is also the probe order used by
/// exact synthesis.
pub fn norm_five_generators() -> [LipschitzQuaternion; 6] {
    type Q = LipschitzQuaternion;
    [
        Q::new(1, 2, 0, 0),
        Q::new(1, -2, 0, 0),
        Q::new(1, 0, 2, 0),
        Q::new(1, 0, -2, 0),
        Q::new(1, 0, 0, 2),
        Q::new(1, 0, 0, -2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = LipschitzQuaternion;

    #[test]
    fn hamilton_relations() {
        let i = Q::new(0, 1, 0, 0);
        let j = Q::new(0, 0, 1, 0);
        let k = Q::new(0, 0, 0, 1);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -k.clone());
        assert_eq!(&i * &i, Q::new(-1, 0, 0, 0));
    }

    #[test]
    fn product_of_two_generators() {
        let p = Q::new(1, 2, 0, 0) * Q::new(1, 0, 2, 0);
        assert_eq!(p, Q::new(1, 2, 2, 4));
        assert_eq!(p.norm(), BigInt::from(25));
    }

    #[test]
    fn unit_and_conjugate() {
        let q = Q::new(3, -1, 4, 1);
        assert_eq!(&q * &Q::one(), q);
        assert_eq!(Q::new(1, 2, 0, 0).conjugate(), Q::new(1, -2, 0, 0));
        assert_eq!(Q::new(1, 2, 0, 0).norm(), BigInt::from(5));
        assert_eq!(&q * &q.conjugate(), Q::new(q.norm(), 0, 0, 0));
    }

    #[test]
    fn right_division() {
        let q = Q::new(1, 2, 2, 4);
        assert_eq!(q.try_right_divide(&Q::new(1, 0, 2, 0)), Ok(Q::new(1, 2, 0, 0)));
        let v1 = Q::new(1, 2, 0, 0);
        assert_eq!(v1.try_right_divide(&v1), Ok(Q::one()));
        // (1+2i)(1-2j) = 1 + 2i - 2j - 4k: not a multiple of 5.
        assert_eq!(
            v1.multiply(&Q::new(1, 0, -2, 0)),
            Q::new(1, 2, -2, -4)
        );
        assert_eq!(v1.try_right_divide(&Q::new(1, 0, 2, 0)), Err(QuatError::NotDivisible));
        assert_eq!(v1.try_right_divide(&Q::default()), Err(QuatError::ZeroDivisor));
    }

    #[test]
    fn generators() {
        let g = generator_set();
        assert_eq!(g.len(), 14);
        assert!(g[..8].iter().all(|u| u.norm() == BigInt::one()));
        assert!(g[8..].iter().all(|u| u.norm() == BigInt::from(5)));
    }

    #[test]
    fn text_form() {
        let q: Q = "1,-2,+3, 40000000000000000000000".parse().unwrap();
        assert_eq!(q.d, "40000000000000000000000".parse::<BigInt>().unwrap());
        assert_eq!(q.to_string(), "1,-2,3,40000000000000000000000");
        assert!("1,2,3".parse::<Q>().is_err());
        assert!("1,2,3,x".parse::<Q>().is_err());
        assert!("1,2,3,".parse::<Q>().is_err());
        assert!("1,2,3,--4".parse::<Q>().is_err());
    }

    #[test]
    fn sign_normalization() {
        assert_eq!(Q::new(0, -1, 2, 0).sign_normalized(), Q::new(0, 1, -2, 0));
        assert_eq!(Q::new(1, -1, 2, 0).sign_normalized(), Q::new(1, -1, 2, 0));
    }
}
