//! PSU(2) values as canonical unit 4-vectors, and the trace distance.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UnitaryError {
    #[error("vector norm {norm} is not 1 within tolerance")]
    NotUnit { norm: f64 },
    #[error("component is not finite")]
    NonFinite,
    #[error("precision {0} must lie in (0, 1)")]
    BadPrecision(f64),
    #[error("malformed unit vector JSON: {0}")]
    Json(String),
    #[error("expected four comma-separated numbers, got {0:?}")]
    Syntax(String),
}

/// Accepted deviation of `|v|` from 1 for typed-in targets, which are
/// renormalized.
pub const TEXT_TOLERANCE: f64 = 1e-6;

/// `(α, β, γ, δ)` for the gate `αI + iβX + iγY + iδZ`, stored in canonical
/// form: `α > 0`, or `α = 0` and the first nonzero of `(β, γ, δ)` positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitVector4 {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
}

/// Accepted deviation of `|v|²` from 1 for user-supplied vectors.
pub const UNIT_TOLERANCE: f64 = 1e-12;

impl UnitVector4 {
    /// Validates `|v| = 1` within [`UNIT_TOLERANCE`] and canonicalizes.
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self, UnitaryError> {
        let v = [alpha, beta, gamma, delta];
        if v.iter().any(|x| !x.is_finite()) {
            return Err(UnitaryError::NonFinite);
        }
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if (n2 - 1.0).abs() > UNIT_TOLERANCE {
            return Err(UnitaryError::NotUnit { norm: n2.sqrt() });
        }
        Ok(Self::from_components(alpha, beta, gamma, delta))
    }

    /// Normalizes any nonzero finite vector, then canonicalizes.
    pub fn normalized(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self, UnitaryError> {
        let v = [alpha, beta, gamma, delta];
        if v.iter().any(|x| !x.is_finite()) {
            return Err(UnitaryError::NonFinite);
        }
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r == 0.0 || !r.is_finite() {
            return Err(UnitaryError::NotUnit { norm: r });
        }
        Ok(Self::from_components(alpha / r, beta / r, gamma / r, delta / r))
    }

    /// Canonicalizes without checking the norm.
    pub(crate) fn from_components(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        let v = [alpha, beta, gamma, delta];
        let flip = v.iter().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0);
        let s = if flip { -1.0 } else { 1.0 };
        // `+ 0.0` turns a negative zero into a positive one.
        Self {
            alpha: s * alpha + 0.0,
            beta: s * beta + 0.0,
            gamma: s * gamma + 0.0,
            delta: s * delta + 0.0,
        }
    }

    pub fn identity() -> Self {
        Self::from_components(1.0, 0.0, 0.0, 0.0)
    }

    /// `cos(θ/2) I + i sin(θ/2) Z`.
    pub fn rz(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self::from_components(c, 0.0, 0.0, s)
    }

    /// `cos(θ/2) I + i sin(θ/2) X`.
    pub fn rx(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self::from_components(c, s, 0.0, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn components(&self) -> [f64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Quaternion product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let [a1, b1, c1, d1] = self.components();
        let [a2, b2, c2, d2] = rhs.components();
        Self::from_components(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }

    pub fn inverse(&self) -> Self {
        Self::from_components(self.alpha, -self.beta, -self.gamma, -self.delta)
    }

    /// JSON array `[α,β,γ,δ]` with 17 significant digits per entry.
    pub fn to_json(&self) -> String {
        let parts: Vec<String> = self.components().iter().map(|x| format!("{x:.16e}")).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses a JSON array of four numbers; the vector must already be unit
    /// length within [`UNIT_TOLERANCE`].
    pub fn from_json(text: &str) -> Result<Self, UnitaryError> {
        let v: [f64; 4] =
            serde_json::from_str(text).map_err(|e| UnitaryError::Json(e.to_string()))?;
        Self::new(v[0], v[1], v[2], v[3])
    }
}

/// `"α,β,γ,δ"`, whitespace allowed around entries. The vector is
/// renormalized when its length is within [`TEXT_TOLERANCE`] of 1.
impl FromStr for UnitVector4 {
    type Err = UnitaryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(UnitaryError::Syntax(s.to_string()));
        }
        let mut v = [0.0f64; 4];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| UnitaryError::Syntax(s.to_string()))?;
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(UnitaryError::NonFinite);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > TEXT_TOLERANCE {
            return Err(UnitaryError::NotUnit { norm });
        }
        Self::normalized(v[0], v[1], v[2], v[3])
    }
}

impl fmt::Display for UnitVector4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// `sqrt(1 - |<u, v>|)`.
///
/// Evaluated as `|u - σv| / √2` with `σ = sign(<u, v>)`, which is the same
/// quantity for unit vectors but keeps full relative precision for close
/// points, where `1 - |<u,v>|` cancels.
pub fn trace_distance(u: &UnitVector4, v: &UnitVector4) -> f64 {
    let sigma = if u.dot(v) < 0.0 { -1.0 } else { 1.0 };
    let d2: f64 = u
        .components()
        .iter()
        .zip(v.components())
        .map(|(a, b)| (a - sigma * b).powi(2))
        .sum();
    (d2 / 2.0).sqrt().min(1.0)
}

/// Requested approximation precision `ε ∈ (0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Precision(f64);

impl Precision {
    pub fn new(epsilon: f64) -> Result<Self, UnitaryError> {
        if epsilon.is_finite() && epsilon > 0.0 && epsilon < 1.0 {
            Ok(Self(epsilon))
        } else {
            Err(UnitaryError::BadPrecision(epsilon))
        }
    }

    pub fn epsilon(self) -> f64 {
        self.0
    }
}
