//! Points of the projective line over a field of the tower.

use serde::{Deserialize, Serialize};

use super::Field;

/// A finite affine coordinate or the single point at infinity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjValue<F> {
    Finite(F),
    Infinity,
}

impl<F: Field> ProjValue<F> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjValue::Infinity)
    }

    pub fn finite(&self) -> Option<&F> {
        match self {
            ProjValue::Finite(x) => Some(x),
            ProjValue::Infinity => None,
        }
    }

    /// Homogeneous coordinates `[x : 1]` or `[1 : 0]`.
    pub fn homogeneous(&self) -> [F; 2] {
        match self {
            ProjValue::Finite(x) => [x.clone(), F::one()],
            ProjValue::Infinity => [F::one(), F::zero()],
        }
    }

    /// Dehomogenize `[x : z]`; `None` for the invalid pair `[0 : 0]`.
    pub fn from_homogeneous(x: &F, z: &F) -> Option<Self> {
        if z.is_zero() {
            (!x.is_zero()).then_some(ProjValue::Infinity)
        } else {
            Some(ProjValue::Finite(x.div_ref(z)?))
        }
    }
}

impl<F: std::fmt::Display> std::fmt::Display for ProjValue<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjValue::Finite(x) => write!(f, "{x}"),
            ProjValue::Infinity => f.write_str("inf"),
        }
    }
}
