use std::fmt;

use serde::Serialize;

use super::{MwlError, ZMod};
use crate::scalars::Field;

/// Automorphism `(x, m) ↦ (scale·x, m + shift)` of the smooth locus
/// `𝔾_m × ℤ/n` of an `I_n` fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothLocusAut<F> {
    scale: F,
    shift: ZMod,
}

impl<F: Field> SmoothLocusAut<F> {
    pub fn new(scale: F, shift: ZMod) -> Option<Self> {
        (!scale.is_zero()).then_some(SmoothLocusAut { scale, shift })
    }

    pub fn identity(modulus: u32) -> Self {
        SmoothLocusAut { scale: F::one(), shift: ZMod::new(0, modulus) }
    }

    pub fn scale(&self) -> &F {
        &self.scale
    }

    pub fn shift(&self) -> ZMod {
        self.shift
    }

    /// `self ∘ other`: scales multiply, shifts add.
    pub fn compose(&self, other: &Self) -> Result<Self, MwlError> {
        Ok(SmoothLocusAut { scale: self.scale.mul_ref(&other.scale), shift: self.shift.add(other.shift)? })
    }

    pub fn inverse(&self) -> Self {
        SmoothLocusAut { scale: self.scale.inv().expect("scale is nonzero"), shift: self.shift.scale(-1) }
    }

    /// `self^k` by repeated squaring; negative `k` uses the inverse.
    pub fn power(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.shift.modulus());
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same modulus");
            }
            base = base.compose(&base).expect("same modulus");
            e >>= 1;
        }
        acc
    }

    pub fn apply(&self, x: &F, m: ZMod) -> Result<(F, ZMod), MwlError> {
        Ok((self.scale.mul_ref(x), m.add(self.shift)?))
    }
}

impl<F: fmt::Display> fmt::Display for SmoothLocusAut<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.scale, self.shift.value())
    }
}

impl<F: fmt::Display> Serialize for SmoothLocusAut<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SmoothLocusAut", 3)?;
        st.serialize_field("scale", &self.scale.to_string())?;
        st.serialize_field("shift", &self.shift.value().to_string())?;
        st.serialize_field("modulus", &self.shift.modulus().to_string())?;
        st.end()
    }
}
