//! Mordell–Weil heights from combinatorial section data, component groups
//! of `I_n` fibers, and automorphisms of the `I_n` smooth locus.

mod dynamics;
mod index;

pub use dynamics::SmoothLocusAut;
pub use index::{cyclic_index, ivstar_index, met_component};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::fibration::KodairaType;
use crate::scalars::rational::frac;
use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MwlError {
    #[error("local contributions for {0} are not tabulated")]
    Unsupported(KodairaType),
    #[error("component index {index} invalid for {kodaira}")]
    InvalidIndex { kodaira: KodairaType, index: String },
    #[error("section {section} has no component data for fiber {fiber}")]
    MissingComponent { section: String, fiber: String },
    #[error("mixed moduli {0} and {1}")]
    MixedModuli(u32, u32),
    #[error("empty index list")]
    Empty,
    #[error("section {section} meets fiber {fiber} in {count} components (expected 1)")]
    NotASection { section: String, fiber: String, count: usize },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("fiber is not of the expected shape: {0}")]
    Shape(String),
}

/// Element of `ℤ/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZMod {
    value: u32,
    modulus: u32,
}

impl ZMod {
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        ZMod { value: value.rem_euclid(modulus as i64) as u32, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn add(self, o: ZMod) -> Result<ZMod, MwlError> {
        if self.modulus != o.modulus {
            return Err(MwlError::MixedModuli(self.modulus, o.modulus));
        }
        Ok(ZMod::new(self.value as i64 + o.value as i64, self.modulus))
    }

    pub fn scale(self, k: i64) -> ZMod {
        ZMod::new(self.value as i64 * k, self.modulus)
    }
}

impl fmt::Display for ZMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Serialize for ZMod {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Component of a reducible fiber met by a section, relative to the
/// component met by the zero section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Component {
    /// `I_n`: position in the component group `ℤ/n`.
    Cyclic { index: ZMod },
    /// IV*: the identity component, or the node at `depth` along branch
    /// `branch` (1..=3) counted from the central component. Sections meet
    /// only the terminal (depth 2) nodes of the two non-identity branches.
    IvStarIdentity,
    IvStarBranch { branch: u8, depth: u8 },
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Cyclic { index } => write!(f, "{}", index.value),
            Component::IvStarIdentity => f.write_str("identity"),
            Component::IvStarBranch { branch, depth } => write!(f, "branch{branch}/depth{depth}"),
        }
    }
}

fn invalid(k: KodairaType, c: &Component) -> MwlError {
    MwlError::InvalidIndex { kodaira: k, index: c.to_string() }
}

fn check(k: KodairaType, c: &Component) -> Result<(), MwlError> {
    match (k, c) {
        (KodairaType::I(n), Component::Cyclic { index }) if index.modulus == n => Ok(()),
        (KodairaType::I(_), _) => Err(invalid(k, c)),
        (KodairaType::IVStar, Component::IvStarIdentity) => Ok(()),
        (KodairaType::IVStar, Component::IvStarBranch { branch: 1..=3, depth: 2 }) => Ok(()),
        (KodairaType::IVStar, _) => Err(invalid(k, c)),
        _ => Err(MwlError::Unsupported(k)),
    }
}

/// Local height correction `contr_v(P)`.
pub fn contribution(k: KodairaType, c: &Component) -> Result<Rational, MwlError> {
    check(k, c)?;
    Ok(match (k, c) {
        (KodairaType::I(n), Component::Cyclic { index }) => {
            let i = index.value as i64;
            frac(i * (n as i64 - i), n as i64)
        }
        (_, Component::IvStarIdentity) => Rational::zero(),
        _ => frac(4, 3),
    })
}

/// Local correction `contr_v(P, Q)` for the height pairing.
pub fn contribution_pair(k: KodairaType, a: &Component, b: &Component) -> Result<Rational, MwlError> {
    check(k, a)?;
    check(k, b)?;
    Ok(match (k, a, b) {
        (KodairaType::I(n), Component::Cyclic { index: x }, Component::Cyclic { index: y }) => {
            let (i, j) = (x.value.min(y.value) as i64, x.value.max(y.value) as i64);
            frac(i * (n as i64 - j), n as i64)
        }
        (_, Component::IvStarIdentity, _) | (_, _, Component::IvStarIdentity) => Rational::zero(),
        (_, Component::IvStarBranch { branch: p, .. }, Component::IvStarBranch { branch: q, .. }) => {
            if p == q {
                frac(4, 3)
            } else {
                frac(2, 3)
            }
        }
        _ => unreachable!("checked above"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSlot {
    pub id: String,
    pub kodaira: KodairaType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightContext {
    /// Holomorphic Euler characteristic of the elliptic surface.
    pub chi: u32,
    pub fibers: Vec<FiberSlot>,
}

impl HeightContext {
    pub fn new(chi: u32, fibers: impl IntoIterator<Item = (impl Into<String>, KodairaType)>) -> Self {
        assert!(chi >= 1);
        HeightContext { chi, fibers: fibers.into_iter().map(|(id, kodaira)| FiberSlot { id: id.into(), kodaira }).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionData {
    pub name: String,
    /// `(P·O)`.
    pub dot_zero: u32,
    pub components: BTreeMap<String, Component>,
    pub is_zero: bool,
}

impl SectionData {
    pub fn new(name: &str, dot_zero: u32, components: impl IntoIterator<Item = (impl Into<String>, Component)>) -> Self {
        SectionData {
            name: name.into(),
            dot_zero,
            components: components.into_iter().map(|(f, c)| (f.into(), c)).collect(),
            is_zero: false,
        }
    }

    pub fn zero(name: &str) -> Self {
        SectionData { name: name.into(), dot_zero: 0, components: BTreeMap::new(), is_zero: true }
    }

    fn component(&self, fiber: &str) -> Result<&Component, MwlError> {
        self.components
            .get(fiber)
            .ok_or_else(|| MwlError::MissingComponent { section: self.name.clone(), fiber: fiber.to_string() })
    }
}

fn identity_of(k: KodairaType) -> Result<Component, MwlError> {
    match k {
        KodairaType::I(n) => Ok(Component::Cyclic { index: ZMod::new(0, n) }),
        KodairaType::IVStar => Ok(Component::IvStarIdentity),
        _ => Err(MwlError::Unsupported(k)),
    }
}

/// `⟨P, P⟩ = 2χ + 2(P·O) − Σ contr_v(P)`; the zero section has height 0.
pub fn height(ctx: &HeightContext, p: &SectionData) -> Result<Rational, MwlError> {
    if p.is_zero {
        return Ok(Rational::zero());
    }
    let mut h = Rational::from_integer((2 * ctx.chi as i64 + 2 * p.dot_zero as i64).into());
    for f in &ctx.fibers {
        h -= contribution(f.kodaira, p.component(&f.id)?)?;
    }
    Ok(h)
}

/// `⟨P, Q⟩ = χ + (P·O) + (Q·O) − (P·Q) − Σ contr_v(P, Q)`.
pub fn height_pair(ctx: &HeightContext, p: &SectionData, q: &SectionData, dot_pq: i64) -> Result<Rational, MwlError> {
    if p.is_zero || q.is_zero {
        return Ok(Rational::zero());
    }
    let base = ctx.chi as i64 + p.dot_zero as i64 + q.dot_zero as i64 - dot_pq;
    let mut h = Rational::from_integer(base.into());
    for f in &ctx.fibers {
        h -= contribution_pair(f.kodaira, p.component(&f.id)?, q.component(&f.id)?)?;
    }
    Ok(h)
}

pub fn is_torsion(ctx: &HeightContext, p: &SectionData) -> Result<bool, MwlError> {
    Ok(height(ctx, p)?.is_zero())
}

/// Image of a sum of sections in the component group `ℤ/n`.
pub fn component_index_sum(indices: &[ZMod]) -> Result<ZMod, MwlError> {
    let (first, rest) = indices.split_first().ok_or(MwlError::Empty)?;
    rest.iter().try_fold(*first, |acc, x| acc.add(*x))
}

/// Component data of the zero section for every fiber of the context.
pub fn zero_components(ctx: &HeightContext) -> Result<BTreeMap<String, Component>, MwlError> {
    ctx.fibers.iter().map(|f| Ok((f.id.clone(), identity_of(f.kodaira)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{cartan_matrix, RootFamily, RootType};
    use crate::scalars::inverse;
    use crate::scalars::rational::rat;

    fn cyc(i: i64) -> Component {
        Component::Cyclic { index: ZMod::new(i, 8) }
    }

    fn phi1() -> HeightContext {
        HeightContext::new(2, [("N1", KodairaType::I(8)), ("eN1", KodairaType::I(8))])
    }

    #[test]
    fn contributions() {
        assert_eq!(contribution(KodairaType::I(8), &cyc(4)).unwrap(), rat(2));
        assert_eq!(contribution(KodairaType::I(8), &cyc(0)).unwrap(), rat(0));
        let t = Component::IvStarBranch { branch: 2, depth: 2 };
        assert_eq!(contribution(KodairaType::IVStar, &t).unwrap(), frac(4, 3));
        assert!(contribution(KodairaType::IVStar, &Component::IvStarBranch { branch: 2, depth: 1 }).is_err());
        assert_eq!(contribution(KodairaType::IIStar, &cyc(0)), Err(MwlError::Unsupported(KodairaType::IIStar)));
        assert!(contribution(KodairaType::I(7), &cyc(1)).is_err());
    }

    #[test]
    fn ivstar_terminal_is_inverse_cartan_entry() {
        // the E6 terminal diagonal entry of the inverse Cartan matrix is the
        // IV* correction, and det E6 = 3 = det A2 (discriminant of the complement)
        let e6 = cartan_matrix(RootType::new(RootFamily::E, 6).unwrap());
        let inv = inverse(e6.gram()).unwrap();
        assert_eq!(inv[0][0], frac(4, 3));
        assert_eq!(inv[5][5], frac(4, 3));
        assert_eq!(inv[0][5], frac(2, 3));
        let a2 = cartan_matrix(RootType::new(RootFamily::A, 2).unwrap());
        assert_eq!(e6.det(), a2.det());
        assert_eq!(e6.det(), rat(3));
    }

    #[test]
    fn torsion_sections() {
        let ctx = phi1();
        let c12 = SectionData::new("C12", 0, [("N1", cyc(4)), ("eN1", cyc(4))]);
        assert_eq!(height(&ctx, &c12).unwrap(), rat(0));
        assert!(is_torsion(&ctx, &c12).unwrap());
        assert_eq!(height(&ctx, &SectionData::zero("C21")).unwrap(), rat(0));
        let narrow = SectionData::new("P", 0, [("M2", Component::IvStarIdentity)]);
        let ctx2 = HeightContext::new(1, [("M2", KodairaType::IVStar)]);
        assert_eq!(height(&ctx2, &narrow).unwrap(), rat(2));
        assert!(!is_torsion(&ctx2, &narrow).unwrap());
        let missing = SectionData::new("Q", 0, [("N1", cyc(1))]);
        assert!(matches!(height(&ctx, &missing), Err(MwlError::MissingComponent { .. })));
    }

    #[test]
    fn pairing_diagonal_matches_height() {
        // a section is a (−χ)-curve, so ⟨P,P⟩ = height_pair(P, P) with (P·P) = −χ
        let ctx = phi1();
        for i in 0..8 {
            for j in 0..8 {
                for d in 0..3 {
                    let p = SectionData::new("P", d, [("N1", cyc(i)), ("eN1", cyc(j))]);
                    assert_eq!(height(&ctx, &p).unwrap(), height_pair(&ctx, &p, &p, -2).unwrap());
                }
            }
        }
    }

    #[test]
    fn index_sums() {
        assert_eq!(component_index_sum(&[ZMod::new(0, 8), ZMod::new(4, 8)]).unwrap(), ZMod::new(4, 8));
        assert_eq!(component_index_sum(&[ZMod::new(3, 8), ZMod::new(5, 8)]).unwrap().value(), 0);
        assert_eq!(component_index_sum(&[ZMod::new(0, 8), ZMod::new(0, 3)]), Err(MwlError::MixedModuli(8, 3)));
        assert_eq!(component_index_sum(&[]), Err(MwlError::Empty));
    }
}
