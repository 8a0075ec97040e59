use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::SurfaceError;
use crate::lattice::GramLattice;
use crate::scalars::rational::{self, Rational};
use crate::scalars::{ProjValue, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceTag {
    K3,
    Enriques,
    /// Blow-up of the Enriques surface after the given number of stages.
    Blowup(u8),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub label: String,
    pub self_intersection: Rational,
}

/// A marked point lies on a curve, optionally with its affine coordinate
/// along that curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Incidence {
    pub curve: String,
    pub coordinate: Option<ProjValue<RatFunc>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Marking {
    pub name: String,
    pub on: Vec<Incidence>,
}

impl Marking {
    pub fn lies_on(&self, curve: &str) -> bool {
        self.on.iter().any(|i| i.curve == curve)
    }

    pub fn coordinate_on(&self, curve: &str) -> Option<&ProjValue<RatFunc>> {
        self.on.iter().find(|i| i.curve == curve)?.coordinate.as_ref()
    }
}

/// Finite set of labeled curves with a symmetric intersection table.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub tag: SurfaceTag,
    pub chi: i64,
    curves: Vec<Curve>,
    pairing: Vec<Vec<Rational>>,
    markings: Vec<Marking>,
    aliases: BTreeMap<String, String>,
    index: BTreeMap<String, usize>,
}

impl Configuration {
    pub fn new(tag: SurfaceTag, chi: i64) -> Self {
        Configuration {
            tag,
            chi,
            curves: Vec::new(),
            pairing: Vec::new(),
            markings: Vec::new(),
            aliases: BTreeMap::new(),
            index: BTreeMap::new(),
        }
    }

    pub fn add_curve(&mut self, label: &str, self_intersection: Rational) -> usize {
        assert!(!self.index.contains_key(label), "duplicate curve {label}");
        let k = self.curves.len();
        for row in self.pairing.iter_mut() {
            row.push(Rational::zero());
        }
        let mut row = vec![Rational::zero(); k + 1];
        row[k] = self_intersection.clone();
        self.pairing.push(row);
        self.curves.push(Curve { label: label.to_string(), self_intersection });
        self.index.insert(label.to_string(), k);
        k
    }

    pub fn add_alias(&mut self, alias: &str, label: &str) {
        self.aliases.insert(alias.to_string(), label.to_string());
    }

    /// Set the pairing of two distinct curves (symmetrically).
    pub fn set_pairing(&mut self, a: &str, b: &str, value: Rational) -> Result<(), SurfaceError> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        if i == j {
            self.curves[i].self_intersection = value.clone();
        }
        self.pairing[i][j] = value.clone();
        self.pairing[j][i] = value;
        Ok(())
    }

    pub fn add_marking(&mut self, name: &str, on: Vec<Incidence>) {
        self.markings.push(Marking { name: name.to_string(), on });
    }

    /// Canonical label for a label or alias.
    pub fn resolve<'a>(&'a self, label: &'a str) -> Result<&'a str, SurfaceError> {
        let l = self.aliases.get(label).map(String::as_str).unwrap_or(label);
        if self.index.contains_key(l) {
            Ok(l)
        } else {
            Err(SurfaceError::UnknownLabel(label.to_string()))
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize, SurfaceError> {
        let l = self.resolve(label)?;
        Ok(self.index[l])
    }

    pub fn contains(&self, label: &str) -> bool {
        self.resolve(label).is_ok()
    }

    pub fn pairing(&self, a: &str, b: &str) -> Result<Rational, SurfaceError> {
        Ok(self.pairing[self.index_of(a)?][self.index_of(b)?].clone())
    }

    pub fn pairing_at(&self, i: usize, j: usize) -> &Rational {
        &self.pairing[i][j]
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn labels(&self) -> Vec<String> {
        self.curves.iter().map(|c| c.label.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn markings(&self) -> &[Marking] {
        &self.markings
    }

    pub fn marking(&self, name: &str) -> Result<&Marking, SurfaceError> {
        self.markings
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| SurfaceError::UnknownMarking(name.to_string()))
    }

    pub fn aliases(&self) -> &BTreeMap<String, String> {
        &self.aliases
    }

    /// Full Gram matrix of the curve classes.
    pub fn gram(&self) -> GramLattice {
        GramLattice::new(self.labels(), self.pairing.clone()).expect("pairing is kept symmetric")
    }

    /// Intersection of two divisors given as label → coefficient maps.
    pub fn intersect(&self, a: &BTreeMap<String, Rational>, b: &BTreeMap<String, Rational>) -> Result<Rational, SurfaceError> {
        let mut acc = Rational::zero();
        for (la, ca) in a {
            let i = self.index_of(la)?;
            for (lb, cb) in b {
                let j = self.index_of(lb)?;
                acc += ca * cb * &self.pairing[i][j];
            }
        }
        Ok(acc)
    }

    /// Structural invariants: symmetry, non-negative distinct intersections,
    /// markings on existing curves, and (−2)-curves on a K3.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        let n = self.len();
        for i in 0..n {
            if self.pairing[i][i] != self.curves[i].self_intersection {
                return Err(SurfaceError::Invalid(format!("self-intersection of {} out of sync", self.curves[i].label)));
            }
            if self.tag == SurfaceTag::K3 && self.pairing[i][i] != Rational::from_integer((-2).into()) {
                return Err(SurfaceError::Invalid(format!("{} is not a (-2)-curve", self.curves[i].label)));
            }
            for j in 0..i {
                if self.pairing[i][j] != self.pairing[j][i] {
                    return Err(SurfaceError::Invalid(format!(
                        "pairing of {} and {} not symmetric",
                        self.curves[i].label, self.curves[j].label
                    )));
                }
                if self.pairing[i][j].is_negative() {
                    return Err(SurfaceError::Invalid(format!(
                        "distinct curves {} and {} meet negatively",
                        self.curves[i].label, self.curves[j].label
                    )));
                }
            }
        }
        for m in &self.markings {
            if m.on.is_empty() {
                return Err(SurfaceError::Invalid(format!("marking {} lies on no curve", m.name)));
            }
            for inc in &m.on {
                self.index_of(&inc.curve)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct CurveJson<'a> {
    label: &'a str,
    self_intersection: String,
}

#[derive(Serialize)]
struct IncidenceJson<'a> {
    curve: &'a str,
    coordinate: Option<String>,
}

#[derive(Serialize)]
struct MarkingJson<'a> {
    name: &'a str,
    on: Vec<IncidenceJson<'a>>,
}

#[derive(Serialize)]
struct ConfigJson<'a> {
    tag: SurfaceTag,
    chi: i64,
    curves: Vec<CurveJson<'a>>,
    /// `[a, b, value]` for each nonzero pairing of distinct curves.
    pairing: Vec<(&'a str, &'a str, String)>,
    markings: Vec<MarkingJson<'a>>,
    aliases: &'a BTreeMap<String, String>,
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.len();
        let mut pairing = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.pairing[i][j].is_zero() {
                    pairing.push((
                        self.curves[i].label.as_str(),
                        self.curves[j].label.as_str(),
                        rational::to_text(&self.pairing[i][j]),
                    ));
                }
            }
        }
        ConfigJson {
            tag: self.tag,
            chi: self.chi,
            curves: self
                .curves
                .iter()
                .map(|c| CurveJson { label: &c.label, self_intersection: rational::to_text(&c.self_intersection) })
                .collect(),
            pairing,
            markings: self
                .markings
                .iter()
                .map(|m| MarkingJson {
                    name: &m.name,
                    on: m
                        .on
                        .iter()
                        .map(|i| IncidenceJson { curve: &i.curve, coordinate: i.coordinate.as_ref().map(|c| c.to_string()) })
                        .collect(),
                })
                .collect(),
            aliases: &self.aliases,
        }
        .serialize(s)
    }
}
