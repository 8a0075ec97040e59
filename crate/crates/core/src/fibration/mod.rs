//! Genus-one fiber divisors: numerical validation, Kodaira classification
//! from weighted dual graphs, Euler numbers and the Shioda–Tate rank.

mod kodaira;

pub use kodaira::{classify_kodaira, Classification, KodairaType};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::scalars::rational::rat;
use crate::scalars::Rational;
use crate::surface::{Configuration, IsometryPerm};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FibrationError {
    #[error("unknown curve label {0:?}")]
    UnknownLabel(String),
    #[error("cannot parse fiber divisor {0:?}")]
    Parse(String),
    #[error("divisor is not a fiber: {0:?}")]
    NotAFiber(Vec<FiberFailure>),
    #[error("non-integral intersection between {0} and {1}")]
    NonIntegral(String, String),
    #[error("Shioda–Tate input inconsistent: {0}")]
    ShiodaTate(String),
}

/// Effective divisor supported on configuration curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDivisor {
    components: BTreeMap<String, u32>,
}

impl FiberDivisor {
    pub fn new(pairs: impl IntoIterator<Item = (impl Into<String>, u32)>) -> Self {
        let mut components = BTreeMap::new();
        for (l, m) in pairs {
            if m > 0 {
                *components.entry(l.into()).or_insert(0) += m;
            }
        }
        FiberDivisor { components }
    }

    pub fn components(&self) -> &BTreeMap<String, u32> {
        &self.components
    }

    pub fn multiplicity(&self, label: &str) -> u32 {
        self.components.get(label).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Image under a label permutation.
    pub fn map_labels(&self, perm: &IsometryPerm) -> Self {
        FiberDivisor::new(self.components.iter().map(|(l, &m)| (perm.apply(l).to_string(), m)))
    }

    /// Rewrite labels to their canonical configuration names (resolving aliases).
    pub fn canonical(&self, config: &Configuration) -> Result<Self, FibrationError> {
        let mut pairs = Vec::new();
        for (l, &m) in &self.components {
            let c = config.resolve(l).map_err(|_| FibrationError::UnknownLabel(l.clone()))?;
            pairs.push((c.to_string(), m));
        }
        Ok(FiberDivisor::new(pairs))
    }

    fn as_rational(&self) -> BTreeMap<String, Rational> {
        self.components.iter().map(|(l, &m)| (l.clone(), rat(m as i64))).collect()
    }
}

/// Parses `"E2 + 2C32 + 3*F3"`.
impl FromStr for FiberDivisor {
    type Err = FibrationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pairs = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let split = term.find(|c: char| !c.is_ascii_digit()).ok_or_else(|| FibrationError::Parse(s.into()))?;
            let (num, label) = term.split_at(split);
            let label = label.trim_start_matches('*').trim();
            let m = if num.is_empty() { 1 } else { num.parse().map_err(|_| FibrationError::Parse(s.into()))? };
            if label.is_empty() || m == 0 {
                return Err(FibrationError::Parse(s.into()));
            }
            pairs.push((label.to_string(), m));
        }
        Ok(FiberDivisor::new(pairs))
    }
}

impl fmt::Display for FiberDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (l, m)) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if *m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{m}{l}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for FiberDivisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.components.len()))?;
        for (l, k) in &self.components {
            m.serialize_entry(l, &k.to_string())?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberFailure {
    Empty,
    NonzeroDot {
        curve: String,
        #[serde(with = "crate::scalars::rational::serde_text")]
        value: Rational,
    },
    NonzeroSquare {
        #[serde(with = "crate::scalars::rational::serde_text")]
        value: Rational,
    },
    NotMinusTwo {
        curve: String,
        #[serde(with = "crate::scalars::rational::serde_text")]
        value: Rational,
    },
    Disconnected {
        unreachable: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberReport {
    pub divisor: FiberDivisor,
    /// `D·C` for every component `C`.
    pub dots: BTreeMap<String, String>,
    pub square: String,
    pub failures: Vec<FiberFailure>,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Numerical fiber conditions: `D·C = 0` for each component, `D² = 0`, all
/// components (−2)-curves, connected support. Failures carry witnesses.
pub fn validate_fiber(config: &Configuration, d: &FiberDivisor) -> Result<FiberReport, FibrationError> {
    let d = d.canonical(config)?;
    let mut failures = Vec::new();
    if d.is_empty() {
        failures.push(FiberFailure::Empty);
    }
    let dr = d.as_rational();
    let mut dots = BTreeMap::new();
    let lookup = |a: &str, b: &str| config.pairing(a, b).map_err(|_| FibrationError::UnknownLabel(a.to_string()));
    for c in d.components.keys() {
        let one = BTreeMap::from([(c.clone(), rat(1))]);
        let v = config.intersect(&dr, &one).map_err(|_| FibrationError::UnknownLabel(c.clone()))?;
        if !v.is_zero() {
            failures.push(FiberFailure::NonzeroDot { curve: c.clone(), value: v.clone() });
        }
        dots.insert(c.clone(), crate::scalars::rational::to_text(&v));
        let s = lookup(c, c)?;
        if s != rat(-2) {
            failures.push(FiberFailure::NotMinusTwo { curve: c.clone(), value: s });
        }
    }
    let square = config.intersect(&dr, &dr).map_err(|e| FibrationError::UnknownLabel(e.to_string()))?;
    if !square.is_zero() {
        failures.push(FiberFailure::NonzeroSquare { value: square.clone() });
    }
    if let Some(first) = d.components.keys().next() {
        let mut seen = BTreeSet::from([first.clone()]);
        let mut stack = vec![first.clone()];
        while let Some(a) = stack.pop() {
            for b in d.components.keys() {
                if !seen.contains(b) && !lookup(&a, b)?.is_zero() {
                    seen.insert(b.clone());
                    stack.push(b.clone());
                }
            }
        }
        let unreachable: Vec<String> = d.components.keys().filter(|c| !seen.contains(*c)).cloned().collect();
        if !unreachable.is_empty() {
            failures.push(FiberFailure::Disconnected { unreachable });
        }
    }
    Ok(FiberReport { divisor: d, dots, square: crate::scalars::rational::to_text(&square), failures })
}

/// `ρ − 2 − Σ (m_v − 1)`.
pub fn shioda_tate_rank(rho: i64, fibers: &[KodairaType]) -> Result<i64, FibrationError> {
    if rho < 2 {
        return Err(FibrationError::ShiodaTate(format!("Picard number {rho} < 2")));
    }
    let r = rho - 2 - fibers.iter().map(|k| k.component_count() as i64 - 1).sum::<i64>();
    if r < 0 {
        return Err(FibrationError::ShiodaTate(format!("negative rank {r}")));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_double_kummer, epsilon, extend_with_conics, quotient_pushforward};

    fn x() -> Configuration {
        extend_with_conics(&build_double_kummer()).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let d: FiberDivisor = "E2 + 2C32 + 3*F3".parse().unwrap();
        assert_eq!(d.multiplicity("C32"), 2);
        assert_eq!(d.multiplicity("F3"), 3);
        assert_eq!(d.to_string(), "2C32 + E2 + 3F3");
        assert!("2".parse::<FiberDivisor>().is_err());
    }

    #[test]
    fn kummer_fibers() {
        let x = x();
        let n1: FiberDivisor = "E2+C32+F3+C31+E1+C41+F4+C42".parse().unwrap();
        assert!(validate_fiber(&x, &n1).unwrap().passed());
        let n2: FiberDivisor = "E2+2C32+E1+2C31+E4+2C34+3F3".parse().unwrap();
        assert!(validate_fiber(&x, &n2).unwrap().passed());
        assert!(validate_fiber(&x, &n1.map_labels(&epsilon())).unwrap().passed());
        let r = validate_fiber(&x, &"E1".parse().unwrap()).unwrap();
        assert!(r.failures.contains(&FiberFailure::NonzeroSquare { value: rat(-2) }));
        assert!(r.failures.contains(&FiberFailure::NonzeroDot { curve: "E1".into(), value: rat(-2) }));
        let r = validate_fiber(&x, &"E1+E2".parse().unwrap()).unwrap();
        assert!(r.failures.iter().any(|f| matches!(f, FiberFailure::Disconnected { .. })));
        assert!(validate_fiber(&x, &"E9".parse().unwrap()).is_err());
    }

    #[test]
    fn quotient_fibers() {
        let z = quotient_pushforward(&x(), &epsilon()).unwrap();
        let m1: FiberDivisor = "H2+D32+H3+D31+H1+D41+H4+D42".parse().unwrap();
        assert!(validate_fiber(&z, &m1).unwrap().passed());
        let m2: FiberDivisor = "H2+2D32+H1+2D31+H4+2D34+3H3".parse().unwrap();
        assert!(validate_fiber(&z, &m2).unwrap().passed());
    }

    #[test]
    fn shioda_tate() {
        assert_eq!(shioda_tate_rank(18, &[KodairaType::I(8), KodairaType::I(8)]).unwrap(), 2);
        assert_eq!(shioda_tate_rank(10, &[KodairaType::IVStar]).unwrap(), 2);
        assert_eq!(shioda_tate_rank(2, &[]).unwrap(), 0);
        assert!(shioda_tate_rank(1, &[]).is_err());
        assert!(shioda_tate_rank(4, &[KodairaType::IIStar]).is_err());
    }
}
