use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Configuration, SurfaceError};

/// A permutation of curve labels, optionally with the induced map on markings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryPerm {
    pub name: String,
    pub map: BTreeMap<String, String>,
    pub marking_map: BTreeMap<String, String>,
    /// Declared involution; verified when set.
    pub involution: bool,
}

impl IsometryPerm {
    pub fn apply<'a>(&'a self, label: &'a str) -> &'a str {
        self.map.get(label).map(String::as_str).unwrap_or(label)
    }

    pub fn fixed_labels(&self) -> Vec<String> {
        self.map.iter().filter(|(a, b)| a == b).map(|(a, _)| a.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryReport {
    pub name: String,
    pub curves: usize,
    pub pairs_checked: usize,
    pub involution_checked: bool,
    pub markings_checked: usize,
    pub fixed_labels: Vec<String>,
}

/// Check that `perm` permutes the curve labels and preserves every pairing
/// (including self-intersections), is an involution if declared so, and maps
/// each marking to one lying on the image curves.
pub fn verify_isometry(config: &Configuration, perm: &IsometryPerm) -> Result<IsometryReport, SurfaceError> {
    let labels = config.labels();
    let domain: BTreeSet<&str> = labels.iter().map(String::as_str).collect();
    let keys: BTreeSet<&str> = perm.map.keys().map(String::as_str).collect();
    if keys != domain {
        let missing: Vec<_> = domain.symmetric_difference(&keys).collect();
        return Err(SurfaceError::DomainMismatch(format!("labels not matched: {missing:?}")));
    }
    let image: BTreeSet<&str> = perm.map.values().map(String::as_str).collect();
    if image != domain {
        return Err(SurfaceError::DomainMismatch("map is not a bijection of the curve labels".into()));
    }
    let mut pairs = 0;
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i..] {
            let before = config.pairing(a, b)?;
            let after = config.pairing(perm.apply(a), perm.apply(b))?;
            if before != after {
                return Err(SurfaceError::PairingNotPreserved { a: a.clone(), b: b.clone(), before, after });
            }
            pairs += 1;
        }
    }
    if perm.involution {
        for a in &labels {
            if perm.apply(perm.apply(a)) != a {
                return Err(SurfaceError::NotInvolution(a.clone()));
            }
        }
        for (m, n) in &perm.marking_map {
            if perm.marking_map.get(n) != Some(m) {
                return Err(SurfaceError::NotInvolution(m.clone()));
            }
        }
    }
    for (m, n) in &perm.marking_map {
        let src = config.marking(m)?;
        let dst = config.marking(n)?;
        let image: BTreeSet<&str> = src.on.iter().map(|i| perm.apply(&i.curve)).collect();
        let target: BTreeSet<&str> = dst.on.iter().map(|i| i.curve.as_str()).collect();
        if image != target {
            return Err(SurfaceError::MarkingMismatch(format!(
                "{m} on {:?} maps to {n} on {target:?}",
                src.on.iter().map(|i| &i.curve).collect::<Vec<_>>()
            )));
        }
    }
    Ok(IsometryReport {
        name: perm.name.clone(),
        curves: labels.len(),
        pairs_checked: pairs,
        involution_checked: perm.involution,
        markings_checked: perm.marking_map.len(),
        fixed_labels: perm.fixed_labels(),
    })
}

/// The shape required of ε: an involution swapping `E_i ↔ F_i`,
/// `C_ij ↔ C_ji` (i ≠ j) and `C_ii ↔ C_i`, fixing no curve label.
pub fn check_enriques_structure(perm: &IsometryPerm) -> Result<(), SurfaceError> {
    let want = |a: String, b: String| -> Result<(), SurfaceError> {
        match perm.map.get(&a) {
            Some(x) if *x == b => Ok(()),
            Some(x) => Err(SurfaceError::MarkingMismatch(format!("{} sends {a} to {x}, expected {b}", perm.name))),
            None => Err(SurfaceError::UnknownLabel(a)),
        }
    };
    for i in 1..=4 {
        want(format!("E{i}"), format!("F{i}"))?;
        want(format!("F{i}"), format!("E{i}"))?;
        want(format!("C{i}{i}"), format!("C{i}"))?;
        for j in 1..=4 {
            if i != j {
                want(format!("C{i}{j}"), format!("C{j}{i}"))?;
            }
        }
    }
    let fixed = perm.fixed_labels();
    if !fixed.is_empty() {
        return Err(SurfaceError::NotFree(fixed));
    }
    if !perm.involution {
        return Err(SurfaceError::NotInvolution(perm.name.clone()));
    }
    Ok(())
}
