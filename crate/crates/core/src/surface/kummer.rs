use std::collections::BTreeMap;

use num_traits::One;

use super::{Configuration, Incidence, IsometryPerm, SurfaceError, SurfaceTag};
use crate::scalars::rational::rat;
use crate::scalars::{ProjValue, RatFunc, Rational};

/// Labels of the double Kummer pencil, in configuration order.
pub const KUMMER_CURVES: [&str; 24] = [
    "E1", "E2", "E3", "E4", "F1", "F2", "F3", "F4", "C11", "C12", "C13", "C14", "C21", "C22", "C23", "C24", "C31",
    "C32", "C33", "C34", "C41", "C42", "C43", "C44",
];

fn coordinate(k: usize, generic: &str) -> ProjValue<RatFunc> {
    match k {
        1 => ProjValue::Finite(RatFunc::constant(Rational::one())),
        2 => ProjValue::Finite(RatFunc::var(generic)),
        3 => ProjValue::Infinity,
        4 => ProjValue::Finite(RatFunc::constant(rat(0))),
        _ => panic!("index {k} out of range 1..=4"),
    }
}

/// Coordinate `x` of `P_ij = E_j ∩ C_ij` along `E_j`; depends only on `i`.
pub fn x_coordinate(i: usize) -> ProjValue<RatFunc> {
    coordinate(i, "t")
}

/// Coordinate `u` of `P'_ij = F_i ∩ C_ij` along `F_i`; depends only on `j`.
pub fn u_coordinate(j: usize) -> ProjValue<RatFunc> {
    coordinate(j, "s")
}

pub fn build_double_kummer() -> Configuration {
    let mut c = Configuration::new(SurfaceTag::K3, 2);
    for l in KUMMER_CURVES {
        c.add_curve(l, rat(-2));
    }
    for i in 1..=4 {
        for j in 1..=4 {
            let cij = format!("C{i}{j}");
            c.set_pairing(&format!("E{j}"), &cij, rat(1)).expect("known labels");
            c.set_pairing(&format!("F{i}"), &cij, rat(1)).expect("known labels");
        }
    }
    for i in 1..=4 {
        for j in 1..=4 {
            let cij = format!("C{i}{j}");
            c.add_marking(
                &format!("P{i}{j}"),
                vec![
                    Incidence { curve: format!("E{j}"), coordinate: Some(x_coordinate(i)) },
                    Incidence { curve: cij.clone(), coordinate: None },
                ],
            );
            c.add_marking(
                &format!("P'{i}{j}"),
                vec![
                    Incidence { curve: format!("F{i}"), coordinate: Some(u_coordinate(j)) },
                    Incidence { curve: cij, coordinate: None },
                ],
            );
        }
    }
    c
}

/// Add the conics `C1..C4` with `C_i·E_i = C_i·F_i = 1` and `C_i·C_ii = 0`.
/// Pairings with the other `E_j, F_j, C_kj (k ≠ j)` and between conics are
/// ε-images of Kummer pairings and vanish. `C_i·C_jj` (j ≠ i) is forced by
/// the fiber relations `2E_j + Σ_k C_kj ≡ 2E_i + Σ_k C_ki`: see
/// [`forced_diagonal_pairing`].
pub fn extend_with_conics(base: &Configuration) -> Result<Configuration, SurfaceError> {
    let labels = base.labels();
    if base.tag != SurfaceTag::K3 || labels.len() != KUMMER_CURVES.len() || labels.iter().zip(KUMMER_CURVES).any(|(a, b)| a != b) {
        return Err(SurfaceError::WrongBase("expected exactly the 24-curve double Kummer configuration".into()));
    }
    let mut c = base.clone();
    for i in 1..=4 {
        let ci = format!("C{i}");
        c.add_curve(&ci, rat(-2));
        c.set_pairing(&ci, &format!("E{i}"), rat(1))?;
        c.set_pairing(&ci, &format!("F{i}"), rat(1))?;
    }
    for i in 1..=4 {
        for j in (1..=4).filter(|&j| j != i) {
            let v = forced_diagonal_pairing(&c, i, j)?;
            c.set_pairing(&format!("C{i}"), &format!("C{j}{j}"), v)?;
        }
    }
    for i in 1..=4 {
        let ci = format!("C{i}");
        let coord = (i == 2).then(|| ProjValue::Finite(RatFunc::var("t")));
        c.add_marking(
            &format!("P{i}"),
            vec![Incidence { curve: ci, coordinate: None }, Incidence { curve: format!("F{i}"), coordinate: coord }],
        );
    }
    Ok(c)
}

/// `C_i·C_jj` from equating `C_i·(2E_j + Σ_k C_kj)` with
/// `C_i·(2E_i + Σ_k C_ki)`, all other terms being already known.
fn forced_diagonal_pairing(c: &Configuration, i: usize, j: usize) -> Result<Rational, SurfaceError> {
    let ci = format!("C{i}");
    let fiber_dot = |col: usize, skip: Option<usize>| -> Result<Rational, SurfaceError> {
        let mut acc = rat(2) * c.pairing(&ci, &format!("E{col}"))?;
        for k in (1..=4).filter(|&k| Some(k) != skip) {
            acc += c.pairing(&ci, &format!("C{k}{col}"))?;
        }
        Ok(acc)
    };
    Ok(fiber_dot(i, None)? - fiber_dot(j, Some(j))?)
}

/// θ acts trivially on the Picard group, so on labels it is the identity.
pub fn theta(config: &Configuration) -> IsometryPerm {
    let map = config.labels().into_iter().map(|l| (l.clone(), l)).collect();
    let marking_map = config.markings().iter().map(|m| (m.name.clone(), m.name.clone())).collect();
    IsometryPerm { name: "theta".into(), map, marking_map, involution: true }
}

/// ε on the extended configuration: `E_i ↔ F_i`, `C_ij ↔ C_ji`, `C_ii ↔ C_i`.
pub fn epsilon() -> IsometryPerm {
    let mut map = BTreeMap::new();
    let mut marking_map = BTreeMap::new();
    let pair = |m: &mut BTreeMap<String, String>, a: String, b: String| {
        m.insert(a.clone(), b.clone());
        m.insert(b, a);
    };
    for i in 1..=4 {
        pair(&mut map, format!("E{i}"), format!("F{i}"));
        pair(&mut map, format!("C{i}{i}"), format!("C{i}"));
        pair(&mut marking_map, format!("P{i}{i}"), format!("P{i}"));
        for j in 1..=4 {
            if i < j {
                pair(&mut map, format!("C{i}{j}"), format!("C{j}{i}"));
            }
            if i != j {
                marking_map.insert(format!("P{i}{j}"), format!("P'{j}{i}"));
                marking_map.insert(format!("P'{j}{i}"), format!("P{i}{j}"));
            }
        }
    }
    IsometryPerm { name: "epsilon".into(), map, marking_map, involution: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{signature, Signature};

    #[test]
    fn incidences() {
        let x = build_double_kummer();
        x.validate().unwrap();
        assert_eq!(x.pairing("E2", "C32").unwrap(), rat(1));
        assert_eq!(x.pairing("F3", "C32").unwrap(), rat(1));
        assert_eq!(x.pairing("E1", "F1").unwrap(), rat(0));
        assert_eq!(x.pairing("C12", "C21").unwrap(), rat(0));
        let p = x.marking("P23").unwrap();
        assert_eq!(p.coordinate_on("E3"), Some(&ProjValue::Finite(RatFunc::var("t"))));
        assert_eq!(x.marking("P32").unwrap().coordinate_on("E2"), Some(&ProjValue::Infinity));
    }

    #[test]
    fn rank_and_signature() {
        let g = build_double_kummer().gram();
        assert_eq!(g.rank(), 18);
        assert_eq!(signature(&g), Signature { plus: 1, minus: 17, zero: 6 });
    }

    #[test]
    fn conics() {
        let y = extend_with_conics(&build_double_kummer()).unwrap();
        y.validate().unwrap();
        assert_eq!(y.pairing("C2", "F2").unwrap(), rat(1));
        assert_eq!(y.pairing("C2", "C22").unwrap(), rat(0));
        assert_eq!(y.pairing("C1", "E3").unwrap(), rat(0));
        assert_eq!(y.pairing("C1", "C33").unwrap(), rat(2));
        assert_eq!(y.pairing("C1", "C3").unwrap(), rat(0));
        // the conics add no new classes: Picard number stays 18
        assert_eq!(y.gram().rank(), 18);
        assert!(extend_with_conics(&y).is_err());
    }
}
