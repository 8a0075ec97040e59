use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use super::{verify_isometry, Configuration, Incidence, IsometryPerm, SurfaceError, SurfaceTag};
use crate::scalars::rational::{as_integer, rat};
use crate::scalars::Rational;

fn digits(label: &str, prefix: char) -> Option<Vec<u32>> {
    let rest = label.strip_prefix(prefix)?;
    let d: Option<Vec<u32>> = rest.chars().map(|c| c.to_digit(10)).collect();
    d.filter(|d| !d.is_empty())
}

/// Name of the image curve of an ε-orbit, plus an optional alias.
fn orbit_name(members: &[&str]) -> (String, Option<String>) {
    let mut es = members.iter().filter_map(|m| digits(m, 'E'));
    if let Some(d) = es.next() {
        if d.len() == 1 {
            return (format!("H{}", d[0]), None);
        }
    }
    let cs: Vec<Vec<u32>> = members.iter().filter_map(|m| digits(m, 'C')).collect();
    if let Some(d) = cs.iter().find(|d| d.len() == 2) {
        let (i, j) = (d[0].max(d[1]), d[0].min(d[1]));
        let alias = (i != j).then(|| format!("D{j}{i}"));
        return (format!("D{i}{j}"), alias);
    }
    (format!("[{}]", members.join("|")), None)
}

/// Push the configuration down along the free double cover defined by
/// `eps`. Curves are ε-orbits and `(A·B)_Z = (π*A·π*B)/2`.
pub fn quotient_pushforward(config: &Configuration, eps: &IsometryPerm) -> Result<Configuration, SurfaceError> {
    let report = verify_isometry(config, eps)?;
    if !report.fixed_labels.is_empty() {
        return Err(SurfaceError::NotFree(report.fixed_labels));
    }
    if !eps.involution {
        return Err(SurfaceError::NotInvolution(eps.name.clone()));
    }
    // orbits in first-appearance order; the first member is the representative
    let mut orbits: Vec<(String, Vec<String>)> = Vec::new();
    let mut orbit_of: BTreeMap<String, usize> = BTreeMap::new();
    let mut aliases = Vec::new();
    for l in config.labels() {
        if orbit_of.contains_key(&l) {
            continue;
        }
        let img = eps.apply(&l).to_string();
        let (name, alias) = orbit_name(&[&l, &img]);
        orbit_of.insert(l.clone(), orbits.len());
        orbit_of.insert(img.clone(), orbits.len());
        if let Some(a) = alias {
            aliases.push((a, name.clone()));
        }
        orbits.push((name, vec![l, img]));
    }
    let pull = |k: usize| -> BTreeMap<String, Rational> { orbits[k].1.iter().map(|m| (m.clone(), rat(1))).collect() };
    let mut z = Configuration::new(SurfaceTag::Enriques, 1);
    let mut table = vec![vec![Rational::zero(); orbits.len()]; orbits.len()];
    for a in 0..orbits.len() {
        for b in a..orbits.len() {
            let up = config.intersect(&pull(a), &pull(b))?;
            let even = as_integer(&up).map(|n| n.is_even()).unwrap_or(false);
            if !even {
                return Err(SurfaceError::OddPushforward { a: orbits[a].0.clone(), b: orbits[b].0.clone() });
            }
            table[a][b] = up / rat(2);
        }
    }
    for (a, (name, _)) in orbits.iter().enumerate() {
        z.add_curve(name, table[a][a].clone());
    }
    for a in 0..orbits.len() {
        for b in a + 1..orbits.len() {
            if !table[a][b].is_zero() {
                z.set_pairing(&orbits[a].0, &orbits[b].0, table[a][b].clone())?;
            }
        }
    }
    for (a, n) in aliases {
        z.add_alias(&a, &n);
    }
    // Markings Q_ij come from P_ij; coordinates survive on representatives.
    for m in config.markings() {
        let Some(d) = digits(&m.name, 'P').filter(|d| d.len() == 2) else { continue };
        let on = m
            .on
            .iter()
            .map(|inc| {
                let k = orbit_of[&inc.curve];
                let representative = orbits[k].1[0] == inc.curve;
                Incidence {
                    curve: orbits[k].0.clone(),
                    coordinate: if representative { inc.coordinate.clone() } else { None },
                }
            })
            .collect();
        z.add_marking(&format!("Q{}{}", d[0], d[1]), on);
    }
    Ok(z)
}

/// The unique curve of `fixed` through the marking `point`.
pub fn unique_fixed_component(config: &Configuration, point: &str, fixed: &[String]) -> Result<String, SurfaceError> {
    let m = config.marking(point)?;
    let found: Vec<String> = fixed.iter().filter(|c| m.lies_on(c)).cloned().collect();
    match found.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(SurfaceError::NotUnique { marking: point.to_string(), found }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ProjValue;
    use crate::surface::{build_double_kummer, epsilon, extend_with_conics, theta};

    fn z() -> Configuration {
        quotient_pushforward(&extend_with_conics(&build_double_kummer()).unwrap(), &epsilon()).unwrap()
    }

    #[test]
    fn quotient_table() {
        let z = z();
        z.validate().unwrap();
        assert_eq!(z.len(), 14);
        assert_eq!(z.pairing("H2", "H2").unwrap(), rat(-2));
        assert_eq!(z.pairing("D32", "H2").unwrap(), rat(1));
        assert_eq!(z.pairing("D34", "H3").unwrap(), rat(1));
        assert_eq!(z.pairing("D22", "H2").unwrap(), rat(2));
        assert_eq!(z.pairing("D11", "D22").unwrap(), rat(2));
        assert!(z.gram().rank() <= 10);
        assert_eq!(z.marking("Q32").unwrap().coordinate_on("H2"), Some(&ProjValue::Infinity));
    }

    #[test]
    fn eight_cycle() {
        let z = z();
        let cyc = ["H2", "D32", "H3", "D31", "H1", "D41", "H4", "D42"];
        for (a, x) in cyc.iter().enumerate() {
            for (b, y) in cyc.iter().enumerate() {
                let d = (a + 8 - b) % 8;
                let want = match d {
                    0 => -2,
                    1 | 7 => 1,
                    _ => 0,
                };
                assert_eq!(z.pairing(x, y).unwrap(), rat(want), "{x}.{y}");
            }
        }
    }

    #[test]
    fn theta_is_not_free() {
        let x = build_double_kummer();
        assert!(matches!(quotient_pushforward(&x, &theta(&x)), Err(SurfaceError::NotFree(_))));
    }

    #[test]
    fn fixed_components() {
        let x = build_double_kummer();
        let fixed: Vec<String> = (1..=4).flat_map(|i| [format!("E{i}"), format!("F{i}")]).collect();
        assert_eq!(unique_fixed_component(&x, "P32", &fixed).unwrap(), "E2");
        assert_eq!(unique_fixed_component(&x, "P'32", &fixed).unwrap(), "F3");
        let mut y = x.clone();
        y.add_marking(
            "R",
            vec![Incidence { curve: "E1".into(), coordinate: None }, Incidence { curve: "F1".into(), coordinate: None }],
        );
        assert!(unique_fixed_component(&y, "R", &fixed).is_err());
    }
}
