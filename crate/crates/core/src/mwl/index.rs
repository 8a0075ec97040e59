use num_traits::Zero;

use super::{Component, MwlError, ZMod};
use crate::fibration::{Classification, KodairaType};
use crate::surface::Configuration;

fn node(fiber: &Classification, label: &str) -> Result<usize, MwlError> {
    fiber.graph.labels.iter().position(|l| l == label).ok_or_else(|| MwlError::UnknownLabel(label.to_string()))
}

/// The fiber component met by `section`. A section meets the fiber with
/// total intersection `Σ m_C (S·C) = 1`, so exactly once on a reduced component.
pub fn met_component(config: &Configuration, fiber: &Classification, section: &str) -> Result<String, MwlError> {
    let mut met = Vec::new();
    let mut total = 0i64;
    for (l, &m) in fiber.divisor.components() {
        let v = config.pairing(section, l).map_err(|_| MwlError::UnknownLabel(section.to_string()))?;
        if !v.is_zero() {
            met.push(l.clone());
            total += m as i64 * i64::try_from(v.to_integer()).unwrap_or(i64::MAX / 16);
        }
    }
    match (met.len(), total) {
        (1, 1) => Ok(met.pop().unwrap()),
        (count, _) => Err(MwlError::NotASection {
            section: section.to_string(),
            fiber: fiber.divisor.to_string(),
            count,
        }),
    }
}

/// Position of `component` in the `I_n` cycle, counting from
/// `zero_component` in the direction of its lexicographically smaller
/// neighbor.
pub fn cyclic_index(fiber: &Classification, zero_component: &str, component: &str) -> Result<ZMod, MwlError> {
    let n = match fiber.kodaira {
        Some(KodairaType::I(n)) if n >= 2 => n,
        other => return Err(MwlError::Shape(format!("expected I_n with n >= 2, got {other:?}"))),
    };
    let g = &fiber.graph;
    let start = node(fiber, zero_component)?;
    let target = node(fiber, component)?;
    let mut nbrs = g.neighbors(start);
    nbrs.sort_by(|&a, &b| g.labels[a].cmp(&g.labels[b]));
    let (mut prev, mut cur) = (start, start);
    for k in 0..n {
        if cur == target {
            return Ok(ZMod::new(k as i64, n));
        }
        let next = if k == 0 {
            nbrs[0]
        } else {
            g.neighbors(cur).into_iter().find(|&x| x != prev).unwrap_or(start)
        };
        prev = cur;
        cur = next;
    }
    Err(MwlError::Shape("component not on the cycle".into()))
}

/// IV* component relative to the terminal component `zero_component`.
/// Branches are numbered by the sorted labels of their terminal nodes.
pub fn ivstar_index(fiber: &Classification, zero_component: &str, component: &str) -> Result<Component, MwlError> {
    if fiber.kodaira != Some(KodairaType::IVStar) {
        return Err(MwlError::Shape(format!("expected IV*, got {:?}", fiber.kodaira)));
    }
    let g = &fiber.graph;
    let mut terminals: Vec<usize> = (0..g.len()).filter(|&i| g.node_weights[i] == 1).collect();
    terminals.sort_by(|&a, &b| g.labels[a].cmp(&g.labels[b]));
    let zero = node(fiber, zero_component)?;
    if !terminals.contains(&zero) {
        return Err(MwlError::Shape(format!("{zero_component} is not a terminal component")));
    }
    let c = node(fiber, component)?;
    if c == zero {
        return Ok(Component::IvStarIdentity);
    }
    for (b, &t) in terminals.iter().enumerate() {
        let middle = g.neighbors(t)[0];
        let branch = b as u8 + 1;
        if c == t {
            return Ok(Component::IvStarBranch { branch, depth: 2 });
        }
        if c == middle {
            return Ok(Component::IvStarBranch { branch, depth: 1 });
        }
    }
    Err(MwlError::Shape(format!("{component} is the central component")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::{classify_kodaira, FiberDivisor};
    use crate::surface::{build_double_kummer, extend_with_conics};

    #[test]
    fn kummer_sections_on_n1() {
        let x = extend_with_conics(&build_double_kummer()).unwrap();
        let n1: FiberDivisor = "E2+C32+F3+C31+E1+C41+F4+C42".parse().unwrap();
        let cl = classify_kodaira(&x, &n1).unwrap();
        let zero = met_component(&x, &cl, "C21").unwrap();
        assert_eq!(zero, "E1");
        let c12 = met_component(&x, &cl, "C12").unwrap();
        assert_eq!(cyclic_index(&cl, &zero, &c12).unwrap(), ZMod::new(4, 8));
        assert_eq!(cyclic_index(&cl, &zero, "C31").unwrap(), ZMod::new(1, 8));
        assert_eq!(cyclic_index(&cl, &zero, "C41").unwrap(), ZMod::new(7, 8));
        let c2 = met_component(&x, &cl, "C2").unwrap();
        assert_eq!(cyclic_index(&cl, &zero, &c2).unwrap().value(), 4);
        // E3 is disjoint from N1
        assert!(met_component(&x, &cl, "E3").is_err());
    }

    #[test]
    fn ivstar_branches() {
        let x = build_double_kummer();
        let n2: FiberDivisor = "E2+2C32+E1+2C31+E4+2C34+3F3".parse().unwrap();
        let cl = classify_kodaira(&x, &n2).unwrap();
        assert_eq!(ivstar_index(&cl, "E1", "E1").unwrap(), Component::IvStarIdentity);
        assert_eq!(ivstar_index(&cl, "E1", "E4").unwrap(), Component::IvStarBranch { branch: 3, depth: 2 });
        assert_eq!(ivstar_index(&cl, "E1", "C32").unwrap(), Component::IvStarBranch { branch: 2, depth: 1 });
        assert!(ivstar_index(&cl, "E1", "F3").is_err());
        assert!(ivstar_index(&cl, "C31", "E1").is_err());
    }
}
