use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{validate_fiber, FiberDivisor, FibrationError};
use crate::graph::{isomorphism, WeightedGraph};
use crate::scalars::rational::as_integer;
use crate::scalars::Rational;
use crate::surface::Configuration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KodairaType {
    /// `I_n`, n ≥ 1.
    I(u32),
    /// `I*_n`, n ≥ 0.
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl KodairaType {
    pub fn euler_number(self) -> u32 {
        match self {
            KodairaType::I(n) => n,
            KodairaType::IStar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Number of irreducible components.
    pub fn component_count(self) -> u32 {
        match self {
            KodairaType::I(n) => n,
            KodairaType::IStar(n) => n + 5,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

impl Serialize for KodairaType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Weighted tree given by parent pointers; node 0 is the root.
fn tree(weights: &[u32], parent: &[usize]) -> WeightedGraph {
    let mut g = WeightedGraph::plain(weights.len());
    g.node_weights = weights.to_vec();
    for (k, &p) in parent.iter().enumerate() {
        g.add_edge(k + 1, p, 1);
    }
    g
}

fn template(k: KodairaType) -> WeightedGraph {
    match k {
        KodairaType::I(n) if n >= 3 => {
            let mut g = WeightedGraph::plain(n as usize);
            for i in 0..n as usize {
                g.add_edge(i, (i + 1) % n as usize, 1);
            }
            g
        }
        KodairaType::I(2) | KodairaType::III => {
            let mut g = WeightedGraph::plain(2);
            g.add_edge(0, 1, 2);
            g
        }
        KodairaType::IV => {
            let mut g = WeightedGraph::plain(3);
            g.add_edge(0, 1, 1);
            g.add_edge(1, 2, 1);
            g.add_edge(0, 2, 1);
            g
        }
        KodairaType::IStar(n) => {
            // chain c_0..c_n of weight 2, two leaves at each end
            let n = n as usize;
            let mut w = vec![2; n + 1];
            w.extend([1, 1, 1, 1]);
            let mut g = WeightedGraph::plain(n + 5);
            g.node_weights = w;
            for i in 0..n {
                g.add_edge(i, i + 1, 1);
            }
            g.add_edge(n + 1, 0, 1);
            g.add_edge(n + 2, 0, 1);
            g.add_edge(n + 3, n, 1);
            g.add_edge(n + 4, n, 1);
            g
        }
        KodairaType::IVStar => tree(&[3, 2, 1, 2, 1, 2, 1], &[0, 1, 0, 3, 0, 5]),
        KodairaType::IIIStar => tree(&[4, 3, 2, 1, 3, 2, 1, 2], &[0, 1, 2, 0, 4, 5, 0]),
        KodairaType::IIStar => tree(&[6, 5, 4, 3, 2, 1, 4, 2, 3], &[0, 1, 2, 3, 4, 0, 6, 0]),
        KodairaType::I(_) | KodairaType::II => WeightedGraph::plain(1),
    }
}

fn candidates(count: usize) -> Vec<KodairaType> {
    let mut v = Vec::new();
    if count >= 2 {
        v.push(KodairaType::I(count as u32));
    }
    if count >= 5 {
        v.push(KodairaType::IStar(count as u32 - 5));
    }
    match count {
        7 => v.push(KodairaType::IVStar),
        8 => v.push(KodairaType::IIIStar),
        9 => v.push(KodairaType::IIStar),
        _ => {}
    }
    v
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub divisor: FiberDivisor,
    /// `None` when no template matched.
    pub kodaira: Option<KodairaType>,
    pub graph: WeightedGraph,
    pub edges: Vec<(String, String, u32)>,
    /// `Σ m_C (C·D)`, re-verified to equal `D² = 0`.
    pub self_check: String,
    /// Marking witnessing a common point, for III / IV.
    pub witness: Option<String>,
}

impl Classification {
    pub fn is_recognized(&self) -> bool {
        self.kodaira.is_some()
    }
}

/// Kodaira type of a validated fiber from its weighted dual graph.
/// Components are nodes weighted by multiplicity, intersection numbers are
/// edge weights. III and IV need a marking through all components; without
/// one the same graphs are I₂ and I₃.
pub fn classify_kodaira(config: &Configuration, d: &FiberDivisor) -> Result<Classification, FibrationError> {
    let report = validate_fiber(config, d)?;
    if !report.passed() {
        return Err(FibrationError::NotAFiber(report.failures));
    }
    let d = report.divisor;
    let labels: Vec<String> = d.components().keys().cloned().collect();
    let mut graph = WeightedGraph::new(labels.clone(), d.components().values().copied().collect());
    let mut check = Rational::zero();
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            let v = config.pairing(a, b).map_err(|_| FibrationError::UnknownLabel(a.clone()))?;
            check += Rational::from_integer((d.multiplicity(a) * d.multiplicity(b)).into()) * &v;
            if i < j {
                let w = as_integer(&v)
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| FibrationError::NonIntegral(a.clone(), b.clone()))?;
                graph.add_edge(i, j, w);
            }
        }
    }
    let mut kodaira = candidates(labels.len()).into_iter().find(|&k| isomorphism(&template(k), &graph).is_some());
    let mut witness = None;
    if matches!(kodaira, Some(KodairaType::I(2)) | Some(KodairaType::I(3))) {
        witness = config
            .markings()
            .iter()
            .find(|m| labels.iter().all(|l| m.lies_on(l)))
            .map(|m| m.name.clone());
        if witness.is_some() {
            kodaira = Some(if labels.len() == 2 { KodairaType::III } else { KodairaType::IV });
        }
    }
    Ok(Classification {
        divisor: d,
        kodaira,
        edges: graph.edge_list(),
        graph,
        self_check: crate::scalars::rational::to_text(&check),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{cartan_matrix, RootFamily, RootType};
    use crate::scalars::rational::rat;
    use crate::surface::{build_double_kummer, epsilon, extend_with_conics, quotient_pushforward, Incidence, SurfaceTag};

    #[test]
    fn templates_are_fibers() {
        // each template, read as a configuration of (−2)-curves, has D² = 0
        // and D·C = 0: the null vector of the affine Cartan matrix
        for k in [
            KodairaType::I(2),
            KodairaType::I(5),
            KodairaType::IStar(0),
            KodairaType::IStar(3),
            KodairaType::IVStar,
            KodairaType::IIIStar,
            KodairaType::IIStar,
        ] {
            let g = template(k);
            assert_eq!(g.len() as u32, k.component_count(), "{k}");
            for i in 0..g.len() {
                let s: i64 = (0..g.len())
                    .map(|j| {
                        let c = if i == j { -2 } else { g.edge(i, j) as i64 };
                        c * g.node_weights[j] as i64
                    })
                    .sum();
                assert_eq!(s, 0, "{k} at node {i}");
            }
        }
    }

    #[test]
    fn affine_templates_extend_finite_ones() {
        // removing a multiplicity-1 node leaves the finite Dynkin diagram
        for (k, rt) in [
            (KodairaType::IVStar, RootType::new(RootFamily::E, 6).unwrap()),
            (KodairaType::IIIStar, RootType::new(RootFamily::E, 7).unwrap()),
            (KodairaType::IIStar, RootType::new(RootFamily::E, 8).unwrap()),
        ] {
            let g = template(k);
            let leaf = (0..g.len()).find(|&i| g.node_weights[i] == 1).unwrap();
            let keep: Vec<usize> = (0..g.len()).filter(|&i| i != leaf).collect();
            let mut h = WeightedGraph::plain(keep.len());
            for (a, &i) in keep.iter().enumerate() {
                for (b, &j) in keep.iter().enumerate() {
                    h.add_edge(a, b, g.edge(i, j));
                }
            }
            let cm = cartan_matrix(rt);
            let mut c = WeightedGraph::plain(cm.dim());
            for i in 0..cm.dim() {
                for j in 0..cm.dim() {
                    if i != j && !cm.entry(i, j).is_zero() {
                        c.add_edge(i, j, 1);
                    }
                }
            }
            assert!(isomorphism(&h, &c).is_some(), "{k}");
        }
    }

    #[test]
    fn kummer_and_quotient_fibers() {
        let x = extend_with_conics(&build_double_kummer()).unwrap();
        let z = quotient_pushforward(&x, &epsilon()).unwrap();
        let cases = [
            (&z, "H2+D32+H3+D31+H1+D41+H4+D42", KodairaType::I(8)),
            (&z, "H2+2D32+H1+2D31+H4+2D34+3H3", KodairaType::IVStar),
            (&x, "E2+C32+F3+C31+E1+C41+F4+C42", KodairaType::I(8)),
            (&x, "E2+2C32+E1+2C31+E4+2C34+3F3", KodairaType::IVStar),
        ];
        for (c, s, k) in cases {
            let d: FiberDivisor = s.parse().unwrap();
            let cl = classify_kodaira(c, &d).unwrap();
            assert_eq!(cl.kodaira, Some(k), "{s}");
            assert_eq!(cl.self_check, "0");
            if c.tag == SurfaceTag::K3 {
                let e = classify_kodaira(c, &d.map_labels(&epsilon())).unwrap();
                assert_eq!(e.kodaira, Some(k));
            }
        }
    }

    #[test]
    fn iv_star_multiplicities() {
        let x = build_double_kummer();
        let d: FiberDivisor = "E2+2C32+E1+2C31+E4+2C34+3F3".parse().unwrap();
        let cl = classify_kodaira(&x, &d).unwrap();
        let mut w = cl.graph.node_weights.clone();
        w.sort();
        assert_eq!(w, vec![1, 1, 1, 2, 2, 2, 3]);
        let deg3: Vec<usize> = (0..cl.graph.len()).filter(|&i| cl.graph.degree(i) == 3).collect();
        assert_eq!(deg3.len(), 1);
        assert_eq!(cl.graph.node_weights[deg3[0]], 3);
    }

    #[test]
    fn small_types_need_witness() {
        let mut c = Configuration::new(SurfaceTag::K3, 2);
        for l in ["A", "B", "C"] {
            c.add_curve(l, rat(-2));
        }
        c.set_pairing("A", "B", rat(2)).unwrap();
        let d: FiberDivisor = "A+B".parse().unwrap();
        assert_eq!(classify_kodaira(&c, &d).unwrap().kodaira, Some(KodairaType::I(2)));
        c.add_marking(
            "p",
            vec![Incidence { curve: "A".into(), coordinate: None }, Incidence { curve: "B".into(), coordinate: None }],
        );
        let cl = classify_kodaira(&c, &d).unwrap();
        assert_eq!(cl.kodaira, Some(KodairaType::III));
        assert_eq!(cl.witness.as_deref(), Some("p"));
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(KodairaType::I(8).euler_number(), 8);
        assert_eq!(KodairaType::IVStar.euler_number(), 8);
        assert_eq!(KodairaType::I(1).euler_number(), 1);
        assert_eq!(KodairaType::IStar(2).euler_number(), 8);
    }
}
