#![allow(dead_code)]

use std::collections::BTreeMap;

use enriques_cert::scalars::rational::rat;
use enriques_cert::scalars::{Monomial, MultiPoly, Rational, Var};
use enriques_cert::surface::{build_double_kummer, epsilon, extend_with_conics, quotient_pushforward, Configuration, Incidence};

pub const N1: &str = "E2+C32+F3+C31+E1+C41+F4+C42";
pub const N2: &str = "E2+2C32+E1+2C31+E4+2C34+3F3";
pub const M1: &str = "H2+D32+H3+D31+H1+D41+H4+D42";
pub const M2: &str = "H2+2D32+H1+2D31+H4+2D34+3H3";

pub fn y() -> Configuration {
    extend_with_conics(&build_double_kummer()).unwrap()
}

pub fn z() -> Configuration {
    quotient_pushforward(&y(), &epsilon()).unwrap()
}

/// Copy of `c` with curve `k` renamed to `c{perm[k]}` and inserted in
/// permuted order; returns the renaming.
pub fn relabel(c: &Configuration, perm: &[usize]) -> (Configuration, BTreeMap<String, String>) {
    let labels = c.labels();
    let name: BTreeMap<String, String> = labels.iter().enumerate().map(|(k, l)| (l.clone(), format!("c{}", perm[k]))).collect();
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by_key(|&k| perm[k]);
    let mut out = Configuration::new(c.tag, c.chi);
    for &k in &order {
        out.add_curve(&name[&labels[k]], c.pairing_at(k, k).clone());
    }
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            out.set_pairing(&name[&labels[i]], &name[&labels[j]], c.pairing_at(i, j).clone()).unwrap();
        }
    }
    for m in c.markings() {
        let on = m.on.iter().map(|i| Incidence { curve: name[&i.curve].clone(), coordinate: i.coordinate.clone() }).collect();
        out.add_marking(&m.name, on);
    }
    (out, name)
}

/// Image curve name on the quotient, by the naming rule (independent of
/// the library's orbit bookkeeping).
pub fn image_name(label: &str) -> String {
    let d: Vec<char> = label[1..].chars().collect();
    match (label.chars().next().unwrap(), d.as_slice()) {
        ('E' | 'F', [j]) => format!("H{j}"),
        ('C', [i]) => format!("D{i}{i}"),
        ('C', [i, j]) => format!("D{}{}", i.max(j), i.min(j)),
        _ => panic!("unexpected label {label}"),
    }
}

/// Small polynomial in `x, y` from `(c, ex, ey)` triples.
pub fn poly(terms: &[(i64, u32, u32)]) -> MultiPoly {
    MultiPoly::from_terms(
        terms
            .iter()
            .map(|&(c, ex, ey)| (rat(c), Monomial::from_pairs([(Var::new("x"), ex), (Var::new("y"), ey)]))),
    )
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
