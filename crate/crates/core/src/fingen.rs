//! Non-finite-generation certificates for the subgroup
//! `M = ⟨t^{−2n}·a : n ≥ 0⟩` of the additive group `ℚ[t, t⁻¹]·a`.
//!
//! Elements are Laurent polynomials times the formal symbol `a`. Membership
//! in a ℤ-span is decided exactly by clearing denominators and running the
//! Hermite-form membership test.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::exec::Execution;
use crate::lattice::{hnf, z_span_membership, IntRow};
use crate::scalars::{LaurentT, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FingenError {
    #[error("generating set is empty")]
    Empty,
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("escape exponent {0} failed: t^-2N a lies in the span")]
    EscapeFailed(u32),
    #[error("max_k must be at least 1")]
    BadBound,
}

/// `coeffs · a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentElement {
    pub coeffs: LaurentT,
}

impl LaurentElement {
    pub fn new(coeffs: LaurentT) -> Self {
        LaurentElement { coeffs }
    }

    /// `t^{−2n}·a`.
    pub fn generator(n: u32) -> Self {
        LaurentElement { coeffs: LaurentT::t_pow(-2 * n as i64) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn degree_range(&self) -> Result<(i64, i64), ScalarError> {
        self.coeffs.degree_range()
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "({})*a", self.coeffs)
        }
    }
}

impl Serialize for LaurentElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

/// Integer encoding of a membership query, self-contained so it can be
/// rechecked with any HNF implementation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipQuery {
    /// Exponents of `t` indexing the vector coordinates.
    pub support: Vec<i64>,
    /// Common denominator by which every element was multiplied.
    pub scale: String,
    /// One row per generator.
    pub matrix: Vec<Vec<String>>,
    pub target: Vec<String>,
    pub hnf: Vec<Vec<String>>,
    pub member: bool,
    pub witness: Option<Vec<String>>,
}

impl MembershipQuery {
    fn int_rows(rows: &[Vec<String>]) -> Option<Vec<IntRow>> {
        rows.iter().map(|r| r.iter().map(|x| x.parse().ok()).collect()).collect()
    }

    /// Recompute membership from the recorded integer data alone.
    pub fn recheck(&self) -> Option<bool> {
        let gens = Self::int_rows(&self.matrix)?;
        let target: IntRow = self.target.iter().map(|x| x.parse().ok()).collect::<Option<_>>()?;
        if gens.iter().any(|g| g.len() != target.len()) {
            return None;
        }
        Some(z_span_membership(&gens, &target).member)
    }
}

/// Decide `target ∈ ⟨gens⟩_ℤ`.
pub fn membership(gens: &[LaurentElement], target: &LaurentElement) -> MembershipQuery {
    let mut support = BTreeSet::new();
    let mut denoms = BigInt::one();
    for e in gens.iter().chain(std::iter::once(target)) {
        for (x, c) in e.coeffs.terms() {
            support.insert(x);
            denoms = denoms.lcm(c.denom());
        }
    }
    let support: Vec<i64> = support.into_iter().collect();
    let scale = Rational::from_integer(denoms.clone());
    let encode = |e: &LaurentElement| -> IntRow {
        support.iter().map(|&x| (e.coeffs.coeff(x) * &scale).to_integer()).collect()
    };
    let rows: Vec<IntRow> = gens.iter().map(encode).collect();
    let t = encode(target);
    let m = z_span_membership(&rows, &t);
    let h = if rows.is_empty() { Vec::new() } else { hnf(&rows).0 };
    MembershipQuery {
        support,
        scale: denoms.to_string(),
        matrix: rows.iter().map(|r| strings(r)).collect(),
        target: strings(&t),
        hnf: h.iter().map(|r| strings(r)).collect(),
        member: m.member,
        witness: m.witness.map(|w| strings(&w)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Escape {
    pub n: u32,
    /// Minimal `t`-degree over the generators.
    pub min_degree: i64,
    pub element: LaurentElement,
    pub refutation: MembershipQuery,
}

/// Least `N ≥ 1` with `−2N < min deg(gens)`; `t^{−2N}a` then lies outside
/// the span, since every integer combination has degree ≥ the minimum.
pub fn escape_exponent(gens: &[LaurentElement]) -> Result<Escape, FingenError> {
    if gens.is_empty() {
        return Err(FingenError::Empty);
    }
    let mut min_degree = i64::MAX;
    for (i, g) in gens.iter().enumerate() {
        let (lo, _) = g.degree_range().map_err(|_| FingenError::ZeroGenerator(i))?;
        min_degree = min_degree.min(lo);
    }
    let n = if min_degree > 0 { 1 } else { Integer::div_floor(&-min_degree, &2) as u32 + 1 };
    let element = LaurentElement::generator(n);
    let refutation = membership(gens, &element);
    if refutation.member {
        return Err(FingenError::EscapeFailed(n));
    }
    Ok(Escape { n, min_degree, element, refutation })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    /// `t^{−2k}a ∉ ⟨t^{−2n}a : n < k⟩`.
    pub excluded: MembershipQuery,
    /// `t^{−2k}a ∈ ⟨t^{−2n}a : n < k + 1⟩`.
    pub included: MembershipQuery,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonFGEntry {
    pub k: u32,
    pub generators: Vec<LaurentElement>,
    pub escape: Escape,
    pub chain: ChainStep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonFGCertificate {
    pub family: String,
    pub entries: Vec<NonFGEntry>,
    /// Human-readable argument covering all finite subsets; not machine-checked.
    pub argument: String,
    /// General facts used to transfer the conclusion; cited, not checked.
    pub cited_lemmas: Vec<String>,
    pub reverification: String,
}

impl NonFGCertificate {
    /// Every refutation fails and every chain inclusion holds when recomputed
    /// from the recorded integer matrices.
    pub fn recheck(&self) -> bool {
        self.entries.iter().all(|e| {
            e.escape.refutation.recheck() == Some(false)
                && e.chain.excluded.recheck() == Some(false)
                && e.chain.included.recheck() == Some(true)
        })
    }
}

fn entry(k: u32) -> Result<NonFGEntry, FingenError> {
    let generators: Vec<LaurentElement> = (0..k).map(LaurentElement::generator).collect();
    let escape = escape_exponent(&generators)?;
    let next = LaurentElement::generator(k);
    let larger: Vec<LaurentElement> = (0..=k).map(LaurentElement::generator).collect();
    let chain = ChainStep { excluded: membership(&generators, &next), included: membership(&larger, &next) };
    Ok(NonFGEntry { k, generators, escape, chain })
}

/// For `k = 1..=max_k`: the escape for `{t^{−2n}a : n < k}` and the strict
/// step `⟨n < k⟩ ⊊ ⟨n < k + 1⟩`. Entries are computed independently and
/// returned ordered by `k`.
pub fn certify_nonfg(max_k: u32, exec: Execution) -> Result<NonFGCertificate, FingenError> {
    if max_k == 0 {
        return Err(FingenError::BadBound);
    }
    let ks: Vec<u32> = (1..=max_k).collect();
    let entries = exec.map(&ks, |&k| entry(k)).into_iter().collect::<Result<Vec<_>, _>>()?;
    for e in &entries {
        if e.chain.excluded.member || !e.chain.included.member {
            return Err(FingenError::EscapeFailed(e.k));
        }
    }
    Ok(NonFGCertificate {
        family: "M = <t^(-2n)*a : n >= 0> inside (Q[t, t^-1]*a, +)".into(),
        entries,
        argument: "Each element of M is an integer combination of finitely many t^(-2n)*a, so every finite \
                   subset S of M has a minimal t-degree m(S). Every element of <S> has t-degree at least m(S), \
                   while t^(-2N)*a with -2N < m(S) lies in M. Hence no finite subset generates M, and M is not \
                   finitely generated. The tabulated k are the worst cases: any k-element subset of M has \
                   minimal degree bounded below by that of some listed set."
            .into(),
        cited_lemmas: vec![
            "A subgroup of finite index in a finitely generated group is finitely generated.".into(),
            "A group with a finitely generated subgroup of finite index is finitely generated.".into(),
            "A quotient of a finitely generated group is finitely generated; a finitely generated abelian \
             group has finitely generated subgroups."
                .into(),
        ],
        reverification: "For each refutation, row-reduce `matrix` to Hermite normal form and confirm `target` \
                         is not an integer combination of its rows; for each `included`, check \
                         sum(witness[i] * matrix[i]) = target."
            .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{frac, rat};

    fn el(terms: &[(i64, i64)]) -> LaurentElement {
        LaurentElement::new(LaurentT::from_terms(terms.iter().map(|&(e, c)| (e, rat(c)))))
    }

    #[test]
    fn membership_examples() {
        let gens = [LaurentElement::generator(0), LaurentElement::generator(1)];
        let m = membership(&gens, &el(&[(-2, 1), (0, 2)]));
        assert!(m.member);
        assert_eq!(m.witness, Some(vec!["2".to_string(), "1".to_string()]));
        let half = LaurentElement::new(LaurentT::monomial(frac(1, 2), 0));
        assert!(!membership(&gens[..1], &half).member);
        assert!(!membership(&gens, &LaurentElement::generator(2)).member);
    }

    #[test]
    fn escapes() {
        assert_eq!(escape_exponent(&[LaurentElement::generator(0)]).unwrap().n, 1);
        let g: Vec<_> = (0..3).map(LaurentElement::generator).collect();
        assert_eq!(escape_exponent(&g).unwrap().n, 3);
        assert_eq!(escape_exponent(&[el(&[(-3, 1)])]).unwrap().n, 2);
        assert_eq!(escape_exponent(&[el(&[(4, 1)])]).unwrap().n, 1);
        assert_eq!(escape_exponent(&[]), Err(FingenError::Empty));
        assert_eq!(escape_exponent(&[el(&[])]), Err(FingenError::ZeroGenerator(0)));
    }

    #[test]
    fn certificate() {
        let c = certify_nonfg(5, Execution::Parallel).unwrap();
        assert_eq!(c.entries.iter().map(|e| e.escape.n).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
        assert!(c.recheck());
        assert_eq!(c, certify_nonfg(5, Execution::Sequential).unwrap());
        assert_eq!(certify_nonfg(0, Execution::Sequential), Err(FingenError::BadBound));
        let mut bad = c.clone();
        bad.entries[0].escape.refutation.target = vec!["1".into()];
        assert!(!bad.recheck());
    }
}
