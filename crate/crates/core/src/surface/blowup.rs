use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{Configuration, SurfaceError, SurfaceTag};
use crate::lattice::GramLattice;
use crate::scalars::Rational;

/// Z₁ = blow-up of Z at one marked point, Z₂ = blow-up of Z₁ at distinct
/// points of the first exceptional curve. The second-stage centers are
/// abstract labels: only their distinctness matters.
#[derive(Clone, Debug)]
pub struct BlowupLedger {
    base: Configuration,
    first_center: String,
    second_centers: Vec<String>,
}

/// Integer combination of exceptional curves, in ledger order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub terms: Vec<(String, BigInt)>,
}

impl Divisor {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, label: &str) -> BigInt {
        self.terms.iter().find(|(l, _)| l == label).map(|(_, c)| c.clone()).unwrap_or_default()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (l, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{a}*{l}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (l, c) in &self.terms {
            m.serialize_entry(l, &c.to_string())?;
        }
        m.end()
    }
}

impl BlowupLedger {
    pub fn new(base: &Configuration, first_center: &str, second_centers: &[&str]) -> Result<Self, SurfaceError> {
        if base.tag != SurfaceTag::Enriques {
            return Err(SurfaceError::InvalidLedger("base must be the Enriques configuration".into()));
        }
        base.marking(first_center)?;
        let distinct: BTreeSet<&&str> = second_centers.iter().collect();
        if distinct.len() != second_centers.len() {
            return Err(SurfaceError::InvalidLedger(format!("second-stage centers not distinct: {second_centers:?}")));
        }
        Ok(BlowupLedger {
            base: base.clone(),
            first_center: first_center.to_string(),
            second_centers: second_centers.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn base(&self) -> &Configuration {
        &self.base
    }

    pub fn first_center(&self) -> &str {
        &self.first_center
    }

    pub fn second_centers(&self) -> &[String] {
        &self.second_centers
    }

    pub fn stages(&self) -> u8 {
        if self.second_centers.is_empty() {
            1
        } else {
            2
        }
    }

    fn second_label(center: &str) -> String {
        match center.strip_prefix('Q') {
            Some(rest) => format!("E{rest}"),
            None => format!("E_{center}"),
        }
    }

    /// Proper transforms of the exceptional curves on the last stage.
    pub fn exceptional_labels(&self) -> Vec<String> {
        if self.second_centers.is_empty() {
            return vec!["Einf".into()];
        }
        let mut v = vec!["Einf'".to_string()];
        v.extend(self.second_centers.iter().map(|c| Self::second_label(c)));
        v
    }

    /// Express total-transform coefficients `(e_∞, e_1, .., e_s)` in the
    /// proper-transform basis, using `e_∞ = E'_∞ + Σ e_k` at stage two.
    fn to_proper(&self, total: &[BigInt]) -> Vec<BigInt> {
        let mut p = total.to_vec();
        for k in 1..p.len() {
            p[k] = &total[k] + &total[0];
        }
        p
    }

    /// Intersection matrix of the proper transforms; total transforms are
    /// orthogonal with self-intersection −1.
    pub fn exceptional_gram(&self) -> GramLattice {
        let n = 1 + self.second_centers.len();
        // rows: proper classes in the total basis
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (k, row) in rows.iter_mut().enumerate() {
            row[k] = BigInt::one();
        }
        for k in 1..n {
            rows[0][k] = -BigInt::one();
        }
        let gram = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let s: BigInt = (0..n).map(|k| -(&rows[a][k] * &rows[b][k])).sum();
                        Rational::from_integer(s)
                    })
                    .collect()
            })
            .collect();
        GramLattice::new(self.exceptional_labels(), gram).expect("symmetric by construction")
    }

    pub fn intersect(&self, a: &Divisor, b: &Divisor) -> Rational {
        let g = self.exceptional_gram();
        let labels = self.exceptional_labels();
        let mut acc = Rational::zero();
        for (la, ca) in &a.terms {
            for (lb, cb) in &b.terms {
                let (i, j) = (
                    labels.iter().position(|l| l == la).expect("ledger label"),
                    labels.iter().position(|l| l == lb).expect("ledger label"),
                );
                acc += Rational::from_integer(ca * cb) * g.entry(i, j);
            }
        }
        acc
    }
}

/// `m·K` on the last stage, for even `m`. Each blow-up adds its total
/// exceptional class to the canonical class; the pullback of `m·K_Z`
/// vanishes because `2K_Z ≡ 0`.
pub fn canonical_multiple(ledger: &BlowupLedger, m: i64) -> Result<Divisor, SurfaceError> {
    if m % 2 != 0 {
        return Err(SurfaceError::OddCanonicalMultiple(m));
    }
    let n = 1 + ledger.second_centers.len();
    let total = vec![BigInt::from(m); n];
    let proper = ledger.to_proper(&total);
    let terms = ledger
        .exceptional_labels()
        .into_iter()
        .zip(proper)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(Divisor { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::rat;
    use crate::surface::{build_double_kummer, epsilon, extend_with_conics, quotient_pushforward};

    fn z() -> Configuration {
        quotient_pushforward(&extend_with_conics(&build_double_kummer()).unwrap(), &epsilon()).unwrap()
    }

    #[test]
    fn bicanonical() {
        let l = BlowupLedger::new(&z(), "Q32", &["Q321", "Q322", "Q323"]).unwrap();
        let d = canonical_multiple(&l, 2).unwrap();
        assert_eq!(d.to_string(), "2*Einf' + 4*E321 + 4*E322 + 4*E323");
        assert_eq!(l.exceptional_gram().entry(0, 0), &rat(-4));
        assert_eq!(l.exceptional_gram().entry(1, 1), &rat(-1));
        // K² = (2K)²/4
        assert_eq!(l.intersect(&d, &d) / rat(4), rat(-4));
        assert!(canonical_multiple(&l, 0).unwrap().is_zero());
        assert!(matches!(canonical_multiple(&l, 1), Err(SurfaceError::OddCanonicalMultiple(1))));
    }

    #[test]
    fn one_stage() {
        let l = BlowupLedger::new(&z(), "Q32", &[]).unwrap();
        assert_eq!(canonical_multiple(&l, 2).unwrap().to_string(), "2*Einf");
        assert_eq!(l.exceptional_gram().entry(0, 0), &rat(-1));
    }

    #[test]
    fn bad_ledgers() {
        assert!(BlowupLedger::new(&z(), "Q32", &["a", "a"]).is_err());
        assert!(BlowupLedger::new(&z(), "nowhere", &[]).is_err());
    }
}
