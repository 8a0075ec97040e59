use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CremonaError, QuadricForm, RationalMapP3};
use crate::exec::Execution;
use crate::scalars::rational::{sqrt_exact, to_text};
use crate::scalars::{matrix_rank_det, nullspace, Field, MultiPoly, QuadExt, Rational, Var};

/// `a² + b² + c² − 2ab − 2bc − 2ca`, which is `16·det` of the specialized
/// quadric and, up to squares, the discriminant of the pair of rulings
/// through every `p_ii`.
pub fn ruling_discriminant(a: &[Rational; 3]) -> Rational {
    let [x, y, z] = a;
    x * x + y * y + z * z - Rational::from_integer(BigInt::from(2)) * (x * y + y * z + z * x)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PijRecord {
    pub i: usize,
    pub j: usize,
    pub p_ij: [String; 4],
    pub image: [String; 4],
    pub p_ji: [String; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwapReport {
    pub alphas: [String; 3],
    pub determinant: String,
    pub field: String,
    pub swaps_verified: usize,
    pub records: Vec<PijRecord>,
}

fn eval<F: Field>(p: &MultiPoly, pt: &[F], embed: &dyn Fn(&Rational) -> F) -> F {
    let mut acc = F::zero();
    for (m, c) in p.terms() {
        let mut t = embed(c);
        for (v, e) in m.pairs() {
            let k: usize = v.name()[1..].parse().expect("x-variable");
            for _ in 0..*e {
                t = t.mul_ref(&pt[k - 1]);
            }
        }
        acc = acc.add_ref(&t);
    }
    acc
}

fn bilinear<F: Field>(a: &[Vec<F>], u: &[F], v: &[F]) -> F {
    let mut acc = F::zero();
    for i in 0..4 {
        for j in 0..4 {
            acc = acc.add_ref(&u[i].mul_ref(&a[i][j]).mul_ref(&v[j]));
        }
    }
    acc
}

fn axpy<F: Field>(s: &F, u: &[F], v: &[F]) -> Vec<F> {
    u.iter().zip(v).map(|(a, b)| s.mul_ref(a).add_ref(b)).collect()
}

fn unit<F: Field>(i: usize) -> Vec<F> {
    (0..4).map(|k| if k == i { F::one() } else { F::zero() }).collect()
}

/// The point where the lines `⟨p, v⟩` and `⟨q, w⟩` meet, if they meet in
/// exactly one point.
fn meet<F: Field>(p: &[F], v: &[F], q: &[F], w: &[F]) -> Option<Vec<F>> {
    let m: Vec<Vec<F>> = (0..4).map(|k| vec![p[k].clone(), v[k].clone(), q[k].neg_ref(), w[k].neg_ref()]).collect();
    let ns = nullspace(&m);
    if ns.len() != 1 {
        return None;
    }
    let n = &ns[0];
    Some((0..4).map(|k| n[0].mul_ref(&p[k]).add_ref(&n[1].mul_ref(&v[k]))).collect())
}

fn normalized<F: Field + Display>(p: &[F]) -> [String; 4] {
    let lead = p.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(F::one);
    let inv = lead.inv().expect("nonzero");
    [0, 1, 2, 3].map(|k| p[k].mul_ref(&inv).to_string())
}

fn proportional<F: Field>(a: &[F], b: &[F]) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| a[i].mul_ref(&b[j]) == a[j].mul_ref(&b[i])))
}

fn swap_core<F: Field + Display>(
    map: &RationalMapP3,
    alphas: &[Rational; 3],
    embed: &dyn Fn(&Rational) -> F,
    sqrt: &dyn Fn(&F) -> Option<F>,
) -> Result<(Rational, Vec<PijRecord>), CremonaError> {
    if alphas.iter().any(|a| a == &Rational::from_integer(0.into())) {
        return Err(CremonaError::ZeroParameter);
    }
    let values: BTreeMap<Var, Rational> =
        (1..=3).map(|i| (Var::new(&format!("α{i}")), alphas[i - 1].clone())).collect();
    let q = QuadricForm::standard().specialize(&values).rational_matrix().expect("constant after specialization");
    let det = matrix_rank_det(&q).det.expect("square");
    if det == Rational::from_integer(0.into()) {
        return Err(CremonaError::Degenerate);
    }
    let a: Vec<Vec<F>> = q.iter().map(|r| r.iter().map(embed).collect()).collect();
    let f = map.specialize(&values);

    // the two lines of Q through each coordinate point p_ii
    let mut lines: Vec<(Vec<F>, [Vec<F>; 2])> = Vec::new();
    for i in 0..4 {
        let e = unit::<F>(i);
        let tangent: Vec<F> = a[i].clone();
        let basis = nullspace(&[tangent, unit::<F>(i)]);
        let (b1, b2) = (&basis[0], &basis[1]);
        let (q11, q12, q22) = (bilinear(&a, b1, b1), bilinear(&a, b1, b2), bilinear(&a, b2, b2));
        let disc = q12.mul_ref(&q12).sub_ref(&q11.mul_ref(&q22));
        if disc.is_zero() {
            return Err(CremonaError::Degenerate);
        }
        let r = sqrt(&disc).ok_or_else(|| CremonaError::IrrationalRulings { index: i + 1, discriminant: disc.to_string() })?;
        let roots = [q12.neg_ref().add_ref(&r), q12.neg_ref().sub_ref(&r)];
        let dirs = if !q11.is_zero() {
            roots.map(|s| axpy(&s.div_ref(&q11).expect("nonzero"), b1, b2))
        } else if !q22.is_zero() {
            roots.map(|s| axpy(&s.div_ref(&q22).expect("nonzero"), b2, b1))
        } else {
            [b1.clone(), b2.clone()]
        };
        lines.push((e, dirs));
    }
    // ruling A contains the first line through p11; same-ruling lines are disjoint
    let mut ruling: Vec<[Vec<F>; 2]> = vec![lines[0].1.clone()];
    let (e0, a0) = (&lines[0].0, &lines[0].1[0]);
    for j in 1..4 {
        let (ej, [u, w]) = (&lines[j].0, &lines[j].1);
        let skew_u = meet(e0, a0, ej, u).is_none();
        let skew_w = meet(e0, a0, ej, w).is_none();
        match (skew_u, skew_w) {
            (true, false) => ruling.push([u.clone(), w.clone()]),
            (false, true) => ruling.push([w.clone(), u.clone()]),
            _ => return Err(CremonaError::RulingGeometry { i: 1, j: j + 1 }),
        }
    }
    let mut records = Vec::new();
    for i in 0..4 {
        for j in (0..4).filter(|&j| j != i) {
            let geom = || CremonaError::RulingGeometry { i: i + 1, j: j + 1 };
            let pij = meet(&lines[i].0, &ruling[i][0], &lines[j].0, &ruling[j][1]).ok_or_else(geom)?;
            let pji = meet(&lines[j].0, &ruling[j][0], &lines[i].0, &ruling[i][1]).ok_or_else(geom)?;
            let image: Vec<F> = f.components().iter().map(|c| eval(c, &pij, embed)).collect();
            if image.iter().all(F::is_zero) {
                return Err(CremonaError::Indeterminate { i: i + 1, j: j + 1 });
            }
            if !proportional(&image, &pji) {
                return Err(CremonaError::SwapFailed { i: i + 1, j: j + 1 });
            }
            records.push(PijRecord {
                i: i + 1,
                j: j + 1,
                p_ij: normalized(&pij),
                image: normalized(&image),
                p_ji: normalized(&pji),
            });
        }
    }
    Ok((det, records))
}

fn report(alphas: &[Rational; 3], field: &str, det: Rational, records: Vec<PijRecord>) -> SwapReport {
    SwapReport {
        alphas: [0, 1, 2].map(|k| to_text(&alphas[k])),
        determinant: to_text(&det),
        field: field.into(),
        swaps_verified: records.len(),
        records,
    }
}

/// Check `map(p_ij) = p_ji` for all `i ≠ j` over ℚ at the given `α`.
pub fn verify_pij_swap_with(map: &RationalMapP3, alphas: &[Rational; 3]) -> Result<SwapReport, CremonaError> {
    let (det, records) = swap_core::<Rational>(map, alphas, &|q| q.clone(), &sqrt_exact)?;
    Ok(report(alphas, "Q", det, records))
}

/// `τ(p_ij) = p_ji` at a specialization with rational rulings.
pub fn verify_pij_swap(alphas: &[Rational; 3]) -> Result<SwapReport, CremonaError> {
    verify_pij_swap_with(&RationalMapP3::tau(), alphas)
}

/// Same check over `ℚ(√D)`, `D` the ruling discriminant, so irrational
/// rulings are allowed.
pub fn verify_pij_swap_ext(alphas: &[Rational; 3]) -> Result<SwapReport, CremonaError> {
    let d = ruling_discriminant(alphas);
    let embed = |q: &Rational| QuadExt::new(q.clone(), Rational::from_integer(0.into()), d.clone());
    let sqrt = |x: &QuadExt<Rational>| -> Option<QuadExt<Rational>> {
        if !num_traits::Zero::is_zero(&x.im) {
            return None;
        }
        if let Some(r) = sqrt_exact(&x.re) {
            return Some(embed(&r));
        }
        let r = sqrt_exact(&x.re.div_ref(&d)?)?;
        Some(QuadExt::new(Rational::from_integer(0.into()), r, d.clone()))
    };
    let (det, records) = swap_core(&RationalMapP3::tau(), alphas, &embed, &sqrt)?;
    Ok(report(alphas, &format!("Q(sqrt({}))", to_text(&d)), det, records))
}

/// Seeded search for `count` distinct specializations with rational
/// rulings on which the swap identities hold. Candidates are checked in
/// batches; the result depends only on `seed`, not on the execution mode.
pub fn search_specializations(seed: u64, count: usize, exec: Execution) -> Vec<SwapReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    for _ in 0..256 {
        let mut batch = Vec::new();
        while batch.len() < 64 {
            let c: [Rational; 3] = [0, 1, 2].map(|_| {
                let mut n = 0;
                while n == 0 {
                    n = rng.gen_range(-6i64..=6);
                }
                Rational::new(n.into(), rng.gen_range(1i64..=3).into())
            });
            if seen.insert(c.clone()) {
                batch.push(c);
            }
        }
        for r in exec.map(&batch, |c| verify_pij_swap(c).ok()).into_iter().flatten() {
            found.push(r);
            if found.len() == count {
                return found;
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{frac, rat};

    #[test]
    fn known_rational_specializations() {
        for a in [[rat(1), rat(2), rat(6)], [rat(1), rat(1), frac(9, 2)]] {
            let r = verify_pij_swap(&a).unwrap();
            assert_eq!(r.swaps_verified, 12);
        }
        assert_eq!(ruling_discriminant(&[rat(1), rat(2), rat(6)]), rat(1));
    }

    #[test]
    fn degenerate_and_irrational() {
        assert_eq!(verify_pij_swap(&[rat(1), rat(1), rat(4)]), Err(CremonaError::Degenerate));
        assert!(matches!(verify_pij_swap(&[rat(1), rat(1), rat(1)]), Err(CremonaError::IrrationalRulings { .. })));
        assert_eq!(verify_pij_swap(&[rat(0), rat(1), rat(1)]), Err(CremonaError::ZeroParameter));
    }

    #[test]
    fn quadratic_extension_path() {
        let r = verify_pij_swap_ext(&[rat(1), rat(1), rat(1)]).unwrap();
        assert_eq!(r.swaps_verified, 12);
        assert_eq!(r.field, "Q(sqrt(-3))");
        assert_eq!(verify_pij_swap_ext(&[rat(1), rat(2), rat(6)]).unwrap().swaps_verified, 12);
    }

    #[test]
    fn identity_does_not_swap() {
        let e = verify_pij_swap_with(&RationalMapP3::identity(), &[rat(1), rat(2), rat(6)]).unwrap_err();
        assert!(matches!(e, CremonaError::SwapFailed { .. }));
    }

    #[test]
    fn search_is_deterministic() {
        let a = search_specializations(0, 3, Execution::Sequential);
        let b = search_specializations(0, 3, Execution::Parallel);
        assert_eq!(a.len(), 3);
        assert_eq!(a, b);
        let distinct: BTreeSet<_> = a.iter().map(|r| r.alphas.clone()).collect();
        assert_eq!(distinct.len(), 3);
    }
}
