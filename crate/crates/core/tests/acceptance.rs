//! Acceptance criteria 1–8, one pass/fail line each. Every check is exact.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use enriques_cert::cremona::{
    alpha, contraction_check, conjugate_translation, involution_cofactor, preserves_quadric, search_specializations,
    verify_pij_swap, verify_pij_swap_ext, x, MoebiusMap, QuadricForm, RationalMapP3,
};
use enriques_cert::exec::Execution;
use enriques_cert::fibration::{classify_kodaira, shioda_tate_rank, validate_fiber, FiberDivisor, KodairaType};
use enriques_cert::fingen::{certify_nonfg, LaurentElement};
use enriques_cert::lattice::{
    cartan_matrix, combination, dynkin_classify, hnf, orth_complement, simple_root_basis, z_span_membership, RootFamily,
    RootType,
};
use enriques_cert::mwl::{
    component_index_sum, cyclic_index, height, is_torsion, met_component, Component, HeightContext, SectionData,
    SmoothLocusAut, ZMod,
};
use enriques_cert::pipeline::{run_stage, Options, Status};
use enriques_cert::scalars::rational::{rat, to_text};
use enriques_cert::scalars::{matrix_rank_det, MultiPoly, RatFunc, Rational, Ring};
use enriques_cert::surface::{
    build_double_kummer, canonical_multiple, epsilon, theta, verify_isometry, BlowupLedger,
};

use common::*;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn kodaira(c: &enriques_cert::surface::Configuration, s: &str) -> Option<KodairaType> {
    let d: FiberDivisor = s.parse().ok()?;
    validate_fiber(c, &d).ok().filter(|r| r.passed())?;
    classify_kodaira(c, &d).ok()?.kodaira
}

fn configuration() -> Check {
    let x24 = build_double_kummer();
    ensure!(x24.len() == 24, "{} curves", x24.len());
    ensure!(x24.gram().rank() == 18, "rank {}", x24.gram().rank());
    let y = y();
    let e = verify_isometry(&y, &epsilon()).map_err(|e| e.to_string())?;
    ensure!(e.fixed_labels.is_empty(), "ε fixes {:?}", e.fixed_labels);
    let th = theta(&y);
    ensure!(th.map.iter().all(|(a, b)| a == b), "θ is not the identity");
    verify_isometry(&y, &th).map_err(|e| e.to_string())?;
    Ok(())
}

fn cremona() -> Check {
    let tau = RationalMapP3::tau();
    let quad = QuadricForm::standard();
    let cof = &(&(&(&alpha(1) * &alpha(2)) * &alpha(3)) * &(&(&x(1) * &x(2)) * &x(3))) * &x(4);
    let got = preserves_quadric(&tau, &quad).map_err(|e| e.to_string())?;
    ensure!(got == cof, "cofactor {got}");
    let inv = involution_cofactor(&tau).map_err(|e| e.to_string())?;
    ensure!(inv == cof.pow(2), "involution cofactor {inv}");
    for i in 1..=4 {
        let p = contraction_check(&tau, i).map_err(|e| e.to_string())?;
        let want: Vec<Rational> = (1..=4).map(|k| rat(i64::from(k == i))).collect();
        ensure!(p.to_vec() == want, "plane {i} goes to {p:?}");
    }
    let det = matrix_rank_det(quad.matrix()).det.unwrap_or_else(MultiPoly::zero);
    ensure!(!Ring::is_zero(&det), "quadric determinant vanishes");
    let reps = search_specializations(0, 3, Execution::default());
    ensure!(reps.len() == 3, "{} specializations", reps.len());
    let distinct: std::collections::BTreeSet<_> = reps.iter().map(|r| r.alphas.clone()).collect();
    ensure!(distinct.len() == 3, "specializations repeat");
    ensure!(reps.iter().all(|r| r.swaps_verified == 12 && r.determinant != "0"), "swap count");
    for a in [[rat(1), rat(2), rat(6)], [rat(1), rat(1), q(9, 2)]] {
        let r = verify_pij_swap(&a).map_err(|e| e.to_string())?;
        ensure!(r.swaps_verified == 12, "α = {a:?}");
    }
    let r = verify_pij_swap_ext(&[rat(1), rat(1), rat(1)]).map_err(|e| e.to_string())?;
    ensure!(r.swaps_verified == 12, "quadratic extension");
    Ok(())
}

fn fibrations() -> Check {
    let (y, z, eps) = (y(), z(), epsilon());
    ensure!(kodaira(&z, M1) == Some(KodairaType::I(8)), "M1");
    ensure!(kodaira(&z, M2) == Some(KodairaType::IVStar), "M2");
    let mut phi1 = Vec::new();
    for (s, want) in [(N1, KodairaType::I(8)), (N2, KodairaType::IVStar)] {
        ensure!(kodaira(&y, s) == Some(want), "{s}");
        let e = s.parse::<FiberDivisor>().unwrap().map_labels(&eps).to_string();
        ensure!(kodaira(&y, &e) == Some(want), "ε-image {e}");
        if want == KodairaType::I(8) {
            phi1 = vec![want, want];
        }
    }
    let k3: u32 = phi1.iter().map(|k| k.euler_number()).sum();
    ensure!(k3 == 16 && k3 <= 24, "Φ1 Euler sum {k3}");
    for k in [KodairaType::I(8), KodairaType::IVStar] {
        ensure!(k.euler_number() <= 12, "{k} exceeds 12");
    }
    Ok(())
}

fn lattice() -> Check {
    ensure!(shioda_tate_rank(18, &[KodairaType::I(8), KodairaType::I(8)]) == Ok(2), "Shioda–Tate");
    // [C12] from the fibration data, zero section C21
    let (y, eps) = (y(), epsilon());
    let n1: FiberDivisor = N1.parse().unwrap();
    let ctx = HeightContext::new(2, [("N1", KodairaType::I(8)), ("eN1", KodairaType::I(8))]);
    let mut comps = Vec::new();
    for (id, d) in [("N1", n1.clone()), ("eN1", n1.map_labels(&eps))] {
        let cl = classify_kodaira(&y, &d).map_err(|e| e.to_string())?;
        let zero = met_component(&y, &cl, "C21").map_err(|e| e.to_string())?;
        let c = met_component(&y, &cl, "C12").map_err(|e| e.to_string())?;
        comps.push((id, Component::Cyclic { index: cyclic_index(&cl, &zero, &c).map_err(|e| e.to_string())? }));
    }
    let c12 = SectionData::new("C12", 0, comps);
    ensure!(height(&ctx, &c12) == Ok(rat(0)), "height {:?}", height(&ctx, &c12));
    ensure!(is_torsion(&ctx, &c12) == Ok(true), "not torsion");
    let heights = run_stage("heights", &Options::default()).map_err(|e| e.to_string())?;
    let flagged = heights
        .evidence
        .claims
        .iter()
        .any(|c| c.status == Status::Annotation && c.observed.as_deref() == Some("4"));
    ensure!(flagged, "display discrepancy not flagged");
    let e8 = cartan_matrix(RootType::new(RootFamily::E, 8).unwrap());
    let e6: Vec<Vec<BigInt>> = (0..6).map(|i| (0..8).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
    let comp = orth_complement(&e8, &e6).map_err(|e| e.to_string())?;
    let (_, g) = simple_root_basis(&comp).map_err(|e| e.to_string())?;
    ensure!(g.gram() == [vec![rat(2), rat(-1)], vec![rat(-1), rat(2)]], "Gram {:?}", g.gram());
    ensure!(dynkin_classify(&g) == Ok(RootType::new(RootFamily::A, 2)), "not A2");
    let narrow = SectionData::new("P", 0, [("M2", Component::IvStarIdentity)]);
    ensure!(height(&HeightContext::new(1, [("M2", KodairaType::IVStar)]), &narrow) == Ok(rat(2)), "narrow height");
    Ok(())
}

fn canonical() -> Check {
    let l = BlowupLedger::new(&z(), "Q32", &["Q321", "Q322", "Q323"]).map_err(|e| e.to_string())?;
    let d = canonical_multiple(&l, 2).map_err(|e| e.to_string())?;
    let coeffs: Vec<(String, i64)> =
        ["Einf'", "E321", "E322", "E323"].iter().map(|s| (s.to_string(), i64::try_from(d.coefficient(s)).unwrap())).collect();
    ensure!(coeffs.iter().map(|c| c.1).collect::<Vec<_>>() == [2, 4, 4, 4], "2K = {d}");
    ensure!(d.terms.len() == 4, "extra terms in {d}");
    ensure!(l.exceptional_gram().entry(0, 0) == &rat(-4), "E'∞² = {}", to_text(l.exceptional_gram().entry(0, 0)));
    Ok(())
}

fn dynamics() -> Check {
    let t = RatFunc::var("t");
    let f = SmoothLocusAut::new(t.clone(), ZMod::new(4, 8)).unwrap();
    let sq = f.compose(&f).map_err(|e| e.to_string())?;
    ensure!(sq == SmoothLocusAut::new(t.pow(2).unwrap(), ZMod::new(0, 8)).unwrap(), "square {sq:?}");
    // [C11] + [C2] on N1
    let y = y();
    let cl = classify_kodaira(&y, &N1.parse().unwrap()).map_err(|e| e.to_string())?;
    let zero = met_component(&y, &cl, "C11").map_err(|e| e.to_string())?;
    let c2 = met_component(&y, &cl, "C2").map_err(|e| e.to_string())?;
    let i11 = cyclic_index(&cl, &zero, &zero).map_err(|e| e.to_string())?;
    let i2 = cyclic_index(&cl, &zero, &c2).map_err(|e| e.to_string())?;
    ensure!(component_index_sum(&[i11, i2]) == Ok(ZMod::new(4, 8)), "index sum");
    let a = RatFunc::var("a");
    for n in 1..=10u32 {
        let m = conjugate_translation(n).map_err(|e| e.to_string())?;
        let want = MoebiusMap::translate(a.mul_ref(&t.pow(-2 * n as i32).unwrap()));
        ensure!(m == want, "n = {n}");
    }
    Ok(())
}

fn nonfg() -> Check {
    let c = certify_nonfg(5, Execution::default()).map_err(|e| e.to_string())?;
    ensure!(c.entries.len() == 5, "{} entries", c.entries.len());
    ensure!(c.recheck(), "recorded matrices do not re-verify");
    for (k, e) in (1..=5u32).zip(&c.entries) {
        // independent: the escape has lower t-degree than every generator
        ensure!(e.escape.n == k, "escape {} at k = {k}", e.escape.n);
        let lo = e.generators.iter().map(|g| g.degree_range().unwrap().0).min().unwrap();
        ensure!(-2 * i64::from(e.escape.n) < lo, "escape degree");
        ensure!(!e.chain.excluded.member && e.chain.included.member, "chain not strict at k = {k}");
        let gens: Vec<LaurentElement> = (0..k).map(LaurentElement::generator).collect();
        ensure!(e.generators == gens, "generators at k = {k}");
    }
    Ok(())
}

fn cases() -> Config {
    Config { cases: 256, failure_persistence: None, ..Config::default() }
}

fn run<S: Strategy>(name: &str, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Check {
    TestRunner::new(cases()).run(&s, f).map_err(|e| format!("{name}: {e}"))
}

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3), 0..4).prop_map(|t| poly(&t))
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    prop::collection::vec(prop::collection::vec((-9i64..=9).prop_map(BigInt::from), cols), rows)
}

fn properties() -> Check {
    run("ring axioms", (small_poly(), small_poly(), small_poly()), |(a, b, c)| {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!(Ring::is_zero(&(&a - &a)));
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
        Ok(())
    })?;
    run("rational field axioms", ((-50i64..50, 1i64..20), (-50i64..50, 1i64..20)), |((a, b), (c, d))| {
        let (x, y) = (q(a, b), q(c, d));
        prop_assert_eq!(&x * &y, &y * &x);
        if !num_traits::Zero::is_zero(&y) {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
        Ok(())
    })?;
    run("HNF idempotence", int_matrix(3, 4), |a| {
        let (h, u) = hnf(&a);
        prop_assert_eq!(&hnf(&h).0, &h);
        let ua: Vec<Vec<BigInt>> = u.iter().map(|r| (0..4).map(|j| r.iter().zip(&a).map(|(x, ar)| x * &ar[j]).sum()).collect()).collect();
        prop_assert_eq!(ua, h);
        Ok(())
    })?;
    run("membership monotonicity", (int_matrix(3, 3), int_matrix(1, 3), int_matrix(1, 3)), |(gens, extra, target)| {
        let m = z_span_membership(&gens, &target[0]);
        let mut more = gens.clone();
        more.push(extra[0].clone());
        let m2 = z_span_membership(&more, &target[0]);
        prop_assert!(!m.member || m2.member);
        for mm in [&m, &m2] {
            if let Some(w) = &mm.witness {
                let g = if w.len() == gens.len() { &gens } else { &more };
                prop_assert_eq!(&combination(g, w), &target[0]);
            }
        }
        // any integer combination is a member
        let c: Vec<BigInt> = extra[0].clone();
        prop_assert!(z_span_membership(&gens, &combination(&gens, &c)).member);
        Ok(())
    })?;
    let (yc, zc) = (y(), z());
    let (ny, nz) = (yc.len(), zc.len());
    let perms = (Just((0..ny).collect::<Vec<_>>()).prop_shuffle(), Just((0..nz).collect::<Vec<_>>()).prop_shuffle());
    run("classifier relabeling invariance", perms, |(py, pz)| {
        for (c, p, fibers) in [(&yc, &py, [N1, N2]), (&zc, &pz, [M1, M2])] {
            let (r, name) = relabel(c, p);
            for s in fibers {
                let d: FiberDivisor = s.parse().unwrap();
                let mapped = FiberDivisor::new(d.components().iter().map(|(l, m)| (name[c.resolve(l).unwrap()].clone(), *m)));
                prop_assert_eq!(kodaira(&r, &mapped.to_string()), kodaira(c, s));
            }
        }
        Ok(())
    })?;
    let labels = yc.labels();
    let eps = epsilon();
    run("pushforward evenness", (prop::collection::vec(-3i64..=3, nz), prop::collection::vec(-3i64..=3, nz)), |(a, b)| {
        let zl = zc.labels();
        let pull = |coef: &[i64]| -> BTreeMap<String, Rational> {
            labels
                .iter()
                .map(|l| {
                    let k = zl.iter().position(|n| *n == image_name(l)).expect("image curve");
                    (l.clone(), rat(coef[k]))
                })
                .collect()
        };
        let down = |coef: &[i64]| -> BTreeMap<String, Rational> { zl.iter().zip(coef).map(|(l, c)| (l.clone(), rat(*c))).collect() };
        let up = yc.intersect(&pull(&a), &pull(&b)).unwrap();
        prop_assert!(up.is_integer() && up.to_integer() % 2 == BigInt::from(0));
        prop_assert_eq!(up, rat(2) * zc.intersect(&down(&a), &down(&b)).unwrap());
        // pullbacks are ε-invariant
        let pa = pull(&a);
        prop_assert!(labels.iter().all(|l| pa[l] == pa[eps.apply(l)]));
        Ok(())
    })?;
    Ok(())
}

/// Runs one criterion, prints its line and enforces the time budget.
fn criterion(n: u32, name: &str, check: fn() -> Check) {
    let t = Instant::now();
    let r = check();
    let elapsed = t.elapsed();
    match &r {
        Ok(()) => println!("criterion {n}: PASS  {name} ({} ms)", elapsed.as_millis()),
        Err(e) => println!("criterion {n}: FAIL  {name}: {e} ({} ms)", elapsed.as_millis()),
    }
    assert!(r.is_ok(), "criterion {n} failed: {}", r.unwrap_err());
    assert!(elapsed.as_secs() < 60, "criterion {n} took {elapsed:?}");
}

#[test]
fn criterion_1_configuration() {
    criterion(1, "configuration: rank 18, ε free isometry, θ identity", configuration);
}

#[test]
fn criterion_2_cremona() {
    criterion(2, "Cremona identities and p_ij swap on 3 specializations", cremona);
}

#[test]
fn criterion_3_fibrations() {
    criterion(3, "fiber types I8 / IV* and Euler bounds", fibrations);
}

#[test]
fn criterion_4_lattice() {
    criterion(4, "Shioda–Tate, torsion [C12], A2 complement, narrow height 2", lattice);
}

#[test]
fn criterion_5_canonical() {
    criterion(5, "bicanonical divisor 2E'∞ + 4(E321 + E322 + E323)", canonical);
}

#[test]
fn criterion_6_dynamics() {
    criterion(6, "smooth-locus dynamics and conjugated translations", dynamics);
}

#[test]
fn criterion_7_nonfg() {
    criterion(7, "non-finite-generation certificate for k = 1..5", nonfg);
}

#[test]
fn criterion_8_properties() {
    criterion(8, "property suites (256 cases each)", properties);
}
