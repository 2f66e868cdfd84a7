//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p lca-entropy --test acceptance -- --nocapture` to see them.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use lca_entropy::bridge::{
    check_padic_instance, check_real_instance, check_tower_pair, duality_law_suite,
    finite_bridge_batch,
};
use lca_entropy::duality::{annihilator, dual_hom};
use lca_entropy::entropyseq::{
    compare_log_ratios, estimate, EstimateStatus, IndexSequence, LogRatio, Verdict,
};
use lca_entropy::fingroup::{cotrajectory_chain, index};
use lca_entropy::linalg::{hnf, QMatrix};
use lca_entropy::padic::{compare_with_log_ratio, newton_entropy, PadicEndo};
use lca_entropy::random::{
    random_endo, random_group, random_int_matrix, random_level_autos, random_padic_matrix,
    random_subgroup, random_unimodular, trial_rng,
};
use lca_entropy::realspace::{bowen_entropy, virili_entropy, RealEndo, DEFAULT_TOLERANCE};
use lca_entropy::tdlca::ProfiniteTower;
use lca_entropy::Execution;

const SEED: u64 = 20240601;

fn report(id: u32, name: &str, ok: bool, elapsed: Duration, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!(
        "{status} [{id}] {name} ({:.2}s) {detail}",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_1_per_step_index_identity() {
    let start = Instant::now();
    let reports = finite_bridge_batch(SEED, 200, 4096, 6, 3, Execution::Parallel).unwrap();
    let elapsed = start.elapsed();
    let rows: usize = reports.iter().map(|r| r.rows.len()).sum();
    let failures: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    let ok = reports.len() == 200
        && rows == 1200
        && failures.is_empty()
        && elapsed < Duration::from_secs(60);
    report(
        1,
        "per-step index identity on 200 finite instances",
        ok,
        elapsed,
        &format!("{rows} rows"),
    );
    for f in &failures {
        println!("{}", serde_json::to_string(f).unwrap());
    }
    assert!(ok);
}

#[test]
fn criterion_2_duality_laws() {
    let start = Instant::now();
    let r = duality_law_suite(SEED, 100, 4096, Execution::Parallel);
    let elapsed = start.elapsed();
    let ok = r.passed && r.laws.iter().all(|l| l.checked == 100);
    let summary: Vec<String> = r
        .laws
        .iter()
        .map(|l| format!("{}={}/{}", l.law, l.checked - l.failed, l.checked))
        .collect();
    report(
        2,
        "duality law suite, 100 instances per law",
        ok,
        elapsed,
        &summary.join(" "),
    );
    if !ok {
        println!("{}", serde_json::to_string_pretty(&r).unwrap());
    }
    assert!(ok);
}

#[test]
fn criterion_3_shift_entropy() {
    let mut all_ok = true;
    let total = Instant::now();
    for m in [2u64, 3, 4, 6] {
        let start = Instant::now();
        let t = ProfiniteTower::full_shift(m, 8).unwrap();
        let r = check_tower_pair(&t, 1, 8, 3).unwrap();
        let elapsed = start.elapsed();
        let e = r.entropy.as_ref().unwrap();
        let expected = Some(BigInt::from(m));
        let ok = r.passed
            && e.verdict == Verdict::EqualExact
            && e.topological.stabilized == expected
            && e.algebraic.stabilized == expected
            && elapsed < Duration::from_secs(5);
        println!(
            "  m = {m}: {} / {} ({:.2}s)",
            e.topological.exact_string(),
            e.algebraic.exact_string(),
            elapsed.as_secs_f64()
        );
        all_ok &= ok;
    }
    report(
        3,
        "shift entropy log m for m in {2,3,4,6}",
        all_ok,
        total.elapsed(),
        "",
    );
    assert!(all_ok);
}

#[test]
fn criterion_4_padic_bridge() {
    let start = Instant::now();
    let mut ok = true;
    for p in [2u64, 3, 5] {
        let inv = PadicEndo::scalar(p, BigRational::new(BigInt::one(), BigInt::from(p))).unwrap();
        let r = check_padic_instance(&inv, 10, 3).unwrap();
        let e = r.entropy.as_ref().unwrap();
        let newton = newton_entropy(&inv).unwrap();
        ok &= r.passed
            && e.topological.stabilized == Some(BigInt::from(p))
            && e.algebraic.stabilized == Some(BigInt::from(p))
            && newton.equals_log_of(&BigInt::from(p));

        let mul = PadicEndo::scalar(p, BigRational::from_integer(BigInt::from(p))).unwrap();
        let r = check_padic_instance(&mul, 10, 3).unwrap();
        let e = r.entropy.as_ref().unwrap();
        ok &= r.passed
            && e.topological.stabilized == Some(BigInt::one())
            && e.algebraic.stabilized == Some(BigInt::one())
            && newton_entropy(&mul).unwrap().is_zero();
    }
    if !ok {
        println!("  scalar cases failed");
    }

    let mut rng = trial_rng(SEED, 4);
    let (mut stabilized, mut bounded) = (0, 0);
    for dim in [2usize, 3] {
        for k in 0..30 {
            let p = [2u64, 3, 5][k % 3];
            let phi = PadicEndo::new(p, random_padic_matrix(&mut rng, p, dim)).unwrap();
            let r = check_padic_instance(&phi, 10, 3).unwrap();
            let e = r.entropy.as_ref().unwrap();
            let newton = newton_entropy(&phi).unwrap();
            let case_ok = match &e.topological.stabilized {
                Some(r) => {
                    stabilized += 1;
                    newton.equals_log_of(r)
                }
                None => {
                    bounded += 1;
                    compare_with_log_ratio(&newton, &e.topological.upper_bound) != Ordering::Greater
                }
            };
            if !case_ok || !r.passed {
                println!("  counterexample: {}", serde_json::to_string(&r).unwrap());
            }
            ok &= case_ok && r.passed;
        }
    }
    report(
        4,
        "Q_p lattice, dual and Newton entropies",
        ok,
        start.elapsed(),
        &format!("{stabilized} stabilized, {bounded} bounded-only"),
    );
    assert!(ok);
}

#[test]
fn criterion_5_real_space() {
    let start = Instant::now();
    let mut rng = trial_rng(SEED, 5);
    let mut worst = 0.0f64;
    let mut ok = true;
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let m = random_int_matrix(&mut rng, n, 9);
        let phi = RealEndo::new(QMatrix::from_int(&m)).unwrap();
        let r = check_real_instance(&phi, DEFAULT_TOLERANCE).unwrap();
        let b = bowen_entropy(&phi, DEFAULT_TOLERANCE).unwrap().value;
        let v = virili_entropy(&phi, DEFAULT_TOLERANCE).unwrap().value;
        worst = worst.max((b - v).abs());
        ok &= r.passed && (b - v).abs() <= 1e-9;
    }
    let d =
        RealEndo::new(QMatrix::parse_rows(&[vec!["2", "0"], vec!["0", "1/2"]]).unwrap()).unwrap();
    let h = bowen_entropy(&d, DEFAULT_TOLERANCE).unwrap().value;
    ok &= (h - 2f64.ln()).abs() <= 1e-12;
    report(
        5,
        "R^n Bowen vs Virili entropy",
        ok,
        start.elapsed(),
        &format!("max |diff| = {worst:.3e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_6_conjugation_invariance() {
    let start = Instant::now();
    let mut rng = trial_rng(SEED, 6);
    let mut ok = true;
    for k in 0..50 {
        let t = match k % 5 {
            0 => ProfiniteTower::padic([2u64, 3][k % 2], 4, &random_int_matrix(&mut rng, 2, 5))
                .unwrap(),
            _ => ProfiniteTower::full_shift(rng.gen_range(2..=6), 5).unwrap(),
        };
        let autos = random_level_autos(&mut rng, &t);
        let c = t.conjugate(&autos).unwrap();
        let depth = if t.lag() == 0 { 4 } else { 5 };
        let before = t.cotrajectory_indices(1, depth).unwrap();
        let after = c.cotrajectory_indices(1, depth).unwrap();
        if before != after {
            println!("  tower {k}: {before:?} vs {after:?}");
            ok = false;
        }
    }
    report(
        6,
        "conjugation invariance on 50 towers",
        ok,
        start.elapsed(),
        "",
    );
    assert!(ok);
}

#[test]
fn criterion_7_property_suites() {
    let start = Instant::now();
    let mut rng = trial_rng(SEED, 7);
    let cases = 100;

    // Fekete: b_n = [U : C_{n+1}] is submultiplicative.
    let mut fekete = 0;
    for _ in 0..cases {
        let g = random_group(&mut rng, 4096);
        let f = random_endo(&mut rng, &g);
        let u = random_subgroup(&mut rng, &g);
        let a: Vec<BigInt> = cotrajectory_chain(&f, &u, 7)
            .unwrap()
            .iter()
            .map(|c| index(&u, c).unwrap())
            .collect();
        let holds = (1..=3).all(|n| (1..=3).all(|m| a[n + m] <= &a[n] * &a[m]));
        fekete += holds as usize;
    }

    // Antitonicity: extending the data never raises the certified bound.
    let mut antitone = 0;
    for _ in 0..cases {
        let mut v = vec![BigInt::one()];
        for _ in 0..8 {
            let step = BigInt::from(rng.gen_range(1u32..=4));
            let next = v.last().unwrap() * step;
            v.push(next);
        }
        let bounds: Vec<LogRatio> = (2..=v.len())
            .map(|k| {
                estimate(&IndexSequence::new(v[..k].to_vec()).unwrap(), 3)
                    .unwrap()
                    .upper_bound
            })
            .collect();
        antitone += bounds
            .windows(2)
            .all(|w| compare_log_ratios(&w[1], &w[0]) != Ordering::Greater)
            as usize;
    }

    // Double dual: (A^⊥)^⊤ = A and the dual of the dual map is the map.
    let mut double_dual = 0;
    for _ in 0..cases {
        let g = random_group(&mut rng, 4096);
        let f = random_endo(&mut rng, &g);
        let a = random_subgroup(&mut rng, &g);
        let holds =
            annihilator(&annihilator(&a).unwrap()).unwrap() == a && dual_hom(&dual_hom(&f)) == f;
        double_dual += holds as usize;
    }

    // HNF canonicality: B and B·V span the same lattice for unimodular V.
    let mut canonical = 0;
    for _ in 0..cases {
        let k = rng.gen_range(1..=4);
        let b = loop {
            let b = random_int_matrix(&mut rng, k, 6);
            if b.det().unwrap() != BigInt::from(0) {
                break b;
            }
        };
        let v = random_unimodular(&mut rng, k);
        canonical += (hnf(&b).unwrap() == hnf(&b.mul(&v).unwrap()).unwrap()) as usize;
    }

    let elapsed = start.elapsed();
    let ok = fekete == cases
        && antitone == cases
        && double_dual == cases
        && canonical == cases
        && elapsed < Duration::from_secs(180);
    report(
        7,
        "property suites",
        ok,
        elapsed,
        &format!("fekete {fekete}/{cases}, antitone {antitone}/{cases}, double-dual {double_dual}/{cases}, hnf {canonical}/{cases}"),
    );
    assert!(ok);
}

#[test]
fn estimates_of_tower_columns_agree() {
    let t = ProfiniteTower::full_shift(3, 6).unwrap();
    let r = check_tower_pair(&t, 1, 5, 3).unwrap();
    let e = r.entropy.unwrap();
    assert_eq!(e.topological.status, EstimateStatus::Stabilized);
    assert_eq!(e.topological, e.algebraic);
}
