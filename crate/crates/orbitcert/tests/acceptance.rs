//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Wall-clock budgets are asserted in release builds (`cargo test --release
//! --test acceptance`); debug builds still run every check but only report
//! the elapsed time, since unoptimized big-integer arithmetic is far off the
//! shipped profile.

mod support;

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use orbitcert::certify::{certify, RunConfig};
use orbitcert::elevate::{elevate_matrix, elevate_vector};
use orbitcert::instance::{OrbitInstance, Ring};
use orbitcert::multipoly::MultiPoly;
use orbitcert::oracle::{
    bounded_reach_search, eval_predicate, orbit_prefix, verify_certificate, TailStatus,
};
use orbitcert::polyalg::algnum::{sign_at, AlgebraicNumber};
use orbitcert::polyalg::classify::{classify_roots, GroupLocation};
use orbitcert::polyalg::poly::Poly;
use orbitcert::predicate::{Certificate, CertifyOutcome, Predicate, Reason};
use orbitcert::ratmat::{
    char_poly, det, mat_pow, mat_vec, kernel, poly_at_matrix, rat, rat_int, Rat, RatMatrix,
    RatVector,
};
use orbitcert::spectral::{
    jordan_chains, left_eigenvectors, real_irrational_eigen_data, spectrum, symbolic_pairing,
};

use support::*;

fn criterion_line(n: u32, ok: bool, elapsed: Duration, note: &str) {
    println!(
        "criterion {n}: {} ({} ms) {note}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_millis()
    );
}

fn assert_budget(elapsed: Duration, budget_secs: u64) {
    if cfg!(debug_assertions) {
        return; // budgets are asserted on the optimized profile
    }
    assert!(
        elapsed <= Duration::from_secs(budget_secs),
        "exceeded the {budget_secs} s budget: {elapsed:?}"
    );
}

fn a4_instance() -> OrbitInstance {
    instance(
        RatMatrix::from_ints(&[&[0, 3, 0, 0], &[-3, 3, 1, 0], &[0, 0, 2, 1], &[1, 1, 0, 1]]),
        RatVector::from_ints(&[1, 1, 1, 1]),
        RatVector::from_ints(&[-9, -7, 28, 7]),
        Ring::Q,
    )
}

/// Rounds to the given number of decimal places, ties away from zero.
fn round_places(r: &Rat, places: u32) -> Rat {
    let scale = Rat::from_integer(num_bigint::BigInt::from(10u32).pow(places));
    (r * &scale).round() / scale
}

/// High-precision rational approximation of an algebraic eigenvector entry
/// ratio `p(lambda) / sqrt(norm2(lambda))`.
fn normalized_entry(p: &Poly, norm2: &Poly, lambda: &AlgebraicNumber) -> Rat {
    let fine = lambda.refined_to(&rat(1, 1i64 << 58));
    let (lo, hi) = fine.re_interval();
    let (plo, phi_) = p.eval_interval(lo, hi);
    let (nlo, nhi) = norm2.eval_interval(lo, hi);
    let pmid = (plo + phi_) / rat(2, 1);
    let nmid = (nlo + nhi) / rat(2, 1);
    // sqrt by bisection to 2^-50.
    let mut slo = Rat::zero();
    let mut shi = if nmid > Rat::one() { nmid.clone() } else { Rat::one() };
    let eps = rat(1, 1i64 << 50);
    while (&shi - &slo) > eps {
        let mid = (&slo + &shi) / rat(2, 1);
        if &mid * &mid <= nmid {
            slo = mid;
        } else {
            shi = mid;
        }
    }
    let s = (slo + shi) / rat(2, 1);
    pmid / s
}

#[test]
fn criterion_1_case2_worked_example() {
    let start = Instant::now();
    let inst = a4_instance();

    // Spectrum: eigenvalue approximations and exact determinant.
    let cp = char_poly(&inst.a).unwrap();
    assert_eq!(cp, Poly::from_ints(&[15, -34, 20, -6, 1]));
    assert_eq!(det(&inst.a).unwrap(), rat_int(15));
    let groups = classify_roots(&cp).unwrap();
    let mut real_mids = Vec::new();
    let mut pair_modulus_sq = None;
    for g in &groups {
        match &g.location {
            GroupLocation::Real(alpha) => {
                let fine = alpha.refined_to(&rat(1, 4096));
                let (lo, hi) = fine.re_interval();
                real_mids.push((lo + hi) / rat(2, 1));
            }
            GroupLocation::UpperBox(alpha) => {
                let fine = alpha.refined_to(&rat(1, 4096));
                let (lo, hi) = fine.modulus_sq_interval();
                pair_modulus_sq = Some((lo + hi) / rat(2, 1));
            }
            _ => {}
        }
    }
    real_mids.sort();
    assert_eq!(real_mids.len(), 2, "two real irrational eigenvalues");
    let tol = rat(5, 1000);
    assert!((&real_mids[0] - rat(642, 1000)).abs() <= tol, "lambda_1 ~ 0.642");
    assert!((&real_mids[1] - rat(248, 100)).abs() <= tol, "lambda_2 ~ 2.48");
    let msq = pair_modulus_sq.expect("complex pair");
    assert!(
        (&msq - rat(9425, 1000)).abs() <= rat(1, 100),
        "lambda lambda-bar within 0.01 of 9.425, got {msq}"
    );
    let report = spectrum(&inst.a, 3003).unwrap();
    let info = report.elevation_used.expect("elevation proposed");
    assert_eq!((info.degree, info.elevated_dim), (4, 70));
    assert_eq!(info.eigenvalue, rat_int(15));

    // Synthesis: the emitted certificate verifies at horizon 200.
    let config = RunConfig::default();
    let certify_report = certify(&inst, &config).unwrap();
    let CertifyOutcome::Certificate { certificate } = &certify_report.outcome else {
        panic!("expected a certificate");
    };
    let verification = certify_report.verification.as_ref().unwrap();
    assert!(verification.pass);
    assert_eq!(verification.condition2_checked_to, 200);
    assert_eq!(verification.condition2_tail, TailStatus::ProvedSymbolically);
    let re_verified = verify_certificate(&inst, certificate, 200).unwrap();
    assert!(re_verified.pass);
    // The emitted route is the degree-4 elevation with eigenvalue 15, and the
    // exact pairing ratio |q(Y)/q(X)| is 5493/20, so the index is 4.
    assert_eq!(certificate.index, 4);

    // Scale-invariant pairing ratios for the two real eigenvalues, exact.
    let eigen_data = real_irrational_eigen_data(&inst.a).unwrap();
    assert_eq!(eigen_data.len(), 2);
    let mut checked_grow = false;
    let mut checked_shrink = false;
    for data in &eigen_data {
        let g_x = symbolic_pairing(&data.phi, &inst.x);
        let g_y = symbolic_pairing(&data.phi, &inst.y);
        let norm2 = data
            .phi
            .iter()
            .fold(Poly::zero(), |acc, p| acc.add(&p.mul(p)));
        let px = normalized_entry(&g_x, &norm2, &data.lambda).abs();
        let py = normalized_entry(&g_y, &norm2, &data.lambda).abs();
        match data.lambda.modulus_cmp_one() {
            Ordering::Greater => {
                // |<phi2, X>| ~ 1.384, |<phi2, Y>| ~ 24.073: the ratio
                // reproduces the printed one to two significant figures.
                let ratio = &px / &py;
                let paper = rat(1384, 1000) / rat(24073, 1000);
                assert!(
                    ((&ratio - &paper) / &paper).abs() < rat(5, 100),
                    "growing ratio {ratio} vs paper {paper}"
                );
                checked_grow = true;
            }
            Ordering::Less => {
                // |<phi1, X>| ~ 0.302 reproduces; the exact |<phi1, Y>| is
                // ~0.005463. The printed 0.015 is recovered below from the
                // paper's own 3-decimal rounding of the eigenvector.
                assert!((&px - rat(302, 1000)).abs() < rat(1, 1000));
                assert!((&py - rat(5463, 1_000_000)).abs() < rat(1, 100_000));
                checked_shrink = true;
            }
            Ordering::Equal => unreachable!(),
        }
    }
    assert!(checked_grow && checked_shrink);

    // Paper-convention indices. For the growing eigenvalue the printed 4 is
    // exact (and 5 under the scaled-threshold convention of the emitted
    // sets). For the shrinking one the exact indices are 10/11; the printed
    // 7 arises from the rounded eigenvector and is reproduced as such.
    let comps = &certify_report.comparisons;
    let grow = comps.iter().find(|c| c.grows).unwrap();
    let shrink = comps.iter().find(|c| !c.grows).unwrap();
    assert_eq!(grow.threshold_at_target_index, 4);
    assert_eq!(grow.scaled_threshold_index, 5);
    assert_eq!(shrink.threshold_at_target_index, 10);
    assert_eq!(shrink.scaled_threshold_index, 11);

    // Reproduction of the printed shrink-side numbers: round the unit
    // eigenvector to three decimals exactly as the paper displays it.
    let shrink_data = eigen_data
        .iter()
        .find(|d| d.lambda.modulus_cmp_one() == Ordering::Less)
        .unwrap();
    let norm2 = shrink_data
        .phi
        .iter()
        .fold(Poly::zero(), |acc, p| acc.add(&p.mul(p)));
    let mut entries: Vec<Rat> = shrink_data
        .phi
        .iter()
        .map(|p| normalized_entry(p, &norm2, &shrink_data.lambda))
        .collect();
    if entries[0] > Rat::zero() {
        for e in entries.iter_mut() {
            *e = -e.clone();
        }
    }
    let rounded: Vec<Rat> = entries.iter().map(|e| round_places(e, 3)).collect();
    let printed = vec![
        rat(-522, 1000),
        rat(355, 1000),
        rat(-261, 1000),
        rat(730, 1000),
    ];
    assert_eq!(rounded, printed, "unit eigenvector matches the printed one");
    let rx: Rat = rounded
        .iter()
        .zip(inst.x.iter())
        .map(|(a, b)| a * b)
        .sum();
    let ry: Rat = rounded
        .iter()
        .zip(inst.y.iter())
        .map(|(a, b)| a * b)
        .sum();
    assert_eq!(rx, rat(302, 1000));
    assert_eq!(ry, rat(15, 1000));
    // Index from the rounded pairings: least n with |lambda|^n 0.302 <= 0.015.
    let mut n = 0u64;
    loop {
        // 302 lambda^n - 15 <= 0, decided at the exact algebraic lambda.
        let mut p = Poly::zero();
        p.set_coeff(n as usize, rat_int(302));
        p = p.sub(&Poly::constant(rat_int(15)));
        if sign_at(&p, &shrink_data.lambda) != Ordering::Greater {
            break;
        }
        n += 1;
        assert!(n < 100);
    }
    assert_eq!(n, 7, "the printed index 7 comes from the rounded pairing");

    let elapsed = start.elapsed();
    criterion_line(
        1,
        true,
        elapsed,
        "exact ratios reproduce the printed values except <phi1,Y>, where the paper's \
         3-decimal eigenvector rounding (reproduced here) explains 0.015 and index 7",
    );
    assert_budget(elapsed, 10);
}

#[test]
fn criterion_2_case3_worked_example() {
    let start = Instant::now();
    let inst = instance(
        RatMatrix::from_ints(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]),
        RatVector::from_ints(&[-2, -1, 1]),
        RatVector::from_ints(&[2, 6, 1]),
        Ring::Q,
    );

    // Chain recovered exactly.
    let chains = jordan_chains(&inst.a, &rat_int(1)).unwrap();
    assert_eq!(chains.len(), 1);
    let chain = &chains[0];
    assert_eq!(
        chain.vectors,
        vec![
            RatVector::from_ints(&[0, 0, 1]),
            RatVector::from_ints(&[0, 1, 0]),
            RatVector::from_ints(&[1, 0, 0]),
        ]
    );

    // Orbit polynomial of the top: q(k) = k^2/2 - 3k/2 - 2 exactly; the
    // printed polynomial k^2/2 - 5k/2 - 1 is the orbit polynomial of the
    // alternative chain top e2 - e1 (the paper swaps the first two start
    // coordinates in its display), checked exactly against the orbit.
    let pairings: Vec<Rat> = (0..3)
        .map(|i| chain.vectors[2 - i].dot(&inst.x).unwrap())
        .collect();
    let q = orbitcert::oracle::chain_orbit_polynomial(&pairings);
    assert_eq!(q, Poly::from_coeffs(vec![rat_int(-2), rat(-3, 2), rat(1, 2)]));
    let alt_top = chain.vectors[2].sub(&chain.vectors[1]).unwrap();
    let alt_pairings = vec![
        alt_top.dot(&inst.x).unwrap(),
        chain.vectors[1]
            .sub(&chain.vectors[0])
            .unwrap()
            .dot(&inst.x)
            .unwrap(),
        chain.vectors[0].dot(&inst.x).unwrap(),
    ];
    let q_paper = orbitcert::oracle::chain_orbit_polynomial(&alt_pairings);
    assert_eq!(
        q_paper,
        Poly::from_coeffs(vec![rat_int(-1), rat(-5, 2), rat(1, 2)])
    );
    let orbit = orbit_prefix(&inst.a, &inst.x, 25).unwrap();
    for (n, v) in orbit.iter().enumerate() {
        assert_eq!(q.eval(&rat_int(n as i64)), *v.get(0));
        assert_eq!(q_paper.eval(&rat_int(n as i64)), alt_top.dot(v).unwrap());
    }

    // Emitted certificate: set {x > 2}, minimal index 5, oracle-verified.
    let report = certify(&inst, &RunConfig::default()).unwrap();
    let CertifyOutcome::Certificate { certificate } = &report.outcome else {
        panic!("expected certificate");
    };
    assert_eq!(certificate.index, 5);
    assert_eq!(format!("{}", certificate.set), "-x < -2");
    assert!(report.verification.as_ref().unwrap().pass);

    // The printed couple (7, {x > 2}) is a valid (non-minimal) certificate:
    // same set, larger index; the oracle accepts it.
    let paper_cert = Certificate {
        index: 7,
        set: certificate.set.clone(),
        provenance: certificate.provenance.clone(),
    };
    let paper_report = verify_certificate(&inst, &paper_cert, 200).unwrap();
    assert!(paper_report.pass);
    assert_eq!(paper_report.condition2_tail, TailStatus::ProvedSymbolically);

    // For k in [0, 6] the target is not reached (exact check), nor ever.
    for v in orbit.iter().take(7) {
        assert_ne!(v, &inst.y);
    }
    assert_eq!(bounded_reach_search(&inst, 200).unwrap(), None);

    let elapsed = start.elapsed();
    criterion_line(
        2,
        true,
        elapsed,
        "chain exact; emitted (5, {x > 2}) minimal; printed q and index 7 reproduced \
         via the e2 - e1 pairing and verified as a non-minimal certificate",
    );
    assert_budget(elapsed, 1);
}

#[test]
fn criterion_3_case3_lattice_example() {
    let start = Instant::now();
    let inst = instance(
        RatMatrix::from_ints(&[&[1, 2], &[0, 1]]),
        RatVector::from_ints(&[0, 1]),
        RatVector::from_ints(&[5, 1]),
        Ring::Q,
    );

    // Eigenvector (0, 1) and a chain recovering mu proportional to (1/2, 1)
    // modulo the eigenvector direction.
    assert_eq!(
        left_eigenvectors(&inst.a, &rat_int(1)).unwrap(),
        vec![RatVector::from_ints(&[0, 1])]
    );
    let chains = jordan_chains(&inst.a, &rat_int(1)).unwrap();
    let chain = &chains[0];
    assert_eq!(chain.len(), 2);
    let mu = chain.vectors[1].add(&chain.vectors[0]).unwrap();
    assert_eq!(mu, RatVector::new(vec![rat(1, 2), rat_int(1)]));

    // Emitted congruence certificate excludes the odd target exactly.
    let report = certify(&inst, &RunConfig::default()).unwrap();
    let CertifyOutcome::Certificate { certificate } = &report.outcome else {
        panic!("expected certificate");
    };
    match &certificate.provenance {
        orbitcert::predicate::Provenance::Case3Congruence { modulus, form, .. } => {
            assert_eq!(modulus, &rat_int(1));
            // <form, Y> = 5/2 is not an integer because x_Y = 5 is odd.
            let v = form.dot(&inst.y).unwrap();
            assert_eq!(v, rat(5, 2));
        }
        other => panic!("expected congruence certificate, got {other:?}"),
    }
    assert!(!eval_predicate(&certificate.set, &inst.y).unwrap());
    assert!(report.verification.as_ref().unwrap().pass);

    let elapsed = start.elapsed();
    criterion_line(3, true, elapsed, "congruence certificate excludes the odd target");
    assert_budget(elapsed, 1);
}

#[test]
fn criterion_4_case4_rotation_example() {
    let start = Instant::now();
    let a = RatMatrix::from_rows(vec![
        vec![rat(4, 5), rat(-3, 5)],
        vec![rat(3, 5), rat(4, 5)],
    ]);
    let inst = instance(
        a.clone(),
        RatVector::from_ints(&[1, 0]),
        RatVector::new(vec![rat(3, 2), rat(7, 10)]),
        Ring::Q,
    );
    let report = certify(&inst, &RunConfig::default()).unwrap();
    let CertifyOutcome::Certificate { certificate } = &report.outcome else {
        panic!("expected certificate");
    };
    assert_eq!(certificate.index, 0);
    // Invariant quadratic proportional to x^2 + y^2, as a polynomial-identity
    // invariant: w is a left 1-eigenvector of the degree-2 elevation.
    let orbitcert::predicate::Provenance::Case4Invariant { w, qx } = &certificate.provenance
    else {
        panic!("expected case-4 provenance");
    };
    let elevation = elevate_matrix(&a, 2).unwrap();
    assert_eq!(
        mat_vec(&elevation.matrix.transpose(), w).unwrap(),
        w.clone()
    );
    assert_eq!(qx, &rat_int(1));
    assert_eq!(format!("{}", certificate.set), "x^2 + y^2 = 1");
    assert!(report.verification.as_ref().unwrap().pass);
    // q(Y) = 2.74 exactly.
    let y2 = elevate_vector(&inst.y, 2).unwrap();
    assert_eq!(w.dot(&y2).unwrap(), rat(274, 100));

    // The unreachable antipode admits no such certificate: inconclusive with
    // a machine-readable reason.
    let inst2 = instance(
        a,
        RatVector::from_ints(&[1, 0]),
        RatVector::from_ints(&[-1, 0]),
        Ring::Q,
    );
    let report2 = certify(&inst2, &RunConfig::default()).unwrap();
    match report2.outcome {
        CertifyOutcome::Inconclusive { reason, .. } => {
            assert_eq!(reason, Reason::ClosureInconclusive);
            assert_eq!(reason.code(), "closure-inconclusive");
        }
        other => panic!("expected inconclusive, got {other:?}"),
    }

    let elapsed = start.elapsed();
    criterion_line(4, true, elapsed, "circle certificate and closure-inconclusive antipode");
    assert_budget(elapsed, 2);
}

#[test]
fn criterion_5_elevation_identities() {
    let start = Instant::now();
    // f(x) = x + 1 embedded affinely: x^2 row reads x^2 + 2x + 1.
    let f = RatMatrix::from_ints(&[&[1, 1], &[0, 1]]);
    let e = elevate_matrix(&f, 2).unwrap();
    assert_eq!(e.matrix.row(0), RatVector::from_ints(&[1, 2, 1, 0, 0, 0]));
    let idx_x = e.basis.index_of(&[1, 0]).unwrap();
    assert_eq!(
        e.matrix.row(idx_x),
        RatVector::from_ints(&[0, 0, 0, 1, 1, 0])
    );

    // Functoriality and compatibility on 100 random cases, exact.
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..100 {
        let d = rng.random_range(1..=3);
        let k = rng.random_range(1..=3);
        let a = random_int_matrix(&mut rng, d, 3);
        let b = random_int_matrix(&mut rng, d, 3);
        let v = random_int_vector(&mut rng, d, 4);
        let ea = elevate_matrix(&a, k).unwrap().matrix;
        let eb = elevate_matrix(&b, k).unwrap().matrix;
        let eab = elevate_matrix(&a.mul(&b).unwrap(), k).unwrap().matrix;
        assert_eq!(eab, ea.mul(&eb).unwrap(), "functoriality");
        let ev = elevate_vector(&v, k).unwrap();
        let lhs = mat_vec(&ea, &ev).unwrap();
        let rhs = elevate_vector(&mat_vec(&a, &v).unwrap(), k).unwrap();
        assert_eq!(lhs, rhs, "compatibility");
    }
    let elapsed = start.elapsed();
    criterion_line(5, true, elapsed, "exact on 100 random matrix/vector cases");
    assert_budget(elapsed, 30);
}

#[test]
fn criterion_6_property_suite() {
    let start = Instant::now();
    let mut emitted = 0usize;
    let mut witnesses = 0usize;
    let mut inconclusive = 0usize;

    // Class (a): diagonalizable with rational eigenvalues off the unit circle.
    let mut rng = StdRng::seed_from_u64(61);
    let pool = off_unit_eigenvalue_pool();
    let config = RunConfig {
        horizon: 60,
        ..RunConfig::default()
    };
    for _ in 0..200 {
        let d = rng.random_range(2..=3);
        let eigenvalues: Vec<Rat> = (0..d)
            .map(|_| pool[rng.random_range(0..pool.len())].clone())
            .collect();
        let a = matrix_with_eigenvalues(&mut rng, &eigenvalues);
        let x = random_int_vector(&mut rng, d, 5);
        let y = random_int_vector(&mut rng, d, 5);
        let inst = instance(a, x, y, Ring::Q);
        check_outcome(&inst, &config, &mut emitted, &mut witnesses, &mut inconclusive);
    }

    // Class (b): unipotent Jordan blocks for lambda = 1.
    let mut rng = StdRng::seed_from_u64(62);
    for i in 0..200 {
        let d = rng.random_range(2..=3);
        let a = random_unipotent(&mut rng, d);
        let x = random_int_vector(&mut rng, d, 4);
        let y = if i % 2 == 0 {
            // An orbit point with a half-integer perturbation: off every
            // integer-valued orbit polynomial lattice.
            let m = rng.random_range(0..6);
            let base = mat_vec(&mat_pow(&a, m).unwrap(), &x).unwrap();
            let j = rng.random_range(0..d);
            let mut entries: Vec<Rat> = base.iter().cloned().collect();
            entries[j] += rat(1, 2);
            RatVector::new(entries)
        } else {
            random_int_vector(&mut rng, d, 6)
        };
        let inst = instance(a, x, y, Ring::Q);
        check_outcome(&inst, &config, &mut emitted, &mut witnesses, &mut inconclusive);
    }

    // Class (c): companion matrices of cyclotomic polynomials, integer ring;
    // the detected unity order must equal the true period of the matrix.
    let mut rng = StdRng::seed_from_u64(63);
    let config_z = RunConfig {
        horizon: 120,
        ..RunConfig::default()
    };
    for i in 0..200 {
        let m = 1 + (i % 12) as u64;
        let phi = orbitcert::polyalg::classify::cyclotomic(m);
        let coeffs: Vec<Rat> = (0..phi.degree_or_zero()).map(|j| phi.coeff(j)).collect();
        let a = companion(&coeffs);
        let d = a.rows();
        // Unity order detected by classification equals the matrix period.
        let groups = classify_roots(&char_poly(&a).unwrap()).unwrap();
        for g in &groups {
            assert_eq!(g.class.unity_order, Some(m));
        }
        let mut period = 0u64;
        for l in 1..=150u64 {
            if mat_pow(&a, l).unwrap() == RatMatrix::identity(d) {
                period = l;
                break;
            }
        }
        assert_eq!(period, m, "least L with A^L = I");
        let x = random_int_vector(&mut rng, d, 4);
        let y = random_int_vector(&mut rng, d, 4);
        let inst = instance(a, x, y, Ring::Z);
        check_outcome(&inst, &config_z, &mut emitted, &mut witnesses, &mut inconclusive);
    }

    let total = 600;
    let ok = emitted + witnesses + inconclusive == total && emitted * 10 >= total * 8;
    let elapsed = start.elapsed();
    criterion_line(
        6,
        ok,
        elapsed,
        &format!("{emitted} certificates, {witnesses} witnesses, {inconclusive} inconclusive; every emission oracle-checked with Y outside the set"),
    );
    assert!(ok, "unexpectedly low emission rate: {emitted}/{total}");
    assert_budget(elapsed, 120);
}

/// Certifies and enforces the class-wide guarantees: every emitted
/// certificate passes the independent oracle and never contains the target.
fn check_outcome(
    inst: &OrbitInstance,
    config: &RunConfig,
    emitted: &mut usize,
    witnesses: &mut usize,
    inconclusive: &mut usize,
) {
    let report = certify(inst, config).expect("certify");
    match &report.outcome {
        CertifyOutcome::Certificate { certificate } => {
            let v = verify_certificate(inst, certificate, config.horizon).unwrap();
            assert!(v.pass, "oracle rejected an emitted certificate: {v:?}");
            assert_eq!(v.condition2_tail, TailStatus::ProvedSymbolically);
            // Zero tolerance: the target never lies in the certificate set.
            assert!(!eval_predicate(&certificate.set, &inst.y).unwrap());
            *emitted += 1;
        }
        CertifyOutcome::ReachableWitness { n } => {
            let reached = mat_vec(&mat_pow(&inst.a, *n).unwrap(), &inst.x).unwrap();
            assert_eq!(&reached, &inst.y, "witness must be exact");
            *witnesses += 1;
        }
        CertifyOutcome::Inconclusive { .. } => {
            *inconclusive += 1;
        }
    }
}

#[test]
fn criterion_7_exact_invariants() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let d = rng.random_range(1..=5);
        let a = random_int_matrix(&mut rng, d, 4);
        // Cayley-Hamilton.
        let cp = char_poly(&a).unwrap();
        assert!(poly_at_matrix(&cp, &a).unwrap().is_zero());
        // Kernel vectors are exact null vectors.
        for v in kernel(&a) {
            assert!(mat_vec(&a, &v).unwrap().is_zero());
        }
        // Chain relations for every rational eigenvalue, and chain lengths
        // summing to the algebraic multiplicity.
        let roots = orbitcert::polyalg::classify::squarefree_rational_roots(&cp).unwrap();
        for (lambda, mult) in &roots.roots {
            let chains = jordan_chains(&a, lambda).unwrap();
            let total: usize = chains.iter().map(|c| c.len()).sum();
            assert_eq!(total, *mult, "chain lengths sum to multiplicity");
            for chain in &chains {
                chain.validate(&a).unwrap();
            }
        }
    }
    let elapsed = start.elapsed();
    criterion_line(7, true, elapsed, "Cayley-Hamilton, kernel, chain relations exact on 100 matrices");
    assert_budget(elapsed, 60);
}

#[test]
fn criterion_8_negative_controls() {
    let start = Instant::now();
    let inst = instance(
        RatMatrix::from_ints(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]),
        RatVector::from_ints(&[-2, -1, 1]),
        RatVector::from_ints(&[2, 6, 1]),
        Ring::Q,
    );
    let report = certify(&inst, &RunConfig::default()).unwrap();
    let CertifyOutcome::Certificate { certificate } = &report.outcome else {
        panic!("expected certificate");
    };

    // Negative index: rejected with a populated violation.
    let mut corrupted = (**certificate).clone();
    corrupted.index = -1;
    let v = verify_certificate(&inst, &corrupted, 200).unwrap();
    assert!(!v.pass);
    assert!(v.first_violation.is_some());

    // Index decremented below the true index: condition 2 fails at the gap.
    let mut early = (**certificate).clone();
    early.index = certificate.index - 1;
    let v = verify_certificate(&inst, &early, 200).unwrap();
    assert!(!v.pass);
    let (n, _) = v.first_violation.expect("violation recorded");
    assert_eq!(n, certificate.index - 1);

    // Set inflated to include the target: condition 3 fails. The inflated
    // set {x > 1} contains Y = (2, 6, 1); it no longer matches the stored
    // provenance, and the oracle reports the mismatch as a violation.
    let mut inflated = (**certificate).clone();
    inflated.set = Predicate::poly_gt(MultiPoly::var(3, 0), rat_int(1));
    let v = verify_certificate(&inst, &inflated, 200).unwrap();
    assert!(!v.pass);
    assert!(v.first_violation.is_some());

    // A mismatched instance whose target satisfies the set: condition 3.
    let inside = instance(
        inst.a.clone(),
        inst.x.clone(),
        RatVector::from_ints(&[7, 5, 1]),
        Ring::Q,
    );
    let v = verify_certificate(&inside, certificate, 200).unwrap();
    assert!(!v.condition3_ok);
    assert!(!v.pass);
    assert!(v.first_violation.is_some());

    let elapsed = start.elapsed();
    criterion_line(8, true, elapsed, "corrupted certificates rejected with violations");
    assert_budget(elapsed, 10);
}
