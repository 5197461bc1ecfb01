//! Acceptance suite: one test per exit criterion, each printing a PASS line
//! (visible under `--nocapture`) with its elapsed time and asserting the
//! pinned runtime budget. Run with `cargo test --test acceptance`.
//!
//! The optional whole-spectrum run for dimension 4 hides behind `--ignored`.

use std::time::{Duration, Instant};

use pancycle::base::{bondy_classification, BondyOutcome, ExplicitGraph};
use pancycle::cert::CertificateDocument;
use pancycle::chain::{
    certificate_for_length, certificate_in, pancyclic_certificates, CycleCertificate,
};
use pancycle::mesh::{even_schedule, odd_schedule};
use pancycle::product::{
    build_mesh_chain, count_edges_by_enumeration, graph_stats, neighbors, product_adjacent,
    ProductVertex,
};
use pancycle::verify::{
    brute_force_cycle, brute_force_pancyclic, coverage_check, verify_cycle, VerificationErrorKind,
};

/// Prints the criterion's PASS line and enforces its runtime budget.
fn pass_within(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("PASS  {name}  ({elapsed:?} within {budget:?})");
    assert!(
        elapsed <= budget,
        "FAIL  {name}  ({elapsed:?} exceeded {budget:?})"
    );
}

#[test]
fn base_graph_stats_match_by_enumeration() {
    let started = Instant::now();
    let g = ExplicitGraph::base_graph();
    assert_eq!(g.vertex_count(), 9);
    assert_eq!(g.edge_count(), 27);
    for u in 0..9 {
        assert_eq!(g.degree(u), 6, "vertex {u} must have degree 6");
    }
    pass_within(
        "base graph: 9 vertices, 27 edges, 6-regular",
        started,
        Duration::from_millis(1),
    );
}

#[test]
fn base_graph_is_pancyclic_by_brute_force() {
    let started = Instant::now();
    let g = ExplicitGraph::base_graph();
    for length in 3..=9 {
        let found = brute_force_cycle(&g, length).expect("length in range");
        assert!(found.is_some(), "no cycle of length {length}");
    }
    assert!(brute_force_pancyclic(&g));
    pass_within(
        "base graph: pancyclic by exhaustive search",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn sparse_circulant_is_pancyclic_despite_the_edge_bound() {
    let started = Instant::now();
    let g = ExplicitGraph::circulant(10, &[1, 2]).expect("valid offsets");
    assert_eq!(g.vertex_count(), 10);
    assert_eq!(g.edge_count(), 20);
    // 20 < 25 = 10²/4: the edge-count bound concludes nothing here...
    assert!(4 * g.edge_count() < g.vertex_count() * g.vertex_count());
    let hamiltonian = brute_force_cycle(&g, 10)
        .expect("length in range")
        .is_some();
    assert!(hamiltonian);
    assert_eq!(
        bondy_classification(&g, hamiltonian),
        BondyOutcome::NoConclusion
    );
    // ...yet the graph is pancyclic anyway, so the bound is not necessary.
    assert!(brute_force_pancyclic(&g));
    pass_within(
        "circulant C10(1,2): pancyclic although 20 < 25",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn full_coverage_dimension_two() {
    let started = Instant::now();
    let certs: Vec<CycleCertificate> = pancyclic_certificates(2)
        .expect("dimension in range")
        .collect::<Result<_, _>>()
        .expect("every length generates");
    assert_eq!(certs.len(), 79);

    // Traceability: every certificate names the schedule row covering its
    // length, in the family of matching parity.
    for cert in &certs {
        let length = cert.length();
        let (family, schedule) = if length % 2 == 0 {
            ("mesh:even:", even_schedule())
        } else {
            ("mesh:odd:", odd_schedule())
        };
        let entry = schedule
            .entry_for(length)
            .unwrap_or_else(|| panic!("schedule misses length {length}"));
        let expected = format!("{family}{}", entry.label());
        assert!(
            cert.provenance().starts_with(&expected),
            "length {length}: provenance {} does not name schedule row {}",
            cert.provenance(),
            entry.label()
        );
    }

    let report = coverage_check(2, certs);
    let summary = report.summary();
    assert_eq!(summary.total, 79);
    assert_eq!(summary.verified, 79);
    assert_eq!(summary.failed, 0);
    assert_eq!(summary.missing, 0);
    assert!(report.is_pancyclic());
    assert_eq!(report.first_problem(), None);
    pass_within(
        "dimension 2: verified coverage of all 79 lengths",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn full_coverage_dimension_three() {
    let started = Instant::now();
    let stream = pancyclic_certificates(3).expect("dimension in range");
    let report = coverage_check(3, stream.map(|r| r.expect("every length generates")));
    let summary = report.summary();
    assert_eq!(summary.total, 727);
    assert_eq!(summary.verified, 727);
    assert_eq!(summary.failed, 0);
    assert_eq!(summary.missing, 0);
    assert!(report.is_pancyclic());
    pass_within(
        "dimension 3: verified coverage of all 727 lengths",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn spot_checks_dimension_four() {
    let started = Instant::now();
    let chain = build_mesh_chain(4).expect("dimension in range");
    for length in [3usize, 81, 82, 1000, 3281, 6561] {
        let cert =
            certificate_in(&chain, length).unwrap_or_else(|e| panic!("length {length}: {e}"));
        assert_eq!(cert.n(), 4);
        assert_eq!(cert.length(), length);
        assert_eq!(verify_cycle(&cert), Ok(()), "length {length}");
    }
    pass_within(
        "dimension 4: spot lengths {3, 81, 82, 1000, 3281, 6561} verified",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn edge_count_formula_matches_enumeration() {
    let started = Instant::now();
    for n in 1..=3usize {
        let stats = graph_stats(n).expect("dimension in range");
        let enumerated = count_edges_by_enumeration(n).expect("dimension in range");
        let formula = 3 * n as u128 * 9u128.pow(n as u32);
        assert_eq!(stats.edge_count, formula, "closed form at n={n}");
        assert_eq!(enumerated, formula, "enumeration at n={n}");
    }
    pass_within(
        "edge counts: enumeration equals 3n·9^n for n in {1, 2, 3}",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn invariant_suite_holds() {
    let started = Instant::now();

    // Adjacency is symmetric and irreflexive (exhaustive at n=2).
    let all_n2: Vec<ProductVertex> = (1..=9u8)
        .flat_map(|a| (1..=9u8).map(move |b| ProductVertex::from_values(&[a, b]).expect("labels")))
        .collect();
    for u in &all_n2 {
        assert!(!product_adjacent(u, u).expect("same dimension"));
        for v in &all_n2 {
            assert_eq!(
                product_adjacent(u, v).expect("same dimension"),
                product_adjacent(v, u).expect("same dimension")
            );
        }
    }

    // 6n-regularity, sampled across dimensions.
    for (n, values) in [
        (1usize, vec![vec![1u8], vec![5], vec![9]]),
        (2, vec![vec![1, 1], vec![4, 7], vec![9, 9]]),
        (3, vec![vec![2, 8, 5], vec![9, 1, 9]]),
        (4, vec![vec![3, 3, 3, 3], vec![1, 9, 2, 8]]),
    ] {
        for vals in values {
            let u = ProductVertex::from_values(&vals).expect("labels");
            assert_eq!(neighbors(&u).len(), 6 * n, "degree at {u}");
        }
    }

    // Splice additivity, exercised through the public chain builder: part
    // sums match the requested totals exactly.
    for (n, length) in [(3usize, 85usize), (3, 163), (4, 1000)] {
        let cert = certificate_for_length(n, length).expect("in range");
        assert_eq!(cert.length(), length);
    }

    // Schedule totality: the two families tile {4..80} even and {3..81} odd
    // with no gaps or repeats.
    let mut evens: Vec<usize> = even_schedule().entries().iter().map(|e| e.length).collect();
    evens.sort_unstable();
    assert_eq!(evens, (4..=80).step_by(2).collect::<Vec<_>>());
    let mut odds: Vec<usize> = odd_schedule().entries().iter().map(|e| e.length).collect();
    odds.sort_unstable();
    assert_eq!(odds, (3..=81).step_by(2).collect::<Vec<_>>());

    // Certificates survive the serialization round trip bit-for-bit.
    let cert = certificate_for_length(2, 57).expect("in range");
    let doc = CertificateDocument::from_certificate(&cert);
    let reparsed = CertificateDocument::from_json(&doc.to_json()).expect("own output parses");
    let rebuilt = reparsed.to_certificate().expect("structurally valid");
    assert_eq!(rebuilt.vertices(), cert.vertices());
    assert_eq!(verify_cycle(&rebuilt), Ok(()));

    // Verification is invariant under rotation and reversal.
    let cert = certificate_for_length(2, 12).expect("in range");
    let vertices = cert.vertices().to_vec();
    for rotation in 0..vertices.len() {
        let mut rotated = vertices.clone();
        rotated.rotate_left(rotation);
        let turned = CycleCertificate::new(2, rotated.len(), rotated.clone(), "turned".into())
            .expect("uniform dimension");
        assert_eq!(verify_cycle(&turned), Ok(()));
        rotated.reverse();
        let reversed = CycleCertificate::new(2, rotated.len(), rotated, "reversed".into())
            .expect("uniform dimension");
        assert_eq!(verify_cycle(&reversed), Ok(()));
    }

    pass_within(
        "invariants: symmetry, regularity, additivity, totality, round-trip, rotation",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn fault_injection_reports_exact_kinds() {
    let started = Instant::now();
    let good = certificate_for_length(2, 10).expect("in range");
    let vertices = good.vertices().to_vec();
    let mut injected = 0usize;
    let mut caught = 0usize;
    let mut check = |cert: CycleCertificate, expected: VerificationErrorKind, what: &str| {
        injected += 1;
        match verify_cycle(&cert) {
            Err(err) if err.kind() == expected => caught += 1,
            other => panic!("{what}: expected {expected:?}, got {other:?}"),
        }
    };

    // Wrong length field.
    let wrong_length = CycleCertificate::new(2, 11, vertices.clone(), "injected".into())
        .expect("uniform dimension");
    check(
        wrong_length,
        VerificationErrorKind::LengthMismatch,
        "length lie",
    );

    // Duplicate vertex.
    let mut duped = vertices.clone();
    duped[2] = duped[0].clone();
    let duplicate =
        CycleCertificate::new(2, duped.len(), duped, "injected".into()).expect("uniform dimension");
    check(
        duplicate,
        VerificationErrorKind::DuplicateVertex,
        "duplicate vertex",
    );

    // Broken adjacency: replace an interior vertex with one adjacent to
    // neither of its neighbors and distinct from the rest of the cycle.
    let mut broken = vertices.clone();
    let replacement = all_vertices_n2()
        .into_iter()
        .find(|cand| {
            !broken.contains(cand)
                && !product_adjacent(cand, &broken[2]).expect("same dimension")
                && !product_adjacent(cand, &broken[4]).expect("same dimension")
        })
        .expect("the power graph is not complete");
    broken[3] = replacement;
    let nonadjacent = CycleCertificate::new(2, broken.len(), broken, "injected".into())
        .expect("uniform dimension");
    check(
        nonadjacent,
        VerificationErrorKind::NonAdjacentStep,
        "broken step",
    );

    // Broken wraparound: a valid open path whose ends do not close.
    let open_path: Vec<ProductVertex> = [[1u8], [4], [2]]
        .iter()
        .map(|vals| ProductVertex::from_values(vals).expect("labels"))
        .collect();
    let unclosed = CycleCertificate::new(1, open_path.len(), open_path, "injected".into())
        .expect("uniform dimension");
    check(
        unclosed,
        VerificationErrorKind::BadWraparound,
        "open wraparound",
    );

    assert_eq!(injected, caught, "every injected fault must be caught");
    assert_eq!(injected, 4);
    pass_within(
        "fault injection: 4/4 corruptions rejected with exact kinds",
        started,
        Duration::from_secs(10),
    );
}

/// All 81 vertices of the square power, for fault-injection searches.
fn all_vertices_n2() -> Vec<ProductVertex> {
    (1..=9u8)
        .flat_map(|a| (1..=9u8).map(move |b| ProductVertex::from_values(&[a, b]).expect("labels")))
        .collect()
}

/// Whole-spectrum coverage for dimension 4 (6 559 lengths). Long-running;
/// opt in with `cargo test --test acceptance -- --ignored`.
#[test]
#[ignore = "whole-spectrum dimension-4 run; opt in with --ignored"]
fn full_coverage_dimension_four() {
    let started = Instant::now();
    let stream = pancyclic_certificates(4).expect("dimension in range");
    let report = coverage_check(4, stream.map(|r| r.expect("every length generates")));
    let summary = report.summary();
    assert_eq!(summary.total, 6559);
    assert_eq!(summary.verified, 6559);
    assert!(report.is_pancyclic());
    println!(
        "PASS  dimension 4: verified coverage of all 6559 lengths  ({:?})",
        started.elapsed()
    );
}
