mod common;

use hamlab::named;
use hamlab::pruning::{
    forced_degree_parity_test, initial_check, prune_fixpoint, small_cutset_scan, CutsetCertificate, ParityCertificate,
};
use hamlab::{DeletionJournal, Graph};
use rand::Rng;

/// Sparse-leaning sample: half the graphs sit near the cycle density where
/// forced edges are common.
fn sample(count: usize, seed: u64) -> Vec<Graph> {
    let mut r = common::rng(seed);
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                common::random_dense_range(4, 10, &mut r)
            } else {
                let n = r.gen_range(4..=10);
                let m = r.gen_range(n..=(2 * n).min(n * (n - 1) / 2));
                common::random_graph(n, m, &mut r)
            }
        })
        .collect()
}

#[test]
fn prune_fixpoint_preserves_hamiltonicity() {
    for g in sample(500, 1) {
        let before = common::held_karp(&g);
        let mut work = g.clone();
        let mut j = DeletionJournal::new();
        let mark = j.mark();
        let out = prune_fixpoint(&mut work, &mut j);
        assert!(out.iterations <= g.n(), "iterations {} > n", out.iterations);
        assert_eq!(out.deleted, j.len());
        assert_eq!(work.m() + out.deleted, g.m());
        assert!(work.edges().iter().all(|&(u, v)| g.has_edge(u, v)));
        if out.is_reduced() {
            assert_eq!(common::held_karp(&work), before, "{:?}", g.edges());
        } else {
            assert!(!before, "false certificate {:?} on {:?}", out.reason(), g.edges());
        }
        work.restore(&mut j, mark);
        assert_eq!(work, g);
    }
}

#[test]
fn initial_check_never_rejects_hamiltonian_graphs() {
    for g in sample(500, 2) {
        let mut work = g.clone();
        let mut j = DeletionJournal::new();
        let _mark = j.mark();
        let out = initial_check(&mut work, &mut j);
        if !out.is_reduced() {
            assert!(!common::held_karp(&g), "{:?} on {:?}", out.reason(), g.edges());
        }
    }
}

#[test]
fn parity_test_is_sound() {
    let mut hits = 0;
    for g in sample(2000, 3) {
        if let ParityCertificate::NonHamiltonian { component, forced_degree } = forced_degree_parity_test(&g) {
            hits += 1;
            assert!(forced_degree % 2 == 1 && !component.is_empty());
            assert!(!common::held_karp(&g), "parity certificate on Hamiltonian {:?}", g.edges());
        }
    }
    assert!(hits > 0, "sample never exercised the certificate");
}

#[test]
fn cutset_scan_is_sound() {
    for g in sample(300, 4) {
        for c in 1..=3 {
            if let CutsetCertificate::NonHamiltonian { cut, components } = small_cutset_scan(&g, c) {
                assert!(cut.len() <= c && components > cut.len());
                assert_eq!(common::component_count_without(&g, &cut), components);
                assert!(!common::held_karp(&g));
            }
        }
    }
}

#[test]
fn named_certificates_agree_with_oracle() {
    assert!(!common::held_karp(&named::three_path_blobs()));
    assert!(!common::held_karp(&named::k23_of_triangles()));
    assert!(!common::held_karp(&named::petersen()));
    assert!(common::held_karp(&named::cycle(10)));
}
