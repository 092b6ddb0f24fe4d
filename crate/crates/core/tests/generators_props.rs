mod common;

use std::collections::HashMap;

use hamlab::generators::{
    degreebound_targets, gen_degree_sequence, gen_gnm, gen_gnstar_traced, gen_iccs, gen_knight,
    iccs_mean_degree_bounds, rng_from_seed,
};
use hamlab::solver::verify_cycle;
use hamlab::{Family, InstanceSpec};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn gnm_has_exact_edge_count() {
    let mut r = common::rng(11);
    for _ in 0..300 {
        let n = r.gen_range(1..=40);
        let m = r.gen_range(0..=n * (n - 1) / 2);
        let g = gen_gnm(n, m, &mut r).unwrap();
        assert_eq!(g.m(), m);
        assert_eq!(g.edges().len(), m);
        for (u, v) in g.edges() {
            assert!(u < v);
        }
    }
}

#[test]
fn gnstar_is_minimal() {
    for seed in 0..500 {
        let n = 3 + (seed as usize % 60);
        let (mut g, (u, v)) = gen_gnstar_traced(n, &mut rng_from_seed(seed)).unwrap();
        assert!(g.min_degree() >= 2);
        assert!(g.has_edge(u, v));
        g.remove_edge(u, v).unwrap();
        assert!(g.min_degree() <= 1, "seed {seed}: last edge was not needed");
    }
}

#[test]
fn degreebound_realizes_targets() {
    let mut r = common::rng(12);
    for trial in 0..1000u64 {
        let n = r.gen_range(4..=120);
        let p3: f64 = r.gen_range(0.0..=1.0);
        let version = 1 + (trial % 2) as u8;
        // generate() draws the targets first from the same seeded stream.
        let targets = degreebound_targets(n, p3, &mut rng_from_seed(trial));
        let spec = InstanceSpec::new(Family::Degreebound { n, p3, version }, trial);
        let g = spec.generate().unwrap().graph;
        assert_eq!(g.degrees(), targets, "n={n} p3={p3} v{version}");
        let threes = (p3 * n as f64 + 0.5 + 1e-9).floor() as usize;
        let count3 = targets.iter().filter(|&&d| d == 3).count();
        let count4 = targets.iter().filter(|&&d| d == 4).count();
        assert!(count3 == threes || count3 == threes + 1 || count4 == 1);
        assert_eq!(targets.iter().sum::<usize>() % 2, 0);
    }
}

// Counts each labeled graph on {1,1,2,2,2}. Two-component graph: edge 0-1 plus triangle.
#[test]
fn v2_bias_toward_disconnected_graph() {
    let degrees = [1, 1, 2, 2, 2];
    let mut r = rng_from_seed(2024);
    let mut counts: HashMap<Vec<(usize, usize)>, u64> = HashMap::new();
    let trials = 1_000_000;
    for _ in 0..trials {
        let g = gen_degree_sequence(&degrees, 2, &mut r).unwrap();
        *counts.entry(g.edges()).or_default() += 1;
    }
    assert_eq!(counts.len(), 7, "one edge+triangle and six labeled paths");
    let split = counts[&vec![(0, 1), (2, 3), (2, 4), (3, 4)]];
    let paths: Vec<u64> = counts.values().copied().filter(|&c| c != split).collect();
    assert_eq!(paths.len(), 6);
    let mean_path = paths.iter().sum::<u64>() as f64 / 6.0;
    let excess = split as f64 / mean_path - 1.0;
    println!("edge+triangle {split}, mean path {mean_path:.0}, excess {:.2}%", 100.0 * excess);
    assert!((0.08..=0.10).contains(&excess), "excess {excess}");
    for &p in &paths {
        assert!(split > p);
    }
}

fn knight_oracle(a: usize, b: usize, rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let n = rows * cols;
    for u in 0..n {
        for v in u + 1..n {
            let dr = (u / cols).abs_diff(v / cols);
            let dc = (u % cols).abs_diff(v % cols);
            if (dr == a && dc == b) || (dr == b && dc == a) {
                edges.push((u, v));
            }
        }
    }
    edges
}

#[test]
fn knight_matches_all_pairs_oracle() {
    for (a, b) in [(1, 2), (2, 1), (2, 3), (1, 4), (0, 1), (1, 1), (3, 3), (0, 2)] {
        for rows in 1..=8 {
            for cols in 1..=8 {
                let mut got = gen_knight(a, b, rows, cols).unwrap().edges();
                got.sort();
                assert_eq!(got, knight_oracle(a, b, rows, cols), "({a},{b}) {rows}x{cols}");
            }
        }
    }
}

#[test]
fn iccs_layout_invariants() {
    for seed in 0..60u64 {
        let k_sub = 1 + (seed as usize % 5);
        let s = 6 + (seed as usize / 5 % 4);
        let (g, layout) = gen_iccs(k_sub, s, &mut rng_from_seed(seed)).unwrap();
        assert_eq!(g.n(), k_sub * (2 * s + 2));
        assert!(verify_cycle(&g, &layout.intended_cycle));
        assert_eq!(layout.blocks.len(), k_sub);
        assert_eq!(layout.connectors.len(), k_sub);
        let mut seen = vec![false; g.n()];
        for (j, b) in layout.blocks.iter().enumerate() {
            assert_eq!(b.independent.len(), s);
            assert_eq!(b.plain.len(), s - 2);
            for &v in b.independent.iter().chain(b.cutset_side().iter()) {
                assert!(!seen[v]);
                seen[v] = true;
            }
            assert_eq!(g.degree(b.decoy), 4);
            assert_eq!(g.degree(b.t1), 3);
            assert_eq!(g.degree(b.t2), 3);
            let u = layout.connectors[j];
            assert_eq!(g.degree(u), 2);
            assert!(g.has_edge(b.t2, u));
            assert!(g.has_edge(u, layout.blocks[(j + 1) % k_sub].t1));
            // S_I stays independent and only touches its own block.
            for &x in &b.independent {
                for &y in &b.independent {
                    assert!(!g.has_edge(x, y));
                }
            }
            for &c in &b.plain {
                assert!(g.degree(c) >= s);
                assert!(g.degree(c) <= s + 2 * (s - 2));
            }
        }
        for &u in &layout.connectors {
            assert!(!seen[u]);
            seen[u] = true;
        }
        assert!(seen.iter().all(|&x| x));
        if k_sub >= 2 {
            let (lo, hi) = iccs_mean_degree_bounds(s);
            let mean = 2.0 * g.m() as f64 / g.n() as f64;
            assert!(mean >= lo - 1e-9 && mean <= hi + 1e-9, "mean {mean} not in [{lo}, {hi}]");
        }
    }
}

fn arb_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (1usize..60, 0usize..200).prop_map(|(n, m)| Family::Gnm { n, m: m.min(n * (n - 1) / 2) }),
        (3usize..80, 0.2f64..3.0).prop_map(|(n, k)| Family::GnmByK { n, k }),
        (3usize..80).prop_map(|n| Family::GnStar { n }),
        (4usize..80, 0.0f64..=1.0, 1u8..=2).prop_map(|(n, p3, version)| Family::Degreebound { n, p3, version }),
        (1usize..4, 0usize..4, 1usize..9, 1usize..9).prop_map(|(a, b, rows, cols)| Family::Knight { a, b, rows, cols }),
        (1usize..4, 6usize..10).prop_map(|(k_sub, s)| Family::Iccs { k_sub, s }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn same_spec_same_graph(family in arb_family(), seed in any::<u64>()) {
        let spec = InstanceSpec::new(family, seed);
        let a = spec.generate().unwrap().graph;
        let b = spec.generate().unwrap().graph;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn spec_display_round_trips(family in arb_family(), seed in any::<u64>()) {
        let spec = InstanceSpec::new(family, seed);
        let back: InstanceSpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(back, spec);
    }
}
