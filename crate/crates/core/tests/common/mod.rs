#![allow(dead_code)]

use hamlab::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform `m`-edge graph on `n` vertices, by shuffling all pairs.
pub fn random_graph(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    Graph::from_edges(n, pairs).unwrap()
}

/// Random graph with `n` in `lo..=hi` and `m` anywhere from `n` to complete.
pub fn random_dense_range(lo: usize, hi: usize, rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let max = n * (n - 1) / 2;
    let m = rng.gen_range(n.min(max)..=max);
    random_graph(n, m, rng)
}

/// Held-Karp subset DP over paths from vertex 0.
pub fn held_karp(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let full = 1usize << n;
    let mut reach = vec![0u32; full];
    reach[1] = 1;
    for set in 1..full {
        if set & 1 == 0 {
            continue;
        }
        let ends = reach[set];
        if ends == 0 {
            continue;
        }
        for v in 0..n {
            if ends >> v & 1 == 0 {
                continue;
            }
            for w in 0..n {
                if set >> w & 1 == 0 && g.has_edge(v, w) {
                    reach[set | 1 << w] |= 1 << w;
                }
            }
        }
    }
    (1..n).any(|v| reach[full - 1] >> v & 1 == 1 && g.has_edge(v, 0))
}

// Scans has_edge over all pairs so it does not share the adjacency lists under test.
#[allow(clippy::needless_range_loop)]
pub fn component_count_without(g: &Graph, removed: &[usize]) -> usize {
    let n = g.n();
    let mut seen = vec![false; n];
    for &r in removed {
        seen[r] = true;
    }
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && g.has_edge(v, w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Cut vertices by deletion: v is one iff removing it raises the component count.
pub fn brute_articulation_points(g: &Graph) -> Vec<usize> {
    let base = component_count_without(g, &[]);
    (0..g.n()).filter(|&v| component_count_without(g, &[v]) > base).collect()
}
