//! Small named graphs used by tests, examples and the CLI.

use crate::graph::Graph;

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// `K_{2,3}`: vertices 0 and 1 form the side of size two.
pub fn k23() -> Graph {
    Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
}

pub fn two_triangles() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
}

/// Two triangles sharing vertex 0.
pub fn bowtie() -> Graph {
    Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
}

/// A `K_4` (0..4) and a `K_5` (4..9) joined by three subdivided edges
/// through degree-2 vertices 9, 10 and 11.
pub fn three_path_blobs() -> Graph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..4 {
        for v in u + 1..4 {
            edges.push((u, v));
        }
    }
    for u in 4..9 {
        for v in u + 1..9 {
            edges.push((u, v));
        }
    }
    edges.extend([(0, 9), (9, 4), (1, 10), (10, 5), (2, 11), (11, 6)]);
    Graph::from_edges(12, edges).unwrap()
}

/// `K_{2,3}` with each degree-2 vertex replaced by a triangle; hubs are 0 and 1.
pub fn k23_of_triangles() -> Graph {
    let mut edges = Vec::new();
    for t in 0..3 {
        let (x, y, z) = (2 + 3 * t, 3 + 3 * t, 4 + 3 * t);
        edges.extend([(0, x), (1, y), (x, y), (y, z), (z, x)]);
    }
    Graph::from_edges(11, edges).unwrap()
}
