//! Edge pruning and cheap non-Hamiltonicity certificates.
//!
//! Two operators run to a fixpoint:
//!
//! * a vertex with two degree-2 neighbors keeps only those two edges (three
//!   or more such neighbors is an immediate certificate);
//! * the chord joining the ends of a maximal forced path on fewer than `n`
//!   vertices is deleted.
//!
//! Any vertex falling below degree 2, or a forced cycle shorter than `n`,
//! proves the graph non-Hamiltonian. Work is driven by the set of vertices
//! that newly reached degree 2, so an incremental call after a few
//! deletions costs time proportional to the affected region plus the
//! forced paths through it.

use std::fmt;

use crate::graph::{DeletionJournal, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NonHamReason {
    MinDegree,
    TriForced,
    Disconnected,
    CutPoint,
    OddForcedDegree,
    /// Exhaustive search found no cycle.
    Exhausted,
}

impl fmt::Display for NonHamReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NonHamReason::MinDegree => "MinDegree",
            NonHamReason::TriForced => "TriForced",
            NonHamReason::Disconnected => "Disconnected",
            NonHamReason::CutPoint => "CutPoint",
            NonHamReason::OddForcedDegree => "OddForcedDegree",
            NonHamReason::Exhausted => "Exhausted",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneStatus {
    Reduced,
    NonHamiltonian(NonHamReason),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruneOutcome {
    pub status: PruneStatus,
    /// Edges deleted (and journaled) by this call.
    pub deleted: usize,
    pub iterations: usize,
}

impl PruneOutcome {
    pub fn is_reduced(&self) -> bool {
        self.status == PruneStatus::Reduced
    }

    pub fn reason(&self) -> Option<NonHamReason> {
        match self.status {
            PruneStatus::Reduced => None,
            PruneStatus::NonHamiltonian(r) => Some(r),
        }
    }
}

/// Reusable scratch state for incremental pruning.
///
/// Callers delete edges through [`Pruner::delete`], which records vertices
/// that reach degree 2, then call [`Pruner::propagate`] to reach the fixpoint.
#[derive(Clone, Debug)]
pub struct Pruner {
    pending: Vec<Vertex>,
    stamp: Vec<u32>,
    epoch: u32,
    deleted: usize,
    short: Option<NonHamReason>,
}

impl Pruner {
    pub fn new(n: usize) -> Self {
        Pruner { pending: Vec::new(), stamp: vec![0; n], epoch: 0, deleted: 0, short: None }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Journaled deletion that tracks degree changes for the next propagation.
    pub fn delete(&mut self, g: &mut Graph, j: &mut DeletionJournal, u: Vertex, v: Vertex) {
        g.delete_edge_journaled(j, u, v);
        self.deleted += 1;
        for x in [u, v] {
            match g.degree(x) {
                2 => self.pending.push(x),
                0 | 1 => self.short = Some(NonHamReason::MinDegree),
                _ => {}
            }
        }
    }

    /// Marks every current degree-2 vertex as pending; used for a full pass.
    pub fn seed_all(&mut self, g: &Graph) {
        for v in 0..g.n() {
            match g.degree(v) {
                2 => self.pending.push(v),
                0 | 1 => self.short = Some(NonHamReason::MinDegree),
                _ => {}
            }
        }
    }

    fn finish(&mut self, status: PruneStatus, iterations: usize) -> PruneOutcome {
        self.pending.clear();
        self.short = None;
        let deleted = std::mem::take(&mut self.deleted);
        PruneOutcome { status, deleted, iterations }
    }

    /// Applies both operators until no vertex newly reaches degree 2.
    pub fn propagate(&mut self, g: &mut Graph, j: &mut DeletionJournal) -> PruneOutcome {
        let n = g.n();
        let mut iterations = 0;
        let mut frontier: Vec<Vertex> = Vec::new();
        loop {
            if let Some(r) = self.short {
                return self.finish(PruneStatus::NonHamiltonian(r), iterations);
            }
            if self.pending.is_empty() {
                return self.finish(PruneStatus::Reduced, iterations);
            }
            iterations += 1;
            assert!(iterations <= n.max(1), "pruning exceeded {n} iterations");
            std::mem::swap(&mut frontier, &mut self.pending);

            // Rule A: neighbors of fresh degree-2 vertices.
            let ep = self.next_epoch();
            for &a in &frontier {
                if g.degree(a) != 2 {
                    continue;
                }
                let nbrs = [g.neighbors(a)[0], g.neighbors(a)[1]];
                for x in nbrs {
                    if self.stamp[x] == ep {
                        continue;
                    }
                    self.stamp[x] = ep;
                    let forced = g.neighbors(x).iter().filter(|&&y| g.degree(y) == 2).count();
                    if forced >= 3 {
                        return self.finish(PruneStatus::NonHamiltonian(NonHamReason::TriForced), iterations);
                    }
                    if forced == 2 && g.degree(x) > 2 {
                        let drop: Vec<Vertex> = g.neighbors(x).iter().copied().filter(|&y| g.degree(y) != 2).collect();
                        for y in drop {
                            self.delete(g, j, x, y);
                        }
                        if let Some(r) = self.short {
                            return self.finish(PruneStatus::NonHamiltonian(r), iterations);
                        }
                    }
                }
            }

            // Rule B: chords closing short forced paths.
            let ep = self.next_epoch();
            for &a in &frontier {
                if g.degree(a) != 2 || self.stamp[a] == ep {
                    continue;
                }
                match self.forced_path(g, a, ep) {
                    // A closed run of degree-2 vertices is a whole component.
                    ForcedPath::Cycle(len) if len < n => {
                        return self.finish(PruneStatus::NonHamiltonian(NonHamReason::Disconnected), iterations);
                    }
                    ForcedPath::Cycle(_) => {}
                    ForcedPath::Open { ends: (v1, vk), len } => {
                        if v1 == vk {
                            return self.finish(PruneStatus::NonHamiltonian(NonHamReason::MinDegree), iterations);
                        }
                        if len < n && g.has_edge(v1, vk) {
                            self.delete(g, j, v1, vk);
                        }
                    }
                }
            }
            frontier.clear();
        }
    }

    /// Walks the maximal run of degree-2 vertices through `a`, stamping them.
    fn forced_path(&mut self, g: &Graph, a: Vertex, ep: u32) -> ForcedPath {
        self.stamp[a] = ep;
        let mut len = 1;
        let mut ends = [a; 2];
        for (side, end) in ends.iter_mut().enumerate() {
            let mut prev = a;
            let mut cur = g.neighbors(a)[side];
            loop {
                if cur == a {
                    return ForcedPath::Cycle(len);
                }
                if g.degree(cur) != 2 {
                    len += 1;
                    *end = cur;
                    break;
                }
                self.stamp[cur] = ep;
                len += 1;
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
        }
        ForcedPath::Open { ends: (ends[0], ends[1]), len: if ends[0] == ends[1] { len - 1 } else { len } }
    }
}

enum ForcedPath {
    Cycle(usize),
    Open { ends: (Vertex, Vertex), len: usize },
}

/// Prunes `g` to a fixpoint, journaling deletions under the caller's open mark.
pub fn prune_fixpoint(g: &mut Graph, j: &mut DeletionJournal) -> PruneOutcome {
    let mut p = Pruner::new(g.n());
    p.seed_all(g);
    p.propagate(g, j)
}

fn structural_failure(g: &Graph) -> Option<NonHamReason> {
    if g.min_degree() < 2 {
        Some(NonHamReason::MinDegree)
    } else if !g.is_connected() {
        Some(NonHamReason::Disconnected)
    } else if g.has_articulation_point() {
        Some(NonHamReason::CutPoint)
    } else {
        None
    }
}

/// Pre-search check: minimum degree, connectivity and cut-points, then
/// pruning to a fixpoint, then the same three tests on the pruned graph.
/// The structural tests run on the raw graph too so the reported reason
/// names the most basic defect.
pub fn initial_check(g: &mut Graph, j: &mut DeletionJournal) -> PruneOutcome {
    if let Some(r) = structural_failure(g) {
        return PruneOutcome { status: PruneStatus::NonHamiltonian(r), deleted: 0, iterations: 0 };
    }
    let mut out = prune_fixpoint(g, j);
    if !out.is_reduced() {
        return out;
    }
    if let Some(r) = structural_failure(g) {
        out.status = PruneStatus::NonHamiltonian(r);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityCertificate {
    /// A component of `G - F` touched by an odd number of forced-edge endpoints.
    NonHamiltonian {
        component: Vec<Vertex>,
        forced_degree: usize,
    },
    Inconclusive,
}

/// Forced-degree parity test, `O(n + m)`.
///
/// `F` is every edge incident on a degree-2 vertex. Each component of
/// `G - F` must be entered and left an even number of times through `F`.
pub fn forced_degree_parity_test(g: &Graph) -> ParityCertificate {
    let n = g.n();
    let forced = |u: Vertex, v: Vertex| g.degree(u) == 2 || g.degree(v) == 2;
    let mut dsu = Dsu::new(n);
    for u in 0..n {
        for &v in g.neighbors(u) {
            if u < v && !forced(u, v) {
                dsu.union(u, v);
            }
        }
    }
    let mut fdeg = vec![0usize; n];
    for u in 0..n {
        for &v in g.neighbors(u) {
            if forced(u, v) {
                // Each endpoint is visited once from its own side.
                fdeg[dsu.find(u)] += 1;
            }
        }
    }
    let odd_root = (0..n).find(|&v| dsu.find(v) == v && fdeg[v] % 2 == 1);
    match odd_root {
        Some(r) => ParityCertificate::NonHamiltonian {
            component: (0..n).filter(|&v| dsu.find(v) == r).collect(),
            forced_degree: fdeg[r],
        },
        None => ParityCertificate::Inconclusive,
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutsetCertificate {
    NonHamiltonian { cut: Vec<Vertex>, components: usize },
    Inconclusive,
}

/// Tries every vertex set of size `1..=max_c` (at most 3) and reports one
/// whose removal leaves more components than its size. Diagnostic only:
/// `O(n^max_c (n + m))`.
pub fn small_cutset_scan(g: &Graph, max_c: usize) -> CutsetCertificate {
    assert!((1..=3).contains(&max_c), "cut size must be 1, 2 or 3");
    let n = g.n();
    let mut removed = vec![false; n];
    let mut stack = Vec::new();
    let mut seen = vec![false; n];
    let mut count_without = |cut: &[Vertex], removed: &mut Vec<bool>| -> usize {
        for &v in cut {
            removed[v] = true;
        }
        seen.iter_mut().for_each(|s| *s = false);
        let mut comps = 0;
        for s in 0..n {
            if removed[s] || seen[s] {
                continue;
            }
            comps += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if !removed[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        for &v in cut {
            removed[v] = false;
        }
        comps
    };
    for size in 1..=max_c.min(n) {
        let mut cut: Vec<Vertex> = (0..size).collect();
        loop {
            let comps = count_without(&cut, &mut removed);
            if comps > size {
                return CutsetCertificate::NonHamiltonian { cut, components: comps };
            }
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && cut[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            cut[i - 1] += 1;
            for k in i..size {
                cut[k] = cut[k - 1] + 1;
            }
        }
    }
    CutsetCertificate::Inconclusive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::*;

    fn pruned(mut g: Graph) -> (Graph, PruneOutcome) {
        let mut j = DeletionJournal::new();
        let _m = j.mark();
        let out = prune_fixpoint(&mut g, &mut j);
        assert_eq!(out.deleted, j.len());
        (g, out)
    }

    #[test]
    fn cycle_is_untouched() {
        for n in [3, 4, 10] {
            let (g, out) = pruned(cycle(n));
            assert_eq!(out.status, PruneStatus::Reduced);
            assert_eq!(out.deleted, 0);
            assert_eq!(g, cycle(n));
        }
    }

    #[test]
    fn chord_on_forced_arc_is_deleted() {
        let mut g = cycle(10);
        g.add_edge(0, 5).unwrap();
        let (g, out) = pruned(g);
        assert_eq!(out.status, PruneStatus::Reduced);
        assert_eq!(out.deleted, 1);
        assert_eq!(g, cycle(10));
    }

    #[test]
    fn k23_is_triforced() {
        let (_, out) = pruned(k23());
        assert_eq!(out.reason(), Some(NonHamReason::TriForced));
    }

    #[test]
    fn short_forced_cycle_is_rejected() {
        // Two triangles joined by an edge: the triangles close early.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap();
        let (_, out) = pruned(g);
        assert!(!out.is_reduced());
    }

    #[test]
    fn min_degree_detected() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (_, out) = pruned(g);
        assert_eq!(out.reason(), Some(NonHamReason::MinDegree));
    }

    #[test]
    fn restore_after_prune() {
        let mut g = cycle(10);
        g.add_edge(0, 5).unwrap();
        g.add_edge(2, 7).unwrap();
        let orig = g.clone();
        let mut j = DeletionJournal::new();
        let mk = j.mark();
        prune_fixpoint(&mut g, &mut j);
        g.restore(&mut j, mk);
        assert_eq!(g, orig);
    }

    #[test]
    fn initial_check_reasons() {
        let mut j = DeletionJournal::new();
        let _m = j.mark();
        assert_eq!(initial_check(&mut bowtie(), &mut j).reason(), Some(NonHamReason::CutPoint));
        let mut two =
            Graph::from_edges(8, (0..4).map(|i| (i, (i + 1) % 4)).chain((0..4).map(|i| (4 + i, 4 + (i + 1) % 4))))
                .unwrap();
        assert_eq!(initial_check(&mut two, &mut j).reason(), Some(NonHamReason::Disconnected));
        assert!(initial_check(&mut complete(6), &mut j).is_reduced());
    }

    #[test]
    fn parity_examples() {
        match forced_degree_parity_test(&k23()) {
            ParityCertificate::NonHamiltonian { component, forced_degree } => {
                assert_eq!(forced_degree, 3);
                assert_eq!(component, vec![0]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(forced_degree_parity_test(&cycle(10)), ParityCertificate::Inconclusive);
        assert!(matches!(forced_degree_parity_test(&three_path_blobs()), ParityCertificate::NonHamiltonian { .. }));
        assert_eq!(forced_degree_parity_test(&complete(5)), ParityCertificate::Inconclusive);
    }

    #[test]
    fn cutset_examples() {
        assert_eq!(small_cutset_scan(&bowtie(), 1), CutsetCertificate::NonHamiltonian { cut: vec![0], components: 2 });
        match small_cutset_scan(&k23_of_triangles(), 2) {
            CutsetCertificate::NonHamiltonian { cut, components } => {
                assert_eq!(cut, vec![0, 1]);
                assert_eq!(components, 3);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(small_cutset_scan(&k23_of_triangles(), 1), CutsetCertificate::Inconclusive);
        for c in 1..=3 {
            assert_eq!(small_cutset_scan(&cycle(10), c), CutsetCertificate::Inconclusive);
        }
    }
}
