//! Undirected simple graph with a deletion journal.
//!
//! Vertices are dense ids `0..n`. Neighbor lists give `O(degree)` enumeration,
//! and a packed adjacency bit matrix answers edge queries in `O(1)`.
//! Deletions made through a [`DeletionJournal`] can be rolled back to any
//! open mark, leaving the graph structurally identical (including neighbor
//! order) to its state when the mark was taken.

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    bits: Vec<u64>,
    m: usize,
}

#[derive(Clone, Copy, Debug)]
struct Deleted {
    u: Vertex,
    v: Vertex,
    pos_u: usize,
    pos_v: usize,
}

/// Stack of journaled edge deletions grouped under marks.
#[derive(Clone, Debug, Default)]
pub struct DeletionJournal {
    entries: Vec<Deleted>,
    marks: Vec<usize>,
}

/// Handle to an open journal mark. Marks must be restored in LIFO order.
#[derive(Debug, PartialEq, Eq)]
#[must_use]
pub struct Mark(usize);

impl DeletionJournal {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mark(&mut self) -> Mark {
        self.marks.push(self.entries.len());
        Mark(self.marks.len() - 1)
    }

    /// Number of open marks.
    pub fn depth(&self) -> usize {
        self.marks.len()
    }

    /// Total number of deletions currently recorded.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Deletions recorded since `mark` was opened.
    pub fn deleted_since(&self, mark: &Mark) -> usize {
        self.entries.len() - self.marks[mark.0]
    }
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let words = (n * n).div_ceil(64);
        Ok(Graph { n, adj: vec![Vec::new(); n], bits: vec![0; words], m: 0 })
    }

    /// Builds a graph from an edge iterator, ignoring duplicates and self-loops.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    #[inline]
    fn bit(&self, u: Vertex, v: Vertex) -> (usize, u64) {
        let i = u * self.n + v;
        (i / 64, 1u64 << (i % 64))
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (w, b) = self.bit(u, v);
        self.bits[w] & b != 0
    }

    fn set_bits(&mut self, u: Vertex, v: Vertex, on: bool) {
        for (a, b) in [(u, v), (v, u)] {
            let (w, mask) = self.bit(a, b);
            if on {
                self.bits[w] |= mask;
            } else {
                self.bits[w] &= !mask;
            }
        }
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds `{u, v}`. Returns `false` for self-loops and existing edges.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v || self.has_edge(u, v) {
            return Ok(false);
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.set_bits(u, v, true);
        self.m += 1;
        self.debug_validate();
        Ok(true)
    }

    /// Removes `{u, v}` without journaling. Returns `false` if absent.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v || !self.has_edge(u, v) {
            return Ok(false);
        }
        self.unlink(u, v);
        Ok(true)
    }

    fn unlink(&mut self, u: Vertex, v: Vertex) -> (usize, usize) {
        let pos_u = self.adj[u].iter().position(|&x| x == v).expect("edge in bitmap but not in list");
        self.adj[u].swap_remove(pos_u);
        let pos_v = self.adj[v].iter().position(|&x| x == u).expect("edge in bitmap but not in list");
        self.adj[v].swap_remove(pos_v);
        self.set_bits(u, v, false);
        self.m -= 1;
        (pos_u, pos_v)
    }

    /// Deletes an existing edge, recording it under the journal's current mark.
    ///
    /// Panics if the edge is absent or no mark is open.
    pub fn delete_edge_journaled(&mut self, j: &mut DeletionJournal, u: Vertex, v: Vertex) {
        assert!(!j.marks.is_empty(), "journaled deletion without an open mark");
        assert!(u < self.n && v < self.n && self.has_edge(u, v), "deleting absent edge ({u}, {v})");
        let (pos_u, pos_v) = self.unlink(u, v);
        j.entries.push(Deleted { u, v, pos_u, pos_v });
    }

    /// Reinstates every edge deleted since `mark`, in reverse deletion order.
    ///
    /// Panics if `mark` is not the innermost open mark.
    pub fn restore(&mut self, j: &mut DeletionJournal, mark: Mark) {
        assert_eq!(mark.0 + 1, j.marks.len(), "journal marks must be restored LIFO");
        let start = j.marks.pop().unwrap();
        while j.entries.len() > start {
            let d = j.entries.pop().unwrap();
            let lv = &mut self.adj[d.v];
            lv.push(d.u);
            let last = lv.len() - 1;
            lv.swap(d.pos_v, last);
            let lu = &mut self.adj[d.u];
            lu.push(d.v);
            let last = lu.len() - 1;
            lu.swap(d.pos_u, last);
            self.set_bits(d.u, d.v, true);
            self.m += 1;
        }
        self.debug_validate();
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_connected(&self) -> bool {
        let (count, _) = self.component_ids();
        count == 1
    }

    /// Component id per vertex, numbered in order of each component's lowest vertex.
    pub fn components(&self) -> Vec<usize> {
        self.component_ids().1
    }

    pub fn component_count(&self) -> usize {
        self.component_ids().0
    }

    fn component_ids(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.n];
        let mut stack = Vec::new();
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        (next, comp)
    }

    /// Cut vertices, ascending. Iterative DFS low-link, `O(n + m)`.
    pub fn articulation_points(&self) -> Vec<Vertex> {
        const UNSEEN: usize = usize::MAX;
        let n = self.n;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            stack.push((root, UNSEEN, 0));
            while let Some(top) = stack.last_mut() {
                let (u, parent, idx) = *top;
                if idx < self.adj[u].len() {
                    top.2 += 1;
                    let w = self.adj[u][idx];
                    if disc[w] == UNSEEN {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != UNSEEN {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    pub fn has_articulation_point(&self) -> bool {
        !self.articulation_points().is_empty()
    }

    /// Checks symmetry and degree bookkeeping. Debug builds call this after mutations.
    pub fn validate(&self) -> bool {
        let mut total = 0;
        for u in 0..self.n {
            let mut seen = std::collections::HashSet::new();
            for &v in &self.adj[u] {
                if v == u || v >= self.n || !seen.insert(v) {
                    return false;
                }
                if !self.has_edge(u, v) || !self.adj[v].contains(&u) {
                    return false;
                }
            }
            total += self.adj[u].len();
        }
        let set_bits: u32 = self.bits.iter().map(|w| w.count_ones()).sum();
        total == 2 * self.m && set_bits as usize == total
    }

    #[inline]
    fn debug_validate(&self) {
        #[cfg(debug_assertions)]
        if self.n <= 64 {
            debug_assert!(self.validate(), "graph invariants violated");
        }
    }
}
