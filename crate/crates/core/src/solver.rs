//! Path-extension backtrack search with pruning at every node and an
//! iterated-restart wrapper.
//!
//! A search node is one placement of a vertex on the current path, the
//! start vertex included, so a run that never backtracks costs exactly `n`
//! nodes. When the path grows from `(.., u, v)`, every non-path edge at `u`
//! is deleted; path interiors therefore have degree 2 and the forced-path
//! rule keeps the path from closing before all vertices are placed.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::generators::{rng_from_seed, Rng};
use crate::graph::{DeletionJournal, Graph, Mark, Vertex};
use crate::pruning::{initial_check, NonHamReason, Pruner};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Heuristic {
    LowDegreeFirst,
    HighDegreeFirst,
    RandomOrder,
}

impl std::str::FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" => Ok(Heuristic::LowDegreeFirst),
            "high" => Ok(Heuristic::HighDegreeFirst),
            "random" => Ok(Heuristic::RandomOrder),
            _ => Err(Error::InvalidParameter(format!("unknown heuristic {s:?} (low, high, random)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartVertex {
    Fixed(Vertex),
    RandomPerRun,
    /// A uniformly random vertex among those of maximum degree in the
    /// initially pruned graph, re-drawn per attempt.
    MaxDegree,
}

impl std::str::FromStr for StartVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(StartVertex::RandomPerRun),
            "maxdeg" => Ok(StartVertex::MaxDegree),
            v => v
                .parse()
                .map(StartVertex::Fixed)
                .map_err(|_| Error::InvalidParameter(format!("unknown start {s:?} (random, maxdeg, or a vertex id)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InSearchChecks {
    pub components: bool,
    pub cutpoints: bool,
}

impl std::str::FromStr for InSearchChecks {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (components, cutpoints) = match s {
            "none" => (false, false),
            "components" => (true, false),
            "cutpoints" => (false, true),
            "both" => (true, true),
            _ => return Err(Error::InvalidParameter(format!("unknown checks {s:?}"))),
        };
        Ok(InSearchChecks { components, cutpoints })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub heuristic: Heuristic,
    pub restarts_enabled: bool,
    pub restart_multiplier: f64,
    /// First attempt's node limit is `initial_limit_factor * n`.
    pub initial_limit_factor: f64,
    /// Cap on total nodes across attempts; exceeding it is a timeout.
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub checks: InSearchChecks,
    pub start_vertex: StartVertex,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            heuristic: Heuristic::LowDegreeFirst,
            restarts_enabled: true,
            restart_multiplier: 2.0,
            initial_limit_factor: 2.0,
            node_limit: None,
            time_limit: None,
            checks: InSearchChecks::default(),
            start_vertex: StartVertex::RandomPerRun,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.restart_multiplier >= 1.0 && self.restart_multiplier.is_finite()) {
            return Err(Error::InvalidParameter("restart multiplier must be >= 1".into()));
        }
        if !(self.initial_limit_factor > 0.0 && self.initial_limit_factor.is_finite()) {
            return Err(Error::InvalidParameter("initial limit factor must be positive".into()));
        }
        if self.node_limit == Some(0) || self.time_limit == Some(Duration::ZERO) {
            return Err(Error::InvalidParameter("limits must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    InitialPrune,
    Search,
    LimitHit,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::InitialPrune => "InitialPrune",
            Phase::Search => "Search",
            Phase::LimitHit => "LimitHit",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Hamiltonian(Vec<Vertex>),
    NonHamiltonian(NonHamReason),
    Timeout,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchStats {
    pub nodes: u64,
    pub restarts: u32,
    pub attempt_nodes: Vec<u64>,
    /// Node limit of each attempt; `None` for an unbounded attempt.
    pub attempt_limits: Vec<Option<u64>>,
    pub wall: Duration,
    pub phase: Phase,
    /// Restart multiplier in effect, if restarts were enabled.
    pub restart_multiplier: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hardness {
    Easy,
    QuadraticallyHard { robust: bool },
}

impl fmt::Display for Hardness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hardness::Easy => "easy",
            Hardness::QuadraticallyHard { robust: false } => "quadratic",
            Hardness::QuadraticallyHard { robust: true } => "robust-quadratic",
        })
    }
}

pub fn is_quadratically_hard(nodes: u64, n: usize) -> bool {
    nodes as u128 >= (n as u128) * (n as u128)
}

/// `n^2` nodes or more is quadratically hard; robustly so when restarts
/// with multiplier 2 were in effect.
pub fn classify_hardness(stats: &SearchStats, n: usize) -> Hardness {
    if is_quadratically_hard(stats.nodes, n) {
        Hardness::QuadraticallyHard { robust: stats.restart_multiplier == Some(2.0) }
    } else {
        Hardness::Easy
    }
}

/// True iff `cycle` visits every vertex once and all consecutive pairs,
/// including the closing pair, are edges of `g`.
pub fn verify_cycle(g: &Graph, cycle: &[Vertex]) -> bool {
    let n = g.n();
    if cycle.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// Orders all current neighbors of `v`.
pub fn order_neighbors(g: &Graph, v: Vertex, heuristic: Heuristic, rng: &mut Rng) -> Vec<Vertex> {
    let mut out = g.neighbors(v).to_vec();
    order_vertices(g, &mut out, heuristic, rng);
    out
}

fn order_vertices(g: &Graph, vs: &mut [Vertex], heuristic: Heuristic, rng: &mut Rng) {
    match heuristic {
        Heuristic::LowDegreeFirst => vs.sort_unstable_by_key(|&w| (g.degree(w), w)),
        Heuristic::HighDegreeFirst => vs.sort_unstable_by_key(|&w| (std::cmp::Reverse(g.degree(w)), w)),
        Heuristic::RandomOrder => vs.shuffle(rng),
    }
}

pub const BRUTE_FORCE_MAX_N: usize = 12;

/// Exact Hamiltonicity by enumerating vertex orders that start at 0.
/// Independent of the pruning machinery; for test oracles on tiny graphs.
pub fn brute_force_oracle(g: &Graph) -> Result<Option<Vec<Vertex>>> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge { n, max: BRUTE_FORCE_MAX_N });
    }
    if n < 3 {
        return Ok(None);
    }
    fn go(g: &Graph, order: &mut Vec<Vertex>, used: &mut [bool]) -> bool {
        let n = g.n();
        let last = *order.last().unwrap();
        if order.len() == n {
            return g.has_edge(last, order[0]);
        }
        for w in 1..n {
            if !used[w] && g.has_edge(last, w) {
                used[w] = true;
                order.push(w);
                if go(g, order, used) {
                    return true;
                }
                order.pop();
                used[w] = false;
            }
        }
        false
    }
    let mut order = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    Ok(go(g, &mut order, &mut used).then_some(order))
}

enum Attempt {
    Found(Vec<Vertex>),
    Exhausted,
    Budget,
    Timeout,
}

enum Placed {
    Dead,
    Open,
    Found,
    Budget,
    Timeout,
}

struct Frame {
    mark: Mark,
    cands: Vec<Vertex>,
    next: usize,
}

/// One solve: owns the working copy, journal, RNG and counters.
pub struct Solver {
    work: Graph,
    journal: DeletionJournal,
    pruner: Pruner,
    cfg: SearchConfig,
    rng: Rng,
    path: Vec<Vertex>,
    on_path: Vec<bool>,
    frames: Vec<Frame>,
    total_nodes: u64,
    attempt_nodes: u64,
    attempt_limit: Option<u64>,
    deadline: Option<Instant>,
}

impl Solver {
    pub fn new(g: &Graph, cfg: &SearchConfig) -> Result<Self> {
        cfg.validate()?;
        if g.n() < 3 {
            return Err(Error::InvalidParameter(format!("solver needs n >= 3, got {}", g.n())));
        }
        if let StartVertex::Fixed(v) = cfg.start_vertex {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { v, n: g.n() });
            }
        }
        Ok(Solver {
            work: g.clone(),
            journal: DeletionJournal::new(),
            pruner: Pruner::new(g.n()),
            cfg: cfg.clone(),
            rng: rng_from_seed(cfg.seed),
            path: Vec::with_capacity(g.n()),
            on_path: vec![false; g.n()],
            frames: Vec::new(),
            total_nodes: 0,
            attempt_nodes: 0,
            attempt_limit: None,
            deadline: None,
        })
    }

    /// The solver's working graph; after [`Solver::run`] it equals the
    /// initially pruned graph.
    pub fn working_graph(&self) -> &Graph {
        &self.work
    }

    pub fn run(&mut self, original: &Graph) -> (SolveOutcome, SearchStats) {
        let started = Instant::now();
        self.deadline = self.cfg.time_limit.map(|t| started + t);
        let n = self.work.n();
        let mut stats = SearchStats {
            nodes: 0,
            restarts: 0,
            attempt_nodes: Vec::new(),
            attempt_limits: Vec::new(),
            wall: Duration::ZERO,
            phase: Phase::InitialPrune,
            restart_multiplier: self.cfg.restarts_enabled.then_some(self.cfg.restart_multiplier),
        };
        // The initial pruning is never undone: its mark stays open.
        let _base = self.journal.mark();
        let init = initial_check(&mut self.work, &mut self.journal);
        if let Some(reason) = init.reason() {
            stats.wall = started.elapsed();
            return (SolveOutcome::NonHamiltonian(reason), stats);
        }
        let mut limit_f = self.cfg.initial_limit_factor * n as f64;
        let outcome = loop {
            let limit = self.cfg.restarts_enabled.then(|| (limit_f.round() as u64).max(1));
            let start = match self.cfg.start_vertex {
                StartVertex::Fixed(v) => v,
                StartVertex::RandomPerRun => self.rng.gen_range(0..n),
                StartVertex::MaxDegree => {
                    let top = self.work.degrees().into_iter().max().unwrap_or(0);
                    let best: Vec<Vertex> = (0..n).filter(|&v| self.work.degree(v) == top).collect();
                    best[self.rng.gen_range(0..best.len())]
                }
            };
            let result = self.attempt(start, limit);
            stats.attempt_nodes.push(self.attempt_nodes);
            stats.attempt_limits.push(limit);
            match result {
                Attempt::Found(cycle) => {
                    assert!(verify_cycle(original, &cycle), "solver produced an invalid cycle");
                    stats.phase = Phase::Search;
                    break SolveOutcome::Hamiltonian(cycle);
                }
                Attempt::Exhausted => {
                    stats.phase = Phase::Search;
                    break SolveOutcome::NonHamiltonian(NonHamReason::Exhausted);
                }
                Attempt::Timeout => {
                    stats.phase = Phase::LimitHit;
                    break SolveOutcome::Timeout;
                }
                Attempt::Budget => {
                    stats.restarts += 1;
                    limit_f *= self.cfg.restart_multiplier;
                }
            }
        };
        stats.nodes = self.total_nodes;
        stats.wall = started.elapsed();
        debug_assert_eq!(stats.nodes, stats.attempt_nodes.iter().sum::<u64>());
        (outcome, stats)
    }

    fn attempt(&mut self, start: Vertex, limit: Option<u64>) -> Attempt {
        self.attempt_nodes = 0;
        self.attempt_limit = limit;
        match self.place(start) {
            Placed::Found => return self.unwind_with(Attempt::Found(self.path.clone())),
            Placed::Budget => return self.unwind_with(Attempt::Budget),
            Placed::Timeout => return self.unwind_with(Attempt::Timeout),
            Placed::Dead => return Attempt::Exhausted,
            Placed::Open => {}
        }
        while let Some(frame) = self.frames.last_mut() {
            if frame.next < frame.cands.len() {
                let w = frame.cands[frame.next];
                frame.next += 1;
                match self.place(w) {
                    Placed::Found => return self.unwind_with(Attempt::Found(self.path.clone())),
                    Placed::Budget => return self.unwind_with(Attempt::Budget),
                    Placed::Timeout => return self.unwind_with(Attempt::Timeout),
                    Placed::Dead | Placed::Open => {}
                }
            } else {
                let frame = self.frames.pop().unwrap();
                self.work.restore(&mut self.journal, frame.mark);
                self.unplace();
            }
        }
        Attempt::Exhausted
    }

    fn unwind_with(&mut self, result: Attempt) -> Attempt {
        while let Some(frame) = self.frames.pop() {
            self.work.restore(&mut self.journal, frame.mark);
            self.unplace();
        }
        debug_assert!(self.path.is_empty());
        result
    }

    fn unplace(&mut self) {
        let v = self.path.pop().unwrap();
        self.on_path[v] = false;
    }

    fn place(&mut self, v: Vertex) -> Placed {
        if self.attempt_limit == Some(self.attempt_nodes) {
            return Placed::Budget;
        }
        if self.cfg.node_limit == Some(self.total_nodes) {
            return Placed::Timeout;
        }
        if self.total_nodes & 1023 == 1023 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Placed::Timeout;
                }
            }
        }
        self.total_nodes += 1;
        self.attempt_nodes += 1;
        self.path.push(v);
        self.on_path[v] = true;
        let mark = self.journal.mark();
        let len = self.path.len();
        let n = self.work.n();
        if len >= 3 {
            let u = self.path[len - 2];
            let prev = self.path[len - 3];
            let drop: Vec<Vertex> = self.work.neighbors(u).iter().copied().filter(|&y| y != prev && y != v).collect();
            for y in drop {
                self.pruner.delete(&mut self.work, &mut self.journal, u, y);
            }
            let out = self.pruner.propagate(&mut self.work, &mut self.journal);
            if !out.is_reduced() {
                return self.dead_end(mark);
            }
        }
        if len == n {
            if self.work.has_edge(v, self.path[0]) {
                self.frames.push(Frame { mark, cands: Vec::new(), next: 0 });
                return Placed::Found;
            }
            return self.dead_end(mark);
        }
        let checks = self.cfg.checks;
        if (checks.components && !self.work.is_connected()) || (checks.cutpoints && self.work.has_articulation_point())
        {
            return self.dead_end(mark);
        }
        let mut cands: Vec<Vertex> = self.work.neighbors(v).iter().copied().filter(|&w| !self.on_path[w]).collect();
        if cands.is_empty() {
            return self.dead_end(mark);
        }
        order_vertices(&self.work, &mut cands, self.cfg.heuristic, &mut self.rng);
        self.frames.push(Frame { mark, cands, next: 0 });
        Placed::Open
    }

    fn dead_end(&mut self, mark: Mark) -> Placed {
        self.work.restore(&mut self.journal, mark);
        self.unplace();
        Placed::Dead
    }
}

/// Solves a copy of `g`; the caller's graph is never modified.
pub fn solve(g: &Graph, cfg: &SearchConfig) -> Result<(SolveOutcome, SearchStats)> {
    let mut solver = Solver::new(g, cfg)?;
    Ok(solver.run(g))
}
