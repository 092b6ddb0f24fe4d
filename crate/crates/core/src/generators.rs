//! Seeded instance generators.
//!
//! Six families: uniform `G(n, m)` (by edge count or by degree parameter),
//! the minimum-degree-two process, bounded-degree graphs with a prescribed
//! mix of degree 2 and 3 vertices, generalized knight's move boards, and the
//! interconnected-cutset (ICCS) construction.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Retries before a bounded-degree generator reports failure.
pub const DEGREEBOUND_RETRY_CAP: usize = 1000;
/// Consecutive rejected pair picks that abort a version 2 attempt.
pub const V2_FAILURE_LIMIT: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Gnm { n: usize, m: usize },
    GnmByK { n: usize, k: f64 },
    GnStar { n: usize },
    Degreebound { n: usize, p3: f64, version: u8 },
    Knight { a: usize, b: usize, rows: usize, cols: usize },
    Iccs { k_sub: usize, s: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    pub seed: u64,
}

/// Generated graph plus the ICCS layout when the family has one.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub layout: Option<IccsLayout>,
}

/// Role assignment of one ICCS subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IccsBlock {
    /// `S_I`, in order `i_1 .. i_s`.
    pub independent: Vec<Vertex>,
    /// Plain `S_C` vertices `c_1 .. c_{s-2}`.
    pub plain: Vec<Vertex>,
    pub t1: Vertex,
    pub t2: Vertex,
    pub decoy: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IccsLayout {
    pub s: usize,
    pub blocks: Vec<IccsBlock>,
    /// Degree-2 vertex joining block `j` to block `j + 1`.
    pub connectors: Vec<Vertex>,
    pub intended_cycle: Vec<Vertex>,
}

impl IccsBlock {
    /// All of `S_C`: terminals, decoy and plain vertices.
    pub fn cutset_side(&self) -> Vec<Vertex> {
        let mut v = vec![self.t1, self.t2, self.decoy];
        v.extend_from_slice(&self.plain);
        v
    }
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Gnm { .. } => "gnm",
            Family::GnmByK { .. } => "gnmk",
            Family::GnStar { .. } => "gnstar",
            Family::Degreebound { .. } => "degreebound",
            Family::Knight { .. } => "knight",
            Family::Iccs { .. } => "iccs",
        }
    }

    /// Number of vertices the family produces.
    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Gnm { n, .. } | Family::GnmByK { n, .. } | Family::GnStar { n } | Family::Degreebound { n, .. } => {
                n
            }
            Family::Knight { rows, cols, .. } => rows * cols,
            Family::Iccs { k_sub, s } => k_sub * (2 * s + 2),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            Family::Gnm { n, m } => {
                if n == 0 {
                    return bad("gnm: n must be at least 1".into());
                }
                if m > n * (n - 1) / 2 {
                    return bad(format!("gnm: m = {m} exceeds n(n-1)/2 = {}", n * (n - 1) / 2));
                }
            }
            Family::GnmByK { n, k } => {
                if n < 3 {
                    return bad("gnmk: n must be at least 3".into());
                }
                if !(k > 0.0 && k.is_finite()) {
                    return bad(format!("gnmk: degree parameter must be positive, got {k}"));
                }
            }
            Family::GnStar { n } => {
                if n < 3 {
                    return bad("gnstar: n must be at least 3".into());
                }
            }
            Family::Degreebound { n, p3, version } => {
                if n < 4 {
                    return bad("degreebound: n must be at least 4".into());
                }
                if !(0.0..=1.0).contains(&p3) {
                    return bad(format!("degreebound: p3 must lie in [0, 1], got {p3}"));
                }
                if version != 1 && version != 2 {
                    return bad(format!("degreebound: version must be 1 or 2, got {version}"));
                }
            }
            Family::Knight { a, b, rows, cols } => {
                if a == 0 && b == 0 {
                    return bad("knight: move steps cannot both be 0".into());
                }
                if rows == 0 || cols == 0 {
                    return bad("knight: board dimensions must be positive".into());
                }
            }
            Family::Iccs { k_sub, s } => {
                if k_sub < 1 {
                    return bad("iccs: need at least one subgraph".into());
                }
                if s < 6 {
                    return bad(format!("iccs: independent set size must be at least 6, got {s}"));
                }
            }
        }
        Ok(())
    }

    /// The sweep parameter reported for this family: k, m, mean degree, etc.
    pub fn param(&self) -> String {
        match *self {
            Family::Gnm { m, .. } => m.to_string(),
            Family::GnmByK { k, .. } => format!("{k}"),
            Family::GnStar { .. } => String::new(),
            Family::Degreebound { p3, .. } => format!("{}", mean_degree_label(p3)),
            Family::Knight { a, b, rows, cols } => format!("({a};{b})-{rows}x{cols}"),
            Family::Iccs { k_sub, s } => format!("{k_sub}x{s}"),
        }
    }
}

/// Specified mean degree `2 + p3`, rounded to hide float noise.
fn mean_degree_label(p3: f64) -> f64 {
    ((2.0 + p3) * 1e9).round() / 1e9
}

impl InstanceSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        InstanceSpec { family, seed }
    }

    pub fn generate(&self) -> Result<Instance> {
        self.family.validate()?;
        let mut rng = rng_from_seed(self.seed);
        let graph = match self.family {
            Family::Gnm { n, m } => gen_gnm(n, m, &mut rng)?,
            Family::GnmByK { n, k } => gen_gnm(n, degree_param_to_m(n, k)?, &mut rng)?,
            Family::GnStar { n } => gen_gnstar(n, &mut rng)?,
            Family::Degreebound { n, p3, version } => gen_degreebound(n, p3, version, &mut rng)?,
            Family::Knight { a, b, rows, cols } => gen_knight(a, b, rows, cols)?,
            Family::Iccs { k_sub, s } => {
                let (graph, layout) = gen_iccs(k_sub, s, &mut rng)?;
                return Ok(Instance { graph, layout: Some(layout) });
            }
        };
        Ok(Instance { graph, layout: None })
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed;
        match self.family {
            Family::Gnm { n, m } => write!(f, "gnm:n={n},m={m},seed={seed}"),
            Family::GnmByK { n, k } => write!(f, "gnmk:n={n},k={k},seed={seed}"),
            Family::GnStar { n } => write!(f, "gnstar:n={n},seed={seed}"),
            Family::Degreebound { n, p3, version } => {
                write!(f, "degreebound:n={n},p3={p3},v={version},seed={seed}")
            }
            Family::Knight { a, b, rows, cols } => {
                write!(f, "knight:a={a},b={b},rows={rows},cols={cols},seed={seed}")
            }
            Family::Iccs { k_sub, s } => write!(f, "iccs:k={k_sub},s={s},seed={seed}"),
        }
    }
}

impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::BadSpec { spec: text.to_string(), msg: msg.to_string() };
        let (name, rest) = text.split_once(':').ok_or_else(|| bad("missing ':' after family"))?;
        let mut kv: Vec<(&str, &str)> = Vec::new();
        if !rest.is_empty() {
            for part in rest.split(',') {
                let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                if kv.iter().any(|(seen, _)| *seen == k) {
                    return Err(bad(&format!("duplicate key {k}")));
                }
                kv.push((k.trim(), v.trim()));
            }
        }
        let get = |key: &str| kv.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let int = |key: &str| -> Result<usize> {
            get(key)
                .ok_or_else(|| bad(&format!("missing {key}")))?
                .parse()
                .map_err(|_| bad(&format!("{key} is not an integer")))
        };
        let real = |key: &str| -> Result<f64> {
            get(key)
                .ok_or_else(|| bad(&format!("missing {key}")))?
                .parse()
                .map_err(|_| bad(&format!("{key} is not a number")))
        };
        let seed = match get("seed") {
            Some(s) => s.parse().map_err(|_| bad("seed is not an integer"))?,
            None => 0,
        };
        let allowed: &[&str] = match name {
            "gnm" => &["n", "m", "seed"],
            "gnmk" => &["n", "k", "seed"],
            "gnstar" => &["n", "seed"],
            "degreebound" => &["n", "p3", "v", "seed"],
            "knight" => &["a", "b", "rows", "cols", "seed"],
            "iccs" => &["k", "s", "seed"],
            _ => return Err(bad("unknown family")),
        };
        if let Some((k, _)) = kv.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(bad(&format!("unexpected key {k}")));
        }
        let family = match name {
            "gnm" => Family::Gnm { n: int("n")?, m: int("m")? },
            "gnmk" => Family::GnmByK { n: int("n")?, k: real("k")? },
            "gnstar" => Family::GnStar { n: int("n")? },
            "degreebound" => {
                let version = match get("v") {
                    Some(_) => int("v")? as u8,
                    None => 2,
                };
                Family::Degreebound { n: int("n")?, p3: real("p3")?, version }
            }
            "knight" => Family::Knight { a: int("a")?, b: int("b")?, rows: int("rows")?, cols: int("cols")? },
            _ => Family::Iccs { k_sub: int("k")?, s: int("s")? },
        };
        family.validate()?;
        Ok(InstanceSpec { family, seed })
    }
}

fn round_half_up(x: f64) -> f64 {
    (x + 0.5 + 1e-9).floor()
}

/// Edge count for degree parameter `k`: `round(k (ln n + ln ln n) n / 2)`.
pub fn degree_param_to_m(n: usize, k: f64) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("degree parameter needs n >= 3, got {n}")));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("degree parameter must be positive, got {k}")));
    }
    let nf = n as f64;
    let mean_degree = k * (nf.ln() + nf.ln().ln());
    let m = round_half_up(mean_degree * nf / 2.0).max(0.0) as usize;
    Ok(m.min(n * (n - 1) / 2))
}

/// Uniform random graph with exactly `m` distinct edges, by rejection sampling.
pub fn gen_gnm(n: usize, m: usize, rng: &mut Rng) -> Result<Graph> {
    Family::Gnm { n, m }.validate()?;
    let mut g = Graph::new(n)?;
    while g.m() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub fn gen_gnstar(n: usize, rng: &mut Rng) -> Result<Graph> {
    gen_gnstar_traced(n, rng).map(|(g, _)| g)
}

/// Adds random edges until the minimum degree reaches 2; also returns the last edge added.
pub fn gen_gnstar_traced(n: usize, rng: &mut Rng) -> Result<(Graph, (Vertex, Vertex))> {
    Family::GnStar { n }.validate()?;
    let mut g = Graph::new(n)?;
    let mut deficient = n;
    let mut last = (0, 0);
    while deficient > 0 {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if g.add_edge(u, v)? {
            last = (u.min(v), u.max(v));
            deficient -= [u, v].iter().filter(|&&x| g.degree(x) == 2).count();
        }
    }
    Ok((g, last))
}

/// Target degrees: `round(p3 n)` random vertices of degree 3, the rest 2,
/// with one minimum-degree vertex bumped when the total is odd.
pub fn degreebound_targets(n: usize, p3: f64, rng: &mut Rng) -> Vec<usize> {
    let threes = (round_half_up(p3 * n as f64) as usize).min(n);
    let mut ids: Vec<Vertex> = (0..n).collect();
    ids.shuffle(rng);
    let mut deg = vec![2; n];
    for &v in &ids[..threes] {
        deg[v] = 3;
    }
    if deg.iter().sum::<usize>() % 2 == 1 {
        let min = *deg.iter().min().unwrap();
        let lows: Vec<Vertex> = (0..n).filter(|&v| deg[v] == min).collect();
        deg[*lows.choose(rng).unwrap()] += 1;
    }
    deg
}

pub fn gen_degreebound(n: usize, p3: f64, version: u8, rng: &mut Rng) -> Result<Graph> {
    Family::Degreebound { n, p3, version }.validate()?;
    let targets = degreebound_targets(n, p3, rng);
    gen_degree_sequence(&targets, version, rng)
}

/// Random graph realizing `degrees` exactly, using the version 1 (free-valence
/// array) or version 2 (point array) edge selection process.
pub fn gen_degree_sequence(degrees: &[usize], version: u8, rng: &mut Rng) -> Result<Graph> {
    let n = degrees.len();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        return Err(Error::InvalidParameter("degree sum is odd".into()));
    }
    if degrees.iter().any(|&d| d >= n) {
        return Err(Error::InvalidParameter("degree exceeds n - 1".into()));
    }
    for _ in 0..DEGREEBOUND_RETRY_CAP {
        let attempt = match version {
            1 => attempt_v1(degrees, rng)?,
            2 => attempt_v2(degrees, rng)?,
            v => return Err(Error::InvalidParameter(format!("unknown version {v}"))),
        };
        if let Some(g) = attempt {
            return Ok(g);
        }
    }
    Err(Error::RetryCapExceeded { attempts: DEGREEBOUND_RETRY_CAP })
}

fn attempt_v1(degrees: &[usize], rng: &mut Rng) -> Result<Option<Graph>> {
    let n = degrees.len();
    let mut g = Graph::new(n)?;
    let mut free = degrees.to_vec();
    let mut live: Vec<Vertex> = (0..n).filter(|&v| free[v] > 0).collect();
    let tail = 2 * degrees.iter().copied().max().unwrap_or(0);
    let mut stalls = 0;
    while live.len() > tail && stalls < V2_FAILURE_LIMIT {
        let i = rng.gen_range(0..live.len());
        let mut j = rng.gen_range(0..live.len() - 1);
        if j >= i {
            j += 1;
        }
        let (v, w) = (live[i], live[j]);
        if !g.add_edge(v, w)? {
            stalls += 1;
            continue;
        }
        stalls = 0;
        free[v] -= 1;
        free[w] -= 1;
        let (hi, lo) = (i.max(j), i.min(j));
        for pos in [hi, lo] {
            if free[live[pos]] == 0 {
                live.swap_remove(pos);
            }
        }
    }
    let mut pairs = Vec::new();
    for (x, &a) in live.iter().enumerate() {
        for &b in &live[x + 1..] {
            pairs.push((a, b));
        }
    }
    pairs.shuffle(rng);
    for (a, b) in pairs {
        if free[a] > 0 && free[b] > 0 && g.add_edge(a, b)? {
            free[a] -= 1;
            free[b] -= 1;
        }
    }
    Ok(free.iter().all(|&f| f == 0).then_some(g))
}

fn attempt_v2(degrees: &[usize], rng: &mut Rng) -> Result<Option<Graph>> {
    let n = degrees.len();
    let mut g = Graph::new(n)?;
    let mut points: Vec<Vertex> = Vec::with_capacity(degrees.iter().sum());
    for (v, &d) in degrees.iter().enumerate() {
        points.extend(std::iter::repeat_n(v, d));
    }
    let mut failures = 0;
    while !points.is_empty() {
        let i = rng.gen_range(0..points.len());
        let mut j = rng.gen_range(0..points.len() - 1);
        if j >= i {
            j += 1;
        }
        let (v, w) = (points[i], points[j]);
        if v != w && g.add_edge(v, w)? {
            failures = 0;
            points.swap_remove(i.max(j));
            points.swap_remove(i.min(j));
        } else {
            failures += 1;
            if failures >= V2_FAILURE_LIMIT {
                return Ok(None);
            }
        }
    }
    Ok(Some(g))
}

/// Generalized knight's graph: cell `(r, c)` has id `r * cols + c`, and two
/// cells are adjacent when their offsets are `{a, b}` as a multiset.
pub fn gen_knight(a: usize, b: usize, rows: usize, cols: usize) -> Result<Graph> {
    Family::Knight { a, b, rows, cols }.validate()?;
    let mut g = Graph::new(rows * cols)?;
    let (a, b) = (a as isize, b as isize);
    let moves = [(a, b), (b, a), (a, -b), (b, -a)];
    for r in 0..rows as isize {
        for c in 0..cols as isize {
            for (dr, dc) in moves {
                let (r2, c2) = (r + dr, c + dc);
                if (0..rows as isize).contains(&r2) && (0..cols as isize).contains(&c2) {
                    let u = (r * cols as isize + c) as usize;
                    let v = (r2 * cols as isize + c2) as usize;
                    g.add_edge(u, v)?;
                }
            }
        }
    }
    Ok(g)
}

/// Mean-degree range of an ICCS graph with at least two subgraphs.
pub fn iccs_mean_degree_bounds(s: usize) -> (f64, f64) {
    let s = s as f64;
    (s - 2.5 + 9.5 / (s + 1.0), s - 2.0 + 8.0 / (s + 1.0))
}

/// Builds `k_sub` ICCS subgraphs joined in a ring by degree-2 connectors,
/// then adds random non-Hamiltonian edges between plain vertices of
/// different subgraphs.
pub fn gen_iccs(k_sub: usize, s: usize, rng: &mut Rng) -> Result<(Graph, IccsLayout)> {
    Family::Iccs { k_sub, s }.validate()?;
    let block_size = 2 * s + 2;
    let mut g = Graph::new(k_sub * block_size)?;
    let mut blocks = Vec::with_capacity(k_sub);
    let mut connectors = Vec::with_capacity(k_sub);
    for j in 0..k_sub {
        let base = j * block_size;
        let block = IccsBlock {
            t1: base,
            independent: (base + 1..=base + s).collect(),
            plain: (base + s + 1..base + 2 * s - 1).collect(),
            decoy: base + 2 * s - 1,
            t2: base + 2 * s,
        };
        connectors.push(base + 2 * s + 1);
        let i = &block.independent;
        g.add_edge(block.t1, i[0])?;
        g.add_edge(block.t2, i[s - 1])?;
        for x in [block.t1, block.t2, i[1], i[s - 2]] {
            g.add_edge(block.decoy, x)?;
        }
        for &c in &block.plain {
            for &x in i {
                g.add_edge(c, x)?;
            }
        }
        blocks.push(block);
    }
    for j in 0..k_sub {
        let next = (j + 1) % k_sub;
        g.add_edge(blocks[j].t2, connectors[j])?;
        g.add_edge(connectors[j], blocks[next].t1)?;
    }
    if k_sub >= 2 {
        for j in 0..k_sub {
            for ci in 0..s - 2 {
                let mut other = rng.gen_range(0..k_sub - 1);
                if other >= j {
                    other += 1;
                }
                let target = blocks[other].plain[rng.gen_range(0..s - 2)];
                g.add_edge(blocks[j].plain[ci], target)?;
            }
        }
    }
    let mut intended_cycle = Vec::with_capacity(g.n());
    for (j, b) in blocks.iter().enumerate() {
        let i = &b.independent;
        let c = &b.plain;
        intended_cycle.extend([b.t1, i[0], c[0], i[1], b.decoy, i[s - 2]]);
        for t in 1..s - 2 {
            intended_cycle.push(c[t]);
            intended_cycle.push(if t + 2 <= s - 2 { i[t + 1] } else { i[s - 1] });
        }
        intended_cycle.push(b.t2);
        intended_cycle.push(connectors[j]);
    }
    let layout = IccsLayout { s, blocks, connectors, intended_cycle };
    Ok((g, layout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::verify_cycle;

    #[test]
    fn degree_param_matches_definition() {
        let n = 100usize;
        let lnn = (n as f64).ln();
        let m1 = degree_param_to_m(n, 1.0).unwrap();
        // 100 (ln 100 + ln ln 100) / 2 = 306.6...
        assert_eq!(m1, 307);
        let k_back = (2.0 * m1 as f64 / n as f64) / (lnn + lnn.ln());
        assert!((k_back - 1.0).abs() <= 1.0 / n as f64);
        let m2 = degree_param_to_m(n, 2.0).unwrap();
        assert!((m2 as i64 - 2 * m1 as i64).abs() <= 1);
        assert!(degree_param_to_m(2, 1.0).is_err());
        assert!(degree_param_to_m(10, 0.0).is_err());
        assert_eq!(degree_param_to_m(5, 100.0).unwrap(), 10);
    }

    #[test]
    fn gnm_extremes() {
        for seed in 0..5 {
            let g = gen_gnm(5, 10, &mut rng_from_seed(seed)).unwrap();
            assert_eq!(g.m(), 10);
            assert!(g.degrees().iter().all(|&d| d == 4));
        }
        assert_eq!(gen_gnm(100, 0, &mut rng_from_seed(1)).unwrap().m(), 0);
        assert!(gen_gnm(5, 11, &mut rng_from_seed(1)).is_err());
    }

    #[test]
    fn gnm_is_uniform_over_single_edges() {
        let mut rng = rng_from_seed(99);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..60_000 {
            let g = gen_gnm(4, 1, &mut rng).unwrap();
            *counts.entry(g.edges()[0]).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        for (e, c) in counts {
            assert!((9600..=10400).contains(&c), "edge {e:?} drawn {c} times");
        }
    }

    #[test]
    fn gnstar_stops_at_min_degree_two() {
        for seed in 0..50 {
            let (mut g, (u, v)) = gen_gnstar_traced(60, &mut rng_from_seed(seed)).unwrap();
            assert!(g.min_degree() >= 2);
            assert!(g.remove_edge(u, v).unwrap());
            assert!(g.min_degree() <= 1);
        }
    }

    #[test]
    fn degreebound_half_and_half() {
        for version in [1, 2] {
            let g = gen_degreebound(100, 0.5, version, &mut rng_from_seed(3)).unwrap();
            let d = g.degrees();
            assert_eq!(d.iter().filter(|&&x| x == 3).count(), 50);
            assert_eq!(d.iter().filter(|&&x| x == 2).count(), 50);
            assert_eq!(2 * g.m(), 250);
        }
    }

    #[test]
    fn degreebound_parity_fix() {
        for p3 in [0.81, 0.815, 0.82] {
            let t = degreebound_targets(100, p3, &mut rng_from_seed(5));
            assert_eq!(t.iter().filter(|&&x| x == 3).count(), 82, "p3 = {p3}");
            assert_eq!(t.iter().sum::<usize>(), 282);
        }
        let t = degreebound_targets(101, 1.0, &mut rng_from_seed(5));
        assert_eq!(t.iter().filter(|&&x| x == 4).count(), 1);
    }

    #[test]
    fn degree_sequence_rejects_odd_sum() {
        assert!(gen_degree_sequence(&[1, 1, 1], 2, &mut rng_from_seed(0)).is_err());
    }

    #[test]
    fn degree_sequence_impossible_hits_cap() {
        // {3,3,1,1} has an even sum but is not graphical.
        let r = gen_degree_sequence(&[3, 3, 1, 1], 2, &mut rng_from_seed(0));
        assert_eq!(r.unwrap_err(), Error::RetryCapExceeded { attempts: DEGREEBOUND_RETRY_CAP });
        let r = gen_degree_sequence(&[3, 3, 1, 1], 1, &mut rng_from_seed(0));
        assert!(r.is_err());
    }

    #[test]
    fn knight_small_boards() {
        let g = gen_knight(1, 2, 3, 3).unwrap();
        assert_eq!(g.m(), 8);
        assert_eq!(g.degree(4), 0);
        let g = gen_knight(1, 2, 8, 8).unwrap();
        assert_eq!(g.m(), 168);
        assert!(gen_knight(0, 0, 3, 3).is_err());
        assert!(gen_knight(1, 2, 0, 3).is_err());
        // a = b gives the four diagonal moves only once each.
        let g = gen_knight(1, 1, 2, 2).unwrap();
        assert_eq!(g.edges(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn iccs_sizes() {
        for (k, s, n) in [(1, 6, 14), (2, 6, 28), (3, 7, 48), (2, 8, 36), (3, 6, 42)] {
            let (g, layout) = gen_iccs(k, s, &mut rng_from_seed(1)).unwrap();
            assert_eq!(g.n(), n);
            assert_eq!(layout.intended_cycle.len(), n);
            assert!(verify_cycle(&g, &layout.intended_cycle));
        }
        assert!(gen_iccs(1, 5, &mut rng_from_seed(1)).is_err());
        assert!(gen_iccs(0, 6, &mut rng_from_seed(1)).is_err());
    }

    #[test]
    fn iccs_single_block_degrees() {
        for s in 6..=9 {
            let (g, layout) = gen_iccs(1, s, &mut rng_from_seed(0)).unwrap();
            let b = &layout.blocks[0];
            assert_eq!(b.cutset_side().len(), s + 1);
            assert_eq!(g.degree(b.t1), 3);
            assert_eq!(g.degree(b.t2), 3);
            assert_eq!(g.degree(b.decoy), 4);
            for &c in &b.plain {
                assert_eq!(g.degree(c), s);
            }
            for (idx, &x) in b.independent.iter().enumerate() {
                let want = if [0, 1, s - 2, s - 1].contains(&idx) { s - 1 } else { s - 2 };
                assert_eq!(g.degree(x), want, "i_{}", idx + 1);
            }
            assert_eq!(g.degree(layout.connectors[0]), 2);
        }
    }

    #[test]
    fn iccs_bounds_values() {
        let (lo, hi) = iccs_mean_degree_bounds(6);
        assert!((lo - 34.0 / 7.0).abs() < 1e-12 && (hi - 36.0 / 7.0).abs() < 1e-12);
        assert_eq!(iccs_mean_degree_bounds(7), (5.6875, 6.0));
        for s in 6..20 {
            let (lo, hi) = iccs_mean_degree_bounds(s);
            assert!((hi - lo - (0.5 - 1.5 / (s as f64 + 1.0))).abs() < 1e-12);
        }
    }

    #[test]
    fn spec_strings_round_trip() {
        for text in [
            "gnm:n=100,m=322,seed=42",
            "iccs:k=3,s=6,seed=7",
            "gnmk:n=200,k=1.09,seed=1",
            "gnstar:n=100,seed=9",
            "degreebound:n=100,p3=0.78,v=1,seed=3",
            "knight:a=1,b=2,rows=6,cols=6,seed=0",
        ] {
            let spec: InstanceSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        for bad in ["gnm:n=5,m=11", "foo:n=3", "gnm:n=5", "iccs:k=1,s=5", "gnm:n=5,m=1,q=2", "gnm"] {
            assert!(bad.parse::<InstanceSpec>().is_err(), "{bad}");
        }
    }
}
