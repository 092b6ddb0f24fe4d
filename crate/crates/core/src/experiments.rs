//! Experiment sweeps: run a grid of instance cells, emit one record per
//! solved instance, and aggregate the records into phase-transition curves,
//! hardness tables and node-ratio histograms.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::generators::{Family, InstanceSpec};
use crate::graph::Graph;
use crate::solver::{self, classify_hardness, is_quadratically_hard, SearchConfig, SolveOutcome};

pub const CSV_HEADER: &str = "spec,family,n,m,param,seed,outcome,phase,nodes,node_ratio,restarts,ms,hardness";

/// Upper edges (as multiples of n) of the node-ratio histogram buckets.
pub const RATIO_BUCKETS: [f64; 14] =
    [2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0, 2000.0, 5000.0, 10000.0, 20000.0, 50000.0];

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    /// Instance templates; their seeds are replaced per trial.
    pub cells: Vec<Family>,
    pub trials: usize,
    pub search: SearchConfig,
    pub master_seed: u64,
    pub workers: usize,
    /// Record wall time in the `ms` column. Off keeps output byte-reproducible.
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutcomeClass {
    Hamiltonian,
    NonHamiltonian,
    Timeout,
    Error,
}

impl OutcomeClass {
    pub fn label(self) -> &'static str {
        match self {
            OutcomeClass::Hamiltonian => "HC",
            OutcomeClass::NonHamiltonian => "NONHAM",
            OutcomeClass::Timeout => "TIMEOUT",
            OutcomeClass::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    pub cell: usize,
    pub trial: usize,
    pub spec: String,
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub param: String,
    pub seed: u64,
    pub outcome: OutcomeClass,
    /// Solver phase, or the error message for `ERROR` rows.
    pub phase: String,
    pub reason: Option<String>,
    pub nodes: u64,
    pub node_ratio: f64,
    pub restarts: u32,
    pub ms: f64,
    pub hardness: String,
    pub attempt_nodes: Vec<u64>,
    pub attempt_limits: Vec<Option<u64>>,
}

impl ResultRecord {
    pub fn is_initial_prune(&self) -> bool {
        self.phase == "InitialPrune"
    }

    pub fn to_csv_row(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "\"{}\",{},{},{},{},{},{},{},{},{:.4},{},{:.3},{}",
            self.spec.replace('"', "\"\""),
            self.family,
            self.n,
            self.m,
            self.param,
            self.seed,
            self.outcome.label(),
            self.phase,
            self.nodes,
            self.node_ratio,
            self.restarts,
            self.ms,
            self.hardness
        );
        s
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable per-instance seed derived from the master seed and grid position.
pub fn instance_seed(master: u64, cell: usize, trial: usize) -> u64 {
    mix64(mix64(mix64(master) ^ cell as u64) ^ (trial as u64).rotate_left(32))
}

fn solver_seed(instance_seed: u64) -> u64 {
    mix64(instance_seed ^ 0x5eed_5eed_5eed_5eed)
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.cells.is_empty() {
            return Err(Error::InvalidParameter("sweep grid is empty".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        for c in &self.cells {
            c.validate()?;
        }
        self.search.validate()
    }

    pub fn job_count(&self) -> usize {
        self.cells.len() * self.trials
    }

    fn run_one(&self, job: usize) -> ResultRecord {
        let (cell, trial) = (job / self.trials, job % self.trials);
        let family = self.cells[cell].clone();
        let seed = instance_seed(self.master_seed, cell, trial);
        let spec = InstanceSpec::new(family.clone(), seed);
        let mut rec = ResultRecord {
            cell,
            trial,
            spec: spec.to_string(),
            family: family.name().to_string(),
            n: family.vertex_count(),
            m: 0,
            param: family.param(),
            seed,
            outcome: OutcomeClass::Error,
            phase: String::new(),
            reason: None,
            nodes: 0,
            node_ratio: 0.0,
            restarts: 0,
            ms: 0.0,
            hardness: String::new(),
            attempt_nodes: Vec::new(),
            attempt_limits: Vec::new(),
        };
        let graph = match spec.generate() {
            Ok(inst) => inst.graph,
            Err(e) => {
                rec.phase = sanitize(&e.to_string());
                return rec;
            }
        };
        rec.m = graph.m();
        let cfg = SearchConfig { seed: solver_seed(seed), ..self.search.clone() };
        match solver::solve(&graph, &cfg) {
            Ok((outcome, stats)) => {
                rec.outcome = match &outcome {
                    SolveOutcome::Hamiltonian(_) => OutcomeClass::Hamiltonian,
                    SolveOutcome::NonHamiltonian(r) => {
                        rec.reason = Some(r.to_string());
                        OutcomeClass::NonHamiltonian
                    }
                    SolveOutcome::Timeout => OutcomeClass::Timeout,
                };
                rec.phase = stats.phase.to_string();
                rec.nodes = stats.nodes;
                rec.node_ratio = stats.nodes as f64 / rec.n as f64;
                rec.restarts = stats.restarts;
                rec.ms = if self.timing { stats.wall.as_secs_f64() * 1e3 } else { 0.0 };
                rec.hardness = classify_hardness(&stats, rec.n).to_string();
                rec.attempt_nodes = stats.attempt_nodes;
                rec.attempt_limits = stats.attempt_limits;
            }
            Err(e) => rec.phase = sanitize(&e.to_string()),
        }
        rec
    }
}

fn sanitize(msg: &str) -> String {
    msg.replace([',', '\n', '"'], ";")
}

/// Runs every (cell, trial) job on `spec.workers` threads and hands records
/// to `sink` in (cell, trial) order as soon as each prefix is complete.
pub fn run_sweep<F>(spec: &SweepSpec, mut sink: F) -> Result<usize>
where
    F: FnMut(&ResultRecord) -> Result<()>,
{
    spec.validate()?;
    let total = spec.job_count();
    let workers = spec.workers.clamp(1, total);
    let next_job = AtomicUsize::new(0);
    let mut emitted = 0;
    std::thread::scope(|scope| -> Result<()> {
        let (tx, rx) = mpsc::channel::<ResultRecord>();
        for _ in 0..workers {
            let tx = tx.clone();
            let next_job = &next_job;
            std::thread::Builder::new()
                .stack_size(16 << 20)
                .spawn_scoped(scope, move || loop {
                    let job = next_job.fetch_add(1, Ordering::Relaxed);
                    if job >= total || tx.send(spec.run_one(job)).is_err() {
                        break;
                    }
                })
                .map_err(Error::from)?;
        }
        drop(tx);
        let mut pending: BTreeMap<usize, ResultRecord> = BTreeMap::new();
        for rec in rx {
            pending.insert(rec.cell * spec.trials + rec.trial, rec);
            while let Some(rec) = pending.remove(&emitted) {
                if let Err(e) = sink(&rec) {
                    // Stop handing out work; workers exit on their next fetch.
                    next_job.store(total, Ordering::Relaxed);
                    return Err(e);
                }
                emitted += 1;
            }
        }
        Ok(())
    })?;
    Ok(emitted)
}

/// Collects all records of a sweep.
pub fn run_sweep_collect(spec: &SweepSpec) -> Result<Vec<ResultRecord>> {
    let mut out = Vec::with_capacity(spec.job_count());
    run_sweep(spec, |r| {
        out.push(r.clone());
        Ok(())
    })?;
    Ok(out)
}

/// Streams a sweep as CSV, flushing after every row.
pub fn write_sweep_csv<W: Write>(spec: &SweepSpec, out: &mut W) -> Result<usize> {
    writeln!(out, "{CSV_HEADER}")?;
    out.flush()?;
    run_sweep(spec, |r| {
        writeln!(out, "{}", r.to_csv_row())?;
        out.flush()?;
        Ok(())
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub cell: usize,
    pub n: usize,
    pub param: String,
    pub trials: usize,
    pub hamiltonian: usize,
    pub non_hamiltonian: usize,
    pub timeout: usize,
    pub error: usize,
    /// Percentage Hamiltonian among decided instances.
    pub pct: Option<f64>,
}

fn group_by_cell(records: &[ResultRecord]) -> BTreeMap<usize, Vec<&ResultRecord>> {
    let mut cells: BTreeMap<usize, Vec<&ResultRecord>> = BTreeMap::new();
    for r in records {
        cells.entry(r.cell).or_default().push(r);
    }
    cells
}

pub fn pct_hamiltonian(records: &[ResultRecord]) -> Vec<CellSummary> {
    group_by_cell(records)
        .into_iter()
        .map(|(cell, rs)| {
            let count = |c: OutcomeClass| rs.iter().filter(|r| r.outcome == c).count();
            let (h, nh) = (count(OutcomeClass::Hamiltonian), count(OutcomeClass::NonHamiltonian));
            CellSummary {
                cell,
                n: rs[0].n,
                param: rs[0].param.clone(),
                trials: rs.len(),
                hamiltonian: h,
                non_hamiltonian: nh,
                timeout: count(OutcomeClass::Timeout),
                error: count(OutcomeClass::Error),
                pct: (h + nh > 0).then(|| 100.0 * h as f64 / (h + nh) as f64),
            }
        })
        .collect()
}

/// Pool-adjacent-violators fit of a non-decreasing sequence (equal weights).
pub fn isotonic_increasing(values: &[f64]) -> Vec<f64> {
    let mut blocks: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        blocks.push((v, 1));
        while blocks.len() >= 2 {
            let (b, wb) = blocks[blocks.len() - 1];
            let (a, wa) = blocks[blocks.len() - 2];
            if a <= b {
                break;
            }
            blocks.truncate(blocks.len() - 2);
            blocks.push(((a * wa as f64 + b * wb as f64) / (wa + wb) as f64, wa + wb));
        }
    }
    blocks.into_iter().flat_map(|(v, w)| std::iter::repeat_n(v, w)).collect()
}

fn crossings(ys: &[f64]) -> usize {
    ys.windows(2).filter(|w| (w[0] >= 50.0) != (w[1] >= 50.0)).count()
}

/// Parameter at which the percentage curve crosses 50%, by linear
/// interpolation between the straddling grid points. A curve with more
/// than one crossing is first smoothed by isotonic regression.
pub fn fifty_percent_point(curve: &[(f64, f64)]) -> Result<f64> {
    let mut pts = curve.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let mut ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    if crossings(&ys) > 1 {
        ys = isotonic_increasing(&ys);
    }
    if let Some(run_start) = ys.iter().position(|&y| y == 50.0) {
        let run_end = (run_start..ys.len()).take_while(|&i| ys[i] == 50.0).last().unwrap();
        if run_start > 0 || run_end + 1 < ys.len() {
            return Ok((xs[run_start] + xs[run_end]) / 2.0);
        }
    }
    for i in 0..ys.len().saturating_sub(1) {
        let (y0, y1) = (ys[i], ys[i + 1]);
        if (y0 >= 50.0) != (y1 >= 50.0) {
            let t = (50.0 - y0) / (y1 - y0);
            return Ok(xs[i] + t * (xs[i + 1] - xs[i]));
        }
    }
    Err(Error::NoCrossing)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardnessRow {
    pub cell: usize,
    pub n: usize,
    pub param: String,
    pub quadratic_hamiltonian: usize,
    pub quadratic_non_hamiltonian: usize,
    pub timed_out: usize,
}

/// Quadratically hard counts per cell; timeouts are listed separately and
/// not counted as hard.
pub fn hardness_counts(records: &[ResultRecord]) -> Vec<HardnessRow> {
    group_by_cell(records)
        .into_iter()
        .map(|(cell, rs)| {
            let quad =
                |c: OutcomeClass| rs.iter().filter(|r| r.outcome == c && is_quadratically_hard(r.nodes, r.n)).count();
            HardnessRow {
                cell,
                n: rs[0].n,
                param: rs[0].param.clone(),
                quadratic_hamiltonian: quad(OutcomeClass::Hamiltonian),
                quadratic_non_hamiltonian: quad(OutcomeClass::NonHamiltonian),
                timed_out: rs.iter().filter(|r| r.outcome == OutcomeClass::Timeout).count(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
    /// Ratios above the last edge.
    pub overflow: usize,
}

impl Histogram {
    pub fn total(&self) -> usize {
        self.counts.iter().sum::<usize>() + self.overflow
    }

    pub fn bucket_of(edges: &[f64], ratio: f64) -> Option<usize> {
        edges.iter().position(|&e| e >= ratio)
    }
}

/// Counts node ratios into the smallest bucket whose edge is at least the ratio.
pub fn node_ratio_histogram<'a, I>(ratios: I, edges: &[f64]) -> Histogram
where
    I: IntoIterator<Item = &'a f64>,
{
    let mut h = Histogram { edges: edges.to_vec(), counts: vec![0; edges.len()], overflow: 0 };
    for &r in ratios {
        match Histogram::bucket_of(edges, r) {
            Some(i) => h.counts[i] += 1,
            None => h.overflow += 1,
        }
    }
    h
}

pub fn record_ratio_histogram(records: &[ResultRecord]) -> Histogram {
    let ratios: Vec<f64> = records.iter().map(|r| r.node_ratio).collect();
    node_ratio_histogram(&ratios, &RATIO_BUCKETS)
}

/// Limiting probability that `G(n, m)` is Hamiltonian, `exp(-exp(-2c))`
/// with `m = n/2 (ln n + ln ln n + c)`.
pub fn ham_probability_theory(n: usize, m: usize) -> f64 {
    let nf = n as f64;
    let c = 2.0 * m as f64 / nf - nf.ln() - nf.ln().ln();
    (-(-2.0 * c).exp()).exp()
}

/// Expected number of 3D2 configurations when a fraction `eps` of the `n`
/// vertices has degree 2 and the rest degree 3 (exact finite form).
pub fn e_3d2(n: usize, eps: f64) -> f64 {
    let nf = n as f64;
    let d2 = eps * nf;
    if n < 4 || d2 < 3.0 {
        return 0.0;
    }
    nf * (1.0 - eps) * d2 * (d2 - 1.0) * (d2 - 2.0) / ((nf - 1.0) * (nf - 2.0) * (nf - 3.0))
}

pub fn e_3d2_asymptotic(n: usize, eps: f64) -> f64 {
    n as f64 * (1.0 - eps) * eps.powi(3)
}

/// Mean degree where one 3D2 configuration is expected: `3 - n^(-1/3)`.
pub fn predicted_50_point(n: usize) -> f64 {
    3.0 - (n as f64).powf(-1.0 / 3.0)
}

/// Degree-3 vertices whose three neighbors all have degree 2.
pub fn count_3d2(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) == 3 && g.neighbors(v).iter().all(|&w| g.degree(w) == 2)).count()
}

/// Flat `key = value` config; `#` starts a comment line.
pub fn parse_config(text: &str) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: i + 1, msg: format!("expected key = value: {line:?}") })?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_list<T: std::str::FromStr>(key: &str, text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::InvalidParameter(format!("{key}: cannot parse {t:?}"))))
        .collect()
}

/// A comma list of reals, or `start:stop:step` (inclusive of `stop`).
pub fn parse_real_grid(key: &str, text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 1 {
        return parse_list(key, text);
    }
    if parts.len() != 3 {
        return Err(Error::InvalidParameter(format!("{key}: range must be start:stop:step")));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse().map_err(|_| Error::InvalidParameter(format!("{key}: bad number {p:?}"))))
        .collect::<Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !step.is_finite() || step <= 0.0 || stop < start {
        return Err(Error::InvalidParameter(format!("{key}: empty or invalid range")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9).collect())
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(Error::InvalidParameter(format!("{key}: expected a boolean, got {v:?}"))),
    }
}

impl SweepSpec {
    /// Builds a sweep from flat config keys. The grid is the cartesian
    /// product of the family's list-valued keys, `n` outermost.
    pub fn from_config(cfg: &HashMap<String, String>) -> Result<Self> {
        let known = [
            "family",
            "n",
            "m",
            "k",
            "p3",
            "mean_degree",
            "version",
            "a",
            "b",
            "rows",
            "cols",
            "k_sub",
            "s",
            "trials",
            "seed",
            "heuristic",
            "restarts",
            "multiplier",
            "checks",
            "node_limit",
            "time_limit",
            "start",
            "workers",
            "timing",
        ];
        if let Some(k) = cfg.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::InvalidParameter(format!("unknown sweep key {k:?}")));
        }
        let get = |k: &str| cfg.get(k).map(String::as_str);
        let need = |k: &str| get(k).ok_or_else(|| Error::InvalidParameter(format!("sweep needs {k}")));
        let usizes = |k: &str| -> Result<Vec<usize>> { parse_list(k, need(k)?) };
        let family = need("family")?;
        let mut cells = Vec::new();
        match family {
            "gnm" => {
                for n in usizes("n")? {
                    for m in usizes("m")? {
                        cells.push(Family::Gnm { n, m });
                    }
                }
            }
            "gnmk" => {
                for n in usizes("n")? {
                    for k in parse_real_grid("k", need("k")?)? {
                        cells.push(Family::GnmByK { n, k });
                    }
                }
            }
            "gnstar" => cells.extend(usizes("n")?.into_iter().map(|n| Family::GnStar { n })),
            "degreebound" => {
                let version = get("version").map(|v| parse_list::<u8>("version", v)).transpose()?;
                let version = match version.as_deref() {
                    None => 2,
                    Some([v]) => *v,
                    _ => return Err(Error::InvalidParameter("version takes a single value".into())),
                };
                let p3s = match (get("p3"), get("mean_degree")) {
                    (Some(p), None) => parse_real_grid("p3", p)?,
                    (None, Some(d)) => parse_real_grid("mean_degree", d)?
                        .into_iter()
                        .map(|d| ((d - 2.0) * 1e9).round() / 1e9)
                        .collect(),
                    _ => {
                        return Err(Error::InvalidParameter("degreebound needs exactly one of p3, mean_degree".into()))
                    }
                };
                for n in usizes("n")? {
                    for &p3 in &p3s {
                        cells.push(Family::Degreebound { n, p3, version });
                    }
                }
            }
            "knight" => {
                for a in usizes("a")? {
                    for b in usizes("b")? {
                        for rows in usizes("rows")? {
                            for cols in usizes("cols")? {
                                cells.push(Family::Knight { a, b, rows, cols });
                            }
                        }
                    }
                }
            }
            "iccs" => {
                for k_sub in usizes("k_sub")? {
                    for s in usizes("s")? {
                        cells.push(Family::Iccs { k_sub, s });
                    }
                }
            }
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        }
        let mut search = SearchConfig::default();
        if let Some(h) = get("heuristic") {
            search.heuristic = h.parse()?;
        }
        if let Some(r) = get("restarts") {
            search.restarts_enabled = parse_bool("restarts", r)?;
        }
        if let Some(m) = get("multiplier") {
            search.restart_multiplier = m.parse().map_err(|_| Error::InvalidParameter(format!("multiplier: {m:?}")))?;
        }
        if let Some(c) = get("checks") {
            search.checks = c.parse()?;
        }
        if let Some(l) = get("node_limit") {
            search.node_limit = Some(l.parse().map_err(|_| Error::InvalidParameter(format!("node_limit: {l:?}")))?);
        }
        if let Some(t) = get("time_limit") {
            let secs: f64 = t.parse().map_err(|_| Error::InvalidParameter(format!("time_limit: {t:?}")))?;
            if !(secs > 0.0 && secs.is_finite()) {
                return Err(Error::InvalidParameter("time_limit must be positive".into()));
            }
            search.time_limit = Some(Duration::from_secs_f64(secs));
        }
        if let Some(s) = get("start") {
            search.start_vertex = s.parse()?;
        }
        let parse_usize = |k: &str, default: usize| -> Result<usize> {
            get(k).map_or(Ok(default), |v| v.parse().map_err(|_| Error::InvalidParameter(format!("{k}: {v:?}"))))
        };
        let spec = SweepSpec {
            cells,
            trials: parse_usize("trials", 1)?,
            search,
            master_seed: get("seed")
                .map_or(Ok(0), |v| v.parse().map_err(|_| Error::InvalidParameter(format!("seed: {v:?}"))))?,
            workers: parse_usize("workers", 1)?,
            timing: get("timing").map_or(Ok(false), |v| parse_bool("timing", v))?,
        };
        spec.validate()?;
        Ok(spec)
    }
}
