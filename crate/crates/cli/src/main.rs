use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use hamlab::edgelist::{read_edge_list, write_edge_list};
use hamlab::experiments::{
    count_3d2, e_3d2, e_3d2_asymptotic, ham_probability_theory, parse_config, predicted_50_point, run_sweep, SweepSpec,
    CSV_HEADER,
};
use hamlab::generators::{Family, InstanceSpec};
use hamlab::pruning::{forced_degree_parity_test, small_cutset_scan, CutsetCertificate, ParityCertificate};
use hamlab::solver::{brute_force_oracle, solve, Heuristic, InSearchChecks, SearchConfig, SolveOutcome, StartVertex};
use hamlab::{Error, Graph};

const EXIT_HC: u8 = 0;
const EXIT_NONHAM: u8 = 1;
const EXIT_TIMEOUT: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "hamlab", version, about = "Hamiltonian cycle solver, generators and experiment sweeps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance as an edge list.
    Gen(GenArgs),
    /// Decide Hamiltonicity of one graph.
    Solve(SolveArgs),
    /// Run an experiment grid and write CSV.
    Sweep(SweepArgs),
    /// Print non-Hamiltonicity certificates and summary statistics.
    Analyze(AnalyzeArgs),
    /// Brute-force Hamiltonicity for graphs with at most 12 vertices.
    Oracle(InputArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// gnm, gnmk, gnstar, degreebound, knight or iccs.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Degree parameter for gnmk; number of subgraphs for iccs.
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    p3: Option<f64>,
    #[arg(long)]
    version: Option<u8>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Defaults to $HAMLAB_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file; `-` or absent reads standard input.
    input: Option<PathBuf>,
    /// Generate the graph from a spec string instead, e.g. `gnm:n=100,m=322,seed=42`.
    #[arg(long, conflicts_with = "input")]
    spec: Option<String>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "low")]
    heuristic: Heuristic,
    #[arg(long)]
    no_restart: bool,
    #[arg(long, default_value_t = 2.0)]
    multiplier: f64,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value = "none")]
    checks: InSearchChecks,
    /// `random`, `maxdeg` or a vertex id.
    #[arg(long, default_value = "random")]
    start: StartVertex,
    /// Defaults to $HAMLAB_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Flat `key = value` config file.
    config: Option<PathBuf>,
    /// Override or add a config key; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Record wall time in the ms column (output is then not byte-reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(short, long)]
    quiet: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    parity: bool,
    /// Scan vertex cuts up to this size (1..=3).
    #[arg(long, value_name = "C")]
    cutset: Option<usize>,
    /// Count degree-3 vertices whose neighbors all have degree 2.
    #[arg(long)]
    count_3d2: bool,
    /// Print theoretical predictions for this graph's n and m.
    #[arg(long)]
    theory: bool,
}

fn env_seed() -> Result<u64, Error> {
    match std::env::var("HAMLAB_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Error::InvalidParameter(format!("HAMLAB_SEED={s:?} is not a u64"))),
        Err(_) => Ok(0),
    }
}

fn effective_seed(flag: Option<u64>) -> Result<u64, Error> {
    flag.map_or_else(env_seed, Ok)
}

fn need<T>(v: Option<T>, name: &str, family: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--family {family} needs --{name}")))
}

fn whole(v: f64, name: &str) -> Result<usize, Error> {
    if v >= 0.0 && v.fract() == 0.0 {
        Ok(v as usize)
    } else {
        Err(Error::InvalidParameter(format!("--{name} must be a non-negative integer here, got {v}")))
    }
}

fn family_from_args(f: &FamilyArgs) -> Result<Family, Error> {
    let name = f.family.as_str();
    let fam = match name {
        "gnm" => Family::Gnm { n: need(f.n, "n", name)?, m: need(f.m, "m", name)? },
        "gnmk" => Family::GnmByK { n: need(f.n, "n", name)?, k: need(f.k, "k", name)? },
        "gnstar" => Family::GnStar { n: need(f.n, "n", name)? },
        "degreebound" => Family::Degreebound {
            n: need(f.n, "n", name)?,
            p3: need(f.p3, "p3", name)?,
            version: f.version.unwrap_or(2),
        },
        "knight" => Family::Knight {
            a: need(f.a, "a", name)?,
            b: need(f.b, "b", name)?,
            rows: need(f.rows, "rows", name)?,
            cols: need(f.cols, "cols", name)?,
        },
        "iccs" => Family::Iccs { k_sub: whole(need(f.k, "k", name)?, "k")?, s: need(f.s, "s", name)? },
        other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
    };
    fam.validate()?;
    Ok(fam)
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_graph(input: &InputArgs) -> Result<Graph, Error> {
    if let Some(spec) = &input.spec {
        let spec: InstanceSpec = spec.parse()?;
        return Ok(spec.generate()?.graph);
    }
    let reader: Box<dyn BufRead> = match &input.input {
        Some(p) if p.as_os_str() != "-" => Box::new(BufReader::new(File::open(p)?)),
        _ => Box::new(io::stdin().lock()),
    };
    read_edge_list(reader)
}

fn cmd_gen(args: &GenArgs) -> Result<u8, Error> {
    let spec = InstanceSpec::new(family_from_args(&args.family)?, effective_seed(args.seed)?);
    let inst = spec.generate()?;
    let mut out = open_output(&args.out)?;
    write_edge_list(&inst.graph, Some(&spec.to_string()), &mut out)?;
    out.flush()?;
    Ok(EXIT_HC)
}

fn join(vs: &[usize], sep: &str) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
}

fn cmd_solve(args: &SolveArgs) -> Result<u8, Error> {
    let g = load_graph(&args.input)?;
    let seed = effective_seed(args.seed)?;
    eprintln!("# seed={seed}");
    let time_limit = match args.time_limit {
        Some(t) if !(t > 0.0 && t.is_finite()) => {
            return Err(Error::InvalidParameter("--time-limit must be positive".into()));
        }
        t => t.map(Duration::from_secs_f64),
    };
    let cfg = SearchConfig {
        heuristic: args.heuristic,
        restarts_enabled: !args.no_restart,
        restart_multiplier: args.multiplier,
        node_limit: args.node_limit,
        time_limit,
        checks: args.checks,
        start_vertex: args.start,
        seed,
        ..SearchConfig::default()
    };
    let (outcome, stats) = solve(&g, &cfg)?;
    let (line, code) = match &outcome {
        SolveOutcome::Hamiltonian(cycle) => (format!("HC {}", join(cycle, " ")), EXIT_HC),
        SolveOutcome::NonHamiltonian(reason) => (format!("NONHAM {reason} {}", stats.phase), EXIT_NONHAM),
        SolveOutcome::Timeout => ("TIMEOUT".to_string(), EXIT_TIMEOUT),
    };
    let mut out = io::stdout().lock();
    writeln!(out, "{line}")?;
    writeln!(out, "nodes={} restarts={} ms={}", stats.nodes, stats.restarts, stats.wall.as_millis())?;
    Ok(code)
}

fn cmd_sweep(args: &SweepArgs) -> Result<u8, Error> {
    let mut cfg = match &args.config {
        Some(p) => parse_config(&std::fs::read_to_string(p)?)?,
        None => Default::default(),
    };
    for kv in &args.sets {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        cfg.insert(k.trim().to_string(), v.trim().to_string());
    }
    if let Some(t) = args.trials {
        cfg.insert("trials".into(), t.to_string());
    }
    if let Some(w) = args.workers {
        cfg.insert("workers".into(), w.to_string());
    }
    if args.timing {
        cfg.insert("timing".into(), "true".into());
    }
    match args.seed {
        Some(s) => {
            cfg.insert("seed".into(), s.to_string());
        }
        None => {
            if !cfg.contains_key("seed") {
                cfg.insert("seed".into(), env_seed()?.to_string());
            }
        }
    }
    let spec = SweepSpec::from_config(&cfg)?;
    let total = spec.job_count();
    if !args.quiet {
        eprintln!(
            "# seed={} cells={} trials={} workers={}",
            spec.master_seed,
            spec.cells.len(),
            spec.trials,
            spec.workers
        );
    }
    let mut out = open_output(&args.out)?;
    writeln!(out, "{CSV_HEADER}")?;
    let mut done = 0usize;
    run_sweep(&spec, |r| {
        writeln!(out, "{}", r.to_csv_row())?;
        done += 1;
        if r.trial + 1 == spec.trials {
            out.flush()?;
            if !args.quiet {
                eprintln!("progress {done}/{total} (cell {} of {} done)", r.cell + 1, spec.cells.len());
            }
        }
        Ok(())
    })?;
    out.flush()?;
    Ok(EXIT_HC)
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<u8, Error> {
    let g = load_graph(&args.input)?;
    let all = !(args.parity || args.cutset.is_some() || args.count_3d2 || args.theory);
    let mut out = io::stdout().lock();
    if args.parity || all {
        match forced_degree_parity_test(&g) {
            ParityCertificate::NonHamiltonian { component, forced_degree } => writeln!(
                out,
                "NONHAM odd forced degree, component={{{}}}, fdeg={forced_degree}",
                join(&component, ",")
            )?,
            ParityCertificate::Inconclusive => writeln!(out, "INCONCLUSIVE")?,
        }
    }
    if let Some(c) = args.cutset.or(all.then_some(1)) {
        if !(1..=3).contains(&c) {
            return Err(Error::InvalidParameter("--cutset must be 1, 2 or 3".into()));
        }
        match small_cutset_scan(&g, c) {
            CutsetCertificate::NonHamiltonian { cut, components } => {
                writeln!(out, "NONHAM cut={{{}}} components={components}", join(&cut, ","))?
            }
            CutsetCertificate::Inconclusive => writeln!(out, "INCONCLUSIVE")?,
        }
    }
    if args.count_3d2 || all {
        writeln!(out, "3d2={}", count_3d2(&g))?;
    }
    if args.theory || all {
        let n = g.n();
        let eps = (0..n).filter(|&v| g.degree(v) == 2).count() as f64 / n as f64;
        writeln!(out, "p_ham_theory={:.6}", ham_probability_theory(n, g.m()))?;
        writeln!(out, "e_3d2={:.6} e_3d2_asymptotic={:.6} eps={eps:.6}", e_3d2(n, eps), e_3d2_asymptotic(n, eps))?;
        writeln!(out, "predicted_50_point={:.6}", predicted_50_point(n))?;
    }
    Ok(EXIT_HC)
}

fn cmd_oracle(args: &InputArgs) -> Result<u8, Error> {
    let g = load_graph(args)?;
    let mut out = io::stdout().lock();
    match brute_force_oracle(&g)? {
        Some(cycle) => {
            writeln!(out, "HC {}", join(&cycle, " "))?;
            Ok(EXIT_HC)
        }
        None => {
            writeln!(out, "NONHAM")?;
            Ok(EXIT_NONHAM)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
