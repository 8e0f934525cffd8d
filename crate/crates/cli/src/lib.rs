//! The `dts` command line tool.
//!
//! [`execute`] runs a command without touching the file system beyond
//! reading inputs; the binary then writes the collected artifacts and, if
//! asked, a [`RunManifest`]. Keeping the two apart is what lets `replay`
//! rerun a manifest and compare hashes without clobbering anything.

pub mod manifest;
pub mod table;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dts::algebraic::{asymptotic_construct, cfj_composition, singer_difference_set};
use dts::format::{
    emit_json, emit_packing_text, emit_text, parse_json, parse_packing_text, parse_text_raw,
};
use dts::greedy::{set_greedy, transversal_greedy};
use dts::heuristics::{run_pipeline, HeuristicConfig, Improvement, TemplateFamily, DEFAULT_CAP};
use dts::search::{
    exists_dts, search_sharded, shard_search, Pruning, SearchOutcome, SearchProblem, SearchStatus,
    Shard, CANONICAL_FORM_VERSION,
};
use dts::{best_lower_bound, verify_triangle_set, DtsError, TriangleSet, Verdict};

pub use manifest::RunManifest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_EXHAUSTED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "dts",
    version,
    about = "Difference triangle sets: construct, improve, verify, search"
)]
pub struct Cli {
    /// Write a JSON run manifest here.
    #[arg(long, global = true, value_name = "FILE")]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a set with a greedy or algebraic construction.
    Construct(ConstructArgs),
    /// Shrink the scope of a set with randomized template heuristics.
    Improve(ImproveArgs),
    /// Check a .dts, JSON or packing file.
    Verify(VerifyArgs),
    /// Exhaustive search for a set within a scope, or for m(n, k).
    Search(SearchArgs),
    /// Lower bounds on m(n, k).
    Bounds(BoundsArgs),
    /// Singer difference set over GF(q^3).
    Singer(SingerArgs),
    /// n-block packing composed from a Singer set.
    Compose(ComposeArgs),
    /// Compare local results with the embedded table of improved bounds.
    Table(TableArgs),
    /// Rerun a manifest and compare output hashes.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    SetGreedy,
    TransversalGreedy,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(short)]
    pub n: usize,
    #[arg(short)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Construction recipe as JSON (asymptotic only).
    #[arg(long)]
    pub recipe: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ImproveArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Stages as `family:iterations`, run in order.
    #[arg(long, default_value = "h1:10000,h3:10000,h2:10000")]
    pub pipeline: Pipeline,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Completions enumerated per step before sampling stops.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Stop once the scope is at most this.
    #[arg(long)]
    pub target: Option<u32>,
    /// Independent restarts; the best result wins.
    #[arg(long, default_value_t = 1)]
    pub restarts: usize,
    /// Worker threads for restarts.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Improvement trace as JSON.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pipeline(pub Vec<(TemplateFamily, u64)>);

impl FromStr for Pipeline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let stages = s
            .split(',')
            .map(|part| {
                let (fam, iters) = part
                    .split_once(':')
                    .ok_or_else(|| format!("stage {part:?} is not family:iterations"))?;
                let fam = fam
                    .trim()
                    .parse::<TemplateFamily>()
                    .map_err(|e| e.to_string())?;
                let iters = iters
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| format!("bad iteration count in {part:?}"))?;
                Ok((fam, iters))
            })
            .collect::<Result<Vec<_>, String>>()?;
        if stages.is_empty() {
            return Err("empty pipeline".into());
        }
        Ok(Pipeline(stages))
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Read a `v n k` packing instead of a triangle set.
    #[arg(long)]
    pub packing: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(short)]
    pub n: usize,
    #[arg(short)]
    pub k: usize,
    #[arg(long, conflicts_with = "exact", required_unless_present = "exact")]
    pub max_scope: Option<u32>,
    /// Find m(n, k) by scanning upward from the best lower bound.
    #[arg(long)]
    pub exact: bool,
    /// Start the exact scan here instead of at the best known lower bound.
    #[arg(long, requires = "exact")]
    pub lower: Option<u64>,
    /// Run only shard `i` of `S`.
    #[arg(long, value_name = "i/S", conflicts_with = "exact")]
    pub shard: Option<ShardSpec>,
    /// Prefix depth at which the tree is split into shards.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Node budget (per scope for --exact, per shard with --jobs).
    #[arg(long)]
    pub budget: Option<u64>,
    /// Worker threads; more than one splits the tree into 8 shards per job.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value = "full")]
    pub pruning: PruningArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Append nonexistence certificates as JSON lines.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PruningArg {
    Full,
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShardSpec {
    pub index: usize,
    pub count: usize,
}

impl FromStr for ShardSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (i, c) = s.split_once('/').ok_or("expected i/S")?;
        let index = i.parse().map_err(|_| "bad shard index")?;
        let count: usize = c.parse().map_err(|_| "bad shard count")?;
        if count == 0 || index >= count {
            return Err(format!("shard {index}/{count} out of range"));
        }
        Ok(ShardSpec { index, count })
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(short)]
    pub n: u64,
    #[arg(short)]
    pub k: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SingerArgs {
    #[arg(short)]
    pub q: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    /// Prime order of the Singer base.
    #[arg(short)]
    pub q: u64,
    /// Prime number of blocks, larger than q.
    #[arg(short)]
    pub n: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Result files (.dts text or JSON).
    pub files: Vec<PathBuf>,
    /// Also score transversal-greedy for every table entry.
    #[arg(long)]
    pub greedy: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

/// Result of one command: exit status, captured output, files to write.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub files: Vec<(PathBuf, Vec<u8>)>,
    pub inputs: Vec<(PathBuf, Vec<u8>)>,
    pub seed: Option<u64>,
}

impl Execution {
    fn emit(&mut self, out: &Option<PathBuf>, text: String) {
        match out {
            Some(p) => self.files.push((p.clone(), text.into_bytes())),
            None => self.stdout.push_str(&text),
        }
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| Failure::input(format!("{} is not UTF-8", path.display())))?;
        self.inputs.push((path.to_path_buf(), bytes));
        Ok(text)
    }

    /// Hashes of stdout and every artifact, keyed by name.
    pub fn artifact_hashes(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        map.insert(
            "stdout".to_string(),
            manifest::sha256_hex(self.stdout.as_bytes()),
        );
        for (p, bytes) in &self.files {
            map.insert(p.display().to_string(), manifest::sha256_hex(bytes));
        }
        map
    }

    pub fn input_hashes(&self) -> BTreeMap<String, String> {
        self.inputs
            .iter()
            .map(|(p, b)| (p.display().to_string(), manifest::sha256_hex(b)))
            .collect()
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID_INPUT,
            message: message.into(),
        }
    }
}

impl From<DtsError> for Failure {
    fn from(e: DtsError) -> Self {
        let code = match e {
            DtsError::InvalidSet(_) | DtsError::InvalidPacking(_) => EXIT_VERIFY_FAILED,
            _ => EXIT_INVALID_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Parse and run `args` (without the program name). Only reads files.
pub fn execute(args: &[String]) -> Execution {
    let argv = std::iter::once("dts".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_OK
            };
            let mut exec = Execution {
                code,
                ..Default::default()
            };
            if e.use_stderr() {
                exec.stderr = e.to_string();
            } else {
                exec.stdout = e.to_string();
            }
            return exec;
        }
    };
    run_command(&cli.command)
}

pub fn run_command(command: &Command) -> Execution {
    let mut exec = Execution::default();
    let result = match command {
        Command::Construct(a) => construct(a, &mut exec),
        Command::Improve(a) => improve(a, &mut exec),
        Command::Verify(a) => verify(a, &mut exec),
        Command::Search(a) => search(a, &mut exec),
        Command::Bounds(a) => bounds(a, &mut exec),
        Command::Singer(a) => singer(a, &mut exec),
        Command::Compose(a) => compose(a, &mut exec),
        Command::Table(a) => table_cmd(a, &mut exec),
        Command::Replay(a) => replay(a, &mut exec),
    };
    match result {
        Ok(code) => exec.code = code,
        Err(f) => {
            exec.code = f.code;
            exec.stderr.push_str(&f.message);
            exec.stderr.push('\n');
        }
    }
    exec
}

/// Entry point for the binary: run, write artifacts, write the manifest.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    let started = Instant::now();
    let (params, manifest_path) = split_manifest_flag(argv.into_iter().skip(1).collect());
    let exec = execute(&params);
    print!("{}", exec.stdout);
    eprint!("{}", exec.stderr);
    let mut code = exec.code;
    for (path, bytes) in &exec.files {
        if let Err(e) = std::fs::write(path, bytes) {
            eprintln!("cannot write {}: {e}", path.display());
            code = EXIT_INVALID_INPUT;
        }
    }
    if let Some(path) = manifest_path {
        let m = RunManifest {
            command: params.first().cloned().unwrap_or_default(),
            parameters: params.clone(),
            seed: exec.seed,
            inputs: exec.input_hashes(),
            artifacts: exec.artifact_hashes(),
            exit_code: exec.code,
            wall_time_ms: started.elapsed().as_millis() as u64,
        };
        let text = serde_json::to_string_pretty(&m).expect("manifest serializes") + "\n";
        if let Err(e) = std::fs::write(&path, text) {
            eprintln!("cannot write manifest {}: {e}", path.display());
            code = EXIT_INVALID_INPUT;
        }
    }
    code
}

fn split_manifest_flag(args: Vec<String>) -> (Vec<String>, Option<PathBuf>) {
    let mut params = Vec::new();
    let mut manifest = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--manifest" {
            manifest = it.next().map(PathBuf::from);
        } else if let Some(p) = a.strip_prefix("--manifest=") {
            manifest = Some(PathBuf::from(p));
        } else {
            params.push(a);
        }
    }
    (params, manifest)
}

fn construct(a: &ConstructArgs, exec: &mut Execution) -> Result<i32, Failure> {
    if a.n == 0 || a.k == 0 {
        return Err(Failure::input("n and k must be positive"));
    }
    let (set, name) = match a.algo {
        Algo::SetGreedy => (set_greedy(a.n, a.k), "set-greedy"),
        Algo::TransversalGreedy => (transversal_greedy(a.n, a.k), "transversal-greedy"),
        Algo::Asymptotic => {
            let (set, recipe) = asymptotic_construct(a.n as u64, a.k as u64)?;
            if let Some(p) = &a.recipe {
                let json = serde_json::to_string_pretty(&recipe).expect("recipe serializes") + "\n";
                exec.files.push((p.clone(), json.into_bytes()));
            }
            (set, "asymptotic")
        }
    };
    if a.recipe.is_some() && a.algo != Algo::Asymptotic {
        return Err(Failure::input("--recipe applies to --algo asymptotic only"));
    }
    let text = match a.format {
        Format::Text => emit_text(&set),
        Format::Json => emit_json(&set, Some(name), None),
    };
    exec.emit(&a.out, text);
    exec.stderr.push_str(&format!(
        "{name} ({}, {}): scope {}\n",
        a.n,
        a.k,
        set.scope()
    ));
    Ok(EXIT_OK)
}

/// Raw rows from a text or JSON file, sniffed by the first character.
fn read_rows(exec: &mut Execution, path: &Path) -> Result<Vec<Vec<i64>>, Failure> {
    let text = exec.read(path)?;
    if text.trim_start().starts_with('{') {
        let doc = parse_json(&text)?;
        Ok(doc
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| i64::from(v)).collect())
            .collect())
    } else {
        Ok(parse_text_raw(&text)?)
    }
}

fn read_set(exec: &mut Execution, path: &Path) -> Result<TriangleSet, Failure> {
    let rows = read_rows(exec, path)?;
    Ok(TriangleSet::from_raw(&rows)?)
}

fn stage_seed(seed: u64, restart: usize, stages: usize, stage: usize) -> u64 {
    seed.wrapping_add((restart * stages + stage) as u64)
}

#[derive(Debug, Serialize)]
struct RestartTrace {
    restart: usize,
    seeds: Vec<u64>,
    scope: u32,
    improvements: Vec<Improvement>,
}

#[derive(Debug, Serialize)]
struct ImproveTrace {
    n: usize,
    k: usize,
    initial_scope: u32,
    best_scope: u32,
    best_restart: usize,
    pipeline: Vec<(TemplateFamily, u64)>,
    seed: u64,
    cap: usize,
    target: Option<u32>,
    restarts: Vec<RestartTrace>,
}

fn improve(a: &ImproveArgs, exec: &mut Execution) -> Result<i32, Failure> {
    let start = read_set(exec, &a.input)?;
    exec.seed = Some(a.seed);
    if a.restarts == 0 {
        return Err(Failure::input("--restarts must be at least 1"));
    }
    let stages = a.pipeline.0.len();
    let configs = |r: usize| -> Vec<HeuristicConfig> {
        a.pipeline
            .0
            .iter()
            .enumerate()
            .map(|(i, &(fam, iters))| {
                HeuristicConfig::new(fam, iters, stage_seed(a.seed, r, stages, i))
                    .with_cap(a.cap)
                    .with_target(a.target)
            })
            .collect()
    };
    let jobs = a.jobs.clamp(1, a.restarts);
    let mut runs: Vec<(usize, dts::Result<dts::heuristics::PipelineRun>)> =
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let configs = &configs;
                    let start = &start;
                    scope.spawn(move || {
                        (w..a.restarts)
                            .step_by(jobs)
                            .map(|r| (r, run_pipeline(start, &configs(r))))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("restart worker panicked"))
                .collect()
        });
    runs.sort_by_key(|(r, _)| *r);
    let mut traces = Vec::new();
    let mut best: Option<(usize, TriangleSet)> = None;
    for (r, run) in runs {
        let run = run?;
        traces.push(RestartTrace {
            restart: r,
            seeds: (0..stages)
                .map(|i| stage_seed(a.seed, r, stages, i))
                .collect(),
            scope: run.best.scope(),
            improvements: run.improvements,
        });
        if best
            .as_ref()
            .is_none_or(|(_, b)| run.best.scope() < b.scope())
        {
            best = Some((r, run.best));
        }
    }
    let (best_restart, best) = best.expect("at least one restart");
    if let Some(p) = &a.trace {
        let trace = ImproveTrace {
            n: start.n(),
            k: start.k(),
            initial_scope: start.scope(),
            best_scope: best.scope(),
            best_restart,
            pipeline: a.pipeline.0.clone(),
            seed: a.seed,
            cap: a.cap,
            target: a.target,
            restarts: traces,
        };
        let json = serde_json::to_string_pretty(&trace).expect("trace serializes") + "\n";
        exec.files.push((p.clone(), json.into_bytes()));
    }
    exec.emit(&a.out, emit_text(&best));
    exec.stderr
        .push_str(&format!("scope {} -> {}\n", start.scope(), best.scope()));
    Ok(EXIT_OK)
}

fn verify(a: &VerifyArgs, exec: &mut Execution) -> Result<i32, Failure> {
    if a.packing {
        let text = exec.read(&a.file)?;
        return match parse_packing_text(&text) {
            Ok(p) => {
                exec.stdout.push_str(&format!(
                    "valid packing, v {}, {} blocks of {}\n",
                    p.modulus(),
                    p.n(),
                    p.k()
                ));
                Ok(EXIT_OK)
            }
            Err(DtsError::InvalidPacking(v)) => {
                exec.stdout.push_str(&format!("invalid: {v}\n"));
                Ok(EXIT_VERIFY_FAILED)
            }
            Err(e) => Err(e.into()),
        };
    }
    let rows = read_rows(exec, &a.file)?;
    match verify_triangle_set(&rows) {
        Verdict::Valid { scope } => {
            exec.stdout.push_str(&format!("valid, scope {scope}\n"));
            Ok(EXIT_OK)
        }
        v => {
            exec.stdout.push_str(&format!("invalid: {v}\n"));
            Ok(EXIT_VERIFY_FAILED)
        }
    }
}

#[derive(Debug, Serialize)]
struct Certificate {
    n: usize,
    k: usize,
    max_scope: u32,
    shard: Option<String>,
    nodes: u64,
    canonical_form_version: u32,
}

fn search(a: &SearchArgs, exec: &mut Execution) -> Result<i32, Failure> {
    if a.n == 0 || a.k == 0 {
        return Err(Failure::input("n and k must be positive"));
    }
    let pruning = match a.pruning {
        PruningArg::Full => Pruning::Full,
        PruningArg::Canonical => Pruning::CanonicalOnly,
    };
    let jobs = a.jobs.max(1);
    let run = |m: u32, budget: Option<u64>| -> dts::Result<SearchOutcome> {
        let problem = SearchProblem::new(a.n, a.k, m)
            .with_budget(budget)
            .with_pruning(pruning);
        match a.shard {
            Some(s) => shard_search(
                &problem,
                Shard {
                    depth: a.depth,
                    index: s.index,
                    count: s.count,
                },
            ),
            None if jobs > 1 => search_sharded(&problem, a.depth, 8 * jobs, jobs),
            None => exists_dts(&problem),
        }
    };
    let shard = a.shard.map(|s| format!("{}/{}", s.index, s.count));
    let mut log = String::new();
    let certify = |m: u32, nodes: u64, log: &mut String| {
        let c = Certificate {
            n: a.n,
            k: a.k,
            max_scope: m,
            shard: shard.clone(),
            nodes,
            canonical_form_version: CANONICAL_FORM_VERSION,
        };
        let line = serde_json::to_string(&c).expect("certificate serializes");
        log.push_str(&line);
        log.push('\n');
    };

    let code = if let Some(m) = a.max_scope {
        let outcome = run(m, a.budget)?;
        match outcome.status {
            SearchStatus::Found(t) => {
                exec.stderr.push_str(&format!(
                    "found scope {} after {} nodes\n",
                    t.scope(),
                    outcome.nodes
                ));
                exec.emit(&a.out, emit_text(&t));
                EXIT_OK
            }
            SearchStatus::Exhausted => {
                certify(m, outcome.nodes, &mut log);
                exec.stderr.push_str(&format!("no set with scope <= {m}\n"));
                EXIT_EXHAUSTED
            }
            SearchStatus::BudgetExceeded => {
                exec.stderr
                    .push_str(&format!("budget exceeded after {} nodes\n", outcome.nodes));
                EXIT_BUDGET
            }
        }
    } else {
        let (nu, ku) = (a.n as u64, a.k as u64);
        let lower = a.lower.unwrap_or_else(|| best_lower_bound(nu, ku).best);
        let greedy = transversal_greedy(a.n, a.k);
        let upper = greedy.scope();
        let lower = u32::try_from(lower).map_err(|_| Failure::input("lower bound too large"))?;
        let mut answer = None;
        for m in lower..upper {
            let outcome = run(m, a.budget)?;
            match outcome.status {
                SearchStatus::Found(t) => {
                    answer = Some(t);
                    break;
                }
                SearchStatus::Exhausted => certify(m, outcome.nodes, &mut log),
                SearchStatus::BudgetExceeded => {
                    exec.stderr.push_str(&format!(
                        "budget exceeded at scope {m}: {m} <= m({}, {}) <= {upper}\n",
                        a.n, a.k
                    ));
                    break;
                }
            }
        }
        let exhausted_to = log.lines().count();
        match answer {
            Some(t) => {
                exec.stderr
                    .push_str(&format!("m({}, {}) = {}\n", a.n, a.k, t.scope()));
                exec.emit(&a.out, emit_text(&t));
                EXIT_OK
            }
            None if lower + exhausted_to as u32 >= upper => {
                exec.stderr
                    .push_str(&format!("m({}, {}) = {}\n", a.n, a.k, upper.max(lower)));
                exec.emit(&a.out, emit_text(&greedy));
                EXIT_OK
            }
            None => EXIT_BUDGET,
        }
    };
    exec.stderr.push_str(&log);
    if let Some(p) = &a.log {
        exec.files.push((p.clone(), log.into_bytes()));
    }
    Ok(code)
}

fn bounds(a: &BoundsArgs, exec: &mut Execution) -> Result<i32, Failure> {
    if a.n == 0 || a.k == 0 {
        return Err(Failure::input("n and k must be positive"));
    }
    let r = best_lower_bound(a.n, a.k);
    if a.json {
        exec.stdout
            .push_str(&(serde_json::to_string_pretty(&r).expect("report serializes") + "\n"));
    } else {
        let exact = r.exact.map_or("unknown".to_string(), |e| e.to_string());
        exec.stdout.push_str(&format!(
            "m({}, {}): trivial {}, klove {}, exact {}, best {}\n",
            a.n, a.k, r.trivial, r.klove, exact, r.best
        ));
    }
    Ok(EXIT_OK)
}

fn singer(a: &SingerArgs, exec: &mut Execution) -> Result<i32, Failure> {
    let p = singer_difference_set(a.q)?;
    exec.emit(&a.out, emit_packing_text(&p));
    Ok(EXIT_OK)
}

fn compose(a: &ComposeArgs, exec: &mut Execution) -> Result<i32, Failure> {
    let base = singer_difference_set(a.q)?;
    let p = cfj_composition(&base, a.n)?;
    exec.emit(&a.out, emit_packing_text(&p));
    Ok(EXIT_OK)
}

fn table_cmd(a: &TableArgs, exec: &mut Execution) -> Result<i32, Failure> {
    if a.files.is_empty() && !a.greedy {
        let entries = table::entries();
        if a.json {
            exec.stdout
                .push_str(&(serde_json::to_string_pretty(&entries).expect("serializes") + "\n"));
        } else {
            exec.stdout.push_str(&format!(
                "{:>3} {:>3} {:>7} {:>7}  prior source\n",
                "n", "k", "paper", "prior"
            ));
            for e in entries {
                exec.stdout.push_str(&format!(
                    "{:>3} {:>3} {:>7} {:>7}  {}\n",
                    e.n, e.k, e.improved, e.previous, e.source
                ));
            }
        }
        return Ok(EXIT_OK);
    }
    let mut results = Vec::new();
    for path in &a.files {
        let set = read_set(exec, path)?;
        results.push((set.n() as u64, set.k() as u64, u64::from(set.scope())));
    }
    if a.greedy {
        for e in table::TABLE_I {
            let t = transversal_greedy(e.n as usize, e.k as usize);
            results.push((e.n, e.k, u64::from(t.scope())));
        }
    }
    let rows = table::table_report(&results);
    if a.json {
        exec.stdout
            .push_str(&(serde_json::to_string_pretty(&rows).expect("serializes") + "\n"));
    } else {
        exec.stdout.push_str(&table::render_report(&rows));
    }
    Ok(EXIT_OK)
}

fn replay(a: &ReplayArgs, exec: &mut Execution) -> Result<i32, Failure> {
    let m = manifest::load(&a.manifest)
        .map_err(|e| Failure::input(format!("cannot load {}: {e}", a.manifest.display())))?;
    if m.command == "replay" {
        return Err(Failure::input("refusing to replay a replay"));
    }
    let again = execute(&m.parameters);
    let mut problems = Vec::new();
    let inputs = again.input_hashes();
    if inputs != m.inputs {
        problems.push("inputs differ from the recorded run".to_string());
    }
    if again.code != m.exit_code {
        problems.push(format!(
            "exit code {} != recorded {}",
            again.code, m.exit_code
        ));
    }
    let hashes = again.artifact_hashes();
    for (name, want) in &m.artifacts {
        match hashes.get(name) {
            Some(got) if got == want => {}
            Some(_) => problems.push(format!("{name}: hash differs")),
            None => problems.push(format!("{name}: not produced")),
        }
    }
    for name in hashes.keys().filter(|k| !m.artifacts.contains_key(*k)) {
        problems.push(format!("{name}: not in manifest"));
    }
    if problems.is_empty() {
        exec.stdout.push_str(&format!(
            "replay ok: {} artifacts match\n",
            m.artifacts.len()
        ));
        Ok(EXIT_OK)
    } else {
        for p in problems {
            exec.stdout.push_str(&format!("mismatch: {p}\n"));
        }
        Ok(EXIT_VERIFY_FAILED)
    }
}
