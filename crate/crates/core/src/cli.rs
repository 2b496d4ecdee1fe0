//! Command-line front end: config files, subcommands and their output files.
//!
//! Every subcommand writes `<name>.json`, one or more CSV files and a
//! `<name>.manifest.json` describing the run into the output directory.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analytics::{analyze, sweep, AnalyticResult, CollisionCase, Grid, SweepParam, WeightingMode};
use crate::error::{Error, Result};
use crate::geometry::Coverage;
use crate::montecarlo::{estimate_table, McConfig, McEstimate, Proportion};
use crate::simulator::{self, QueueMode, SimConfig, SimResult};
use crate::stmodel::ScenarioConfig;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SIM_SLOTS: u64 = 100_000;

/// On-disk scenario: flat `key = value` lines, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default = "default_speed")]
    pub v: f64,
    #[serde(rename = "R", default = "default_radius")]
    pub radius: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    pub t_f: f64,
    pub beta: f64,
    pub lambda: f64,
    pub n_nodes: u32,
}

fn default_speed() -> f64 {
    1500.0
}

fn default_radius() -> f64 {
    1500.0
}

fn default_alpha() -> f64 {
    1.0
}

impl ConfigFile {
    pub fn scenario(&self) -> Result<ScenarioConfig> {
        let coverage = Coverage::from_alpha(self.radius, self.alpha).map_err(|e| match e {
            Error::Domain { what, .. } if what.contains("alpha") => Error::config("alpha", e.to_string()),
            Error::Domain { .. } => Error::config("R", e.to_string()),
            other => other,
        })?;
        ScenarioConfig::new(self.t_f, self.beta, self.v, coverage, self.lambda, self.n_nodes)
    }
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| Error::config("config", e.message().to_string()))?;
    file.scenario()
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::config("config", format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// 0 on success, 2 for invalid input, 3 for numerical failure, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config { .. } | Error::Domain { .. } => 2,
        Error::Quadrature { .. } => 3,
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => 1,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub config_path: String,
    pub scenario: ScenarioConfig,
    pub seeds: Vec<u64>,
    pub options: serde_json::Value,
    pub outputs: Vec<String>,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightingArg {
    Link,
    Radial,
}

impl From<WeightingArg> for WeightingMode {
    fn from(w: WeightingArg) -> Self {
        match w {
            WeightingArg::Link => WeightingMode::LinkPdf,
            WeightingArg::Radial => WeightingMode::Radial,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueueArg {
    Gated,
    Queued,
}

impl From<QueueArg> for QueueMode {
    fn from(q: QueueArg) -> Self {
        match q {
            QueueArg::Gated => QueueMode::Gated,
            QueueArg::Queued => QueueMode::Queued,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamArg {
    Beta,
    Tf,
    N,
    Lambda,
}

impl From<ParamArg> for SweepParam {
    fn from(p: ParamArg) -> Self {
        match p {
            ParamArg::Beta => SweepParam::Beta,
            ParamArg::Tf => SweepParam::PacketDuration,
            ParamArg::N => SweepParam::Nodes,
            ParamArg::Lambda => SweepParam::ArrivalRate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineArg {
    Analytic,
    Sim,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "stcmac", version, about = "Space-time collision analysis for slotted underwater MAC")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form per-segment probabilities, success probability and throughput.
    Analyze(AnalyzeOpts),
    /// Geometric Monte Carlo estimate of the per-segment table.
    Mc(McOpts),
    /// Discrete-event slotted ALOHA simulation.
    Sim(SimOpts),
    /// Parameter sweep with the closed form, the simulator or both.
    Sweep(SweepOpts),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AnalyzeOpts {
    pub config: PathBuf,
    #[arg(long, value_enum, default_value = "link")]
    pub weighting: WeightingArg,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct McOpts {
    pub config: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    pub runs: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Weighting of the closed-form column.
    #[arg(long, value_enum, default_value = "link")]
    pub weighting: WeightingArg,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SimOpts {
    pub config: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SIM_SLOTS)]
    pub slots: u64,
    /// Leading slots left out of the counters; defaults to `M + 1`.
    #[arg(long)]
    pub warmup: Option<u64>,
    #[arg(long, default_value_t = 30)]
    pub reps: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "gated")]
    pub queue: QueueArg,
    #[arg(long, value_enum, default_value = "link")]
    pub weighting: WeightingArg,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepOpts {
    pub config: PathBuf,
    #[arg(long, value_enum)]
    pub param: ParamArg,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "analytic")]
    pub engine: EngineArg,
    #[arg(long, value_enum, default_value = "link")]
    pub weighting: WeightingArg,
    /// Simulated slots per replication.
    #[arg(long, default_value_t = 2000)]
    pub slots: u64,
    #[arg(long, default_value_t = 3000)]
    pub reps: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "gated")]
    pub queue: QueueArg,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

/// Parses `args` (including the program name) and runs the subcommand;
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match &cli.command {
        Command::Analyze(o) => cmd_analyze(o),
        Command::Mc(o) => cmd_mc(o),
        Command::Sim(o) => cmd_sim(o),
        Command::Sweep(o) => cmd_sweep(o),
    };
    match outcome {
        Ok(manifest) => {
            for path in &manifest.outputs {
                println!("{path}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

struct Outputs {
    dir: PathBuf,
    written: Vec<String>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Outputs { dir: dir.to_path_buf(), written: Vec::new() })
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, serde_json::to_string_pretty(value)? + "\n")?;
        self.written.push(path.display().to_string());
        Ok(())
    }

    fn csv(&mut self, name: &str, header: &[String], rows: &[Vec<String>]) -> Result<()> {
        let path = self.dir.join(name);
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
        self.written.push(path.display().to_string());
        Ok(())
    }

    fn finish<O: Serialize>(
        mut self,
        subcommand: &str,
        config: &Path,
        scenario: ScenarioConfig,
        seeds: Vec<u64>,
        options: &O,
        started: Instant,
    ) -> Result<RunManifest> {
        let path = self.dir.join(format!("{subcommand}.manifest.json"));
        self.written.push(path.display().to_string());
        let manifest = RunManifest {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            config_path: config.display().to_string(),
            scenario,
            seeds,
            options: serde_json::to_value(options)?,
            outputs: self.written,
            wall_clock_seconds: started.elapsed().as_secs_f64(),
        };
        fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
        Ok(manifest)
    }
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

pub const ANALYZE_COLUMNS: [&str; 10] = ["k", "d_lo", "d_hi", "P_k", "P_zk", "P_ok", "P_sk", "p_t", "P_s", "T"];

/// Per-segment rows followed by an `all` row with the aggregates.
pub fn analyze_rows(r: &AnalyticResult) -> Vec<Vec<String>> {
    let mut rows: Vec<Vec<String>> = r
        .segments
        .iter()
        .map(|s| {
            vec![
                s.k.to_string(),
                num(s.d_lo),
                num(s.d_hi),
                num(s.p_k),
                num(s.p_z_total),
                num(s.p_o_total),
                num(s.p_s),
                num(r.transmit_prob),
                String::new(),
                String::new(),
            ]
        })
        .collect();
    let mut all = vec![String::new(); ANALYZE_COLUMNS.len()];
    all[0] = "all".into();
    all[3] = num(r.segments.iter().map(|s| s.p_k).sum());
    all[7] = num(r.transmit_prob);
    all[8] = num(r.success_prob);
    all[9] = num(r.throughput);
    rows.push(all);
    rows
}

/// A table cell: closed form, sampled value and its standard error.
struct Cell {
    theo: Option<f64>,
    sim: Option<Proportion>,
}

fn table_header(k: usize) -> Vec<String> {
    let mut h = header(&["quantity", "offset", "source"]);
    h.extend((1..=k).map(|i| i.to_string()));
    h
}

/// Wide table with one column per segment: `P_k`, `p_z` per offset, `p_o`
/// per consecutive offset pair (deep-interference case only) and `P_sk`.
/// With an estimate, each `Theo` row is followed by `Sim` and `SE` rows.
pub fn table_rows(theory: &AnalyticResult, estimate: Option<&McEstimate>) -> Vec<Vec<String>> {
    let seg_est = |i: usize| estimate.map(|e| &e.segments[i]);
    let mut offsets: Vec<i64> = theory.segments.iter().flat_map(|s| s.slots.iter().copied()).collect();
    offsets.sort_unstable();
    offsets.dedup();

    let mut quantities: Vec<(String, String, Vec<Cell>)> = Vec::new();
    let cells = |f: &dyn Fn(usize) -> Cell| (0..theory.segments.len()).map(f).collect::<Vec<_>>();
    quantities.push((
        "P_k".into(),
        String::new(),
        cells(&|i| Cell { theo: Some(theory.segments[i].p_k), sim: seg_est(i).map(|e| e.p_k) }),
    ));
    for &dm in &offsets {
        quantities.push((
            "p_z".into(),
            dm.to_string(),
            cells(&|i| Cell {
                theo: theory.segments[i].p_z.get(&dm).copied(),
                sim: seg_est(i).and_then(|e| e.p_z.get(&dm).copied()),
            }),
        ));
    }
    if theory.case == CollisionCase::DeepInterference {
        for &dm in offsets.iter().filter(|&&dm| offsets.contains(&(dm + 1))) {
            quantities.push((
                "p_o".into(),
                format!("{dm}:{}", dm + 1),
                cells(&|i| Cell {
                    theo: theory.segments[i].p_o.get(&dm).copied(),
                    sim: seg_est(i).and_then(|e| e.p_o.get(&dm).copied()),
                }),
            ));
        }
    }
    quantities.push((
        "P_sk".into(),
        String::new(),
        cells(&|i| Cell { theo: Some(theory.segments[i].p_s), sim: seg_est(i).and_then(|e| e.p_s) }),
    ));

    let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
    let mut rows = Vec::new();
    for (q, offset, cs) in quantities {
        let mut line = |source: &str, f: &dyn Fn(&Cell) -> Option<f64>| {
            let mut row = vec![q.clone(), offset.clone(), source.to_string()];
            row.extend(cs.iter().map(|c| opt(f(c))));
            rows.push(row);
        };
        line("Theo", &|c| c.theo);
        if estimate.is_some() {
            line("Sim", &|c| c.sim.map(|p| p.value));
            line("SE", &|c| c.sim.map(|p| p.se));
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub scenario: ScenarioConfig,
    /// Selected weighting first, the other one second.
    pub results: Vec<AnalyticResult>,
}

pub fn cmd_analyze(opts: &AnalyzeOpts) -> Result<RunManifest> {
    let started = Instant::now();
    let scenario = load_config(&opts.config)?;
    let mode = WeightingMode::from(opts.weighting);
    let primary = analyze(&scenario, mode)?;
    let other = analyze(&scenario, mode.other())?;

    let mut out = Outputs::new(&opts.out)?;
    out.csv("analyze.csv", &header(&ANALYZE_COLUMNS), &analyze_rows(&primary))?;
    out.csv("analyze_table.csv", &table_header(primary.segments.len()), &table_rows(&primary, None))?;
    out.json("analyze.json", &AnalyzeReport { scenario, results: vec![primary, other] })?;
    out.finish("analyze", &opts.config, scenario, Vec::new(), opts, started)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub scenario: ScenarioConfig,
    pub theory: AnalyticResult,
    pub estimate: McEstimate,
}

pub fn cmd_mc(opts: &McOpts) -> Result<RunManifest> {
    let started = Instant::now();
    let scenario = load_config(&opts.config)?;
    let mc = McConfig::table(scenario, opts.runs, opts.seed);
    mc.validate()?;
    let theory = analyze(&mc.scenario, opts.weighting.into())?;
    let estimate = estimate_table(&mc)?;

    let mut out = Outputs::new(&opts.out)?;
    out.csv("mc.csv", &table_header(theory.segments.len()), &table_rows(&theory, Some(&estimate)))?;
    out.json("mc.json", &McReport { scenario: mc.scenario, theory, estimate })?;
    out.finish("mc", &opts.config, mc.scenario, vec![opts.seed], opts, started)
}

pub const SWEEP_COLUMNS: [&str; 6] = ["param", "P_s_sim", "P_s_sim_ci", "T_sim", "P_s_theory", "T_theory"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Swept value; absent for a single simulation.
    pub param: Option<f64>,
    pub sim: Option<SimResult>,
    pub theory: Option<AnalyticResult>,
}

impl SweepRow {
    fn cells(&self) -> Vec<String> {
        let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
        vec![
            opt(self.param),
            opt(self.sim.as_ref().map(|s| s.success_prob)),
            opt(self.sim.as_ref().map(|s| s.ci_half_width)),
            opt(self.sim.as_ref().map(|s| s.throughput_model)),
            opt(self.theory.as_ref().map(|t| t.success_prob)),
            opt(self.theory.as_ref().map(|t| t.throughput)),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub scenario: ScenarioConfig,
    pub sim: SimConfig,
    pub rows: Vec<SweepRow>,
}

fn sim_config(scenario: ScenarioConfig, slots: u64, warmup: Option<u64>, reps: u64, seed: u64, queue: QueueArg) -> SimConfig {
    let mut sim = SimConfig::new(scenario, slots, seed).with_replications(reps).with_queue_mode(queue.into());
    if let Some(w) = warmup {
        sim = sim.with_warmup(w);
    }
    sim
}

pub fn cmd_sim(opts: &SimOpts) -> Result<RunManifest> {
    let started = Instant::now();
    let scenario = load_config(&opts.config)?;
    let sim = sim_config(scenario, opts.slots, opts.warmup, opts.reps, opts.seed, opts.queue);
    let result = simulator::run(&sim)?;
    let theory = analyze(&scenario, opts.weighting.into())?;
    let row = SweepRow { param: None, sim: Some(result), theory: Some(theory) };

    let mut out = Outputs::new(&opts.out)?;
    out.csv("sim.csv", &header(&SWEEP_COLUMNS), &[row.cells()])?;
    out.json("sim.json", &SimReport { scenario, sim, rows: vec![row] })?;
    out.finish("sim", &opts.config, scenario, vec![opts.seed], opts, started)
}

pub fn cmd_sweep(opts: &SweepOpts) -> Result<RunManifest> {
    let started = Instant::now();
    let scenario = load_config(&opts.config)?;
    let param = SweepParam::from(opts.param);
    let values = Grid::new(opts.from, opts.to, opts.steps)?.values();
    let mode = WeightingMode::from(opts.weighting);

    let want_theory = opts.engine != EngineArg::Sim;
    let want_sim = opts.engine != EngineArg::Analytic;
    if want_theory {
        // Validates every grid point before any simulation time is spent.
        sweep(&scenario, param, &values, mode)?;
    }
    let mut rows = Vec::with_capacity(values.len());
    for &value in &values {
        let at = param.apply(&scenario, value)?;
        let theory = if want_theory { Some(analyze(&at, mode)?) } else { None };
        let sim = if want_sim {
            let cfg = sim_config(at, opts.slots, None, opts.reps, opts.seed, opts.queue);
            Some(simulator::run(&cfg)?)
        } else {
            None
        };
        rows.push(SweepRow { param: Some(value), sim, theory });
    }

    let mut out = Outputs::new(&opts.out)?;
    let cells: Vec<Vec<String>> = rows.iter().map(SweepRow::cells).collect();
    out.csv("sweep.csv", &header(&SWEEP_COLUMNS), &cells)?;
    out.json("sweep.json", &rows)?;
    let seeds = if want_sim { vec![opts.seed] } else { Vec::new() };
    out.finish("sweep", &opts.config, scenario, seeds, opts, started)
}
