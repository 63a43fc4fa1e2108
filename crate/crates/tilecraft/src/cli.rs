//! Command-line front end.
//!
//! ```text
//! tilecraft synth              --n N [--mode uniform|clustered] --out FILE
//! tilecraft partition          --input FILE --algo A (--payload N | --fraction F) --out DIR
//! tilecraft sweep              --input FILE [--algos A,..] [--fractions F,..] --out DIR
//! tilecraft sample-partition   ... --gamma G [--seed S]
//! tilecraft parallel-partition ... --coarse-payload N [--anchor-sample N] [--workers W]
//! tilecraft join               --r FILE --s FILE --algo A (--payload N | --fraction F) [--oracle] --out DIR
//! tilecraft stats              --layout FILE --assignment FILE
//! ```
//!
//! Partitioning commands write `layout.tsv`, `assignment.tsv`, `report.json`
//! and `timing.json` into `--out`. Everything except `timing.json` (and the
//! timing column of `sweep.csv`) is byte-identical across identical runs.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tilecraft_core::anchors::ParallelConfig;
use tilecraft_core::join::{brute_join, copartition, merged_for_layout};
use tilecraft_core::metrics::report_from_payloads;
use tilecraft_core::sampling::{sample_partition, SamplingConfig};
use tilecraft_core::synth::{generate, GenSpec};
use tilecraft_core::{
    masj_assign, partition, quality_report, Algorithm, Axis, Dataset, PartitionLayout,
};

use crate::error::{io_err, Error, Result};
use crate::io::{
    ingest, read_assignment, read_layout, write_assignment, write_dataset, write_layout,
    write_pairs, Format,
};
use crate::parallel::{parallel_assign, parallel_partition, parallel_tile_join};
use crate::report::{elapsed_ms, write_json, JoinSummary, Quality, RunReport, Timing};

/// Default fraction ladder of `sweep`.
pub const FRACTION_LADDER: [f64; 10] = [1e-5, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 1e-2, 5e-2];

#[derive(Debug, Parser)]
#[command(name = "tilecraft", version, about = "Spatial data partitioning toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic dataset on the unit square
    Synth(SynthArgs),
    /// Partition a dataset and replicate boundary objects
    Partition(PartitionArgs),
    /// Partition over a ladder of fractions and algorithms, one CSV row each
    Sweep(SweepArgs),
    /// Build the layout from a uniform sample, assign the full dataset
    SamplePartition(SampleArgs),
    /// Coarse Hilbert bucketing, then per-bucket partitioning on a worker pool
    ParallelPartition(ParallelArgs),
    /// Co-partition two datasets and join them tile by tile
    Join(JoinArgs),
    /// Recompute quality figures from a layout and an assignment file
    Stats(StatsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Fg,
    Bsp,
    Slc,
    Bos,
    Hc,
    Str,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum DimArg {
    #[default]
    X,
    Y,
}

impl AlgoArg {
    pub fn with_dim(self, dim: DimArg) -> Algorithm {
        match self {
            AlgoArg::Fg => Algorithm::Fg,
            AlgoArg::Bsp => Algorithm::Bsp,
            AlgoArg::Slc => Algorithm::Slc(match dim {
                DimArg::X => Axis::X,
                DimArg::Y => Axis::Y,
            }),
            AlgoArg::Bos => Algorithm::Bos,
            AlgoArg::Hc => Algorithm::Hc,
            AlgoArg::Str => Algorithm::Str,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Uniform,
    Clustered,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Uniform)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 5)]
    pub hotspots: usize,
    #[arg(long, default_value_t = 0.01)]
    pub spread: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub size_min: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub size_max: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// output file (tsv-mbr)
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = Format::TsvMbr)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AlgoArgs {
    #[arg(long, value_enum)]
    pub algo: AlgoArg,
    /// cut axis for SLC
    #[arg(long, value_enum, default_value_t = DimArg::X)]
    pub dim: DimArg,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PayloadArgs {
    /// objects per partition
    #[arg(long)]
    pub payload: Option<usize>,
    /// payload relative to the dataset size: b = max(1, round(f * n))
    #[arg(long)]
    pub fraction: Option<f64>,
}

impl PayloadArgs {
    pub fn resolve(&self, n: usize) -> Result<usize> {
        match (self.payload, self.fraction) {
            (Some(0), _) => Err(Error::Config("--payload must be at least 1".into())),
            (Some(b), _) => Ok(b),
            (None, Some(f)) => payload_for_fraction(f, n),
            (None, None) => Err(Error::Config("one of --payload or --fraction is required".into())),
        }
    }
}

/// `max(1, round(f * n))` for a positive finite `f`.
pub fn payload_for_fraction(f: f64, n: usize) -> Result<usize> {
    if !(f.is_finite() && f > 0.0) {
        return Err(Error::Config(format!("fraction must be positive, got {f}")));
    }
    Ok(((f * n as f64).round() as usize).max(1))
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[command(flatten)]
    pub payload: PayloadArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// default: all six
    #[arg(long, value_enum, value_delimiter = ',')]
    pub algos: Vec<AlgoArg>,
    /// default: 1e-5,5e-5,1e-4,2e-4,5e-4,1e-3,2e-3,5e-3,1e-2,5e-2
    #[arg(long, value_delimiter = ',')]
    pub fractions: Vec<f64>,
    #[arg(long, value_enum, default_value_t = DimArg::X)]
    pub dim: DimArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[command(flatten)]
    pub payload: PayloadArgs,
    /// sample ratio in (0, 1]
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ParallelArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[command(flatten)]
    pub payload: PayloadArgs,
    /// objects per coarse bucket
    #[arg(long)]
    pub coarse_payload: usize,
    #[arg(long, default_value_t = tilecraft_core::anchors::DEFAULT_ANCHOR_SAMPLE)]
    pub anchor_sample: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// default: available cores
    #[arg(long, env = "TILECRAFT_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct JoinArgs {
    #[arg(long)]
    pub r: PathBuf,
    #[arg(long)]
    pub s: PathBuf,
    #[arg(long, default_value_t = Format::TsvMbr)]
    pub format: Format,
    #[command(flatten)]
    pub algo: AlgoArgs,
    /// a fraction is taken relative to |R| + |S|
    #[command(flatten)]
    pub payload: PayloadArgs,
    /// also run the nested-loop join and compare
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, env = "TILECRAFT_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub layout: PathBuf,
    #[arg(long)]
    pub assignment: PathBuf,
    /// write the JSON here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Synth(a) => run_synth(&a),
        Command::Partition(a) => run_partition(&a),
        Command::Sweep(a) => run_sweep(&a),
        Command::SamplePartition(a) => run_sample_partition(&a),
        Command::ParallelPartition(a) => run_parallel_partition(&a),
        Command::Join(a) => run_join(&a),
        Command::Stats(a) => run_stats(&a),
    }
}

fn workers_or_default(w: Option<usize>) -> Result<usize> {
    match w {
        Some(0) => Err(Error::Config("--workers must be at least 1".into())),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn make_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(io_err(dir))
}

fn load(input: &InputArgs) -> Result<(Dataset, f64)> {
    let start = Instant::now();
    let data = ingest(&input.input, input.format)?;
    Ok((data, elapsed_ms(start)))
}

pub fn run_synth(a: &SynthArgs) -> Result<()> {
    let spec = match a.mode {
        ModeArg::Uniform => GenSpec::uniform(a.n, a.size_min, a.size_max, a.seed),
        ModeArg::Clustered => {
            GenSpec::clustered(a.n, a.hotspots, a.spread, a.size_min, a.size_max, a.seed)
        }
    };
    let data = generate(&spec)?;
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        make_dir(dir)?;
    }
    write_dataset(&a.out, &data)
}

/// Assigns `data` to `layout`, then writes layout, assignment, report and timing.
fn finish_run(
    out: &Path,
    data: &Dataset,
    layout: &PartitionLayout,
    payload: usize,
    mut timing: Timing,
    workers: usize,
    adjust: impl FnOnce(&mut RunReport),
) -> Result<RunReport> {
    let start = Instant::now();
    let assignment = if workers > 1 {
        parallel_assign(data, layout, workers)?
    } else {
        masj_assign(data, layout)?
    };
    timing.assignment_ms = elapsed_ms(start);
    let q = quality_report(layout, &assignment, data.len())?;
    let mut report = RunReport::new(layout, payload, Quality::new(data.len(), q));
    adjust(&mut report);

    make_dir(out)?;
    write_layout(&out.join("layout.tsv"), layout)?;
    write_assignment(&out.join("assignment.tsv"), &assignment.entries)?;
    write_json(&out.join("report.json"), &report)?;
    write_json(&out.join("timing.json"), &timing)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(report)
}

pub fn run_partition(a: &PartitionArgs) -> Result<()> {
    let (data, load_ms) = load(&a.input)?;
    let b = a.payload.resolve(data.len())?;
    let start = Instant::now();
    let layout = partition(&data, a.algo.algo.with_dim(a.algo.dim), b)?;
    let timing = Timing { load_ms, partition_ms: elapsed_ms(start), ..Timing::default() };
    finish_run(&a.out, &data, &layout, b, timing, 1, |_| {})?;
    Ok(())
}

pub fn run_sample_partition(a: &SampleArgs) -> Result<()> {
    let (data, load_ms) = load(&a.input)?;
    let b = a.payload.resolve(data.len())?;
    let cfg = SamplingConfig::new(a.gamma, a.seed, a.algo.algo.with_dim(a.algo.dim))?;
    let start = Instant::now();
    let layout = sample_partition(&data, &cfg, b)?;
    let timing = Timing { load_ms, partition_ms: elapsed_ms(start), ..Timing::default() };
    finish_run(&a.out, &data, &layout, b, timing, 1, |_| {})?;
    Ok(())
}

pub fn run_parallel_partition(a: &ParallelArgs) -> Result<()> {
    let (data, load_ms) = load(&a.input)?;
    let b = a.payload.resolve(data.len())?;
    let workers = workers_or_default(a.workers)?;
    let mut cfg = ParallelConfig::new(a.algo.algo.with_dim(a.algo.dim), b, a.coarse_payload);
    cfg.anchor_sample_size = a.anchor_sample;
    cfg.seed = a.seed;
    cfg.workers = workers;
    let start = Instant::now();
    let layout = parallel_partition(&data, &cfg)?;
    let timing = Timing { load_ms, partition_ms: elapsed_ms(start), ..Timing::default() };
    let buckets = tilecraft_core::anchors::build_anchors(&data, &cfg)?.bucket_count();
    finish_run(&a.out, &data, &layout, b, timing, workers, |r| r.buckets = Some(buckets))?;
    Ok(())
}

/// One row of `sweep.csv`. Numeric fields are empty for failed cells.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct SweepRow {
    pub fraction: f64,
    pub algorithm: String,
    pub payload: usize,
    pub k: Option<usize>,
    pub stddev: Option<f64>,
    pub lambda: Option<f64>,
    pub partition_ms: Option<f64>,
    pub status: String,
}

fn sweep_cell(data: &Dataset, algo: Algorithm, b: usize) -> Result<(usize, f64, f64, f64)> {
    let start = Instant::now();
    let layout = partition(data, algo, b)?;
    let ms = elapsed_ms(start);
    let assignment = masj_assign(data, &layout)?;
    let q = quality_report(&layout, &assignment, data.len())?;
    Ok((q.k, q.payload_stddev, q.boundary_ratio_lambda, ms))
}

pub fn run_sweep(a: &SweepArgs) -> Result<()> {
    let (data, _) = load(&a.input)?;
    let algos: Vec<Algorithm> = if a.algos.is_empty() {
        Algorithm::ALL.to_vec()
    } else {
        a.algos.iter().map(|x| x.with_dim(a.dim)).collect()
    };
    let fractions =
        if a.fractions.is_empty() { FRACTION_LADDER.to_vec() } else { a.fractions.clone() };

    make_dir(&a.out)?;
    let path = a.out.join("sweep.csv");
    let mut w = csv::Writer::from_path(&path)?;
    let mut failed = 0;
    for &f in &fractions {
        let payload = payload_for_fraction(f, data.len())?;
        for &algo in &algos {
            let mut row = SweepRow {
                fraction: f,
                algorithm: algo.tag().into(),
                payload,
                k: None,
                stddev: None,
                lambda: None,
                partition_ms: None,
                status: "ok".into(),
            };
            match sweep_cell(&data, algo, payload) {
                Ok((k, stddev, lambda, ms)) => {
                    row.k = Some(k);
                    row.stddev = Some(stddev);
                    row.lambda = Some(lambda);
                    row.partition_ms = Some(ms);
                }
                Err(e) => {
                    failed += 1;
                    row.status = format!("error: {e}");
                }
            }
            w.serialize(row)?;
        }
    }
    w.flush().map_err(io_err(&path))?;
    if failed > 0 {
        return Err(Error::Config(format!(
            "{failed} of {} sweep cells failed, see {}",
            fractions.len() * algos.len(),
            path.display()
        )));
    }
    Ok(())
}

pub fn run_join(a: &JoinArgs) -> Result<()> {
    let r = ingest(&a.r, a.format)?;
    let s = ingest(&a.s, a.format)?;
    let workers = workers_or_default(a.workers)?;
    let merged = merged_for_layout(r.objects(), s.objects())?;
    let b = a.payload.resolve(merged.len())?;
    let layout = partition(&merged, a.algo.algo.with_dim(a.algo.dim), b)?;
    let tiles = copartition(r.objects(), s.objects(), &layout)?;
    let result = parallel_tile_join(&tiles, workers)?;
    let oracle_match = a.oracle.then(|| brute_join(r.objects(), s.objects()) == result.pairs);

    make_dir(&a.out)?;
    write_pairs(&a.out.join("pairs.tsv"), &result.pairs)?;
    let summary = JoinSummary {
        algorithm: layout.algorithm.tag().into(),
        payload: b,
        k: layout.len(),
        r_count: r.len(),
        s_count: s.len(),
        pair_count: result.pairs.len(),
        dedup_removed: result.dedup_removed,
        per_tile_pair_counts: result.per_tile_pair_counts,
        oracle_match,
    };
    write_json(&a.out.join("summary.json"), &summary)?;
    if oracle_match == Some(false) {
        return Err(Error::Config("tile join disagrees with the nested-loop oracle".into()));
    }
    Ok(())
}

/// Quality figures from files alone. `n` is the number of distinct object ids
/// in the assignment.
pub fn stats_from_files(layout: &Path, assignment: &Path) -> Result<Quality> {
    let rows = read_layout(layout)?;
    let entries = read_assignment(assignment)?;
    let k = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.id != i {
            return Err(Error::Config(format!(
                "{}: partition ids must be 0..k in order, found {} at row {}",
                layout.display(),
                row.id,
                i + 1
            )));
        }
    }
    let mut payloads = vec![0u64; k];
    for e in &entries {
        let slot = payloads.get_mut(e.partition_id).ok_or_else(|| {
            Error::Config(format!("assignment names partition {} of {k}", e.partition_id))
        })?;
        *slot += 1;
    }
    let n = entries.iter().map(|e| e.object_id).collect::<BTreeSet<_>>().len();
    let build_counts = rows.iter().map(|r| r.build_count).collect();
    let q = report_from_payloads(payloads, build_counts, n)?;
    Ok(Quality::new(n, q))
}

pub fn run_stats(a: &StatsArgs) -> Result<()> {
    let q = stats_from_files(&a.layout, &a.assignment)?;
    match &a.out {
        Some(path) => write_json(path, &q),
        None => {
            let mut out = std::io::stdout().lock();
            serde_json::to_writer_pretty(&mut out, &q)?;
            writeln!(out).map_err(io_err("<stdout>"))
        }
    }
}
