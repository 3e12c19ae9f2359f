// SPDX-License-Identifier: MIT OR Apache-2.0

//! `hmmseg segment` and `hmmseg benchmark`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use hmmseg_core::costs::{precompute_regression_cost, CostMatrix, CostModel, DEFAULT_DELTA};
use hmmseg_core::dp::dp_segment_with;
use hmmseg_core::hmm::{
    hmm_segment, HmmConfig, InitPolicy, DEFAULT_EPSILON, DEFAULT_MAX_ITER, DEFAULT_P, DEFAULT_RESTARTS, DEFAULT_RIDGE,
};
use hmmseg_core::selection::{select_order, Algorithm, SelectionConfig, DEFAULT_ALPHA};
use hmmseg_core::TimeSeries;

use crate::bench::{self, BenchConfig, DEFAULT_LENGTHS, DEFAULT_REPLICATES, DEFAULT_SIGMAS};
use crate::ingest::read_series;
use crate::report::{HmmReport, Report, SelectionSummary};
use crate::{svg, CliError, ExitCode};

/// Largest order tried by `--select-order` when `--K-max` is absent.
pub const DEFAULT_K_MAX: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "hmmseg", version, about = "Segment time series into homogeneous blocks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Segment one series read from a CSV or TSV file.
    Segment(SegmentArgs),
    /// Accuracy and runtime over synthetic five-state series.
    Benchmark(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Hmm,
    Dp,
}

impl AlgoArg {
    fn algorithm(self) -> Algorithm {
        match self {
            AlgoArg::Hmm => Algorithm::Hmm,
            AlgoArg::Dp => Algorithm::Dp,
        }
    }

    fn name(self) -> &'static str {
        match self {
            AlgoArg::Hmm => "hmm",
            AlgoArg::Dp => "dp",
        }
    }
}

/// Accepts `means`, `ar`, `ar(3)`, `ar:3`, `poly`, `poly(2)`, `poly:2`.
/// A bare `ar` or `poly` has order 1.
pub fn parse_cost(s: &str) -> Result<CostModel, String> {
    let s = s.trim().to_ascii_lowercase();
    if s == "means" {
        return Ok(CostModel::Means);
    }
    let (name, rest) = s.split_at(s.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(s.len()));
    let rest = rest.trim_start_matches([':', '(']).trim_end_matches(')');
    let order = if rest.is_empty() {
        1
    } else {
        rest.parse::<usize>().map_err(|_| format!("bad order in `{s}`"))?
    };
    match name {
        "ar" if order >= 1 => Ok(CostModel::Ar { order }),
        "ar" => Err("AR order must be at least 1".into()),
        "poly" => Ok(CostModel::Poly { degree: order }),
        _ => Err(format!("unknown cost model `{s}`; expected means, ar(L) or poly(L)")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct SegmentArgs {
    /// CSV or TSV input.
    pub input: PathBuf,
    /// One-based column holding the values.
    #[arg(long, default_value_t = 1)]
    pub value_column: usize,
    /// One-based column holding integer labels such as years.
    #[arg(long)]
    pub label_column: Option<usize>,
    #[arg(long, value_enum, default_value_t = AlgoArg::Hmm)]
    pub algo: AlgoArg,
    /// means, ar(L) or poly(L).
    #[arg(long, default_value = "means", value_parser = parse_cost)]
    pub cost: CostModel,
    /// Number of segments.
    #[arg(long = "K", conflicts_with = "select_order")]
    pub k: Option<usize>,
    /// Largest order tried with --select-order [default: min(10, T)].
    #[arg(long = "K-max")]
    pub k_max: Option<usize>,
    /// Choose the number of segments by significance testing.
    #[arg(long)]
    pub select_order: bool,
    /// HMM self-transition probability.
    #[arg(long, default_value_t = DEFAULT_P)]
    pub p: f64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// HMM stopping tolerance on the log-likelihood.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// HMM starts: the equal split, then seeded random splits.
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Shortest block the dynamic program may use.
    #[arg(long)]
    pub min_seg_len: Option<usize>,
    /// RLS seed for regression cost tables.
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    pub delta: f64,
    /// Write an SVG overlay here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Write the JSON report here instead of to standard output.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the cost table d(s,t) as tab-separated rows, one per t.
    #[arg(long)]
    pub dump_cost_matrix: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Expected series lengths.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_LENGTHS.to_vec())]
    pub lengths: Vec<f64>,
    /// Noise levels.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIGMAS.to_vec())]
    pub sigmas: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    pub replicates: usize,
    #[arg(long, value_enum, default_value_t = AlgoArg::Hmm)]
    pub algo: AlgoArg,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    pub restarts: usize,
    #[arg(long, default_value_t = DEFAULT_P)]
    pub p: f64,
    /// Write the CSV here and print text tables to standard output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Report every time as 0 so output depends only on the seed.
    #[arg(long)]
    pub no_timing: bool,
}

impl SegmentArgs {
    fn init(&self) -> InitPolicy {
        InitPolicy::Random {
            restarts: self.restarts,
            seed: self.seed,
        }
    }

    fn hmm_config(&self, order: usize) -> HmmConfig {
        HmmConfig {
            p: self.p,
            epsilon: self.epsilon,
            max_iter: self.max_iter,
            init: self.init(),
            model: self.cost,
            ..HmmConfig::new(order)
        }
    }

    fn costs(&self, x: &TimeSeries) -> Result<CostMatrix, CliError> {
        Ok(precompute_regression_cost(x, self.cost, self.delta)?)
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Runs one segmentation and writes the requested side outputs.
pub fn cmd_segment(args: &SegmentArgs) -> Result<Report, CliError> {
    let x = read_series(&args.input, args.value_column, args.label_column)?;
    let mut costs = None;

    let report = if args.select_order {
        let k_max = args.k_max.unwrap_or(DEFAULT_K_MAX.min(x.len()));
        let config = SelectionConfig {
            alpha: args.alpha,
            p: args.p,
            epsilon: args.epsilon,
            max_iter: args.max_iter,
            init: args.init(),
            delta: args.delta,
            min_seg_len: args.min_seg_len,
            ..SelectionConfig::new(args.algo.algorithm(), args.cost, k_max)
        };
        let sel = select_order(&x, &config)?;
        let mut report = Report::new(args.algo.name(), &x, &sel.segmentation, args.cost, DEFAULT_RIDGE)?;
        report.selection = Some(SelectionSummary::new(&sel, args.alpha, k_max));
        if args.algo == AlgoArg::Hmm && sel.chosen >= 2 {
            let config = args.hmm_config(sel.chosen);
            let run = hmm_segment(&x, &config)?;
            report.hmm = Some(HmmReport::new(&run, &config));
        }
        report
    } else {
        let k = args
            .k
            .ok_or_else(|| CliError::Usage("either --K or --select-order is required".into()))?;
        match args.algo {
            AlgoArg::Hmm => {
                let config = args.hmm_config(k);
                let run = hmm_segment(&x, &config)?;
                let mut report = Report::new("hmm", &x, &run.segmentation, args.cost, DEFAULT_RIDGE)?;
                report.hmm = Some(HmmReport::new(&run, &config));
                report
            }
            AlgoArg::Dp => {
                let table = costs.insert(args.costs(&x)?);
                let min_len = args.min_seg_len.unwrap_or(args.cost.default_min_seg_len());
                let mut sols = dp_segment_with(&mut &*table, k, min_len)?;
                let best = sols.pop().expect("k ≥ 1");
                Report::new("dp", &x, &best.segmentation, args.cost, DEFAULT_RIDGE)?
            }
        }
    };

    if let Some(path) = &args.dump_cost_matrix {
        let table = match costs {
            Some(t) => t,
            None => args.costs(&x)?,
        };
        let mut tsv = String::new();
        table.write_tsv(&mut tsv).expect("writing to a String cannot fail");
        write_file(path, tsv.as_bytes())?;
    }
    if let Some(path) = &args.svg {
        write_file(path, svg::render(&x, &report.segmentation()?)?.as_bytes())?;
    }
    if let Some(path) = &args.json {
        write_file(path, report.to_json()?.as_bytes())?;
    }
    Ok(report)
}

/// Runs the benchmark and returns the CSV and the text tables.
pub fn cmd_benchmark(args: &BenchArgs) -> Result<(String, String), CliError> {
    let config = BenchConfig {
        lengths: args.lengths.clone(),
        sigmas: args.sigmas.clone(),
        replicates: args.replicates,
        algorithm: args.algo.algorithm(),
        seed: args.seed,
        restarts: args.restarts,
        p: args.p,
        timing: !args.no_timing,
    };
    let table = bench::run_benchmark(&config)?;
    let mut buf = Vec::new();
    bench::write_csv(&table, &mut buf)?;
    let csv = String::from_utf8(buf).expect("CSV output is ASCII");
    if let Some(path) = &args.csv {
        write_file(path, csv.as_bytes())?;
    }
    Ok((csv, bench::text_tables(&table)))
}

fn summary(report: &Report) -> String {
    let mut s = format!(
        "{} {}: K = {}, change points {:?}, cost {}\n",
        report.algorithm, report.cost_model, report.order, report.change_points, report.cost
    );
    if let Some(labels) = &report.change_point_labels {
        s.push_str(&format!("labels {labels:?}\n"));
    }
    s
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let stdout = |out: &mut dyn Write, s: &str| out.write_all(s.as_bytes()).map_err(|e| CliError::io("<stdout>", e));
    match &cli.command {
        Command::Segment(args) => {
            let report = cmd_segment(args)?;
            if args.json.is_some() {
                stdout(out, &summary(&report))
            } else {
                stdout(out, &report.to_json()?)
            }
        }
        Command::Benchmark(args) => {
            let (csv, text) = cmd_benchmark(args)?;
            if args.csv.is_some() {
                stdout(out, &text)
            } else {
                stdout(out, &csv)
            }
        }
    }
}

/// Parses `args`, runs the command and returns the exit status. Messages go
/// to standard error.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::Usage } else { ExitCode::Success };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(()) => ExitCode::Success,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
