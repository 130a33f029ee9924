//! `mqlearn` command line: generate instances, run learners against
//! them with strict query accounting, run benchmark matrices, and build
//! or verify cover-free families.
//!
//! Exit codes: 0 success, 1 learner failure (including exhausted query
//! budgets), 2 usage or input errors, 3 resource/limit errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use mqlearn::io::{load_json, save_json, CffDoc, InstanceDoc, PairDoc, ReportDoc};
use mqlearn::{
    adversarial_pair, adversarial_pair_lower_bound, bound_values, random_instance, run_learner,
    Algorithm, CffMode, CffSource, Error, LearnerConfig, Result, DEFAULT_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "mqlearn",
    version,
    about = "Exact learning of monotone DNF from membership queries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance, or a hard instance pair with --hard.
    Gen(GenArgs),
    /// Run one learner against an instance file and write a run report.
    Learn(LearnArgs),
    /// Run a benchmark matrix and write one CSV row per cell.
    Bench(BenchArgs),
    /// Build or verify cover-free families.
    Cff {
        #[command(subcommand)]
        command: CffCommand,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Number of variables.
    #[arg(long)]
    n: Option<usize>,
    /// Number of terms.
    #[arg(long)]
    s: Option<usize>,
    /// Maximum term size.
    #[arg(long)]
    r: Option<usize>,
    /// Generate a hard (f, g) pair instead of a single instance.
    #[arg(long)]
    hard: bool,
    /// Hard pair: number of block variables.
    #[arg(long)]
    ell: Option<usize>,
    /// Hard pair: block size.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LearnArgs {
    /// Algorithm index 1-5.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    alg: u8,
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    s_max: usize,
    #[arg(long)]
    r_max: usize,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = CffModeArg::Exhaustive)]
    cff_mode: CffModeArg,
    /// Hard query budget; exceeding it fails the run.
    #[arg(long)]
    budget: Option<u64>,
    /// Accept unsorted or unreduced term lists and normalize them.
    #[arg(long)]
    raw: bool,
    /// Record wall time in the report (off by default so reruns are
    /// byte-identical).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    suite: PathBuf,
    #[arg(long)]
    csv: PathBuf,
}

#[derive(Subcommand)]
enum CffCommand {
    /// Construct a family and write it to a file.
    Build {
        #[arg(long)]
        ground_n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = CffModeArg::Exhaustive)]
        mode: CffModeArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-verify a family file and print the verdict.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CffModeArg {
    Exhaustive,
    Greedy,
    RandomVerified,
    Random,
}

impl From<CffModeArg> for CffMode {
    fn from(mode: CffModeArg) -> CffMode {
        match mode {
            CffModeArg::Exhaustive => CffMode::Exhaustive,
            CffModeArg::Greedy => CffMode::Greedy,
            CffModeArg::RandomVerified => CffMode::RandomVerified,
            CffModeArg::Random => CffMode::Random,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::LimitExceeded { .. } => 3,
        Error::BudgetExhausted { .. } => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Learn(args) => learn(args),
        Command::Bench(args) => bench(args),
        Command::Cff { command } => cff(command),
    }
}

fn gen(args: GenArgs) -> Result<ExitCode> {
    if args.hard {
        let (ell, t) = match (args.ell, args.t) {
            (Some(ell), Some(t)) => (ell, t),
            _ => return Err(Error::Infeasible("--hard requires --ell and --t".into())),
        };
        let pair = adversarial_pair(ell, t, args.seed)?;
        save_json(&args.out, &PairDoc::from_pair(&pair, Some(args.seed)))?;
        println!(
            "pair ell={ell} t={t} seed={} -> {} (f: {} terms, g: {} terms, reference {} queries)",
            args.seed,
            args.out.display(),
            pair.f.term_count(),
            pair.g.term_count(),
            adversarial_pair_lower_bound(ell, t),
        );
    } else {
        let (n, s, r) = match (args.n, args.s, args.r) {
            (Some(n), Some(s), Some(r)) => (n, s, r),
            _ => {
                return Err(Error::Infeasible(
                    "instance generation requires --n, --s and --r (or use --hard)".into(),
                ))
            }
        };
        let instance = random_instance(n, s, r, args.seed)?;
        save_json(&args.out, &InstanceDoc::seeded(&instance, args.seed))?;
        println!(
            "instance n={n} s={s} r={r} seed={} -> {} ({instance})",
            args.seed,
            args.out.display(),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn learn(args: LearnArgs) -> Result<ExitCode> {
    let doc: InstanceDoc = load_json(&args.instance)?;
    let target = doc.to_mdnf(args.raw)?;
    let algorithm = Algorithm::from_index(args.alg).expect("clap keeps the index in 1..=5");
    let config = LearnerConfig {
        algorithm,
        s_max: args.s_max,
        r_max: args.r_max,
        delta: args.delta,
        seed: args.seed,
        cff_mode: args.cff_mode.into(),
        budget: args.budget,
    };
    let mut report = run_learner(&target, &config)?;
    if !args.timing {
        report.elapsed_ms = 0;
    }
    save_json(&args.report, &ReportDoc::from_report(&report))?;
    println!(
        "learn alg={} n={} queries={} dedup={} terms={} success={} -> {}",
        args.alg,
        report.n,
        report.queries,
        report.queries_dedup,
        report.terms_found,
        report.success,
        args.report.display(),
    );
    Ok(if report.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Benchmark matrix: every combination of the listed parameters, in
/// listing order (n, then s, r, algorithm, seed, repetition). Each cell
/// generates its instance and learner seed from `seed + repetition`.
#[derive(serde::Deserialize)]
struct Suite {
    n: Vec<usize>,
    s: Vec<usize>,
    r: Vec<usize>,
    algorithms: Vec<u8>,
    seeds: Vec<u64>,
    #[serde(default = "one")]
    repetitions: u64,
    #[serde(default = "default_delta")]
    delta: f64,
    #[serde(default = "default_mode")]
    cff_mode: CffMode,
    #[serde(default)]
    budget: Option<u64>,
}

fn one() -> u64 {
    1
}

fn default_delta() -> f64 {
    0.1
}

fn default_mode() -> CffMode {
    CffMode::Exhaustive
}

struct Cell {
    alg: u8,
    n: usize,
    s: usize,
    r: usize,
    seed: u64,
}

const CSV_HEADER: [&str; 11] = [
    "alg",
    "n",
    "s",
    "r",
    "seed",
    "queries",
    "queries_dedup",
    "success",
    "bound_info",
    "bound_lower",
    "bound_alg_ref",
];

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let suite: Suite = load_json(&args.suite)?;
    let mut cells = Vec::new();
    for &n in &suite.n {
        for &s in &suite.s {
            for &r in &suite.r {
                for &alg in &suite.algorithms {
                    if Algorithm::from_index(alg).is_none() {
                        return Err(Error::InvalidDocument(format!(
                            "unknown algorithm index {alg} in suite"
                        )));
                    }
                    for &seed in &suite.seeds {
                        for rep in 0..suite.repetitions {
                            cells.push(Cell {
                                alg,
                                n,
                                s,
                                r,
                                seed: seed.wrapping_add(rep),
                            });
                        }
                    }
                }
            }
        }
    }
    // cells run independently; assembly keeps the matrix order
    let rows: Result<Vec<Vec<String>>> = cells
        .par_iter()
        .map(|cell| bench_cell(cell, &suite))
        .collect();
    let rows = rows?;
    let mut writer =
        csv::Writer::from_path(&args.csv).map_err(|e| Error::InvalidDocument(e.to_string()))?;
    writer
        .write_record(CSV_HEADER)
        .map_err(|e| Error::InvalidDocument(e.to_string()))?;
    for row in &rows {
        writer
            .write_record(row)
            .map_err(|e| Error::InvalidDocument(e.to_string()))?;
    }
    writer
        .flush()
        .map_err(|e| Error::InvalidDocument(e.to_string()))?;
    println!("bench {} cells -> {}", rows.len(), args.csv.display());
    Ok(ExitCode::SUCCESS)
}

fn bench_cell(cell: &Cell, suite: &Suite) -> Result<Vec<String>> {
    let target = random_instance(cell.n, cell.s, cell.r, cell.seed)?;
    let algorithm = Algorithm::from_index(cell.alg).expect("validated above");
    let config = LearnerConfig {
        algorithm,
        s_max: cell.s,
        r_max: cell.r,
        delta: suite.delta,
        seed: cell.seed,
        cff_mode: suite.cff_mode,
        budget: suite.budget,
    };
    let report = run_learner(&target, &config)?;
    let bounds = bound_values(cell.n, cell.s.max(1), cell.r.max(1));
    let bound_lower = bounds
        .lower_r_le_s
        .or(bounds.lower_r_gt_s)
        .expect("exactly one regime applies");
    let bound_alg_ref = if cell.alg <= 3 {
        bounds.exhaustive_upper
    } else {
        bounds.frequent_upper
    };
    Ok(vec![
        cell.alg.to_string(),
        cell.n.to_string(),
        cell.s.to_string(),
        cell.r.to_string(),
        cell.seed.to_string(),
        report.queries.to_string(),
        report.queries_dedup.to_string(),
        report.success.to_string(),
        bounds.info_lower.to_string(),
        bound_lower.to_string(),
        bound_alg_ref.to_string(),
    ])
}

fn cff(command: CffCommand) -> Result<ExitCode> {
    match command {
        CffCommand::Build {
            ground_n,
            s,
            r,
            delta,
            seed,
            mode,
            out,
        } => {
            let cff_mode: CffMode = mode.into();
            let family = CffSource::new(cff_mode, delta, seed).family(ground_n, s, r)?;
            let seed_meta =
                matches!(cff_mode, CffMode::Random | CffMode::RandomVerified).then_some(seed);
            save_json(&out, &CffDoc::from_family(&family, seed_meta))?;
            println!(
                "cff ground_n={ground_n} s={s} r={r} mode={cff_mode} rows={} verified={} -> {}",
                family.len(),
                family.is_verified(),
                out.display(),
            );
            Ok(ExitCode::SUCCESS)
        }
        CffCommand::Verify { input } => {
            let doc: CffDoc = load_json(&input)?;
            let mut family = doc.to_family()?;
            match family.verify(DEFAULT_LIMIT)? {
                None => {
                    println!(
                        "PASS: {} rows cover all ({},({},{})) splits",
                        family.len(),
                        family.ground_n(),
                        family.s(),
                        family.r(),
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Some(violation) => {
                    let positions: Vec<usize> =
                        violation.positions.iter().map(|p| p + 1).collect();
                    let zero_set: Vec<usize> = violation.zero_set.iter().map(|p| p + 1).collect();
                    println!(
                        "FAIL: no row is 0 on {zero_set:?} and 1 on the rest of {positions:?} (1-indexed)"
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}
