use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use knotgroup::fpgroup::{format_invariant, invariant_in, DEFAULT_BUDGET};
use knotgroup::knots::{embed_complement, parse_grid, parse_knot_table};
use knotgroup::lattice::{LookupTable, RedundancyOracle};
use knotgroup::pipeline::{
    classify, csv_report, fund_group_best, jsonl_report, summary_table, ClassifyOptions, FundGroupOptions,
    FundGroupReport, DEFAULT_PAD,
};
use knotgroup::{CellOrder, CubicalComplex, GroupPresentation};

const EXIT_UNRESOLVED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "knotgroup", version, about = "Fundamental groups of cubical complexes and knot complements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Presentation of the fundamental group of a complex or a grid diagram's complement.
    Fundgroup {
        file: PathBuf,
        #[command(flatten)]
        ordering: OrderingArgs,
        /// Print the presentation as JSON.
        #[arg(long)]
        json: bool,
        /// Also print the presentation before Tietze simplification and reduction sizes.
        #[arg(long)]
        verbose: bool,
    },
    /// The invariant I^n of a presentation, complex or grid diagram.
    Invariant {
        file: PathBuf,
        #[arg(long = "n")]
        n: usize,
        #[command(flatten)]
        ordering: OrderingArgs,
        /// Print the value as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Classify a table of named grid diagrams by I^2, I^3, ...
    Classify {
        table: PathBuf,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        n_start: usize,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Directory for cached invariant values.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Directory receiving results.jsonl, report.csv and summary.txt.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Redundancy lookup table for all neighbour masks.
    #[command(subcommand)]
    LookupTable(TableCommand),
    /// Cubical complement of a grid diagram, as `x y z` lines.
    Embed {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PAD)]
        pad: usize,
        #[arg(long)]
        transpose: bool,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TableCommand {
    /// Compute every entry and write the table file.
    Build { out: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Ordering {
    Lex,
    Revlex,
    Random,
}

#[derive(Args)]
struct OrderingArgs {
    #[arg(long, value_enum, default_value = "lex")]
    ordering: Ordering,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Keep the first ordering's result even when it has many generators.
    #[arg(long)]
    no_retry: bool,
}

impl OrderingArgs {
    fn options(&self) -> FundGroupOptions {
        let order = match self.ordering {
            Ordering::Lex => CellOrder::Lexicographic,
            Ordering::Revlex => CellOrder::ReverseLexicographic,
            Ordering::Random => CellOrder::Random { seed: self.seed },
        };
        FundGroupOptions { order, seed: self.seed, retry: !self.no_retry, budget: DEFAULT_BUDGET, ..Default::default() }
    }
}

/// Failure with the exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_INPUT, error: error.into() }
    }
}

impl From<knotgroup::Error> for Failure {
    fn from(e: knotgroup::Error) -> Self {
        use knotgroup::Error::*;
        let code = match e {
            Parse { .. } | Grid(_) | Io(_) | Json(_) | Embedding(_) | Disconnected(_) | EmptyComplex | LookupTable(_) => {
                EXIT_INPUT
            }
            _ => 1,
        };
        Failure { code, error: e.into() }
    }
}

type Outcome = Result<ExitCode, Failure>;

enum Input {
    Presentation(GroupPresentation),
    Complex(CubicalComplex),
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::input)
}

fn load(path: &Path, pad: usize) -> Result<Input, Failure> {
    let text = read(path)?;
    let body = text.lines().map(|l| l.split('#').next().unwrap()).collect::<Vec<_>>().join("\n");
    let trimmed = body.trim_start();
    let ctx = |e: knotgroup::Error| {
        let f = Failure::from(e);
        Failure { code: f.code, error: f.error.context(path.display().to_string()) }
    };
    match trimmed.chars().next() {
        Some('<') => Ok(Input::Presentation(GroupPresentation::parse(trimmed).map_err(ctx)?)),
        Some('{') => Ok(Input::Presentation(GroupPresentation::from_json(trimmed).map_err(ctx)?)),
        Some('[') => {
            let d = parse_grid(trimmed).map_err(|e| ctx(e.into()))?;
            Ok(Input::Complex(embed_complement(&d, pad).map_err(ctx)?.complement))
        }
        _ => Ok(Input::Complex(CubicalComplex::from_text(&text).map_err(ctx)?)),
    }
}

fn group(path: &Path, ordering: &OrderingArgs) -> Result<(Option<FundGroupReport>, GroupPresentation), Failure> {
    match load(path, DEFAULT_PAD)? {
        Input::Presentation(p) => Ok((None, p)),
        Input::Complex(k) => {
            let r = fund_group_best(&k, &ordering.options())?;
            let p = r.simplified.clone();
            Ok((Some(r), p))
        }
    }
}

fn fundgroup(file: &Path, ordering: &OrderingArgs, json: bool, verbose: bool) -> Outcome {
    let (report, p) = group(file, ordering)?;
    if verbose {
        if let Some(r) = &report {
            eprintln!("ordering: {}", r.order.name());
            eprintln!("stats: {:?}", r.stats);
            eprintln!("raw: {}", r.raw);
        }
    }
    if json {
        println!("{}", p.to_json());
    } else {
        println!("{p}");
    }
    Ok(ExitCode::SUCCESS)
}

fn invariant(file: &Path, n: usize, ordering: &OrderingArgs, json: bool) -> Outcome {
    if n == 0 {
        return Err(Failure::input(anyhow!("--n must be at least 1")));
    }
    let (_, p) = group(file, ordering)?;
    let value = invariant_in(&p, n);
    if json {
        let groups: Vec<String> = value.iter().map(|g| g.to_json()).collect();
        println!("[{}]", groups.join(","));
    } else {
        println!("{}", format_invariant(&value));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_classify(
    table: &Path,
    n_start: usize,
    n_max: usize,
    jobs: usize,
    cache: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Outcome {
    if n_start == 0 || n_start > n_max {
        return Err(Failure::input(anyhow!("need 1 <= --n-start <= --n-max")));
    }
    let knots = parse_knot_table(&read(table)?).map_err(Failure::from)?;
    if knots.is_empty() {
        return Err(Failure::input(anyhow!("{} lists no knots", table.display())));
    }
    let options = ClassifyOptions { n_start, n_max, jobs, cache, ..Default::default() };
    let record = classify(&knots, &options)?;
    if let Some(dir) = out {
        let write = |name: &str, body: String| -> Result<(), Failure> {
            let path = dir.join(name);
            fs::write(&path, body).with_context(|| format!("writing {}", path.display())).map_err(Failure::input)
        };
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display())).map_err(Failure::input)?;
        write("results.jsonl", jsonl_report(&record))?;
        write("report.csv", csv_report(&record))?;
        write("summary.txt", summary_table(&record))?;
    }
    print!("{}", summary_table(&record));
    if record.is_complete() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_UNRESOLVED))
    }
}

fn build_table(out: &Path) -> Outcome {
    let table = LookupTable::build(RedundancyOracle::global());
    table.save(out)?;
    eprintln!("{} redundant masks written to {}", table.count_redundant(), out.display());
    Ok(ExitCode::SUCCESS)
}

fn embed(file: &Path, pad: usize, transpose: bool, output: Option<PathBuf>) -> Outcome {
    let text = read(file)?;
    let mut d = parse_grid(&text).map_err(|e| Failure::from(knotgroup::Error::from(e)))?;
    if transpose {
        d = d.transpose();
    }
    let e = embed_complement(&d, pad)?;
    let dump = e.complement_text();
    match output {
        Some(path) => fs::write(&path, dump).with_context(|| format!("writing {}", path.display())).map_err(Failure::input)?,
        None => print!("{dump}"),
    }
    eprintln!("knot: {} cubes, complement: {} cubes", e.knot.len(), e.complement.len());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Fundgroup { file, ordering, json, verbose } => fundgroup(&file, &ordering, json, verbose),
        Command::Invariant { file, n, ordering, json } => invariant(&file, n, &ordering, json),
        Command::Classify { table, n_max, n_start, jobs, cache, out } => {
            run_classify(&table, n_start, n_max, jobs, cache, out)
        }
        Command::LookupTable(TableCommand::Build { out }) => build_table(&out),
        Command::Embed { file, pad, transpose, output } => embed(&file, pad, transpose, output),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
