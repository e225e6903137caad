//! `leaper`: build, verify, search and draw leaper tours.

mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use leaper_core::assembly::{tour_4pq, tour_4pq_with_joint, tour_even_board, FileProvider, OracleProvider, BlockProvider};
use leaper_core::loom::build_loom;
use leaper_core::oracle::{
    check_pair, check_pairs, hamiltonicity_record, search_mu_div, search_mu_pi, search_mu_var, Check, CheckStatus, MuValue, SearchBudget,
    SearchResult, SweepRecord, SweepStore,
};
use leaper_core::projection::projection_tour;
use leaper_core::scarf::build_scarf;
use leaper_core::tourfile::{TourBody, TourFile, Verification};
use leaper_core::{CoprimePair, Error, Interval, LeaperParams};

#[derive(Parser)]
#[command(name = "leaper", version, about = "Closed tours of skew free leapers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a tour or pseudotour and write it as a tour file.
    Construct {
        #[command(subcommand)]
        what: Construct,
        /// Output path; standard output when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check a tour file. Exit 0 only for a tour.
    Verify { file: PathBuf },
    /// Measure a projection graph threshold by exhaustive search.
    Search {
        quantity: Quantity,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        max_n: i64,
        /// Print the full result as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Compare exhaustive search with predicted values for every pair up to a sum.
    Check {
        check: Check,
        #[arg(long)]
        max_sum: i64,
        /// Largest loom order for `lstar`.
        #[arg(long, default_value_t = 3)]
        max_k: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Decide Hamiltonicity of every projection graph up to a pair sum and size.
    Sweep {
        #[arg(long)]
        max_sum: i64,
        #[arg(long)]
        max_n: i64,
        /// Record file; finished items in it are skipped.
        #[arg(long)]
        resume: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Draw a tour file.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
}

#[derive(Args, Clone, Copy)]
struct Pq {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
}

#[derive(Subcommand)]
enum Construct {
    /// Tour of the projection graph on `[0; n - 1]`.
    Projection {
        #[command(flatten)]
        pq: Pq,
        #[arg(long)]
        n: i64,
    },
    /// Tour of the board of the given height and width `4pq`.
    Board {
        #[command(flatten)]
        pq: Pq,
        #[arg(long)]
        height: i64,
        /// Require a universal joint.
        #[arg(long)]
        joint: bool,
    },
    /// Tour of an even by even board.
    Even {
        #[command(flatten)]
        pq: Pq,
        #[arg(long)]
        height: i64,
        #[arg(long)]
        width: i64,
        /// Directory of block tour files; the built-in knight blocks otherwise.
        #[arg(long)]
        blocks: Option<PathBuf>,
    },
    /// The loom of order `k`, a pseudotour of the projection graph.
    Loom {
        #[command(flatten)]
        pq: Pq,
        #[arg(long, default_value_t = 1)]
        k: i64,
    },
    /// The scarf of the order-`k` loom and a projection tour of the given height.
    Scarf {
        #[command(flatten)]
        pq: Pq,
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long)]
        height: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    MuDiv,
    MuVar,
    MuPi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Svg,
    Ascii,
}

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BELOW_THRESHOLD: u8 = 3;
const EXIT_NO_PROVIDER: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Param(_) | Error::ParityViolation { .. } | Error::EmptyInterval { .. } => EXIT_INVALID,
        Error::BelowThreshold { .. } | Error::Unpartitionable { .. } => EXIT_BELOW_THRESHOLD,
        Error::ProviderUnavailable(..) => EXIT_NO_PROVIDER,
        _ => EXIT_FAILURE,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Construct { what, out } => construct(what, out),
        Command::Verify { file } => verify(&file),
        Command::Search { quantity, a, b, max_n, json } => search(quantity, a, b, max_n, json),
        Command::Check { check, max_sum, max_k, jobs } => run_check(check, max_sum, max_k, jobs),
        Command::Sweep { max_sum, max_n, resume, jobs } => sweep(max_sum, max_n, resume, jobs),
        Command::Render { file, format } => render_file(&file, format),
    }
}

fn build(what: Construct) -> leaper_core::Result<(TourFile, bool)> {
    let leaper = |pq: Pq| LeaperParams::new(pq.p, pq.q).map_err(Error::from);
    Ok(match what {
        Construct::Projection { pq, n } => {
            let pair = CoprimePair::new(pq.p, pq.q)?;
            let t = projection_tour(pair, n)?;
            (TourFile::from_projection(&t, vec![format!("projection tour of size {n}")]), true)
        }
        Construct::Board { pq, height, joint } => {
            let l = leaper(pq)?;
            let t = if joint { tour_4pq_with_joint(l, height)? } else { tour_4pq(l, height)? };
            (TourFile::from_board(&t), true)
        }
        Construct::Even { pq, height, width, blocks } => {
            let l = leaper(pq)?;
            let provider: Box<dyn BlockProvider> = match blocks {
                Some(dir) => Box::new(FileProvider::new(dir)),
                None => Box::new(OracleProvider::new()),
            };
            let t = tour_even_board(l, height, width, provider.as_ref())?;
            (TourFile::from_board(&t), true)
        }
        Construct::Loom { pq, k } => {
            let loom = build_loom(leaper(pq)?, k)?;
            let note = format!("loom of order {k}, {} cycle(s)", loom.cycles().len());
            (TourFile::from_projection_edges(leaper(pq)?.pair(), loom.interval(), &loom.edges(), vec![note]), false)
        }
        Construct::Scarf { pq, k, height } => {
            let l = leaper(pq)?;
            let loom = build_loom(l, k)?;
            let pattern = projection_tour(l.pair(), height)?;
            let scarf = build_scarf(&loom, Interval::of_size(height)?, pattern.edges())?;
            let note = format!("scarf of the order-{k} loom, {} cycle(s)", scarf.cycles().len());
            (TourFile::from_board_edges(l, height, loom.interval().len(), scarf.edges(), vec![note]), false)
        }
    })
}

fn construct(what: Construct, out: Option<PathBuf>) -> ExitCode {
    let (file, must_tour) = match build(what) {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    match file.verify() {
        Verification::Tour { vertices } => eprintln!("verified: tour, {vertices} {}", unit(&file)),
        Verification::Pseudotour { cycles } if !must_tour => eprintln!("verified: pseudotour, {cycles} cycles"),
        v => {
            eprintln!("error: construction failed verification: {v:?}");
            return ExitCode::from(EXIT_FAILURE);
        }
    }
    write_output(&file.to_json(), out)
}

fn write_output(text: &str, out: Option<PathBuf>) -> ExitCode {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_FAILURE);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn read_file(path: &PathBuf) -> Result<TourFile, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_INVALID)
    })?;
    TourFile::parse(&text).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_INVALID)
    })
}

fn unit(file: &TourFile) -> &'static str {
    if matches!(file.body, TourBody::Board { .. }) {
        "cells"
    } else {
        "vertices"
    }
}

fn verify(path: &PathBuf) -> ExitCode {
    let file = match read_file(path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let unit = unit(&file);
    match file.verify() {
        Verification::Tour { vertices } => {
            println!("tour, {vertices} {unit}");
            ExitCode::SUCCESS
        }
        Verification::Pseudotour { cycles } => {
            println!("pseudotour, {cycles} cycles");
            ExitCode::from(EXIT_FAILURE)
        }
        Verification::Invalid(e) => {
            let name = format!("{e:?}");
            let name = name.split([' ', '(', '{']).next().unwrap_or("").to_string();
            println!("invalid({name}): {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn value_text(v: MuValue) -> String {
    match v {
        MuValue::Exact(n) => n.to_string(),
        MuValue::Unknown { above } => format!("Unknown(>{above})"),
        MuValue::Bounds { lo, hi } if hi == i64::MAX => format!(">= {lo}"),
        MuValue::Bounds { lo, hi } => format!("[{lo}, {hi}]"),
    }
}

fn search(quantity: Quantity, a: i64, b: i64, max_n: i64, json: bool) -> ExitCode {
    let pair = match CoprimePair::new(a, b) {
        Ok(p) => p,
        Err(e) => return fail(&e.into()),
    };
    let budget = SearchBudget::from_env();
    let r: SearchResult = match quantity {
        Quantity::MuDiv => search_mu_div(pair, max_n, budget),
        Quantity::MuVar => search_mu_var(pair, max_n, budget),
        Quantity::MuPi => search_mu_pi(pair, max_n, budget),
    };
    let incomplete = r.certificates.iter().any(|c| c.verdict == "indeterminate");
    if json {
        println!("{}", serde_json::to_string_pretty(&r).expect("results serialise"));
    } else {
        println!("{:?} for {pair}, n <= {max_n}: {}", r.quantity, value_text(r.value));
        if let Some(note) = &r.note {
            println!("note: {note}");
        }
        println!("{:>5}  {:<13} {:>12}", "n", "verdict", "nodes");
        for c in &r.certificates {
            println!("{:>5}  {:<13} {:>12}", c.n, c.verdict, c.nodes);
        }
    }
    if incomplete {
        eprintln!("warning: search budget exhausted; some rows are indeterminate");
    }
    ExitCode::SUCCESS
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}

fn run_check(check: Check, max_sum: i64, max_k: i64, jobs: usize) -> ExitCode {
    let budget = SearchBudget::from_env();
    let pairs = check_pairs(check, max_sum);
    let rows: Vec<_> = pool(jobs).install(|| pairs.par_iter().map(|&p| check_pair(check, p, max_k, budget)).collect());
    for r in &rows {
        println!("{}", r.line());
    }
    let count = |s: CheckStatus| rows.iter().filter(|r| r.status == s).count();
    println!(
        "{check}: {} pairs, {} confirmed, {} refuted, {} unknown",
        rows.len(),
        count(CheckStatus::Confirmed),
        count(CheckStatus::Refuted),
        count(CheckStatus::Unknown)
    );
    if count(CheckStatus::Unknown) > 0 {
        eprintln!("warning: search budget exhausted; some rows are unknown");
    }
    if count(CheckStatus::Refuted) > 0 {
        ExitCode::from(EXIT_FAILURE)
    } else {
        ExitCode::SUCCESS
    }
}

fn sweep(max_sum: i64, max_n: i64, resume: PathBuf, jobs: usize) -> ExitCode {
    let store = SweepStore::open(&resume);
    let done = match store.done() {
        Ok(d) => d,
        Err(e) => return fail(&e),
    };
    let budget = SearchBudget::from_env();
    let items: Vec<(CoprimePair, i64)> = CoprimePair::all_up_to_sum(max_sum)
        .into_iter()
        .flat_map(|p| (1..=max_n).map(move |n| (p, n)))
        .filter(|(p, n)| !done.contains(&(p.a(), p.b(), *n)))
        .collect();
    eprintln!("{} items finished earlier, {} to run", done.len(), items.len());
    let writer = Mutex::new(&store);
    let failed: Vec<String> = pool(jobs).install(|| {
        items
            .par_iter()
            .filter_map(|&(p, n)| {
                let rec = hamiltonicity_record(p, n, budget);
                writer.lock().expect("store lock").append(&rec).err().map(|e| e.to_string())
            })
            .collect()
    });
    if let Some(e) = failed.first() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_FAILURE);
    }
    let records = match store.load() {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let mut by_pair: BTreeMap<(i64, i64), BTreeMap<i64, SweepRecord>> = BTreeMap::new();
    for r in records {
        if r.pair.0 + r.pair.1 <= max_sum && r.n <= max_n {
            by_pair.entry(r.pair).or_default().insert(r.n, r);
        }
    }
    println!("{:>9}  {:>11} {:>9} {:>13}  smallest n with all larger Hamiltonian", "pair", "hamiltonian", "none", "indeterminate");
    let mut unsure = false;
    for (pair, recs) in &by_pair {
        let count = |v: &str| recs.values().filter(|r| r.verdict == v).count();
        let odd_odd = pair.0 % 2 == 1 && pair.1 % 2 == 1;
        let fails = recs.values().filter(|r| r.verdict != "hamiltonian" && !(odd_odd && r.n % 2 == 1)).map(|r| r.n).max();
        let from = fails.map_or(1, |n| n + 1);
        let from = if from > max_n { "-".to_string() } else { from.to_string() };
        unsure |= count("indeterminate") > 0;
        println!(
            "{:>9}  {:>11} {:>9} {:>13}  {from}",
            format!("({}, {})", pair.0, pair.1),
            count("hamiltonian"),
            count("exhausted") + count("parity"),
            count("indeterminate")
        );
    }
    if unsure {
        eprintln!("warning: search budget exhausted; some items are indeterminate");
    }
    ExitCode::SUCCESS
}

fn render_file(path: &PathBuf, format: Format) -> ExitCode {
    let file = match read_file(path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let text = match format {
        Format::Ascii => render::ascii(&file),
        Format::Svg => render::svg(&file),
    };
    match text {
        Ok(t) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
