//! `bicusp`: verify and identify certificates, run searches, evaluate words
//! at points, enumerate matchings.
//!
//! Exit status: 0 success, 1 certification failure, 2 bad input.

mod literal;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bicusp::apps::{cusp_area, ParamPoint};
use bicusp::boxes::Boxcode;
use bicusp::matchings::{enumerate_matchings, format_matching};
use bicusp::prooftree::{search, verify_tree, ProofTree, SearchConfig, VerifyOptions};
use bicusp::words::{evaluate_at, Word};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "bicusp", version, about = "Certificates over the bicuspid parameter space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a certificate in main mode
    Verify(CheckArgs),
    /// Check a certificate in identify mode (variety leaves against the bundled pairs)
    Identify(CheckArgs),
    /// Build a certificate for a box
    Search(SearchArgs),
    /// Evaluate a word, or the cusp area, at a parameter point
    Eval(EvalArgs),
    /// Print every perfect matching on 2n points
    Matchings {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    tree: PathBuf,
    /// Root box; overrides the file's header
    #[arg(long)]
    boxcode: Option<String>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    allow_holes: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Main,
    Identify,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    boxcode: String,
    #[arg(long, value_enum, default_value = "main")]
    mode: ModeArg,
    #[arg(long, default_value_t = 60)]
    max_depth: usize,
    /// Longest candidate word in g-letters [default: 7 in main mode, 3 in identify mode]
    #[arg(long)]
    g_max: Option<usize>,
    #[arg(long, default_value_t = 3)]
    lattice_range: i32,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
#[group(skip)]
#[command(group(ArgGroup::new("what").required(true).args(["word", "area"])))]
struct EvalArgs {
    /// `P,S,L` as complex literals, e.g. `i,1+i,2i`
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    area: bool,
}

/// Failure with its exit status.
struct Fail(u8, String);

fn bad_input(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

type Outcome = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Verify(args) => check(args, false),
        Command::Identify(args) => check(args, true),
        Command::Search(args) => run_search(args),
        Command::Eval(args) => eval(args),
        Command::Matchings { n } => matchings(n),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

/// Runs `f` on a pool of `jobs` threads (the global pool when unset); the
/// flag passed to `f` says whether to fork at all.
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce(bool) -> R + Send) -> Result<R, Fail> {
    match jobs {
        None => Ok(f(true)),
        Some(0) => Err(bad_input("--jobs must be at least 1")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| bad_input(format!("cannot start {n} workers: {e}")))?;
            Ok(pool.install(|| f(n > 1)))
        }
    }
}

fn parse_boxcode(text: &str) -> Result<Boxcode, Fail> {
    Boxcode::parse(text).map_err(|e| bad_input(format!("--boxcode: {e}")))
}

fn check(args: CheckArgs, identify: bool) -> Outcome {
    let bytes = std::fs::read(&args.tree).map_err(|e| bad_input(format!("{}: {e}", args.tree.display())))?;
    let tree = ProofTree::parse(&bytes).map_err(|e| bad_input(format!("{}: {e}", args.tree.display())))?;
    let root = match &args.boxcode {
        Some(bits) => parse_boxcode(bits)?,
        None => tree.root_or_default(),
    };
    let base = if identify { VerifyOptions::identify() } else { VerifyOptions::main() };
    let report = with_jobs(args.jobs, |parallel| {
        verify_tree(&tree, &root, &VerifyOptions { allow_holes: args.allow_holes, parallel, ..base })
    })?;
    print!("{report}");
    Ok(if report.passed() { 0 } else { 1 })
}

fn run_search(args: SearchArgs) -> Outcome {
    let root = parse_boxcode(&args.boxcode)?;
    let base = match args.mode {
        ModeArg::Main => SearchConfig::main(),
        ModeArg::Identify => SearchConfig::identify(),
    };
    let cfg = SearchConfig {
        max_depth: args.max_depth,
        g_max: args.g_max.unwrap_or(base.g_max),
        lattice_range: args.lattice_range,
        ..base
    };
    let tree = with_jobs(args.jobs, |parallel| search(&root, &SearchConfig { parallel, ..cfg }))?
        .map_err(|e| bad_input(e.to_string()))?;
    let text = tree.serialize();
    std::fs::write(&args.out, &text).map_err(|e| bad_input(format!("{}: {e}", args.out.display())))?;
    let leaves = tree.node.leaves(&root);
    let holes = leaves.iter().filter(|(_, c)| c.kind() == "hole").count();
    println!("leaves: {}", leaves.len());
    println!("holes: {holes}");
    println!("wrote {}", args.out.display());
    Ok(0)
}

fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", z.re, z.im.abs())
}

fn eval(args: EvalArgs) -> Outcome {
    let [p, s, l] = literal::parse_point(&args.point)
        .ok_or_else(|| bad_input(format!("--point: malformed point {:?}", args.point)))?;
    let pt = ParamPoint::new(p, s, l);
    if args.area {
        println!("{}", cusp_area(&pt));
        return Ok(0);
    }
    let text = args.word.expect("clap requires --word or --area");
    let word = Word::parse(&text).map_err(|e| bad_input(format!("--word: {e}")))?;
    if s == Complex64::new(0.0, 0.0) {
        return Err(bad_input("--point: S must be nonzero"));
    }
    let m = evaluate_at(&word, p, s, l).map_err(|e| bad_input(format!("--word: {e}")))?;
    println!("word: {word}");
    println!("g-length: {}", word.g_length());
    for (name, v) in ["a", "b", "c", "d"].iter().zip(m.entries()) {
        println!("{name}: {}", fmt_complex(v));
    }
    println!("distance to identity: {:e}", m.distance_to_identity());
    Ok(0)
}

fn matchings(n: usize) -> Outcome {
    let mut out = BufWriter::new(io::stdout().lock());
    let mut broken = false;
    enumerate_matchings(n, |m| {
        if !broken && writeln!(out, "{}", format_matching(m)).is_err() {
            // reader went away; stop writing but finish quietly
            broken = true;
        }
    })
    .map_err(|e| bad_input(format!("--n: {e}")))?;
    let _ = out.flush();
    Ok(0)
}
