use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use jumbled::{occurs, Profile};
use jumbled_cli::alloc::CountingAlloc;
use jumbled_cli::{
    bench, build, verify, Algo, BenchConfig, Input, Kind, Params, VerifyConfig,
};

#[global_allocator]
static GLOBAL: CountingAlloc = CountingAlloc;

#[derive(Parser)]
#[command(name = "jumbled", version, about = "Binary jumbled pattern matching indexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the index of an input file and write it as CSV.
    Build(BuildArgs),
    /// Answer "is there an occurrence of size I with J ones?" from a profile.
    Query(QueryArgs),
    /// Compare a backend against an oracle on seeded random inputs.
    Verify(VerifyArgs),
    /// Write a seeded random input file.
    Gen(GenArgs),
    /// Time backends over a size sweep and write a CSV table.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SizeParams {
    /// Block size b for the blocked backend (default ⌈√n⌉).
    #[arg(long)]
    block: Option<usize>,
    /// Micro tree size r for the micro-macro backend (default ⌈√n⌉).
    #[arg(long)]
    micro: Option<usize>,
}

impl SizeParams {
    fn params(&self) -> Params {
        Params {
            block: self.block,
            micro: self.micro,
        }
    }
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: Kind,
    /// Defaults to blocked for strings and micro-macro for trees.
    #[arg(long, value_enum)]
    algo: Option<Algo>,
    #[command(flatten)]
    sizes: SizeParams,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    profile: PathBuf,
    #[arg(short = 'i', allow_negative_numbers = true)]
    i: i64,
    #[arg(short = 'j', allow_negative_numbers = true)]
    j: i64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long, value_enum)]
    oracle: Algo,
    #[arg(long, default_value_t = 400)]
    max_n: usize,
    #[arg(long, default_value_t = 100)]
    seeds: u64,
    /// Fixed probability of a 1 label; drawn per case when omitted.
    #[arg(long)]
    density: Option<f64>,
    #[command(flatten)]
    sizes: SizeParams,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Probability of a 1 label.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Weighted inputs draw from -bound..=bound.
    #[arg(long, default_value_t = 20)]
    bound: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "string")]
    kinds: Vec<Kind>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "naive,blocked")]
    algos: Vec<Algo>,
    #[arg(long, value_delimiter = ',', default_value = "1024,4096,16384")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[command(flatten)]
    params: SizeParams,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => Ok(std::io::stdout().lock().write_all(text.as_bytes())?),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build(a) => {
            let text = read(&a.input)?;
            let input =
                Input::parse(a.kind, &text).with_context(|| format!("in {}", a.input.display()))?;
            let algo = a.algo.unwrap_or_else(|| Algo::default_for(a.kind));
            let index = build(&input, algo, &a.sizes.params())?;
            emit(a.out.as_deref(), &index.to_csv()?)?;
        }
        Command::Query(a) => {
            let text = read(&a.profile)?;
            let p = Profile::from_csv(&text).with_context(|| format!("in {}", a.profile.display()))?;
            let hit = usize::try_from(a.i).is_ok_and(|i| occurs(&p, i, a.j));
            println!("{}", if hit { "yes" } else { "no" });
        }
        Command::Verify(a) => {
            let cfg = VerifyConfig {
                kind: a.kind,
                algo: a.algo,
                oracle: a.oracle,
                max_n: a.max_n,
                seeds: a.seeds,
                density: a.density,
                params: a.sizes.params(),
            };
            let report = verify(&cfg)?;
            if let Some(c) = report.mismatch {
                eprintln!(
                    "mismatch: {} vs {} at seed {}, size {}",
                    a.algo.name(),
                    a.oracle.name(),
                    c.seed,
                    c.size
                );
                eprintln!("  expected: {}", c.expected);
                eprintln!("  got:      {}", c.got);
                eprintln!("  input:\n{}", c.input.trim_end());
                return Ok(ExitCode::FAILURE);
            }
            println!(
                "{} vs {}: {} cases, 0 mismatches",
                a.algo.name(),
                a.oracle.name(),
                report.cases
            );
        }
        Command::Gen(a) => {
            let input = Input::generate(a.kind, a.n, a.seed, a.density, a.bound)?;
            emit(a.out.as_deref(), &input.to_text())?;
        }
        Command::Bench(a) => {
            let cfg = BenchConfig {
                kinds: a.kinds,
                algos: a.algos,
                sizes: a.sizes,
                seed: a.seed,
                density: a.density,
                params: a.params.params(),
            };
            let report = bench(&cfg)?;
            for note in &report.skipped {
                eprintln!("skipped {note}");
            }
            emit(a.out.as_deref(), &report.csv)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
