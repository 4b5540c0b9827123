//! `mlf`: batch checking of multi-level contextual LF sources.

mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mlf_core::budget::DEFAULT_MAX_DEPTH;
use mlf_core::parse::parse;
use mlf_core::selftest::{run_equations, run_oracle};

use run::{erase_lines, parse_failure, run_file, Mode, Options, Record, Status};

/// Deep inputs recurse once per node; a large stack lets the depth budget,
/// not the thread, decide when to stop.
const STACK_BYTES: usize = 512 * 1024 * 1024;

#[derive(Parser)]
#[command(
    name = "mlf",
    version,
    about = "Type checker for multi-level contextual LF"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// One JSON diagnostic per directive, newline-delimited.
    #[arg(long, global = true)]
    json: bool,
    /// Print every typing rule applied.
    #[arg(long, global = true)]
    trace: bool,
    /// Recursion budget for checking and substitution.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the signature and every directive.
    Check { file: PathBuf },
    /// Run the substitution directives and print their results.
    Hsub { file: PathBuf },
    /// Print the type approximation of each declaration and context.
    Erase { file: PathBuf },
    /// Run the built-in equation suite and the oracle comparison.
    Selftest {
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        #[arg(long, default_value_t = 12)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        level: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let worker = std::thread::Builder::new()
        .stack_size(STACK_BYTES)
        .spawn(move || execute(&cli));
    // a panic surfaces as a failed join
    let status = match worker.map(|h| h.join()) {
        Ok(Ok(Ok(status))) => status,
        // already reported
        Ok(Ok(Err(()))) => Status::Budget,
        _ => {
            eprintln!("mlf: internal error");
            Status::Budget
        }
    };
    ExitCode::from(status as u8)
}

fn execute(cli: &Cli) -> Result<Status, ()> {
    let opts = Options {
        trace: cli.trace,
        max_depth: cli.max_depth,
    };
    match &cli.command {
        Command::Check { file } => process(cli, file, |f| run_file(f, &opts, Mode::Check)),
        Command::Hsub { file } => process(cli, file, |f| run_file(f, &opts, Mode::Hsub)),
        Command::Erase { file } => {
            let src = read(file)?;
            let parsed = parse(&src).and_then(|f| f.signature().map(|s| (f, s)));
            match parsed {
                Ok((f, sig)) => {
                    for line in erase_lines(&sig, &f) {
                        println!("{line}");
                    }
                    Ok(Status::Ok)
                }
                Err(e) => Ok(emit(cli.json, &[parse_failure(&e)])),
            }
        }
        Command::Selftest { seeds, size, level } => Ok(selftest(*seeds, *size, *level)),
    }
}

fn read(file: &PathBuf) -> Result<String, ()> {
    std::fs::read_to_string(file).map_err(|e| eprintln!("mlf: {}: {e}", file.display()))
}

fn process(
    cli: &Cli,
    file: &PathBuf,
    go: impl FnOnce(&mlf_core::parse::SourceFile) -> Vec<Record>,
) -> Result<Status, ()> {
    let src = read(file)?;
    let records = match parse(&src) {
        Ok(f) => go(&f),
        Err(e) => vec![parse_failure(&e)],
    };
    Ok(emit(cli.json, &records))
}

/// Prints the records and folds their statuses; parse errors stop
/// processing before any record of another kind exists.
fn emit(json: bool, records: &[Record]) -> Status {
    for r in records {
        if json {
            println!("{}", serde_json::to_string(r).expect("records serialize"));
        } else {
            println!("{}", r.human());
        }
    }
    records.iter().map(Record::exit).max().unwrap_or(Status::Ok)
}

fn selftest(seeds: u64, size: usize, level: u32) -> Status {
    let mut failed = 0;
    let results = run_equations();
    for (name, outcome) in &results {
        if let Err(e) = outcome {
            failed += 1;
            println!("FAIL {name}: {e}");
        }
    }
    println!(
        "equations: {} of {} hold",
        results.len() - failed,
        results.len()
    );
    let report = run_oracle(seeds, size, level);
    println!(
        "oracle: {} single and {} simultaneous instances, {} disagreements",
        report.single,
        report.simultaneous,
        report.failures.len()
    );
    for f in &report.failures {
        println!("FAIL {f}");
    }
    if failed == 0 && report.failures.is_empty() {
        Status::Ok
    } else {
        Status::TypeError
    }
}
