use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cascade::cycles::{
    counterexample_list, decide_cycle, fchr, is_free_choosable, solve_free_choice,
};
use cascade::hall::hall_check_path;
use cascade::oracle::{brute_force, brute_force_forced, SearchBudget};
use cascade::waterfall::to_waterfall;
use cascade::{validate_coloring, Decision, Topology};
use cascade_cli::{
    emit_decision, emit_instance, emit_waterfall, parse_coloring, parse_instance, CliError,
    ParsedInstance,
};
use clap::{Parser, Subcommand};
use serde_json::json;

/// Decide and construct list multicolorings of weighted paths and cycles.
///
/// Exit status: 0 colorable (or true), 1 not colorable (or false),
/// 2 input error, 3 internal invariant violation.
#[derive(Debug, Parser)]
#[command(name = "cascade", version)]
struct Cli {
    /// Node cap for exhaustive search.
    #[arg(long, global = true, default_value_t = SearchBudget::DEFAULT_NODES)]
    budget: u64,

    /// Suppress warnings on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide colorability through Hall's condition (paths) or the cut-open reduction (cycles).
    Decide { file: PathBuf },
    /// Transform a good path list into a similar waterfall list.
    Waterfall { file: PathBuf },
    /// Free-choice ratio of the cycle C_n.
    Fchr {
        #[arg(long)]
        n: u64,
    },
    /// Whether C_n is (a, b)-free-choosable.
    FreeChoosable {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        n: u64,
    },
    /// Emit a list on C_n (n even) that admits no forced completion.
    Counterexample {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        n: u64,
    },
    /// Decide by exhaustive search.
    Oracle { file: PathBuf },
    /// Check a coloring against an instance.
    Verify {
        instance: PathBuf,
        coloring: PathBuf,
    },
}

/// What a run printed and how it should exit.
struct Outcome {
    output: String,
    positive: bool,
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    Ok(std::fs::read_to_string(path)?)
}

fn load(path: &Path, quiet: bool) -> Result<ParsedInstance, CliError> {
    let (parsed, warnings) = parse_instance(&read_input(path)?)?;
    if !quiet {
        for w in warnings {
            eprintln!("warning: {w}");
        }
    }
    Ok(parsed)
}

fn decision(d: Decision) -> Outcome {
    Outcome {
        positive: d.is_colorable(),
        output: emit_decision(&d),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let budget = SearchBudget::new(cli.budget)?;
    match &cli.command {
        Command::Decide { file } => {
            let d = match load(file, cli.quiet)? {
                ParsedInstance::Forced(fi) => solve_free_choice(&fi)?,
                ParsedInstance::Plain(inst) if inst.topology() == Topology::Cycle => {
                    decide_cycle(&inst)?
                }
                ParsedInstance::Plain(inst) => hall_check_path(inst.lists(), inst.weights())?,
            };
            Ok(decision(d))
        }
        Command::Waterfall { file } => {
            let parsed = load(file, cli.quiet)?;
            let inst = parsed.instance();
            if inst.topology() != Topology::Path {
                return Err(CliError::Validation(
                    "waterfall transform needs a path".into(),
                ));
            }
            let (lists, report) = to_waterfall(inst.lists(), inst.weights())?;
            Ok(Outcome {
                output: emit_waterfall(&lists, &report),
                positive: true,
            })
        }
        Command::Fchr { n } => {
            let r = fchr(*n)?;
            let output = json!({
                "n": n,
                "fchr": r.to_string(),
                "num": r.numer(),
                "den": r.denom(),
            });
            Ok(Outcome {
                output: output.to_string(),
                positive: true,
            })
        }
        Command::FreeChoosable { a, b, n } => {
            if *a == 0 || *b == 0 || *n < 3 {
                return Err(CliError::Validation(
                    "need a >= 1, b >= 1 and n >= 3".into(),
                ));
            }
            let yes = is_free_choosable(*a, *b, *n);
            let output = json!({ "a": a, "b": b, "n": n, "free_choosable": yes });
            Ok(Outcome {
                output: output.to_string(),
                positive: yes,
            })
        }
        Command::Counterexample { a, b, n } => {
            let fi = counterexample_list(*a, *b, *n)?;
            Ok(Outcome {
                output: emit_instance(&ParsedInstance::Forced(fi)),
                positive: true,
            })
        }
        Command::Oracle { file } => {
            let d = match load(file, cli.quiet)? {
                ParsedInstance::Forced(fi) => brute_force_forced(&fi, budget)?,
                ParsedInstance::Plain(inst) => brute_force(&inst, budget)?,
            };
            Ok(decision(d))
        }
        Command::Verify { instance, coloring } => {
            let parsed = load(instance, cli.quiet)?;
            let c = parse_coloring(&read_input(coloring)?)?;
            let mut valid = validate_coloring(parsed.instance(), &c)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            if let ParsedInstance::Forced(fi) = &parsed {
                valid &= &c[fi.v0()] == fi.forced();
            }
            Ok(Outcome {
                output: json!({ "valid": valid }).to_string(),
                positive: valid,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            println!("{}", outcome.output);
            ExitCode::from(if outcome.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
