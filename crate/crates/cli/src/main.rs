use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use arrhodge::arrangement::builtin_names;
use arrhodge_cli::{cmd_analyze, cmd_check, cmd_formulas, CheckSummary, CliError, Input};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "arrhodge",
    version,
    about = "Spectrum and Hodge data of line arrangement Milnor fibers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on an arrangement.
    #[command(group(ArgGroup::new("source").required(true).args(["input", "builtin"])))]
    Analyze {
        /// JSON file {"cyclotomic_order": m, "lines": [[a, b, c], ...]}
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        output: Output,
        /// Use this beta3 instead of computing the rank.
        #[arg(long)]
        assume_beta3: Option<usize>,
    },
    /// Spectrum and Hodge tables from (d, n3, beta3) alone.
    Formulas {
        #[arg(long = "d")]
        d: usize,
        #[arg(long)]
        n3: usize,
        #[arg(long)]
        beta3: usize,
        #[arg(long, value_enum, default_value = "json")]
        output: Output,
    },
    /// Golden checks plus the invariant suite on random arrangements.
    Check {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 9)]
        max_d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// List the shipped arrangements.
    BuiltinList,
}

fn check_text(s: &CheckSummary) -> String {
    let mut out = String::new();
    for c in &s.golden {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        writeln!(out, "[{mark}] {}  {}", c.name, c.detail).unwrap();
    }
    writeln!(
        out,
        "random corpus: {}/{} passed (seed {}, d <= {})",
        s.passed, s.count, s.seed, s.max_d
    )
    .unwrap();
    for f in &s.failures {
        let i = &f.item;
        let how = i.base.map_or(String::new(), |b| format!(", image of {b}"));
        writeln!(
            out,
            "\nFAILED item {} (seed {}, d = {}, m = {}{how})",
            f.index, i.seed, i.d, i.cyclotomic_order
        )
        .unwrap();
        for c in &f.failed {
            writeln!(out, "  {}: {}", c.name, c.detail).unwrap();
        }
        if let Some(spec) = &f.arrangement {
            writeln!(out, "  reproduce with this --input file:").unwrap();
            writeln!(out, "{}", serde_json::to_string(spec).unwrap()).unwrap();
        }
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze {
            input,
            builtin,
            output,
            assume_beta3,
        } => {
            let source = match (&input, &builtin) {
                (Some(p), _) => Input::File(p),
                (None, Some(name)) => Input::Builtin(name),
                (None, None) => unreachable!("clap requires one source"),
            };
            let report = cmd_analyze(&source, assume_beta3)?;
            match output {
                Output::Json => print!("{}", report.to_json()),
                Output::Text => print!("{}", report.to_text()),
            }
            if !report.all_pass() {
                let names: Vec<&str> = report.failed().map(|c| c.name.as_str()).collect();
                return Err(CliError::Consistency(format!(
                    "failed checks: {}",
                    names.join(", ")
                )));
            }
        }
        Command::Formulas {
            d,
            n3,
            beta3,
            output,
        } => {
            let report = cmd_formulas(d, n3, beta3)?;
            match output {
                Output::Json => print!("{}", report.to_json()),
                Output::Text => print!("{}", report.to_text()),
            }
            if !report.all_pass() {
                return Err(CliError::Consistency("formula checks failed".into()));
            }
        }
        Command::Check {
            count,
            max_d,
            seed,
            output,
        } => {
            let summary = cmd_check(count, max_d, seed)?;
            match output {
                Output::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&summary).expect("summary serializes")
                    )
                }
                Output::Text => print!("{}", check_text(&summary)),
            }
            if !summary.all_pass() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::BuiltinList => {
            for name in builtin_names() {
                println!("{name}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("arrhodge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
