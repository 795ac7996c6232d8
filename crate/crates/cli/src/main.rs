use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qdeg::theorems::CheckKind;
use qdeg::{DEFAULT_ENUM_CAP, DEFAULT_IBR_CAP};
use qdeg_cli::runner::{self, Format, EXIT_ERROR, EXIT_OK};
use qdeg_cli::{corpus, exit_code, run_many, GroupSource, RunOptions};

#[derive(Parser)]
#[command(name = "qdeg", version, about = "Check q'-degree Brauer character statements on permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate checks on one or more groups.
    Run {
        /// Group file path or `corpus:NAME`; repeatable.
        #[arg(long = "group", required = true)]
        groups: Vec<String>,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Comma-separated: theoremA, manzWolf, theoremB, characterization, ibr, all.
        #[arg(long, default_value = "all", value_parser = parse_checks)]
        checks: BTreeSet<CheckKind>,
        #[arg(long, default_value_t = DEFAULT_IBR_CAP)]
        ibr_cap: u128,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        enum_cap: u128,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// List the built-in groups, or write their recipe files to a directory.
    Corpus {
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

fn parse_checks(s: &str) -> Result<BTreeSet<CheckKind>, String> {
    CheckKind::parse_list(s)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { EXIT_OK as u8 });
        }
    };
    let code = match cli.command {
        Command::Run { groups, p, q, checks, ibr_cap, enum_cap, seed, format } => {
            let sources: Vec<GroupSource> = groups.iter().map(|g| GroupSource::parse(g)).collect();
            let opts = RunOptions { p, q, checks, ibr_cap, enum_cap, seed };
            let results = run_many(&sources, &opts);
            let format = match format {
                FormatArg::Text => Format::Text,
                FormatArg::Json => Format::Json,
            };
            let (out, errors) = runner::render(&results, &sources, format);
            if !out.is_empty() {
                println!("{out}");
            }
            for e in errors {
                eprintln!("error: {e}");
            }
            exit_code(&results)
        }
        Command::Corpus { export: Some(dir) } => match corpus::export(&dir) {
            Ok(paths) => {
                for p in paths {
                    println!("{p}");
                }
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        },
        Command::Corpus { export: None } => {
            for e in corpus::corpus() {
                let cited = if e.cited.is_empty() { String::new() } else { "  (cited degrees registered)".into() };
                println!("{:<8} order {:>5}  degree {:>2}{cited}", e.name, e.order, degree_of(e.text));
            }
            EXIT_OK
        }
    };
    ExitCode::from(code as u8)
}

fn degree_of(text: &str) -> usize {
    qdeg_cli::parse_group_file(text).map(|g| g.degree).unwrap_or(0)
}
