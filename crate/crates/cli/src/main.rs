//! `regset`: compute, classify and verify (α, β)-regular sets of subgroups in
//! Cayley sum graphs.

mod commands;
mod output;
mod selector;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "regset",
    version,
    about = "(α,β)-regular sets in Cayley sum graphs"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Maximum number of candidate connection sets the oracle may enumerate
    /// (overrides REGSET_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Run the oracle on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Theory,
    Oracle,
    Both,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Group spec: `abelian:2,4`, `dihedral:4` or `table:<path>`.
    pub group: String,

    /// Subgroup: `gens=a2,ab`, `cyclic=t`, `mixed=t,s` or `indices=0,2`.
    #[arg(long)]
    pub subgroup: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Squares and non-squares of a group.
    Squares { group: String },
    /// Conjugacy classes, marking the square-free ones.
    Classes { group: String },
    /// All subgroups.
    Subgroups { group: String },
    /// L(H), the feasible pair bounds and the (0,2)/(0,3) classification.
    Lh {
        #[command(flatten)]
        target: Target,
    },
    /// Feasible (α, β) pairs from the closed forms and/or the oracle.
    Pairs {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// An explicit connection set realising `--pair a,b`.
    Witness {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        pair: String,
        /// Shorthand for `--format dot`.
        #[arg(long, value_enum)]
        export: Option<Format>,
    },
    /// Check a connection set, a saved export, or theory against the oracle.
    Verify {
        /// Group spec; omit with `--from-file`.
        group: Option<String>,
        #[arg(long)]
        subgroup: Option<String>,
        /// Connection set, e.g. `b,a2b,ab,a3b`.
        #[arg(long)]
        connection: Option<String>,
        /// Expected pair; a different verdict is a disagreement.
        #[arg(long)]
        pair: Option<String>,
        /// Re-check a JSON document written by `export`.
        #[arg(long)]
        from_file: Option<std::path::PathBuf>,
    },
    /// Compare theory with the oracle over `abelian:max_order=N`, `dihedral:n=A..B`
    /// or `single:<group>:<indices>`.
    Sweep { spec: String },
    /// Export a graph with its regularity verdict (JSON or DOT).
    Export {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        connection: Option<String>,
        #[arg(long)]
        pair: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.render().to_string();
            eprint!(
                "usage error: {}",
                text.strip_prefix("error: ").unwrap_or(&text)
            );
            return ExitCode::from(1);
        }
    };
    let ctx = match commands::Context::new(cli.format, cli.budget, cli.sequential) {
        Ok(ctx) => ctx,
        Err(f) => return report(f),
    };
    let result = match cli.verb {
        Verb::Squares { group } => ctx.squares(&group),
        Verb::Classes { group } => ctx.classes(&group),
        Verb::Subgroups { group } => ctx.subgroups(&group),
        Verb::Lh { target } => ctx.lh(&target),
        Verb::Pairs { target, method } => ctx.pairs(&target, method),
        Verb::Witness {
            target,
            pair,
            export,
        } => ctx.with_format(export).witness(&target, &pair),
        Verb::Verify {
            group,
            subgroup,
            connection,
            pair,
            from_file,
        } => {
            let target = group.map(|group| Target { group, subgroup });
            ctx.verify(
                target.as_ref(),
                connection.as_deref(),
                pair.as_deref(),
                from_file.as_deref(),
            )
        }
        Verb::Sweep { spec } => ctx.sweep(&spec),
        Verb::Export {
            target,
            connection,
            pair,
        } => ctx.export(&target, connection.as_deref(), pair.as_deref()),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => report(f),
    }
}

fn report(failure: Failure) -> ExitCode {
    if let Some(out) = &failure.stdout {
        print!("{out}");
    }
    eprintln!("{}", failure.message);
    ExitCode::from(failure.code)
}
