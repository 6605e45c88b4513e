use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use possfca_cli::commands::{self, FuzzArgs, Outcome};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "possfca", version, about = "Fuzzy formal concepts and two-sorted weighted modal logic")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the cut concepts of a context.
    Concepts {
        context: PathBuf,
        /// formal, oo or po
        #[arg(long, default_value = "formal")]
        flavor: String,
        #[arg(long)]
        cut: String,
        /// Emit the Hasse diagram in DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Evaluate a formula in a model, at one world or at all of them.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        sort: String,
        #[arg(long)]
        world: Option<String>,
        #[arg(long)]
        formula: String,
    },
    /// Local consequence over the given models.
    Consequence {
        #[arg(long = "model", required = true)]
        models: Vec<PathBuf>,
        #[arg(long)]
        sort: String,
        #[arg(long = "premise")]
        premises: Vec<String>,
        #[arg(long)]
        formula: String,
    },
    /// Check a proof script.
    Prove {
        #[arg(long)]
        script: PathBuf,
        /// 2WML, 2WKB, 2WKF or 2WBML
        #[arg(long, default_value = "2WML")]
        system: String,
        /// Restrict premise lines to these formulas.
        #[arg(long = "premise")]
        premises: Vec<String>,
    },
    /// Swap necessity and sufficiency modalities in a formula or proof script.
    Translate {
        /// suff2nec or nec2suff
        #[arg(long)]
        dir: String,
        #[arg(long)]
        formula: Option<String>,
        #[arg(long)]
        sort: Option<String>,
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Search small models for a world satisfying all formulas.
    Sat {
        #[arg(long = "formula", required = true)]
        formulas: Vec<String>,
        #[arg(long, default_value = "o")]
        sort: String,
        #[arg(long, default_value_t = 2)]
        max_g: usize,
        #[arg(long, default_value_t = 2)]
        max_m: usize,
        /// Comma-separated weights to quantize with instead of the formulas' own.
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Test axiom schemas on random models.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, env = "POSSFCA_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_domain: usize,
        /// Schema names; defaults to all single-relation schemas.
        #[arg(long = "schema")]
        schemas: Vec<String>,
        /// Use multi-relational models and the index axioms.
        #[arg(long)]
        multi: bool,
    },
    /// Decide equality of two index terms.
    ZaEq {
        left: String,
        right: String,
        /// Decide in the 4-element De Morgan algebra instead of the 3-chain.
        #[arg(long)]
        strict: bool,
    },
    /// Rewrite a context file in canonical form.
    Convert {
        input: PathBuf,
        /// json or csv
        #[arg(long, default_value = "json")]
        to: String,
    },
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Concepts { context, flavor, cut, dot } => commands::concepts(&context, &flavor, &cut, dot),
        Command::Check { model, sort, world, formula } => {
            commands::check(&model, commands::parse_sort(&sort)?, world.as_deref(), &formula)
        }
        Command::Consequence { models, sort, premises, formula } => {
            commands::consequence_cmd(&models, commands::parse_sort(&sort)?, &premises, &formula)
        }
        Command::Prove { script, system, premises } => commands::prove(&script, &system, &premises),
        Command::Translate { dir, formula, sort, script } => {
            let sort = sort.as_deref().map(commands::parse_sort).transpose()?;
            commands::translate(commands::parse_direction(&dir)?, formula.as_deref(), sort, script.as_deref())
        }
        Command::Sat { formulas, sort, max_g, max_m, degrees } => {
            commands::sat(&formulas, commands::parse_sort(&sort)?, max_g, max_m, degrees.as_deref())
        }
        Command::Fuzz { trials, seed, max_domain, schemas, multi } => {
            commands::fuzz(&FuzzArgs { trials, seed, max_domain, schemas: &schemas, multi })
        }
        Command::ZaEq { left, right, strict } => commands::za_eq(&left, &right, strict),
        Command::Convert { input, to } => commands::convert(&input, &to),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            match cli.format {
                Format::Text => print!("{}", outcome.text),
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&outcome.json).expect("report serializes"))
                }
            }
            if outcome.positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
