use std::process::ExitCode;

use clap::Parser;
use skewcode_cli::commands::{self, Command, RecipeArgs};
use skewcode_cli::ops::Opts;
use skewcode_cli::recipes::{self, first_diff, golden_path, RECIPES};
use skewcode_cli::table::{Format, ResultTable};
use skewcode_cli::CliError;
use skewcode_core::par::DEFAULT_BUDGET;

/// Finite rings, duality-preserving bases and skew cyclic codes.
#[derive(Debug, Parser)]
#[command(name = "skewcode", version)]
struct Cli {
    /// Maximum number of candidates a single search may evaluate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Size of the worker pool; 0 lets rayon decide.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Run every search on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Seed for the sampled recipes.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

enum Outcome {
    Table(ResultTable),
    Text(String, bool),
}

fn recipe(a: &RecipeArgs, opts: &Opts) -> Result<Outcome, CliError> {
    if a.list {
        let width = RECIPES.iter().map(|r| r.name.len()).max().unwrap_or(0);
        let lines: Vec<String> = RECIPES.iter().map(|r| format!("{:width$}  {}", r.name, r.about)).collect();
        return Ok(Outcome::Text(lines.join("\n") + "\n", false));
    }
    let name = a
        .name
        .as_deref()
        .ok_or_else(|| CliError::Usage("recipe needs a name or --list".into()))?;
    let table = recipes::run(name, opts)?;
    if !a.check {
        return Ok(Outcome::Table(table));
    }
    let path = golden_path(name);
    let expected = std::fs::read_to_string(&path)?;
    let actual = table.emit(Format::Text);
    Ok(match first_diff(&expected, &actual) {
        None => Outcome::Text(format!("{name}: matches {}\n", path.display()), false),
        Some((line, e, g)) => {
            let msg = format!("{name}: differs from {} at line {line}\n- {e}\n+ {g}\n", path.display());
            Outcome::Text(msg, true)
        }
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let opts = Opts {
        budget: cli.budget,
        seed: cli.seed,
        sequential: cli.sequential,
    };
    let t = match &cli.command {
        Command::Ring(a) => commands::ring(a, &opts)?,
        Command::Aut(a) => commands::aut(a, &opts)?,
        Command::Bases(a) => commands::bases(a, &opts)?,
        Command::Divisors(a) => commands::divisors(a, &opts)?,
        Command::SelfdualGens(a) => commands::selfdual_gens(a, &opts)?,
        Command::Code(a) => commands::code(a, &opts)?,
        Command::Map(a) => commands::map(a, &opts)?,
        Command::VerifyDuality(a) => commands::verify_duality(a, &opts)?,
        Command::Recipe(a) => return recipe(a, &opts),
    };
    Ok(Outcome::Table(t))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if cli.threads > 0 {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match run(&cli) {
        Ok(Outcome::Table(t)) => {
            print!("{}", t.emit(cli.format));
            ExitCode::from(u8::from(t.failed()))
        }
        Ok(Outcome::Text(s, failed)) => {
            print!("{s}");
            ExitCode::from(u8::from(failed))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
