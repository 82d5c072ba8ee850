use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quadwalk::group::{is_prime, GroupConfig, Method, DEFAULT_PRIMES};
use quadwalk::{Section, StepSet};

mod commands;

use commands::{Report, Selection};

#[derive(Parser)]
#[command(name = "quadwalk")]
#[command(about = "Exact computations on quarter-plane lattice walks with small steps")]
#[command(version)]
struct Cli {
    /// Step set: comma-separated tokens (N,NE,E,SE,S,SW,W,NW), `all` or `figure1`
    #[arg(long, global = true, value_parser = parse_selection)]
    steps: Option<Selection>,

    /// Truncation order in t
    #[arg(long, global = true, default_value_t = 12)]
    order: usize,

    /// Largest power of theta tried when searching for the group order
    #[arg(long, global = true, default_value_t = 200)]
    bound: usize,

    /// Prime modulus for modular evaluation
    #[arg(long, global = true, default_value_t = DEFAULT_PRIMES[0], value_parser = parse_prime)]
    prime: u64,

    /// Seed for random evaluation points
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Random points per identity test
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,

    /// Group order method: symbolic | modular
    #[arg(long, global = true, default_value = "modular", value_parser = parse_method)]
    method: Method,

    /// Largest ODE order searched by `guess`
    #[arg(long, global = true, default_value_t = 4)]
    max_ode_order: usize,

    /// Largest polynomial coefficient degree searched by `guess`
    #[arg(long, global = true, default_value_t = 12)]
    max_degree: usize,

    /// Largest power of f in an algebraic guess
    #[arg(long, global = true, default_value_t = 6)]
    deg_f: usize,

    /// Largest t-degree of the coefficients in an algebraic guess
    #[arg(long, global = true, default_value_t = 10)]
    deg_t: usize,

    /// Boundary section: x=0 | y=0 | x=y=0 | x=y=1
    #[arg(long, global = true, value_parser = parse_section)]
    section: Option<Section>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GuessKindArg {
    Algebraic,
    Ode,
}

#[derive(Subcommand)]
enum Command {
    /// Count walks by length and end point
    Enumerate,
    /// Divide xy by the kernel: quotient l and remainder r
    Divide,
    /// Check the functional equation against direct enumeration
    Verify,
    /// Order of the group of the walk
    Group,
    /// Bishop normal form of the kernel surface at the origin
    Bishop {
        /// Total degree of the truncated graph
        #[arg(long, default_value_t = 8)]
        degree: u32,
    },
    /// Smoothness and diagonal symmetry of the kernel surface
    Symmetry,
    /// List the canonical smooth symmetric models with an infinite group
    Figure1,
    /// Build and check the graph-membership certificate
    Certify,
    /// Classify all 255 step sets
    Classify {
        /// Also search for a linear ODE on boundary sections of canonical models
        #[arg(long)]
        guess: bool,
    },
    /// Search for an algebraic equation or a linear ODE satisfied by a boundary series
    Guess {
        #[arg(long, value_enum, default_value_t = GuessKindArg::Ode)]
        kind: GuessKindArg,
    },
}

fn parse_selection(s: &str) -> Result<Selection, String> {
    match s.to_ascii_lowercase().as_str() {
        "all" => Ok(Selection::All),
        "figure1" => Ok(Selection::Figure1),
        _ => s
            .parse::<StepSet>()
            .map(Selection::One)
            .map_err(|e| e.to_string()),
    }
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s
        .parse()
        .map_err(|_| format!("`{s}` is not an unsigned integer"))?;
    if (3..1 << 63).contains(&p) && is_prime(p) {
        Ok(p)
    } else {
        Err(format!("`{s}` is not a prime in [3, 2^63)"))
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_section(s: &str) -> Result<Section, String> {
    s.parse()
        .map_err(|_| format!("unknown section `{s}` (expected x=0, y=0, x=y=0 or x=y=1)"))
}

fn run(cli: &Cli) -> Result<Report, String> {
    let group = GroupConfig {
        bound: cli.bound,
        method: cli.method,
        prime: cli.prime,
        seed: cli.seed,
        trials: cli.trials,
    };
    let steps = |default: Option<Selection>| {
        cli.steps
            .or(default)
            .ok_or_else(|| "--steps is required for this command".to_string())
    };
    match &cli.command {
        Command::Enumerate => commands::enumerate(steps(None)?, cli.order),
        Command::Divide => commands::divide(steps(None)?, cli.order),
        Command::Verify => commands::verify(steps(None)?, cli.order),
        Command::Group => commands::group(steps(None)?, &group),
        Command::Bishop { degree } => commands::bishop(steps(None)?, *degree),
        Command::Symmetry => commands::symmetry(steps(None)?),
        Command::Figure1 => commands::figure1(&group),
        Command::Certify => commands::certify(steps(None)?, cli.order),
        Command::Classify { guess } => {
            let guess = guess.then(|| quadwalk::classify::GuessSettings {
                order: cli.order,
                sections: match cli.section {
                    Some(s) => vec![s],
                    None => vec![Section::XZero, Section::YZero],
                },
                max_ode_order: cli.max_ode_order,
                max_degree: cli.max_degree,
            });
            commands::classify(steps(Some(Selection::All))?, group, guess)
        }
        Command::Guess { kind } => commands::guess(
            steps(None)?,
            cli.section.unwrap_or(Section::Origin),
            cli.order,
            *kind,
            (cli.deg_f, cli.deg_t),
            (cli.max_ode_order, cli.max_degree),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut body = match cli.format {
        Format::Text => report.text,
        Format::Json => serde_json::to_string_pretty(&report.json).expect("JSON values serialize"),
    };
    body.push('\n');
    let written = match &cli.output {
        Some(path) => fs::write(path, &body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
