use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use walgebra::cli::{degree_cap_from, error_exit_code, exit_code, render_pretty, run, CommandKind, RunConfig};
use walgebra::{Error, Result};

#[derive(Parser)]
#[command(name = "walg", version, about = "Exact computations with finite W-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the JSON artifact to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Render a text summary on stdout.
    #[arg(long, global = true, conflicts_with = "json")]
    pretty: bool,
    /// Emit JSON on stdout (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Compare the artifact with a stored one; a mismatch exits 1.
    #[arg(long, global = true)]
    golden: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long = "type", default_value = "A")]
    type_tag: String,
    #[arg(long, default_value_t = 1)]
    rank: usize,
    /// Jordan type in `sl_n`, e.g. `2,1`.
    #[arg(long, value_delimiter = ',')]
    partition: Option<Vec<usize>>,
    /// Explicit nilpotent, e.g. `E13=1`.
    #[arg(long)]
    nilpotent: Option<String>,
    #[arg(long = "h-prime")]
    h_prime: Option<String>,
    /// Kazhdan degree truncation.
    #[arg(long = "N", default_value_t = 8)]
    truncation: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Triple, grading, m and the slice.
    Setup(Common),
    /// Truncated presentation of the W-algebra.
    Walg(Common),
    /// Filtration dimensions against the slice.
    VerifyGr(Common),
    /// One-dimensional modules.
    Chars(Common),
    /// Symbol ideal of a two-sided ideal restricted to the slice.
    IdealDagger {
        #[command(flatten)]
        common: Common,
        /// Ideal generator in frame labels; repeatable.
        #[arg(long = "generator")]
        generators: Vec<String>,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Truncated Skryabin module of a W-module.
    Skryabin {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: Option<i64>,
        /// Also fit the growth degree over this window.
        #[arg(long)]
        window: Option<i64>,
        /// JSON file holding the module matrices.
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Star-product and comoment suite.
    StarCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long)]
        degree: Option<i64>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Run a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))
}

fn base(kind: CommandKind, c: Common) -> RunConfig {
    let mut cfg = RunConfig::new(kind);
    cfg.type_tag = c.type_tag;
    cfg.rank = c.rank;
    cfg.partition = c.partition;
    cfg.nilpotent = c.nilpotent;
    cfg.h_prime = c.h_prime;
    cfg.truncation = c.truncation;
    cfg.seed = c.seed;
    cfg
}

fn config_of(command: Command) -> Result<RunConfig> {
    Ok(match command {
        Command::Setup(c) => base(CommandKind::Setup, c),
        Command::Walg(c) => base(CommandKind::Walg, c),
        Command::VerifyGr(c) => base(CommandKind::VerifyGr, c),
        Command::Chars(c) => base(CommandKind::Chars, c),
        Command::IdealDagger { common, generators, bound } => {
            let mut cfg = base(CommandKind::IdealDagger, common);
            cfg.generators = (!generators.is_empty()).then_some(generators);
            cfg.bound = bound;
            cfg
        }
        Command::Skryabin { common, degree, window, module } => {
            let mut cfg = base(CommandKind::Skryabin, common);
            cfg.degree = degree;
            cfg.window = window;
            if let Some(path) = module {
                let src = read(&path)?;
                cfg.module = Some(serde_json::from_str(&src).map_err(|e| Error::Parse {
                    line: e.line(),
                    column: e.column(),
                    message: e.to_string(),
                })?);
            }
            cfg
        }
        Command::StarCheck { common, pairs, degree, trials } => {
            let mut cfg = base(CommandKind::StarCheck, common);
            cfg.pairs = pairs;
            cfg.degree = degree;
            cfg.trials = trials;
            cfg
        }
        Command::Run { config } => RunConfig::from_json(&read(&config)?)?,
    })
}

fn execute(cli: Cli) -> Result<i32> {
    let mut cfg = config_of(cli.command)?;
    let cap = degree_cap_from(std::env::var("WALG_MAX_DEGREE").ok().as_deref())?;
    let capped = cap.map(|c| cfg.apply_cap(c)).unwrap_or_default();
    let artifact = run(&cfg, capped)?;
    let text = artifact.to_json();
    let mut code = exit_code(artifact.status);
    if let Some(path) = &cli.output.output {
        std::fs::write(path, &text).map_err(|e| Error::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if cli.output.pretty {
        let value = serde_json::to_value(&artifact).expect("artifacts serialize");
        print!("{}", render_pretty(&value));
    } else if cli.output.output.is_none() {
        print!("{text}");
    }
    if let Some(path) = &cli.output.golden {
        if read(path)? != text {
            eprintln!("artifact differs from golden file {}", path.display());
            code = 1;
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("walg: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
