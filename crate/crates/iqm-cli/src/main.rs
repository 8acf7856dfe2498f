use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use iqm_cli::config::{parse_config, Overrides, ScenarioConfig};
use iqm_cli::dispatch::{dispatch, RunError, EXIT_SCHEMA};
use iqm_cli::{csv_out, ConfigError};

#[derive(Parser, Debug)]
#[command(
    name = "iqm",
    version,
    about = "Interval quantum mechanics scenario runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Which-path measurement and screen probabilities
    DoubleSlit(Flags),
    /// Alive update of a cat superposition
    Cat(Flags),
    /// CHSH certification and local double-parcel update
    Bell(Flags),
    /// Shrinking boxes around a fixed state
    Reduction(Flags),
    /// Failure of the disjointness conditions
    Counterexample(Flags),
    /// Build a parcel, evolve it, measure and report
    Pipeline(Flags),
}

#[derive(Args, Debug, Clone)]
struct Flags {
    /// JSON scenario file; built-in defaults are used when absent
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV destination; stdout when absent
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo sample count
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
}

impl Command {
    fn parts(&self) -> (&'static str, &Flags) {
        match self {
            Command::DoubleSlit(f) => ("double-slit", f),
            Command::Cat(f) => ("cat", f),
            Command::Bell(f) => ("bell", f),
            Command::Reduction(f) => ("reduction", f),
            Command::Counterexample(f) => ("counterexample", f),
            Command::Pipeline(f) => ("pipeline", f),
        }
    }
}

fn default_config(kind: &str) -> Option<&'static str> {
    Some(match kind {
        "bell" => r#"{"scenario":"bell","eps":0.01}"#,
        "cat" => {
            r#"{"scenario":"cat","alpha":[0.7071067811865476,0],"beta":[0.7071067811865476,0]}"#
        }
        "double-slit" => {
            r#"{"scenario":"double-slit","eps":0.05,"phis":[0,1.5707963267948966,3.141592653589793]}"#
        }
        "reduction" => {
            r#"{"scenario":"reduction","rho0":"plus","n_max":12,"random_observables":5}"#
        }
        "counterexample" => r#"{"scenario":"counterexample","which":1,"expect_failure":true}"#,
        _ => return None,
    })
}

fn load(kind: &str, flags: &Flags) -> Result<ScenarioConfig, RunError> {
    let text = match &flags.config {
        Some(path) => std::fs::read(path)?,
        None => default_config(kind)
            .ok_or_else(|| {
                ConfigError::new("--config", format!("{kind} requires a configuration file"))
            })?
            .as_bytes()
            .to_vec(),
    };
    let mut cfg = parse_config(&text)?;
    if cfg.kind() != kind {
        return Err(ConfigError::new(
            "scenario",
            format!("file describes {:?}, command is {kind:?}", cfg.kind()),
        )
        .into());
    }
    let ov = Overrides {
        out: flags.out.clone(),
        seed: flags.seed,
        samples: flags.samples,
        eta: flags.eta,
        eps: flags.eps,
    };
    cfg.apply_overrides(&ov)?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<i32, RunError> {
    let (kind, flags) = cli.command.parts();
    let cfg = load(kind, flags)?;
    log::info!("running {kind}");
    let outcome = dispatch(&cfg)?;
    let text = csv_out::render(&outcome.result, &cfg);
    match cfg.out() {
        Some(path) => {
            std::fs::write(path, text)?;
            println!("{}", outcome.summary);
        }
        None => {
            print!("{text}");
            eprintln!("{}", outcome.summary);
        }
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_SCHEMA } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
