use std::error::Error as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use steerlab_cli::config::ConfigFile;
use steerlab_cli::error::{CliError, CliResult};
use steerlab_cli::sweep::{run_sweep, write_csv_file, Preset, Scenario, SweepSpec};
use steerlab_cli::verify::{render_report, run_verify, Scope, VerifyBudget};

#[derive(Parser)]
#[command(
    name = "steerlab",
    version,
    about = "Steering-decoherence decay curves and oracle verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate witness decay curves and write them as CSV
    Sweep(SweepArgs),
    /// Re-derive the closed-form results with brute-force oracles
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Figure preset (fig2-left fig2-right fig3 fig4-left fig4-right
    /// fig5-left fig5-right fig8); overrides manual curve lists
    #[arg(long)]
    preset: Option<String>,

    /// Scenario for manual sweeps: two-mode | cat
    #[arg(long)]
    scenario: Option<String>,

    /// Squeeze parameters (two-mode), comma separated
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<f64>>,

    /// Cat amplitudes (cat), comma separated
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,

    /// Oscillator reservoir occupations (cat), comma separated
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<f64>>,

    /// Mode-A reservoir occupations (two-mode), comma separated
    #[arg(long = "n-a", value_delimiter = ',')]
    n_a: Option<Vec<f64>>,

    /// Mode-B reservoir occupations (two-mode), comma separated
    #[arg(long = "n-b", value_delimiter = ',')]
    n_b: Option<Vec<f64>>,

    /// Rate ratios gamma_a/gamma_b (two-mode), comma separated
    #[arg(long = "gamma-ratio", value_delimiter = ',')]
    gamma_ratio: Option<Vec<f64>>,

    /// Upper end of the dimensionless time axis t'
    #[arg(long = "t-prime-max")]
    t_prime_max: Option<f64>,

    /// Number of time points per curve (>= 2)
    #[arg(long)]
    steps: Option<usize>,

    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,

    /// Optional key = value defaults; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which oracle family to run: gaussian | cat | all
    #[arg(long)]
    scope: Option<String>,

    /// Monte Carlo sample budget (>= 10000)
    #[arg(long)]
    samples: Option<u64>,

    /// Monte Carlo base seed
    #[arg(long)]
    seed: Option<u64>,

    /// Fock truncation for the master-equation oracle
    #[arg(long = "fock-dim")]
    fock_dim: Option<usize>,

    /// Optional key = value defaults; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
}

fn load_config(path: &Option<PathBuf>) -> CliResult<ConfigFile> {
    match path {
        Some(p) => ConfigFile::load(p),
        None => Ok(ConfigFile::default()),
    }
}

fn resolve_sweep(args: &SweepArgs) -> CliResult<(SweepSpec, PathBuf)> {
    let cfg = load_config(&args.config)?;

    let preset = match args.preset.as_deref().or(cfg.get("preset")) {
        Some(name) => Some(name.parse::<Preset>().map_err(CliError::usage)?),
        None => None,
    };
    let (default_t_max, default_steps) = SweepSpec::default_axis();
    let t_prime_max = args
        .t_prime_max
        .or(cfg.get_parsed::<f64>("t-prime-max")?)
        .unwrap_or(default_t_max);
    let steps = args
        .steps
        .or(cfg.get_parsed::<usize>("steps")?)
        .unwrap_or(default_steps);
    let out = args
        .out
        .clone()
        .or_else(|| cfg.get("out").map(PathBuf::from))
        .ok_or_else(|| CliError::usage("missing --out <path>"))?;

    let spec = if let Some(preset) = preset {
        SweepSpec {
            t_prime_max,
            steps,
            ..SweepSpec::preset(preset)
        }
    } else {
        let scenario = args
            .scenario
            .as_deref()
            .or(cfg.get("scenario"))
            .ok_or_else(|| CliError::usage("need --preset or --scenario"))?
            .parse::<Scenario>()
            .map_err(CliError::usage)?;
        let list = |flag: &Option<Vec<f64>>, key: &str, default: f64| -> CliResult<Vec<f64>> {
            Ok(flag
                .clone()
                .or(cfg.get_list(key)?)
                .unwrap_or_else(|| vec![default]))
        };
        match scenario {
            Scenario::TwoMode => SweepSpec::manual_two_mode(
                &list(&args.r, "r", 1.0)?,
                &list(&args.gamma_ratio, "gamma-ratio", 0.0)?,
                &list(&args.n_a, "n-a", 0.0)?,
                &list(&args.n_b, "n-b", 0.0)?,
                t_prime_max,
                steps,
            ),
            Scenario::Cat => SweepSpec::manual_cat(
                &list(&args.alpha, "alpha", 1.0)?,
                &list(&args.n, "n", 0.0)?,
                t_prime_max,
                steps,
            ),
        }
    };
    spec.validate()?;
    Ok((spec, out))
}

fn resolve_verify(args: &VerifyArgs) -> CliResult<(Scope, VerifyBudget)> {
    let cfg = load_config(&args.config)?;
    let scope = args
        .scope
        .as_deref()
        .or(cfg.get("scope"))
        .unwrap_or("all")
        .parse::<Scope>()
        .map_err(CliError::usage)?;
    let defaults = VerifyBudget::default();
    let budget = VerifyBudget {
        samples: args
            .samples
            .or(cfg.get_parsed("samples")?)
            .unwrap_or(defaults.samples),
        seed: args
            .seed
            .or(cfg.get_parsed("seed")?)
            .unwrap_or(defaults.seed),
        fock_dim: args
            .fock_dim
            .or(cfg.get_parsed("fock-dim")?)
            .unwrap_or(defaults.fock_dim),
    };
    Ok((scope, budget))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Sweep(args) => {
            let (spec, out) = resolve_sweep(&args)?;
            let rows = run_sweep(&spec)?;
            write_csv_file(&rows, &out)?;
            println!("wrote {} rows to {}", rows.len(), out.display());
            Ok(())
        }
        Command::Verify(args) => {
            let (scope, budget) = resolve_verify(&args)?;
            let outcomes = run_verify(scope, &budget)?;
            let (table, verdict) = render_report(&outcomes);
            print!("{table}");
            if verdict.is_ok() {
                println!("all {} checks passed", outcomes.len());
            }
            verdict
        }
    }
}

fn main() {
    steerlab_cli::init_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err}");
            let mut source = err.source();
            while let Some(cause) = source {
                eprintln!("  caused by: {cause}");
                source = cause.source();
            }
            std::process::exit(err.exit_code());
        }
    }
}
