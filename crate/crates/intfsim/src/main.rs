//! Batch command-line front end. All logic lives in the library; this
//! binary parses arguments, resolves the scenario configuration, runs the
//! requested campaign and emits CSV/JSON result files.
//!
//! Exit codes: 0 success, 1 usage error, 2 configuration/validation error,
//! 3 runtime error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use intfsim::channel::{db_to_linear, DesiredLink, InterfererSet};
use intfsim::config::{parse_config, PredictorKind, ScenarioConfig, PRESETS};
use intfsim::dtmc::{DtmcPredictor, PredictorConfig};
use intfsim::engine::{compare_predictors, run_scenario, sweep_eta};
use intfsim::error::{Error, Result};
use intfsim::fbl;
use intfsim::report::{
    result_rows, write_csv, write_json, OutputFormat, ReportDocument, ResultRow, RunManifest,
};

#[derive(Parser)]
#[command(
    name = "intfsim",
    version,
    about = "Link-level Monte Carlo simulator: Markov-chain interference prediction \
             driving finite-blocklength resource allocation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single scenario with the configured predictor.
    Run(CommonArgs),
    /// Sweep the risk-sensitivity index over a grid (comma-separated --eta).
    Sweep(CommonArgs),
    /// Run the three SNR/interference scenario presets.
    Scenarios(CommonArgs),
    /// Paired correlated/uncorrelated runs (--rho sets the correlated arm).
    Correlated(CommonArgs),
    /// Finite blocklength calculator for one (payload, target, SINR) triple.
    Fbl(FblArgs),
    /// Learn a transition matrix and dump it as CSV.
    DumpMatrix(DumpMatrixArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// JSON scenario config; omitted keys take the built-in defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Predictor kind: dtmc, iir or genie.
    #[arg(long)]
    predictor: Option<String>,
    /// Confidence level(s); comma-separated values form the sweep grid.
    #[arg(long, value_delimiter = ',')]
    eta: Option<Vec<f64>>,
    /// Measured slots.
    #[arg(long)]
    slots: Option<u64>,
    /// Master RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Fading correlation coefficient in [0, 1).
    #[arg(long)]
    rho: Option<f64>,
    /// Output file (defaults to results.csv or results.json).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct FblArgs {
    /// Packet payload in bits.
    #[arg(long, default_value_t = 50)]
    payload: u32,
    /// Target block error rate in (0, 0.5].
    #[arg(long)]
    target_error: f64,
    /// Predicted SINR in dB.
    #[arg(long)]
    sinr_db: f64,
    /// Output format: text or json.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct DumpMatrixArgs {
    /// JSON scenario config; omitted keys take the built-in defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Measured slots to run the online update through before dumping.
    #[arg(long, default_value_t = 0)]
    slots: u64,
    /// Master RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Fading correlation coefficient in [0, 1).
    #[arg(long)]
    rho: Option<f64>,
    /// Output file.
    #[arg(long, default_value = "matrix.csv")]
    output: PathBuf,
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
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Config { .. } | Error::InvalidParameter { .. } => 2,
                _ => 3,
            };
            ExitCode::from(code)
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Scenarios(args) => cmd_scenarios(args),
        Command::Correlated(args) => cmd_correlated(args),
        Command::Fbl(args) => cmd_fbl(args),
        Command::DumpMatrix(args) => cmd_dump_matrix(args),
    }
}

/// Load the config file (or defaults) and apply flag overrides.
fn resolve_config(args: &CommonArgs) -> Result<ScenarioConfig> {
    let mut cfg = match &args.config {
        Some(path) => parse_config(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(kind) = &args.predictor {
        cfg.predictor = kind.parse()?;
    }
    if let Some(etas) = &args.eta {
        match etas[..] {
            [eta] => cfg.confidence = eta,
            _ => {
                return Err(Error::config(
                    "eta",
                    "this subcommand takes a single --eta value",
                ))
            }
        }
    }
    if let Some(slots) = args.slots {
        cfg.measured_slots = slots;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(rho) = args.rho {
        cfg.correlation = rho;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn output_format(name: &str) -> Result<OutputFormat> {
    name.parse()
}

fn emit(
    command: &str,
    config: &ScenarioConfig,
    rows: Vec<ResultRow>,
    format: OutputFormat,
    output: Option<&Path>,
) -> Result<()> {
    let default_name = match format {
        OutputFormat::Csv => "results.csv",
        OutputFormat::Json => "results.json",
    };
    let path = output
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(default_name));
    let file = std::fs::File::create(&path)?;
    match format {
        OutputFormat::Csv => write_csv(&rows, file)?,
        OutputFormat::Json => {
            let mut manifest = RunManifest::new(command, config.clone());
            manifest.outputs = vec![path.display().to_string()];
            write_json(
                &ReportDocument {
                    manifest,
                    results: rows.clone(),
                },
                file,
            )?;
        }
    }
    // Log the resolved config so every output is traceable to it.
    println!("config: {}", serde_json::to_string(config)?);
    println!(
        "wrote {} ({} result rows)",
        path.display(),
        rows.len()
    );
    print_rows(&rows);
    Ok(())
}

fn print_rows(rows: &[ResultRow]) {
    println!(
        "{:<32} {:>6} {:>12} {:>14} {:>12} {:>9} {:>9}",
        "predictor", "eta", "target", "achieved", "mean_ru", "ru/genie", "coverage"
    );
    for r in rows {
        let ratio = r
            .ru_ratio_vs_genie
            .map(|x| format!("{x:.3}"))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:<32} {:>6.3} {:>12.3e} {:>14.6e} {:>12.3} {:>9} {:>9.4}",
            r.predictor, r.eta, r.target_error, r.achieved_outage, r.mean_ru, ratio, r.quantile_coverage
        );
    }
}

fn cmd_run(args: CommonArgs) -> Result<()> {
    let format = output_format(&args.format)?;
    let cfg = resolve_config(&args)?;
    let metrics = run_scenario(&cfg)?;
    let rows = result_rows(&[metrics], None);
    emit("run", &cfg, rows, format, args.output.as_deref())
}

fn cmd_sweep(args: CommonArgs) -> Result<()> {
    let format = output_format(&args.format)?;
    let etas = args.eta.clone().unwrap_or_else(|| vec![0.8, 0.85, 0.9, 0.95]);
    let base = resolve_config(&CommonArgs {
        eta: None,
        ..args.clone()
    })?;
    let runs = sweep_eta(&base, &etas)?;
    let rows = result_rows(&runs, None);
    emit("sweep", &base, rows, format, args.output.as_deref())
}

fn cmd_scenarios(args: CommonArgs) -> Result<()> {
    let format = output_format(&args.format)?;
    let base = resolve_config(&args)?;
    let kinds = [PredictorKind::Dtmc, PredictorKind::Iir, PredictorKind::Genie];
    let mut rows = Vec::new();
    for preset in PRESETS {
        let cfg = base.clone().with_preset(preset)?;
        let runs = compare_predictors(&cfg, &kinds)?;
        rows.extend(result_rows(&runs, Some(preset)));
    }
    emit("scenarios", &base, rows, format, args.output.as_deref())
}

fn cmd_correlated(args: CommonArgs) -> Result<()> {
    let format = output_format(&args.format)?;
    let rho = args.rho.unwrap_or(0.9);
    let base = resolve_config(&CommonArgs {
        rho: None,
        ..args.clone()
    })?;
    let kinds = [PredictorKind::Dtmc, PredictorKind::Iir, PredictorKind::Genie];

    let mut correlated = base.clone();
    correlated.correlation = rho;
    correlated.validate()?;
    let mut rows = result_rows(&compare_predictors(&correlated, &kinds)?, Some("correlated"));

    let mut uncorrelated = base.clone();
    uncorrelated.correlation = 0.0;
    rows.extend(result_rows(
        &compare_predictors(&uncorrelated, &kinds)?,
        Some("uncorrelated"),
    ));
    emit("correlated", &correlated, rows, format, args.output.as_deref())
}

fn cmd_fbl(args: FblArgs) -> Result<()> {
    let request = fbl::AllocationRequest {
        payload_bits: args.payload,
        target_error: args.target_error,
        predicted_sinr: db_to_linear(args.sinr_db),
    };
    let result = fbl::allocate(&request)?;
    match args.format.as_str() {
        "json" => {
            let doc = serde_json::json!({
                "payload_bits": request.payload_bits,
                "target_error": request.target_error,
                "sinr_db": args.sinr_db,
                "sinr_linear": request.predicted_sinr,
                "blocklength": result.blocklength,
                "blocklength_ceil": result.blocklength_ceil,
                "realized_error": result.realized_error,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        "text" => {
            println!(
                "payload {} bits, target error {:.3e}, sinr {} dB ({:.6} linear)",
                request.payload_bits, request.target_error, args.sinr_db, request.predicted_sinr
            );
            println!(
                "required blocklength: {:.6} channel uses (ceil {})",
                result.blocklength, result.blocklength_ceil
            );
            println!(
                "round-trip realized error at the predicted SINR: {:.6e}",
                result.realized_error
            );
        }
        other => {
            return Err(Error::config(
                "format",
                format!("unknown format `{other}` (expected text or json)"),
            ))
        }
    }
    Ok(())
}

fn cmd_dump_matrix(args: DumpMatrixArgs) -> Result<()> {
    let mut cfg = match &args.config {
        Some(path) => parse_config(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(rho) = args.rho {
        cfg.correlation = rho;
    }
    cfg.predictor = PredictorKind::Dtmc;
    cfg.validate()?;

    // Mirror the engine's draw order so the matrix matches what a run with
    // the same seed would learn.
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut interferers = InterfererSet::sample(
        cfg.n_interferers,
        cfg.inr_range_db,
        cfg.correlation,
        &mut rng,
    )?;
    let desired = DesiredLink::from_db(cfg.mean_snr_db);
    let mut warmup = Vec::with_capacity(cfg.warmup_length);
    for _ in 0..cfg.warmup_length {
        interferers.step_fading(&mut rng);
        warmup.push(interferers.aggregate_interference());
    }
    let pc = PredictorConfig::new(cfg.state_count, cfg.confidence)?;
    let mut predictor = DtmcPredictor::from_warmup(&warmup, &pc)?;
    for _ in 0..args.slots {
        let _snr = desired.sample_snr(&mut rng);
        interferers.step_fading(&mut rng);
        predictor.observe(interferers.aggregate_interference())?;
    }

    let file = std::fs::File::create(&args.output)?;
    predictor.model().write_csv(file)?;
    println!(
        "wrote {} ({}x{} transition matrix after {} updates)",
        args.output.display(),
        cfg.state_count,
        cfg.state_count,
        args.slots
    );
    Ok(())
}
