//! `warpad` command-line entry point.
//!
//! Exit codes: 0 success, 1 configuration, 2 ingestion, 3 backend.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use warpad::embedder::BackendKind;
use warpad::scoring::{Aggregation, SigmaUnits};
use warpad::wavelet::WaveletSpec;
use warpad::WarpadError;

use crate::config::Overrides;

#[derive(Parser, Debug)]
#[command(
    name = "warpad",
    version,
    about = "Training-free AI-generated image detection"
)]
struct Cli {
    /// Worker threads; 0 uses every logical CPU.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// More diagnostics on stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score images; one JSON line per image on stdout.
    Score(ScoreArgs),
    /// Evaluate a dataset manifest; AUROC table on stdout.
    Eval(EvalArgs),
    /// One evaluation per value of a config axis; CSV on stdout.
    Sweep(SweepArgs),
    /// Write the wavelet pyramid of an image as raw planes.
    DwtDump(DwtDumpArgs),
}

#[derive(Args, Debug, Clone)]
struct ConfigArgs {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    backend: Option<Backend>,
    /// ONNX model file; relative paths also search $WARPAD_MODEL_DIR.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Base URL of a remote embedding service.
    #[arg(long)]
    endpoint: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    d_rescale: Option<usize>,
    #[arg(long)]
    d_patch: Option<usize>,
    #[arg(long)]
    aggregation: Option<Aggregation>,
    /// FAMILY[:LEVELS[:BOUNDARY]], e.g. haar:2:symmetric.
    #[arg(long)]
    wavelet: Option<WaveletSpec>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Backend {
    ModelFile,
    Remote,
    Test,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    #[arg(required = true)]
    images: Vec<PathBuf>,
    /// Write a CSV grid of patch scores per image under OUTPUT_DIR/patch_maps.
    #[arg(long)]
    emit_patch_map: bool,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args, Debug, Clone)]
struct MethodArgs {
    /// KIND=PARAM[,seed=S]: jpeg=Q, center_crop=R or gaussian_noise=SIGMA.
    #[arg(long)]
    corrupt: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Warpad)]
    method: Method,
    /// Noise level for the rigid baselines.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, value_enum, default_value_t = Units::Unit)]
    sigma_units: Units,
    #[arg(long, default_value_t = 20)]
    bins: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    Warpad,
    Rigid,
    RigidPatch,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Units {
    Unit,
    EightBit,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[command(flatten)]
    method: MethodArgs,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// alpha, d_rescale, d_patch, wavelet, level, aggregation or corruption.
    #[arg(long)]
    axis: String,
    /// Comma-separated values for the axis.
    #[arg(long)]
    values: String,
    #[command(flatten)]
    method: MethodArgs,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args, Debug)]
struct DwtDumpArgs {
    image: PathBuf,
    #[command(flatten)]
    config: ConfigArgs,
}

impl ConfigArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            backend: self.backend.map(|b| match b {
                Backend::ModelFile => BackendKind::ModelFile,
                Backend::Remote => BackendKind::Remote,
                Backend::Test => BackendKind::Test,
            }),
            model: self.model.clone(),
            endpoint: self.endpoint.clone(),
            alpha: self.alpha,
            d_rescale: self.d_rescale,
            d_patch: self.d_patch,
            aggregation: self.aggregation,
            wavelet: self.wavelet,
            seed: self.seed,
            output_dir: self.output_dir.clone(),
        }
    }

    /// Reads `--config` (if any) and layers the flags on top.
    fn load(&self) -> warpad::Result<config::RunConfigFile> {
        let mut file = match &self.config {
            Some(p) => config::RunConfigFile::load(p)?,
            None => config::RunConfigFile::default(),
        };
        file.apply(&self.overrides());
        Ok(file)
    }
}

impl MethodArgs {
    fn options(&self) -> commands::MethodOptions {
        commands::MethodOptions {
            corrupt: self.corrupt.clone(),
            method: match self.method {
                Method::Warpad => commands::MethodChoice::Warpad,
                Method::Rigid => commands::MethodChoice::Rigid,
                Method::RigidPatch => commands::MethodChoice::RigidPatch,
            },
            sigma: self.sigma,
            sigma_units: match self.sigma_units {
                Units::Unit => SigmaUnits::Unit,
                Units::EightBit => SigmaUnits::EightBit,
            },
            bins: self.bins,
        }
    }
}

fn exit_code(e: &WarpadError) -> u8 {
    match e {
        WarpadError::Config(_)
        | WarpadError::Validation(_)
        | WarpadError::Structural(_)
        | WarpadError::Json(_) => 1,
        WarpadError::Ingestion { .. } | WarpadError::Io(_) => 2,
        WarpadError::Backend(_)
        | WarpadError::Transport { .. }
        | WarpadError::DegenerateInput(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .target(env_logger::Target::Stderr)
        .init();

    let jobs = cli.jobs;
    let run = || -> warpad::Result<u8> {
        match &cli.command {
            Command::Score(a) => {
                commands::score(&a.images, a.emit_patch_map, &a.config.load()?, jobs)
            }
            Command::Eval(a) => {
                commands::eval(&a.manifest, &a.method.options(), &a.config.load()?, jobs)
            }
            Command::Sweep(a) => commands::sweep(
                &a.manifest,
                &a.axis,
                &a.values,
                &a.method.options(),
                &a.config.load()?,
                jobs,
            ),
            Command::DwtDump(a) => commands::dwt_dump(&a.image, &a.config.load()?),
        }
    };
    let result = run();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
