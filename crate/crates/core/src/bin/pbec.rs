use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pbec::io::config::SpectrumModel;
use pbec::pipeline::{self, Command, Outputs};

#[derive(Parser)]
#[command(name = "pbec", version, about = "Photon BEC spectra and spectrometer forward model")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Open,
    Closed,
}

#[derive(clap::Args)]
struct Common {
    /// `key = value` run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Spectrum model, overriding the config.
    #[arg(long, value_enum)]
    model: Option<Model>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Trapped ground state (density CSV).
    Solve(Common),
    /// Ideal photoluminescence grid (CSV).
    Spectrum(Common),
    /// Convolved camera image (CSV and PGM).
    Instrument {
        #[command(flatten)]
        common: Common,
        /// Camera image path (binary PGM).
        #[arg(long, alias = "png")]
        pgm: Option<PathBuf>,
        /// Use this spectrum CSV instead of computing one.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Resolution budget report.
    Resolve(Common),
    /// Ridge dispersion curve (CSV).
    Dispersion(Common),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Ok(n) = std::env::var("PBEC_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("pbec: PBEC_THREADS must be a positive integer, got `{n}`");
                return ExitCode::from(1);
            }
        }
    }
    let (cmd, common, outputs) = match cli.command {
        Cmd::Solve(c) => (Command::Solve, c, Outputs::default()),
        Cmd::Spectrum(c) => (Command::Spectrum, c, Outputs::default()),
        Cmd::Resolve(c) => (Command::Resolve, c, Outputs::default()),
        Cmd::Dispersion(c) => (Command::Dispersion, c, Outputs::default()),
        Cmd::Instrument { common, pgm, input } => (Command::Instrument, common, Outputs { out: None, image: pgm, input }),
    };
    let cfg = match pipeline::load_config(&common.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("pbec: {}: {e}", common.config.display());
            return ExitCode::from(1);
        }
    };
    let model = common.model.map(|m| match m {
        Model::Open => SpectrumModel::Open,
        Model::Closed => SpectrumModel::Closed,
    });
    let cfg = pipeline::with_model(&cfg, model);
    let outputs = Outputs { out: common.out, ..outputs };
    match pipeline::run(cmd, &cfg, &outputs) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("pbec {e}");
            ExitCode::from(2)
        }
    }
}
