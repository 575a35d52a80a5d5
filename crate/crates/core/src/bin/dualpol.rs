use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dualpol_mimo::correlation::{equivalent_spacing, AodDistribution, SpacingQuery};
use dualpol_mimo::harness::{self, exit_code, HarnessError};
use dualpol_mimo::link::Model;
use dualpol_mimo::pattern::{Port, RadiationPattern};

#[derive(Parser)]
#[command(name = "dualpol", version, about = "Dual-polarized MIMO correlation and throughput toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dist {
    Iso,
    Lap,
}

#[derive(Subcommand)]
enum Command {
    /// Correlation and equivalent spacing for a list of XPD values.
    Table1 {
        /// Comma-separated XPD values in dB.
        #[arg(long, value_delimiter = ',', default_value = "3,5,10,20,30")]
        xpd: Vec<f64>,
        /// Laplacian angle spread in degrees for the d_lap column.
        #[arg(long, default_value_t = harness::DEFAULT_TABLE_SPREAD_DEG)]
        spread: f64,
        /// Laplacian mean departure angle in degrees.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mean: f64,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a scenario and write per-model, per-XPD throughput CDFs.
    Cdf {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "i,ii,iii,iv")]
        models: Vec<Model>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Element spacing (in wavelengths) giving a target correlation magnitude.
    Spacing {
        #[arg(long)]
        rho: f64,
        #[arg(long, value_enum, default_value = "iso")]
        dist: Dist,
        /// Laplacian angle spread in degrees.
        #[arg(long, default_value_t = harness::DEFAULT_TABLE_SPREAD_DEG)]
        spread: f64,
        /// Laplacian mean departure angle in degrees.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mean: f64,
    },
    /// XPD of both ports of a pattern file at one azimuth.
    XpdFromPattern {
        #[arg(long)]
        file: PathBuf,
        /// Degrees.
        #[arg(long, allow_negative_numbers = true)]
        azimuth: f64,
    },
}

fn config_error(message: String) -> HarnessError {
    HarnessError::Config(harness::ScenarioError::Syntax(message))
}

fn numerical(context: &str, e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Numerical { context: context.into(), message: e.to_string() }
}

fn laplacian(mean_deg: f64, spread_deg: f64) -> Result<AodDistribution, HarnessError> {
    AodDistribution::laplacian(mean_deg.to_radians(), spread_deg.to_radians())
        .map_err(|e| config_error(format!("--spread/--mean: {e}")))
}

fn execute(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Table1 { xpd, spread, mean, out } => {
            let rows = harness::table1(&xpd, &laplacian(mean, spread)?)?;
            let csv = harness::table1_csv(&rows);
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
        }
        Command::Cdf { config, models, out } => {
            let scenario = harness::load_scenario(&config)?;
            let report = harness::run(&scenario, &models)?;
            for path in harness::write_report(&report, &out)? {
                println!("{}", path.display());
            }
        }
        Command::Spacing { rho, dist, spread, mean } => {
            let distribution = match dist {
                Dist::Iso => AodDistribution::Isotropic,
                Dist::Lap => laplacian(mean, spread)?,
            };
            let d = equivalent_spacing(&SpacingQuery { target_rho: rho, wavelength: 1.0, distribution })
                .map_err(|e| numerical("spacing", e))?;
            println!("{d:.6}");
        }
        Command::XpdFromPattern { file, azimuth } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| config_error(format!("cannot read {}: {e}", file.display())))?;
            let pattern = RadiationPattern::parse(&text)
                .map_err(|source| HarnessError::Config(harness::ScenarioError::Pattern { path: file.clone(), source }))?;
            println!("port,xpd_linear,xpd_db");
            for port in Port::BOTH {
                let x = pattern.xpd_at(azimuth.to_radians(), port).map_err(|e| numerical("xpd", e))?;
                println!("{port},{},{:.6}", x.value, x.db());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::from(exit_code::SUCCESS as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
