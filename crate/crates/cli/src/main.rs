mod config;
mod exit;
mod simulate;
mod transform;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rsbivector::spectral::Spectral;
use rsbivector::{io, FieldGrid};

use config::Config;
use exit::CliError;

#[derive(Parser, Debug)]
#[command(name = "rsbv", version, about = "Complex bivector electrodynamics: evolution, transformations, certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve a field and write RSBV dumps plus conservation.csv.
    Simulate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, value_parser = ["spectral", "rk4"])]
        scheme: Option<String>,
    },
    /// Apply a rotation to a dump, or any Lorentz transformation to a plane wave.
    Transform {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a numerical certificate (or `all`).
    Verify {
        /// Check name; same as --check.
        name: Option<String>,
        #[arg(long)]
        check: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Print header and summary statistics of an RSBV dump.
    DumpInfo { path: PathBuf },
}

fn load_config(path: Option<&Path>) -> Result<Config, CliError> {
    match path {
        Some(p) => Config::load(p),
        None => Ok(Config::default()),
    }
}

fn dump_info(path: &Path) -> Result<(), CliError> {
    let header = {
        let f = std::fs::File::open(path).map_err(|e| CliError::io(format!("cannot open {}: {e}", path.display())))?;
        io::read_header(std::io::BufReader::new(f))?
    };
    let grid: FieldGrid = io::load(path)?;
    let inv = grid.invariants();
    let div = Spectral::for_grid(&grid).divergence(&grid);
    let max_div_b = div.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    println!("path={}", path.display());
    println!("version={}", header.version);
    println!("n={}", header.n);
    println!("h={}", header.h);
    println!("sites={}", grid.len());
    println!("max_abs={:e}", grid.max_norm());
    println!("energy={:e}", inv.energy);
    println!("i1={:e}", inv.i1);
    println!("i2={:e}", inv.i2);
    println!("poynting={:e},{:e},{:e}", inv.poynting[0], inv.poynting[1], inv.poynting[2]);
    println!("max_divB={max_div_b:e}");
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Simulate { config, seed, out, steps, dt, scheme } => {
            let ov = simulate::Overrides { seed, out, steps, dt, scheme };
            simulate::run(load_config(config.as_deref())?, &ov)?;
        }
        Command::Transform { config, out } => transform::run(Config::load(&config)?, out)?,
        Command::Verify { name, check, seed, samples } => {
            let name = match (name, check) {
                (Some(a), Some(b)) if a != b => {
                    return Err(CliError::config(format!("conflicting check names `{a}` and `{b}`")))
                }
                (Some(a), _) | (None, Some(a)) => a,
                (None, None) => return Err(CliError::config("verify needs a check name (or `all`)")),
            };
            if !verify::run(&name, seed, samples)? {
                return Ok(exit::VERIFY_FAILED);
            }
        }
        Command::DumpInfo { path } => dump_info(&path)?,
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
