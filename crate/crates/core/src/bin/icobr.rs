use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use icobr::achievability::RelayMode;
use icobr::cli::{self, VerifyOptions};

#[derive(Parser)]
#[command(name = "icobr", version, about = "Interference channel with an out-of-band relay: rates, bounds, sweeps")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sr,
    If,
}

#[derive(Subcommand)]
enum Cmd {
    /// Achievable rates, outer bound and gap for one scenario
    Analyze {
        config: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Parameter sweep to CSV
    Sweep {
        spec: PathBuf,
        #[arg(short = 'o', long = "output")]
        out: PathBuf,
        /// Defaults to $ICOBR_WORKERS, then the number of cores
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Dump the rate-split system and the projected region at one power split
    Region {
        config: PathBuf,
        #[arg(long)]
        xi: f64,
        #[arg(long, value_enum, default_value = "if")]
        mode: Mode,
        #[arg(short = 'o', long = "output")]
        out: PathBuf,
    },
    /// Run the invariant suite on random scenarios
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
}

fn run(cmd: Cmd) -> icobr::Result<bool> {
    match cmd {
        Cmd::Analyze { config, json } => {
            let report = cli::cmd_analyze(&config)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
        }
        Cmd::Sweep { spec, out, workers } => {
            let rows = cli::cmd_sweep(&spec, &out, workers)?;
            eprintln!("wrote {rows} rows to {}", out.display());
        }
        Cmd::Region { config, xi, mode, out } => {
            let mode = match mode {
                Mode::Sr => RelayMode::SignalRelayingOnly,
                Mode::If => RelayMode::InterferenceForwarding,
            };
            let dump = cli::cmd_region(&config, xi, mode, &out)?;
            let c = dump.comparison;
            println!(
                "projected vs closed form: {} disagreements on {} grid points",
                c.disagreements, c.checked
            );
        }
        Cmd::Verify { seed, n } => {
            if n == 0 {
                return Err(icobr::Error::InvalidField {
                    field: "n".into(),
                    reason: "must be at least 1".into(),
                });
            }
            let report = cli::cmd_verify(&VerifyOptions::new(seed, n));
            print!("{report}");
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    // usage errors are validation errors (1); 2 is reserved for verify
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(args.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
