//! Command-line front end for `decoq`: decoherence curves, low-decoherence
//! time reports, parameter sweeps and the verification suite.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use crate::commands::Axis;
use crate::config::{Overrides, RunConfig};
use crate::output::Report;
use crate::verify::Corruption;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CRASH: u8 = 1;
pub const EXIT_NO_CROSSING: u8 = 2;
pub const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "decoq", version, about = "Short-time decoherence of a Josephson charge qubit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    /// Josephson energy [μeV].
    #[arg(long = "ej", global = true)]
    pub e_j: Option<f64>,
    /// Bath temperature [mK].
    #[arg(long, global = true)]
    pub temp_mk: Option<f64>,
    /// Dimensionless dissipation strength.
    #[arg(long, global = true)]
    pub eta: Option<f64>,
    /// Spectral cutoff ω_c [μeV].
    #[arg(long, global = true)]
    pub cutoff: Option<f64>,
    /// Curve horizon [ħ/μeV].
    #[arg(long, global = true)]
    pub t_max: Option<f64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Decoherence threshold for τ^ld.
    #[arg(long, global = true)]
    pub threshold: Option<f64>,
    /// Horizon of the τ^ld search [ħ/μeV].
    #[arg(long, global = true)]
    pub search_t_max: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Flat TOML configuration; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
}

impl Common {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            e_j: self.e_j,
            temp_mk: self.temp_mk,
            eta: self.eta,
            omega_c: self.cutoff,
            t_max: self.t_max,
            samples: self.samples,
            threshold: self.threshold,
            seed: self.seed,
            search_t_max: self.search_t_max,
        }
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        Ok(RunConfig::resolve(self.config.as_deref(), &self.overrides())?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample B², C, D and the state norms; writes curve.csv and curve.svg.
    #[command(allow_negative_numbers = true)]
    Curve {
        #[command(flatten)]
        common: Common,
        /// Logarithmic y axis in the plot.
        #[arg(long)]
        log_y: bool,
    },
    /// Low-decoherence time against the gate time; writes tld.json.
    #[command(allow_negative_numbers = true)]
    Tld {
        #[command(flatten)]
        common: Common,
    },
    /// τ^ld and D at τ^g along one parameter axis; writes sweep.csv.
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        axis: Axis,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        /// Fixed time at which D is tabulated [ħ/μeV].
        #[arg(long, default_value_t = 0.075)]
        t_star: f64,
        /// Assert the expected monotonicity along the axis.
        #[arg(long)]
        check: bool,
    },
    /// Run the verification suite; writes verify.json.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[command(flatten)]
        common: Common,
        /// Inject a known fault to test the harness.
        #[arg(long, value_enum)]
        corrupt: Option<Corruption>,
    },
}

fn print_checks(checks: &[output::CheckRecord]) {
    for c in checks {
        println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
}

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Curve { common, log_y } => {
            let cfg = common.resolve()?;
            let (curve, files) = commands::cmd_curve(&cfg, &common.out, log_y)?;
            let last = curve.len() - 1;
            println!("samples: {}  t_max: {} units", curve.len(), curve.times[last]);
            println!("D(t_max): {:.6e}", curve.d[last]);
            println!("wrote {} and {}", files.csv.display(), files.svg.display());
            Ok(EXIT_OK)
        }
        Command::Tld { common } => {
            let cfg = common.resolve()?;
            let (report, path) = commands::cmd_tld(&cfg, &common.out)?;
            let r = report.results.as_ref().expect("tld report has results");
            println!(
                "tau_g  = {:.4} ps ({:.6e} units); reference {} ps",
                r.tau_g_ps, r.tau_g_units, r.reference_tau_g_ps
            );
            match (r.tau_ld_units, r.tau_ld_ps) {
                (Some(u), Some(ps)) => println!(
                    "tau_ld = {ps:.4} ps ({u:.6e} units); reference {} ps, relative deviation {:+.3}",
                    r.reference_tau_ld_ps,
                    r.tau_ld_rel_deviation.unwrap_or(f64::NAN)
                ),
                _ => println!("tau_ld: no crossing"),
            }
            println!("verdict: {}", r.verdict);
            for n in &r.notes {
                println!("note: {n}");
            }
            println!("wrote {}", path.display());
            Ok(if r.tau_ld_units.is_some() { EXIT_OK } else { EXIT_NO_CROSSING })
        }
        Command::Sweep { common, axis, values, t_star, check } => {
            let cfg = common.resolve()?;
            let (rows, path) = commands::cmd_sweep(&cfg, axis, &values, t_star, &common.out)?;
            for r in &rows {
                println!(
                    "{} = {:e}: tau_ld = {} units, D(tau_g) = {}, D(t*) = {}  [{}]",
                    axis.column(),
                    r.value,
                    r.tau_ld_units.map_or("-".into(), |x| format!("{x:.6e}")),
                    r.d_at_tau_g.map_or("-".into(), |x| format!("{x:.6e}")),
                    r.d_at_t_star.map_or("-".into(), |x| format!("{x:.6e}")),
                    r.status
                );
            }
            println!("wrote {}", path.display());
            if check {
                let checks = commands::check_sweep(axis, &rows);
                print_checks(&checks);
                if checks.iter().any(|c| !c.pass) {
                    return Ok(EXIT_VERIFY_FAILED);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { common, corrupt } => {
            let cfg = common.resolve()?;
            let checks = verify::run_verify(&cfg, corrupt);
            print_checks(&checks);
            std::fs::create_dir_all(&common.out)?;
            let path = common.out.join("verify.json");
            std::fs::write(&path, Report::new(&cfg, None, checks.clone()).to_json()?)?;
            println!("wrote {}", path.display());
            Ok(if checks.iter().all(|c| c.pass) { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}
