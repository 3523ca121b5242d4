//! Command-line front end for `nemsqueeze-core`.
//!
//! Commands read a JSON device config (see [`config`]), run the model and write
//! JSON reports or CSV tables. Exit codes: [`EXIT_OK`], [`EXIT_INVALID`] for
//! unreadable or invalid input, [`EXIT_COMPUTATION`] when the model refuses an
//! evaluation, and [`EXIT_REPRODUCTION`] when a checked reproduction row fails.

pub mod config;
pub mod error;
pub mod report;
pub mod reproduce;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use nemsqueeze_core::figures::{figure_preset, phase_axis, FigureId};
use nemsqueeze_core::run_grid;
use nemsqueeze_core::sweep::{run_table, AxisScale, Metric, SweepAxis, SweepParameter};
use nemsqueeze_core::table::Table;

pub use config::{load_config, DeviceConfigFile};
pub use error::CliError;
pub use report::Report;
pub use reproduce::{reproduce_report, ConventionSelection, Reproduction, ReproductionRow, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_REPRODUCTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "nemsqueeze",
    version,
    about = "Noise squeezing in silicon and graphene nanoresonators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive every quantity of one device and write a JSON report.
    Compute {
        #[arg(long)]
        config: PathBuf,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quadrature variances versus time at the configured pump phase.
    Evolve {
        #[arg(long)]
        config: PathBuf,
        /// End of the time axis in units of t_c (τ when t_c is undefined).
        #[arg(long)]
        t_max_tc: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Quadrature ratios versus pump phase over [-π, π] at a fixed time.
    Phase {
        #[arg(long)]
        config: PathBuf,
        /// Evaluation time in units of t_c (τ when t_c is undefined).
        #[arg(long)]
        time_tc: f64,
        #[arg(long, default_value_t = 361)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// One metric over a 1- or 2-axis grid.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// `param=min:max:scale:n`, e.g. `voltage=0.01:10:log:31`; give once or twice.
        #[arg(long = "vary", required = true)]
        vary: Vec<String>,
        #[arg(long)]
        metric: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Regenerate a figure's data as `<panel>.csv` files (`all` for every figure).
    Figure {
        id: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare computed values with the published quotes.
    Reproduce {
        /// `as_printed`, `paper_numbers` or `both`.
        #[arg(long, default_value = "both")]
        convention: String,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `param=min:max:scale:n`.
pub fn parse_axis(spec: &str) -> Result<SweepAxis, CliError> {
    let usage = || {
        CliError::Usage(format!(
            "bad --vary `{spec}`, expected param=min:max:scale:n"
        ))
    };
    let (name, range) = spec.split_once('=').ok_or_else(usage)?;
    let parameter = SweepParameter::from_name(name)
        .ok_or_else(|| CliError::Usage(format!("unknown sweep parameter `{name}`")))?;
    let parts: Vec<&str> = range.split(':').collect();
    let [min, max, scale, samples] = parts.as_slice() else {
        return Err(usage());
    };
    let number = |s: &str| s.parse::<f64>().map_err(|_| usage());
    let scale = AxisScale::from_name(scale)
        .ok_or_else(|| CliError::Usage(format!("unknown scale `{scale}`")))?;
    let samples = samples.parse::<usize>().map_err(|_| usage())?;
    SweepAxis::new(parameter, number(min)?, number(max)?, scale, samples)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn write_file(
    path: &Path,
    write: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<(), CliError> {
    let err = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let mut out = BufWriter::new(File::create(path).map_err(err)?);
    write(&mut out).map_err(err)?;
    out.flush().map_err(err)
}

fn write_table(path: &Path, table: &Table) -> Result<(), CliError> {
    write_file(path, |w| table.write_csv(w))
}

fn time_axis(max: f64, samples: usize) -> Result<SweepAxis, CliError> {
    SweepAxis::new(SweepParameter::TimeTc, 0.0, max, AxisScale::Linear, samples)
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Runs one command, printing to `stdout`, and returns its exit code status.
pub fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let print = |stdout: &mut dyn Write, text: &str| {
        stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            })
    };
    match command {
        Command::Compute { config, out } => {
            let report = Report::compute(&load_config(&config)?)?;
            let text = report.to_json();
            match out {
                Some(path) => write_file(&path, |w| w.write_all(text.as_bytes()))?,
                None => print(stdout, &text)?,
            }
        }
        Command::Evolve {
            config,
            t_max_tc,
            samples,
            out,
        } => {
            let device = load_config(&config)?.to_device()?;
            let metrics = [
                Metric::VarX1,
                Metric::VarX2,
                Metric::Dx1Ratio,
                Metric::Dx2Ratio,
            ];
            let table = run_table(&device, &[], time_axis(t_max_tc, samples)?, &metrics)?;
            write_table(&out, &table)?;
        }
        Command::Phase {
            config,
            time_tc,
            samples,
            out,
        } => {
            let device = load_config(&config)?.to_device()?;
            let axis = SweepAxis {
                samples,
                ..phase_axis()
            };
            axis.validate()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let table = run_table(
                &device,
                &[(SweepParameter::TimeTc, time_tc)],
                axis,
                &[Metric::Dx1Ratio, Metric::Dx2Ratio],
            )?;
            write_table(&out, &table)?;
        }
        Command::Sweep {
            config,
            vary,
            metric,
            out,
        } => {
            let device = load_config(&config)?.to_device()?;
            let axes = vary
                .iter()
                .map(|s| parse_axis(s))
                .collect::<Result<Vec<_>, _>>()?;
            let metric = Metric::from_name(&metric).ok_or_else(|| {
                let known: Vec<&str> = Metric::ALL.iter().map(|m| m.name()).collect();
                CliError::Usage(format!(
                    "unknown metric `{metric}`, expected one of {}",
                    known.join(", ")
                ))
            })?;
            let result = run_grid(&device, &axes, metric)?;
            write_table(&out, &result.to_table())?;
        }
        Command::Figure { id, out } => {
            let ids = if id == "all" {
                FigureId::ALL.to_vec()
            } else {
                vec![FigureId::from_name(&id).ok_or_else(|| {
                    let known: Vec<&str> = FigureId::ALL.iter().map(|f| f.name()).collect();
                    CliError::Usage(format!(
                        "unknown figure `{id}`, expected one of {} or all",
                        known.join(", ")
                    ))
                })?]
            };
            std::fs::create_dir_all(&out).map_err(|source| CliError::Write {
                path: out.clone(),
                source,
            })?;
            for id in ids {
                for panel in figure_preset(id)? {
                    let path = out.join(format!("{}.csv", panel.name));
                    write_table(&path, &panel.table)?;
                    print(stdout, &format!("{}\n", path.display()))?;
                }
            }
        }
        Command::Reproduce { convention, json } => {
            let selection = ConventionSelection::from_name(&convention).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown convention `{convention}`, expected as_printed, paper_numbers or both"
                ))
            })?;
            let report = reproduce_report(selection)?;
            let text = if json {
                report.to_json()
            } else {
                report.to_text()
            };
            print(stdout, &text)?;
            return Ok(report.exit_code());
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(cli.command, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
