//! Command-line front end: instance and schedule files, solving, validation,
//! bounds, Gantt charts and seeded benchmarks.

pub mod bench;
pub mod error;
pub mod format;
pub mod gantt;
pub mod gen;
pub mod strategy;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use smc_core::validate::{active_bipartite_check, is_basic, validate_schedule, ViolationKind};
use smc_core::Instance;

use crate::bench::{BenchConfig, TableFormat};
use crate::error::{CliError, CliResult};
use crate::format::{parse_instance, ScheduleFile};
use crate::strategy::{bound_report, solve, SolveOptions, Strategy};

#[derive(Debug, Parser)]
#[command(name = "smc", version, about = "Makespan scheduling with blocking times on conflicting machines")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Limits {
    /// Node budget for the exhaustive search.
    #[arg(long, env = "SMC_BUDGET_NODES", default_value_t = SolveOptions::default().budget_nodes)]
    pub budget_nodes: u64,
    /// Largest machine count for exact independent sets and exact search.
    #[arg(long, default_value_t = SolveOptions::default().cap_m)]
    pub cap_m: usize,
}

impl Limits {
    fn options(&self) -> SolveOptions {
        SolveOptions { budget_nodes: self.budget_nodes, cap_m: self.cap_m }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ChartFormat {
    Text,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance and write the schedule file.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
        /// Where to write the schedule file.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Check a schedule file against an instance.
    Validate { instance: PathBuf, schedule: PathBuf },
    /// Print lower bounds with their sources and the best upper bound.
    Bound {
        instance: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// Render a schedule as a Gantt chart.
    Gantt {
        instance: PathBuf,
        schedule: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ChartFormat::Text)]
        format: ChartFormat,
    },
    /// Run seeded benchmark suites against the exhaustive oracle.
    Bench {
        config: PathBuf,
        /// Overrides the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write_to(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    let result = match path {
        Some(p) => std::fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    };
    result.map_err(|source| CliError::Io {
        path: path.map_or("<stdout>".into(), |p| p.display().to_string()),
        source,
    })
}

fn load_instance(path: &Path) -> CliResult<Instance> {
    parse_instance(&read(path)?).map_err(|e| match e {
        CliError::Parse { line, message } => CliError::Parse { line, message: format!("{}: {message}", path.display()) },
        other => other,
    })
}

fn load_schedule(instance: &Instance, path: &Path) -> CliResult<smc_core::Schedule> {
    ScheduleFile::parse(&read(path)?)?.for_instance(instance)
}

fn yes(flag: bool) -> &'static str {
    if flag { "yes" } else { "no" }
}

/// Runs one command, returning the process exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    let mut report = String::new();
    let code = match cli.command {
        Command::Solve { instance, strategy, out, limits } => {
            let inst = load_instance(&instance)?;
            let outcome = solve(&inst, strategy, &limits.options())?;
            if let Some(path) = out.as_deref() {
                write_to(Some(path), &ScheduleFile::new(&inst, &outcome.schedule).emit(), stdout)?;
            }
            report = format!(
                "strategy {}\nmakespan {}\nlower-bound {}\nstatus {}\n",
                outcome.strategy, outcome.makespan, outcome.lower_bound, outcome.status
            );
            0
        }
        Command::Validate { instance, schedule } => {
            let inst = load_instance(&instance)?;
            let sched = load_schedule(&inst, &schedule)?;
            let checked = validate_schedule(&inst, &sched)?;
            let complete = sched.is_complete(&inst);
            report.push_str(&format!("jobs {} of {}\n", sched.len(), inst.n()));
            for v in &checked.violations {
                let kind = match v.kind {
                    ViolationKind::MachineOverlap => "machine-overlap",
                    ViolationKind::ConflictBlockingOverlap => "conflict-blocking-overlap",
                };
                report.push_str(&format!(
                    "violation {kind} jobs {} {} during ({}, {})\n",
                    v.jobs.0, v.jobs.1, v.interval.0, v.interval.1
                ));
            }
            let valid = checked.valid() && complete;
            report.push_str(&format!("valid {}\n", yes(valid)));
            if checked.valid() {
                report.push_str(&format!("makespan {}\n", sched.makespan(&inst)));
                report.push_str(&format!("basic {}\n", yes(is_basic(&inst, &sched)?)));
                report.push_str(&format!("active-bipartite {}\n", yes(active_bipartite_check(&inst, &sched)?)));
            }
            if valid { 0 } else { 1 }
        }
        Command::Bound { instance, limits } => {
            let inst = load_instance(&instance)?;
            let bounds = bound_report(&inst, &limits.options())?;
            for b in &bounds.lower {
                report.push_str(&format!("lower {} ({})\n", b.value, b.source.describe()));
            }
            report.push_str(&format!("best-lower {}\n", bounds.best_lower()));
            if let Some(u) = bounds.upper {
                report.push_str(&format!("upper {} ({})\n", u.value, u.source.describe()));
            }
            0
        }
        Command::Gantt { instance, schedule, out, format } => {
            let inst = load_instance(&instance)?;
            let sched = load_schedule(&inst, &schedule)?;
            let chart = match format {
                ChartFormat::Text => gantt::render_text(&inst, &sched),
                ChartFormat::Svg => gantt::render_svg(&inst, &sched),
            };
            write_to(out.as_deref(), &chart, stdout)?;
            0
        }
        Command::Bench { config, seed, format, out, limits } => {
            let mut cfg = BenchConfig::parse(&read(&config)?)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let rows = bench::run(&cfg, &limits.options())?;
            write_to(out.as_deref(), &bench::render(&rows, format), stdout)?;
            0
        }
    };
    write_to(None, &report, stdout)?;
    Ok(code)
}
