//! Seeded benchmark suites comparing strategies against the exhaustive
//! oracle.
//!
//! ```toml
//! seed = 7
//!
//! [[suite]]
//! name = "unit-bipartite"
//! graph = "bipartite"
//! density = 0.3
//! jobs = "unit"
//! machines = [2, 7]
//! count = [1, 10]
//! instances = 20
//! strategy = "unit-bipartite"
//! ```

use std::fmt::Write as _;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use smc_core::exact::{solve_exact, SearchConfig};
use smc_core::{SmcError, Time};

use crate::error::{CliError, CliResult};
use crate::gen::{self, GraphFamily, JobFamily};
use crate::strategy::{solve, SolveOptions, Strategy};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(rename = "suite")]
    pub suites: Vec<Suite>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    pub name: String,
    pub graph: GraphFamily,
    #[serde(default = "default_density")]
    pub density: f64,
    pub jobs: JobFamily,
    pub machines: [usize; 2],
    pub count: [usize; 2],
    pub instances: usize,
    #[serde(default = "default_strategy")]
    pub strategy: String,
    #[serde(default = "default_oracle")]
    pub oracle: bool,
}

fn default_density() -> f64 {
    0.4
}

fn default_strategy() -> String {
    "auto".into()
}

fn default_oracle() -> bool {
    true
}

impl BenchConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let config: BenchConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        for s in &config.suites {
            if s.machines[0] > s.machines[1] || s.count[0] > s.count[1] || s.machines[0] == 0 {
                return Err(CliError::Config(format!("suite {}: ranges must be non-empty, machines >= 1", s.name)));
            }
            if !(0.0..=1.0).contains(&s.density) {
                return Err(CliError::Config(format!("suite {}: density must lie in [0, 1]", s.name)));
            }
            Strategy::from_str(&s.strategy, false).map_err(|e| CliError::Config(format!("suite {}: {e}", s.name)))?;
        }
        Ok(config)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub suite: String,
    pub index: usize,
    pub m: usize,
    pub n: usize,
    pub strategy: Strategy,
    pub makespan: Time,
    pub optimum: Option<Time>,
    pub ceiling: Option<f64>,
}

impl Row {
    pub fn ratio(&self) -> Option<f64> {
        match self.optimum {
            Some(0) => Some(1.0),
            Some(opt) => Some(self.makespan as f64 / opt as f64),
            None => None,
        }
    }

    /// Measured ratio above the guaranteed ceiling.
    pub fn violates(&self) -> bool {
        match (self.optimum, self.ceiling) {
            (Some(opt), Some(c)) => self.makespan as f64 > c * opt as f64 + 1e-9,
            _ => false,
        }
    }
}

/// Per-instance generator derived from the config seed and the position.
fn instance_rng(seed: u64, suite: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 32) | index as u64);
    rng
}

pub fn run(config: &BenchConfig, opts: &SolveOptions) -> CliResult<Vec<Row>> {
    let mut rows = Vec::new();
    for (si, suite) in config.suites.iter().enumerate() {
        let strategy = Strategy::from_str(&suite.strategy, false).map_err(CliError::Config)?;
        for index in 0..suite.instances {
            let mut rng = instance_rng(config.seed, si, index);
            let m = rng.gen_range(suite.machines[0]..=suite.machines[1]);
            let n = rng.gen_range(suite.count[0]..=suite.count[1]);
            let instance = gen::instance(&mut rng, suite.graph, suite.density, suite.jobs, m, n);
            let outcome = solve(&instance, strategy, opts)?;
            let optimum = if suite.oracle {
                let config = SearchConfig { node_budget: opts.budget_nodes, ..SearchConfig::default() }.with_symmetry();
                match solve_exact(&instance, &config) {
                    Ok((_, opt)) => Some(opt),
                    Err(SmcError::BudgetExhausted(_)) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            rows.push(Row {
                suite: suite.name.clone(),
                index,
                m,
                n,
                strategy: outcome.strategy,
                makespan: outcome.makespan,
                optimum,
                ceiling: outcome.ceiling,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
}

fn cells(row: &Row) -> [String; 10] {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    [
        row.suite.clone(),
        row.index.to_string(),
        row.m.to_string(),
        row.n.to_string(),
        row.strategy.to_string(),
        row.makespan.to_string(),
        opt(row.optimum.map(|o| o.to_string())),
        opt(row.ratio().map(|r| format!("{r:.4}"))),
        opt(row.ceiling.map(|c| format!("{c:.4}"))),
        if row.violates() { "no" } else { "yes" }.into(),
    ]
}

const HEADER: [&str; 10] = ["suite", "index", "m", "n", "strategy", "makespan", "optimum", "ratio", "ceiling", "within"];

pub fn render(rows: &[Row], format: TableFormat) -> String {
    let table: Vec<[String; 10]> = rows.iter().map(cells).collect();
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(&HEADER.join(","));
            out.push('\n');
            for r in &table {
                out.push_str(&r.join(","));
                out.push('\n');
            }
        }
        TableFormat::Text => {
            let mut width: Vec<usize> = HEADER.iter().map(|h| h.len()).collect();
            for r in &table {
                for (w, c) in width.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cols: Vec<&str>| {
                let padded: Vec<String> = cols.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(HEADER.to_vec()));
            for r in &table {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
            let mut names: Vec<&str> = rows.iter().map(|r| r.suite.as_str()).collect();
            names.dedup();
            for name in names {
                let in_suite: Vec<&Row> = rows.iter().filter(|r| r.suite == name).collect();
                let worst = in_suite.iter().filter_map(|r| r.ratio()).fold(None, |a: Option<f64>, r| Some(a.map_or(r, |a| a.max(r))));
                let over = in_suite.iter().filter(|r| r.violates()).count();
                let _ = writeln!(
                    out,
                    "# {name}: {} instances, worst ratio {}, {over} above ceiling",
                    in_suite.len(),
                    worst.map_or("-".into(), |w| format!("{w:.4}"))
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONFIG: &str = r#"
seed = 11

[[suite]]
name = "unit-bipartite"
graph = "bipartite"
density = 0.3
jobs = "unit"
machines = [2, 7]
count = [1, 10]
instances = 6
strategy = "unit-bipartite"

[[suite]]
name = "short"
graph = "random"
jobs = "short-identical"
machines = [2, 5]
count = [1, 6]
instances = 6
strategy = "patterns"
"#;

    #[test]
    fn unit_bipartite_ratios_are_one() {
        let config = BenchConfig::parse(CONFIG).unwrap();
        let rows = run(&config, &SolveOptions::default()).unwrap();
        assert_eq!(rows.len(), 12);
        for r in rows.iter().filter(|r| r.suite == "unit-bipartite") {
            assert_eq!(r.ratio(), Some(1.0));
        }
        assert!(rows.iter().all(|r| !r.violates()));
    }

    #[test]
    fn fixed_seed_gives_identical_tables() {
        let config = BenchConfig::parse(CONFIG).unwrap();
        let a = render(&run(&config, &SolveOptions::default()).unwrap(), TableFormat::Text);
        let b = render(&run(&config, &SolveOptions::default()).unwrap(), TableFormat::Text);
        assert_eq!(a, b);
        let csv = render(&run(&config, &SolveOptions::default()).unwrap(), TableFormat::Csv);
        assert_eq!(csv.lines().count(), 13);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(BenchConfig::parse("seed = 1\n").is_err());
        let bad_strategy = CONFIG.replace("\"patterns\"", "\"magic\"");
        assert!(BenchConfig::parse(&bad_strategy).is_err());
        let bad_range = CONFIG.replace("[2, 5]", "[5, 2]");
        assert!(BenchConfig::parse(&bad_range).is_err());
    }
}
