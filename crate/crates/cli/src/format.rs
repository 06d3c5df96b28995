//! Line-based instance and schedule files.
//!
//! ```text
//! smc 1
//! machines 3
//! edge 0 1
//! edge 1 2
//! jobs identical 5 2 1 2
//! ```
//!
//! Instead of `jobs identical n b1 p b2`, jobs may be listed one per line as
//! `job b1 p b2`. Schedule files carry the digest of the canonical instance
//! text so they cannot be checked against the wrong instance.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use smc_core::{ConflictGraph, Entry, Instance, Job, Schedule, Time};

use crate::error::{CliError, CliResult};

const INSTANCE_HEADER: &str = "smc 1";
const SCHEDULE_HEADER: &str = "smc-schedule 1";

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn numbers<T: std::str::FromStr>(line: usize, words: &[&str], count: usize, what: &str) -> CliResult<Vec<T>> {
    if words.len() != count {
        return Err(CliError::parse(line, format!("{what} takes {count} numbers")));
    }
    words
        .iter()
        .map(|w| w.parse().map_err(|_| CliError::parse(line, format!("`{w}` is not a non-negative integer"))))
        .collect()
}

fn job(line: usize, b1: Time, p: Time, b2: Time) -> CliResult<Job> {
    Job::new(b1, p, b2).map_err(|e| CliError::parse(line, e.to_string()))
}

pub fn parse_instance(text: &str) -> CliResult<Instance> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, words)) if words.join(" ") == INSTANCE_HEADER => {}
        Some((line, _)) => return Err(CliError::parse(line, format!("expected header `{INSTANCE_HEADER}`"))),
        None => return Err(CliError::parse(1, "empty instance file")),
    }
    let mut graph: Option<ConflictGraph> = None;
    let mut seen_edges = BTreeSet::new();
    let mut jobs: Vec<Job> = Vec::new();
    let mut identical = false;
    for (line, words) in lines {
        let (keyword, rest) = (words[0], &words[1..]);
        if keyword == "machines" {
            if graph.is_some() {
                return Err(CliError::parse(line, "machines given twice"));
            }
            let m: Vec<usize> = numbers(line, rest, 1, "machines")?;
            graph = Some(ConflictGraph::new(m[0]));
            continue;
        }
        let Some(g) = graph.as_mut() else {
            return Err(CliError::parse(line, "`machines` must come before edges and jobs"));
        };
        match keyword {
            "edge" => {
                let uv: Vec<usize> = numbers(line, rest, 2, "edge")?;
                let key = (uv[0].min(uv[1]), uv[0].max(uv[1]));
                if !seen_edges.insert(key) {
                    return Err(CliError::parse(line, format!("duplicate edge {} {}", key.0, key.1)));
                }
                g.add_edge(uv[0], uv[1]).map_err(|e| CliError::parse(line, e.to_string()))?;
            }
            "job" => {
                if identical {
                    return Err(CliError::parse(line, "`job` lines cannot follow `jobs identical`"));
                }
                let v: Vec<Time> = numbers(line, rest, 3, "job")?;
                jobs.push(job(line, v[0], v[1], v[2])?);
            }
            "jobs" => {
                if rest.first() != Some(&"identical") {
                    return Err(CliError::parse(line, "expected `jobs identical <n> <b1> <p> <b2>`"));
                }
                if identical || !jobs.is_empty() {
                    return Err(CliError::parse(line, "jobs given twice"));
                }
                let v: Vec<Time> = numbers(line, &rest[1..], 4, "jobs identical")?;
                let j = job(line, v[1], v[2], v[3])?;
                jobs = vec![j; v[0] as usize];
                identical = true;
            }
            other => return Err(CliError::parse(line, format!("unknown keyword `{other}`"))),
        }
    }
    let graph = graph.ok_or_else(|| CliError::parse(1, "missing `machines` line"))?;
    Ok(Instance::new(graph, jobs))
}

/// Sorted edges, one job line form, single spaces.
pub fn canonical_instance(instance: &Instance) -> String {
    let mut out = format!("{INSTANCE_HEADER}\nmachines {}\n", instance.m());
    for (u, v) in instance.graph.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    match instance.common_job() {
        Some(j) if instance.n() > 1 => {
            let _ = writeln!(out, "jobs identical {} {} {} {}", instance.n(), j.b1, j.p, j.b2);
        }
        _ => {
            for j in &instance.jobs {
                let _ = writeln!(out, "job {} {} {}", j.b1, j.p, j.b2);
            }
        }
    }
    out
}

/// SHA-256 of the canonical instance text, in hex.
pub fn instance_hash(instance: &Instance) -> String {
    format!("{:x}", Sha256::digest(canonical_instance(instance).as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleFile {
    pub instance_hash: String,
    pub makespan: Time,
    pub schedule: Schedule,
}

impl ScheduleFile {
    pub fn new(instance: &Instance, schedule: &Schedule) -> Self {
        let mut schedule = schedule.clone();
        schedule.entries.sort_by_key(|e| e.job);
        ScheduleFile { instance_hash: instance_hash(instance), makespan: schedule.makespan(instance), schedule }
    }

    pub fn emit(&self) -> String {
        let mut out = format!(
            "{SCHEDULE_HEADER}\ninstance {}\nmakespan {}\n# job machine start\n",
            self.instance_hash, self.makespan
        );
        for e in &self.schedule.entries {
            let _ = writeln!(out, "{} {} {}", e.job, e.machine, e.start);
        }
        out
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut lines = content_lines(text);
        let mut header = |key: &str| -> CliResult<(usize, String)> {
            match lines.next() {
                Some((line, words)) if key == SCHEDULE_HEADER && words.join(" ") == key => Ok((line, String::new())),
                Some((line, words)) if words.len() == 2 && words[0] == key => Ok((line, words[1].to_string())),
                Some((line, _)) => Err(CliError::parse(line, format!("expected `{key}`"))),
                None => Err(CliError::parse(1, format!("missing `{key}`"))),
            }
        };
        header(SCHEDULE_HEADER)?;
        let (_, hash) = header("instance")?;
        let (line, makespan) = header("makespan")?;
        let makespan = makespan.parse().map_err(|_| CliError::parse(line, "makespan must be an integer"))?;
        let mut entries = Vec::new();
        for (line, words) in lines {
            let v: Vec<u64> = numbers(line, &words, 3, "an entry")?;
            entries.push(Entry { job: v[0] as usize, machine: v[1] as usize, start: v[2] });
        }
        Ok(ScheduleFile { instance_hash: hash, makespan, schedule: Schedule::new(entries) })
    }

    /// The schedule, provided it was written for `instance`.
    pub fn for_instance(self, instance: &Instance) -> CliResult<Schedule> {
        let expected = instance_hash(instance);
        if self.instance_hash != expected {
            return Err(CliError::HashMismatch { expected, found: self.instance_hash });
        }
        self.schedule.check_ids(instance)?;
        Ok(self.schedule)
    }
}
