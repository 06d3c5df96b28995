//! Exhaustive branch-and-bound over integral start times.
//!
//! The search sweeps time forward. At each integer time every free machine
//! either starts a job of some class or stays idle, so each schedule is
//! enumerated once (jobs with identical parameters are interchangeable).
//! The state at a time boundary is the running job on every machine plus the
//! remaining job counts; states that failed once are memoized.

use std::collections::HashSet;

use crate::error::{Result, SmcError};
use crate::graph::{max_c_is_exact, DEFAULT_EXACT_CAP};
use crate::model::{Entry, Instance, Job, JobId, MachineId, Schedule, Time};
use crate::validate::classify_props;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Latest allowed completion time; `None` means the sum of system times.
    pub horizon: Option<Time>,
    pub node_budget: u64,
    /// Canonicalize memo states over twin machines (same neighborhood).
    pub symmetry: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { horizon: None, node_budget: 200_000_000, symmetry: false }
    }
}

impl SearchConfig {
    pub fn with_symmetry(mut self) -> Self {
        self.symmetry = true;
        self
    }
}

/// Groups of machines that are interchangeable by an automorphism swapping
/// them (equal open or equal closed neighborhoods).
pub(crate) fn twin_classes(instance: &Instance) -> Vec<Vec<MachineId>> {
    let g = &instance.graph;
    let mut class_of = vec![usize::MAX; g.m()];
    let mut classes: Vec<Vec<MachineId>> = Vec::new();
    for v in 0..g.m() {
        if class_of[v] != usize::MAX {
            continue;
        }
        class_of[v] = classes.len();
        let mut class = vec![v];
        for w in v + 1..g.m() {
            if class_of[w] != usize::MAX {
                continue;
            }
            let open = g.neighbors(v) == g.neighbors(w);
            let closed = g.has_edge(v, w) && {
                let nv: Vec<_> = g.neighbors(v).iter().filter(|&&x| x != w).collect();
                let nw: Vec<_> = g.neighbors(w).iter().filter(|&&x| x != v).collect();
                nv == nw
            };
            if open || closed {
                class_of[w] = class_of[v];
                class.push(w);
            }
        }
        classes.push(class);
    }
    classes
}

struct Search<'a> {
    instance: &'a Instance,
    limit: Time,
    classes: Vec<Job>,
    class_jobs: Vec<Vec<JobId>>,
    blocks: Vec<Vec<(Time, Time)>>,
    max_q: Time,
    min_q: Time,
    /// Parallel-capacity bound usable when every schedule is basic.
    basic_alpha: Option<usize>,
    twins: Option<Vec<Vec<MachineId>>>,
    running: Vec<Option<(usize, Time)>>,
    remaining: Vec<usize>,
    placed: Vec<(usize, MachineId, Time)>,
    failed: HashSet<Vec<u32>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(instance: &'a Instance, limit: Time, config: &SearchConfig, basic_alpha: Option<usize>) -> Self {
        let mut classes: Vec<Job> = instance.jobs.clone();
        classes.sort();
        classes.dedup();
        let mut class_jobs = vec![Vec::new(); classes.len()];
        for (id, job) in instance.jobs.iter().enumerate() {
            let k = classes.binary_search(job).expect("class exists");
            class_jobs[k].push(id);
        }
        let blocks = classes.iter().map(|j| j.blocking_offsets().collect()).collect();
        let remaining = class_jobs.iter().map(Vec::len).collect();
        Search {
            instance,
            limit,
            max_q: classes.iter().map(Job::q).max().unwrap_or(1),
            min_q: classes.iter().map(Job::q).min().unwrap_or(1),
            classes,
            class_jobs,
            blocks,
            basic_alpha,
            twins: config.symmetry.then(|| twin_classes(instance)),
            running: vec![None; instance.m()],
            remaining,
            placed: Vec::new(),
            failed: HashSet::new(),
            nodes: 0,
            budget: config.node_budget,
        }
    }

    fn key(&self, t: Time) -> Vec<u32> {
        let code = |slot: &Option<(usize, Time)>| -> u32 {
            match slot {
                Some((k, s)) if s + self.classes[*k].q() > t => {
                    1 + (*k as u32) * (self.max_q as u32) + (t - s) as u32
                }
                _ => 0,
            }
        };
        let mut key: Vec<u32> = Vec::with_capacity(self.running.len() + self.remaining.len() + 1);
        key.push(t as u32);
        match &self.twins {
            None => key.extend(self.running.iter().map(code)),
            Some(twins) => {
                for class in twins {
                    let mut codes: Vec<u32> = class.iter().map(|&v| code(&self.running[v])).collect();
                    codes.sort_unstable();
                    key.extend(codes);
                }
            }
        }
        key.extend(self.remaining.iter().map(|&r| r as u32));
        key
    }

    fn conflicts(&self, class: usize, machine: MachineId, t: Time) -> bool {
        for &w in self.instance.graph.neighbors(machine) {
            let Some((kw, sw)) = self.running[w] else { continue };
            if sw + self.classes[kw].q() <= t {
                continue;
            }
            for &(a, b) in &self.blocks[class] {
                for &(c, d) in &self.blocks[kw] {
                    if (t + a).max(sw + c) < (t + b).min(sw + d) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn hopeless(&self, t: Time) -> bool {
        let remaining_jobs: usize = self.remaining.iter().sum();
        if remaining_jobs == 0 {
            return false;
        }
        if t + self.min_q > self.limit {
            return true;
        }
        let demand: Time = self
            .remaining
            .iter()
            .zip(&self.classes)
            .map(|(&r, j)| r as Time * j.q())
            .sum();
        let mut supply: Time = 0;
        let mut slots: Time = 0;
        for slot in &self.running {
            let free = match slot {
                Some((k, s)) => (s + self.classes[*k].q()).max(t),
                None => t,
            };
            let room = self.limit.saturating_sub(free);
            supply += room;
            slots += room / self.min_q;
        }
        if demand > supply || (remaining_jobs as Time) > slots {
            return true;
        }
        if let Some(alpha) = self.basic_alpha {
            // Basic schedules keep at most alpha jobs running at once, so jobs can
            // be regrouped onto alpha lanes without moving their starts.
            let left: Vec<Time> = self
                .running
                .iter()
                .filter_map(|slot| slot.and_then(|(k, s)| (s + self.classes[k].q()).checked_sub(t)))
                .filter(|&r| r > 0)
                .collect();
            if left.len() > alpha {
                return true;
            }
            let span = self.limit - t;
            let idle = (alpha - left.len()) as Time;
            let lane_room: Time = left.iter().map(|&r| span.saturating_sub(r)).sum::<Time>() + idle * span;
            let lane_slots: Time = left.iter().map(|&r| span.saturating_sub(r) / self.min_q).sum::<Time>() + idle * (span / self.min_q);
            if demand > lane_room || remaining_jobs as Time > lane_slots {
                return true;
            }
        }
        false
    }

    fn boundary(&mut self, t: Time) -> Result<bool> {
        if self.remaining.iter().all(|&r| r == 0) {
            return Ok(true);
        }
        if self.hopeless(t) {
            return Ok(false);
        }
        let key = self.key(t);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let found = self.step(t, 0)?;
        if !found {
            self.failed.insert(key);
        }
        Ok(found)
    }

    fn step(&mut self, t: Time, machine: MachineId) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SmcError::BudgetExhausted(self.budget));
        }
        if machine == self.running.len() {
            return self.boundary(t + 1);
        }
        let busy = matches!(self.running[machine], Some((k, s)) if s + self.classes[k].q() > t);
        if !busy {
            for class in 0..self.classes.len() {
                if self.remaining[class] == 0 || t + self.classes[class].q() > self.limit {
                    continue;
                }
                if self.conflicts(class, machine, t) {
                    continue;
                }
                let saved = self.running[machine].replace((class, t));
                self.remaining[class] -= 1;
                self.placed.push((class, machine, t));
                if self.remaining.iter().all(|&r| r == 0) || self.step(t, machine + 1)? {
                    return Ok(true);
                }
                self.placed.pop();
                self.remaining[class] += 1;
                self.running[machine] = saved;
            }
        }
        self.step(t, machine + 1)
    }

    fn schedule(&self) -> Schedule {
        let mut next = vec![0usize; self.classes.len()];
        let entries = self
            .placed
            .iter()
            .map(|&(class, machine, start)| {
                let job = self.class_jobs[class][next[class]];
                next[class] += 1;
                Entry { job, machine, start }
            })
            .collect();
        Schedule::new(entries).sorted()
    }
}

fn basic_alpha(instance: &Instance) -> Option<usize> {
    if classify_props(instance).is_empty() || instance.m() > DEFAULT_EXACT_CAP {
        return None;
    }
    max_c_is_exact(&instance.graph, 1, DEFAULT_EXACT_CAP).ok().map(|cis| cis.size())
}

fn horizon(instance: &Instance, config: &SearchConfig) -> Result<Time> {
    let h = config.horizon.unwrap_or_else(|| instance.total_q());
    if instance.n() > 0 && h < instance.max_q() {
        return Err(SmcError::Parameter(format!(
            "horizon {h} is shorter than the longest job ({})",
            instance.max_q()
        )));
    }
    Ok(h)
}

struct Run {
    found: Option<Schedule>,
    nodes: u64,
}

fn decide(instance: &Instance, limit: Time, config: &SearchConfig, alpha: Option<usize>, spent: u64) -> Result<Run> {
    if instance.n() == 0 {
        return Ok(Run { found: Some(Schedule::default()), nodes: 0 });
    }
    if instance.m() == 0 {
        return Ok(Run { found: None, nodes: 0 });
    }
    let mut search = Search::new(instance, limit, config, alpha);
    search.budget = config.node_budget.saturating_sub(spent);
    let found = search.boundary(0)?;
    Ok(Run { found: found.then(|| search.schedule()), nodes: search.nodes })
}

/// True iff some feasible schedule finishes by `limit`.
pub fn optimal_makespan_decision(instance: &Instance, limit: Time, config: &SearchConfig) -> Result<bool> {
    if instance.n() > 0 && limit >= instance.total_q() && instance.m() > 0 {
        return Ok(true);
    }
    Ok(decide(instance, limit, config, basic_alpha(instance), 0)?.found.is_some())
}

/// A minimum-makespan schedule and its makespan.
///
/// Candidate makespans are tried upward from the trivial lower bound; the
/// first feasible one is optimal.
pub fn solve_exact(instance: &Instance, config: &SearchConfig) -> Result<(Schedule, Time)> {
    if instance.n() == 0 {
        return Ok((Schedule::default(), 0));
    }
    if instance.m() == 0 {
        return Err(SmcError::Precondition("jobs but no machines".into()));
    }
    let horizon = horizon(instance, config)?;
    let alpha = basic_alpha(instance);
    let m = instance.m() as Time;
    let mut lower = instance.max_q().max(instance.total_q().div_ceil(m));
    if let Some(a) = alpha {
        lower = lower.max(instance.total_q().div_ceil(a as Time));
    }
    let mut spent = 0;
    for limit in lower..=horizon {
        let run = decide(instance, limit, config, alpha, spent)?;
        spent += run.nodes;
        if let Some(schedule) = run.found {
            let makespan = schedule.makespan(instance);
            return Ok((schedule, makespan));
        }
    }
    Err(SmcError::Precondition(format!("no feasible schedule within horizon {horizon}")))
}
