//! Conflict-freeness checks and schedule-level predicates.

use std::collections::VecDeque;
use std::ops::{Add, Sub};

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Result, SmcError};
use crate::model::{ConflictGraph, Entry, Instance, Job, JobId, MachineId, Schedule, Time};

/// Time values the validator can work with: integral times and exact rationals.
pub trait TimePoint: Copy + Ord + Add<Output = Self> + Sub<Output = Self> + std::fmt::Debug {
    fn from_time(t: Time) -> Self;
}

impl TimePoint for Time {
    fn from_time(t: Time) -> Self {
        t
    }
}

impl TimePoint for Ratio<i64> {
    fn from_time(t: Time) -> Self {
        Ratio::from_integer(t as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// Two jobs on the same machine with overlapping system times.
    MachineOverlap,
    /// Blocking intervals of jobs on adjacent machines overlap.
    ConflictBlockingOverlap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation<T = Time> {
    pub kind: ViolationKind,
    pub jobs: (JobId, JobId),
    /// The common open interval of the two offending intervals.
    pub interval: (T, T),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport<T = Time> {
    pub violations: Vec<Violation<T>>,
}

impl<T> ValidationReport<T> {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn overlap<T: TimePoint>(a: (T, T), b: (T, T)) -> Option<(T, T)> {
    let lo = a.0.max(b.0);
    let hi = a.1.min(b.1);
    (lo < hi).then_some((lo, hi))
}

fn blocking<T: TimePoint>(job: &Job, start: T) -> impl Iterator<Item = (T, T)> {
    job.blocking_offsets()
        .map(move |(a, b)| (start + T::from_time(a), start + T::from_time(b)))
}

/// Exhaustive conflict check over `(job, machine, start)` triples.
fn check<T: TimePoint>(instance: &Instance, items: &[(JobId, MachineId, T)]) -> ValidationReport<T> {
    let mut by_machine: Vec<Vec<(T, JobId)>> = vec![Vec::new(); instance.m()];
    for &(job, machine, start) in items {
        by_machine[machine].push((start, job));
    }
    for list in &mut by_machine {
        list.sort();
    }

    let mut violations = Vec::new();
    for list in &by_machine {
        for (i, &(si, ji)) in list.iter().enumerate() {
            let ci = si + T::from_time(instance.jobs[ji].q());
            for &(sk, jk) in &list[i + 1..] {
                if sk >= ci {
                    break;
                }
                let ck = sk + T::from_time(instance.jobs[jk].q());
                if let Some(interval) = overlap((si, ci), (sk, ck)) {
                    violations.push(Violation {
                        kind: ViolationKind::MachineOverlap,
                        jobs: (ji, jk),
                        interval,
                    });
                }
            }
        }
    }

    for (u, v) in instance.graph.edges() {
        for &(su, ju) in &by_machine[u] {
            for &(sv, jv) in &by_machine[v] {
                for bu in blocking(&instance.jobs[ju], su) {
                    for bv in blocking(&instance.jobs[jv], sv) {
                        if let Some(interval) = overlap(bu, bv) {
                            violations.push(Violation {
                                kind: ViolationKind::ConflictBlockingOverlap,
                                jobs: (ju, jv),
                                interval,
                            });
                        }
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}

/// Checks machine exclusivity and blocking conflicts on every edge.
///
/// Intervals are open, so intervals that only touch at an endpoint never
/// conflict. All violations are reported.
pub fn validate_schedule(instance: &Instance, schedule: &Schedule) -> Result<ValidationReport> {
    schedule.check_ids(instance)?;
    let items: Vec<_> = schedule
        .entries
        .iter()
        .map(|e| (e.job, e.machine, e.start))
        .collect();
    Ok(check(instance, &items))
}

pub fn is_valid(instance: &Instance, schedule: &Schedule) -> bool {
    validate_schedule(instance, schedule).is_ok_and(|r| r.valid())
}

fn require_valid(instance: &Instance, schedule: &Schedule) -> Result<()> {
    if validate_schedule(instance, schedule)?.valid() {
        Ok(())
    } else {
        Err(SmcError::InvalidSchedule)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalEntry {
    pub job: JobId,
    pub machine: MachineId,
    pub start: Ratio<i64>,
}

/// A schedule whose start times may be arbitrary non-negative rationals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RationalSchedule {
    pub entries: Vec<RationalEntry>,
}

impl RationalSchedule {
    fn check_ids(&self, instance: &Instance) -> Result<()> {
        for e in &self.entries {
            if e.start < Ratio::from_integer(0) {
                return Err(SmcError::NegativeStart(e.job));
            }
        }
        let shadow = Schedule::new(
            self.entries
                .iter()
                .map(|e| Entry { job: e.job, machine: e.machine, start: 0 })
                .collect(),
        );
        shadow.check_ids(instance)
    }
}

pub fn validate_rational(
    instance: &Instance,
    schedule: &RationalSchedule,
) -> Result<ValidationReport<Ratio<i64>>> {
    schedule.check_ids(instance)?;
    let items: Vec<_> = schedule
        .entries
        .iter()
        .map(|e| (e.job, e.machine, e.start))
        .collect();
    Ok(check(instance, &items))
}

/// Replaces every start by its floor. Feasibility is preserved for integral
/// job parameters and the makespan cannot grow.
pub fn round_to_integral(schedule: &RationalSchedule) -> Result<Schedule> {
    schedule
        .entries
        .iter()
        .map(|e| {
            if e.start < Ratio::from_integer(0) {
                return Err(SmcError::NegativeStart(e.job));
            }
            Ok(Entry {
                job: e.job,
                machine: e.machine,
                start: e.start.numer().div_floor(e.start.denom()) as Time,
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Schedule::new)
}

/// True iff jobs on adjacent machines never have overlapping system times.
pub fn is_basic(instance: &Instance, schedule: &Schedule) -> Result<bool> {
    require_valid(instance, schedule)?;
    let mut by_machine: Vec<Vec<&Entry>> = vec![Vec::new(); instance.m()];
    for e in &schedule.entries {
        by_machine[e.machine].push(e);
    }
    for (u, v) in instance.graph.edges() {
        for a in &by_machine[u] {
            for b in &by_machine[v] {
                let (first, second) = if a.start <= b.start { (a, b) } else { (b, a) };
                if schedule.completion(instance, first) > second.start {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prop {
    /// Identical jobs with `max(b1, b2) > p`.
    I,
    /// Equal system times with `b1_j > p_j` and `b2_j > p_j`.
    II,
    /// `b1_j > p_j'` and `b2_j > p_j'` for all job pairs.
    III,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PropSet {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
}

impl PropSet {
    pub fn contains(&self, prop: Prop) -> bool {
        match prop {
            Prop::I => self.i,
            Prop::II => self.ii,
            Prop::III => self.iii,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.i || self.ii || self.iii)
    }

    pub fn iter(&self) -> impl Iterator<Item = Prop> + '_ {
        [Prop::I, Prop::II, Prop::III]
            .into_iter()
            .filter(|p| self.contains(*p))
    }
}

/// Long-blocking properties under which every feasible schedule is basic.
pub fn classify_props(instance: &Instance) -> PropSet {
    let jobs = &instance.jobs;
    let identical = jobs.windows(2).all(|w| w[0] == w[1]);
    // with an empty blocking interval nothing stops a neighbor starting mid-job
    let i = identical && jobs.iter().all(|j| j.b1.max(j.b2) > j.p && j.b1 > 0 && j.b2 > 0);
    let equal_q = jobs.windows(2).all(|w| w[0].q() == w[1].q());
    let ii = equal_q && jobs.iter().all(|j| j.b1 > j.p && j.b2 > j.p);
    let iii = match jobs.iter().map(|j| j.p).max() {
        None => true,
        Some(max_p) => jobs.iter().all(|j| j.b1 > max_p && j.b2 > max_p),
    };
    PropSet { i, ii, iii }
}

/// Sorted distinct event times (starts and completions), doubled so that
/// midpoints stay integral.
pub(crate) fn doubled_midpoints(times: impl IntoIterator<Item = Time>) -> Vec<Time> {
    let mut events: Vec<Time> = times.into_iter().collect();
    events.sort_unstable();
    events.dedup();
    events.windows(2).map(|w| w[0] + w[1]).collect()
}

fn induces_bipartite(graph: &ConflictGraph, active: &[bool]) -> bool {
    let mut color = vec![u8::MAX; graph.m()];
    for s in 0..graph.m() {
        if !active[s] || color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if !active[w] {
                    continue;
                }
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff at every time, the machines running a job induce a bipartite
/// subgraph of the conflict graph.
///
/// This always holds for feasible unit-job schedules. Jobs whose processing
/// time exceeds their blocking times can legitimately run on three mutually
/// conflicting machines at once, so the check may return `false` for them.
pub fn active_bipartite_check(instance: &Instance, schedule: &Schedule) -> Result<bool> {
    require_valid(instance, schedule)?;
    let spans: Vec<(Time, Time, MachineId)> = schedule
        .entries
        .iter()
        .map(|e| (2 * e.start, 2 * schedule.completion(instance, e), e.machine))
        .collect();
    let mids = doubled_midpoints(spans.iter().flat_map(|&(s, c, _)| [s / 2, c / 2]));
    let mut active = vec![false; instance.m()];
    for x in mids {
        active.iter_mut().for_each(|a| *a = false);
        for &(s, c, machine) in &spans {
            if s < x && x < c {
                active[machine] = true;
            }
        }
        if !induces_bipartite(&instance.graph, &active) {
            return Ok(false);
        }
    }
    Ok(true)
}
