//! Identical jobs with short blocking times (`0 < b2 <= b1 <= p`).
//!
//! A c-pattern staggers one job per machine of `c` disjoint independent sets
//! by `b1`; repeating patterns on a large c-IS gives schedules within a
//! constant factor of the optimum. `beta_c` extracts a c-IS certificate from
//! any schedule, which drives the matching lower bound.

use crate::error::{Result, SmcError};
use crate::graph::Cis;
use crate::model::{schedule_from_slots, Entry, Instance, Job, MachineId, Schedule, Time};
use crate::validate::validate_schedule;

pub const DEFAULT_BETA_GUARD: usize = 4;

/// Parameters of an identical short-blocking job in normalized orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternParams {
    pub b1: Time,
    pub p: Time,
    pub b2: Time,
}

impl PatternParams {
    pub fn new(job: Job) -> Result<Self> {
        let Job { b1, p, b2 } = job;
        if !(0 < b2 && b2 <= b1 && b1 <= p) {
            return Err(SmcError::Precondition(format!(
                "({b1}, {p}, {b2}) is not a short-blocking job with 0 < b2 <= b1 <= p"
            )));
        }
        Ok(PatternParams { b1, p, b2 })
    }

    pub fn q(&self) -> Time {
        self.b1 + self.p + self.b2
    }

    /// `ceil(p / b1)`; the lower bound uses `beta_{k+1}`.
    pub fn k(&self) -> usize {
        self.p.div_ceil(self.b1) as usize
    }

    /// Widest feasible pattern, `floor(p / b1) + 1`.
    pub fn cmax(&self) -> usize {
        (self.p / self.b1) as usize + 1
    }

    /// Length of a c-pattern, `q + (c - 1) * b1`.
    pub fn length(&self, c: usize) -> Time {
        self.q() + (c.max(1) as Time - 1) * self.b1
    }

    /// Guarantee of repeated widest patterns as the fraction
    /// `(q + floor(p / b1) * b1) / q`.
    pub fn ratio_ceiling(&self) -> (Time, Time) {
        (self.q() + (self.p / self.b1) * self.b1, self.q())
    }
}

/// Swaps `b1` and `b2` of identical jobs when `b2 > b1` (time reversal).
pub fn normalize_orientation(instance: &Instance) -> Result<(Instance, bool)> {
    if instance.n() == 0 {
        return Ok((instance.clone(), false));
    }
    let job = instance
        .common_job()
        .ok_or_else(|| SmcError::Precondition("jobs are not identical".into()))?;
    if job.b2 > job.b1 {
        Ok((Instance::identical(instance.graph.clone(), instance.n(), job.reversed()), true))
    } else {
        Ok((instance.clone(), false))
    }
}

/// Reverses time: a job starting at `S` ends up starting at `T - S - q_j`,
/// where `T` is the makespan. A feasible schedule for an instance maps to a
/// feasible schedule for the instance with `b1` and `b2` swapped.
pub fn mirror_schedule(instance: &Instance, schedule: &Schedule) -> Schedule {
    let horizon = schedule.makespan(instance);
    Schedule::new(
        schedule
            .entries
            .iter()
            .map(|e| Entry { start: horizon - e.start - instance.jobs[e.job].q(), ..*e })
            .collect(),
    )
    .sorted()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternFragment {
    /// `(machine, start)` per job, class by class.
    pub slots: Vec<(MachineId, Time)>,
    pub start: Time,
    pub length: Time,
}

/// A c-pattern at `t0`: machines of the k-th class start at `t0 + (k - 1) * b1`.
pub fn build_c_pattern(classes: &[Vec<MachineId>], params: &PatternParams, t0: Time) -> Result<PatternFragment> {
    let c = classes.len();
    if c > params.cmax() {
        return Err(SmcError::Parameter(format!(
            "a {c}-pattern exceeds the widest feasible width {}",
            params.cmax()
        )));
    }
    let slots = classes
        .iter()
        .enumerate()
        .flat_map(|(k, class)| class.iter().map(move |&v| (v, t0 + k as Time * params.b1)))
        .collect();
    Ok(PatternFragment { slots, start: t0, length: params.length(c) })
}

type Bits = Vec<u64>;

fn bits_union_count(sets: &[&Bits]) -> usize {
    let words = sets.first().map_or(0, |s| s.len());
    (0..words)
        .map(|w| sets.iter().fold(0u64, |acc, s| acc | s[w]).count_ones() as usize)
        .sum()
}

/// Machine sets blocking each candidate time, deduplicated.
fn blocking_sets(instance: &Instance, schedule: &Schedule) -> Vec<Bits> {
    let words = instance.m().div_ceil(64).max(1);
    // blocking intervals in doubled time units
    let mut intervals: Vec<(Time, Time, MachineId)> = Vec::new();
    let mut events = Vec::new();
    for e in &schedule.entries {
        let job = &instance.jobs[e.job];
        for (a, b) in job.blocking_offsets() {
            intervals.push((2 * (e.start + a), 2 * (e.start + b), e.machine));
        }
        events.extend([e.start, e.start + job.b1, e.start + job.q() - job.b2, e.start + job.q()]);
    }
    let mut candidates = crate::validate::doubled_midpoints(events);
    candidates.sort_unstable();
    let mut sets: Vec<Bits> = Vec::new();
    for x in candidates {
        let mut bits = vec![0u64; words];
        for &(a, b, machine) in &intervals {
            if a < x && x < b {
                bits[machine / 64] |= 1 << (machine % 64);
            }
        }
        if bits.iter().any(|&w| w != 0) {
            sets.push(bits);
        }
    }
    sets.sort();
    sets.dedup();
    sets
}

fn best_union<'s>(sets: &'s [Bits], c: usize, from: usize, chosen: &mut Vec<&'s Bits>, best: &mut (usize, Vec<&'s Bits>)) {
    if chosen.len() == c || from == sets.len() {
        let size = bits_union_count(chosen);
        if size > best.0 {
            *best = (size, chosen.clone());
        }
        return;
    }
    for i in from..sets.len() {
        chosen.push(&sets[i]);
        best_union(sets, c, i + 1, chosen, best);
        chosen.pop();
    }
}

fn beta_search(instance: &Instance, schedule: &Schedule, c: usize, guard: usize) -> Result<(usize, Vec<Bits>)> {
    if c == 0 {
        return Err(SmcError::Parameter("c must be at least 1".into()));
    }
    if c > guard {
        return Err(SmcError::SizeLimit { what: "beta tuple width c", limit: guard });
    }
    if !validate_schedule(instance, schedule)?.valid() {
        return Err(SmcError::InvalidSchedule);
    }
    let sets = blocking_sets(instance, schedule);
    let mut best = (0, Vec::new());
    best_union(&sets, c, 0, &mut Vec::new(), &mut best);
    let (size, chosen) = best;
    Ok((size, chosen.into_iter().cloned().collect()))
}

/// Largest number of distinct machines blocking some `c` time points.
///
/// Blocking is constant between consecutive event times, so midpoints of
/// consecutive events are the only candidates needed. Points sharing the same
/// blocking set are interchangeable, and repeats add nothing to a union.
pub fn beta_c(instance: &Instance, schedule: &Schedule, c: usize, guard: usize) -> Result<usize> {
    Ok(beta_search(instance, schedule, c, guard)?.0)
}

/// The c-IS certified by `beta_c`: the machines blocking the k-th chosen time
/// that were not already counted form the k-th class.
pub fn beta_cis(instance: &Instance, schedule: &Schedule, c: usize, guard: usize) -> Result<Cis> {
    let (_, chosen) = beta_search(instance, schedule, c, guard)?;
    let mut taken = vec![false; instance.m()];
    let mut classes = Vec::with_capacity(c);
    for bits in &chosen {
        let mut class = Vec::new();
        for v in 0..instance.m() {
            if bits[v / 64] >> (v % 64) & 1 == 1 && !std::mem::replace(&mut taken[v], true) {
                class.push(v);
            }
        }
        classes.push(class);
    }
    classes.resize(c, Vec::new());
    Ok(Cis { classes })
}

/// `q * ceil(n / beta)`: at most `beta` jobs start in any window of length `q`.
pub fn lower_bound_short(params: &PatternParams, n: usize, beta: usize) -> Result<Time> {
    if n == 0 {
        return Ok(0);
    }
    if beta == 0 {
        return Err(SmcError::Parameter("beta must be at least 1 when jobs exist".into()));
    }
    Ok(params.q() * n.div_ceil(beta) as Time)
}

/// `L * floor(n / beta) (+ q if beta does not divide n)` for a schedule in
/// which every window of length `window <= q` sees at most `beta` starts.
pub fn refined_lower_bound(params: &PatternParams, window: Time, n: usize, beta: usize) -> Result<Time> {
    if window > params.q() {
        return Err(SmcError::Parameter(format!("window {window} exceeds q = {}", params.q())));
    }
    if n == 0 {
        return Ok(0);
    }
    if beta == 0 {
        return Err(SmcError::Parameter("beta must be at least 1 when jobs exist".into()));
    }
    let tail = if n.is_multiple_of(beta) { 0 } else { params.q() };
    Ok(window * (n / beta) as Time + tail)
}

/// Repeats c-patterns on the non-empty classes of `cis` back-to-back, keeping
/// the `n` earliest slots (ties resolved towards lower machine ids).
///
/// A pattern wider than `floor(p / b1) + 1` is infeasible, so when `cis`
/// has more non-empty classes than that only the largest ones are used.
/// Instances with `b2 > b1` are solved time-reversed and mirrored back.
pub fn solve_patterns(instance: &Instance, cis: &Cis) -> Result<Schedule> {
    if instance.n() == 0 {
        return Ok(Schedule::default());
    }
    let (normalized, flipped) = normalize_orientation(instance)?;
    let params = PatternParams::new(normalized.jobs[0])?;
    if let Some(&v) = cis.classes.iter().flatten().find(|&&v| v >= instance.m()) {
        return Err(SmcError::UnknownMachine(v));
    }
    if !cis.is_valid_for(&instance.graph) {
        return Err(SmcError::Precondition("classes must be disjoint independent sets".into()));
    }
    let mut indexed: Vec<(usize, &Vec<MachineId>)> =
        cis.classes.iter().enumerate().filter(|(_, c)| !c.is_empty()).collect();
    if indexed.len() > params.cmax() {
        indexed.sort_by_key(|(i, c)| (std::cmp::Reverse(c.len()), *i));
        indexed.truncate(params.cmax());
        indexed.sort_by_key(|(i, _)| *i);
    }
    let classes: Vec<Vec<MachineId>> = indexed.into_iter().map(|(_, c)| c.clone()).collect();
    let size: usize = classes.iter().map(Vec::len).sum();
    if size == 0 {
        return Err(SmcError::Precondition("empty c-IS with jobs to schedule".into()));
    }
    let rounds = instance.n().div_ceil(size);
    let length = params.length(classes.len());
    let mut slots = Vec::with_capacity(rounds * size);
    for r in 0..rounds {
        slots.extend(build_c_pattern(&classes, &params, r as Time * length)?.slots);
    }
    slots.sort_by_key(|&(machine, start)| (start, machine));
    slots.truncate(instance.n());
    let schedule = schedule_from_slots(&slots).sorted();
    Ok(if flipped { mirror_schedule(&normalized, &schedule) } else { schedule })
}
