//! Long blocking times: every feasible schedule is basic, so scheduling
//! reduces to classical makespan minimization on an independent set.

use std::collections::HashMap;

use crate::error::{Result, SmcError};
use crate::model::{Entry, Instance, JobId, MachineId, Schedule, Time};
use crate::validate::{classify_props, PropSet};

/// Jobs assigned to the machines of an independent set, run back-to-back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsAssignment {
    pub machines: Vec<MachineId>,
    pub queues: Vec<Vec<JobId>>,
    pub loads: Vec<Time>,
}

impl IsAssignment {
    fn empty(machines: &[MachineId]) -> Self {
        IsAssignment {
            machines: machines.to_vec(),
            queues: vec![Vec::new(); machines.len()],
            loads: vec![0; machines.len()],
        }
    }

    fn push(&mut self, slot: usize, job: JobId, q: Time) {
        self.queues[slot].push(job);
        self.loads[slot] += q;
    }

    pub fn to_schedule(&self, instance: &Instance) -> Schedule {
        let mut entries = Vec::new();
        for (slot, queue) in self.queues.iter().enumerate() {
            let mut t = 0;
            for &job in queue {
                entries.push(Entry { job, machine: self.machines[slot], start: t });
                t += instance.jobs[job].q();
            }
        }
        Schedule::new(entries).sorted()
    }
}

fn check_is(instance: &Instance, is: &[MachineId]) -> Result<()> {
    if let Some(&v) = is.iter().find(|&&v| v >= instance.m()) {
        return Err(SmcError::UnknownMachine(v));
    }
    if !instance.graph.is_independent(is) {
        return Err(SmcError::Precondition("machine set is not independent".into()));
    }
    if is.is_empty() && instance.n() > 0 {
        return Err(SmcError::Precondition("empty independent set with jobs to schedule".into()));
    }
    Ok(())
}

/// Round-robin distribution of equal-q jobs: job `k` goes to machine `k mod |is|`
/// at start `(k / |is|) * q`.
pub fn schedule_evenly_on_is(instance: &Instance, is: &[MachineId]) -> Result<Schedule> {
    check_is(instance, is)?;
    let Some(q) = instance.jobs.first().map(|j| j.q()) else {
        return Ok(Schedule::default());
    };
    if instance.jobs.iter().any(|j| j.q() != q) {
        return Err(SmcError::Precondition("even distribution needs equal system times".into()));
    }
    let k = is.len();
    let entries = (0..instance.n())
        .map(|job| Entry { job, machine: is[job % k], start: (job / k) as Time * q })
        .collect();
    Ok(Schedule::new(entries).sorted())
}

fn lpt_assignment(instance: &Instance, is: &[MachineId]) -> IsAssignment {
    let mut order: Vec<JobId> = (0..instance.n()).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(instance.jobs[j].q()), j));
    let mut assignment = IsAssignment::empty(is);
    for job in order {
        let slot = (0..is.len())
            .min_by_key(|&s| (assignment.loads[s], s))
            .expect("independent set is non-empty");
        assignment.push(slot, job, instance.jobs[job].q());
    }
    assignment
}

fn require_prop_iii(instance: &Instance) -> Result<()> {
    if classify_props(instance).iii {
        Ok(())
    } else {
        Err(SmcError::Precondition("instance does not satisfy PROP-III".into()))
    }
}

/// Longest-system-time-first list scheduling on an independent set.
pub fn schedule_lpt_on_is(instance: &Instance, is: &[MachineId]) -> Result<Schedule> {
    require_prop_iii(instance)?;
    check_is(instance, is)?;
    if instance.n() == 0 {
        return Ok(Schedule::default());
    }
    Ok(lpt_assignment(instance, is).to_schedule(instance))
}

/// Optimal partition of the jobs onto the machines of `is`, found by a
/// dynamic program over sorted load vectors. `budget` caps the number of
/// distinct load vectors kept in any layer.
pub fn small_exact_on_is(instance: &Instance, is: &[MachineId], budget: usize) -> Result<Schedule> {
    require_prop_iii(instance)?;
    check_is(instance, is)?;
    if instance.n() == 0 {
        return Ok(Schedule::default());
    }
    let k = is.len();
    let mut order: Vec<JobId> = (0..instance.n()).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(instance.jobs[j].q()), j));
    let upper = lpt_assignment(instance, is).loads.into_iter().max().unwrap_or(0);

    // layer i: sorted load vector -> (parent vector, slot index in the parent)
    let mut layers: Vec<HashMap<Vec<Time>, (Vec<Time>, usize)>> = Vec::with_capacity(order.len());
    let mut frontier: Vec<Vec<Time>> = vec![vec![0; k]];
    for &job in &order {
        let q = instance.jobs[job].q();
        let mut next: HashMap<Vec<Time>, (Vec<Time>, usize)> = HashMap::new();
        for loads in &frontier {
            for slot in 0..k {
                if slot > 0 && loads[slot] == loads[slot - 1] {
                    continue;
                }
                if loads[slot] + q > upper {
                    continue;
                }
                let mut child = loads.clone();
                child[slot] += q;
                child.sort_unstable();
                next.entry(child).or_insert_with(|| (loads.clone(), slot));
            }
        }
        if next.len() > budget {
            return Err(SmcError::SizeLimit { what: "load-vector states", limit: budget });
        }
        let mut keys: Vec<Vec<Time>> = next.keys().cloned().collect();
        keys.sort();
        frontier = keys;
        layers.push(next);
    }
    let best = frontier
        .iter()
        .min_by_key(|v| (v.iter().copied().max().unwrap_or(0), (*v).clone()))
        .expect("LPT makespan bounds a reachable state")
        .clone();

    // walk back to recover which sorted-slot each job took, then map slots to machines
    let mut choices = Vec::with_capacity(order.len());
    let mut state = best;
    for layer in layers.iter().rev() {
        let (parent, slot) = layer[&state].clone();
        choices.push((parent.clone(), slot));
        state = parent;
    }
    choices.reverse();
    let mut assignment = IsAssignment::empty(is);
    // physical machine loads kept alongside; pick the lowest machine holding the sorted slot's load
    for (&job, (parent, slot)) in order.iter().zip(&choices) {
        let target = parent[*slot];
        let machine_slot = (0..k)
            .find(|&s| assignment.loads[s] == target)
            .expect("sorted loads mirror physical loads");
        assignment.push(machine_slot, job, instance.jobs[job].q());
    }
    Ok(assignment.to_schedule(instance))
}

/// Where a bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundSource {
    LongestJob,
    MachineAverage,
    IndependentSetAverage,
    EqualSystemTimeRounds,
    PatternCapacity,
    ExactSolver,
    Lpt,
    EvenDistribution,
    Patterns,
    UnitComplete,
    UnitBipartite,
    Sequential,
}

impl BoundSource {
    pub fn describe(&self) -> &'static str {
        match self {
            BoundSource::LongestJob => "every schedule runs its longest job: max q_j",
            BoundSource::MachineAverage => "machines run jobs sequentially: ceil(sum q_j / m)",
            BoundSource::IndependentSetAverage => {
                "long blocking makes schedules basic, so at most alpha_1 jobs run at once: ceil(sum q_j / alpha_1)"
            }
            BoundSource::EqualSystemTimeRounds => "equal system times on alpha_1 machines: q * ceil(n / alpha_1)",
            BoundSource::PatternCapacity => "at most beta jobs start per window of length q: q * ceil(n / beta)",
            BoundSource::ExactSolver => "exhaustive search",
            BoundSource::Lpt => "list scheduling on an independent set",
            BoundSource::EvenDistribution => "even distribution on an independent set",
            BoundSource::Patterns => "repeated c-patterns on a c-IS",
            BoundSource::UnitComplete => "two-machine alternation on a complete graph",
            BoundSource::UnitBipartite => "star forest AB-schedule",
            BoundSource::Sequential => "all jobs back-to-back on one machine",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub value: Time,
    pub source: BoundSource,
}

/// Lower bounds (each with its source) and the best known upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundReport {
    pub lower: Vec<Bound>,
    pub upper: Option<Bound>,
}

impl BoundReport {
    pub fn best_lower(&self) -> Time {
        self.lower.iter().map(|b| b.value).max().unwrap_or(0)
    }

    pub fn add_lower(&mut self, value: Time, source: BoundSource) {
        self.lower.push(Bound { value, source });
    }

    pub fn offer_upper(&mut self, value: Time, source: BoundSource) {
        if self.upper.is_none_or(|u| value < u.value) {
            self.upper = Some(Bound { value, source });
        }
    }
}

/// Bounds for long-blocking instances given `alpha1` (the size of a maximum
/// independent set) and an independent set `is` to build the upper bound on.
///
/// The average-load bounds rely on every schedule being basic and are only
/// reported when one of the PROP properties holds.
pub fn longblock_bounds(instance: &Instance, alpha1: usize, is: &[MachineId]) -> Result<BoundReport> {
    if alpha1 == 0 {
        return Err(SmcError::Parameter("alpha1 must be at least 1".into()));
    }
    let mut report = BoundReport::default();
    if instance.n() == 0 {
        report.add_lower(0, BoundSource::LongestJob);
        report.offer_upper(0, BoundSource::Lpt);
        return Ok(report);
    }
    report.add_lower(instance.max_q(), BoundSource::LongestJob);
    if instance.m() > 0 {
        report.add_lower(instance.total_q().div_ceil(instance.m() as Time), BoundSource::MachineAverage);
    }
    let props: PropSet = classify_props(instance);
    if !props.is_empty() {
        report.add_lower(instance.total_q().div_ceil(alpha1 as Time), BoundSource::IndependentSetAverage);
        let q = instance.jobs[0].q();
        if instance.jobs.iter().all(|j| j.q() == q) {
            let rounds = instance.n().div_ceil(alpha1) as Time;
            report.add_lower(q * rounds, BoundSource::EqualSystemTimeRounds);
        }
    }
    check_is(instance, is)?;
    // any assignment to an independent set is conflict-free
    let lpt = lpt_assignment(instance, is).to_schedule(instance);
    report.offer_upper(lpt.makespan(instance), BoundSource::Lpt);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConflictGraph, Job};
    use crate::validate::{is_basic, is_valid};

    fn job(b1: Time, p: Time, b2: Time) -> Job {
        Job::new(b1, p, b2).unwrap()
    }

    #[test]
    fn even_distribution_examples() {
        let p3 = ConflictGraph::path(3);
        let inst = Instance::identical(p3.clone(), 5, job(2, 1, 2));
        let s = schedule_evenly_on_is(&inst, &[0, 2]).unwrap();
        assert_eq!(s.makespan(&inst), 15);
        assert!(is_basic(&inst, &s).unwrap());

        let empty = Instance::identical(p3.clone(), 0, job(2, 1, 2));
        assert_eq!(schedule_evenly_on_is(&empty, &[0, 2]).unwrap().makespan(&empty), 0);

        let four = Instance::identical(p3, 4, job(2, 1, 2));
        assert_eq!(schedule_evenly_on_is(&four, &[1]).unwrap().makespan(&four), 20);
    }

    #[test]
    fn even_distribution_errors() {
        let p3 = ConflictGraph::path(3);
        let inst = Instance::identical(p3.clone(), 2, job(2, 1, 2));
        assert!(schedule_evenly_on_is(&inst, &[]).is_err());
        assert!(schedule_evenly_on_is(&inst, &[0, 1]).is_err());
        let unequal = Instance::new(p3, vec![job(2, 1, 2), job(3, 1, 3)]);
        assert!(schedule_evenly_on_is(&unequal, &[0]).is_err());
    }

    fn nine_eight_seven() -> Instance {
        Instance::new(ConflictGraph::path(3), vec![job(4, 1, 4), job(3, 2, 3), job(3, 1, 3)])
    }

    #[test]
    fn lpt_trace() {
        let inst = nine_eight_seven();
        let s = schedule_lpt_on_is(&inst, &[0, 2]).unwrap();
        assert_eq!(s.makespan(&inst), 15);
        assert!(is_valid(&inst, &s));
        let starts: Vec<_> = s.entries.iter().map(|e| (e.job, e.machine, e.start)).collect();
        assert_eq!(starts, vec![(0, 0, 0), (1, 2, 0), (2, 2, 8)]);
    }

    #[test]
    fn lpt_single_machine_and_empty() {
        let inst = nine_eight_seven();
        assert_eq!(schedule_lpt_on_is(&inst, &[1]).unwrap().makespan(&inst), 24);
        let none = Instance::new(ConflictGraph::path(3), vec![]);
        assert_eq!(schedule_lpt_on_is(&none, &[0]).unwrap().makespan(&none), 0);
    }

    #[test]
    fn lpt_requires_prop_iii() {
        let inst = Instance::identical(ConflictGraph::path(2), 2, job(1, 1, 1));
        assert!(schedule_lpt_on_is(&inst, &[0]).is_err());
    }

    #[test]
    fn small_exact_examples() {
        let g = ConflictGraph::new(2);
        // q = 5, 5, 8
        let inst = Instance::new(g.clone(), vec![job(2, 1, 2), job(2, 1, 2), job(3, 1, 4)]);
        let s = small_exact_on_is(&inst, &[0, 1], 10_000).unwrap();
        assert_eq!(s.makespan(&inst), 10);
        assert!(is_valid(&inst, &s) && s.is_complete(&inst));

        let equal = Instance::identical(ConflictGraph::new(3), 7, job(2, 1, 2));
        assert_eq!(small_exact_on_is(&equal, &[0, 1, 2], 10_000).unwrap().makespan(&equal), 15);

        let single = Instance::identical(g, 1, job(3, 1, 4));
        assert_eq!(small_exact_on_is(&single, &[0, 1], 10_000).unwrap().makespan(&single), 8);
    }

    #[test]
    fn small_exact_beats_lpt_where_lpt_is_suboptimal() {
        // classic LPT counterexample on two machines: 3,3,2,2,2
        let g = ConflictGraph::new(2);
        let jobs = vec![job(1, 0, 2), job(1, 0, 2), job(1, 0, 1), job(1, 0, 1), job(1, 0, 1)];
        let inst = Instance::new(g, jobs);
        assert!(classify_props(&inst).iii);
        let lpt = schedule_lpt_on_is(&inst, &[0, 1]).unwrap().makespan(&inst);
        let exact = small_exact_on_is(&inst, &[0, 1], 10_000).unwrap().makespan(&inst);
        assert_eq!((lpt, exact), (7, 6));
    }

    #[test]
    fn small_exact_budget() {
        let inst = Instance::new(
            ConflictGraph::new(4),
            (0..10).map(|i| job(3 + i, 1, 3 + i)).collect(),
        );
        assert!(matches!(
            small_exact_on_is(&inst, &[0, 1, 2, 3], 3),
            Err(SmcError::SizeLimit { .. })
        ));
    }

    #[test]
    fn bound_examples() {
        let p3 = ConflictGraph::path(3);
        let equal = Instance::identical(p3.clone(), 5, job(2, 1, 2));
        let r = longblock_bounds(&equal, 2, &[0, 2]).unwrap();
        assert_eq!(r.best_lower(), 15);
        assert_eq!(r.upper.unwrap().value, 15);

        let single = Instance::new(p3.clone(), vec![job(3, 1, 3)]);
        assert_eq!(longblock_bounds(&single, 2, &[0, 2]).unwrap().best_lower(), 7);

        let r = longblock_bounds(&nine_eight_seven(), 2, &[0, 2]).unwrap();
        assert_eq!(r.best_lower(), 12);
        assert!(longblock_bounds(&single, 0, &[0]).is_err());
    }

    #[test]
    fn average_load_bound_needs_a_prop() {
        // unit jobs are not long-blocking; K2 with 2 jobs has optimum 4 < 6 = 2*3/1
        let k2 = Instance::unit(ConflictGraph::complete(2), 2);
        let r = longblock_bounds(&k2, 1, &[0]).unwrap();
        assert!(r.best_lower() <= 4);
    }
}
