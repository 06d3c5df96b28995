//! Instances, jobs, conflict graphs and schedules.

use std::collections::BTreeSet;

use crate::error::{Result, SmcError};

/// Integral time unit. All solvers work on non-negative integer starts.
pub type Time = u64;
pub type MachineId = usize;
pub type JobId = usize;

/// A job with a first blocking time, a processing time and a second blocking
/// time, in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Job {
    pub b1: Time,
    pub p: Time,
    pub b2: Time,
}

impl Job {
    pub fn new(b1: Time, p: Time, b2: Time) -> Result<Self> {
        if b1 + p + b2 == 0 {
            return Err(SmcError::EmptyJob);
        }
        Ok(Job { b1, p, b2 })
    }

    /// The unit job `(1, 1, 1)`.
    pub const fn unit() -> Self {
        Job { b1: 1, p: 1, b2: 1 }
    }

    /// System time `b1 + p + b2`.
    pub fn q(&self) -> Time {
        self.b1 + self.p + self.b2
    }

    /// Time-reversed job: the two blocking times swap places.
    pub fn reversed(&self) -> Self {
        Job { b1: self.b2, p: self.p, b2: self.b1 }
    }

    /// Open blocking intervals relative to the start; zero-length ones are omitted.
    pub(crate) fn blocking_offsets(&self) -> impl Iterator<Item = (Time, Time)> {
        let q = self.q();
        [(0, self.b1), (q - self.b2, q)]
            .into_iter()
            .filter(|(a, b)| b > a)
    }
}

/// Undirected conflict graph on machines `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    m: usize,
    adj: Vec<Vec<MachineId>>,
}

impl ConflictGraph {
    pub fn new(m: usize) -> Self {
        ConflictGraph { m, adj: vec![Vec::new(); m] }
    }

    pub fn from_edges<I>(m: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MachineId, MachineId)>,
    {
        let mut g = ConflictGraph::new(m);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `{u, v}`. Duplicates and self-loops are rejected.
    pub fn add_edge(&mut self, u: MachineId, v: MachineId) -> Result<()> {
        if u >= self.m {
            return Err(SmcError::UnknownMachine(u));
        }
        if v >= self.m {
            return Err(SmcError::UnknownMachine(v));
        }
        if u == v {
            return Err(SmcError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(SmcError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn complete(m: usize) -> Self {
        let edges = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)));
        ConflictGraph::from_edges(m, edges).expect("complete graph edges are valid")
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        ConflictGraph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
            .expect("star edges are valid")
    }

    pub fn path(m: usize) -> Self {
        ConflictGraph::from_edges(m, (1..m).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: MachineId) -> &[MachineId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: MachineId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: MachineId, v: MachineId) -> bool {
        u < self.m && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (MachineId, MachineId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_independent(&self, set: &[MachineId]) -> bool {
        let members: BTreeSet<_> = set.iter().copied().collect();
        set.iter()
            .all(|&v| v < self.m && self.adj[v].iter().all(|w| !members.contains(w)))
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<MachineId>> {
        let mut seen = vec![false; self.m];
        let mut out = Vec::new();
        for s in 0..self.m {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.m <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vertices`, relabeled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[MachineId]) -> ConflictGraph {
        let index: std::collections::HashMap<_, _> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = ConflictGraph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = index.get(w) {
                    if i < j {
                        g.add_edge(i, j).expect("induced edges are valid");
                    }
                }
            }
        }
        g
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn relabeled(&self, perm: &[MachineId]) -> ConflictGraph {
        ConflictGraph::from_edges(self.m, self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("relabeling is a bijection")
    }
}

/// A conflict graph together with the jobs to schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: ConflictGraph,
    pub jobs: Vec<Job>,
}

impl Instance {
    pub fn new(graph: ConflictGraph, jobs: Vec<Job>) -> Self {
        Instance { graph, jobs }
    }

    pub fn identical(graph: ConflictGraph, n: usize, job: Job) -> Self {
        Instance { graph, jobs: vec![job; n] }
    }

    pub fn unit(graph: ConflictGraph, n: usize) -> Self {
        Instance::identical(graph, n, Job::unit())
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn total_q(&self) -> Time {
        self.jobs.iter().map(Job::q).sum()
    }

    pub fn max_q(&self) -> Time {
        self.jobs.iter().map(Job::q).max().unwrap_or(0)
    }

    /// The common job if all jobs are identical (and there is at least one).
    pub fn common_job(&self) -> Option<Job> {
        let first = *self.jobs.first()?;
        self.jobs.iter().all(|j| *j == first).then_some(first)
    }

    pub fn is_unit(&self) -> bool {
        self.jobs.iter().all(|j| *j == Job::unit())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub job: JobId,
    pub machine: MachineId,
    pub start: Time,
}

/// Assignment of jobs to machines and integral start times.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Schedule {
    pub entries: Vec<Entry>,
}

impl Schedule {
    pub fn new(entries: Vec<Entry>) -> Self {
        Schedule { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks that every job and machine id exists and no job appears twice.
    pub fn check_ids(&self, instance: &Instance) -> Result<()> {
        let mut seen = vec![false; instance.n()];
        for e in &self.entries {
            if e.job >= instance.n() {
                return Err(SmcError::UnknownJob(e.job));
            }
            if e.machine >= instance.m() {
                return Err(SmcError::UnknownMachine(e.machine));
            }
            if std::mem::replace(&mut seen[e.job], true) {
                return Err(SmcError::DuplicateJob(e.job));
            }
        }
        Ok(())
    }

    /// True iff every job of the instance is scheduled exactly once.
    pub fn is_complete(&self, instance: &Instance) -> bool {
        self.entries.len() == instance.n() && self.check_ids(instance).is_ok()
    }

    pub fn completion(&self, instance: &Instance, entry: &Entry) -> Time {
        entry.start + instance.jobs[entry.job].q()
    }

    /// Maximum completion time; 0 for the empty schedule.
    pub fn makespan(&self, instance: &Instance) -> Time {
        self.entries
            .iter()
            .map(|e| self.completion(instance, e))
            .max()
            .unwrap_or(0)
    }

    /// Entries sorted by (start, machine, job).
    pub fn sorted(mut self) -> Self {
        self.entries.sort_by_key(|e| (e.start, e.machine, e.job));
        self
    }

    pub fn relabeled(&self, perm: &[MachineId]) -> Schedule {
        Schedule::new(
            self.entries
                .iter()
                .map(|e| Entry { machine: perm[e.machine], ..*e })
                .collect(),
        )
    }
}

/// Fills machine/start slots with job ids `0..slots.len()` in slot order.
pub fn schedule_from_slots(slots: &[(MachineId, Time)]) -> Schedule {
    Schedule::new(
        slots
            .iter()
            .enumerate()
            .map(|(job, &(machine, start))| Entry { job, machine, start })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_length_job_is_rejected() {
        assert_eq!(Job::new(0, 0, 0), Err(SmcError::EmptyJob));
        assert!(Job::new(0, 1, 0).is_ok());
        assert!(Job::new(2, 0, 1).is_ok());
    }

    #[test]
    fn graph_rejects_loops_duplicates_and_bad_ids() {
        let mut g = ConflictGraph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(SmcError::SelfLoop(1)));
        assert_eq!(g.add_edge(0, 3), Err(SmcError::UnknownMachine(3)));
        g.add_edge(2, 0).unwrap();
        assert_eq!(g.add_edge(0, 2), Err(SmcError::DuplicateEdge(0, 2)));
        assert!(g.has_edge(0, 2) && g.has_edge(2, 0));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn makespan_examples() {
        let g = ConflictGraph::new(2);
        let inst = Instance::new(g, vec![Job::new(2, 1, 2).unwrap(), Job::unit()]);
        assert_eq!(Schedule::default().makespan(&inst), 0);
        let one = Schedule::new(vec![Entry { job: 1, machine: 0, start: 0 }]);
        assert_eq!(one.makespan(&inst), 3);
        let two = Schedule::new(vec![
            Entry { job: 0, machine: 0, start: 0 },
            Entry { job: 1, machine: 1, start: 4 },
        ]);
        assert_eq!(two.makespan(&inst), 7);
    }

    #[test]
    fn schedule_id_checks() {
        let inst = Instance::unit(ConflictGraph::new(1), 1);
        let dup = Schedule::new(vec![
            Entry { job: 0, machine: 0, start: 0 },
            Entry { job: 0, machine: 0, start: 3 },
        ]);
        assert_eq!(dup.check_ids(&inst), Err(SmcError::DuplicateJob(0)));
        let bad = Schedule::new(vec![Entry { job: 0, machine: 1, start: 0 }]);
        assert_eq!(bad.check_ids(&inst), Err(SmcError::UnknownMachine(1)));
    }

    #[test]
    fn components_are_ordered() {
        let g = ConflictGraph::from_edges(5, [(3, 4), (0, 2)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 2], vec![1], vec![3, 4]]);
        assert!(!g.is_connected());
    }
}
