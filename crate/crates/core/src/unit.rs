//! Unit jobs (`b1 = p = b2 = 1`): closed forms for complete graphs and
//! stars, and the optimal algorithm for bipartite graphs.
//!
//! For bipartite graphs a spanning star forest is computed together with
//! three colorings. Each licenses one kind of simultaneous pattern across all
//! stars: A-patterns on `A1`, three A-patterns on `A2` beside two B-patterns
//! on `B2`, and four A-patterns on `A3` beside three B-patterns on `B3`.
//! B-patterns on the whole vertex set are always feasible because the graph
//! is bipartite. Any makespan splits into a short row of at most 20 time
//! units followed by blocks of length 12, and every row is a fixed sequence
//! of these licensed slots.

use std::collections::VecDeque;

use crate::error::{Result, SmcError};
use crate::graph::{konig_max_is, max_matching_bipartite, sides};
use crate::model::{schedule_from_slots, ConflictGraph, Instance, MachineId, Schedule, Time};
use crate::validate::validate_schedule;

/// Optimal unit-job schedule on `K_m`: two machines alternate 2-patterns,
/// plus one trailing job when `n` is odd.
pub fn solve_complete(m: usize, n: usize) -> Result<(Time, Schedule)> {
    if m == 0 {
        return Err(SmcError::Precondition("complete graph needs at least one machine".into()));
    }
    let slots: Vec<(MachineId, Time)> = if m == 1 {
        (0..n).map(|j| (0, 3 * j as Time)).collect()
    } else {
        (0..n)
            .map(|j| {
                let round = (j / 2) as Time;
                (j % 2, 4 * round + (j % 2) as Time)
            })
            .collect()
    };
    let makespan = if m == 1 {
        3 * n as Time
    } else {
        4 * (n / 2) as Time + 3 * (n % 2) as Time
    };
    Ok((makespan, schedule_from_slots(&slots)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarOptimum {
    pub makespan: Time,
    pub a_patterns: usize,
    pub b_patterns: usize,
}

/// Optimal makespan for `n` unit jobs on the star with `leaves` leaves.
///
/// Some optimal AB-schedule uses at most two patterns of one kind, so only
/// six candidates need comparing. Ties keep the first candidate in the order
/// (k A-patterns, k B-patterns) for k = 0, 1, 2.
pub fn star_optimum(leaves: usize, n: usize) -> Result<StarOptimum> {
    if leaves == 0 {
        return Err(SmcError::Parameter("a star has at least one leaf".into()));
    }
    let l = leaves;
    // ceiling that clamps non-positive numerators to zero
    let ceil_pos = |num: isize, den: usize| -> usize {
        if num <= 0 { 0 } else { (num as usize).div_ceil(den) }
    };
    let n = n as isize;
    let mut best: Option<StarOptimum> = None;
    for k in 0..=2usize {
        let b = ceil_pos(n - (k * l) as isize, l + 1);
        let with_a = StarOptimum { makespan: (4 * b + 3 * k) as Time, a_patterns: k, b_patterns: b };
        let a = ceil_pos(n - (k * (l + 1)) as isize, l);
        let with_b = StarOptimum { makespan: (3 * a + 4 * k) as Time, a_patterns: a, b_patterns: k };
        for cand in [with_a, with_b] {
            if best.is_none_or(|b| cand.makespan < b.makespan) {
                best = Some(cand);
            }
        }
    }
    let mut best = best.expect("six candidates");
    if n == 0 {
        best = StarOptimum { makespan: 0, a_patterns: 0, b_patterns: 0 };
    }
    Ok(best)
}

/// Spanning forest whose components are stars, stored as leaf -> center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarForest {
    parent: Vec<Option<MachineId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub center: MachineId,
    pub leaves: Vec<MachineId>,
}

impl Star {
    pub fn vertices(&self) -> impl Iterator<Item = MachineId> + '_ {
        std::iter::once(self.center).chain(self.leaves.iter().copied())
    }
}

impl StarForest {
    /// `parent[v]` is the center of leaf `v`; centers carry `None`.
    pub fn new(parent: Vec<Option<MachineId>>) -> Result<Self> {
        let m = parent.len();
        let mut has_leaf = vec![false; m];
        for (v, p) in parent.iter().enumerate() {
            if let Some(c) = *p {
                if c >= m || c == v || parent[c].is_some() {
                    return Err(SmcError::Precondition(format!("leaf {v} does not hang off a center")));
                }
                has_leaf[c] = true;
            }
        }
        if let Some(v) = (0..m).find(|&v| parent[v].is_none() && !has_leaf[v]) {
            return Err(SmcError::Precondition(format!("center {v} has no leaves")));
        }
        Ok(StarForest { parent })
    }

    pub fn m(&self) -> usize {
        self.parent.len()
    }

    pub fn is_leaf(&self, v: MachineId) -> bool {
        self.parent[v].is_some()
    }

    pub fn center_of(&self, v: MachineId) -> MachineId {
        self.parent[v].unwrap_or(v)
    }

    pub fn leaf_count(&self, center: MachineId) -> usize {
        self.parent.iter().filter(|p| **p == Some(center)).count()
    }

    pub fn leaves(&self) -> Vec<MachineId> {
        (0..self.m()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Stars ordered by center id.
    pub fn stars(&self) -> Vec<Star> {
        let mut stars: Vec<Star> = Vec::new();
        let mut index = vec![usize::MAX; self.m()];
        for c in (0..self.m()).filter(|&v| !self.is_leaf(v)) {
            index[c] = stars.len();
            stars.push(Star { center: c, leaves: Vec::new() });
        }
        for v in 0..self.m() {
            if let Some(c) = self.parent[v] {
                stars[index[c]].leaves.push(v);
            }
        }
        stars
    }

    pub fn edges(&self) -> Vec<(MachineId, MachineId)> {
        (0..self.m())
            .filter_map(|v| self.parent[v].map(|c| (c.min(v), c.max(v))))
            .collect()
    }

    /// Every forest edge is an edge of `graph` and the vertex sets match.
    pub fn is_spanning_subgraph_of(&self, graph: &ConflictGraph) -> bool {
        self.m() == graph.m() && self.edges().iter().all(|&(u, v)| graph.has_edge(u, v))
    }

    /// Number of stars with exactly `leaves` leaves.
    pub fn count_of(&self, leaves: usize) -> usize {
        self.stars().iter().filter(|s| s.leaves.len() == leaves).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    /// From an `S_1` through `S_2`s to some `S_l`, `l >= 3`.
    II,
    /// From an `S_2` through `S_3`s to some `S_l`, `l >= 4`.
    III,
}

impl PathKind {
    fn start(self) -> usize {
        match self {
            PathKind::II => 1,
            PathKind::III => 2,
        }
    }
}

/// Stars `C_1..C_k` (by center) and, for `j >= 1`, the leaf of `C_{j+1}`
/// adjacent in the graph to the center of `C_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingPath {
    pub kind: PathKind,
    pub centers: Vec<MachineId>,
    pub links: Vec<MachineId>,
}

impl AlternatingPath {
    /// Vertex sequence `c_1, l_2, c_2, ..., l_k, c_k`.
    pub fn vertices(&self) -> Vec<MachineId> {
        let mut out = vec![self.centers[0]];
        for (leaf, center) in self.links.iter().zip(&self.centers[1..]) {
            out.push(*leaf);
            out.push(*center);
        }
        out
    }
}

/// Breadth-first search over stars from every admissible start star, in
/// center order. Cross edges run from a center to a leaf of another star.
pub fn find_alternating_path(graph: &ConflictGraph, forest: &StarForest, kind: PathKind) -> Option<AlternatingPath> {
    let m = forest.m();
    let leaf_count: Vec<usize> = {
        let mut counts = vec![0; m];
        for v in forest.leaves() {
            counts[forest.center_of(v)] += 1;
        }
        counts
    };
    let is_center = |v: MachineId| !forest.is_leaf(v);
    let intermediate = kind.start() + 1;
    for start in (0..m).filter(|&v| is_center(v) && leaf_count[v] == kind.start()) {
        let mut visited = vec![false; m];
        let mut via: Vec<Option<(MachineId, MachineId)>> = vec![None; m];
        visited[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for &w in graph.neighbors(c) {
                if !forest.is_leaf(w) {
                    continue;
                }
                let d = forest.center_of(w);
                if visited[d] {
                    continue;
                }
                let size = leaf_count[d];
                if size >= intermediate {
                    visited[d] = true;
                    via[d] = Some((c, w));
                    if size > intermediate {
                        let mut centers = vec![d];
                        let mut links = Vec::new();
                        let mut cur = d;
                        while let Some((prev, leaf)) = via[cur] {
                            links.push(leaf);
                            centers.push(prev);
                            cur = prev;
                        }
                        centers.reverse();
                        links.reverse();
                        return Some(AlternatingPath { kind, centers, links });
                    }
                    queue.push_back(d);
                }
            }
        }
    }
    None
}

/// Symmetric difference of the forest with the path: each link leaf moves to
/// the previous center. The set of leaves is unchanged.
pub fn apply_alternating_path(graph: &ConflictGraph, forest: &StarForest, path: &AlternatingPath) -> Result<StarForest> {
    let malformed = |why: &str| Err(SmcError::Precondition(format!("malformed alternating path: {why}")));
    if path.centers.len() < 2 || path.links.len() + 1 != path.centers.len() {
        return malformed("needs at least two stars and one link per step");
    }
    let mut seen = vec![false; forest.m()];
    for &c in &path.centers {
        if c >= forest.m() || forest.is_leaf(c) || std::mem::replace(&mut seen[c], true) {
            return malformed("stars must be distinct centers");
        }
    }
    for (j, &leaf) in path.links.iter().enumerate() {
        if leaf >= forest.m() || forest.parent[leaf] != Some(path.centers[j + 1]) {
            return malformed("link is not a leaf of the next star");
        }
        if !graph.has_edge(path.centers[j], leaf) {
            return malformed("cross edge missing from the graph");
        }
    }
    let mut parent = forest.parent.clone();
    for (j, &leaf) in path.links.iter().enumerate() {
        parent[leaf] = Some(path.centers[j]);
    }
    StarForest::new(parent)
}

/// Vertex sets licensing simultaneous patterns across stars.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Colorings {
    pub a1: Vec<MachineId>,
    pub a2: Vec<MachineId>,
    pub b2: Vec<MachineId>,
    pub a3: Vec<MachineId>,
    pub b3: Vec<MachineId>,
}

fn membership(m: usize, set: &[MachineId]) -> Vec<bool> {
    let mut out = vec![false; m];
    for &v in set {
        out[v] = true;
    }
    out
}

fn colorings_for(graph: &ConflictGraph, forest: &StarForest, independent: &[MachineId]) -> Colorings {
    let m = graph.m();
    let stars = forest.stars();
    let layered = |promoted_size: usize| -> (Vec<MachineId>, Vec<MachineId>) {
        // A gets leaves of bigger stars; stars of size `promoted_size` join A while
        // their center sees A, the rest go to B together with all smaller stars.
        let mut in_a = vec![false; m];
        let mut b = Vec::new();
        for s in &stars {
            if s.leaves.len() > promoted_size {
                s.leaves.iter().for_each(|&v| in_a[v] = true);
            } else if s.leaves.len() < promoted_size {
                b.extend(s.vertices());
            }
        }
        let mut pending: Vec<&Star> = stars.iter().filter(|s| s.leaves.len() == promoted_size).collect();
        loop {
            let hit = pending
                .iter()
                .position(|s| graph.neighbors(s.center).iter().any(|&w| in_a[w]));
            match hit {
                Some(i) => {
                    let s = pending.remove(i);
                    s.leaves.iter().for_each(|&v| in_a[v] = true);
                }
                None => break,
            }
        }
        for s in pending {
            b.extend(s.vertices());
        }
        b.sort_unstable();
        ((0..m).filter(|&v| in_a[v]).collect(), b)
    };
    let (a2, b2) = layered(2);
    let (a3, b3) = layered(3);
    let mut a1 = independent.to_vec();
    a1.sort_unstable();
    Colorings { a1, a2, b2, a3, b3 }
}

/// Checks the I-, II- and III-coloring conditions against the graph and the
/// forest, returning a description of the first failure.
pub fn check_colorings(graph: &ConflictGraph, forest: &StarForest, col: &Colorings) -> std::result::Result<(), String> {
    let m = graph.m();
    let stars = forest.stars();
    let a1 = membership(m, &col.a1);
    if !graph.is_independent(&col.a1) {
        return Err("A1 is not independent".into());
    }
    for s in &stars {
        let hits = s.vertices().filter(|&v| a1[v]).count();
        let max_is = s.leaves.len();
        let ok = if max_is == 1 { hits == 1 } else { hits == max_is && !a1[s.center] };
        if !ok {
            return Err(format!("A1 is not a maximum independent set of the star at {}", s.center));
        }
    }
    for (level, a, b) in [(2usize, &col.a2, &col.b2), (3, &col.a3, &col.b3)] {
        let in_a = membership(m, a);
        let in_b = membership(m, b);
        if (0..m).any(|v| in_a[v] && in_b[v]) {
            return Err(format!("A{level} and B{level} intersect"));
        }
        for &v in a {
            if graph.neighbors(v).iter().any(|&w| in_a[w] || in_b[w]) {
                return Err(format!("A{level} vertex {v} has a neighbor in A{level} or B{level}"));
            }
        }
        for s in &stars {
            let leaves_in_a = s.leaves.iter().all(|&v| in_a[v]) && !in_a[s.center] && !in_b[s.center];
            let all_in_b = s.vertices().all(|v| in_b[v]);
            let l = s.leaves.len();
            let ok = if l > level {
                leaves_in_a
            } else if l < level {
                all_in_b
            } else {
                leaves_in_a || all_in_b
            };
            if !ok {
                return Err(format!("star at {} violates the level-{level} coloring", s.center));
            }
        }
    }
    Ok(())
}

/// Star forest and colorings of a connected bipartite graph on at least two
/// vertices.
///
/// Phase 1 hangs every vertex off the minimum vertex cover from a maximum
/// matching. Phases 2 and 3 remove alternating paths of type II and III.
/// Phase 4 derives the colorings.
pub fn build_star_forest(graph: &ConflictGraph) -> Result<(StarForest, Colorings)> {
    if graph.m() < 2 || !graph.is_connected() {
        return Err(SmcError::Precondition("need a connected graph on at least two vertices".into()));
    }
    let matching = max_matching_bipartite(graph)?;
    let (cover, independent) = konig_max_is(graph, &matching)?;
    let in_cover = membership(graph.m(), &cover);
    let mut parent: Vec<Option<MachineId>> = vec![None; graph.m()];
    for v in (0..graph.m()).filter(|&v| !in_cover[v]) {
        let center = match matching.mate(v) {
            Some(u) => u,
            None => *graph
                .neighbors(v)
                .iter()
                .find(|&&u| in_cover[u])
                .expect("connected graph: every vertex outside the cover has a cover neighbor"),
        };
        parent[v] = Some(center);
    }
    let mut forest = StarForest::new(parent)?;
    for kind in [PathKind::II, PathKind::III] {
        while let Some(path) = find_alternating_path(graph, &forest, kind) {
            forest = apply_alternating_path(graph, &forest, &path)?;
        }
    }
    let colorings = colorings_for(graph, &forest, &independent);
    Ok((forest, colorings))
}

/// Time slots of an AB-plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// One A-pattern on `A1` (length 3).
    A1,
    /// One B-pattern on every vertex (length 4).
    V,
    /// Three A-patterns on `A2` beside two B-patterns on `B2` (length 9).
    Ii,
    /// Four A-patterns on `A3` beside three B-patterns on `B3` (length 12).
    Iii,
}

impl Slot {
    pub fn length(self) -> Time {
        match self {
            Slot::A1 => 3,
            Slot::V => 4,
            Slot::Ii => 9,
            Slot::Iii => 12,
        }
    }
}

/// Slot sequence of the short rows `r <= 20`; `None` where no AB-schedule
/// has that makespan.
pub fn row(r: Time) -> Option<&'static [Slot]> {
    use Slot::*;
    Some(match r {
        0 => &[],
        3 => &[A1],
        4 => &[V],
        6 => &[A1, A1],
        7 => &[A1, V],
        8 => &[V, V],
        9 => &[Ii],
        10 => &[A1, A1, V],
        11 => &[A1, V, V],
        12 => &[Iii],
        13 => &[V, Ii],
        14 => &[A1, A1, V, V],
        15 => &[A1, Iii],
        16 => &[V, Iii],
        17 => &[V, V, Ii],
        18 => &[A1, A1, Iii],
        19 => &[A1, V, Iii],
        20 => &[V, V, Iii],
        _ => return None,
    })
}

/// Target makespan `12 t + r` and the slot sequence realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbPlan {
    pub target: Time,
    pub blocks: Time,
    pub rest: Time,
    pub segments: Vec<Slot>,
}

impl AbPlan {
    /// Short row for targets up to 20, otherwise a row in `9..=20` after
    /// blocks of 12.
    pub fn new(target: Time) -> Result<Self> {
        let (blocks, rest) = if target <= 20 { (0, target) } else { ((target - 9) / 12, 9 + (target - 9) % 12) };
        let Some(short) = row(rest) else {
            return Err(SmcError::Parameter(format!("no AB-schedule has makespan {target}")));
        };
        let mut segments = short.to_vec();
        segments.extend(std::iter::repeat_n(Slot::Iii, blocks as usize));
        Ok(AbPlan { target, blocks, rest, segments })
    }

    /// Largest plannable makespan not above `limit`.
    pub fn within(limit: Time) -> Self {
        let target = match limit {
            1 | 2 => 0,
            5 => 4,
            t => t,
        };
        AbPlan::new(target).expect("every other value is plannable")
    }
}

fn slot_jobs(slot: Slot, forest_size: usize, col: &Colorings) -> usize {
    match slot {
        Slot::A1 => col.a1.len(),
        Slot::V => forest_size,
        Slot::Ii => 3 * col.a2.len() + 2 * col.b2.len(),
        Slot::Iii => 4 * col.a3.len() + 3 * col.b3.len(),
    }
}

/// Jobs an AB-plan of makespan `target` fits on the forest.
pub fn capacity(forest: &StarForest, colorings: &Colorings, target: Time) -> Result<usize> {
    let plan = AbPlan::new(target)?;
    Ok(plan_capacity(&plan, forest.m(), colorings))
}

fn plan_capacity(plan: &AbPlan, forest_size: usize, colorings: &Colorings) -> usize {
    plan.segments.iter().map(|&s| slot_jobs(s, forest_size, colorings)).sum()
}

/// `(machine, start)` slots of the plan, before trimming.
fn plan_slots(plan: &AbPlan, vertices: &[MachineId], side: &[u8], col: &Colorings) -> Vec<(MachineId, Time)> {
    let mut slots = Vec::new();
    let mut s: Time = 0;
    for &seg in &plan.segments {
        let b_pattern = |slots: &mut Vec<(MachineId, Time)>, set: &[MachineId], count: Time| {
            for &v in set {
                for i in 0..count {
                    slots.push((v, s + 4 * i + side[v] as Time));
                }
            }
        };
        let a_pattern = |slots: &mut Vec<(MachineId, Time)>, set: &[MachineId], count: Time| {
            for &v in set {
                for i in 0..count {
                    slots.push((v, s + 3 * i));
                }
            }
        };
        match seg {
            Slot::A1 => a_pattern(&mut slots, &col.a1, 1),
            Slot::V => b_pattern(&mut slots, vertices, 1),
            Slot::Ii => {
                a_pattern(&mut slots, &col.a2, 3);
                b_pattern(&mut slots, &col.b2, 2);
            }
            Slot::Iii => {
                a_pattern(&mut slots, &col.a3, 4);
                b_pattern(&mut slots, &col.b3, 3);
            }
        }
        s += seg.length();
    }
    slots
}

fn trim(mut slots: Vec<(MachineId, Time)>, n: usize) -> Vec<(MachineId, Time)> {
    slots.sort_by_key(|&(machine, start)| (start, machine));
    slots.truncate(n);
    slots
}

/// AB-schedule of `n` unit jobs with makespan at most `target` on a connected
/// bipartite graph with the given forest and colorings.
pub fn assemble_ab_schedule(
    graph: &ConflictGraph,
    forest: &StarForest,
    colorings: &Colorings,
    target: Time,
    n: usize,
) -> Result<Schedule> {
    let plan = AbPlan::new(target)?;
    let cap = plan_capacity(&plan, forest.m(), colorings);
    if cap < n {
        return Err(SmcError::Precondition(format!(
            "makespan {target} fits only {cap} of {n} jobs"
        )));
    }
    let side = sides(graph)?;
    let vertices: Vec<MachineId> = (0..graph.m()).collect();
    let slots = trim(plan_slots(&plan, &vertices, &side, colorings), n);
    let schedule = schedule_from_slots(&slots);
    let instance = Instance::unit(graph.clone(), n);
    if !validate_schedule(&instance, &schedule)?.valid() {
        return Err(SmcError::InvalidSchedule);
    }
    Ok(schedule)
}

/// Per-component data of a bipartite graph.
enum Part {
    Single(MachineId),
    Stars { vertices: Vec<MachineId>, forest: StarForest, colorings: Colorings },
}

impl Part {
    fn capacity(&self, limit: Time) -> usize {
        match self {
            Part::Single(_) => (limit / 3) as usize,
            Part::Stars { forest, colorings, .. } => plan_capacity(&AbPlan::within(limit), forest.m(), colorings),
        }
    }
}

fn decompose(graph: &ConflictGraph) -> Result<Vec<Part>> {
    graph
        .components()
        .into_iter()
        .map(|vertices| {
            if vertices.len() == 1 {
                return Ok(Part::Single(vertices[0]));
            }
            let sub = graph.induced(&vertices);
            let (forest, colorings) = build_star_forest(&sub)?;
            Ok(Part::Stars { vertices, forest, colorings })
        })
        .collect()
}

/// Optimal schedule for `n` unit jobs on a bipartite graph.
///
/// The smallest makespan whose summed component capacities reach `n` is found
/// by binary search (capacities are monotone in the makespan); jobs are then
/// handed to components in decreasing order of capacity.
pub fn solve_unit_bipartite(graph: &ConflictGraph, n: usize) -> Result<(Time, Schedule)> {
    if n == 0 {
        return Ok((0, Schedule::default()));
    }
    if graph.m() == 0 {
        return Err(SmcError::Precondition("jobs but no machines".into()));
    }
    let global_side = sides(graph)?;
    let parts = decompose(graph)?;
    let total = |limit: Time| parts.iter().map(|p| p.capacity(limit)).sum::<usize>();
    let (mut lo, mut hi) = (0, 3 * n as Time);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if total(mid) >= n {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let target = lo;

    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(parts[i].capacity(target)), i));
    let mut share = vec![0usize; parts.len()];
    let mut left = n;
    for i in order {
        share[i] = parts[i].capacity(target).min(left);
        left -= share[i];
    }

    let mut slots = Vec::with_capacity(n);
    for (part, &count) in parts.iter().zip(&share) {
        if count == 0 {
            continue;
        }
        match part {
            Part::Single(v) => slots.extend((0..count).map(|j| (*v, 3 * j as Time))),
            Part::Stars { vertices, forest, colorings } => {
                let plan = AbPlan::within(target);
                let local_side: Vec<u8> = vertices.iter().map(|&v| global_side[v]).collect();
                let local: Vec<MachineId> = (0..vertices.len()).collect();
                let part_slots = trim(plan_slots(&plan, &local, &local_side, colorings), count);
                debug_assert_eq!(part_slots.len(), count, "capacity of {} stars", forest.stars().len());
                slots.extend(part_slots.into_iter().map(|(v, s)| (vertices[v], s)));
            }
        }
    }
    slots.sort_by_key(|&(machine, start)| (start, machine));
    let schedule = schedule_from_slots(&slots);
    let instance = Instance::unit(graph.clone(), n);
    if !validate_schedule(&instance, &schedule)?.valid() {
        return Err(SmcError::InvalidSchedule);
    }
    Ok((schedule.makespan(&instance), schedule))
}
