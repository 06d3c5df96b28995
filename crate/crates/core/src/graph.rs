//! Independent sets, induced c-colorable subgraphs, bipartitions and
//! bipartite matchings on conflict graphs.

use std::collections::VecDeque;

use crate::error::{Result, SmcError};
use crate::model::{ConflictGraph, MachineId};

pub const DEFAULT_EXACT_CAP: usize = 24;

/// `c` pairwise disjoint independent sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cis {
    pub classes: Vec<Vec<MachineId>>,
}

impl Cis {
    pub fn size(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn c(&self) -> usize {
        self.classes.len()
    }

    /// Every class independent and the classes pairwise disjoint.
    pub fn is_valid_for(&self, graph: &ConflictGraph) -> bool {
        let mut seen = vec![false; graph.m()];
        for class in &self.classes {
            if !graph.is_independent(class) {
                return false;
            }
            for &v in class {
                if std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
        }
        true
    }
}

struct CisSearch<'g> {
    graph: &'g ConflictGraph,
    c: usize,
    labels: Vec<usize>,
    used_classes: usize,
    size: usize,
    best: Option<(usize, Vec<usize>)>,
}

impl CisSearch<'_> {
    // label 0 = excluded, 1..=c = class index
    fn run(&mut self, v: usize) {
        let m = self.graph.m();
        let best_size = self.best.as_ref().map(|b| b.0);
        if best_size.is_some_and(|b| self.size + (m - v) <= b) {
            return;
        }
        if v == m {
            self.best = Some((self.size, self.labels.clone()));
            return;
        }
        // classes are opened in order, so class k+1 is only available once k is used
        let open = (self.used_classes + 1).min(self.c);
        for class in 1..=open {
            let blocked = self.graph.neighbors(v).iter().any(|&w| w < v && self.labels[w] == class);
            if blocked {
                continue;
            }
            self.labels[v] = class;
            self.size += 1;
            let prev = self.used_classes;
            self.used_classes = self.used_classes.max(class);
            self.run(v + 1);
            self.used_classes = prev;
            self.size -= 1;
        }
        self.labels[v] = 0;
        self.run(v + 1);
    }
}

/// Maximum induced c-colorable subgraph by exhaustive labeling with pruning.
///
/// Among maxima, returns the first one in the order that puts lower vertices
/// into lower classes first. Empty trailing classes are kept so the result
/// always has exactly `c` classes.
pub fn max_c_is_exact(graph: &ConflictGraph, c: usize, cap: usize) -> Result<Cis> {
    if c == 0 {
        return Err(SmcError::Parameter("c must be at least 1".into()));
    }
    if graph.m() > cap {
        return Err(SmcError::SizeLimit { what: "machine count", limit: cap });
    }
    let mut search = CisSearch {
        graph,
        c,
        labels: vec![0; graph.m()],
        used_classes: 0,
        size: 0,
        best: None,
    };
    search.run(0);
    let (_, labels) = search.best.expect("the empty labeling is always reached");
    let mut classes = vec![Vec::new(); c];
    for (v, &l) in labels.iter().enumerate() {
        if l > 0 {
            classes[l - 1].push(v);
        }
    }
    Ok(Cis { classes })
}

/// Greedy independent set: repeatedly take a vertex of minimum remaining
/// degree (lowest id on ties) and delete its closed neighborhood.
pub fn greedy_1_is(graph: &ConflictGraph) -> Cis {
    let m = graph.m();
    let mut alive = vec![true; m];
    let mut degree: Vec<usize> = (0..m).map(|v| graph.degree(v)).collect();
    let mut chosen = Vec::new();
    while let Some(v) = (0..m).filter(|&v| alive[v]).min_by_key(|&v| (degree[v], v)) {
        chosen.push(v);
        let mut removed = vec![v];
        removed.extend(graph.neighbors(v).iter().copied().filter(|&w| alive[w]));
        for &r in &removed {
            alive[r] = false;
        }
        for &r in &removed {
            for &w in graph.neighbors(r) {
                if alive[w] {
                    degree[w] -= 1;
                }
            }
        }
    }
    chosen.sort_unstable();
    Cis { classes: vec![chosen] }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Bipartite { x: Vec<MachineId>, y: Vec<MachineId> },
    /// Vertices of an odd cycle in cyclic order.
    OddCycle(Vec<MachineId>),
}

/// Two-coloring by breadth-first layering. Component roots (and therefore
/// isolated vertices) go to `x`.
pub fn bipartition(graph: &ConflictGraph) -> Bipartition {
    let m = graph.m();
    let mut side = vec![u8::MAX; m];
    let mut parent = vec![usize::MAX; m];
    let mut depth = vec![0usize; m];
    for root in 0..m {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return Bipartition::OddCycle(odd_cycle(u, w, &parent, &depth));
                }
            }
        }
    }
    let x = (0..m).filter(|&v| side[v] == 0).collect();
    let y = (0..m).filter(|&v| side[v] == 1).collect();
    Bipartition::Bipartite { x, y }
}

fn odd_cycle(mut a: usize, mut b: usize, parent: &[usize], depth: &[usize]) -> Vec<MachineId> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[a] > depth[b] {
        left.push(a);
        a = parent[a];
    }
    while depth[b] > depth[a] {
        right.push(b);
        b = parent[b];
    }
    while a != b {
        left.push(a);
        right.push(b);
        a = parent[a];
        b = parent[b];
    }
    left.push(a);
    right.reverse();
    left.extend(right);
    left
}

/// Returns the side (0 or 1) of every vertex, or an error if the graph has an odd cycle.
pub fn sides(graph: &ConflictGraph) -> Result<Vec<u8>> {
    match bipartition(graph) {
        Bipartition::Bipartite { x, .. } => {
            let mut side = vec![1u8; graph.m()];
            for v in x {
                side[v] = 0;
            }
            Ok(side)
        }
        Bipartition::OddCycle(_) => Err(SmcError::Precondition("graph is not bipartite".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<MachineId>>,
}

impl Matching {
    pub fn from_edges(m: usize, edges: &[(MachineId, MachineId)]) -> Result<Self> {
        let mut mate = vec![None; m];
        for &(u, v) in edges {
            if u >= m || v >= m {
                return Err(SmcError::UnknownMachine(u.max(v)));
            }
            if u == v || mate[u].is_some() || mate[v].is_some() {
                return Err(SmcError::Precondition("matching edges must be disjoint".into()));
            }
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        Ok(Matching { mate })
    }

    pub fn mate(&self, v: MachineId) -> Option<MachineId> {
        self.mate[v]
    }

    /// Matched pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(MachineId, MachineId)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }
}

fn try_augment(
    graph: &ConflictGraph,
    u: MachineId,
    mate: &mut [Option<MachineId>],
    visited: &mut [bool],
) -> bool {
    for &w in graph.neighbors(u) {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        let free = match mate[w] {
            None => true,
            Some(x) => try_augment(graph, x, mate, visited),
        };
        if free {
            mate[u] = Some(w);
            mate[w] = Some(u);
            return true;
        }
    }
    false
}

/// Maximum-cardinality matching by repeated augmenting-path search from the
/// `x` side of the bipartition.
pub fn max_matching_bipartite(graph: &ConflictGraph) -> Result<Matching> {
    let side = sides(graph)?;
    let mut mate = vec![None; graph.m()];
    for u in (0..graph.m()).filter(|&u| side[u] == 0) {
        let mut visited = vec![false; graph.m()];
        try_augment(graph, u, &mut mate, &mut visited);
    }
    Ok(Matching { mate })
}

/// Minimum vertex cover and maximum independent set from a maximum matching.
///
/// Returns `(cover, independent)` as sorted vertex lists. The matching must be
/// maximum; an augmenting path is reported as a precondition error.
pub fn konig_max_is(graph: &ConflictGraph, matching: &Matching) -> Result<(Vec<MachineId>, Vec<MachineId>)> {
    let side = sides(graph)?;
    for (u, v) in matching.edges() {
        if !graph.has_edge(u, v) {
            return Err(SmcError::Precondition(format!("matching edge {{{u}, {v}}} is not in the graph")));
        }
    }
    let m = graph.m();
    // alternating reachability from unmatched x-vertices
    let mut reached = vec![false; m];
    let mut queue: VecDeque<_> = (0..m)
        .filter(|&v| side[v] == 0 && matching.mate(v).is_none())
        .collect();
    for &v in &queue {
        reached[v] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &w in graph.neighbors(u) {
            if reached[w] || matching.mate(u) == Some(w) {
                continue;
            }
            reached[w] = true;
            match matching.mate(w) {
                None => {
                    return Err(SmcError::Precondition("matching is not maximum".into()));
                }
                Some(x) if !reached[x] => {
                    reached[x] = true;
                    queue.push_back(x);
                }
                Some(_) => {}
            }
        }
    }
    let in_cover = |v: usize| (side[v] == 0) != reached[v];
    let cover: Vec<_> = (0..m).filter(|&v| in_cover(v)).collect();
    let independent: Vec<_> = (0..m).filter(|&v| !in_cover(v)).collect();
    Ok((cover, independent))
}
