//! Seeded random instances for benchmarks and tests.

use rand::Rng;
use serde::Deserialize;
use smc_core::{ConflictGraph, Instance, Job};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFamily {
    Complete,
    Star,
    Path,
    /// Random tree plus extra edges across its two sides.
    Bipartite,
    /// Erdős–Rényi with the given density.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JobFamily {
    Unit,
    /// Identical jobs, both blocking times positive, the longer one above `p`.
    PropI,
    /// Equal system times, both blocking times above the job's own `p`.
    PropII,
    /// Every blocking time above every processing time.
    PropIii,
    /// Identical jobs with `0 < b <= p` on both sides, in random orientation.
    ShortIdentical,
}

pub fn graph<R: Rng>(rng: &mut R, family: GraphFamily, m: usize, density: f64) -> ConflictGraph {
    match family {
        GraphFamily::Complete => ConflictGraph::complete(m),
        GraphFamily::Star => ConflictGraph::star(m.saturating_sub(1)),
        GraphFamily::Path => ConflictGraph::path(m),
        GraphFamily::Bipartite => bipartite(rng, m, density),
        GraphFamily::Random => {
            let mut g = ConflictGraph::new(m);
            for u in 0..m {
                for v in u + 1..m {
                    if rng.gen_bool(density) {
                        g.add_edge(u, v).expect("fresh pair");
                    }
                }
            }
            g
        }
    }
}

/// Connected bipartite graph: a random tree plus cross edges.
pub fn bipartite<R: Rng>(rng: &mut R, m: usize, density: f64) -> ConflictGraph {
    let mut g = ConflictGraph::new(m);
    let mut side = vec![false; m];
    for v in 1..m {
        let u = rng.gen_range(0..v);
        side[v] = !side[u];
        g.add_edge(u, v).expect("fresh pair");
    }
    for u in 0..m {
        for v in u + 1..m {
            if side[u] != side[v] && !g.has_edge(u, v) && rng.gen_bool(density) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

fn job(b1: u64, p: u64, b2: u64) -> Job {
    Job::new(b1, p, b2).expect("positive system time")
}

pub fn jobs<R: Rng>(rng: &mut R, family: JobFamily, n: usize) -> Vec<Job> {
    match family {
        JobFamily::Unit => vec![Job::unit(); n],
        JobFamily::PropI => {
            let (b1, b2) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            let p = rng.gen_range(0..u64::max(b1, b2));
            vec![job(b1, p, b2); n]
        }
        JobFamily::PropII => {
            let q = rng.gen_range(3..=12);
            (0..n)
                .map(|_| {
                    let p = rng.gen_range(0..=(q - 2) / 3);
                    let b1 = rng.gen_range(p + 1..=q - 2 * p - 1);
                    job(b1, p, q - p - b1)
                })
                .collect()
        }
        JobFamily::PropIii => {
            let max_p = rng.gen_range(0..=4);
            (0..n)
                .map(|_| job(rng.gen_range(max_p + 1..=max_p + 4), rng.gen_range(0..=max_p), rng.gen_range(max_p + 1..=max_p + 4)))
                .collect()
        }
        JobFamily::ShortIdentical => {
            let b1 = rng.gen_range(1..=3);
            let p = rng.gen_range(b1..=4 * b1);
            let b2 = rng.gen_range(1..=b1);
            let j = if rng.gen_bool(0.5) { job(b1, p, b2) } else { job(b2, p, b1) };
            vec![j; n]
        }
    }
}

pub fn instance<R: Rng>(rng: &mut R, graph_family: GraphFamily, density: f64, job_family: JobFamily, m: usize, n: usize) -> Instance {
    let g = graph(rng, graph_family, m, density);
    Instance::new(g, jobs(rng, job_family, n))
}
