//! Strategy dispatch over the solvers, with the bounds used to judge the
//! result.

use std::fmt;

use smc_core::exact::{solve_exact, SearchConfig};
use smc_core::graph::{bipartition, greedy_1_is, max_c_is_exact, Bipartition, Cis, DEFAULT_EXACT_CAP};
use smc_core::longblock::{longblock_bounds, schedule_evenly_on_is, schedule_lpt_on_is, BoundReport, BoundSource};
use smc_core::shortblock::{lower_bound_short, solve_patterns, PatternParams};
use smc_core::unit::{solve_complete, solve_unit_bipartite};
use smc_core::validate::{classify_props, validate_schedule};
use smc_core::{ConflictGraph, Instance, MachineId, Schedule, Time};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Strategy {
    Auto,
    Exact,
    Longblock,
    Patterns,
    UnitBipartite,
    UnitComplete,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Exact => "exact",
            Strategy::Longblock => "longblock",
            Strategy::Patterns => "patterns",
            Strategy::UnitBipartite => "unit-bipartite",
            Strategy::UnitComplete => "unit-complete",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    ProvenOptimal,
    BoundedRatio,
    Heuristic,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ProvenOptimal => "proven-optimal",
            Status::BoundedRatio => "bounded-ratio",
            Status::Heuristic => "heuristic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Node budget for the exhaustive search.
    pub budget_nodes: u64,
    /// Largest graph on which independent sets are computed exactly.
    pub cap_m: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget_nodes: SearchConfig::default().node_budget, cap_m: DEFAULT_EXACT_CAP }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub strategy: Strategy,
    pub schedule: Schedule,
    pub makespan: Time,
    pub lower_bound: Time,
    pub status: Status,
    /// Guaranteed ratio to the optimum, when one is known.
    pub ceiling: Option<f64>,
}

pub fn is_complete_graph(graph: &ConflictGraph) -> bool {
    let m = graph.m();
    graph.edge_count() == m * m.saturating_sub(1) / 2
}

pub fn is_bipartite(graph: &ConflictGraph) -> bool {
    matches!(bipartition(graph), Bipartition::Bipartite { .. })
}

/// Pattern parameters for identical jobs with `0 < b <= p` on both sides,
/// oriented so the first blocking time is the longer one.
pub fn short_blocking_params(instance: &Instance) -> Option<PatternParams> {
    let job = instance.common_job()?;
    let job = if job.b2 > job.b1 { job.reversed() } else { job };
    PatternParams::new(job).ok()
}

/// What `auto` picks; never a strategy whose preconditions fail.
pub fn resolve_auto(instance: &Instance) -> Strategy {
    let unit = instance.n() > 0 && instance.is_unit();
    if unit && is_complete_graph(&instance.graph) {
        Strategy::UnitComplete
    } else if unit && is_bipartite(&instance.graph) {
        Strategy::UnitBipartite
    } else if instance.n() > 0 && !classify_props(instance).is_empty() {
        Strategy::Longblock
    } else if short_blocking_params(instance).is_some() {
        Strategy::Patterns
    } else {
        Strategy::Exact
    }
}

/// `c` disjoint independent sets: exact up to the cap, otherwise greedy
/// peeling. The flag tells whether the union is maximum.
pub fn independent_sets(graph: &ConflictGraph, c: usize, cap_m: usize) -> CliResult<(Cis, bool)> {
    if graph.m() <= cap_m {
        return Ok((max_c_is_exact(graph, c, cap_m)?, true));
    }
    let mut left: Vec<MachineId> = (0..graph.m()).collect();
    let mut classes = Vec::with_capacity(c);
    for _ in 0..c {
        if left.is_empty() {
            classes.push(Vec::new());
            continue;
        }
        let sub = graph.induced(&left);
        let class: Vec<MachineId> = greedy_1_is(&sub).classes[0].iter().map(|&v| left[v]).collect();
        left.retain(|v| !class.contains(v));
        classes.push(class);
    }
    Ok((Cis { classes }, false))
}

fn generic_lower(instance: &Instance) -> Time {
    if instance.n() == 0 || instance.m() == 0 {
        return 0;
    }
    instance.max_q().max(instance.total_q().div_ceil(instance.m() as Time))
}

fn inapplicable(strategy: Strategy, reason: &str) -> CliError {
    CliError::Inapplicable { strategy: strategy.name(), reason: reason.into() }
}

fn proven(strategy: Strategy, schedule: Schedule, makespan: Time) -> Outcome {
    Outcome { strategy, schedule, makespan, lower_bound: makespan, status: Status::ProvenOptimal, ceiling: Some(1.0) }
}

fn judged(strategy: Strategy, schedule: Schedule, makespan: Time, lower: Time, ceiling: Option<f64>) -> Outcome {
    let status = if makespan <= lower {
        Status::ProvenOptimal
    } else if ceiling.is_some() {
        Status::BoundedRatio
    } else {
        Status::Heuristic
    };
    Outcome { strategy, schedule, makespan, lower_bound: lower, status, ceiling }
}

/// Runs `strategy` (resolving `auto`) and re-validates the result.
pub fn solve(instance: &Instance, strategy: Strategy, opts: &SolveOptions) -> CliResult<Outcome> {
    let strategy = if strategy == Strategy::Auto { resolve_auto(instance) } else { strategy };
    if instance.n() > 0 && instance.m() == 0 {
        return Err(inapplicable(strategy, "jobs but no machines"));
    }
    let outcome = if instance.n() == 0 {
        proven(strategy, Schedule::default(), 0)
    } else {
        match strategy {
            Strategy::Auto => unreachable!("resolved above"),
            Strategy::Exact => run_exact(instance, opts)?,
            Strategy::UnitComplete => {
                if !instance.is_unit() || !is_complete_graph(&instance.graph) {
                    return Err(inapplicable(strategy, "needs unit jobs on a complete graph"));
                }
                let (makespan, schedule) = solve_complete(instance.m(), instance.n())?;
                proven(strategy, schedule, makespan)
            }
            Strategy::UnitBipartite => {
                if !instance.is_unit() || !is_bipartite(&instance.graph) {
                    return Err(inapplicable(strategy, "needs unit jobs on a bipartite graph"));
                }
                let (makespan, schedule) = solve_unit_bipartite(&instance.graph, instance.n())?;
                proven(strategy, schedule, makespan)
            }
            Strategy::Longblock => run_longblock(instance, opts)?,
            Strategy::Patterns => run_patterns(instance, opts)?,
        }
    };
    let report = validate_schedule(instance, &outcome.schedule)?;
    if !report.valid() || !outcome.schedule.is_complete(instance) {
        return Err(CliError::Invalid);
    }
    Ok(outcome)
}

fn run_exact(instance: &Instance, opts: &SolveOptions) -> CliResult<Outcome> {
    if instance.m() > opts.cap_m {
        return Err(CliError::Resource(format!(
            "{} machines exceed the exact-search cap of {}",
            instance.m(),
            opts.cap_m
        )));
    }
    let config = SearchConfig { node_budget: opts.budget_nodes, ..SearchConfig::default() }.with_symmetry();
    let (schedule, makespan) = solve_exact(instance, &config)?;
    Ok(proven(Strategy::Exact, schedule, makespan))
}

fn run_longblock(instance: &Instance, opts: &SolveOptions) -> CliResult<Outcome> {
    let props = classify_props(instance);
    if props.is_empty() {
        return Err(inapplicable(Strategy::Longblock, "no long-blocking property holds"));
    }
    let (cis, exact) = independent_sets(&instance.graph, 1, opts.cap_m)?;
    let is = &cis.classes[0];
    let alpha1 = if exact { is.len() } else { instance.m() };
    let lower = longblock_bounds(instance, alpha1, is)?.best_lower().max(generic_lower(instance));
    let even = props.i || props.ii;
    let schedule = if even { schedule_evenly_on_is(instance, is)? } else { schedule_lpt_on_is(instance, is)? };
    let makespan = schedule.makespan(instance);
    let ceiling = exact.then(|| if even { 1.0 } else { 2.0 - 1.0 / instance.m() as f64 });
    Ok(judged(Strategy::Longblock, schedule, makespan, lower, ceiling))
}

fn run_patterns(instance: &Instance, opts: &SolveOptions) -> CliResult<Outcome> {
    let Some(params) = short_blocking_params(instance) else {
        return Err(inapplicable(Strategy::Patterns, "needs identical jobs with 0 < b1, b2 <= p"));
    };
    let (cis, exact) = independent_sets(&instance.graph, params.cmax(), opts.cap_m)?;
    let beta = match (exact, params.cmax() == params.k() + 1) {
        (false, _) => instance.m(),
        (true, true) => cis.size(),
        (true, false) => max_c_is_exact(&instance.graph, params.k() + 1, opts.cap_m)?.size(),
    };
    let lower = lower_bound_short(&params, instance.n(), beta)?.max(generic_lower(instance));
    let schedule = solve_patterns(instance, &cis)?;
    let makespan = schedule.makespan(instance);
    // Without b1 | p the widest pattern is narrower than the bound assumes.
    let (num, den) = params.ratio_ceiling();
    let ceiling = (exact && params.p.is_multiple_of(params.b1)).then_some(num as f64 / den as f64);
    Ok(judged(Strategy::Patterns, schedule, makespan, lower, ceiling))
}

/// Every applicable lower bound with its source, and the best upper bound
/// from the constructive strategies.
pub fn bound_report(instance: &Instance, opts: &SolveOptions) -> CliResult<BoundReport> {
    let mut report = BoundReport::default();
    if instance.n() == 0 {
        report.add_lower(0, BoundSource::LongestJob);
        report.offer_upper(0, BoundSource::Sequential);
        return Ok(report);
    }
    if instance.m() == 0 {
        return Err(inapplicable(Strategy::Auto, "jobs but no machines"));
    }
    report.add_lower(instance.max_q(), BoundSource::LongestJob);
    report.add_lower(instance.total_q().div_ceil(instance.m() as Time), BoundSource::MachineAverage);
    report.offer_upper(instance.total_q(), BoundSource::Sequential);
    let small = instance.m() <= opts.cap_m;
    if small && !classify_props(instance).is_empty() {
        let is = max_c_is_exact(&instance.graph, 1, opts.cap_m)?.classes.swap_remove(0);
        let long = longblock_bounds(instance, is.len(), &is)?;
        for b in long.lower {
            if !report.lower.contains(&b) {
                report.lower.push(b);
            }
        }
    }
    if let (true, Some(params)) = (small, short_blocking_params(instance)) {
        let alpha = max_c_is_exact(&instance.graph, params.k() + 1, opts.cap_m)?.size();
        report.add_lower(lower_bound_short(&params, instance.n(), alpha)?, BoundSource::PatternCapacity);
    }
    for (strategy, source) in [
        (Strategy::UnitComplete, BoundSource::UnitComplete),
        (Strategy::UnitBipartite, BoundSource::UnitBipartite),
        (Strategy::Longblock, BoundSource::Lpt),
        (Strategy::Patterns, BoundSource::Patterns),
    ] {
        match solve(instance, strategy, opts) {
            Ok(outcome) => {
                let source = match (strategy, classify_props(instance)) {
                    (Strategy::Longblock, p) if p.i || p.ii => BoundSource::EvenDistribution,
                    _ => source,
                };
                report.offer_upper(outcome.makespan, source);
            }
            Err(CliError::Inapplicable { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
