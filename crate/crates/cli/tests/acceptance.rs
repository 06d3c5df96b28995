//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when a
//! criterion fails unexpectedly or a known counterexample stops failing.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use smc_cli::gen::{self, GraphFamily, JobFamily};
use smc_core::exact::{optimal_makespan_decision, solve_exact, SearchConfig};
use smc_core::graph::{konig_max_is, max_c_is_exact, max_matching_bipartite, DEFAULT_EXACT_CAP};
use smc_core::longblock::{schedule_evenly_on_is, schedule_lpt_on_is, small_exact_on_is};
use smc_core::shortblock::{beta_c, lower_bound_short, solve_patterns, PatternParams, DEFAULT_BETA_GUARD};
use smc_core::unit::{
    build_star_forest, check_colorings, find_alternating_path, solve_complete, solve_unit_bipartite, star_optimum,
    PathKind,
};
use smc_core::validate::{classify_props, is_basic, is_valid};
use smc_core::{ConflictGraph, Instance, Schedule, Time};

struct Solved {
    instance: Instance,
    schedule: Schedule,
    opt: Time,
}

#[derive(Default)]
struct Suite {
    solved: Vec<Solved>,
    failed: Vec<usize>,
}

/// The short-blocking ratio ceiling does not hold when `b1` does not divide
/// `p`: the `(k + 1)`-pattern is then infeasible.
const KNOWN_UNATTAINABLE: &[usize] = &[6];

impl Suite {
    fn report(&mut self, id: usize, title: &str, failures: &[String], detail: String) {
        let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {verdict}  {title}: {detail}");
        for f in failures.iter().take(5) {
            println!("    {f}");
        }
        if !failures.is_empty() {
            self.failed.push(id);
        }
    }

    fn oracle(&mut self, instance: &Instance) -> Time {
        let config = SearchConfig::default().with_symmetry();
        let (schedule, opt) = solve_exact(instance, &config).expect("oracle within budget");
        self.solved.push(Solved { instance: instance.clone(), schedule, opt });
        opt
    }
}

fn within(start: Instant, limit: Duration, failures: &mut Vec<String>) -> String {
    let elapsed = start.elapsed();
    if elapsed > limit {
        failures.push(format!("took {elapsed:.1?}, limit {limit:?}"));
    }
    format!("{elapsed:.2?}")
}

fn complete_graphs(s: &mut Suite) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for m in 2..=4 {
        for n in 0..=8 {
            let instance = Instance::unit(ConflictGraph::complete(m), n);
            let (closed, schedule) = solve_complete(m, n).unwrap();
            let opt = s.oracle(&instance);
            let formula = 4 * (n / 2) as Time + 3 * (n % 2) as Time;
            if closed != opt || closed != formula || !is_valid(&instance, &schedule) {
                failures.push(format!("K{m}, n={n}: closed form {closed}, oracle {opt}"));
            }
            cases += 1;
        }
    }
    let time = within(start, Duration::from_secs(60), &mut failures);
    s.report(1, "clique closed form", &failures, format!("{cases} cases agree with the oracle in {time}"));
}

fn stars(s: &mut Suite) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for l in 1..=5 {
        for n in 0..=14 {
            let instance = Instance::unit(ConflictGraph::star(l), n);
            let closed = star_optimum(l, n).unwrap().makespan;
            let opt = s.oracle(&instance);
            if closed != opt {
                failures.push(format!("S_{l}, n={n}: closed form {closed}, oracle {opt}"));
            }
            cases += 1;
        }
    }
    if star_optimum(3, 12).unwrap().makespan != 12 {
        failures.push("S_3 with 12 jobs is not 12".into());
    }
    let time = within(start, Duration::from_secs(300), &mut failures);
    s.report(2, "star closed form", &failures, format!("{cases} cases agree with the oracle in {time}"));
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..m).collect();
    fn go(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    go(0, &mut perm, &mut out);
    out
}

/// Connected bipartite graphs on `m` vertices, one per isomorphism class.
fn connected_bipartite_graphs(m: usize) -> Vec<ConflictGraph> {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let perms = permutations(m);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = ConflictGraph::from_edges(m, edges.iter().copied()).unwrap();
        if !g.is_connected() || !smc_cli::strategy::is_bipartite(&g) {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| edges.iter().fold(0u32, |acc, &(u, v)| acc | 1 << index(p[u], p[v])))
            .min()
            .unwrap();
        if seen.insert(canonical) {
            out.push(g);
        }
    }
    out
}

fn bipartite_optimality(s: &mut Suite) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    let mut cases = 0;
    for m in 1..=6 {
        let graphs = connected_bipartite_graphs(m);
        counts.push(graphs.len());
        for g in graphs {
            for n in 1..=10 {
                let instance = Instance::unit(g.clone(), n);
                let (ms, schedule) = solve_unit_bipartite(&g, n).unwrap();
                let opt = s.oracle(&instance);
                if ms != opt || !is_valid(&instance, &schedule) || !schedule.is_complete(&instance) {
                    failures.push(format!("edges {:?}, n={n}: algorithm {ms}, oracle {opt}", g.edges().collect::<Vec<_>>()));
                }
                cases += 1;
            }
        }
    }
    // connected bipartite graphs up to isomorphism on 1..=6 vertices
    if counts != [1, 1, 1, 3, 5, 17] {
        failures.push(format!("enumerated {counts:?} graph classes"));
    }
    let time = within(start, Duration::from_secs(1800), &mut failures);
    s.report(
        3,
        "bipartite optimality",
        &failures,
        format!("{} graphs x n in 1..=10, {cases} cases optimal and valid in {time}", counts.iter().sum::<usize>()),
    );
}

fn figure_tree(s: &mut Suite) {
    let mut failures = Vec::new();
    // center 0 with leaves 1..=4, path 0 - 5 - 6; dropping edge 0-5 leaves S_4 and S_1
    let tree = ConflictGraph::from_edges(7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6)]).unwrap();
    let (forest, _) = build_star_forest(&tree).unwrap();
    let mut sizes: Vec<usize> = forest.stars().iter().map(|st| st.leaves.len()).collect();
    sizes.sort_unstable();
    if sizes != [1, 4] {
        failures.push(format!("star forest sizes {sizes:?}"));
    }
    let instance = Instance::unit(tree.clone(), 22);
    let (ms, schedule) = solve_unit_bipartite(&tree, 22).unwrap();
    if ms != 12 || !is_valid(&instance, &schedule) || !schedule.is_complete(&instance) {
        failures.push(format!("algorithm makespan {ms}"));
    }
    let opt = s.oracle(&instance);
    let config = SearchConfig::default().with_symmetry();
    if opt != 12 || optimal_makespan_decision(&instance, 11, &config).unwrap() {
        failures.push(format!("oracle optimum {opt}"));
    }
    s.report(4, "figure tree", &failures, format!("7 machines, 22 jobs, makespan {ms}, oracle {opt}"));
}

fn long_blocking(s: &mut Suite) {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let total = 120;
    for i in 0..total {
        let family = if i % 2 == 0 { JobFamily::PropI } else { JobFamily::PropII };
        let m = rng.gen_range(1..=8);
        let n = rng.gen_range(1..=10);
        let instance = gen::instance(&mut rng, GraphFamily::Random, 0.4, family, m, n);
        let is = max_c_is_exact(&instance.graph, 1, DEFAULT_EXACT_CAP).unwrap().classes.swap_remove(0);
        let schedule = schedule_evenly_on_is(&instance, &is).unwrap();
        let q = instance.jobs[0].q();
        let formula = q * n.div_ceil(is.len()) as Time;
        let opt = s.oracle(&instance);
        if schedule.makespan(&instance) != formula || formula != opt || !is_valid(&instance, &schedule) {
            failures.push(format!("#{i}: even {} formula {formula} oracle {opt}", schedule.makespan(&instance)));
        }
    }
    s.report(5, "long-blocking exactness", &failures, format!("{total} PROP-I/II instances, even distribution optimal"));
}

fn ceilings(s: &mut Suite) {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let total = 120;
    let mut worst_lpt: f64 = 1.0;
    for i in 0..total {
        let m = rng.gen_range(2..=6);
        let n = rng.gen_range(1..=8);
        let instance = gen::instance(&mut rng, GraphFamily::Random, 0.4, JobFamily::PropIii, m, n);
        let is = max_c_is_exact(&instance.graph, 1, DEFAULT_EXACT_CAP).unwrap().classes.swap_remove(0);
        let lpt = schedule_lpt_on_is(&instance, &is).unwrap().makespan(&instance);
        let opt = s.oracle(&instance);
        // gamma = alpha_1 / |is| = 1 on an exact independent set: lpt / opt <= 2 - 1/m
        if lpt * m as Time > opt * (2 * m as Time - 1) {
            failures.push(format!("PROP-III #{i}: lpt {lpt}, oracle {opt}, m {m}"));
        }
        worst_lpt = worst_lpt.max(lpt as f64 / opt as f64);
    }
    let mut worst_patterns: f64 = 1.0;
    let mut cases = Vec::new();
    for _ in 0..total {
        let m = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=7);
        cases.push(gen::instance(&mut rng, GraphFamily::Random, 0.4, JobFamily::ShortIdentical, m, n));
    }
    // 5-cycle plus an isolated machine: OPT 17, while any repetition of
    // feasible patterns needs at least 22 > 17 * 14 / 11.
    let cycle = ConflictGraph::from_edges(6, [(1, 2), (2, 4), (4, 5), (5, 3), (3, 1)]).unwrap();
    cases.push(Instance::identical(cycle, 6, smc_core::Job::new(3, 5, 3).unwrap()));
    let (mut divisible, mut divisible_bad, mut other, mut other_bad) = (0, 0, 0, 0);
    for (i, instance) in cases.iter().enumerate() {
        let job = instance.jobs[0];
        let params = PatternParams::new(if job.b2 > job.b1 { job.reversed() } else { job }).unwrap();
        let cis = max_c_is_exact(&instance.graph, params.k() + 1, DEFAULT_EXACT_CAP).unwrap();
        let schedule = solve_patterns(instance, &cis).unwrap();
        let ms = schedule.makespan(instance);
        let opt = s.oracle(instance);
        let (num, den) = params.ratio_ceiling();
        let divides = params.p.is_multiple_of(params.b1);
        if divides {
            divisible += 1;
        } else {
            other += 1;
        }
        if !is_valid(instance, &schedule) || ms * den > opt * num {
            if divides {
                divisible_bad += 1;
            } else {
                other_bad += 1;
            }
            failures.push(format!(
                "short #{i}: job ({}, {}, {}) on {} machines, {} edges, n={}: patterns {ms}, oracle {opt}, ceiling {num}/{den}",
                job.b1,
                job.p,
                job.b2,
                instance.m(),
                instance.graph.edge_count(),
                instance.n()
            ));
        }
        worst_patterns = worst_patterns.max(ms as f64 / opt as f64);
    }
    s.report(
        6,
        "approximation ceilings",
        &failures,
        format!(
            "{total} PROP-III (worst LPT ratio {worst_lpt:.4}); short-blocking b | p: {divisible_bad} violations in {divisible}, b not dividing p: {other_bad} violations in {other} (worst pattern ratio {worst_patterns:.4})"
        ),
    );
}

fn lower_bounds(s: &mut Suite) {
    let mut failures = Vec::new();
    let mut short = 0;
    for (i, solved) in s.solved.iter().enumerate() {
        let inst = &solved.instance;
        if inst.n() == 0 {
            continue;
        }
        let average = inst.total_q().div_ceil(inst.m() as Time);
        if average > solved.opt {
            failures.push(format!("#{i}: machine average {average} > {}", solved.opt));
        }
        if !classify_props(inst).is_empty() {
            let alpha = max_c_is_exact(&inst.graph, 1, DEFAULT_EXACT_CAP).unwrap().size() as Time;
            let basic = inst.total_q().div_ceil(alpha);
            if basic > solved.opt {
                failures.push(format!("#{i}: independent-set average {basic} > {}", solved.opt));
            }
        }
        if let Some(params) = smc_cli::strategy::short_blocking_params(inst) {
            // bounds are stated for the orientation with b1 >= b2; beta is symmetric under reversal
            let c = params.k() + 1;
            let alpha = max_c_is_exact(&inst.graph, c, DEFAULT_EXACT_CAP).unwrap().size();
            let beta = beta_c(inst, &solved.schedule, c, c.max(DEFAULT_BETA_GUARD)).unwrap();
            for (name, b) in [("alpha", alpha), ("beta of the optimum", beta)] {
                let bound = lower_bound_short(&params, inst.n(), b).unwrap();
                if bound > solved.opt {
                    failures.push(format!("#{i}: q*ceil(n/{name}) = {bound} > {}", solved.opt));
                }
            }
            short += 1;
        }
    }
    s.report(
        7,
        "lower-bound soundness",
        &failures,
        format!("{} oracle-solved instances, {short} with the short-blocking bound", s.solved.len()),
    );
}

/// Most machines blocked at some `c` points of the half-integer grid.
fn beta_brute_force(instance: &Instance, schedule: &Schedule, c: usize) -> usize {
    let end = 2 * schedule.makespan(instance);
    let blocked: Vec<u64> = (0..=end)
        .map(|x| {
            schedule.entries.iter().fold(0u64, |acc, e| {
                let j = &instance.jobs[e.job];
                let s = 2 * e.start;
                let first = j.b1 > 0 && s < x && x < s + 2 * j.b1;
                let second = j.b2 > 0 && s + 2 * (j.q() - j.b2) < x && x < s + 2 * j.q();
                if first || second { acc | 1 << e.machine } else { acc }
            })
        })
        .collect();
    fn best(blocked: &[u64], from: usize, left: usize, acc: u64) -> usize {
        if left == 0 {
            return acc.count_ones() as usize;
        }
        (from..blocked.len()).map(|i| best(blocked, i, left - 1, acc | blocked[i])).max().unwrap_or(acc.count_ones() as usize)
    }
    best(&blocked, 0, c, 0)
}

fn beta_grid(s: &mut Suite) {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let total = 60;
    for i in 0..total {
        let m = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=6);
        let mut instance = gen::instance(&mut rng, GraphFamily::Random, 0.4, JobFamily::ShortIdentical, m, n);
        if i % 3 == 1 {
            instance.jobs = gen::jobs(&mut rng, JobFamily::PropIii, n);
        }
        let schedule = if i % 2 == 0 {
            solve_exact(&instance, &SearchConfig::default().with_symmetry()).unwrap().0
        } else {
            // staggered random starts, pushed back until feasible
            let mut entries = Vec::new();
            for job in 0..n {
                let machine = rng.gen_range(0..m);
                let mut start = rng.gen_range(0..6);
                loop {
                    entries.push(smc_core::Entry { job, machine, start });
                    let partial = Instance::new(instance.graph.clone(), instance.jobs[..=job].to_vec());
                    if is_valid(&partial, &Schedule::new(entries.clone())) {
                        break;
                    }
                    entries.pop();
                    start += 1;
                }
            }
            Schedule::new(entries)
        };
        for c in 1..=3 {
            let fast = beta_c(&instance, &schedule, c, DEFAULT_BETA_GUARD).unwrap();
            let slow = beta_brute_force(&instance, &schedule, c);
            if fast != slow {
                failures.push(format!("#{i}, c={c}: candidate search {fast}, grid {slow}"));
            }
        }
    }
    s.report(8, "beta_c correctness", &failures, format!("{total} valid schedules x c in 1..=3 match the grid"));
}

fn structure(s: &mut Suite) {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let graphs = 240;
    for i in 0..graphs {
        let m = rng.gen_range(2..=12);
        let density = rng.gen_range(0.0..0.5);
        let g = gen::bipartite(&mut rng, m, density);
        let (forest, colorings) = build_star_forest(&g).unwrap();
        let (_, independent) = konig_max_is(&g, &max_matching_bipartite(&g).unwrap()).unwrap();
        if !forest.is_spanning_subgraph_of(&g) {
            failures.push(format!("graph #{i}: forest is not a spanning subgraph"));
        }
        if forest.leaves() != independent {
            failures.push(format!("graph #{i}: leaves differ from the maximum independent set"));
        }
        if let Err(e) = check_colorings(&g, &forest, &colorings) {
            failures.push(format!("graph #{i}: {e}"));
        }
        for kind in [PathKind::II, PathKind::III] {
            if find_alternating_path(&g, &forest, kind).is_some() {
                failures.push(format!("graph #{i}: a type {kind:?} path remains"));
            }
        }
    }
    let mut outputs = 0;
    for i in 0..200 {
        let family = [JobFamily::PropI, JobFamily::PropII, JobFamily::PropIii][i % 3];
        let m = rng.gen_range(1..=6);
        let n = rng.gen_range(1..=6);
        let instance = gen::instance(&mut rng, GraphFamily::Random, 0.5, family, m, n);
        let is = max_c_is_exact(&instance.graph, 1, DEFAULT_EXACT_CAP).unwrap().classes.swap_remove(0);
        let props = classify_props(&instance);
        let mut schedules = vec![solve_exact(&instance, &SearchConfig::default().with_symmetry()).unwrap().0];
        if props.iii {
            schedules.push(schedule_lpt_on_is(&instance, &is).unwrap());
            schedules.push(small_exact_on_is(&instance, &is, 100_000).unwrap());
        }
        if props.i || props.ii {
            schedules.push(schedule_evenly_on_is(&instance, &is).unwrap());
        }
        for schedule in schedules {
            outputs += 1;
            if !is_basic(&instance, &schedule).unwrap() {
                failures.push(format!("PROP instance #{i}: solver output is not basic"));
            }
        }
    }
    for solved in s.solved.iter().filter(|x| x.instance.n() > 0 && !classify_props(&x.instance).is_empty()) {
        outputs += 1;
        if !is_basic(&solved.instance, &solved.schedule).unwrap() {
            failures.push("oracle output on a PROP instance is not basic".into());
        }
    }
    s.report(
        9,
        "structural suite",
        &failures,
        format!("{graphs} bipartite graphs (m <= 12) with valid forests and colorings, {outputs} basic solver outputs"),
    );
}

fn smc(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_smc")).args(args).env_remove("SMC_BUDGET_NODES").output().unwrap();
    assert!(out.status.success(), "smc {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn determinism(s: &mut Suite) {
    let mut failures = Vec::new();
    let dir = tempfile::TempDir::new().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let instances = [
        ("clique", "smc 1\nmachines 3\nedge 0 1\nedge 0 2\nedge 1 2\njobs identical 7 1 1 1\n", "auto"),
        ("tree", "smc 1\nmachines 7\nedge 0 1\nedge 0 2\nedge 0 3\nedge 0 4\nedge 0 5\nedge 5 6\njobs identical 22 1 1 1\n", "auto"),
        ("long", "smc 1\nmachines 4\nedge 0 1\nedge 1 2\nedge 2 3\njob 3 1 4\njob 4 0 3\njob 5 2 4\n", "auto"),
        ("short", "smc 1\nmachines 5\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 0\njobs identical 9 2 4 1\n", "auto"),
        ("mixed", "smc 1\nmachines 3\nedge 0 1\nedge 1 2\njob 1 2 1\njob 1 3 1\njob 2 2 2\n", "exact"),
    ];
    for (name, text, strategy) in instances {
        let inst = path(&format!("{name}.smc"));
        std::fs::write(&inst, text).unwrap();
        let (a, b) = (path(&format!("{name}.a")), path(&format!("{name}.b")));
        smc(&["solve", &inst, "--strategy", strategy, "--out", &a]);
        smc(&["solve", &inst, "--strategy", strategy, "--out", &b]);
        if std::fs::read(&a).unwrap() != std::fs::read(&b).unwrap() {
            failures.push(format!("{name}: schedule files differ"));
        }
        if smc(&["gantt", &inst, &a, "--format", "svg"]) != smc(&["gantt", &inst, &b, "--format", "svg"]) {
            failures.push(format!("{name}: charts differ"));
        }
    }
    let config = path("bench.toml");
    std::fs::write(
        &config,
        "seed = 2024\n\n[[suite]]\nname = \"unit\"\ngraph = \"bipartite\"\njobs = \"unit\"\nmachines = [2, 7]\ncount = [1, 10]\ninstances = 8\nstrategy = \"unit-bipartite\"\n\n[[suite]]\nname = \"short\"\ngraph = \"random\"\njobs = \"short-identical\"\nmachines = [2, 5]\ncount = [1, 6]\ninstances = 8\n",
    )
    .unwrap();
    for format in ["text", "csv"] {
        if smc(&["bench", &config, "--format", format]) != smc(&["bench", &config, "--format", format]) {
            failures.push(format!("{format} bench tables differ"));
        }
    }
    s.report(10, "determinism", &failures, "5 schedule files, 5 charts and 2 bench tables byte-identical across runs".into());
}

fn main() {
    let mut suite = Suite::default();
    complete_graphs(&mut suite);
    stars(&mut suite);
    bipartite_optimality(&mut suite);
    figure_tree(&mut suite);
    long_blocking(&mut suite);
    ceilings(&mut suite);
    lower_bounds(&mut suite);
    beta_grid(&mut suite);
    structure(&mut suite);
    determinism(&mut suite);
    println!("acceptance: {} of 10 criteria passed", 10 - suite.failed.len());
    let unexpected: Vec<_> = suite.failed.iter().filter(|id| !KNOWN_UNATTAINABLE.contains(id)).collect();
    let vanished: Vec<_> = KNOWN_UNATTAINABLE.iter().filter(|id| !suite.failed.contains(id)).collect();
    if !vanished.is_empty() {
        println!("known counterexamples no longer fail: {vanished:?}");
    }
    if !unexpected.is_empty() || !vanished.is_empty() {
        std::process::exit(1);
    }
}
