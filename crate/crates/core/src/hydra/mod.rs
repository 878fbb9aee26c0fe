//! The hybrid partition / solve / repair / refine loop.
//!
//! An initial pass partitions the graph into contiguous parts of at most
//! `cutoff` vertices, solves each part independently and repairs the
//! conflicts along part boundaries. Every refinement round then draws a
//! fresh partition and re-solves each part with the rest of the current
//! solution held fixed: members inside the part are released, part
//! vertices adjacent to kept members are excluded, and the part's optimum
//! over what remains is written back.
//!
//! Parts that share no edge are independent within a round. They are
//! grouped into waves by coloring the part conflict graph; a wave is solved
//! in parallel against a snapshot of the solution and merged in part order,
//! which gives exactly the result of processing its parts one by one.

mod dispatch;
mod repair;

pub use dispatch::{
    default_fixed_params, dispatch, BackendSettings, DispatchPolicy, DispatchRule, SubSolver,
    TransferAssets,
};
pub use repair::repair_mis_sol;

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, is_independent, Graph, Solution};
use crate::partition::{
    choose_k, concurrency_waves, conflict_graph, partition_with, Partition, PartitionOptions,
};
use crate::rng::derive_seed;

const TAG_PARTITION: u64 = 1;
const TAG_SOLVE: u64 = 2;
const TAG_CHOOSE_K: u64 = 3;

#[derive(Clone, Debug)]
pub struct HydraConfig {
    pub n_iterations: usize,
    /// Largest subproblem handed to a backend.
    pub cutoff: usize,
    /// Stop after this many consecutive rounds without improvement.
    pub patience: Option<usize>,
    pub epsilon: f64,
    /// Solve waves in parallel; `false` processes every part in turn.
    pub concurrent: bool,
    pub solver: SubSolver,
    pub seed: u64,
}

impl Default for HydraConfig {
    fn default() -> Self {
        HydraConfig {
            n_iterations: 20,
            cutoff: 25,
            patience: Some(5),
            epsilon: 0.1,
            concurrent: true,
            solver: SubSolver::exact(),
            seed: 0,
        }
    }
}

impl HydraConfig {
    fn partition_options(&self) -> PartitionOptions {
        PartitionOptions {
            max_part_size: Some(self.cutoff),
            ..PartitionOptions::with_epsilon(self.epsilon)
        }
    }
}

/// One round of the loop; round 0 is the initial solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub partition_seed: u64,
    pub k: usize,
    pub wave_sizes: Vec<usize>,
    /// Backend name per part, indexed by part id.
    pub backends: Vec<String>,
    pub size: usize,
    pub best: usize,
    /// Some wave failed its cross-edge check and ran part by part.
    pub sequential_fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub records: Vec<IterationRecord>,
    pub best_solution: Solution,
    pub best_iteration: usize,
    /// Largest wave seen in any round.
    pub concurrency_metric: usize,
    pub stopped_early: bool,
}

impl RunTrace {
    /// `iteration,size,best,wave_max` with a header row.
    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "iteration,size,best,wave_max")?;
        for r in &self.records {
            let wave_max = r.wave_sizes.iter().copied().max().unwrap_or(0);
            writeln!(out, "{},{},{},{}", r.iteration, r.size, r.best, wave_max)?;
        }
        Ok(())
    }
}

/// Result of processing one wave.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveOutcome {
    /// `(part, backend)` in ascending part order.
    pub backends: Vec<(usize, String)>,
    pub sequential_fallback: bool,
}

/// True iff no host edge joins two different parts of `wave`.
pub fn wave_is_cross_edge_free(g: &Graph, partition: &Partition, wave: &[usize]) -> bool {
    let mut in_wave = vec![false; partition.k];
    for &p in wave {
        in_wave[p] = true;
    }
    wave.iter().all(|&p| {
        partition.parts()[p].iter().all(|&v| {
            g.neighbors(v).iter().all(|&u| {
                let q = partition.assignment[u];
                q == p || !in_wave[q]
            })
        })
    })
}

/// Vertices of `part` still free once members outside it are fixed:
/// those without a neighbor in `s` outside the part.
fn free_vertices(g: &Graph, partition: &Partition, part: usize, s: &Solution) -> Vec<usize> {
    partition.parts()[part]
        .iter()
        .copied()
        .filter(|&v| {
            !g.neighbors(v)
                .iter()
                .any(|&u| partition.assignment[u] != part && s.contains(u))
        })
        .collect()
}

type SolveFn<'a> = dyn Fn(usize, &Graph) -> Result<(Solution, String)> + Sync + 'a;

fn solve_part(
    g: &Graph,
    partition: &Partition,
    part: usize,
    s: &Solution,
    solve: &SolveFn<'_>,
) -> Result<(Solution, String)> {
    let sub = induced_subgraph(g, free_vertices(g, partition, part, s));
    let (local, backend) = solve(part, &sub.graph)?;
    if !is_independent(&sub.graph, &local) {
        return Err(Error::Invariant(format!(
            "backend {backend} returned a dependent set"
        )));
    }
    Ok((sub.lift(&local, g.n()), backend))
}

fn write_back(s: &mut Solution, partition: &Partition, part: usize, lifted: &Solution) {
    for &v in &partition.parts()[part] {
        s.remove(v);
    }
    for v in lifted.iter() {
        s.insert(v);
    }
}

/// Re-solves every part of `wave` against the current `s`. With
/// `concurrent` set and a cross-edge-free wave, parts are solved in
/// parallel on a snapshot of `s`; otherwise one after another.
pub fn run_wave(
    g: &Graph,
    partition: &Partition,
    wave: &[usize],
    s: &mut Solution,
    solve: &SolveFn<'_>,
    concurrent: bool,
) -> Result<WaveOutcome> {
    let mut parts = wave.to_vec();
    parts.sort_unstable();
    // Members of the parts themselves never block their own part, so
    // releasing them before or after the boundary check is equivalent.
    let safe = wave_is_cross_edge_free(g, partition, &parts);
    let mut backends = Vec::with_capacity(parts.len());
    if concurrent && safe {
        let snapshot = s.clone();
        let results: Vec<(Solution, String)> = parts
            .par_iter()
            .map(|&p| solve_part(g, partition, p, &snapshot, solve))
            .collect::<Result<_>>()?;
        for (&p, (lifted, backend)) in parts.iter().zip(results) {
            write_back(s, partition, p, &lifted);
            backends.push((p, backend));
        }
    } else {
        for &p in &parts {
            let (lifted, backend) = solve_part(g, partition, p, s, solve)?;
            write_back(s, partition, p, &lifted);
            backends.push((p, backend));
        }
    }
    Ok(WaveOutcome {
        backends,
        sequential_fallback: concurrent && !safe,
    })
}

fn fresh_partition(g: &Graph, k: usize, config: &HydraConfig, seed: u64) -> Result<Partition> {
    let opts = config.partition_options();
    match partition_with(g, k, &opts, seed) {
        Err(Error::ContiguityUnattainable { .. }) => {
            let k = choose_k(g, config.cutoff, &opts, derive_seed(seed, &[TAG_CHOOSE_K]))?;
            partition_with(g, k, &opts, seed)
        }
        other => other,
    }
}

fn solver_fn<'a>(
    solver: &'a SubSolver,
    seed: u64,
) -> impl Fn(usize, &Graph) -> Result<(Solution, String)> + Sync + 'a {
    move |part, sub| {
        let (s, name) = solver.solve(sub, derive_seed(seed, &[TAG_SOLVE, part as u64]))?;
        Ok((s, name.to_owned()))
    }
}

struct Round {
    solution: Solution,
    partition: Partition,
    wave_sizes: Vec<usize>,
    backends: Vec<String>,
    sequential_fallback: bool,
}

fn initial_round(g: &Graph, partition: Partition, solver: &SubSolver, seed: u64) -> Result<Round> {
    let solve = solver_fn(solver, seed);
    let waves = concurrency_waves(&conflict_graph(g, &partition));
    let results: Vec<(Solution, String)> = (0..partition.k)
        .into_par_iter()
        .map(|p| {
            let sub = induced_subgraph(g, partition.parts()[p].iter().copied());
            let (local, name) = solve(p, &sub.graph)?;
            Ok((sub.lift(&local, g.n()), name))
        })
        .collect::<Result<_>>()?;
    let mut union = Solution::empty(g.n());
    let mut backends = Vec::with_capacity(partition.k);
    for (lifted, name) in results {
        lifted.iter().for_each(|v| union.insert(v));
        backends.push(name);
    }
    Ok(Round {
        solution: repair_mis_sol(g, &union),
        wave_sizes: waves.waves.iter().map(Vec::len).collect(),
        partition,
        backends,
        sequential_fallback: false,
    })
}

fn iterative_round(
    g: &Graph,
    s: &Solution,
    partition: Partition,
    solver: &SubSolver,
    seed: u64,
    concurrent: bool,
) -> Result<Round> {
    let solve = solver_fn(solver, seed);
    let waves = concurrency_waves(&conflict_graph(g, &partition));
    let mut s = s.clone();
    let mut backends = vec![String::new(); partition.k];
    let mut fallback = false;
    for wave in &waves.waves {
        let out = run_wave(g, &partition, wave, &mut s, &solve, concurrent)?;
        fallback |= out.sequential_fallback;
        for (p, name) in out.backends {
            backends[p] = name;
        }
    }
    Ok(Round {
        solution: s,
        wave_sizes: waves.waves.iter().map(Vec::len).collect(),
        partition,
        backends,
        sequential_fallback: fallback,
    })
}

/// Partitions `g` into `k` parts, solves each part on its own and repairs
/// the union.
pub fn mis_initial_sol(g: &Graph, k: usize, solver: &SubSolver, seed: u64) -> Result<Solution> {
    let partition = partition_with(
        g,
        k,
        &PartitionOptions::default(),
        derive_seed(seed, &[TAG_PARTITION]),
    )?;
    initial_round(g, partition, solver, seed).map(|r| r.solution)
}

/// One refinement round over a fresh `k`-way partition.
pub fn mis_iterative_sol(
    g: &Graph,
    s: &Solution,
    k: usize,
    solver: &SubSolver,
    seed: u64,
) -> Result<Solution> {
    if !is_independent(g, s) {
        return Err(Error::InfeasibleSolution);
    }
    let partition = partition_with(
        g,
        k,
        &PartitionOptions::default(),
        derive_seed(seed, &[TAG_PARTITION]),
    )?;
    iterative_round(g, s, partition, solver, seed, true).map(|r| r.solution)
}

/// Runs the initial solve and up to `n_iterations` refinement rounds,
/// returning the largest solution seen.
pub fn solve_mis(g: &Graph, config: &HydraConfig) -> Result<(Solution, RunTrace)> {
    if config.n_iterations == 0 {
        return Err(Error::InvalidArgument(
            "n_iterations must be at least 1".into(),
        ));
    }
    if config.cutoff == 0 {
        return Err(Error::InvalidArgument("cutoff must be at least 1".into()));
    }
    if config.solver.roster.is_empty() {
        return Err(Error::InvalidArgument("solver roster is empty".into()));
    }
    if g.n() == 0 {
        let empty = Solution::empty(0);
        return Ok((
            empty.clone(),
            RunTrace {
                records: vec![],
                best_solution: empty,
                best_iteration: 0,
                concurrency_metric: 0,
                stopped_early: false,
            },
        ));
    }
    let opts = config.partition_options();
    let k = choose_k(
        g,
        config.cutoff,
        &opts,
        derive_seed(config.seed, &[TAG_CHOOSE_K]),
    )?;

    let mut records = Vec::with_capacity(config.n_iterations + 1);
    let mut best = Solution::empty(g.n());
    let mut best_iteration = 0;
    let mut stale = 0;
    let mut stopped_early = false;
    let mut current = Solution::empty(g.n());
    for iteration in 0..=config.n_iterations {
        let round_seed = derive_seed(config.seed, &[iteration as u64]);
        let partition_seed = derive_seed(round_seed, &[TAG_PARTITION]);
        let partition = fresh_partition(g, k, config, partition_seed)?;
        let round = if iteration == 0 {
            initial_round(g, partition, &config.solver, round_seed)?
        } else {
            iterative_round(
                g,
                &current,
                partition,
                &config.solver,
                round_seed,
                config.concurrent,
            )?
        };
        if !is_independent(g, &round.solution) {
            return Err(Error::Invariant(format!(
                "round {iteration} produced a dependent set"
            )));
        }
        current = round.solution;
        if iteration == 0 || current.cardinality() > best.cardinality() {
            best = current.clone();
            best_iteration = iteration;
            stale = 0;
        } else {
            stale += 1;
        }
        records.push(IterationRecord {
            iteration,
            partition_seed,
            k: round.partition.k,
            wave_sizes: round.wave_sizes,
            backends: round.backends,
            size: current.cardinality(),
            best: best.cardinality(),
            sequential_fallback: round.sequential_fallback,
        });
        if iteration > 0
            && config.patience.is_some_and(|p| stale >= p)
            && iteration < config.n_iterations
        {
            stopped_early = true;
            break;
        }
    }
    let concurrency_metric = records
        .iter()
        .flat_map(|r| r.wave_sizes.iter().copied())
        .max()
        .unwrap_or(0);
    Ok((
        best.clone(),
        RunTrace {
            records,
            best_solution: best,
            best_iteration,
            concurrency_metric,
            stopped_early,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, empty, grid, path};

    #[test]
    fn empty_graph_takes_everything() {
        let (s, trace) = solve_mis(&empty(30), &HydraConfig::default()).unwrap();
        assert_eq!(s.cardinality(), 30);
        assert_eq!(trace.records[0].size, 30);
    }

    #[test]
    fn path_and_cycle_reach_optimum() {
        let config = HydraConfig {
            cutoff: 10,
            patience: None,
            seed: 1,
            ..HydraConfig::default()
        };
        assert_eq!(solve_mis(&path(50), &config).unwrap().0.cardinality(), 25);
        assert_eq!(solve_mis(&cycle(51), &config).unwrap().0.cardinality(), 25);
    }

    #[test]
    fn c4_refinement_trace() {
        let g = cycle(4);
        let s = Solution::from_members(4, [0]).unwrap();
        let out = mis_iterative_sol(&g, &s, 1, &SubSolver::exact(), 0).unwrap();
        assert_eq!(out.cardinality(), 2);
    }

    #[test]
    fn concurrent_equals_sequential() {
        let g = grid(12, 12);
        let base = HydraConfig {
            n_iterations: 5,
            patience: None,
            cutoff: 16,
            seed: 4,
            ..HydraConfig::default()
        };
        let (a, ta) = solve_mis(&g, &base).unwrap();
        let (b, tb) = solve_mis(
            &g,
            &HydraConfig {
                concurrent: false,
                ..base
            },
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(
            ta.records.iter().map(|r| r.size).collect::<Vec<_>>(),
            tb.records.iter().map(|r| r.size).collect::<Vec<_>>()
        );
    }

    #[test]
    fn trace_csv() {
        let (_, trace) = solve_mis(
            &path(30),
            &HydraConfig {
                n_iterations: 2,
                cutoff: 10,
                patience: None,
                ..HydraConfig::default()
            },
        )
        .unwrap();
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("iteration,size,best,wave_max\n0,"));
    }
}
