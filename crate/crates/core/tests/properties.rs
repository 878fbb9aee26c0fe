use proptest::prelude::*;

use hydra_mis::graph::{generate_er, induced_subgraph, load_graph, save_graph, GraphFormat};
use hydra_mis::hydra::{mis_iterative_sol, repair_mis_sol, solve_mis, HydraConfig, SubSolver};
use hydra_mis::partition::{concurrency_waves, conflict_graph, partition_with, PartitionOptions};
use hydra_mis::qaoa::{best_feasible, build_qubo, diagonal_cost, QaoaCircuit, QaoaParams};
use hydra_mis::solvers::{exact_mis, greedy_mis, ils_mis};
use hydra_mis::transfer::{
    embed, hierarchical_cluster, DistanceMatrix, Prediction, PredictionFile,
};
use hydra_mis::{is_independent, Graph, Solution};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, p, seed)| generate_er(n, p, seed).unwrap())
}

fn graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, Solution)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(any::<bool>(), n)).prop_map(|(g, bits)| {
            let s = Solution::from_members(
                g.n(),
                bits.iter().enumerate().filter(|(_, b)| **b).map(|(v, _)| v),
            )
            .unwrap();
            (g, s)
        })
    })
}

fn brute_force_mis(g: &Graph) -> usize {
    (0u64..1 << g.n())
        .filter(|&b| {
            g.edges()
                .iter()
                .all(|&(u, v)| b >> u & 1 == 0 || b >> v & 1 == 0)
        })
        .map(|b| b.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induced_subgraph_keeps_exactly_internal_edges((g, s) in graph_and_set(20)) {
        let sub = induced_subgraph(&g, s.iter());
        prop_assert!(sub.to_host.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(sub.to_host.len(), s.cardinality());
        let internal = g.edges().iter().filter(|&&(u, v)| s.contains(u) && s.contains(v)).count();
        prop_assert_eq!(sub.graph.m(), internal);
        for &(a, b) in sub.graph.edges() {
            prop_assert!(g.has_edge(sub.to_host[a], sub.to_host[b]));
        }
    }

    #[test]
    fn graph_files_round_trip(g in graph(30), fmt in prop_oneof![
        Just(GraphFormat::MatrixMarket), Just(GraphFormat::Dimacs), Just(GraphFormat::EdgeList)
    ]) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(format!("g.{}", fmt.extension()));
        save_graph(&g, &path, fmt).unwrap();
        prop_assert_eq!(load_graph(&path, fmt).unwrap().0, g);
    }

    #[test]
    fn partitions_are_balanced_contiguous_covers(g in graph(60), k in 1usize..8, seed in any::<u64>()) {
        let k = k.min(g.n());
        let opts = PartitionOptions::default();
        if let Ok(p) = partition_with(&g, k, &opts, seed) {
            prop_assert!(p.k >= k);
            let cap = opts.cap(g.n(), p.k);
            prop_assert_eq!(p.validate(&g, cap), Ok(()));
        }
    }

    #[test]
    fn waves_are_cross_edge_free_covers(g in graph(60), seed in any::<u64>()) {
        let k = g.n().div_ceil(8);
        if let Ok(p) = partition_with(&g, k, &PartitionOptions::default(), seed) {
            let cg = conflict_graph(&g, &p);
            let waves = concurrency_waves(&cg);
            let mut seen: Vec<usize> = waves.waves.concat();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..p.k).collect::<Vec<_>>());
            for wave in &waves.waves {
                for (i, &a) in wave.iter().enumerate() {
                    for &b in &wave[i + 1..] {
                        prop_assert!(!cg.edges.contains(&(a.min(b), a.max(b))));
                    }
                }
            }
            prop_assert_eq!(waves.concurrency, waves.waves.iter().map(Vec::len).max().unwrap_or(0));
        }
    }

    #[test]
    fn qubo_minimizers_are_maximum(g in graph(12), penalty in 1.01f64..6.0) {
        let cost = diagonal_cost(&build_qubo(&g, penalty).unwrap()).unwrap();
        let min = cost.energies.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert!((min + exact_mis(&g).unwrap().cardinality() as f64).abs() < 1e-9);
    }

    #[test]
    fn evolution_preserves_norm(g in graph(10), gammas in proptest::collection::vec(0.0..6.3f64, 1..4), beta in 0.0..3.2f64) {
        let p = gammas.len();
        let params = QaoaParams::new(gammas, vec![beta; p]).unwrap();
        let psi = QaoaCircuit::new(&build_qubo(&g, 2.0).unwrap(), 20).unwrap().evolve(&params);
        prop_assert!((psi.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn uniform_expectation_is_mean_energy(g in graph(12)) {
        let circuit = QaoaCircuit::new(&build_qubo(&g, 2.0).unwrap(), 20).unwrap();
        let e = &circuit.cost().energies;
        let mean = e.iter().sum::<f64>() / e.len() as f64;
        prop_assert!((circuit.expectation(&QaoaParams::zeros(1)) - mean).abs() < 1e-12);
    }

    #[test]
    fn sampling_counts_and_feasibility(g in graph(10), gamma in 0.0..6.3f64, beta in 0.0..3.2f64, shots in 1usize..500, seed in any::<u64>()) {
        let params = QaoaParams::new(vec![gamma], vec![beta]).unwrap();
        let samples = QaoaCircuit::new(&build_qubo(&g, 2.0).unwrap(), 20).unwrap().sample(&params, shots, seed);
        prop_assert_eq!(samples.outcomes.values().sum::<usize>(), shots);
        let (s, summary) = best_feasible(&g, &samples).unwrap();
        prop_assert!(is_independent(&g, &s));
        prop_assert!(summary.feasible_shots <= shots);
    }

    #[test]
    fn exact_matches_enumeration(g in graph(16)) {
        let s = exact_mis(&g).unwrap();
        prop_assert!(is_independent(&g, &s));
        prop_assert_eq!(s.cardinality(), brute_force_mis(&g));
    }

    #[test]
    fn heuristics_are_independent_and_ordered(g in graph(60), seed in any::<u64>()) {
        let greedy = greedy_mis(&g);
        let ils = ils_mis(&g, 50, seed);
        prop_assert!(is_independent(&g, &greedy));
        prop_assert!(is_independent(&g, &ils));
        prop_assert!(ils.cardinality() >= greedy.cardinality());
        prop_assert_eq!(ils, ils_mis(&g, 50, seed));
    }

    #[test]
    fn repair_only_removes_conflict_endpoints((g, s) in graph_and_set(40)) {
        let out = repair_mis_sol(&g, &s);
        prop_assert!(is_independent(&g, &out));
        for v in s.iter().filter(|&v| !out.contains(v)) {
            prop_assert!(g.neighbors(v).iter().any(|&u| s.contains(u)));
        }
        prop_assert!(out.iter().all(|v| s.contains(v)));
        if is_independent(&g, &s) {
            prop_assert_eq!(out, s);
        }
    }

    #[test]
    fn refinement_keeps_independence(g in graph(40), seed in any::<u64>()) {
        let s = greedy_mis(&g);
        let k = g.n().div_ceil(10);
        if let Ok(out) = mis_iterative_sol(&g, &s, k, &SubSolver::exact(), seed) {
            prop_assert!(is_independent(&g, &out));
        }
    }

    #[test]
    fn embedding_ignores_vertex_labels(g in graph(15), shift in 0usize..15) {
        let n = g.n();
        let relabeled = Graph::from_edges(n, g.edges().iter().map(|&(u, v)| ((u + shift) % n, (v + shift) % n))).unwrap();
        let (a, b) = (embed(&g, 64, 3).unwrap(), embed(&relabeled, 64, 3).unwrap());
        prop_assert_eq!(a.clone(), b);
        prop_assert!((a.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cluster_labels_partition_the_pool(n in 2usize..12, k in 1usize..12, seed in any::<u64>()) {
        let k = k.min(n);
        let mut rng = hydra_mis::rng::rng_from(seed);
        let mut t = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = if i == j { 1.0 } else { rand::Rng::random_range(&mut rng, 0.0..1.0) };
                t[i * n + j] = v;
                t[j * n + i] = v;
            }
        }
        let dm = DistanceMatrix::from_transferability((0..n).map(|i| format!("g{i}")).collect(), t).unwrap();
        let emb: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64; 8]).collect();
        let model = hierarchical_cluster(&dm, &emb, k).unwrap();
        let labels: Vec<usize> = dm.ids.iter().map(|id| model.label(id).unwrap()).collect();
        // First appearance order: each new label is exactly one more than the largest seen.
        let mut top = None::<usize>;
        for &l in &labels {
            prop_assert!(l <= top.map_or(0, |t| t + 1));
            top = Some(top.map_or(l, |t| t.max(l)));
        }
        prop_assert_eq!(top, Some(k - 1));
        prop_assert_eq!(model.merges.len(), n - 1);
    }

    #[test]
    fn valid_prediction_files_parse(raw in proptest::collection::vec(0.01f64..1.0, 1..8)) {
        let total: f64 = raw.iter().sum();
        let probabilities: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let label = (0..probabilities.len()).fold(0, |b, i| if probabilities[i] > probabilities[b] { i } else { b });
        let mut file = PredictionFile::default();
        file.predictions.insert("x".into(), Prediction { label, probabilities });
        let json = serde_json::to_string(&file).unwrap();
        prop_assert_eq!(PredictionFile::parse(&json).unwrap(), file);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hydra_best_is_monotone_and_wave_order_free(g in graph(80), seed in any::<u64>()) {
        let config = HydraConfig { n_iterations: 4, cutoff: 12, patience: None, seed, ..HydraConfig::default() };
        let (s, trace) = solve_mis(&g, &config).unwrap();
        prop_assert!(is_independent(&g, &s));
        prop_assert!(trace.records.windows(2).all(|w| w[0].best <= w[1].best));
        prop_assert_eq!(trace.records.last().unwrap().best, s.cardinality());
        let (seq, _) = solve_mis(&g, &HydraConfig { concurrent: false, ..config }).unwrap();
        prop_assert_eq!(seq, s);
    }

    #[test]
    fn hydra_with_large_cutoff_is_exact(g in graph(30), seed in any::<u64>()) {
        let config = HydraConfig { n_iterations: 1, cutoff: 30, seed, ..HydraConfig::default() };
        let (s, _) = solve_mis(&g, &config).unwrap();
        prop_assert_eq!(s.cardinality(), exact_mis(&g).unwrap().cardinality());
    }
}
