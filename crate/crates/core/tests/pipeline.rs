use std::io::{Cursor, Write};
use std::sync::Arc;

use flate2::write::GzEncoder;
use flate2::Compression;
use quickprune::graphio::{assign_knapsack_costs, read_edge_list_file, CostModel};
use quickprune::metrics::{sweep_budgets, PrunerOutput, SolverKind};
use quickprune::objectives::{Coverage, SimGraphCut, SimilarityKernel};
use quickprune::pruning::{quickprune, read_ids, write_ids, LadderParams};
use quickprune::solvers::brute_force_opt;
use quickprune::Oracle;

#[test]
fn gzip_edge_list_through_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt.gz");
    let mut enc = GzEncoder::new(Vec::new(), Compression::default());
    for i in 0..200u64 {
        writeln!(enc, "{} {}", 1000 + i, 1000 + (i * 7 + 3) % 200).unwrap();
        writeln!(enc, "{} {}", 1000 + i, 1000 + (i * 13 + 5) % 200).unwrap();
    }
    std::fs::write(&path, enc.finish().unwrap()).unwrap();

    let graph = read_edge_list_file(&path, false).unwrap();
    assert_eq!(graph.n(), 200);
    let graph = assign_knapsack_costs(&graph, CostModel::default()).unwrap();
    let costs = graph.costs().to_vec();
    let oracle = Oracle::new(Coverage::new(Arc::new(graph)));
    let all: Vec<_> = (0..200).collect();
    let (pruned, report) = quickprune(&all, &oracle, &costs, LadderParams::new(5.0, 20.0, 0.5, 0.1, 0.1).unwrap()).unwrap();

    let mut buf = Vec::new();
    write_ids(&mut buf, &pruned).unwrap();
    assert_eq!(read_ids(Cursor::new(buf)).unwrap(), pruned);

    let outputs = [PrunerOutput {
        name: "quickprune".into(),
        pruned,
        oracle_calls: report.oracle_calls,
        range: Some((5.0, 20.0)),
    }];
    let recs = sweep_budgets(&oracle, &costs, &all, &outputs, &[5.0, 10.0, 20.0, 40.0], SolverKind::Knapsack).unwrap();
    assert_eq!(recs.len(), 4);
    assert_eq!(recs.iter().map(|r| r.out_of_range).collect::<Vec<_>>(), [false, false, false, true]);
    assert!(recs.iter().all(|r| r.p_r.unwrap() > 0.5));
}

#[test]
fn retrieval_objective_keeps_query_relevant_candidates() {
    // queries 0 and 1; candidates 2..8 where 2 and 3 are near-duplicates
    // close to the queries and the rest are unrelated
    let dim = 8;
    let mut m = vec![0.0; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1.0;
    }
    let mut set = |a: usize, b: usize, s: f64| {
        m[a * dim + b] = s;
        m[b * dim + a] = s;
    };
    set(0, 2, 0.9);
    set(1, 2, 0.8);
    set(0, 3, 0.85);
    set(1, 3, 0.8);
    set(2, 3, 0.95);
    for c in 4..dim {
        set(0, c, 0.05);
    }
    let kernel = SimilarityKernel::new(dim, m, vec![0, 1], 10.0).unwrap();
    let oracle = Oracle::new(SimGraphCut::new(Arc::new(kernel)));
    assert_eq!(oracle.n(), 6);
    let costs = vec![1.0; 6];
    let all: Vec<_> = (0..6).collect();
    let (pruned, _) = quickprune(&all, &oracle, &costs, LadderParams::new(1.0, 2.0, 0.5, 0.5, 0.1).unwrap()).unwrap();
    assert!(pruned.contains(&0));
    let opt = brute_force_opt(&oracle, &costs, &all, 1.0).unwrap();
    let kept = brute_force_opt(&oracle, &costs, &pruned, 1.0).unwrap();
    assert_eq!(opt.set, vec![0]);
    assert_eq!(kept.value, opt.value);
}
