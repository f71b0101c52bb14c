use std::collections::BTreeSet;
use std::sync::Arc;

use sedf_core::catalog::catalog_groups;
use sedf_core::params::enumerate_admissible;
use sedf_core::search::{
    check_partial, check_partial_naive, search_all_with, search_node_log, SearchOptions,
    SearchState,
};
use sedf_core::{verify_sedf, BlockFamily, FiniteGroup};

/// Every assignment of group elements to `m` blocks of size `k` with the
/// identity in block 0 and increasing block minima.
fn brute_force_candidates(n: usize, m: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(
        x: usize,
        n: usize,
        k: usize,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if blocks.iter().all(|b| b.len() == k) {
            out.push(blocks.clone());
            return;
        }
        if x == n {
            return;
        }
        go(x + 1, n, k, blocks, out);
        for i in 0..blocks.len() {
            if blocks[i].len() < k {
                blocks[i].push(x);
                go(x + 1, n, k, blocks, out);
                blocks[i].pop();
            }
        }
    }
    let mut blocks = vec![Vec::new(); m];
    blocks[0].push(0);
    let mut all = Vec::new();
    go(1, n, k, &mut blocks, &mut all);
    all.into_iter()
        .filter(|bl| bl.windows(2).all(|w| w[0][0] < w[1][0]))
        .collect()
}

fn cells(max_n: usize, trivial_up_to: usize) -> Vec<(Arc<FiniteGroup>, usize, usize, usize)> {
    let mut out = Vec::new();
    for p in enumerate_admissible(max_n, true) {
        if p.is_trivial() && p.n > trivial_up_to {
            continue;
        }
        for g in catalog_groups(p.n).unwrap() {
            out.push((Arc::new(g), p.m, p.k, p.lambda));
        }
    }
    out
}

#[test]
fn search_is_complete_up_to_order_10() {
    let cells = cells(10, 7);
    assert!(cells.len() >= 12);
    for (g, m, k, lambda) in cells {
        let n = g.order();
        let mut expected = BTreeSet::new();
        for blocks in brute_force_candidates(n, m, k) {
            let fam = BlockFamily::new(g.clone(), blocks.clone()).unwrap();
            let complete = SearchState::from_blocks(&g, &blocks, n, lambda);
            let ok = verify_sedf(&fam, lambda).unwrap();
            assert_eq!(check_partial(&complete, lambda), ok, "{fam}");
            assert_eq!(check_partial_naive(&complete, &g, lambda), ok, "{fam}");
            if ok {
                expected.insert(blocks);
            }
        }
        let found: BTreeSet<Vec<Vec<usize>>> =
            search_all_with(&g, m, k, lambda, &SearchOptions::default())
                .unwrap()
                .families
                .iter()
                .map(|f| f.blocks().to_vec())
                .collect();
        assert_eq!(found, expected, "{} ({n},{m},{k},{lambda})", g.name());
    }
}

#[test]
fn incremental_and_naive_visit_the_same_nodes() {
    for (g, m, k, lambda) in cells(13, 6) {
        let (fast, fast_log) = search_node_log(&g, m, k, lambda, false).unwrap();
        let (slow, slow_log) = search_node_log(&g, m, k, lambda, true).unwrap();
        assert_eq!(fast, slow, "{}", g.name());
        assert_eq!(
            fast_log,
            slow_log,
            "{} ({},{m},{k},{lambda})",
            g.name(),
            g.order()
        );
        assert!(fast.iter().all(|f| verify_sedf(f, lambda).unwrap()));
    }
}

#[test]
fn worker_count_does_not_change_output() {
    for spec in ["Z17", "Z13", "D10"] {
        let g = Arc::new(FiniteGroup::from_spec(spec).unwrap());
        let n = g.order();
        let params: Vec<_> = enumerate_admissible(n, false)
            .into_iter()
            .filter(|p| p.n == n && p.m == 2)
            .collect();
        for p in params {
            let base = search_all_with(&g, p.m, p.k, p.lambda, &SearchOptions::default()).unwrap();
            for jobs in [2, 4] {
                for split_depth in [1, 3, 5] {
                    let opts = SearchOptions {
                        jobs,
                        split_depth,
                        ..SearchOptions::default()
                    };
                    let r = search_all_with(&g, p.m, p.k, p.lambda, &opts).unwrap();
                    assert_eq!(r.families, base.families);
                    assert_eq!(r.nodes, base.nodes);
                }
            }
        }
    }
}
