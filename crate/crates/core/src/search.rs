//! Exhaustive backtracking search for SEDFs in a fixed group.
//!
//! Elements are consumed in index order. At each element the search first
//! skips it, then tries it in every block that is not yet full, stopping after
//! the first empty block. The identity is seeded into block 0, so every
//! result has nonempty blocks with strictly increasing minima.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{BlockFamily, DifferenceCounter};
use crate::group::FiniteGroup;
use crate::params::is_admissible;

/// Largest order searched unless `SearchOptions::allow_large` is set.
pub const DEFAULT_MAX_SEARCH_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Recount every difference at each node instead of using the counters.
    pub naive_check: bool,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    /// Number of placed elements at which subtrees become parallel tasks.
    pub split_depth: usize,
    pub allow_large: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            naive_check: false,
            jobs: 1,
            split_depth: 3,
            allow_large: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub families: Vec<BlockFamily>,
    /// Nodes entered, including those rejected on entry.
    pub nodes: u64,
}

/// One visited node: the number of consumed elements and, for each of them,
/// `0` if skipped or `i + 1` if placed in block `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRecord {
    pub p: usize,
    pub assignment: Vec<u8>,
}

/// A partial family together with one difference counter per block.
#[derive(Clone, Debug)]
pub struct SearchState {
    blocks: Vec<Vec<usize>>,
    p: usize,
    placed: usize,
    counters: Vec<DifferenceCounter>,
    lambda: u32,
    excess: u32,
    undo: Vec<(usize, u32)>,
}

impl SearchState {
    /// The seeded start state: identity in block 0, one element consumed.
    pub fn seeded(g: &FiniteGroup, m: usize, lambda: usize) -> Self {
        let mut st = Self::empty(g.order(), m, lambda);
        st.push(g, 0, g.identity());
        st.p = 1;
        st
    }

    /// Builds a state from explicit blocks; `p` is the number of consumed
    /// elements.
    pub fn from_blocks(g: &FiniteGroup, blocks: &[Vec<usize>], p: usize, lambda: usize) -> Self {
        let mut st = Self::empty(g.order(), blocks.len(), lambda);
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                st.push(g, i, x);
            }
        }
        st.p = p;
        st
    }

    fn empty(n: usize, m: usize, lambda: usize) -> Self {
        Self {
            blocks: vec![Vec::new(); m],
            p: 0,
            placed: 0,
            counters: (0..m).map(|_| DifferenceCounter::new(n)).collect(),
            lambda: lambda as u32,
            excess: 0,
            undo: Vec::new(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn placed(&self) -> usize {
        self.placed
    }

    pub fn counters(&self) -> &[DifferenceCounter] {
        &self.counters
    }

    /// Adds `z` to block `i`, updating both directions of every new
    /// cross-block difference.
    fn push(&mut self, g: &FiniteGroup, i: usize, z: usize) {
        let lambda = self.lambda;
        let mut excess = 0;
        let mut pairs = 0;
        for (j, other) in self.blocks.iter().enumerate() {
            if j == i {
                continue;
            }
            for &y in other {
                let d = g.diff(z, y);
                if self.counters[i].increment(d) > lambda {
                    excess += 1;
                }
                if self.counters[j].increment(g.inv(d)) > lambda {
                    excess += 1;
                }
                pairs += 1;
            }
        }
        self.undo.push((pairs, excess));
        self.excess += excess;
        self.blocks[i].push(z);
        self.placed += 1;
    }

    fn pop(&mut self, i: usize) {
        self.blocks[i].pop().expect("pop from empty block");
        let (pairs, excess) = self.undo.pop().expect("unbalanced undo stack");
        self.excess -= excess;
        self.placed -= 1;
        // Pushes and pops are strictly nested, so each journal tail holds
        // exactly the increments made by the matching push.
        for (j, other) in self.blocks.iter().enumerate() {
            let c = &mut self.counters[j];
            let undo = if j == i { pairs } else { other.len() };
            c.rollback(c.mark() - undo);
        }
    }

    fn record(&self) -> NodeRecord {
        let mut assignment = vec![0u8; self.p];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                assignment[x] = (i + 1) as u8;
            }
        }
        NodeRecord {
            p: self.p,
            assignment,
        }
    }

    /// Nonempty blocks form a prefix and their minima increase.
    pub fn is_normal_form(&self) -> bool {
        let nonempty = self.blocks.iter().take_while(|b| !b.is_empty()).count();
        self.blocks[nonempty..].iter().all(|b| b.is_empty())
            && self.blocks[..nonempty]
                .windows(2)
                .all(|w| w[0].iter().min() < w[1].iter().min())
    }
}

/// True unless some cross-block difference already occurs more than
/// `lambda` times, read from the counters.
pub fn check_partial(state: &SearchState, lambda: usize) -> bool {
    if lambda as u32 == state.lambda {
        return state.excess == 0;
    }
    state
        .counters
        .iter()
        .all(|c| c.counts().iter().all(|&x| x as usize <= lambda))
}

/// The same test by recounting all cross-block differences from scratch.
pub fn check_partial_naive(state: &SearchState, g: &FiniteGroup, lambda: usize) -> bool {
    let n = g.order();
    let mut count = vec![0usize; n];
    for (i1, b1) in state.blocks.iter().enumerate() {
        count.iter_mut().for_each(|c| *c = 0);
        for (i2, b2) in state.blocks.iter().enumerate() {
            if i1 == i2 {
                continue;
            }
            for &x in b1 {
                for &y in b2 {
                    let d = g.diff(x, y);
                    count[d] += 1;
                    if count[d] > lambda {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// True when the unfilled slots outnumber the unconsumed elements.
pub fn capacity_prune(state: &SearchState, n: usize, m: usize, k: usize) -> bool {
    (m * k).saturating_sub(state.placed) > n.saturating_sub(state.p)
}

struct Engine<'a> {
    g: &'a FiniteGroup,
    n: usize,
    m: usize,
    k: usize,
    lambda: usize,
    naive: bool,
    first_only: bool,
    stop: Option<&'a AtomicBool>,
    split_at: Option<usize>,
    tasks: Vec<SearchState>,
    found: Vec<Vec<Vec<usize>>>,
    nodes: u64,
    log: Option<Vec<NodeRecord>>,
}

impl<'a> Engine<'a> {
    fn new(g: &'a FiniteGroup, m: usize, k: usize, lambda: usize, naive: bool) -> Self {
        Self {
            g,
            n: g.order(),
            m,
            k,
            lambda,
            naive,
            first_only: false,
            stop: None,
            split_at: None,
            tasks: Vec::new(),
            found: Vec::new(),
            nodes: 0,
            log: None,
        }
    }

    fn stopped(&self) -> bool {
        self.stop.is_some_and(|s| s.load(Ordering::Relaxed))
    }

    fn visit(&mut self, st: &mut SearchState) {
        if self.stopped() {
            return;
        }
        if let Some(depth) = self.split_at {
            if st.placed >= depth {
                self.tasks.push(st.clone());
                return;
            }
        }
        self.nodes += 1;
        if let Some(log) = &mut self.log {
            log.push(st.record());
        }
        let ok = if self.naive {
            check_partial_naive(st, self.g, self.lambda)
        } else {
            st.excess == 0
        };
        if !ok || capacity_prune(st, self.n, self.m, self.k) {
            return;
        }
        if st.placed == self.m * self.k {
            self.found.push(st.blocks.clone());
            if self.first_only {
                if let Some(s) = self.stop {
                    s.store(true, Ordering::Relaxed);
                }
            }
            return;
        }
        if st.p == self.n {
            return;
        }
        debug_assert!(st.is_normal_form());
        let z = st.p;
        st.p += 1;
        self.visit(st);
        for i in 0..self.m {
            let len = st.blocks[i].len();
            if len == self.k {
                continue;
            }
            st.push(self.g, i, z);
            self.visit(st);
            st.pop(i);
            if len == 0 {
                break;
            }
        }
        st.p -= 1;
    }
}

fn validate(
    g: &FiniteGroup,
    m: usize,
    k: usize,
    lambda: usize,
    opts: &SearchOptions,
) -> Result<()> {
    let n = g.order();
    if !is_admissible(n, m, k, lambda) {
        return Err(Error::Inadmissible { n, m, k, lambda });
    }
    if n > DEFAULT_MAX_SEARCH_ORDER && !opts.allow_large {
        return Err(Error::Parameter(format!(
            "search is limited to order {DEFAULT_MAX_SEARCH_ORDER}; order {n} needs the override"
        )));
    }
    if m > u8::MAX as usize - 1 {
        return Err(Error::Parameter(format!("too many blocks: {m}")));
    }
    Ok(())
}

fn to_families(g: &Arc<FiniteGroup>, mut found: Vec<Vec<Vec<usize>>>) -> Result<Vec<BlockFamily>> {
    found.sort_unstable();
    found
        .into_iter()
        .map(|b| BlockFamily::new(g.clone(), b))
        .collect()
}

fn run(
    g: &Arc<FiniteGroup>,
    m: usize,
    k: usize,
    lambda: usize,
    opts: &SearchOptions,
    first_only: bool,
) -> Result<SearchReport> {
    validate(g, m, k, lambda, opts)?;
    let stop = AtomicBool::new(false);
    let mut root = SearchState::seeded(g, m, lambda);
    let mut eng = Engine::new(g, m, k, lambda, opts.naive_check);
    eng.first_only = first_only;
    eng.stop = Some(&stop);
    if opts.jobs <= 1 {
        eng.visit(&mut root);
        let mut found = eng.found;
        if first_only {
            found.truncate(1);
        }
        return Ok(SearchReport {
            families: to_families(g, found)?,
            nodes: eng.nodes,
        });
    }

    eng.split_at = Some(opts.split_depth.max(1));
    eng.visit(&mut root);
    let tasks = std::mem::take(&mut eng.tasks);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let results: Vec<(Vec<Vec<Vec<usize>>>, u64)> = pool.install(|| {
        tasks
            .into_par_iter()
            .map(|mut st| {
                let mut sub = Engine::new(g, m, k, lambda, opts.naive_check);
                sub.first_only = first_only;
                sub.stop = Some(&stop);
                sub.visit(&mut st);
                (sub.found, sub.nodes)
            })
            .collect()
    });
    let mut found = eng.found;
    let mut nodes = eng.nodes;
    for (f, c) in results {
        found.extend(f);
        nodes += c;
    }
    if first_only {
        found.sort_unstable();
        found.truncate(1);
    }
    Ok(SearchReport {
        families: to_families(g, found)?,
        nodes,
    })
}

/// Every SEDF in normal form (identity in block 0, increasing block minima),
/// sorted by block content.
pub fn search_all(
    g: &Arc<FiniteGroup>,
    m: usize,
    k: usize,
    lambda: usize,
) -> Result<Vec<BlockFamily>> {
    Ok(run(g, m, k, lambda, &SearchOptions::default(), false)?.families)
}

pub fn search_all_with(
    g: &Arc<FiniteGroup>,
    m: usize,
    k: usize,
    lambda: usize,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    run(g, m, k, lambda, opts, false)
}

/// Stops at the first complete SEDF. With more than one job the result is
/// some SEDF, not necessarily the first in sequential order.
pub fn search_first(
    g: &Arc<FiniteGroup>,
    m: usize,
    k: usize,
    lambda: usize,
) -> Result<Option<BlockFamily>> {
    search_first_with(g, m, k, lambda, &SearchOptions::default())
}

pub fn search_first_with(
    g: &Arc<FiniteGroup>,
    m: usize,
    k: usize,
    lambda: usize,
    opts: &SearchOptions,
) -> Result<Option<BlockFamily>> {
    Ok(run(g, m, k, lambda, opts, true)?
        .families
        .into_iter()
        .next())
}

/// Sequential search that also returns every visited node in visit order.
pub fn search_node_log(
    g: &Arc<FiniteGroup>,
    m: usize,
    k: usize,
    lambda: usize,
    naive: bool,
) -> Result<(Vec<BlockFamily>, Vec<NodeRecord>)> {
    validate(g, m, k, lambda, &SearchOptions::default())?;
    let mut root = SearchState::seeded(g, m, lambda);
    let mut eng = Engine::new(g, m, k, lambda, naive);
    eng.log = Some(Vec::new());
    eng.visit(&mut root);
    let log = eng.log.take().unwrap_or_default();
    Ok((to_families(g, eng.found)?, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::verify_sedf;
    use crate::group::{construct_cyclic, construct_dihedral, construct_semidirect};

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(construct_cyclic(n).unwrap())
    }

    #[test]
    fn check_partial_examples() {
        let g = z(5);
        let st = SearchState::from_blocks(&g, &[vec![0], vec![1]], 2, 1);
        assert!(check_partial(&st, 1));
        assert!(check_partial_naive(&st, &g, 1));
        let st = SearchState::from_blocks(&g, &[vec![0, 1], vec![2, 3]], 4, 1);
        assert!(!check_partial(&st, 1));
        assert!(!check_partial_naive(&st, &g, 1));
        let st = SearchState::from_blocks(&g, &[vec![0, 1, 2], vec![]], 3, 1);
        assert!(check_partial(&st, 1));
        assert!(check_partial_naive(&st, &g, 1));
    }

    #[test]
    fn capacity_examples() {
        let g = z(5);
        let st = SearchState::from_blocks(&g, &[vec![0], vec![]], 5, 1);
        assert!(capacity_prune(&st, 5, 2, 2));
        let st = SearchState::seeded(&g, 2, 1);
        assert!(!capacity_prune(&st, 5, 2, 2));
        let g = z(10);
        let st = SearchState::from_blocks(&g, &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7]], 10, 2);
        assert!(capacity_prune(&st, 10, 3, 3));
    }

    #[test]
    fn pop_restores_counters() {
        let g = z(13);
        let mut st = SearchState::seeded(&g, 3, 1);
        let before = st.counters.clone();
        st.push(&g, 1, 4);
        st.push(&g, 2, 7);
        st.push(&g, 0, 9);
        st.pop(0);
        st.pop(2);
        st.pop(1);
        for (a, b) in st.counters.iter().zip(&before) {
            assert_eq!(a.counts(), b.counts());
        }
        assert_eq!(st.excess, 0);
    }

    #[test]
    fn small_searches() {
        let fams = search_all(&z(5), 2, 2, 1).unwrap();
        assert!(!fams.is_empty());
        assert!(fams.iter().all(|f| verify_sedf(f, 1).unwrap()));
        assert!(search_all(&z(9), 2, 4, 2).unwrap().is_empty());
        let d10 = Arc::new(construct_dihedral(10).unwrap());
        assert!(!search_all(&d10, 2, 3, 1).unwrap().is_empty());
        assert!(search_first(&z(17), 2, 4, 1).unwrap().is_some());
    }

    #[test]
    fn semidirect_21_has_none() {
        let g = Arc::new(construct_semidirect(7, 3, 2).unwrap());
        assert!(search_first(&g, 6, 2, 1).unwrap().is_none());
    }

    #[test]
    fn rejects_inadmissible_and_large() {
        assert!(matches!(
            search_all(&z(5), 2, 2, 2),
            Err(Error::Inadmissible { .. })
        ));
        assert!(search_all(&z(65), 2, 8, 2).is_err());
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = z(17);
        let seq = search_all_with(&g, 2, 4, 1, &SearchOptions::default()).unwrap();
        let opts = SearchOptions {
            jobs: 3,
            ..SearchOptions::default()
        };
        let par = search_all_with(&g, 2, 4, 1, &opts).unwrap();
        assert_eq!(seq.families, par.families);
        assert_eq!(seq.nodes, par.nodes);
    }
}
