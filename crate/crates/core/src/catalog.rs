//! Built-in groups by order: every abelian group, plus the dihedral and
//! `Z_p ⋊ Z_q` groups among the nonabelian ones.

use std::sync::Arc;

use crate::classify::{Classifier, EquivalenceClass};
use crate::error::{Error, Result};
use crate::family::{map_family, BlockFamily};
use crate::group::{
    construct_dihedral, construct_semidirect, find_isomorphism, is_prime, multiplicative_order,
    FiniteGroup,
};

fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `n` with parts in non-increasing order, listed in
/// reverse lexicographic order (`[n]` first).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors `d_1 | d_2 | ... | d_r` of every abelian group of order
/// `n`, cyclic group first.
pub fn abelian_invariant_factors(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for combo in &combos {
            for part in partitions(e) {
                // Largest prime power goes into the largest invariant factor.
                let len = combo.len().max(part.len());
                let mut merged = vec![1usize; len];
                for (i, &d) in combo.iter().rev().enumerate() {
                    merged[len - 1 - i] *= d;
                }
                for (i, &a) in part.iter().enumerate() {
                    merged[len - 1 - i] *= p.pow(a);
                }
                next.push(merged);
            }
        }
        combos = next;
    }
    combos
}

pub fn abelian_spec(factors: &[usize]) -> String {
    factors
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

/// Every abelian group of order `n` up to isomorphism, cyclic first.
pub fn abelian_groups(n: usize) -> Result<Vec<FiniteGroup>> {
    abelian_invariant_factors(n)
        .iter()
        .map(|f| FiniteGroup::from_spec(&abelian_spec(f)))
        .collect()
}

fn smallest_action(p: u64, q: u64) -> Option<u64> {
    (2..p).find(|&a| multiplicative_order(a, p) == Some(q))
}

/// Nonabelian groups of order `n` from the dihedral and `Z_p ⋊ Z_q` (odd `q`)
/// constructors. This is complete only for orders `2p` and `pq`.
pub fn nonabelian_groups(n: usize) -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    if n >= 6 && n.is_multiple_of(2) {
        out.push(construct_dihedral(n)?);
    }
    for q in (3..n).filter(|&q| is_prime(q as u64) && n.is_multiple_of(q)) {
        let p = n / q;
        if p > q && is_prime(p as u64) && (p - 1).is_multiple_of(q) {
            let a = smallest_action(p as u64, q as u64)
                .ok_or_else(|| Error::Internal(format!("no element of order {q} mod {p}")))?;
            out.push(construct_semidirect(p as u64, q as u64, a)?);
        }
    }
    Ok(out)
}

/// Abelian groups then nonabelian ones, in a fixed order.
pub fn catalog_groups(n: usize) -> Result<Vec<FiniteGroup>> {
    let mut out = abelian_groups(n)?;
    out.extend(nonabelian_groups(n)?);
    Ok(out)
}

/// The first catalog group isomorphic to `g`, if any.
pub fn witness_group(g: &Arc<FiniteGroup>) -> Result<Option<Arc<FiniteGroup>>> {
    for cand in catalog_groups(g.order())? {
        let cand = Arc::new(cand);
        if find_isomorphism(g, &cand).is_some() {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Classes of families drawn from possibly different groups. Each family is
/// moved into its catalog witness group (or kept in its own group when no
/// witness exists) and classified there. Classes from different witnesses
/// are never merged.
pub fn classify_mixed(
    fams: &[BlockFamily],
) -> Result<Vec<(Arc<FiniteGroup>, Vec<EquivalenceClass>)>> {
    let mut buckets: Vec<(Arc<FiniteGroup>, Vec<BlockFamily>)> = Vec::new();
    for f in fams {
        let existing = buckets
            .iter()
            .position(|(w, _)| find_isomorphism(f.group(), w).is_some());
        let idx = match existing {
            Some(i) => i,
            None => {
                let w = witness_group(f.group())?.unwrap_or_else(|| f.group().clone());
                buckets.push((w, Vec::new()));
                buckets.len() - 1
            }
        };
        let w = buckets[idx].0.clone();
        let phi = find_isomorphism(f.group(), &w)
            .ok_or_else(|| Error::Internal("witness group lost its isomorphism".into()))?;
        buckets[idx].1.push(map_family(f, &phi)?);
    }
    buckets
        .into_iter()
        .map(|(w, members)| {
            let classes = Classifier::new(w.clone()).classify(&members)?;
            Ok((w, classes))
        })
        .collect()
}
