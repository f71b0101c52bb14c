//! Block families and the external-difference verifiers.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupMap};

/// Occurrence counts of group elements as differences, with an undo journal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DifferenceCounter {
    counts: Vec<u32>,
    journal: Vec<u32>,
}

impl DifferenceCounter {
    pub fn new(order: usize) -> Self {
        Self {
            counts: vec![0; order],
            journal: Vec::new(),
        }
    }

    /// Increments `d` and returns its new count. The increment is journaled.
    #[inline]
    pub fn increment(&mut self, d: usize) -> u32 {
        self.counts[d] += 1;
        self.journal.push(d as u32);
        self.counts[d]
    }

    /// Current journal position, for a later `rollback`.
    pub fn mark(&self) -> usize {
        self.journal.len()
    }

    /// Undoes every increment made after `mark`.
    pub fn rollback(&mut self, mark: usize) {
        for d in self.journal.drain(mark..) {
            self.counts[d as usize] -= 1;
        }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, d: usize) -> u32 {
        self.counts[d]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// Adds another counter's counts (journal not carried over).
    pub fn absorb(&mut self, other: &DifferenceCounter) {
        for (a, &b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    /// True iff every non-identity element occurs exactly `lambda` times and
    /// the identity never does.
    pub fn is_uniform(&self, lambda: u32) -> bool {
        self.counts[0] == 0 && self.counts[1..].iter().all(|&c| c == lambda)
    }
}

fn check_disjoint(a: &[usize], b: &[usize], order: usize) -> Result<()> {
    let mut seen = vec![false; order];
    for &x in a {
        if x >= order {
            return Err(Error::ElementOutOfRange { index: x, order });
        }
        seen[x] = true;
    }
    for &y in b {
        if y >= order {
            return Err(Error::ElementOutOfRange { index: y, order });
        }
        if seen[y] {
            return Err(Error::NotDisjoint(y));
        }
    }
    Ok(())
}

/// Counts `x y^-1` over `x ∈ a`, `y ∈ b`.
pub fn difference_multiset(a: &[usize], b: &[usize], g: &FiniteGroup) -> Result<DifferenceCounter> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Shape("difference sets must be nonempty".into()));
    }
    check_disjoint(a, b, g.order())?;
    let mut c = DifferenceCounter::new(g.order());
    for &x in a {
        for &y in b {
            c.counts[g.diff(x, y)] += 1;
        }
    }
    Ok(c)
}

/// Which side a translate multiplies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Block sizes and multiplicities for a generalised SEDF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsedfProfile {
    pub sizes: Vec<usize>,
    pub lambdas: Vec<usize>,
}

impl GsedfProfile {
    pub fn new(sizes: Vec<usize>, lambdas: Vec<usize>) -> Result<Self> {
        if sizes.len() != lambdas.len() {
            return Err(Error::Shape("sizes and lambdas differ in length".into()));
        }
        if sizes.iter().chain(&lambdas).any(|&v| v == 0) {
            return Err(Error::Parameter("profile entries must be positive".into()));
        }
        Ok(Self { sizes, lambdas })
    }

    pub fn uniform(m: usize, k: usize, lambda: usize) -> Self {
        Self {
            sizes: vec![k; m],
            lambdas: vec![lambda; m],
        }
    }
}

/// An ordered list of pairwise disjoint blocks of group elements, each stored
/// sorted.
#[derive(Clone)]
pub struct BlockFamily {
    group: Arc<FiniteGroup>,
    blocks: Vec<Vec<usize>>,
}

impl PartialEq for BlockFamily {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks && self.group == other.group
    }
}

impl Eq for BlockFamily {}

impl fmt::Debug for BlockFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BlockFamily {
    /// Terse text form, e.g. `Z17: {0,1,4,5},{6,8,14,16}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.group.name())?;
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let labels: Vec<&str> = b.iter().map(|&x| self.group.label(x)).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect();
        write!(f, "{}", blocks.join(","))
    }
}

/// JSON form of a family: group spec string plus element labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub group: String,
    pub blocks: Vec<Vec<String>>,
}

impl BlockFamily {
    pub fn new(group: Arc<FiniteGroup>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        let mut seen = vec![false; n];
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            for &x in &b {
                if x >= n {
                    return Err(Error::ElementOutOfRange { index: x, order: n });
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotDisjoint(x));
                }
            }
            sorted.push(b);
        }
        Ok(Self {
            group,
            blocks: sorted,
        })
    }

    pub fn from_labels<S: AsRef<str>>(group: Arc<FiniteGroup>, blocks: &[Vec<S>]) -> Result<Self> {
        let idx = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|l| {
                        group
                            .index_of(l.as_ref())
                            .ok_or_else(|| Error::UnknownLabel {
                                label: l.as_ref().to_string(),
                                group: group.name().to_string(),
                            })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, idx)
    }

    /// Parses `"<group spec>: {a,b,...},{c,...}"`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let (spec, rest) = split_group_prefix(text)?;
        let group = Arc::new(FiniteGroup::from_spec(spec)?);
        Self::parse_blocks(group, rest)
    }

    /// Parses `"{a,b},{c,d}"` against an already built group.
    pub fn parse_blocks(group: Arc<FiniteGroup>, text: &str) -> Result<Self> {
        let mut blocks: Vec<Vec<String>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('{')
                .ok_or_else(|| Error::FamilyFormat(format!("expected '{{' at '{rest}'")))?;
            let close = open
                .find('}')
                .ok_or_else(|| Error::FamilyFormat("unterminated block".into()))?;
            let inner = &open[..close];
            blocks.push(split_top_level(inner));
            rest = open[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        if blocks.is_empty() {
            return Err(Error::FamilyFormat("no blocks".into()));
        }
        Self::from_labels(group, &blocks)
    }

    pub fn from_record(record: &FamilyRecord) -> Result<Self> {
        let group = Arc::new(FiniteGroup::from_spec(&record.group)?);
        Self::from_labels(group, &record.blocks)
    }

    pub fn to_record(&self) -> FamilyRecord {
        FamilyRecord {
            group: self.group.name().to_string(),
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|&x| self.group.label(x).to_string()).collect())
                .collect(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Common block size, if all blocks agree.
    pub fn uniform_size(&self) -> Option<usize> {
        let k = self.blocks.first()?.len();
        self.blocks.iter().all(|b| b.len() == k).then_some(k)
    }

    fn with_blocks(&self, group: Arc<FiniteGroup>, blocks: Vec<Vec<usize>>) -> Self {
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Self { group, blocks }
    }

    /// External differences `x y^-1` from block `i` into every other block.
    pub fn block_differences(&self, i: usize) -> DifferenceCounter {
        self.block_differences_by(i, |g, x, y| g.diff(x, y))
    }

    /// Mirrored differences `y^-1 x` from block `i`.
    pub fn block_codifferences(&self, i: usize) -> DifferenceCounter {
        self.block_differences_by(i, |g, x, y| g.mul(g.inv(y), x))
    }

    fn block_differences_by(
        &self,
        i: usize,
        op: impl Fn(&FiniteGroup, usize, usize) -> usize,
    ) -> DifferenceCounter {
        let g = &*self.group;
        let mut c = DifferenceCounter::new(g.order());
        for (j, other) in self.blocks.iter().enumerate() {
            if j == i {
                continue;
            }
            for &x in &self.blocks[i] {
                for &y in other {
                    c.counts[op(g, x, y)] += 1;
                }
            }
        }
        c
    }

    fn require_blocks(&self) -> Result<()> {
        if self.blocks.len() < 2 {
            return Err(Error::Shape(format!(
                "a family needs at least 2 blocks, found {}",
                self.blocks.len()
            )));
        }
        Ok(())
    }

    fn require_uniform(&self) -> Result<usize> {
        self.require_blocks()?;
        self.uniform_size()
            .ok_or_else(|| Error::Shape(format!("unequal block sizes {:?}", self.block_sizes())))
    }
}

/// Splits on commas outside parentheses, so tuple labels stay whole.
fn split_top_level(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim().to_string());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim().to_string());
    out.retain(|s| !s.is_empty());
    out
}

fn split_group_prefix(text: &str) -> Result<(&str, &str)> {
    // The spec may itself contain ':' (file:<path>), so split at the last
    // colon that precedes the first block.
    let brace = text
        .find('{')
        .ok_or_else(|| Error::FamilyFormat("missing blocks".into()))?;
    let colon = text[..brace]
        .rfind(':')
        .ok_or_else(|| Error::FamilyFormat("expected '<group>: {...}'".into()))?;
    Ok((text[..colon].trim(), &text[colon + 1..]))
}

pub fn verify_edf(fam: &BlockFamily, lambda: usize) -> Result<bool> {
    fam.require_uniform()?;
    let mut total = DifferenceCounter::new(fam.group.order());
    for i in 0..fam.blocks.len() {
        total.absorb(&fam.block_differences(i));
    }
    Ok(total.is_uniform(lambda as u32))
}

pub fn verify_coedf(fam: &BlockFamily, lambda: usize) -> Result<bool> {
    fam.require_uniform()?;
    let mut total = DifferenceCounter::new(fam.group.order());
    for i in 0..fam.blocks.len() {
        total.absorb(&fam.block_codifferences(i));
    }
    Ok(total.is_uniform(lambda as u32))
}

pub fn verify_sedf(fam: &BlockFamily, lambda: usize) -> Result<bool> {
    fam.require_uniform()?;
    Ok((0..fam.blocks.len()).all(|i| fam.block_differences(i).is_uniform(lambda as u32)))
}

pub fn verify_cosedf(fam: &BlockFamily, lambda: usize) -> Result<bool> {
    fam.require_uniform()?;
    Ok((0..fam.blocks.len()).all(|i| fam.block_codifferences(i).is_uniform(lambda as u32)))
}

pub fn verify_gsedf(fam: &BlockFamily, profile: &GsedfProfile) -> Result<bool> {
    fam.require_blocks()?;
    if fam.block_sizes() != profile.sizes {
        return Err(Error::Shape(format!(
            "block sizes {:?} do not match profile {:?}",
            fam.block_sizes(),
            profile.sizes
        )));
    }
    Ok(profile
        .lambdas
        .iter()
        .enumerate()
        .all(|(i, &l)| fam.block_differences(i).is_uniform(l as u32)))
}

/// Partial difference set test (abelian setting): `d` has `k` elements, and
/// its internal differences hit members of `d` `lam` times and other
/// non-identity elements `mu` times.
pub fn verify_pds(d: &[usize], g: &FiniteGroup, k: usize, lam: usize, mu: usize) -> Result<bool> {
    if d.is_empty() {
        return Err(Error::Precondition(
            "a partial difference set is nonempty".into(),
        ));
    }
    if d.contains(&0) {
        return Err(Error::Precondition(
            "identity must not lie in the set".into(),
        ));
    }
    let n = g.order();
    let mut member = vec![false; n];
    for &x in d {
        if x >= n {
            return Err(Error::ElementOutOfRange { index: x, order: n });
        }
        if std::mem::replace(&mut member[x], true) {
            return Err(Error::NotDisjoint(x));
        }
    }
    if d.len() != k {
        return Ok(false);
    }
    let mut counts = vec![0usize; n];
    for &x in d {
        for &y in d {
            if x != y {
                counts[g.diff(x, y)] += 1;
            }
        }
    }
    Ok((1..n).all(|z| counts[z] == if member[z] { lam } else { mu }))
}

pub fn invert_family(fam: &BlockFamily) -> BlockFamily {
    let g = &fam.group;
    let blocks = fam
        .blocks
        .iter()
        .map(|b| b.iter().map(|&x| g.inv(x)).collect())
        .collect();
    fam.with_blocks(fam.group.clone(), blocks)
}

pub fn translate_family(fam: &BlockFamily, by: usize, side: Side) -> Result<BlockFamily> {
    let g = &fam.group;
    if by >= g.order() {
        return Err(Error::ElementOutOfRange {
            index: by,
            order: g.order(),
        });
    }
    let blocks = fam
        .blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|&x| match side {
                    Side::Left => g.mul(by, x),
                    Side::Right => g.mul(x, by),
                })
                .collect()
        })
        .collect();
    Ok(fam.with_blocks(fam.group.clone(), blocks))
}

pub fn map_family(fam: &BlockFamily, phi: &GroupMap) -> Result<BlockFamily> {
    if **phi.source() != *fam.group {
        return Err(Error::GroupMismatch {
            expected: fam.group.name().to_string(),
            found: phi.source().name().to_string(),
        });
    }
    let blocks = fam
        .blocks
        .iter()
        .map(|b| b.iter().map(|&x| phi.apply(x)).collect())
        .collect();
    Ok(fam.with_blocks(phi.target().clone(), blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_cyclic, construct_dihedral};

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(construct_cyclic(n).unwrap())
    }

    fn fam(g: &Arc<FiniteGroup>, blocks: &[&[&str]]) -> BlockFamily {
        let b: Vec<Vec<&str>> = blocks.iter().map(|b| b.to_vec()).collect();
        BlockFamily::from_labels(g.clone(), &b).unwrap()
    }

    #[test]
    fn difference_multiset_examples() {
        let g = z(5);
        let c = difference_multiset(&[2, 4], &[0, 1], &g).unwrap();
        assert_eq!(c.counts(), &[0, 1, 1, 1, 1]);
        let c = difference_multiset(&[2, 3], &[0, 1], &g).unwrap();
        // Oracle: 2-0, 2-1, 3-0, 3-1.
        assert_eq!(c.counts(), &[0, 1, 2, 1, 0]);
        assert_eq!(c.total(), 4);
        assert!(matches!(
            difference_multiset(&[1, 2], &[2, 3], &g),
            Err(Error::NotDisjoint(2))
        ));

        let d10 = Arc::new(construct_dihedral(10).unwrap());
        let a: Vec<usize> = ["sr", "r^3", "sr^4"]
            .iter()
            .map(|l| d10.index_of(l).unwrap())
            .collect();
        let c = difference_multiset(&a, &[0], &d10).unwrap();
        for &x in &a {
            assert_eq!(c.get(x), 1);
        }
        assert_eq!(c.total(), 3);
    }

    #[test]
    fn counter_rollback() {
        let mut c = DifferenceCounter::new(4);
        c.increment(1);
        let m = c.mark();
        c.increment(2);
        c.increment(2);
        assert_eq!(c.get(2), 2);
        c.rollback(m);
        assert_eq!(c.counts(), &[0, 1, 0, 0]);
    }

    #[test]
    fn edf_examples() {
        let g = z(5);
        let f = fam(&g, &[&["0", "1"], &["2", "4"]]);
        assert!(verify_edf(&f, 2).unwrap());
        assert!(verify_sedf(&f, 1).unwrap());

        // All singletons over Z3: enumerate the 6 ordered pairs of distinct
        // elements; each non-zero difference occurs 3 times.
        let z3 = z(3);
        let mut counts = [0; 3];
        for x in 0..3 {
            for y in 0..3 {
                if x != y {
                    counts[(x + 3 - y) % 3] += 1;
                }
            }
        }
        assert_eq!(counts, [0, 3, 3]);
        let singles = fam(&z3, &[&["0"], &["1"], &["2"]]);
        assert!(verify_edf(&singles, 3).unwrap());
        assert!(!verify_edf(&singles, 2).unwrap());

        let bad = fam(&g, &[&["0", "1"], &["2", "3"]]);
        for l in 1..=4 {
            assert!(!verify_edf(&bad, l).unwrap());
        }
        let unequal = fam(&g, &[&["0"], &["2", "3"]]);
        assert!(matches!(verify_edf(&unequal, 1), Err(Error::Shape(_))));
    }

    #[test]
    fn sedf_examples() {
        let z10 = z(10);
        assert!(verify_sedf(&fam(&z10, &[&["0", "1", "2"], &["3", "6", "9"]]), 1).unwrap());
        let d10 = Arc::new(construct_dihedral(10).unwrap());
        let f = fam(&d10, &[&["e", "s", "r"], &["sr", "r^3", "sr^4"]]);
        assert!(verify_sedf(&f, 1).unwrap());
        assert!(verify_cosedf(&f, 1).unwrap());
        let inv = invert_family(&f);
        assert_eq!(
            inv,
            fam(&d10, &[&["e", "s", "r^4"], &["sr", "r^2", "sr^4"]])
        );
        assert!(verify_sedf(&inv, 1).unwrap());
        for n in [2, 5, 8] {
            let g = z(n);
            let f = BlockFamily::new(g, (0..n).map(|i| vec![i]).collect()).unwrap();
            assert!(verify_sedf(&f, 1).unwrap());
        }
        let single = BlockFamily::new(z(5), vec![vec![0, 1]]).unwrap();
        assert!(matches!(verify_sedf(&single, 1), Err(Error::Shape(_))));
    }

    #[test]
    fn gsedf_examples() {
        let z7 = z(7);
        let p = GsedfProfile::new(vec![2, 3], vec![1, 1]).unwrap();
        assert!(verify_gsedf(&fam(&z7, &[&["0", "3"], &["4", "5", "6"]]), &p).unwrap());
        assert!(verify_gsedf(&fam(&z7, &[&["0", "1"], &["2", "4", "6"]]), &p).unwrap());
        let f = fam(&z(5), &[&["0", "1"], &["2", "4"]]);
        assert!(verify_gsedf(&f, &GsedfProfile::uniform(2, 2, 1)).unwrap());
        assert!(matches!(verify_gsedf(&f, &p), Err(Error::Shape(_))));
    }

    #[test]
    fn translates_and_maps() {
        let g = z(5);
        let f = fam(&g, &[&["0", "1"], &["2", "4"]]);
        let t = translate_family(&f, 2, Side::Left).unwrap();
        assert_eq!(t.blocks(), &[vec![2, 3], vec![1, 4]]);
        assert_eq!(translate_family(&f, 0, Side::Right).unwrap(), f);
        let times2 = GroupMap::from_fn(g.clone(), g.clone(), |x| 2 * x % 5).unwrap();
        assert_eq!(
            map_family(&f, &times2).unwrap().blocks(),
            &[vec![0, 2], vec![3, 4]]
        );
        assert_eq!(map_family(&f, &GroupMap::identity(g.clone())).unwrap(), f);

        let z17 = z(17);
        let f17 = fam(&z17, &[&["0", "1", "4", "5"], &["6", "8", "14", "16"]]);
        let times3 = GroupMap::from_fn(z17.clone(), z17.clone(), |x| 3 * x % 17).unwrap();
        let img = translate_family(&map_family(&f17, &times3).unwrap(), 1, Side::Left).unwrap();
        assert_eq!(img.blocks(), &[vec![1, 4, 13, 16], vec![2, 8, 9, 15]]);

        let other = z(7);
        let wrong = GroupMap::identity(other);
        assert!(matches!(
            map_family(&f, &wrong),
            Err(Error::GroupMismatch { .. })
        ));
    }

    #[test]
    fn pds_examples() {
        let z13 = z(13);
        assert!(verify_pds(&[1, 3, 4, 9, 10, 12], &z13, 6, 2, 3).unwrap());
        let z5 = z(5);
        assert!(verify_pds(&[1, 4], &z5, 2, 0, 1).unwrap());
        assert!(!verify_pds(&[1, 2], &z5, 2, 0, 1).unwrap());
        assert!(verify_pds(&[], &z5, 0, 0, 0).is_err());
        assert!(verify_pds(&[0, 1], &z5, 2, 0, 1).is_err());
    }

    #[test]
    fn abelian_co_and_plain_agree() {
        let g = z(10);
        let f = fam(&g, &[&["0", "1", "2"], &["3", "6", "9"]]);
        assert_eq!(verify_sedf(&f, 1).unwrap(), verify_cosedf(&f, 1).unwrap());
        let f = fam(&g, &[&["0", "1", "2"], &["3", "6", "8"]]);
        assert_eq!(verify_sedf(&f, 1).unwrap(), verify_cosedf(&f, 1).unwrap());
    }

    #[test]
    fn text_and_record_forms() {
        let f = BlockFamily::parse_text("Z17: {0,1,4,5},{6,8,14,16}").unwrap();
        assert_eq!(f.to_string(), "Z17: {0,1,4,5},{6,8,14,16}");
        let d = BlockFamily::parse_text("D10: {e,s,r},{sr,r^3,sr^4}").unwrap();
        assert_eq!(d.to_string(), "D10: {e,r,s},{r^3,sr,sr^4}");
        let rec = d.to_record();
        assert_eq!(BlockFamily::from_record(&rec).unwrap(), d);
        assert!(BlockFamily::parse_text("Z5: {0,1},{1,2}").is_err());
        assert!(BlockFamily::parse_text("Z5 {0,1}").is_err());
        assert!(BlockFamily::parse_text("Z5: {0,9}").is_err());
    }
}
