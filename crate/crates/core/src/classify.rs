//! Equivalence of block families under automorphisms, two-sided translation
//! and (by default) block permutation.
//!
//! The maps `x -> h α(x) g` form the set `x -> t β(x)` with `t = h g` and
//! `β = c ∘ α` for an inner automorphism `c`, so it suffices to range over
//! left translates of automorphic images.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::BlockFamily;
use crate::group::{automorphisms, find_isomorphism, FiniteGroup, GroupMap};

/// Lexicographically least image of a family over all transforms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub key: Vec<Vec<usize>>,
    pub strict: bool,
}

/// Data showing `y = h α(x) g` blockwise: block `i` of `x` maps onto block
/// `permutation[i]` of `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceWitness {
    pub alpha: GroupMap,
    pub g: usize,
    pub h: usize,
    pub permutation: Vec<usize>,
}

impl EquivalenceWitness {
    /// Applies the witness map to a single element.
    pub fn apply(&self, x: usize) -> usize {
        let t = self.alpha.target();
        t.mul(t.mul(self.h, self.alpha.apply(x)), self.g)
    }
}

/// An equivalence class of families from one group.
#[derive(Clone, Debug)]
pub struct EquivalenceClass {
    pub representative: BlockFamily,
    pub form: CanonicalForm,
    pub members: Vec<BlockFamily>,
}

/// Canonical forms for one group, with its automorphism group cached.
pub struct Classifier {
    group: Arc<FiniteGroup>,
    auts: Vec<GroupMap>,
    strict: bool,
}

impl Classifier {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let auts = automorphisms(&group);
        Self {
            group,
            auts,
            strict: false,
        }
    }

    /// Keeps block order fixed instead of sorting the block list.
    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn automorphisms(&self) -> &[GroupMap] {
        &self.auts
    }

    fn check_group(&self, fam: &BlockFamily) -> Result<()> {
        if **fam.group() != *self.group {
            return Err(Error::GroupMismatch {
                expected: self.group.name().to_string(),
                found: fam.group().name().to_string(),
            });
        }
        Ok(())
    }

    fn image(&self, blocks: &[Vec<usize>], beta: &GroupMap, t: usize) -> Vec<Vec<usize>> {
        let g = &self.group;
        let mut out: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| {
                let mut v: Vec<usize> = b.iter().map(|&x| g.mul(t, beta.apply(x))).collect();
                v.sort_unstable();
                v
            })
            .collect();
        if !self.strict {
            out.sort_unstable();
        }
        out
    }

    pub fn canonical_form(&self, fam: &BlockFamily) -> Result<CanonicalForm> {
        self.check_group(fam)?;
        let n = self.group.order();
        let mut best: Option<Vec<Vec<usize>>> = None;
        for beta in &self.auts {
            for t in 0..n {
                let img = self.image(fam.blocks(), beta, t);
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
        }
        Ok(CanonicalForm {
            key: best.unwrap_or_default(),
            strict: self.strict,
        })
    }

    /// The family whose blocks are the canonical key.
    pub fn canonical_family(&self, fam: &BlockFamily) -> Result<BlockFamily> {
        let form = self.canonical_form(fam)?;
        BlockFamily::new(self.group.clone(), form.key)
    }

    /// A witness that `y` is an image of `x`, if one exists.
    pub fn equivalence(
        &self,
        x: &BlockFamily,
        y: &BlockFamily,
    ) -> Result<Option<EquivalenceWitness>> {
        self.check_group(x)?;
        self.check_group(y)?;
        check_shapes(x, y)?;
        let mut target: Vec<Vec<usize>> = y.blocks().to_vec();
        if !self.strict {
            target.sort_unstable();
        }
        let g = &self.group;
        for beta in &self.auts {
            for t in 0..g.order() {
                if self.image(x.blocks(), beta, t) != target {
                    continue;
                }
                let permutation = x
                    .blocks()
                    .iter()
                    .map(|b| {
                        let mut v: Vec<usize> =
                            b.iter().map(|&e| g.mul(t, beta.apply(e))).collect();
                        v.sort_unstable();
                        y.blocks()
                            .iter()
                            .position(|yb| *yb == v)
                            .expect("image block present")
                    })
                    .collect();
                return Ok(Some(EquivalenceWitness {
                    alpha: beta.clone(),
                    g: g.identity(),
                    h: t,
                    permutation,
                }));
            }
        }
        Ok(None)
    }

    /// Groups same-group families by canonical form. Classes are sorted by
    /// representative, and members keep their input order.
    pub fn classify(&self, fams: &[BlockFamily]) -> Result<Vec<EquivalenceClass>> {
        let forms: Vec<CanonicalForm> = fams
            .par_iter()
            .map(|f| self.canonical_form(f))
            .collect::<Result<_>>()?;
        let mut order: Vec<usize> = (0..fams.len()).collect();
        order.sort_by(|&a, &b| forms[a].cmp(&forms[b]).then(a.cmp(&b)));
        let mut classes: Vec<EquivalenceClass> = Vec::new();
        for i in order {
            match classes.last_mut() {
                Some(c) if c.form == forms[i] => c.members.push(fams[i].clone()),
                _ => classes.push(EquivalenceClass {
                    representative: BlockFamily::new(self.group.clone(), forms[i].key.clone())?,
                    form: forms[i].clone(),
                    members: vec![fams[i].clone()],
                }),
            }
        }
        classes.sort_by(|a, b| a.representative.blocks().cmp(b.representative.blocks()));
        Ok(classes)
    }
}

fn check_shapes(x: &BlockFamily, y: &BlockFamily) -> Result<()> {
    let mut a = x.block_sizes();
    let mut b = y.block_sizes();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Err(Error::Shape(format!(
            "block sizes {:?} and {:?} differ",
            x.block_sizes(),
            y.block_sizes()
        )));
    }
    Ok(())
}

pub fn canonical_form(fam: &BlockFamily) -> CanonicalForm {
    Classifier::new(fam.group().clone())
        .canonical_form(fam)
        .expect("family lives in the classifier's group")
}

/// Equivalence across possibly different groups. Families in non-isomorphic
/// groups are never equivalent. The witness `alpha` maps `x`'s group onto
/// `y`'s.
pub fn equivalent(x: &BlockFamily, y: &BlockFamily) -> Result<Option<EquivalenceWitness>> {
    check_shapes(x, y)?;
    if x.group() == y.group() {
        return Classifier::new(y.group().clone()).equivalence(x, y);
    }
    let Some(phi) = find_isomorphism(x.group(), y.group()) else {
        return Ok(None);
    };
    let moved = crate::family::map_family(x, &phi)?;
    let witness = Classifier::new(y.group().clone()).equivalence(&moved, y)?;
    witness
        .map(|w| {
            Ok(EquivalenceWitness {
                alpha: phi.then(&w.alpha)?,
                ..w
            })
        })
        .transpose()
}

pub fn is_equivalent(x: &BlockFamily, y: &BlockFamily) -> Result<bool> {
    Ok(equivalent(x, y)?.is_some())
}

/// Partitions same-group families into equivalence classes.
pub fn classify_families(fams: &[BlockFamily]) -> Result<Vec<EquivalenceClass>> {
    let Some(first) = fams.first() else {
        return Ok(Vec::new());
    };
    Classifier::new(first.group().clone()).classify(fams)
}
