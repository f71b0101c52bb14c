//! Explicit and recursive SEDF/GSEDF constructions. Every constructor runs
//! the matching verifier on its output before returning it.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::family::{verify_gsedf, verify_sedf, BlockFamily, GsedfProfile};
use crate::field::{additive_group, construct_field, cyclotomic_classes, squares_nonsquares};
use crate::group::{
    construct_cyclic, construct_dihedral, dihedral_index, is_prime, FiniteGroup, GroupMap,
};

/// Multipliers and base block sizes for the cyclic recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecursionSpec {
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub t: usize,
}

impl RecursionSpec {
    pub fn new(a: usize, b: usize, s: usize, t: usize) -> Self {
        RecursionSpec { a, b, s, t }
    }

    /// Reads `s` and `t` off a two-block base family.
    pub fn for_base(base: &BlockFamily, a: usize, b: usize) -> Result<Self> {
        let (xs, ys) = split_below(base)?;
        Ok(RecursionSpec::new(a, b, xs.len(), ys.len()))
    }
}

fn cyclic(n: usize) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(construct_cyclic(n)?))
}

fn checked_sedf(fam: BlockFamily, lambda: usize, what: &str) -> Result<BlockFamily> {
    if verify_sedf(&fam, lambda)? {
        Ok(fam)
    } else {
        Err(Error::VerificationFailed(format!("{what}: {fam}")))
    }
}

/// All singletons: the `(n, n, 1, 1)` family.
pub fn construct_trivial(g: Arc<FiniteGroup>) -> Result<BlockFamily> {
    let n = g.order();
    if n < 2 {
        return Err(Error::Parameter("a family needs at least 2 blocks".into()));
    }
    let fam = BlockFamily::new(g, (0..n).map(|x| vec![x]).collect())?;
    checked_sedf(fam, 1, "trivial family")
}

/// `{0, ..., k-1}, {k, 2k, ..., k²}` in `Z_{k²+1}`.
pub fn construct_pa_st(k: usize) -> Result<BlockFamily> {
    if k == 0 {
        return Err(Error::Parameter("k must be positive".into()));
    }
    let g = cyclic(k * k + 1)?;
    let fam = BlockFamily::new(g, vec![(0..k).collect(), (1..=k).map(|i| i * k).collect()])?;
    checked_sedf(fam, 1, "interval/progression family")
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Squares and non-squares of GF(q) in its additive group, `q ≡ 1 (mod 4)`.
pub fn construct_paley(q: u64) -> Result<BlockFamily> {
    let (p, e) =
        prime_power(q).ok_or_else(|| Error::Parameter(format!("{q} is not a prime power")))?;
    if q % 4 != 1 {
        return Err(Error::Parameter(format!("{q} is not congruent to 1 mod 4")));
    }
    let f = construct_field(p, e)?;
    let g = Arc::new(additive_group(&f)?);
    let (sq, non) = squares_nonsquares(&f)?;
    let fam = BlockFamily::new(g, vec![sq, non])?;
    checked_sedf(fam, (q as usize - 1) / 4, "squares/non-squares family")
}

fn integer_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&x| x * x == n)
}

/// Every unordered pair of index-`e` cyclotomic classes of GF(q) that forms
/// a `(q, 2, (q-1)/e, (q-1)/e²)`-SEDF. `e = 4` needs `q = 16t²+1` a prime
/// power; `e = 6` needs `q = 108t²+1` prime.
pub fn construct_cyclotomic(q: u64, e: u64) -> Result<Vec<BlockFamily>> {
    let t_sq = match e {
        4 if q > 1 && (q - 1).is_multiple_of(16) => (q - 1) / 16,
        6 if q > 1 && (q - 1).is_multiple_of(108) => (q - 1) / 108,
        4 | 6 => {
            return Err(Error::Parameter(format!(
                "{q} is not of the form required for e={e}"
            )))
        }
        _ => {
            return Err(Error::Parameter(format!(
                "cyclotomic index must be 4 or 6, got {e}"
            )))
        }
    };
    if t_sq == 0 || integer_sqrt(t_sq).is_none() {
        return Err(Error::Parameter(format!(
            "{q} is not of the form required for e={e}"
        )));
    }
    let (p, deg) =
        prime_power(q).ok_or_else(|| Error::Parameter(format!("{q} is not a prime power")))?;
    if e == 6 && !is_prime(q) {
        return Err(Error::Parameter(format!("{q} must be prime for e=6")));
    }
    let f = construct_field(p, deg)?;
    let g = Arc::new(additive_group(&f)?);
    let classes = cyclotomic_classes(&f, e)?;
    let lambda = ((q - 1) / (e * e)) as usize;
    let mut out = Vec::new();
    for i in 0..classes.classes.len() {
        for j in i + 1..classes.classes.len() {
            let fam = BlockFamily::new(
                g.clone(),
                vec![classes.classes[i].clone(), classes.classes[j].clone()],
            )?;
            if verify_sedf(&fam, lambda)? {
                out.push(fam);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::VerificationFailed(format!(
            "no pair of index-{e} cyclotomic classes of GF({q}) forms an SEDF"
        )));
    }
    Ok(out)
}

/// The even-`k` family in `Z_{4a²+1}`:
/// `{0..a-1} ∪ {2a..3a-1}` and `∪_i {(4i-1)a, 4ia}`.
pub fn construct_even_k(a: usize) -> Result<BlockFamily> {
    if a == 0 {
        return Err(Error::Parameter("a must be positive".into()));
    }
    let g = cyclic(4 * a * a + 1)?;
    let b1 = (0..a).chain(2 * a..3 * a).collect();
    let b2 = (1..=a).flat_map(|i| [(4 * i - 1) * a, 4 * i * a]).collect();
    let fam = BlockFamily::new(g, vec![b1, b2])?;
    checked_sedf(fam, 1, "even-k family")
}

/// Reads a two-block family in a cyclic group whose first block lies wholly
/// below its second (natural integer order).
fn split_below(base: &BlockFamily) -> Result<(&[usize], &[usize])> {
    let g = base.group();
    let n = g.order();
    let cyclic_ok = n >= 2 && (0..n).all(|x| g.mul(x, 1) == (x + 1) % n);
    if !cyclic_ok {
        return Err(Error::Precondition(format!(
            "base must live in a cyclic group Z_n with natural labels, got {}",
            g.name()
        )));
    }
    let blocks = base.blocks();
    if blocks.len() != 2 {
        return Err(Error::Precondition(
            "base must have exactly two blocks".into(),
        ));
    }
    let (x, y) = (&blocks[0], &blocks[1]);
    let max_x = x.iter().max().copied().unwrap_or(0);
    let min_y = y.iter().min().copied().unwrap_or(usize::MAX);
    if x.is_empty() || y.is_empty() || max_x >= min_y {
        return Err(Error::Precondition(
            "every element of the first block must be below every element of the second".into(),
        ));
    }
    Ok((x, y))
}

/// The cyclic GSEDF recursion: from a `(st+1, 2; s, t; 1, 1)`-GSEDF with
/// `A_1 < A_2`, builds the `(abst+1, 2; as, bt; 1, 1)`-GSEDF
/// `B_1 = ∪ {a x + α}`, `B_2 = ∪ {a (y + β st)}`.
pub fn recursive_gsedf(base: &BlockFamily, spec: RecursionSpec) -> Result<BlockFamily> {
    let RecursionSpec { a, b, s, t } = spec;
    if a == 0 || b == 0 {
        return Err(Error::Parameter("multipliers must be positive".into()));
    }
    let (xs, ys) = split_below(base)?;
    if (xs.len(), ys.len()) != (s, t) {
        return Err(Error::Precondition(format!(
            "base block sizes ({}, {}) do not match s={s}, t={t}",
            xs.len(),
            ys.len()
        )));
    }
    let st = s * t;
    if base.group().order() != st + 1 {
        return Err(Error::Precondition(format!(
            "base group order {} is not s*t+1 = {}",
            base.group().order(),
            st + 1
        )));
    }
    let base_profile = GsedfProfile::new(vec![s, t], vec![1, 1])?;
    if !verify_gsedf(base, &base_profile)? {
        return Err(Error::Precondition(format!("base is not a GSEDF: {base}")));
    }
    let g = cyclic(a * b * st + 1)?;
    let b1 = xs
        .iter()
        .flat_map(|&x| (0..a).map(move |alpha| a * x + alpha))
        .collect();
    let b2 = ys
        .iter()
        .flat_map(|&y| (0..b).map(move |beta| a * (y + beta * st)))
        .collect();
    let fam = BlockFamily::new(g, vec![b1, b2])?;
    let profile = GsedfProfile::new(vec![a * s, b * t], vec![1, 1])?;
    if verify_gsedf(&fam, &profile)? {
        Ok(fam)
    } else {
        Err(Error::VerificationFailed(format!("recursive GSEDF: {fam}")))
    }
}

/// `((ak)²+1, 2, ak, 1)`-SEDF from a `(k²+1, 2, k, 1)`-SEDF with `A_1 < A_2`.
pub fn recursive_lambda1(base: &BlockFamily, a: usize) -> Result<BlockFamily> {
    let (xs, ys) = split_below(base)?;
    if xs.len() != ys.len() {
        return Err(Error::Precondition(
            "base blocks must have equal size".into(),
        ));
    }
    let k = xs.len();
    let fam = recursive_gsedf(base, RecursionSpec::new(a, a, k, k))?;
    checked_sedf(fam, 1, "recursive lambda=1 family")
}

/// Searches the affine images `x -> c x + t` (`c` a unit) of a cyclic
/// two-block family for one whose first block lies below its second.
/// Returns the first hit in `(c, t)` order.
pub fn normalize_below(base: &BlockFamily) -> Option<BlockFamily> {
    let g = base.group().clone();
    let n = g.order();
    if base.num_blocks() != 2 {
        return None;
    }
    for c in (1..n.max(2)).filter(|&c| gcd(c, n) == 1) {
        let phi = GroupMap::from_fn(g.clone(), g.clone(), |x| c * x % n).ok()?;
        for t in 0..n {
            let blocks: Vec<Vec<usize>> = base
                .blocks()
                .iter()
                .map(|bl| bl.iter().map(|&x| (phi.apply(x) + t) % n).collect())
                .collect();
            let cand = BlockFamily::new(g.clone(), blocks).ok()?;
            if split_below(&cand).is_ok() {
                return Some(cand);
            }
        }
    }
    None
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The two `((ra)²+1, 2, ra, 1)`-SEDFs obtained by recursing on
/// `S_1 = {{0..r-1}, {r, 2r, ..., r²}}` and on `S_2 = r S_1`.
pub fn composite_pair(r: usize, a: usize) -> Result<(BlockFamily, BlockFamily)> {
    if r < 2 || a < 2 {
        return Err(Error::Parameter(
            "composite_pair needs r >= 2 and a >= 2".into(),
        ));
    }
    let s1 = construct_pa_st(r)?;
    let g = s1.group().clone();
    let n = g.order();
    let times_r = GroupMap::from_fn(g.clone(), g, |x| r * x % n)?;
    let s2 = crate::family::map_family(&s1, &times_r)?;
    let t1 = recursive_lambda1(&s1, a)?;
    let t2 = recursive_lambda1(&s2, a)?;
    Ok((t1, t2))
}

/// The dihedral `(k²+1, 2, k, 1)`-SEDF for odd `k ≥ 3`:
/// `A_1 = {r^i : i ≤ (k-1)/2} ∪ {s r^j : j ≤ (k-3)/2}`,
/// `A_2 = {r^(ik) : 1 ≤ i ≤ (k-1)/2} ∪ {s r^(jk + (k-1)/2) : j ≤ (k-1)/2}`.
pub fn construct_dihedral_sedf(k: usize) -> Result<BlockFamily> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "k must be odd and at least 3, got {k}"
        )));
    }
    let n = k * k + 1;
    let half = n / 2;
    let g = Arc::new(construct_dihedral(n)?);
    let h = (k - 1) / 2;
    let a1 = (0..=h)
        .map(|i| dihedral_index(half, false, i))
        .chain((0..h).map(|j| dihedral_index(half, true, j)))
        .collect();
    let a2 = (1..=h)
        .map(|i| dihedral_index(half, false, i * k))
        .chain((0..=h).map(|j| dihedral_index(half, true, j * k + h)))
        .collect();
    let fam = BlockFamily::new(g, vec![a1, a2])?;
    checked_sedf(fam, 1, "dihedral family")
}
