//! Finite groups stored as Cayley tables.
//!
//! Element `0` is always the identity. Every constructor fixes an element
//! ordering, and that ordering is the one the search walks through, so it is
//! part of the public contract:
//!
//! * `Z<n>`: `0, 1, ..., n-1`.
//! * `A x B`: pairs ordered lexicographically by (index in `A`, index in `B`).
//! * `D<n>`: `e, r, ..., r^(n/2-1), s, sr, ..., sr^(n/2-1)` with `r s = s r^-1`.
//! * `SD(p,q,a)`: pairs `(x, y)` ordered lexicographically by `(y, x)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest table this crate will materialise (`n * n` entries).
pub const MAX_ORDER: usize = 4096;

/// Associativity is checked exhaustively for groups up to this order.
pub const DEFAULT_ASSOC_BOUND: usize = 64;

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    name: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

/// Two groups are equal when they have the same table and the same labels.
/// The display name is not compared.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.labels == other.labels
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a row-major table, validating every group axiom.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::from_table_with_bound(name, order, table, labels, DEFAULT_ASSOC_BOUND)
    }

    pub fn from_table_with_bound(
        name: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
        assoc_bound: usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder {
                order,
                reason: "a group has at least one element",
            });
        }
        if order > MAX_ORDER {
            return Err(Error::TooLarge(order));
        }
        if table.len() != order * order {
            return Err(Error::Shape(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x as usize >= order) {
            return Err(Error::ElementOutOfRange {
                index: bad as usize,
                order,
            });
        }
        for j in 0..order {
            if table[j] as usize != j {
                return Err(Error::IdentityPlacement(format!(
                    "row 0 maps {} to {}",
                    j, table[j]
                )));
            }
            if table[j * order] as usize != j {
                return Err(Error::IdentityPlacement(format!(
                    "column 0 maps {} to {}",
                    j,
                    table[j * order]
                )));
            }
        }
        let mut seen = vec![false; order];
        for i in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..order {
                let v = table[i * order + j] as usize;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotLatinSquare(format!("row {i} repeats {v}")));
                }
            }
        }
        for j in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..order {
                let v = table[i * order + j] as usize;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotLatinSquare(format!("column {j} repeats {v}")));
                }
            }
        }
        if order <= assoc_bound {
            for a in 0..order {
                for b in 0..order {
                    let ab = table[a * order + b] as usize;
                    for c in 0..order {
                        let bc = table[b * order + c] as usize;
                        if table[ab * order + c] != table[a * order + bc] {
                            return Err(Error::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|i| {
                (0..order)
                    .find(|&j| table[i * order + j] == 0)
                    .expect("Latin square row contains the identity") as u32
            })
            .collect();
        let labels = match labels {
            Some(l) if l.len() != order => {
                return Err(Error::Shape(format!(
                    "{} labels for a group of order {}",
                    l.len(),
                    order
                )))
            }
            Some(l) => l,
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        let mut label_index = HashMap::with_capacity(order);
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(Error::Shape(format!("duplicate label '{l}'")));
            }
        }
        Ok(Self {
            order,
            table,
            inverse,
            labels,
            label_index,
            name: name.into(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a * b^-1`, the external difference used throughout.
    #[inline]
    pub fn diff(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv(b))
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn inverses(&self) -> &[u32] {
        &self.inverse
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks an element up by label. Plain integers are accepted as indices
    /// when no label matches.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        let label = label.trim();
        if let Some(&i) = self.label_index.get(label) {
            return Some(i);
        }
        if let Some(stripped) = label.strip_suffix("^1") {
            if let Some(&i) = self.label_index.get(stripped) {
                return Some(i);
            }
        }
        label.parse::<usize>().ok().filter(|&i| i < self.order)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    /// Closure of `gens` under multiplication, as a membership mask.
    pub fn subgroup_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut idx = 0;
        while idx < members.len() {
            let x = members[idx];
            idx += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
        }
        mask
    }

    /// Greedy generating set: repeatedly adjoin the smallest-index element
    /// outside the subgroup generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut mask = self.subgroup_mask(&gens);
        while let Some(next) = (0..self.order).find(|&x| !mask[x]) {
            gens.push(next);
            mask = self.subgroup_mask(&gens);
        }
        gens
    }

    /// Serialises to the plain-text Cayley table format (with labels).
    pub fn to_cayley_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|j| self.mul(i, j).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out.push_str(&self.labels.join(" "));
        out.push('\n');
        out
    }

    /// Parses a group spec string: `Z<n>`, `Z<a>xZ<b>...`, `D<n>`,
    /// `SD(<p>,<q>,<action>)` or `file:<path>`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(path) = spec.strip_prefix("file:") {
            let text = std::fs::read_to_string(path)?;
            let mut g = parse_cayley_table(text.as_bytes())?;
            g.name = spec.to_string();
            return Ok(g);
        }
        let unknown = || Error::UnknownGroupSpec(spec.to_string());
        if let Some(args) = spec.strip_prefix("SD(").and_then(|s| s.strip_suffix(')')) {
            let nums: Vec<u64> = args
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| unknown())?;
            if nums.len() != 3 {
                return Err(unknown());
            }
            return construct_semidirect(nums[0], nums[1], nums[2]);
        }
        if let Some(n) = spec.strip_prefix('D') {
            let n = n.parse::<usize>().map_err(|_| unknown())?;
            return construct_dihedral(n);
        }
        let mut factors = Vec::new();
        for part in spec.split(['x', 'X', '×']) {
            let n = part
                .trim()
                .strip_prefix('Z')
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(unknown)?;
            factors.push(construct_cyclic(n)?);
        }
        let mut iter = factors.into_iter();
        let first = iter.next().ok_or_else(unknown)?;
        iter.try_fold(first, |acc, g| construct_direct_product(&acc, &g))
    }
}

/// `Z_n`, written additively.
pub fn construct_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidOrder {
            order: n,
            reason: "a group has at least one element",
        });
    }
    if n > MAX_ORDER {
        return Err(Error::TooLarge(n));
    }
    let table = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
        .collect();
    FiniteGroup::from_table(format!("Z{n}"), n, table, None)
}

fn strip_parens(label: &str) -> &str {
    label
        .strip_prefix('(')
        .and_then(|l| l.strip_suffix(')'))
        .unwrap_or(label)
}

/// `a x b` on pairs, ordered lexicographically. Iterated products keep flat
/// labels such as `(1,0,2)`.
pub fn construct_direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > MAX_ORDER {
        return Err(Error::TooLarge(n));
    }
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        let (ia, ib) = (i / nb, i % nb);
        for j in 0..n {
            let (ja, jb) = (j / nb, j % nb);
            table.push((a.mul(ia, ja) * nb + b.mul(ib, jb)) as u32);
        }
    }
    let a_is_product = a.name().contains('x');
    let labels = (0..n)
        .map(|i| {
            let la = a.label(i / nb);
            let la = if a_is_product { strip_parens(la) } else { la };
            format!("({},{})", la, b.label(i % nb))
        })
        .collect();
    FiniteGroup::from_table(format!("{}x{}", a.name(), b.name()), n, table, Some(labels))
}

fn dihedral_label(reflect: bool, j: usize) -> String {
    match (reflect, j) {
        (false, 0) => "e".to_string(),
        (false, 1) => "r".to_string(),
        (false, j) => format!("r^{j}"),
        (true, 0) => "s".to_string(),
        (true, 1) => "sr".to_string(),
        (true, j) => format!("sr^{j}"),
    }
}

/// Index of `s^reflect r^j` in `D_n` (`half = n / 2`).
pub fn dihedral_index(half: usize, reflect: bool, j: usize) -> usize {
    usize::from(reflect) * half + j % half
}

/// Dihedral group of order `n` generated by `s` and `r` with `s^2 = r^(n/2) = 1`
/// and `r s = s r^-1`.
pub fn construct_dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidOrder {
            order: n,
            reason: "dihedral groups have even order at least 2",
        });
    }
    if n > MAX_ORDER {
        return Err(Error::TooLarge(n));
    }
    let half = n / 2;
    let decode = |x: usize| (x >= half, x % half);
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a, b) = decode(x);
        for y in 0..n {
            let (c, d) = decode(y);
            // s^a r^b s^c r^d = s^(a+c) r^((-1)^c b + d)
            let rot = if c {
                (half - b + d) % half
            } else {
                (b + d) % half
            };
            table.push(dihedral_index(half, a ^ c, rot) as u32);
        }
    }
    let labels = (0..n)
        .map(|x| {
            let (a, b) = decode(x);
            dihedral_label(a, b)
        })
        .collect();
    FiniteGroup::from_table(format!("D{n}"), n, table, Some(labels))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

pub(crate) fn multiplicative_order(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    (1..p).find(|&k| pow_mod(a, k, p) == 1)
}

/// `Z_p ⋊ Z_q` with `(x1,y1)(x2,y2) = (x1 + action^y1 x2, y1 + y2)`.
pub fn construct_semidirect(p: u64, q: u64, action: u64) -> Result<FiniteGroup> {
    if !is_prime(p) || !is_prime(q) {
        return Err(Error::InvalidPresentation(format!(
            "SD({p},{q},{action}): p and q must be prime"
        )));
    }
    if !(p - 1).is_multiple_of(q) {
        return Err(Error::InvalidPresentation(format!(
            "{q} does not divide {p}-1"
        )));
    }
    let ord = multiplicative_order(action, p);
    if ord != Some(q) {
        return Err(Error::InvalidPresentation(format!(
            "{action} has multiplicative order {} mod {p}, expected {q}",
            ord.map_or("undefined".to_string(), |o| o.to_string())
        )));
    }
    let (p, q) = (p as usize, q as usize);
    let n = p * q;
    if n > MAX_ORDER {
        return Err(Error::TooLarge(n));
    }
    let powers: Vec<usize> = (0..q)
        .map(|y| pow_mod(action, y as u64, p as u64) as usize)
        .collect();
    let decode = |i: usize| (i % p, i / p);
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        let (x1, y1) = decode(i);
        for j in 0..n {
            let (x2, y2) = decode(j);
            let x = (x1 + powers[y1] * x2) % p;
            let y = (y1 + y2) % q;
            table.push((y * p + x) as u32);
        }
    }
    let labels = (0..n)
        .map(|i| {
            let (x, y) = decode(i);
            format!("({x},{y})")
        })
        .collect();
    FiniteGroup::from_table(format!("SD({p},{q},{action})"), n, table, Some(labels))
}

/// Parses the text Cayley-table format: the order on the first line, then one
/// row of 0-based indices per line, then an optional line of labels.
pub fn parse_cayley_table(text: &[u8]) -> Result<FiniteGroup> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (first_no, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let n: usize = first.trim().parse().map_err(|_| Error::Parse {
        line: first_no + 1,
        message: format!("expected the group order, found '{}'", first.trim()),
    })?;
    if n == 0 {
        return Err(Error::InvalidOrder {
            order: 0,
            reason: "a group has at least one element",
        });
    }
    if n > MAX_ORDER {
        return Err(Error::TooLarge(n));
    }
    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let (no, line) = lines.next().ok_or(Error::Parse {
            line: first_no + row + 2,
            message: format!("expected {n} rows, found {row}"),
        })?;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != n {
            return Err(Error::Parse {
                line: no + 1,
                message: format!("expected {n} entries, found {}", entries.len()),
            });
        }
        for e in entries {
            let v: usize = e.parse().map_err(|_| Error::Parse {
                line: no + 1,
                message: format!("'{e}' is not an element index"),
            })?;
            if v >= n {
                return Err(Error::Parse {
                    line: no + 1,
                    message: format!("index {v} out of range"),
                });
            }
            table.push(v as u32);
        }
    }
    let labels = match lines.next() {
        Some((no, line)) => {
            let labels: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            if labels.len() != n {
                return Err(Error::Parse {
                    line: no + 1,
                    message: format!("expected {n} labels, found {}", labels.len()),
                });
            }
            Some(labels)
        }
        None => None,
    };
    if let Some((no, _)) = lines.next() {
        return Err(Error::Parse {
            line: no + 1,
            message: "trailing content".into(),
        });
    }
    FiniteGroup::from_table("cayley", n, table, labels)
}

/// A multiplication-preserving bijection between two groups.
#[derive(Clone, Debug)]
pub struct GroupMap {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<u32>,
}

impl PartialEq for GroupMap {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image && self.source == other.source && self.target == other.target
    }
}

impl GroupMap {
    /// Validates that `image` is a bijective homomorphism.
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        image: Vec<u32>,
    ) -> Result<Self> {
        let n = source.order();
        if target.order() != n || image.len() != n {
            return Err(Error::Shape(format!(
                "map from order {} to order {} with {} images",
                n,
                target.order(),
                image.len()
            )));
        }
        if image[0] != 0 {
            return Err(Error::Precondition("identity must map to identity".into()));
        }
        let mut hit = vec![false; n];
        for &x in &image {
            if x as usize >= n || std::mem::replace(&mut hit[x as usize], true) {
                return Err(Error::Precondition("map is not a bijection".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = image[source.mul(i, j)] as usize;
                let rhs = target.mul(image[i] as usize, image[j] as usize);
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "map does not preserve the product {i}*{j}"
                    )));
                }
            }
        }
        Ok(Self {
            source,
            target,
            image,
        })
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let image = (0..g.order() as u32).collect();
        Self {
            source: g.clone(),
            target: g,
            image,
        }
    }

    /// `x -> c x` style maps for cyclic groups, or any other explicit image
    /// list; validated.
    pub fn from_fn(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let image = (0..source.order()).map(|x| f(x) as u32).collect();
        Self::new(source, target, image)
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &GroupMap) -> Result<GroupMap> {
        if *self.target != *other.source {
            return Err(Error::GroupMismatch {
                expected: self.target.name().to_string(),
                found: other.source.name().to_string(),
            });
        }
        let image = self
            .image
            .iter()
            .map(|&x| other.image[x as usize])
            .collect();
        Ok(GroupMap {
            source: self.source.clone(),
            target: other.target.clone(),
            image,
        })
    }

    pub fn inverse(&self) -> GroupMap {
        let mut image = vec![0u32; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x as usize] = i as u32;
        }
        GroupMap {
            source: self.target.clone(),
            target: self.source.clone(),
            image,
        }
    }
}

/// Backtracking over generator images. `visit` receives each complete
/// isomorphism image array and returns `false` to stop early.
fn isomorphism_search(src: &FiniteGroup, dst: &FiniteGroup, mut visit: impl FnMut(&[u32]) -> bool) {
    let n = src.order();
    if dst.order() != n {
        return;
    }
    let src_orders = src.element_orders();
    let dst_orders = dst.element_orders();
    let mut a = src_orders.clone();
    let mut b = dst_orders.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return;
    }
    let gens = src.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (1..n).filter(|&h| dst_orders[h] == src_orders[g]).collect())
        .collect();

    const UNSET: u32 = u32::MAX;
    struct State {
        map: Vec<u32>,
        used: Vec<bool>,
        mapped: Vec<usize>,
        images: Vec<usize>,
    }
    let mut st = State {
        map: vec![UNSET; n],
        used: vec![false; n],
        mapped: vec![0],
        images: Vec::with_capacity(gens.len()),
    };
    st.map[0] = 0;
    st.used[0] = true;

    // Extends the partial map to the subgroup generated by gens[..=depth];
    // returns false on any inconsistency.
    fn close(src: &FiniteGroup, dst: &FiniteGroup, gens: &[usize], st: &mut State) -> bool {
        let mut idx = 0;
        while idx < st.mapped.len() {
            let x = st.mapped[idx];
            idx += 1;
            let fx = st.map[x] as usize;
            for (g, &h) in gens.iter().zip(&st.images) {
                let y = src.mul(x, *g);
                let fy = dst.mul(fx, h) as u32;
                if st.map[y] == UNSET {
                    if st.used[fy as usize] {
                        return false;
                    }
                    st.map[y] = fy;
                    st.used[fy as usize] = true;
                    st.mapped.push(y);
                } else if st.map[y] != fy {
                    return false;
                }
            }
        }
        true
    }

    fn recurse(
        src: &FiniteGroup,
        dst: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        st: &mut State,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        let depth = st.images.len();
        if depth == gens.len() {
            return visit(&st.map);
        }
        for &h in &candidates[depth] {
            if st.used[h] {
                continue;
            }
            let mark = st.mapped.len();
            st.images.push(h);
            let ok = close(src, dst, &gens[..=depth], st);
            let keep_going = !ok || recurse(src, dst, gens, candidates, st, visit);
            for &x in &st.mapped[mark..] {
                st.used[st.map[x] as usize] = false;
                st.map[x] = UNSET;
            }
            st.mapped.truncate(mark);
            st.images.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    recurse(src, dst, &gens, &candidates, &mut st, &mut visit);
}

/// The full automorphism group, sorted lexicographically by image array.
pub fn automorphisms(g: &Arc<FiniteGroup>) -> Vec<GroupMap> {
    let mut images: Vec<Vec<u32>> = Vec::new();
    isomorphism_search(g, g, |img| {
        images.push(img.to_vec());
        true
    });
    images.sort_unstable();
    images
        .into_iter()
        .map(|image| {
            GroupMap::new(g.clone(), g.clone(), image).expect("search yields automorphisms")
        })
        .collect()
}

/// Some isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Option<GroupMap> {
    let mut found = None;
    isomorphism_search(a, b, |img| {
        found = Some(img.to_vec());
        false
    });
    found.map(|image| {
        GroupMap::new(a.clone(), b.clone(), image).expect("search yields isomorphisms")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    #[test]
    fn cyclic_basics() {
        let z1 = construct_cyclic(1).unwrap();
        assert_eq!(z1.table(), &[0]);
        let z5 = construct_cyclic(5).unwrap();
        assert_eq!(z5.mul(2, 4), 1);
        let z17 = construct_cyclic(17).unwrap();
        assert_eq!(z17.inv(4), 13);
        assert!(matches!(
            construct_cyclic(0),
            Err(Error::InvalidOrder { .. })
        ));
    }

    #[test]
    fn direct_product_inverse_and_labels() {
        let z3 = construct_cyclic(3).unwrap();
        let g = construct_direct_product(&z3, &z3).unwrap();
        assert_eq!(g.order(), 9);
        let x = g.index_of("(1,2)").unwrap();
        assert_eq!(g.label(g.inv(x)), "(2,1)");
        let z2 = construct_cyclic(2).unwrap();
        let g3 = construct_direct_product(&g, &z2).unwrap();
        assert_eq!(g3.label(1), "(0,0,1)");
    }

    #[test]
    fn dihedral_relations() {
        let d10 = construct_dihedral(10).unwrap();
        let s = d10.index_of("s").unwrap();
        let r = d10.index_of("r").unwrap();
        assert_eq!(d10.label(d10.mul(s, r)), "sr");
        assert_eq!(d10.label(d10.mul(r, s)), "sr^4");
        let sr4 = d10.index_of("sr^4").unwrap();
        assert_eq!(d10.inv(sr4), sr4);
        let d26 = construct_dihedral(26).unwrap();
        let r5 = d26.index_of("r^5").unwrap();
        let r10 = d26.index_of("r^10").unwrap();
        assert_eq!(d26.label(d26.mul(r5, r10)), "r^2");
        assert!(construct_dihedral(9).is_err());
        assert!(!d10.is_abelian());
    }

    #[test]
    fn semidirect_products() {
        let g = construct_semidirect(7, 3, 2).unwrap();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        assert!(matches!(
            construct_semidirect(7, 3, 3),
            Err(Error::InvalidPresentation(_))
        ));
        assert!(construct_semidirect(7, 5, 2).is_err());
        let s3 = arc(construct_semidirect(3, 2, 2).unwrap());
        let d6 = arc(construct_dihedral(6).unwrap());
        assert!(find_isomorphism(&s3, &d6).is_some());
        let a = arc(construct_semidirect(7, 3, 2).unwrap());
        let b = arc(construct_semidirect(7, 3, 4).unwrap());
        assert!(find_isomorphism(&a, &b).is_some());
    }

    #[test]
    fn semidirect_abelian_iff_trivial_action() {
        for (p, q) in [(7u64, 3u64), (13, 3), (5, 2), (11, 5), (7, 2)] {
            for a in 1..p {
                if let Ok(g) = construct_semidirect(p, q, a) {
                    assert_eq!(g.is_abelian(), a == 1);
                }
            }
        }
        // Trivial action is only a valid presentation when q = 1, which is not prime.
        assert!(construct_semidirect(7, 3, 1).is_err());
    }

    #[test]
    fn cayley_round_trip_and_errors() {
        let z5 = construct_cyclic(5).unwrap();
        let text = z5.to_cayley_text();
        let back = parse_cayley_table(text.as_bytes()).unwrap();
        assert_eq!(back, z5);

        let bad_identity = "2\n1 0\n0 1\n";
        assert!(matches!(
            parse_cayley_table(bad_identity.as_bytes()),
            Err(Error::IdentityPlacement(_))
        ));
        let not_latin = "3\n0 1 2\n1 1 0\n2 0 1\n";
        assert!(matches!(
            parse_cayley_table(not_latin.as_bytes()),
            Err(Error::NotLatinSquare(_))
        ));
        assert!(matches!(
            parse_cayley_table(b"3\n0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cayley_table(b"x\n"),
            Err(Error::Parse { .. })
        ));
    }

    /// Brute force over loops of order 5 (identity fixed at 0) for one that is
    /// not associative.
    #[test]
    fn non_associative_loop_is_rejected() {
        let n = 5;
        let mut t = vec![0u32; n * n];
        for j in 0..n {
            t[j] = j as u32;
            t[j * n] = j as u32;
        }
        fn fill(t: &mut Vec<u32>, n: usize, pos: usize, out: &mut Option<Vec<u32>>) {
            if out.is_some() {
                return;
            }
            if pos == n * n {
                let assoc = (0..n).all(|a| {
                    (0..n).all(|b| {
                        (0..n).all(|c| {
                            t[t[a * n + b] as usize * n + c] == t[a * n + t[b * n + c] as usize]
                        })
                    })
                });
                if !assoc {
                    *out = Some(t.clone());
                }
                return;
            }
            let (i, j) = (pos / n, pos % n);
            if i == 0 || j == 0 {
                return fill(t, n, pos + 1, out);
            }
            for v in 0..n as u32 {
                let row_ok = (0..j).all(|c| t[i * n + c] != v);
                let col_ok = (0..i).all(|r| t[r * n + j] != v);
                if row_ok && col_ok {
                    t[pos] = v;
                    fill(t, n, pos + 1, out);
                }
            }
        }
        let mut found = None;
        fill(&mut t, n, 0, &mut found);
        let table = found.expect("order-5 non-associative loops exist");
        let text = std::iter::once(n.to_string())
            .chain(table.chunks(n).map(|r| {
                r.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            }))
            .collect::<Vec<_>>()
            .join("\n");
        assert!(matches!(
            parse_cayley_table(text.as_bytes()),
            Err(Error::NotAssociative { .. })
        ));
    }

    #[test]
    fn automorphism_counts() {
        let z5 = arc(construct_cyclic(5).unwrap());
        let auts = automorphisms(&z5);
        assert_eq!(auts.len(), 4);
        let mults: Vec<usize> = auts.iter().map(|a| a.apply(1)).collect();
        assert_eq!(mults, vec![1, 2, 3, 4]);
        let z3 = construct_cyclic(3).unwrap();
        let z3z3 = arc(construct_direct_product(&z3, &z3).unwrap());
        assert_eq!(automorphisms(&z3z3).len(), 48);
        let d10 = arc(construct_dihedral(10).unwrap());
        assert_eq!(automorphisms(&d10).len(), 20);
    }

    /// Independent count: every pair of generator images for Z3xZ3 that is
    /// linearly independent over GF(3) extends to an automorphism.
    #[test]
    fn z3xz3_automorphisms_match_gl23() {
        let mut count = 0;
        for a in 0..9usize {
            for b in 0..9usize {
                let det = ((a / 3) * (b % 3) + 9 - (a % 3) * (b / 3) % 3) % 3;
                if det != 0 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 48);
    }

    #[test]
    fn isomorphism_examples() {
        let z6 = arc(construct_cyclic(6).unwrap());
        let z2 = construct_cyclic(2).unwrap();
        let z3 = construct_cyclic(3).unwrap();
        let z2z3 = arc(construct_direct_product(&z2, &z3).unwrap());
        assert!(find_isomorphism(&z6, &z2z3).is_some());
        let z1z5 = arc(construct_direct_product(
            &construct_cyclic(1).unwrap(),
            &construct_cyclic(5).unwrap(),
        )
        .unwrap());
        assert!(find_isomorphism(&z1z5, &arc(construct_cyclic(5).unwrap())).is_some());
        let z4 = arc(construct_cyclic(4).unwrap());
        let z2z2 = arc(construct_direct_product(&z2, &z2).unwrap());
        assert!(find_isomorphism(&z4, &z2z2).is_none());
        let d10 = arc(construct_dihedral(10).unwrap());
        let z10 = arc(construct_cyclic(10).unwrap());
        assert!(find_isomorphism(&d10, &z10).is_none());
    }

    #[test]
    fn automorphism_group_closed() {
        for g in [
            construct_cyclic(12).unwrap(),
            construct_dihedral(12).unwrap(),
            construct_dihedral(8).unwrap(),
            construct_direct_product(&construct_cyclic(2).unwrap(), &construct_cyclic(4).unwrap())
                .unwrap(),
        ] {
            let g = arc(g);
            let auts = automorphisms(&g);
            let images: std::collections::HashSet<Vec<u32>> =
                auts.iter().map(|a| a.image().to_vec()).collect();
            for a in &auts {
                assert!(images.contains(a.inverse().image()));
                for b in &auts {
                    assert!(images.contains(a.then(b).unwrap().image()));
                }
            }
        }
    }

    #[test]
    fn spec_strings() {
        assert_eq!(
            FiniteGroup::from_spec("Z5").unwrap(),
            construct_cyclic(5).unwrap()
        );
        assert_eq!(FiniteGroup::from_spec("D10").unwrap().order(), 10);
        assert_eq!(FiniteGroup::from_spec("Z3xZ3").unwrap().order(), 9);
        assert_eq!(FiniteGroup::from_spec("SD(7,3,2)").unwrap().order(), 21);
        assert!(FiniteGroup::from_spec("Q8").is_err());
    }
}
