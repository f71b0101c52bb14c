//! Admissible SEDF parameter sets and the known nonexistence filters.

use serde::{Deserialize, Serialize};

use crate::group::is_prime;

/// Class of group a nonexistence result is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupClass {
    Cyclic,
    Abelian,
    Any,
}

impl GroupClass {
    /// Whether a filter scoped to `self` applies to a group of class `target`.
    pub fn covers(self, target: GroupClass) -> bool {
        match self {
            GroupClass::Any => true,
            GroupClass::Abelian => matches!(target, GroupClass::Abelian | GroupClass::Cyclic),
            GroupClass::Cyclic => target == GroupClass::Cyclic,
        }
    }
}

impl std::str::FromStr for GroupClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cyclic" => Ok(GroupClass::Cyclic),
            "abelian" => Ok(GroupClass::Abelian),
            "any" => Ok(GroupClass::Any),
            _ => Err(format!("unknown group class '{s}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FilterId {
    /// `k = 1, λ = 1` or `k > 1, λ < k`.
    LambdaBelowK,
    /// `gcd(k, n-1) = 1` forbids a nontrivial family.
    CoprimeK,
    /// m ∈ {3, 4}.
    AbelianM3or4,
    /// m > 2 and n prime.
    AbelianPrimeOrder,
    /// m > 2 and n = pq, p ≠ q primes.
    AbelianTwoPrimes,
    /// m > 2 and λ = 2.
    AbelianLambda2,
    /// m > 2, λ > 1 and λ(k-1)(m-2) > (λ-1)k(m-1).
    AbelianRatio,
    /// m > 2 and some prime p | n with gcd(km, p) = 1 and m ≢ 2 (mod p).
    AbelianPrimeDivisor,
    /// m > 2 and n a prime power, cyclic groups only.
    CyclicPrimePower,
    /// m > 2 and n a product of at most three primes.
    AbelianThreePrimes,
    /// λ = 1 requires m = 2 and n = k² + 1, or the trivial family.
    AbelianLambda1,
}

impl FilterId {
    pub const ALL: [FilterId; 11] = [
        FilterId::LambdaBelowK,
        FilterId::CoprimeK,
        FilterId::AbelianM3or4,
        FilterId::AbelianPrimeOrder,
        FilterId::AbelianTwoPrimes,
        FilterId::AbelianLambda2,
        FilterId::AbelianRatio,
        FilterId::AbelianPrimeDivisor,
        FilterId::CyclicPrimePower,
        FilterId::AbelianThreePrimes,
        FilterId::AbelianLambda1,
    ];

    pub fn code(self) -> &'static str {
        match self {
            FilterId::LambdaBelowK => "lambda-below-k",
            FilterId::CoprimeK => "gcd-k-n1",
            FilterId::AbelianM3or4 => "abelian-1",
            FilterId::AbelianPrimeOrder => "abelian-2",
            FilterId::AbelianTwoPrimes => "abelian-3",
            FilterId::AbelianLambda2 => "abelian-4",
            FilterId::AbelianRatio => "abelian-5",
            FilterId::AbelianPrimeDivisor => "abelian-6",
            FilterId::CyclicPrimePower => "abelian-7",
            FilterId::AbelianThreePrimes => "abelian-8",
            FilterId::AbelianLambda1 => "abelian-lambda1",
        }
    }

    pub fn scope(self) -> GroupClass {
        match self {
            FilterId::LambdaBelowK | FilterId::CoprimeK => GroupClass::Any,
            FilterId::CyclicPrimePower => GroupClass::Cyclic,
            _ => GroupClass::Abelian,
        }
    }

    fn rules_out(self, n: u64, m: u64, k: u64, lambda: u64) -> bool {
        let trivial = k == 1 && lambda == 1;
        match self {
            FilterId::LambdaBelowK => !(trivial || (k > 1 && lambda < k)),
            FilterId::CoprimeK => !trivial && gcd(k, n - 1) == 1,
            FilterId::AbelianM3or4 => !trivial && (m == 3 || m == 4),
            FilterId::AbelianPrimeOrder => !trivial && m > 2 && is_prime(n),
            FilterId::AbelianTwoPrimes => {
                !trivial && m > 2 && {
                    let f = factorize(n);
                    f.len() == 2 && f.iter().all(|&(_, e)| e == 1)
                }
            }
            FilterId::AbelianLambda2 => !trivial && m > 2 && lambda == 2,
            FilterId::AbelianRatio => {
                // λ(k-1)(m-2) / ((λ-1)k(m-1)) > 1, compared over the integers.
                !trivial
                    && m > 2
                    && lambda > 1
                    && (lambda as u128) * (k as u128 - 1) * (m as u128 - 2)
                        > (lambda as u128 - 1) * (k as u128) * (m as u128 - 1)
            }
            FilterId::AbelianPrimeDivisor => {
                !trivial
                    && m > 2
                    && factorize(n)
                        .iter()
                        .any(|&(p, _)| gcd(k * m, p) == 1 && m % p != 2 % p)
            }
            FilterId::CyclicPrimePower => !trivial && m > 2 && factorize(n).len() == 1,
            FilterId::AbelianThreePrimes => {
                !trivial && m > 2 && {
                    let f = factorize(n);
                    let omega: u32 = f.iter().map(|&(_, e)| e).sum();
                    // Excepted: C_p^3 with p > 3e12, which cannot occur for a u64 order.
                    let excepted = f.len() == 1 && f[0].1 == 3 && f[0].0 > 3_000_000_000_000;
                    omega <= 3 && !excepted
                }
            }
            FilterId::AbelianLambda1 => {
                lambda == 1 && !(m == 2 && n == k * k + 1) && !(k == 1 && m == n)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSet {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub lambda: usize,
    pub admissible: bool,
    pub filters_hit: Vec<FilterHit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterHit {
    pub id: String,
    pub scope: GroupClass,
}

impl ParamSet {
    pub fn new(n: usize, m: usize, k: usize, lambda: usize) -> Self {
        Self {
            n,
            m,
            k,
            lambda,
            admissible: is_admissible(n, m, k, lambda),
            filters_hit: Vec::new(),
        }
    }

    pub fn tuple(&self) -> (usize, usize, usize, usize) {
        (self.n, self.m, self.k, self.lambda)
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 1
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_admissible(n: usize, m: usize, k: usize, lambda: usize) -> bool {
    n >= 1 && k >= 1 && lambda >= 1 && m >= 2 && n >= m * k && lambda * (n - 1) == k * k * (m - 1)
}

/// Every admissible `(n, m, k, λ)` with `2 ≤ n ≤ max_n`, sorted by
/// `(n, m, k)`. The trivial sets `(n, n, 1, 1)` are only listed on request.
pub fn enumerate_admissible(max_n: usize, include_trivial: bool) -> Vec<ParamSet> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for m in 2..=n {
            let k_min = if include_trivial { 1 } else { 2 };
            for k in k_min..=n / m {
                let num = k * k * (m - 1);
                if num % (n - 1) == 0 {
                    out.push(ParamSet::new(n, m, k, num / (n - 1)));
                }
            }
        }
    }
    out
}

/// True iff `n - 1` is square-free, in which case only trivial SEDFs exist.
pub fn square_free_rule(n: usize) -> bool {
    factorize(n as u64 - 1).iter().all(|&(_, e)| e == 1)
}

/// `(n, b + 1, a, 1)` where `a²` is the largest square dividing `n - 1 = a² b`.
pub fn squareful_witness(n: usize) -> Option<ParamSet> {
    if n <= 2 {
        return None;
    }
    let a: u64 = factorize(n as u64 - 1)
        .iter()
        .map(|&(p, e)| p.pow(e / 2))
        .product();
    if a <= 1 {
        return None;
    }
    let a = a as usize;
    let b = (n - 1) / (a * a);
    let p = ParamSet::new(n, b + 1, a, 1);
    debug_assert!(p.admissible);
    Some(p)
}

/// Filters ruling out `p` for groups of class `class`.
pub fn nonexistence_filters(p: &ParamSet, class: GroupClass) -> Vec<FilterId> {
    let (n, m, k, l) = (p.n as u64, p.m as u64, p.k as u64, p.lambda as u64);
    FilterId::ALL
        .into_iter()
        .filter(|f| f.scope().covers(class) && f.rules_out(n, m, k, l))
        .collect()
}

/// `enumerate_admissible` with `filters_hit` filled in for `class`.
pub fn enumerate_with_filters(
    max_n: usize,
    include_trivial: bool,
    class: GroupClass,
) -> Vec<ParamSet> {
    enumerate_admissible(max_n, include_trivial)
        .into_iter()
        .map(|mut p| {
            p.filters_hit = nonexistence_filters(&p, class)
                .into_iter()
                .map(|f| FilterHit {
                    id: f.code().to_string(),
                    scope: f.scope(),
                })
                .collect();
            p
        })
        .collect()
}
