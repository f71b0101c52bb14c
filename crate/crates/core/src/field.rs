//! Finite fields GF(p^e) in polynomial basis.
//!
//! An element is a coefficient vector `(c_0, ..., c_{e-1})` (constant term
//! first) and is indexed by `c_0 + c_1 p + ... + c_{e-1} p^(e-1)`. Labels list
//! the coefficients from the highest power down, so GF(9) element `x` is
//! `(1,0)` and `1` is `(0,1)`.

use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, MAX_ORDER};

pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: usize,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn digits(mut x: u64, p: u64, e: u32) -> Vec<u64> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two polynomials reduced modulo a monic `modulus` over Z_p.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - e + i;
            prod[idx] = (prod[idx] + p - c * m % p) % p;
        }
    }
    prod.truncate(e);
    prod.resize(e, 0);
    prod
}

/// Remainder of `a` modulo a monic `b`.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut divisor = digits(low, p, d as u32);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The smallest-index primitive element.
    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn coefficients(&self, x: usize) -> Vec<u64> {
        digits(x as u64, self.p, self.e)
    }

    pub fn from_coefficients(&self, c: &[u64]) -> usize {
        undigits(c, self.p) as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.coefficients(a), self.coefficients(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coefficients(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let d: Vec<u64> = self
            .coefficients(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.from_coefficients(&d)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let l = (self.log[a] as u64 + self.log[b] as u64) % (self.q - 1);
        self.exp[l as usize] as usize
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        if a == 0 {
            return usize::from(k == 0);
        }
        let l = (self.log[a] as u64 * (k % (self.q - 1))) % (self.q - 1);
        self.exp[l as usize] as usize
    }

    /// Discrete logarithm to the base `generator()`; `None` for zero.
    pub fn log(&self, a: usize) -> Option<u64> {
        (a != 0).then(|| self.log[a] as u64)
    }

    pub fn multiplicative_order(&self, a: usize) -> u64 {
        let l = self.log[a] as u64;
        (self.q - 1) / gcd(l, self.q - 1)
    }

    /// Display label: the element itself for prime fields, otherwise the
    /// coefficient tuple from the highest power down.
    pub fn label(&self, a: usize) -> String {
        if self.e == 1 {
            a.to_string()
        } else {
            let c: Vec<String> = self
                .coefficients(a)
                .iter()
                .rev()
                .map(|c| c.to_string())
                .collect();
            format!("({})", c.join(","))
        }
    }

    /// Frobenius image `a^p`.
    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// GF(p^e) with the lexicographically smallest monic irreducible modulus,
/// ordering candidates by the integer value of their lower coefficients.
pub fn construct_field(p: u64, e: u32) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::Parameter("extension degree must be positive".into()));
    }
    let q = p
        .checked_pow(e)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or(Error::FieldTooLarge(p.saturating_pow(e)))?;
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        (0..p.pow(e))
            .map(|low| {
                let mut m = digits(low, p, e);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .ok_or_else(|| Error::Internal(format!("no irreducible of degree {e} over Z_{p}")))?
    };
    let mul_slow = |a: u64, b: u64| -> u64 {
        if e == 1 {
            a * b % p
        } else {
            undigits(
                &poly_mul_mod(&digits(a, p, e), &digits(b, p, e), &modulus, p),
                p,
            )
        }
    };
    let pow_slow = |a: u64, mut k: u64| -> u64 {
        let (mut acc, mut base) = (1u64, a);
        while k > 0 {
            if k & 1 == 1 {
                acc = mul_slow(acc, base);
            }
            base = mul_slow(base, base);
            k >>= 1;
        }
        acc
    };
    let factors = prime_factors(q - 1);
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&r| pow_slow(g, (q - 1) / r) != 1))
        .ok_or_else(|| Error::Internal("multiplicative group has no generator".into()))?;
    let mut exp = Vec::with_capacity((q - 1) as usize);
    let mut log = vec![0u32; q as usize];
    let mut x = 1u64;
    for i in 0..q - 1 {
        if i > 0 && x == 1 {
            return Err(Error::Internal("generator order is too small".into()));
        }
        exp.push(x as u32);
        log[x as usize] = i as u32;
        x = mul_slow(x, generator);
    }
    if x != 1 {
        return Err(Error::Internal("generator order mismatch".into()));
    }
    Ok(FiniteField {
        p,
        e,
        q,
        modulus,
        generator: generator as usize,
        exp,
        log,
    })
}

/// The additive group of the field as a Cayley table. For a prime field this
/// is `Z_p`; otherwise it coincides with `Z_p x ... x Z_p` (highest
/// coefficient first).
pub fn additive_group(f: &FiniteField) -> Result<FiniteGroup> {
    let q = f.order() as usize;
    if q > MAX_ORDER {
        return Err(Error::TooLarge(q));
    }
    let mut table = Vec::with_capacity(q * q);
    for a in 0..q {
        for b in 0..q {
            table.push(f.add(a, b) as u32);
        }
    }
    let labels = (0..q).map(|a| f.label(a)).collect();
    let name = if f.degree() == 1 {
        format!("Z{}", f.p())
    } else {
        vec![format!("Z{}", f.p()); f.degree() as usize].join("x")
    };
    FiniteGroup::from_table(name, q, table, Some(labels))
}

/// Non-zero squares and non-squares, each sorted by element index.
pub fn squares_nonsquares(f: &FiniteField) -> Result<(Vec<usize>, Vec<usize>)> {
    if f.order().is_multiple_of(2) {
        return Err(Error::EvenFieldOrder);
    }
    let (sq, non): (Vec<usize>, Vec<usize>) =
        (1..f.order() as usize).partition(|&a| f.log[a].is_multiple_of(2));
    Ok((sq, non))
}

#[derive(Clone, Debug)]
pub struct CyclotomicClasses {
    pub index: u64,
    pub generator: usize,
    /// `classes[i] = { g^(index*j + i) }`, each sorted by element index.
    pub classes: Vec<Vec<usize>>,
}

pub fn cyclotomic_classes(f: &FiniteField, e: u64) -> Result<CyclotomicClasses> {
    let q1 = f.order() - 1;
    if e == 0 || !q1.is_multiple_of(e) {
        return Err(Error::NotDivisor {
            index: e,
            modulus: q1,
        });
    }
    let mut classes = vec![Vec::new(); e as usize];
    for a in 1..f.order() as usize {
        classes[(f.log[a] as u64 % e) as usize].push(a);
    }
    Ok(CyclotomicClasses {
        index: e,
        generator: f.generator,
        classes,
    })
}
