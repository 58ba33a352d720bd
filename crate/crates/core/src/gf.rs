//! Arithmetic in `F_q`, `q = p^m`.
//!
//! Elements are stored as their canonical integer encoding: the coefficient
//! vector `(a_0, ..., a_{m-1})` of `a_0 + a_1 t + ... + a_{m-1} t^{m-1}` read
//! as base-`p` digits, least significant first. Multiplication goes through
//! exp/log tables of a fixed primitive element `c`; addition uses Zech
//! logarithms (plain XOR in characteristic 2).

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `q`.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 16;

const NONE: u32 = u32::MAX;

/// An element of some `F_q`, by canonical encoding in `[0, q)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub(crate) const fn raw(v: u32) -> Self {
        FieldElement(v)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field with its primitive element and lookup tables.
///
/// Immutable after construction.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, base-`p` digits low to high (length `m + 1`).
    modulus: Vec<u32>,
    c: FieldElement,
    /// `exp[k] = c^k` for `0 <= k < 2(q-1)`; doubled so products skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + c^k)`, or `NONE` when `1 + c^k = 0`.
    zech: Vec<u32>,
    neg: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus && self.c == other.c
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("c", &self.c)
            .finish()
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
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

fn checked_order(p: u32, m: u32, cap: u64) -> Result<u32> {
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = (p as u64)
        .checked_pow(m)
        .filter(|&q| q <= cap && q <= u32::MAX as u64 / 2)
        .ok_or(Error::FieldTooLarge { p, m, cap })?;
    Ok(q as u32)
}

/// Dense polynomials over `F_p`, low to high. Only used while building tables.
mod fp_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo the monic polynomial `b`.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        while r.len() > db {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * bi) % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
        rem(&prod, modulus, p)
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for low in 0..count {
                let mut g = super::digits_of(low, p, d);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn digits_of(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

impl FieldCtx {
    /// `F_{p^m}` with the lexicographically smallest monic irreducible modulus
    /// and the smallest-encoding primitive element.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        Self::with_cap(p, m, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u32, m: u32, cap: u64) -> Result<Self> {
        let q = checked_order(p, m, cap)?;
        // Candidates t^m + (low part), low parts enumerated by encoding.
        let modulus = (0..q as u64)
            .map(|low| {
                let mut f = digits_of(low, p, m as usize);
                f.push(1);
                f
            })
            .find(|f| fp_poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");
        Self::build(p, m, q, modulus, None)
    }

    /// A field from an explicit modulus (digits low to high, monic) and
    /// optionally an explicit primitive element.
    pub fn from_modulus(p: u32, modulus: &[u32], c: Option<u32>, cap: u64) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let q = checked_order(p, m, cap)?;
        if modulus.iter().any(|&d| d >= p) {
            return Err(Error::InvalidModulus(format!("digits must lie in [0, {p})")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("leading coefficient must be 1".into()));
        }
        if !fp_poly::is_irreducible(modulus, p) {
            return Err(Error::InvalidModulus("polynomial is reducible".into()));
        }
        Self::build(p, m, q, modulus.to_vec(), c)
    }

    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>, c: Option<u32>) -> Result<Self> {
        let order = (q - 1) as u64;
        let to_poly = |e: u32| fp_poly::trim(digits_of(e as u64, p, m as usize));
        let pow_poly = |base: &[u32], mut k: u64| {
            let mut acc = vec![1u32];
            let mut b = base.to_vec();
            while k > 0 {
                if k & 1 == 1 {
                    acc = fp_poly::mul_mod(&acc, &b, &modulus, p);
                }
                b = fp_poly::mul_mod(&b, &b, &modulus, p);
                k >>= 1;
            }
            acc
        };
        let factors = prime_factors(order);
        let is_generator = |e: u32| {
            let g = to_poly(e);
            !g.is_empty() && factors.iter().all(|&r| pow_poly(&g, order / r) != [1])
        };
        let c = match c {
            Some(e) => {
                if e >= q {
                    return Err(Error::ElementOutOfRange { value: e as u64, q });
                }
                if !is_generator(e) {
                    return Err(Error::NotPrimitive(e));
                }
                e
            }
            None => (1..q).find(|&e| is_generator(e)).expect("F_q^* is cyclic"),
        };

        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![NONE; q as usize];
        let gen = to_poly(c);
        let mut cur = vec![1u32];
        for k in 0..(q - 1) as usize {
            let e = encode(&cur, p);
            if log[e as usize] != NONE {
                return Err(Error::NotPrimitive(c));
            }
            exp[k] = e;
            exp[k + q as usize - 1] = e;
            log[e as usize] = k as u32;
            cur = fp_poly::mul_mod(&cur, &gen, &modulus, p);
        }

        let neg: Vec<u32> = (0..q)
            .map(|e| {
                let d: Vec<u32> = digits_of(e as u64, p, m as usize)
                    .into_iter()
                    .map(|x| (p - x) % p)
                    .collect();
                encode(&d, p)
            })
            .collect();
        let zech: Vec<u32> = (0..q as usize - 1)
            .map(|k| {
                let mut d = digits_of(exp[k] as u64, p, m as usize);
                d[0] = (d[0] + 1) % p;
                let s = encode(&d, p);
                if s == 0 {
                    NONE
                } else {
                    log[s as usize]
                }
            })
            .collect();

        Ok(FieldCtx { p, m, q, modulus, c: FieldElement(c), exp, log, zech, neg })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element `c`.
    pub fn primitive(&self) -> FieldElement {
        self.c
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Checked conversion from an encoding.
    pub fn elem(&self, v: u32) -> Result<FieldElement> {
        if v < self.q {
            Ok(FieldElement(v))
        } else {
            Err(Error::ElementOutOfRange { value: v as u64, q: self.q })
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.q
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.p as i64) as u32)
    }

    /// All elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        digits_of(a.0 as u64, self.p, self.m as usize)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let ord = self.q - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + ord - la };
        match self.zech[k as usize] {
            NONE => FieldElement::ZERO,
            z => FieldElement(self.exp[(la + z) as usize]),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let ord = (self.q - 1) as u64;
        let e = (self.log[a.0 as usize] as u64 * (k % ord)) % ord;
        FieldElement(self.exp[e as usize])
    }

    /// `c^k` for any integer `k`.
    pub fn exp(&self, k: i64) -> FieldElement {
        let ord = (self.q - 1) as i64;
        FieldElement(self.exp[k.rem_euclid(ord) as usize])
    }

    /// Discrete logarithm base `c`, in `[0, q - 1)`.
    pub fn dlog(&self, a: FieldElement) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::LogOfZero);
        }
        Ok(self.log[a.0 as usize])
    }

    /// `p^j mod (q - 1)`, the multiplier a Frobenius power applies to logarithms.
    pub fn frobenius_log_multiplier(&self, j: u32) -> u64 {
        let ord = (self.q - 1) as u64;
        let mut acc = 1 % ord.max(1);
        for _ in 0..(j % self.m) {
            acc = (acc * self.p as u64) % ord.max(1);
        }
        acc
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, a: FieldElement, j: u32) -> FieldElement {
        if a.0 == 0 {
            return a;
        }
        let ord = (self.q - 1) as u64;
        let e = (self.log[a.0 as usize] as u64 * self.frobenius_log_multiplier(j)) % ord;
        FieldElement(self.exp[e as usize])
    }

    /// Checks `C(q-1, i) = (-1)^i (mod p)` for every `0 <= i <= q-1`.
    ///
    /// Binomials are reduced with Lucas' theorem, so the check works at every
    /// field size without big integers.
    pub fn signed_binomial_check(&self) -> bool {
        let p = self.p as u64;
        // C(p-1, d) mod p for d < p.
        let mut small = vec![1u64; self.p as usize];
        for d in 1..self.p as usize {
            let num = (p - d as u64) % p;
            let inv = mod_inverse(d as u64, p);
            small[d] = small[d - 1] * num % p * inv % p;
        }
        let top = digits_of(self.q as u64 - 1, self.p, self.m as usize);
        (0..self.q as u64).all(|i| {
            let low = digits_of(i, self.p, self.m as usize);
            let mut acc = 1u64;
            for (&n_k, &i_k) in top.iter().zip(&low) {
                if i_k > n_k {
                    acc = 0;
                    break;
                }
                // n_k = p - 1 for every digit of q - 1.
                acc = acc * small[i_k as usize] % p;
            }
            let sign = if i % 2 == 0 { 1 } else { p - 1 };
            acc == sign % p
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(0..self.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(1..self.q))
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}
