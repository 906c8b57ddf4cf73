//! Coefficient fields containing a primitive `k`-th root of unity `ζ`.

use std::fmt::Debug;
use std::sync::Arc;

use super::NicholsError;
use crate::cyclo::CycloRing;
use crate::CycloNumber;

/// A field with a distinguished primitive `k`-th root of unity.
pub trait Field: Sync + Send {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// `ζ^e`.
    fn zeta_pow(&self, e: u32) -> Self::Elem;
    /// The order `k` of `ζ`.
    fn root_order(&self) -> u32;
    fn name(&self) -> String;

    fn from_int(&self, v: i64) -> Self::Elem;

    /// Image of `Σ_e c_e ζ^e` for a coefficient vector of length `k`.
    fn from_group_ring(&self, c: &[i64]) -> Self::Elem {
        let mut acc = self.zero();
        for (e, &v) in c.iter().enumerate() {
            if v != 0 {
                acc = self.add(&acc, &self.mul(&self.from_int(v), &self.zeta_pow(e as u32)));
            }
        }
        acc
    }
}

/// `GF(p)` with `p ≡ 1 (mod k)`, elements as reduced `u64` residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    k: u32,
    zeta: Vec<u64>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PrimeField {
    /// `GF(p)` with `ζ` the first `a^{(p-1)/k}`, `a = 2, 3, …`, of exact order `k`.
    pub fn new(p: u64, k: u32) -> Result<Self, NicholsError> {
        if p >= 1 << 32 || !primal_check::miller_rabin(p) || !(p - 1).is_multiple_of(k as u64) {
            return Err(NicholsError::PrimeGenerationFailed(format!("{p} is not a prime ≡ 1 mod {k} below 2^32")));
        }
        let ks = prime_factors(k as u64);
        let z = (2..p)
            .map(|a| pow_mod(a, (p - 1) / k as u64, p))
            .find(|&z| ks.iter().all(|&l| pow_mod(z, k as u64 / l, p) != 1))
            .ok_or_else(|| NicholsError::PrimeGenerationFailed(format!("no root of order {k} mod {p}")))?;
        let mut zeta = vec![1u64; k as usize];
        for e in 1..k as usize {
            zeta[e] = zeta[e - 1] * z % p;
        }
        Ok(PrimeField { p, k, zeta })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

/// The first `count` primes `p ≡ 1 (mod k)` above `2^30`, ascending.
pub fn select_primes(k: u32, count: usize) -> Result<Vec<u64>, NicholsError> {
    let k = k.max(1) as u64;
    let start = (1u64 << 30) / k * k + 1;
    let out: Vec<u64> = (0..)
        .map(|t| start + t * k)
        .take_while(|&p| p < 1 << 32)
        .filter(|&p| p > 1 << 30 && primal_check::miller_rabin(p))
        .take(count)
        .collect();
    if out.len() < count {
        return Err(NicholsError::PrimeGenerationFailed(format!("fewer than {count} primes ≡ 1 mod {k} in range")));
    }
    Ok(out)
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        pow_mod(*a, self.p - 2, self.p)
    }
    fn zeta_pow(&self, e: u32) -> u64 {
        self.zeta[(e % self.k) as usize]
    }
    fn root_order(&self) -> u32 {
        self.k
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
    fn from_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_group_ring(&self, c: &[i64]) -> u64 {
        c.iter().enumerate().fold(0, |acc, (e, &v)| (acc + self.from_int(v) * self.zeta[e]) % self.p)
    }
}

/// `Q(ζ_k)` with exact cyclotomic arithmetic.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    k: u32,
    ring: Arc<CycloRing>,
    zeta: Vec<CycloNumber>,
}

impl CyclotomicField {
    pub fn new(k: u32) -> Self {
        let k = k.max(1);
        let ring = CycloRing::new(k);
        let zeta = (0..k).map(|e| CycloNumber::zeta_pow_in(&ring, e as i64)).collect();
        CyclotomicField { k, ring, zeta }
    }
}

impl Field for CyclotomicField {
    type Elem = CycloNumber;

    fn zero(&self) -> CycloNumber {
        CycloNumber::zero_in(&self.ring)
    }
    fn one(&self) -> CycloNumber {
        CycloNumber::from_int_in(&self.ring, 1)
    }
    fn is_zero(&self, a: &CycloNumber) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycloNumber, b: &CycloNumber) -> CycloNumber {
        a + b
    }
    fn sub(&self, a: &CycloNumber, b: &CycloNumber) -> CycloNumber {
        a - b
    }
    fn mul(&self, a: &CycloNumber, b: &CycloNumber) -> CycloNumber {
        a * b
    }
    fn neg(&self, a: &CycloNumber) -> CycloNumber {
        -a
    }
    fn inv(&self, a: &CycloNumber) -> CycloNumber {
        a.inv().expect("inverse of zero")
    }
    fn zeta_pow(&self, e: u32) -> CycloNumber {
        self.zeta[(e % self.k) as usize].clone()
    }
    fn root_order(&self) -> u32 {
        self.k
    }
    fn name(&self) -> String {
        format!("Q(zeta_{})", self.k)
    }
    fn from_int(&self, v: i64) -> CycloNumber {
        CycloNumber::from_int_in(&self.ring, v)
    }
}
