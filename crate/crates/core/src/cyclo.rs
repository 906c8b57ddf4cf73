//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` after
//! reduction modulo the `N`-th cyclotomic polynomial, so two elements of the
//! same level are equal exactly when their coefficient vectors are equal.
//! Operands of different levels are embedded into `Q(ζ_lcm)` before the
//! operation.
//!
//! The coefficient integer type is generic; [`crate::CycloNumber`] fixes it to
//! `BigInt`. Smaller types such as `i64` work as long as the computation does
//! not overflow.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("element is not fixed by complex conjugation: {0}")]
    NotReal(String),
    #[error("sign of {0} not resolved within {1} bits")]
    PrecisionExhausted(String, u32),
    #[error("cannot parse cyclotomic number: {0}")]
    Parse(String),
    #[error("level must be positive")]
    ZeroLevel,
}

/// Integer types usable as numerators/denominators of coefficients.
pub trait CoeffInt:
    Integer + Signed + Clone + FromPrimitive + Hash + fmt::Debug + fmt::Display + FromStr + Into<BigInt> + Send + Sync
{
}

impl<T> CoeffInt for T where
    T: Integer
        + Signed
        + Clone
        + FromPrimitive
        + Hash
        + fmt::Debug
        + fmt::Display
        + FromStr
        + Into<BigInt>
        + Send
        + Sync
{
}

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Sign {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.as_i8() * rhs.as_i8())
    }
}

pub fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Integer coefficients (low degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0);
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &di) in den.iter().enumerate() {
            rem[k + i] -= c * di;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Reduction data for one level `N`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloRing {
    level: u32,
    modulus: Vec<i64>,
}

impl CycloRing {
    pub fn new(level: u32) -> Arc<CycloRing> {
        assert!(level > 0, "cyclotomic level must be positive");
        Arc::new(CycloRing { level, modulus: cyclotomic_polynomial(level) })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Dimension `φ(N)` of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    fn reduce<T: CoeffInt>(&self, mut poly: Vec<Ratio<T>>) -> Vec<Ratio<T>> {
        let phi = self.degree();
        for d in (phi..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[d], Ratio::zero());
            if c.is_zero() {
                continue;
            }
            for (i, &m) in self.modulus[..phi].iter().enumerate() {
                if m != 0 {
                    let mi = Ratio::from_integer(T::from_i64(m).expect("modulus coefficient"));
                    poly[d - phi + i] = poly[d - phi + i].clone() - c.clone() * mi;
                }
            }
        }
        poly.resize(phi, Ratio::zero());
        poly
    }
}

/// Element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Cyclo<T: CoeffInt> {
    ring: Arc<CycloRing>,
    coeffs: Vec<Ratio<T>>,
}

impl<T: CoeffInt> Cyclo<T> {
    pub fn from_coeffs(ring: &Arc<CycloRing>, coeffs: Vec<Ratio<T>>) -> Self {
        Cyclo { ring: ring.clone(), coeffs: ring.reduce(coeffs) }
    }

    pub fn zero_in(ring: &Arc<CycloRing>) -> Self {
        Cyclo { ring: ring.clone(), coeffs: vec![Ratio::zero(); ring.degree()] }
    }

    pub fn from_rational_in(ring: &Arc<CycloRing>, q: Ratio<T>) -> Self {
        let mut c = vec![Ratio::zero(); ring.degree()];
        c[0] = q;
        Cyclo { ring: ring.clone(), coeffs: c }
    }

    pub fn from_int_in(ring: &Arc<CycloRing>, v: i64) -> Self {
        Self::from_rational_in(ring, Ratio::from_integer(T::from_i64(v).expect("integer fits")))
    }

    /// `ζ_N^e` for any integer `e`.
    pub fn zeta_pow_in(ring: &Arc<CycloRing>, e: i64) -> Self {
        let n = ring.level() as i64;
        let e = e.rem_euclid(n) as usize;
        let mut poly = vec![Ratio::zero(); e + 1];
        poly[e] = Ratio::one();
        Self::from_coeffs(ring, poly)
    }

    pub fn zeta_pow(level: u32, e: i64) -> Self {
        Self::zeta_pow_in(&CycloRing::new(level), e)
    }

    pub fn from_rational(q: Ratio<T>) -> Self {
        Self::from_rational_in(&CycloRing::new(1), q)
    }

    pub fn level(&self) -> u32 {
        self.ring.level()
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Ratio<T>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Rational value if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Ratio<T>> {
        // Only the basis element 1 is rational when reduced modulo Φ_N, except
        // for levels 1 and 2 where the basis is just {1}.
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under `Q(ζ_N) → Q(ζ_M)`, `ζ_N ↦ ζ_M^{M/N}`. Requires `N | M`.
    pub fn embed_into(&self, ring: &Arc<CycloRing>) -> Self {
        let (n, m) = (self.level(), ring.level());
        assert!(m % n == 0, "cannot embed level {n} into level {m}");
        if n == m {
            return Cyclo { ring: ring.clone(), coeffs: self.coeffs.clone() };
        }
        let step = (m / n) as usize;
        let mut poly = vec![Ratio::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self::from_coeffs(ring, poly)
    }

    pub fn embed(&self, level: u32) -> Self {
        if level == self.level() {
            return self.clone();
        }
        self.embed_into(&CycloRing::new(level))
    }

    /// Preimage under the embedding `Q(ζ_level) → Q(ζ_N)`, if the element
    /// lies in the subfield.
    pub fn restrict(&self, level: u32) -> Option<Self> {
        let n = self.level();
        if !n.is_multiple_of(level) {
            return None;
        }
        let small = CycloRing::new(level);
        let step = (n / level) as usize;
        let (rows, cols) = (self.ring.degree(), small.degree());
        // Column k is the image of ζ_level^k.
        let mut mat: Vec<Vec<Ratio<T>>> = vec![vec![Ratio::zero(); cols + 1]; rows];
        for k in 0..cols {
            let mut poly = vec![Ratio::zero(); k * step + 1];
            poly[k * step] = Ratio::one();
            let img = self.ring.reduce(poly);
            for r in 0..rows {
                mat[r][k] = img[r].clone();
            }
        }
        for r in 0..rows {
            mat[r][cols] = self.coeffs[r].clone();
        }
        let sol = solve_rational(mat, cols)?;
        Some(Cyclo { ring: small, coeffs: sol })
    }

    /// Complex conjugate (`ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> Self {
        let n = self.level() as usize;
        let mut poly = vec![Ratio::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(n - k) % n] = c.clone();
        }
        Self::from_coeffs(&self.ring, poly)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<Ratio<T>> = self
            .ring
            .modulus()
            .iter()
            .map(|&m| Ratio::from_integer(T::from_i64(m).expect("modulus coefficient")))
            .collect();
        let u = poly_inverse_mod(&self.coeffs, &modulus);
        Some(Self::from_coeffs(&self.ring, u))
    }

    fn lift_pair(&self, other: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.level() == other.level() {
            return (self.clone(), other.clone());
        }
        let l = self.level().lcm(&other.level());
        let ring = CycloRing::new(l);
        (self.embed_into(&ring), other.embed_into(&ring))
    }

    /// Exact sign of a real element.
    ///
    /// Zero is detected from the canonical coefficients; otherwise the value
    /// is evaluated at `ζ = e^{2πi/N}` with rigorous fixed-point error bounds,
    /// starting at 64 bits and doubling up to 4096 bits.
    pub fn sign_real(&self) -> Result<Sign, CycloError> {
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        if !self.is_real() {
            return Err(CycloError::NotReal(self.to_string()));
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| {
                let d: BigInt = c.denom().clone().into();
                acc.lcm(&d)
            });
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let n: BigInt = c.numer().clone().into();
                let d: BigInt = c.denom().clone().into();
                n * (&den / d)
            })
            .collect();
        let weight: BigInt = ints.iter().map(|v| v.abs()).sum();
        let mut bits = 64u32;
        while bits <= interval::MAX_BITS {
            let work = bits + interval::GUARD_BITS;
            let pi = interval::pi_fixed(work);
            let mut acc = BigInt::zero();
            for (k, v) in ints.iter().enumerate() {
                if !v.is_zero() {
                    acc += v * interval::cos_two_pi_fraction(&pi, k as u64, self.level() as u64, work);
                }
            }
            // Each cosine is within 2^-bits of the truth.
            let bound = &weight << interval::GUARD_BITS;
            if acc.abs() > bound {
                return Ok(if acc.sign() == BigSign::Minus { Sign::Negative } else { Sign::Positive });
            }
            bits *= 2;
        }
        Err(CycloError::PrecisionExhausted(self.to_string(), interval::MAX_BITS))
    }

    /// Floating-point approximation of the real part, for diagnostics.
    pub fn approx_re(&self) -> f64 {
        use num_traits::ToPrimitive;
        let n = self.level() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let n_: BigInt = c.numer().clone().into();
                let d_: BigInt = c.denom().clone().into();
                let v = n_.to_f64().unwrap_or(f64::NAN) / d_.to_f64().unwrap_or(f64::NAN);
                v * (2.0 * std::f64::consts::PI * k as f64 / n).cos()
            })
            .sum()
    }
}

/// `cos(π/m) = (ζ_{2m} + ζ_{2m}^{-1})/2` at level `2m`.
pub fn cos_of_pi_over<T: CoeffInt>(m: u32) -> Cyclo<T> {
    assert!(m >= 1, "cos_of_pi_over requires m >= 1");
    let ring = CycloRing::new(2 * m);
    let half = Ratio::new(T::one(), T::from_i64(2).expect("2"));
    let sum = Cyclo::<T>::zeta_pow_in(&ring, 1) + Cyclo::<T>::zeta_pow_in(&ring, -1);
    sum * Cyclo::from_rational_in(&ring, half)
}

/// Solves the (overdetermined, consistent-or-not) augmented system with
/// `cols` unknowns. Returns `None` when inconsistent.
fn solve_rational<T: CoeffInt>(mut m: Vec<Vec<Ratio<T>>>, cols: usize) -> Option<Vec<Ratio<T>>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let v = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![Ratio::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][cols].clone();
    }
    Some(sol)
}

fn poly_trim<T: CoeffInt>(p: &mut Vec<Ratio<T>>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem<T: CoeffInt>(a: &[Ratio<T>], b: &[Ratio<T>]) -> (Vec<Ratio<T>>, Vec<Ratio<T>>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![Ratio::zero()], rem);
    }
    let mut quot = vec![Ratio::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone() / lead.clone();
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] = rem[k + i].clone() - c.clone() * bi.clone();
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    poly_trim(&mut rem);
    (quot, rem)
}

fn poly_mul<T: CoeffInt>(a: &[Ratio<T>], b: &[Ratio<T>]) -> Vec<Ratio<T>> {
    let mut out = vec![Ratio::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn poly_sub<T: CoeffInt>(a: &[Ratio<T>], b: &[Ratio<T>]) -> Vec<Ratio<T>> {
    let n = a.len().max(b.len());
    let mut out: Vec<Ratio<T>> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Ratio::zero);
            let y = b.get(i).cloned().unwrap_or_else(Ratio::zero);
            x - y
        })
        .collect();
    poly_trim(&mut out);
    out
}

/// `u` with `a·u ≡ 1 (mod m)`, assuming `gcd(a, m) = 1`.
fn poly_inverse_mod<T: CoeffInt>(a: &[Ratio<T>], m: &[Ratio<T>]) -> Vec<Ratio<T>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let (mut s0, mut s1) = (vec![Ratio::zero()], vec![Ratio::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    assert!(r0.len() == 1, "element not invertible modulo cyclotomic polynomial");
    let c = r0[0].recip();
    s0.into_iter().map(|x| x * c.clone()).collect()
}

impl<T: CoeffInt> PartialEq for Cyclo<T> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.lift_pair(other);
        a.coeffs == b.coeffs
    }
}

impl<T: CoeffInt> Eq for Cyclo<T> {}

impl<T: CoeffInt> fmt::Debug for Cyclo<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

impl<T: CoeffInt> fmt::Display for Cyclo<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".to_string());
        }
        write!(f, "{}@{}", terms.join(" + "), self.level())
    }
}

impl<T: CoeffInt> FromStr for Cyclo<T> {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CycloError::Parse(s.to_string());
        let (body, level) = s.rsplit_once('@').ok_or_else(err)?;
        let level: u32 = level.trim().parse().map_err(|_| err())?;
        if level == 0 {
            return Err(CycloError::ZeroLevel);
        }
        let ring = CycloRing::new(level);
        let mut poly: Vec<Ratio<T>> = Vec::new();
        for term in body.split(" + ") {
            let term = term.trim();
            let (coef, power) = match term.split_once("*z") {
                None => (term, 0usize),
                Some((c, "")) => (c, 1),
                Some((c, rest)) => {
                    let p = rest.strip_prefix('^').ok_or_else(err)?;
                    (c, p.parse().map_err(|_| err())?)
                }
            };
            let coef: Ratio<T> = coef.parse().map_err(|_| err())?;
            if poly.len() <= power {
                poly.resize(power + 1, Ratio::zero());
            }
            poly[power] = poly[power].clone() + coef;
        }
        Ok(Cyclo::from_coeffs(&ring, poly))
    }
}

impl<T: CoeffInt> Add for &Cyclo<T> {
    type Output = Cyclo<T>;
    fn add(self, rhs: &Cyclo<T>) -> Cyclo<T> {
        let (a, b) = self.lift_pair(rhs);
        let coeffs = a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x + y).collect();
        Cyclo { ring: a.ring, coeffs }
    }
}

impl<T: CoeffInt> Sub for &Cyclo<T> {
    type Output = Cyclo<T>;
    fn sub(self, rhs: &Cyclo<T>) -> Cyclo<T> {
        let (a, b) = self.lift_pair(rhs);
        let coeffs = a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x - y).collect();
        Cyclo { ring: a.ring, coeffs }
    }
}

impl<T: CoeffInt> Mul for &Cyclo<T> {
    type Output = Cyclo<T>;
    fn mul(self, rhs: &Cyclo<T>) -> Cyclo<T> {
        let (a, b) = self.lift_pair(rhs);
        if a.is_zero() || b.is_zero() {
            return Cyclo::zero_in(&a.ring);
        }
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        Cyclo::from_coeffs(&a.ring, prod)
    }
}

impl<T: CoeffInt> Div for &Cyclo<T> {
    type Output = Cyclo<T>;
    fn div(self, rhs: &Cyclo<T>) -> Cyclo<T> {
        let (a, b) = self.lift_pair(rhs);
        &a * &b.inv().expect("division by zero cyclotomic number")
    }
}

impl<T: CoeffInt> Neg for &Cyclo<T> {
    type Output = Cyclo<T>;
    fn neg(self) -> Cyclo<T> {
        Cyclo { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: CoeffInt> $tr for Cyclo<T> {
            type Output = Cyclo<T>;
            fn $m(self, rhs: Cyclo<T>) -> Cyclo<T> { (&self).$m(&rhs) }
        }
        impl<T: CoeffInt> $tr<&Cyclo<T>> for Cyclo<T> {
            type Output = Cyclo<T>;
            fn $m(self, rhs: &Cyclo<T>) -> Cyclo<T> { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl<T: CoeffInt> Neg for Cyclo<T> {
    type Output = Cyclo<T>;
    fn neg(self) -> Cyclo<T> {
        -&self
    }
}

impl<T: CoeffInt> Zero for Cyclo<T> {
    fn zero() -> Self {
        Cyclo::zero_in(&CycloRing::new(1))
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
}

impl<T: CoeffInt> One for Cyclo<T> {
    fn one() -> Self {
        Cyclo::from_int_in(&CycloRing::new(1), 1)
    }
}

/// Fixed-point evaluation of `cos(2πk/N)` with explicit error control.
mod interval {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    pub const GUARD_BITS: u32 = 64;
    pub const MAX_BITS: u32 = 4096;

    fn atan_inv(x: u64, work: u32) -> BigInt {
        let x2 = BigInt::from(x) * BigInt::from(x);
        let mut term = (BigInt::one() << work) / BigInt::from(x);
        let mut sum = BigInt::zero();
        let mut n = 0u64;
        while !term.is_zero() {
            let t = &term / BigInt::from(2 * n + 1);
            if n.is_multiple_of(2) {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &x2;
            n += 1;
        }
        sum
    }

    /// π scaled by `2^work`, within a few thousand units of the last place.
    pub fn pi_fixed(work: u32) -> BigInt {
        atan_inv(5, work) * 16 - atan_inv(239, work) * 4
    }

    /// `cos(2πk/n)` scaled by `2^work`; absolute error far below `2^(work-GUARD_BITS)`.
    pub fn cos_two_pi_fraction(pi: &BigInt, k: u64, n: u64, work: u32) -> BigInt {
        let mut k = k % n;
        if 2 * k > n {
            k = n - k;
        }
        // angle = π·(2k)/n ∈ [0, π]
        let (mut num, den) = (2 * k, n);
        let mut negate = false;
        if 2 * num > den {
            num = den - num;
            negate = true;
        }
        // angle = π·num/den ∈ [0, π/2]
        let theta = pi * BigInt::from(num) / BigInt::from(den);
        let theta2 = (&theta * &theta) >> work;
        let mut term = BigInt::one() << work;
        let mut sum = term.clone();
        let mut i = 0u64;
        loop {
            term = -((&term * &theta2) >> work) / BigInt::from((2 * i + 1) * (2 * i + 2));
            if term.is_zero() {
                break;
            }
            sum += &term;
            i += 1;
        }
        if negate {
            -sum
        } else {
            sum
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CycloNumber;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(10), vec![1, -1, 1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn cos_small_values() {
        assert!(cos_of_pi_over::<BigInt>(2).is_zero());
        assert_eq!(cos_of_pi_over::<BigInt>(3).to_rational(), Some(q(1, 2)));
        assert_eq!(cos_of_pi_over::<BigInt>(1).to_rational(), Some(q(-1, 1)));
        assert_eq!(cos_of_pi_over::<BigInt>(6).level(), 12);
        for m in 1..13 {
            assert!(cos_of_pi_over::<BigInt>(m).is_real());
        }
    }

    #[test]
    fn arithmetic_identities() {
        let c3: CycloNumber = cos_of_pi_over(3);
        assert_eq!((&c3 + &c3).to_rational(), Some(q(1, 1)));
        let x: CycloNumber = cos_of_pi_over(5);
        assert!((&x * &CycloNumber::zero()).is_zero());
        let two = CycloNumber::from_rational(q(2, 1));
        let g = &two * &x;
        assert_eq!(&g * &g, &g + &CycloNumber::one());
    }

    #[test]
    fn signs() {
        let zero = CycloNumber::zero();
        assert_eq!(zero.sign_real(), Ok(Sign::Zero));
        let c3: CycloNumber = cos_of_pi_over(3);
        assert_eq!((&c3 - &CycloNumber::one()).sign_real(), Ok(Sign::Negative));
        let c5: CycloNumber = cos_of_pi_over(5);
        let half = CycloNumber::from_rational(q(1, 2));
        assert_eq!((&c5 - &half).sign_real(), Ok(Sign::Positive));
        let z = CycloNumber::zeta_pow(5, 1);
        assert!(matches!(z.sign_real(), Err(CycloError::NotReal(_))));
    }

    #[test]
    fn tiny_differences_are_resolved() {
        // Signs from a 50-digit evaluation: cos(π/30) - 0.9945218953682733 ≈ +3.7e-17
        // and cos(π/30) - 0.99452189536827334 ≈ -3.1e-18.
        let c: CycloNumber = cos_of_pi_over(30);
        let below = CycloNumber::from_rational(q(9_945_218_953_682_733, 10_000_000_000_000_000));
        let above = CycloNumber::from_rational(q(99_452_189_536_827_334, 100_000_000_000_000_000));
        assert_eq!((&c - &below).sign_real(), Ok(Sign::Positive));
        assert_eq!((&c - &above).sign_real(), Ok(Sign::Negative));
    }

    #[test]
    fn inverse_and_division() {
        let z = CycloNumber::zeta_pow(7, 3);
        let one = CycloNumber::one();
        let a = &z + &one;
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, one.embed(7));
        assert!(CycloNumber::zero().inv().is_none());
    }

    #[test]
    fn embed_and_restrict() {
        let x: CycloNumber = cos_of_pi_over(5);
        let big = x.embed(60);
        assert_eq!(big.level(), 60);
        assert_eq!(big, x);
        assert_eq!(big.restrict(10).unwrap().coeffs(), x.coeffs());
        assert!(CycloNumber::zeta_pow(60, 1).restrict(10).is_none());
    }

    #[test]
    fn text_round_trip() {
        let x: CycloNumber = cos_of_pi_over(5);
        let s = x.to_string();
        assert_eq!(s.parse::<CycloNumber>().unwrap(), x);
        assert_eq!("0@7".parse::<CycloNumber>().unwrap(), CycloNumber::zero());
        assert_eq!(
            "1/2 + -3*z^2@12".parse::<CycloNumber>().unwrap().to_string(),
            "1/2 + -3*z^2@12"
        );
        assert!("1 + z@".parse::<CycloNumber>().is_err());
    }

    #[test]
    fn small_integer_coefficients() {
        let x: Cyclo<i64> = cos_of_pi_over(4);
        let two = Cyclo::<i64>::from_rational(Ratio::from_integer(2));
        assert_eq!((&x * &x) * two, Cyclo::one());
    }
}
