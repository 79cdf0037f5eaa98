//! Finite-field towers `F_p ⊂ F_q ⊂ F_{q^r}`.
//!
//! An element is stored as an integer whose base-`p` digits are its
//! coordinates in the basis `a^i b^j` (digit `j*e + i`), where `a` generates
//! `F_q` over `F_p` and `b` generates `F_{q^r}` over `F_q`. In this basis the
//! subfields are the integer ranges `F_p = [0, p)` and `F_q = [0, q)`, so the
//! embeddings act as the identity on encodings.
//!
//! Both defining polynomials are the lexicographically smallest monic
//! irreducible of the required degree, comparing coefficient lists from the
//! top coefficient down and coefficients by their encodings. The `F_q` step
//! depends only on `(p, e)`, so `F_q` encodings agree across towers with
//! different `r`.
//!
//! Multiplication goes through log/antilog tables, addition through Zech
//! logarithms.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_factors, prime_power};
use crate::error::{Error, Result};

/// Default refusal threshold for building and enumerating fields.
pub const DEFAULT_CAP: u64 = 10_000_000;

const NO_LOG: u32 = u32::MAX;
const MAX_DIGITS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub r: u32,
}

impl FieldSpec {
    pub fn new(p: u32, e: u32, r: u32) -> Self {
        FieldSpec { p, e, r }
    }

    /// Spec for `F_q ⊂ F_{q^r}` given the prime power `q`.
    pub fn from_q(q: u64, r: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("q = {q} must be at least 2")));
        }
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let p = u32::try_from(p).map_err(|_| Error::InvalidParameter(format!("p = {p} too large")))?;
        Ok(FieldSpec { p, e, r })
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }

    /// `q^r`, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.e.checked_mul(self.r)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    Fp,
    Fq,
    Fqr,
}

/// Reference arithmetic used only while building the tables.
trait SlowField {
    fn size(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}

struct PrimeSlow(u32);

impl SlowField for PrimeSlow {
    fn size(&self) -> u32 {
        self.0
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }
    fn neg(&self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
}

struct ExtSlow<'b, B: SlowField> {
    base: &'b B,
    modulus: Vec<u32>,
    size: u32,
}

impl<'b, B: SlowField> ExtSlow<'b, B> {
    fn new(base: &'b B, modulus: Vec<u32>) -> Self {
        let size = base.size().pow(modulus.len() as u32 - 1);
        ExtSlow { base, modulus, size }
    }

    fn deg(&self) -> usize {
        self.modulus.len() - 1
    }

    fn decode(&self, mut a: u32, out: &mut [u32]) {
        let b = self.base.size();
        for c in out.iter_mut() {
            *c = a % b;
            a /= b;
        }
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        let b = self.base.size();
        digits.iter().rev().fold(0, |acc, &c| acc * b + c)
    }
}

impl<B: SlowField> SlowField for ExtSlow<'_, B> {
    fn size(&self) -> u32 {
        self.size
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let d = self.deg();
        let (mut x, mut y) = ([0u32; MAX_DIGITS], [0u32; MAX_DIGITS]);
        self.decode(a, &mut x[..d]);
        self.decode(b, &mut y[..d]);
        for i in 0..d {
            x[i] = self.base.add(x[i], y[i]);
        }
        self.encode(&x[..d])
    }

    fn neg(&self, a: u32) -> u32 {
        let d = self.deg();
        let mut x = [0u32; MAX_DIGITS];
        self.decode(a, &mut x[..d]);
        for c in x[..d].iter_mut() {
            *c = self.base.neg(*c);
        }
        self.encode(&x[..d])
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let d = self.deg();
        let (mut x, mut y) = ([0u32; MAX_DIGITS], [0u32; MAX_DIGITS]);
        self.decode(a, &mut x[..d]);
        self.decode(b, &mut y[..d]);
        let mut prod = vec![0u32; 2 * d];
        for i in 0..d {
            for j in 0..d {
                prod[i + j] = self.base.add(prod[i + j], self.base.mul(x[i], y[j]));
            }
        }
        let rem = slow_rem_monic(self.base, &prod, &self.modulus);
        let mut out = [0u32; MAX_DIGITS];
        out[..rem.len().min(d)].copy_from_slice(&rem[..rem.len().min(d)]);
        self.encode(&out[..d])
    }
}

/// Remainder of `f` by the monic `g`, as a vector of length `deg g`.
fn slow_rem_monic<F: SlowField>(field: &F, f: &[u32], g: &[u32]) -> Vec<u32> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    if r.len() < dg {
        r.resize(dg, 0);
        return r;
    }
    for top in (dg..r.len()).rev() {
        let c = r[top];
        if c != 0 {
            for (i, &gi) in g.iter().enumerate() {
                let k = top - dg + i;
                r[k] = field.sub(r[k], field.mul(c, gi));
            }
        }
    }
    r.truncate(dg);
    r
}

fn slow_is_irreducible<F: SlowField>(field: &F, f: &[u32]) -> bool {
    let d = f.len() - 1;
    let b = field.size() as u64;
    for k in 1..=d / 2 {
        for n in 0..b.pow(k as u32) {
            let mut g = Vec::with_capacity(k + 1);
            let mut m = n;
            for _ in 0..k {
                g.push((m % b) as u32);
                m /= b;
            }
            g.push(1);
            if slow_rem_monic(field, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of degree `d` in the tower's lexicographic order.
fn smallest_irreducible<F: SlowField>(field: &F, d: usize) -> Vec<u32> {
    let b = field.size() as u64;
    let mut n = 0u64;
    loop {
        let mut f = Vec::with_capacity(d + 1);
        let mut m = n;
        for _ in 0..d {
            f.push((m % b) as u32);
            m /= b;
        }
        f.push(1);
        if slow_is_irreducible(field, &f) {
            return f;
        }
        n += 1;
    }
}

fn slow_pow<F: SlowField>(field: &F, mut a: u32, mut k: u64) -> u32 {
    let mut acc = 1;
    while k > 0 {
        if k & 1 == 1 {
            acc = field.mul(acc, a);
        }
        a = field.mul(a, a);
        k >>= 1;
    }
    acc
}

/// An immutable field tower with precomputed tables.
pub struct FieldTower {
    spec: FieldSpec,
    q: u32,
    order: u32,
    fq_modulus: Vec<u32>,
    fqr_modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one_log: u32,
    qpow_mod: Vec<u64>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("spec", &self.spec)
            .field("fq_modulus", &self.fq_modulus)
            .field("fqr_modulus", &self.fqr_modulus)
            .finish()
    }
}

/// Reproducibility header naming both defining polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerHeader {
    pub p: u32,
    pub e: u32,
    pub r: u32,
    pub q: u64,
    /// Defining polynomial of `F_q` over `F_p`, low-to-high.
    pub fq_modulus: Vec<u32>,
    /// Defining polynomial of `F_{q^r}` over `F_q`, low-to-high, each
    /// coefficient as its coordinate vector over `F_p`.
    pub fqr_modulus: Vec<Vec<u32>>,
}

impl FieldTower {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        Self::with_cap(spec, DEFAULT_CAP)
    }

    pub fn with_cap(spec: FieldSpec, cap: u64) -> Result<Self> {
        if !is_prime(spec.p as u64) {
            return Err(Error::NonPrime(spec.p as u64));
        }
        if spec.e == 0 || spec.r == 0 {
            return Err(Error::InvalidParameter("e and r must be positive".into()));
        }
        let order = spec.order().ok_or(Error::CapExceeded { size: u128::MAX, cap })?;
        if order > cap as u128 || order > (u32::MAX / 2) as u128 {
            return Err(Error::CapExceeded { size: order, cap });
        }
        let digits = (spec.e * spec.r) as usize;
        if digits > MAX_DIGITS {
            return Err(Error::Unsupported(format!("absolute degree {digits} above {MAX_DIGITS}")));
        }
        let order = order as u32;
        let q = spec.q() as u32;

        let fp = PrimeSlow(spec.p);
        let fq_modulus = smallest_irreducible(&fp, spec.e as usize);
        let fq = ExtSlow::new(&fp, fq_modulus.clone());
        let fqr_modulus = smallest_irreducible(&fq, spec.r as usize);
        let top = ExtSlow::new(&fq, fqr_modulus.clone());

        let n = (order - 1) as u64;
        let factors = prime_factors(n);
        let generator = (1..order)
            .find(|&g| {
                slow_pow(&top, g, n) == 1 && factors.iter().all(|&l| slow_pow(&top, g, n / l) != 1)
            })
            .expect("finite field has a primitive element");

        let n = n as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NO_LOG; order as usize];
        let mut x = 1u32;
        for k in 0..n {
            exp[k] = x;
            log[x as usize] = k as u32;
            x = top.mul(x, generator);
        }
        for k in 0..n {
            exp[k + n] = exp[k];
        }

        let p = spec.p;
        let zech = (0..n)
            .map(|k| {
                let v = exp[k];
                let low = v % p;
                let w = v - low + (low + 1) % p;
                log[w as usize]
            })
            .collect();
        let neg_one_log = log[(p - 1) as usize];
        let mut qpow_mod = Vec::with_capacity(spec.r as usize);
        let mut acc = 1u64 % n.max(1) as u64;
        for _ in 0..spec.r {
            qpow_mod.push(acc);
            acc = acc * q as u64 % n.max(1) as u64;
        }

        Ok(FieldTower {
            spec,
            q,
            order,
            fq_modulus,
            fqr_modulus,
            generator,
            exp,
            log,
            zech,
            neg_one_log,
            qpow_mod,
        })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> usize {
        self.spec.r as usize
    }

    /// Number of elements of `level`.
    pub fn size(&self, level: Level) -> u32 {
        match level {
            Level::Fp => self.spec.p,
            Level::Fq => self.q,
            Level::Fqr => self.order,
        }
    }

    /// Degree of `level` over `F_p`.
    pub fn abs_degree(&self, level: Level) -> usize {
        match level {
            Level::Fp => 1,
            Level::Fq => self.spec.e as usize,
            Level::Fqr => (self.spec.e * self.spec.r) as usize,
        }
    }

    pub fn fq_modulus(&self) -> &[u32] {
        &self.fq_modulus
    }

    pub fn fqr_modulus(&self) -> &[u32] {
        &self.fqr_modulus
    }

    pub fn header(&self) -> TowerHeader {
        TowerHeader {
            p: self.spec.p,
            e: self.spec.e,
            r: self.spec.r,
            q: self.q as u64,
            fq_modulus: self.fq_modulus.clone(),
            fqr_modulus: self.fqr_modulus.iter().map(|&c| self.coords_of(c, Level::Fq)).collect(),
        }
    }

    pub fn generator(&self) -> FieldElem<'_> {
        FieldElem { tower: self, level: Level::Fqr, value: self.generator }
    }

    pub fn contains(&self, level: Level, v: u32) -> bool {
        v < self.size(level)
    }

    pub fn elem(&self, level: Level, v: u32) -> Result<FieldElem<'_>> {
        if self.contains(level, v) {
            Ok(FieldElem { tower: self, level, value: v })
        } else {
            Err(Error::NotInField)
        }
    }

    pub fn zero(&self) -> FieldElem<'_> {
        FieldElem { tower: self, level: Level::Fp, value: 0 }
    }

    pub fn one(&self) -> FieldElem<'_> {
        FieldElem { tower: self, level: Level::Fp, value: 1 }
    }

    /// Element of `level` from its coordinates over `F_p`.
    pub fn from_coords(&self, level: Level, coords: &[u32]) -> Result<FieldElem<'_>> {
        let d = self.abs_degree(level);
        if coords.len() > d || coords.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::NotInField);
        }
        let v = coords.iter().rev().fold(0u32, |acc, &c| acc * self.spec.p + c);
        self.elem(level, v)
    }

    pub(crate) fn coords_of(&self, mut v: u32, level: Level) -> Vec<u32> {
        (0..self.abs_degree(level))
            .map(|_| {
                let c = v % self.spec.p;
                v /= self.spec.p;
                c
            })
            .collect()
    }

    /// Every element of `level`, in increasing encoding order.
    pub fn enumerate(&self, level: Level) -> impl Iterator<Item = FieldElem<'_>> + '_ {
        (0..self.size(level)).map(move |v| FieldElem { tower: self, level, value: v })
    }

    /// Nonzero elements fixed by `x ↦ x^{q^d}`, i.e. `F_{q^gcd(d,r)}^*`.
    pub fn subfield_units(&self, d: usize) -> Vec<FieldElem<'_>> {
        let d = num_integer::gcd(d, self.r());
        let n = (self.order - 1) as u64;
        let sub = (self.q as u64).pow(d as u32) - 1;
        let step = n / sub;
        (0..sub)
            .map(|k| FieldElem { tower: self, level: Level::Fqr, value: self.exp[(k * step) as usize] })
            .collect()
    }

    // Encoding-level arithmetic for hot loops. Inputs must be valid encodings.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let (la, lb) = (self.log[a as usize], self.log[b as usize]);
        let (lo, hi) = if la <= lb { (la, lb) } else { (lb, la) };
        let z = self.zech[(hi - lo) as usize];
        if z == NO_LOG {
            0
        } else {
            self.exp[(lo + z) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.neg_one_log) as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            let n = self.order - 1;
            Some(self.exp[(n - self.log[a as usize]) as usize])
        }
    }

    #[inline]
    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    /// `a^{q^i}`.
    #[inline]
    pub fn frob(&self, a: u32, i: i64) -> u32 {
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        let i = i.rem_euclid(self.spec.r as i64) as usize;
        self.exp[((self.log[a as usize] as u64 * self.qpow_mod[i]) % n) as usize]
    }

    /// `Tr_{F_{q^r}/F_q}` on encodings.
    pub fn trace_raw(&self, a: u32) -> u32 {
        (0..self.spec.r as i64).fold(0, |acc, i| self.add(acc, self.frob(a, i)))
    }

    /// `N_{F_{q^r}/F_q}` on encodings.
    pub fn norm_raw(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        self.pow(a, n / (self.q as u64 - 1))
    }

    /// Smallest level whose range contains `v`.
    pub fn level_of(&self, v: u32) -> Level {
        if v < self.spec.p {
            Level::Fp
        } else if v < self.q {
            Level::Fq
        } else {
            Level::Fqr
        }
    }
}

/// An element of a tower field, tagged with the level it was declared in.
#[derive(Clone, Copy)]
pub struct FieldElem<'a> {
    tower: &'a FieldTower,
    level: Level,
    value: u32,
}

impl<'a> FieldElem<'a> {
    pub fn tower(&self) -> &'a FieldTower {
        self.tower
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// The integer encoding of the coordinates.
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coords(&self) -> Vec<u32> {
        self.tower.coords_of(self.value, self.level)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn in_level(&self, level: Level) -> bool {
        self.tower.contains(level, self.value)
    }

    /// Re-tags the element at another level, checking membership.
    pub fn to_level(self, level: Level) -> Result<Self> {
        self.tower.elem(level, self.value)
    }

    pub fn inv(&self) -> Option<Self> {
        self.tower.inv(self.value).map(|v| self.with(v))
    }

    pub fn pow(&self, k: u64) -> Self {
        self.with(self.tower.pow(self.value, k))
    }

    /// `x^{q^i}`; negative `i` inverts the Frobenius.
    pub fn frobenius(&self, i: i64) -> Self {
        self.with(self.tower.frob(self.value, i))
    }

    /// `Σ_{i<r} x^{q^i}`, an element of `F_q`.
    pub fn trace(&self) -> Self {
        let v = self.tower.trace_raw(self.value);
        assert!(v < self.tower.q, "trace left F_q");
        FieldElem { tower: self.tower, level: Level::Fq, value: v }
    }

    /// `Π_{i<r} x^{q^i}`, an element of `F_q`.
    pub fn norm(&self) -> Self {
        let v = self.tower.norm_raw(self.value);
        assert!(v < self.tower.q, "norm left F_q");
        FieldElem { tower: self.tower, level: Level::Fq, value: v }
    }

    fn with(&self, v: u32) -> Self {
        FieldElem { tower: self.tower, level: self.level, value: v }
    }

    fn join(&self, other: &Self, v: u32) -> Self {
        debug_assert!(std::ptr::eq(self.tower, other.tower), "elements of different towers");
        FieldElem { tower: self.tower, level: self.level.max(other.level), value: v }
    }
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.tower, other.tower) && self.value == other.value
    }
}

impl Eq for FieldElem<'_> {}

impl Hash for FieldElem<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl fmt::Debug for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self, self.level)
    }
}

impl fmt::Display for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value < self.tower.spec.p {
            write!(f, "{}", self.value)
        } else {
            let c: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
            write!(f, "({})", c.join(","))
        }
    }
}

impl<'a> Add for FieldElem<'a> {
    type Output = FieldElem<'a>;
    fn add(self, rhs: Self) -> Self {
        self.join(&rhs, self.tower.add(self.value, rhs.value))
    }
}

impl<'a> Sub for FieldElem<'a> {
    type Output = FieldElem<'a>;
    fn sub(self, rhs: Self) -> Self {
        self.join(&rhs, self.tower.sub(self.value, rhs.value))
    }
}

impl<'a> Mul for FieldElem<'a> {
    type Output = FieldElem<'a>;
    fn mul(self, rhs: Self) -> Self {
        self.join(&rhs, self.tower.mul(self.value, rhs.value))
    }
}

impl<'a> Neg for FieldElem<'a> {
    type Output = FieldElem<'a>;
    fn neg(self) -> Self {
        self.with(self.tower.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(p: u32, e: u32, r: u32) -> FieldTower {
        FieldTower::new(FieldSpec::new(p, e, r)).unwrap()
    }

    #[test]
    fn defining_polynomials_are_smallest() {
        assert_eq!(tower(3, 1, 3).fqr_modulus(), &[1, 2, 0, 1]);
        assert_eq!(tower(7, 1, 3).fqr_modulus(), &[2, 0, 0, 1]);
        assert_eq!(tower(3, 2, 1).fq_modulus(), &[1, 0, 1]);
        assert_eq!(tower(2, 1, 2).fqr_modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(FieldTower::new(FieldSpec::new(4, 1, 3)).unwrap_err(), Error::NonPrime(4));
        assert!(matches!(
            FieldTower::with_cap(FieldSpec::new(7, 1, 3), 100),
            Err(Error::CapExceeded { .. })
        ));
        assert!(FieldSpec::from_q(1, 3).is_err());
        assert_eq!(FieldSpec::from_q(9, 3).unwrap(), FieldSpec::new(3, 2, 3));
    }

    #[test]
    fn addition_matches_coordinates() {
        let t = tower(3, 2, 2);
        for a in t.enumerate(Level::Fqr) {
            for b in t.enumerate(Level::Fqr).step_by(7) {
                let want: Vec<u32> = a.coords().iter().zip(b.coords()).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!((a + b).coords(), want);
            }
        }
    }

    #[test]
    fn subfields_are_prefix_ranges() {
        let t = tower(2, 2, 3);
        for x in t.enumerate(Level::Fqr) {
            assert_eq!(x.frobenius(1) == x, x.value() < t.q());
            assert_eq!(x.pow(2) == x, x.value() < t.p());
        }
    }

    #[test]
    fn subfield_units_sizes() {
        let t = tower(2, 1, 6);
        assert_eq!(t.subfield_units(2).len(), 3);
        assert_eq!(t.subfield_units(3).len(), 7);
        assert_eq!(t.subfield_units(4).len(), 3);
        assert_eq!(t.subfield_units(6).len(), 63);
    }
}
