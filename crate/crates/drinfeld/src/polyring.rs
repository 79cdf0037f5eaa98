//! Dense univariate polynomials over tower fields.
//!
//! `A = F_q[T]` is the polynomials tagged [`Level::Fq`]; `O_H = F_{q^r}[T]`
//! the ones tagged [`Level::Fqr`]. Coefficients are stored low-to-high as
//! field encodings and kept trimmed, so the zero polynomial is empty.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::prime_factors;
use crate::error::{Error, Result};
use crate::ffield::{FieldElem, FieldTower, Level};
use crate::ring::{fq_value, AAlgebra, Ring};

#[derive(Clone)]
pub struct Poly<'a> {
    tower: &'a FieldTower,
    base: Level,
    coeffs: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl<'a> Poly<'a> {
    /// Builds a polynomial from encodings, checking they lie in `base`.
    pub fn new(tower: &'a FieldTower, base: Level, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.iter().any(|&c| !tower.contains(base, c)) {
            return Err(Error::NotInField);
        }
        Ok(Self::from_raw(tower, base, coeffs))
    }

    pub(crate) fn from_raw(tower: &'a FieldTower, base: Level, mut coeffs: Vec<u32>) -> Self {
        trim(&mut coeffs);
        debug_assert!(coeffs.iter().all(|&c| tower.contains(base, c)));
        Poly { tower, base, coeffs }
    }

    pub fn from_elems(tower: &'a FieldTower, coeffs: &[FieldElem<'a>]) -> Self {
        let base = coeffs.iter().map(|c| c.level()).max().unwrap_or(Level::Fq).max(Level::Fq);
        Self::from_raw(tower, base, coeffs.iter().map(|c| c.value()).collect())
    }

    pub fn zero(tower: &'a FieldTower, base: Level) -> Self {
        Poly { tower, base, coeffs: Vec::new() }
    }

    pub fn one(tower: &'a FieldTower, base: Level) -> Self {
        Poly { tower, base, coeffs: vec![1] }
    }

    /// The variable `T` in `A`.
    pub fn t(tower: &'a FieldTower) -> Self {
        Poly { tower, base: Level::Fq, coeffs: vec![0, 1] }
    }

    pub fn constant(c: FieldElem<'a>) -> Self {
        Self::from_raw(c.tower(), c.level().max(Level::Fq), vec![c.value()])
    }

    /// `c·T^d`.
    pub fn monomial(c: FieldElem<'a>, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c.value();
        Self::from_raw(c.tower(), c.level().max(Level::Fq), v)
    }

    pub fn tower(&self) -> &'a FieldTower {
        self.tower
    }

    pub fn base(&self) -> Level {
        self.base
    }

    /// Coefficient encodings, low-to-high.
    pub fn raw(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem<'a> {
        let v = self.coeffs.get(i).copied().unwrap_or(0);
        self.tower.elem(self.base, v).expect("coefficient in base")
    }

    pub fn coeffs(&self) -> Vec<FieldElem<'a>> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<FieldElem<'a>> {
        self.degree().map(|d| self.coeff(d))
    }

    pub fn in_level(&self, level: Level) -> bool {
        self.coeffs.iter().all(|&c| self.tower.contains(level, c))
    }

    /// Re-tags the polynomial, checking every coefficient lies in `level`.
    pub fn to_level(&self, level: Level) -> Result<Self> {
        Self::new(self.tower, level, self.coeffs.clone())
    }

    fn joined(&self, other: &Self) -> Level {
        debug_assert!(std::ptr::eq(self.tower, other.tower), "polynomials over different towers");
        self.base.max(other.base)
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        let t = self.tower;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                t.add(a, b)
            })
            .collect();
        Self::from_raw(t, self.joined(other), v)
    }

    pub fn neg_poly(&self) -> Self {
        let v = self.coeffs.iter().map(|&c| self.tower.neg(c)).collect();
        Self::from_raw(self.tower, self.base, v)
    }

    pub fn sub_poly(&self, other: &Self) -> Self {
        self.add_poly(&other.neg_poly())
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        let base = self.joined(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.tower, base);
        }
        let t = self.tower;
        let mut v = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = t.add(v[i + j], t.mul(a, b));
            }
        }
        Self::from_raw(t, base, v)
    }

    pub fn scale(&self, c: FieldElem<'a>) -> Self {
        let v = self.coeffs.iter().map(|&a| self.tower.mul(a, c.value())).collect();
        Self::from_raw(self.tower, self.base.max(c.level()), v)
    }

    /// Multiplies by `T^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Self::from_raw(self.tower, self.base, v)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(l.inv().expect("nonzero leading")),
        }
    }

    /// Quotient and remainder with `deg rem < deg d`.
    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let t = self.tower;
        let base = self.joined(d);
        let lead_inv = t.inv(d.coeffs[dd]).expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(t, base), Self::from_raw(t, base, rem)));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = t.mul(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            quot[top - dd] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                let k = top - dd + i;
                rem[k] = t.sub(rem[k], t.mul(c, di));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(t, base, quot), Self::from_raw(t, base, rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divmod(d)?.1)
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s)` with `g = gcd(self, m)` monic and `s·self ≡ g mod m`.
    fn half_ext_gcd(&self, m: &Self) -> (Self, Self) {
        let base = self.joined(m);
        let (mut r0, mut r1) = (self.clone(), m.clone());
        let (mut s0, mut s1) = (Self::one(self.tower, base), Self::zero(self.tower, base));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            let s = s0.sub_poly(&q.mul_poly(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        match r0.leading() {
            None => (r0, s0),
            Some(l) => {
                let li = l.inv().expect("nonzero");
                (r0.scale(li), s0.scale(li))
            }
        }
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s) = self.half_ext_gcd(m);
        if g.coeffs == [1] {
            Some(s.rem(m).expect("nonzero modulus"))
        } else {
            None
        }
    }

    pub fn eval(&self, x: FieldElem<'a>) -> FieldElem<'a> {
        let t = self.tower;
        let v = self.coeffs.iter().rev().fold(0, |acc, &c| t.add(t.mul(acc, x.value()), c));
        t.elem(self.base.max(x.level()), v).expect("value in field")
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.tower, self.base);
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_poly(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul_poly(&b);
            }
        }
        acc
    }

    pub fn pow_mod(&self, mut n: u64, m: &Self) -> Result<Self> {
        let mut acc = Self::one(self.tower, self.base).rem(m)?;
        let mut b = self.rem(m)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_poly(&b).rem(m)?;
            }
            n >>= 1;
            if n > 0 {
                b = b.mul_poly(&b).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// `σ^i` applied to every coefficient.
    pub fn frobenius_poly(&self, i: i64) -> Self {
        let v = self.coeffs.iter().map(|&c| self.tower.frob(c, i)).collect();
        Self::from_raw(self.tower, self.base, v)
    }

    /// `Π_{i<r} σ^i(f)`, an element of `A`.
    pub fn norm(&self) -> Self {
        let r = self.tower.r() as i64;
        let n = (1..r).fold(self.clone(), |acc, i| acc.mul_poly(&self.frobenius_poly(i)));
        n.to_level(Level::Fq).expect("norm lies in F_q[T]")
    }

    /// `Σ_{i<r} σ^i(f)`, an element of `A`.
    pub fn trace(&self) -> Self {
        let r = self.tower.r() as i64;
        let s = (1..r).fold(self.clone(), |acc, i| acc.add_poly(&self.frobenius_poly(i)));
        s.to_level(Level::Fq).expect("trace lies in F_q[T]")
    }

    /// Irreducibility over the base level, by Rabin's test.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let f = self.monic();
        let size = self.tower.size(self.base) as u64;
        let x = Self::from_raw(self.tower, self.base, vec![0, 1]);
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(x.clone());
        for i in 1..=d {
            let next = powers[i - 1].pow_mod(size, &f).expect("nonzero modulus");
            powers.push(next);
        }
        if !powers[d].sub_poly(&x).rem(&f).expect("nonzero modulus").is_zero() {
            return false;
        }
        prime_factors(d as u64).into_iter().all(|l| {
            let h = powers[d / l as usize].sub_poly(&x);
            h.gcd(&f).degree() == Some(0)
        })
    }

    /// Coefficients as coordinate vectors over `F_p`, low-to-high.
    pub fn to_coord_lists(&self) -> Vec<Vec<u32>> {
        self.coeffs.iter().map(|&c| self.tower.coords_of(c, self.base)).collect()
    }

    /// The polynomial with the given index in the lexicographic enumeration
    /// of polynomials of length `len` over `level` (coefficient 0 varies fastest).
    pub fn from_index(tower: &'a FieldTower, level: Level, len: usize, mut idx: u64) -> Self {
        let b = tower.size(level) as u64;
        let v = (0..len)
            .map(|_| {
                let c = (idx % b) as u32;
                idx /= b;
                c
            })
            .collect();
        Self::from_raw(tower, level, v)
    }

    /// All polynomials of degree `≤ max_deg` over `level`; only zero when
    /// `max_deg < 0`.
    pub fn up_to_degree(tower: &'a FieldTower, level: Level, max_deg: i64) -> impl Iterator<Item = Poly<'a>> {
        let len = (max_deg + 1).max(0) as usize;
        let count = (tower.size(level) as u64).pow(len as u32);
        (0..count).map(move |i| Self::from_index(tower, level, len, i))
    }

    /// All monic polynomials of degree exactly `d` over `level`.
    pub fn monic_of_degree(tower: &'a FieldTower, level: Level, d: usize) -> impl Iterator<Item = Poly<'a>> {
        let count = (tower.size(level) as u64).pow(d as u32);
        (0..count).map(move |i| {
            let mut p = Self::from_index(tower, level, d, i);
            p.coeffs.resize(d, 0);
            p.coeffs.push(1);
            p
        })
    }
}

impl PartialEq for Poly<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.tower, other.tower) && self.coeffs == other.coeffs
    }
}

impl Eq for Poly<'_> {}

impl Hash for Poly<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for i in (0..self.coeffs.len()).rev() {
            if self.coeffs[i] == 0 {
                continue;
            }
            let c = self.coeff(i);
            let var = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            terms.push(match (c.is_one(), i) {
                (_, 0) => c.to_string(),
                (true, _) => var,
                (false, _) => format!("{c}{var}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl<'a> Add for &Poly<'a> {
    type Output = Poly<'a>;
    fn add(self, rhs: Self) -> Poly<'a> {
        self.add_poly(rhs)
    }
}

impl<'a> Sub for &Poly<'a> {
    type Output = Poly<'a>;
    fn sub(self, rhs: Self) -> Poly<'a> {
        self.sub_poly(rhs)
    }
}

impl<'a> Mul for &Poly<'a> {
    type Output = Poly<'a>;
    fn mul(self, rhs: Self) -> Poly<'a> {
        self.mul_poly(rhs)
    }
}

impl<'a> Neg for &Poly<'a> {
    type Output = Poly<'a>;
    fn neg(self) -> Poly<'a> {
        self.neg_poly()
    }
}

impl<'a> Ring for Poly<'a> {
    fn zero_like(&self) -> Self {
        Self::zero(self.tower, self.base)
    }
    fn one_like(&self) -> Self {
        Self::one(self.tower, self.base)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add_poly(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub_poly(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul_poly(rhs)
    }
    fn negated(&self) -> Self {
        self.neg_poly()
    }
    fn frob_q(&self) -> Self {
        let q = self.tower.q() as usize;
        let mut v = vec![0u32; self.coeffs.len().saturating_sub(1) * q + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * q] = self.tower.frob(c, 1);
        }
        Self::from_raw(self.tower, self.base, v)
    }
    fn from_fq(&self, c: FieldElem<'_>) -> Self {
        Self::from_raw(self.tower, self.base, vec![fq_value(c)])
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            let v = self.tower.inv(self.coeffs[0])?;
            Some(Self::from_raw(self.tower, self.base, vec![v]))
        } else {
            None
        }
    }
}

impl AAlgebra for Poly<'_> {
    fn t_image(&self) -> Self {
        Self::from_raw(self.tower, self.base, vec![0, 1])
    }
}

/// A prime `(π)` of `A`, with `π` monic irreducible over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal<'a> {
    pi: Poly<'a>,
}

impl<'a> PrimeIdeal<'a> {
    pub fn new(pi: Poly<'a>) -> Result<Self> {
        let pi = pi.to_level(Level::Fq)?;
        if !pi.is_monic() {
            return Err(Error::NotMonic);
        }
        if !pi.is_irreducible() {
            return Err(Error::NotIrreducible(pi.to_string()));
        }
        Ok(PrimeIdeal { pi })
    }

    pub fn pi(&self) -> &Poly<'a> {
        &self.pi
    }

    pub fn degree(&self) -> usize {
        self.pi.degree().expect("nonzero prime")
    }

    /// The class of `f` in `A/π` (or `O_H/π` for `F_{q^r}` coefficients).
    pub fn reduce<'b>(&'b self, f: &Poly<'a>) -> ResidueElem<'b>
    where
        'a: 'b,
    {
        ResidueElem { prime: self, value: f.rem(&self.pi).expect("nonzero modulus") }
    }
}

/// An element of `A/π`, stored as its reduced representative.
#[derive(Clone)]
pub struct ResidueElem<'b> {
    prime: &'b PrimeIdeal<'b>,
    value: Poly<'b>,
}

impl<'b> ResidueElem<'b> {
    pub fn value(&self) -> &Poly<'b> {
        &self.value
    }

    pub fn prime(&self) -> &'b PrimeIdeal<'b> {
        self.prime
    }

    fn wrap(&self, value: Poly<'b>) -> Self {
        ResidueElem { prime: self.prime, value: value.rem(&self.prime.pi).expect("nonzero modulus") }
    }
}

impl PartialEq for ResidueElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.prime.pi == other.prime.pi && self.value == other.value
    }
}

impl fmt::Debug for ResidueElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.value, self.prime.pi)
    }
}

impl<'b> Ring for ResidueElem<'b> {
    fn zero_like(&self) -> Self {
        ResidueElem { prime: self.prime, value: self.value.zero_like() }
    }
    fn one_like(&self) -> Self {
        self.wrap(self.value.one_like())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        ResidueElem { prime: self.prime, value: self.value.add_poly(&rhs.value) }
    }
    fn minus(&self, rhs: &Self) -> Self {
        ResidueElem { prime: self.prime, value: self.value.sub_poly(&rhs.value) }
    }
    fn times(&self, rhs: &Self) -> Self {
        self.wrap(self.value.mul_poly(&rhs.value))
    }
    fn frob_q(&self) -> Self {
        let q = self.value.tower().q() as u64;
        let v = self.value.pow_mod(q, &self.prime.pi).expect("nonzero modulus");
        ResidueElem { prime: self.prime, value: v }
    }
    fn from_fq(&self, c: FieldElem<'_>) -> Self {
        self.wrap(self.value.from_fq(c))
    }
    fn try_inverse(&self) -> Option<Self> {
        let v = self.value.inverse_mod(&self.prime.pi)?;
        Some(ResidueElem { prime: self.prime, value: v })
    }
}

impl AAlgebra for ResidueElem<'_> {
    fn t_image(&self) -> Self {
        self.wrap(self.value.t_image())
    }
}
