//! Twisted polynomials `L{τ}` with `τα = α^q τ`, and the truncated local
//! rings `k[θ]/(θ^N)` with `T = θ^e` used as coefficient rings.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FieldElem, FieldTower, Level};
use crate::polyring::{Poly, PrimeIdeal, ResidueElem};
use crate::ring::{fq_value, AAlgebra, Ring};

/// `k[θ]/(θ^N)` with `k` the top field of `tower` and `T = θ^e`.
#[derive(Debug)]
pub struct LocalRing<'a> {
    tower: &'a FieldTower,
    truncation: usize,
    ramification: usize,
}

impl<'a> LocalRing<'a> {
    pub fn new(tower: &'a FieldTower, truncation: usize, ramification: usize) -> Result<Self> {
        if truncation == 0 || ramification == 0 {
            return Err(Error::InvalidParameter("truncation and ramification must be positive".into()));
        }
        Ok(LocalRing { tower, truncation, ramification })
    }

    pub fn tower(&self) -> &'a FieldTower {
        self.tower
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn ramification(&self) -> usize {
        self.ramification
    }

    /// Element from residue-field encodings of the `θ^i` coefficients.
    pub fn elem(&self, coeffs: Vec<u32>) -> Result<LocalElem<'_>> {
        if coeffs.iter().any(|&c| !self.tower.contains(Level::Fqr, c)) {
            return Err(Error::NotInField);
        }
        Ok(LocalElem::from_raw(self, coeffs))
    }

    pub fn zero(&self) -> LocalElem<'_> {
        LocalElem { ring: self, coeffs: Vec::new() }
    }

    pub fn one(&self) -> LocalElem<'_> {
        LocalElem::from_raw(self, vec![1])
    }

    pub fn constant(&self, c: FieldElem<'_>) -> LocalElem<'_> {
        LocalElem::from_raw(self, vec![c.value()])
    }

    pub fn theta(&self) -> LocalElem<'_> {
        self.theta_pow(1)
    }

    /// `θ^k` (zero once `k ≥ N`).
    pub fn theta_pow(&self, k: usize) -> LocalElem<'_> {
        let mut v = vec![0; k + 1];
        v[k] = 1;
        LocalElem::from_raw(self, v)
    }

    /// Image of a polynomial in `T` (coefficients in the tower).
    pub fn from_t_poly(&self, f: &Poly<'_>) -> LocalElem<'_> {
        let e = self.ramification;
        let mut v = vec![0; f.raw().len().saturating_sub(1) * e + 1];
        for (i, &c) in f.raw().iter().enumerate() {
            v[i * e] = c;
        }
        LocalElem::from_raw(self, v)
    }
}

/// An element of a [`LocalRing`], as `θ`-coefficients of degree `< N`.
#[derive(Clone)]
pub struct LocalElem<'a> {
    ring: &'a LocalRing<'a>,
    coeffs: Vec<u32>,
}

impl<'a> LocalElem<'a> {
    fn from_raw(ring: &'a LocalRing<'a>, mut coeffs: Vec<u32>) -> Self {
        coeffs.truncate(ring.truncation);
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        LocalElem { ring, coeffs }
    }

    pub fn ring(&self) -> &'a LocalRing<'a> {
        self.ring
    }

    pub fn raw(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem<'a> {
        let v = self.coeffs.get(i).copied().unwrap_or(0);
        self.ring.tower.elem(Level::Fqr, v).expect("residue element")
    }

    /// `θ`-adic order, `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Reduction modulo `θ^n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_raw(self.ring, self.coeffs[..n.min(self.coeffs.len())].to_vec())
    }

    /// Same element in another ring over the same tower (truncating if smaller).
    pub fn lift<'b>(&self, ring: &'b LocalRing<'b>) -> LocalElem<'b> {
        assert!(std::ptr::eq(ring.tower, self.ring.tower), "rings over different towers");
        LocalElem::from_raw(ring, self.coeffs.clone())
    }

    /// `θ`-adic order divided by the ramification index; `None` for zero.
    pub fn t_order(&self) -> Option<num_rational::Ratio<i64>> {
        self.order().map(|k| num_rational::Ratio::new(k as i64, self.ring.ramification as i64))
    }
}

impl PartialEq for LocalElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ring, other.ring) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for LocalElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| format!("{}θ^{i}", self.coeff(i)))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<'a> Ring for LocalElem<'a> {
    fn zero_like(&self) -> Self {
        self.ring.zero()
    }
    fn one_like(&self) -> Self {
        self.ring.one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let t = self.ring.tower;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| t.add(self.coeffs.get(i).copied().unwrap_or(0), rhs.coeffs.get(i).copied().unwrap_or(0)))
            .collect();
        Self::from_raw(self.ring, v)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn negated(&self) -> Self {
        let t = self.ring.tower;
        Self::from_raw(self.ring, self.coeffs.iter().map(|&c| t.neg(c)).collect())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return self.ring.zero();
        }
        let t = self.ring.tower;
        let n = (self.coeffs.len() + rhs.coeffs.len() - 1).min(self.ring.truncation);
        let mut v = vec![0u32; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate().take(n - i) {
                v[i + j] = t.add(v[i + j], t.mul(a, b));
            }
        }
        Self::from_raw(self.ring, v)
    }
    fn frob_q(&self) -> Self {
        let t = self.ring.tower;
        let q = t.q() as usize;
        let mut v = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = i * q;
            if k >= self.ring.truncation {
                break;
            }
            if v.len() <= k {
                v.resize(k + 1, 0);
            }
            v[k] = t.frob(c, 1);
        }
        Self::from_raw(self.ring, v)
    }
    fn from_fq(&self, c: FieldElem<'_>) -> Self {
        Self::from_raw(self.ring, vec![fq_value(c)])
    }
    fn try_inverse(&self) -> Option<Self> {
        let t = self.ring.tower;
        let c0 = *self.coeffs.first()?;
        let inv0 = t.inv(c0)?;
        // Power-series inverse, coefficient by coefficient.
        let n = self.ring.truncation;
        let mut out = vec![0u32; n];
        out[0] = inv0;
        for k in 1..n {
            let mut s = 0;
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s = t.add(s, t.mul(self.coeffs[j], out[k - j]));
            }
            out[k] = t.neg(t.mul(s, inv0));
        }
        Some(Self::from_raw(self.ring, out))
    }
}

impl AAlgebra for LocalElem<'_> {
    fn t_image(&self) -> Self {
        self.ring.theta_pow(self.ring.ramification)
    }
}

/// An element `Σ a_i τ^i` of `R{τ}`; index `i` holds the `τ^i` coefficient.
#[derive(Clone, PartialEq)]
pub struct TwistedPoly<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> TwistedPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TwistedPoly { coeffs }
    }

    pub fn zero() -> Self {
        TwistedPoly { coeffs: Vec::new() }
    }

    /// `c·τ^n`.
    pub fn monomial(c: R, n: usize) -> Self {
        let mut v = vec![c.zero_like(); n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&R> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_tau(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest `i` with a nonzero `τ^i` coefficient.
    pub fn tau_valuation(&self) -> Result<usize> {
        self.coeffs.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroInput)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.negated()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `(aτ^n)(bτ^m) = a·b^{q^n}·τ^{n+m}`, extended bilinearly.
    pub fn tmul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        let mut twisted = rhs.coeffs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                twisted = twisted.iter().map(|b| b.frob_q()).collect();
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in twisted.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn tpow(&self, n: usize, one: &R) -> Self {
        (0..n).fold(Self::monomial(one.one_like(), 0), |acc, _| acc.tmul(self))
    }

    /// Coefficientwise image under a ring map.
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> TwistedPoly<S> {
        TwistedPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<'a> TwistedPoly<LocalElem<'a>> {
    /// Coefficientwise reduction modulo `θ^n`.
    pub fn reduce_theta(&self, n: usize) -> Result<Self> {
        let ring = self.coeffs.first().map(|c| c.ring());
        if n == 0 || ring.is_some_and(|r| n > r.truncation()) {
            return Err(Error::IncompatibleModulus(format!("θ^{n} outside the truncation")));
        }
        Ok(self.map_coeffs(|c| c.truncate(n)))
    }
}

impl<'a> TwistedPoly<Poly<'a>> {
    /// Coefficientwise reduction modulo a prime of `A`.
    pub fn reduce_prime<'b>(&self, prime: &'b PrimeIdeal<'a>) -> Result<TwistedPoly<ResidueElem<'b>>>
    where
        'a: 'b,
    {
        if let Some(c) = self.coeffs.first() {
            if !std::ptr::eq(c.tower(), prime.pi().tower()) {
                return Err(Error::IncompatibleModulus("prime over another tower".into()));
            }
        }
        Ok(self.map_coeffs(|c| prime.reduce(c)))
    }
}

impl<R: Ring> fmt::Debug for TwistedPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c:?})τ^{i}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
