//! Basic J-invariants `J^{(δ)} = g_1^{δ_1}⋯g_{r-1}^{δ_{r-1}} / Δ^{δ_r}` and
//! valuations of their values and differences.
//!
//! A tuple is basic when `Σ δ_i(q^i - 1) = δ_r(q^r - 1)`, each
//! `0 ≤ δ_i ≤ (q^r - 1)/(q^{gcd(i,r)} - 1)`, `δ_r > 0` and the whole tuple
//! has gcd 1.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::drinfeld::{iso_count, DrinfeldModule};
use crate::error::{Error, Result};
use crate::ffield::Level;
use crate::ring::{AAlgebra, Ring};
use crate::twisted::{LocalElem, LocalRing};

/// Default cap on the number of candidate tuples examined.
pub const DELTA_SEARCH_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaTuple {
    pub deltas: Vec<u64>,
    pub delta_r: u64,
}

fn upper(q: u64, r: u32, i: u32) -> u64 {
    (q.pow(r) - 1) / (q.pow(i.gcd(&r)) - 1)
}

/// Independent check of both defining conditions.
pub fn conditions_hold(q: u64, deltas: &[u64], delta_r: u64) -> bool {
    let r = deltas.len() as u32 + 1;
    let lhs: u128 = deltas.iter().enumerate().map(|(i, &d)| d as u128 * (q as u128).pow(i as u32 + 1) - d as u128).sum();
    let rhs = delta_r as u128 * ((q as u128).pow(r) - 1);
    let bounded = deltas.iter().enumerate().all(|(i, &d)| d <= upper(q, r, i as u32 + 1));
    let g = deltas.iter().fold(delta_r, |g, &d| g.gcd(&d));
    lhs == rhs && bounded && delta_r > 0 && g == 1
}

impl DeltaTuple {
    /// Derives `δ_r` from the first condition and checks both.
    pub fn new(q: u64, deltas: Vec<u64>) -> Result<Self> {
        let r = deltas.len() as u32 + 1;
        if r < 2 || q < 2 {
            return Err(Error::InvalidParameter("need q >= 2 and r >= 2".into()));
        }
        let s: u128 = deltas.iter().enumerate().map(|(i, &d)| d as u128 * ((q as u128).pow(i as u32 + 1) - 1)).sum();
        let m = (q as u128).pow(r) - 1;
        if !s.is_multiple_of(m) {
            return Err(Error::BadDeltaTuple);
        }
        let delta_r = (s / m) as u64;
        if !conditions_hold(q, &deltas, delta_r) {
            return Err(Error::BadDeltaTuple);
        }
        Ok(DeltaTuple { deltas, delta_r })
    }

    pub fn rank(&self) -> usize {
        self.deltas.len() + 1
    }

    /// `Σ_{i<r} δ_i`.
    pub fn weight(&self) -> u64 {
        self.deltas.iter().sum()
    }
}

impl fmt::Display for DeltaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.deltas.iter().map(|x| x.to_string()).collect();
        write!(f, "({}; {})", d.join(","), self.delta_r)
    }
}

pub fn enumerate_delta_tuples(q: u64, r: usize) -> Result<Vec<DeltaTuple>> {
    enumerate_delta_tuples_capped(q, r, DELTA_SEARCH_CAP)
}

/// All basic tuples in lexicographic order of `(δ_1, …, δ_{r-1})`.
pub fn enumerate_delta_tuples_capped(q: u64, r: usize, cap: u64) -> Result<Vec<DeltaTuple>> {
    if q < 2 || r < 2 {
        return Err(Error::InvalidParameter("need q >= 2 and r >= 2".into()));
    }
    let r32 = r as u32;
    if (q as u128).checked_pow(r32).is_none_or(|v| v > u64::MAX as u128 / 4) {
        return Err(Error::CapExceeded { size: u128::MAX, cap });
    }
    let bounds: Vec<u64> = (1..r32).map(|i| upper(q, r32, i)).collect();
    let size = bounds.iter().fold(1u128, |acc, &b| acc.saturating_mul(b as u128 + 1));
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    let weights: Vec<u64> = (1..r32).map(|i| q.pow(i) - 1).collect();
    let modulus = q.pow(r32) - 1;
    let chunks: Vec<Vec<DeltaTuple>> = (0..=bounds[0])
        .into_par_iter()
        .map(|d1| {
            let mut found = Vec::new();
            let mut cur = vec![0u64; r - 1];
            cur[0] = d1;
            walk(&bounds, &weights, modulus, 1, d1 * weights[0], &mut cur, &mut found);
            found
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

fn walk(
    bounds: &[u64],
    weights: &[u64],
    modulus: u64,
    idx: usize,
    sum: u64,
    cur: &mut Vec<u64>,
    out: &mut Vec<DeltaTuple>,
) {
    if idx == bounds.len() {
        if sum.is_multiple_of(modulus) && sum > 0 {
            let delta_r = sum / modulus;
            let g = cur.iter().fold(delta_r, |g, &d| g.gcd(&d));
            if g == 1 {
                out.push(DeltaTuple { deltas: cur.clone(), delta_r });
            }
        }
        return;
    }
    for d in 0..=bounds[idx] {
        cur[idx] = d;
        walk(bounds, weights, modulus, idx + 1, sum + d * weights[idx], cur, out);
    }
    cur[idx] = 0;
}

/// `J` as an unreduced fraction.
#[derive(Clone, Debug, PartialEq)]
pub struct JValue<R: Ring> {
    pub num: R,
    pub den: R,
}

impl<R: Ring> JValue<R> {
    /// `num / den` when the denominator is invertible.
    pub fn value(&self) -> Option<R> {
        Some(self.num.times(&self.den.try_inverse()?))
    }

    /// Equality of fractions by cross-multiplication.
    pub fn same_as(&self, other: &Self) -> bool {
        self.num.times(&other.den) == other.num.times(&self.den)
    }
}

pub fn eval_j<R: Ring>(phi: &DrinfeldModule<R>, d: &DeltaTuple) -> Result<JValue<R>> {
    if d.rank() != phi.rank() {
        return Err(Error::RankMismatch(d.rank(), phi.rank()));
    }
    if phi.delta().is_zero() {
        return Err(Error::ZeroLeading);
    }
    let one = phi.delta().one_like();
    let num = d.deltas.iter().enumerate().fold(one, |acc, (i, &k)| acc.times(&phi.g(i + 1).pow(k)));
    let den = phi.delta().pow(d.delta_r);
    Ok(JValue { num, den })
}

/// `J^{(Q,0)}·(J^{(0,Q)})^q = (J^{(1,q)})^Q` with `Q = q²+q+1`.
pub fn check_relation_r3<R: Ring>(phi: &DrinfeldModule<R>, q: u64) -> Result<bool> {
    if phi.rank() != 3 {
        return Err(Error::RankMismatch(3, phi.rank()));
    }
    let big = q * q + q + 1;
    let j1 = eval_j(phi, &DeltaTuple::new(q, vec![big, 0])?)?;
    let j2 = eval_j(phi, &DeltaTuple::new(q, vec![0, big])?)?;
    let j3 = eval_j(phi, &DeltaTuple::new(q, vec![1, q])?)?;
    let lhs = JValue { num: j1.num.times(&j2.num.pow(q)), den: j1.den.times(&j2.den.pow(q)) };
    let rhs = JValue { num: j3.num.pow(big), den: j3.den.pow(big) };
    Ok(lhs.same_as(&rhs))
}

/// An exact rational valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValuationQ(pub Ratio<i64>);

#[derive(Serialize, Deserialize)]
struct RatioJson {
    num: i64,
    den: i64,
}

impl Serialize for ValuationQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatioJson { num: *self.0.numer(), den: *self.0.denom() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ValuationQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RatioJson::deserialize(d)?;
        if r.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(ValuationQ(Ratio::new(r.num, r.den)))
    }
}

impl ValuationQ {
    pub fn new(num: i64, den: i64) -> Self {
        ValuationQ(Ratio::new(num, den))
    }
}

impl fmt::Display for ValuationQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A valuation, with `+∞` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Valuation {
    Finite(ValuationQ),
    Infinite,
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// `ord(x) = (θ-adic order of x) / e`, read from the ring of `x`.
pub fn theta_valuation(x: &LocalElem<'_>) -> Valuation {
    match x.t_order() {
        Some(v) => Valuation::Finite(ValuationQ(v)),
        None => Valuation::Infinite,
    }
}

/// Truncation that keeps every valuation of interest: `4·e·max(δ)+1`.
pub fn default_truncation(e: usize, d: &DeltaTuple) -> usize {
    let m = d.deltas.iter().copied().chain([d.delta_r]).max().unwrap_or(1) as usize;
    4 * e * m + 1
}

/// `ord(J^{(δ)}(φ))` for a module over a truncated local ring with `Δ` a unit.
/// Fails when `J` vanishes modulo the truncation.
pub fn valuation_of_j(phi: &DrinfeldModule<LocalElem<'_>>, d: &DeltaTuple) -> Result<Valuation> {
    let j = eval_j(phi, d)?;
    let v = j.value().ok_or(Error::DivisionByZero)?;
    let n = phi.gamma().ring().truncation();
    match theta_valuation(&v) {
        Valuation::Infinite => {
            if d.deltas.iter().enumerate().any(|(i, &k)| k > 0 && phi.g(i + 1).is_zero()) {
                Ok(Valuation::Infinite)
            } else {
                Err(Error::PrecisionExhausted(n))
            }
        }
        finite => Ok(finite),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioOut {
    pub num: i64,
    pub den: i64,
}

impl From<Ratio<i64>> for RatioOut {
    fn from(r: Ratio<i64>) -> Self {
        RatioOut { num: *r.numer(), den: *r.denom() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseBound {
    pub j: usize,
    pub rhs: RatioOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JestReport {
    pub delta: DeltaTuple,
    /// `#Iso` modulo `θ^n` for `n = 1..=levels`.
    pub iso_counts: Vec<usize>,
    pub iso_sum: u64,
    /// Isomorphic over the whole coefficient ring (data are exact there).
    pub isomorphic: bool,
    /// `θ`-adic valuation of `J(φ) - J(ψ)`.
    pub lhs: Valuation,
    /// `Σ #Iso / (q^r - 1)`.
    pub rhs_general: RatioOut,
    /// `(Σδ_i) Σ #Iso / (q^r - 1)`, when `ψ_T = T + τ^r`.
    pub rhs_standard: Option<RatioOut>,
    /// `(Σ_{ℓ≠j} δ_ℓ) Σ #Iso / gcd(q^r - 1, q^j - 1)`, when one module is `T + τ^j + τ^r`.
    pub rhs_sparse: Option<SparseBound>,
    pub holds: bool,
}

fn sparse_index(m: &DrinfeldModule<LocalElem<'_>>) -> Option<usize> {
    let r = m.rank();
    let ones: Vec<usize> = (1..r).filter(|&i| !m.g(i).is_zero()).collect();
    (ones.len() == 1 && m.g(ones[0]).is_one() && *m.gamma() == m.gamma().t_image()).then(|| ones[0])
}

fn is_standard(m: &DrinfeldModule<LocalElem<'_>>) -> bool {
    (1..m.rank()).all(|i| m.g(i).is_zero()) && *m.gamma() == m.gamma().t_image()
}

/// Compares `ν(J(φ) - J(ψ))` against the isomorphism-count bounds using the
/// levels `1..=levels`. Coefficients are treated as exact polynomials in `θ`,
/// so the difference is evaluated without truncation loss.
pub fn check_jest_bound(
    phi: &DrinfeldModule<LocalElem<'_>>,
    psi: &DrinfeldModule<LocalElem<'_>>,
    d: &DeltaTuple,
    levels: usize,
) -> Result<JestReport> {
    let ring = phi.gamma().ring();
    if !std::ptr::eq(ring, psi.gamma().ring()) {
        return Err(Error::IncompatibleModulus("modules over different rings".into()));
    }
    let full = ring.truncation();
    if levels == 0 || levels > full {
        return Err(Error::BadLevel);
    }
    if d.rank() != phi.rank() {
        return Err(Error::RankMismatch(d.rank(), phi.rank()));
    }
    let iso_counts = (1..=levels).map(|n| iso_count(phi, psi, n)).collect::<Result<Vec<_>>>()?;
    let isomorphic = iso_count(phi, psi, full)? > 0;
    if iso_counts[levels - 1] > 0 && !isomorphic {
        return Err(Error::TruncationTooSmall(levels));
    }
    let iso_sum: u64 = iso_counts.iter().map(|&c| c as u64).sum();

    let r = phi.rank() as u32;
    let q = ring.tower().q() as i64;
    let units = q.pow(r) - 1;
    let rhs_general = Ratio::new(iso_sum as i64, units);
    let rhs_standard = is_standard(psi).then(|| rhs_general * d.weight() as i64);
    let rhs_sparse = sparse_index(psi).or_else(|| sparse_index(phi)).map(|j| {
        let other: u64 = d.deltas.iter().enumerate().filter(|(i, _)| i + 1 != j).map(|(_, &x)| x).sum();
        let g = units.gcd(&(q.pow(j as u32) - 1));
        (j, Ratio::new(other as i64 * iso_sum as i64, g))
    });

    let lhs = if isomorphic {
        Valuation::Infinite
    } else {
        exact_difference_order(phi, psi, d)?
    };
    let mut bounds = vec![rhs_general];
    bounds.extend(rhs_standard);
    bounds.extend(rhs_sparse.map(|(_, b)| b));
    let holds = bounds.iter().all(|b| lhs >= Valuation::Finite(ValuationQ(*b)));
    Ok(JestReport {
        delta: d.clone(),
        iso_counts,
        iso_sum,
        isomorphic,
        lhs,
        rhs_general: rhs_general.into(),
        rhs_standard: rhs_standard.map(Into::into),
        rhs_sparse: rhs_sparse.map(|(j, b)| SparseBound { j, rhs: b.into() }),
        holds,
    })
}

/// `θ`-adic order of `J(φ) - J(ψ)` for normalized modules, computed in a
/// ring deep enough to hold both products exactly.
fn exact_difference_order(
    phi: &DrinfeldModule<LocalElem<'_>>,
    psi: &DrinfeldModule<LocalElem<'_>>,
    d: &DeltaTuple,
) -> Result<Valuation> {
    if !phi.is_normalized() || !psi.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let ring = phi.gamma().ring();
    let depth = ring.truncation() * (d.weight() as usize).max(1) + 1;
    let deep = LocalRing::new(ring.tower(), depth, 1)?;
    let diff = monomial_in(&deep, phi, d).minus(&monomial_in(&deep, psi, d));
    Ok(match diff.order() {
        None => Valuation::Infinite,
        Some(k) => Valuation::Finite(ValuationQ::new(k as i64, 1)),
    })
}

fn monomial_in<'d>(deep: &'d LocalRing<'d>, m: &DrinfeldModule<LocalElem<'_>>, d: &DeltaTuple) -> LocalElem<'d> {
    d.deltas.iter().enumerate().fold(deep.one(), |acc, (i, &k)| acc.times(&m.g(i + 1).lift(deep).pow(k)))
}

/// A normalized pair `(φ, ψ)` over `ring` with `ψ = c·φ·c^{-1} + θ^k·u`
/// for random `c`, `k` and `u`.
pub fn random_normalized_pair<'a, G: rand::Rng>(
    rng: &mut G,
    ring: &'a LocalRing<'a>,
    r: usize,
) -> (DrinfeldModule<LocalElem<'a>>, DrinfeldModule<LocalElem<'a>>) {
    let tower = ring.tower();
    let n = ring.truncation();
    let size = tower.size(Level::Fqr);
    let random_elem = |rng: &mut G, from: usize| -> LocalElem<'a> {
        let mut v = vec![0u32; n];
        for c in v.iter_mut().skip(from) {
            if rng.gen_bool(0.5) {
                *c = rng.gen_range(0..size);
            }
        }
        ring.elem(v).expect("valid encodings")
    };
    let mut coeffs = vec![ring.theta_pow(ring.ramification())];
    for _ in 1..r {
        let g = if rng.gen_bool(0.2) { ring.zero() } else { random_elem(rng, 0) };
        coeffs.push(g);
    }
    coeffs.push(ring.one());
    let phi = DrinfeldModule::new(coeffs).expect("normalized module");
    let units = tower.subfield_units(r);
    let c = units[rng.gen_range(0..units.len())];
    let twisted = phi.twist(&ring.constant(c)).expect("unit twist");
    let k = rng.gen_range(0..=n);
    let mut coeffs = twisted.phi_t().coeffs().to_vec();
    for g in coeffs.iter_mut().take(r).skip(1) {
        if rng.gen_bool(0.7) {
            *g = g.plus(&random_elem(rng, k));
        }
    }
    let psi = DrinfeldModule::new(coeffs).expect("normalized module");
    (phi, psi)
}
