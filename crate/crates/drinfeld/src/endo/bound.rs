//! Lower bounds on valuations of singular moduli, and the norm-trace count.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::search::{count_mn, DegreeBounds, SearchOptions};
use super::MnFilter;
use crate::arith::prime_power;
use crate::drinfeld::cm_from_rank1;
use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, FieldTower, Level, DEFAULT_CAP};
use crate::jinv::{default_truncation, valuation_of_j, DeltaTuple, RatioOut, Valuation};
use crate::polyring::{Poly, PrimeIdeal};
use crate::ring::Ring;
use crate::twisted::{LocalRing, TwistedPoly};

/// The statement `value ≥ a − b·√q`, decided without floating point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SqrtLine {
    pub q: u64,
    pub a: RatioOut,
    pub b: RatioOut,
    pub value: RatioOut,
    pub holds: bool,
}

impl SqrtLine {
    pub fn new(q: u64, a: Ratio<i64>, b: Ratio<i64>, value: Ratio<i64>) -> Self {
        let holds = value >= a || {
            let gap = a - value;
            gap * gap <= b * b * Ratio::from_integer(q as i64)
        };
        SqrtLine { q, a: a.into(), b: b.into(), value: value.into(), holds }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KatzReport {
    pub q: u64,
    /// `#{x ∈ F_{q^3} : N(x) = 1, Tr(x) = 0}`.
    pub count: u64,
    /// `(q² − 1)/(q − 1)`.
    pub center: u64,
    /// `gcd(3, q − 1)`.
    pub g: u64,
    /// `|count − center| ≤ g·√q`.
    pub within_bound: bool,
    /// `count ≥ center − g·√q`.
    pub lower_bound: bool,
}

/// Exact `N_3(0,1)` by enumerating `F_{q^3}`.
pub fn katz_count(q: u64, cap: u64) -> Result<KatzReport> {
    let spec = FieldSpec::from_q(q, 3)?;
    let tower = FieldTower::with_cap(spec, cap)?;
    let count = (0..tower.size(Level::Fqr))
        .filter(|&v| tower.norm_raw(v) == 1 && tower.trace_raw(v) == 0)
        .count() as u64;
    let center = q + 1;
    let g = num_integer::gcd(3, q - 1);
    let dev = count.abs_diff(center) as u128;
    let within_bound = dev * dev <= (g as u128).pow(2) * q as u128;
    let lower_bound = count >= center || within_bound;
    Ok(KatzReport { q, count, center, g, within_bound, lower_bound })
}

/// Parameters of a bound report. Polynomials are coefficient lists over
/// `F_q`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    pub q: u64,
    pub r: usize,
    pub r_sep: usize,
    pub e: usize,
    pub delta: DeltaTuple,
    pub radicand: Vec<u32>,
    pub pi: Vec<u32>,
    pub max_m: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub q: u64,
    pub r: usize,
    pub r_sep: usize,
    pub e: usize,
    pub delta: Vec<u64>,
    pub delta_r: u64,
    /// Levels `m·e + 1`.
    pub levels: Vec<usize>,
    pub counts: Vec<u64>,
    /// Whether every level beyond the last one provably contributes nothing.
    pub tail_zero: bool,
    pub rhs: RatioOut,
    pub lhs: Option<RatioOut>,
    pub lhs_infinite: bool,
    pub equality: Option<bool>,
    pub holds: Option<bool>,
}

impl BoundReport {
    pub fn rhs_ratio(&self) -> Ratio<i64> {
        Ratio::new(self.rhs.num, self.rhs.den)
    }
}

/// The first `m` at which every coordinate after the first is forced to
/// vanish. From there on only diagonal matrices remain.
pub fn auto_max_m(radicand_deg: usize, pi_deg: usize, r: usize) -> usize {
    (0..)
        .find(|&m| DegreeBounds::derive(radicand_deg, pi_deg, r, m).bounds[1..].iter().all(|&b| b < 0))
        .expect("bounds decrease with m")
}

fn rhs_value(p: &BoundParams, total: u64) -> Result<Ratio<i64>> {
    let qr = (p.q as i64).checked_pow(p.r as u32).ok_or_else(|| Error::InvalidParameter("q^r overflows".into()))?;
    let num = (p.delta.weight() as i64)
        .checked_mul(p.q as i64 - 1)
        .and_then(|v| v.checked_mul(total as i64))
        .ok_or_else(|| Error::InvalidParameter("bound overflows".into()))?;
    let den = (p.r_sep as i64) * (qr - 1) * p.e as i64;
    Ok(Ratio::new(num, den))
}

fn validate(p: &BoundParams) -> Result<()> {
    if prime_power(p.q).is_none() {
        return Err(Error::NotPrimePower(p.q));
    }
    if p.r_sep == 0 || !p.r.is_multiple_of(p.r_sep) {
        return Err(Error::InvalidParameter(format!("r_sep = {} must divide r = {}", p.r_sep, p.r)));
    }
    if p.e == 0 || !p.r.is_multiple_of(p.e) {
        return Err(Error::InvalidParameter(format!("e = {} must divide r = {}", p.e, p.r)));
    }
    if p.delta.rank() != p.r {
        return Err(Error::RankMismatch(p.delta.rank(), p.r));
    }
    Ok(())
}

/// Sums `#M_{m·e+1}` for `m = 0..=max_m` into the lower bound and compares
/// it with `lhs` when one is given.
pub fn bound_report(p: &BoundParams, lhs: Option<Valuation>, opts: &SearchOptions) -> Result<BoundReport> {
    validate(p)?;
    let tower = FieldTower::new(FieldSpec::from_q(p.q, p.r as u32)?)?;
    let radicand = Poly::new(&tower, Level::Fq, p.radicand.clone())?;
    if radicand.is_zero() {
        return Err(Error::ZeroInput);
    }
    let pi_poly = Poly::new(&tower, Level::Fq, p.pi.clone())?;
    let pi = PrimeIdeal::new(pi_poly)?;
    if num_integer::gcd(pi.degree(), p.r) != 1 {
        return Err(Error::NotSupersingular { deg: pi.degree(), r: p.r });
    }
    let dd = radicand.degree().expect("nonzero");
    let max_m = p.max_m.unwrap_or_else(|| auto_max_m(dd, pi.degree(), p.r));
    let mut levels = Vec::new();
    let mut counts = Vec::new();
    for m in 0..=max_m {
        let n = m * p.e + 1;
        let c = count_mn(&radicand, &pi, MnFilter::new(n, p.e)?, None, opts)?;
        levels.push(n);
        counts.push(c.count);
    }
    let tail_zero = max_m >= auto_max_m(dd, pi.degree(), p.r) && dd % p.r != 0;
    let rhs = rhs_value(p, counts.iter().sum())?;
    let (lhs_out, lhs_infinite, equality, holds) = match lhs {
        None => (None, false, None, None),
        Some(Valuation::Infinite) => (None, true, Some(false), Some(true)),
        Some(Valuation::Finite(v)) => (Some(v.0.into()), false, Some(v.0 == rhs), Some(v.0 >= rhs)),
    };
    Ok(BoundReport {
        q: p.q,
        r: p.r,
        r_sep: p.r_sep,
        e: p.e,
        delta: p.delta.deltas.clone(),
        delta_r: p.delta.delta_r,
        levels,
        counts,
        tail_zero,
        rhs: rhs.into(),
        lhs: lhs_out,
        lhs_infinite,
        equality,
        holds,
    })
}

/// `ord(J^{(δ)})` for the CM module induced by `θ + τ` with `θ^e = T`.
pub fn explicit_cm_lhs(q: u64, e: usize, delta: &DeltaTuple) -> Result<Valuation> {
    if delta.rank() != e {
        return Err(Error::RankMismatch(delta.rank(), e));
    }
    let tower = FieldTower::with_cap(FieldSpec::from_q(q, 1)?, DEFAULT_CAP)?;
    let ring = LocalRing::new(&tower, default_truncation(e, delta), e)?;
    let phi = cm_from_rank1(&TwistedPoly::new(vec![ring.theta(), ring.one()]), e)?;
    debug_assert!(phi.delta().is_one());
    valuation_of_j(&phi, delta)
}
