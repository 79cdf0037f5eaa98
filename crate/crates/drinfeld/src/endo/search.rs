//! Exhaustive counting of `M_n` over bounded degree windows.
//!
//! Degree bounds. When `gcd(deg π, r) = 1` the cyclic algebra is a division
//! algebra at `∞`, with `w(τ) = deg π / r` measured in `T`-degrees. The
//! summands `x_k τ^{k−1}` have pairwise distinct fractional degrees, so the
//! degree of `α = Σ x_k τ^{k−1}` is the maximum of theirs, and the reduced
//! norm `Δ` has degree `r` times that. Hence
//! `deg x_k ≤ ⌊(deg Δ − (k−1)·deg π) / r⌋`, and with `x_k = π^m x_k'`
//! for `k ≥ 2` the bound on `x_k'` drops by `m·deg π`. The window is then
//! widened by one degree per coordinate as a runtime audit.
//!
//! The first coordinate only ranges over polynomials whose coefficients
//! have trace zero: that is exactly the vanishing of `e_1 = Tr(x_1)`.

use rayon::prelude::*;
use serde::Serialize;

use super::raw::{self, MinorPlan};
use super::{radical_is_irreducible, MnFilter, MAX_RANK};
use crate::error::{Error, Result};
use crate::ffield::{FieldTower, Level};
use crate::polyring::{Poly, PrimeIdeal};

/// Largest number of candidates a single search will visit by default.
pub const SEARCH_CAP: u64 = 50_000_000;
/// Widened windows above this size are reported as skipped.
pub const AUDIT_CAP: u64 = 20_000_000;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub workers: usize,
    pub cap: u64,
    pub audit: bool,
    pub audit_cap: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 1, cap: SEARCH_CAP, audit: true, audit_cap: AUDIT_CAP }
    }
}

impl SearchOptions {
    pub fn with_workers(workers: usize) -> Self {
        SearchOptions { workers, ..Self::default() }
    }
}

/// Inclusive degree bounds for `x_1, x_2', …, x_r'`; negative means zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    pub bounds: Vec<i64>,
}

impl DegreeBounds {
    pub fn derive(radicand_deg: usize, pi_deg: usize, r: usize, m: usize) -> Self {
        let (dd, dp, ri) = (radicand_deg as i64, pi_deg as i64, r as i64);
        let bounds = (0..ri)
            .map(|k| {
                let b = (dd - k * dp).div_euclid(ri);
                if k == 0 {
                    b
                } else {
                    b - m as i64 * dp
                }
            })
            .collect();
        DegreeBounds { bounds }
    }

    /// One more degree on coordinate `k`, or on all of them.
    pub fn widened(&self, k: Option<usize>) -> Self {
        let bounds = self
            .bounds
            .iter()
            .enumerate()
            .map(|(i, &b)| if k.is_none() || k == Some(i) { b.max(-1) + 1 } else { b })
            .collect();
        DegreeBounds { bounds }
    }

    /// Number of candidates visited, counting only trace-zero `x_1`.
    pub fn window_size(&self, q: u64, r: usize) -> u128 {
        self.bounds
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                let len = (b + 1).max(0) as u32;
                let per = if k == 0 { (q as u128).pow(r as u32 - 1) } else { (q as u128).pow(r as u32) };
                per.checked_pow(len).unwrap_or(u128::MAX)
            })
            .fold(1u128, |a, b| a.saturating_mul(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WideningStatus {
    Passed,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Widening {
    /// `None` for the joint widening of every coordinate.
    pub coordinate: Option<usize>,
    pub candidates: u128,
    pub status: WideningStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub widenings: Vec<Widening>,
}

impl AuditReport {
    pub fn skipped(&self) -> usize {
        self.widenings.iter().filter(|w| w.status == WideningStatus::Skipped).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub e: usize,
    pub m: usize,
    pub bounds: Vec<i64>,
    pub candidates: u128,
    pub count: u64,
    pub audit: Option<AuditReport>,
}

/// Which exponent of `π` multiplies `Tr(x_2' σ(x_3'))` in the second
/// coefficient equation for `r = 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PiExponent {
    /// `2n + 1`, i.e. `2m + 3`.
    Plus,
    /// `2n − 1`, i.e. `2m + 1`; this is what the matrix entries give.
    Minus,
}

impl PiExponent {
    pub fn exponent(self, m: usize) -> usize {
        match self {
            PiExponent::Plus => 2 * m + 3,
            PiExponent::Minus => 2 * m + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct R3Report {
    pub n: usize,
    pub m: usize,
    pub exponent: PiExponent,
    pub pi_power: usize,
    pub candidates: u128,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentAudit {
    pub n: usize,
    pub m: usize,
    pub matrix: u64,
    pub plus: u64,
    pub minus: u64,
    pub plus_agrees: bool,
    pub minus_agrees: bool,
}

impl ExponentAudit {
    pub fn discrepancy(&self) -> bool {
        !(self.plus_agrees && self.minus_agrees)
    }
}

struct Setup<'t> {
    tower: &'t FieldTower,
    r: usize,
    m: usize,
    pi: Vec<u32>,
    radicand: Vec<u32>,
    bounds: DegreeBounds,
    trace_zero: Vec<u32>,
    all: Vec<u32>,
}

fn prepare<'t>(radicand: &Poly<'t>, pi: &PrimeIdeal<'t>, filter: MnFilter, bounds: Option<DegreeBounds>) -> Result<Setup<'t>> {
    let tower = pi.pi().tower();
    let r = tower.r();
    if !(2..=MAX_RANK).contains(&r) {
        return Err(Error::Unsupported(format!("rank {r} outside 2..={MAX_RANK}")));
    }
    if !std::ptr::eq(radicand.tower(), tower) {
        return Err(Error::IncompatibleModulus("radicand and π live in different towers".into()));
    }
    let dp = pi.degree();
    if num_integer::gcd(dp, r) != 1 {
        return Err(Error::NotSupersingular { deg: dp, r });
    }
    if !radical_is_irreducible(radicand, r)? {
        return Err(Error::ReducibleRadicand);
    }
    let m = filter.m();
    let derived = DegreeBounds::derive(radicand.degree().expect("nonzero"), dp, r, m);
    let bounds = match bounds {
        Some(b) if b.bounds.len() != r => return Err(Error::WrongLength { expected: r, got: b.bounds.len() }),
        Some(b) => b,
        None => derived,
    };
    let all: Vec<u32> = (0..tower.size(Level::Fqr)).collect();
    let trace_zero = all.iter().copied().filter(|&v| tower.trace_raw(v) == 0).collect();
    Ok(Setup { tower, r, m, pi: pi.pi().raw().to_vec(), radicand: radicand.raw().to_vec(), bounds, trace_zero, all })
}

/// All polynomials of degree `≤ bound` with coefficients from `values`,
/// constant term varying slowest.
fn polys_from(values: &[u32], bound: i64) -> Vec<Vec<u32>> {
    let len = (bound + 1).max(0) as u32;
    let base = values.len() as u64;
    let count = base.pow(len);
    (0..count)
        .map(|mut idx| {
            let mut c = vec![0u32; len as usize];
            for slot in c.iter_mut().rev() {
                *slot = values[(idx % base) as usize];
                idx /= base;
            }
            raw::trim(&mut c);
            c
        })
        .collect()
}

fn check_cap(size: u128, cap: u64) -> Result<()> {
    if size > cap as u128 {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::InvalidParameter("workers must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))
}

/// Counts tuples of the Cartesian product `lists[0] × … × lists[r−1]`
/// accepted by `f`. The outer list is split across workers; the sum is
/// independent of how it is split.
fn run_product<C: Sync>(lists: &[Vec<C>], workers: usize, f: impl Fn(&[&C]) -> Result<bool> + Sync) -> Result<u64> {
    if lists.iter().any(Vec::is_empty) {
        return Ok(0);
    }
    let rest = &lists[1..];
    pool(workers)?.install(|| {
        (0..lists[0].len())
            .into_par_iter()
            .map(|i0| {
                let mut idx = vec![0usize; rest.len()];
                let mut picked: Vec<&C> = Vec::with_capacity(lists.len());
                let mut hits = 0u64;
                loop {
                    picked.clear();
                    picked.push(&lists[0][i0]);
                    picked.extend(idx.iter().zip(rest).map(|(&i, l)| &l[i]));
                    if f(&picked)? {
                        hits += 1;
                    }
                    let mut k = rest.len();
                    loop {
                        if k == 0 {
                            return Ok(hits);
                        }
                        k -= 1;
                        idx[k] += 1;
                        if idx[k] < rest[k].len() {
                            break;
                        }
                        idx[k] = 0;
                    }
                }
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))
    })
}

// σ^i(x) and π·σ^i(x) for one coordinate value.
struct Images {
    sig: Vec<Vec<u32>>,
    pisig: Vec<Vec<u32>>,
}

fn images(s: &Setup<'_>, x: &[u32]) -> Images {
    let sig: Vec<Vec<u32>> = (0..s.r as i64).map(|i| raw::frob(s.tower, x, i)).collect();
    let pisig = sig.iter().map(|v| raw::mul(s.tower, v, &s.pi)).collect();
    Images { sig, pisig }
}

fn matrix_count(s: &Setup<'_>, bounds: &DegreeBounds, workers: usize) -> Result<u64> {
    let t = s.tower;
    let pim = raw::pow(t, &s.pi, s.m);
    let lists: Vec<Vec<Images>> = bounds
        .bounds
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            let values = if k == 0 { &s.trace_zero } else { &s.all };
            polys_from(values, b)
                .iter()
                .map(|x| if k == 0 { images(s, x) } else { images(s, &raw::mul(t, x, &pim)) })
                .collect()
        })
        .collect();
    let plan = MinorPlan::new(s.r);
    let r = s.r;
    let target = if r % 2 == 1 { s.radicand.clone() } else { raw::sub(t, &[], &s.radicand) };
    run_product(&lists, workers, |xs| {
        let mut cells: [&[u32]; MAX_RANK * MAX_RANK] = [&[]; MAX_RANK * MAX_RANK];
        for i in 0..r {
            for j in 0..r {
                let im = xs[(j + r - i) % r];
                cells[i * r + j] = if j < i { &im.pisig[i] } else { &im.sig[i] };
            }
        }
        let e = plan.elementary(t, &cells[..r * r])?;
        Ok(e[..r - 1].iter().all(Vec::is_empty) && e[r - 1] == target)
    })
}

/// `#M_n` by the characteristic-polynomial criterion, with a degree audit.
pub fn count_mn<'t>(
    radicand: &Poly<'t>,
    pi: &PrimeIdeal<'t>,
    filter: MnFilter,
    bounds: Option<DegreeBounds>,
    opts: &SearchOptions,
) -> Result<CountReport> {
    let s = prepare(radicand, pi, filter, bounds)?;
    let q = s.tower.q() as u64;
    let candidates = s.bounds.window_size(q, s.r);
    check_cap(candidates, opts.cap)?;
    let count = matrix_count(&s, &s.bounds, opts.workers)?;
    let audit = if opts.audit {
        let mut widenings = Vec::new();
        let targets = (0..s.r).map(Some).chain([None]);
        for k in targets {
            let wide = s.bounds.widened(k);
            let size = wide.window_size(q, s.r);
            if size > opts.audit_cap as u128 || size > opts.cap as u128 {
                widenings.push(Widening { coordinate: k, candidates: size, status: WideningStatus::Skipped });
                continue;
            }
            let c = matrix_count(&s, &wide, opts.workers)?;
            if c != count {
                return Err(Error::AuditFailed { coordinate: k, extra: c.saturating_sub(count) });
            }
            widenings.push(Widening { coordinate: k, candidates: size, status: WideningStatus::Passed });
        }
        Some(AuditReport { widenings })
    } else {
        None
    };
    Ok(CountReport { n: filter.n, e: filter.e, m: s.m, bounds: s.bounds.bounds.clone(), candidates, count, audit })
}

struct R3First {
    sig: Vec<Vec<u32>>,
    norm: Vec<u32>,
    e2: Vec<u32>,
}

struct R3Other {
    sig: Vec<Vec<u32>>,
    scaled_norm: Vec<u32>,
}

/// `#M_n` for `r = 3` from the three coefficient equations in
/// `(x_1, x_2', x_3')`, with the chosen exponent in the second.
pub fn count_mn_r3<'t>(
    radicand: &Poly<'t>,
    pi: &PrimeIdeal<'t>,
    filter: MnFilter,
    exponent: PiExponent,
    opts: &SearchOptions,
) -> Result<R3Report> {
    let s = prepare(radicand, pi, filter, None)?;
    if s.r != 3 {
        return Err(Error::Unsupported("the coefficient equations are written for rank 3".into()));
    }
    let t = s.tower;
    let m = s.m;
    let candidates = s.bounds.window_size(t.q() as u64, 3);
    check_cap(candidates, opts.cap)?;
    let pi_pow = |k: usize| raw::pow(t, &s.pi, k);
    let e8 = pi_pow(exponent.exponent(m));
    let tr9 = pi_pow(2 * m + 1);
    let sig = |x: &[u32]| -> Vec<Vec<u32>> { (0..3).map(|i| raw::frob(t, x, i)).collect() };
    let firsts: Vec<R3First> = polys_from(&s.trace_zero, s.bounds.bounds[0])
        .into_iter()
        .map(|x| {
            let sg = sig(&x);
            let e2 = raw::trace(t, &raw::mul(t, &sg[0], &sg[1]));
            R3First { norm: raw::norm(t, &x), e2, sig: sg }
        })
        .collect();
    let other = |k: usize| -> Vec<R3Other> {
        let scale = pi_pow(3 * m + k);
        polys_from(&s.all, s.bounds.bounds[k])
            .into_iter()
            .map(|x| R3Other { scaled_norm: raw::mul(t, &raw::norm(t, &x), &scale), sig: sig(&x) })
            .collect()
    };
    enum Slot<'x> {
        A(&'x R3First),
        B(&'x R3Other),
    }
    let (l2, l3) = (other(1), other(2));
    let lists: Vec<Vec<Slot<'_>>> = vec![
        firsts.iter().map(Slot::A).collect(),
        l2.iter().map(Slot::B).collect(),
        l3.iter().map(Slot::B).collect(),
    ];
    let count = run_product(&lists, opts.workers, |xs| {
        let (Slot::A(a), Slot::B(b), Slot::B(c)) = (xs[0], xs[1], xs[2]) else {
            unreachable!("slot layout is fixed")
        };
        let tr23 = raw::trace(t, &raw::mul(t, &b.sig[0], &c.sig[1]));
        if a.e2 != raw::mul(t, &e8, &tr23) {
            return Ok(false);
        }
        let mixed = raw::trace(t, &raw::mul(t, &raw::mul(t, &a.sig[0], &b.sig[1]), &c.sig[2]));
        let lhs = raw::add(t, &raw::add(t, &a.norm, &b.scaled_norm), &c.scaled_norm);
        let lhs = raw::sub(t, &lhs, &raw::mul(t, &tr9, &mixed));
        Ok(lhs == s.radicand)
    })?;
    Ok(R3Report { n: filter.n, m, exponent, pi_power: exponent.exponent(m), candidates, count })
}

/// Runs the matrix count and both exponent readings of the rank-3
/// equations on the same window, and records which readings agree.
pub fn exponent_audit<'t>(radicand: &Poly<'t>, pi: &PrimeIdeal<'t>, filter: MnFilter, opts: &SearchOptions) -> Result<ExponentAudit> {
    let quiet = SearchOptions { audit: false, ..opts.clone() };
    let matrix = count_mn(radicand, pi, filter, None, &quiet)?.count;
    let plus = count_mn_r3(radicand, pi, filter, PiExponent::Plus, opts)?.count;
    let minus = count_mn_r3(radicand, pi, filter, PiExponent::Minus, opts)?.count;
    Ok(ExponentAudit {
        n: filter.n,
        m: filter.m(),
        matrix,
        plus,
        minus,
        plus_agrees: plus == matrix,
        minus_agrees: minus == matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_for_small_radicands() {
        assert_eq!(DegreeBounds::derive(1, 1, 3, 0).bounds, vec![0, 0, -1]);
        assert_eq!(DegreeBounds::derive(1, 1, 3, 1).bounds, vec![0, -1, -2]);
        assert_eq!(DegreeBounds::derive(2, 1, 3, 0).bounds, vec![0, 0, 0]);
        assert_eq!(DegreeBounds::derive(4, 1, 3, 0).bounds, vec![1, 1, 0]);
        let b = DegreeBounds::derive(1, 1, 3, 0);
        assert_eq!(b.window_size(7, 3), 49 * 343);
        assert_eq!(b.widened(Some(2)).window_size(7, 3), 49 * 343 * 343);
    }

    #[test]
    fn polys_in_fixed_order() {
        let ps = polys_from(&[0, 1, 2], 1);
        assert_eq!(ps.len(), 9);
        assert_eq!(ps[0], Vec::<u32>::new());
        assert_eq!(ps[1], vec![0, 1]);
        assert_eq!(ps[3], vec![1]);
    }
}
