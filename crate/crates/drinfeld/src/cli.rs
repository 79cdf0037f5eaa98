//! Command dispatch behind the `drinfeld` binary.
//!
//! Argument parsing lives in the binary; this module takes a fully
//! resolved [`RunConfig`], runs it, and renders JSON or a table. Every
//! report embeds the config that produced it.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::drinfeld::{reduction_height, DrinfeldModule};
use crate::endo::{
    bound_report, count_mn, count_mn_r3, explicit_cm_lhs, katz_count, BoundParams, BoundReport, CountReport,
    PiExponent, KatzReport, MnFilter, SearchOptions, SqrtLine, AUDIT_CAP,
};
use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, FieldTower, Level, TowerHeader};
use crate::jinv::{enumerate_delta_tuples, DeltaTuple};
use crate::polyring::{Poly, PrimeIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    #[serde(rename = "cm-sep")]
    Separable,
    #[serde(rename = "cm-insep")]
    Inseparable,
    #[serde(rename = "two-roots")]
    TwoRoots,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Separable => "cm-sep",
            Preset::Inseparable => "cm-insep",
            Preset::TwoRoots => "two-roots",
        }
    }

    pub fn default_q(self) -> u64 {
        match self {
            Preset::Inseparable => 3,
            Preset::Separable | Preset::TwoRoots => 7,
        }
    }

    /// Pins every parameter of the preset for the given `q`. `deltas`
    /// replaces the preset's `δ_1, …, δ_{r−1}` when given.
    pub fn resolve(self, q: Option<u64>, deltas: Option<Vec<u64>>) -> Result<BoundCommand> {
        let q = q.unwrap_or(self.default_q());
        let big = q * q + q + 1;
        let (r_sep, radicand, default_deltas, lhs, katz_line) = match self {
            Preset::Inseparable => (1, vec![0, 1], vec![0, big], true, false),
            Preset::Separable => (3, vec![0, 1], vec![0, big], true, false),
            Preset::TwoRoots => (3, vec![0, 1, 1], vec![1, q], false, true),
        };
        let delta = DeltaTuple::new(q, deltas.unwrap_or(default_deltas))?;
        let params = BoundParams { q, r: 3, r_sep, e: 3, delta, radicand, pi: vec![0, 1], max_m: None };
        Ok(BoundCommand { preset: Some(self), params, cm_lhs: lhs, katz_line })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCommand {
    pub preset: Option<Preset>,
    pub params: BoundParams,
    /// Attach `ord(J)` of the module induced by `θ + τ` with `θ^e = T`.
    pub cm_lhs: bool,
    /// Compare the bound with the line obtained from the norm-trace count.
    pub katz_line: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    Deltas { q: u64, r: usize },
    Ss { q: u64, r: usize, pi: Vec<u32> },
    Count { q: u64, r: usize, radicand: Vec<u32>, pi: Vec<u32>, n_min: usize, n_max: usize, e: usize, audit: bool, cap: u64 },
    Bound(BoundCommand),
    Katz { q: u64, cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub format: Format,
    pub workers: usize,
    pub command: Command,
}

/// The result of a run: a JSON report, its table rendering, and whether a
/// checked inequality or agreement failed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub table: String,
    pub violation: bool,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.report).expect("reports serialize"),
            Format::Table => self.table.clone(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.violation)
    }
}

/// Exit status for a failed run: `1` when the failure is itself a
/// finding, `2` for anything the caller can fix.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::AuditFailed { .. } | Error::ClosureFailure | Error::NotGaloisStable => 1,
        _ => 2,
    }
}

/// Parses `"c0,c1,…"` (constant term first).
pub fn parse_coeffs(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| Error::InvalidParameter(format!("bad coefficient {p:?} in {s:?}"))))
        .collect()
}

fn tower_for(q: u64, r: usize) -> Result<FieldTower> {
    if !(2..=8).contains(&r) {
        return Err(Error::InvalidParameter(format!("rank {r} outside 2..=8")));
    }
    FieldTower::new(FieldSpec::from_q(q, r as u32)?)
}

fn fq_poly<'a>(tower: &'a FieldTower, c: &[u32], what: &str) -> Result<Poly<'a>> {
    Poly::new(tower, Level::Fq, c.to_vec()).map_err(|_| Error::InvalidParameter(format!("{what} has coefficients outside F_q")))
}

fn frac(num: i64, den: i64) -> String {
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

fn envelope(config: &RunConfig, tower: Option<TowerHeader>, result: Value, violation: bool) -> Value {
    json!({ "config": config, "tower": tower, "result": result, "violation": violation })
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    if config.workers == 0 {
        return Err(Error::InvalidParameter("workers must be positive".into()));
    }
    match &config.command {
        Command::Deltas { q, r } => deltas(config, *q, *r),
        Command::Ss { q, r, pi } => ss(config, *q, *r, pi),
        Command::Count { .. } => count(config),
        Command::Bound(b) => bound(config, b),
        Command::Katz { q, cap } => katz(config, *q, *cap),
    }
}

fn deltas(config: &RunConfig, q: u64, r: usize) -> Result<Outcome> {
    crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let tuples = enumerate_delta_tuples(q, r)?;
    let mut table = format!("basic J-invariants for q = {q}, r = {r}: {}\n", tuples.len());
    for d in &tuples {
        let _ = writeln!(table, "  {d}");
    }
    let result = json!({ "q": q, "r": r, "count": tuples.len(), "tuples": tuples });
    Ok(Outcome { report: envelope(config, None, result, false), table, violation: false })
}

fn ss(config: &RunConfig, q: u64, r: usize, pi: &[u32]) -> Result<Outcome> {
    let tower = tower_for(q, r)?;
    let p = fq_poly(&tower, pi, "π")?;
    let prime = PrimeIdeal::new(p)?;
    let phi = DrinfeldModule::standard(&Poly::one(&tower, Level::Fq), r);
    let h = reduction_height(&phi, &prime)?;
    let expected = num_integer::gcd(prime.degree(), r) == 1;
    let violation = expected != h.supersingular;
    let table = format!(
        "φ_T = T + τ^{r} at π = {}: τ-valuation of φ_π = {} (rank·deg = {}) -> {}\n",
        prime.pi(),
        h.tau_valuation,
        r * prime.degree(),
        if h.supersingular { "supersingular" } else { "ordinary or intermediate height" }
    );
    let result = json!({ "height": h, "gcd_rule": expected, "agrees": !violation });
    Ok(Outcome { report: envelope(config, Some(tower.header()), result, violation), table, violation })
}

/// Floor for `#M_1` when `Δ = T(T+1)`, `π = T`: the triples `(0, β, 1)` and
/// `(0, 1, γ)` with norm one and trace zero, which share `(0, 1, 1)` exactly
/// when `3 = 0` in `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetFloor {
    pub norm_trace_count: u64,
    pub overlap: u64,
    pub floor: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
struct CountLine {
    matrix: CountReport,
    plus: Option<u64>,
    minus: Option<u64>,
    agree: Option<bool>,
    subset_floor: Option<SubsetFloor>,
}

fn count(config: &RunConfig) -> Result<Outcome> {
    let Command::Count { q, r, radicand, pi, n_min, n_max, e, audit, cap } = &config.command else {
        unreachable!("dispatched on the variant")
    };
    if n_min == &0 || n_min > n_max {
        return Err(Error::BadLevel);
    }
    let tower = tower_for(*q, *r)?;
    let delta = fq_poly(&tower, radicand, "radicand")?;
    if delta.is_zero() {
        return Err(Error::ZeroInput);
    }
    let prime = PrimeIdeal::new(fq_poly(&tower, pi, "π")?)?;
    let opts = SearchOptions { workers: config.workers, cap: *cap, audit: *audit, audit_cap: AUDIT_CAP.min(*cap) };
    let quiet = SearchOptions { audit: false, ..opts.clone() };
    let tt1 = *r == 3 && radicand.as_slice() == [0, 1, 1] && pi.as_slice() == [0, 1];
    let mut lines = Vec::new();
    let mut table = format!("Δ = {delta}, π = {}, q = {q}, r = {r}, e = {e}\n", prime.pi());
    let _ = writeln!(table, "{:>4} {:>14} {:>10} {:>10} {:>10}  agree", "n", "candidates", "matrix", "2n+1", "2n-1");
    let mut violation = false;
    for n in *n_min..=*n_max {
        let filter = MnFilter::new(n, *e)?;
        let matrix = count_mn(&delta, &prime, filter, None, &opts)?;
        let (plus, minus) = if *r == 3 {
            (
                Some(count_mn_r3(&delta, &prime, filter, PiExponent::Plus, &quiet)?.count),
                Some(count_mn_r3(&delta, &prime, filter, PiExponent::Minus, &quiet)?.count),
            )
        } else {
            (None, None)
        };
        let agree = plus.map(|p| p == matrix.count);
        violation |= agree == Some(false);
        let subset_floor = if tt1 && filter.m() == 0 {
            let k = katz_count(*q, crate::ffield::DEFAULT_CAP)?;
            let overlap = u64::from(*q % 3 == 0);
            let floor = 2 * k.count - overlap;
            let holds = matrix.count >= floor;
            violation |= !holds;
            Some(SubsetFloor { norm_trace_count: k.count, overlap, floor, holds })
        } else {
            None
        };
        let show = |v: Option<u64>| v.map_or("-".to_string(), |c| c.to_string());
        let _ = writeln!(
            table,
            "{n:>4} {:>14} {:>10} {:>10} {:>10}  {}",
            matrix.candidates,
            matrix.count,
            show(plus),
            show(minus),
            agree.map_or("-", |a| if a { "yes" } else { "NO" })
        );
        if let Some(audit) = &matrix.audit {
            let passed = audit.widenings.len() - audit.skipped();
            let _ = writeln!(table, "     degree audit: {passed} widenings passed, {} skipped over the cap", audit.skipped());
        }
        if let Some(f) = &subset_floor {
            let _ = writeln!(
                table,
                "     floor from norm-one trace-zero pairs: 2·{} − {} = {} ({})",
                f.norm_trace_count,
                f.overlap,
                f.floor,
                if f.holds { "ok" } else { "VIOLATED" }
            );
        }
        lines.push(CountLine { matrix, plus, minus, agree, subset_floor });
    }
    let result = serde_json::to_value(json!({ "levels": lines })).expect("serializable");
    Ok(Outcome { report: envelope(config, Some(tower.header()), result, violation), table, violation })
}

/// `rhs ≥ 2(q+1)(q+1 − g√q) / (9(q²+q+1))` for the `T(T+1)` preset.
pub fn katz_rhs_line(q: u64, rhs: Ratio<i64>) -> SqrtLine {
    let qi = q as i64;
    let g = num_integer::gcd(3, qi - 1);
    let den = 9 * (qi * qi + qi + 1);
    let a = Ratio::new(2 * (qi + 1) * (qi + 1), den);
    let b = Ratio::new(2 * (qi + 1) * g, den);
    SqrtLine::new(q, a, b, rhs)
}

fn bound(config: &RunConfig, b: &BoundCommand) -> Result<Outcome> {
    let p = &b.params;
    let opts = SearchOptions::with_workers(config.workers);
    let lhs = if b.cm_lhs { Some(explicit_cm_lhs(p.q, p.e, &p.delta)?) } else { None };
    let report: BoundReport = bound_report(p, lhs, &opts)?;
    let line = b.katz_line.then(|| katz_rhs_line(p.q, report.rhs_ratio()));
    let violation = report.holds == Some(false) || line.as_ref().is_some_and(|l| !l.holds);
    let mut table = format!(
        "{}q = {}, r = {}, r_sep = {}, e = {}, δ = {}\n",
        b.preset.map_or(String::new(), |pr| format!("[{}] ", pr.name())),
        p.q,
        p.r,
        p.r_sep,
        p.e,
        p.delta
    );
    for (n, c) in report.levels.iter().zip(&report.counts) {
        let _ = writeln!(table, "  #M_{n} = {c}");
    }
    let _ = writeln!(table, "  later levels vanish: {}", report.tail_zero);
    let _ = writeln!(table, "  rhs = {}", frac(report.rhs.num, report.rhs.den));
    match (&report.lhs, report.lhs_infinite) {
        (Some(l), _) => {
            let rel = if report.equality == Some(true) { "=" } else if report.holds == Some(true) { ">" } else { "<" };
            let _ = writeln!(table, "  lhs = {} {rel} rhs", frac(l.num, l.den));
        }
        (None, true) => {
            let _ = writeln!(table, "  lhs = ∞");
        }
        (None, false) => {}
    }
    if let Some(l) = &line {
        let _ = writeln!(
            table,
            "  rhs ≥ {} − ({})·√{}: {}",
            frac(l.a.num, l.a.den),
            frac(l.b.num, l.b.den),
            l.q,
            if l.holds { "holds" } else { "FAILS" }
        );
    }
    let mut result = serde_json::to_value(&report).expect("serializable");
    result["katz_line"] = serde_json::to_value(&line).expect("serializable");
    if line.is_some() {
        result["katz_line_symbolic"] = json!("2(q+1)(q+1-g*sqrt(q))/(9(q^2+q+1)), g = gcd(3,q-1)");
    }
    let header = tower_for(p.q, p.r)?.header();
    Ok(Outcome { report: envelope(config, Some(header), result, violation), table, violation })
}

fn katz(config: &RunConfig, q: u64, cap: u64) -> Result<Outcome> {
    let k: KatzReport = katz_count(q, cap)?;
    let violation = !k.within_bound;
    let table = format!(
        "q = {q}: N_3(0,1) = {}, |N − {}| ≤ {}·√{}: {}; N ≥ {} − {}·√{}: {}\n",
        k.count,
        k.center,
        k.g,
        q,
        if k.within_bound { "ok" } else { "VIOLATED" },
        k.center,
        k.g,
        q,
        if k.lower_bound { "ok" } else { "VIOLATED" }
    );
    let header = FieldTower::with_cap(FieldSpec::from_q(q, 3)?, cap)?.header();
    let result = serde_json::to_value(&k).expect("serializable");
    Ok(Outcome { report: envelope(config, Some(header), result, violation), table, violation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_strings() {
        assert_eq!(parse_coeffs("0, 1,1").unwrap(), vec![0, 1, 1]);
        assert!(parse_coeffs("0,x").is_err());
    }

    #[test]
    fn presets_resolve() {
        let b = Preset::Inseparable.resolve(None, None).unwrap();
        assert_eq!(b.params.delta, DeltaTuple { deltas: vec![0, 13], delta_r: 4 });
        let b = Preset::TwoRoots.resolve(Some(5), None).unwrap();
        assert_eq!(b.params.delta, DeltaTuple { deltas: vec![1, 5], delta_r: 1 });
    }

    #[test]
    fn line_arithmetic() {
        // q = 7: A = 128/513, B = 16/171.
        let l = katz_rhs_line(7, Ratio::new(0, 1));
        assert_eq!((l.a.num, l.a.den), (128, 513));
        assert_eq!((l.b.num, l.b.den), (16, 171));
        assert!(!l.holds);
    }
}
