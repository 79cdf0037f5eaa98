//! Counts `M_n` for `φ_T = T + τ^3` and `Δ = π = T`, then audits the
//! rank-3 coefficient equations against the matrix criterion.
//!
//! Usage: `cargo run --release --example count_embeddings -- [q] [workers]`

use std::time::Instant;

use drinfeld::endo::{count_mn, exponent_audit, MnFilter, SearchOptions};
use drinfeld::ffield::{FieldSpec, FieldTower, Level};
use drinfeld::polyring::{Poly, PrimeIdeal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let workers: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);

    let tower = FieldTower::new(FieldSpec::from_q(q, 3)?)?;
    let t = Poly::t(&tower);
    let pi = PrimeIdeal::new(t.clone())?;
    let opts = SearchOptions::with_workers(workers);

    for n in 1..=2 {
        let start = Instant::now();
        let report = count_mn(&t, &pi, MnFilter::unramified(n)?, None, &opts)?;
        println!(
            "q={q} n={n} bounds={:?} candidates={} count={} ({:.2?})",
            report.bounds,
            report.candidates,
            report.count,
            start.elapsed()
        );
        if let Some(audit) = &report.audit {
            for w in &audit.widenings {
                let which = w.coordinate.map_or("all".to_string(), |k| format!("x{}", k + 1));
                println!("  widen {which:>3}: {:>10} candidates, {:?}", w.candidates, w.status);
            }
        }
    }

    let audit = exponent_audit(&t, &pi, MnFilter::unramified(1)?, &opts)?;
    println!(
        "matrix={} exponent 2n+1: {} exponent 2n-1: {} discrepancy={}",
        audit.matrix,
        audit.plus,
        audit.minus,
        audit.discrepancy()
    );

    let tt1 = Poly::new(&tower, Level::Fq, vec![0, 1, 1])?;
    if q <= 3 {
        let report = count_mn(&tt1, &pi, MnFilter::unramified(1)?, None, &opts)?;
        println!("Δ = {tt1}: count={} over {} candidates", report.count, report.candidates);
    }
    Ok(())
}
