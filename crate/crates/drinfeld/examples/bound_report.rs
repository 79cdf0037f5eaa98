//! Lower bounds on `ord(J)` from embedding counts, next to the exact
//! valuation of the CM module.
//!
//! Usage: `cargo run --release --example bound_report -- [q] [workers]`

use drinfeld::endo::{bound_report, explicit_cm_lhs, BoundParams, SearchOptions};
use drinfeld::jinv::DeltaTuple;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let workers: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let big = q * q + q + 1;

    for (r_sep, deltas) in [(1, vec![0, big]), (1, vec![big, 0]), (3, vec![0, big])] {
        let params = BoundParams {
            q,
            r: 3,
            r_sep,
            e: 3,
            delta: DeltaTuple::new(q, deltas)?,
            radicand: vec![0, 1],
            pi: vec![0, 1],
            max_m: None,
        };
        let lhs = explicit_cm_lhs(q, 3, &params.delta)?;
        let rep = bound_report(&params, Some(lhs), &SearchOptions::with_workers(workers))?;
        println!(
            "δ = {:<12} r_sep = {r_sep}  counts {:?}  ord J = {lhs}  bound = {}/{}  equality {:?}",
            params.delta.to_string(),
            rep.counts,
            rep.rhs.num,
            rep.rhs.den,
            rep.equality
        );
    }
    Ok(())
}
