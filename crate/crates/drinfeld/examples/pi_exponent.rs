//! Which power of `π` belongs in the second coefficient equation for
//! `r = 3`? For `Δ = T` every solution has `x_3' = 0`, so the factor never
//! matters. `Δ = T^4 + T` has solutions where it does.
//!
//! Usage: `cargo run --release --example pi_exponent -- [workers]`

use drinfeld::endo::{exponent_audit, MnFilter, SearchOptions};
use drinfeld::ffield::{FieldSpec, FieldTower, Level};
use drinfeld::polyring::{Poly, PrimeIdeal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let workers: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let tower = FieldTower::new(FieldSpec::from_q(3, 3)?)?;
    let pi = PrimeIdeal::new(Poly::t(&tower))?;
    let radicand = Poly::new(&tower, Level::Fq, vec![0, 1, 0, 0, 1])?;

    let audit = exponent_audit(&radicand, &pi, MnFilter::unramified(1)?, &SearchOptions::with_workers(workers))?;
    println!("Δ = {radicand}, π = T, q = 3, n = 1");
    println!("  characteristic polynomial : {}", audit.matrix);
    println!("  exponent 2n+1             : {}", audit.plus);
    println!("  exponent 2n-1             : {}", audit.minus);
    if audit.discrepancy() {
        println!("  the readings disagree; the matrix count is authoritative");
    }
    Ok(())
}
