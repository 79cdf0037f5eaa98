//! Reduction heights of `φ_T = T + τ^r` at every monic irreducible `π` of
//! degree at most 3.
//!
//! Usage: `cargo run --example supersingular -- [q] [r]`

use drinfeld::drinfeld::{reduction_height, DrinfeldModule};
use drinfeld::ffield::{FieldSpec, FieldTower, Level};
use drinfeld::polyring::{Poly, PrimeIdeal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let r: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let tower = FieldTower::new(FieldSpec::from_q(q, r as u32)?)?;
    let phi = DrinfeldModule::standard(&Poly::one(&tower, Level::Fq), r);
    println!("{:<22} {:>4} {:>6}  supersingular", "π", "deg", "v_τ");
    for d in 1..=3 {
        for pi in Poly::monic_of_degree(&tower, Level::Fq, d).filter(Poly::is_irreducible).take(4) {
            let prime = PrimeIdeal::new(pi)?;
            let h = reduction_height(&phi, &prime)?;
            println!("{:<22} {:>4} {:>6}  {}", prime.pi().to_string(), d, h.tau_valuation, h.supersingular);
        }
    }
    Ok(())
}
