//! Basic J-invariants for rank 3 and their values on the CM module.
//!
//! Usage: `cargo run --example j_invariants -- [q]`

use drinfeld::drinfeld::cm_from_rank1;
use drinfeld::ffield::{FieldSpec, FieldTower};
use drinfeld::jinv::{enumerate_delta_tuples, valuation_of_j};
use drinfeld::twisted::{LocalRing, TwistedPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let tuples = enumerate_delta_tuples(q, 3)?;
    let weight = tuples.iter().map(|d| d.weight()).max().unwrap_or(1) as usize;

    let tower = FieldTower::new(FieldSpec::from_q(q, 1)?)?;
    let ring = LocalRing::new(&tower, 3 * weight + 1, 3)?;
    let phi = cm_from_rank1(&TwistedPoly::new(vec![ring.theta(), ring.one()]), 3)?;

    println!("{} basic J-invariants for q = {q}, r = 3", tuples.len());
    for d in &tuples {
        println!("  {:<18} ord_T J(φ) = {}", d.to_string(), valuation_of_j(&phi, d)?);
    }
    Ok(())
}
