//! The rank-3 module induced by `θ + τ` with `θ^3 = T`: its coefficients
//! as polynomials in `θ`.
//!
//! Usage: `cargo run --example cm_module -- [q]`

use drinfeld::drinfeld::cm_from_rank1;
use drinfeld::ffield::{FieldSpec, FieldTower};
use drinfeld::twisted::{LocalElem, LocalRing, TwistedPoly};

fn theta_string(x: &LocalElem<'_>) -> String {
    let terms: Vec<String> = (0..x.raw().len())
        .filter(|&k| x.raw()[k] != 0)
        .map(|k| {
            let c = x.coeff(k);
            let mono = match k {
                0 => String::new(),
                1 => "θ".to_string(),
                _ => format!("θ^{k}"),
            };
            match (c.is_one(), k) {
                (true, 0) => "1".to_string(),
                (true, _) => mono,
                (false, _) => format!("{c}{mono}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let tower = FieldTower::new(FieldSpec::from_q(q, 1)?)?;
    let ring = LocalRing::new(&tower, 3 * (q * q) as usize, 3)?;
    let phi = cm_from_rank1(&TwistedPoly::new(vec![ring.theta(), ring.one()]), 3)?;
    println!("q = {q}, φ_T = γ + g_1 τ + g_2 τ^2 + Δ τ^3 with");
    println!("  γ   = {}", theta_string(phi.gamma()));
    println!("  g_1 = {}", theta_string(phi.g(1)));
    println!("  g_2 = {}", theta_string(phi.g(2)));
    println!("  Δ   = {}", theta_string(phi.delta()));
    Ok(())
}
