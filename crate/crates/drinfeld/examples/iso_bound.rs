//! Random normalized pairs over `F_{q^r}[[θ]]`: isomorphism counts level by
//! level and the resulting lower bound on `ν(J(φ) − J(ψ))`.

use drinfeld::ffield::{FieldSpec, FieldTower};
use drinfeld::jinv::{check_jest_bound, enumerate_delta_tuples, random_normalized_pair};
use drinfeld::twisted::LocalRing;
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (q, r, levels) = (3u64, 3usize, 6usize);
    let tower = FieldTower::new(FieldSpec::from_q(q, r as u32)?)?;
    let ring = LocalRing::new(&tower, levels, 1)?;
    let delta = enumerate_delta_tuples(q, r)?.remove(0);
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);

    println!("δ = {delta}");
    for _ in 0..8 {
        let (phi, psi) = random_normalized_pair(&mut rng, &ring, r);
        let rep = check_jest_bound(&phi, &psi, &delta, levels)?;
        println!(
            "#Iso per level {:?}  lhs {}  rhs {}/{}  holds {}",
            rep.iso_counts, rep.lhs, rep.rhs_general.num, rep.rhs_general.den, rep.holds
        );
    }
    Ok(())
}
