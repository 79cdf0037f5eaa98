//! Builds `F_9 ⊂ F_{9^3}`, prints the moduli, and checks Frobenius, trace
//! and norm on a few elements.

use drinfeld::ffield::{FieldSpec, FieldTower, Level};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tower = FieldTower::new(FieldSpec::from_q(9, 3)?)?;
    let h = tower.header();
    println!("p = {}, q = {}, r = {}", h.p, h.q, h.r);
    println!("F_q modulus over F_p:   {:?}", h.fq_modulus);
    println!("F_q^r modulus over F_q: {:?}", h.fqr_modulus);
    println!("|F_q^r| = {}", tower.size(Level::Fqr));

    let g = tower.generator();
    for k in [1u64, 5, 100] {
        let x = g.pow(k);
        let fixed = x.frobenius(3) == x;
        println!(
            "g^{k:<3} = {x}  σ(x) = {}  Tr = {}  N = {}  σ^3 fixes x: {fixed}",
            x.frobenius(1),
            x.trace(),
            x.norm()
        );
    }

    let fq_fixed = tower.enumerate(Level::Fqr).filter(|x| x.frobenius(1) == *x).count();
    println!("elements fixed by σ: {fq_fixed} (= q)");
    Ok(())
}
