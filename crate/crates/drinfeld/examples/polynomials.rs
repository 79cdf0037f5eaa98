//! Irreducible polynomials over `F_3`, a prime ideal, and arithmetic in its
//! residue field.

use drinfeld::ffield::{FieldSpec, FieldTower, Level};
use drinfeld::polyring::{Poly, PrimeIdeal};
use drinfeld::ring::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tower = FieldTower::new(FieldSpec::new(3, 1, 3))?;
    for d in 1..=4 {
        let n = Poly::monic_of_degree(&tower, Level::Fq, d).filter(Poly::is_irreducible).count();
        println!("monic irreducibles of degree {d} over F_3: {n}");
    }

    let pi = PrimeIdeal::new(Poly::new(&tower, Level::Fq, vec![1, 2, 0, 1])?)?;
    println!("π = {}", pi.pi());
    let a = Poly::new(&tower, Level::Fq, vec![2, 1, 1, 0, 1])?;
    let x = pi.reduce(&a);
    let inv = x.try_inverse().expect("nonzero residue");
    println!("{a} mod π = {}", x.value());
    println!("its inverse = {}, product = {}", inv.value(), x.times(&inv).value());

    let f = Poly::new(&tower, Level::Fqr, vec![5, 0, 1])?;
    println!("N({f}) = {}", f.norm());
    println!("Tr({f}) = {}", f.trace());
    Ok(())
}
