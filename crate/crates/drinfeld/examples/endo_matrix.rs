//! The matrix of `x_1 + x_2 τ + x_3 τ^2` in `End(φ̄)`, its characteristic
//! polynomial, and closure under products.

use drinfeld::endo::{build_matrix, char_poly, mat_mul};
use drinfeld::ffield::{FieldSpec, FieldTower, Level};
use drinfeld::polyring::{Poly, PrimeIdeal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tower = FieldTower::new(FieldSpec::from_q(3, 3)?)?;
    let pi = PrimeIdeal::new(Poly::t(&tower))?;
    let p = |c: Vec<u32>| Poly::new(&tower, Level::Fqr, c);

    let tau = build_matrix(vec![p(vec![])?, p(vec![1])?, p(vec![])?], &pi)?;
    println!("τ =\n{tau:?}");
    println!("char(τ) = {}", char_poly(&tau)?);

    let a = build_matrix(vec![p(vec![4, 1])?, p(vec![7])?, p(vec![2])?], &pi)?;
    println!("A =\n{a:?}");
    println!("char(A) = {}", char_poly(&a)?);

    let prod = mat_mul(&a, &tau)?;
    println!("A·τ stays in the image; first row {:?}", prod.x().iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}
