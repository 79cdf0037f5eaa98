//! Norm-one, trace-zero elements of `F_{q^3}` against `q + 1 ± gcd(3, q−1)√q`.

use drinfeld::endo::katz_count;
use drinfeld::ffield::DEFAULT_CAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>4} {:>6} {:>6} {:>3}  within bound", "q", "N", "q+1", "g");
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let k = katz_count(q, DEFAULT_CAP)?;
        println!("{:>4} {:>6} {:>6} {:>3}  {}", q, k.count, k.center, k.g, k.within_bound);
    }
    Ok(())
}
