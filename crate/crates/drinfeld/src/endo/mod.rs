//! The matrix model of `End(φ̄) ⊗ O_H` for the supersingular module
//! `φ_T = T + τ^r`, and the searches built on it.
//!
//! An element `x_1 + x_2 τ + … + x_r τ^{r-1}` of the cyclic algebra
//! `H[τ]/(τ^r − π)` acts on itself by left multiplication. In the basis
//! `1, τ, …, τ^{r-1}` this gives the matrix with entry
//! `(i, j) = π^{[j<i]} σ^i(x_{(j−i) mod r})` (0-based), which is what
//! [`build_matrix`] returns.

mod bound;
mod raw;
mod search;

pub use bound::{
    auto_max_m, bound_report, explicit_cm_lhs, katz_count, BoundParams, BoundReport, KatzReport, SqrtLine,
};
pub use search::{
    count_mn, count_mn_r3, exponent_audit, AuditReport, CountReport, DegreeBounds, ExponentAudit, PiExponent, R3Report,
    SearchOptions, Widening, WideningStatus, AUDIT_CAP, SEARCH_CAP,
};

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffield::{FieldTower, Level};
use crate::polyring::{Poly, PrimeIdeal};
use crate::ring::Ring;

use raw::MinorPlan;

/// The largest rank handled by the permutation expansion in [`char_poly`].
pub const MAX_RANK: usize = 4;

/// Congruence level for `M_n`: `x_k ≡ 0 mod π^m` for `k ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MnFilter {
    pub n: usize,
    pub e: usize,
}

impl MnFilter {
    pub fn new(n: usize, e: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadLevel);
        }
        if e == 0 {
            return Err(Error::InvalidParameter("ramification index must be positive".into()));
        }
        Ok(MnFilter { n, e })
    }

    pub fn unramified(n: usize) -> Result<Self> {
        Self::new(n, 1)
    }

    /// `⌊(n+e−1)/e⌋ − 1`; equals `n − 1` when `e = 1`.
    pub fn m(&self) -> usize {
        self.n.div_ceil(self.e) - 1
    }
}

/// A matrix in the image of the cyclic algebra, stored by its first row.
#[derive(Clone, PartialEq)]
pub struct EndoMatrix<'a> {
    x: Vec<Poly<'a>>,
    pi: Poly<'a>,
}

impl<'a> EndoMatrix<'a> {
    pub fn x(&self) -> &[Poly<'a>] {
        &self.x
    }

    pub fn pi(&self) -> &Poly<'a> {
        &self.pi
    }

    pub fn rank(&self) -> usize {
        self.x.len()
    }

    pub fn tower(&self) -> &'a FieldTower {
        self.pi.tower()
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly<'a> {
        let r = self.rank();
        let s = self.x[(j + r - i) % r].frobenius_poly(i as i64);
        if j < i {
            s.mul_poly(&self.pi)
        } else {
            s
        }
    }

    pub fn entries(&self) -> Vec<Vec<Poly<'a>>> {
        let r = self.rank();
        (0..r).map(|i| (0..r).map(|j| self.entry(i, j)).collect()).collect()
    }
}

impl fmt::Debug for EndoMatrix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries() {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn check_vector(x: &[Poly<'_>], pi: &PrimeIdeal<'_>) -> Result<()> {
    let r = pi.pi().tower().r();
    if x.len() != r {
        return Err(Error::WrongLength { expected: r, got: x.len() });
    }
    if r > MAX_RANK {
        return Err(Error::Unsupported(format!("rank {r} exceeds {MAX_RANK}")));
    }
    if x.iter().any(|p| !std::ptr::eq(p.tower(), pi.pi().tower())) {
        return Err(Error::IncompatibleModulus("entries and π live in different towers".into()));
    }
    Ok(())
}

pub fn build_matrix<'a>(x: Vec<Poly<'a>>, pi: &PrimeIdeal<'a>) -> Result<EndoMatrix<'a>> {
    check_vector(&x, pi)?;
    let x = x.into_iter().map(|p| p.to_level(Level::Fqr).expect("widening never fails")).collect();
    Ok(EndoMatrix { x, pi: pi.pi().clone() })
}

/// `(Σ a_i τ^i)(Σ b_j τ^j)` reduced with `τ^r = π`.
pub fn skew_product<'a>(a: &[Poly<'a>], b: &[Poly<'a>], pi: &Poly<'a>) -> Vec<Poly<'a>> {
    let r = a.len();
    assert_eq!(r, b.len(), "vectors of equal length");
    let tower = pi.tower();
    let mut out = vec![Poly::zero(tower, Level::Fqr); r];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let mut term = ai.mul_poly(&bj.frobenius_poly(i as i64));
            if i + j >= r {
                term = term.mul_poly(pi);
            }
            out[(i + j) % r] = out[(i + j) % r].add_poly(&term);
        }
    }
    out
}

/// Plain product of square polynomial matrices.
pub fn raw_mul<'a>(a: &[Vec<Poly<'a>>], b: &[Vec<Poly<'a>>]) -> Vec<Vec<Poly<'a>>> {
    let r = a.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..r).fold(Poly::zero(a[0][0].tower(), Level::Fqr), |acc, l| acc.add_poly(&a[i][l].mul_poly(&b[l][j]))))
                .collect()
        })
        .collect()
}

/// Matrix product, re-expressed as an [`EndoMatrix`] through its first row.
pub fn mat_mul<'a>(a: &EndoMatrix<'a>, b: &EndoMatrix<'a>) -> Result<EndoMatrix<'a>> {
    if a.pi != b.pi || a.rank() != b.rank() {
        return Err(Error::IncompatibleModulus("matrices over different π".into()));
    }
    let prod = raw_mul(&a.entries(), &b.entries());
    let c = EndoMatrix { x: prod[0].clone(), pi: a.pi.clone() };
    if c.entries() != prod {
        return Err(Error::ClosureFailure);
    }
    Ok(c)
}

/// `det(X·I − M)` as coefficients of `X^0, …, X^r` over `F_q[T]`.
#[derive(Clone, PartialEq, Eq)]
pub struct CharPoly<'a> {
    pub coeffs: Vec<Poly<'a>>,
}

impl<'a> CharPoly<'a> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Whether this is `X^r − Δ`.
    pub fn is_radical(&self, radicand: &Poly<'a>) -> bool {
        let r = self.degree();
        self.coeffs[r].is_one()
            && self.coeffs[1..r].iter().all(Poly::is_zero)
            && self.coeffs[0] == radicand.neg_poly()
    }
}

impl fmt::Display for CharPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let x = match k {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{k}"),
            };
            parts.push(match (c.is_one(), k) {
                (true, 0) => "1".to_string(),
                (true, _) => x,
                (false, 0) => format!("({c})"),
                (false, _) => format!("({c})*{x}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for CharPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Characteristic polynomial by principal-minor expansion (`r ≤ 4`).
///
/// Fails with [`Error::NotGaloisStable`] if a coefficient leaves `F_q[T]`,
/// which cannot happen for matrices from [`build_matrix`].
pub fn char_poly<'a>(a: &EndoMatrix<'a>) -> Result<CharPoly<'a>> {
    let tower = a.tower();
    let r = a.rank();
    let entries: Vec<Vec<u32>> = a.entries().iter().flatten().map(|p| p.raw().to_vec()).collect();
    let cells: Vec<&[u32]> = entries.iter().map(Vec::as_slice).collect();
    let e = MinorPlan::new(r).elementary(tower, &cells)?;
    let mut coeffs = vec![Poly::zero(tower, Level::Fq); r + 1];
    coeffs[r] = Poly::one(tower, Level::Fq);
    for (k, ek) in e.into_iter().enumerate() {
        let k = k + 1;
        let p = Poly::new(tower, Level::Fq, ek).map_err(|_| Error::NotGaloisStable)?;
        coeffs[r - k] = if k % 2 == 1 { p.neg_poly() } else { p };
    }
    Ok(CharPoly { coeffs })
}

/// Uniform random vector with `deg x_k ≤ degs[k]` over `F_{q^r}`.
pub fn random_x<'a, G: Rng>(rng: &mut G, tower: &'a FieldTower, degs: &[i64]) -> Vec<Poly<'a>> {
    let size = tower.size(Level::Fqr);
    degs.iter()
        .map(|&d| {
            let coeffs = (0..(d + 1).max(0)).map(|_| rng.gen_range(0..size)).collect();
            Poly::new(tower, Level::Fqr, coeffs).expect("values below the field size")
        })
        .collect()
}

/// Whether `X^r − Δ` is irreducible over `F_q(T)` (Capelli).
pub fn radical_is_irreducible(radicand: &Poly<'_>, r: usize) -> Result<bool> {
    if radicand.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !radicand.in_level(Level::Fq) {
        return Err(Error::NotInField);
    }
    for l in crate::arith::prime_factors(r as u64) {
        if raw::is_power(radicand, l as usize) {
            return Ok(false);
        }
    }
    if r.is_multiple_of(4) {
        let tower = radicand.tower();
        let four = tower.elem(Level::Fp, 4 % tower.p()).expect("prime field element");
        if let Some(inv4) = four.inv() {
            let scaled = radicand.scale(-inv4);
            if raw::is_power(&scaled, 4) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldSpec;

    #[test]
    fn filter_levels() {
        assert_eq!(MnFilter::unramified(3).unwrap().m(), 2);
        let f = |n| MnFilter::new(n, 3).unwrap().m();
        assert_eq!((f(1), f(3), f(4), f(7)), (0, 0, 1, 2));
        assert!(MnFilter::new(0, 1).is_err());
    }

    #[test]
    fn tau_cubed_is_pi() {
        let t = FieldTower::new(FieldSpec::new(3, 1, 3)).unwrap();
        let pi = PrimeIdeal::new(Poly::t(&t)).unwrap();
        let z = Poly::zero(&t, Level::Fqr);
        let one = Poly::one(&t, Level::Fqr);
        let tau = build_matrix(vec![z.clone(), one, z.clone()], &pi).unwrap();
        let cube = mat_mul(&mat_mul(&tau, &tau).unwrap(), &tau).unwrap();
        assert_eq!(cube, build_matrix(vec![Poly::t(&t), z.clone(), z], &pi).unwrap());
    }

    #[test]
    fn capelli_small_cases() {
        let t = FieldTower::new(FieldSpec::new(3, 1, 3)).unwrap();
        let tt = Poly::t(&t);
        assert!(radical_is_irreducible(&tt, 3).unwrap());
        assert!(!radical_is_irreducible(&tt.pow(3), 3).unwrap());
        let t5 = FieldTower::new(FieldSpec::new(5, 1, 2)).unwrap();
        let sq = Poly::new(&t5, Level::Fq, vec![1, 2, 1]).unwrap();
        assert!(!radical_is_irreducible(&sq, 2).unwrap());
        let nonsq = Poly::new(&t5, Level::Fq, vec![2]).unwrap();
        assert!(radical_is_irreducible(&nonsq, 2).unwrap());
    }
}
