//! Drinfeld `A`-modules given by `φ_T = γ(T) + g_1τ + … + Δτ^r`.
//!
//! A morphism `u: φ → ψ` must satisfy `u·φ_a = ψ_a·u` for all `a ∈ A`.
//! Both sides are `F_q`-linear ring maps in `a` and `A = F_q[T]`, so the
//! identity for `a = T` implies it for every `a`; [`is_morphism`] checks
//! only the generator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FieldElem, Level};
use crate::polyring::{Poly, PrimeIdeal, ResidueElem};
use crate::ring::{AAlgebra, Ring};
use crate::twisted::{LocalElem, TwistedPoly};

#[derive(Clone, PartialEq, Debug)]
pub struct DrinfeldModule<R: Ring> {
    phi_t: TwistedPoly<R>,
}

impl<R: Ring> DrinfeldModule<R> {
    /// From `[γ(T), g_1, …, g_{r-1}, Δ]`.
    pub fn new(coeffs: Vec<R>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidParameter("rank must be at least 1".into()));
        }
        if coeffs.last().is_some_and(|d| d.is_zero()) {
            return Err(Error::ZeroLeading);
        }
        Ok(DrinfeldModule { phi_t: TwistedPoly::new(coeffs) })
    }

    pub fn from_twisted(phi_t: TwistedPoly<R>) -> Result<Self> {
        Self::new(phi_t.coeffs().to_vec())
    }

    pub fn rank(&self) -> usize {
        self.phi_t.deg_tau().expect("nonzero")
    }

    pub fn phi_t(&self) -> &TwistedPoly<R> {
        &self.phi_t
    }

    /// The constant term `γ(T)`.
    pub fn gamma(&self) -> &R {
        &self.phi_t.coeffs()[0]
    }

    /// `g_i` for `1 ≤ i ≤ r`; `g_r = Δ`.
    pub fn g(&self, i: usize) -> &R {
        &self.phi_t.coeffs()[i]
    }

    pub fn delta(&self) -> &R {
        self.g(self.rank())
    }

    pub fn is_normalized(&self) -> bool {
        self.delta().is_one()
    }

    /// `φ_a` by Horner's rule over `tmul`. `a` must lie in `A`.
    pub fn phi_a(&self, a: &Poly<'_>) -> Result<TwistedPoly<R>> {
        if !a.in_level(Level::Fq) {
            return Err(Error::NotInField);
        }
        let unit = self.gamma();
        let constant = |c: FieldElem<'_>| TwistedPoly::new(vec![unit.from_fq(c)]);
        let mut acc = TwistedPoly::zero();
        for i in (0..a.raw().len()).rev() {
            acc = acc.tmul(&self.phi_t).add(&constant(a.coeff(i)));
        }
        Ok(acc)
    }

    /// Coefficientwise image under a ring map; fails if `Δ` maps to zero.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Result<DrinfeldModule<S>> {
        let coeffs: Vec<S> = self.phi_t.coeffs().iter().map(f).collect();
        if coeffs.last().is_some_and(|d| d.is_zero()) {
            return Err(Error::BadReduction);
        }
        Ok(DrinfeldModule { phi_t: TwistedPoly::new(coeffs) })
    }

    /// `c·φ·c^{-1}`: `g_i ↦ c^{q^i - 1} g_i`.
    pub fn twist(&self, c: &R) -> Result<Self> {
        let c_inv = c.try_inverse().ok_or(Error::DivisionByZero)?;
        let u = TwistedPoly::new(vec![c.clone()]);
        let u_inv = TwistedPoly::new(vec![c_inv]);
        Self::from_twisted(u.tmul(&self.phi_t).tmul(&u_inv))
    }
}

impl<R: AAlgebra> DrinfeldModule<R> {
    /// `φ_T = T + τ^r`.
    pub fn standard(unit: &R, r: usize) -> Self {
        let mut v = vec![unit.zero_like(); r + 1];
        v[0] = unit.t_image();
        v[r] = unit.one_like();
        DrinfeldModule { phi_t: TwistedPoly::new(v) }
    }

    /// `φ_T = T + τ^j + τ^r` with `1 ≤ j < r`.
    pub fn sparse(unit: &R, j: usize, r: usize) -> Result<Self> {
        if j == 0 || j >= r {
            return Err(Error::InvalidParameter(format!("need 1 <= j < r, got j = {j}")));
        }
        let mut m = Self::standard(unit, r);
        let mut v = m.phi_t.coeffs().to_vec();
        v[j] = unit.one_like();
        m.phi_t = TwistedPoly::new(v);
        Ok(m)
    }
}

/// `u·φ_T = ψ_T·u`.
pub fn is_morphism<R: Ring>(u: &TwistedPoly<R>, phi: &DrinfeldModule<R>, psi: &DrinfeldModule<R>) -> bool {
    u.tmul(phi.phi_t()) == psi.phi_t().tmul(u)
}

impl<'a> DrinfeldModule<Poly<'a>> {
    /// Reduction modulo a prime of `A`.
    pub fn reduce<'b>(&self, prime: &'b PrimeIdeal<'a>) -> Result<DrinfeldModule<ResidueElem<'b>>>
    where
        'a: 'b,
    {
        self.map(|c| prime.reduce(c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightReport {
    pub rank: usize,
    pub prime_degree: usize,
    /// `τ`-valuation of the reduction of `φ_π`.
    pub tau_valuation: usize,
    pub supersingular: bool,
}

/// Height of the reduction at `π`. The module is reduced first and `φ_π`
/// is then formed over `A/π`, which agrees with reducing `φ_π`.
pub fn reduction_height(phi: &DrinfeldModule<Poly<'_>>, prime: &PrimeIdeal<'_>) -> Result<HeightReport> {
    if !phi.phi_t().coeffs().iter().all(|c| c.in_level(Level::Fq)) {
        return Err(Error::NotInField);
    }
    let reduced = phi.reduce(prime)?;
    let phi_pi = reduced.phi_a(prime.pi())?;
    let v = phi_pi.tau_valuation()?;
    let (r, d) = (phi.rank(), prime.degree());
    Ok(HeightReport { rank: r, prime_degree: d, tau_valuation: v, supersingular: v == r * d })
}

pub fn is_supersingular(phi: &DrinfeldModule<Poly<'_>>, prime: &PrimeIdeal<'_>) -> Result<bool> {
    Ok(reduction_height(phi, prime)?.supersingular)
}

/// The rank-`e` module `φ_T = (φ'_θ)^e` from a rank-one action `φ'_θ`.
pub fn cm_from_rank1<R: AAlgebra>(theta_image: &TwistedPoly<R>, e: usize) -> Result<DrinfeldModule<R>> {
    if theta_image.deg_tau() != Some(1) || e == 0 {
        return Err(Error::InvalidParameter("need a rank-one action and e >= 1".into()));
    }
    let theta = &theta_image.coeffs()[0];
    if theta.pow(e as u64) != theta.t_image() {
        return Err(Error::ThetaPowerMismatch { e });
    }
    if !theta_image.coeffs()[1].is_one() {
        return Err(Error::NotNormalized);
    }
    let phi = DrinfeldModule::from_twisted(theta_image.tpow(e, theta))?;
    assert!(*phi.gamma() == theta.t_image() && phi.delta().is_one());
    Ok(phi)
}

fn check_pair(phi: &DrinfeldModule<LocalElem<'_>>, psi: &DrinfeldModule<LocalElem<'_>>, n: usize) -> Result<()> {
    if phi.rank() != psi.rank() {
        return Err(Error::RankMismatch(phi.rank(), psi.rank()));
    }
    if !phi.is_normalized() || !psi.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let ring = phi.gamma().ring();
    if n == 0 || n > ring.truncation() {
        return Err(Error::BadLevel);
    }
    if !ring.tower().r().is_multiple_of(phi.rank()) {
        return Err(Error::InvalidParameter(format!(
            "residue field degree {} is not a multiple of the rank {}",
            ring.tower().r(),
            phi.rank()
        )));
    }
    Ok(())
}

/// `{c ∈ F_{q^r}^* : c^{q^i-1} g_i ≡ g_i' mod θ^n, 1 ≤ i < r}`, sorted by encoding.
///
/// The residue field of the coefficient ring is `F_{q^M}` with `r | M`.
pub fn iso_scalars<'a>(
    phi: &DrinfeldModule<LocalElem<'a>>,
    psi: &DrinfeldModule<LocalElem<'a>>,
    n: usize,
) -> Result<Vec<FieldElem<'a>>> {
    check_pair(phi, psi, n)?;
    let r = phi.rank();
    let tower = phi.gamma().ring().tower();
    let q = tower.q() as u64;
    let mut out: Vec<FieldElem<'a>> = tower
        .subfield_units(r)
        .into_iter()
        .filter(|c| {
            (1..r).all(|i| {
                let s = tower.pow(c.value(), q.pow(i as u32) - 1);
                let (g, h) = (phi.g(i).raw(), psi.g(i).raw());
                (0..n).all(|k| {
                    let gk = g.get(k).copied().unwrap_or(0);
                    let hk = h.get(k).copied().unwrap_or(0);
                    tower.mul(s, gk) == hk
                })
            })
        })
        .collect();
    out.sort_by_key(|c| c.value());
    Ok(out)
}

pub fn iso_count(phi: &DrinfeldModule<LocalElem<'_>>, psi: &DrinfeldModule<LocalElem<'_>>, n: usize) -> Result<usize> {
    Ok(iso_scalars(phi, psi, n)?.len())
}

/// Coefficient data as nested coordinate vectors, for JSON output.
pub trait Coordinates {
    fn coordinates(&self) -> Vec<Vec<u32>>;
}

impl Coordinates for Poly<'_> {
    fn coordinates(&self) -> Vec<Vec<u32>> {
        self.to_coord_lists()
    }
}

impl Coordinates for LocalElem<'_> {
    /// `θ`-coefficients, low-to-high.
    fn coordinates(&self) -> Vec<Vec<u32>> {
        (0..self.raw().len()).map(|i| self.coeff(i).coords()).collect()
    }
}

impl Coordinates for ResidueElem<'_> {
    fn coordinates(&self) -> Vec<Vec<u32>> {
        self.value().to_coord_lists()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub rank: usize,
    /// `[γ(T), g_1, …, Δ]`, each as a coefficient list of coordinate vectors.
    pub coeffs: Vec<Vec<Vec<u32>>>,
}

impl<R: Ring + Coordinates> DrinfeldModule<R> {
    pub fn to_json(&self) -> ModuleJson {
        ModuleJson { rank: self.rank(), coeffs: self.phi_t.coeffs().iter().map(|c| c.coordinates()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{FieldSpec, FieldTower};
    use crate::twisted::LocalRing;

    #[test]
    fn phi_of_constant_and_t() {
        let t = FieldTower::new(FieldSpec::new(3, 1, 1)).unwrap();
        let one = Poly::one(&t, Level::Fq);
        let phi = DrinfeldModule::standard(&one, 3);
        assert_eq!(phi.phi_a(&Poly::t(&t)).unwrap(), *phi.phi_t());
        let c = Poly::constant(t.elem(Level::Fq, 2).unwrap());
        assert_eq!(phi.phi_a(&c).unwrap(), TwistedPoly::new(vec![c]));
    }

    #[test]
    fn cm_rank_two() {
        let t = FieldTower::new(FieldSpec::new(5, 1, 2)).unwrap();
        let ring = LocalRing::new(&t, 40, 2).unwrap();
        let th = ring.theta();
        let phi = cm_from_rank1(&TwistedPoly::new(vec![th.clone(), ring.one()]), 2).unwrap();
        assert_eq!(*phi.g(1), th.plus(&th.frob_q()));
        assert_eq!(*phi.gamma(), ring.theta_pow(2));
        let bad = LocalRing::new(&t, 40, 3).unwrap();
        let e = cm_from_rank1(&TwistedPoly::new(vec![bad.theta(), bad.one()]), 2);
        assert_eq!(e.unwrap_err(), Error::ThetaPowerMismatch { e: 2 });
    }

    #[test]
    fn rejects_unnormalized_and_level_zero() {
        let t = FieldTower::new(FieldSpec::new(3, 1, 2)).unwrap();
        let ring = LocalRing::new(&t, 4, 1).unwrap();
        let phi = DrinfeldModule::standard(&ring.one(), 2);
        let two = ring.constant(t.elem(Level::Fq, 2).unwrap());
        let psi = DrinfeldModule::new(vec![ring.theta(), ring.zero(), two]).unwrap();
        assert_eq!(iso_scalars(&phi, &psi, 1).unwrap_err(), Error::NotNormalized);
        assert_eq!(iso_scalars(&phi, &phi, 0).unwrap_err(), Error::BadLevel);
        assert_eq!(iso_count(&phi, &phi, 4).unwrap(), 8);
    }
}
