mod common;

use common::NaiveTower;
use drinfeld::drinfeld::{cm_from_rank1, is_morphism, iso_scalars, reduction_height, DrinfeldModule};
use drinfeld::ffield::{FieldElem, FieldSpec, FieldTower, Level};
use drinfeld::jinv::random_normalized_pair;
use drinfeld::polyring::{Poly, PrimeIdeal};
use drinfeld::ring::Ring;
use drinfeld::twisted::{LocalElem, LocalRing, TwistedPoly};
use drinfeld::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tw<'a>(t: &'a FieldTower, c: &[u32]) -> TwistedPoly<FieldElem<'a>> {
    TwistedPoly::new(c.iter().map(|&v| t.elem(Level::Fqr, v).unwrap()).collect())
}

#[test]
fn tau_commutation_rule() {
    let t = FieldTower::new(FieldSpec::new(5, 1, 3)).unwrap();
    let tau = tw(&t, &[0, 1]);
    for a in t.enumerate(Level::Fqr).step_by(7) {
        let alpha = TwistedPoly::new(vec![a]);
        let lhs = tau.tmul(&alpha);
        let rhs = TwistedPoly::new(vec![a.pow(5)]).tmul(&tau);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn cm_coefficients_for_theta_plus_tau() {
    for q in [3u64, 7] {
        let t = FieldTower::new(FieldSpec::from_q(q, 3).unwrap()).unwrap();
        let ring = LocalRing::new(&t, 3 * (q * q) as usize, 3).unwrap();
        let th = |k: u64| ring.theta_pow(k as usize);
        let phi = cm_from_rank1(&TwistedPoly::new(vec![ring.theta(), ring.one()]), 3).unwrap();
        assert_eq!(*phi.gamma(), th(3));
        assert_eq!(*phi.g(1), th(2).plus(&th(q + 1)).plus(&th(2 * q)));
        assert_eq!(*phi.g(2), th(1).plus(&th(q)).plus(&th(q * q)));
        assert!(phi.delta().is_one());
    }
}

#[test]
fn cm_rejects_bad_theta() {
    let t = FieldTower::new(FieldSpec::new(3, 1, 3)).unwrap();
    let ring = LocalRing::new(&t, 20, 2).unwrap();
    let theta_tau = TwistedPoly::new(vec![ring.theta(), ring.one()]);
    assert_eq!(cm_from_rank1(&theta_tau, 3).unwrap_err(), Error::ThetaPowerMismatch { e: 3 });
    let two = ring.constant(t.elem(Level::Fq, 2).unwrap());
    let unnormalized = TwistedPoly::new(vec![ring.theta(), two]);
    assert_eq!(cm_from_rank1(&unnormalized, 2).unwrap_err(), Error::NotNormalized);
}

#[test]
fn supersingular_iff_gcd_rule() {
    for q in [3u64, 7] {
        for r in [2usize, 3] {
            let t = FieldTower::new(FieldSpec::from_q(q, r as u32).unwrap()).unwrap();
            let phi = DrinfeldModule::standard(&Poly::one(&t, Level::Fq), r);
            let mut seen = 0;
            for d in 1..=3 {
                for pi in Poly::monic_of_degree(&t, Level::Fq, d).filter(Poly::is_irreducible) {
                    let prime = PrimeIdeal::new(pi).unwrap();
                    let h = reduction_height(&phi, &prime).unwrap();
                    assert_eq!(h.supersingular, num_integer::gcd(d, r) == 1, "q={q} r={r} π={}", prime.pi());
                    seen += 1;
                }
            }
            assert!(seen > 0);
        }
    }
}

#[test]
fn phi_is_a_ring_homomorphism() {
    let t = FieldTower::new(FieldSpec::new(3, 1, 2)).unwrap();
    let phi = DrinfeldModule::new(vec![
        Poly::t(&t),
        Poly::new(&t, Level::Fq, vec![1, 1]).unwrap(),
        Poly::one(&t, Level::Fq),
    ])
    .unwrap();
    let a = Poly::new(&t, Level::Fq, vec![2, 0, 1]).unwrap();
    let b = Poly::new(&t, Level::Fq, vec![1, 1]).unwrap();
    let pa = phi.phi_a(&a).unwrap();
    let pb = phi.phi_a(&b).unwrap();
    assert_eq!(phi.phi_a(&a.mul_poly(&b)).unwrap(), pa.tmul(&pb));
    assert_eq!(phi.phi_a(&a.add_poly(&b)).unwrap(), pa.add(&pb));
    assert!(is_morphism(&pa, &phi, &phi));
}

/// Every unit `c` of the residue field with `c^{q^i−1} g_i ≡ g_i'` for all
/// `1 ≤ i ≤ r` (including `Δ`), by schoolbook arithmetic.
fn iso_oracle(naive: &NaiveTower, q: u64, g: &[Vec<u32>], h: &[Vec<u32>], n: usize) -> Vec<u32> {
    let r = g.len();
    (1..naive.size())
        .filter(|&c| {
            (0..r).all(|i| {
                let s = naive.pow(c, q.pow(i as u32 + 1) - 1);
                (0..n).all(|k| {
                    let gk = g[i].get(k).copied().unwrap_or(0);
                    let hk = h[i].get(k).copied().unwrap_or(0);
                    naive.mul(s, gk) == hk
                })
            })
        })
        .collect()
}

#[test]
fn iso_scalars_match_brute_force_over_larger_residue_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for (p, r, m) in [(3u32, 2usize, 2u32), (3, 2, 4), (2, 3, 3), (2, 3, 6), (5, 2, 2)] {
        let t = FieldTower::new(FieldSpec::new(p, 1, m)).unwrap();
        let naive = NaiveTower::from_header(&t.header());
        let ring = LocalRing::new(&t, 6, 1).unwrap();
        for _ in 0..20 {
            let (phi, psi) = random_normalized_pair(&mut rng, &ring, r);
            let coeffs = |m: &DrinfeldModule<LocalElem<'_>>| -> Vec<Vec<u32>> {
                (1..=r).map(|i| m.phi_t().coeffs()[i].raw().to_vec()).collect()
            };
            for n in 1..=6 {
                let got: Vec<u32> = iso_scalars(&phi, &psi, n).unwrap().iter().map(|c| c.value()).collect();
                let want = iso_oracle(&naive, p as u64, &coeffs(&phi), &coeffs(&psi), n);
                assert_eq!(got, want, "p={p} r={r} M={m} n={n}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn twisted_multiplication_is_associative(
        a in prop::collection::vec(0u32..27, 0..4),
        b in prop::collection::vec(0u32..27, 0..4),
        c in prop::collection::vec(0u32..27, 0..4),
    ) {
        let t = FieldTower::new(FieldSpec::new(3, 1, 3)).unwrap();
        let (a, b, c) = (tw(&t, &a), tw(&t, &b), tw(&t, &c));
        prop_assert_eq!(a.tmul(&b).tmul(&c), a.tmul(&b.tmul(&c)));
        prop_assert_eq!(a.tmul(&b.add(&c)), a.tmul(&b).add(&a.tmul(&c)));
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(a.tmul(&b).deg_tau(), Some(a.deg_tau().unwrap() + b.deg_tau().unwrap()));
            prop_assert_eq!(
                a.tmul(&b).tau_valuation().unwrap(),
                a.tau_valuation().unwrap() + b.tau_valuation().unwrap()
            );
        }
    }

    #[test]
    fn twisting_by_a_unit_is_an_isomorphism(c in 1u32..81, g in prop::collection::vec(0u32..81, 2)) {
        let t = FieldTower::new(FieldSpec::new(3, 1, 4)).unwrap();
        let c = t.elem(Level::Fqr, c).unwrap();
        let coeffs: Vec<FieldElem<'_>> = [t.elem(Level::Fqr, 1).unwrap()]
            .into_iter()
            .chain(g.iter().map(|&v| t.elem(Level::Fqr, v).unwrap()))
            .chain([t.one()])
            .collect();
        let phi = DrinfeldModule::new(coeffs).unwrap();
        let psi = phi.twist(&c).unwrap();
        let u = TwistedPoly::new(vec![c]);
        prop_assert!(is_morphism(&u, &phi, &psi));
    }
}
