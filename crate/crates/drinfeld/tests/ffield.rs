mod common;

use common::{irreducible_mod_p, NaiveTower};
use drinfeld::ffield::{FieldSpec, FieldTower, Level};
use drinfeld::Error;
use proptest::prelude::*;

const SPECS: [(u32, u32, u32); 7] = [(2, 1, 3), (3, 1, 3), (2, 2, 2), (3, 2, 2), (5, 1, 2), (7, 1, 3), (2, 3, 2)];

fn towers() -> Vec<FieldTower> {
    SPECS.iter().map(|&(p, e, r)| FieldTower::new(FieldSpec::new(p, e, r)).unwrap()).collect()
}

#[test]
fn products_match_schoolbook_tower() {
    for t in towers() {
        let naive = NaiveTower::from_header(&t.header());
        let n = t.size(Level::Fqr);
        let step = (n / 97).max(1);
        for a in (0..n).step_by(step as usize) {
            for b in (0..n).step_by((step as usize).max(3)) {
                assert_eq!(t.mul(a, b), naive.mul(a, b), "{:?}: {a} * {b}", t.spec());
                assert_eq!(t.add(a, b), naive.add(a, b), "{:?}: {a} + {b}", t.spec());
            }
        }
    }
}

#[test]
fn moduli_are_irreducible() {
    for t in towers() {
        let h = t.header();
        assert!(irreducible_mod_p(&h.fq_modulus, h.p) || h.e == 1, "{h:?}");
        // F_{q^r} has exactly q^r elements only if the generator has full order.
        let g = t.generator();
        let n = (t.size(Level::Fqr) - 1) as u64;
        for ell in drinfeld::arith::prime_factors(n) {
            assert!(!g.pow(n / ell).is_one(), "generator order in {h:?}");
        }
    }
}

#[test]
fn frobenius_fixes_exactly_fq() {
    for t in towers() {
        let fixed: Vec<u32> = (0..t.size(Level::Fqr)).filter(|&v| t.frob(v, 1) == v).collect();
        let expected: Vec<u32> = (0..t.q()).collect();
        assert_eq!(fixed, expected, "{:?}", t.spec());
    }
}

#[test]
fn trace_and_norm_are_surjective_onto_fq() {
    for t in towers() {
        let q = t.q() as usize;
        let mut traces = vec![0usize; q];
        let mut norms = vec![0usize; q];
        for x in t.enumerate(Level::Fqr) {
            traces[x.trace().value() as usize] += 1;
            norms[x.norm().value() as usize] += 1;
        }
        let n = t.size(Level::Fqr) as usize;
        assert!(traces.iter().all(|&c| c == n / q));
        assert_eq!(norms[0], 1);
        assert!(norms[1..].iter().all(|&c| c == (n - 1) / (q - 1)));
    }
}

#[test]
fn rejects_bad_input() {
    assert_eq!(FieldTower::new(FieldSpec::new(4, 1, 2)).unwrap_err(), Error::NonPrime(4));
    assert!(matches!(FieldTower::new(FieldSpec::new(101, 2, 4)), Err(Error::CapExceeded { .. })));
    assert_eq!(FieldSpec::from_q(12, 2).unwrap_err(), Error::NotPrimePower(12));
    let t = FieldTower::new(FieldSpec::new(3, 1, 2)).unwrap();
    assert_eq!(t.elem(Level::Fq, 3).unwrap_err(), Error::NotInField);
    assert!(t.zero().inv().is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(idx in 0usize..SPECS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (p, e, r) = SPECS[idx];
        let t = FieldTower::new(FieldSpec::new(p, e, r)).unwrap();
        let n = t.size(Level::Fqr);
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
        prop_assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
        prop_assert_eq!(t.add(a, t.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(t.mul(a, t.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(t.frob(t.mul(a, b), 1), t.mul(t.frob(a, 1), t.frob(b, 1)));
        prop_assert_eq!(t.frob(t.add(a, b), 1), t.add(t.frob(a, 1), t.frob(b, 1)));
        prop_assert_eq!(t.frob(a, r as i64), a);
        prop_assert_eq!(t.frob(t.frob(a, -1), 1), a);
    }

    #[test]
    fn pow_matches_naive(idx in 0usize..SPECS.len(), a in any::<u32>(), k in 0u64..5000) {
        let (p, e, r) = SPECS[idx];
        let t = FieldTower::new(FieldSpec::new(p, e, r)).unwrap();
        let naive = NaiveTower::from_header(&t.header());
        let a = a % t.size(Level::Fqr);
        prop_assert_eq!(t.pow(a, k), naive.pow(a, k));
    }
}
