use drinfeld::drinfeld::{cm_from_rank1, iso_scalars, DrinfeldModule};
use drinfeld::ffield::{FieldSpec, FieldTower, Level};
use drinfeld::jinv::{
    check_jest_bound, check_relation_r3, enumerate_delta_tuples, eval_j, random_normalized_pair, theta_valuation,
    valuation_of_j, DeltaTuple, Valuation, ValuationQ,
};
use drinfeld::ring::Ring;
use drinfeld::twisted::{LocalElem, LocalRing, TwistedPoly};
use drinfeld::Error;
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Both defining conditions, re-derived here from scratch.
fn conditions(q: u64, d: &DeltaTuple) -> bool {
    let r = d.deltas.len() as u32 + 1;
    let weighted: u64 = d.deltas.iter().zip(1..).map(|(&x, i)| x * (q.pow(i) - 1)).sum();
    let first = weighted == d.delta_r * (q.pow(r) - 1);
    let bounded = d.deltas.iter().zip(1u32..).all(|(&x, i)| x <= (q.pow(r) - 1) / (q.pow(i.gcd(&r)) - 1));
    let coprime = d.deltas.iter().fold(d.delta_r, |g, &x| g.gcd(&x)) == 1;
    first && bounded && coprime
}

#[test]
fn rank_two_has_one_tuple() {
    for q in [3u64, 5, 7] {
        assert_eq!(enumerate_delta_tuples(q, 2).unwrap(), vec![DeltaTuple { deltas: vec![q + 1], delta_r: 1 }]);
    }
}

#[test]
fn rank_three_named_tuples() {
    for q in [3u64, 5, 7] {
        let all = enumerate_delta_tuples(q, 3).unwrap();
        let big = q * q + q + 1;
        for want in [(vec![big, 0], 1), (vec![1, q], 1), (vec![0, big], q + 1)] {
            assert!(all.contains(&DeltaTuple { deltas: want.0.clone(), delta_r: want.1 }), "q={q} {want:?}");
        }
    }
}

#[test]
fn enumeration_is_sound_sorted_and_weighty() {
    for q in [3u64, 5, 7] {
        for r in [2usize, 3, 4] {
            let all = enumerate_delta_tuples(q, r).unwrap();
            assert!(!all.is_empty());
            assert!(all.windows(2).all(|w| w[0] < w[1]), "sorted without duplicates");
            for d in &all {
                assert!(conditions(q, d), "q={q} r={r} {d}");
                assert!(d.weight() > q, "q={q} r={r} {d}");
            }
        }
    }
}

#[test]
fn enumeration_is_complete_for_small_cases() {
    // Brute force over the box of condition (2), deriving δ_r from (1).
    for (q, r) in [(2u64, 3usize), (3, 3), (2, 4)] {
        let bound = |i: u32| (q.pow(r as u32) - 1) / (q.pow(i.gcd(&(r as u32))) - 1);
        let mut want = Vec::new();
        let mut idx = vec![0u64; r - 1];
        loop {
            let s: u64 = idx.iter().zip(1..).map(|(&x, i)| x * (q.pow(i) - 1)).sum();
            if s > 0 && s.is_multiple_of(q.pow(r as u32) - 1) {
                let d = DeltaTuple { deltas: idx.clone(), delta_r: s / (q.pow(r as u32) - 1) };
                if conditions(q, &d) {
                    want.push(d);
                }
            }
            let mut k = 0;
            loop {
                if k == r - 1 {
                    want.sort();
                    assert_eq!(enumerate_delta_tuples(q, r).unwrap(), want, "q={q} r={r}");
                    break;
                }
                idx[k] += 1;
                if idx[k] <= bound(k as u32 + 1) {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == r - 1 {
                break;
            }
        }
    }
}

#[test]
fn bad_tuples_and_parameters() {
    assert_eq!(DeltaTuple::new(3, vec![1, 1]).unwrap_err(), Error::BadDeltaTuple);
    assert_eq!(DeltaTuple::new(3, vec![0, 26]).unwrap_err(), Error::BadDeltaTuple);
    assert!(enumerate_delta_tuples(1, 3).is_err());
    assert!(enumerate_delta_tuples(3, 1).is_err());
}

#[test]
fn standard_module_has_vanishing_invariants() {
    let t = FieldTower::new(FieldSpec::new(3, 1, 3)).unwrap();
    let ring = LocalRing::new(&t, 10, 3).unwrap();
    let phi = DrinfeldModule::standard(&ring.one(), 3);
    for d in enumerate_delta_tuples(3, 3).unwrap() {
        assert!(eval_j(&phi, &d).unwrap().value().unwrap().is_zero(), "{d}");
        assert_eq!(valuation_of_j(&phi, &d).unwrap(), Valuation::Infinite);
    }
    assert!(check_relation_r3(&phi, 3).unwrap());
}

#[test]
fn cm_valuations() {
    for q in [3u64, 7] {
        let t = FieldTower::new(FieldSpec::from_q(q, 3).unwrap()).unwrap();
        let big = q * q + q + 1;
        let d = DeltaTuple::new(q, vec![0, big]).unwrap();
        let ring = LocalRing::new(&t, 12 * big as usize + 1, 3).unwrap();
        let phi = cm_from_rank1(&TwistedPoly::new(vec![ring.theta(), ring.one()]), 3).unwrap();
        assert_eq!(theta_valuation(&ring.theta()), Valuation::Finite(ValuationQ::new(1, 3)));
        assert_eq!(theta_valuation(phi.g(2)), Valuation::Finite(ValuationQ::new(1, 3)));
        assert_eq!(valuation_of_j(&phi, &d).unwrap(), Valuation::Finite(ValuationQ::new(big as i64, 3)));
        let j = eval_j(&phi, &d).unwrap().value().unwrap();
        assert_eq!(j, phi.g(2).pow(big));
        assert!(check_relation_r3(&phi, q).unwrap());
    }
}

#[test]
fn cm_against_standard_is_tight_at_level_one() {
    let q = 3u64;
    let t = FieldTower::new(FieldSpec::from_q(q, 3).unwrap()).unwrap();
    let ring = LocalRing::new(&t, 12, 3).unwrap();
    let phi = cm_from_rank1(&TwistedPoly::new(vec![ring.theta(), ring.one()]), 3).unwrap();
    let psi = DrinfeldModule::standard(&ring.one(), 3);
    let d = DeltaTuple::new(q, vec![0, 13]).unwrap();
    let rep = check_jest_bound(&phi, &psi, &d, 12).unwrap();
    assert_eq!(rep.iso_counts[0], 26);
    assert_eq!(rep.iso_sum, 26);
    assert_eq!(rep.lhs, Valuation::Finite(ValuationQ::new(13, 1)));
    let std = rep.rhs_standard.unwrap();
    assert_eq!((std.num, std.den), (13, 1));
    assert!(rep.holds);
}

#[test]
fn sparse_constant_is_reported() {
    let t = FieldTower::new(FieldSpec::new(3, 1, 3)).unwrap();
    let ring = LocalRing::new(&t, 8, 1).unwrap();
    let psi = DrinfeldModule::sparse(&ring.one(), 1, 3).unwrap();
    let mut g = psi.phi_t().coeffs().to_vec();
    g[2] = ring.theta_pow(2);
    let phi = DrinfeldModule::new(g).unwrap();
    let d = DeltaTuple::new(3, vec![1, 3]).unwrap();
    let rep = check_jest_bound(&phi, &psi, &d, 8).unwrap();
    let sparse = rep.rhs_sparse.clone().expect("ψ is sparse");
    assert_eq!(sparse.j, 1);
    assert!(rep.holds, "{rep:?}");
}

#[test]
fn identical_modules_have_infinite_difference() {
    let t = FieldTower::new(FieldSpec::new(3, 1, 2)).unwrap();
    let ring = LocalRing::new(&t, 5, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (phi, _) = random_normalized_pair(&mut rng, &ring, 2);
    let d = DeltaTuple::new(3, vec![4]).unwrap();
    let rep = check_jest_bound(&phi, &phi, &d, 5).unwrap();
    assert!(rep.isomorphic);
    assert_eq!(rep.lhs, Valuation::Infinite);
    assert!(rep.holds);
}

#[test]
fn truncation_must_certify_the_sum() {
    let t = FieldTower::new(FieldSpec::new(3, 1, 2)).unwrap();
    let ring = LocalRing::new(&t, 6, 1).unwrap();
    let phi = DrinfeldModule::new(vec![ring.theta(), ring.theta_pow(5), ring.one()]).unwrap();
    let psi = DrinfeldModule::standard(&ring.one(), 2);
    let d = DeltaTuple::new(3, vec![4]).unwrap();
    assert_eq!(check_jest_bound(&phi, &psi, &d, 3).unwrap_err(), Error::TruncationTooSmall(3));
    assert!(check_jest_bound(&phi, &psi, &d, 6).unwrap().holds);
}

#[test]
fn valuation_serializes_as_fraction() {
    let v = Valuation::Finite(ValuationQ::new(26, 6));
    let s = serde_json::to_string(&v).unwrap();
    assert_eq!(s, r#"{"finite":{"num":13,"den":3}}"#);
    assert_eq!(serde_json::from_str::<Valuation>(&s).unwrap(), v);
    assert_eq!(serde_json::to_string(&Valuation::Infinite).unwrap(), r#""infinite""#);
}

/// `φ, ψ` with every `g_i ≡ 0 mod θ^k` that first differ at `θ^k` in `g_1`.
fn agreeing_pair<'a>(
    rng: &mut ChaCha8Rng,
    ring: &'a LocalRing<'a>,
    r: usize,
    k: usize,
) -> (DrinfeldModule<LocalElem<'a>>, DrinfeldModule<LocalElem<'a>>) {
    let size = ring.tower().size(Level::Fqr);
    let n = ring.truncation();
    let mut tail = |lead: Option<u32>| {
        let mut c = vec![0u32; n];
        for v in c.iter_mut().skip(k) {
            *v = rng.gen_range(0..size);
        }
        if let Some(l) = lead {
            c[k] = l;
        }
        ring.elem(c).unwrap()
    };
    let mut phi = vec![ring.theta()];
    let mut psi = vec![ring.theta()];
    for i in 1..r {
        let lead = (i == 1).then_some(0);
        phi.push(tail(lead));
        psi.push(tail(lead.map(|_| 1)));
    }
    phi.push(ring.one());
    psi.push(ring.one());
    (DrinfeldModule::new(phi).unwrap(), DrinfeldModule::new(psi).unwrap())
}

#[test]
fn iso_counts_of_agreeing_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA9EE);
    for (q, r) in [(3u64, 2usize), (3, 3), (5, 2), (2, 4)] {
        let t = FieldTower::new(FieldSpec::from_q(q, r as u32).unwrap()).unwrap();
        let ring = LocalRing::new(&t, 7, 1).unwrap();
        let units = q.pow(r as u32) - 1;
        let d = enumerate_delta_tuples(q, r).unwrap().remove(0);
        for k in 1..=5 {
            let (phi, psi) = agreeing_pair(&mut rng, &ring, r, k);
            let sum: usize = (1..=7).map(|n| iso_scalars(&phi, &psi, n).unwrap().len()).sum();
            assert_eq!(sum as u64, k as u64 * units, "q={q} r={r} k={k}");
            let rep = check_jest_bound(&phi, &psi, &d, 7).unwrap();
            assert_eq!(rep.iso_sum, k as u64 * units);
            assert!(rep.holds, "{rep:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn j_is_invariant_under_twists(seed in any::<u64>(), c in 1u32..27) {
        let t = FieldTower::new(FieldSpec::new(3, 1, 3)).unwrap();
        let ring = LocalRing::new(&t, 6, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g: Vec<_> = (0..2)
            .map(|_| ring.elem((0..6).map(|_| rng.gen_range(0..27)).collect()).unwrap())
            .collect();
        let delta = ring.constant(t.elem(Level::Fqr, 1 + rng.gen_range(0..26)).unwrap());
        let phi = DrinfeldModule::new(vec![ring.theta(), g[0].clone(), g[1].clone(), delta]).unwrap();
        let psi = phi.twist(&ring.constant(t.elem(Level::Fqr, c).unwrap())).unwrap();
        for d in enumerate_delta_tuples(3, 3).unwrap() {
            prop_assert!(eval_j(&phi, &d).unwrap().same_as(&eval_j(&psi, &d).unwrap()), "{}", d);
        }
        prop_assert!(check_relation_r3(&phi, 3).unwrap());
    }

    #[test]
    fn jest_bound_on_random_pairs(seed in any::<u64>()) {
        let t = FieldTower::new(FieldSpec::new(3, 1, 2)).unwrap();
        let ring = LocalRing::new(&t, 5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (phi, psi) = random_normalized_pair(&mut rng, &ring, 2);
        let d = DeltaTuple::new(3, vec![4]).unwrap();
        let rep = check_jest_bound(&phi, &psi, &d, 5).unwrap();
        prop_assert!(rep.holds, "{:?}", rep);
    }
}
