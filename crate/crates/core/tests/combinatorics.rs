use std::collections::BTreeSet;

use proptest::prelude::*;
use ptwishart_core::engine::f_exponent;
use ptwishart_core::enumerate::{factorial, for_each_permutation};
use ptwishart_core::nc::{
    catalan, cumulants_from_moments, enumerate_nc_perms, enumerate_pairings, mixed_cumulant,
    moments_from_cumulants, CumulantSequence, MomentSequence,
};
use ptwishart_core::perm::{
    bn_cycle_identity_check, conjugated_pairing_preserves_positives, genus,
    is_constant_on_cycles, is_noncrossing, join, sigma_epsilon,
};
use ptwishart_core::{EpsilonVector, SignedPerm};
use num_rational::BigRational;

fn embed0(images: &[u32]) -> SignedPerm {
    let one_based: Vec<usize> = images.iter().map(|&i| i as usize + 1).collect();
    SignedPerm::embed(&one_based).unwrap()
}

fn all_sign_vectors(n: usize) -> Vec<EpsilonVector> {
    (0..1u32 << n)
        .map(|mask| {
            let signs: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            EpsilonVector::new(&signs).unwrap()
        })
        .collect()
}

#[test]
fn noncrossing_counts_are_catalan() {
    for n in 1..=8 {
        assert_eq!(enumerate_nc_perms(n).unwrap().len() as u64, catalan(n), "n = {n}");
    }
}

#[test]
fn noncrossing_even_cycle_identity() {
    for n in 1..=7 {
        let gamma = SignedPerm::gamma(n);
        for sigma in enumerate_nc_perms(n).unwrap().members() {
            assert!(bn_cycle_identity_check(sigma, &gamma).unwrap(), "{sigma}");
        }
    }
}

#[test]
fn noncrossing_with_noncrossing_inverse_is_involution() {
    for n in 1..=8 {
        for_each_permutation(n, |p| {
            let sigma = embed0(p);
            if is_noncrossing(&sigma) && is_noncrossing(&sigma.inverse()) {
                assert!(sigma.is_involution(), "{sigma}");
            }
        });
    }
}

#[test]
fn pairing_join_counts_half_the_product_cycles() {
    for n in 1..=5 {
        let pairings = enumerate_pairings(n, false).unwrap();
        for pi in pairings.members() {
            for sigma in pairings.members() {
                let blocks = join(pi, sigma).unwrap().block_count();
                assert_eq!(2 * blocks, pi.compose(sigma).unwrap().cycle_count());
            }
        }
    }
}

#[test]
fn f_exponent_nonpositive_with_equality_characterised() {
    for n in 1..=5 {
        let signs = all_sign_vectors(n);
        for_each_permutation(n, |p| {
            let sigma = embed0(p);
            for eps in &signs {
                let f = f_exponent(&sigma, eps).unwrap();
                assert!(f <= 0);
                let constant = is_constant_on_cycles(eps, &sigma);
                assert_eq!(constant, conjugated_pairing_preserves_positives(eps, &sigma));
                let zero = constant && is_noncrossing(&sigma_epsilon(&sigma, eps).unwrap());
                assert_eq!(f == 0, zero, "sigma = {sigma}, eps = {:?}", eps.signs());
            }
        });
    }
}

#[test]
fn sigma_epsilon_conjugation_identity() {
    for n in 1..=5 {
        let signs = all_sign_vectors(n);
        let delta = SignedPerm::delta(n);
        for_each_permutation(n, |p| {
            let sigma = embed0(p);
            for eps in signs.iter().filter(|e| is_constant_on_cycles(e, &sigma)) {
                let e = eps.to_perm();
                let lhs = e
                    .compose(&delta)
                    .and_then(|x| x.compose(&sigma))
                    .and_then(|x| x.compose(&delta))
                    .and_then(|x| x.compose(&sigma.inverse()))
                    .and_then(|x| x.compose(&e))
                    .unwrap();
                let se = sigma_epsilon(&sigma, eps).unwrap();
                let rhs = delta
                    .compose(&se)
                    .and_then(|x| x.compose(&delta))
                    .and_then(|x| x.compose(&se.inverse()))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        });
    }
}

#[test]
fn sigma_to_delta_pairing_is_a_bijection() {
    for n in 1..=6 {
        let delta = SignedPerm::delta(n);
        let mut images = BTreeSet::new();
        for_each_permutation(n, |p| {
            let sigma = embed0(p);
            let pairing = sigma.compose(&delta).unwrap().compose(&sigma.inverse()).unwrap();
            assert!(pairing.is_pairing());
            let back = pairing.compose(&delta).unwrap();
            assert_eq!(back.restrict_to_positives(), sigma.restrict_to_positives());
            images.insert(pairing.dense().to_vec());
        });
        assert_eq!(images.len() as u64, factorial(n));
        let delta_pairings: BTreeSet<Vec<u32>> = enumerate_pairings(n, true)
            .unwrap()
            .members()
            .iter()
            .map(|p| p.dense().to_vec())
            .collect();
        assert_eq!(images, delta_pairings);
    }
}

#[test]
fn genus_zero_against_gamma_is_noncrossing() {
    for n in 1..=6 {
        let gamma = SignedPerm::gamma(n);
        for_each_permutation(n, |p| {
            let sigma = embed0(p);
            assert_eq!(genus(&gamma, &sigma).unwrap() == 0, is_noncrossing(&sigma));
        });
    }
}

#[test]
fn moment_cumulant_transforms_invert() {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let kappa = CumulantSequence::new(vec![r(1, 2), r(-3, 4), r(2, 1), r(0, 1), r(5, 7), r(1, 9), r(-1, 1), r(3, 2)])
        .unwrap();
    let m = moments_from_cumulants(&kappa, 8).unwrap();
    assert_eq!(cumulants_from_moments(&m, 8).unwrap(), kappa);
    let m = MomentSequence::new((1..=8).map(|k| r(k * k, 3)).collect()).unwrap();
    let k = cumulants_from_moments(&m, 8).unwrap();
    assert_eq!(moments_from_cumulants(&k, 8).unwrap(), m);
}

#[test]
fn mixed_cumulant_is_multilinear() {
    // moments of a family of commuting scalars: φ(x_{i1} ⋯ x_{in}) = ∏ values
    let values = [BigRational::from_integer(2.into()), BigRational::from_integer(3.into())];
    let oracle = |w: &[usize]| w.iter().map(|&i| values[i].clone()).product::<BigRational>();
    // constants have vanishing cumulants of order ≥ 2
    assert_eq!(mixed_cumulant(oracle, &[0, 1, 0]).unwrap(), BigRational::from_integer(0.into()));
    let table = |w: &[usize]| -> BigRational {
        let m: [[i64; 3]; 3] = [[1, 2, 0], [2, 5, 1], [0, 1, 4]];
        match w.len() {
            1 => BigRational::from_integer((w[0] as i64 + 1).into()),
            2 => BigRational::from_integer(m[w[0]][w[1]].into()),
            _ => BigRational::from_integer(1.into()),
        }
    };
    let k01 = mixed_cumulant(table, &[0, 1]).unwrap();
    // letter 2 plays the role of letter 0 + letter 1
    let sum_table = |w: &[usize]| -> BigRational {
        if w.len() == 2 && w[0] == 2 {
            table(&[0, w[1]]) + table(&[1, w[1]])
        } else if w.len() == 1 && w[0] == 2 {
            table(&[0]) + table(&[1])
        } else {
            table(w)
        }
    };
    let k21_sum = mixed_cumulant(sum_table, &[2, 1]).unwrap();
    let k11 = mixed_cumulant(table, &[1, 1]).unwrap();
    assert_eq!(k21_sum, k01 + k11);
}

fn signed_perm(max_n: usize) -> impl Strategy<Value = SignedPerm> {
    (1..=max_n).prop_flat_map(|n| {
        Just((0..2 * n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |map| SignedPerm::from_dense(n, map).unwrap())
    })
}

fn perm_pair(max_n: usize) -> impl Strategy<Value = (SignedPerm, SignedPerm)> {
    (1..=max_n).prop_flat_map(|n| {
        let one = Just((0..2 * n as u32).collect::<Vec<_>>()).prop_shuffle();
        (one.clone(), one).prop_map(move |(a, b)| {
            (
                SignedPerm::from_dense(n, a).unwrap(),
                SignedPerm::from_dense(n, b).unwrap(),
            )
        })
    })
}

proptest! {
    #[test]
    fn cycle_count_is_a_class_function((a, b) in perm_pair(7)) {
        let ab = a.compose(&b).unwrap();
        let ba = b.compose(&a).unwrap();
        prop_assert_eq!(ab.cycle_count(), ba.cycle_count());
        let conj = b.inverse().compose(&a).unwrap().compose(&b).unwrap();
        prop_assert_eq!(conj.cycle_count(), a.cycle_count());
    }

    #[test]
    fn inverse_and_identity((a, b) in perm_pair(6)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        let abi = a.compose(&b).unwrap().inverse();
        prop_assert_eq!(abi, b.inverse().compose(&a.inverse()).unwrap());
    }

    #[test]
    fn display_parses_back(a in signed_perm(7)) {
        prop_assert_eq!(SignedPerm::parse(a.n(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn genus_is_symmetric_and_inversion_invariant((a, b) in perm_pair(6)) {
        let g = genus(&a, &b);
        prop_assert_eq!(&g, &genus(&b, &a));
        prop_assert_eq!(&g, &genus(&a.inverse(), &b.inverse()));
        if g.is_err() {
            prop_assert!(join(&a, &b).unwrap().block_count() > 1);
        }
    }

    #[test]
    fn embedded_cycle_count(p in (1usize..=7).prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())) {
        let sigma = embed0(&p);
        let n = p.len();
        let delta = SignedPerm::delta(n);
        let twisted = delta.compose(&sigma).unwrap().compose(&delta).unwrap();
        prop_assert!((1..=n as i64).all(|k| twisted.apply(k) == k));
        let commutator = twisted.compose(&sigma.inverse()).unwrap();
        prop_assert_eq!(commutator.cycle_count(), 2 * (sigma.cycle_count() - n));
    }
}
