use std::collections::BTreeSet;

use alcove_compress::chain::{
    chain_type_a, chain_type_c, enumerate_folding_pairs, enumerate_positive_folding_pairs, FoldingPair, LambdaChain,
};
use alcove_compress::qt::FactorDenominator;
use alcove_compress::weyl::{enumerate_group, positive_roots, CartanType, GroupElement};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn group(cartan: CartanType, n: usize) -> Vec<GroupElement> {
    enumerate_group(cartan, n).collect()
}

#[test]
fn reflections_are_involutions_and_flip_parity() {
    for (cartan, n) in [(CartanType::A, 4), (CartanType::C, 3)] {
        let roots = positive_roots(cartan, n);
        for u in group(cartan, n) {
            for &r in &roots {
                let v = u.compose(r).unwrap();
                assert_eq!(v.compose(r).unwrap(), u);
                assert_ne!(u.length() % 2, v.length() % 2, "{u} {r}");
            }
        }
    }
}

#[test]
fn length_extremes() {
    for n in 2..=5 {
        let a = group(CartanType::A, n);
        assert_eq!(a.iter().find(|u| u.is_identity()).unwrap().length(), 0);
        assert_eq!(a.iter().map(GroupElement::length).max(), Some(n * (n - 1) / 2));
    }
    for n in 2..=4 {
        assert_eq!(group(CartanType::C, n).iter().map(GroupElement::length).max(), Some(n * n));
    }
}

fn arb_weight(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-5i64..=5, n)
}

proptest! {
    #[test]
    fn action_respects_composition(
        idx in 0usize..48,
        labels in proptest::collection::vec(0usize..9, 0..6),
        mu in arb_weight(3),
    ) {
        let g = group(CartanType::C, 3);
        let roots = positive_roots(CartanType::C, 3);
        let u = &g[idx];
        let mut composed = u.clone();
        let mut expected = mu.clone();
        for &l in labels.iter().rev() {
            expected = GroupElement::identity(CartanType::C, 3).compose(roots[l]).unwrap().act_on_weight(&expected).unwrap();
        }
        expected = u.act_on_weight(&expected).unwrap();
        for &l in &labels {
            composed = composed.compose(roots[l]).unwrap();
        }
        prop_assert_eq!(composed.act_on_weight(&mu).unwrap(), expected);
    }

    #[test]
    fn denominators_expand_to_one_at_origin(factors in proptest::collection::vec((0u32..4, 0u32..4, 1u32..3), 0..5)) {
        let mut d = FactorDenominator::one();
        for (a, b, m) in factors {
            if (a, b) != (0, 0) {
                d = d.with_factor(a, b, m).unwrap();
            }
        }
        let v = d.eval(&BigRational::zero(), &BigRational::zero()).unwrap();
        prop_assert!(v.is_one());
    }
}

fn chains() -> Vec<LambdaChain> {
    vec![
        chain_type_a(&"2,1".parse().unwrap(), 3).unwrap(),
        chain_type_a(&"3,2,1".parse().unwrap(), 4).unwrap(),
        chain_type_a(&"4,3,1".parse().unwrap(), 4).unwrap(),
        chain_type_c(&"2,1".parse().unwrap(), 2).unwrap(),
        chain_type_c(&"3,2,1".parse().unwrap(), 3).unwrap(),
    ]
}

#[test]
fn levels_recount() {
    for chain in chains() {
        for j in 1..=chain.len() {
            let count = (1..=j).filter(|&i| chain.root(i) == chain.root(j)).count();
            assert_eq!(chain.level(j) as usize, count);
        }
    }
}

fn check_pair(pair: &FoldingPair<'_>) {
    let folds = pair.folds();
    let (plus, minus) = pair.classify();
    assert_eq!(plus.len() + minus.len(), folds.len());
    let mut merged: Vec<usize> = plus.iter().chain(&minus).copied().collect();
    merged.sort_unstable();
    assert_eq!(merged, folds);
    let again = FoldingPair::new(pair.chain(), pair.w().clone(), merged).unwrap();
    assert_eq!(again.classify(), (plus.clone(), minus.clone()));
    let (lw, le) = (pair.w().length(), pair.end().length());
    assert_eq!((lw + le) % 2, folds.len() % 2);
    if minus.is_empty() {
        assert!(le + folds.len() <= lw);
    }
}

#[test]
fn folding_pair_structure() {
    for chain in chains().iter().filter(|c| c.len() <= 12) {
        for pair in enumerate_folding_pairs(chain).step_by(7) {
            check_pair(&pair);
        }
    }
}

#[test]
fn positive_enumeration_matches_brute_filter() {
    for chain in [chain_type_c(&"2,1".parse().unwrap(), 2).unwrap(), chain_type_a(&"2,1".parse().unwrap(), 3).unwrap()] {
        let key = |p: &FoldingPair<'_>| (p.w().window().to_vec(), p.folds().to_vec());
        let fast: BTreeSet<_> = enumerate_positive_folding_pairs(&chain).map(|p| key(&p)).collect();
        let brute: BTreeSet<_> = enumerate_folding_pairs(&chain).filter(|p| p.classify().1.is_empty()).map(|p| key(&p)).collect();
        assert!(!fast.is_empty());
        assert_eq!(fast, brute);
    }
}
