use hocat::simplex::{from_interval_dual, hom_count, interval_dual, DeltaTruncation, SimplexMorphism};
use proptest::prelude::*;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn hom_counts_match_binomials() {
    let delta = DeltaTruncation::new(4);
    for m in 0..=4 {
        for n in 1..=4 {
            let expected = binomial(m + n - 1, m);
            assert_eq!(hom_count(m, n), expected, "|Δ({m}, {n})|");
            assert_eq!(delta.enumerate_hom(m, n).unwrap().len(), expected);
        }
    }
    // only the empty ordinal maps to the empty ordinal
    assert_eq!(delta.enumerate_hom(0, 0).unwrap().len(), 1);
    assert!(delta.enumerate_hom(2, 0).unwrap().is_empty());
}

#[test]
fn collapse_is_the_unique_map_to_one() {
    let delta = DeltaTruncation::new(4);
    for m in 0..=4 {
        let homs = delta.enumerate_hom(m, 1).unwrap();
        assert_eq!(homs, vec![SimplexMorphism::collapse(m)]);
    }
}

fn morphism(bound: usize) -> impl Strategy<Value = SimplexMorphism> {
    let all = DeltaTruncation::new(bound).all_morphisms();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn composable(bound: usize) -> impl Strategy<Value = (SimplexMorphism, SimplexMorphism)> {
    let all = DeltaTruncation::new(bound).all_morphisms();
    morphism(bound).prop_flat_map(move |f| {
        let next: Vec<SimplexMorphism> = all.iter().filter(|g| g.dom() == f.cod()).cloned().collect();
        (Just(f), (0..next.len()).prop_map(move |i| next[i].clone()))
    })
}

proptest! {
    #[test]
    fn composition_is_associative((f, g) in composable(3), k in 0usize..8) {
        let delta = DeltaTruncation::new(3);
        let hs: Vec<SimplexMorphism> = delta.all_morphisms().into_iter().filter(|h| h.dom() == g.cod()).collect();
        let h = &hs[k % hs.len()];
        let left = h.after(&g.after(&f).unwrap()).unwrap();
        let right = h.after(&g).unwrap().after(&f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn ordinal_sum_is_a_bifunctor((f, g) in composable(2), (f2, g2) in composable(2)) {
        let left = g.after(&f).unwrap().plus(&g2.after(&f2).unwrap());
        let right = g.plus(&g2).after(&f.plus(&f2)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn interval_dual_is_contravariant((f, g) in composable(4)) {
        let gf = g.after(&f).unwrap();
        let (df, dg) = (interval_dual(&f), interval_dual(&g));
        let composite: Vec<usize> = dg.iter().map(|&j| df[j]).collect();
        prop_assert_eq!(interval_dual(&gf), composite);
    }

    #[test]
    fn interval_dual_round_trips(f in morphism(4)) {
        let d = interval_dual(&f);
        prop_assert_eq!(d.len(), f.cod() + 1);
        prop_assert_eq!(from_interval_dual(f.dom(), &d), Some(f));
    }

    #[test]
    fn every_morphism_factors_through_generators(f in morphism(4)) {
        let delta = DeltaTruncation::new(4);
        let path = delta.factor(&f).expect("factorisation exists");
        let mut acc = SimplexMorphism::identity(f.dom());
        for step in &path {
            acc = step.after(&acc).unwrap();
        }
        prop_assert_eq!(acc, f);
    }
}
