use hocat::equivalences::{
    check_triangle_identities, find_pseudo_inverse, promote_to_adjoint, SearchConfig,
};
use hocat::fincat::{product, small_corpus, FinCat, FunctorData};
use proptest::prelude::*;

fn codiscrete2() -> FinCat {
    FinCat::codiscrete(&["p".to_string(), "q".to_string()])
}

/// `C × codiscrete(2) → C`, which is an equivalence but not an isomorphism.
fn fold_duplicate(c: &FinCat) -> FunctorData {
    let big = product(&[c, &codiscrete2()]);
    FunctorData::from_fns(&big, c, |o| o / 2, |m| m / 4)
}

fn seeds() -> Vec<Option<u64>> {
    vec![None, Some(0), Some(1), Some(7), Some(42)]
}

#[test]
fn promotion_repairs_every_witness_in_the_corpus() {
    let mut repaired = 0;
    for (name, c) in small_corpus() {
        assert!(c.num_objects() <= 4, "{name}");
        for g in [FunctorData::identity(&c), fold_duplicate(&c)] {
            for seed in seeds() {
                let cfg = SearchConfig { seed, ..SearchConfig::default() };
                let w = find_pseudo_inverse(&g, cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
                assert!(w.validate().is_empty(), "{name}: {:?}", w.validate());
                repaired += usize::from(!check_triangle_identities(&w).is_empty());
                let a = promote_to_adjoint(&w).unwrap();
                assert!(check_triangle_identities(&a).is_empty(), "{name} seed {seed:?}");
                assert_eq!(a.eta, w.eta);
                let again = promote_to_adjoint(&a).unwrap();
                assert_eq!(again, a, "{name}: promotion is not idempotent");
            }
        }
    }
    assert!(repaired > 0, "no witness needed repair");
}

#[test]
fn non_equivalences_have_no_pseudo_inverse() {
    let c = FinCat::chain(2);
    let to_point = FunctorData::constant(&c, &FinCat::terminal(), 0);
    assert!(find_pseudo_inverse(&to_point, SearchConfig::default()).is_err());
    let two = FinCat::discrete(&["a", "b"]);
    let include = FunctorData::from_fns(&two, &c, |o| o, |m| c.identity(m));
    assert!(find_pseudo_inverse(&include, SearchConfig::default()).is_err());
}

#[test]
fn search_is_deterministic_per_seed() {
    let c = product(&[&FinCat::cyclic_group(2, "*", "g"), &codiscrete2()]);
    let g = fold_duplicate(&c);
    for seed in seeds() {
        let cfg = SearchConfig { seed, ..SearchConfig::default() };
        assert_eq!(find_pseudo_inverse(&g, cfg).unwrap(), find_pseudo_inverse(&g, cfg).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn seeded_witnesses_promote_to_adjoints(index in 0usize..64, seed in any::<u64>()) {
        let corpus = small_corpus();
        let (name, c) = &corpus[index % corpus.len()];
        let g = fold_duplicate(c);
        let cfg = SearchConfig { seed: Some(seed), ..SearchConfig::default() };
        let w = find_pseudo_inverse(&g, cfg).unwrap();
        let a = promote_to_adjoint(&w).unwrap();
        prop_assert!(check_triangle_identities(&a).is_empty(), "{}", name);
        prop_assert_eq!(promote_to_adjoint(&a).unwrap(), a);
    }
}
