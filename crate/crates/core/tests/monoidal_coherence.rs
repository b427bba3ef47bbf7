use hocat::homotopy_monoid::Monoid;
use hocat::monoidal::{check_pentagon, check_triangle, EquivalenceClass, MonoidalStructure};
use proptest::prelude::*;

fn small_monoids() -> Vec<Monoid> {
    (1..=3).flat_map(Monoid::enumerate).collect()
}

#[test]
fn all_morphisms_and_isomorphisms_are_valid_classes() {
    let structures = [
        MonoidalStructure::terminal(),
        MonoidalStructure::cyclic_group(3),
        MonoidalStructure::chain_with(3, 0, usize::max).unwrap(),
        MonoidalStructure::chain_with(3, 0, |a, b| (a + b).min(2)).unwrap(),
    ];
    for m in &structures {
        for class in [EquivalenceClass::all(m), EquivalenceClass::isomorphisms(m)] {
            let (report, counts) = class.validate(m).unwrap();
            assert!(report.passed(), "{report:?}");
            assert!(counts.iter().sum::<usize>() > 0);
        }
    }
}

proptest! {
    #[test]
    fn discrete_monoids_are_coherent(index in 0usize..1000) {
        let all = small_monoids();
        let m = &all[index % all.len()];
        let s = MonoidalStructure::discrete_monoid(&m.table, m.unit).unwrap();
        prop_assert!(s.is_strict());
        prop_assert!(check_pentagon(&s).passed());
        prop_assert!(check_triangle(&s).passed());
    }

    #[test]
    fn removing_a_non_identity_iso_breaks_the_class(k in 2usize..=5, drop in 1usize..5) {
        let m = MonoidalStructure::cyclic_group(k);
        let mut class = EquivalenceClass::all(&m);
        let g = drop % k;
        prop_assume!(g != 0);
        class.members.remove(&g);
        let (report, _) = class.validate(&m).unwrap();
        prop_assert!(!report.isomorphisms.is_empty());
    }
}
