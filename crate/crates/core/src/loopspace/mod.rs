//! A combinatorial model of the circle as a homotopy comonoid: the pointed
//! complexes `W(n)` (an `n`-simplex with its vertices identified), the face
//! inclusions `ω_{m,n}: W(m) ∨ W(n) → W(m+n)`, the maps induced by the
//! simplex category, and integer homology to certify equivalences.
//!
//! Homotopy equivalence is certified at the level of homology only: a map
//! passes when its mapping cone is acyclic over the integers.

pub mod chain;
pub mod comonoid;
pub mod complex;

use thiserror::Error;

pub use chain::{
    check_quasi_iso, homology, smith_invariants, ChainComplex, ChainMap, DegreeHomology,
    HomologyReport, Matrix, QuasiIsoDegree, QuasiIsoReport,
};
pub use comonoid::{
    build_omega, build_w, build_wedge, induced_map_w, verify_homotopy_comonoid, LoopComonoid,
    LoopReport, PointedCellsOp, Wedge, DEFAULT_MAX,
};
pub use complex::{wedge_complex, Cell, CellImage, CellularMap, PointedDeltaComplex, RawComplex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LoopspaceError {
    #[error("level {n} exceeds the configured maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("not a cellular map: {0}")]
    NotCellular(String),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::monoidal::validate_colax;
    use crate::simplex::{DeltaTruncation, SimplexMorphism};

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn w_cell_counts() {
        assert_eq!(build_w(0).unwrap().total_cells(), 1);
        let w1 = build_w(1).unwrap();
        assert_eq!((w1.num_cells(0), w1.num_cells(1)), (1, 1));
        let w2 = build_w(2).unwrap();
        assert_eq!((w2.num_cells(0), w2.num_cells(1), w2.num_cells(2)), (1, 3, 1));
        for n in 0..=5 {
            let w = build_w(n).unwrap();
            for k in 1..=n {
                assert_eq!(w.num_cells(k), binomial(n + 1, k + 1));
            }
            assert_eq!(w.euler_characteristic(), 1 - n as i64);
        }
        assert_eq!(build_w(7), Err(LoopspaceError::TooLarge { n: 7, max: 6 }));
    }

    #[test]
    fn homology_of_w() {
        let point = homology(&ChainComplex::from_complex(&PointedDeltaComplex::point()));
        assert_eq!(point.betti_numbers(), vec![1]);
        for n in 0..=5 {
            let h = homology(&ChainComplex::from_complex(&build_w(n).unwrap()));
            let mut expected = vec![1, n];
            expected.resize(n.max(1) + 1, 0);
            if n == 0 {
                expected.truncate(1);
            }
            assert_eq!(h.betti_numbers(), expected, "W({n})");
            assert!(!h.has_torsion());
            assert_eq!(h.euler_characteristic(), 1 - n as i64);
        }
    }

    #[test]
    fn smith_normal_form_examples() {
        assert_eq!(smith_invariants(&vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_invariants(&vec![vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(smith_invariants(&vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_invariants(&vec![]), Vec::<i64>::new());
    }

    #[test]
    fn torsion_is_detected() {
        // a disc glued to a circle by a degree-two map: H_1 = ℤ/2
        let c = ChainComplex::new(vec![1, 1, 1], vec![vec![vec![0]], vec![vec![2]]]).unwrap();
        let h = homology(&c);
        assert_eq!(h.betti_numbers(), vec![1, 0, 0]);
        assert_eq!(h.degrees[1].torsion, vec![2]);
    }

    #[test]
    fn bad_chain_complex_is_rejected() {
        let dd = ChainComplex::new(vec![1, 1, 1], vec![vec![vec![1]], vec![vec![1]]]);
        assert!(matches!(dd, Err(LoopspaceError::InvalidComplex(_))));
    }

    #[test]
    fn wedge_counts_and_units() {
        let w1 = Arc::new(build_w(1).unwrap());
        let wedge = build_wedge(w1.clone(), w1.clone());
        assert_eq!((wedge.complex.num_cells(0), wedge.complex.num_cells(1)), (1, 2));
        assert_eq!(wedge_complex(&PointedDeltaComplex::point(), &w1), *w1);
        assert_eq!(wedge_complex(&w1, &PointedDeltaComplex::point()), *w1);
        let w2 = build_w(2).unwrap();
        let h = homology(&ChainComplex::from_complex(&wedge_complex(&w2, &build_w(3).unwrap())));
        assert_eq!(h.betti_numbers(), vec![1, 5, 0, 0]);
        assert!(wedge.left.violations().is_empty() && wedge.right.violations().is_empty());
    }

    #[test]
    fn omega_images() {
        let om = build_omega(1, 1).unwrap();
        let names: Vec<String> = (0..2).map(|i| om.target().cell_name(1, om.image(1, i).cell)).collect();
        assert_eq!(names, ["[0, 1]", "[1, 2]"]);
        let om = build_omega(2, 1).unwrap();
        for (k, level) in om.images().iter().enumerate() {
            for img in level.iter().filter(|_| k > 0) {
                let v = &om.target().cell(img.dim, img.cell).vertices;
                assert!(v.iter().all(|&x| x <= 2) || v.iter().all(|&x| x >= 2));
            }
        }
        assert!(check_quasi_iso(&build_omega(1, 1).unwrap()).passed());
    }

    #[test]
    fn induced_maps() {
        let bang = induced_map_w(&SimplexMorphism::collapse(2)).unwrap();
        let img = bang.image(1, 0);
        assert!(!img.is_degenerate());
        assert_eq!(bang.target().cell(1, img.cell).vertices, vec![0, 2]);
        let id = SimplexMorphism::identity(3);
        let w3 = Arc::new(build_w(3).unwrap());
        assert_eq!(induced_map_w(&id).unwrap(), CellularMap::identity(w3));
        let delta = DeltaTruncation::new(3);
        for f in delta.all_morphisms() {
            for g in delta.all_morphisms().into_iter().filter(|g| g.dom() == f.cod()) {
                let gf = g.after(&f).unwrap();
                let lhs = induced_map_w(&gf).unwrap();
                let rhs = induced_map_w(&g).unwrap().then(&induced_map_w(&f).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{g} ∘ {f}");
            }
        }
    }

    #[test]
    fn quasi_iso_examples() {
        let w1 = Arc::new(build_w(1).unwrap());
        assert!(check_quasi_iso(&CellularMap::identity(w1.clone())).passed());
        let base = CellularMap::from_vertex_map(Arc::new(PointedDeltaComplex::point()), w1, &[]).unwrap();
        let r = check_quasi_iso(&base);
        assert!(!r.passed());
        assert_eq!(r.failing_degrees(), vec![1]);
    }

    #[test]
    fn comonoid_laws_hold() {
        for level in [2, 4] {
            let r = verify_homotopy_comonoid(level).unwrap();
            for c in &r.checks {
                assert!(c.passed(), "{}: {:?}", c.name, c.failures);
                assert!(c.checked > 0);
            }
        }
    }

    #[test]
    fn agrees_with_generic_colax_validation() {
        let c = LoopComonoid::new(3).unwrap();
        let r = validate_colax(&DeltaTruncation::new(3), &PointedCellsOp, &c).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn swapped_edge_in_omega_is_caught() {
        let mut c = LoopComonoid::new(3).unwrap();
        let om = c.omega[&(1, 1)].clone();
        let (a, b) = (om.image(1, 0).clone(), om.image(1, 1).clone());
        c.omega.insert((1, 1), om.with_image(1, 0, b).with_image(1, 1, a));
        let checks = c.verify();
        let failures: Vec<&String> = checks
            .iter()
            .filter(|c| c.name == "co-naturality" || c.name == "co-associativity")
            .flat_map(|c| &c.failures)
            .collect();
        assert!(!failures.is_empty());
        assert!(failures.iter().all(|f| f.contains('[')), "{failures:?}");
    }

    #[test]
    fn complex_round_trips_through_json() {
        let w = build_w(3).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        let back: PointedDeltaComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn simplicial_identity_violation_is_rejected() {
        let mut raw = build_w(3).unwrap().to_raw();
        raw.cells[3][0].faces.swap(0, 3);
        raw.cells[3][0].vertices.clear();
        assert!(matches!(
            PointedDeltaComplex::try_from(raw),
            Err(LoopspaceError::InvalidComplex(_))
        ));
    }
}
