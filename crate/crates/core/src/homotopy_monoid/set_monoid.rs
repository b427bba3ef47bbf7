//! Homotopy monoids in an ambient monoidal category given by a trait, and
//! the collapse to ordinary monoids when every comparison map is invertible.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ambient::{ClassAmbient, EquivalenceAmbient, PowerMap, SetPowers};
use super::{HomotopyMonoidError, HomotopyMonoidReport};
use crate::monoidal::{is_strong, validate_colax, ColaxFunctor, MonoidalCategory};
use crate::report::Check;
use crate::simplex::{DeltaTruncation, SimplexMorphism};

/// A finite monoid by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monoid {
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

impl Monoid {
    pub fn new(table: Vec<Vec<usize>>, unit: usize) -> Result<Self, HomotopyMonoidError> {
        let m = Monoid { table, unit };
        let problems = m.violations();
        if problems.is_empty() {
            Ok(m)
        } else {
            Err(HomotopyMonoidError::InvalidMonoid(problems.join("; ")))
        }
    }

    pub fn trivial() -> Self {
        Monoid {
            table: vec![vec![0]],
            unit: 0,
        }
    }

    /// `ℤ/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        Monoid {
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            unit: 0,
        }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Product of a sequence, left to right; the unit for the empty one.
    pub fn fold(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.unit, |acc, x| self.mul(acc, x))
    }

    pub fn violations(&self) -> Vec<String> {
        let n = self.size();
        let mut out = Vec::new();
        if n == 0 || self.unit >= n {
            return vec!["empty carrier or unit out of range".into()];
        }
        if self.table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return vec!["table is not an n×n table over 0..n".into()];
        }
        for a in 0..n {
            if self.mul(self.unit, a) != a || self.mul(a, self.unit) != a {
                out.push(format!("unit law fails at {a}"));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        out.push(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        out
    }

    /// Every monoid structure on `{0, ..., n-1}` with unit `0`, in
    /// lexicographic order of tables.
    pub fn enumerate(n: usize) -> Vec<Monoid> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| if a == 0 { b } else if b == 0 { a } else { usize::MAX }).collect())
            .collect();
        let cells: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
        fn consistent(t: &[Vec<usize>]) -> bool {
            let n = t.len();
            for a in 0..n {
                for b in 0..n {
                    let ab = t[a][b];
                    if ab == usize::MAX {
                        continue;
                    }
                    for c in 0..n {
                        let (bc, abc) = (t[b][c], t[ab][c]);
                        if bc == usize::MAX || abc == usize::MAX {
                            continue;
                        }
                        let a_bc = t[a][bc];
                        if a_bc != usize::MAX && a_bc != abc {
                            return false;
                        }
                    }
                }
            }
            true
        }
        fn go(k: usize, cells: &[(usize, usize)], t: &mut Vec<Vec<usize>>, out: &mut Vec<Monoid>) {
            if k == cells.len() {
                out.push(Monoid {
                    table: t.clone(),
                    unit: 0,
                });
                return;
            }
            let (a, b) = cells[k];
            for v in 0..t.len() {
                t[a][b] = v;
                if consistent(t) {
                    go(k + 1, cells, t, out);
                }
            }
            t[a][b] = usize::MAX;
        }
        go(0, &cells, &mut table, &mut out);
        out
    }
}

/// A monoid object in an ambient monoidal category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidData<A: MonoidalCategory> {
    pub carrier: A::Obj,
    /// `μ: X ⊗ X → X`
    pub mul: A::Mor,
    /// `e: I → X`
    pub unit: A::Mor,
}

impl<A: MonoidalCategory> MonoidData<A> {
    /// Associativity and unit laws, up to the ambient structure maps.
    pub fn violations(&self, ambient: &A) -> Vec<String> {
        let c = &self.carrier;
        let (mu, e) = (&self.mul, &self.unit);
        let Some(cc) = ambient.tensor_objects(c, c) else {
            return vec!["carrier ⊗ carrier is undefined".into()];
        };
        if ambient.dom(mu) != cc || &ambient.cod(mu) != c {
            return vec!["multiplication is ill-typed".into()];
        }
        if ambient.dom(e) != ambient.unit() || &ambient.cod(e) != c {
            return vec!["unit is ill-typed".into()];
        }
        let mut out = Vec::new();
        let id = ambient.identity(c);
        let assoc = (|| {
            let left = ambient.compose(mu, &ambient.tensor_morphisms(mu, &id)?)?;
            let right = ambient.compose_path(&[
                ambient.associator(c, c, c)?,
                ambient.tensor_morphisms(&id, mu)?,
                mu.clone(),
            ])?;
            Some(left == right)
        })();
        match assoc {
            Some(true) => {}
            Some(false) => out.push("multiplication is not associative".into()),
            None => out.push("associativity could not be evaluated".into()),
        }
        let left_unit = ambient
            .tensor_morphisms(e, &id)
            .and_then(|t| ambient.compose(mu, &t));
        if left_unit != Some(ambient.left_unitor(c)) {
            out.push("left unit law fails".into());
        }
        let right_unit = ambient
            .tensor_morphisms(&id, e)
            .and_then(|t| ambient.compose(mu, &t));
        if right_unit != Some(ambient.right_unitor(c)) {
            out.push("right unit law fails".into());
        }
        out
    }
}

impl MonoidData<SetPowers> {
    pub fn to_monoid(&self, ambient: &SetPowers) -> Monoid {
        let k = ambient.k;
        Monoid {
            table: (0..k)
                .map(|a| (0..k).map(|b| self.mul.table[a * k + b]).collect())
                .collect(),
            unit: self.unit.table[0],
        }
    }
}

/// A homotopy monoid `X: Δ≤N → A`: levels, the image of every simplex
/// morphism, and comparison maps `ξ_{m,n}: X(m+n) → X(m) ⊗ X(n)` for
/// `m + n ≤ N` and `ξ_0: X(0) → I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MHomotopyMonoid<A: MonoidalCategory> {
    pub ambient: A,
    pub delta: DeltaTruncation,
    pub levels: Vec<A::Obj>,
    pub maps: BTreeMap<SimplexMorphism, A::Mor>,
    pub xi: BTreeMap<(usize, usize), A::Mor>,
    pub xi_unit: A::Mor,
}

impl<A: MonoidalCategory> ColaxFunctor<DeltaTruncation, A> for MHomotopyMonoid<A> {
    fn on_object(&self, a: &usize) -> A::Obj {
        self.levels[*a].clone()
    }
    fn on_morphism(&self, f: &SimplexMorphism) -> A::Mor {
        self.maps[f].clone()
    }
    fn xi(&self, a: &usize, b: &usize) -> A::Mor {
        self.xi[&(*a, *b)].clone()
    }
    fn xi_unit(&self) -> A::Mor {
        self.xi_unit.clone()
    }
}

impl<A: MonoidalCategory> MHomotopyMonoid<A> {
    /// Every level, map and comparison component is present.
    pub fn check_complete(&self) -> Result<(), HomotopyMonoidError> {
        let n = self.delta.bound();
        if self.levels.len() != n + 1 {
            return Err(HomotopyMonoidError::MissingComponent(format!(
                "expected {} levels, found {}",
                n + 1,
                self.levels.len()
            )));
        }
        for f in self.delta.all_morphisms() {
            if !self.maps.contains_key(&f) {
                return Err(HomotopyMonoidError::MissingComponent(format!("X({f})")));
            }
        }
        for a in 0..=n {
            for b in 0..=n - a {
                if !self.xi.contains_key(&(a, b)) {
                    return Err(HomotopyMonoidError::MissingComponent(format!("ξ_{{{a},{b}}}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_strong(&self) -> bool {
        is_strong(&self.delta, &self.ambient, self)
    }
}

impl<A: EquivalenceAmbient> MHomotopyMonoid<A> {
    /// Functoriality, the colax axioms over `Δ≤N`, and membership of every
    /// comparison map in the class of equivalences.
    pub fn validate(&self) -> Result<HomotopyMonoidReport, HomotopyMonoidError> {
        self.check_complete()?;
        let colax = validate_colax(&self.delta, &self.ambient, self)?;
        let mut checks = colax.checks();
        let mut eq = Check::new("comparison maps are equivalences");
        for ((a, b), xi) in &self.xi {
            eq.record(self.ambient.is_equivalence(xi), || format!("ξ_{{{a},{b}}}"));
        }
        eq.record(self.ambient.is_equivalence(&self.xi_unit), || "ξ_0".into());
        checks.push(eq);
        Ok(HomotopyMonoidReport { checks })
    }
}

impl MHomotopyMonoid<ClassAmbient> {
    /// The homotopy monoid constant at the unit, for a strict ambient with
    /// `I ⊗ I = I`.
    pub fn trivial(ambient: ClassAmbient, truncation: usize) -> Self {
        let delta = DeltaTruncation::new(truncation);
        let i = ambient.unit();
        let id = MonoidalCategory::identity(&ambient, &i);
        let maps = delta.all_morphisms().into_iter().map(|f| (f, id)).collect();
        let xi = (0..=truncation)
            .flat_map(|a| (0..=truncation - a).map(move |b| ((a, b), id)))
            .collect();
        MHomotopyMonoid {
            ambient,
            delta,
            levels: vec![i; truncation + 1],
            maps,
            xi,
            xi_unit: id,
        }
    }
}

/// Package a monoid `M` as the strict homotopy monoid `n ↦ M^n`:
/// `X(f)(a)_j` is the ordered product of the `a_i` with `f(i) = j`, and
/// every comparison map is an identity.
pub fn strict_packaging(m: &Monoid, truncation: usize) -> MHomotopyMonoid<SetPowers> {
    let ambient = SetPowers {
        k: m.size(),
        max: truncation.max(3),
    };
    let delta = DeltaTruncation::new(truncation);
    let maps = delta
        .all_morphisms()
        .into_iter()
        .map(|f| {
            let map = ambient.map(f.dom(), f.cod(), |t| {
                (1..=f.cod())
                    .map(|j| m.fold(f.fibre(j).map(|i| t[i - 1])))
                    .collect()
            });
            (f, map)
        })
        .collect();
    let xi = (0..=truncation)
        .flat_map(|a| (0..=truncation - a).map(move |b| (a, b)))
        .map(|(a, b)| ((a, b), ambient.identity(&(a + b))))
        .collect();
    MHomotopyMonoid {
        ambient,
        delta,
        levels: (0..=truncation).collect(),
        maps,
        xi,
        xi_unit: ambient.identity(&0),
    }
}

/// `μ = X(!) ∘ ξ_{1,1}^{-1}` and `e = X(ι) ∘ ξ_0^{-1}` on the carrier `X(1)`.
pub fn extract_monoid<A: MonoidalCategory>(
    h: &MHomotopyMonoid<A>,
) -> Result<MonoidData<A>, HomotopyMonoidError> {
    if h.delta.bound() < 2 {
        return Err(HomotopyMonoidError::OutOfTruncation {
            requested: 2,
            bound: h.delta.bound(),
        });
    }
    h.check_complete()?;
    let amb = &h.ambient;
    for ((a, b), xi) in &h.xi {
        if amb.inverse(xi).is_none() {
            return Err(HomotopyMonoidError::NotStrong(format!("ξ_{{{a},{b}}}")));
        }
    }
    let xi0_inv = amb
        .inverse(&h.xi_unit)
        .ok_or_else(|| HomotopyMonoidError::NotStrong("ξ_0".into()))?;
    let xi11_inv = amb.inverse(&h.xi[&(1, 1)]).expect("checked above");
    let breach = |s: &str| HomotopyMonoidError::InvalidMonoid(s.to_string());
    let mul = amb
        .compose(&h.maps[&SimplexMorphism::collapse(2)], &xi11_inv)
        .ok_or_else(|| breach("X(!) ∘ ξ_{1,1}^{-1} is ill-typed"))?;
    let unit = amb
        .compose(&h.maps[&SimplexMorphism::from_empty(1)], &xi0_inv)
        .ok_or_else(|| breach("X(ι) ∘ ξ_0^{-1} is ill-typed"))?;
    let data = MonoidData {
        carrier: h.levels[1].clone(),
        mul,
        unit,
    };
    let problems = data.violations(amb);
    if problems.is_empty() {
        Ok(data)
    } else {
        Err(HomotopyMonoidError::InvalidMonoid(problems.join("; ")))
    }
}

/// A strict packaging with `ξ_{1,1}` replaced by a non-invertible map.
pub fn with_collapsed_comparison(h: &MHomotopyMonoid<SetPowers>) -> MHomotopyMonoid<SetPowers> {
    let mut out = h.clone();
    let collapse: PowerMap = h.ambient.map(2, 2, |t| vec![t[0], t[0]]);
    out.xi.insert((1, 1), collapse);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoidal::MonoidalStructure;

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=3usize {
            let free = (n - 1) * (n - 1);
            let mut brute = Vec::new();
            for code in 0..n.pow(free as u32) {
                let mut c = code;
                let table: Vec<Vec<usize>> = (0..n)
                    .map(|a| {
                        (0..n)
                            .map(|b| {
                                if a == 0 || b == 0 {
                                    a + b
                                } else {
                                    let v = c % n;
                                    c /= n;
                                    v
                                }
                            })
                            .collect()
                    })
                    .collect();
                if let Ok(m) = Monoid::new(table, 0) {
                    brute.push(m);
                }
            }
            let mut listed = Monoid::enumerate(n);
            listed.sort_by(|x, y| x.table.cmp(&y.table));
            brute.sort_by(|x, y| x.table.cmp(&y.table));
            assert_eq!(listed, brute, "n = {n}");
        }
    }

    #[test]
    fn trivial_in_terminal() {
        let amb = ClassAmbient::with_isomorphisms(MonoidalStructure::terminal());
        let h = MHomotopyMonoid::trivial(amb, 3);
        assert!(h.validate().unwrap().passed());
        let m = extract_monoid(&h).unwrap();
        assert_eq!((m.carrier, m.mul, m.unit), (0, 0, 0));
    }

    #[test]
    fn two_element_round_trip() {
        for m in Monoid::enumerate(2) {
            let h = strict_packaging(&m, 3);
            let report = h.validate().unwrap();
            assert!(report.passed(), "{:?}", report.failures());
            assert!(h.is_strong());
            assert_eq!(extract_monoid(&h).unwrap().to_monoid(&h.ambient), m);
        }
    }

    #[test]
    fn non_commutative_three_element() {
        // left-zero band on {a, b} with an adjoined unit
        let m = Monoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0).unwrap();
        assert_ne!(m.mul(1, 2), m.mul(2, 1));
        let h = strict_packaging(&m, 3);
        assert!(h.validate().unwrap().passed());
        let data = extract_monoid(&h).unwrap();
        assert!(data.violations(&h.ambient).is_empty());
        assert_eq!(data.to_monoid(&h.ambient), m);
    }

    #[test]
    fn non_invertible_comparison_is_rejected() {
        let h = with_collapsed_comparison(&strict_packaging(&Monoid::cyclic(2), 3));
        assert!(!h.is_strong());
        assert_eq!(
            extract_monoid(&h).unwrap_err(),
            HomotopyMonoidError::NotStrong("ξ_{1,1}".into())
        );
        let r = h.validate().unwrap();
        let eq = r.checks.iter().find(|c| c.name.contains("equivalences")).unwrap();
        assert_eq!(eq.failures, vec!["ξ_{1,1}".to_string()]);
    }
}
