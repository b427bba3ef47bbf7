//! The monoidal structure on the base category `C(1)` of a homotopy monoid
//! in finite categories.
//!
//! Writing `ψ_{m,n}` for a pseudo-inverse of `ξ_{m,n}` with unit `η_{m,n}`
//! and counit `ε_{m,n}`:
//!
//! * tensor `T = C(!₂) ∘ ψ_{1,1}`;
//! * unit object `e = C(ι)(ψ_0(•))` with `ι: 0 → 1`;
//! * `α_{x,y,z} = A_R^{-1} ∘ C(!₃)(k) ∘ A_L` where, with
//!   `w = ψ_{2,1}(ψ_{1,1}(x,y), z)` and `w' = ψ_{1,2}(x, ψ_{1,1}(y,z))`,
//!   `A_L: T(T(x,y),z) → C(!₃)(w)` and `A_R: T(x,T(y,z)) → C(!₃)(w')` are
//!   obtained by inserting `η_{2,1}` (resp. `η_{1,2}`), transporting along
//!   the strict naturality of `ξ_{1,1}` for `!₂+1` (resp. `1+!₂`) and
//!   cancelling with `ε_{1,1}`; `k: w → w'` is the unique lift through the
//!   fully faithful `Ξ = (ξ_{1,1}×1)∘ξ_{2,1} = (1×ξ_{1,1})∘ξ_{1,2}` of the
//!   isomorphism `Ξ(w) ≅ (x,y,z) ≅ Ξ(w')` built from the units;
//! * `λ`, `ρ` likewise from `η_{0,1}`, `η_{1,0}` and `ε_{1,1}`.
//!
//! Naturality of `α`, `λ`, `ρ`, the pentagon and the triangle are checked
//! after the fact.

use std::collections::BTreeMap;

use super::cat::{CatHomotopyMonoid, Component};
use super::HomotopyMonoidError;
use crate::equivalences::{
    find_pseudo_inverse, promote_to_adjoint, search_natural_isos, Budget, EquivalenceWitness,
    SearchConfig, SearchError,
};
use crate::fincat::{product, FinCat, FunctorData};
use crate::monoidal::{check_pentagon, check_triangle, MonoidalStructure};
use crate::report::Check;
use crate::simplex::SimplexMorphism;

/// Options for [`build_monoidal_category`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub search: SearchConfig,
    /// Promote each pseudo-inverse to an adjoint equivalence. Turning this
    /// off is a diagnostic mode in which the pentagon may fail.
    pub promote: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            search: SearchConfig::default(),
            promote: true,
        }
    }
}

/// The components whose pseudo-inverses the construction uses.
pub const USED_COMPONENTS: [Component; 6] = [
    Component::Pair(1, 1),
    Component::Pair(2, 1),
    Component::Pair(1, 2),
    Component::Pair(1, 0),
    Component::Pair(0, 1),
    Component::Unit,
];

/// Build the monoidal structure and verify it; any failed postcondition is
/// a [`HomotopyMonoidError::ConstructionInvariantBreach`].
pub fn build_monoidal_category(
    c: &CatHomotopyMonoid,
    options: BuildOptions,
) -> Result<MonoidalStructure, HomotopyMonoidError> {
    let (m, checks) = assemble_monoidal_category(c, options)?;
    let failures: Vec<String> = checks
        .iter()
        .flat_map(|ch| ch.failures.iter().map(move |f| format!("{}: {f}", ch.name)))
        .collect();
    if failures.is_empty() {
        Ok(m)
    } else {
        Err(HomotopyMonoidError::ConstructionInvariantBreach(failures.join("; ")))
    }
}

/// Build the structure and return it with its pentagon and triangle
/// checks, without failing on them. Naturality and invertibility of the
/// structure maps are still required.
pub fn assemble_monoidal_category(
    c: &CatHomotopyMonoid,
    options: BuildOptions,
) -> Result<(MonoidalStructure, Vec<Check>), HomotopyMonoidError> {
    if c.truncation() < 3 {
        return Err(HomotopyMonoidError::OutOfTruncation {
            requested: 3,
            bound: c.truncation(),
        });
    }
    c.check_complete()?;
    let mut witnesses = BTreeMap::new();
    for comp in USED_COMPONENTS {
        let w = match c.witnesses.get(&comp) {
            Some(w) => w.clone(),
            None => find_pseudo_inverse(c.component(comp), options.search)
                .map_err(|e| HomotopyMonoidError::from_search(&comp.to_string(), e))?,
        };
        let w = if options.promote {
            promote_to_adjoint(&w)
                .map_err(|e| HomotopyMonoidError::ConstructionInvariantBreach(e.to_string()))?
                .into_witness()
        } else {
            w
        };
        witnesses.insert(comp, w);
    }
    let m = Builder::new(c, &witnesses).build()?;
    let checks = vec![check_pentagon(&m).to_check(), check_triangle(&m)];
    Ok((m, checks))
}

struct Builder<'a> {
    c1: &'a FinCat,
    c2: &'a FinCat,
    c3: &'a FinCat,
    pair1: FinCat,
    w11: &'a EquivalenceWitness,
    w21: &'a EquivalenceWitness,
    w12: &'a EquivalenceWitness,
    w10: &'a EquivalenceWitness,
    w01: &'a EquivalenceWitness,
    w0: &'a EquivalenceWitness,
    collapse2: &'a FunctorData,
    collapse3: &'a FunctorData,
    collapse2_plus_1: &'a FunctorData,
    one_plus_collapse2: &'a FunctorData,
    iota: &'a FunctorData,
    iota_plus_1: &'a FunctorData,
    one_plus_iota: &'a FunctorData,
    xi11: &'a FunctorData,
    big_xi: FunctorData,
    level0: &'a FinCat,
}

fn breach(s: impl Into<String>) -> HomotopyMonoidError {
    HomotopyMonoidError::ConstructionInvariantBreach(s.into())
}

impl<'a> Builder<'a> {
    fn new(c: &'a CatHomotopyMonoid, w: &'a BTreeMap<Component, EquivalenceWitness>) -> Self {
        let id1 = SimplexMorphism::identity(1);
        let iota = SimplexMorphism::from_empty(1);
        let collapse2 = SimplexMorphism::collapse(2);
        let xi21 = &c.xi[&(2, 1)];
        let xi11 = &c.xi[&(1, 1)];
        let lift = FunctorData::product(&[xi11, &FunctorData::identity(&c.levels[1])]);
        let big_xi = FunctorData::new_unchecked(
            xi21.source.clone(),
            lift.target.clone(),
            xi21.objects.iter().map(|&o| lift.objects[o]).collect(),
            xi21.morphisms.iter().map(|&m| lift.morphisms[m]).collect(),
        );
        Builder {
            c1: &c.levels[1],
            c2: &c.levels[2],
            c3: &c.levels[3],
            pair1: product(&[&c.levels[1], &c.levels[1]]),
            w11: &w[&Component::Pair(1, 1)],
            w21: &w[&Component::Pair(2, 1)],
            w12: &w[&Component::Pair(1, 2)],
            w10: &w[&Component::Pair(1, 0)],
            w01: &w[&Component::Pair(0, 1)],
            w0: &w[&Component::Unit],
            collapse2: c.map(&collapse2),
            collapse3: c.map(&SimplexMorphism::collapse(3)),
            collapse2_plus_1: c.map(&collapse2.plus(&id1)),
            one_plus_collapse2: c.map(&id1.plus(&collapse2)),
            iota: c.map(&iota),
            iota_plus_1: c.map(&iota.plus(&id1)),
            one_plus_iota: c.map(&id1.plus(&iota)),
            xi11,
            big_xi,
            level0: &c.levels[0],
        }
    }

    fn inv1(&self, f: usize) -> Result<usize, HomotopyMonoidError> {
        self.c1
            .inverse(f)
            .ok_or_else(|| breach(format!("{} is not invertible", self.c1.morphism_name(f))))
    }

    /// `ψ_{1,1}` on a pair of morphisms of `C(1)`.
    fn psi11_mor(&self, f: usize, g: usize) -> usize {
        self.w11.f.morphisms[f * self.c1.num_morphisms() + g]
    }

    fn psi11_obj(&self, x: usize, y: usize) -> usize {
        self.w11.f.objects[x * self.c1.num_objects() + y]
    }

    /// `ε_{1,1,u} ∘ ψ_{1,1}(f, g)` in `C(2)`.
    fn cancel(&self, u: usize, f: usize, g: usize, what: &str) -> Result<usize, HomotopyMonoidError> {
        self.c2
            .compose(self.w11.epsilon.components[u], self.psi11_mor(f, g))
            .ok_or_else(|| breach(format!("{what}: ε_{{1,1}} does not meet ψ_{{1,1}}")))
    }

    fn tensor(&self) -> FunctorData {
        let psi = &self.w11.f;
        FunctorData::new_unchecked(
            psi.source.clone(),
            self.c1.clone(),
            psi.objects.iter().map(|&o| self.collapse2.objects[o]).collect(),
            psi.morphisms.iter().map(|&m| self.collapse2.morphisms[m]).collect(),
        )
    }

    /// `A_L: T(T(x,y),z) → C(!₃)(w)`, with `w` and the iso `(x,y,z) → Ξ(w)`.
    fn left_leg(&self, x: usize, y: usize, z: usize) -> Result<(usize, usize, [usize; 3]), HomotopyMonoidError> {
        let (n1, m1) = (self.c1.num_objects(), self.c1.num_morphisms());
        let p = self.psi11_obj(x, y);
        let w = self.w21.f.objects[p * n1 + z];
        let eta = self.w21.eta.components[p * n1 + z];
        let (e1, e2) = (eta / m1, eta % m1);
        let u = self.collapse2_plus_1.objects[w];
        let l1 = self.cancel(u, self.collapse2.morphisms[e1], e2, "left leg")?;
        let a_l = self.collapse2.morphisms[l1];
        // θ_L = (ξ_{1,1}(η1) ∘ η_{1,1,(x,y)}) × η2
        let r = self
            .pair1
            .compose(self.xi11.morphisms[e1], self.w11.eta.components[x * n1 + y])
            .ok_or_else(|| breach("left leg: unit components do not compose"))?;
        Ok((a_l, w, [r / m1, r % m1, e2]))
    }

    /// `A_R: T(x,T(y,z)) → C(!₃)(w')`, with `w'` and `(x,y,z) → Ξ(w')`.
    fn right_leg(&self, x: usize, y: usize, z: usize) -> Result<(usize, usize, [usize; 3]), HomotopyMonoidError> {
        let (n1, m1) = (self.c1.num_objects(), self.c1.num_morphisms());
        let (n2, m2) = (self.c2.num_objects(), self.c2.num_morphisms());
        let q = self.psi11_obj(y, z);
        let w = self.w12.f.objects[x * n2 + q];
        let eta = self.w12.eta.components[x * n2 + q];
        let (e1, e2) = (eta / m2, eta % m2);
        let u = self.one_plus_collapse2.objects[w];
        let r1 = self.cancel(u, e1, self.collapse2.morphisms[e2], "right leg")?;
        let a_r = self.collapse2.morphisms[r1];
        let s = self
            .pair1
            .compose(self.xi11.morphisms[e2], self.w11.eta.components[y * n1 + z])
            .ok_or_else(|| breach("right leg: unit components do not compose"))?;
        Ok((a_r, w, [e1, s / m1, s % m1]))
    }

    fn associator(&self, x: usize, y: usize, z: usize) -> Result<usize, HomotopyMonoidError> {
        let m1 = self.c1.num_morphisms();
        let (a_l, w, theta_l) = self.left_leg(x, y, z)?;
        let (a_r, w2, theta_r) = self.right_leg(x, y, z)?;
        let mut h = [0; 3];
        for i in 0..3 {
            h[i] = self
                .c1
                .compose(theta_r[i], self.inv1(theta_l[i])?)
                .ok_or_else(|| breach("unit isos do not compose"))?;
        }
        let code = (h[0] * m1 + h[1]) * m1 + h[2];
        let lifts: Vec<usize> = self
            .c3
            .hom(w, w2)
            .into_iter()
            .filter(|&k| self.big_xi.morphisms[k] == code)
            .collect();
        let [k] = lifts[..] else {
            return Err(breach(format!(
                "{} lifts of the comparison iso at ({x}, {y}, {z})",
                lifts.len()
            )));
        };
        self.c1
            .compose_path(&[a_l, self.collapse3.morphisms[k], self.inv1(a_r)?])
            .ok_or_else(|| breach(format!("associator at ({x}, {y}, {z}) is ill-typed")))
    }

    fn unit_point(&self) -> usize {
        self.w0.f.objects[0]
    }

    fn left_unitor(&self, x: usize) -> Result<usize, HomotopyMonoidError> {
        let (n1, m1) = (self.c1.num_objects(), self.c1.num_morphisms());
        let c = self.unit_point();
        let v = self.w01.f.objects[c * n1 + x];
        let eta = self.w01.eta.components[c * n1 + x];
        let (ec, ex) = (eta / m1, eta % m1);
        let u = self.iota_plus_1.objects[v];
        let l = self.cancel(u, self.iota.morphisms[ec], ex, "left unitor")?;
        self.c1
            .compose(self.inv1(ex)?, self.collapse2.morphisms[l])
            .ok_or_else(|| breach(format!("left unitor at {x} is ill-typed")))
    }

    fn right_unitor(&self, x: usize) -> Result<usize, HomotopyMonoidError> {
        let (n0, m0) = (self.level0.num_objects(), self.level0.num_morphisms());
        let c = self.unit_point();
        let v = self.w10.f.objects[x * n0 + c];
        let eta = self.w10.eta.components[x * n0 + c];
        let (ex, ec) = (eta / m0, eta % m0);
        let u = self.one_plus_iota.objects[v];
        let r = self.cancel(u, ex, self.iota.morphisms[ec], "right unitor")?;
        self.c1
            .compose(self.inv1(ex)?, self.collapse2.morphisms[r])
            .ok_or_else(|| breach(format!("right unitor at {x} is ill-typed")))
    }

    fn build(&self) -> Result<MonoidalStructure, HomotopyMonoidError> {
        let n1 = self.c1.num_objects();
        let mut alpha = Vec::with_capacity(n1 * n1 * n1);
        for x in 0..n1 {
            for y in 0..n1 {
                for z in 0..n1 {
                    alpha.push(self.associator(x, y, z)?);
                }
            }
        }
        let lambda = (0..n1).map(|x| self.left_unitor(x)).collect::<Result<Vec<_>, _>>()?;
        let rho = (0..n1).map(|x| self.right_unitor(x)).collect::<Result<Vec<_>, _>>()?;
        let unit = self.iota.objects[self.unit_point()];
        MonoidalStructure::new(self.tensor(), unit, alpha, lambda, rho)
            .map_err(|e| breach(e.to_string()))
    }
}

/// A strong monoidal isomorphism `(C, ⊗_b) → (C, ⊗_a)` whose underlying
/// functor is the identity: `φ_{x,y}: x ⊗_b y → x ⊗_a y` and
/// `φ_0: e_b → e_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalIsomorphism {
    pub phi: Vec<usize>,
    pub phi0: usize,
}

/// Search for a monoidal isomorphism with identity underlying functor
/// between two monoidal structures on the same category.
pub fn find_monoidal_isomorphism(
    a: &MonoidalStructure,
    b: &MonoidalStructure,
    config: SearchConfig,
) -> Result<Option<MonoidalIsomorphism>, SearchError> {
    if a.base() != b.base() {
        return Err(SearchError::ShapeMismatch("different base categories".into()));
    }
    let c = a.base();
    let mut budget = Budget::new(config);
    for phi0 in c.isos(b.unit_object(), a.unit_object()) {
        let mut coherent = |phi: &[usize]| is_monoidal(a, b, phi, phi0);
        if let Some(phi) = search_natural_isos(b.tensor(), a.tensor(), &mut budget, &mut coherent)? {
            return Ok(Some(MonoidalIsomorphism { phi, phi0 }));
        }
    }
    Ok(None)
}

/// The associativity and unit coherence of `(1, φ, φ_0)`.
pub fn is_monoidal(a: &MonoidalStructure, b: &MonoidalStructure, phi: &[usize], phi0: usize) -> bool {
    let c = a.base();
    let n = c.num_objects();
    let p = |x: usize, y: usize| phi[x * n + y];
    for x in 0..n {
        let idx = c.identity(x);
        for y in 0..n {
            let xy = a.tensor_obj(x, y);
            for z in 0..n {
                let idz = c.identity(z);
                let yz = a.tensor_obj(y, z);
                let left = c.compose_path(&[
                    b.tensor_mor(p(x, y), idz),
                    p(xy, z),
                    a.alpha(x, y, z),
                ]);
                let right = c.compose_path(&[
                    b.alpha(x, y, z),
                    b.tensor_mor(idx, p(y, z)),
                    p(x, yz),
                ]);
                if left.is_none() || left != right {
                    return false;
                }
            }
        }
        let ea = a.unit_object();
        let lu = c.compose_path(&[b.tensor_mor(phi0, idx), p(ea, x), a.lambda(x)]);
        let ru = c.compose_path(&[b.tensor_mor(idx, phi0), p(x, ea), a.rho(x)]);
        if lu != Some(b.lambda(x)) || ru != Some(b.rho(x)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy_monoid::{fixture_generator, Inflation, Monoid};

    #[test]
    fn strict_input_gives_strict_structure() {
        let m = Monoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0).unwrap();
        let h = fixture_generator(&m, &Inflation::none(), 3).unwrap();
        let s = build_monoidal_category(&h, BuildOptions::default()).unwrap();
        assert!(s.is_strict());
        for a in 0..3 {
            assert_eq!(s.unit_object(), 0);
            for b in 0..3 {
                assert_eq!(s.tensor_obj(a, b), m.mul(a, b));
            }
        }
    }

    #[test]
    fn inflated_fixture_builds() {
        let m = Monoid::cyclic(2);
        let h = fixture_generator(&m, &Inflation::default(), 3).unwrap();
        let s = build_monoidal_category(&h, BuildOptions::default()).unwrap();
        assert!(check_pentagon(&s).passed());
        assert!(check_triangle(&s).passed());
        let again = build_monoidal_category(&h, BuildOptions::default()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn needs_level_three() {
        let h = fixture_generator(&Monoid::cyclic(2), &Inflation::none(), 2).unwrap();
        assert!(matches!(
            build_monoidal_category(&h, BuildOptions::default()),
            Err(HomotopyMonoidError::OutOfTruncation { .. })
        ));
    }
}
