//! Monoidal categories, classes of equivalences, and colax monoidal functors.
//!
//! Coherence checks are written against the [`MonoidalCategory`] trait so the
//! same checker serves finite table structures, the truncated simplex
//! category (whose tensor is partial) and the cellular category of the loop
//! space model.
//!
//! Colax functor axioms checked by [`validate_colax`], for `X` with
//! components `ξ_{A,B}: X(A⊗B) → X(A)⊗X(B)` and `ξ_0: X(I) → I`:
//!
//! * naturality: `(X(f)⊗X(g)) ∘ ξ_{A,B} = ξ_{A',B'} ∘ X(f⊗g)`
//! * associativity: `α_{XA,XB,XC} ∘ (ξ_{A,B}⊗1) ∘ ξ_{A⊗B,C}
//!    = (1⊗ξ_{B,C}) ∘ ξ_{A,B⊗C} ∘ X(α_{A,B,C})`
//! * right unit: `ρ_{XA} ∘ (1⊗ξ_0) ∘ ξ_{A,I} = X(ρ_A)`
//! * left unit: `λ_{XA} ∘ (ξ_0⊗1) ∘ ξ_{I,A} = X(λ_A)`

use std::collections::BTreeSet;
use std::fmt::Debug;

use thiserror::Error;

use crate::fincat::{product, FinCat, FunctorData, NatTransfData, NaturalityError};
use crate::report::Check;

/// A monoidal category whose tensor may be partial (defined only inside a
/// truncation). All structure maps point in the standard directions:
/// `α: (A⊗B)⊗C → A⊗(B⊗C)`, `λ: I⊗A → A`, `ρ: A⊗I → A`.
pub trait MonoidalCategory {
    type Obj: Clone + Eq + Debug;
    type Mor: Clone + Eq + Debug;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    /// `g∘f`
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    fn inverse(&self, f: &Self::Mor) -> Option<Self::Mor>;
    fn unit(&self) -> Self::Obj;
    fn tensor_objects(&self, a: &Self::Obj, b: &Self::Obj) -> Option<Self::Obj>;
    fn tensor_morphisms(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor>;
    fn associator(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Option<Self::Mor>;
    fn left_unitor(&self, a: &Self::Obj) -> Self::Mor;
    fn right_unitor(&self, a: &Self::Obj) -> Self::Mor;
    fn describe_object(&self, a: &Self::Obj) -> String;
    fn describe_morphism(&self, f: &Self::Mor) -> String;

    /// Compose a path in diagrammatic order.
    fn compose_path(&self, path: &[Self::Mor]) -> Option<Self::Mor> {
        let (first, rest) = path.split_first()?;
        rest.iter()
            .try_fold(first.clone(), |acc, g| self.compose(g, &acc))
    }
}

/// A monoidal category small enough to enumerate.
pub trait FiniteMonoidal: MonoidalCategory {
    fn all_objects(&self) -> Vec<Self::Obj>;
    fn all_morphisms(&self) -> Vec<Self::Mor>;
}

/// Colax monoidal functor data `S → T`.
pub trait ColaxFunctor<S: MonoidalCategory, T: MonoidalCategory> {
    fn on_object(&self, a: &S::Obj) -> T::Obj;
    fn on_morphism(&self, f: &S::Mor) -> T::Mor;
    /// `ξ_{A,B}`; only requested when `A⊗B` is defined in the source.
    fn xi(&self, a: &S::Obj, b: &S::Obj) -> T::Mor;
    fn xi_unit(&self) -> T::Mor;
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MonoidalError {
    #[error("tensor is not a functor from base × base to base")]
    BadTensor,
    #[error("{which}: {source}")]
    Structure {
        which: &'static str,
        source: NaturalityError,
    },
    #[error("{0} is not a natural isomorphism")]
    NotIso(&'static str),
    #[error("unknown morphism id `{0}`")]
    UnknownMorphismId(String),
    #[error("strict structure requested but {0}")]
    NotStrict(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ColaxError {
    #[error("component ξ at ({0}, {1}) is ill-typed")]
    IllTypedComponent(String, String),
    #[error("component ξ_0 is ill-typed")]
    IllTypedUnitComponent,
}

/// A monoidal structure on a finite category, all structure given by tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalStructure {
    base: FinCat,
    tensor: FunctorData,
    unit: usize,
    associator: NatTransfData,
    left_unitor: NatTransfData,
    right_unitor: NatTransfData,
}

impl MonoidalStructure {
    /// Assemble a monoidal structure from the tensor functor and component
    /// lists for `α` (indexed by objects of `base³`), `λ` and `ρ`. All three
    /// must be natural isomorphisms. Pentagon and triangle are not checked
    /// here; see [`check_pentagon`] and [`check_triangle`].
    pub fn new(
        tensor: FunctorData,
        unit: usize,
        associator: Vec<usize>,
        left_unitor: Vec<usize>,
        right_unitor: Vec<usize>,
    ) -> Result<Self, MonoidalError> {
        let base = tensor.target.clone();
        let pair = product(&[&base, &base]);
        if tensor.source != pair || !tensor.violations().is_empty() {
            return Err(MonoidalError::BadTensor);
        }
        let (t3l, t3r, l, r) = Self::structure_functors(&base, &tensor, unit);
        let wrap = |which| move |source| MonoidalError::Structure { which, source };
        let associator = NatTransfData::new(t3l, t3r, associator).map_err(wrap("associator"))?;
        let left_unitor = NatTransfData::new(l, FunctorData::identity(&base), left_unitor)
            .map_err(wrap("left unitor"))?;
        let right_unitor = NatTransfData::new(r, FunctorData::identity(&base), right_unitor)
            .map_err(wrap("right unitor"))?;
        for (t, name) in [
            (&associator, "associator"),
            (&left_unitor, "left unitor"),
            (&right_unitor, "right unitor"),
        ] {
            if !t.is_iso() {
                return Err(MonoidalError::NotIso(name));
            }
        }
        Ok(MonoidalStructure {
            base,
            tensor,
            unit,
            associator,
            left_unitor,
            right_unitor,
        })
    }

    /// A strict monoidal structure: `α`, `λ`, `ρ` are identities, which
    /// requires the tensor to be strictly associative and unital.
    pub fn strict(tensor: FunctorData, unit: usize) -> Result<Self, MonoidalError> {
        let base = tensor.target.clone();
        let (t3l, t3r, l, r) = Self::structure_functors(&base, &tensor, unit);
        if t3l != t3r {
            return Err(MonoidalError::NotStrict("tensor is not strictly associative".into()));
        }
        let id = FunctorData::identity(&base);
        if l != id || r != id {
            return Err(MonoidalError::NotStrict("unit is not strict".into()));
        }
        let ida: Vec<usize> = t3l.objects.iter().map(|&o| base.identity(o)).collect();
        let idb: Vec<usize> = base.objects().map(|o| base.identity(o)).collect();
        Self::new(tensor, unit, ida, idb.clone(), idb)
    }

    /// Strict structure from rules on object and morphism indices.
    pub fn strict_from_rules(
        base: &FinCat,
        unit: usize,
        on_objects: impl Fn(usize, usize) -> usize,
        on_morphisms: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, MonoidalError> {
        let pair = product(&[base, base]);
        let (no, nm) = (base.num_objects(), base.num_morphisms());
        let tensor = FunctorData::from_fns(
            &pair,
            base,
            |a| on_objects(a / no, a % no),
            |f| on_morphisms(f / nm, f % nm),
        );
        Self::strict(tensor, unit)
    }

    /// The terminal monoidal category.
    pub fn terminal() -> Self {
        let t = FinCat::terminal();
        Self::strict_from_rules(&t, 0, |_, _| 0, |_, _| 0).expect("terminal is strict monoidal")
    }

    /// A monoid (given by its multiplication table) as a discrete strict
    /// monoidal category.
    pub fn discrete_monoid(table: &[Vec<usize>], unit: usize) -> Result<Self, MonoidalError> {
        let names: Vec<String> = (0..table.len()).map(|i| format!("m{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let base = FinCat::discrete(&refs);
        Self::strict_from_rules(&base, unit, |a, b| table[a][b], |f, g| table[f][g])
    }

    /// The one-object category of ℤ/k with tensor given by addition.
    pub fn cyclic_group(k: usize) -> Self {
        let base = FinCat::cyclic_group(k, "*", "g");
        Self::strict_from_rules(&base, 0, |_, _| 0, |f, g| (f + g) % k)
            .expect("abelian group is strict monoidal")
    }

    /// The chain `0 < ... < n-1` with a monotone binary operation on objects
    /// (for example `max`, or truncated addition) and unit object `unit`.
    pub fn chain_with(
        n: usize,
        unit: usize,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, MonoidalError> {
        let base = FinCat::chain(n);
        let c = base.clone();
        Self::strict_from_rules(
            &base,
            unit,
            &op,
            |f, g| {
                let d = op(c.dom(f), c.dom(g));
                let e = op(c.cod(f), c.cod(g));
                c.hom(d, e).first().copied().unwrap_or(usize::MAX)
            },
        )
    }

    fn structure_functors(
        base: &FinCat,
        tensor: &FunctorData,
        unit: usize,
    ) -> (FunctorData, FunctorData, FunctorData, FunctorData) {
        let id = FunctorData::identity(base);
        let t_1 = FunctorData::product(&[tensor, &id]);
        let one_t = FunctorData::product(&[&id, tensor]);
        let t3l = compose_unchecked(&t_1, tensor);
        let t3r = compose_unchecked(&one_t, tensor);
        let k = FunctorData::constant(base, base, unit);
        let left = FunctorData::pairing(base, &[&k, &id]).expect("same source");
        let right = FunctorData::pairing(base, &[&id, &k]).expect("same source");
        (
            t3l,
            t3r,
            compose_unchecked(&left, tensor),
            compose_unchecked(&right, tensor),
        )
    }

    pub fn base(&self) -> &FinCat {
        &self.base
    }

    pub fn tensor(&self) -> &FunctorData {
        &self.tensor
    }

    pub fn unit_object(&self) -> usize {
        self.unit
    }

    pub fn associator_transformation(&self) -> &NatTransfData {
        &self.associator
    }

    pub fn left_unitor_transformation(&self) -> &NatTransfData {
        &self.left_unitor
    }

    pub fn right_unitor_transformation(&self) -> &NatTransfData {
        &self.right_unitor
    }

    pub fn tensor_obj(&self, a: usize, b: usize) -> usize {
        self.tensor.objects[a * self.base.num_objects() + b]
    }

    pub fn tensor_mor(&self, f: usize, g: usize) -> usize {
        self.tensor.morphisms[f * self.base.num_morphisms() + g]
    }

    pub fn alpha(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.base.num_objects();
        self.associator.components[(a * n + b) * n + c]
    }

    pub fn lambda(&self, a: usize) -> usize {
        self.left_unitor.components[a]
    }

    pub fn rho(&self, a: usize) -> usize {
        self.right_unitor.components[a]
    }

    pub fn is_strict(&self) -> bool {
        let b = &self.base;
        self.associator.components.iter().all(|&m| b.is_identity(m))
            && self.left_unitor.components.iter().all(|&m| b.is_identity(m))
            && self.right_unitor.components.iter().all(|&m| b.is_identity(m))
    }

    /// Same structure with some structure-map components replaced; the
    /// result is not re-validated. Used to build negative examples.
    pub fn with_components_unchecked(
        &self,
        associator: Option<Vec<usize>>,
        left_unitor: Option<Vec<usize>>,
        right_unitor: Option<Vec<usize>>,
    ) -> Self {
        let mut out = self.clone();
        if let Some(a) = associator {
            out.associator.components = a;
        }
        if let Some(l) = left_unitor {
            out.left_unitor.components = l;
        }
        if let Some(r) = right_unitor {
            out.right_unitor.components = r;
        }
        out
    }
}

fn compose_unchecked(first: &FunctorData, then: &FunctorData) -> FunctorData {
    FunctorData::new_unchecked(
        first.source.clone(),
        then.target.clone(),
        first.objects.iter().map(|&o| then.objects[o]).collect(),
        first.morphisms.iter().map(|&m| then.morphisms[m]).collect(),
    )
}

impl MonoidalCategory for MonoidalStructure {
    type Obj = usize;
    type Mor = usize;

    fn dom(&self, f: &usize) -> usize {
        self.base.dom(*f)
    }
    fn cod(&self, f: &usize) -> usize {
        self.base.cod(*f)
    }
    fn identity(&self, a: &usize) -> usize {
        self.base.identity(*a)
    }
    fn compose(&self, g: &usize, f: &usize) -> Option<usize> {
        self.base.compose(*g, *f)
    }
    fn inverse(&self, f: &usize) -> Option<usize> {
        self.base.inverse(*f)
    }
    fn unit(&self) -> usize {
        self.unit
    }
    fn tensor_objects(&self, a: &usize, b: &usize) -> Option<usize> {
        Some(self.tensor_obj(*a, *b))
    }
    fn tensor_morphisms(&self, f: &usize, g: &usize) -> Option<usize> {
        Some(self.tensor_mor(*f, *g))
    }
    fn associator(&self, a: &usize, b: &usize, c: &usize) -> Option<usize> {
        Some(self.alpha(*a, *b, *c))
    }
    fn left_unitor(&self, a: &usize) -> usize {
        self.lambda(*a)
    }
    fn right_unitor(&self, a: &usize) -> usize {
        self.rho(*a)
    }
    fn describe_object(&self, a: &usize) -> String {
        self.base.object_name(*a)
    }
    fn describe_morphism(&self, f: &usize) -> String {
        self.base.morphism_name(*f)
    }
}

impl FiniteMonoidal for MonoidalStructure {
    fn all_objects(&self) -> Vec<usize> {
        self.base.objects().collect()
    }
    fn all_morphisms(&self) -> Vec<usize> {
        self.base.morphisms().collect()
    }
}

/// A failing pentagon instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonFailure {
    pub objects: [String; 4],
    /// `α_{w,x,y⊗z} ∘ α_{w⊗x,y,z}`
    pub left: String,
    /// `(1⊗α_{x,y,z}) ∘ α_{w,x⊗y,z} ∘ (α_{w,x,y}⊗1)`
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonReport {
    pub checked: usize,
    pub failures: Vec<PentagonFailure>,
}

impl PentagonReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_check(&self) -> Check {
        Check {
            name: "pentagon".into(),
            checked: self.checked,
            failures: self
                .failures
                .iter()
                .map(|f| {
                    format!(
                        "objects ({}): {} ≠ {}",
                        f.objects.join(", "),
                        f.left,
                        f.right
                    )
                })
                .collect(),
        }
    }
}

/// Check the pentagon at every quadruple of objects.
pub fn check_pentagon(m: &MonoidalStructure) -> PentagonReport {
    let b = m.base();
    let n = b.num_objects();
    let mut failures = Vec::new();
    let mut checked = 0;
    for w in 0..n {
        for x in 0..n {
            let wx = m.tensor_obj(w, x);
            for y in 0..n {
                let xy = m.tensor_obj(x, y);
                let a_wxy = m.alpha(w, x, y);
                for z in 0..n {
                    checked += 1;
                    let yz = m.tensor_obj(y, z);
                    let left = b.compose_path(&[m.alpha(wx, y, z), m.alpha(w, x, yz)]);
                    let right = b.compose_path(&[
                        m.tensor_mor(a_wxy, b.identity(z)),
                        m.alpha(w, xy, z),
                        m.tensor_mor(b.identity(w), m.alpha(x, y, z)),
                    ]);
                    if left.is_none() || left != right {
                        let name = |f: Option<usize>| {
                            f.map(|f| b.morphism_name(f))
                                .unwrap_or_else(|| "<ill-typed>".into())
                        };
                        failures.push(PentagonFailure {
                            objects: [w, x, y, z].map(|o| b.object_name(o)),
                            left: name(left),
                            right: name(right),
                        });
                    }
                }
            }
        }
    }
    PentagonReport { checked, failures }
}

/// Check `(1_x ⊗ λ_y) ∘ α_{x,I,y} = ρ_x ⊗ 1_y` at every pair of objects.
pub fn check_triangle(m: &MonoidalStructure) -> Check {
    let b = m.base();
    let mut check = Check::new("triangle");
    for x in b.objects() {
        for y in b.objects() {
            let left = b.compose(
                m.tensor_mor(b.identity(x), m.lambda(y)),
                m.alpha(x, m.unit_object(), y),
            );
            let right = m.tensor_mor(m.rho(x), b.identity(y));
            check.record(left == Some(right), || {
                format!(
                    "objects ({}, {}): {} ≠ {}",
                    b.object_name(x),
                    b.object_name(y),
                    left.map(|f| b.morphism_name(f))
                        .unwrap_or_else(|| "<ill-typed>".into()),
                    b.morphism_name(right)
                )
            });
        }
    }
    check
}

/// A distinguished class of morphisms ("equivalences") in a finite monoidal
/// category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub members: BTreeSet<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceClassReport {
    /// Isomorphisms missing from the class.
    pub isomorphisms: Vec<String>,
    /// `(f, g, g∘f)` with exactly two members.
    pub two_out_of_three: Vec<(String, String, String)>,
    /// `(f, f', f⊗f')` with `f, f'` members and `f⊗f'` not.
    pub tensor_closure: Vec<(String, String, String)>,
}

impl EquivalenceClassReport {
    pub fn passed(&self) -> bool {
        self.isomorphisms.is_empty()
            && self.two_out_of_three.is_empty()
            && self.tensor_closure.is_empty()
    }

    pub fn to_checks(&self, checked: [usize; 3]) -> Vec<Check> {
        vec![
            Check {
                name: "isomorphisms are equivalences".into(),
                checked: checked[0],
                failures: self.isomorphisms.iter().map(|f| format!("missing {f}")).collect(),
            },
            Check {
                name: "two out of three".into(),
                checked: checked[1],
                failures: self
                    .two_out_of_three
                    .iter()
                    .map(|(f, g, h)| format!("f={f}, g={g}, g∘f={h}"))
                    .collect(),
            },
            Check {
                name: "closed under tensor".into(),
                checked: checked[2],
                failures: self
                    .tensor_closure
                    .iter()
                    .map(|(f, g, h)| format!("{f} ⊗ {g} = {h}"))
                    .collect(),
            },
        ]
    }
}

impl EquivalenceClass {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        EquivalenceClass {
            members: members.into_iter().collect(),
        }
    }

    pub fn from_names(m: &MonoidalStructure, names: &[&str]) -> Result<Self, MonoidalError> {
        let b = m.base();
        names
            .iter()
            .map(|n| {
                b.morphism_by_name(n)
                    .ok_or_else(|| MonoidalError::UnknownMorphismId(n.to_string()))
            })
            .collect::<Result<BTreeSet<_>, _>>()
            .map(|members| EquivalenceClass { members })
    }

    pub fn all(m: &MonoidalStructure) -> Self {
        Self::new(m.base().morphisms())
    }

    pub fn isomorphisms(m: &MonoidalStructure) -> Self {
        let b = m.base();
        Self::new(b.morphisms().filter(|&f| b.inverse(f).is_some()))
    }

    pub fn contains(&self, f: usize) -> bool {
        self.members.contains(&f)
    }

    /// Check the three closure axioms exhaustively. The returned counts are
    /// the numbers of instances examined per axiom.
    pub fn validate(&self, m: &MonoidalStructure) -> Result<(EquivalenceClassReport, [usize; 3]), MonoidalError> {
        let b = m.base();
        if let Some(&bad) = self.members.iter().find(|&&f| f >= b.num_morphisms()) {
            return Err(MonoidalError::UnknownMorphismId(bad.to_string()));
        }
        let mut report = EquivalenceClassReport::default();
        let mut counts = [0usize; 3];
        for f in b.morphisms() {
            counts[0] += 1;
            if b.inverse(f).is_some() && !self.contains(f) {
                report.isomorphisms.push(b.morphism_name(f));
            }
        }
        for f in b.morphisms() {
            for g in b.outgoing(b.cod(f)) {
                counts[1] += 1;
                let h = b.compose(g, f).expect("composable");
                let n = [f, g, h].iter().filter(|&&x| self.contains(x)).count();
                if n == 2 {
                    report.two_out_of_three.push((
                        b.morphism_name(f),
                        b.morphism_name(g),
                        b.morphism_name(h),
                    ));
                }
            }
        }
        for &f in &self.members {
            for &g in &self.members {
                counts[2] += 1;
                let fg = m.tensor_mor(f, g);
                if !self.contains(fg) {
                    report.tensor_closure.push((
                        b.morphism_name(f),
                        b.morphism_name(g),
                        b.morphism_name(fg),
                    ));
                }
            }
        }
        Ok((report, counts))
    }
}

/// Colax monoidal functor between finite monoidal structures, by tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColaxData {
    pub source: MonoidalStructure,
    pub target: MonoidalStructure,
    pub functor: FunctorData,
    /// `ξ_{A,B}` at index `A * |objects| + B`.
    pub xi: Vec<usize>,
    pub xi_unit: usize,
}

impl ColaxFunctor<MonoidalStructure, MonoidalStructure> for ColaxData {
    fn on_object(&self, a: &usize) -> usize {
        self.functor.objects[*a]
    }
    fn on_morphism(&self, f: &usize) -> usize {
        self.functor.morphisms[*f]
    }
    fn xi(&self, a: &usize, b: &usize) -> usize {
        self.xi[a * self.source.base().num_objects() + b]
    }
    fn xi_unit(&self) -> usize {
        self.xi_unit
    }
}

impl ColaxData {
    pub fn validate(&self) -> Result<ColaxReport, ColaxError> {
        validate_colax(&self.source, &self.target, self)
    }

    pub fn is_strong(&self) -> bool {
        is_strong(&self.source, &self.target, self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColaxReport {
    pub functoriality: Check,
    pub naturality: Check,
    pub associativity: Check,
    pub right_unit: Check,
    pub left_unit: Check,
}

impl ColaxReport {
    pub fn checks(&self) -> Vec<Check> {
        vec![
            self.functoriality.clone(),
            self.naturality.clone(),
            self.associativity.clone(),
            self.right_unit.clone(),
            self.left_unit.clone(),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(Check::passed)
    }
}

/// Check every colax axiom exhaustively over the enumerable source.
/// Instances whose tensor falls outside a partial source are skipped.
pub fn validate_colax<S, T, X>(source: &S, target: &T, x: &X) -> Result<ColaxReport, ColaxError>
where
    S: FiniteMonoidal,
    T: MonoidalCategory,
    X: ColaxFunctor<S, T>,
{
    let objects = source.all_objects();
    let morphisms = source.all_morphisms();
    let i = source.unit();

    // typing of components
    for a in &objects {
        for b in &objects {
            let Some(ab) = source.tensor_objects(a, b) else { continue };
            let xi = x.xi(a, b);
            let expected = target.tensor_objects(&x.on_object(a), &x.on_object(b));
            if target.dom(&xi) != x.on_object(&ab) || Some(target.cod(&xi)) != expected {
                return Err(ColaxError::IllTypedComponent(
                    source.describe_object(a),
                    source.describe_object(b),
                ));
            }
        }
    }
    let xi0 = x.xi_unit();
    if target.dom(&xi0) != x.on_object(&i) || target.cod(&xi0) != target.unit() {
        return Err(ColaxError::IllTypedUnitComponent);
    }

    let mut functoriality = Check::new("functoriality");
    for a in &objects {
        let ok = x.on_morphism(&source.identity(a)) == target.identity(&x.on_object(a));
        functoriality.record(ok, || format!("X(1_{}) is not an identity", source.describe_object(a)));
    }
    for f in &morphisms {
        for g in &morphisms {
            let Some(gf) = source.compose(g, f) else { continue };
            let ok = target.compose(&x.on_morphism(g), &x.on_morphism(f)) == Some(x.on_morphism(&gf));
            functoriality.record(ok, || {
                format!(
                    "X({}∘{}) ≠ X({})∘X({})",
                    source.describe_morphism(g),
                    source.describe_morphism(f),
                    source.describe_morphism(g),
                    source.describe_morphism(f)
                )
            });
        }
    }

    let mut naturality = Check::new("naturality");
    for f in &morphisms {
        for g in &morphisms {
            let Some(fg) = source.tensor_morphisms(f, g) else { continue };
            let (a, b) = (source.dom(f), source.dom(g));
            let (a2, b2) = (source.cod(f), source.cod(g));
            let xf_xg = target.tensor_morphisms(&x.on_morphism(f), &x.on_morphism(g));
            let left = xf_xg.and_then(|t| target.compose(&t, &x.xi(&a, &b)));
            let right = target.compose(&x.xi(&a2, &b2), &x.on_morphism(&fg));
            naturality.record(left.is_some() && left == right, || {
                format!(
                    "f = {}, g = {}",
                    source.describe_morphism(f),
                    source.describe_morphism(g)
                )
            });
        }
    }

    let mut associativity = Check::new("associativity");
    for a in &objects {
        for b in &objects {
            let Some(ab) = source.tensor_objects(a, b) else { continue };
            for c in &objects {
                let Some(abc) = source.tensor_objects(&ab, c) else { continue };
                let Some(bc) = source.tensor_objects(b, c) else { continue };
                let Some(a_bc) = source.tensor_objects(a, &bc) else { continue };
                let Some(sa) = source.associator(a, b, c) else { continue };
                debug_assert_eq!(source.dom(&sa), abc);
                debug_assert_eq!(source.cod(&sa), a_bc);
                let (xa, xb, xc) = (x.on_object(a), x.on_object(b), x.on_object(c));
                let left = (|| {
                    let t = target.tensor_morphisms(&x.xi(a, b), &target.identity(&xc))?;
                    let alpha = target.associator(&xa, &xb, &xc)?;
                    target.compose_path(&[x.xi(&ab, c), t, alpha])
                })();
                let right = (|| {
                    let t = target.tensor_morphisms(&target.identity(&xa), &x.xi(b, c))?;
                    target.compose_path(&[x.on_morphism(&sa), x.xi(a, &bc), t])
                })();
                associativity.record(left.is_some() && left == right, || {
                    format!(
                        "A = {}, B = {}, C = {}",
                        source.describe_object(a),
                        source.describe_object(b),
                        source.describe_object(c)
                    )
                });
            }
        }
    }

    let mut right_unit = Check::new("right unit");
    let mut left_unit = Check::new("left unit");
    for a in &objects {
        let xa = x.on_object(a);
        if source.tensor_objects(a, &i).is_some() {
            let lhs = (|| {
                let t = target.tensor_morphisms(&target.identity(&xa), &xi0)?;
                target.compose_path(&[x.xi(a, &i), t, target.right_unitor(&xa)])
            })();
            let rhs = x.on_morphism(&source.right_unitor(a));
            right_unit.record(lhs == Some(rhs), || format!("A = {}", source.describe_object(a)));
        }
        if source.tensor_objects(&i, a).is_some() {
            let lhs = (|| {
                let t = target.tensor_morphisms(&xi0, &target.identity(&xa))?;
                target.compose_path(&[x.xi(&i, a), t, target.left_unitor(&xa)])
            })();
            let rhs = x.on_morphism(&source.left_unitor(a));
            left_unit.record(lhs == Some(rhs), || format!("A = {}", source.describe_object(a)));
        }
    }
    Ok(ColaxReport {
        functoriality,
        naturality,
        associativity,
        right_unit,
        left_unit,
    })
}

/// Whether `ξ_0` and every defined `ξ_{A,B}` are invertible.
pub fn is_strong<S, T, X>(source: &S, target: &T, x: &X) -> bool
where
    S: FiniteMonoidal,
    T: MonoidalCategory,
    X: ColaxFunctor<S, T>,
{
    let objects = source.all_objects();
    target.inverse(&x.xi_unit()).is_some()
        && objects.iter().all(|a| {
            objects.iter().all(|b| {
                source.tensor_objects(a, b).is_none() || target.inverse(&x.xi(a, b)).is_some()
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus() -> Vec<(&'static str, MonoidalStructure)> {
        vec![
            ("terminal", MonoidalStructure::terminal()),
            ("Z/2", MonoidalStructure::cyclic_group(2)),
            ("Z/3", MonoidalStructure::cyclic_group(3)),
            (
                "monoid {1,x}, x²=x",
                MonoidalStructure::discrete_monoid(&[vec![0, 1], vec![1, 1]], 0).unwrap(),
            ),
            ("chain2 max", MonoidalStructure::chain_with(2, 0, usize::max).unwrap()),
            ("chain3 max", MonoidalStructure::chain_with(3, 0, usize::max).unwrap()),
            (
                "chain3 truncated +",
                MonoidalStructure::chain_with(3, 0, |a, b| (a + b).min(2)).unwrap(),
            ),
        ]
    }

    #[test]
    fn strict_structures_are_coherent() {
        for (name, m) in corpus() {
            assert!(m.is_strict(), "{name}");
            assert!(check_pentagon(&m).passed(), "{name}");
            assert!(check_triangle(&m).passed(), "{name}");
        }
    }

    #[test]
    fn non_strict_tensor_is_rejected_as_strict() {
        let base = FinCat::chain(2);
        // constant tensor at 1 is not unital
        let r = MonoidalStructure::strict_from_rules(&base, 0, |_, _| 1, |_, _| base.identity(1));
        assert!(matches!(r, Err(MonoidalError::NotStrict(_))));
    }

    #[test]
    fn corrupted_left_unitor_breaks_triangle() {
        // ℤ/2: replace λ_* by the generator; still natural and invertible
        let m = MonoidalStructure::cyclic_group(2);
        let bad = m.with_components_unchecked(None, Some(vec![1]), None);
        let t = check_triangle(&bad);
        assert!(!t.passed());
        assert_eq!(t.failures.len(), 1);
        assert!(t.failures[0].contains("(*, *)"));
        // and it is accepted structurally
        let tensor = m.tensor().clone();
        let rebuilt = MonoidalStructure::new(tensor, 0, vec![0], vec![1], vec![0]).unwrap();
        assert!(!check_triangle(&rebuilt).passed());
    }

    #[test]
    fn twisted_associator_breaks_pentagon() {
        // ℤ/2 with α ≡ generator: α is natural (abelian) but the pentagon
        // compares g∘g = e against g∘g∘g = g
        let m = MonoidalStructure::cyclic_group(2);
        let twisted = MonoidalStructure::new(m.tensor().clone(), 0, vec![1], vec![0], vec![0]).unwrap();
        let r = check_pentagon(&twisted);
        assert_eq!(r.checked, 1);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].left, "g0");
        assert_eq!(r.failures[0].right, "g1");
    }

    #[test]
    fn equivalence_class_axioms() {
        for (name, m) in corpus() {
            let (r, _) = EquivalenceClass::all(&m).validate(&m).unwrap();
            assert!(r.passed(), "{name}");
            let (r, _) = EquivalenceClass::isomorphisms(&m).validate(&m).unwrap();
            assert!(r.passed(), "{name}");
        }
    }

    #[test]
    fn equivalence_class_single_axiom_mutations() {
        // (a) ℤ/2 without its generator
        let z = MonoidalStructure::cyclic_group(2);
        let (r, _) = EquivalenceClass::new([0]).validate(&z).unwrap();
        assert_eq!(r.isomorphisms, vec!["g1".to_string()]);
        assert!(r.two_out_of_three.is_empty() && r.tensor_closure.is_empty());

        // (c) chain 0<1<2 with truncated addition: 0<1 ⊗ 0<1 = 0<2
        let m = MonoidalStructure::chain_with(3, 0, |a, b| (a + b).min(2)).unwrap();
        let mut e = EquivalenceClass::isomorphisms(&m);
        e.members.insert(m.base().morphism_by_name("0<1").unwrap());
        let (r, _) = e.validate(&m).unwrap();
        assert!(r.isomorphisms.is_empty() && r.two_out_of_three.is_empty());
        assert!(r
            .tensor_closure
            .contains(&("0<1".into(), "0<1".into(), "0<2".into())));

        // (b) chain 0<1<2 with max: {1<2, 0<2} without 0<1
        let m = MonoidalStructure::chain_with(3, 0, usize::max).unwrap();
        let mut e = EquivalenceClass::isomorphisms(&m);
        for n in ["1<2", "0<2"] {
            e.members.insert(m.base().morphism_by_name(n).unwrap());
        }
        let (r, _) = e.validate(&m).unwrap();
        assert!(r.isomorphisms.is_empty() && r.tensor_closure.is_empty());
        assert_eq!(
            r.two_out_of_three,
            vec![("0<1".into(), "1<2".into(), "0<2".into())]
        );
        assert!(EquivalenceClass::from_names(&m, &["nope"]).is_err());
    }

    fn identity_colax(m: &MonoidalStructure) -> ColaxData {
        let n = m.base().num_objects();
        let xi = (0..n * n)
            .map(|k| m.base().identity(m.tensor_obj(k / n, k % n)))
            .collect();
        ColaxData {
            source: m.clone(),
            target: m.clone(),
            functor: FunctorData::identity(m.base()),
            xi,
            xi_unit: m.base().identity(m.unit_object()),
        }
    }

    #[test]
    fn identity_colax_is_valid_and_strong() {
        for (name, m) in corpus() {
            let d = identity_colax(&m);
            let r = d.validate().unwrap();
            assert!(r.passed(), "{name}: {:?}", r);
            assert!(d.is_strong());
        }
    }

    #[test]
    fn twisted_component_breaks_unit_law() {
        // ℤ/2 with ξ ≡ g: natural and associative, but ρ∘(1⊗ξ_0)∘ξ = g
        let z = MonoidalStructure::cyclic_group(2);
        let mut d = identity_colax(&z);
        d.xi = vec![1];
        let r = d.validate().unwrap();
        assert!(r.naturality.passed());
        assert!(r.associativity.passed());
        assert!(!r.right_unit.passed());
        assert!(!r.left_unit.passed());
        assert!(d.is_strong());
    }

    #[test]
    fn ill_typed_unit_component() {
        let disc = MonoidalStructure::discrete_monoid(&[vec![0, 1], vec![1, 1]], 0).unwrap();
        let chain = MonoidalStructure::chain_with(2, 0, usize::max).unwrap();
        let id1 = chain.base().identity(1);
        let d = ColaxData {
            source: disc.clone(),
            target: chain.clone(),
            functor: FunctorData::constant(disc.base(), chain.base(), 1),
            xi: vec![id1; 4],
            xi_unit: id1,
        };
        assert_eq!(d.validate().unwrap_err(), ColaxError::IllTypedUnitComponent);
    }

    #[test]
    fn colax_but_not_strong() {
        // chain 0<1<2 with min and unit 2; X(*) = 1, ξ_0 = 1<2
        let t = MonoidalStructure::terminal();
        let chain = MonoidalStructure::chain_with(3, 2, usize::min).unwrap();
        let b = chain.base();
        let d = ColaxData {
            source: t,
            target: chain.clone(),
            functor: FunctorData::constant(&FinCat::terminal(), b, 1),
            xi: vec![b.identity(1)],
            xi_unit: b.morphism_by_name("1<2").unwrap(),
        };
        let r = d.validate().unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(!d.is_strong());
    }
}
