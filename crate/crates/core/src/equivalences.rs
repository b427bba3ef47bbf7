//! Equivalences of finite categories: pseudo-inverse search, triangle
//! identities, and promotion of an equivalence to an adjoint equivalence.
//!
//! Conventions: `η: 1_A ⇒ G∘F` has components `η_a: a → G(F(a))` and
//! `ε: F∘G ⇒ 1_B` has components `ε_b: F(G(b)) → b`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fincat::{compose_functors, FinCat, FunctorData, NatTransfData};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Search limits. With a seed, every candidate list is shuffled by a
/// seeded generator before use; without one, candidates are tried in
/// increasing index order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: u64,
    pub seed: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            seed: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no pseudo-inverse exists")]
    NotFound,
    #[error("search exceeded the budget of {0} candidates")]
    BudgetExceeded(u64),
    #[error("functors have incompatible shapes: {0}")]
    ShapeMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PromotionError {
    #[error("adjoint promotion failed: {0}")]
    PromotionFailed(String),
}

/// Candidate counter shared by the phases of one search.
pub struct Budget {
    limit: u64,
    used: u64,
    rng: Option<ChaCha8Rng>,
}

impl Budget {
    pub fn new(config: SearchConfig) -> Self {
        Budget {
            limit: config.budget,
            used: 0,
            rng: config.seed.map(ChaCha8Rng::seed_from_u64),
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn spend(&mut self) -> Result<(), SearchError> {
        self.used += 1;
        if self.used > self.limit {
            Err(SearchError::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }

    fn order<T>(&mut self, mut items: Vec<T>) -> Vec<T> {
        if let Some(rng) = &mut self.rng {
            items.shuffle(rng);
        }
        items
    }
}

/// `(F, G, η, ε)` with `η`, `ε` natural isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub f: FunctorData,
    pub g: FunctorData,
    pub eta: NatTransfData,
    pub epsilon: NatTransfData,
}

/// An equivalence witness that also satisfies both triangle identities.
/// Only obtainable through [`promote_to_adjoint`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointEquivalence(EquivalenceWitness);

impl AdjointEquivalence {
    pub fn witness(&self) -> &EquivalenceWitness {
        &self.0
    }

    pub fn into_witness(self) -> EquivalenceWitness {
        self.0
    }
}

impl std::ops::Deref for AdjointEquivalence {
    type Target = EquivalenceWitness;
    fn deref(&self) -> &EquivalenceWitness {
        &self.0
    }
}

impl EquivalenceWitness {
    /// `(1, 1, 1, 1)` on `c`.
    pub fn identity(c: &FinCat) -> Self {
        let id = FunctorData::identity(c);
        let t = NatTransfData::identity(&id);
        EquivalenceWitness {
            f: id.clone(),
            g: id,
            eta: t.clone(),
            epsilon: t,
        }
    }

    /// Re-validate every part from scratch. Returns one line per problem.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (a, b) = (&self.f.source, &self.f.target);
        if &self.g.source != b || &self.g.target != a {
            return vec!["F and G are not opposite".into()];
        }
        for (name, func) in [("F", &self.f), ("G", &self.g)] {
            for v in func.violations() {
                out.push(format!("{name}: {v:?}"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let gf = compose_functors(&self.f, &self.g).expect("shapes checked");
        let fg = compose_functors(&self.g, &self.f).expect("shapes checked");
        let checks = [
            ("η", &self.eta, FunctorData::identity(a), gf),
            ("ε", &self.epsilon, fg, FunctorData::identity(b)),
        ];
        for (name, t, src, tgt) in checks {
            match NatTransfData::new(src, tgt, t.components.clone()) {
                Ok(v) if v.is_iso() => {}
                Ok(_) => out.push(format!("{name} is not invertible")),
                Err(e) => out.push(format!("{name}: {e}")),
            }
        }
        out
    }
}

/// Search for natural isomorphisms `F ⇒ G` between parallel functors,
/// backtracking over objects in index order with naturality pruning. Every
/// complete family is offered to `accept`; the first accepted one is
/// returned.
pub fn search_natural_isos(
    f: &FunctorData,
    g: &FunctorData,
    budget: &mut Budget,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<Option<Vec<usize>>, SearchError> {
    if f.source != g.source || f.target != g.target {
        return Err(SearchError::ShapeMismatch("functors are not parallel".into()));
    }
    let (a, b) = (&f.source, &f.target);
    let n = a.num_objects();
    // morphisms whose naturality square closes when object `x` is assigned
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for m in a.morphisms() {
        closing[a.dom(m).max(a.cod(m))].push(m);
    }
    let mut comps = vec![usize::MAX; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        x: usize,
        f: &FunctorData,
        g: &FunctorData,
        b: &FinCat,
        a: &FinCat,
        closing: &[Vec<usize>],
        comps: &mut Vec<usize>,
        budget: &mut Budget,
        accept: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, SearchError> {
        if x == comps.len() {
            return Ok(accept(comps));
        }
        let candidates = budget.order(b.isos(f.objects[x], g.objects[x]));
        for c in candidates {
            budget.spend()?;
            comps[x] = c;
            let natural = closing[x].iter().all(|&m| {
                let (s, t) = (a.dom(m), a.cod(m));
                b.compose(comps[t], f.morphisms[m]) == b.compose(g.morphisms[m], comps[s])
            });
            if natural && go(x + 1, f, g, b, a, closing, comps, budget, accept)? {
                return Ok(true);
            }
        }
        comps[x] = usize::MAX;
        Ok(false)
    }
    let found = go(0, f, g, b, a, &closing, &mut comps, budget, accept)?;
    Ok(found.then_some(comps))
}

/// Find `F: A → B` with `η: 1 ≅ G∘F` and `ε: F∘G ≅ 1` for `G: B → A`.
///
/// Objects of `A` are assigned in index order, each to a pair
/// `(F(a), η_a)`; `F` on morphisms is then forced (up to the fibres of `G`)
/// by naturality of `η`, and `ε` is searched last. The first witness in
/// this order is returned. Every candidate tried counts against the budget.
pub fn find_pseudo_inverse(
    g: &FunctorData,
    config: SearchConfig,
) -> Result<EquivalenceWitness, SearchError> {
    let mut budget = Budget::new(config);
    find_pseudo_inverse_with(g, &mut budget)
}

pub fn find_pseudo_inverse_with(
    g: &FunctorData,
    budget: &mut Budget,
) -> Result<EquivalenceWitness, SearchError> {
    let (b, a) = (g.source.clone(), g.target.clone());
    let na = a.num_objects();
    // morphisms of A whose endpoints are both assigned once `x` is
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); na];
    for m in a.morphisms() {
        closing[a.dom(m).max(a.cod(m))].push(m);
    }
    let mut state = Search {
        a: &a,
        b: &b,
        g,
        closing,
        f_obj: vec![usize::MAX; na],
        eta: vec![usize::MAX; na],
        eta_inv: vec![usize::MAX; na],
        f_mor: vec![usize::MAX; a.num_morphisms()],
        branched: false,
        budget,
        result: None,
    };
    if state.assign_object(0)? {
        Ok(state.result.take().expect("set on success"))
    } else {
        Err(SearchError::NotFound)
    }
}

struct Search<'s> {
    a: &'s FinCat,
    b: &'s FinCat,
    g: &'s FunctorData,
    closing: Vec<Vec<usize>>,
    f_obj: Vec<usize>,
    eta: Vec<usize>,
    eta_inv: Vec<usize>,
    f_mor: Vec<usize>,
    /// Some morphism had more than one lift.
    branched: bool,
    budget: &'s mut Budget,
    result: Option<EquivalenceWitness>,
}

impl Search<'_> {
    /// `η_{a'} ∘ m ∘ η_a^{-1}`, the required image `G(F(m))`.
    fn required_image(&self, m: usize) -> usize {
        let a = self.a;
        a.compose_path(&[self.eta_inv[a.dom(m)], m, self.eta[a.cod(m)]])
            .expect("typed by construction")
    }

    fn lifts(&self, m: usize) -> Vec<usize> {
        let want = self.required_image(m);
        self.b
            .hom(self.f_obj[self.a.dom(m)], self.f_obj[self.a.cod(m)])
            .into_iter()
            .filter(|&h| self.g.morphisms[h] == want)
            .collect()
    }

    fn assign_object(&mut self, x: usize) -> Result<bool, SearchError> {
        if x == self.a.num_objects() {
            return self.assign_morphisms();
        }
        let mut candidates = Vec::new();
        for y in self.b.objects() {
            for e in self.a.isos(x, self.g.objects[y]) {
                candidates.push((y, e));
            }
        }
        let candidates = self.budget.order(candidates);
        for (y, e) in candidates {
            self.budget.spend()?;
            self.f_obj[x] = y;
            self.eta[x] = e;
            self.eta_inv[x] = self.a.inverse(e).expect("iso");
            let liftable = self.closing[x].iter().all(|&m| !self.lifts(m).is_empty());
            if liftable && self.assign_object(x + 1)? {
                return Ok(true);
            }
        }
        self.f_obj[x] = usize::MAX;
        Ok(false)
    }

    fn assign_morphisms(&mut self) -> Result<bool, SearchError> {
        let order: Vec<usize> = self.a.morphisms().collect();
        self.assign_morphism(&order, 0)
    }

    /// Forced morphisms are assigned in a loop; only genuine choices
    /// recurse, which keeps the stack shallow on large categories.
    fn assign_morphism(&mut self, order: &[usize], mut k: usize) -> Result<bool, SearchError> {
        let candidates = loop {
            if k == order.len() {
                return self.finish();
            }
            let lifts = self.lifts(order[k]);
            match lifts[..] {
                [] => return Ok(false),
                // a single lift needs no pruning; the final check still runs
                [h] => {
                    self.budget.spend()?;
                    self.f_mor[order[k]] = h;
                    k += 1;
                }
                _ => break self.budget.order(lifts),
            }
        };
        let m = order[k];
        let was_branched = std::mem::replace(&mut self.branched, true);
        for h in candidates {
            self.budget.spend()?;
            self.f_mor[m] = h;
            if self.functorial_so_far(order, k) && self.assign_morphism(order, k + 1)? {
                return Ok(true);
            }
        }
        self.branched = was_branched;
        Ok(false)
    }

    /// Identity and composition laws among triples `(f, g, g∘f)` whose
    /// largest index is `order[k]`.
    fn functorial_so_far(&self, order: &[usize], k: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let m = order[k];
        if a.is_identity(m) && !b.is_identity(self.f_mor[m]) {
            return false;
        }
        for &f in &order[..=k] {
            for &g in a.outgoing(a.cod(f)).iter().filter(|&&g| g <= m) {
                let gf = a.compose(g, f).expect("composable");
                if gf <= m
                    && f.max(g).max(gf) == m
                    && b.compose(self.f_mor[g], self.f_mor[f]) != Some(self.f_mor[gf])
                {
                    return false;
                }
            }
        }
        true
    }

    fn finish(&mut self) -> Result<bool, SearchError> {
        let f = FunctorData::new_unchecked(
            self.a.clone(),
            self.b.clone(),
            self.f_obj.clone(),
            self.f_mor.clone(),
        );
        // With unique lifts, G(F g ∘ F f) = G(F(g∘f)) and injectivity of G
        // on the hom-sets involved force functoriality.
        if self.branched && !f.violations().is_empty() {
            return Ok(false);
        }
        let fg = compose_functors(self.g, &f).expect("shapes");
        let gf = compose_functors(&f, self.g).expect("shapes");
        let id_b = FunctorData::identity(self.b);
        let Some(eps) = search_natural_isos(&fg, &id_b, self.budget, &mut |_| true)? else {
            return Ok(false);
        };
        let eta = NatTransfData::new(FunctorData::identity(self.a), gf, self.eta.clone())
            .expect("η is natural by construction");
        let epsilon = NatTransfData::new(fg, id_b, eps).expect("found by natural search");
        self.result = Some(EquivalenceWitness {
            f,
            g: self.g.clone(),
            eta,
            epsilon,
        });
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleIdentity {
    /// `ε_{F a} ∘ F(η_a) = 1_{F a}`
    Counit,
    /// `G(ε_b) ∘ η_{G b} = 1_{G b}`
    Unit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleFailure {
    pub identity: TriangleIdentity,
    pub object: String,
}

/// Evaluate both triangle identities at every object.
pub fn check_triangle_identities(w: &EquivalenceWitness) -> Vec<TriangleFailure> {
    let (a, b) = (&w.f.source, &w.f.target);
    let mut out = Vec::new();
    for x in a.objects() {
        let fx = w.f.objects[x];
        let lhs = b.compose(w.epsilon.components[fx], w.f.morphisms[w.eta.components[x]]);
        if lhs != Some(b.identity(fx)) {
            out.push(TriangleFailure {
                identity: TriangleIdentity::Counit,
                object: a.object_name(x),
            });
        }
    }
    for y in b.objects() {
        let gy = w.g.objects[y];
        let lhs = a.compose(w.g.morphisms[w.epsilon.components[y]], w.eta.components[gy]);
        if lhs != Some(a.identity(gy)) {
            out.push(TriangleFailure {
                identity: TriangleIdentity::Unit,
                object: b.object_name(y),
            });
        }
    }
    out
}

/// Keep `η` and replace `ε` so that both triangle identities hold.
///
/// Tries `ε'_b = ε_b ∘ F(η_{G b})^{-1} ∘ ε_{F G b}^{-1}` first and falls
/// back to exhaustive search over natural isomorphisms `F∘G ⇒ 1`.
pub fn promote_to_adjoint(w: &EquivalenceWitness) -> Result<AdjointEquivalence, PromotionError> {
    if check_triangle_identities(w).is_empty() {
        return Ok(AdjointEquivalence(w.clone()));
    }
    let b = &w.f.target;
    let eps = &w.epsilon.components;
    let fail = |s: &str| PromotionError::PromotionFailed(s.to_string());
    let mut corrected = Vec::with_capacity(b.num_objects());
    for y in b.objects() {
        let gy = w.g.objects[y];
        let fgy = w.f.objects[gy];
        let eta_inv = w.f.target.inverse(w.f.morphisms[w.eta.components[gy]]);
        let eps_inv = b.inverse(eps[fgy]);
        let (Some(eta_inv), Some(eps_inv)) = (eta_inv, eps_inv) else {
            return Err(fail("witness components are not invertible"));
        };
        let c = b
            .compose_path(&[eps_inv, eta_inv, eps[y]])
            .ok_or_else(|| fail("ill-typed correction"))?;
        corrected.push(c);
    }
    let candidate = |components: Vec<usize>| -> Option<EquivalenceWitness> {
        let epsilon =
            NatTransfData::new(w.epsilon.source.clone(), w.epsilon.target.clone(), components)
                .ok()?;
        let out = EquivalenceWitness {
            epsilon,
            ..w.clone()
        };
        (out.epsilon.is_iso() && check_triangle_identities(&out).is_empty()).then_some(out)
    };
    if let Some(out) = candidate(corrected) {
        return Ok(AdjointEquivalence(out));
    }
    let mut budget = Budget::new(SearchConfig::default());
    let found = search_natural_isos(
        &w.epsilon.source,
        &w.epsilon.target,
        &mut budget,
        &mut |comps| candidate(comps.to_vec()).is_some(),
    )
    .map_err(|e| fail(&e.to_string()))?;
    found
        .and_then(candidate)
        .map(AdjointEquivalence)
        .ok_or_else(|| fail("no natural isomorphism satisfies the triangle identities"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codiscrete(n: usize) -> FinCat {
        FinCat::codiscrete(&(0..n).map(|i| format!("x{i}")).collect::<Vec<_>>())
    }

    #[test]
    fn identity_functor() {
        let c = FinCat::cyclic_group(3, "*", "g");
        let g = FunctorData::identity(&c);
        let w = find_pseudo_inverse(&g, SearchConfig::default()).unwrap();
        assert_eq!(w, EquivalenceWitness::identity(&c));
        assert!(check_triangle_identities(&w).is_empty());
        assert_eq!(promote_to_adjoint(&w).unwrap().witness(), &w);
    }

    #[test]
    fn contractible_groupoid_to_terminal() {
        let b = codiscrete(2);
        let t = FinCat::terminal();
        let g = FunctorData::constant(&b, &t, 0);
        let w = find_pseudo_inverse(&g, SearchConfig::default()).unwrap();
        assert_eq!(w.f.objects, vec![0]);
        assert!(w.validate().is_empty());
        // the other choice is valid too
        let seeds: Vec<usize> = (0..16)
            .map(|s| {
                let cfg = SearchConfig {
                    seed: Some(s),
                    ..Default::default()
                };
                find_pseudo_inverse(&g, cfg).unwrap().f.objects[0]
            })
            .collect();
        assert!(seeds.contains(&0) && seeds.contains(&1));
    }

    #[test]
    fn discrete_to_terminal_is_not_found() {
        let b = FinCat::discrete(&["p", "q"]);
        let g = FunctorData::constant(&b, &FinCat::terminal(), 0);
        assert_eq!(
            find_pseudo_inverse(&g, SearchConfig::default()),
            Err(SearchError::NotFound)
        );
    }

    #[test]
    fn budget_exceeded_is_distinct() {
        let b = FinCat::discrete(&["p", "q"]);
        let g = FunctorData::constant(&b, &FinCat::terminal(), 0);
        let cfg = SearchConfig {
            budget: 1,
            seed: None,
        };
        assert_eq!(find_pseudo_inverse(&g, cfg), Err(SearchError::BudgetExceeded(1)));
    }

    /// `B(ℤ/2) × codiscrete(2) → B(ℤ/2)`, the projection, with ε twisted by
    /// the generator at one object.
    fn twisted_witness() -> EquivalenceWitness {
        let z = FinCat::cyclic_group(2, "*", "g");
        let b = crate::fincat::product(&[&z, &codiscrete(2)]).materialize();
        let g = FunctorData::from_fns(&b, &z, |_| 0, |m| m / 4);
        let w = find_pseudo_inverse(&g, SearchConfig::default()).unwrap();
        assert!(check_triangle_identities(&w).is_empty());
        w
    }

    #[test]
    fn twisted_counit_breaks_triangle_and_is_repaired() {
        let w = twisted_witness();
        let b = &w.f.target;
        // post-compose ε with the automorphism (g, id) at every object
        let twisted: Vec<usize> = w
            .epsilon
            .components
            .iter()
            .map(|&e| {
                let y = b.cod(e);
                let gen = b
                    .hom(y, y)
                    .into_iter()
                    .find(|&m| !b.is_identity(m))
                    .unwrap();
                b.compose(gen, e).unwrap()
            })
            .collect();
        let epsilon =
            NatTransfData::new(w.epsilon.source.clone(), w.epsilon.target.clone(), twisted)
                .unwrap();
        let bad = EquivalenceWitness { epsilon, ..w };
        assert!(bad.validate().is_empty());
        let failures = check_triangle_identities(&bad);
        assert!(!failures.is_empty());
        assert!(failures.iter().any(|f| f.identity == TriangleIdentity::Counit));
        let fixed = promote_to_adjoint(&bad).unwrap();
        assert!(check_triangle_identities(&fixed).is_empty());
        assert_eq!(fixed.eta, bad.eta);
        assert!(fixed.validate().is_empty());
        assert_eq!(promote_to_adjoint(&fixed).unwrap(), fixed);
    }
}
