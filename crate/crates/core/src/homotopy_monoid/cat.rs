//! Homotopy monoids in finite categories, and synthetic fixtures.
//!
//! A fixture level is `C(n) = (M × Bℤ/k)^n × D(n)` where `M` is a monoid
//! viewed as a discrete category, `Bℤ/k` is the one-object group category
//! (the "twist", which gives `C(1)` non-trivial automorphisms) and `D(n)` is
//! a codiscrete category on a set of decorations `S(n)`. Simplex maps act by
//! ordered products on `M`, by sums on `ℤ/k` and through a functor `S` on
//! decorations; comparison maps split tuples. Every object of `D(n)` is
//! isomorphic to every other, so decorations inflate each level by
//! isomorphic duplicates while keeping all functor equations strict.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::set_monoid::Monoid;
use super::{CatAmbient, HomotopyMonoidError, HomotopyMonoidReport};
use crate::equivalences::{find_pseudo_inverse, EquivalenceWitness, SearchConfig, SearchError};
use crate::fincat::{build_table, product, FinCat, FunctorData};
use crate::monoidal::{is_strong, validate_colax, ColaxFunctor};
use crate::report::Check;
use crate::simplex::{interval_dual, DeltaTruncation, SimplexMorphism};

/// Largest truncation the fixture generator accepts.
pub const MAX_FIXTURE_TRUNCATION: usize = 4;

/// Decoration functor `S: Δ≤N → Set` used to inflate levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decoration {
    /// No decoration; `C(n) = (M × Bℤ/k)^n`.
    None,
    /// `S(n) = {0..b-1}` at every level, simplex maps act trivially and
    /// comparison maps are diagonal.
    Const(usize),
    /// `S(n)` = colourings of the vertices `{0..n}` by `b` colours; a simplex
    /// map acts by precomposition with its interval dual and comparison maps
    /// restrict to the front and back faces. Level `n` has `b^(n+1)`
    /// duplicates, so keep this for small fixtures.
    Vertex(usize),
}

/// How to inflate a strict packaging: a decoration plus the order of the
/// twist group (`1` for none).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inflation {
    pub decoration: Decoration,
    pub twist: usize,
}

impl Default for Inflation {
    fn default() -> Self {
        Inflation {
            decoration: Decoration::Const(2),
            twist: 2,
        }
    }
}

impl Inflation {
    pub fn none() -> Self {
        Inflation {
            decoration: Decoration::None,
            twist: 1,
        }
    }
}

impl fmt::Display for Inflation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.decoration {
            Decoration::None => write!(f, "none")?,
            Decoration::Const(b) => write!(f, "const:{b}")?,
            Decoration::Vertex(b) => write!(f, "vertex:{b}")?,
        }
        write!(f, ",twist:{}", self.twist)
    }
}

/// `none`, `const:B` or `vertex:B`, optionally followed by `,twist:K`.
/// The twist defaults to 2 when a decoration is given and 1 for `none`.
impl FromStr for Inflation {
    type Err = HomotopyMonoidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HomotopyMonoidError::InvalidInflation(s.to_string());
        let mut parts = s.split(',').map(str::trim);
        let head = parts.next().ok_or_else(bad)?;
        let number = |v: &str| v.parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(bad);
        let decoration = match head.split_once(':') {
            None if head == "none" => Decoration::None,
            Some(("const", b)) => Decoration::Const(number(b)?),
            Some(("vertex", b)) => Decoration::Vertex(number(b)?),
            _ => return Err(bad()),
        };
        let mut twist = if decoration == Decoration::None { 1 } else { 2 };
        for p in parts {
            match p.split_once(':') {
                Some(("twist", k)) => twist = number(k)?,
                _ => return Err(bad()),
            }
        }
        Ok(Inflation { decoration, twist })
    }
}

/// Names a comparison map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    Pair(usize, usize),
    Unit,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Pair(m, n) => write!(f, "ξ_{{{m},{n}}}"),
            Component::Unit => write!(f, "ξ_0"),
        }
    }
}

/// A homotopy monoid in finite categories over `Δ≤N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatHomotopyMonoid {
    pub delta: DeltaTruncation,
    pub levels: Vec<FinCat>,
    pub maps: BTreeMap<SimplexMorphism, FunctorData>,
    /// `ξ_{m,n}: C(m+n) → C(m) × C(n)`
    pub xi: BTreeMap<(usize, usize), FunctorData>,
    /// `ξ_0: C(0) → 1`
    pub xi_unit: FunctorData,
    /// Optional pseudo-inverse witnesses; missing ones are searched for.
    pub witnesses: BTreeMap<Component, EquivalenceWitness>,
}

impl ColaxFunctor<DeltaTruncation, CatAmbient> for CatHomotopyMonoid {
    fn on_object(&self, a: &usize) -> FinCat {
        self.levels[*a].clone()
    }
    fn on_morphism(&self, f: &SimplexMorphism) -> FunctorData {
        self.maps[f].clone()
    }
    fn xi(&self, a: &usize, b: &usize) -> FunctorData {
        self.xi[&(*a, *b)].clone()
    }
    fn xi_unit(&self) -> FunctorData {
        self.xi_unit.clone()
    }
}

impl CatHomotopyMonoid {
    pub fn truncation(&self) -> usize {
        self.delta.bound()
    }

    /// The base category `C(1)`.
    pub fn base(&self) -> &FinCat {
        &self.levels[1]
    }

    pub fn map(&self, f: &SimplexMorphism) -> &FunctorData {
        &self.maps[f]
    }

    pub fn component(&self, c: Component) -> &FunctorData {
        match c {
            Component::Pair(m, n) => &self.xi[&(m, n)],
            Component::Unit => &self.xi_unit,
        }
    }

    pub fn components(&self) -> Vec<Component> {
        self.xi
            .keys()
            .map(|&(m, n)| Component::Pair(m, n))
            .chain([Component::Unit])
            .collect()
    }

    /// Every level, simplex map and comparison map is present and typed.
    pub fn check_complete(&self) -> Result<(), HomotopyMonoidError> {
        let n = self.truncation();
        let missing = |s: String| Err(HomotopyMonoidError::MissingComponent(s));
        if self.levels.len() != n + 1 {
            return missing(format!("expected {} levels, found {}", n + 1, self.levels.len()));
        }
        for f in self.delta.all_morphisms() {
            match self.maps.get(&f) {
                Some(func)
                    if func.source == self.levels[f.dom()]
                        && func.target == self.levels[f.cod()] => {}
                Some(_) => return missing(format!("C({f}) has the wrong source or target")),
                None => return missing(format!("C({f})")),
            }
        }
        for a in 0..=n {
            for b in 0..=n - a {
                let want = product(&[&self.levels[a], &self.levels[b]]);
                match self.xi.get(&(a, b)) {
                    Some(x) if x.source == self.levels[a + b] && x.target == want => {}
                    Some(_) => {
                        return missing(format!("{} has the wrong source or target", Component::Pair(a, b)))
                    }
                    None => return missing(Component::Pair(a, b).to_string()),
                }
            }
        }
        if self.xi_unit.source != self.levels[0] || self.xi_unit.target != FinCat::terminal() {
            return missing("ξ_0 has the wrong source or target".into());
        }
        Ok(())
    }

    pub fn is_strong(&self) -> bool {
        is_strong(&self.delta, &CatAmbient, self)
    }

    /// Functoriality, the colax axioms as functor equations, and existence
    /// of a pseudo-inverse for every comparison map (supplied witnesses are
    /// re-validated; missing ones are searched for).
    pub fn validate(&self, config: SearchConfig) -> Result<HomotopyMonoidReport, HomotopyMonoidError> {
        self.check_complete()?;
        let colax = validate_colax(&self.delta, &CatAmbient, self)?;
        let mut checks = colax.checks();
        let mut eq = Check::new("comparison maps are equivalences");
        for c in self.components() {
            let g = self.component(c);
            let ok = match self.witnesses.get(&c) {
                Some(w) => &w.g == g && w.validate().is_empty(),
                None => match find_pseudo_inverse(g, config) {
                    Ok(_) => true,
                    Err(SearchError::NotFound) => false,
                    Err(e) => return Err(HomotopyMonoidError::from_search(&c.to_string(), e)),
                },
            };
            eq.record(ok, || format!("{c} has no pseudo-inverse"));
        }
        checks.push(eq);
        Ok(HomotopyMonoidReport { checks })
    }

    /// Add an isomorphic copy of `object` at the top level `N`. Simplex maps
    /// into level `N` land on the original, maps out of it treat the copy
    /// as the original. Lower levels cannot be duplicated this way: a face
    /// followed by a degeneracy would have to fix the copy.
    pub fn duplicate_top_object(&self, object: usize) -> Result<Self, HomotopyMonoidError> {
        let n = self.truncation();
        if n == 0 {
            return Err(HomotopyMonoidError::OutOfTruncation { requested: 1, bound: 0 });
        }
        let old = &self.levels[n];
        if object >= old.num_objects() {
            return Err(HomotopyMonoidError::MissingComponent(format!("object {object} at level {n}")));
        }
        let (new, proj, incl) = duplicate_object(old, object);
        let mut out = self.clone();
        out.witnesses.clear();
        out.levels[n] = new.clone();
        for (f, func) in out.maps.iter_mut() {
            let (into, from) = (f.cod() == n, f.dom() == n);
            *func = match (from, into) {
                (true, true) if f.is_identity() => FunctorData::identity(&new),
                (true, true) => then(&then(&proj, func), &incl),
                (false, true) => then(func, &incl),
                (true, false) => then(&proj, func),
                (false, false) => continue,
            };
        }
        for a in 0..=n {
            let b = n - a;
            let old_xi = &self.xi[&(a, b)];
            let target = product(&[&out.levels[a], &out.levels[b]]);
            let through = then(&proj, old_xi);
            let xi = if a == n || b == n {
                // the unit laws force the identity on the level-N block; the
                // other block is read off the old component
                let (nb, mb) = (self.levels[b].num_objects(), self.levels[b].num_morphisms());
                let (no, nm) = (new.num_objects(), new.num_morphisms());
                FunctorData::from_fns(
                    &new,
                    &target,
                    |o| {
                        let t = through.objects[o];
                        if b == 0 { o * nb + t % nb } else { (t / nb) * no + o }
                    },
                    |m| {
                        let t = through.morphisms[m];
                        if b == 0 { m * mb + t % mb } else { (t / mb) * nm + m }
                    },
                )
            } else {
                FunctorData::new_unchecked(new.clone(), target, through.objects, through.morphisms)
            };
            out.xi.insert((a, b), xi);
        }
        Ok(out)
    }
}

fn then(first: &FunctorData, next: &FunctorData) -> FunctorData {
    FunctorData::new_unchecked(
        first.source.clone(),
        next.target.clone(),
        first.objects.iter().map(|&o| next.objects[o]).collect(),
        first.morphisms.iter().map(|&m| next.morphisms[m]).collect(),
    )
}

/// `c` with an extra object isomorphic to `x`, the projection back to `c`
/// and the inclusion of `c`.
fn duplicate_object(c: &FinCat, x: usize) -> (FinCat, FunctorData, FunctorData) {
    let copy = c.num_objects();
    let mut objects: Vec<String> = c.objects().map(|a| c.object_name(a)).collect();
    objects.push(format!("{}'", objects[x]));
    let variants = |a: usize| if a == x { vec![a, copy] } else { vec![a] };
    let mut morphisms = Vec::new();
    let mut origin = Vec::new();
    let mut index = BTreeMap::new();
    for m in c.morphisms() {
        for d in variants(c.dom(m)) {
            for e in variants(c.cod(m)) {
                let mut name = c.morphism_name(m);
                if d == copy {
                    name = format!("{name}@src'");
                }
                if e == copy {
                    name = format!("{name}@tgt'");
                }
                index.insert((m, d, e), morphisms.len());
                origin.push(m);
                morphisms.push((name, d, e));
            }
        }
    }
    let identities: Vec<usize> = (0..=copy)
        .map(|a| {
            let orig = if a == copy { x } else { a };
            index[&(c.identity(orig), a, a)]
        })
        .collect();
    let ms = morphisms.clone();
    let new = build_table(objects, morphisms, identities, |g, f| {
        let gf = c.compose(origin[g], origin[f]).expect("composable");
        index[&(gf, ms[f].1, ms[g].2)]
    });
    let proj = FunctorData::from_fns(
        &new,
        c,
        |a| if a == copy { x } else { a },
        |m| origin[m],
    );
    let incl = FunctorData::from_fns(c, &new, |a| a, |m| index[&(m, c.dom(m), c.cod(m))]);
    (new, proj, incl)
}

/// Per-level decoration sets and their action.
struct Decorations {
    scheme: Decoration,
}

impl Decorations {
    fn colours(&self) -> usize {
        match self.scheme {
            Decoration::None => 1,
            Decoration::Const(b) | Decoration::Vertex(b) => b,
        }
    }

    fn size(&self, n: usize) -> usize {
        match self.scheme {
            Decoration::None => 1,
            Decoration::Const(b) => b,
            Decoration::Vertex(b) => b.pow(n as u32 + 1),
        }
    }

    fn decode(&self, s: usize, n: usize) -> Vec<usize> {
        let b = self.colours();
        let mut out = vec![0; n + 1];
        let mut s = s;
        for slot in out.iter_mut().rev() {
            *slot = s % b;
            s /= b;
        }
        out
    }

    fn encode(&self, v: &[usize]) -> usize {
        v.iter().fold(0, |acc, &x| acc * self.colours() + x)
    }

    fn name(&self, s: usize, n: usize) -> String {
        match self.scheme {
            Decoration::Vertex(_) => {
                let v: Vec<String> = self.decode(s, n).iter().map(|c| c.to_string()).collect();
                format!("c{}", v.join("."))
            }
            _ => format!("d{s}"),
        }
    }

    fn category(&self, n: usize) -> Option<FinCat> {
        if self.scheme == Decoration::None {
            return None;
        }
        let names: Vec<String> = (0..self.size(n)).map(|s| self.name(s, n)).collect();
        Some(FinCat::codiscrete(&names))
    }

    /// `S(f)`
    fn act(&self, f: &SimplexMorphism, s: usize) -> usize {
        match self.scheme {
            Decoration::Vertex(_) => {
                let v = self.decode(s, f.dom());
                let d = interval_dual(f);
                self.encode(&d.iter().map(|&i| v[i]).collect::<Vec<_>>())
            }
            _ => s,
        }
    }

    /// The decoration comparison `S(m+n) → S(m) × S(n)`.
    fn split(&self, s: usize, m: usize, n: usize) -> (usize, usize) {
        match self.scheme {
            Decoration::Vertex(_) => {
                let v = self.decode(s, m + n);
                (self.encode(&v[..=m]), self.encode(&v[m..]))
            }
            _ => (s, s),
        }
    }
}

/// Object and morphism layout of one fixture level: `n` blocks of
/// `(M, ℤ/k)` factors followed by an optional decoration factor.
struct Layout {
    twist: bool,
    decorated: bool,
}

impl Layout {
    fn per_position(&self) -> usize {
        if self.twist {
            2
        } else {
            1
        }
    }
}

/// The strict packaging of `m` with levels inflated as described by
/// `inflation`. The result validates and, when the inflation is nontrivial,
/// its comparison maps are equivalences but not isomorphisms.
pub fn fixture_generator(
    m: &Monoid,
    inflation: &Inflation,
    truncation: usize,
) -> Result<CatHomotopyMonoid, HomotopyMonoidError> {
    let problems = m.violations();
    if !problems.is_empty() {
        return Err(HomotopyMonoidError::InvalidMonoid(problems.join("; ")));
    }
    if truncation == 0 || truncation > MAX_FIXTURE_TRUNCATION {
        return Err(HomotopyMonoidError::OutOfTruncation {
            requested: truncation,
            bound: MAX_FIXTURE_TRUNCATION,
        });
    }
    if inflation.twist == 0 {
        return Err(HomotopyMonoidError::InvalidInflation("twist must be at least 1".into()));
    }
    let names: Vec<String> = (0..m.size()).map(|i| format!("m{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mcat = FinCat::discrete(&refs);
    let k = inflation.twist;
    let zcat = FinCat::cyclic_group(k, "*", "t");
    let dec = Decorations {
        scheme: inflation.decoration,
    };
    let layout = Layout {
        twist: k > 1,
        decorated: inflation.decoration != Decoration::None,
    };
    let pp = layout.per_position();

    let levels: Vec<FinCat> = (0..=truncation)
        .map(|n| {
            let mut factors: Vec<FinCat> = Vec::new();
            for _ in 0..n {
                factors.push(mcat.clone());
                if layout.twist {
                    factors.push(zcat.clone());
                }
            }
            if let Some(d) = dec.category(n) {
                factors.push(d);
            }
            let refs: Vec<&FinCat> = factors.iter().collect();
            product(&refs)
        })
        .collect();

    let delta = DeltaTruncation::new(truncation);
    let mut maps = BTreeMap::new();
    for f in delta.all_morphisms() {
        let (src, tgt) = (&levels[f.dom()], &levels[f.cod()]);
        let dsize = dec.size(f.cod());
        let image = |parts: Vec<usize>, morphisms: bool| -> Vec<usize> {
            let mut out = Vec::with_capacity(f.cod() * pp + 1);
            for j in 1..=f.cod() {
                let fibre = f.fibre(j);
                // discrete M: morphism and object indices coincide
                out.push(m.fold(fibre.clone().map(|i| parts[(i - 1) * pp])));
                if layout.twist {
                    let t = if morphisms {
                        fibre.map(|i| parts[(i - 1) * pp + 1]).sum::<usize>() % k
                    } else {
                        0
                    };
                    out.push(t);
                }
            }
            if layout.decorated {
                let last = parts[f.dom() * pp];
                if morphisms {
                    let ssize = dec.size(f.dom());
                    let (a, b) = (last / ssize, last % ssize);
                    out.push(dec.act(&f, a) * dsize + dec.act(&f, b));
                } else {
                    out.push(dec.act(&f, last));
                }
            }
            out
        };
        let func = FunctorData::from_fns(
            src,
            tgt,
            |o| tgt.tuple_object(&image(src.split_object(o), false)),
            |h| tgt.tuple_morphism(&image(src.split_morphism(h), true)),
        );
        maps.insert(f, func);
    }

    let mut xi = BTreeMap::new();
    for a in 0..=truncation {
        for b in 0..=truncation - a {
            let src = &levels[a + b];
            let tgt = product(&[&levels[a], &levels[b]]);
            let (sa, sb) = (dec.size(a), dec.size(b));
            let ssize = dec.size(a + b);
            let image = |parts: Vec<usize>, morphisms: bool| -> Vec<usize> {
                let mut out = parts[..a * pp].to_vec();
                let last = if layout.decorated {
                    Some(parts[(a + b) * pp])
                } else {
                    None
                };
                let split = |s: usize| dec.split(s, a, b);
                let (left, right) = match last {
                    None => (None, None),
                    Some(s) if morphisms => {
                        let (x, y) = (split(s / ssize), split(s % ssize));
                        (Some(x.0 * sa + y.0), Some(x.1 * sb + y.1))
                    }
                    Some(s) => {
                        let x = split(s);
                        (Some(x.0), Some(x.1))
                    }
                };
                out.extend(left);
                out.extend_from_slice(&parts[a * pp..(a + b) * pp]);
                out.extend(right);
                out
            };
            let func = FunctorData::from_fns(
                src,
                &tgt,
                |o| tgt.tuple_object(&image(src.split_object(o), false)),
                |h| tgt.tuple_morphism(&image(src.split_morphism(h), true)),
            );
            xi.insert((a, b), func);
        }
    }
    let xi_unit = FunctorData::constant(&levels[0], &FinCat::terminal(), 0);
    Ok(CatHomotopyMonoid {
        delta,
        levels,
        maps,
        xi,
        xi_unit,
        witnesses: BTreeMap::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> Monoid {
        Monoid::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap()
    }

    #[test]
    fn inflation_spec_parsing() {
        assert_eq!("none".parse::<Inflation>().unwrap(), Inflation::none());
        assert_eq!("const:2".parse::<Inflation>().unwrap(), Inflation::default());
        let v: Inflation = "vertex:2, twist:1".parse().unwrap();
        assert_eq!(v.decoration, Decoration::Vertex(2));
        assert_eq!(v.twist, 1);
        assert_eq!(v.to_string().parse::<Inflation>().unwrap(), v);
        for bad in ["", "const", "const:0", "vertex:x", "const:2,twist", "foo:1"] {
            assert!(bad.parse::<Inflation>().is_err(), "{bad}");
        }
    }

    #[test]
    fn zero_inflation_is_strict() {
        let h = fixture_generator(&m2(), &Inflation::none(), 3).unwrap();
        assert!(h.is_strong());
        assert!(h.xi.values().all(|x| x.objects.iter().enumerate().all(|(i, &o)| i == o)));
        assert!(h.validate(SearchConfig::default()).unwrap().passed());
    }

    #[test]
    fn inflated_fixtures_validate() {
        for spec in ["const:2", "const:3,twist:1", "vertex:2,twist:1", "none,twist:2"] {
            let inf: Inflation = spec.parse().unwrap();
            let h = fixture_generator(&m2(), &inf, 3).unwrap();
            let r = h.validate(SearchConfig::default()).unwrap();
            assert!(r.passed(), "{spec}: {:?}", r.failures());
        }
        let h = fixture_generator(&m2(), &Inflation::default(), 3).unwrap();
        assert!(!h.is_strong());
    }

    #[test]
    fn duplicated_top_object_is_equivalence_not_iso() {
        let h = fixture_generator(&m2(), &Inflation::none(), 2).unwrap();
        let d = h.duplicate_top_object(1).unwrap();
        assert_eq!(d.levels[2].num_objects(), h.levels[2].num_objects() + 1);
        let r = d.validate(SearchConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert!(!d.is_strong());
        assert!(find_pseudo_inverse(&d.xi[&(1, 1)], SearchConfig::default()).is_ok());
    }

    #[test]
    fn non_equivalence_component_is_named() {
        let mut h = fixture_generator(&m2(), &Inflation::default(), 3).unwrap();
        // send (a, b) to (a, a) on the monoid part of ξ_{1,1}
        let g = h.xi[&(1, 1)].clone();
        let (src, tgt) = (g.source.clone(), g.target.clone());
        let fix = |parts: Vec<usize>| {
            let mut p = parts;
            p[3] = p[0];
            p
        };
        h.xi.insert(
            (1, 1),
            FunctorData::from_fns(
                &src,
                &tgt,
                |o| tgt.tuple_object(&fix(tgt.split_object(g.objects[o]))),
                |m| tgt.tuple_morphism(&fix(tgt.split_morphism(g.morphisms[m]))),
            ),
        );
        let r = h.validate(SearchConfig::default()).unwrap();
        let eq = r.checks.iter().find(|c| c.name.contains("equivalences")).unwrap();
        assert_eq!(eq.failures, vec!["ξ_{1,1} has no pseudo-inverse".to_string()]);
    }

    #[test]
    fn truncation_bounds() {
        assert!(matches!(
            fixture_generator(&m2(), &Inflation::none(), 0),
            Err(HomotopyMonoidError::OutOfTruncation { .. })
        ));
        assert!(matches!(
            fixture_generator(&m2(), &Inflation::none(), MAX_FIXTURE_TRUNCATION + 1),
            Err(HomotopyMonoidError::OutOfTruncation { .. })
        ));
    }
}
