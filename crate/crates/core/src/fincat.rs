//! Finite categories given by explicit tables, functors and natural
//! transformations between them, and flattened finite products.
//!
//! Objects and morphisms are addressed by dense indices; the string ids of
//! the input tables are kept for reporting. Products are never nested: the
//! factors of a product are always table categories, so
//! `product([product([A, B]), C])` and `product([A, B, C])` are the same
//! structure.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A morphism entry of a table category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// Unvalidated category tables, keyed by string ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(id, dom, cod)`
    pub morphisms: Vec<(String, String, String)>,
    /// `(object, identity morphism)`
    pub identities: Vec<(String, String)>,
    /// `(g, f, g∘f)`
    pub composition: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CategoryViolation {
    #[error("unknown object id `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism id `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("object `{object}` has no identity morphism")]
    MissingIdentity { object: String },
    #[error("identity `{identity}` of `{object}` is not an endomorphism of it")]
    BadIdentity { object: String, identity: String },
    #[error("composite {g}∘{f}: {detail}")]
    IllTypedComposite { g: String, f: String, detail: String },
    #[error("identity law fails at `{morphism}`")]
    IdentityLaw { morphism: String },
    #[error("({h}∘{g})∘{f} ≠ {h}∘({g}∘{f})")]
    NonAssociative { f: String, g: String, h: String },
}

#[derive(Clone, Debug, Error)]
pub enum CategoryError {
    #[error("invalid category: {}", join_violations(.0))]
    Invalid(Vec<CategoryViolation>),
}

fn join_violations<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A validated category presented by tables.
#[derive(Debug)]
pub struct TableCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
    hom: HashMap<(usize, usize), Vec<usize>>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
}

impl PartialEq for TableCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.composition == other.composition
    }
}

impl TableCat {
    fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Self {
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.dom].push(i);
            hom.entry((m.dom, m.cod)).or_default().push(i);
        }
        let object_index = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let morphism_index = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.name.clone(), i))
            .collect();
        TableCat {
            objects,
            morphisms,
            identities,
            composition,
            outgoing,
            hom,
            object_index,
            morphism_index,
        }
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Table(Arc<TableCat>),
    Product(Arc<Vec<Arc<TableCat>>>),
}

/// A finite category: either a table category or a flattened product of
/// table categories.
#[derive(Clone, Debug)]
pub struct FinCat {
    repr: Repr,
}

/// A finite product of categories. Products are stored flattened, so this is
/// the same type as [`FinCat`].
pub type TupleCat = FinCat;

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Table(a), Repr::Table(b)) => Arc::ptr_eq(a, b) || a == b,
            (Repr::Product(a), Repr::Product(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.len() == b.len()
                        && a.iter().zip(b.iter()).all(|(x, y)| Arc::ptr_eq(x, y) || x == y))
            }
            _ => false,
        }
    }
}

impl Eq for FinCat {}

/// Validate raw tables. Composites with an identity may be omitted from the
/// composition list; they are filled in. Every other composable pair must be
/// listed.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat, CategoryError> {
    let mut violations = Vec::new();
    let mut object_index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if object_index.insert(o.clone(), i).is_some() {
            violations.push(CategoryViolation::DuplicateId(o.clone()));
        }
    }
    let mut morphisms = Vec::new();
    let mut morphism_index = HashMap::new();
    for (id, dom, cod) in &raw.morphisms {
        let d = object_index.get(dom).copied();
        let c = object_index.get(cod).copied();
        if d.is_none() {
            violations.push(CategoryViolation::UnknownObject(dom.clone()));
        }
        if c.is_none() {
            violations.push(CategoryViolation::UnknownObject(cod.clone()));
        }
        if morphism_index.insert(id.clone(), morphisms.len()).is_some() {
            violations.push(CategoryViolation::DuplicateId(id.clone()));
        }
        morphisms.push(Morphism {
            name: id.clone(),
            dom: d.unwrap_or(0),
            cod: c.unwrap_or(0),
        });
    }
    if !violations.is_empty() {
        return Err(CategoryError::Invalid(violations));
    }

    let mut identities = vec![usize::MAX; raw.objects.len()];
    for (o, m) in &raw.identities {
        match (object_index.get(o), morphism_index.get(m)) {
            (Some(&oi), Some(&mi)) => {
                if morphisms[mi].dom != oi || morphisms[mi].cod != oi {
                    violations.push(CategoryViolation::BadIdentity {
                        object: o.clone(),
                        identity: m.clone(),
                    });
                } else {
                    identities[oi] = mi;
                }
            }
            (None, _) => violations.push(CategoryViolation::UnknownObject(o.clone())),
            (_, None) => violations.push(CategoryViolation::UnknownMorphism(m.clone())),
        }
    }
    for (i, &id) in identities.iter().enumerate() {
        if id == usize::MAX {
            violations.push(CategoryViolation::MissingIdentity {
                object: raw.objects[i].clone(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(CategoryError::Invalid(violations));
    }

    let mut composition = HashMap::new();
    for (g, f, gf) in &raw.composition {
        let ids = [g, f, gf].map(|x| morphism_index.get(x).copied());
        let [Some(gi), Some(fi), Some(gfi)] = ids else {
            for (x, i) in [g, f, gf].iter().zip(ids) {
                if i.is_none() {
                    violations.push(CategoryViolation::UnknownMorphism((*x).clone()));
                }
            }
            continue;
        };
        let (mf, mg, mgf) = (&morphisms[fi], &morphisms[gi], &morphisms[gfi]);
        if mf.cod != mg.dom {
            violations.push(CategoryViolation::IllTypedComposite {
                g: g.clone(),
                f: f.clone(),
                detail: "not composable".into(),
            });
        } else if mgf.dom != mf.dom || mgf.cod != mg.cod {
            violations.push(CategoryViolation::IllTypedComposite {
                g: g.clone(),
                f: f.clone(),
                detail: format!("result `{gf}` has the wrong domain or codomain"),
            });
        } else if let Some(prev) = composition.insert((gi, fi), gfi) {
            if prev != gfi {
                violations.push(CategoryViolation::IllTypedComposite {
                    g: g.clone(),
                    f: f.clone(),
                    detail: "listed twice with different results".into(),
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(CategoryError::Invalid(violations));
    }

    // fill in identity composites, checking any that were given
    for (fi, mf) in morphisms.iter().enumerate() {
        for (gi, expect) in [(identities[mf.cod], fi)] {
            match composition.get(&(gi, fi)) {
                Some(&r) if r != expect => violations.push(CategoryViolation::IdentityLaw {
                    morphism: mf.name.clone(),
                }),
                _ => {
                    composition.insert((gi, fi), expect);
                }
            }
        }
        let idd = identities[mf.dom];
        match composition.get(&(fi, idd)) {
            Some(&r) if r != fi => violations.push(CategoryViolation::IdentityLaw {
                morphism: mf.name.clone(),
            }),
            _ => {
                composition.insert((fi, idd), fi);
            }
        }
    }

    let table = TableCat::from_parts(raw.objects.clone(), morphisms, identities, composition);
    for (fi, mf) in table.morphisms.iter().enumerate() {
        for &gi in &table.outgoing[mf.cod] {
            if !table.composition.contains_key(&(gi, fi)) {
                violations.push(CategoryViolation::IllTypedComposite {
                    g: table.morphisms[gi].name.clone(),
                    f: mf.name.clone(),
                    detail: "composite missing from table".into(),
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(CategoryError::Invalid(violations));
    }
    for (fi, mf) in table.morphisms.iter().enumerate() {
        for &gi in &table.outgoing[mf.cod] {
            let gf = table.composition[&(gi, fi)];
            for &hi in &table.outgoing[table.morphisms[gi].cod] {
                let hg = table.composition[&(hi, gi)];
                if table.composition[&(hi, gf)] != table.composition[&(hg, fi)] {
                    violations.push(CategoryViolation::NonAssociative {
                        f: mf.name.clone(),
                        g: table.morphisms[gi].name.clone(),
                        h: table.morphisms[hi].name.clone(),
                    });
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(CategoryError::Invalid(violations));
    }
    Ok(FinCat {
        repr: Repr::Table(Arc::new(table)),
    })
}

/// Flattened product of categories. A single table factor is returned as is;
/// the empty product is the terminal category.
pub fn product(factors: &[&FinCat]) -> TupleCat {
    let mut flat = Vec::new();
    for f in factors {
        match &f.repr {
            Repr::Table(t) => flat.push(t.clone()),
            Repr::Product(ts) => flat.extend(ts.iter().cloned()),
        }
    }
    if flat.len() == 1 {
        return FinCat {
            repr: Repr::Table(flat.pop().unwrap()),
        };
    }
    FinCat {
        repr: Repr::Product(Arc::new(flat)),
    }
}

fn decode(mut idx: usize, radices: impl DoubleEndedIterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = radices
        .rev()
        .map(|r| {
            let d = idx % r;
            idx /= r;
            d
        })
        .collect();
    out.reverse();
    out
}

fn encode(digits: &[usize], radices: impl Iterator<Item = usize>) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, r)| acc * r + d)
}

/// Apply `f` to each factor's digit of a mixed-radix index and re-encode,
/// without allocating.
fn map_digits(
    ts: &[Arc<TableCat>],
    mut idx: usize,
    in_radix: fn(&TableCat) -> usize,
    out_radix: fn(&TableCat) -> usize,
    mut f: impl FnMut(&TableCat, usize) -> Option<usize>,
) -> Option<usize> {
    let (mut out, mut scale) = (0, 1);
    for t in ts.iter().rev() {
        let r = in_radix(t);
        let d = f(t, idx % r)?;
        idx /= r;
        out += d * scale;
        scale *= out_radix(t);
    }
    Some(out)
}

fn object_count(t: &TableCat) -> usize {
    t.objects.len()
}

fn morphism_count(t: &TableCat) -> usize {
    t.morphisms.len()
}

fn cartesian(lists: &[&[usize]], radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for (list, &r) in lists.iter().zip(radices) {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for &acc in &out {
            for &x in *list {
                next.push(acc * r + x);
            }
        }
        out = next;
    }
    out
}

impl FinCat {
    pub fn from_raw(raw: &RawCategory) -> Result<Self, CategoryError> {
        validate_category(raw)
    }

    /// One object, one morphism.
    pub fn terminal() -> Self {
        product(&[])
    }

    pub fn is_product(&self) -> bool {
        matches!(self.repr, Repr::Product(_))
    }

    /// Number of table factors (1 for a table category).
    pub fn arity(&self) -> usize {
        match &self.repr {
            Repr::Table(_) => 1,
            Repr::Product(ts) => ts.len(),
        }
    }

    /// The table factors as standalone categories.
    pub fn factors(&self) -> Vec<FinCat> {
        match &self.repr {
            Repr::Table(t) => vec![FinCat {
                repr: Repr::Table(t.clone()),
            }],
            Repr::Product(ts) => ts
                .iter()
                .map(|t| FinCat {
                    repr: Repr::Table(t.clone()),
                })
                .collect(),
        }
    }

    pub fn num_objects(&self) -> usize {
        match &self.repr {
            Repr::Table(t) => t.objects.len(),
            Repr::Product(ts) => ts.iter().map(|t| t.objects.len()).product(),
        }
    }

    pub fn num_morphisms(&self) -> usize {
        match &self.repr {
            Repr::Table(t) => t.morphisms.len(),
            Repr::Product(ts) => ts.iter().map(|t| t.morphisms.len()).product(),
        }
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.num_objects()
    }

    pub fn morphisms(&self) -> std::ops::Range<usize> {
        0..self.num_morphisms()
    }

    /// Split a product object into its factor components.
    pub fn split_object(&self, a: usize) -> Vec<usize> {
        match &self.repr {
            Repr::Table(_) => vec![a],
            Repr::Product(ts) => decode(a, ts.iter().map(|t| t.objects.len())),
        }
    }

    pub fn split_morphism(&self, f: usize) -> Vec<usize> {
        match &self.repr {
            Repr::Table(_) => vec![f],
            Repr::Product(ts) => decode(f, ts.iter().map(|t| t.morphisms.len())),
        }
    }

    pub fn tuple_object(&self, parts: &[usize]) -> usize {
        match &self.repr {
            Repr::Table(_) => parts[0],
            Repr::Product(ts) => encode(parts, ts.iter().map(|t| t.objects.len())),
        }
    }

    pub fn tuple_morphism(&self, parts: &[usize]) -> usize {
        match &self.repr {
            Repr::Table(_) => parts[0],
            Repr::Product(ts) => encode(parts, ts.iter().map(|t| t.morphisms.len())),
        }
    }

    pub fn dom(&self, f: usize) -> usize {
        match &self.repr {
            Repr::Table(t) => t.morphisms[f].dom,
            Repr::Product(ts) => {
                map_digits(ts, f, morphism_count, object_count, |t, m| Some(t.morphisms[m].dom))
                    .expect("total")
            }
        }
    }

    pub fn cod(&self, f: usize) -> usize {
        match &self.repr {
            Repr::Table(t) => t.morphisms[f].cod,
            Repr::Product(ts) => {
                map_digits(ts, f, morphism_count, object_count, |t, m| Some(t.morphisms[m].cod))
                    .expect("total")
            }
        }
    }

    pub fn identity(&self, a: usize) -> usize {
        match &self.repr {
            Repr::Table(t) => t.identities[a],
            Repr::Product(ts) => {
                map_digits(ts, a, object_count, morphism_count, |t, o| Some(t.identities[o]))
                    .expect("total")
            }
        }
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity(self.dom(f)) == f
    }

    /// `g∘f`, or `None` when `cod f ≠ dom g`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        match &self.repr {
            Repr::Table(t) => t.composition.get(&(g, f)).copied(),
            Repr::Product(ts) => {
                let mut g = g;
                map_digits(ts, f, morphism_count, morphism_count, |t, fi| {
                    let r = t.morphisms.len();
                    let gi = g % r;
                    g /= r;
                    t.composition.get(&(gi, fi)).copied()
                })
            }
        }
    }

    /// Compose a path given in diagrammatic order `f1, f2, ...` (so the result
    /// is `... ∘ f2 ∘ f1`).
    pub fn compose_path(&self, path: &[usize]) -> Option<usize> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    /// Morphisms `a → b` in increasing index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        match &self.repr {
            Repr::Table(t) => t.hom.get(&(a, b)).cloned().unwrap_or_default(),
            Repr::Product(ts) => {
                let (aa, bb) = (self.split_object(a), self.split_object(b));
                let empty = Vec::new();
                let lists: Vec<&[usize]> = ts
                    .iter()
                    .enumerate()
                    .map(|(i, t)| t.hom.get(&(aa[i], bb[i])).unwrap_or(&empty).as_slice())
                    .collect();
                let radices: Vec<usize> = ts.iter().map(|t| t.morphisms.len()).collect();
                cartesian(&lists, &radices)
            }
        }
    }

    /// Morphisms with domain `a`, in increasing index order.
    pub fn outgoing(&self, a: usize) -> Vec<usize> {
        match &self.repr {
            Repr::Table(t) => t.outgoing[a].clone(),
            Repr::Product(ts) => {
                let aa = self.split_object(a);
                let lists: Vec<&[usize]> = ts
                    .iter()
                    .zip(&aa)
                    .map(|(t, &o)| t.outgoing[o].as_slice())
                    .collect();
                let radices: Vec<usize> = ts.iter().map(|t| t.morphisms.len()).collect();
                cartesian(&lists, &radices)
            }
        }
    }

    /// The two-sided inverse of `f`, if it has one.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        match &self.repr {
            Repr::Table(t) => {
                let m = &t.morphisms[f];
                let (ida, idb) = (t.identities[m.dom], t.identities[m.cod]);
                t.hom.get(&(m.cod, m.dom))?.iter().copied().find(|&g| {
                    t.composition.get(&(g, f)) == Some(&ida)
                        && t.composition.get(&(f, g)) == Some(&idb)
                })
            }
            Repr::Product(_) => {
                let parts = self
                    .factors()
                    .iter()
                    .zip(self.split_morphism(f))
                    .map(|(c, m)| c.inverse(m))
                    .collect::<Option<Vec<_>>>()?;
                Some(self.tuple_morphism(&parts))
            }
        }
    }

    /// Isomorphisms `a → b`, in increasing index order.
    pub fn isos(&self, a: usize, b: usize) -> Vec<usize> {
        self.hom(a, b)
            .into_iter()
            .filter(|&f| self.inverse(f).is_some())
            .collect()
    }

    pub fn object_name(&self, a: usize) -> String {
        match &self.repr {
            Repr::Table(t) => t.objects[a].clone(),
            Repr::Product(ts) => {
                let names: Vec<&str> = self
                    .split_object(a)
                    .iter()
                    .zip(ts.iter())
                    .map(|(&o, t)| t.objects[o].as_str())
                    .collect();
                format!("({})", names.join(","))
            }
        }
    }

    pub fn morphism_name(&self, f: usize) -> String {
        match &self.repr {
            Repr::Table(t) => t.morphisms[f].name.clone(),
            Repr::Product(ts) => {
                let names: Vec<&str> = self
                    .split_morphism(f)
                    .iter()
                    .zip(ts.iter())
                    .map(|(&m, t)| t.morphisms[m].name.as_str())
                    .collect();
                format!("({})", names.join(","))
            }
        }
    }

    pub fn object_by_name(&self, name: &str) -> Option<usize> {
        match &self.repr {
            Repr::Table(t) => t.object_index.get(name).copied(),
            Repr::Product(_) => self.objects().find(|&a| self.object_name(a) == name),
        }
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<usize> {
        match &self.repr {
            Repr::Table(t) => t.morphism_index.get(name).copied(),
            Repr::Product(_) => self.morphisms().find(|&f| self.morphism_name(f) == name),
        }
    }

    /// Export the tables. Identity composites are included.
    pub fn to_raw(&self) -> RawCategory {
        let objects: Vec<String> = self.objects().map(|a| self.object_name(a)).collect();
        let morphisms = self
            .morphisms()
            .map(|f| {
                (
                    self.morphism_name(f),
                    objects[self.dom(f)].clone(),
                    objects[self.cod(f)].clone(),
                )
            })
            .collect();
        let identities = self
            .objects()
            .map(|a| (objects[a].clone(), self.morphism_name(self.identity(a))))
            .collect();
        let mut composition = Vec::new();
        for f in self.morphisms() {
            for g in self.outgoing(self.cod(f)) {
                let gf = self.compose(g, f).expect("composable");
                composition.push((
                    self.morphism_name(g),
                    self.morphism_name(f),
                    self.morphism_name(gf),
                ));
            }
        }
        RawCategory {
            objects,
            morphisms,
            identities,
            composition,
        }
    }

    /// The same category as a single table (product structure forgotten).
    /// Index order is preserved.
    pub fn materialize(&self) -> FinCat {
        match &self.repr {
            Repr::Table(_) => self.clone(),
            Repr::Product(_) => {
                let objects: Vec<String> = self.objects().map(|a| self.object_name(a)).collect();
                let morphisms: Vec<Morphism> = self
                    .morphisms()
                    .map(|f| Morphism {
                        name: self.morphism_name(f),
                        dom: self.dom(f),
                        cod: self.cod(f),
                    })
                    .collect();
                let identities = self.objects().map(|a| self.identity(a)).collect();
                let mut composition = HashMap::new();
                for f in self.morphisms() {
                    for g in self.outgoing(self.cod(f)) {
                        composition.insert((g, f), self.compose(g, f).expect("composable"));
                    }
                }
                FinCat {
                    repr: Repr::Table(Arc::new(TableCat::from_parts(
                        objects,
                        morphisms,
                        identities,
                        composition,
                    ))),
                }
            }
        }
    }

    /// A category with the given objects and only identity morphisms.
    pub fn discrete(names: &[&str]) -> FinCat {
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        build_table(
            objects.clone(),
            objects
                .iter()
                .enumerate()
                .map(|(i, o)| (format!("1_{o}"), i, i))
                .collect(),
            (0..objects.len()).collect(),
            |_, _| unreachable!("discrete categories have no non-identity composites"),
        )
    }

    /// The codiscrete (indiscrete) category: exactly one morphism between
    /// any two objects.
    pub fn codiscrete(names: &[String]) -> FinCat {
        let n = names.len();
        let mut morphisms = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                morphisms.push((format!("{}>{}", names[a], names[b]), a, b));
            }
        }
        build_table(
            names.to_vec(),
            morphisms,
            (0..n).map(|a| a * n + a).collect(),
            |g, f| (f / n) * n + g % n,
        )
    }

    /// The one-object category of the cyclic group ℤ/k, with morphisms
    /// named `{prefix}0 .. {prefix}{k-1}` and composition by addition.
    pub fn cyclic_group(k: usize, object: &str, prefix: &str) -> FinCat {
        build_table(
            vec![object.to_string()],
            (0..k).map(|i| (format!("{prefix}{i}"), 0, 0)).collect(),
            vec![0],
            |g, f| (g + f) % k,
        )
    }

    /// The poset `0 < 1 < ... < n-1` as a category.
    pub fn chain(n: usize) -> FinCat {
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in a..n {
                index.insert((a, b), morphisms.len());
                let name = if a == b {
                    format!("1_{a}")
                } else {
                    format!("{a}<{b}")
                };
                morphisms.push((name, a, b));
            }
        }
        let ids = (0..n).map(|a| index[&(a, a)]).collect();
        let ms = morphisms.clone();
        build_table(
            (0..n).map(|a| a.to_string()).collect(),
            morphisms,
            ids,
            move |g, f| index[&(ms[f].1, ms[g].2)],
        )
    }
}

/// Small categories with at most four objects: discrete, codiscrete, chains,
/// cyclic groups and a few products of these.
pub fn small_corpus() -> Vec<(String, FinCat)> {
    let names = |n: usize| (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect::<Vec<_>>();
    let z2 = FinCat::cyclic_group(2, "*", "g");
    let z3 = FinCat::cyclic_group(3, "*", "h");
    let mut out = vec![
        ("terminal".to_string(), FinCat::terminal()),
        ("discrete(2)".into(), FinCat::discrete(&["a", "b"])),
        ("discrete(3)".into(), FinCat::discrete(&["a", "b", "c"])),
        ("chain(2)".into(), FinCat::chain(2)),
        ("chain(3)".into(), FinCat::chain(3)),
        ("chain(4)".into(), FinCat::chain(4)),
        ("B(Z/2)".into(), z2.clone()),
        ("B(Z/3)".into(), z3.clone()),
    ];
    for n in 2..=4 {
        out.push((format!("codiscrete({n})"), FinCat::codiscrete(&names(n))));
    }
    let cod2 = FinCat::codiscrete(&names(2));
    out.push(("B(Z/2) x codiscrete(2)".into(), product(&[&z2, &cod2])));
    out.push(("chain(2) x codiscrete(2)".into(), product(&[&FinCat::chain(2), &cod2])));
    out.push(("B(Z/2) x discrete(2)".into(), product(&[&z2, &FinCat::discrete(&["a", "b"])])));
    out.push(("B(Z/3) x chain(2)".into(), product(&[&z3, &FinCat::chain(2)])));
    out
}

/// Build a table category from a composition rule on indices. Only used with
/// rules known to be lawful; the result is still validated.
pub fn build_table(
    objects: Vec<String>,
    morphisms: Vec<(String, usize, usize)>,
    identities: Vec<usize>,
    rule: impl Fn(usize, usize) -> usize,
) -> FinCat {
    let ms: Vec<Morphism> = morphisms
        .into_iter()
        .map(|(name, dom, cod)| Morphism { name, dom, cod })
        .collect();
    let mut outgoing = vec![Vec::new(); objects.len()];
    for (i, m) in ms.iter().enumerate() {
        outgoing[m.dom].push(i);
    }
    let mut composition = HashMap::new();
    for (f, m) in ms.iter().enumerate() {
        for &g in &outgoing[m.cod] {
            let gf = if identities[m.cod] == g {
                f
            } else if identities[m.dom] == f {
                g
            } else {
                rule(g, f)
            };
            composition.insert((g, f), gf);
        }
    }
    FinCat {
        repr: Repr::Table(Arc::new(TableCat::from_parts(
            objects,
            ms,
            identities,
            composition,
        ))),
    }
}

/// `is_isomorphism`: whether `f` has a two-sided inverse, and the inverse.
pub fn is_isomorphism(c: &FinCat, f: usize) -> Result<Option<usize>, FunctorError> {
    if f >= c.num_morphisms() {
        return Err(FunctorError::UnknownMorphism(f));
    }
    Ok(c.inverse(f))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FunctorViolation {
    #[error("object map has wrong length or out-of-range entry")]
    BadObjectMap,
    #[error("morphism `{0}` is not sent between the images of its endpoints")]
    BreaksTyping(String),
    #[error("F({g}∘{f}) ≠ F({g})∘F({f})")]
    BreaksComposition { f: String, g: String },
    #[error("F(1_{0}) is not an identity")]
    BreaksIdentity(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("not a functor: {}", join_violations(.0))]
    Invalid(Vec<FunctorViolation>),
    #[error("shapes do not match: {0}")]
    ShapeMismatch(String),
    #[error("unknown morphism index {0}")]
    UnknownMorphism(usize),
}

/// A functor between finite categories, given by its object and morphism
/// maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    pub source: FinCat,
    pub target: FinCat,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl FunctorData {
    /// Build and validate.
    pub fn new(
        source: FinCat,
        target: FinCat,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Self, FunctorError> {
        let f = FunctorData {
            source,
            target,
            objects,
            morphisms,
        };
        let v = f.violations();
        if v.is_empty() {
            Ok(f)
        } else {
            Err(FunctorError::Invalid(v))
        }
    }

    /// Build without validation. Callers that construct functors from
    /// known-good pieces use this and validate where it matters.
    pub fn new_unchecked(
        source: FinCat,
        target: FinCat,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Self {
        FunctorData {
            source,
            target,
            objects,
            morphisms,
        }
    }

    /// Build from closures on indices, without validation.
    pub fn from_fns(
        source: &FinCat,
        target: &FinCat,
        on_objects: impl Fn(usize) -> usize,
        on_morphisms: impl Fn(usize) -> usize,
    ) -> Self {
        FunctorData {
            objects: source.objects().map(on_objects).collect(),
            morphisms: source.morphisms().map(on_morphisms).collect(),
            source: source.clone(),
            target: target.clone(),
        }
    }

    /// All functoriality failures, in lexicographic order of morphism index.
    pub fn violations(&self) -> Vec<FunctorViolation> {
        let (s, t) = (&self.source, &self.target);
        if self.objects.len() != s.num_objects()
            || self.morphisms.len() != s.num_morphisms()
            || self.objects.iter().any(|&o| o >= t.num_objects())
            || self.morphisms.iter().any(|&m| m >= t.num_morphisms())
        {
            return vec![FunctorViolation::BadObjectMap];
        }
        let mut out = Vec::new();
        for f in s.morphisms() {
            let ff = self.morphisms[f];
            if t.dom(ff) != self.objects[s.dom(f)] || t.cod(ff) != self.objects[s.cod(f)] {
                out.push(FunctorViolation::BreaksTyping(s.morphism_name(f)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in s.objects() {
            if self.morphisms[s.identity(a)] != t.identity(self.objects[a]) {
                out.push(FunctorViolation::BreaksIdentity(s.object_name(a)));
            }
        }
        for f in s.morphisms() {
            for g in s.outgoing(s.cod(f)) {
                let gf = s.compose(g, f).expect("composable");
                if t.compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                    out.push(FunctorViolation::BreaksComposition {
                        f: s.morphism_name(f),
                        g: s.morphism_name(g),
                    });
                }
            }
        }
        out
    }

    pub fn identity(c: &FinCat) -> Self {
        FunctorData::from_fns(c, c, |a| a, |f| f)
    }

    /// The functor sending everything to the object `b` and its identity.
    pub fn constant(source: &FinCat, target: &FinCat, b: usize) -> Self {
        let idb = target.identity(b);
        FunctorData::from_fns(source, target, |_| b, |_| idb)
    }

    /// Projection of a product onto its `i`-th table factor.
    pub fn projection(c: &TupleCat, i: usize) -> Self {
        let factor = c.factors()[i].clone();
        FunctorData::from_fns(
            c,
            &factor,
            |a| c.split_object(a)[i],
            |f| c.split_morphism(f)[i],
        )
    }

    pub fn apply_object(&self, a: usize) -> usize {
        self.objects[a]
    }

    pub fn apply_morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FunctorData) -> Result<FunctorData, FunctorError> {
        compose_functors(self, next)
    }

    /// `F × G × ...` between flattened products.
    pub fn product(factors: &[&FunctorData]) -> FunctorData {
        let sources: Vec<&FinCat> = factors.iter().map(|f| &f.source).collect();
        let targets: Vec<&FinCat> = factors.iter().map(|f| &f.target).collect();
        let (src, tgt) = (product(&sources), product(&targets));
        let s_ar: Vec<usize> = factors.iter().map(|f| f.source.arity()).collect();
        let t_ar: Vec<usize> = factors.iter().map(|f| f.target.arity()).collect();
        let map = |parts: Vec<usize>, is_obj: bool| -> Vec<usize> {
            let mut out = Vec::new();
            let mut offset = 0;
            for (k, f) in factors.iter().enumerate() {
                let chunk = &parts[offset..offset + s_ar[k]];
                offset += s_ar[k];
                let local = if is_obj {
                    f.source.tuple_object(chunk)
                } else {
                    f.source.tuple_morphism(chunk)
                };
                let image = if is_obj {
                    f.objects[local]
                } else {
                    f.morphisms[local]
                };
                let split = if is_obj {
                    f.target.split_object(image)
                } else {
                    f.target.split_morphism(image)
                };
                debug_assert_eq!(split.len(), t_ar[k]);
                out.extend(split);
            }
            out
        };
        FunctorData::from_fns(
            &src,
            &tgt,
            |a| tgt.tuple_object(&map(src.split_object(a), true)),
            |f| tgt.tuple_morphism(&map(src.split_morphism(f), false)),
        )
    }

    /// Functor into a product assembled from one functor per target block.
    pub fn pairing(source: &FinCat, parts: &[&FunctorData]) -> Result<FunctorData, FunctorError> {
        if parts.iter().any(|p| &p.source != source) {
            return Err(FunctorError::ShapeMismatch("pairing sources differ".into()));
        }
        let targets: Vec<&FinCat> = parts.iter().map(|p| &p.target).collect();
        let tgt = product(&targets);
        Ok(FunctorData::from_fns(
            source,
            &tgt,
            |a| {
                let v: Vec<usize> = parts
                    .iter()
                    .flat_map(|p| p.target.split_object(p.objects[a]))
                    .collect();
                tgt.tuple_object(&v)
            },
            |f| {
                let v: Vec<usize> = parts
                    .iter()
                    .flat_map(|p| p.target.split_morphism(p.morphisms[f]))
                    .collect();
                tgt.tuple_morphism(&v)
            },
        ))
    }
}

/// `G∘F`: apply `f` first, then `g`.
pub fn compose_functors(f: &FunctorData, g: &FunctorData) -> Result<FunctorData, FunctorError> {
    if f.target != g.source {
        return Err(FunctorError::ShapeMismatch(
            "target of the first functor is not the source of the second".into(),
        ));
    }
    Ok(FunctorData {
        source: f.source.clone(),
        target: g.target.clone(),
        objects: f.objects.iter().map(|&o| g.objects[o]).collect(),
        morphisms: f.morphisms.iter().map(|&m| g.morphisms[m]).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NaturalityViolation {
    #[error("component at `{0}` has the wrong domain or codomain")]
    ComponentIllTyped(String),
    #[error("naturality square fails at `{0}`")]
    NaturalitySquareFails(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NaturalityError {
    #[error("not natural: {}", join_violations(.0))]
    Invalid(Vec<NaturalityViolation>),
    #[error("shapes do not match: {0}")]
    ShapeMismatch(String),
}

/// A natural transformation `source ⇒ target` between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransfData {
    pub source: FunctorData,
    pub target: FunctorData,
    pub components: Vec<usize>,
    is_iso: bool,
}

impl NatTransfData {
    /// Build and validate (`validate_natural`).
    pub fn new(
        source: FunctorData,
        target: FunctorData,
        components: Vec<usize>,
    ) -> Result<Self, NaturalityError> {
        let mut t = Self::new_unchecked(source, target, components)?;
        let v = t.violations();
        if !v.is_empty() {
            return Err(NaturalityError::Invalid(v));
        }
        t.is_iso = t
            .components
            .iter()
            .all(|&c| t.source.target.inverse(c).is_some());
        Ok(t)
    }

    /// Shape checks only; `is_iso` is left false.
    pub fn new_unchecked(
        source: FunctorData,
        target: FunctorData,
        components: Vec<usize>,
    ) -> Result<Self, NaturalityError> {
        if source.source != target.source || source.target != target.target {
            return Err(NaturalityError::ShapeMismatch("functors are not parallel".into()));
        }
        if components.len() != source.source.num_objects() {
            return Err(NaturalityError::ShapeMismatch("wrong number of components".into()));
        }
        Ok(NatTransfData {
            source,
            target,
            components,
            is_iso: false,
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_iso
    }

    pub fn identity(f: &FunctorData) -> Self {
        let comps = f.objects.iter().map(|&b| f.target.identity(b)).collect();
        NatTransfData {
            source: f.clone(),
            target: f.clone(),
            components: comps,
            is_iso: true,
        }
    }

    pub fn component(&self, a: usize) -> usize {
        self.components[a]
    }

    /// Every failing component and naturality square.
    pub fn violations(&self) -> Vec<NaturalityViolation> {
        let (c, d) = (&self.source.source, &self.source.target);
        let mut out = Vec::new();
        for a in c.objects() {
            let t = self.components[a];
            if t >= d.num_morphisms()
                || d.dom(t) != self.source.objects[a]
                || d.cod(t) != self.target.objects[a]
            {
                out.push(NaturalityViolation::ComponentIllTyped(c.object_name(a)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in c.morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            let left = d.compose(self.target.morphisms[f], self.components[a]);
            let right = d.compose(self.components[b], self.source.morphisms[f]);
            if left.is_none() || left != right {
                out.push(NaturalityViolation::NaturalitySquareFails(c.morphism_name(f)));
            }
        }
        out
    }

    /// Inverse transformation, when every component is invertible.
    pub fn inverse(&self) -> Option<NatTransfData> {
        let d = &self.source.target;
        let comps = self
            .components
            .iter()
            .map(|&c| d.inverse(c))
            .collect::<Option<Vec<_>>>()?;
        Some(NatTransfData {
            source: self.target.clone(),
            target: self.source.clone(),
            components: comps,
            is_iso: true,
        })
    }
}

/// `t·s` for `s: F ⇒ G`, `t: G ⇒ H`.
pub fn vertical_compose(
    s: &NatTransfData,
    t: &NatTransfData,
) -> Result<NatTransfData, NaturalityError> {
    if s.target != t.source {
        return Err(NaturalityError::ShapeMismatch(
            "vertical composition of non-adjacent transformations".into(),
        ));
    }
    let d = &s.source.target;
    let comps = s
        .components
        .iter()
        .zip(&t.components)
        .map(|(&x, &y)| d.compose(y, x).expect("typed components compose"))
        .collect();
    Ok(NatTransfData {
        source: s.source.clone(),
        target: t.target.clone(),
        components: comps,
        is_iso: s.is_iso && t.is_iso,
    })
}

/// `H t : H∘F ⇒ H∘G` for `t: F ⇒ G`.
pub fn whisker_left(h: &FunctorData, t: &NatTransfData) -> Result<NatTransfData, NaturalityError> {
    let shape = |e: FunctorError| NaturalityError::ShapeMismatch(e.to_string());
    let src = compose_functors(&t.source, h).map_err(shape)?;
    let tgt = compose_functors(&t.target, h).map_err(shape)?;
    let comps = t.components.iter().map(|&c| h.morphisms[c]).collect();
    Ok(NatTransfData {
        source: src,
        target: tgt,
        components: comps,
        is_iso: t.is_iso,
    })
}

/// `t K : F∘K ⇒ G∘K` for `t: F ⇒ G`.
pub fn whisker_right(t: &NatTransfData, k: &FunctorData) -> Result<NatTransfData, NaturalityError> {
    let shape = |e: FunctorError| NaturalityError::ShapeMismatch(e.to_string());
    let src = compose_functors(k, &t.source).map_err(shape)?;
    let tgt = compose_functors(k, &t.target).map_err(shape)?;
    let comps = k.objects.iter().map(|&o| t.components[o]).collect();
    Ok(NatTransfData {
        source: src,
        target: tgt,
        components: comps,
        is_iso: t.is_iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> FinCat {
        FinCat::chain(2)
    }

    fn raw_arrow() -> RawCategory {
        RawCategory {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![
                ("a".into(), "0".into(), "0".into()),
                ("b".into(), "1".into(), "1".into()),
                ("f".into(), "0".into(), "1".into()),
            ],
            identities: vec![("0".into(), "a".into()), ("1".into(), "b".into())],
            composition: vec![],
        }
    }

    /// Independent re-check of the category axioms over all triples.
    fn oracle_is_category(c: &FinCat) -> bool {
        for f in c.morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            if c.compose(c.identity(b), f) != Some(f) || c.compose(f, c.identity(a)) != Some(f) {
                return false;
            }
            for g in c.morphisms() {
                let gf = c.compose(g, f);
                if (c.dom(g) == b) != gf.is_some() {
                    return false;
                }
                let Some(gf) = gf else { continue };
                if c.dom(gf) != a || c.cod(gf) != c.cod(g) {
                    return false;
                }
                for h in c.morphisms() {
                    if c.dom(h) != c.cod(g) {
                        continue;
                    }
                    let hg = c.compose(h, g).unwrap();
                    if c.compose(h, gf) != c.compose(hg, f) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn terminal_and_arrow_are_valid() {
        let t = FinCat::terminal();
        assert_eq!((t.num_objects(), t.num_morphisms()), (1, 1));
        assert!(oracle_is_category(&t));
        let c = validate_category(&raw_arrow()).unwrap();
        assert_eq!(c.num_morphisms(), 3);
        assert!(oracle_is_category(&c));
        assert!(oracle_is_category(&FinCat::chain(4)));
        assert!(oracle_is_category(&FinCat::codiscrete(&["x".into(), "y".into(), "z".into()])));
        assert!(oracle_is_category(&FinCat::cyclic_group(3, "*", "g")));
    }

    #[test]
    fn empty_category_is_valid() {
        let c = validate_category(&RawCategory::default()).unwrap();
        assert_eq!(c.num_objects(), 0);
        assert_eq!(c.num_morphisms(), 0);
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut raw = raw_arrow();
        raw.objects.push("2".into());
        raw.morphisms.push(("c".into(), "2".into(), "2".into()));
        raw.morphisms.push(("g".into(), "1".into(), "2".into()));
        raw.identities.push(("2".into(), "c".into()));
        let err = validate_category(&raw).unwrap_err();
        let CategoryError::Invalid(v) = err;
        assert!(v.iter().any(|x| matches!(x,
            CategoryViolation::IllTypedComposite { g, f, .. } if g == "g" && f == "f")));
    }

    #[test]
    fn missing_identity_and_non_associative() {
        let mut raw = raw_arrow();
        raw.identities.pop();
        let CategoryError::Invalid(v) = validate_category(&raw).unwrap_err();
        assert_eq!(v, vec![CategoryViolation::MissingIdentity { object: "1".into() }]);

        // a monoid {1, x} with x∘x = 1 declared but an extra y breaking associativity
        let raw = RawCategory {
            objects: vec!["*".into()],
            morphisms: ["e", "x", "y"].iter().map(|m| (m.to_string(), "*".into(), "*".into())).collect(),
            identities: vec![("*".into(), "e".into())],
            composition: vec![
                ("x".into(), "x".into(), "y".into()),
                ("x".into(), "y".into(), "x".into()),
                ("y".into(), "x".into(), "e".into()),
                ("y".into(), "y".into(), "y".into()),
            ],
        };
        let CategoryError::Invalid(v) = validate_category(&raw).unwrap_err();
        assert!(v.iter().all(|x| matches!(x, CategoryViolation::NonAssociative { .. })));
        assert!(!v.is_empty());
    }

    #[test]
    fn functor_checks() {
        let c = arrow();
        assert!(FunctorData::identity(&c).violations().is_empty());
        let t = FinCat::terminal();
        assert!(FunctorData::constant(&c, &t, 0).violations().is_empty());

        // swap objects of the discrete category and send the arrow backwards
        let g = FinCat::codiscrete(&["x".into(), "y".into()]);
        // sends every morphism to x>y; breaks typing and composition
        let bad = FunctorData::from_fns(&g, &g, |a| a, |_| 1);
        let v = bad.violations();
        assert!(!v.is_empty());
        // object-bijective swap that keeps typing but not identities
        let swap_bad = FunctorData::from_fns(&g, &g, |a| 1 - a, |f| [3, 1, 2, 0][f]);
        let v = swap_bad.violations();
        assert!(v.iter().any(|x| matches!(x, FunctorViolation::BreaksTyping(_))));
        let swap = FunctorData::from_fns(&g, &g, |a| 1 - a, |f| [3, 2, 1, 0][f]);
        assert!(swap.violations().is_empty());
    }

    #[test]
    fn composite_functor_matches_pointwise() {
        let c = FinCat::chain(3);
        // collapse 1 and 2 onto 2
        let img = |x: usize| if x == 0 { 0 } else { 2 };
        let f = FunctorData::from_fns(&c, &c, img, |m| c.hom(img(c.dom(m)), img(c.cod(m)))[0]);
        assert!(f.violations().is_empty());
        let g = FunctorData::constant(&c, &FinCat::terminal(), 0);
        let gf = compose_functors(&f, &g).unwrap();
        assert!(gf.violations().is_empty());
        for m in c.morphisms() {
            assert_eq!(gf.morphisms[m], g.morphisms[f.morphisms[m]]);
        }
        let id = FunctorData::identity(&c);
        assert_eq!(compose_functors(&id, &f).unwrap(), f);
        assert_eq!(compose_functors(&f, &id).unwrap(), f);
        assert!(compose_functors(&g, &f).is_err());
    }

    #[test]
    fn products_flatten_and_count() {
        let a = FinCat::discrete(&["p", "q"]);
        let b = FinCat::discrete(&["r", "s"]);
        let ab = product(&[&a, &b]);
        assert_eq!((ab.num_objects(), ab.num_morphisms()), (4, 4));
        let c = arrow();
        let left = product(&[&product(&[&a, &b]), &c]);
        let flat = product(&[&a, &b, &c]);
        assert_eq!(left, flat);
        let right = product(&[&a, &product(&[&b, &c])]);
        assert_eq!(right, flat);
        let tc = product(&[&FinCat::terminal(), &c]);
        assert_eq!(tc, c);
        let t_table = FinCat::discrete(&["*"]);
        let tc2 = product(&[&t_table, &c]);
        assert_eq!((tc2.num_objects(), tc2.num_morphisms()), (2, 3));
        for i in 0..3 {
            assert!(FunctorData::projection(&flat, i).violations().is_empty());
        }
        assert!(oracle_is_category(&flat));
        assert_eq!(flat.materialize().num_morphisms(), flat.num_morphisms());
        assert!(oracle_is_category(&flat.materialize()));
    }

    #[test]
    fn isomorphisms() {
        let c = arrow();
        for a in c.objects() {
            assert_eq!(c.inverse(c.identity(a)), Some(c.identity(a)));
        }
        let f = c.morphism_by_name("0<1").unwrap();
        assert_eq!(is_isomorphism(&c, f).unwrap(), None);
        let g = FinCat::codiscrete(&["x".into(), "y".into()]);
        for f in g.morphisms() {
            let inv = g.inverse(f).unwrap();
            assert_eq!(g.compose(inv, f), Some(g.identity(g.dom(f))));
            assert_eq!(g.compose(f, inv), Some(g.identity(g.cod(f))));
        }
        assert!(is_isomorphism(&g, 99).is_err());
    }

    #[test]
    fn naturality() {
        let c = arrow();
        let id = FunctorData::identity(&c);
        let one = NatTransfData::identity(&id);
        let checked = NatTransfData::new(id.clone(), id.clone(), one.components.clone()).unwrap();
        assert!(checked.is_iso());

        // constant-at-0 ⇒ identity: components 0→a, natural
        let k0 = FunctorData::constant(&c, &c, 0);
        let to_id = NatTransfData::new(k0.clone(), id.clone(), vec![0, 1]).unwrap();
        assert!(!to_id.is_iso());
        // identity ⇒ constant-at-1 with a wrong component at 1 is ill-typed
        let k1 = FunctorData::constant(&c, &c, 1);
        let err = NatTransfData::new(id.clone(), k1.clone(), vec![1, 1]).unwrap_err();
        assert!(matches!(err, NaturalityError::Invalid(_)));
        // a non-natural family on the codiscrete pair viewed through a swap
        let g = FinCat::codiscrete(&["x".into(), "y".into()]);
        let gid = FunctorData::identity(&g);
        let swap = FunctorData::from_fns(&g, &g, |a| 1 - a, |f| [3, 2, 1, 0][f]);
        let ok = NatTransfData::new(gid.clone(), swap.clone(), vec![1, 2]).unwrap();
        assert!(ok.is_iso());
        let t = NatTransfData::new_unchecked(gid.clone(), gid.clone(), vec![0, 3]).unwrap();
        assert!(t.violations().is_empty());

        // whiskering keeps naturality
        let w = whisker_left(&k1, &to_id).unwrap();
        assert!(w.violations().is_empty());
        let w = whisker_right(&to_id, &k0).unwrap();
        assert!(w.violations().is_empty());
        let v = vertical_compose(&one, &one).unwrap();
        assert_eq!(v, one);
    }

    #[test]
    fn non_natural_family_has_witness() {
        // ℤ/2 as a one-object category; conjugation is trivial, so use the
        // functor that kills everything against the identity
        let z = FinCat::cyclic_group(2, "*", "g");
        let id = FunctorData::identity(&z);
        let triv = FunctorData::from_fns(&z, &z, |_| 0, |_| 0);
        let t = NatTransfData::new_unchecked(id, triv, vec![0]).unwrap();
        assert_eq!(
            t.violations(),
            vec![NaturalityViolation::NaturalitySquareFails("g1".into())]
        );
    }
}
