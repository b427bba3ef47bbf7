//! Ambient monoidal categories for homotopy monoids.

use crate::fincat::{compose_functors, product, FinCat, FunctorData};
use crate::monoidal::{EquivalenceClass, MonoidalCategory, MonoidalStructure};

/// A monoidal category together with its distinguished equivalences.
pub trait EquivalenceAmbient: MonoidalCategory {
    fn is_equivalence(&self, f: &Self::Mor) -> bool;
}

/// Cartesian powers `S^0, ..., S^max` of a set with `k` elements and all
/// functions between them. Tensor is concatenation of tuples, which is
/// strictly associative and unital; equivalences are the bijections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetPowers {
    pub k: usize,
    pub max: usize,
}

/// A function `S^dom → S^cod` as a table on tuple codes. Tuples are encoded
/// in mixed radix with the last coordinate fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerMap {
    pub dom: usize,
    pub cod: usize,
    pub table: Vec<usize>,
}

impl SetPowers {
    pub fn size(&self, n: usize) -> usize {
        self.k.pow(n as u32)
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.k + x)
    }

    pub fn decode(&self, mut code: usize, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = code % self.k;
            code /= self.k;
        }
        out
    }

    /// The map `S^dom → S^cod` given by a rule on tuples.
    pub fn map(&self, dom: usize, cod: usize, rule: impl Fn(&[usize]) -> Vec<usize>) -> PowerMap {
        let table = (0..self.size(dom))
            .map(|x| self.encode(&rule(&self.decode(x, dom))))
            .collect();
        PowerMap { dom, cod, table }
    }
}

impl MonoidalCategory for SetPowers {
    type Obj = usize;
    type Mor = PowerMap;

    fn dom(&self, f: &PowerMap) -> usize {
        f.dom
    }
    fn cod(&self, f: &PowerMap) -> usize {
        f.cod
    }
    fn identity(&self, a: &usize) -> PowerMap {
        PowerMap {
            dom: *a,
            cod: *a,
            table: (0..self.size(*a)).collect(),
        }
    }
    fn compose(&self, g: &PowerMap, f: &PowerMap) -> Option<PowerMap> {
        (f.cod == g.dom).then(|| PowerMap {
            dom: f.dom,
            cod: g.cod,
            table: f.table.iter().map(|&x| g.table[x]).collect(),
        })
    }
    fn inverse(&self, f: &PowerMap) -> Option<PowerMap> {
        if self.size(f.dom) != self.size(f.cod) {
            return None;
        }
        let mut inv = vec![usize::MAX; self.size(f.cod)];
        for (x, &y) in f.table.iter().enumerate() {
            if inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(PowerMap {
            dom: f.cod,
            cod: f.dom,
            table: inv,
        })
    }
    fn unit(&self) -> usize {
        0
    }
    fn tensor_objects(&self, a: &usize, b: &usize) -> Option<usize> {
        (a + b <= self.max).then_some(a + b)
    }
    fn tensor_morphisms(&self, f: &PowerMap, g: &PowerMap) -> Option<PowerMap> {
        if f.dom + g.dom > self.max || f.cod + g.cod > self.max {
            return None;
        }
        let (sd, sc) = (self.size(g.dom), self.size(g.cod));
        let mut table = Vec::with_capacity(self.size(f.dom) * sd);
        for &fx in &f.table {
            for &gy in &g.table {
                table.push(fx * sc + gy);
            }
        }
        Some(PowerMap {
            dom: f.dom + g.dom,
            cod: f.cod + g.cod,
            table,
        })
    }
    fn associator(&self, a: &usize, b: &usize, c: &usize) -> Option<PowerMap> {
        self.tensor_objects(&(a + b), c).map(|n| self.identity(&n))
    }
    fn left_unitor(&self, a: &usize) -> PowerMap {
        self.identity(a)
    }
    fn right_unitor(&self, a: &usize) -> PowerMap {
        self.identity(a)
    }
    fn describe_object(&self, a: &usize) -> String {
        format!("S^{a}")
    }
    fn describe_morphism(&self, f: &PowerMap) -> String {
        format!("S^{}→S^{} {:?}", f.dom, f.cod, f.table)
    }
}

impl EquivalenceAmbient for SetPowers {
    fn is_equivalence(&self, f: &PowerMap) -> bool {
        self.inverse(f).is_some()
    }
}

/// A finite monoidal structure with a declared class of equivalences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAmbient {
    pub structure: MonoidalStructure,
    pub class: EquivalenceClass,
}

impl ClassAmbient {
    /// The smallest class: isomorphisms only.
    pub fn with_isomorphisms(structure: MonoidalStructure) -> Self {
        let class = EquivalenceClass::isomorphisms(&structure);
        ClassAmbient { structure, class }
    }
}

impl MonoidalCategory for ClassAmbient {
    type Obj = usize;
    type Mor = usize;

    fn dom(&self, f: &usize) -> usize {
        self.structure.dom(f)
    }
    fn cod(&self, f: &usize) -> usize {
        self.structure.cod(f)
    }
    fn identity(&self, a: &usize) -> usize {
        MonoidalCategory::identity(&self.structure, a)
    }
    fn compose(&self, g: &usize, f: &usize) -> Option<usize> {
        MonoidalCategory::compose(&self.structure, g, f)
    }
    fn inverse(&self, f: &usize) -> Option<usize> {
        MonoidalCategory::inverse(&self.structure, f)
    }
    fn unit(&self) -> usize {
        self.structure.unit_object()
    }
    fn tensor_objects(&self, a: &usize, b: &usize) -> Option<usize> {
        Some(self.structure.tensor_obj(*a, *b))
    }
    fn tensor_morphisms(&self, f: &usize, g: &usize) -> Option<usize> {
        Some(self.structure.tensor_mor(*f, *g))
    }
    fn associator(&self, a: &usize, b: &usize, c: &usize) -> Option<usize> {
        Some(self.structure.alpha(*a, *b, *c))
    }
    fn left_unitor(&self, a: &usize) -> usize {
        self.structure.lambda(*a)
    }
    fn right_unitor(&self, a: &usize) -> usize {
        self.structure.rho(*a)
    }
    fn describe_object(&self, a: &usize) -> String {
        self.structure.describe_object(a)
    }
    fn describe_morphism(&self, f: &usize) -> String {
        self.structure.describe_morphism(f)
    }
}

impl EquivalenceAmbient for ClassAmbient {
    fn is_equivalence(&self, f: &usize) -> bool {
        self.class.contains(*f)
    }
}

/// Finite categories and functors, with the cartesian product as tensor.
/// Products are flattened, so the structure is strict: `(A×B)×C` and
/// `A×(B×C)` are the same category and the terminal category is a strict
/// unit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CatAmbient;

/// The inverse of a functor that is bijective on objects and morphisms.
pub fn functor_inverse(f: &FunctorData) -> Option<FunctorData> {
    let invert = |map: &[usize], n: usize| -> Option<Vec<usize>> {
        if map.len() != n {
            return None;
        }
        let mut inv = vec![usize::MAX; n];
        for (x, &y) in map.iter().enumerate() {
            if y >= n || inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(inv)
    };
    let objects = invert(&f.objects, f.target.num_objects())?;
    let morphisms = invert(&f.morphisms, f.target.num_morphisms())?;
    Some(FunctorData::new_unchecked(
        f.target.clone(),
        f.source.clone(),
        objects,
        morphisms,
    ))
}

impl MonoidalCategory for CatAmbient {
    type Obj = FinCat;
    type Mor = FunctorData;

    fn dom(&self, f: &FunctorData) -> FinCat {
        f.source.clone()
    }
    fn cod(&self, f: &FunctorData) -> FinCat {
        f.target.clone()
    }
    fn identity(&self, a: &FinCat) -> FunctorData {
        FunctorData::identity(a)
    }
    fn compose(&self, g: &FunctorData, f: &FunctorData) -> Option<FunctorData> {
        compose_functors(f, g).ok()
    }
    fn inverse(&self, f: &FunctorData) -> Option<FunctorData> {
        functor_inverse(f)
    }
    fn unit(&self) -> FinCat {
        FinCat::terminal()
    }
    fn tensor_objects(&self, a: &FinCat, b: &FinCat) -> Option<FinCat> {
        Some(product(&[a, b]))
    }
    fn tensor_morphisms(&self, f: &FunctorData, g: &FunctorData) -> Option<FunctorData> {
        Some(FunctorData::product(&[f, g]))
    }
    fn associator(&self, a: &FinCat, b: &FinCat, c: &FinCat) -> Option<FunctorData> {
        Some(FunctorData::identity(&product(&[a, b, c])))
    }
    fn left_unitor(&self, a: &FinCat) -> FunctorData {
        FunctorData::identity(a)
    }
    fn right_unitor(&self, a: &FinCat) -> FunctorData {
        FunctorData::identity(a)
    }
    fn describe_object(&self, a: &FinCat) -> String {
        format!("category({} objects, {} morphisms)", a.num_objects(), a.num_morphisms())
    }
    fn describe_morphism(&self, f: &FunctorData) -> String {
        format!(
            "functor {} → {}",
            self.describe_object(&f.source),
            self.describe_object(&f.target)
        )
    }
}
