//! Input and output documents. Every document is a JSON object with a
//! format `version` and a `kind` tag; the remaining fields depend on the
//! kind. Categories are given either by tables or as a `product` of
//! categories, and functors by object and morphism maps whose entries are
//! indices or names.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use hocat::fincat::{product, CategoryViolation, FinCat, FunctorData, FunctorViolation, RawCategory};
use hocat::homotopy_monoid::{CatHomotopyMonoid, MHomotopyMonoid, Monoid, PowerMap, SetPowers};
use hocat::loopspace::{Cell, PointedDeltaComplex, RawComplex};
use hocat::monoidal::{ColaxData, ColaxError, EquivalenceClass, MonoidalStructure};
use hocat::simplex::{DeltaTruncation, SimplexMorphism};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DOC_VERSION: u32 = 1;

pub const KINDS: [&str; 8] = [
    "category",
    "functor",
    "monoidal",
    "colax",
    "homotopy-monoid",
    "cat-homotopy-monoid",
    "complex",
    "monoid",
];

/// A malformed document. `line` and `column` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct InputError {
    pub file: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.file)?;
        if let Some(l) = self.line {
            write!(f, ":{l}")?;
            if let Some(c) = self.column {
                write!(f, ":{c}")?;
            }
        }
        if !self.field.is_empty() {
            write!(f, ": field `{}`", self.field)?;
        }
        write!(f, ": {}", self.message)
    }
}

/// A semantic problem found after parsing, located by field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl FieldError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        FieldError {
            field: field.into(),
            message: message.into(),
        }
    }
}

type Sem<T> = Result<T, FieldError>;

/// An object or morphism reference: an index or a name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref {
    Index(usize),
    Name(String),
}

fn resolve_object(c: &FinCat, r: &Ref, field: &str) -> Sem<usize> {
    match r {
        Ref::Index(i) if *i < c.num_objects() => Ok(*i),
        Ref::Index(i) => Err(FieldError::new(field, format!("object index {i} out of range"))),
        Ref::Name(n) => c
            .object_by_name(n)
            .ok_or_else(|| FieldError::new(field, format!("unknown object `{n}`"))),
    }
}

fn resolve_morphism(c: &FinCat, r: &Ref, field: &str) -> Sem<usize> {
    match r {
        Ref::Index(i) if *i < c.num_morphisms() => Ok(*i),
        Ref::Index(i) => Err(FieldError::new(field, format!("morphism index {i} out of range"))),
        Ref::Name(n) => c
            .morphism_by_name(n)
            .ok_or_else(|| FieldError::new(field, format!("unknown morphism `{n}`"))),
    }
}

fn resolve_all(
    c: &FinCat,
    refs: &[Ref],
    expected: usize,
    field: &str,
    resolve: fn(&FinCat, &Ref, &str) -> Sem<usize>,
) -> Sem<Vec<usize>> {
    if refs.len() != expected {
        return Err(FieldError::new(
            field,
            format!("expected {expected} entries, found {}", refs.len()),
        ));
    }
    refs.iter()
        .enumerate()
        .map(|(i, r)| resolve(c, r, &format!("{field}[{i}]")))
        .collect()
}

fn indices(v: &[usize]) -> Vec<Ref> {
    v.iter().map(|&i| Ref::Index(i)).collect()
}

// ---------------------------------------------------------------- categories

/// A category: tables, or a product of categories.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    /// `[id, dom, cod]`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<(String, String, String)>,
    /// `[object, identity]`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<(String, String)>,
    /// `[g, f, g∘f]`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub composition: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<CategorySpec>>,
}

impl CategorySpec {
    pub fn from_category(c: &FinCat) -> Self {
        if c.is_product() {
            return CategorySpec {
                product: Some(c.factors().iter().map(CategorySpec::from_category).collect()),
                ..Default::default()
            };
        }
        let raw = c.to_raw();
        CategorySpec {
            objects: raw.objects,
            morphisms: raw.morphisms,
            identities: raw.identities,
            composition: raw.composition,
            product: None,
        }
    }

    pub fn build(&self, field: &str) -> Sem<FinCat> {
        let at = |sub: &str| {
            if field.is_empty() {
                sub.to_string()
            } else {
                format!("{field}.{sub}")
            }
        };
        if let Some(factors) = &self.product {
            if !(self.objects.is_empty() && self.morphisms.is_empty()) {
                return Err(FieldError::new(at("product"), "give either tables or a product, not both"));
            }
            let built = factors
                .iter()
                .enumerate()
                .map(|(i, f)| f.build(&format!("{}[{i}]", at("product"))))
                .collect::<Sem<Vec<_>>>()?;
            return Ok(product(&built.iter().collect::<Vec<_>>()));
        }
        let raw = RawCategory {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identities.clone(),
            composition: self.composition.clone(),
        };
        FinCat::from_raw(&raw).map_err(|e| {
            let hocat::fincat::CategoryError::Invalid(v) = &e;
            let in_morphisms = |id: &str| {
                self.morphisms.iter().any(|(_, d, c)| d == id || c == id)
                    || self.morphisms.iter().filter(|(m, _, _)| m == id).count() > 1
            };
            let in_identities = |id: &str| self.identities.iter().any(|(o, m)| o == id || m == id);
            let key = match v.first() {
                Some(CategoryViolation::UnknownObject(id)) | Some(CategoryViolation::DuplicateId(id)) => {
                    if self.objects.iter().filter(|o| *o == id).count() > 1 {
                        "objects"
                    } else if in_morphisms(id) {
                        "morphisms"
                    } else {
                        "identities"
                    }
                }
                Some(CategoryViolation::UnknownMorphism(id)) if in_identities(id) => "identities",
                Some(CategoryViolation::MissingIdentity { .. })
                | Some(CategoryViolation::BadIdentity { .. }) => "identities",
                _ => "composition",
            };
            FieldError::new(at(key), e.to_string())
        })
    }
}

/// Object and morphism maps of a functor between known categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub objects: Vec<Ref>,
    pub morphisms: Vec<Ref>,
}

impl MapSpec {
    pub fn from_functor(f: &FunctorData) -> Self {
        MapSpec {
            objects: indices(&f.objects),
            morphisms: indices(&f.morphisms),
        }
    }

    /// Resolve against source and target. Functoriality is not checked.
    pub fn build(&self, source: &FinCat, target: &FinCat, field: &str) -> Sem<FunctorData> {
        build_functor(&self.objects, &self.morphisms, source, target, field)
    }
}

fn build_functor(
    objects: &[Ref],
    morphisms: &[Ref],
    source: &FinCat,
    target: &FinCat,
    field: &str,
) -> Sem<FunctorData> {
    let at = |sub: &str| if field.is_empty() { sub.to_string() } else { format!("{field}.{sub}") };
    let o = resolve_all(target, objects, source.num_objects(), &at("objects"), resolve_object)?;
    let m = resolve_all(target, morphisms, source.num_morphisms(), &at("morphisms"), resolve_morphism)?;
    Ok(FunctorData::new_unchecked(source.clone(), target.clone(), o, m))
}

/// Typing failures make a functor document malformed; composition and
/// identity failures are reported as checks.
fn check_typing(f: &FunctorData, field: &str) -> Sem<()> {
    match f.violations().first() {
        Some(v @ (FunctorViolation::BreaksTyping(_) | FunctorViolation::BadObjectMap)) => {
            Err(FieldError::new(format!("{field}morphisms"), v.to_string()))
        }
        _ => Ok(()),
    }
}

// ---------------------------------------------------------------- monoidal

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalSpec {
    pub category: CategorySpec,
    /// A functor `C × C → C`.
    pub tensor: MapSpec,
    pub unit: Ref,
    /// Components at `(a, b, c)` in row-major order.
    pub associator: Vec<Ref>,
    pub left_unitor: Vec<Ref>,
    pub right_unitor: Vec<Ref>,
}

impl MonoidalSpec {
    pub fn from_structure(m: &MonoidalStructure) -> Self {
        let c = m.base();
        let n = c.num_objects();
        let mut assoc = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    assoc.push(m.alpha(a, b, d));
                }
            }
        }
        MonoidalSpec {
            category: CategorySpec::from_category(c),
            tensor: MapSpec::from_functor(m.tensor()),
            unit: Ref::Index(m.unit_object()),
            associator: indices(&assoc),
            left_unitor: indices(&c.objects().map(|a| m.lambda(a)).collect::<Vec<_>>()),
            right_unitor: indices(&c.objects().map(|a| m.rho(a)).collect::<Vec<_>>()),
        }
    }

    pub fn build(&self, field: &str) -> Sem<MonoidalStructure> {
        let at = |sub: &str| if field.is_empty() { sub.to_string() } else { format!("{field}.{sub}") };
        let c = self.category.build(&at("category"))?;
        let pair = product(&[&c, &c]);
        let tensor = self.tensor.build(&pair, &c, &at("tensor"))?;
        if !tensor.violations().is_empty() {
            let v = tensor.violations()[0].to_string();
            return Err(FieldError::new(at("tensor"), format!("not a functor: {v}")));
        }
        let unit = resolve_object(&c, &self.unit, &at("unit"))?;
        let n = c.num_objects();
        let assoc = resolve_all(&c, &self.associator, n * n * n, &at("associator"), resolve_morphism)?;
        let left = resolve_all(&c, &self.left_unitor, n, &at("left_unitor"), resolve_morphism)?;
        let right = resolve_all(&c, &self.right_unitor, n, &at("right_unitor"), resolve_morphism)?;
        MonoidalStructure::new(tensor, unit, assoc, left, right).map_err(|e| {
            let s = e.to_string();
            let key = if s.contains("left unitor") {
                "left_unitor"
            } else if s.contains("right unitor") {
                "right_unitor"
            } else if s.contains("associator") {
                "associator"
            } else {
                "tensor"
            };
            FieldError::new(at(key), s)
        })
    }
}

// ---------------------------------------------------------------- documents

#[derive(Deserialize)]
struct Envelope {
    version: Option<u32>,
    kind: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub version: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub composition: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<CategorySpec>>,
}

impl CategoryDoc {
    pub fn spec(&self) -> CategorySpec {
        CategorySpec {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identities.clone(),
            composition: self.composition.clone(),
            product: self.product.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub version: u32,
    pub kind: String,
    pub source: CategorySpec,
    pub target: CategorySpec,
    pub objects: Vec<Ref>,
    pub morphisms: Vec<Ref>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalDoc {
    pub version: u32,
    pub kind: String,
    pub structure: MonoidalSpec,
    /// Optional class of equivalences to validate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivalences: Option<Vec<Ref>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColaxDoc {
    pub version: u32,
    pub kind: String,
    pub source: MonoidalSpec,
    pub target: MonoidalSpec,
    pub functor: MapSpec,
    /// `ξ_{a,b}: X(a⊗b) → X(a)⊗X(b)` in row-major order of `(a, b)`.
    pub xi: Vec<Ref>,
    pub xi_unit: Ref,
}

/// A simplex morphism `dom → cod` by its values on `1..=dom`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexSpec {
    pub dom: usize,
    pub cod: usize,
    pub values: Vec<usize>,
}

impl SimplexSpec {
    fn from_morphism(f: &SimplexMorphism) -> Self {
        SimplexSpec {
            dom: f.dom(),
            cod: f.cod(),
            values: f.values().to_vec(),
        }
    }

    fn build(&self, field: &str) -> Sem<SimplexMorphism> {
        SimplexMorphism::new(self.dom, self.cod, self.values.clone())
            .map_err(|e| FieldError::new(field, e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetMapSpec {
    pub map: SimplexSpec,
    /// Image of each tuple code of `S^dom`, as a code of `S^cod`.
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetXiSpec {
    pub m: usize,
    pub n: usize,
    pub table: Vec<usize>,
}

/// A homotopy monoid in finite sets with `X(n) = S^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyMonoidDoc {
    pub version: u32,
    pub kind: String,
    pub set_size: usize,
    pub truncation: usize,
    pub maps: Vec<SetMapSpec>,
    pub xi: Vec<SetXiSpec>,
    pub xi_unit: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatMapSpec {
    pub map: SimplexSpec,
    pub objects: Vec<Ref>,
    pub morphisms: Vec<Ref>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatXiSpec {
    pub m: usize,
    pub n: usize,
    pub objects: Vec<Ref>,
    pub morphisms: Vec<Ref>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatHomotopyMonoidDoc {
    pub version: u32,
    pub kind: String,
    pub truncation: usize,
    pub levels: Vec<CategorySpec>,
    pub maps: Vec<CatMapSpec>,
    pub xi: Vec<CatXiSpec>,
    pub xi_unit: MapSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub version: u32,
    pub kind: String,
    #[serde(default)]
    pub labels: usize,
    pub basepoint: usize,
    pub cells: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub version: u32,
    pub kind: String,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

/// A parsed and resolved document.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Document {
    Category(FinCat),
    Functor(FunctorData),
    Monoidal {
        structure: MonoidalStructure,
        equivalences: Option<EquivalenceClass>,
    },
    Colax(ColaxData),
    HomotopyMonoid(MHomotopyMonoid<SetPowers>),
    CatHomotopyMonoid(CatHomotopyMonoid),
    Complex(PointedDeltaComplex),
    /// Shape-checked only; the monoid laws are left to `validate`.
    Monoid(Monoid),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Functor(_) => "functor",
            Document::Monoidal { .. } => "monoidal",
            Document::Colax(_) => "colax",
            Document::HomotopyMonoid(_) => "homotopy-monoid",
            Document::CatHomotopyMonoid(_) => "cat-homotopy-monoid",
            Document::Complex(_) => "complex",
            Document::Monoid(_) => "monoid",
        }
    }
}

/// Read and resolve a document file.
pub fn load(path: &Path) -> Result<Document, InputError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError {
        file: file.clone(),
        line: None,
        column: None,
        field: String::new(),
        message: format!("cannot read file: {e}"),
    })?;
    parse(&text, &file)
}

/// Parse and resolve a document from text; `file` names it in errors.
pub fn parse(text: &str, file: &str) -> Result<Document, InputError> {
    let envelope: Envelope = serde_json::from_str(text).map_err(|e| InputError {
        file: file.into(),
        line: Some(e.line()),
        column: Some(e.column()),
        field: String::new(),
        message: without_position(&e),
    })?;
    let located = |f: FieldError| {
        let (line, column) = locate(text, &f.field);
        InputError {
            file: file.into(),
            line,
            column,
            field: f.field,
            message: f.message,
        }
    };
    match envelope.version {
        Some(DOC_VERSION) => {}
        Some(v) => {
            return Err(located(FieldError::new(
                "version",
                format!("unsupported format version {v} (expected {DOC_VERSION})"),
            )))
        }
        None => return Err(located(FieldError::new("version", "missing format version"))),
    }
    let kind = envelope
        .kind
        .ok_or_else(|| located(FieldError::new("kind", "missing document kind")))?;
    let doc = match kind.as_str() {
        "category" => {
            let d: CategoryDoc = deserialize(text, file)?;
            d.spec().build("").map(Document::Category)
        }
        "functor" => resolve_functor(&deserialize(text, file)?),
        "monoidal" => resolve_monoidal(&deserialize(text, file)?),
        "colax" => resolve_colax(&deserialize(text, file)?),
        "homotopy-monoid" => resolve_homotopy_monoid(&deserialize(text, file)?),
        "cat-homotopy-monoid" => resolve_cat_homotopy_monoid(&deserialize(text, file)?),
        "complex" => resolve_complex(deserialize(text, file)?),
        "monoid" => resolve_monoid(deserialize(text, file)?),
        other => Err(FieldError::new(
            "kind",
            format!("unknown document kind `{other}` (expected one of {})", KINDS.join(", ")),
        )),
    };
    doc.map_err(located)
}

fn deserialize<T: DeserializeOwned>(text: &str, file: &str) -> Result<T, InputError> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        InputError {
            file: file.into(),
            line: Some(inner.line()),
            column: Some(inner.column()),
            field: if field == "." { String::new() } else { field },
            message: without_position(&inner),
        }
    })
}

/// serde_json appends "at line L column C"; the position is reported
/// separately.
fn without_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

/// Best-effort position of a field path such as `levels[1].composition`:
/// each named segment is searched for after the previous one.
fn locate(text: &str, field: &str) -> (Option<usize>, Option<usize>) {
    let mut pos = 0;
    let mut found = false;
    for seg in field.split('.') {
        let name = seg.split('[').next().unwrap_or("");
        if name.is_empty() {
            continue;
        }
        match text[pos..].find(&format!("\"{name}\"")) {
            Some(i) => {
                pos += i;
                found = true;
            }
            None => break,
        }
    }
    if !found {
        return (None, None);
    }
    let before = &text[..pos];
    let line = before.matches('\n').count() + 1;
    let column = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
    (Some(line), Some(column))
}

fn resolve_functor(d: &FunctorDoc) -> Sem<Document> {
    let s = d.source.build("source")?;
    let t = d.target.build("target")?;
    let f = build_functor(&d.objects, &d.morphisms, &s, &t, "")?;
    check_typing(&f, "")?;
    Ok(Document::Functor(f))
}

fn resolve_monoidal(d: &MonoidalDoc) -> Sem<Document> {
    let m = d.structure.build("structure")?;
    let equivalences = match &d.equivalences {
        None => None,
        Some(refs) => Some(EquivalenceClass::new(
            refs.iter()
                .enumerate()
                .map(|(i, r)| resolve_morphism(m.base(), r, &format!("equivalences[{i}]")))
                .collect::<Sem<Vec<_>>>()?,
        )),
    };
    Ok(Document::Monoidal {
        structure: m,
        equivalences,
    })
}

fn resolve_colax(d: &ColaxDoc) -> Sem<Document> {
    let source = d.source.build("source")?;
    let target = d.target.build("target")?;
    let functor = d.functor.build(source.base(), target.base(), "functor")?;
    check_typing(&functor, "functor.")?;
    let n = source.base().num_objects();
    let xi = resolve_all(target.base(), &d.xi, n * n, "xi", resolve_morphism)?;
    let xi_unit = resolve_morphism(target.base(), &d.xi_unit, "xi_unit")?;
    let c = ColaxData {
        source,
        target,
        functor,
        xi,
        xi_unit,
    };
    if let Err(e) = c.validate() {
        let field = if matches!(e, ColaxError::IllTypedUnitComponent) { "xi_unit" } else { "xi" };
        return Err(FieldError::new(field, e.to_string()));
    }
    Ok(Document::Colax(c))
}

fn set_table(amb: &SetPowers, dom: usize, cod: usize, table: &[usize], field: &str) -> Sem<PowerMap> {
    if table.len() != amb.size(dom) {
        return Err(FieldError::new(
            field,
            format!("expected {} entries, found {}", amb.size(dom), table.len()),
        ));
    }
    if let Some(x) = table.iter().find(|&&x| x >= amb.size(cod)) {
        return Err(FieldError::new(field, format!("entry {x} out of range")));
    }
    Ok(PowerMap {
        dom,
        cod,
        table: table.to_vec(),
    })
}

fn check_truncation(n: usize) -> Sem<DeltaTruncation> {
    if n > hocat::homotopy_monoid::cat::MAX_FIXTURE_TRUNCATION {
        return Err(FieldError::new(
            "truncation",
            format!(
                "truncation {n} exceeds the supported maximum {}",
                hocat::homotopy_monoid::cat::MAX_FIXTURE_TRUNCATION
            ),
        ));
    }
    Ok(DeltaTruncation::new(n))
}

fn resolve_homotopy_monoid(d: &HomotopyMonoidDoc) -> Sem<Document> {
    let delta = check_truncation(d.truncation)?;
    if d.set_size == 0 {
        return Err(FieldError::new("set_size", "the set must be non-empty"));
    }
    let amb = SetPowers {
        k: d.set_size,
        max: d.truncation.max(3),
    };
    let mut maps = BTreeMap::new();
    for (i, m) in d.maps.iter().enumerate() {
        let field = format!("maps[{i}]");
        let f = m.map.build(&format!("{field}.map"))?;
        if f.cod() > d.truncation {
            return Err(FieldError::new(format!("{field}.map"), "outside the truncation"));
        }
        let t = set_table(&amb, f.dom(), f.cod(), &m.table, &format!("{field}.table"))?;
        if maps.insert(f, t).is_some() {
            return Err(FieldError::new(field, "simplex map listed twice"));
        }
    }
    let mut xi = BTreeMap::new();
    for (i, x) in d.xi.iter().enumerate() {
        let field = format!("xi[{i}]");
        if x.m + x.n > d.truncation {
            return Err(FieldError::new(field, "outside the truncation"));
        }
        let t = set_table(&amb, x.m + x.n, x.m + x.n, &x.table, &format!("{field}.table"))?;
        if xi.insert((x.m, x.n), t).is_some() {
            return Err(FieldError::new(field, "component listed twice"));
        }
    }
    let xi_unit = set_table(&amb, 0, 0, &d.xi_unit, "xi_unit")?;
    let h = MHomotopyMonoid {
        ambient: amb,
        delta,
        levels: (0..=d.truncation).collect(),
        maps,
        xi,
        xi_unit,
    };
    h.check_complete()
        .map_err(|e| FieldError::new("maps", e.to_string()))?;
    Ok(Document::HomotopyMonoid(h))
}

fn resolve_cat_homotopy_monoid(d: &CatHomotopyMonoidDoc) -> Sem<Document> {
    let delta = check_truncation(d.truncation)?;
    let levels = d
        .levels
        .iter()
        .enumerate()
        .map(|(i, l)| l.build(&format!("levels[{i}]")))
        .collect::<Sem<Vec<_>>>()?;
    if levels.len() != d.truncation + 1 {
        return Err(FieldError::new(
            "levels",
            format!("expected {} levels, found {}", d.truncation + 1, levels.len()),
        ));
    }
    let mut maps = BTreeMap::new();
    for (i, m) in d.maps.iter().enumerate() {
        let field = format!("maps[{i}]");
        let f = m.map.build(&format!("{field}.map"))?;
        if f.cod() > d.truncation {
            return Err(FieldError::new(format!("{field}.map"), "outside the truncation"));
        }
        let func = build_functor(&m.objects, &m.morphisms, &levels[f.dom()], &levels[f.cod()], &field)?;
        if maps.insert(f, func).is_some() {
            return Err(FieldError::new(field, "simplex map listed twice"));
        }
    }
    let mut xi = BTreeMap::new();
    for (i, x) in d.xi.iter().enumerate() {
        let field = format!("xi[{i}]");
        if x.m + x.n > d.truncation {
            return Err(FieldError::new(field, "outside the truncation"));
        }
        let target = product(&[&levels[x.m], &levels[x.n]]);
        let func = build_functor(&x.objects, &x.morphisms, &levels[x.m + x.n], &target, &field)?;
        if xi.insert((x.m, x.n), func).is_some() {
            return Err(FieldError::new(field, "component listed twice"));
        }
    }
    let xi_unit = d.xi_unit.build(&levels[0], &FinCat::terminal(), "xi_unit")?;
    let c = CatHomotopyMonoid {
        delta,
        levels,
        maps,
        xi,
        xi_unit,
        witnesses: BTreeMap::new(),
    };
    c.check_complete()
        .map_err(|e| FieldError::new("maps", e.to_string()))?;
    Ok(Document::CatHomotopyMonoid(c))
}

fn resolve_complex(d: ComplexDoc) -> Sem<Document> {
    let raw = RawComplex {
        labels: d.labels,
        basepoint: d.basepoint,
        cells: d.cells,
    };
    PointedDeltaComplex::try_from(raw)
        .map(Document::Complex)
        .map_err(|e| FieldError::new("cells", e.to_string()))
}

fn resolve_monoid(d: MonoidDoc) -> Sem<Document> {
    let n = d.table.len();
    if n == 0 {
        return Err(FieldError::new("table", "a monoid has at least one element"));
    }
    for (i, row) in d.table.iter().enumerate() {
        if row.len() != n {
            return Err(FieldError::new(format!("table[{i}]"), format!("expected {n} entries")));
        }
        if row.iter().any(|&x| x >= n) {
            return Err(FieldError::new(format!("table[{i}]"), "entry out of range"));
        }
    }
    if d.unit >= n {
        return Err(FieldError::new("unit", "unit out of range"));
    }
    Ok(Document::Monoid(Monoid {
        table: d.table,
        unit: d.unit,
    }))
}

// ---------------------------------------------------------------- output

fn envelope(kind: &str) -> (u32, String) {
    (DOC_VERSION, kind.to_string())
}

pub fn monoidal_doc(m: &MonoidalStructure) -> MonoidalDoc {
    let (version, kind) = envelope("monoidal");
    MonoidalDoc {
        version,
        kind,
        structure: MonoidalSpec::from_structure(m),
        equivalences: None,
    }
}

pub fn homotopy_monoid_doc(h: &MHomotopyMonoid<SetPowers>) -> HomotopyMonoidDoc {
    let (version, kind) = envelope("homotopy-monoid");
    HomotopyMonoidDoc {
        version,
        kind,
        set_size: h.ambient.k,
        truncation: h.delta.bound(),
        maps: h
            .maps
            .iter()
            .map(|(f, t)| SetMapSpec {
                map: SimplexSpec::from_morphism(f),
                table: t.table.clone(),
            })
            .collect(),
        xi: h
            .xi
            .iter()
            .map(|(&(m, n), t)| SetXiSpec {
                m,
                n,
                table: t.table.clone(),
            })
            .collect(),
        xi_unit: h.xi_unit.table.clone(),
    }
}

pub fn cat_homotopy_monoid_doc(c: &CatHomotopyMonoid) -> CatHomotopyMonoidDoc {
    let (version, kind) = envelope("cat-homotopy-monoid");
    CatHomotopyMonoidDoc {
        version,
        kind,
        truncation: c.truncation(),
        levels: c.levels.iter().map(CategorySpec::from_category).collect(),
        maps: c
            .maps
            .iter()
            .map(|(f, func)| CatMapSpec {
                map: SimplexSpec::from_morphism(f),
                objects: indices(&func.objects),
                morphisms: indices(&func.morphisms),
            })
            .collect(),
        xi: c
            .xi
            .iter()
            .map(|(&(m, n), func)| CatXiSpec {
                m,
                n,
                objects: indices(&func.objects),
                morphisms: indices(&func.morphisms),
            })
            .collect(),
        xi_unit: MapSpec::from_functor(&c.xi_unit),
    }
}

pub fn complex_doc(c: &PointedDeltaComplex) -> ComplexDoc {
    let (version, kind) = envelope("complex");
    let raw = c.to_raw();
    ComplexDoc {
        version,
        kind,
        labels: raw.labels,
        basepoint: raw.basepoint,
        cells: raw.cells,
    }
}

pub fn monoid_doc(m: &Monoid) -> MonoidDoc {
    let (version, kind) = envelope("monoid");
    MonoidDoc {
        version,
        kind,
        table: m.table.clone(),
        unit: m.unit,
    }
}

pub fn category_doc(c: &FinCat) -> CategoryDoc {
    let (version, kind) = envelope("category");
    let spec = CategorySpec::from_category(c);
    CategoryDoc {
        version,
        kind,
        objects: spec.objects,
        morphisms: spec.morphisms,
        identities: spec.identities,
        composition: spec.composition,
        product: spec.product,
    }
}

pub fn functor_doc(f: &FunctorData) -> FunctorDoc {
    let (version, kind) = envelope("functor");
    FunctorDoc {
        version,
        kind,
        source: CategorySpec::from_category(&f.source),
        target: CategorySpec::from_category(&f.target),
        objects: indices(&f.objects),
        morphisms: indices(&f.morphisms),
    }
}

/// Serialize a document deterministically.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use hocat::homotopy_monoid::{fixture_generator, Inflation};

    fn reparse<T: Serialize>(doc: &T) -> Document {
        parse(&to_json(doc), "mem").unwrap()
    }

    #[test]
    fn categories_round_trip() {
        let chain = FinCat::chain(3);
        let prod = product(&[&chain, &FinCat::cyclic_group(2, "*", "g")]);
        for c in [chain, prod, FinCat::terminal()] {
            match reparse(&category_doc(&c)) {
                Document::Category(back) => assert_eq!(back, c),
                other => panic!("{}", other.kind()),
            }
        }
    }

    #[test]
    fn fixtures_round_trip() {
        let c = fixture_generator(&Monoid::cyclic(2), &Inflation::default(), 3).unwrap();
        match reparse(&cat_homotopy_monoid_doc(&c)) {
            Document::CatHomotopyMonoid(back) => assert_eq!(back, c),
            other => panic!("{}", other.kind()),
        }
        let h = hocat::homotopy_monoid::strict_packaging(&Monoid::cyclic(3), 3);
        match reparse(&homotopy_monoid_doc(&h)) {
            Document::HomotopyMonoid(back) => assert_eq!(back, h),
            other => panic!("{}", other.kind()),
        }
    }

    #[test]
    fn monoidal_structures_round_trip() {
        let m = MonoidalStructure::chain_with(3, 0, usize::max).unwrap();
        match reparse(&monoidal_doc(&m)) {
            Document::Monoidal { structure, equivalences } => {
                assert_eq!(structure, m);
                assert!(equivalences.is_none());
            }
            other => panic!("{}", other.kind()),
        }
    }

    #[test]
    fn references_by_name_and_index() {
        let text = r#"{"version": 1, "kind": "functor",
            "source": {"objects": ["a"], "morphisms": [["1", "a", "a"]], "identities": [["a", "1"]]},
            "target": {"product": [
                {"objects": ["x"], "morphisms": [["1x", "x", "x"]], "identities": [["x", "1x"]]},
                {"objects": ["y"], "morphisms": [["1y", "y", "y"]], "identities": [["y", "1y"]]}]},
            "objects": ["(x,y)"], "morphisms": [0]}"#;
        match parse(text, "mem").unwrap() {
            Document::Functor(f) => assert!(f.violations().is_empty()),
            other => panic!("{}", other.kind()),
        }
        let bad = text.replace("\"(x,y)\"", "\"(y,x)\"");
        let e = parse(&bad, "mem").unwrap_err();
        assert_eq!(e.field, "objects[0]");
        assert!(e.message.contains("(y,x)"));
    }

    #[test]
    fn ill_typed_functor_is_malformed() {
        let text = r#"{"version": 1, "kind": "functor",
            "source": {"objects": ["a", "b"], "morphisms": [["1a", "a", "a"], ["1b", "b", "b"], ["f", "a", "b"]],
                       "identities": [["a", "1a"], ["b", "1b"]]},
            "target": {"objects": ["x", "y"], "morphisms": [["1x", "x", "x"], ["1y", "y", "y"]],
                       "identities": [["x", "1x"], ["y", "1y"]]},
            "objects": ["x", "y"], "morphisms": ["1x", "1y", "1x"]}"#;
        let e = parse(text, "mem").unwrap_err();
        assert_eq!(e.field, "morphisms");
    }

    #[test]
    fn locate_follows_the_path() {
        let text = "{\n \"a\": {\"objects\": 1},\n \"b\": {\n  \"objects\": 2}}";
        assert_eq!(locate(text, "b.objects"), (Some(4), Some(3)));
        assert_eq!(locate(text, "objects"), (Some(2), Some(8)));
        assert_eq!(locate(text, "nothing"), (None, None));
    }
}
