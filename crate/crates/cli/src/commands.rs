//! Subcommand implementations.

use std::path::Path;

use hocat::equivalences::{
    check_triangle_identities, find_pseudo_inverse, promote_to_adjoint, SearchConfig, SearchError,
};
use hocat::fincat::{FinCat, FunctorData};
use hocat::homotopy_monoid::{
    assemble_monoidal_category, extract_monoid, fixture_generator, strict_packaging, BuildOptions,
    HomotopyMonoidError, Inflation, Monoid,
};
use hocat::loopspace::{build_w, homology, verify_homotopy_comonoid, ChainComplex, PointedDeltaComplex};
use hocat::monoidal::{check_pentagon, check_triangle, MonoidalStructure};
use hocat::report::Check;
use hocat::simplex::DeltaTruncation;
use serde_json::json;
use thiserror::Error;

use crate::doc::{self, Document, InputError, MapSpec};
use crate::report::Report;
use crate::{Cli, Command, FixtureKind, Outcome, EXIT_BUDGET, EXIT_INPUT};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(#[from] InputError),
    #[error("{0}")]
    Usage(String),
    #[error("search exceeded the budget of {0} candidates")]
    Budget(u64),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Budget(_) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}

type Result<T> = std::result::Result<T, CommandError>;

fn usage(e: impl ToString) -> CommandError {
    CommandError::Usage(e.to_string())
}

/// Classify library errors: budget overruns get their own exit code,
/// everything else is a problem with the input.
fn hm_error(e: HomotopyMonoidError) -> CommandError {
    match e {
        HomotopyMonoidError::BudgetExceeded(b) => CommandError::Budget(b),
        other => usage(other),
    }
}

fn finish(report: Report, document: Option<String>) -> Outcome {
    Outcome {
        exit_code: report.exit_code(),
        report,
        document,
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let config = SearchConfig {
        budget: cli.budget,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Validate { file } => validate(file, config),
        Command::DeltaHom { m, n } => delta_hom(*m, *n),
        Command::DeltaCheck { bound } => delta_check(*bound),
        Command::FindEquivalence { file } => find_equivalence(file, config),
        Command::BuildMoncat { file, no_promote } => build_moncat(file, config, !no_promote),
        Command::ExtractMonoid { file } => extract(file),
        Command::Fixture {
            monoid,
            inflate,
            kind,
            truncation,
        } => fixture(monoid, inflate, *kind, *truncation, config),
        Command::WComplex { n } => w_complex(*n),
        Command::Homology { complex, w } => homology_cmd(complex.as_deref(), *w),
        Command::VerifyLoopComonoid { maxlevel } => verify_loop(*maxlevel),
    }
}

// ---------------------------------------------------------------- validate

fn validate(file: &Path, config: SearchConfig) -> Result<Outcome> {
    let d = doc::load(file)?;
    let mut r = Report::new("validate");
    r.detail(format!("kind: {}", d.kind()));
    match d {
        Document::Category(c) => {
            let mut check = Check::new("category axioms");
            check.checked = c.morphisms().map(|f| c.outgoing(c.cod(f)).len()).sum();
            r.push(check);
            r.detail(format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms()));
        }
        Document::Functor(f) => r.push(functoriality(&f)),
        Document::Monoidal {
            structure,
            equivalences,
        } => {
            for c in monoidal_checks(&structure) {
                r.push(c);
            }
            if let Some(class) = equivalences {
                let (report, counts) = class.validate(&structure).map_err(usage)?;
                for c in report.to_checks(counts) {
                    r.push(c);
                }
            }
        }
        Document::Colax(c) => {
            let report = c.validate().map_err(usage)?;
            for ch in report.checks() {
                r.push(ch);
            }
            r.detail(format!("strong: {}", c.is_strong()));
        }
        Document::HomotopyMonoid(h) => {
            let report = h.validate().map_err(hm_error)?;
            for ch in report.checks {
                r.push(ch);
            }
            r.detail(format!("strong: {}", h.is_strong()));
        }
        Document::CatHomotopyMonoid(c) => {
            let report = c.validate(config).map_err(hm_error)?;
            for ch in report.checks {
                r.push(ch);
            }
            r.detail(format!("strong: {}", c.is_strong()));
        }
        Document::Complex(k) => {
            let mut check = Check::new("simplicial identities");
            check.checked = k.total_cells();
            r.push(check);
            r.detail(cell_counts(&k));
        }
        Document::Monoid(m) => {
            let mut check = Check::new("monoid axioms");
            check.checked = m.size().pow(3) + 2 * m.size();
            check.failures = m.violations();
            r.push(check);
        }
    }
    Ok(finish(r, None))
}

fn functoriality(f: &FunctorData) -> Check {
    Check {
        name: "functoriality".into(),
        checked: f.source.num_objects()
            + f.source
                .morphisms()
                .map(|m| f.source.outgoing(f.source.cod(m)).len())
                .sum::<usize>(),
        failures: f.violations().iter().map(|v| v.to_string()).collect(),
    }
}

fn monoidal_checks(m: &MonoidalStructure) -> Vec<Check> {
    let naturality = |name: &str, t: &hocat::fincat::NatTransfData| Check {
        name: format!("{name} naturality"),
        checked: t.source.source.num_morphisms(),
        failures: t.violations().iter().map(|v| format!("{v:?}")).collect(),
    };
    vec![
        naturality("associator", m.associator_transformation()),
        naturality("left unitor", m.left_unitor_transformation()),
        naturality("right unitor", m.right_unitor_transformation()),
        check_pentagon(m).to_check(),
        check_triangle(m),
    ]
}

// ---------------------------------------------------------------- simplex

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(m+n-1, m)`, with one map out of the empty ordinal and none into it.
fn expected_hom_count(m: usize, n: usize) -> usize {
    match (m, n) {
        (0, _) => 1,
        (_, 0) => 0,
        _ => binomial(m + n - 1, m),
    }
}

fn delta_hom(m: usize, n: usize) -> Result<Outcome> {
    let delta = DeltaTruncation::new(m.max(n));
    let homs = delta.enumerate_hom(m, n).map_err(usage)?;
    let mut r = Report::new("delta-hom");
    let mut count = Check::new("hom count");
    count.record(homs.len() == expected_hom_count(m, n), || {
        format!("found {}, expected {}", homs.len(), expected_hom_count(m, n))
    });
    r.push(count);
    let noun = if homs.len() == 1 { "morphism" } else { "morphisms" };
    r.detail(format!("{} {noun} {m} → {n}", homs.len()));
    for f in &homs {
        r.detail(f.to_string());
    }
    r.data = Some(json!(homs
        .iter()
        .map(|f| json!({"dom": f.dom(), "cod": f.cod(), "values": f.values()}))
        .collect::<Vec<_>>()));
    Ok(finish(r, None))
}

// associativity is checked over every composable triple; bound 6 takes
// about a minute and each further level multiplies that by forty
const MAX_DELTA_CHECK: usize = 6;

fn delta_check(bound: usize) -> Result<Outcome> {
    if bound > MAX_DELTA_CHECK {
        return Err(usage(format!("bound {bound} is too large (at most {MAX_DELTA_CHECK})")));
    }
    let delta = DeltaTruncation::new(bound);
    let mut r = Report::new("delta-check");
    let mut counts = Check::new("hom counts");
    let mut table = Vec::new();
    for m in 0..=bound {
        let mut row = Vec::new();
        for n in 0..=bound {
            let got = delta.enumerate_hom(m, n).map_err(usage)?.len();
            let want = expected_hom_count(m, n);
            counts.record(got == want, || format!("|Δ({m}, {n})| = {got}, expected {want}"));
            row.push(got);
        }
        r.detail(format!(
            "{m}: {}",
            row.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        ));
        table.push(row);
    }
    r.push(counts);
    let mut laws = Check::new("category and ordinal-sum laws");
    laws.checked = delta.all_morphisms().len();
    laws.failures = delta.check_invariants();
    r.push(laws);
    r.data = Some(json!({ "hom_counts": table }));
    Ok(finish(r, None))
}

// ---------------------------------------------------------------- equivalences

fn find_equivalence(file: &Path, config: SearchConfig) -> Result<Outcome> {
    let g = match doc::load(file)? {
        Document::Functor(g) => g,
        other => return Err(wrong_kind(file, "functor", other.kind())),
    };
    let mut r = Report::new("find-equivalence");
    let func = functoriality(&g);
    let functorial = func.passed();
    r.push(func);
    if !functorial {
        return Ok(finish(r, None));
    }
    let mut found = Check::new("pseudo-inverse");
    match find_pseudo_inverse(&g, config) {
        Err(SearchError::BudgetExceeded(b)) => return Err(CommandError::Budget(b)),
        Err(SearchError::NotFound) => {
            found.record(false, || "no pseudo-inverse exists".into());
            r.push(found);
        }
        Err(e @ SearchError::ShapeMismatch(_)) => return Err(usage(e)),
        Ok(w) => {
            found.record(true, String::new);
            r.push(found);
            let mut witness = Check::new("η and ε are natural isomorphisms");
            witness.checked = 2;
            witness.failures = w.validate();
            r.push(witness);
            let adj = promote_to_adjoint(&w).map_err(usage)?;
            let aw = adj.witness();
            let mut tri = Check::new("triangle identities");
            tri.checked = aw.f.source.num_objects() + aw.f.target.num_objects();
            tri.failures = check_triangle_identities(aw)
                .iter()
                .map(|t| format!("{:?} identity fails at {}", t.identity, t.object))
                .collect();
            r.push(tri);
            let names = |c: &FinCat, v: &[usize], obj: bool| -> Vec<String> {
                v.iter()
                    .map(|&i| if obj { c.object_name(i) } else { c.morphism_name(i) })
                    .collect()
            };
            let (src, tgt) = (&aw.f.source, &aw.f.target);
            r.detail(format!("F on objects: {}", names(tgt, &aw.f.objects, true).join(" ")));
            r.detail(format!("η: {}", names(src, &aw.eta.components, false).join(" ")));
            r.detail(format!("ε: {}", names(tgt, &aw.epsilon.components, false).join(" ")));
            r.data = Some(json!({
                "pseudo_inverse": MapSpec::from_functor(&aw.f),
                "eta": aw.eta.components,
                "epsilon": aw.epsilon.components,
            }));
        }
    }
    Ok(finish(r, None))
}

fn wrong_kind(file: &Path, want: &str, got: &str) -> CommandError {
    CommandError::Input(InputError {
        file: file.display().to_string(),
        line: None,
        column: None,
        field: "kind".into(),
        message: format!("expected a `{want}` document, found `{got}`"),
    })
}

// ---------------------------------------------------------------- homotopy monoids

fn build_moncat(file: &Path, config: SearchConfig, promote: bool) -> Result<Outcome> {
    let c = match doc::load(file)? {
        Document::CatHomotopyMonoid(c) => c,
        other => return Err(wrong_kind(file, "cat-homotopy-monoid", other.kind())),
    };
    let mut r = Report::new("build-moncat");
    if !promote {
        r.detail("adjoint promotion disabled");
    }
    let options = BuildOptions {
        search: config,
        promote,
    };
    match assemble_monoidal_category(&c, options) {
        Ok((m, _)) => {
            for ch in monoidal_checks(&m) {
                r.push(ch);
            }
            let b = m.base();
            r.detail(format!(
                "C(1): {} objects, {} morphisms; unit {}",
                b.num_objects(),
                b.num_morphisms(),
                b.object_name(m.unit_object())
            ));
            let d = doc::monoidal_doc(&m);
            r.data = Some(serde_json::to_value(&d).expect("documents serialize"));
            Ok(finish(r, Some(doc::to_json(&d))))
        }
        Err(HomotopyMonoidError::NotAnEquivalence { component }) => {
            let mut ch = Check::new("comparison maps are equivalences");
            ch.record(false, || format!("{component} has no pseudo-inverse"));
            r.push(ch);
            Ok(finish(r, None))
        }
        Err(HomotopyMonoidError::ConstructionInvariantBreach(s)) => {
            let mut ch = Check::new("construction");
            ch.record(false, || s);
            r.push(ch);
            Ok(finish(r, None))
        }
        Err(e) => Err(hm_error(e)),
    }
}

fn extract(file: &Path) -> Result<Outcome> {
    let h = match doc::load(file)? {
        Document::HomotopyMonoid(h) => h,
        other => return Err(wrong_kind(file, "homotopy-monoid", other.kind())),
    };
    let mut r = Report::new("extract-monoid");
    match extract_monoid(&h) {
        Ok(data) => {
            let m = data.to_monoid(&h.ambient);
            let mut ch = Check::new("monoid axioms");
            ch.checked = m.size().pow(3) + 2 * m.size();
            ch.failures = m.violations();
            r.push(ch);
            r.detail(format!("unit: {}", m.unit));
            for row in &m.table {
                r.detail(row.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
            }
            let d = doc::monoid_doc(&m);
            r.data = Some(serde_json::to_value(&d).expect("documents serialize"));
            Ok(finish(r, Some(doc::to_json(&d))))
        }
        Err(HomotopyMonoidError::NotStrong(c)) => {
            let mut ch = Check::new("comparison maps are invertible");
            ch.record(false, || format!("{c} is not invertible"));
            r.push(ch);
            Ok(finish(r, None))
        }
        Err(HomotopyMonoidError::InvalidMonoid(s)) => {
            let mut ch = Check::new("monoid axioms");
            ch.record(false, || s);
            r.push(ch);
            Ok(finish(r, None))
        }
        Err(e) => Err(hm_error(e)),
    }
}

/// `trivial`, `cyclic:N`, `enum:N:I` or the path of a monoid document.
pub fn parse_monoid(spec: &str) -> Result<Monoid> {
    let bad = || usage(format!("bad monoid spec `{spec}`"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["trivial"] => Ok(Monoid::trivial()),
        ["cyclic", n] => {
            let n = num(n)?;
            if n == 0 {
                return Err(bad());
            }
            Ok(Monoid::cyclic(n))
        }
        ["enum", n, i] => {
            let (n, i) = (num(n)?, num(i)?);
            if n == 0 || n > 4 {
                return Err(usage("enumerated monoids have size 1 to 4"));
            }
            let all = Monoid::enumerate(n);
            let count = all.len();
            all.into_iter()
                .nth(i)
                .ok_or_else(|| usage(format!("there are {count} monoids of size {n}")))
        }
        _ => match doc::load(Path::new(spec))? {
            Document::Monoid(m) => {
                let v = m.violations();
                if v.is_empty() {
                    Ok(m)
                } else {
                    Err(usage(format!("{spec}: not a monoid: {}", v.join("; "))))
                }
            }
            other => Err(wrong_kind(Path::new(spec), "monoid", other.kind())),
        },
    }
}

fn fixture(
    monoid: &str,
    inflate: &str,
    kind: FixtureKind,
    truncation: usize,
    config: SearchConfig,
) -> Result<Outcome> {
    let m = parse_monoid(monoid)?;
    let inflation: Inflation = inflate.parse().map_err(usage)?;
    let bound = hocat::homotopy_monoid::cat::MAX_FIXTURE_TRUNCATION;
    if truncation == 0 || truncation > bound {
        return Err(usage(format!("truncation must be between 1 and {bound}")));
    }
    let mut r = Report::new("fixture");
    match kind {
        FixtureKind::Set => {
            if inflation != Inflation::none() {
                return Err(usage("set fixtures take no inflation; use --inflate none"));
            }
            let h = strict_packaging(&m, truncation);
            for ch in h.validate().map_err(hm_error)?.checks {
                r.push(ch);
            }
            r.detail(format!("strict packaging of a monoid of size {}", m.size()));
            let d = doc::homotopy_monoid_doc(&h);
            r.data = Some(serde_json::to_value(&d).expect("documents serialize"));
            Ok(finish(r, Some(doc::to_json(&d))))
        }
        FixtureKind::Cat => {
            let c = fixture_generator(&m, &inflation, truncation).map_err(hm_error)?;
            for ch in c.validate(config).map_err(hm_error)?.checks {
                r.push(ch);
            }
            r.detail(format!("inflation: {inflation}"));
            for (n, l) in c.levels.iter().enumerate() {
                r.detail(format!("C({n}): {} objects, {} morphisms", l.num_objects(), l.num_morphisms()));
            }
            let d = doc::cat_homotopy_monoid_doc(&c);
            Ok(finish(r, Some(doc::to_json(&d))))
        }
    }
}

// ---------------------------------------------------------------- loop space

fn cell_counts(k: &PointedDeltaComplex) -> String {
    let counts: Vec<String> = (0..=k.dimension()).map(|d| k.num_cells(d).to_string()).collect();
    format!("cells by dimension: {}", counts.join(" "))
}

fn w_complex(n: usize) -> Result<Outcome> {
    let w = build_w(n).map_err(usage)?;
    let mut r = Report::new("w-complex");
    let mut counts = Check::new("cell counts");
    for k in 1..=n {
        let want = binomial(n + 1, k + 1);
        counts.record(w.num_cells(k) == want, || {
            format!("{} cells in dimension {k}, expected {want}", w.num_cells(k))
        });
    }
    r.push(counts);
    r.detail(cell_counts(&w));
    for k in 0..=w.dimension() {
        let names: Vec<String> = (0..w.num_cells(k)).map(|i| w.cell_name(k, i)).collect();
        r.detail(format!("{k}-cells: {}", names.join(" ")));
    }
    let d = doc::complex_doc(&w);
    r.data = Some(serde_json::to_value(&d).expect("documents serialize"));
    Ok(finish(r, Some(doc::to_json(&d))))
}

fn homology_cmd(complex: Option<&Path>, w: Option<usize>) -> Result<Outcome> {
    let k = match (complex, w) {
        (Some(file), _) => match doc::load(file)? {
            Document::Complex(k) => k,
            other => return Err(wrong_kind(file, "complex", other.kind())),
        },
        (None, Some(n)) => build_w(n).map_err(usage)?,
        (None, None) => return Err(usage("give --complex FILE or --W N")),
    };
    let chain = ChainComplex::from_complex(&k);
    let mut r = Report::new("homology");
    let mut dd = Check::new("∂∂ = 0");
    dd.checked = chain.top_degree().saturating_sub(1);
    if let Err(e) = ChainComplex::new(chain.ranks().to_vec(), (1..=chain.top_degree()).map(|d| chain.boundary(d).clone()).collect()) {
        dd.fail(e.to_string());
    }
    r.push(dd);
    let h = homology(&chain);
    let betti = h.betti_numbers();
    r.detail(format!(
        "betti: {}",
        betti.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    ));
    for (d, deg) in h.degrees.iter().enumerate() {
        let mut parts = Vec::new();
        match deg.betti {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            b => parts.push(format!("ℤ^{b}")),
        }
        parts.extend(deg.torsion.iter().map(|t| format!("ℤ/{t}")));
        let group = if parts.is_empty() { "0".to_string() } else { parts.join(" ⊕ ") };
        r.detail(format!("H_{d} = {group}"));
    }
    r.detail(format!("euler characteristic: {}", h.euler_characteristic()));
    r.data = Some(json!({
        "betti": betti,
        "torsion": h.degrees.iter().map(|d| d.torsion.clone()).collect::<Vec<_>>(),
        "euler_characteristic": h.euler_characteristic(),
    }));
    Ok(finish(r, None))
}

fn verify_loop(maxlevel: usize) -> Result<Outcome> {
    let report = verify_homotopy_comonoid(maxlevel).map_err(usage)?;
    let mut r = Report::new("verify-loop-comonoid").with_checks(report.checks);
    r.detail("equivalences are certified on integer homology only");
    Ok(finish(r, None))
}
