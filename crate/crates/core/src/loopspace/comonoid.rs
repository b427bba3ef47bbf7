//! The complexes `W(n)`, the comparison maps `ω`, and the check that they
//! make the circle a homotopy comonoid.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::chain::check_quasi_iso;
use super::complex::{wedge_complex, Cell, CellularMap, PointedDeltaComplex};
use super::LoopspaceError;
use crate::monoidal::{ColaxFunctor, MonoidalCategory};
use crate::report::Check;
use crate::simplex::{interval_dual, DeltaTruncation, SimplexMorphism};

pub const DEFAULT_MAX: usize = 6;

fn within(n: usize, max: usize) -> Result<(), LoopspaceError> {
    if n > max {
        Err(LoopspaceError::TooLarge { n, max })
    } else {
        Ok(())
    }
}

/// The `n`-simplex on vertices `0..=n` with all vertices identified: one
/// 0-cell and one `k`-cell per `(k+1)`-subset, in lexicographic order.
pub fn build_w(n: usize) -> Result<PointedDeltaComplex, LoopspaceError> {
    within(n, DEFAULT_MAX)?;
    Ok(build_w_unbounded(n))
}

fn build_w_unbounded(n: usize) -> PointedDeltaComplex {
    let mut cells: Vec<Vec<Cell>> = vec![vec![Cell { vertices: vec![], faces: vec![] }]];
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for k in 1..=n {
        let mut level = Vec::new();
        for s in subsets(n + 1, k + 1) {
            let faces = if k == 1 {
                vec![0, 0]
            } else {
                (0..=k)
                    .map(|j| {
                        let mut f = s.clone();
                        f.remove(j);
                        index[&f]
                    })
                    .collect()
            };
            level.push(Cell { vertices: s, faces });
        }
        index = level.iter().enumerate().map(|(i, c)| (c.vertices.clone(), i)).collect();
        cells.push(level);
    }
    PointedDeltaComplex::new(n + 1, 0, cells).expect("W(n) is a valid complex")
}

/// `size`-subsets of `0..n`, lexicographically.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// `K ∨ L` with its two inclusions.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub complex: Arc<PointedDeltaComplex>,
    pub left: CellularMap,
    pub right: CellularMap,
}

pub fn build_wedge(k: Arc<PointedDeltaComplex>, l: Arc<PointedDeltaComplex>) -> Wedge {
    let complex = Arc::new(wedge_complex(&k, &l));
    let left_map: Vec<usize> = (0..k.labels()).collect();
    let right_map: Vec<usize> = (0..l.labels()).map(|v| v + k.labels()).collect();
    let left = CellularMap::from_vertex_map(k, complex.clone(), &left_map).expect("inclusion");
    let right = CellularMap::from_vertex_map(l, complex.clone(), &right_map).expect("inclusion");
    Wedge {
        complex,
        left,
        right,
    }
}

/// The simplicial data of the circle as a homotopy comonoid, up to a level:
/// `W(n)`, the maps `W(n) → W(m)` induced by `f: m → n`, and
/// `ω_{m,n}: W(m) ∨ W(n) → W(m+n)`, `ω_0: point → W(0)`.
#[derive(Clone, Debug)]
pub struct LoopComonoid {
    pub maxlevel: usize,
    pub w: Vec<Arc<PointedDeltaComplex>>,
    pub point: Arc<PointedDeltaComplex>,
    pub induced: BTreeMap<SimplexMorphism, CellularMap>,
    pub omega: BTreeMap<(usize, usize), CellularMap>,
    pub omega0: CellularMap,
    wedges: BTreeMap<(usize, usize), Arc<PointedDeltaComplex>>,
}

impl LoopComonoid {
    pub fn new(maxlevel: usize) -> Result<Self, LoopspaceError> {
        within(maxlevel, DEFAULT_MAX)?;
        let w: Vec<Arc<PointedDeltaComplex>> =
            (0..=maxlevel).map(|n| Arc::new(build_w_unbounded(n))).collect();
        let point = Arc::new(PointedDeltaComplex::point());
        let delta = DeltaTruncation::new(maxlevel);
        let induced = delta
            .all_morphisms()
            .into_iter()
            .map(|f| {
                let g = induced_between(&f, w[f.cod()].clone(), w[f.dom()].clone());
                (f, g)
            })
            .collect();
        let mut wedges = BTreeMap::new();
        let mut omega = BTreeMap::new();
        for m in 0..=maxlevel {
            for n in 0..=maxlevel - m {
                let source = Arc::new(wedge_complex(&w[m], &w[n]));
                omega.insert((m, n), omega_between(m, n, source.clone(), w[m + n].clone()));
                wedges.insert((m, n), source);
            }
        }
        let omega0 = CellularMap::from_vertex_map(point.clone(), w[0].clone(), &[]).expect("basepoint");
        Ok(LoopComonoid {
            maxlevel,
            w,
            point,
            induced,
            omega,
            omega0,
            wedges,
        })
    }

    /// Check co-naturality, co-associativity, the counit laws and that every
    /// comparison map is a homology equivalence.
    pub fn verify(&self) -> Vec<Check> {
        let max = self.maxlevel;
        let mut naturality = Check::new("co-naturality");
        for f in self.induced.keys() {
            for g in self.induced.keys() {
                let (m, n, m2, n2) = (f.dom(), g.dom(), f.cod(), g.cod());
                if m + n > max || m2 + n2 > max {
                    continue;
                }
                // ω_{m,n} ∘ (f* ∨ g*) = (f+g)* ∘ ω_{m',n'} on W(m') ∨ W(n')
                let fg = CellularMap::wedge_between(
                    &self.induced[f],
                    &self.induced[g],
                    self.wedges[&(m2, n2)].clone(),
                    self.wedges[&(m, n)].clone(),
                );
                let left = fg.then(&self.omega[&(m, n)]).expect("typed");
                let right = self.omega[&(m2, n2)].then(&self.induced[&f.plus(g)]).expect("typed");
                naturality.record(left == right, || {
                    format!("f = {f}, g = {g}: {}", difference(&left, &right))
                });
            }
        }

        let mut associativity = Check::new("co-associativity");
        for m in 0..=max {
            for n in 0..=max - m {
                for p in 0..=max - m - n {
                    // ω_{m+n,p} ∘ (ω_{m,n} ∨ 1) = ω_{m,n+p} ∘ (1 ∨ ω_{n,p})
                    let source = Arc::new(wedge_complex(&self.wedges[&(m, n)], &self.w[p]));
                    let left = CellularMap::wedge_between(
                        &self.omega[&(m, n)],
                        &CellularMap::identity(self.w[p].clone()),
                        source.clone(),
                        self.wedges[&(m + n, p)].clone(),
                    )
                    .then(&self.omega[&(m + n, p)])
                    .expect("typed");
                    let right = CellularMap::wedge_between(
                        &CellularMap::identity(self.w[m].clone()),
                        &self.omega[&(n, p)],
                        source,
                        self.wedges[&(m, n + p)].clone(),
                    )
                    .then(&self.omega[&(m, n + p)])
                    .expect("typed");
                    associativity.record(left == right, || {
                        format!("(m, n, p) = ({m}, {n}, {p}): {}", difference(&left, &right))
                    });
                }
            }
        }

        let mut counit = Check::new("counit");
        for m in 0..=max {
            let id = CellularMap::identity(self.w[m].clone());
            let right = CellularMap::wedge_between(&id, &self.omega0, self.w[m].clone(), self.wedges[&(m, 0)].clone())
                .then(&self.omega[&(m, 0)])
                .expect("typed");
            counit.record(right == id, || format!("ω_{{{m},0}} ∘ (1 ∨ ω_0): {}", difference(&right, &id)));
            let left = CellularMap::wedge_between(&self.omega0, &id, self.w[m].clone(), self.wedges[&(0, m)].clone())
                .then(&self.omega[&(0, m)])
                .expect("typed");
            counit.record(left == id, || format!("ω_{{0,{m}}} ∘ (ω_0 ∨ 1): {}", difference(&left, &id)));
        }

        let mut equivalence = Check::new("ω is a homology equivalence");
        let report = check_quasi_iso(&self.omega0);
        equivalence.record(report.passed(), || format!("ω_0 fails in degrees {:?}", report.failing_degrees()));
        for (&(m, n), om) in &self.omega {
            let report = check_quasi_iso(om);
            equivalence.record(report.passed(), || {
                format!("ω_{{{m},{n}}} fails in degrees {:?}", report.failing_degrees())
            });
        }

        vec![naturality, associativity, counit, equivalence]
    }
}

fn difference(a: &CellularMap, b: &CellularMap) -> String {
    a.first_difference(b).unwrap_or_else(|| "equal".into())
}

fn omega_between(
    m: usize,
    n: usize,
    source: Arc<PointedDeltaComplex>,
    target: Arc<PointedDeltaComplex>,
) -> CellularMap {
    // front face on 0..=m, back face on m..=m+n
    let vertex_map: Vec<usize> = (0..=m).chain((0..=n).map(|j| m + j)).collect();
    CellularMap::from_vertex_map(source, target, &vertex_map).expect("face inclusions are cellular")
}

fn induced_between(
    f: &SimplexMorphism,
    source: Arc<PointedDeltaComplex>,
    target: Arc<PointedDeltaComplex>,
) -> CellularMap {
    CellularMap::from_vertex_map(source, target, &interval_dual(f)).expect("monotone vertex map")
}

/// `ω_{m,n}: W(m) ∨ W(n) → W(m+n)`.
pub fn build_omega(m: usize, n: usize) -> Result<CellularMap, LoopspaceError> {
    within(m + n, DEFAULT_MAX)?;
    let (wm, wn) = (build_w_unbounded(m), build_w_unbounded(n));
    let source = Arc::new(wedge_complex(&wm, &wn));
    Ok(omega_between(m, n, source, Arc::new(build_w_unbounded(m + n))))
}

/// The map `W(n) → W(m)` induced by `f: m → n`, acting on vertices by the
/// interval dual of `f`.
pub fn induced_map_w(f: &SimplexMorphism) -> Result<CellularMap, LoopspaceError> {
    within(f.dom().max(f.cod()), DEFAULT_MAX)?;
    Ok(induced_between(
        f,
        Arc::new(build_w_unbounded(f.cod())),
        Arc::new(build_w_unbounded(f.dom())),
    ))
}

/// Run every comonoid check up to `maxlevel`.
pub fn verify_homotopy_comonoid(maxlevel: usize) -> Result<LoopReport, LoopspaceError> {
    let c = LoopComonoid::new(maxlevel)?;
    Ok(LoopReport { checks: c.verify() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopReport {
    pub checks: Vec<Check>,
}

impl LoopReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// Pointed complexes and cellular maps with arrows reversed, wedge as
/// tensor. A colax functor from the truncated simplex category into this
/// category is a homotopy comonoid of pointed complexes.
#[derive(Clone, Copy, Debug, Default)]
pub struct PointedCellsOp;

impl MonoidalCategory for PointedCellsOp {
    type Obj = Arc<PointedDeltaComplex>;
    type Mor = CellularMap;

    fn dom(&self, f: &CellularMap) -> Self::Obj {
        f.target().clone()
    }
    fn cod(&self, f: &CellularMap) -> Self::Obj {
        f.source().clone()
    }
    fn identity(&self, a: &Self::Obj) -> CellularMap {
        CellularMap::identity(a.clone())
    }
    fn compose(&self, g: &CellularMap, f: &CellularMap) -> Option<CellularMap> {
        g.then(f)
    }
    fn inverse(&self, f: &CellularMap) -> Option<CellularMap> {
        f.inverse()
    }
    fn unit(&self) -> Self::Obj {
        Arc::new(PointedDeltaComplex::point())
    }
    fn tensor_objects(&self, a: &Self::Obj, b: &Self::Obj) -> Option<Self::Obj> {
        Some(Arc::new(wedge_complex(a, b)))
    }
    fn tensor_morphisms(&self, f: &CellularMap, g: &CellularMap) -> Option<CellularMap> {
        Some(CellularMap::wedge(f, g))
    }
    fn associator(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Option<CellularMap> {
        let ab = wedge_complex(a, b);
        Some(CellularMap::identity(Arc::new(wedge_complex(&ab, c))))
    }
    fn left_unitor(&self, a: &Self::Obj) -> CellularMap {
        CellularMap::identity(a.clone())
    }
    fn right_unitor(&self, a: &Self::Obj) -> CellularMap {
        CellularMap::identity(a.clone())
    }
    fn describe_object(&self, a: &Self::Obj) -> String {
        let counts: Vec<String> = (0..=a.dimension()).map(|k| a.num_cells(k).to_string()).collect();
        format!("complex with cells ({})", counts.join(", "))
    }
    fn describe_morphism(&self, f: &CellularMap) -> String {
        f.to_string()
    }
}

impl ColaxFunctor<DeltaTruncation, PointedCellsOp> for LoopComonoid {
    fn on_object(&self, a: &usize) -> Arc<PointedDeltaComplex> {
        self.w[*a].clone()
    }
    fn on_morphism(&self, f: &SimplexMorphism) -> CellularMap {
        self.induced[f].clone()
    }
    fn xi(&self, a: &usize, b: &usize) -> CellularMap {
        self.omega[&(*a, *b)].clone()
    }
    fn xi_unit(&self) -> CellularMap {
        self.omega0.clone()
    }
}
