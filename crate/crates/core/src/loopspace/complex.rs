//! Pointed Δ-complexes and cellular maps between them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::LoopspaceError;

/// A cell: its vertex labels (in the uncollapsed simplex model) and its
/// faces `∂_0, ..., ∂_k` as ids of `(k-1)`-cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    #[serde(default)]
    pub vertices: Vec<usize>,
    #[serde(default)]
    pub faces: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComplex {
    /// Number of vertex labels; labelled cells use labels `0..labels`.
    #[serde(default)]
    pub labels: usize,
    pub basepoint: usize,
    /// `cells[k]` lists the `k`-cells.
    pub cells: Vec<Vec<Cell>>,
}

/// A Δ-complex with a basepoint 0-cell. Cells of dimension `k ≥ 1` are
/// looked up by their vertex tuples; a complex with a single 0-cell is
/// collapsed, and every vertex names the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct PointedDeltaComplex {
    labels: usize,
    basepoint: usize,
    cells: Vec<Vec<Cell>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TryFrom<RawComplex> for PointedDeltaComplex {
    type Error = LoopspaceError;
    fn try_from(raw: RawComplex) -> Result<Self, LoopspaceError> {
        PointedDeltaComplex::new(raw.labels, raw.basepoint, raw.cells)
    }
}

impl From<PointedDeltaComplex> for RawComplex {
    fn from(k: PointedDeltaComplex) -> Self {
        RawComplex {
            labels: k.labels,
            basepoint: k.basepoint,
            cells: k.cells,
        }
    }
}

fn invalid(s: impl Into<String>) -> LoopspaceError {
    LoopspaceError::InvalidComplex(s.into())
}

impl PointedDeltaComplex {
    /// Validate face tables, vertex labels and the simplicial identities.
    pub fn new(labels: usize, basepoint: usize, mut cells: Vec<Vec<Cell>>) -> Result<Self, LoopspaceError> {
        while cells.len() > 1 && cells.last().is_some_and(|c| c.is_empty()) {
            cells.pop();
        }
        if cells.is_empty() || basepoint >= cells[0].len() {
            return Err(invalid("the basepoint is not a 0-cell"));
        }
        let mut index = HashMap::new();
        for (k, level) in cells.iter().enumerate() {
            for (i, c) in level.iter().enumerate() {
                let name = || format!("{k}-cell #{i}");
                let arity = if k == 0 { 0 } else { k + 1 };
                if c.faces.len() != arity {
                    return Err(invalid(format!("{} has {} faces, expected {arity}", name(), c.faces.len())));
                }
                if k > 0 && c.faces.iter().any(|&f| f >= cells[k - 1].len()) {
                    return Err(invalid(format!("{} has a face outside dimension {}", name(), k - 1)));
                }
                if c.vertices.iter().any(|&v| v >= labels) {
                    return Err(invalid(format!("{} uses a vertex label ≥ {labels}", name())));
                }
                if k > 0 && !c.vertices.is_empty() {
                    if c.vertices.len() != k + 1 {
                        return Err(invalid(format!("{} has {} vertices", name(), c.vertices.len())));
                    }
                    if index.insert(c.vertices.clone(), i).is_some() {
                        return Err(invalid(format!("vertex tuple {:?} names two cells", c.vertices)));
                    }
                }
                if k >= 2 {
                    for a in 0..=k {
                        for b in a + 1..=k {
                            let left = cells[k - 1][c.faces[b]].faces[a];
                            let right = cells[k - 1][c.faces[a]].faces[b - 1];
                            if left != right {
                                return Err(invalid(format!(
                                    "{}: ∂_{a}∂_{b} ≠ ∂_{}∂_{a}",
                                    name(),
                                    b - 1
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(PointedDeltaComplex {
            labels,
            basepoint,
            cells,
            index,
        })
    }

    /// One 0-cell and no vertex labels: the unit for the wedge.
    pub fn point() -> Self {
        PointedDeltaComplex::new(0, 0, vec![vec![Cell { vertices: vec![], faces: vec![] }]])
            .expect("valid")
    }

    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn num_cells(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, Vec::len)
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cell(&self, k: usize, i: usize) -> &Cell {
        &self.cells[k][i]
    }

    pub fn cells(&self) -> &[Vec<Cell>] {
        &self.cells
    }

    pub fn face(&self, k: usize, i: usize, j: usize) -> usize {
        self.cells[k][i].faces[j]
    }

    pub fn is_collapsed(&self) -> bool {
        self.cells[0].len() == 1
    }

    /// `Σ (-1)^k #cells_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }

    /// The cell with these (distinct) vertices, as `(dimension, id)`.
    pub fn lookup(&self, vertices: &[usize]) -> Option<(usize, usize)> {
        match vertices {
            [] => None,
            [v] if self.is_collapsed() => (*v < self.labels).then_some((0, self.basepoint)),
            [v] => self.cells[0]
                .iter()
                .position(|c| c.vertices == [*v])
                .map(|i| (0, i)),
            _ => self.index.get(vertices).map(|&i| (vertices.len() - 1, i)),
        }
    }

    pub fn cell_name(&self, k: usize, i: usize) -> String {
        let c = &self.cells[k][i];
        if k == 0 && i == self.basepoint {
            "basepoint".into()
        } else if c.vertices.is_empty() {
            format!("{k}-cell #{i}")
        } else {
            format!("{:?}", c.vertices)
        }
    }

    pub fn to_raw(&self) -> RawComplex {
        self.clone().into()
    }
}

/// The wedge `K ∨ L`: vertex labels of `L` are shifted past those of `K`,
/// the basepoints are identified, and in each dimension the cells of `K`
/// come first. The wedge is strictly associative and the point is a strict
/// unit.
pub fn wedge_complex(k: &PointedDeltaComplex, l: &PointedDeltaComplex) -> PointedDeltaComplex {
    let shift = k.labels;
    let dim = k.dimension().max(l.dimension());
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); dim + 1];
    for (d, level) in k.cells.iter().enumerate() {
        cells[d].extend(level.iter().cloned());
    }
    for (d, level) in l.cells.iter().enumerate() {
        for (i, c) in level.iter().enumerate() {
            if d == 0 && i == l.basepoint {
                continue;
            }
            cells[d].push(Cell {
                vertices: c.vertices.iter().map(|v| v + shift).collect(),
                faces: c.faces.iter().map(|&f| right_id(k, l, d - 1, f)).collect(),
            });
        }
    }
    PointedDeltaComplex::new(k.labels + l.labels, k.basepoint, cells).expect("wedge of valid complexes")
}

/// Id in `K ∨ L` of the `d`-cell `i` of `L`.
fn right_id(k: &PointedDeltaComplex, l: &PointedDeltaComplex, d: usize, i: usize) -> usize {
    if d > 0 {
        k.num_cells(d) + i
    } else if i == l.basepoint {
        k.basepoint
    } else {
        k.num_cells(0) + i - usize::from(i > l.basepoint)
    }
}

/// Image of a cell in normal form: the degeneracy `pattern` applied to a
/// nondegenerate `dim`-cell. `pattern` is a monotone surjection from the
/// source cell's vertex positions onto `0..=dim`; it is the identity
/// exactly when the image is nondegenerate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellImage {
    pub dim: usize,
    pub cell: usize,
    pub pattern: Vec<usize>,
}

impl CellImage {
    pub fn nondegenerate(dim: usize, cell: usize) -> Self {
        CellImage {
            dim,
            cell,
            pattern: (0..=dim).collect(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.pattern.len() != self.dim + 1
    }

    /// `∂_i` of this image, inside `target`.
    fn face(&self, target: &PointedDeltaComplex, i: usize) -> CellImage {
        let j = self.pattern[i];
        let mut pattern = self.pattern.clone();
        pattern.remove(i);
        if pattern.contains(&j) {
            CellImage {
                dim: self.dim,
                cell: self.cell,
                pattern,
            }
        } else {
            CellImage {
                dim: self.dim - 1,
                cell: target.face(self.dim, self.cell, j),
                pattern: pattern.into_iter().map(|p| if p > j { p - 1 } else { p }).collect(),
            }
        }
    }

    fn describe(&self, target: &PointedDeltaComplex) -> String {
        let base = target.cell_name(self.dim, self.cell);
        if self.is_degenerate() {
            format!("degenerate {base} {:?}", self.pattern)
        } else {
            base
        }
    }
}

/// A basepoint-preserving cellular map, given cell by cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularMap {
    source: Arc<PointedDeltaComplex>,
    target: Arc<PointedDeltaComplex>,
    images: Vec<Vec<CellImage>>,
}

impl fmt::Display for CellularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, level) in self.images.iter().enumerate() {
            for (i, img) in level.iter().enumerate() {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{} ↦ {}", self.source.cell_name(k, i), img.describe(&self.target))?;
            }
        }
        Ok(())
    }
}

impl CellularMap {
    /// Validate the images: shapes, basepoint, and compatibility with faces.
    pub fn new(
        source: Arc<PointedDeltaComplex>,
        target: Arc<PointedDeltaComplex>,
        images: Vec<Vec<CellImage>>,
    ) -> Result<Self, LoopspaceError> {
        let m = CellularMap::new_unchecked(source, target, images);
        match m.violations().into_iter().next() {
            None => Ok(m),
            Some(v) => Err(LoopspaceError::NotCellular(v)),
        }
    }

    /// For deliberate corruption in tests and diagnostics.
    pub fn new_unchecked(
        source: Arc<PointedDeltaComplex>,
        target: Arc<PointedDeltaComplex>,
        images: Vec<Vec<CellImage>>,
    ) -> Self {
        CellularMap { source, target, images }
    }

    /// The map that is affine on each cell with the given action on vertex
    /// labels. Images of cells must be monotone in the target's labels.
    pub fn from_vertex_map(
        source: Arc<PointedDeltaComplex>,
        target: Arc<PointedDeltaComplex>,
        vertex_map: &[usize],
    ) -> Result<Self, LoopspaceError> {
        if vertex_map.len() != source.labels() {
            return Err(LoopspaceError::NotCellular(format!(
                "vertex map has {} entries for {} labels",
                vertex_map.len(),
                source.labels()
            )));
        }
        let mut images = Vec::with_capacity(source.cells.len());
        for (k, level) in source.cells.iter().enumerate() {
            let mut out = Vec::with_capacity(level.len());
            for (i, c) in level.iter().enumerate() {
                if k == 0 && (i == source.basepoint || c.vertices.is_empty()) {
                    out.push(CellImage::nondegenerate(0, target.basepoint));
                    continue;
                }
                let not_cellular = |why: &str| {
                    LoopspaceError::NotCellular(format!("{}: {why}", source.cell_name(k, i)))
                };
                if c.vertices.is_empty() {
                    return Err(not_cellular("cell has no vertex labels"));
                }
                let image: Vec<usize> = c.vertices.iter().map(|&v| vertex_map[v]).collect();
                if image.windows(2).any(|w| w[0] > w[1]) {
                    return Err(not_cellular("image vertices are not in order"));
                }
                let mut distinct = image.clone();
                distinct.dedup();
                let pattern = image
                    .iter()
                    .map(|v| distinct.binary_search(v).expect("present"))
                    .collect();
                let (dim, cell) = target
                    .lookup(&distinct)
                    .ok_or_else(|| not_cellular(&format!("no target cell {distinct:?}")))?;
                out.push(CellImage { dim, cell, pattern });
            }
            images.push(out);
        }
        CellularMap::new(source, target, images)
    }

    pub fn identity(k: Arc<PointedDeltaComplex>) -> Self {
        let images = k
            .cells
            .iter()
            .enumerate()
            .map(|(d, level)| (0..level.len()).map(|i| CellImage::nondegenerate(d, i)).collect())
            .collect();
        CellularMap::new_unchecked(k.clone(), k, images)
    }

    pub fn source(&self) -> &Arc<PointedDeltaComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PointedDeltaComplex> {
        &self.target
    }

    pub fn image(&self, k: usize, i: usize) -> &CellImage {
        &self.images[k][i]
    }

    pub fn images(&self) -> &[Vec<CellImage>] {
        &self.images
    }

    /// Replace one image without validation.
    pub fn with_image(mut self, k: usize, i: usize, image: CellImage) -> Self {
        self.images[k][i] = image;
        self
    }

    /// Every failed condition, naming a cell.
    pub fn violations(&self) -> Vec<String> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        if self.images.len() != s.cells.len()
            || self.images.iter().zip(&s.cells).any(|(a, b)| a.len() != b.len())
        {
            return vec!["image table does not match the source cells".into()];
        }
        for (k, level) in self.images.iter().enumerate() {
            for (i, img) in level.iter().enumerate() {
                let ok = img.dim <= k
                    && img.cell < t.num_cells(img.dim)
                    && img.pattern.len() == k + 1
                    && img.pattern.first() == Some(&0)
                    && img.pattern.last() == Some(&img.dim)
                    && img.pattern.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
                if !ok {
                    out.push(format!("{}: malformed image", s.cell_name(k, i)));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        if self.images[0][s.basepoint] != CellImage::nondegenerate(0, t.basepoint) {
            out.push("basepoint is not preserved".into());
        }
        for k in 1..self.images.len() {
            for i in 0..self.images[k].len() {
                for j in 0..=k {
                    let via_face = &self.images[k - 1][s.face(k, i, j)];
                    if *via_face != self.images[k][i].face(t, j) {
                        out.push(format!("{}: image does not commute with ∂_{j}", s.cell_name(k, i)));
                    }
                }
            }
        }
        out
    }

    /// `g∘f`, or `None` when the target of `f` is not the source of `g`.
    pub fn then(&self, g: &CellularMap) -> Option<CellularMap> {
        if !Arc::ptr_eq(&self.target, &g.source) && self.target != g.source {
            return None;
        }
        let images = self
            .images
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|img| {
                        let outer = &g.images[img.dim][img.cell];
                        CellImage {
                            dim: outer.dim,
                            cell: outer.cell,
                            pattern: img.pattern.iter().map(|&p| outer.pattern[p]).collect(),
                        }
                    })
                    .collect()
            })
            .collect();
        Some(CellularMap::new_unchecked(self.source.clone(), g.target.clone(), images))
    }

    /// `f ∨ g: K ∨ L → K' ∨ L'`.
    pub fn wedge(f: &CellularMap, g: &CellularMap) -> CellularMap {
        let source = Arc::new(wedge_complex(&f.source, &g.source));
        let target = Arc::new(wedge_complex(&f.target, &g.target));
        CellularMap::wedge_between(f, g, source, target)
    }

    /// `f ∨ g` with the wedge complexes supplied.
    pub fn wedge_between(
        f: &CellularMap,
        g: &CellularMap,
        source: Arc<PointedDeltaComplex>,
        target: Arc<PointedDeltaComplex>,
    ) -> CellularMap {
        let mut images: Vec<Vec<CellImage>> = vec![Vec::new(); source.cells.len()];
        for (d, level) in f.images.iter().enumerate() {
            images[d].extend(level.iter().cloned());
        }
        for (d, level) in g.images.iter().enumerate() {
            for (i, img) in level.iter().enumerate() {
                if d == 0 && i == g.source.basepoint {
                    continue;
                }
                images[d].push(CellImage {
                    dim: img.dim,
                    cell: right_id(&f.target, &g.target, img.dim, img.cell),
                    pattern: img.pattern.clone(),
                });
            }
        }
        CellularMap::new_unchecked(source, target, images)
    }

    /// The first cell on which two parallel maps differ.
    pub fn first_difference(&self, other: &CellularMap) -> Option<String> {
        for (k, (a, b)) in self.images.iter().zip(&other.images).enumerate() {
            for (i, (x, y)) in a.iter().zip(b).enumerate() {
                if x != y {
                    return Some(format!(
                        "{} ↦ {} vs {}",
                        self.source.cell_name(k, i),
                        x.describe(&self.target),
                        y.describe(&other.target)
                    ));
                }
            }
        }
        (self != other).then(|| "maps differ in source or target".into())
    }

    /// Inverse of a map that is a bijection on nondegenerate cells.
    pub fn inverse(&self) -> Option<CellularMap> {
        let t = &self.target;
        let mut images: Vec<Vec<Option<CellImage>>> =
            t.cells.iter().map(|level| vec![None; level.len()]).collect();
        for (k, level) in self.images.iter().enumerate() {
            for (i, img) in level.iter().enumerate() {
                if img.is_degenerate() || img.dim != k {
                    return None;
                }
                let slot = &mut images[k][img.cell];
                if slot.is_some() {
                    return None;
                }
                *slot = Some(CellImage::nondegenerate(k, i));
            }
        }
        let images = images
            .into_iter()
            .map(|level| level.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(CellularMap::new_unchecked(self.target.clone(), self.source.clone(), images))
    }

    /// Integer matrix of the induced chain map in degree `k`, rows indexed by
    /// target cells. Degenerate images contribute zero.
    pub fn chain_matrix(&self, k: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.source.num_cells(k)]; self.target.num_cells(k)];
        if let Some(level) = self.images.get(k) {
            for (i, img) in level.iter().enumerate() {
                if !img.is_degenerate() {
                    m[img.cell][i] += 1;
                }
            }
        }
        m
    }
}
