//! Integer chain complexes, Smith normal form and homology.

use serde::{Deserialize, Serialize};

use super::complex::{CellularMap, PointedDeltaComplex};
use super::LoopspaceError;

/// Integer matrix as a list of rows.
pub type Matrix = Vec<Vec<i64>>;

/// `∂_k: C_k → C_{k-1}` for `k ≥ 1`; `boundaries[k - 1]` has `ranks[k-1]`
/// rows and `ranks[k]` columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawChainComplex", into = "RawChainComplex")]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Matrix>,
}

impl TryFrom<RawChainComplex> for ChainComplex {
    type Error = LoopspaceError;
    fn try_from(raw: RawChainComplex) -> Result<Self, LoopspaceError> {
        ChainComplex::new(raw.ranks, raw.boundaries)
    }
}

impl From<ChainComplex> for RawChainComplex {
    fn from(c: ChainComplex) -> Self {
        RawChainComplex {
            ranks: c.ranks,
            boundaries: c.boundaries,
        }
    }
}

fn shape_ok(m: &Matrix, rows: usize, cols: usize) -> bool {
    m.len() == rows && m.iter().all(|r| r.len() == cols)
}

/// `a·b`, with `a` of size `r×n` and `b` of size `n×c`.
pub fn multiply(a: &Matrix, b: &Matrix, r: usize, n: usize, c: usize) -> Matrix {
    let mut out = vec![vec![0i64; c]; r];
    for i in 0..r {
        for k in 0..n {
            let x = a[i][k];
            if x != 0 {
                for j in 0..c {
                    out[i][j] += x * b[k][j];
                }
            }
        }
    }
    out
}

impl ChainComplex {
    /// Check shapes and `∂∂ = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Matrix>) -> Result<Self, LoopspaceError> {
        let bad = |s: String| LoopspaceError::InvalidComplex(s);
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(bad(format!(
                "{} ranks need {} boundary matrices",
                ranks.len(),
                ranks.len().saturating_sub(1)
            )));
        }
        for (k, m) in boundaries.iter().enumerate() {
            if !shape_ok(m, ranks[k], ranks[k + 1]) {
                return Err(bad(format!("∂_{} is not {}×{}", k + 1, ranks[k], ranks[k + 1])));
            }
        }
        let c = ChainComplex { ranks, boundaries };
        for k in 2..c.ranks.len() {
            let dd = multiply(c.boundary(k - 1), c.boundary(k), c.ranks[k - 2], c.ranks[k - 1], c.ranks[k]);
            if dd.iter().flatten().any(|&x| x != 0) {
                return Err(bad(format!("∂_{}∂_{k} ≠ 0", k - 1)));
            }
        }
        Ok(c)
    }

    /// Cellular chains with `∂ = Σ (-1)^i ∂_i`.
    pub fn from_complex(k: &PointedDeltaComplex) -> Self {
        let ranks: Vec<usize> = (0..=k.dimension()).map(|d| k.num_cells(d)).collect();
        let boundaries = (1..ranks.len())
            .map(|d| {
                let mut m = vec![vec![0i64; ranks[d]]; ranks[d - 1]];
                for i in 0..ranks[d] {
                    for j in 0..=d {
                        m[k.face(d, i, j)][i] += if j % 2 == 0 { 1 } else { -1 };
                    }
                }
                m
            })
            .collect();
        ChainComplex::new(ranks, boundaries).expect("simplicial identities give ∂∂ = 0")
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// `∂_k` for `1 ≤ k ≤ top degree`.
    pub fn boundary(&self, k: usize) -> &Matrix {
        &self.boundaries[k - 1]
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// The nonzero invariant factors of an integer matrix, in divisibility
/// order.
pub fn smith_invariants(m: &Matrix) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| (a[i][j].abs(), i, j));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let p = a[t][t];
        let mut clean = true;
        let pivot_row = a[t].clone();
        for row in a.iter_mut().skip(t + 1) {
            let q = row[t] / p;
            if q != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(t) {
                    *x -= q * y;
                }
            }
            clean &= row[t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / p;
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
        if let Some(i) = offender {
            let other = a[i].clone();
            for (x, y) in a[t].iter_mut().zip(&other).skip(t) {
                *x += y;
            }
            continue;
        }
        out.push(i64::try_from(p.abs()).expect("invariant factor fits in i64"));
        t += 1;
    }
    out
}

/// Homology in one degree: free rank and torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub betti: usize,
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|d| !d.torsion.is_empty())
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(|d| d.betti == 0 && d.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(k, d)| if k % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) })
            .sum()
    }
}

pub fn homology(c: &ChainComplex) -> HomologyReport {
    let top = c.top_degree();
    let invariants: Vec<Vec<i64>> = (1..=top).map(|k| smith_invariants(c.boundary(k))).collect();
    // rank of ∂_k, with ∂_0 = ∂_{top+1} = 0
    let rank = |k: usize| if k == 0 || k > top { 0 } else { invariants[k - 1].len() };
    let degrees = (0..=top)
        .map(|k| DegreeHomology {
            betti: c.rank(k) - rank(k) - rank(k + 1),
            torsion: if k < top {
                invariants[k].iter().copied().filter(|&d| d > 1).collect()
            } else {
                Vec::new()
            },
        })
        .collect();
    HomologyReport { degrees }
}

/// Matrices of a chain map `C → D`, one per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub matrices: Vec<Matrix>,
}

impl ChainMap {
    pub fn from_cellular(f: &CellularMap) -> Self {
        let source = ChainComplex::from_complex(f.source());
        let target = ChainComplex::from_complex(f.target());
        let matrices = (0..=source.top_degree()).map(|k| f.chain_matrix(k)).collect();
        ChainMap {
            source,
            target,
            matrices,
        }
    }

    /// Degrees `k` in which `f_{k-1}∂_k ≠ ∂_k f_k`.
    pub fn non_commuting_degrees(&self) -> Vec<usize> {
        let (c, d) = (&self.source, &self.target);
        (1..=c.top_degree())
            .filter(|&k| {
                let fk = &self.matrices[k];
                let left = multiply(&self.matrices[k - 1], c.boundary(k), d.rank(k - 1), c.rank(k - 1), c.rank(k));
                let right = if k <= d.top_degree() {
                    multiply(d.boundary(k), fk, d.rank(k - 1), d.rank(k), c.rank(k))
                } else {
                    vec![vec![0; c.rank(k)]; d.rank(k - 1)]
                };
                left != right
            })
            .collect()
    }

    /// The mapping cone: `Cone_k = C_{k-1} ⊕ D_k`, `∂(c, d) = (-∂c, f c + ∂d)`.
    pub fn cone(&self) -> ChainComplex {
        let (c, d) = (&self.source, &self.target);
        let top = (c.top_degree() + 1).max(d.top_degree());
        let cr = |k: usize| if k == 0 { 0 } else { c.rank(k - 1) };
        let ranks: Vec<usize> = (0..=top).map(|k| cr(k) + d.rank(k)).collect();
        let boundaries = (1..=top)
            .map(|k| {
                let mut m = vec![vec![0i64; ranks[k]]; ranks[k - 1]];
                let (src_c, tgt_c) = (cr(k), cr(k - 1));
                // -∂^C_{k-1}: C_{k-1} → C_{k-2}
                if k >= 2 && k - 1 <= c.top_degree() {
                    let b = c.boundary(k - 1);
                    for i in 0..tgt_c {
                        for j in 0..src_c {
                            m[i][j] = -b[i][j];
                        }
                    }
                }
                // f_{k-1}: C_{k-1} → D_{k-1}
                if k - 1 < self.matrices.len() {
                    let f = &self.matrices[k - 1];
                    for i in 0..d.rank(k - 1) {
                        for j in 0..src_c {
                            m[tgt_c + i][j] = f[i][j];
                        }
                    }
                }
                // ∂^D_k: D_k → D_{k-1}
                if k <= d.top_degree() {
                    let b = d.boundary(k);
                    for i in 0..d.rank(k - 1) {
                        for j in 0..d.rank(k) {
                            m[tgt_c + i][src_c + j] = b[i][j];
                        }
                    }
                }
                m
            })
            .collect();
        ChainComplex::new(ranks, boundaries).expect("cone of a chain map is a complex")
    }
}

/// Per-degree evidence for a quasi-isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiIsoDegree {
    pub degree: usize,
    pub source_betti: usize,
    pub target_betti: usize,
    /// Homology of the mapping cone in this degree; it vanishes in every
    /// degree exactly when the map is a quasi-isomorphism.
    pub cone: DegreeHomology,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiIsoReport {
    pub degrees: Vec<QuasiIsoDegree>,
}

impl QuasiIsoReport {
    pub fn passed(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.cone.betti == 0 && d.cone.torsion.is_empty())
    }

    /// Degrees where the cone has homology.
    pub fn failing_degrees(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .filter(|d| d.cone.betti != 0 || !d.cone.torsion.is_empty())
            .map(|d| d.degree)
            .collect()
    }
}

/// Homology-level test that a cellular map is an equivalence: the mapping
/// cone of its chain map must be acyclic over the integers.
pub fn check_quasi_iso(f: &CellularMap) -> QuasiIsoReport {
    let chain = ChainMap::from_cellular(f);
    let hs = homology(&chain.source);
    let ht = homology(&chain.target);
    let hc = homology(&chain.cone());
    let betti = |h: &HomologyReport, k: usize| h.degrees.get(k).map_or(0, |d| d.betti);
    let degrees = hc
        .degrees
        .iter()
        .enumerate()
        .map(|(k, cone)| QuasiIsoDegree {
            degree: k,
            source_betti: betti(&hs, k),
            target_betti: betti(&ht, k),
            cone: cone.clone(),
        })
        .collect();
    QuasiIsoReport { degrees }
}
