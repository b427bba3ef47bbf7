//! The augmented simplex category truncated at a bound: finite ordinals
//! `0..=N`, monotone maps between them, and ordinal sum.
//!
//! Ordinal `n` is the set `{1, ..., n}`; a morphism `m → n` is stored as the
//! weakly increasing list of its `m` values. The geometric side (vertex sets
//! `{0, ..., n}` of the n-simplex) is 0-based; see [`interval_dual`].

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoidal::{FiniteMonoidal, MonoidalCategory};

pub const DEFAULT_TRUNCATION: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("ordinal {0} exceeds the truncation bound {1}")]
    OutOfTruncation(usize, usize),
    #[error("not a monotone map {dom} → {cod}: {values:?}")]
    NotMonotone {
        dom: usize,
        cod: usize,
        values: Vec<usize>,
    },
    #[error("cannot compose {0} after {1}")]
    NotComposable(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexMorphism {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

impl fmt::Display for SimplexMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({}): {}→{}", vals.join(","), self.dom, self.cod)
    }
}

impl SimplexMorphism {
    pub fn new(dom: usize, cod: usize, values: Vec<usize>) -> Result<Self, SimplexError> {
        let ok = values.len() == dom
            && values.iter().all(|&v| (1..=cod).contains(&v))
            && values.windows(2).all(|w| w[0] <= w[1]);
        if !ok {
            return Err(SimplexError::NotMonotone { dom, cod, values });
        }
        Ok(SimplexMorphism { dom, cod, values })
    }

    pub fn identity(n: usize) -> Self {
        SimplexMorphism {
            dom: n,
            cod: n,
            values: (1..=n).collect(),
        }
    }

    /// The unique map `n → 1` (for `n ≥ 0`).
    pub fn collapse(n: usize) -> Self {
        SimplexMorphism {
            dom: n,
            cod: 1,
            values: vec![1; n],
        }
    }

    /// The unique map `0 → n`.
    pub fn from_empty(n: usize) -> Self {
        SimplexMorphism {
            dom: 0,
            cod: n,
            values: Vec::new(),
        }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        (1..=self.cod).all(|j| self.values.contains(&j))
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &SimplexMorphism) -> Result<SimplexMorphism, SimplexError> {
        if f.cod != self.dom {
            return Err(SimplexError::NotComposable(self.to_string(), f.to_string()));
        }
        Ok(SimplexMorphism {
            dom: f.dom,
            cod: self.cod,
            values: f.values.iter().map(|&i| self.values[i - 1]).collect(),
        })
    }

    /// Ordinal sum `self + g`: `(m+m') → (n+n')`.
    pub fn plus(&self, g: &SimplexMorphism) -> SimplexMorphism {
        let mut values = self.values.clone();
        values.extend(g.values.iter().map(|&v| v + self.cod));
        SimplexMorphism {
            dom: self.dom + g.dom,
            cod: self.cod + g.cod,
            values,
        }
    }

    /// The fibre of `j ∈ {1..n}`: the (contiguous) preimage as a range of
    /// 1-based positions.
    pub fn fibre(&self, j: usize) -> std::ops::Range<usize> {
        let start = self.values.iter().take_while(|&&v| v < j).count();
        let end = self.values.iter().take_while(|&&v| v <= j).count();
        (start + 1)..(end + 1)
    }
}

/// `d_f(j) = #{ i : f(i) ≤ j }` for `j ∈ {0, ..., n}`: a monotone map
/// `{0..n} → {0..m}` with `d(0) = 0` and `d(n) = m`. Contravariant:
/// `d_{g∘f} = d_f ∘ d_g`.
pub fn interval_dual(f: &SimplexMorphism) -> Vec<usize> {
    (0..=f.cod)
        .map(|j| f.values.iter().filter(|&&v| v <= j).count())
        .collect()
}

/// Inverse of [`interval_dual`]: recover `f: m → n` from an endpoint-preserving
/// monotone vertex map `{0..n} → {0..m}`.
pub fn from_interval_dual(m: usize, d: &[usize]) -> Option<SimplexMorphism> {
    let n = d.len().checked_sub(1)?;
    if d[0] != 0 || d[n] != m || d.windows(2).any(|w| w[0] > w[1]) {
        return None;
    }
    // f(i) = least j with d(j) ≥ i
    let values = (1..=m)
        .map(|i| (0..=n).find(|&j| d[j] >= i).unwrap())
        .collect();
    SimplexMorphism::new(m, n, values).ok()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|Hom(m, n)|` in the augmented simplex category.
pub fn hom_count(m: usize, n: usize) -> usize {
    match (m, n) {
        (0, _) => 1,
        (_, 0) => 0,
        _ => binomial(m + n - 1, m),
    }
}

/// Δ restricted to ordinals `0..=bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaTruncation {
    bound: usize,
}

impl Default for DeltaTruncation {
    fn default() -> Self {
        DeltaTruncation {
            bound: DEFAULT_TRUNCATION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub faces: Vec<SimplexMorphism>,
    pub degeneracies: Vec<SimplexMorphism>,
}

impl DeltaTruncation {
    pub fn new(bound: usize) -> Self {
        DeltaTruncation { bound }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check(&self, n: usize) -> Result<(), SimplexError> {
        if n > self.bound {
            Err(SimplexError::OutOfTruncation(n, self.bound))
        } else {
            Ok(())
        }
    }

    /// All monotone maps `m → n`, lexicographically ordered.
    pub fn enumerate_hom(&self, m: usize, n: usize) -> Result<Vec<SimplexMorphism>, SimplexError> {
        self.check(m)?;
        self.check(n)?;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<SimplexMorphism>) {
            if cur.len() == m {
                out.push(SimplexMorphism {
                    dom: m,
                    cod: n,
                    values: cur.clone(),
                });
                return;
            }
            for v in lo..=n {
                cur.push(v);
                rec(m, n, v, cur, out);
                cur.pop();
            }
        }
        rec(m, n, 1, &mut cur, &mut out);
        Ok(out)
    }

    /// Every morphism of the truncation, ordered by `(dom, cod, values)`.
    pub fn all_morphisms(&self) -> Vec<SimplexMorphism> {
        let mut out = Vec::new();
        for m in 0..=self.bound {
            for n in 0..=self.bound {
                out.extend(self.enumerate_hom(m, n).expect("within bound"));
            }
        }
        out
    }

    pub fn ordinal_sum(
        &self,
        f: &SimplexMorphism,
        g: &SimplexMorphism,
    ) -> Result<SimplexMorphism, SimplexError> {
        self.check(f.dom + g.dom)?;
        self.check(f.cod + g.cod)?;
        Ok(f.plus(g))
    }

    /// Faces `(m−1) → m` (injective) and degeneracies `(m+1) → m`
    /// (surjective), in lexicographic order.
    pub fn generators(&self, m: usize) -> Result<Generators, SimplexError> {
        self.check(m)?;
        let faces = if m == 0 {
            Vec::new()
        } else {
            self.enumerate_hom(m - 1, m)?
                .into_iter()
                .filter(|f| f.is_injective())
                .collect()
        };
        let degeneracies = if m == 0 || m + 1 > self.bound {
            Vec::new()
        } else {
            self.enumerate_hom(m + 1, m)?
                .into_iter()
                .filter(|f| f.is_surjective())
                .collect()
        };
        Ok(Generators {
            faces,
            degeneracies,
        })
    }

    /// A shortest path of generators (in order of application) composing to
    /// `f`, found by breadth-first search within the truncation.
    pub fn factor(&self, f: &SimplexMorphism) -> Option<Vec<SimplexMorphism>> {
        if f.is_identity() {
            return Some(Vec::new());
        }
        let mut gens = Vec::new();
        for m in 0..=self.bound {
            let g = self.generators(m).ok()?;
            gens.extend(g.faces);
            gens.extend(g.degeneracies);
        }
        let start = SimplexMorphism::identity(f.dom);
        let mut seen = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([(start, Vec::new())]);
        while let Some((cur, path)) = queue.pop_front() {
            for g in gens.iter().filter(|g| g.dom == cur.cod) {
                let next = g.after(&cur).expect("typed");
                if !seen.insert(next.clone()) {
                    continue;
                }
                let mut p: Vec<SimplexMorphism> = path.clone();
                p.push(g.clone());
                if next == *f {
                    return Some(p);
                }
                queue.push_back((next, p));
            }
        }
        None
    }

    /// Exhaustively check the hom-count formula, closure and associativity of
    /// composition, and the strict monoidal laws of ordinal sum. Returns the
    /// list of failures.
    #[allow(clippy::needless_range_loop)]
    pub fn check_invariants(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let n = self.bound;
        let homs: Vec<Vec<Vec<SimplexMorphism>>> = (0..=n)
            .map(|a| (0..=n).map(|b| self.enumerate_hom(a, b).unwrap()).collect())
            .collect();
        for a in 0..=n {
            for b in 0..=n {
                if homs[a][b].len() != hom_count(a, b) {
                    failures.push(format!(
                        "|Hom({a},{b})| = {} but the formula gives {}",
                        homs[a][b].len(),
                        hom_count(a, b)
                    ));
                }
            }
        }
        for a in 0..=n {
            for b in 0..=n {
                for f in &homs[a][b] {
                    if SimplexMorphism::identity(b).after(f).as_ref() != Ok(f)
                        || f.after(&SimplexMorphism::identity(a)).as_ref() != Ok(f)
                    {
                        failures.push(format!("identity law fails at {f}"));
                    }
                    for c in 0..=n {
                        for g in &homs[b][c] {
                            let gf = g.after(f).unwrap();
                            if !homs[a][c].contains(&gf) {
                                failures.push(format!("{g} ∘ {f} leaves Hom({a},{c})"));
                            }
                            for d in 0..=n {
                                for h in &homs[c][d] {
                                    if h.after(&gf) != h.after(g).unwrap().after(f) {
                                        failures.push(format!("associativity fails at {f},{g},{h}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        // ordinal sum: unit, identities, associativity, interchange
        let all = self.all_morphisms();
        let empty = SimplexMorphism::identity(0);
        for f in &all {
            if f.plus(&empty) != *f || empty.plus(f) != *f {
                failures.push(format!("unit law of ordinal sum fails at {f}"));
            }
            let d = interval_dual(f);
            if from_interval_dual(f.dom, &d).as_ref() != Some(f) {
                failures.push(format!("interval dual of {f} does not invert"));
            }
        }
        for a in 0..=n {
            for b in 0..=n - a {
                if SimplexMorphism::identity(a).plus(&SimplexMorphism::identity(b))
                    != SimplexMorphism::identity(a + b)
                {
                    failures.push(format!("id_{a} + id_{b} ≠ id_{}", a + b));
                }
            }
        }
        for f in &all {
            for g in &all {
                if f.dom + g.dom > n || f.cod + g.cod > n {
                    continue;
                }
                let fg = f.plus(g);
                for h in &all {
                    if fg.dom + h.dom <= n && fg.cod + h.cod <= n && fg.plus(h) != f.plus(&g.plus(h)) {
                        failures.push(format!("ordinal sum not associative at {f},{g},{h}"));
                    }
                }
                for f2 in homs[f.cod].iter().flatten() {
                    for g2 in homs[g.cod].iter().flatten() {
                        if f2.cod + g2.cod > n {
                            continue;
                        }
                        let lhs = f2.after(f).unwrap().plus(&g2.after(g).unwrap());
                        let rhs = f2.plus(g2).after(&fg).unwrap();
                        if lhs != rhs {
                            failures.push(format!("interchange fails at {f},{g},{f2},{g2}"));
                        }
                    }
                }
            }
        }
        // interval dual contravariance
        for f in &all {
            for g in all.iter().filter(|g| g.dom == f.cod) {
                let gf = g.after(f).unwrap();
                let (df, dg) = (interval_dual(f), interval_dual(g));
                let composed: Vec<usize> = dg.iter().map(|&j| df[j]).collect();
                if interval_dual(&gf) != composed {
                    failures.push(format!("interval dual not contravariant at {f},{g}"));
                }
            }
        }
        failures
    }
}

impl MonoidalCategory for DeltaTruncation {
    type Obj = usize;
    type Mor = SimplexMorphism;

    fn dom(&self, f: &SimplexMorphism) -> usize {
        f.dom
    }
    fn cod(&self, f: &SimplexMorphism) -> usize {
        f.cod
    }
    fn identity(&self, a: &usize) -> SimplexMorphism {
        SimplexMorphism::identity(*a)
    }
    fn compose(&self, g: &SimplexMorphism, f: &SimplexMorphism) -> Option<SimplexMorphism> {
        g.after(f).ok()
    }
    fn inverse(&self, f: &SimplexMorphism) -> Option<SimplexMorphism> {
        f.is_identity().then(|| f.clone())
    }
    fn unit(&self) -> usize {
        0
    }
    fn tensor_objects(&self, a: &usize, b: &usize) -> Option<usize> {
        (a + b <= self.bound).then_some(a + b)
    }
    fn tensor_morphisms(&self, f: &SimplexMorphism, g: &SimplexMorphism) -> Option<SimplexMorphism> {
        self.ordinal_sum(f, g).ok()
    }
    fn associator(&self, a: &usize, b: &usize, c: &usize) -> Option<SimplexMorphism> {
        (a + b + c <= self.bound).then(|| SimplexMorphism::identity(a + b + c))
    }
    fn left_unitor(&self, a: &usize) -> SimplexMorphism {
        SimplexMorphism::identity(*a)
    }
    fn right_unitor(&self, a: &usize) -> SimplexMorphism {
        SimplexMorphism::identity(*a)
    }
    fn describe_object(&self, a: &usize) -> String {
        a.to_string()
    }
    fn describe_morphism(&self, f: &SimplexMorphism) -> String {
        f.to_string()
    }
}

impl FiniteMonoidal for DeltaTruncation {
    fn all_objects(&self) -> Vec<usize> {
        (0..=self.bound).collect()
    }
    fn all_morphisms(&self) -> Vec<SimplexMorphism> {
        DeltaTruncation::all_morphisms(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(dom: usize, cod: usize, v: &[usize]) -> SimplexMorphism {
        SimplexMorphism::new(dom, cod, v.to_vec()).unwrap()
    }

    /// Brute force: every length-m word over 1..n, keep the monotone ones.
    fn brute_hom(m: usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let total = n.pow(m as u32);
        for code in 0..total {
            let mut c = code;
            let mut w = vec![0; m];
            for i in (0..m).rev() {
                w[i] = c % n + 1;
                c /= n;
            }
            if w.windows(2).all(|p| p[0] <= p[1]) {
                out.push(w);
            }
        }
        out
    }

    #[test]
    fn enumeration_examples() {
        let d = DeltaTruncation::default();
        assert_eq!(d.enumerate_hom(2, 1).unwrap(), vec![sm(2, 1, &[1, 1])]);
        assert_eq!(d.enumerate_hom(0, 0).unwrap(), vec![sm(0, 0, &[])]);
        let h22: Vec<Vec<usize>> = d
            .enumerate_hom(2, 2)
            .unwrap()
            .iter()
            .map(|f| f.values().to_vec())
            .collect();
        assert_eq!(h22, vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(h22, brute_hom(2, 2));
        assert!(d.enumerate_hom(5, 1).is_err());
        assert!(d.enumerate_hom(1, 0).unwrap().is_empty());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let d = DeltaTruncation::new(4);
        for m in 0..=4 {
            for n in 1..=4 {
                let got: Vec<Vec<usize>> = d
                    .enumerate_hom(m, n)
                    .unwrap()
                    .iter()
                    .map(|f| f.values().to_vec())
                    .collect();
                assert_eq!(got, brute_hom(m, n), "Hom({m},{n})");
                assert_eq!(got.len(), hom_count(m, n));
            }
        }
    }

    #[test]
    fn ordinal_sum_examples() {
        let d = DeltaTruncation::default();
        let id1 = SimplexMorphism::identity(1);
        assert_eq!(d.ordinal_sum(&id1, &id1).unwrap(), SimplexMorphism::identity(2));
        let bang = SimplexMorphism::collapse(2);
        assert_eq!(d.ordinal_sum(&bang, &id1).unwrap(), sm(3, 2, &[1, 1, 2]));
        let empty = SimplexMorphism::identity(0);
        assert_eq!(d.ordinal_sum(&bang, &empty).unwrap(), bang);
        let big = SimplexMorphism::identity(3);
        assert!(d.ordinal_sum(&big, &big).is_err());
    }

    #[test]
    fn interval_dual_examples() {
        let bang = SimplexMorphism::collapse(2);
        assert_eq!(interval_dual(&bang), vec![0, 2]);
        assert_eq!(interval_dual(&SimplexMorphism::identity(3)), vec![0, 1, 2, 3]);
        assert_eq!(interval_dual(&SimplexMorphism::from_empty(2)), vec![0, 0, 0]);
        // the inner faces 1 → 2
        assert_eq!(interval_dual(&sm(1, 2, &[1])), vec![0, 1, 1]);
        assert_eq!(interval_dual(&sm(1, 2, &[2])), vec![0, 0, 1]);
    }

    #[test]
    fn interval_dual_is_a_bijection_onto_endpoint_maps() {
        let d = DeltaTruncation::new(4);
        for m in 0..=4 {
            for n in 0..=4 {
                // count endpoint-preserving monotone maps {0..n} → {0..m}
                let mut count = 0;
                let total = (m + 1usize).pow(n as u32 + 1);
                for code in 0..total {
                    let mut c = code;
                    let mut v = vec![0; n + 1];
                    for x in v.iter_mut().rev() {
                        *x = c % (m + 1);
                        c /= m + 1;
                    }
                    if v[0] == 0 && v[n] == m && v.windows(2).all(|w| w[0] <= w[1]) {
                        count += 1;
                        assert!(from_interval_dual(m, &v).is_some());
                    }
                }
                assert_eq!(count, d.enumerate_hom(m, n).unwrap().len(), "({m},{n})");
            }
        }
    }

    #[test]
    fn generators_and_factorisation() {
        let d = DeltaTruncation::default();
        let g1 = d.generators(1).unwrap();
        assert_eq!(g1.faces, vec![sm(0, 1, &[])]);
        assert_eq!(g1.degeneracies, vec![sm(2, 1, &[1, 1])]);
        let g0 = d.generators(0).unwrap();
        assert!(g0.faces.is_empty() && g0.degeneracies.is_empty());
        for f in d.enumerate_hom(2, 2).unwrap() {
            let path = d.factor(&f).expect("factorisable");
            let composite = path
                .iter()
                .fold(SimplexMorphism::identity(2), |acc, g| g.after(&acc).unwrap());
            assert_eq!(composite, f);
        }
        for f in DeltaTruncation::new(3).all_morphisms() {
            assert!(DeltaTruncation::new(4).factor(&f).is_some(), "{f}");
        }
    }

    #[test]
    fn invariants_hold_up_to_four() {
        for n in 0..=4 {
            assert!(DeltaTruncation::new(n).check_invariants().is_empty());
        }
    }

    #[test]
    fn fibres_are_contiguous() {
        let f = sm(4, 3, &[1, 1, 3, 3]);
        assert_eq!(f.fibre(1), 1..3);
        assert_eq!(f.fibre(2), 3..3);
        assert_eq!(f.fibre(3), 3..5);
    }
}
