//! Root systems of finite and affine ADE type.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::graph::{build_graph, DynkinGraph};
use crate::vector::{DimVector, Weight};

/// Root data generated from a Dynkin or extended Dynkin graph.
///
/// For a finite graph `positive` is the full list of positive roots. For an
/// affine graph it holds the positive roots of the finite subsystem on
/// `I' = I - {p}` embedded in `Z[I]`; affine roots are produced on demand,
/// since there are infinitely many.
#[derive(Debug, Clone)]
pub struct RootSystem {
    graph: DynkinGraph,
    cartan: Vec<Vec<i32>>,
    positive: Vec<DimVector>,
    lookup: HashSet<Weight>,
    delta: Option<DimVector>,
}

impl RootSystem {
    pub fn new(graph: DynkinGraph) -> Self {
        let cartan = graph.cartan();
        let n = graph.n_vertices();
        if let Some(p) = graph.extending_vertex() {
            let fin = graph.finite_part().expect("affine graph has a finite part");
            let keep = graph.finite_vertices();
            let fin_roots = reflection_closure(&fin.cartan());
            let positive: Vec<DimVector> = fin_roots
                .into_iter()
                .map(|r| {
                    let mut w = vec![0; n];
                    for (k, &v) in keep.iter().enumerate() {
                        w[v] = r[k];
                    }
                    DimVector::new(w).expect("positive root")
                })
                .collect();
            let highest = positive.last().expect("nonempty root system").clone();
            let mut delta = highest.into_weight();
            let mut coords = delta.coords().to_vec();
            coords[p] = 1;
            delta = Weight::new(coords);
            let lookup = positive.iter().map(|r| r.as_weight().clone()).collect();
            RootSystem {
                graph,
                cartan,
                positive,
                lookup,
                delta: Some(delta.into_dim().expect("delta is nonnegative")),
            }
        } else {
            let positive: Vec<DimVector> = reflection_closure(&cartan)
                .into_iter()
                .map(|r| DimVector::new(r).expect("positive root"))
                .collect();
            let lookup = positive.iter().map(|r| r.as_weight().clone()).collect();
            RootSystem {
                graph,
                cartan,
                positive,
                lookup,
                delta: None,
            }
        }
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Ok(Self::new(build_graph(label)?))
    }

    pub fn graph(&self) -> &DynkinGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.n_vertices()
    }

    pub fn is_affine(&self) -> bool {
        self.graph.is_affine()
    }

    pub fn delta(&self) -> Option<&DimVector> {
        self.delta.as_ref()
    }

    pub fn simple_root(&self, i: usize) -> DimVector {
        DimVector::unit(self.rank(), i)
    }

    /// The bilinear extension of `i·j`.
    pub fn pairing(&self, a: &[i32], b: &[i32]) -> i32 {
        let mut s = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                s += ai * self.cartan[i][j] * bj;
            }
        }
        s
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Positive roots of a finite system, in canonical order. For an affine
    /// system these are the positive roots of the finite subsystem on `I'`.
    pub fn finite_positive_roots(&self) -> &[DimVector] {
        &self.positive
    }

    /// The maximal root of a finite system.
    pub fn highest_root(&self) -> &DimVector {
        self.positive.last().expect("nonempty root system")
    }

    /// All positive roots. Finite systems ignore `max_height`; affine systems
    /// require it and return every real and imaginary positive root of height
    /// at most `max_height`.
    pub fn positive_roots(&self, max_height: Option<u32>) -> Result<Vec<DimVector>> {
        if !self.is_affine() {
            return Ok(self.positive.clone());
        }
        let h = max_height.ok_or_else(|| Error::input("affine root systems need a height cutoff"))?;
        let delta = self.delta.as_ref().expect("affine");
        let dh = delta.height() as u32;
        let max_n = h / dh + 1;
        let mut out: BTreeSet<DimVector> = BTreeSet::new();
        for n in 0..=max_n as i32 {
            for r in self.real_roots_at_level(n) {
                if r.height() as u32 <= h {
                    out.insert(r);
                }
            }
            if n >= 1 && (n as u32) * dh <= h {
                out.insert(DimVector::try_from(delta.scale(n)).expect("nonnegative"));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Affine real roots `a + n·delta` for a fixed `n` (`a` ranges over the
    /// finite roots, negative ones only when `n >= 1`).
    fn real_roots_at_level(&self, n: i32) -> Vec<DimVector> {
        let delta = self.delta.as_ref().expect("affine").scale(n);
        let mut out = Vec::new();
        for a in &self.positive {
            out.push(DimVector::try_from(&delta + a.as_weight()).expect("nonnegative"));
            if n >= 1 {
                out.push(DimVector::try_from(&delta - a.as_weight()).expect("nonnegative"));
            }
        }
        out
    }

    /// Positive roots `alpha <= bound` (componentwise). For affine systems
    /// this is the truncation used by the graded checks; imaginary roots are
    /// included.
    pub fn positive_roots_below(&self, bound: &Weight) -> Vec<DimVector> {
        if !self.is_affine() {
            return self.positive.iter().filter(|r| r.dominated_by(bound)).cloned().collect();
        }
        let delta = self.delta.as_ref().expect("affine");
        let p = self.graph.extending_vertex().expect("affine");
        let max_n = bound[p].max(0);
        let mut out: BTreeSet<DimVector> = BTreeSet::new();
        for n in 0..=max_n {
            for r in self.real_roots_at_level(n) {
                if r.dominated_by(bound) {
                    out.insert(r);
                }
            }
            if n >= 1 {
                let m = DimVector::try_from(delta.scale(n)).expect("nonnegative");
                if m.dominated_by(bound) {
                    out.insert(m);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Whether `w` is a (positive or negative) real root.
    pub fn is_real_root(&self, w: &[i32]) -> bool {
        if self.is_affine() {
            let nonzero = w.iter().any(|&c| c != 0);
            let signed = w.iter().all(|&c| c >= 0) || w.iter().all(|&c| c <= 0);
            nonzero && signed && self.pairing(w, w) == 2
        } else {
            let v = Weight::new(w.to_vec());
            self.lookup.contains(&v) || self.lookup.contains(&-&v)
        }
    }

    pub fn is_positive_real_root(&self, w: &[i32]) -> bool {
        w.iter().all(|&c| c >= 0) && self.is_real_root(w)
    }

    /// `Some(m)` when `w = m·delta` with `m != 0`.
    pub fn imaginary_multiple(&self, w: &[i32]) -> Option<i32> {
        let delta = self.delta.as_ref()?;
        let p = self.graph.extending_vertex()?;
        let m = w[p];
        (m != 0 && delta.scale(m).coords() == w).then_some(m)
    }

    /// Whether `w` is a positive root (real, or a positive multiple of delta).
    pub fn is_positive_root(&self, w: &[i32]) -> bool {
        self.is_positive_real_root(w) || self.imaginary_multiple(w).is_some_and(|m| m > 0)
    }

    /// Image of `w` in `Z[I'] = Z[I]/Z·delta`: subtracts `w_p·delta`, so the
    /// extending coordinate becomes zero.
    pub fn finite_class(&self, w: &[i32]) -> Weight {
        match (self.delta.as_ref(), self.graph.extending_vertex()) {
            (Some(delta), Some(p)) => &Weight::new(w.to_vec()) - &delta.scale(w[p]),
            _ => Weight::new(w.to_vec()),
        }
    }

    /// Parses a root argument: coordinates, or `highest` for the maximal root
    /// of a finite system (`delta` for an affine one).
    pub fn parse_root(&self, s: &str) -> Result<DimVector> {
        match s.trim() {
            "highest" | "theta" | "max" => {
                if let Some(delta) = &self.delta {
                    Ok(delta.clone())
                } else {
                    Ok(self.highest_root().clone())
                }
            }
            "delta" => self
                .delta
                .clone()
                .ok_or_else(|| Error::input("delta is only defined for affine types")),
            other => DimVector::parse(other, self.rank()),
        }
    }

    /// Checks that a sequence of vertices is a presentation: every partial
    /// sum `α_{k_1} + ... + α_{k_j}` is a positive root.
    pub fn check_presentation(&self, presentation: &[usize]) -> Result<Weight> {
        if presentation.is_empty() {
            return Err(Error::input("empty presentation"));
        }
        let mut acc = Weight::zero(self.rank());
        for (j, &k) in presentation.iter().enumerate() {
            if k >= self.rank() {
                return Err(Error::input(format!("vertex index {k} out of range")));
            }
            acc = &acc + self.simple_root(k).as_weight();
            if !self.is_positive_root(&acc) {
                return Err(Error::input(format!(
                    "partial sum {} of presentation {:?} (step {}) is not a root",
                    acc,
                    presentation,
                    j + 1
                )));
            }
        }
        Ok(acc)
    }

    /// Every presentation of `alpha` as an ordered sequence of simple roots
    /// whose partial sums are roots, in lexicographic order.
    pub fn presentations(&self, alpha: &[i32]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut acc = Vec::new();
        self.extend_presentations(&Weight::zero(self.rank()), alpha, &mut acc, &mut out);
        out
    }

    /// The lexicographically first presentation of a positive root.
    pub fn first_presentation(&self, alpha: &[i32]) -> Result<Vec<usize>> {
        if !self.is_positive_root(alpha) {
            return Err(Error::input(format!("{} is not a positive root", Weight::from(alpha.to_vec()))));
        }
        let mut acc = Vec::new();
        let mut sum = Weight::zero(self.rank());
        while sum.coords() != alpha {
            let k = (0..self.rank())
                .find(|&k| {
                    sum[k] < alpha[k] && {
                        let next = &sum + self.simple_root(k).as_weight();
                        self.is_positive_root(&next) && self.completes(&next, alpha)
                    }
                })
                .ok_or_else(|| Error::internal("no presentation extends"))?;
            sum = &sum + self.simple_root(k).as_weight();
            acc.push(k);
        }
        Ok(acc)
    }

    /// Whether `target − from` can be added one simple root at a time through
    /// roots. Every positive root below a root is connected to it this way,
    /// so this holds whenever `from ≤ target` are both roots.
    fn completes(&self, from: &Weight, target: &[i32]) -> bool {
        from.iter().zip(target).all(|(a, b)| a <= b)
    }

    fn extend_presentations(&self, sum: &Weight, target: &[i32], acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if sum.coords() == target {
            out.push(acc.clone());
            return;
        }
        for k in 0..self.rank() {
            if sum[k] >= target[k] {
                continue;
            }
            let next = &sum.clone() + self.simple_root(k).as_weight();
            if self.is_positive_root(&next) {
                acc.push(k);
                self.extend_presentations(&next, target, acc, out);
                acc.pop();
            }
        }
    }

    /// Simple reflection `s_i(w) = w - (w, alpha_i) alpha_i`.
    pub fn reflect(&self, w: &[i32], i: usize) -> Weight {
        let c: i32 = w.iter().enumerate().map(|(j, &wj)| wj * self.cartan[j][i]).sum();
        let mut out = w.to_vec();
        out[i] -= c;
        Weight::new(out)
    }
}

/// Closes the simple roots under simple reflections and keeps the positive
/// ones. Returns them in canonical order.
fn reflection_closure(cartan: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = cartan.len();
    let simple: Vec<Vec<i32>> = (0..n)
        .map(|i| (0..n).map(|j| i32::from(i == j)).collect())
        .collect();
    let mut seen: HashSet<Vec<i32>> = simple.iter().cloned().collect();
    let mut frontier = simple;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for i in 0..n {
                let c: i32 = (0..n).map(|j| r[j] * cartan[j][i]).sum();
                let mut s = r.clone();
                s[i] -= c;
                if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x != 0) && seen.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Weight> = seen.into_iter().map(Weight::new).collect();
    out.sort();
    out.into_iter().map(|w| w.coords().to_vec()).collect()
}
