//! Simply-laced Dynkin and extended Dynkin graphs.
//!
//! Vertex labels follow fixed conventions so that root encodings are stable:
//!
//! * `A_n`: labels `1..=n` along the chain.
//! * `D_n`: center `0`, short legs `1` and `2`, long chain `3, 4, ...` hanging
//!   off the center.
//! * `E_n`: Bourbaki labels `1..=n` (chain `1-3-4-5-...`, with `2` on `4`).
//! * Affine types add the extending vertex `0`. `A~n` is the cycle
//!   `0-1-...-n-0` (two parallel edges for `A~1`); `D~n` has leaves `0,1` on
//!   vertex `4`, leaves `2,3` on vertex `n`, and the chain `4-...-n`; `E~6`,
//!   `E~7`, `E~8` attach `0` to `2`, `1`, `8` respectively.
//!
//! Internally vertices are indexed by position in ascending label order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphKind {
    Finite,
    Affine,
}

/// One of the two orientations of an edge: an element of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub edge: usize,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    /// The involution `h -> h̄`.
    pub fn reversed(&self) -> Arrow {
        Arrow {
            edge: self.edge,
            source: self.target,
            target: self.source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinGraph {
    name: String,
    family: Family,
    rank: usize,
    kind: GraphKind,
    labels: Vec<u32>,
    edges: Vec<(usize, usize)>,
    extending: Option<usize>,
}

const AFFINE_LIMITS: [(Family, usize, usize); 3] = [(Family::A, 1, 8), (Family::D, 4, 8), (Family::E, 6, 8)];
const MAX_FINITE_RANK: usize = 16;

/// Parses a type label such as `A3`, `D4`, `E6`, `A~2` or `D~4`.
pub fn build_graph(label: &str) -> Result<DynkinGraph> {
    let bad = || Error::input(format!("unknown Dynkin type `{label}`"));
    let s = label.trim();
    let mut chars = s.chars();
    let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => Family::A,
        Some('D') => Family::D,
        Some('E') => Family::E,
        _ => return Err(bad()),
    };
    let rest = chars.as_str();
    let (affine, digits) = match rest.strip_prefix('~') {
        Some(d) => (true, d),
        None => (false, rest),
    };
    let rank: usize = digits.parse().map_err(|_| bad())?;
    if affine {
        let (_, lo, hi) = AFFINE_LIMITS
            .iter()
            .find(|(f, _, _)| *f == family)
            .copied()
            .ok_or_else(bad)?;
        if rank < lo || rank > hi {
            return Err(Error::input(format!(
                "affine type `{label}` outside supported ranks {lo}..={hi}"
            )));
        }
        Ok(affine_graph(family, rank))
    } else {
        let ok = match family {
            Family::A => (1..=MAX_FINITE_RANK).contains(&rank),
            Family::D => (4..=MAX_FINITE_RANK).contains(&rank),
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(bad());
        }
        Ok(finite_graph(family, rank))
    }
}

fn finite_graph(family: Family, rank: usize) -> DynkinGraph {
    let (labels, label_edges): (Vec<u32>, Vec<(u32, u32)>) = match family {
        Family::A => {
            let labels = (1..=rank as u32).collect();
            let edges = (1..rank as u32).map(|i| (i, i + 1)).collect();
            (labels, edges)
        }
        Family::D => {
            let labels = (0..rank as u32).collect();
            let mut edges = vec![(0, 1), (0, 2), (0, 3)];
            edges.extend((3..rank as u32 - 1).map(|i| (i, i + 1)));
            (labels, edges)
        }
        Family::E => {
            let labels = (1..=rank as u32).collect();
            let mut edges = vec![(1, 3), (2, 4)];
            edges.extend((3..rank as u32).map(|i| (i, i + 1)));
            (labels, edges)
        }
    };
    assemble(family, rank, GraphKind::Finite, labels, &label_edges, None)
}

fn affine_graph(family: Family, rank: usize) -> DynkinGraph {
    let n = rank as u32;
    let mut label_edges: Vec<(u32, u32)> = match family {
        Family::A => {
            let mut e: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
            e.push((0, n));
            e
        }
        Family::D => {
            let mut e = vec![(0, 4), (1, 4), (2, n), (3, n)];
            e.extend((4..n).map(|i| (i, i + 1)));
            e
        }
        Family::E => {
            let mut e = vec![(1, 3), (2, 4)];
            e.extend((3..n).map(|i| (i, i + 1)));
            let anchor = match rank {
                6 => 2,
                7 => 1,
                _ => 8,
            };
            e.push((0, anchor));
            e
        }
    };
    label_edges.sort();
    let labels = (0..=n).collect();
    assemble(family, rank, GraphKind::Affine, labels, &label_edges, Some(0))
}

fn assemble(
    family: Family,
    rank: usize,
    kind: GraphKind,
    labels: Vec<u32>,
    label_edges: &[(u32, u32)],
    extending_label: Option<u32>,
) -> DynkinGraph {
    let idx = |l: u32| labels.iter().position(|&x| x == l).expect("edge label is a vertex");
    let edges = label_edges
        .iter()
        .map(|&(a, b)| {
            let (i, j) = (idx(a), idx(b));
            (i.min(j), i.max(j))
        })
        .collect();
    let fam = match family {
        Family::A => "A",
        Family::D => "D",
        Family::E => "E",
    };
    let name = match kind {
        GraphKind::Finite => format!("{fam}{rank}"),
        GraphKind::Affine => format!("{fam}~{rank}"),
    };
    DynkinGraph {
        name,
        family,
        rank,
        kind,
        extending: extending_label.map(idx),
        labels,
        edges,
    }
}

impl DynkinGraph {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Rank of the underlying finite type (`n` in `A_n` or `A~n`).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn is_affine(&self) -> bool {
        self.kind == GraphKind::Affine
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, vertex: usize) -> u32 {
        self.labels[vertex]
    }

    pub fn vertex_of(&self, label: u32) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::input(format!("{} has no vertex labelled {label}", self.name)))
    }

    /// Edges as index pairs `(i, j)` with `i < j`; parallel edges repeat.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn extending_vertex(&self) -> Option<usize> {
        self.extending
    }

    /// Number of edges joining `i` and `j`.
    pub fn edge_count(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// The full oriented edge set `H`, two arrows per edge.
    pub fn arrows(&self) -> Vec<Arrow> {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(edge, &(a, b))| {
                let h = Arrow {
                    edge,
                    source: a,
                    target: b,
                };
                [h, h.reversed()]
            })
            .collect()
    }

    /// The symmetric pairing matrix `i·j` (2 on the diagonal, minus the
    /// number of edges off it).
    pub fn cartan(&self) -> Vec<Vec<i32>> {
        let n = self.n_vertices();
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in &self.edges {
            c[a][b] -= 1;
            c[b][a] -= 1;
        }
        c
    }

    /// The finite graph obtained by deleting the extending vertex, with the
    /// original labels kept. Vertex `k` of the result corresponds to
    /// `finite_vertices()[k]` of `self`.
    pub fn finite_part(&self) -> Option<DynkinGraph> {
        let p = self.extending?;
        let keep = self.finite_vertices();
        let labels: Vec<u32> = keep.iter().map(|&v| self.labels[v]).collect();
        let label_edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != p && b != p)
            .map(|&(a, b)| (self.labels[a], self.labels[b]))
            .collect();
        Some(assemble(self.family, self.rank, GraphKind::Finite, labels, &label_edges, None))
    }

    /// Vertices other than the extending vertex (`I'`); all vertices for a
    /// finite graph.
    pub fn finite_vertices(&self) -> Vec<usize> {
        (0..self.n_vertices()).filter(|&v| Some(v) != self.extending).collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Display for DynkinGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let a2 = build_graph("A2").unwrap();
        assert_eq!(a2.n_vertices(), 2);
        assert_eq!(a2.edges().len(), 1);

        let a1 = build_graph("A~1").unwrap();
        assert_eq!(a1.n_vertices(), 2);
        assert_eq!(a1.edges(), &[(0, 1), (0, 1)]);
        assert_eq!(a1.arrows().len(), 4);

        let d4 = build_graph("D4").unwrap();
        assert_eq!(d4.n_vertices(), 4);
        assert_eq!(d4.edges().len(), 3);
        assert!(d4.edges().iter().all(|&(a, _)| a == d4.vertex_of(0).unwrap()));
    }

    #[test]
    fn d5_matches_the_figure() {
        let d5 = build_graph("D5").unwrap();
        let lab = |(a, b): (usize, usize)| (d5.label(a), d5.label(b));
        let edges: Vec<_> = d5.edges().iter().map(|&e| lab(e)).collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (3, 4)]);
    }

    #[test]
    fn unknown_labels_are_input_errors() {
        for bad in ["B3", "A0", "D3", "E9", "A~9", "D~3", "E~5", "", "A~", "Ax"] {
            assert!(matches!(build_graph(bad), Err(Error::Input(_))), "{bad}");
        }
    }

    #[test]
    fn structural_invariants() {
        for name in [
            "A1", "A2", "A5", "D4", "D6", "E6", "E7", "E8", "A~1", "A~2", "A~4", "D~4", "D~5", "D~8", "E~6",
            "E~7", "E~8",
        ] {
            let g = build_graph(name).unwrap();
            assert_eq!(g.name(), name);
            assert!(g.edges().iter().all(|&(a, b)| a != b), "{name} has a loop");
            assert!(g.is_connected(), "{name}");
            let arrows = g.arrows();
            for h in &arrows {
                assert_ne!(*h, h.reversed());
                assert_eq!(h.reversed().reversed(), *h);
                assert!(arrows.contains(&h.reversed()));
            }
            let expected_vertices = g.rank() + usize::from(g.is_affine());
            assert_eq!(g.n_vertices(), expected_vertices, "{name}");
            // Trees, except for the affine A cycles.
            let expected_edges = if g.is_affine() && g.family() == Family::A {
                g.n_vertices()
            } else {
                g.n_vertices() - 1
            };
            assert_eq!(g.edges().len(), expected_edges, "{name}");
            if let Some(fin) = g.finite_part() {
                assert!(fin.is_connected());
                assert_eq!(fin.n_vertices(), g.rank());
                assert_eq!(fin.edges().len(), g.rank() - 1);
            }
        }
    }
}
