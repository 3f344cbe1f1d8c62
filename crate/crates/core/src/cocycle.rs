//! Orientations and the ±1-valued cocycle attached to one.
//!
//! The bilinear form used here is
//! `<a, b>_Ω = Σ_i a_i b_i − Σ_{h ∈ Ω} a_{target(h)} b_{source(h)}`,
//! the transpose of the usual Euler form of the quiver `(I, Ω)`. Its
//! symmetrization is the Cartan pairing, and `<a, a>_Ω = 1` on real roots,
//! so `ε_Ω(a, b) = (−1)^{<a, b>_Ω}` is a bimultiplicative cocycle with
//! `ε(a, a) = −1` on every real root.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Arrow, DynkinGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, |a, b| a * b)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A choice of one arrow per edge. `forward[e]` means edge `e = (a, b)`
/// (with `a < b`) points from `a` to `b`, i.e. toward the higher label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    graph: DynkinGraph,
    forward: Vec<bool>,
}

impl Orientation {
    pub fn new(graph: &DynkinGraph, forward: Vec<bool>) -> Result<Self> {
        if forward.len() != graph.edges().len() {
            return Err(Error::input(format!(
                "orientation of {} needs {} edge directions, got {}",
                graph,
                graph.edges().len(),
                forward.len()
            )));
        }
        Ok(Orientation {
            graph: graph.clone(),
            forward,
        })
    }

    /// Every edge pointing toward its higher-labelled endpoint.
    pub fn reference(graph: &DynkinGraph) -> Self {
        Orientation {
            graph: graph.clone(),
            forward: vec![true; graph.edges().len()],
        }
    }

    /// Parses `i>j,k>l,...` in vertex labels; each edge must appear once.
    pub fn parse(graph: &DynkinGraph, s: &str) -> Result<Self> {
        let mut forward: Vec<Option<bool>> = vec![None; graph.edges().len()];
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = tok
                .split_once('>')
                .ok_or_else(|| Error::input(format!("bad arrow `{tok}`, expected `i>j`")))?;
            let parse_label = |x: &str| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::input(format!("bad vertex label `{x}`")))
            };
            let src = graph.vertex_of(parse_label(a)?)?;
            let tgt = graph.vertex_of(parse_label(b)?)?;
            let key = (src.min(tgt), src.max(tgt));
            let slot = graph
                .edges()
                .iter()
                .enumerate()
                .position(|(e, &edge)| edge == key && forward[e].is_none())
                .ok_or_else(|| Error::input(format!("arrow `{tok}` matches no unassigned edge of {graph}")))?;
            forward[slot] = Some(src < tgt);
        }
        let forward = forward
            .into_iter()
            .collect::<Option<Vec<bool>>>()
            .ok_or_else(|| Error::input(format!("orientation `{s}` leaves edges of {graph} unoriented")))?;
        Orientation::new(graph, forward)
    }

    pub fn graph(&self) -> &DynkinGraph {
        &self.graph
    }

    pub fn forward(&self) -> &[bool] {
        &self.forward
    }

    /// The arrows of `Ω`, one per edge, in edge order.
    pub fn arrows(&self) -> Vec<Arrow> {
        self.graph
            .edges()
            .iter()
            .zip(&self.forward)
            .enumerate()
            .map(|(edge, (&(a, b), &fwd))| {
                let (source, target) = if fwd { (a, b) } else { (b, a) };
                Arrow { edge, source, target }
            })
            .collect()
    }

    /// The arrows of `Ω̄`.
    pub fn opposite_arrows(&self) -> Vec<Arrow> {
        self.arrows().iter().map(Arrow::reversed).collect()
    }

    /// The opposite orientation `Ω̄`.
    pub fn opposite(&self) -> Orientation {
        Orientation {
            graph: self.graph.clone(),
            forward: self.forward.iter().map(|f| !f).collect(),
        }
    }

    /// Arrows shared with `other` (as arrows of `other`, in edge order).
    pub fn common_arrows(&self, other: &Orientation) -> Vec<Arrow> {
        other
            .arrows()
            .into_iter()
            .filter(|h| self.forward[h.edge] == other.forward[h.edge])
            .collect()
    }

    /// `i>j,...` in vertex labels, edge order.
    pub fn encode(&self) -> String {
        self.arrows()
            .iter()
            .map(|h| format!("{}>{}", self.graph.label(h.source), self.graph.label(h.target)))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows().iter().all(|h| h.source != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows().iter().all(|h| h.target != v)
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// All `2^#edges` orientations; bit `e` of the index set means edge `e` is
/// reversed, so index 0 is [`Orientation::reference`].
pub fn all_orientations(graph: &DynkinGraph) -> Vec<Orientation> {
    let m = graph.edges().len();
    (0u64..1 << m)
        .map(|mask| Orientation {
            graph: graph.clone(),
            forward: (0..m).map(|e| mask >> e & 1 == 0).collect(),
        })
        .collect()
}

/// The cocycle `ε_Ω` of an orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    orientation: Orientation,
    arrows: Vec<Arrow>,
}

impl Cocycle {
    pub fn new(orientation: &Orientation) -> Self {
        Cocycle {
            arrows: orientation.arrows(),
            orientation: orientation.clone(),
        }
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// `<a, b>_Ω`.
    pub fn euler_form(&self, a: &[i32], b: &[i32]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(&x, &y)| i64::from(x) * i64::from(y)).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|h| i64::from(a[h.target]) * i64::from(b[h.source]))
            .sum();
        diag - off
    }

    /// `ε_Ω(a, b) = (−1)^{<a, b>_Ω}`.
    pub fn epsilon(&self, a: &[i32], b: &[i32]) -> Sign {
        Sign::from_parity(self.euler_form(a, b))
    }

    /// `∏_{i<j} ε(a_i, a_j)` over an ordered sequence.
    pub fn ordered_product(&self, seq: &[&[i32]]) -> Sign {
        let mut s = Sign::Plus;
        for (i, a) in seq.iter().enumerate() {
            for b in &seq[i + 1..] {
                s = s * self.epsilon(a, b);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::roots::RootSystem;

    #[test]
    fn orientation_counts() {
        for (label, n) in [("A2", 2), ("D4", 8), ("A~1", 4), ("A~2", 8)] {
            let g = build_graph(label).unwrap();
            let all = all_orientations(&g);
            assert_eq!(all.len(), n);
            for o in &all {
                let arrows = o.arrows();
                let opposite = o.opposite_arrows();
                // Ω ∪ Ω̄ = H, Ω ∩ Ω̄ = ∅
                let mut h = g.arrows();
                let mut union: Vec<_> = arrows.iter().chain(&opposite).copied().collect();
                h.sort();
                union.sort();
                assert_eq!(h, union);
                assert!(arrows.iter().all(|a| !opposite.contains(a)));
            }
        }
    }

    #[test]
    fn parse_and_encode() {
        let d4 = build_graph("D4").unwrap();
        let o = Orientation::parse(&d4, "0>1,0>2,0>3").unwrap();
        assert_eq!(o, Orientation::reference(&d4));
        let o2 = Orientation::parse(&d4, "3>0, 1>0, 0>2").unwrap();
        assert_eq!(o2.encode(), "1>0,0>2,3>0");
        assert_eq!(Orientation::parse(&d4, &o2.encode()).unwrap(), o2);
        assert!(Orientation::parse(&d4, "0>1,0>2").is_err());
        assert!(Orientation::parse(&d4, "0>1,0>2,0>3,1>0").is_err());
        assert!(Orientation::parse(&d4, "1>2,0>2,0>3").is_err());
        assert!(Orientation::parse(&d4, "0-1").is_err());

        let a1 = build_graph("A~1").unwrap();
        let cyc = Orientation::parse(&a1, "0>1,1>0").unwrap();
        assert_eq!(cyc.forward(), &[true, false]);
    }

    #[test]
    fn a2_euler_form_and_epsilon() {
        let a2 = build_graph("A2").unwrap();
        let c = Cocycle::new(&Orientation::parse(&a2, "1>2").unwrap());
        assert_eq!(c.euler_form(&[1, 0], &[0, 1]), 0);
        assert_eq!(c.euler_form(&[0, 1], &[1, 0]), -1);
        assert_eq!(c.epsilon(&[1, 0], &[0, 1]), Sign::Plus);
        assert_eq!(c.epsilon(&[0, 1], &[1, 0]), Sign::Minus);
        assert_eq!(c.epsilon(&[0, 0], &[1, 1]), Sign::Plus);
    }

    #[test]
    fn symmetrization_is_the_cartan_pairing() {
        for label in ["A3", "D4", "A~1", "D~4"] {
            let rs = RootSystem::from_label(label).unwrap();
            let roots = rs.positive_roots(Some(4)).unwrap();
            for o in all_orientations(rs.graph()) {
                let c = Cocycle::new(&o);
                for a in &roots {
                    for b in &roots {
                        assert_eq!(
                            c.euler_form(a, b) + c.euler_form(b, a),
                            i64::from(rs.pairing(a, b))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(-Sign::Plus, Sign::Minus);
        assert_eq!(Sign::from_parity(-3), Sign::Minus);
        assert_eq!([Sign::Minus, Sign::Minus, Sign::Minus].into_iter().product::<Sign>(), Sign::Minus);
    }
}
