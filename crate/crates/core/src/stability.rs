//! Stability characters (King, slope, Nakajima), orientations flowing to the
//! extending vertex, and a finite-field stability oracle.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cocycle::Orientation;
use crate::error::{Error, Result};
use crate::fq::{gaussian_binomial, graded_subspaces, Mat, Subspace};
use crate::graph::{Arrow, DynkinGraph};
use crate::hall::{HallConfig, HallEngine};
use crate::rep::FqRep;
use crate::roots::RootSystem;
use crate::vector::DimVector;
use crate::Rational;

/// An additive function on dimension vectors, given by its values on the
/// simple roots, together with the ambient dimension vector it is used for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<Rational>,
    ambient: DimVector,
}

impl Character {
    pub fn new(values: Vec<Rational>, ambient: DimVector) -> Result<Self> {
        if values.len() != ambient.rank() {
            return Err(Error::input("character needs one value per vertex"));
        }
        Ok(Character { values, ambient })
    }

    pub fn from_ints(values: &[i64], ambient: DimVector) -> Result<Self> {
        Character::new(values.iter().map(|&v| Rational::from_integer(v.into())).collect(), ambient)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn ambient(&self) -> &DimVector {
        &self.ambient
    }

    pub fn eval(&self, d: &[i32]) -> Rational {
        self.values
            .iter()
            .zip(d)
            .fold(Rational::zero(), |acc, (v, &c)| acc + v * Rational::from_integer(c.into()))
    }

    /// Whether the character vanishes on the ambient vector.
    pub fn is_balanced(&self) -> bool {
        self.eval(&self.ambient).is_zero()
    }

    /// Values as `v0,v1,...` in vertex order.
    pub fn encode(&self) -> String {
        self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// `μ = c / r` with `r > 0` on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeCondition {
    c: Vec<Rational>,
    r: Vec<Rational>,
}

impl SlopeCondition {
    pub fn new(c: Vec<Rational>, r: Vec<Rational>) -> Result<Self> {
        if c.len() != r.len() {
            return Err(Error::input("c and r need the same number of vertices"));
        }
        if r.iter().any(|x| !x.is_positive()) {
            return Err(Error::input("r must be positive on every vertex"));
        }
        Ok(SlopeCondition { c, r })
    }

    pub fn slope(&self, d: &[i32]) -> Result<Rational> {
        let r = dot(&self.r, d);
        if r.is_zero() {
            return Err(Error::input("slope of the zero vector"));
        }
        Ok(dot(&self.c, d) / r)
    }
}

fn dot(v: &[Rational], d: &[i32]) -> Rational {
    v.iter()
        .zip(d)
        .fold(Rational::zero(), |acc, (x, &c)| acc + x * Rational::from_integer(c.into()))
}

/// `Θ_{V,Ω}(V') = Σ_{h∈Ω} (dim V_{h′} dim V'_{h″} − dim V'_{h′} dim V_{h″})`.
pub fn king_character(orientation: &Orientation, ambient: &DimVector) -> Character {
    let mut values = vec![0i64; ambient.rank()];
    for h in orientation.arrows() {
        values[h.target] += i64::from(ambient[h.source]);
        values[h.source] -= i64::from(ambient[h.target]);
    }
    Character::from_ints(&values, ambient.clone()).expect("one value per vertex")
}

/// `θ_μ(V') = −c(V') + c(V)/r(V) · r(V')`.
pub fn slope_character(mu: &SlopeCondition, ambient: &DimVector) -> Result<Character> {
    if ambient.is_zero() {
        return Err(Error::input("slope character needs a nonzero ambient vector"));
    }
    if mu.c.len() != ambient.rank() {
        return Err(Error::input("slope condition and ambient vector differ in rank"));
    }
    let ratio = mu.slope(ambient)?;
    let values = mu.c.iter().zip(&mu.r).map(|(c, r)| -c + &ratio * r).collect();
    Character::new(values, ambient.clone())
}

/// `−1` on every `k ≠ p`; on `p` the value making the character vanish on the
/// ambient vector, `Σ_{i≠p} ambient_i / ambient_p` (for `ambient = mδ` this
/// is `Σ_{i≠p} δ_i`).
pub fn nakajima_character(graph: &DynkinGraph, ambient: &DimVector) -> Result<Character> {
    let p = graph
        .extending_vertex()
        .ok_or_else(|| Error::input("the Nakajima character needs an affine graph"))?;
    if ambient.rank() != graph.n_vertices() {
        return Err(Error::input("ambient vector has the wrong length"));
    }
    if ambient[p] == 0 {
        return Err(Error::input("ambient vector vanishes at the extending vertex"));
    }
    let rest: i64 = (0..graph.n_vertices()).filter(|&i| i != p).map(|i| i64::from(ambient[i])).sum();
    let values = (0..graph.n_vertices())
        .map(|i| {
            if i == p {
                Rational::new(rest.into(), i64::from(ambient[p]).into())
            } else {
                Rational::from_integer((-1).into())
            }
        })
        .collect();
    Character::new(values, ambient.clone())
}

/// `p` is a sink and every vertex reaches `p` along `Ω`.
pub fn flows_to_extending(orientation: &Orientation, p: usize) -> bool {
    if !orientation.is_sink(p) {
        return false;
    }
    let n = orientation.graph().n_vertices();
    let arrows = orientation.arrows();
    let mut reached = vec![false; n];
    reached[p] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for h in &arrows {
            if reached[h.target] && !reached[h.source] {
                reached[h.source] = true;
                changed = true;
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// Whether `Σ_k θ_k α_k ≠ 0` for every positive root `α` of `finite`, i.e.
/// `θ` lies on no wall. `theta` is indexed by the vertices of `finite`.
pub fn wall_test(theta: &[Rational], finite: &RootSystem) -> bool {
    theta.len() == finite.rank() && finite.finite_positive_roots().iter().all(|a| !dot(theta, a).is_zero())
}

/// [`wall_test`] for the Nakajima character of an affine graph, restricted
/// to `I' = I − {p}`.
pub fn nakajima_wall_test(graph: &DynkinGraph, ambient: &DimVector) -> Result<bool> {
    let chi = nakajima_character(graph, ambient)?;
    let finite = RootSystem::new(
        graph
            .finite_part()
            .ok_or_else(|| Error::input("the wall test needs an affine graph"))?,
    );
    let theta: Vec<Rational> = graph.finite_vertices().iter().map(|&i| chi.values()[i].clone()).collect();
    Ok(wall_test(&theta, &finite))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Stable,
    SemistableNotStable,
    Unstable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Stable => "stable",
            Verdict::SemistableNotStable => "semistable-not-stable",
            Verdict::Unstable => "unstable",
        })
    }
}

/// A verdict with the dimension vector of a violating subrepresentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityOutcome {
    pub verdict: Verdict,
    pub witness: Option<DimVector>,
}

/// Bounds for the subspace enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityConfig {
    pub max_total_dim: usize,
    pub max_q: u32,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        StabilityConfig {
            max_total_dim: 7,
            max_q: 4,
        }
    }
}

/// The moment map `m_i(x) = Σ_{h″=i} ε(h) x_h x_{h̄}` vanishes at every
/// vertex, with `ε = 1` on `Ω` and `−1` on `Ω̄`.
pub fn moment_map_vanishes(x: &FqRep, orientation: &Orientation) -> Result<bool> {
    let f = &**x.field();
    let omega = orientation.arrows();
    let mut sums: Vec<Mat> = x.dims().iter().map(|&d| Mat::zero(d, d)).collect();
    for h in orientation.graph().arrows() {
        let (Some(xh), Some(xbar)) = (x.map_for(&h), x.map_for(&h.reversed())) else {
            return Err(Error::input("double-quiver input needs a matrix on every arrow of H"));
        };
        let prod = xh.mul(f, xbar);
        let sign = omega.contains(&h);
        let acc = &mut sums[h.target];
        for r in 0..prod.rows() {
            for c in 0..prod.cols() {
                let v = if sign { prod.get(r, c) } else { f.neg(prod.get(r, c)) };
                acc.set(r, c, f.add(acc.get(r, c), v));
            }
        }
    }
    Ok(sums.iter().all(Mat::is_zero))
}

fn check_bounds(x: &FqRep, config: &StabilityConfig) -> Result<()> {
    if x.total_dim() > config.max_total_dim {
        return Err(Error::resource(format!(
            "total dimension {} exceeds the bound {}",
            x.total_dim(),
            config.max_total_dim
        )));
    }
    if x.q() > config.max_q {
        return Err(Error::resource(format!("q = {} exceeds the bound {}", x.q(), config.max_q)));
    }
    Ok(())
}

/// Every proper nonzero `x`-stable graded subspace, with its dimension vector.
pub fn invariant_subspaces(x: &FqRep) -> Vec<(Vec<usize>, Vec<Subspace>)> {
    let dims = x.dims().to_vec();
    let mut out = Vec::new();
    let mut sub = vec![0usize; dims.len()];
    loop {
        let total: usize = sub.iter().sum();
        if total > 0 && sub != dims {
            for w in graded_subspaces(x.field(), &dims, &sub) {
                if x.is_invariant(&w) {
                    out.push((sub.clone(), w));
                }
            }
        }
        let mut i = 0;
        while i < dims.len() {
            if sub[i] < dims[i] {
                sub[i] += 1;
                break;
            }
            sub[i] = 0;
            i += 1;
        }
        if i == dims.len() {
            break;
        }
    }
    out
}

/// The sign tests of King's definition over every proper nonzero `x`-stable
/// graded subspace. If `double` is given, `x` is a representation of the
/// double quiver and must satisfy the moment map equations for that
/// orientation and be nilpotent.
pub fn is_stable(
    x: &FqRep,
    theta: &Character,
    double: Option<&Orientation>,
    config: &StabilityConfig,
) -> Result<StabilityOutcome> {
    check_bounds(x, config)?;
    let dims: Vec<i32> = x.dims().iter().map(|&d| d as i32).collect();
    if theta.values().len() != dims.len() {
        return Err(Error::input("character and representation differ in rank"));
    }
    if !theta.eval(&dims).is_zero() {
        return Err(Error::input(format!("θ(dim x) = {} is not zero", theta.eval(&dims))));
    }
    if let Some(o) = double {
        if !moment_map_vanishes(x, o)? {
            return Err(Error::input("representation violates the preprojective relations"));
        }
        if !x.is_nilpotent() {
            return Err(Error::input("representation is not nilpotent"));
        }
    }
    let q = u64::from(x.q());
    let work: u128 = x
        .dims()
        .iter()
        .map(|&d| (0..=d).map(|k| gaussian_binomial(d, k, q)).sum::<u128>())
        .product();
    if work > 10_000_000 {
        return Err(Error::resource(format!("{work} graded subspaces to enumerate")));
    }
    let mut semistable_witness = None;
    for (sub, _) in invariant_subspaces(x) {
        let s: Vec<i32> = sub.iter().map(|&d| d as i32).collect();
        let v = theta.eval(&s);
        let d = DimVector::new(s)?;
        if v.is_negative() {
            return Ok(StabilityOutcome {
                verdict: Verdict::Unstable,
                witness: Some(d),
            });
        }
        if v.is_zero() && semistable_witness.is_none() {
            semistable_witness = Some(d);
        }
    }
    Ok(match semistable_witness {
        Some(w) => StabilityOutcome {
            verdict: Verdict::SemistableNotStable,
            witness: Some(w),
        },
        None => StabilityOutcome {
            verdict: Verdict::Stable,
            witness: None,
        },
    })
}

/// The double-quiver lift of an oriented representation: zero on `Ω̄`.
pub fn zero_conormal_lift(x: &FqRep, graph: &DynkinGraph) -> Result<FqRep> {
    let arrows: Vec<Arrow> = graph.arrows();
    let maps = arrows
        .iter()
        .map(|h| match x.map_for(h) {
            Some(m) => m.clone(),
            None => Mat::zero(x.dims()[h.target], x.dims()[h.source]),
        })
        .collect();
    FqRep::new(x.field().clone(), x.dims().to_vec(), arrows, maps)
}

/// One line of the harness: a class and its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaLine {
    pub label: String,
    pub theta: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub one_part: bool,
    pub consistent: bool,
}

impl LemmaLine {
    /// `label;theta_values;verdict;witness`.
    pub fn render(&self) -> String {
        format!(
            "{};{};{};{}",
            self.label,
            self.theta,
            self.verdict,
            self.witness.as_deref().unwrap_or("-")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub graph: String,
    pub root: String,
    pub orientation: String,
    pub q: u32,
    pub lines: Vec<LemmaLine>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.consistent)
    }
}

/// For every iso-class of dimension `α`, checks that the class is
/// `Θ_{V,Ω}`-stable exactly when its label has one part. Each class is
/// tested through its zero-conormal point of the double quiver.
pub fn stability_lemma_harness(
    rs: &RootSystem,
    alpha: &DimVector,
    orientation: &Orientation,
    q: u32,
    config: &StabilityConfig,
) -> Result<LemmaReport> {
    if !rs.is_positive_root(alpha) || rs.is_affine() {
        return Err(Error::input(format!("{alpha} is not a positive root of a finite type")));
    }
    let engine = HallEngine::new(
        rs,
        orientation,
        HallConfig {
            max_total_dim: config.max_total_dim,
            max_q: config.max_q,
            ..HallConfig::default()
        },
    )?;
    let theta = king_character(orientation, alpha);
    let mut lines = Vec::new();
    for (class, rep) in engine.enumerate_reps(alpha, q)? {
        let lifted = zero_conormal_lift(&rep, rs.graph())?;
        let out = is_stable(&lifted, &theta, Some(orientation), config)?;
        let one_part = class.label.len() == 1;
        lines.push(LemmaLine {
            label: class.label.key(),
            theta: theta.encode(),
            verdict: out.verdict,
            witness: out.witness.map(|w| w.encode()),
            one_part,
            consistent: one_part == (out.verdict == Verdict::Stable),
        });
    }
    Ok(LemmaReport {
        graph: rs.graph().name().to_string(),
        root: alpha.encode(),
        orientation: orientation.encode(),
        q,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::all_orientations;
    use crate::graph::build_graph;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn dv(v: &[i32]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn king_values_a2() {
        let g = build_graph("A2").unwrap();
        let o = Orientation::parse(&g, "1>2").unwrap();
        let chi = king_character(&o, &dv(&[1, 1]));
        assert_eq!(chi.eval(&[0, 1]), r(1, 1));
        assert_eq!(chi.eval(&[1, 0]), r(-1, 1));
        assert!(chi.is_balanced());
    }

    #[test]
    fn slope_values_a2() {
        let mu = SlopeCondition::new(vec![r(1, 1), r(0, 1)], vec![r(1, 1), r(1, 1)]).unwrap();
        let chi = slope_character(&mu, &dv(&[1, 1])).unwrap();
        assert_eq!(chi.eval(&[1, 0]), r(-1, 2));
        assert_eq!(chi.eval(&[0, 1]), r(1, 2));
        let same = SlopeCondition::new(vec![r(2, 1), r(3, 1)], vec![r(2, 1), r(3, 1)]).unwrap();
        let zero = slope_character(&same, &dv(&[2, 1])).unwrap();
        assert!(zero.values().iter().all(Zero::is_zero));
    }

    #[test]
    fn nakajima_values() {
        let g = build_graph("A~1").unwrap();
        let chi = nakajima_character(&g, &dv(&[1, 1])).unwrap();
        assert_eq!(chi.values(), &[r(1, 1), r(-1, 1)]);
        assert!(nakajima_character(&g, &dv(&[2, 2])).unwrap().is_balanced());
        assert!(nakajima_character(&g, &dv(&[0, 1])).is_err());
        let g = build_graph("D~4").unwrap();
        let chi = nakajima_character(&g, &dv(&[1, 1, 1, 1, 2])).unwrap();
        assert_eq!(chi.values()[0], r(5, 1));
    }

    #[test]
    fn flow_counts() {
        for (ty, want) in [("A~1", 1), ("A~2", 2), ("A~3", 3), ("A~4", 4), ("D~4", 1), ("E~6", 1)] {
            let g = build_graph(ty).unwrap();
            let p = g.extending_vertex().unwrap();
            let n = all_orientations(&g).iter().filter(|o| flows_to_extending(o, p)).count();
            assert_eq!(n, want, "{ty}");
        }
    }

    #[test]
    fn walls() {
        let a2 = RootSystem::from_label("A2").unwrap();
        assert!(wall_test(&[r(-1, 1), r(-1, 1)], &a2));
        assert!(!wall_test(&[r(0, 1), r(-1, 1)], &a2));
        assert!(!wall_test(&[r(1, 1), r(-1, 1)], &a2));
        for ty in ["A~1", "A~2", "A~3", "D~4"] {
            let g = build_graph(ty).unwrap();
            let rs = RootSystem::new(g.clone());
            assert!(nakajima_wall_test(&g, rs.delta().unwrap()).unwrap(), "{ty}");
        }
    }

    #[test]
    fn a2_verdicts() {
        let rs = RootSystem::from_label("A2").unwrap();
        let o = Orientation::parse(rs.graph(), "1>2").unwrap();
        let report = stability_lemma_harness(&rs, &dv(&[1, 1]), &o, 2, &StabilityConfig::default()).unwrap();
        assert!(report.passed());
        let rendered: Vec<String> = report.lines.iter().map(LemmaLine::render).collect();
        assert_eq!(rendered, ["0,1;1,0;-1,1;unstable;1,0", "1,1;-1,1;stable;-"]);
    }

    #[test]
    fn rejects_unbalanced_characters() {
        let rs = RootSystem::from_label("A2").unwrap();
        let o = Orientation::reference(rs.graph());
        let engine = HallEngine::new(&rs, &o, HallConfig::default()).unwrap();
        let (_, rep) = engine.enumerate_reps(&dv(&[1, 1]), 2).unwrap().remove(0);
        let chi = Character::from_ints(&[1, 1], dv(&[1, 1])).unwrap();
        assert!(matches!(
            is_stable(&rep, &chi, None, &StabilityConfig::default()),
            Err(Error::Input(_))
        ));
    }
}
