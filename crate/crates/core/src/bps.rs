//! The conjectural BPS index set of an affine quiver: real roots and the
//! component functions `Ẽ_k(m)`, audited against root multiplicities and the
//! affine cocycle algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::cocycle::{Cocycle, Orientation};
use crate::error::{Error, Result};
use crate::lie::{root_space_dimensions, AffineAlgebra, BasisSymbol, LieElement, LieStructure, SignConvention};
use crate::roots::RootSystem;
use crate::stability::{nakajima_character, wall_test};
use crate::vector::Weight;
use crate::Rational;

/// Largest cutoff accepted by [`conjecture_algebra_checks`].
pub const MAX_CHECK_CUTOFF: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BpsSymbol {
    /// `Ẽ_α` for a positive real root `α`.
    RealStable { root: Weight },
    /// `Ẽ_k(m)` for `k ∈ I'` and `m ≥ 1`.
    ComponentFn { vertex: usize, m: u32 },
}

impl BpsSymbol {
    pub fn grading(&self, rs: &RootSystem) -> Weight {
        match self {
            BpsSymbol::RealStable { root } => root.clone(),
            BpsSymbol::ComponentFn { m, .. } => rs.delta().expect("affine").scale(*m as i32),
        }
    }

    pub fn render(&self, rs: &RootSystem) -> String {
        match self {
            BpsSymbol::RealStable { root } => format!("E[{root}]"),
            BpsSymbol::ComponentFn { vertex, m } => format!("E_{}({m})", rs.graph().label(*vertex)),
        }
    }
}

impl fmt::Display for BpsSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BpsSymbol::RealStable { root } => write!(f, "E[{root}]"),
            BpsSymbol::ComponentFn { vertex, m } => write!(f, "E_#{vertex}({m})"),
        }
    }
}

fn require_affine(rs: &RootSystem) -> Result<(&Weight, usize)> {
    let delta = rs
        .delta()
        .ok_or_else(|| Error::input(format!("{} is not an affine type", rs.graph())))?;
    let p = rs.graph().extending_vertex().expect("affine graph has an extending vertex");
    Ok((delta.as_weight(), p))
}

/// Positive real roots `±β + nδ ≤ cutoff·δ` (componentwise), built from the
/// finite root system on `I'`.
fn real_roots(rs: &RootSystem, cutoff: u32) -> Result<Vec<Weight>> {
    let (delta, _) = require_affine(rs)?;
    let finite = RootSystem::new(rs.graph().finite_part().expect("affine"));
    let embed = rs.graph().finite_vertices();
    let n = rs.rank();
    let bound = delta.scale(cutoff as i32);
    let mut out = Vec::new();
    for beta in finite.finite_positive_roots() {
        let mut lifted = vec![0; n];
        for (i, &v) in embed.iter().enumerate() {
            lifted[v] = beta[i];
        }
        let lifted = Weight::new(lifted);
        if cutoff == 0 {
            out.push(lifted);
            continue;
        }
        for k in 0..=cutoff as i32 {
            let shift = delta.scale(k);
            for w in [&shift + &lifted, &shift - &lifted] {
                if w.is_nonnegative() && !w.is_zero() && w.dominated_by(&bound) {
                    out.push(w);
                }
            }
        }
    }
    out.sort_by(|a, b| (a.height(), a).cmp(&(b.height(), b)));
    out.dedup();
    Ok(out)
}

/// `{Ẽ_α} ∪ {Ẽ_k(m) : m ≤ cutoff}`, ordered by height then grading. Cutoff 0
/// gives the positive roots of the finite subsystem on `I'`.
pub fn bps_basis(rs: &RootSystem, cutoff: u32) -> Result<Vec<BpsSymbol>> {
    let (_, p) = require_affine(rs)?;
    let mut out: Vec<BpsSymbol> = real_roots(rs, cutoff)?
        .into_iter()
        .map(|root| BpsSymbol::RealStable { root })
        .collect();
    for m in 1..=cutoff {
        for vertex in (0..rs.rank()).filter(|&k| k != p) {
            out.push(BpsSymbol::ComponentFn { vertex, m });
        }
    }
    out.sort_by(|a, b| {
        let (ga, gb) = (a.grading(rs), b.grading(rs));
        (ga.height(), &ga, a).cmp(&(gb.height(), &gb, b))
    });
    Ok(out)
}

/// Grading histogram of [`bps_basis`].
pub fn bps_histogram(rs: &RootSystem, cutoff: u32) -> Result<BTreeMap<Weight, usize>> {
    let mut out = BTreeMap::new();
    for s in bps_basis(rs, cutoff)? {
        *out.entry(s.grading(rs)).or_insert(0) += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditLine {
    pub grading: Weight,
    /// Root-space dimension of the affine cocycle algebra.
    pub expected: usize,
    /// Number of BPS symbols.
    pub found: usize,
    /// `1` for real roots, `|I'|` for multiples of `δ`.
    pub multiplicity: usize,
}

impl AuditLine {
    pub fn ok(&self) -> bool {
        self.expected == self.found && self.found == self.multiplicity
    }

    pub fn render(&self) -> String {
        format!(
            "{};{};{};{}",
            self.grading,
            self.expected,
            self.found,
            if self.ok() { "ok" } else { "mismatch" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub graph: String,
    pub cutoff: u32,
    pub lines: Vec<AuditLine>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(AuditLine::ok)
    }

    pub fn render(&self) -> Vec<String> {
        self.lines.iter().map(AuditLine::render).collect()
    }
}

fn algebra(rs: &RootSystem, cutoff: u32) -> Result<AffineAlgebra> {
    AffineAlgebra::new(
        rs,
        &Cocycle::new(&Orientation::reference(rs.graph())),
        SignConvention::Descended,
        cutoff,
    )
}

/// Compares, grading by grading up to `cutoff·δ`, the BPS symbol count with
/// the root-space dimension of the affine cocycle algebra and the root
/// multiplicity.
pub fn multiplicity_audit(rs: &RootSystem, cutoff: u32) -> Result<AuditReport> {
    require_affine(rs)?;
    if cutoff == 0 {
        return Err(Error::input("the multiplicity audit needs cutoff >= 1"));
    }
    let dims = root_space_dimensions(&algebra(rs, cutoff)?);
    let bps = bps_histogram(rs, cutoff)?;
    let mut gradings: Vec<Weight> = dims.keys().chain(bps.keys()).cloned().collect();
    gradings.sort_by(|a, b| (a.height(), a).cmp(&(b.height(), b)));
    gradings.dedup();
    let lines = gradings
        .into_iter()
        .map(|g| {
            let multiplicity = if rs.is_real_root(&g) {
                1
            } else if rs.imaginary_multiple(&g).is_some() {
                rs.rank() - 1
            } else {
                0
            };
            AuditLine {
                expected: dims.get(&g).copied().unwrap_or(0),
                found: bps.get(&g).copied().unwrap_or(0),
                multiplicity,
                grading: g,
            }
        })
        .collect();
    Ok(AuditReport {
        graph: rs.graph().name().to_string(),
        cutoff,
        lines,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub graph: String,
    pub cutoff: u32,
    pub checks: Vec<SubCheck>,
}

impl ConjectureReport {
    /// All machine-checked parts passed; unchecked parts are ignored.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed != Some(false))
    }
}

/// The algebra-level content of the BPS conjecture. `theta` overrides the
/// Nakajima character restricted to `I'` (used as a negative control).
pub fn conjecture_algebra_checks_with(
    rs: &RootSystem,
    cutoff: u32,
    theta: Option<Vec<Rational>>,
) -> Result<ConjectureReport> {
    let (delta, p) = require_affine(rs)?;
    if !(1..=MAX_CHECK_CUTOFF).contains(&cutoff) {
        return Err(Error::input(format!("cutoff must lie in 1..={MAX_CHECK_CUTOFF}")));
    }
    let alg = algebra(rs, cutoff)?;
    let mut checks = Vec::new();

    let mut bad = Vec::new();
    let mut count = 0;
    for m in 1..=cutoff {
        for k in (0..rs.rank()).filter(|&k| k != p) {
            count += 1;
            let lhs: LieElement<Rational> = alg.ehat(k, m)?;
            let rhs = alg.imaginary_class::<Rational>(rs.simple_root(k).as_weight(), m);
            if lhs != rhs {
                bad.push(format!("k={} m={m}: {} != {}", rs.graph().label(k), lhs, rhs));
            }
        }
    }
    checks.push(SubCheck {
        name: "ehat-equals-imaginary-generator".into(),
        passed: Some(bad.is_empty()),
        detail: if bad.is_empty() { format!("{count} identities") } else { bad.join("; ") },
    });

    let basis = bps_basis(rs, cutoff)?;
    let mut image: Vec<BpsSymbol> = Vec::new();
    let mut ungraded = Vec::new();
    for s in alg.basis() {
        let mapped = match &s {
            BasisSymbol::Root(w) => BpsSymbol::RealStable { root: w.clone() },
            BasisSymbol::Imaginary { vertex, degree } => BpsSymbol::ComponentFn {
                vertex: *vertex,
                m: *degree,
            },
            BasisSymbol::Cartan(_) => return Err(Error::internal("Cartan symbol in the positive affine algebra")),
        };
        if mapped.grading(rs) != alg.grading(&s) {
            ungraded.push(s.render(rs.graph()));
        }
        image.push(mapped);
    }
    image.sort_by(|a, b| {
        let (ga, gb) = (a.grading(rs), b.grading(rs));
        (ga.height(), &ga, a).cmp(&(gb.height(), &gb, b))
    });
    let bijective = image == basis;
    checks.push(SubCheck {
        name: "graded-bijection".into(),
        passed: Some(bijective && ungraded.is_empty()),
        detail: if bijective && ungraded.is_empty() {
            format!("{} basis elements", basis.len())
        } else {
            format!(
                "{} algebra symbols vs {} BPS symbols; grading changed for [{}]",
                image.len(),
                basis.len(),
                ungraded.join(", ")
            )
        },
    });

    let finite = RootSystem::new(rs.graph().finite_part().expect("affine"));
    let mut wall_fail = Vec::new();
    for m in 1..=cutoff {
        let ambient = delta.scale(m as i32).into_dim()?;
        let values = match &theta {
            Some(t) => t.clone(),
            None => {
                let chi = nakajima_character(rs.graph(), &ambient)?;
                rs.graph().finite_vertices().iter().map(|&i| chi.values()[i].clone()).collect()
            }
        };
        if !wall_test(&values, &finite) {
            let zero_on: Vec<String> = finite
                .finite_positive_roots()
                .iter()
                .filter(|a| {
                    a.iter()
                        .zip(&values)
                        .fold(Rational::zero(), |s, (&c, v)| s + v * Rational::from_integer(c.into()))
                        .is_zero()
                })
                .map(|a| a.encode())
                .collect();
            wall_fail.push(format!("{m}δ: vanishes on [{}]", zero_on.join(" ")));
        }
    }
    checks.push(SubCheck {
        name: "nakajima-off-walls".into(),
        passed: Some(wall_fail.is_empty()),
        detail: if wall_fail.is_empty() {
            format!("no finite root on a wall for 1..={cutoff} δ")
        } else {
            wall_fail.join("; ")
        },
    });

    for name in ["stable-locus-dimensions", "semistable-diagonal", "resolution-components"] {
        checks.push(SubCheck {
            name: name.into(),
            passed: None,
            detail: "not machine-checked here".into(),
        });
    }
    Ok(ConjectureReport {
        graph: rs.graph().name().to_string(),
        cutoff,
        checks,
    })
}

pub fn conjecture_algebra_checks(rs: &RootSystem, cutoff: u32) -> Result<ConjectureReport> {
    conjecture_algebra_checks_with(rs, cutoff, None)
}
