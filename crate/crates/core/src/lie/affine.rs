use super::element::from_int_terms;
use super::{BasisSymbol, LieElement, LieStructure};
use crate::cocycle::{Cocycle, Sign};
use crate::error::{Error, Result};
use crate::graph::DynkinGraph;
use crate::roots::RootSystem;
use crate::scalar::Scalar;
use crate::vector::Weight;

/// Which cocycle feeds the affine structure constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `ε_Ω(α, β)` on the affine lattice as is. Satisfies Jacobi exactly when
    /// `ε_Ω(δ, ·)` is trivial, see [`AffineAlgebra::delta_is_neutral`].
    Orientation,
    /// `ε_Ω(ᾱ, β̄)` on the classes in `Z[I'] = Z[I]/Zδ`. Agrees with
    /// `Orientation` whenever `ε_Ω(δ, ·)` is trivial and satisfies Jacobi for
    /// every orientation.
    #[default]
    Descended,
}

/// The positive part `n^ε` of an untwisted affine ADE algebra, spanned by
/// `ẽ_α` (`α` a positive real root) and `α_k(n)` (`k ∈ I'`, `n >= 1`).
///
/// Brackets:
/// * `[ẽ_α, ẽ_β] = ε(α, β) ẽ_{α+β}` if `α + β` is a real root,
/// * `[ẽ_α, ẽ_β] = ε(α, β) ᾱ(n)` if `α + β = nδ`, with `ᾱ` the class of `α`
///   in `Z[I']` expanded in the `α_k(n)`,
/// * `[α_k(m), ẽ_β] = (α_k, β) ẽ_{β+mδ}`, and imaginary symbols commute.
///
/// The basis used for the exhaustive checks is truncated to gradings at most
/// `cutoff·δ`.
#[derive(Debug, Clone)]
pub struct AffineAlgebra {
    rs: RootSystem,
    cocycle: Cocycle,
    convention: SignConvention,
    cutoff: u32,
    extending: usize,
}

impl AffineAlgebra {
    pub fn new(rs: &RootSystem, cocycle: &Cocycle, convention: SignConvention, cutoff: u32) -> Result<Self> {
        let extending = rs
            .graph()
            .extending_vertex()
            .ok_or_else(|| Error::input("affine algebra needs an affine root system"))?;
        if cocycle.orientation().graph() != rs.graph() {
            return Err(Error::input("cocycle and root system live on different graphs"));
        }
        Ok(AffineAlgebra {
            rs: rs.clone(),
            cocycle: cocycle.clone(),
            convention,
            cutoff,
            extending,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    /// Whether `ε_Ω(δ, α_i) = 1` for every vertex.
    pub fn delta_is_neutral(rs: &RootSystem, cocycle: &Cocycle) -> bool {
        let Some(delta) = rs.delta() else {
            return true;
        };
        (0..rs.rank()).all(|i| cocycle.epsilon(delta, &rs.simple_root(i)) == Sign::Plus)
    }

    /// The structure-constant sign `ε(α, β)` under the chosen convention.
    pub fn epsilon(&self, a: &[i32], b: &[i32]) -> Sign {
        match self.convention {
            SignConvention::Orientation => self.cocycle.epsilon(a, b),
            SignConvention::Descended => self
                .cocycle
                .epsilon(&self.rs.finite_class(a), &self.rs.finite_class(b)),
        }
    }

    fn delta(&self) -> &Weight {
        self.rs.delta().expect("affine").as_weight()
    }

    fn check_symbol(&self, s: &BasisSymbol) -> Result<()> {
        let ok = match s {
            BasisSymbol::Root(w) => self.rs.is_positive_real_root(w),
            BasisSymbol::Imaginary { vertex, degree } => {
                *vertex != self.extending && *vertex < self.rs.rank() && *degree >= 1
            }
            BasisSymbol::Cartan(_) => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::input(format!(
                "{} is not a basis symbol of the positive affine algebra of {}",
                s.render(self.rs.graph()),
                self.rs.graph()
            )))
        }
    }

    /// `Ê_k(m) = ε(α_k, mδ − α_k)·[ẽ_{α_k}, ẽ_{mδ − α_k}]`.
    pub fn ehat<T: Scalar>(&self, k: usize, m: u32) -> Result<LieElement<T>> {
        if k == self.extending {
            return Err(Error::input("Ê_k(m) needs k different from the extending vertex"));
        }
        if k >= self.rs.rank() || m == 0 {
            return Err(Error::input("Ê_k(m) needs a vertex of I' and m >= 1"));
        }
        let alpha = self.rs.simple_root(k).into_weight();
        let beta = &self.delta().scale(m as i32) - &alpha;
        let bracket = self.bracket(
            &LieElement::<T>::basis(BasisSymbol::Root(alpha.clone())),
            &LieElement::basis(BasisSymbol::Root(beta.clone())),
        )?;
        Ok(bracket.scaled(&T::from_int(self.epsilon(&alpha, &beta).value())))
    }

    /// The element `ᾱ(n) = Σ_k ᾱ_k α_k(n)` for a weight `α`.
    pub fn imaginary_class<T: Scalar>(&self, alpha: &[i32], n: u32) -> LieElement<T> {
        let class = self.rs.finite_class(alpha);
        from_int_terms(
            class
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (BasisSymbol::Imaginary { vertex: k, degree: n }, i64::from(c)))
                .collect(),
        )
    }
}

impl LieStructure for AffineAlgebra {
    fn basis(&self) -> Vec<BasisSymbol> {
        let bound = self.delta().scale(self.cutoff as i32);
        let mut b: Vec<BasisSymbol> = self
            .rs
            .positive_roots_below(&bound)
            .into_iter()
            .filter(|r| self.rs.is_real_root(r))
            .map(|r| BasisSymbol::Root(r.into_weight()))
            .collect();
        for n in 1..=self.cutoff {
            for k in self.rs.graph().finite_vertices() {
                b.push(BasisSymbol::Imaginary { vertex: k, degree: n });
            }
        }
        b
    }

    fn bracket_symbols(&self, a: &BasisSymbol, b: &BasisSymbol) -> Result<Vec<(BasisSymbol, i64)>> {
        self.check_symbol(a)?;
        self.check_symbol(b)?;
        Ok(match (a, b) {
            (BasisSymbol::Root(x), BasisSymbol::Root(y)) => {
                let sum = x + y;
                let eps = self.epsilon(x, y).value();
                if self.rs.is_positive_real_root(&sum) {
                    vec![(BasisSymbol::Root(sum), eps)]
                } else if let Some(n) = self.rs.imaginary_multiple(&sum) {
                    self.rs
                        .finite_class(x)
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| {
                            (
                                BasisSymbol::Imaginary {
                                    vertex: k,
                                    degree: n as u32,
                                },
                                eps * i64::from(c),
                            )
                        })
                        .collect()
                } else {
                    Vec::new()
                }
            }
            (BasisSymbol::Imaginary { vertex, degree }, BasisSymbol::Root(y)) => {
                mixed(&self.rs, *vertex, *degree, y, 1)
            }
            (BasisSymbol::Root(x), BasisSymbol::Imaginary { vertex, degree }) => {
                mixed(&self.rs, *vertex, *degree, x, -1)
            }
            _ => Vec::new(),
        })
    }

    fn grading(&self, s: &BasisSymbol) -> Weight {
        match s {
            BasisSymbol::Root(w) => w.clone(),
            BasisSymbol::Imaginary { degree, .. } => self.delta().scale(*degree as i32),
            BasisSymbol::Cartan(_) => Weight::zero(self.rs.rank()),
        }
    }

    fn graph(&self) -> &DynkinGraph {
        self.rs.graph()
    }

    fn in_range(&self, grading: &Weight) -> bool {
        grading.dominated_by(&self.delta().scale(self.cutoff as i32))
    }
}

fn mixed(rs: &RootSystem, k: usize, m: u32, beta: &Weight, sign: i64) -> Vec<(BasisSymbol, i64)> {
    let c = i64::from(rs.pairing(&rs.simple_root(k), beta));
    if c == 0 {
        return Vec::new();
    }
    let shifted = beta + &rs.delta().expect("affine").scale(m as i32);
    vec![(BasisSymbol::Root(shifted), sign * c)]
}
