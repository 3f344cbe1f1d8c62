//! Cocycle Lie algebras: the finite `g^ε` (and its positive part `n^ε`) and
//! the positive part of the affine algebra, with exact structure constants
//! and validators for antisymmetry, Jacobi and the Serre relations.

mod affine;
mod element;
mod finite;

pub use affine::{AffineAlgebra, SignConvention};
pub use element::{BasisSymbol, LieElement};
pub use finite::{bracket_finite, build_full_g, iterated_root_vector, CocycleAlgebra, StructureTable};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::DynkinGraph;
use crate::scalar::Scalar;
use crate::vector::Weight;

/// A Lie algebra given by integer structure constants on a basis.
pub trait LieStructure {
    /// The basis used by the exhaustive checks (truncated when infinite).
    fn basis(&self) -> Vec<BasisSymbol>;

    /// `[a, b]` as integer combinations of basis symbols.
    fn bracket_symbols(&self, a: &BasisSymbol, b: &BasisSymbol) -> Result<Vec<(BasisSymbol, i64)>>;

    /// Root-lattice degree of a basis symbol.
    fn grading(&self, s: &BasisSymbol) -> Weight;

    fn graph(&self) -> &DynkinGraph;

    /// The generator `ẽ_{α_i}`.
    fn simple(&self, i: usize) -> BasisSymbol {
        BasisSymbol::Root(Weight::unit(self.graph().n_vertices(), i))
    }

    /// Whether a symbol lies in the range the exhaustive checks cover.
    fn in_range(&self, _grading: &Weight) -> bool {
        true
    }

    /// Bilinear extension of [`LieStructure::bracket_symbols`].
    fn bracket<T: Scalar>(&self, x: &LieElement<T>, y: &LieElement<T>) -> Result<LieElement<T>>
    where
        Self: Sized,
    {
        let mut out = LieElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                for (s, c) in self.bracket_symbols(a, b)? {
                    out.add_term(s, ca.clone() * cb.clone() * T::from_int(c));
                }
            }
        }
        Ok(out)
    }
}

/// A triple of basis symbols on which an identity failed, with the residual.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityFailure {
    pub symbols: Vec<String>,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Turns the first failure into an error naming the triple.
    pub fn into_result(self, what: &str) -> Result<usize> {
        match self.failures.first() {
            None => Ok(self.checked),
            Some(f) => Err(Error::validation(format!(
                "{what} fails on ({}) with residual {} ({} failures of {} checked)",
                f.symbols.join(", "),
                f.residual,
                self.failures.len(),
                self.checked
            ))),
        }
    }
}

fn symbol_element<T: Scalar>(s: &BasisSymbol) -> LieElement<T> {
    LieElement::basis(s.clone())
}

/// `[a, b] + [b, a] = 0` and `[a, a] = 0` for every pair of basis symbols.
pub fn check_antisymmetry<L: LieStructure>(alg: &L) -> Result<CheckReport> {
    let basis = alg.basis();
    let mut report = CheckReport {
        checked: 0,
        failures: Vec::new(),
    };
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            let ga = alg.grading(a);
            if !alg.in_range(&(&ga + &alg.grading(b))) {
                continue;
            }
            let (x, y) = (symbol_element::<crate::Rational>(a), symbol_element(b));
            let sum = alg.bracket(&x, &y)?.plus(&alg.bracket(&y, &x)?);
            report.checked += 1;
            if !sum.is_zero() {
                report.failures.push(IdentityFailure {
                    symbols: vec![a.render(alg.graph()), b.render(alg.graph())],
                    residual: sum.render(alg.graph()),
                });
            }
        }
    }
    Ok(report)
}

/// The Jacobi identity on every unordered triple of basis symbols whose total
/// grading is in range.
pub fn check_jacobi<L: LieStructure>(alg: &L) -> Result<CheckReport> {
    let basis = alg.basis();
    let mut report = CheckReport {
        checked: 0,
        failures: Vec::new(),
    };
    let mut cache: BTreeMap<(usize, usize), LieElement<crate::Rational>> = BTreeMap::new();
    let elems: Vec<LieElement<crate::Rational>> = basis.iter().map(symbol_element).collect();
    let gradings: Vec<Weight> = basis.iter().map(|s| alg.grading(s)).collect();
    let mut pair = |i: usize, j: usize| -> Result<LieElement<crate::Rational>> {
        if let Some(v) = cache.get(&(i, j)) {
            return Ok(v.clone());
        }
        let v = alg.bracket(&elems[i], &elems[j])?;
        cache.insert((i, j), v.clone());
        Ok(v)
    };
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let gij = &gradings[i] + &gradings[j];
            for k in j..basis.len() {
                if !alg.in_range(&(&gij + &gradings[k])) {
                    continue;
                }
                let t1 = alg.bracket(&pair(i, j)?, &elems[k])?;
                let t2 = alg.bracket(&pair(j, k)?, &elems[i])?;
                let t3 = alg.bracket(&pair(k, i)?, &elems[j])?;
                let sum = t1.plus(&t2).plus(&t3);
                report.checked += 1;
                if !sum.is_zero() {
                    report.failures.push(IdentityFailure {
                        symbols: [i, j, k].iter().map(|&x| basis[x].render(alg.graph())).collect(),
                        residual: sum.render(alg.graph()),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// `(ad ẽ_i)^{1 − i·j}(ẽ_j) = 0`.
pub fn serre_check<L: LieStructure>(alg: &L, i: usize, j: usize) -> Result<bool> {
    if i == j {
        return Err(Error::input("Serre relations need two distinct vertices"));
    }
    let g = alg.graph();
    let power = 1 + g.edge_count(i, j);
    let ei: LieElement<crate::Rational> = LieElement::basis(alg.simple(i));
    let mut x: LieElement<crate::Rational> = LieElement::basis(alg.simple(j));
    for _ in 0..power {
        x = alg.bracket(&ei, &x)?;
    }
    Ok(x.is_zero())
}

/// Serre relations for every ordered pair of distinct vertices; returns the
/// failing pairs.
pub fn serre_failures<L: LieStructure>(alg: &L) -> Result<Vec<(usize, usize)>> {
    let n = alg.graph().n_vertices();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && !serre_check(alg, i, j)? {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}

/// Number of basis symbols per grading, restricted to the checked range.
pub fn root_space_dimensions<L: LieStructure>(alg: &L) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for s in alg.basis() {
        *out.entry(alg.grading(&s)).or_insert(0) += 1;
    }
    out
}
