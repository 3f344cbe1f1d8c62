use std::collections::{HashMap, HashSet};

use super::{BasisSymbol, LieElement, LieStructure};
use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::graph::DynkinGraph;
use crate::roots::RootSystem;
use crate::scalar::Scalar;
use crate::vector::Weight;

/// The cocycle Lie algebra of a finite ADE root system.
///
/// Brackets: `[ẽ_α, ẽ_β] = ε(α, β) ẽ_{α+β}` when `α + β` is a root,
/// `[ẽ_α, ẽ_{−α}] = ε(α, −α) h_α` with `h_α = Σ α_i h_i`,
/// `[h_i, ẽ_α] = (α_i, α) ẽ_α`, and `[h, h'] = 0`.
#[derive(Debug, Clone)]
pub struct CocycleAlgebra {
    rs: RootSystem,
    cocycle: Cocycle,
    roots: Vec<Weight>,
    lookup: HashSet<Weight>,
    positive_only: bool,
}

impl CocycleAlgebra {
    /// The full algebra `g^ε`: all roots plus the Cartan subalgebra.
    pub fn full(rs: &RootSystem, cocycle: &Cocycle) -> Result<Self> {
        Self::build(rs, cocycle, false)
    }

    /// The positive part `n^ε`.
    pub fn positive(rs: &RootSystem, cocycle: &Cocycle) -> Result<Self> {
        Self::build(rs, cocycle, true)
    }

    fn build(rs: &RootSystem, cocycle: &Cocycle, positive_only: bool) -> Result<Self> {
        if rs.is_affine() {
            return Err(Error::input("cocycle algebra of a finite type expects a finite root system"));
        }
        if cocycle.orientation().graph() != rs.graph() {
            return Err(Error::input("cocycle and root system live on different graphs"));
        }
        let mut roots: Vec<Weight> = rs.finite_positive_roots().iter().map(|r| r.as_weight().clone()).collect();
        if !positive_only {
            let neg: Vec<Weight> = roots.iter().map(|r| -r).collect();
            roots.extend(neg);
        }
        let lookup = roots.iter().cloned().collect();
        Ok(CocycleAlgebra {
            rs: rs.clone(),
            cocycle: cocycle.clone(),
            roots,
            lookup,
            positive_only,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn dimension(&self) -> usize {
        self.basis().len()
    }

    fn check_symbol(&self, s: &BasisSymbol) -> Result<()> {
        let ok = match s {
            BasisSymbol::Root(w) => self.lookup.contains(w),
            BasisSymbol::Cartan(i) => !self.positive_only && *i < self.rs.rank(),
            BasisSymbol::Imaginary { .. } => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::input(format!(
                "{} is not a basis symbol of the cocycle algebra of {}",
                s.render(self.rs.graph()),
                self.rs.graph()
            )))
        }
    }

    /// Bracket of `ẽ_α` with a basis symbol, as structure constants.
    fn root_bracket(&self, a: &Weight, b: &Weight) -> Vec<(BasisSymbol, i64)> {
        let sum = a + b;
        let eps = self.cocycle.epsilon(a, b).value();
        if sum.is_zero() {
            if self.positive_only {
                return Vec::new();
            }
            return a
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (BasisSymbol::Cartan(i), eps * i64::from(c)))
                .collect();
        }
        if self.lookup.contains(&sum) {
            vec![(BasisSymbol::Root(sum), eps)]
        } else {
            Vec::new()
        }
    }
}

impl LieStructure for CocycleAlgebra {
    fn basis(&self) -> Vec<BasisSymbol> {
        let mut b: Vec<BasisSymbol> = Vec::new();
        if !self.positive_only {
            b.extend((0..self.rs.rank()).map(BasisSymbol::Cartan));
        }
        b.extend(self.roots.iter().cloned().map(BasisSymbol::Root));
        b
    }

    fn bracket_symbols(&self, a: &BasisSymbol, b: &BasisSymbol) -> Result<Vec<(BasisSymbol, i64)>> {
        self.check_symbol(a)?;
        self.check_symbol(b)?;
        Ok(match (a, b) {
            (BasisSymbol::Root(x), BasisSymbol::Root(y)) => self.root_bracket(x, y),
            (BasisSymbol::Cartan(i), BasisSymbol::Root(y)) => {
                let c = i64::from(self.rs.pairing(&Weight::unit(self.rs.rank(), *i), y));
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(b.clone(), c)]
                }
            }
            (BasisSymbol::Root(x), BasisSymbol::Cartan(j)) => {
                let c = i64::from(self.rs.pairing(&Weight::unit(self.rs.rank(), *j), x));
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(a.clone(), -c)]
                }
            }
            _ => Vec::new(),
        })
    }

    fn grading(&self, s: &BasisSymbol) -> Weight {
        match s {
            BasisSymbol::Root(w) => w.clone(),
            _ => Weight::zero(self.rs.rank()),
        }
    }

    fn graph(&self) -> &DynkinGraph {
        self.rs.graph()
    }
}

/// Precomputed structure constants `[b_i, b_j] = Σ c_k b_k` on a fixed basis.
#[derive(Debug, Clone)]
pub struct StructureTable {
    graph: DynkinGraph,
    basis: Vec<BasisSymbol>,
    gradings: Vec<Weight>,
    index: HashMap<BasisSymbol, usize>,
    table: Vec<Vec<Vec<(usize, i64)>>>,
}

impl StructureTable {
    pub fn from_structure<L: LieStructure>(alg: &L) -> Result<Self> {
        let basis = alg.basis();
        let index: HashMap<BasisSymbol, usize> = basis.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut table = Vec::with_capacity(basis.len());
        for a in &basis {
            let mut row = Vec::with_capacity(basis.len());
            for b in &basis {
                let entry = alg
                    .bracket_symbols(a, b)?
                    .into_iter()
                    .map(|(s, c)| {
                        index
                            .get(&s)
                            .map(|&k| (k, c))
                            .ok_or_else(|| Error::internal(format!("bracket left the basis: {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                row.push(entry);
            }
            table.push(row);
        }
        Ok(StructureTable {
            graph: alg.graph().clone(),
            gradings: basis.iter().map(|s| alg.grading(s)).collect(),
            basis,
            index,
            table,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn symbols(&self) -> &[BasisSymbol] {
        &self.basis
    }

    pub fn index_of(&self, s: &BasisSymbol) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Structure constants of `[b_i, b_j]`.
    pub fn constants(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i][j]
    }

    /// Matrix of `ad x` in this basis (column `j` is `[x, b_j]`).
    pub fn ad_matrix<T: Scalar>(&self, x: &LieElement<T>) -> Result<Vec<Vec<T>>> {
        let n = self.basis.len();
        let mut m = vec![vec![T::zero(); n]; n];
        for (s, c) in x.terms() {
            let i = self
                .index_of(s)
                .ok_or_else(|| Error::input(format!("{} is not in the basis", s.render(&self.graph))))?;
            for (j, entry) in self.table[i].iter().enumerate() {
                for &(k, v) in entry {
                    m[k][j] = m[k][j].clone() + c.clone() * T::from_int(v);
                }
            }
        }
        Ok(m)
    }
}

impl LieStructure for StructureTable {
    fn basis(&self) -> Vec<BasisSymbol> {
        self.basis.clone()
    }

    fn bracket_symbols(&self, a: &BasisSymbol, b: &BasisSymbol) -> Result<Vec<(BasisSymbol, i64)>> {
        let lookup = |s: &BasisSymbol| {
            self.index_of(s)
                .ok_or_else(|| Error::input(format!("{} is not in the basis", s.render(&self.graph))))
        };
        let (i, j) = (lookup(a)?, lookup(b)?);
        Ok(self.table[i][j].iter().map(|&(k, c)| (self.basis[k].clone(), c)).collect())
    }

    fn grading(&self, s: &BasisSymbol) -> Weight {
        self.index_of(s)
            .map(|i| self.gradings[i].clone())
            .unwrap_or_else(|| Weight::zero(self.graph.n_vertices()))
    }

    fn graph(&self) -> &DynkinGraph {
        &self.graph
    }
}

/// Structure-constant table of the full algebra `g^ε`; dimension `|R| + |I|`.
pub fn build_full_g(rs: &RootSystem, cocycle: &Cocycle) -> Result<StructureTable> {
    StructureTable::from_structure(&CocycleAlgebra::full(rs, cocycle)?)
}

/// Bracket in `n^ε`; both arguments must be supported on positive roots.
pub fn bracket_finite<T: Scalar>(
    x: &LieElement<T>,
    y: &LieElement<T>,
    cocycle: &Cocycle,
    rs: &RootSystem,
) -> Result<LieElement<T>> {
    CocycleAlgebra::positive(rs, cocycle)?.bracket(x, y)
}

/// `[...[ẽ_{k_1}, ẽ_{k_2}], ..., ẽ_{k_h}]` for a presentation given as
/// vertex indices; every partial sum must be a root.
pub fn iterated_root_vector<T: Scalar>(
    presentation: &[usize],
    cocycle: &Cocycle,
    rs: &RootSystem,
) -> Result<LieElement<T>> {
    rs.check_presentation(presentation)?;
    let alg = CocycleAlgebra::positive(rs, cocycle)?;
    let mut acc: LieElement<T> = LieElement::basis(alg.simple(presentation[0]));
    for &k in &presentation[1..] {
        acc = alg.bracket(&acc, &LieElement::basis(alg.simple(k)))?;
    }
    Ok(acc)
}
