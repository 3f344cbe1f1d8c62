//! Quiver representations over finite fields.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fq::{Fe, Field, Mat, Subspace};
use crate::graph::Arrow;
use crate::vector::DimVector;

/// A representation `(V, x)` over `F_q`: one space `F_q^{d_i}` per vertex and
/// one `d_{h″} × d_{h′}` matrix per arrow.
#[derive(Clone)]
pub struct FqRep {
    field: Arc<Field>,
    dims: Vec<usize>,
    arrows: Vec<Arrow>,
    maps: Vec<Mat>,
}

impl std::fmt::Debug for FqRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FqRep")
            .field("q", &self.field.order())
            .field("dims", &self.dims)
            .field("maps", &self.maps)
            .finish()
    }
}

impl FqRep {
    pub fn new(field: Arc<Field>, dims: Vec<usize>, arrows: Vec<Arrow>, maps: Vec<Mat>) -> Result<Self> {
        if arrows.len() != maps.len() {
            return Err(Error::input("one matrix per arrow required"));
        }
        for (h, m) in arrows.iter().zip(&maps) {
            if h.source >= dims.len() || h.target >= dims.len() {
                return Err(Error::input("arrow endpoint outside the vertex set"));
            }
            if m.rows() != dims[h.target] || m.cols() != dims[h.source] {
                return Err(Error::input(format!(
                    "matrix on arrow {}->{} is {}x{}, expected {}x{}",
                    h.source,
                    h.target,
                    m.rows(),
                    m.cols(),
                    dims[h.target],
                    dims[h.source]
                )));
            }
        }
        Ok(FqRep {
            field,
            dims,
            arrows,
            maps,
        })
    }

    pub fn zero(field: Arc<Field>, dims: Vec<usize>, arrows: Vec<Arrow>) -> Self {
        let maps = arrows.iter().map(|h| Mat::zero(dims[h.target], dims[h.source])).collect();
        FqRep {
            field,
            dims,
            arrows,
            maps,
        }
    }

    /// Uniformly random matrices on the arrows flagged in `active`, zero on
    /// the others.
    pub fn random<R: Rng>(field: Arc<Field>, dims: Vec<usize>, arrows: Vec<Arrow>, active: &[bool], rng: &mut R) -> Self {
        let q = field.order();
        let maps = arrows
            .iter()
            .zip(active)
            .map(|(h, &on)| {
                let (r, c) = (dims[h.target], dims[h.source]);
                if on {
                    Mat::from_rows(r, c, (0..r * c).map(|_| rng.gen_range(0..q) as Fe).collect())
                } else {
                    Mat::zero(r, c)
                }
            })
            .collect();
        FqRep {
            field,
            dims,
            arrows,
            maps,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector::new(self.dims.iter().map(|&d| d as i32).collect()).expect("nonnegative")
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    fn same_quiver(&self, other: &FqRep) -> Result<()> {
        if self.arrows != other.arrows || self.dims.len() != other.dims.len() || self.q() != other.q() {
            return Err(Error::input("representations of different quivers or fields"));
        }
        Ok(())
    }

    /// `self ⊕ other`, block diagonal.
    pub fn direct_sum(&self, other: &FqRep) -> Result<FqRep> {
        self.same_quiver(other)?;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .arrows
            .iter()
            .zip(self.maps.iter().zip(&other.maps))
            .map(|(h, (a, b))| {
                let mut m = Mat::zero(dims[h.target], dims[h.source]);
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m.set(a.rows() + i, a.cols() + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(FqRep {
            field: self.field.clone(),
            dims,
            arrows: self.arrows.clone(),
            maps,
        })
    }

    /// `dim Hom(self, x)`: the nullity of the linear system
    /// `x_h f_{h′} = f_{h″} self_h` in the unknown maps `f_i`.
    pub fn hom_dim(&self, x: &FqRep) -> Result<usize> {
        self.same_quiver(x)?;
        let f = &*self.field;
        let n = self.dims.len();
        let mut offset = vec![0; n + 1];
        for i in 0..n {
            offset[i + 1] = offset[i] + x.dims[i] * self.dims[i];
        }
        let unknowns = offset[n];
        if unknowns == 0 {
            return Ok(0);
        }
        let var = |i: usize, r: usize, c: usize| offset[i] + r * self.dims[i] + c;
        let mut rows: Vec<Fe> = Vec::new();
        let mut count = 0;
        for (k, h) in self.arrows.iter().enumerate() {
            let (s, t) = (h.source, h.target);
            let (xm, mm) = (&x.maps[k], &self.maps[k]);
            for a in 0..x.dims[t] {
                for b in 0..self.dims[s] {
                    let mut eq = vec![0 as Fe; unknowns];
                    for kk in 0..x.dims[s] {
                        let v = xm.get(a, kk);
                        if v != 0 {
                            let idx = var(s, kk, b);
                            eq[idx] = f.add(eq[idx], v);
                        }
                    }
                    for l in 0..self.dims[t] {
                        let v = mm.get(l, b);
                        if v != 0 {
                            let idx = var(t, a, l);
                            eq[idx] = f.sub(eq[idx], v);
                        }
                    }
                    rows.extend(eq);
                    count += 1;
                }
            }
        }
        if count == 0 {
            return Ok(unknowns);
        }
        Ok(Mat::from_rows(count, unknowns, rows).nullity(f))
    }

    pub fn end_dim(&self) -> Result<usize> {
        self.hom_dim(self)
    }

    /// Whether `x_h(W_{h′}) ⊆ W_{h″}` for every arrow.
    pub fn is_invariant(&self, w: &[Subspace]) -> bool {
        let f = &*self.field;
        self.arrows.iter().zip(&self.maps).all(|(h, m)| {
            let (ws, wt) = (&w[h.source], &w[h.target]);
            (0..ws.dim()).all(|r| wt.contains(f, &m.apply(f, ws.basis().row(r))))
        })
    }

    /// The subrepresentation on an invariant graded subspace, in echelon
    /// coordinates.
    pub fn subrep(&self, w: &[Subspace]) -> FqRep {
        let f = &*self.field;
        let dims: Vec<usize> = w.iter().map(Subspace::dim).collect();
        let maps = self
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(h, m)| {
                let (ws, wt) = (&w[h.source], &w[h.target]);
                let mut out = Mat::zero(wt.dim(), ws.dim());
                for c in 0..ws.dim() {
                    let coords = wt.coordinates(&m.apply(f, ws.basis().row(c)));
                    for (r, v) in coords.into_iter().enumerate() {
                        out.set(r, c, v);
                    }
                }
                out
            })
            .collect();
        FqRep {
            field: self.field.clone(),
            dims,
            arrows: self.arrows.clone(),
            maps,
        }
    }

    /// The quotient by an invariant graded subspace, coordinates on the free
    /// columns of each echelon basis.
    pub fn quotient(&self, w: &[Subspace]) -> FqRep {
        let f = &*self.field;
        let dims: Vec<usize> = w.iter().zip(&self.dims).map(|(s, d)| d - s.dim()).collect();
        let maps = self
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(h, m)| {
                let (ws, wt) = (&w[h.source], &w[h.target]);
                let free = ws.free_columns();
                let mut out = Mat::zero(dims[h.target], dims[h.source]);
                for (c, &col) in free.iter().enumerate() {
                    let mut e = vec![0 as Fe; self.dims[h.source]];
                    e[col] = 1;
                    let coords = wt.quotient_coordinates(f, &m.apply(f, &e));
                    for (r, v) in coords.into_iter().enumerate() {
                        out.set(r, c, v);
                    }
                }
                out
            })
            .collect();
        FqRep {
            field: self.field.clone(),
            dims,
            arrows: self.arrows.clone(),
            maps,
        }
    }

    /// The nilpotent operator `Σ_h x_h` on `⊕_i V_i` is nilpotent.
    pub fn is_nilpotent(&self) -> bool {
        let f = &*self.field;
        let total = self.total_dim();
        let mut offset = vec![0; self.dims.len() + 1];
        for i in 0..self.dims.len() {
            offset[i + 1] = offset[i] + self.dims[i];
        }
        let mut big = Mat::zero(total, total);
        for (h, m) in self.arrows.iter().zip(&self.maps) {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let (i, j) = (offset[h.target] + r, offset[h.source] + c);
                    big.set(i, j, f.add(big.get(i, j), m.get(r, c)));
                }
            }
        }
        let mut power = Mat::identity(total);
        for _ in 0..total {
            power = power.mul(f, &big);
        }
        power.is_zero()
    }

    pub fn map_for(&self, h: &Arrow) -> Option<&Mat> {
        self.arrows.iter().position(|a| a == h).map(|k| &self.maps[k])
    }
}
