use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fq::{field, Field, Mat};
use crate::graph::Arrow;
use crate::partition::{root_partitions, RootPartition};
use crate::rep::FqRep;
use crate::roots::RootSystem;
use crate::vector::DimVector;

const PATTERN_BUDGET: u64 = 1 << 12;
const RANDOM_BUDGET: usize = 4096;

/// Indecomposable representatives and iso-class identification for one
/// quiver (a finite Dynkin graph with one arrow per edge) over one field.
///
/// Classes of dimension `d` are told apart by the fingerprint
/// `(dim Hom(M_β, X))_{β ≤ d}`; the Hom matrix between indecomposables is
/// unitriangular in an Auslander–Reiten order, so this restriction still
/// separates classes.
pub struct RepCatalog {
    rs: RootSystem,
    arrows: Vec<Arrow>,
    field: Arc<Field>,
    indec: Mutex<BTreeMap<DimVector, Arc<FqRep>>>,
    hom: Mutex<HashMap<(DimVector, DimVector), usize>>,
    classes: Mutex<HashMap<DimVector, Arc<ClassIndex>>>,
}

struct ClassIndex {
    roots: Vec<DimVector>,
    by_fingerprint: HashMap<Vec<usize>, RootPartition>,
}

/// The shared catalog for `(graph, arrows, q)`.
pub fn catalog(rs: &RootSystem, arrows: &[Arrow], q: u32) -> Result<Arc<RepCatalog>> {
    type Key = (String, Vec<Arrow>, u32);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<RepCatalog>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (rs.graph().name().to_string(), arrows.to_vec(), q);
    let mut guard = cache.lock().expect("catalog cache poisoned");
    if let Some(c) = guard.get(&key) {
        return Ok(c.clone());
    }
    let c = Arc::new(RepCatalog::new(rs, arrows, q)?);
    guard.insert(key, c.clone());
    Ok(c)
}

impl RepCatalog {
    pub fn new(rs: &RootSystem, arrows: &[Arrow], q: u32) -> Result<Self> {
        if rs.is_affine() {
            return Err(Error::input("representation catalogs need a finite type"));
        }
        if arrows.len() != rs.graph().edges().len() {
            return Err(Error::input("a quiver needs exactly one arrow per edge"));
        }
        Ok(RepCatalog {
            rs: rs.clone(),
            arrows: arrows.to_vec(),
            field: field(q)?,
            indec: Mutex::new(BTreeMap::new()),
            hom: Mutex::new(HashMap::new()),
            classes: Mutex::new(HashMap::new()),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn zero_rep(&self, d: &DimVector) -> FqRep {
        FqRep::zero(self.field.clone(), d.dims(), self.arrows.clone())
    }

    /// The indecomposable of dimension `β` (a positive root).
    pub fn indecomposable(&self, beta: &DimVector) -> Result<Arc<FqRep>> {
        if let Some(m) = self.indec.lock().expect("poisoned").get(beta) {
            return Ok(m.clone());
        }
        if !self.rs.is_positive_root(beta) {
            return Err(Error::input(format!("{beta} is not a positive root of {}", self.rs.graph())));
        }
        let m = Arc::new(self.build_indecomposable(beta)?);
        self.indec.lock().expect("poisoned").insert(beta.clone(), m.clone());
        Ok(m)
    }

    fn build_indecomposable(&self, beta: &DimVector) -> Result<FqRep> {
        let n = self.rs.rank();
        if beta.height() == 1 {
            return Ok(self.zero_rep(beta));
        }
        for i in 0..n {
            let Some(prev) = beta.checked_sub(&DimVector::unit(n, i)) else {
                continue;
            };
            if !self.rs.is_positive_root(&prev) {
                continue;
            }
            let base = self.indecomposable(&prev)?;
            if let Some(m) = self.extend_by_patterns(&base, i)? {
                return Ok(m);
            }
        }
        self.random_indecomposable(beta)
    }

    /// Adds one dimension at vertex `i` and tries 0/1 fillings of the new
    /// row or column of each incident arrow.
    fn extend_by_patterns(&self, base: &FqRep, i: usize) -> Result<Option<FqRep>> {
        let mut dims = base.dims().to_vec();
        dims[i] += 1;
        let slots: Vec<(usize, usize, usize)> = self
            .arrows
            .iter()
            .enumerate()
            .flat_map(|(k, h)| {
                let cells: Vec<(usize, usize, usize)> = if h.target == i {
                    (0..dims[h.source]).map(|c| (k, dims[i] - 1, c)).collect()
                } else if h.source == i {
                    (0..dims[h.target]).map(|r| (k, r, dims[i] - 1)).collect()
                } else {
                    Vec::new()
                };
                cells
            })
            .collect();
        if slots.is_empty() {
            return Ok(None);
        }
        let patterns = if slots.len() >= 63 { u64::MAX } else { 1u64 << slots.len() };
        for pattern in 1..patterns.min(PATTERN_BUDGET) {
            let mut maps: Vec<Mat> = self
                .arrows
                .iter()
                .zip(base.maps())
                .map(|(h, m)| {
                    let mut out = Mat::zero(dims[h.target], dims[h.source]);
                    for r in 0..m.rows() {
                        for c in 0..m.cols() {
                            out.set(r, c, m.get(r, c));
                        }
                    }
                    out
                })
                .collect();
            for (bit, &(k, r, c)) in slots.iter().enumerate() {
                if pattern >> bit & 1 == 1 {
                    maps[k].set(r, c, 1);
                }
            }
            let cand = FqRep::new(self.field.clone(), dims.clone(), self.arrows.clone(), maps)?;
            if cand.end_dim()? == 1 {
                return Ok(Some(cand));
            }
        }
        Ok(None)
    }

    fn random_indecomposable(&self, beta: &DimVector) -> Result<FqRep> {
        let seed = beta.iter().fold(0x9e37_79b9_u64, |acc, &c| acc.wrapping_mul(31).wrapping_add(c as u64));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let active = vec![true; self.arrows.len()];
        for _ in 0..RANDOM_BUDGET {
            let cand = FqRep::random(self.field.clone(), beta.dims(), self.arrows.clone(), &active, &mut rng);
            if cand.end_dim()? == 1 {
                return Ok(cand);
            }
        }
        Err(Error::internal(format!(
            "no indecomposable of dimension {beta} found over F_{}",
            self.q()
        )))
    }

    /// A representative of the class with Gabriel label `label`.
    pub fn representative(&self, label: &RootPartition) -> Result<FqRep> {
        let mut rep = self.zero_rep(&DimVector::zero(self.rs.rank()));
        for part in label.parts() {
            rep = rep.direct_sum(&*self.indecomposable(part)?)?;
        }
        Ok(rep)
    }

    fn hom_indec(&self, beta: &DimVector, gamma: &DimVector) -> Result<usize> {
        let key = (beta.clone(), gamma.clone());
        if let Some(&h) = self.hom.lock().expect("poisoned").get(&key) {
            return Ok(h);
        }
        let h = self.indecomposable(beta)?.hom_dim(&*self.indecomposable(gamma)?)?;
        self.hom.lock().expect("poisoned").insert(key, h);
        Ok(h)
    }

    fn class_index(&self, d: &DimVector) -> Result<Arc<ClassIndex>> {
        if let Some(c) = self.classes.lock().expect("poisoned").get(d) {
            return Ok(c.clone());
        }
        let roots: Vec<DimVector> = self
            .rs
            .finite_positive_roots()
            .iter()
            .filter(|b| b.dominated_by(d))
            .cloned()
            .collect();
        let mut by_fingerprint = HashMap::new();
        for label in root_partitions(d, &self.rs)? {
            let mut fp = vec![0; roots.len()];
            for part in label.parts() {
                for (slot, beta) in fp.iter_mut().zip(&roots) {
                    *slot += self.hom_indec(beta, part)?;
                }
            }
            if let Some(other) = by_fingerprint.insert(fp, label.clone()) {
                return Err(Error::internal(format!(
                    "classes {other} and {label} share a Hom fingerprint"
                )));
            }
        }
        let idx = Arc::new(ClassIndex { roots, by_fingerprint });
        self.classes.lock().expect("poisoned").insert(d.clone(), idx.clone());
        Ok(idx)
    }

    /// `(dim Hom(M_β, x))` over the positive roots `β ≤ dim x`, in root order.
    pub fn fingerprint(&self, x: &FqRep) -> Result<Vec<usize>> {
        let idx = self.class_index(&x.dim_vector())?;
        idx.roots
            .iter()
            .map(|beta| self.indecomposable(beta)?.hom_dim(x))
            .collect()
    }

    /// The fingerprint a class of the given label has.
    pub fn label_fingerprint(&self, label: &RootPartition) -> Result<Vec<usize>> {
        let idx = self.class_index(label.total())?;
        idx.by_fingerprint
            .iter()
            .find(|(_, l)| *l == label)
            .map(|(fp, _)| fp.clone())
            .ok_or_else(|| Error::input(format!("{label} is not a root partition")))
    }

    /// The Gabriel label of `x`.
    pub fn identify(&self, x: &FqRep) -> Result<RootPartition> {
        if x.arrows() != self.arrows.as_slice() || x.q() != self.q() {
            return Err(Error::input("representation does not belong to this quiver and field"));
        }
        let fp = self.fingerprint(x)?;
        let idx = self.class_index(&x.dim_vector())?;
        idx.by_fingerprint
            .get(&fp)
            .cloned()
            .ok_or_else(|| Error::internal(format!("fingerprint {fp:?} matches no class")))
    }

    /// One representative per iso-class of dimension `d`.
    pub fn enumerate(&self, d: &DimVector) -> Result<Vec<(RootPartition, FqRep)>> {
        root_partitions(d, &self.rs)?
            .into_iter()
            .map(|label| {
                let rep = self.representative(&label)?;
                Ok((label, rep))
            })
            .collect()
    }

    /// Draws a random representation supported on the flagged arrows.
    pub fn sample<R: Rng>(&self, d: &DimVector, active: &[bool], rng: &mut R) -> FqRep {
        FqRep::random(self.field.clone(), d.dims(), self.arrows.clone(), active, rng)
    }
}
