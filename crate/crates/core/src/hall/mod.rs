//! The degenerate Hall algebra of an oriented Dynkin quiver: Hall numbers
//! by subspace counting over `F_q`, Hall polynomials by interpolation, and
//! the product at `q = 1`.
//!
//! Product convention: in `[N] * [P]` the first factor is the quotient type
//! and the second the submodule type.

mod cache;
mod catalog;
mod poly;

pub use cache::{
    default_cache_dir, encode_record, parse_record, validate_cache_file, CacheKey, CacheReport, CorruptRecord,
    HallCache, CACHE_ENV, CACHE_FILE, CACHE_HEADER,
};
pub use catalog::{catalog, RepCatalog};
pub use poly::{evaluate, interpolate};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cocycle::{Cocycle, Orientation};
use crate::error::{Error, Result};
use crate::fq::{gaussian_binomial, graded_subspaces, prime_powers};
use crate::graph::Arrow;
use crate::partition::{root_partitions, RootPartition};
use crate::rep::FqRep;
use crate::roots::RootSystem;
use crate::vector::DimVector;

/// Size bounds for counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HallConfig {
    /// Largest total dimension of a counted representation.
    pub max_total_dim: usize,
    /// Largest field order used for sampling.
    pub max_q: u32,
    /// Largest number of graded subspaces enumerated for one count.
    pub max_subspaces: u128,
}

impl Default for HallConfig {
    fn default() -> Self {
        HallConfig {
            max_total_dim: 8,
            max_q: 64,
            max_subspaces: 5_000_000,
        }
    }
}

/// An iso-class of representations of an oriented quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsoClass {
    pub orientation: Orientation,
    pub label: RootPartition,
}

impl IsoClass {
    pub fn dim(&self) -> &DimVector {
        self.label.total()
    }
}

/// An integer combination of iso-classes of one orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallElement {
    orientation: Orientation,
    terms: BTreeMap<RootPartition, i64>,
}

impl HallElement {
    pub fn zero(orientation: &Orientation) -> Self {
        HallElement {
            orientation: orientation.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn class(orientation: &Orientation, label: RootPartition) -> Self {
        let mut e = HallElement::zero(orientation);
        e.add_term(label, 1);
        e
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn add_term(&mut self, label: RootPartition, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(label.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&label);
        }
    }

    pub fn terms(&self) -> &BTreeMap<RootPartition, i64> {
        &self.terms
    }

    pub fn coefficient(&self, label: &RootPartition) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn classes(&self) -> impl Iterator<Item = (IsoClass, i64)> + '_ {
        self.terms.iter().map(|(l, &c)| {
            (
                IsoClass {
                    orientation: self.orientation.clone(),
                    label: l.clone(),
                },
                c,
            )
        })
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = HallElement::zero(&self.orientation);
        for (l, &c) in &self.terms {
            out.add_term(l.clone(), c * k);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, &c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1))
    }
}

impl fmt::Display for HallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(l, c)| format!("{c}*[{l}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `h^M_{N,P}(q)` as a polynomial in `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallPolynomial {
    pub m: RootPartition,
    pub n: RootPartition,
    pub p: RootPartition,
    pub coeffs: Vec<i64>,
}

impl HallPolynomial {
    pub fn eval(&self, q: i64) -> i128 {
        evaluate(&self.coeffs, q)
    }
}

/// Outcome of comparing `[E_α, E_β]` with `ε(α, β) E_{α+β}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketCheck {
    pub passed: bool,
    pub lhs: HallElement,
    pub rhs: HallElement,
}

impl BracketCheck {
    pub fn diff(&self) -> HallElement {
        self.lhs.minus(&self.rhs)
    }
}

type Triple = (RootPartition, RootPartition, RootPartition);

/// Hall numbers, polynomials and products for one oriented Dynkin quiver.
pub struct HallEngine {
    rs: RootSystem,
    orientation: Orientation,
    arrows: Vec<Arrow>,
    config: HallConfig,
    memo: Mutex<HashMap<Triple, Arc<HallPolynomial>>>,
    cache: Option<Arc<HallCache>>,
}

impl HallEngine {
    pub fn new(rs: &RootSystem, orientation: &Orientation, config: HallConfig) -> Result<Self> {
        if rs.is_affine() {
            return Err(Error::input("Hall algebras are only computed for finite types"));
        }
        if orientation.graph() != rs.graph() {
            return Err(Error::input("orientation and root system live on different graphs"));
        }
        Ok(HallEngine {
            rs: rs.clone(),
            orientation: orientation.clone(),
            arrows: orientation.arrows(),
            config,
            memo: Mutex::new(HashMap::new()),
            cache: None,
        })
    }

    pub fn with_cache(mut self, cache: Arc<HallCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn config(&self) -> &HallConfig {
        &self.config
    }

    fn check_q(&self, q: u32) -> Result<()> {
        if q > self.config.max_q {
            return Err(Error::resource(format!("q = {q} exceeds the bound {}", self.config.max_q)));
        }
        Ok(())
    }

    fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.rank() != self.rs.rank() {
            return Err(Error::input(format!("dimension vector {d} has the wrong length")));
        }
        if d.total() > self.config.max_total_dim {
            return Err(Error::resource(format!(
                "total dimension {} exceeds the bound {}",
                d.total(),
                self.config.max_total_dim
            )));
        }
        Ok(())
    }

    pub fn catalog(&self, q: u32) -> Result<Arc<RepCatalog>> {
        self.check_q(q)?;
        catalog(&self.rs, &self.arrows, q)
    }

    /// One representative per iso-class of dimension `d` over `F_q`.
    pub fn enumerate_reps(&self, d: &DimVector, q: u32) -> Result<Vec<(IsoClass, FqRep)>> {
        self.check_dim(d)?;
        Ok(self
            .catalog(q)?
            .enumerate(d)?
            .into_iter()
            .map(|(label, rep)| {
                (
                    IsoClass {
                        orientation: self.orientation.clone(),
                        label,
                    },
                    rep,
                )
            })
            .collect())
    }

    pub fn identify_class(&self, x: &FqRep) -> Result<IsoClass> {
        self.check_dim(&x.dim_vector())?;
        let label = self.catalog(x.q())?.identify(x)?;
        Ok(IsoClass {
            orientation: self.orientation.clone(),
            label,
        })
    }

    fn check_triple(&self, m: &RootPartition, n: &RootPartition, p: &RootPartition) -> Result<()> {
        for l in [m, n, p] {
            if l.rank() != self.rs.rank() {
                return Err(Error::input(format!("label {l} has the wrong rank")));
            }
            l.validate(&self.rs, l.total())?;
        }
        if &(n.total() + p.total()) != m.total() {
            return Err(Error::input(format!(
                "dim N + dim P = {} differs from dim M = {}",
                n.total() + p.total(),
                m.total()
            )));
        }
        self.check_dim(m.total())
    }

    /// Subrepresentations `W` of the class `M` with `W ≅ P` and `M/W ≅ N`,
    /// counted over `F_q`.
    pub fn hall_number(&self, m: &RootPartition, n: &RootPartition, p: &RootPartition, q: u32) -> Result<u64> {
        self.check_triple(m, n, p)?;
        let cat = self.catalog(q)?;
        let dims = m.total().dims();
        let sub = p.total().dims();
        let work: u128 = dims
            .iter()
            .zip(&sub)
            .map(|(&d, &a)| gaussian_binomial(d, a, u64::from(q)))
            .product();
        if work > self.config.max_subspaces {
            return Err(Error::resource(format!(
                "{work} graded subspaces exceed the bound {}",
                self.config.max_subspaces
            )));
        }
        let rep = cat.representative(m)?;
        let fp_p = cat.label_fingerprint(p)?;
        let fp_n = cat.label_fingerprint(n)?;
        let mut count = 0;
        for w in graded_subspaces(cat.field(), &dims, &sub) {
            if !rep.is_invariant(&w) {
                continue;
            }
            if cat.fingerprint(&rep.subrep(&w))? != fp_p {
                continue;
            }
            if cat.fingerprint(&rep.quotient(&w))? == fp_n {
                count += 1;
            }
        }
        Ok(count)
    }

    fn cache_key(&self, m: &RootPartition, n: &RootPartition, p: &RootPartition) -> CacheKey {
        CacheKey {
            graph: self.rs.graph().name().to_string(),
            orientation: self.orientation.encode(),
            m: m.clone(),
            n: n.clone(),
            p: p.clone(),
        }
    }

    /// The Hall polynomial, from counts at the first `D + 1` prime powers
    /// (`D = Σ a_i (d_i − a_i)`, `a = dim P`, `d = dim M`) checked at the next one.
    pub fn hall_polynomial(&self, m: &RootPartition, n: &RootPartition, p: &RootPartition) -> Result<Arc<HallPolynomial>> {
        self.check_triple(m, n, p)?;
        let triple = (m.clone(), n.clone(), p.clone());
        if let Some(h) = self.memo.lock().expect("poisoned").get(&triple) {
            return Ok(h.clone());
        }
        let key = self.cache_key(m, n, p);
        let coeffs = match self.cache.as_ref().and_then(|c| c.get(&key)) {
            Some(c) => c,
            None => {
                let c = self.count_and_interpolate(m, n, p)?;
                if let Some(cache) = &self.cache {
                    cache.insert(key, c.clone());
                }
                c
            }
        };
        let h = Arc::new(HallPolynomial {
            m: m.clone(),
            n: n.clone(),
            p: p.clone(),
            coeffs,
        });
        self.memo.lock().expect("poisoned").insert(triple, h.clone());
        Ok(h)
    }

    fn count_and_interpolate(&self, m: &RootPartition, n: &RootPartition, p: &RootPartition) -> Result<Vec<i64>> {
        let degree: i32 = m
            .total()
            .iter()
            .zip(p.total().iter())
            .map(|(&d, &a)| a * (d - a))
            .sum();
        let qs: Vec<u32> = prime_powers().take(degree as usize + 2).collect();
        let control = *qs.last().expect("at least two sample points");
        self.check_q(control)?;
        let counts: Vec<Result<u64>> = std::thread::scope(|s| {
            let handles: Vec<_> = qs
                .iter()
                .map(|&q| s.spawn(move || self.hall_number(m, n, p, q)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().unwrap_or_else(|_| Err(Error::internal("counting thread panicked"))))
                .collect()
        });
        let mut points = Vec::with_capacity(qs.len());
        for (&q, c) in qs.iter().zip(counts) {
            points.push((i64::from(q), c? as i64));
        }
        let (control_point, sample) = points.split_last().expect("nonempty");
        let coeffs = interpolate(sample)?;
        if evaluate(&coeffs, control_point.0) != i128::from(control_point.1) {
            return Err(Error::internal(format!(
                "Hall polynomial of ({m}; {n}, {p}) exceeds its degree bound {degree}: control count at q = {control} disagrees"
            )));
        }
        Ok(coeffs)
    }

    /// `[N] * [P] = Σ_M h^M_{N,P}(1) [M]`, extended bilinearly.
    pub fn product(&self, f: &HallElement, g: &HallElement) -> Result<HallElement> {
        self.same_orientation(f)?;
        self.same_orientation(g)?;
        let mut out = HallElement::zero(&self.orientation);
        for (n, &cn) in f.terms() {
            for (p, &cp) in g.terms() {
                let total = n.total() + p.total();
                self.check_dim(&total)?;
                for m in root_partitions(&total, &self.rs)? {
                    let h = self.hall_polynomial(&m, n, p)?.eval(1);
                    let h = i64::try_from(h).map_err(|_| Error::resource("Hall number overflows i64"))?;
                    out.add_term(m, cn * cp * h);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, f: &HallElement, g: &HallElement) -> Result<HallElement> {
        Ok(self.product(f, g)?.minus(&self.product(g, f)?))
    }

    fn same_orientation(&self, f: &HallElement) -> Result<()> {
        if f.orientation() != &self.orientation {
            return Err(Error::input("Hall element of a different orientation"));
        }
        Ok(())
    }

    /// `E_α`: the class of the indecomposable of dimension `α`.
    pub fn e_alpha(&self, alpha: &DimVector) -> Result<HallElement> {
        if !self.rs.is_positive_root(alpha) {
            return Err(Error::input(format!("{alpha} is not a positive root of {}", self.rs.graph())));
        }
        Ok(HallElement::class(&self.orientation, RootPartition::single(alpha.clone())))
    }

    pub fn simple(&self, i: usize) -> HallElement {
        HallElement::class(
            &self.orientation,
            RootPartition::single(DimVector::unit(self.rs.rank(), i)),
        )
    }

    /// Compares `E_α * E_β − E_β * E_α` with `ε_Ω(α, β) E_{α+β}` (zero when
    /// `α + β` is not a root).
    pub fn verify_bracket_e(&self, alpha: &DimVector, beta: &DimVector) -> Result<BracketCheck> {
        let lhs = self.commutator(&self.e_alpha(alpha)?, &self.e_alpha(beta)?)?;
        let sum = alpha + beta;
        let rhs = if self.rs.is_positive_root(&sum) {
            let eps = Cocycle::new(&self.orientation).epsilon(alpha, beta).value();
            self.e_alpha(&sum)?.scaled(eps)
        } else {
            HallElement::zero(&self.orientation)
        };
        Ok(BracketCheck {
            passed: lhs == rhs,
            lhs,
            rhs,
        })
    }

    /// `[[…[S_{k_1}, S_{k_2}], …], S_{k_h}]`, checked against
    /// `∏_{i<j} ε(α_{k_i}, α_{k_j}) E_α`.
    pub fn iterated_bracket_value(&self, presentation: &[usize]) -> Result<HallElement> {
        let alpha = self.rs.check_presentation(presentation)?.into_dim()?;
        let mut x = self.simple(presentation[0]);
        for &k in &presentation[1..] {
            x = self.commutator(&x, &self.simple(k))?;
        }
        let simple: Vec<DimVector> = presentation
            .iter()
            .map(|&k| DimVector::unit(self.rs.rank(), k))
            .collect();
        let refs: Vec<&[i32]> = simple.iter().map(|d| &d[..]).collect();
        let sign = Cocycle::new(&self.orientation).ordered_product(&refs).value();
        let expected = self.e_alpha(&alpha)?.scaled(sign);
        if x != expected {
            return Err(Error::validation(format!(
                "iterated bracket {x} differs from {expected} for presentation {presentation:?}"
            )));
        }
        Ok(x)
    }

    /// `(ad S_i)^{1 − i·j}(S_j) = 0` in the Hall algebra.
    pub fn serre(&self, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Err(Error::input("Serre relations need two distinct vertices"));
        }
        let si = self.simple(i);
        let mut x = self.simple(j);
        for _ in 0..=self.rs.graph().edge_count(i, j) {
            x = self.commutator(&si, &x)?;
        }
        Ok(x.is_zero())
    }

    /// Writes pending polynomials to the disk cache, if any.
    pub fn flush(&self) -> Result<()> {
        match &self.cache {
            Some(c) => c.flush(),
            None => Ok(()),
        }
    }
}

/// Field orders and sample count used by [`generic_label`].
pub const GENERIC_QS: [u32; 2] = [101, 103];
pub const GENERIC_SAMPLES: usize = 16;
const GENERIC_ROUNDS: usize = 4;
const GENERIC_SEED: u64 = 0x0051_1e00;

/// The Gabriel label of a generic representation of the reference quiver
/// supported on `active` (a subset of the reference arrows), with total
/// dimension at most `max_total_dim`.
///
/// Samples over `F_101` and `F_103` with a fixed seed; Hom dimensions are
/// upper semicontinuous, so the generic class has the pointwise smallest
/// fingerprint. Both fields must agree.
pub fn generic_label(rs: &RootSystem, d: &DimVector, active: &[Arrow]) -> Result<RootPartition> {
    generic_label_in(rs, d, &Orientation::reference(rs.graph()), active)
}

/// [`generic_label`] with labels taken in the indexing of `reference`.
pub fn generic_label_in(
    rs: &RootSystem,
    d: &DimVector,
    reference: &Orientation,
    active: &[Arrow],
) -> Result<RootPartition> {
    let arrows = reference.arrows();
    for h in active {
        if !arrows.contains(h) {
            return Err(Error::input(format!(
                "arrow {}>{} is not an arrow of the indexing orientation",
                rs.graph().label(h.source),
                rs.graph().label(h.target)
            )));
        }
    }
    if d.rank() != rs.rank() {
        return Err(Error::input(format!("dimension vector {d} has the wrong length")));
    }
    let flags: Vec<bool> = arrows.iter().map(|h| active.contains(h)).collect();
    let mut labels = Vec::new();
    for q in GENERIC_QS {
        let cat = catalog(rs, &arrows, q)?;
        let mut rng = ChaCha8Rng::seed_from_u64(GENERIC_SEED ^ u64::from(q));
        let mut found = None;
        for _ in 0..GENERIC_ROUNDS {
            let mut fps = Vec::with_capacity(GENERIC_SAMPLES);
            for _ in 0..GENERIC_SAMPLES {
                let x = cat.sample(d, &flags, &mut rng);
                fps.push((cat.fingerprint(&x)?, x));
            }
            let minimal = fps
                .iter()
                .find(|(fp, _)| fps.iter().all(|(other, _)| fp.iter().zip(other).all(|(a, b)| a <= b)));
            if let Some((_, x)) = minimal {
                found = Some(cat.identify(x)?);
                break;
            }
        }
        labels.push(found.ok_or_else(|| {
            Error::internal(format!("generic sampling of {d} over F_{q} found no dominant fingerprint"))
        })?);
    }
    if labels[0] != labels[1] {
        return Err(Error::internal(format!(
            "generic labels of {d} disagree between fields: {} vs {}",
            labels[0], labels[1]
        )));
    }
    Ok(labels.swap_remove(0))
}

/// The component label of `E_{V,Ω}`: the generic label for the arrows of `Ω`
/// that also lie in the reference orientation.
pub fn orientation_label(rs: &RootSystem, d: &DimVector, orientation: &Orientation) -> Result<RootPartition> {
    orientation_label_in(rs, d, orientation, &Orientation::reference(rs.graph()))
}

/// [`orientation_label`] in the indexing of an arbitrary reference orientation.
pub fn orientation_label_in(
    rs: &RootSystem,
    d: &DimVector,
    orientation: &Orientation,
    reference: &Orientation,
) -> Result<RootPartition> {
    generic_label_in(rs, d, reference, &orientation.common_arrows(reference))
}
