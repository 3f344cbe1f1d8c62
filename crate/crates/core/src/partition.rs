//! Root partitions: multisets of positive roots with a prescribed sum.
//!
//! For a finite type these index the iso-classes of representations of any
//! orientation with a given dimension vector, and equally the irreducible
//! components of the nilpotent variety of the double quiver.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::RootSystem;
use crate::vector::{DimVector, Weight};

/// A multiset of positive roots, parts kept in canonical order
/// (height, then lexicographic), so equal multisets compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootPartition {
    parts: Vec<DimVector>,
    total: DimVector,
}

impl RootPartition {
    pub fn new(mut parts: Vec<DimVector>, rank: usize) -> Self {
        parts.sort();
        let total = parts.iter().fold(DimVector::zero(rank), |acc, p| &acc + p);
        RootPartition { parts, total }
    }

    pub fn empty(rank: usize) -> Self {
        RootPartition::new(Vec::new(), rank)
    }

    pub fn single(root: DimVector) -> Self {
        let rank = root.rank();
        RootPartition::new(vec![root], rank)
    }

    pub fn parts(&self) -> &[DimVector] {
        &self.parts
    }

    pub fn total(&self) -> &DimVector {
        &self.total
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.total.rank()
    }

    /// Multiset union.
    pub fn union(&self, other: &RootPartition) -> RootPartition {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        RootPartition::new(parts, self.rank())
    }

    /// Semicolon-joined root encodings, e.g. `1,0,0,0;1,1,1,1`. The empty
    /// partition encodes as the empty string.
    pub fn key(&self) -> String {
        self.parts.iter().map(|p| p.encode()).collect::<Vec<_>>().join(";")
    }

    /// Parses [`RootPartition::key`] output (parts may come in any order).
    pub fn parse_key(s: &str, rank: usize) -> Result<Self> {
        Self::parse_with(s, ';', rank)
    }

    pub(crate) fn parse_with(s: &str, sep: char, rank: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(RootPartition::empty(rank));
        }
        let parts = s
            .split(sep)
            .map(|p| DimVector::parse(p, rank))
            .collect::<Result<Vec<_>>>()?;
        if parts.iter().any(|p| p.is_zero()) {
            return Err(Error::input(format!("zero part in partition `{s}`")));
        }
        Ok(RootPartition::new(parts, rank))
    }

    /// Checks that every part is a positive root of `rs` and the parts sum to
    /// `total`.
    pub fn validate(&self, rs: &RootSystem, total: &Weight) -> Result<()> {
        for p in &self.parts {
            if !rs.is_positive_real_root(p) {
                return Err(Error::validation(format!("part {p} is not a positive root of {}", rs.graph())));
            }
        }
        if self.total.as_weight() != total {
            return Err(Error::validation(format!(
                "parts of `{}` sum to {}, expected {total}",
                self.key(),
                self.total
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for RootPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl fmt::Display for RootPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

/// Every multiset of positive roots summing to `alpha`, each exactly once,
/// sorted.
pub fn root_partitions(alpha: &DimVector, rs: &RootSystem) -> Result<Vec<RootPartition>> {
    if rs.is_affine() {
        return Err(Error::input("root partitions are only enumerated for finite types"));
    }
    let roots = rs.finite_positive_roots();
    let mut out = Vec::new();
    let mut acc = Vec::new();
    extend_partitions(alpha.as_weight(), roots, 0, &mut acc, &mut out, rs.rank());
    out.sort();
    Ok(out)
}

fn extend_partitions(
    rem: &Weight,
    roots: &[DimVector],
    start: usize,
    acc: &mut Vec<DimVector>,
    out: &mut Vec<RootPartition>,
    rank: usize,
) {
    if rem.is_zero() {
        out.push(RootPartition::new(acc.clone(), rank));
        return;
    }
    for (k, r) in roots.iter().enumerate().skip(start) {
        if r.dominated_by(rem) {
            acc.push(r.clone());
            extend_partitions(&(rem - r.as_weight()), roots, k, acc, out, rank);
            acc.pop();
        }
    }
}
