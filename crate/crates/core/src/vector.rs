//! Elements of the root lattice `Z[I]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Deref, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z[I]`: one integer per vertex, in the graph's vertex order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight(Vec<i32>);

/// A dimension vector: a [`Weight`] with all coordinates nonnegative.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Weight", into = "Weight")]
pub struct DimVector(Weight);

impl Weight {
    pub fn new(coords: Vec<i32>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|&c| c <= 0)
    }

    pub fn scale(&self, k: i32) -> Self {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &Weight) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Comma-separated coordinates, e.g. `2,1,1,1`.
    pub fn encode(&self) -> String {
        self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parses the comma-separated encoding, checking the number of coordinates.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let w: Weight = s.parse()?;
        if w.rank() != rank {
            return Err(Error::input(format!(
                "expected {rank} coordinates, got {} in `{s}`",
                w.rank()
            )));
        }
        Ok(w)
    }

    pub fn into_dim(self) -> Result<DimVector> {
        DimVector::try_from(self)
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::input("empty root vector"));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::input(format!("bad coordinate `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl Deref for Weight {
    type Target = [i32];

    fn deref(&self) -> &[i32] {
        &self.0
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.encode())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// Canonical order: by height, then lexicographically by coordinates.
impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i32>> for Weight {
    fn from(v: Vec<i32>) -> Self {
        Weight(v)
    }
}

impl DimVector {
    pub fn new(coords: Vec<i32>) -> Result<Self> {
        Weight(coords).into_dim()
    }

    pub fn zero(rank: usize) -> Self {
        DimVector(Weight::zero(rank))
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        DimVector(Weight::unit(rank, i))
    }

    pub fn as_weight(&self) -> &Weight {
        &self.0
    }

    pub fn into_weight(self) -> Weight {
        self.0
    }

    /// Total dimension `sum_i d_i`.
    pub fn total(&self) -> usize {
        self.0.height() as usize
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(|&c| c as usize).collect()
    }

    /// `self - other`, when the result stays nonnegative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        let w = &self.0 - &other.0;
        w.is_nonnegative().then_some(DimVector(w))
    }

    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        Weight::parse(s, rank)?.into_dim()
    }
}

impl TryFrom<Weight> for DimVector {
    type Error = Error;

    fn try_from(w: Weight) -> Result<Self> {
        if w.is_nonnegative() {
            Ok(DimVector(w))
        } else {
            Err(Error::input(format!("dimension vector has a negative coordinate: {w}")))
        }
    }
}

impl From<DimVector> for Weight {
    fn from(d: DimVector) -> Self {
        d.0
    }
}

impl Deref for DimVector {
    type Target = Weight;

    fn deref(&self) -> &Weight {
        &self.0
    }
}

impl Ord for DimVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for DimVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &DimVector {
    type Output = DimVector;

    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(&self.0 + &rhs.0)
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_encode() {
        let w: Weight = "2,1,1,1".parse().unwrap();
        assert_eq!(w.coords(), &[2, 1, 1, 1]);
        assert_eq!(w.encode(), "2,1,1,1");
        assert!(Weight::parse("1,2", 3).is_err());
        assert!("1,x".parse::<Weight>().is_err());
    }

    #[test]
    fn dim_vectors_reject_negative_coordinates() {
        assert!(DimVector::new(vec![1, -1]).is_err());
        let d = DimVector::new(vec![1, 2]).unwrap();
        assert_eq!(d.total(), 3);
        let e = DimVector::new(vec![1, 0]).unwrap();
        assert_eq!(d.checked_sub(&e).unwrap().coords(), &[0, 2]);
        assert!(e.checked_sub(&d).is_none());
    }

    #[test]
    fn canonical_order_is_height_then_lex() {
        let mut v: Vec<Weight> = vec![vec![1, 1].into(), vec![0, 1].into(), vec![1, 0].into()];
        v.sort();
        assert_eq!(v, vec![vec![0, 1].into(), vec![1, 0].into(), Weight::from(vec![1, 1])]);
    }
}
