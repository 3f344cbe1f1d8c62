//! Exact computations for cocycle Lie algebras of ADE quivers.

pub mod bps;
pub mod cocycle;
pub mod error;
pub mod fq;
pub mod graph;
pub mod hall;
pub mod lie;
pub mod linalg;
pub mod partition;
pub mod rep;
pub mod roots;
pub mod scalar;
pub mod selfcheck;
pub mod semican;
pub mod stability;
pub mod vector;

pub use cocycle::{all_orientations, Cocycle, Orientation, Sign};
pub use error::{Error, Result};
pub use graph::{build_graph, DynkinGraph};
pub use hall::{HallConfig, HallElement, HallEngine, IsoClass};
pub use lie::{BasisSymbol, LieElement};
pub use partition::{root_partitions, RootPartition};
pub use rep::FqRep;
pub use roots::RootSystem;
pub use scalar::Scalar;
pub use vector::{DimVector, Weight};

/// Exact rationals, the default scalar.
pub type Rational = num_rational::BigRational;
pub type RationalElement = LieElement<Rational>;
pub type F64Element = LieElement<f64>;
pub type F32Element = LieElement<f32>;
