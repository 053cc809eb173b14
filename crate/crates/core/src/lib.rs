//! Exact combinatorics and toric intersection theory for simple rational
//! polytopes: f- and h-vectors, the alternating sum `sigma = f(-2)`, normal
//! fans and their local convexity, and the L-class signature computed from
//! intersection numbers of torus-invariant divisors.

pub mod analysis;
pub mod chow;
pub mod cone;
pub mod error;
pub mod fan;
pub mod generators;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod polytope;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type IntVector = linalg::Vector<Integer>;
pub type RatVector = linalg::Vector<Rational>;
pub type RatMatrix = linalg::Matrix<Rational>;
pub type RationalSeries = series::Series<Rational>;
