//! Finite polarities, implicative frames and their complex algebras.
//!
//! The crate builds canonical filter-ideal frames of finite implicative
//! lattices, computes the lattice of Galois-stable sets with the frame
//! operators `⇒`, `⦿` and `⇐`, and checks axioms and representation
//! properties by exhaustive enumeration.

pub mod canonical;
pub mod check;
pub mod cli;
pub mod corpus;
pub mod frame;
pub mod gen;
pub mod io;
pub mod lattice;
pub mod polarity;
pub mod relation;
pub mod report;
pub mod semantics;
pub mod sets;

pub use canonical::{CanonicalError, CanonicalFrame};
pub use check::Check;
pub use frame::{ComplexAlgebra, FrameError, ImplicativeFrame};
pub use lattice::{FiniteLattice, LatticeError};
pub use polarity::{Polarity, PolarityError, Side, StableFamily, DEFAULT_MAX_FAMILY};
pub use relation::{Sort, SortedRelation};
pub use sets::PointSet;
