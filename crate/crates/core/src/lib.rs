//! Exact computation of the motivic cohomology ring of the complement of an
//! affine hyperplane arrangement, presented as an algebra over the Milnor
//! K-theory of the base field.
//!
//! The crate is organised bottom-up:
//!
//! - [`arrangement`]: flats, deletion, restriction, circuits, normal crossings.
//! - [`exterior`]: the exterior algebra on hyperplane classes modulo the
//!   Orlik–Solomon-type ideal, graded ranks via Smith normal form, nbc basis.
//! - [`motive`]: the deletion–restriction recursion for Tate twists and the
//!   module basis.
//! - [`milnor`]: Milnor symbol coefficients over a field backend.
//! - [`ring`]: normal forms of products of unit classes, relations, Gysin
//!   residues, the divisor map to the combinatorial algebra, tame symbols.
//! - [`cli`]: documents, reports and command dispatch used by the binary.

pub mod arrangement;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod milnor;
pub mod motive;
pub mod numtheory;
pub mod ring;
pub mod scalar;
pub mod units;
pub mod verify;

pub use arrangement::{AffineDependency, Arrangement, Flat, Hyperplane, LinearForm, Restriction, Trace};
pub use error::{Error, Result};
pub use exterior::{ExteriorElement, GradedRanks};
pub use milnor::{CoefficientElement, ZeroTest};
pub use motive::TwistMultiset;
pub use ring::{CohomologyElement, CohomologyRing, Equality, GysinSplit};
pub use scalar::{Field, Scalar};
pub use units::{FieldUnit, UnitElement};
