//! Exact multiplicities, colengths and integral closures of m-primary ideals
//! in three computable local-ring models:
//!
//! * numerical semigroup rings `k[[S]]` ([`semigroup`]),
//! * monomial ideals of a polynomial ring ([`monomial`]),
//! * monomial ideals of Stanley–Reisner rings of facet complexes ([`branched`]).
//!
//! The lattice and polyhedral primitives shared by all three live in
//! [`exponent`], [`staircase`] and [`newton`]. Definitional brute-force
//! limits are in [`oracle`], and [`sweep`] runs bounded extremal searches.

pub mod branched;
pub mod error;
pub mod exponent;
pub mod monomial;
pub mod newton;
pub mod oracle;
pub mod rational;
pub mod sample;
pub mod semigroup;
pub mod staircase;
pub mod sweep;
pub mod verify;

pub use branched::{BranchedIdeal, BranchedRing};
pub use error::{Error, Result};
pub use exponent::Exponent;
pub use monomial::MonomialIdeal;
pub use newton::{newton_covolume, newton_membership};
pub use oracle::RingModelHandle;
pub use rational::Rational;
pub use semigroup::{NumericalSemigroup, SemigroupIdeal};
pub use staircase::{lattice_points_outside_union, volume_complement_union};
pub use sweep::{ClosureClass, Family, Quantity, SweepReport, Theory};
