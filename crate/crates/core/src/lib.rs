//! Max-k-LIN over finite groups, executable end to end.
//!
//! The crate provides:
//! - explicit finite groups with subgroup/quotient machinery ([`group`]),
//! - complete unitary irreducible representations of the catalog groups
//!   with tensor decomposition ([`rep`]),
//! - the Fourier transform on G and Gⁿ with its analytic identities
//!   ([`fourier`]),
//! - weighted k-LIN instances over a group, their abelianization, and the
//!   1/|[G,G]| approximation pipeline ([`lin`], [`solvers`]),
//! - the 3-query dictatorship test with exact and Monte Carlo evaluation
//!   ([`dictatorship`]),
//! - Label Cover and its reduction to 3-LIN through folded long codes with
//!   Fourier decoding ([`reduction`]).

pub mod cli;
pub mod cmat;
pub mod dictatorship;
pub mod fourier;
pub mod group;
pub mod lin;
pub mod reduction;
pub mod rep;
pub mod solvers;

pub use fourier::{FourierError, FourierTable, GroupTable, ScalarTable};
pub use group::{ElemId, FiniteGroup, GroupError};
pub use lin::{Assignment, LinError, LinInstance};
pub use rep::{Irrep, IrrepSet, RepError};
pub use solvers::{SolveError, SolveReport};
