//! Braid monodromy factorizations of braided surfaces and the invariants
//! that tell such surfaces apart: complement groups, intersection forms of
//! double branched covers, and Alexander polynomials of boundary closures.
//!
//! Everything is computed in exact arithmetic. The braid word problem is
//! solved with the Artin action on the free group, integer linear algebra uses
//! Smith and Hermite normal forms, and binary forms are compared by Gauss
//! reduction.

pub mod braid;
pub mod burau;
pub mod cover;
pub mod error;
pub mod factorization;
pub mod fixtures;
pub mod free;
pub mod intlinalg;
pub mod pin;
pub mod presentation;
pub mod qform;
pub mod report;

pub use braid::{ArtinKey, BraidWord, Permutation};
pub use error::{Error, Result};
pub use factorization::{beta_family, Factorization, HalfTwist};
pub use fixtures::Fixtures;
pub use free::FreeWord;
