//! Finite permutation groups, structural subgroup functors, finite-field
//! linear algebra and a MeatAxe-based oracle for irreducible p-Brauer
//! character degrees, together with executable checks relating
//! "q divides no p-Brauer degree" to derangement conditions on Sylow
//! normalizers.

pub mod error;
pub mod ffalg;
pub mod grpstruct;
pub mod modrep;
pub mod numbers;
pub mod permcore;
pub mod theorems;

pub use error::{Error, Result};
pub use permcore::{ConjugacyClass, PermGroup, Permutation};

/// Default cap on full element enumeration.
pub const DEFAULT_ENUM_CAP: u128 = 100_000;
/// Default cap on the group order for regular-module chopping.
pub const DEFAULT_IBR_CAP: u128 = 1_500;

#[cfg(test)]
pub(crate) mod testutil;
