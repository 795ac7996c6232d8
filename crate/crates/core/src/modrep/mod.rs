//! Modules over group algebras in positive characteristic: the regular
//! module, the MeatAxe, endomorphism degrees, and irreducible Brauer
//! character degrees.

mod endo;
mod ibr;
mod meataxe;
mod module;

pub use endo::{endo_degree, module_isomorphic};
pub use ibr::{distinct_constituents, ibr_degrees, ibr_degrees_capped, Constituent, IBrProfile};
pub use meataxe::{chop, chop_with, is_irreducible, ChopConfig};
pub use module::{check_homomorphism, regular_module, spin_up, GModule, WordTree};

#[cfg(test)]
mod tests;
