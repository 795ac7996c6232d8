//! Permutations, permutation groups and the subgroup operations every other
//! module builds on.

mod chain;
mod classes;
mod group;
mod perm;
pub mod subgroups;

pub use classes::{conjugacy_classes, p_regular_classes, ConjugacyClass};
pub use group::PermGroup;
pub use perm::Permutation;
pub use subgroups::{
    centralizer, centralizer_of_subgroup, core, derived_subgroup, intersection, normal_closure, normal_closure_of,
    normalizer, product_order, right_transversal,
};

pub(crate) use subgroups::normal_closure_unchecked;

use crate::error::Result;

/// Free-function form of [`PermGroup::new`].
pub fn build_group(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::new(degree, generators)
}

/// Free-function form of [`PermGroup::contains`].
pub fn contains(g: &PermGroup, x: &Permutation) -> Result<bool> {
    g.contains(x)
}

/// Free-function form of [`PermGroup::enumerate_elements`].
pub fn enumerate_elements(g: &PermGroup, cap: u128) -> Result<Vec<Permutation>> {
    g.enumerate_elements(cap)
}
