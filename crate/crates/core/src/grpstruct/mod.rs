//! Sylow subgroups, radicals and residuals, upper series, quotients and
//! relative centralizers.

mod cache;
mod kernels;
mod quotient;
mod radical;
mod series;
mod sylow;

pub use cache::StructureCache;
pub use kernels::{cyclic_quotient_kernels, relative_centralizer, KERNEL_CAP};
pub use quotient::{quotient_group, Epimorphism};
pub use radical::{o_p_q, o_radical, q_residual, relative_radical};
pub use series::{
    derived_series, is_metabelian, is_p_solvable, is_solvable, q_series_and_length, upper_series_from, FactorKind,
    QSeries, SeriesTerm,
};
pub use sylow::{sylow_subgroup, sylow_subgroup_seeded};
