//! Derangements, property `D_p`, and executable forms of the statements
//! relating `q'`-degree Brauer characters to Sylow normalizers.

mod checks;
mod derange;
mod lemmas;
mod report;

pub use checks::{
    check_characterization, check_manz_wolf, check_theorem_a, check_theorem_b, ibr_qprime, ibr_qprime_with,
    run_checks, CheckContext, CheckOptions, CitedDegrees, QPrimeVerdict,
};
pub use derange::{derangement_set, has_property_dp, property_dp, DerangementSet, DpOutcome};
pub use lemmas::{lemma_property_suite, lemma_property_suite_with, LemmaFailure, LemmaReport, SuiteOptions, LEMMAS};
pub use report::{CheckKind, CheckRecord, CheckReport, CheckRequest, GroupSummary, Provenance, Verdict, Witness};

#[cfg(test)]
mod tests;
