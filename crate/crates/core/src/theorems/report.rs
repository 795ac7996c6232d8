use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numbers::is_prime;
use crate::permcore::{ConjugacyClass, PermGroup, Permutation};
use crate::{DEFAULT_ENUM_CAP, DEFAULT_IBR_CAP};

/// The checks a request can ask for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckKind {
    #[serde(rename = "theoremA")]
    TheoremA,
    #[serde(rename = "manzWolf")]
    ManzWolf,
    #[serde(rename = "theoremB")]
    TheoremB,
    #[serde(rename = "characterization")]
    Characterization,
    #[serde(rename = "ibr")]
    Ibr,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] =
        [CheckKind::TheoremA, CheckKind::ManzWolf, CheckKind::TheoremB, CheckKind::Characterization, CheckKind::Ibr];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::TheoremA => "theoremA",
            CheckKind::ManzWolf => "manzWolf",
            CheckKind::TheoremB => "theoremB",
            CheckKind::Characterization => "characterization",
            CheckKind::Ibr => "ibr",
        }
    }

    /// Parses a comma-separated list; `all` selects every check.
    pub fn parse_list(s: &str) -> std::result::Result<BTreeSet<CheckKind>, String> {
        let mut out = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if part == "all" {
                out.extend(CheckKind::ALL);
            } else {
                out.insert(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err("no checks selected".into());
        }
        Ok(out)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CheckKind::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// One batch of checks on one group for a fixed pair of primes.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRequest {
    pub group: String,
    pub p: u64,
    pub q: u64,
    pub checks: BTreeSet<CheckKind>,
    pub ibr_cap: u128,
    pub enum_cap: u128,
    pub seed: u64,
}

impl CheckRequest {
    pub fn new(group: impl Into<String>, p: u64, q: u64, checks: BTreeSet<CheckKind>) -> Result<Self> {
        let req = CheckRequest {
            group: group.into(),
            p,
            q,
            checks,
            ibr_cap: DEFAULT_IBR_CAP,
            enum_cap: DEFAULT_ENUM_CAP,
            seed: 0,
        };
        req.validate()?;
        Ok(req)
    }

    pub fn validate(&self) -> Result<()> {
        validate_primes(self.p, self.q)
    }
}

pub(crate) fn validate_primes(p: u64, q: u64) -> Result<()> {
    for r in [p, q] {
        if !is_prime(r) {
            return Err(Error::NotPrime(r));
        }
    }
    if p == q {
        return Err(Error::EqualPrimes(p));
    }
    Ok(())
}

/// Where the Brauer degrees behind a verdict came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// No Brauer degrees were needed.
    GroupOnly,
    Computed,
    Cited,
}

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Implication or biconditional confirmed.
    Consistent,
    /// Hypothesis holds but conclusion fails, or the two sides differ.
    Violation,
    /// Implication not exercised; never a violation.
    HypothesisFails,
    /// Gate conditions of the statement are not met.
    NotApplicable,
}

/// A group given by its order and generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub order: u128,
    pub generators: Vec<Permutation>,
}

impl From<&PermGroup> for GroupSummary {
    fn from(g: &PermGroup) -> Self {
        GroupSummary { order: g.order(), generators: g.generators().to_vec() }
    }
}

/// Evidence attached to a false condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A `p`-regular class of `G` that misses `subgroup`.
    MissedClass {
        condition: String,
        representative: Permutation,
        element_order: u64,
        class_size: usize,
        subgroup: GroupSummary,
    },
    /// A Brauer degree divisible by `q`.
    Degree { condition: String, degree: u64, q: u64 },
    /// A subgroup whose failure of a property is the witness.
    Subgroup { condition: String, role: String, subgroup: GroupSummary },
    /// Two non-commuting elements.
    NonCommuting { condition: String, a: Permutation, b: Permutation },
    /// A kernel `N` of a cyclic quotient for which the kernel condition
    /// fails: no conjugator, or a class of `C/O_q(L)` that misses the
    /// normalizer (given by a preimage in `L`).
    Kernel {
        condition: String,
        kernel: GroupSummary,
        conjugator: Option<Permutation>,
        missed_class: Option<Permutation>,
    },
}

impl Witness {
    pub(crate) fn missed_class(condition: &str, c: &ConjugacyClass, h: &PermGroup) -> Self {
        Witness::MissedClass {
            condition: condition.into(),
            representative: c.representative().clone(),
            element_order: c.element_order(),
            class_size: c.size(),
            subgroup: h.into(),
        }
    }

    pub fn condition(&self) -> &str {
        match self {
            Witness::MissedClass { condition, .. }
            | Witness::Degree { condition, .. }
            | Witness::Subgroup { condition, .. }
            | Witness::NonCommuting { condition, .. }
            | Witness::Kernel { condition, .. } => condition,
        }
    }
}

/// Result of one check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub applicable: bool,
    /// Implication checks only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<bool>,
    /// Implication checks only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<bool>,
    /// Biconditional checks only: the Brauer-degree side.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<bool>,
    /// Biconditional checks only: the group-theoretic side.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<bool>,
    /// Named sub-conditions; `None` when not evaluated.
    pub conditions: BTreeMap<String, Option<bool>>,
    pub verdict: Verdict,
    pub provenance: Provenance,
    /// `"verified"`, or `"conditional on cited degrees"`.
    pub status: String,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckRecord {
    pub(crate) fn new(provenance: Provenance) -> Self {
        CheckRecord {
            applicable: true,
            hypothesis: None,
            conclusion: None,
            left: None,
            right: None,
            conditions: BTreeMap::new(),
            verdict: Verdict::Consistent,
            provenance,
            status: status_for(provenance).into(),
            witnesses: Vec::new(),
            degrees: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn set_provenance(&mut self, provenance: Provenance) {
        self.provenance = provenance;
        self.status = status_for(provenance).into();
    }

    pub(crate) fn cond(&mut self, name: &str, value: Option<bool>) {
        self.conditions.insert(name.into(), value);
    }

    pub fn condition(&self, name: &str) -> Option<bool> {
        self.conditions.get(name).copied().flatten()
    }

    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violation
    }
}

fn status_for(p: Provenance) -> &'static str {
    match p {
        Provenance::Cited => "conditional on cited degrees",
        _ => "verified",
    }
}

/// All records for one request. Only `timings` varies between runs.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub group: String,
    pub order: u128,
    pub p: u64,
    pub q: u64,
    pub seed: u64,
    pub checks: BTreeMap<String, CheckRecord>,
    /// Wall-clock milliseconds per check.
    pub timings: BTreeMap<String, f64>,
}

impl CheckReport {
    pub fn has_violation(&self) -> bool {
        self.checks.values().any(CheckRecord::is_violation)
    }
}
