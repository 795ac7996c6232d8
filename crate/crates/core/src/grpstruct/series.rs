use serde::Serialize;

use crate::error::{Error, Result};
use crate::numbers::{is_prime, PrimeSet};
use crate::permcore::{derived_subgroup, PermGroup, Permutation};

use super::radical::relative_radical;

/// Kind of a factor in an upper `q`-series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    QPrime,
    Q,
}

/// One term `K_i` of an upper series, with the factor `K_i / K_{i-1}`.
#[derive(Debug, Clone)]
pub struct SeriesTerm {
    pub subgroup: PermGroup,
    pub kind: FactorKind,
    pub factor_order: u128,
    pub factor_abelian: bool,
}

/// The upper `q`-series `1 ≤ O_{q'} ≤ O_{q',q} ≤ .. = G`.
#[derive(Debug, Clone)]
pub struct QSeries {
    pub q: u64,
    pub terms: Vec<SeriesTerm>,
}

impl QSeries {
    /// Number of nontrivial `q`-factors.
    pub fn q_length(&self) -> usize {
        self.terms.iter().filter(|t| t.kind == FactorKind::Q && t.factor_order > 1).count()
    }

    /// Nontrivial `q`-factors with their abelian flags.
    pub fn q_factors(&self) -> impl Iterator<Item = &SeriesTerm> {
        self.terms.iter().filter(|t| t.kind == FactorKind::Q && t.factor_order > 1)
    }

    pub fn q_factors_abelian(&self) -> bool {
        self.q_factors().all(|t| t.factor_abelian)
    }
}

fn factor_abelian(top: &PermGroup, bottom: &PermGroup) -> bool {
    let gens = top.generators();
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| bottom.has(&Permutation::commutator(a, b))))
}

/// Upper `q`-series starting from the normal subgroup `start`,
/// alternating `q'` and `q` radicals. Fails with `NotQSolvable` if two
/// consecutive steps make no progress before reaching `G`.
pub fn upper_series_from(g: &PermGroup, start: &PermGroup, q: u64) -> Result<QSeries> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let mut cur = start.clone();
    let mut terms = Vec::new();
    let mut kind = FactorKind::QPrime;
    let mut stalled = 0;
    while cur.order() < g.order() {
        let pi = match kind {
            FactorKind::QPrime => PrimeSet::excluding(q),
            FactorKind::Q => PrimeSet::single(q),
        };
        let next = relative_radical(g, &cur, &pi)?;
        let factor_order = next.order() / cur.order();
        if factor_order == 1 {
            stalled += 1;
            if stalled == 2 {
                return Err(Error::NotQSolvable { q });
            }
        } else {
            stalled = 0;
        }
        terms.push(SeriesTerm {
            factor_abelian: factor_abelian(&next, &cur),
            subgroup: next.clone(),
            kind,
            factor_order,
        });
        cur = next;
        kind = match kind {
            FactorKind::QPrime => FactorKind::Q,
            FactorKind::Q => FactorKind::QPrime,
        };
    }
    Ok(QSeries { q, terms })
}

/// Upper `q`-series of `G` and its `q`-length.
pub fn q_series_and_length(g: &PermGroup, q: u64) -> Result<(QSeries, usize)> {
    let s = upper_series_from(g, &g.subgroup(Vec::new())?, q)?;
    let l = s.q_length();
    Ok((s, l))
}

pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![g.clone()];
    loop {
        let last = out.last().unwrap();
        let d = derived_subgroup(last);
        if d.order() == last.order() {
            return out;
        }
        out.push(d);
    }
}

pub fn is_solvable(g: &PermGroup) -> bool {
    derived_series(g).last().unwrap().is_trivial()
}

pub fn is_metabelian(g: &PermGroup) -> bool {
    derived_subgroup(&derived_subgroup(g)).is_trivial()
}

/// Decided by the upper `p`-series reaching `G`.
pub fn is_p_solvable(g: &PermGroup, p: u64) -> Result<bool> {
    match q_series_and_length(g, p) {
        Ok(_) => Ok(true),
        Err(Error::NotQSolvable { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}
