use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numbers::{prime_divisors, PrimeSet};
use crate::permcore::PermGroup;

use super::radical::{o_radical, q_residual};
use super::series::{is_metabelian, is_solvable, q_series_and_length, QSeries};
use super::sylow::sylow_subgroup_seeded;

/// Structural data for one group, computed eagerly for every prime
/// dividing its order and never mutated afterwards.
#[derive(Debug, Clone)]
pub struct StructureCache {
    group: PermGroup,
    seed: u64,
    sylow: BTreeMap<u64, PermGroup>,
    radicals: BTreeMap<PrimeSet, PermGroup>,
    q_residual: BTreeMap<u64, PermGroup>,
    /// `None` when the group is not `q`-solvable.
    q_series: BTreeMap<u64, Option<QSeries>>,
    solvable: bool,
    metabelian_sylow: BTreeMap<u64, bool>,
}

impl StructureCache {
    pub fn build(g: &PermGroup, seed: u64) -> Result<Self> {
        let mut c = StructureCache {
            group: g.clone(),
            seed,
            sylow: BTreeMap::new(),
            radicals: BTreeMap::new(),
            q_residual: BTreeMap::new(),
            q_series: BTreeMap::new(),
            solvable: is_solvable(g),
            metabelian_sylow: BTreeMap::new(),
        };
        for r in prime_divisors(g.order()) {
            let s = sylow_subgroup_seeded(g, r, seed)?;
            c.metabelian_sylow.insert(r, is_metabelian(&s));
            c.sylow.insert(r, s);
            for pi in [PrimeSet::single(r), PrimeSet::excluding(r)] {
                let o = o_radical(g, &pi)?;
                c.radicals.insert(pi, o);
            }
            c.q_residual.insert(r, q_residual(g, r)?);
            let series = match q_series_and_length(g, r) {
                Ok((s, _)) => Some(s),
                Err(Error::NotQSolvable { .. }) => None,
                Err(e) => return Err(e),
            };
            c.q_series.insert(r, series);
        }
        Ok(c)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Sylow subgroup; trivial for primes not dividing the order.
    pub fn sylow(&self, q: u64) -> PermGroup {
        self.sylow.get(&q).cloned().unwrap_or_else(|| PermGroup::trivial(self.group.degree()))
    }

    /// `O_q` or `O_{q'}` for any prime; the whole group or trivial when
    /// `q` does not divide the order.
    pub fn radical(&self, pi: &PrimeSet) -> Result<PermGroup> {
        match self.radicals.get(pi) {
            Some(r) => Ok(r.clone()),
            None => o_radical(&self.group, pi),
        }
    }

    pub fn o_q(&self, q: u64) -> PermGroup {
        self.radical(&PrimeSet::single(q)).expect("radical")
    }

    pub fn o_q_prime(&self, q: u64) -> PermGroup {
        self.radical(&PrimeSet::excluding(q)).expect("radical")
    }

    /// `O^{q'}(G)`; trivial for primes not dividing the order.
    pub fn q_residual(&self, q: u64) -> PermGroup {
        self.q_residual.get(&q).cloned().unwrap_or_else(|| PermGroup::trivial(self.group.degree()))
    }

    /// Upper `q`-series, `None` if not `q`-solvable; a single `q'` step
    /// for primes not dividing the order.
    pub fn q_series(&self, q: u64) -> Option<QSeries> {
        match self.q_series.get(&q) {
            Some(s) => s.clone(),
            None => q_series_and_length(&self.group, q).ok().map(|(s, _)| s),
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.solvable
    }

    pub fn is_p_solvable(&self, p: u64) -> bool {
        self.q_series.get(&p).map_or(true, |s| s.is_some())
    }

    pub fn sylow_is_metabelian(&self, q: u64) -> bool {
        self.metabelian_sylow.get(&q).copied().unwrap_or(true)
    }
}
