use std::collections::BTreeMap;

use serde::Serialize;

use super::endo::{endo_degree_unchecked, fingerprint, isomorphic_unchecked};
use super::meataxe::chop;
use super::module::{regular_module, GModule};
use crate::error::{Error, Result};
use crate::permcore::PermGroup;
use crate::DEFAULT_IBR_CAP;

/// One isomorphism type of `GF(p)`-composition factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub dim: usize,
    /// `e` with `End(S) = GF(p^e)`.
    pub endo_degree: usize,
    pub brauer_degree: usize,
    /// Copies of `brauer_degree` contributed to the degree multiset (= `e`).
    pub multiplicity: usize,
    /// How often `S` occurs as a composition factor of the regular module.
    pub composition_multiplicity: usize,
}

/// Degrees of the irreducible `p`-Brauer characters of a group.
/// Constituents are ordered by (dimension, endomorphism degree, composition
/// multiplicity), which does not depend on the chopping seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IBrProfile {
    pub p: u64,
    /// Sorted, with multiplicity.
    pub degrees: Vec<u64>,
    pub constituents: Vec<Constituent>,
    /// Number of `p`-regular classes.
    pub class_count: usize,
}

impl IBrProfile {
    /// Distinct degrees.
    pub fn degree_set(&self) -> Vec<u64> {
        let mut d = self.degrees.clone();
        d.dedup();
        d
    }
}

/// Distinct composition factors of the regular module with their
/// composition multiplicities, ordered by (dimension, first occurrence).
pub fn distinct_constituents(g: &PermGroup, p: u64, seed: u64, cap: u128) -> Result<Vec<(GModule, usize)>> {
    let m = regular_module(g, p, cap)?;
    let factors = chop(&m, seed)?;
    let mut buckets: BTreeMap<(usize, Vec<u32>), Vec<usize>> = BTreeMap::new();
    let mut distinct: Vec<(GModule, usize)> = Vec::new();
    for s in factors {
        let key = (s.dim(), fingerprint(&s).coeffs().to_vec());
        let bucket = buckets.entry(key).or_default();
        let mut found = None;
        for &i in bucket.iter() {
            if isomorphic_unchecked(&distinct[i].0, &s)? {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => distinct[i].1 += 1,
            None => {
                bucket.push(distinct.len());
                distinct.push((s, 1));
            }
        }
    }
    distinct.sort_by_key(|(s, _)| s.dim());
    Ok(distinct)
}

/// Brauer degrees with the default cap.
pub fn ibr_degrees(g: &PermGroup, p: u64, seed: u64) -> Result<IBrProfile> {
    ibr_degrees_capped(g, p, seed, DEFAULT_IBR_CAP)
}

/// Chops the regular module over `GF(p)`; each distinct constituent `S`
/// with `End(S) = GF(p^e)` gives `e` Brauer characters of degree
/// `dim S / e`. Fails with `ClassCountMismatch` unless the count equals
/// the number of `p`-regular classes.
pub fn ibr_degrees_capped(g: &PermGroup, p: u64, seed: u64, cap: u128) -> Result<IBrProfile> {
    if g.order() > cap {
        return Err(Error::CapExceeded { order: g.order(), cap });
    }
    let class_count = g.p_regular_classes(p)?.len();
    let mut constituents = Vec::new();
    let mut degrees = Vec::new();
    for (s, mult) in distinct_constituents(g, p, seed, cap)? {
        let e = endo_degree_unchecked(&s)?;
        debug_assert_eq!(s.dim() % e, 0);
        let d = s.dim() / e;
        degrees.extend(std::iter::repeat(d as u64).take(e));
        constituents.push(Constituent {
            dim: s.dim(),
            endo_degree: e,
            brauer_degree: d,
            multiplicity: e,
            composition_multiplicity: mult,
        });
    }
    if degrees.len() != class_count {
        return Err(Error::ClassCountMismatch { expected: class_count, found: degrees.len() });
    }
    degrees.sort_unstable();
    constituents.sort_by_key(|c| (c.dim, c.endo_degree, c.composition_multiplicity));
    Ok(IBrProfile { p, degrees, constituents, class_count })
}
