//! Enumeration-based subgroup operations.

use std::collections::HashSet;

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

fn check_sub(g: &PermGroup, h: &PermGroup) -> Result<()> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch { expected: g.degree(), found: h.degree() });
    }
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    Ok(())
}

/// `C_G(x)`.
pub fn centralizer(g: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    x.check_degree(g.degree())?;
    let elems = g.elements()?.iter().filter(|y| y.commutes_with(x)).cloned().collect();
    Ok(g.subgroup_from_elements(elems))
}

/// `C_G(H)`: elements commuting with every generator of `H`.
pub fn centralizer_of_subgroup(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch { expected: g.degree(), found: h.degree() });
    }
    let elems = g
        .elements()?
        .iter()
        .filter(|y| h.generators().iter().all(|s| y.commutes_with(s)))
        .cloned()
        .collect();
    Ok(g.subgroup_from_elements(elems))
}

/// `N_G(H)`: elements conjugating every generator of `H` into `H`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch { expected: g.degree(), found: h.degree() });
    }
    let elems = g
        .elements()?
        .iter()
        .filter(|y| h.generators().iter().all(|s| h.has(&s.conjugate_by(y))))
        .cloned()
        .collect();
    Ok(g.subgroup_from_elements(elems))
}

/// Smallest normal subgroup of `G` containing the elements `s`.
pub fn normal_closure(g: &PermGroup, s: &[Permutation]) -> Result<PermGroup> {
    for x in s {
        x.check_degree(g.degree())?;
        if !g.has(x) {
            return Err(Error::NotSubgroup);
        }
    }
    Ok(normal_closure_unchecked(g, s))
}

pub(crate) fn normal_closure_unchecked(g: &PermGroup, s: &[Permutation]) -> PermGroup {
    let mut gens: Vec<Permutation> = s.iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut n = g.subgroup(Vec::new()).expect("trivial").extended_by(&gens);
    let mut k = 0;
    while k < gens.len() {
        for x in g.generators() {
            let c = gens[k].conjugate_by(x);
            if !n.has(&c) {
                n = n.extended_by(std::slice::from_ref(&c));
                gens.push(c);
            }
        }
        k += 1;
    }
    n
}

/// Normal closure of a subgroup.
pub fn normal_closure_of(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    check_sub(g, h)?;
    Ok(normal_closure_unchecked(g, h.generators()))
}

/// Representatives of the right cosets `H g` of `H` in `G`, in canonical
/// order (each representative is the least element of its coset).
pub fn right_transversal(g: &PermGroup, h: &PermGroup) -> Result<Vec<Permutation>> {
    check_sub(g, h)?;
    let h_elems = h.elements()?;
    let mut covered: HashSet<Permutation> = HashSet::new();
    let mut reps = Vec::new();
    for x in g.elements()? {
        if covered.contains(x) {
            continue;
        }
        reps.push(x.clone());
        for y in h_elems {
            covered.insert(y * x);
        }
    }
    Ok(reps)
}

/// `H_G`, the largest normal subgroup of `G` contained in `H`.
pub fn core(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    // x lies in H^t iff x^(t^-1) lies in H, and H^(ht) = H^t
    let inv_reps: Vec<Permutation> = right_transversal(g, h)?.iter().map(|t| t.inverse()).collect();
    let elems = h
        .elements()?
        .iter()
        .filter(|x| inv_reps.iter().all(|t| h.has(&x.conjugate_by(t))))
        .cloned()
        .collect();
    Ok(g.subgroup_from_elements(elems))
}

/// `G' = <[a, b]>`, as the normal closure of generator commutators.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = Permutation::commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_unchecked(g, &comms)
}

/// `A ∩ B` for subgroups of a common symmetric group.
pub fn intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { expected: a.degree(), found: b.degree() });
    }
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let elems = small.elements()?.iter().filter(|x| big.has(x)).cloned().collect();
    Ok(small.subgroup_from_elements(elems))
}

/// `|HK| = |H||K| / |H ∩ K|`.
pub fn product_order(h: &PermGroup, k: &PermGroup) -> Result<u128> {
    let meet = intersection(h, k)?;
    Ok(h.order() * k.order() / meet.order())
}
