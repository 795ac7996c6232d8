use crate::error::{Error, Result};
use crate::numbers::{is_prime, PrimeSet};
use crate::permcore::{normal_closure_unchecked, PermGroup};

use super::sylow::sylow_subgroup;

/// `O_π(G)`: join of the normal closures of classes that are π-groups.
pub fn o_radical(g: &PermGroup, pi: &PrimeSet) -> Result<PermGroup> {
    let mut r = g.subgroup(Vec::new())?;
    for c in g.conjugacy_classes()? {
        let x = c.representative();
        if !pi.admits(c.element_order() as u128) || r.has(x) {
            continue;
        }
        let n = normal_closure_unchecked(g, std::slice::from_ref(x));
        if pi.admits(n.order()) {
            r = r.join(&n);
        }
    }
    Ok(r)
}

/// Preimage in `G` of `O_π(G/K)` for `K` normal in `G`, computed without
/// forming the quotient: the join of `ncl(x)K` over classes with
/// `|ncl(x)K : K|` a π-number.
pub fn relative_radical(g: &PermGroup, k: &PermGroup, pi: &PrimeSet) -> Result<PermGroup> {
    if !k.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let mut r = k.clone();
    for c in g.conjugacy_classes()? {
        let x = c.representative();
        if r.has(x) {
            continue;
        }
        let m = normal_closure_unchecked(g, std::slice::from_ref(x)).join(k);
        if pi.admits(m.order() / k.order()) {
            r = r.join(&m);
        }
    }
    Ok(r)
}

/// `O^{q'}(G)`, the normal closure of a Sylow `q`-subgroup.
pub fn q_residual(g: &PermGroup, q: u64) -> Result<PermGroup> {
    let s = sylow_subgroup(g, q)?;
    Ok(normal_closure_unchecked(g, s.generators()))
}

/// `O_{p,q}(G)`, the preimage of `O_q(G/O_p(G))`.
pub fn o_p_q(g: &PermGroup, p: u64, q: u64) -> Result<PermGroup> {
    for r in [p, q] {
        if !is_prime(r) {
            return Err(Error::NotPrime(r));
        }
    }
    if p == q {
        return Err(Error::EqualPrimes(p));
    }
    let op = o_radical(g, &PrimeSet::single(p))?;
    relative_radical(g, &op, &PrimeSet::single(q))
}
