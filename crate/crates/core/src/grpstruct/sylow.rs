use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numbers::{is_prime, p_part};
use crate::permcore::{normalizer, PermGroup};

/// Sylow `q`-subgroup with the default seed.
pub fn sylow_subgroup(g: &PermGroup, q: u64) -> Result<PermGroup> {
    sylow_subgroup_seeded(g, q, 0)
}

/// Grows a `q`-subgroup `P` one step at a time by an element `x` of
/// `N_G(P) \ P` with `x^q ∈ P`, until `|P|` is the full `q`-part of `|G|`.
/// The candidate at each step is drawn from the sorted candidate list with
/// a generator seeded by `seed`.
pub fn sylow_subgroup_seeded(g: &PermGroup, q: u64, seed: u64) -> Result<PermGroup> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let target = p_part(g.order(), q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ q.rotate_left(32));
    let mut p = g.subgroup(Vec::new())?;
    while p.order() < target {
        let n = normalizer(g, &p)?;
        let candidates: Vec<_> = n
            .elements()?
            .iter()
            .filter(|x| !p.has(x) && p.has(&x.pow(q as i64)))
            .collect();
        let x = candidates.choose(&mut rng).expect("p-subgroup below Sylow order has a q-element above it");
        p = p.extended_by(std::slice::from_ref(*x));
    }
    Ok(p)
}
