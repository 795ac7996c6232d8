use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::permcore::{PermGroup, Permutation};

/// Largest abelian group handled by [`cyclic_quotient_kernels`].
pub const KERNEL_CAP: u128 = 1 << 10;

/// All `N ≤ A` with `A/N` cyclic, largest first.
///
/// These are the kernels of homomorphisms `A -> Z/e` with `e` the exponent
/// of `A`; each homomorphism is fixed by the images of the generators and
/// accepted if it is well defined on a breadth-first walk of `A`.
pub fn cyclic_quotient_kernels(a: &PermGroup) -> Result<Vec<PermGroup>> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if a.order() > KERNEL_CAP {
        return Err(Error::CapExceeded { order: a.order(), cap: KERNEL_CAP });
    }
    let elems = a.elements()?;
    let gens = a.generators();
    let e = a.exponent()?;
    let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    // breadth-first spanning tree: (element index, parent index, generator)
    let mut tree = Vec::with_capacity(elems.len());
    let mut seen = vec![false; elems.len()];
    let id = index[&a.identity()];
    seen[id] = true;
    let mut queue = vec![id];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        for (gi, s) in gens.iter().enumerate() {
            let y = index[&(&elems[x] * s)];
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
                tree.push((y, x, gi));
            }
        }
        k += 1;
    }
    let steps: Vec<u64> = gens.iter().map(|s| e / s.order()).collect();
    let counts: Vec<u64> = gens.iter().map(|s| s.order()).collect();
    let mut kernels: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut choice = vec![0u64; gens.len()];
    loop {
        let vals: Vec<u64> = choice.iter().zip(&steps).map(|(c, s)| c * s).collect();
        let mut f = vec![u64::MAX; elems.len()];
        f[id] = 0;
        for &(y, x, gi) in &tree {
            f[y] = (f[x] + vals[gi]) % e;
        }
        let consistent = (0..elems.len())
            .all(|x| gens.iter().enumerate().all(|(gi, s)| f[index[&(&elems[x] * s)]] == (f[x] + vals[gi]) % e));
        if consistent {
            kernels.insert((0..elems.len()).filter(|&x| f[x] == 0).collect());
        }
        // next assignment
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < counts[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    let mut out: Vec<PermGroup> = kernels
        .into_iter()
        .map(|ix| a.subgroup_from_elements(ix.into_iter().map(|i| elems[i].clone()).collect()))
        .collect();
    out.sort_by(|x, y| y.order().cmp(&x.order()).then_with(|| x.elements().unwrap().cmp(y.elements().unwrap())));
    Ok(out)
}

/// `C_G(M/N) = {g ∈ G : [g, m] ∈ N for all m ∈ M}`.
pub fn relative_centralizer(g: &PermGroup, m: &PermGroup, n: &PermGroup) -> Result<PermGroup> {
    if !m.is_normal_in(g) || !n.is_normal_in(m) {
        return Err(Error::NotNormal);
    }
    let m_elems = m.elements()?;
    let elems = g
        .elements()?
        .iter()
        .filter(|x| {
            m.generators().iter().all(|y| n.has(&Permutation::commutator(x, y)))
                && m_elems.iter().all(|y| n.has(&Permutation::commutator(x, y)))
        })
        .cloned()
        .collect();
    Ok(g.subgroup_from_elements(elems))
}
