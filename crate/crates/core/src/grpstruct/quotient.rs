use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::permcore::{right_transversal, PermGroup, Permutation};

/// The natural map `G -> G/N`, realized on the regular action of `G/N` on
/// the right cosets of `N`. Coset 0 is `N` itself.
#[derive(Debug, Clone)]
pub struct Epimorphism {
    kernel: PermGroup,
    reps: Vec<Permutation>,
    coset_of: HashMap<Permutation, usize>,
    image: PermGroup,
}

impl Epimorphism {
    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    /// Least coset representatives, indexed like the points of the image.
    pub fn coset_reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn apply(&self, x: &Permutation) -> Result<Permutation> {
        if !self.coset_of.contains_key(x) {
            return Err(Error::NotSubgroup);
        }
        let images = self.reps.iter().map(|t| self.coset_of[&(t * x)] as u32).collect();
        Ok(Permutation::from_raw(images))
    }

    /// A preimage of an element of the image.
    pub fn lift(&self, y: &Permutation) -> Permutation {
        self.reps[y.image(0)].clone()
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens = h.generators().iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
        self.image.subgroup(gens)
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage_of(&self, h: &PermGroup) -> PermGroup {
        let lifts: Vec<Permutation> = h.generators().iter().map(|y| self.lift(y)).collect();
        self.kernel.extended_by(&lifts)
    }
}

/// `G/N` as a permutation group of degree `|G:N|`.
pub fn quotient_group(g: &PermGroup, n: &PermGroup) -> Result<(PermGroup, Epimorphism)> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let index = g.order() / n.order();
    if index > g.enum_cap() {
        return Err(Error::CapExceeded { order: index, cap: g.enum_cap() });
    }
    let reps = right_transversal(g, n)?;
    let mut coset_of = HashMap::with_capacity(g.order() as usize);
    let n_elems = n.elements()?;
    for (i, t) in reps.iter().enumerate() {
        for h in n_elems {
            coset_of.insert(h * t, i);
        }
    }
    let mut epi = Epimorphism {
        kernel: n.clone(),
        reps,
        coset_of,
        image: PermGroup::trivial(index as usize),
    };
    let gens = g
        .generators()
        .iter()
        .map(|x| epi.apply(x))
        .filter(|r| !matches!(r, Ok(y) if y.is_identity()))
        .collect::<Result<Vec<_>>>()?;
    epi.image = PermGroup::new(index as usize, gens)?.with_enum_cap(g.enum_cap());
    Ok((epi.image.clone(), epi))
}
