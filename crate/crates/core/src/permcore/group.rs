use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use super::chain::StabChain;
use super::classes::ClassData;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::DEFAULT_ENUM_CAP;

/// A permutation group given by generators, with a stabilizer chain for
/// order and membership and lazily cached element and class data.
///
/// Values are immutable once built; the caches are write-once.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u128,
    enum_cap: u128,
    elements: OnceLock<Vec<Permutation>>,
    pub(crate) classes: OnceLock<ClassData>,
}

impl PermGroup {
    /// Builds the group generated by `generators` on `degree` points.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            g.check_degree(degree)?;
        }
        let chain = StabChain::from_generators(degree, &generators);
        let order = chain.order().ok_or(Error::OrderOverflow)?;
        Ok(PermGroup {
            degree,
            generators,
            chain,
            order,
            enum_cap: DEFAULT_ENUM_CAP,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    /// Sets the cap used by the enumeration-based algorithms on this group
    /// and on every subgroup derived from it.
    pub fn with_enum_cap(mut self, cap: u128) -> Self {
        self.enum_cap = cap;
        self
    }

    pub fn enum_cap(&self) -> u128 {
        self.enum_cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.transversal_sizes()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        x.check_degree(self.degree)?;
        Ok(self.chain.contains(x))
    }

    pub(crate) fn has(&self, x: &Permutation) -> bool {
        self.chain.contains(x)
    }

    /// All elements, sorted, provided the order does not exceed `cap`.
    pub fn enumerate_elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        if self.order > cap {
            return Err(Error::CapExceeded { order: self.order, cap });
        }
        Ok(self.elements()?.to_vec())
    }

    /// Sorted element list, cached; gated by the group's enumeration cap.
    pub fn elements(&self) -> Result<&[Permutation]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        if self.order > self.enum_cap {
            return Err(Error::CapExceeded { order: self.order, cap: self.enum_cap });
        }
        let mut elems = self.chain.elements();
        elems.sort_unstable();
        Ok(self.elements.get_or_init(|| elems))
    }

    /// The subgroup generated by `gens` (same degree and cap).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        Ok(PermGroup::new(self.degree, gens)?.with_enum_cap(self.enum_cap))
    }

    /// Builds a subgroup from its full (closed) element set. Generators are
    /// chosen greedily in canonical order.
    pub fn subgroup_from_elements(&self, mut elements: Vec<Permutation>) -> PermGroup {
        elements.sort_unstable();
        elements.dedup();
        let mut chain = StabChain::new(self.degree);
        let mut gens = Vec::new();
        for x in &elements {
            if !x.is_identity() && chain.add_generator(x) {
                gens.push(x.clone());
            }
        }
        let order = chain.order().expect("subgroup order fits");
        debug_assert_eq!(order, elements.len() as u128, "element set is not closed");
        let cell = OnceLock::new();
        let _ = cell.set(elements);
        PermGroup {
            degree: self.degree,
            generators: gens,
            chain,
            order,
            enum_cap: self.enum_cap,
            elements: cell,
            classes: OnceLock::new(),
        }
    }

    /// The subgroup generated by `self` and `other`.
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        let mut chain = self.chain.clone();
        let mut gens = self.generators.clone();
        for g in &other.generators {
            if chain.add_generator(g) {
                gens.push(g.clone());
            }
        }
        let order = chain.order().expect("order fits");
        PermGroup {
            degree: self.degree,
            generators: gens,
            chain,
            order,
            enum_cap: self.enum_cap,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// Adds generators one at a time; cheaper than rebuilding from scratch.
    pub fn extended_by(&self, extra: &[Permutation]) -> PermGroup {
        let mut chain = self.chain.clone();
        let mut gens = self.generators.clone();
        for g in extra {
            if chain.add_generator(g) {
                gens.push(g.clone());
            }
        }
        let order = chain.order().expect("order fits");
        PermGroup {
            degree: self.degree,
            generators: gens,
            chain,
            order,
            enum_cap: self.enum_cap,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && other.order % self.order == 0
            && self.generators.iter().all(|g| other.has(g))
    }

    /// Same element set.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Whether `self` is a normal subgroup of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && g.generators.iter().all(|x| self.generators.iter().all(|h| self.has(&h.conjugate_by(x))))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// `H^g = g^-1 H g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|h| h.conjugate_by(g)).collect();
        PermGroup::new(self.degree, gens).expect("conjugate").with_enum_cap(self.enum_cap)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    /// Orbit of a 0-based point, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.generators {
                let img = g.image(orbit[k]);
                if !seen[img] {
                    seen[img] = true;
                    orbit.push(img);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> Result<u64> {
        Ok(self.elements()?.iter().fold(1, |acc, x| crate::numbers::lcm(acc, x.order())))
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens [", self.degree, self.order)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, "])")
    }
}
