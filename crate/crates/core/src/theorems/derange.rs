use crate::error::{Error, Result};
use crate::permcore::{ConjugacyClass, PermGroup, Permutation};

/// `Δ_H(G) = G \ ∪ H^g`, together with the classes of `G` it is made of.
#[derive(Debug, Clone)]
pub struct DerangementSet {
    /// Indices into `G.conjugacy_classes()` of the classes missing `H`.
    pub classes: Vec<usize>,
    /// Sorted members.
    pub members: Vec<Permutation>,
}

impl DerangementSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.members.binary_search(x).is_ok()
    }
}

fn check_sub(g: &PermGroup, h: &PermGroup) -> Result<()> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch { expected: g.degree(), found: h.degree() });
    }
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    Ok(())
}

/// Indices of the classes of `G` that do not meet `H`. A class misses
/// every conjugate of `H` exactly when it misses `H`.
pub(crate) fn missed_classes(g: &PermGroup, h: &PermGroup) -> Result<Vec<usize>> {
    let hit = g.classes_meeting(h)?;
    Ok((0..g.conjugacy_classes()?.len()).filter(|i| hit.binary_search(i).is_err()).collect())
}

/// The `H`-derangements of `G`.
pub fn derangement_set(g: &PermGroup, h: &PermGroup) -> Result<DerangementSet> {
    check_sub(g, h)?;
    let classes = missed_classes(g, h)?;
    let all = g.conjugacy_classes()?;
    let mut members: Vec<Permutation> = classes.iter().flat_map(|&i| all[i].members().iter().cloned()).collect();
    members.sort_unstable();
    Ok(DerangementSet { classes, members })
}

/// Outcome of a property `D_p` test.
#[derive(Debug, Clone)]
pub struct DpOutcome {
    pub holds: bool,
    /// `p`-regular classes of `G` missing `H`, in class order.
    pub missed: Vec<ConjugacyClass>,
}

impl DpOutcome {
    pub fn witness(&self) -> Option<&ConjugacyClass> {
        self.missed.first()
    }
}

/// Every `p`-regular class of `G` meets `H`, with the offending classes.
pub fn property_dp(g: &PermGroup, h: &PermGroup, p: u64) -> Result<DpOutcome> {
    check_sub(g, h)?;
    let all = g.conjugacy_classes()?;
    let missed: Vec<ConjugacyClass> =
        missed_classes(g, h)?.into_iter().map(|i| all[i].clone()).filter(|c| c.is_p_regular(p)).collect();
    Ok(DpOutcome { holds: missed.is_empty(), missed })
}

/// Whether every `H`-derangement of `G` has order divisible by `p`.
pub fn has_property_dp(g: &PermGroup, h: &PermGroup, p: u64) -> Result<bool> {
    Ok(property_dp(g, h, p)?.holds)
}
