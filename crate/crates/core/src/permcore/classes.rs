use std::collections::HashMap;

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::Result;

/// A conjugacy class with its canonical (lexicographically least)
/// representative and its sorted member list.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    representative: Permutation,
    element_order: u64,
    members: Vec<Permutation>,
}

impl ConjugacyClass {
    pub fn representative(&self) -> &Permutation {
        &self.representative
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn element_order(&self) -> u64 {
        self.element_order
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    /// Element order not divisible by `p`.
    pub fn is_p_regular(&self, p: u64) -> bool {
        self.element_order % p != 0
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ClassData {
    classes: Vec<ConjugacyClass>,
    class_of: HashMap<Permutation, usize>,
}

fn compute(g: &PermGroup) -> Result<ClassData> {
    let elems = g.elements()?;
    let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut seen = vec![false; elems.len()];
    let mut classes = Vec::new();
    for (start, x) in elems.iter().enumerate() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![x.clone()];
        let mut k = 0;
        while k < members.len() {
            for s in g.generators() {
                let y = members[k].conjugate_by(s);
                let j = index[&y];
                if !seen[j] {
                    seen[j] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        // elements are visited in canonical order, so `x` is the least member
        classes.push(ConjugacyClass { representative: x.clone(), element_order: x.order(), members });
    }
    classes.sort_by(|a, b| {
        (a.element_order, a.size(), &a.representative).cmp(&(b.element_order, b.size(), &b.representative))
    });
    let mut class_of = HashMap::with_capacity(elems.len());
    for (i, c) in classes.iter().enumerate() {
        for m in &c.members {
            class_of.insert(m.clone(), i);
        }
    }
    Ok(ClassData { classes, class_of })
}

impl PermGroup {
    fn class_data(&self) -> Result<&ClassData> {
        if let Some(d) = self.classes.get() {
            return Ok(d);
        }
        let data = compute(self)?;
        Ok(self.classes.get_or_init(|| data))
    }

    /// Conjugacy classes sorted by `(element_order, size, representative)`.
    pub fn conjugacy_classes(&self) -> Result<&[ConjugacyClass]> {
        Ok(&self.class_data()?.classes)
    }

    /// Index into [`PermGroup::conjugacy_classes`] of the class of `x`, or
    /// `None` when `x` is not in the group.
    pub fn class_index(&self, x: &Permutation) -> Result<Option<usize>> {
        Ok(self.class_data()?.class_of.get(x).copied())
    }

    /// Classes of elements whose order is prime to `p`, in class order.
    pub fn p_regular_classes(&self, p: u64) -> Result<Vec<&ConjugacyClass>> {
        Ok(self.conjugacy_classes()?.iter().filter(|c| c.is_p_regular(p)).collect())
    }

    /// Sorted indices of the classes of `self` that meet the subgroup `h`.
    pub fn classes_meeting(&self, h: &PermGroup) -> Result<Vec<usize>> {
        let data = self.class_data()?;
        let mut hit = vec![false; data.classes.len()];
        for x in h.elements()? {
            if let Some(&i) = data.class_of.get(x) {
                hit[i] = true;
            }
        }
        Ok(hit.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
    }
}

/// Free-function form of [`PermGroup::conjugacy_classes`].
pub fn conjugacy_classes(g: &PermGroup) -> Result<Vec<ConjugacyClass>> {
    Ok(g.conjugacy_classes()?.to_vec())
}

/// Free-function form of [`PermGroup::p_regular_classes`].
pub fn p_regular_classes(g: &PermGroup, p: u64) -> Result<Vec<ConjugacyClass>> {
    Ok(g.p_regular_classes(p)?.into_iter().cloned().collect())
}
