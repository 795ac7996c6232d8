//! Deterministic Schreier–Sims stabilizer chains.

use rand::Rng;

use super::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[pt] = u` with `base^u = pt`, for `pt` in the orbit.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal }
    }

    fn rebuild(&mut self) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit.clear();
        self.orbit.push(self.base);
        let mut k = 0;
        while k < self.orbit.len() {
            let pt = self.orbit[k];
            for g in &self.gens {
                let img = g.image(pt);
                if self.transversal[img].is_none() {
                    let u = self.transversal[pt].as_ref().unwrap() * g;
                    self.transversal[img] = Some(u);
                    self.orbit.push(img);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        StabChain { degree, levels: Vec::new() }
    }

    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    /// Sifts `g` starting at `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` if every level was passed).
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(level.base);
            match &level.transversal[b] {
                None => return (h, i),
                Some(u) => h = &h * &u.inverse(),
            }
        }
        let len = self.levels.len();
        (h, len)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Adds `g` to the group; returns whether the group grew.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        let (h, j) = self.sift(g, 0);
        if h.is_identity() {
            return false;
        }
        self.insert(h, 0, j);
        self.complete();
        true
    }

    fn insert(&mut self, h: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let base = h.first_moved_point().expect("non-identity residue");
            self.levels.push(Level::new(base, self.degree));
        }
        for level in &mut self.levels[from..=to] {
            level.gens.push(h.clone());
            level.rebuild();
        }
    }

    /// Sifts every Schreier generator until all of them pass.
    fn complete(&mut self) {
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                let level = &self.levels[i];
                for &b in &level.orbit {
                    let ub = level.transversal[b].as_ref().unwrap();
                    for s in &level.gens {
                        let ubs = level.transversal[s.image(b)].as_ref().unwrap();
                        let schreier = &(ub * s) * &ubs.inverse();
                        if schreier.is_identity() {
                            continue;
                        }
                        let (h, j) = self.sift(&schreier, i + 1);
                        if !h.is_identity() {
                            self.insert(h, i + 1, j);
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }

    pub fn order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Every element, as products `u_m ... u_1 u_0` of transversal elements.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut list = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(list.len() * level.orbit.len());
            for x in &list {
                for &pt in &level.orbit {
                    next.push(x * level.transversal[pt].as_ref().unwrap());
                }
            }
            list = next;
        }
        list
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let pt = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = &g * level.transversal[pt].as_ref().unwrap();
        }
        g
    }
}
