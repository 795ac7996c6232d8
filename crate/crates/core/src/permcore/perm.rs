use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numbers::lcm;

/// A permutation of `{0, .., n-1}` stored as its image array.
///
/// Permutations act on the right: `x^(gh) = (x^g)^h`, so `g * h` applies
/// `g` first. Externally points are 1-based (see [`Permutation::from_cycles`]
/// and the `Display` impl). The derived ordering is lexicographic on image
/// arrays and is the canonical order used for class representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotBijective { degree: n });
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|i| i as u32).collect() })
    }

    /// Product of 1-based cycles, multiplied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            let mut seen = vec![false; degree];
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree || seen[pt - 1] {
                    return Err(Error::NotBijective { degree });
                }
                seen[pt - 1] = true;
                images[pt - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            acc = &acc * &Permutation::from_images(images)?;
        }
        Ok(acc)
    }

    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// 0-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Self {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images: out }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Self {
        &(&a.inverse() * &b.inverse()) * &(a * b)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| {
            other.images[x as usize] == self.images[other.images[i] as usize]
        })
    }

    /// Disjoint cycles of length > 1, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                cycle.push(pt);
                pt = self.images[pt] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if self.degree() == degree {
            Ok(())
        } else {
            Err(Error::DegreeMismatch { expected: degree, found: self.degree() })
        }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.images.len(), rhs.images.len());
        Permutation { images: self.images.iter().map(|&x| rhs.images[x as usize]).collect() }
    }
}

impl Mul for Permutation {
    type Output = Permutation;

    fn mul(self, rhs: Permutation) -> Permutation {
        &self * &rhs
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, pt) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_multiply_left_to_right() {
        let p = Permutation::from_cycles(3, &[vec![1, 2, 3], vec![1, 2]]).unwrap();
        assert_eq!(p.to_string(), "(2,3)");
        assert_eq!(p.order(), 2);
    }

    #[test]
    fn rejects_bad_images() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_cycles(4, &[vec![1, 5]]).is_err());
        assert!(Permutation::from_cycles(4, &[vec![1, 2, 1]]).is_err());
    }

    #[test]
    fn conjugation_and_commutators() {
        let a = Permutation::from_cycles(4, &[vec![1, 2]]).unwrap();
        let g = Permutation::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap();
        let c = a.conjugate_by(&g);
        assert_eq!(c, &(&g.inverse() * &a) * &g);
        assert_eq!(c.to_string(), "(2,3)");
        let k = Permutation::commutator(&a, &g);
        assert_eq!(k, &(&(&a.inverse() * &g.inverse()) * &a) * &g);
        assert!(!a.commutes_with(&g));
        assert_eq!(g.pow(4), Permutation::identity(4));
        assert_eq!(g.pow(-1), g.inverse());
        assert_eq!(Permutation::identity(5).to_string(), "()");
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        let p = Permutation::from_cycles(5, &[vec![1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
    }
}
