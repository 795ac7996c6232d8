use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numbers::is_prime;

/// Largest extension field order for which log tables are built.
const MAX_EXT_ORDER: u64 = 1 << 20;

/// Context for GF(p^k).
///
/// Elements are `u32` values in `0..p^k`; for `k > 1` the base-`p` digits of
/// a value are the coefficients (constant term first) of its residue modulo
/// the defining polynomial. Cloning is cheap.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

struct Inner {
    p: u32,
    k: u32,
    order: u32,
    /// Monic defining polynomial, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = w^i` for a primitive element `w` (extension fields only).
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Gf2,
    Prime,
    Ext,
}

impl FieldCtx {
    /// GF(p^k) with the least monic irreducible of degree `k`, where monic
    /// polynomials `x^k + c_{k-1} x^{k-1} + .. + c_0` are ordered
    /// lexicographically on `(c_{k-1}, .., c_0)`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || (k == 1 && p >= 1 << 16) || (k > 1 && (p as f64).powi(k as i32) > MAX_EXT_ORDER as f64) {
            return Err(Error::FieldTooLarge { p, k });
        }
        let prime = Self::prime(p as u32);
        if k == 1 {
            return Ok(prime);
        }
        let q = (p as u32).pow(k);
        for tail in 0..q {
            let mut coeffs = digits(tail, p as u32, k as usize);
            coeffs.push(1);
            let f = super::poly::Poly::from_coeffs(&prime, coeffs.clone());
            if f.is_irreducible() {
                return Self::with_modulus(p as u32, coeffs);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// GF(p^k) for an explicit monic irreducible `modulus` (constant term
    /// first), verified by trial factorization.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let k = modulus.len() as u32 - 1;
        if k == 1 {
            return Ok(Self::prime(p));
        }
        let prime = Self::prime(p);
        let f = super::poly::Poly::from_coeffs(&prime, modulus.clone());
        if f.lead() != Some(1) || !f.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let order = p.pow(k);
        let mut inner = Inner { p, k, order, modulus, exp: Vec::new(), log: Vec::new(), primitive: 0 };
        let (prim, exp) = (2..order)
            .find_map(|g| {
                let powers = powers_of(&inner, g);
                (powers.len() == order as usize - 1).then_some((g, powers))
            })
            .expect("multiplicative group is cyclic");
        let mut log = vec![0u32; order as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        inner.exp = exp;
        inner.log = log;
        inner.primitive = prim;
        Ok(FieldCtx(Arc::new(inner)))
    }

    fn prime(p: u32) -> Self {
        let primitive = if p == 2 {
            1
        } else {
            (2..p).find(|&g| multiplicative_order(g, p) == p - 1).unwrap()
        };
        FieldCtx(Arc::new(Inner {
            p,
            k: 1,
            order: p,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
            primitive,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Defining polynomial coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The least primitive element in the value encoding.
    pub fn primitive_element(&self) -> u32 {
        self.0.primitive
    }

    pub(crate) fn kind(&self) -> Kind {
        match (self.0.p, self.0.k) {
            (2, 1) => Kind::Gf2,
            (_, 1) => Kind::Prime,
            _ => Kind::Ext,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Embeds an integer through the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else {
            digitwise(a, b, p, self.0.k, |x, y| (x + y) % p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else {
            digitwise(a, 0, p, self.0.k, |x, _| (p - x) % p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.0.k == 1 {
            ((a as u64 * b as u64) % self.0.p as u64) as u32
        } else if a == 0 || b == 0 {
            0
        } else {
            let n = self.0.order - 1;
            let l = self.0.log[a as usize] + self.0.log[b as usize];
            self.0.exp[(if l >= n { l - n } else { l }) as usize]
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        if self.0.k == 1 {
            self.pow(a, (self.0.p - 2) as u64)
        } else {
            let n = self.0.order - 1;
            self.0.exp[((n - self.0.log[a as usize]) % n) as usize]
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(1/p)`, the inverse Frobenius.
    pub fn pth_root(&self, a: u32) -> u32 {
        let mut r = a;
        for _ in 1..self.0.k {
            r = self.pow(r, self.0.p as u64);
        }
        r
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.order
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}, modulus {:?})", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

/// Free-function form of [`FieldCtx::new`].
pub fn make_field(p: u64, k: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, k)
}

fn digits(mut n: u32, p: u32, k: usize) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = n % p;
            n /= p;
            d
        })
        .collect()
}

fn digitwise(a: u32, b: u32, p: u32, k: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..k {
        out += op(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn multiplicative_order(g: u32, p: u32) -> u32 {
    let mut x = g as u64;
    let mut n = 1;
    while x != 1 {
        x = x * g as u64 % p as u64;
        n += 1;
    }
    n
}

/// Successive powers `g^0, g^1, ..` until they return to 1.
fn powers_of(inner: &Inner, g: u32) -> Vec<u32> {
    let (p, k) = (inner.p, inner.k as usize);
    let gd = digits(g, p, k);
    let mut cur = vec![0u32; k];
    cur[0] = 1;
    let mut out = Vec::new();
    loop {
        let val = cur.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        if !out.is_empty() && val == 1 {
            return out;
        }
        if out.len() >= inner.order as usize {
            return out;
        }
        out.push(val);
        // cur <- cur * g mod modulus
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &a) in cur.iter().enumerate() {
            for (j, &b) in gd.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c != 0 {
                for (j, &m) in inner.modulus[..k].iter().enumerate() {
                    prod[d - k + j] = (prod[d - k + j] + (p - c) * m) % p;
                }
                prod[d] = 0;
            }
        }
        cur.copy_from_slice(&prod[..k]);
        if val == 0 {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x = 2, x + 1 = 3 in the digit encoding
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.order(), 4);
    }

    #[test]
    fn prime_field_minus_one() {
        let f = make_field(13, 1).unwrap();
        assert_eq!(f.from_int(-1), 12);
        assert_eq!(f.mul(12, 12), 1);
        assert!(make_field(15, 1).is_err());
    }

    #[test]
    fn gf27_axioms() {
        let f = make_field(3, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 2, 0, 1]);
        assert_eq!(f.elements().count(), 27);
        for a in 1..27 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.pow(a, 26), 1);
        }
        for a in 0..27 {
            for b in 0..27 {
                let frob = |x| f.pow(x, 3);
                assert_eq!(frob(f.add(a, b)), f.add(frob(a), frob(b)));
                for c in [0, 1, 5, 17, 26] {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn pth_roots_invert_frobenius() {
        let f = make_field(2, 4).unwrap();
        for a in 0..16 {
            assert_eq!(f.pow(f.pth_root(a), 2), a);
        }
    }
}
