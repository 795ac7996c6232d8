use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use super::field::FieldCtx;
use crate::error::{Error, Result};

/// Univariate polynomial over a [`FieldCtx`], coefficients constant term
/// first with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldCtx,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn from_coeffs(field: &FieldCtx, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Builds from integer coefficients (constant term first), reduced into the prime field.
    pub fn from_ints(field: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FieldCtx) -> Self {
        Self::from_coeffs(field, Vec::new())
    }

    pub fn constant(field: &FieldCtx, c: u32) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn one(field: &FieldCtx) -> Self {
        Self::constant(field, 1)
    }

    /// The monomial `x`.
    pub fn x(field: &FieldCtx) -> Self {
        Self::from_coeffs(field, vec![0, 1])
    }

    /// `x - a`.
    pub fn linear(field: &FieldCtx, a: u32) -> Self {
        Self::from_coeffs(field, vec![field.neg(a), 1])
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.field.inv(c)),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        Self::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(f, out)
    }

    /// Quotient and remainder; errors on division by zero.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let inv = f.inv(d.lead().unwrap());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let t = i - dd + j;
                r[t] = f.sub(r[t], f.mul(c, b));
            }
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(f, q), Self::from_coeffs(f, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::from_coeffs(
            f,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect(),
        )
    }

    pub fn eval(&self, a: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// `x^{q}` reduction helper: `self^q mod m` where `q` is the field order.
    fn frobenius_mod(&self, m: &Self) -> Self {
        self.powmod(self.field.order() as u128, m).unwrap()
    }

    /// Irreducibility by distinct-degree search: no factor of degree ≤ n/2.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = Self::x(&self.field);
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = h.frobenius_mod(&f);
            if !f.gcd(&h.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ext = !self.field.is_prime_field();
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if ext { format!("[{c}]") } else { c.to_string() };
            match (i, c) {
                (0, _) => write!(f, "{coef}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{coef}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Factors `f` into monic irreducibles with multiplicities, sorted by
/// (degree, coefficients). The leading unit is dropped.
pub fn poly_factor<R: Rng>(f: &Poly, rng: &mut R) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (sf, mult) in squarefree(&f.monic()) {
        for (g, d) in distinct_degree(&sf, usize::MAX) {
            for h in equal_degree(&g, d, rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort();
    // merge equal factors arising from different squarefree parts
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (p, m) in out {
        match merged.last_mut() {
            Some((q, n)) if *q == p => *n += m,
            _ => merged.push((p, m)),
        }
    }
    Ok(merged)
}

/// Distinct monic irreducible factors of `f` of degree at most `bound`,
/// sorted by (degree, coefficients).
pub fn small_degree_factors<R: Rng>(f: &Poly, bound: usize, rng: &mut R) -> Result<Vec<Poly>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rad = Poly::one(f.field());
    for (sf, _) in squarefree(&f.monic()) {
        rad = rad.mul(&sf);
    }
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&rad, bound) {
        out.extend(equal_degree(&g, d, rng));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with `g`
/// squarefree and `f = Π g^m`.
pub fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c.monic())) {
            out.push((g, m * p));
        }
    }
    out
}

/// `g` with `g(x)^p = f(x)`, for `f` with zero derivative.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let coeffs = f.coeffs().iter().step_by(p).map(|&c| field.pth_root(c)).collect();
    Poly::from_coeffs(field, coeffs)
}

/// Distinct-degree split of a monic squarefree polynomial: `(g_d, d)` where
/// `g_d` is the product of all irreducible factors of degree `d`. Factors of
/// degree above `bound` are discarded.
pub fn distinct_degree(f: &Poly, bound: usize) -> Vec<(Poly, usize)> {
    let field = f.field();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg() > 0 {
        d += 1;
        if d > bound {
            break;
        }
        if 2 * d > rest.deg() {
            if rest.deg() <= bound {
                out.push((rest.clone(), rest.deg()));
            }
            break;
        }
        h = h.frobenius_mod(&rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
    }
    out
}

/// Cantor–Zassenhaus split of a monic squarefree product of degree-`d`
/// irreducibles.
pub fn equal_degree<R: Rng>(f: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field();
    loop {
        let a = Poly::from_coeffs(field, (0..n).map(|_| rng.gen_range(0..field.order())).collect());
        if a.deg() == 0 {
            continue;
        }
        let split = f.gcd(&cz_witness(&a, f, d));
        if split.deg() > 0 && split.deg() < n {
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&f.div_exact(&split), d, rng));
            return out;
        }
    }
}

/// One irreducible factor of a monic squarefree product of degree-`d`
/// irreducibles, descending into the smaller part at each split.
pub fn equal_degree_one<R: Rng>(f: &Poly, d: usize, rng: &mut R) -> Poly {
    let mut cur = f.monic();
    while cur.deg() > d {
        let field = cur.field().clone();
        let n = cur.deg();
        let a = Poly::from_coeffs(&field, (0..n).map(|_| rng.gen_range(0..field.order())).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = cz_witness(&a, &cur, d);
        let g = cur.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let other = cur.div_exact(&g);
            cur = if g.deg() <= other.deg() { g } else { other.monic() };
        }
    }
    cur
}

/// The Cantor–Zassenhaus splitting candidate for `a` modulo `f`: `a` itself
/// when it shares a factor with `f`, else `a^((q^d-1)/2) - 1` (odd `q`) or
/// the trace map (even `q`).
fn cz_witness(a: &Poly, f: &Poly, d: usize) -> Poly {
    let field = f.field();
    if !f.gcd(a).is_one() {
        return a.clone();
    }
    let q = field.order() as u128;
    if field.characteristic() == 2 {
        let steps = field.degree() as usize * d;
        let mut t = a.rem(f).unwrap();
        let mut acc = t.clone();
        for _ in 1..steps {
            t = t.mul(&t).rem(f).unwrap();
            acc = acc.add(&t);
        }
        acc
    } else {
        let mut t = a.rem(f).unwrap();
        let mut norm = t.clone();
        for _ in 1..d {
            t = t.powmod(q, f).unwrap();
            norm = norm.mul(&t).rem(f).unwrap();
        }
        norm.powmod((q - 1) / 2, f).unwrap().sub(&Poly::one(field))
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::make_field;
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn expand(field: &FieldCtx, fs: &[(Poly, usize)]) -> Poly {
        fs.iter().fold(Poly::one(field), |acc, (p, m)| (0..*m).fold(acc, |a, _| a.mul(p)))
    }

    /// Brute-force irreducibility: no monic divisor of degree 1..=n/2.
    fn brute_irreducible(f: &Poly) -> bool {
        let field = f.field();
        let n = f.deg();
        if n == 0 {
            return false;
        }
        let q = field.order() as u64;
        for d in 1..=n / 2 {
            for code in 0..q.pow(d as u32) {
                let mut c = Vec::new();
                let mut m = code;
                for _ in 0..d {
                    c.push((m % q) as u32);
                    m /= q;
                }
                c.push(1);
                if f.rem(&Poly::from_coeffs(field, c)).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn x2_plus_1_over_gf2() {
        let f = make_field(2, 1).unwrap();
        let fs = poly_factor(&Poly::from_ints(&f, &[1, 0, 1]), &mut rng()).unwrap();
        assert_eq!(fs, vec![(Poly::from_ints(&f, &[1, 1]), 2)]);
    }

    #[test]
    fn x3_minus_x_over_gf3() {
        let f = make_field(3, 1).unwrap();
        let fs = poly_factor(&Poly::from_ints(&f, &[0, -1, 0, 1]), &mut rng()).unwrap();
        let want: Vec<_> = [0, 1, 2].iter().map(|&a| (Poly::from_ints(&f, &[a, 1]), 1)).collect();
        assert_eq!(fs, want);
    }

    #[test]
    fn x2_x_1_irreducible_over_gf2() {
        let f = make_field(2, 1).unwrap();
        let g = Poly::from_ints(&f, &[1, 1, 1]);
        assert_eq!(poly_factor(&g, &mut rng()).unwrap(), vec![(g.clone(), 1)]);
        assert!(g.is_irreducible());
    }

    #[test]
    fn zero_rejected() {
        let f = make_field(5, 1).unwrap();
        assert!(matches!(poly_factor(&Poly::zero(&f), &mut rng()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn pth_power_inputs() {
        let f = make_field(3, 1).unwrap();
        // (x^2 + 1)^3 * (x + 2)^4
        let a = Poly::from_ints(&f, &[1, 0, 1]);
        let b = Poly::from_ints(&f, &[2, 1]);
        let g = expand(&f, &[(a.clone(), 3), (b.clone(), 4)]);
        assert_eq!(poly_factor(&g, &mut rng()).unwrap(), vec![(b, 4), (a, 3)]);
    }

    #[test]
    fn x_q_minus_x_splits_into_linears() {
        for (p, k) in [(2, 3), (3, 2), (7, 1)] {
            let f = make_field(p, k).unwrap();
            let q = f.order() as usize;
            let mut c = vec![0u32; q + 1];
            c[q] = 1;
            c[1] = f.neg(1);
            let fs = poly_factor(&Poly::from_coeffs(&f, c), &mut rng()).unwrap();
            assert_eq!(fs.len(), q);
            assert!(fs.iter().all(|(g, m)| g.deg() == 1 && *m == 1));
        }
    }

    #[test]
    fn small_degree_filter() {
        let f = make_field(2, 1).unwrap();
        let a = Poly::from_ints(&f, &[1, 1]);
        let b = Poly::from_ints(&f, &[1, 1, 1]);
        let c = Poly::from_ints(&f, &[1, 1, 0, 1]);
        let g = a.mul(&a).mul(&b).mul(&c);
        assert_eq!(small_degree_factors(&g, 2, &mut rng()).unwrap(), vec![a, b]);
    }

    #[test]
    fn single_equal_degree_factor() {
        let f = make_field(13, 1).unwrap();
        let g = (1..9).fold(Poly::one(&f), |acc, a| acc.mul(&Poly::linear(&f, a)));
        let h = equal_degree_one(&g, 1, &mut rng());
        assert_eq!(h.deg(), 1);
        assert!(g.rem(&h).unwrap().is_zero());
        let f = make_field(2, 1).unwrap();
        let g = Poly::from_ints(&f, &[1, 1, 1]).mul(&Poly::from_ints(&f, &[1, 1, 0, 0, 1]).mul(&Poly::from_ints(&f, &[1, 1, 0, 1]).mul(&Poly::from_ints(&f, &[1, 0, 1, 1]))));
        let h = equal_degree_one(&Poly::from_ints(&f, &[1, 1, 0, 1]).mul(&Poly::from_ints(&f, &[1, 0, 1, 1])), 3, &mut rng());
        assert!(h.is_irreducible() && h.deg() == 3);
        assert!(g.rem(&h).unwrap().is_zero());
    }

    #[test]
    fn thousand_random_factorizations_per_field() {
        for (p, k) in [(2, 1), (3, 1), (13, 1), (2, 2), (3, 2)] {
            let field = make_field(p, k).unwrap();
            let mut r = ChaCha8Rng::seed_from_u64(p * 10 + k as u64);
            for _ in 0..1000 {
                let n = r.gen_range(1..=10);
                let mut c: Vec<u32> = (0..n).map(|_| r.gen_range(0..field.order())).collect();
                c.push(r.gen_range(1..field.order()));
                let g = Poly::from_coeffs(&field, c);
                let fs = poly_factor(&g, &mut r).unwrap();
                assert_eq!(expand(&field, &fs), g.monic());
                for (h, _) in &fs {
                    assert_eq!(h.lead(), Some(1));
                    if h.deg() <= 4 {
                        assert!(brute_irreducible(h), "{h} reducible");
                    } else {
                        assert!(h.is_irreducible());
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn divrem_identity(a in prop::collection::vec(0u32..5, 0..12), b in prop::collection::vec(0u32..5, 1..6)) {
            let f = make_field(5, 1).unwrap();
            let a = Poly::from_coeffs(&f, a);
            let b = Poly::from_coeffs(&f, b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.is_zero() || r.deg() < b.deg());
        }

        #[test]
        fn gcd_divides_both(a in prop::collection::vec(0u32..3, 1..10), b in prop::collection::vec(0u32..3, 1..10)) {
            let f = make_field(3, 1).unwrap();
            let a = Poly::from_coeffs(&f, a);
            let b = Poly::from_coeffs(&f, b);
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(a.rem(&g).unwrap().is_zero());
            prop_assert!(b.rem(&g).unwrap().is_zero());
        }
    }
}
