//! Small groups used across unit tests.

use crate::permcore::{PermGroup, Permutation};

pub fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(n, &cycles).unwrap()
}

pub fn sym(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n);
    }
    PermGroup::new(n, vec![perm(n, &[&[1, 2]]), perm(n, &[&(1..=n).collect::<Vec<_>>()])]).unwrap()
}

pub fn sym4() -> PermGroup {
    sym(4)
}

pub fn alt4() -> PermGroup {
    PermGroup::new(4, vec![perm(4, &[&[1, 2, 3]]), perm(4, &[&[2, 3, 4]])]).unwrap()
}

pub fn cyclic(n: usize) -> PermGroup {
    PermGroup::new(n, vec![perm(n, &[&(1..=n).collect::<Vec<_>>()])]).unwrap()
}

/// Dihedral group of order `2n` on `n` points.
pub fn dihedral(n: usize) -> PermGroup {
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    PermGroup::new(n, vec![Permutation::from_images(rot).unwrap(), Permutation::from_images(refl).unwrap()])
        .unwrap()
}

/// PSL(2,17) acting on the projective line `{0..16, ∞}`.
pub fn psl2_17() -> PermGroup {
    let p = 17usize;
    let inf = p;
    let map = |f: &dyn Fn(usize) -> usize| Permutation::from_images((0..=p).map(f).collect()).unwrap();
    let inv = |x: usize| (1..p).find(|y| x * y % p == 1).unwrap();
    let t = map(&|x| if x == inf { inf } else { (x + 1) % p });
    let d = map(&|x| if x == inf { inf } else { 9 * x % p });
    let w = map(&|x| if x == inf { 0 } else if x == 0 { inf } else { (p - inv(x)) % p });
    PermGroup::new(p + 1, vec![t, d, w]).unwrap()
}

/// `V4 x V4` extended by a diagonal `Sym3`, on 8 points (order 96).
pub fn w96() -> PermGroup {
    PermGroup::new(
        8,
        vec![
            perm(8, &[&[1, 2], &[3, 4]]),
            perm(8, &[&[1, 3], &[2, 4]]),
            perm(8, &[&[5, 6], &[7, 8]]),
            perm(8, &[&[5, 7], &[6, 8]]),
            perm(8, &[&[2, 3], &[6, 7]]),
            perm(8, &[&[2, 3, 4], &[6, 7, 8]]),
        ],
    )
    .unwrap()
}

/// `x -> x + 1`, `x -> w^2 x`, `x -> x^3` on GF(27) (order 1053).
pub fn g1053() -> PermGroup {
    let f = crate::ffalg::make_field(3, 3).unwrap();
    let w = f.primitive_element();
    let g = f.mul(w, w);
    let map = |h: &dyn Fn(u32) -> u32| Permutation::from_images((0..27).map(|x| h(x) as usize).collect()).unwrap();
    PermGroup::new(27, vec![map(&|x| f.add(x, 1)), map(&|x| f.mul(g, x)), map(&|x| f.pow(x, 3))]).unwrap()
}

/// SL(2,16) acting on the projective line over GF(16), `∞` as point 16.
pub fn sl2_16() -> PermGroup {
    let f = crate::ffalg::make_field(2, 4).unwrap();
    let w = f.primitive_element();
    let c = f.mul(w, w);
    let inf = 16u32;
    let map = |h: &dyn Fn(u32) -> u32| Permutation::from_images((0..17).map(|x| h(x) as usize).collect()).unwrap();
    let t = map(&|x| if x == inf { inf } else { f.add(x, 1) });
    let d = map(&|x| if x == inf { inf } else { f.mul(c, x) });
    let s = map(&|x| if x == inf { 0 } else if x == 0 { inf } else { f.inv(x) });
    PermGroup::new(17, vec![t, d, s]).unwrap()
}
