//! Constructions behind the frozen corpus files. Points are 0-based here
//! and written 1-based by the serializer.

use qdeg::ffalg::FieldCtx;
use qdeg::Permutation;

use crate::groupfile::GroupFile;

/// A corpus construction: header comment lines and generators.
pub struct Recipe {
    pub name: &'static str,
    pub header: Vec<String>,
    pub group: GroupFile,
}

fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..n).map(f).collect()).expect("recipe maps are bijections")
}

fn cycles(n: usize, cs: &[&[usize]]) -> Permutation {
    let cs: Vec<Vec<usize>> = cs.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(n, &cs).expect("recipe cycles are valid")
}

fn recipe(name: &'static str, header: &[&str], degree: usize, generators: Vec<Permutation>) -> Recipe {
    Recipe { name, header: header.iter().map(|s| s.to_string()).collect(), group: GroupFile { degree, generators } }
}

/// PSL(2,r) or SL(2,2^f) on the projective line: points are the field
/// values followed by infinity; generators `x+1`, `c*x` and `s(x)`.
fn projective_line(order: usize, translate: impl Fn(usize) -> usize, scale: impl Fn(usize) -> usize, flip: impl Fn(usize) -> usize) -> Vec<Permutation> {
    let inf = order;
    let n = order + 1;
    vec![
        from_fn(n, |x| if x == inf { inf } else { translate(x) }),
        from_fn(n, |x| if x == inf { inf } else { scale(x) }),
        from_fn(n, |x| if x == inf { 0 } else if x == 0 { inf } else { flip(x) }),
    ]
}

pub fn s4() -> Recipe {
    recipe("S4", &["Sym(4)"], 4, vec![cycles(4, &[&[1, 2]]), cycles(4, &[&[1, 2, 3, 4]])])
}

pub fn w96() -> Recipe {
    recipe(
        "W96",
        &[
            "V4 x V4 on {1..4} and {5..8}, extended by Sym(3) acting diagonally",
            "order 96",
        ],
        8,
        vec![
            cycles(8, &[&[1, 2], &[3, 4]]),
            cycles(8, &[&[1, 3], &[2, 4]]),
            cycles(8, &[&[5, 6], &[7, 8]]),
            cycles(8, &[&[5, 7], &[6, 8]]),
            cycles(8, &[&[2, 3], &[6, 7]]),
            cycles(8, &[&[2, 3, 4], &[6, 7, 8]]),
        ],
    )
}

pub fn g1053() -> Recipe {
    let f = FieldCtx::with_modulus(3, vec![1, 2, 0, 1]).expect("t^3+2t+1 is irreducible over GF(3)");
    let w = f.primitive_element();
    let g = f.mul(w, w);
    let n = 27;
    recipe(
        "G1053",
        &[
            "GF(27) = GF(3)[t]/(t^3+2t+1); an element c0+c1*t+c2*t^2 is point 1+c0+3*c1+9*c2",
            "w = t is the least primitive element, g = w^2 has order 13",
            "generators x+1, g*x, x^3; order 1053",
        ],
        n,
        vec![
            from_fn(n, |x| f.add(x as u32, 1) as usize),
            from_fn(n, |x| f.mul(g, x as u32) as usize),
            from_fn(n, |x| f.pow(x as u32, 3) as usize),
        ],
    )
}

pub fn psl2_17() -> Recipe {
    let r = 17;
    let inv = move |x: usize| (1..r).find(|y| x * y % r == 1).expect("nonzero residue");
    recipe(
        "PSL2_17",
        &[
            "PSL(2,17) on the projective line: points 1..17 are 0..16, point 18 is infinity",
            "generators x+1, 9x (9 = 3^2, 3 primitive mod 17), -1/x; order 2448",
        ],
        r + 1,
        projective_line(r, |x| (x + 1) % r, |x| 9 * x % r, |x| (r - inv(x)) % r),
    )
}

pub fn sl2_16() -> Recipe {
    let f = FieldCtx::with_modulus(2, vec![1, 1, 0, 0, 1]).expect("t^4+t+1 is irreducible over GF(2)");
    let w = f.primitive_element();
    let c = f.mul(w, w);
    recipe(
        "SL2_16",
        &[
            "SL(2,16) on the projective line over GF(16) = GF(2)[t]/(t^4+t+1)",
            "c0+c1*t+c2*t^2+c3*t^3 is point 1+c0+2*c1+4*c2+8*c3, point 17 is infinity",
            "generators x+1, w^2*x (w = t), 1/x; order 4080",
        ],
        17,
        projective_line(
            16,
            |x| f.add(x as u32, 1) as usize,
            |x| f.mul(c, x as u32) as usize,
            |x| f.inv(x as u32) as usize,
        ),
    )
}

pub fn c2() -> Recipe {
    recipe("C2", &["cyclic of order 2"], 2, vec![cycles(2, &[&[1, 2]])])
}

pub fn c3() -> Recipe {
    recipe("C3", &["cyclic of order 3"], 3, vec![cycles(3, &[&[1, 2, 3]])])
}

pub fn c6() -> Recipe {
    recipe("C6", &["cyclic of order 6"], 5, vec![cycles(5, &[&[1, 2, 3], &[4, 5]])])
}

pub fn s3() -> Recipe {
    recipe("S3", &["Sym(3)"], 3, vec![cycles(3, &[&[1, 2]]), cycles(3, &[&[1, 2, 3]])])
}

pub fn a4() -> Recipe {
    recipe("A4", &["Alt(4)"], 4, vec![cycles(4, &[&[1, 2, 3]]), cycles(4, &[&[2, 3, 4]])])
}

pub fn d8() -> Recipe {
    recipe("D8", &["dihedral of order 8"], 4, vec![cycles(4, &[&[1, 2, 3, 4]]), cycles(4, &[&[1, 3]])])
}

/// Nonzero row vectors of GF(3)^2 in lexicographic order, acted on by
/// right multiplication.
fn gl2_3_gens(mats: &[[[usize; 2]; 2]]) -> Vec<Permutation> {
    let vecs: Vec<[usize; 2]> = (0..9).map(|i| [i / 3, i % 3]).filter(|v| *v != [0, 0]).collect();
    let index = |v: [usize; 2]| vecs.iter().position(|u| *u == v).expect("nonzero image");
    mats.iter()
        .map(|m| {
            from_fn(8, |i| {
                let v = vecs[i];
                index([(v[0] * m[0][0] + v[1] * m[1][0]) % 3, (v[0] * m[0][1] + v[1] * m[1][1]) % 3])
            })
        })
        .collect()
}

pub fn sl2_3() -> Recipe {
    recipe(
        "SL2_3",
        &[
            "SL(2,3) on the 8 nonzero row vectors of GF(3)^2, listed lexicographically",
            "generators [[1,1],[0,1]] and [[1,0],[1,1]]; order 24",
        ],
        8,
        gl2_3_gens(&[[[1, 1], [0, 1]], [[1, 0], [1, 1]]]),
    )
}

pub fn gl2_3() -> Recipe {
    recipe(
        "GL2_3",
        &[
            "GL(2,3) on the 8 nonzero row vectors of GF(3)^2, listed lexicographically",
            "generators [[1,1],[0,1]], [[1,0],[1,1]], [[2,0],[0,1]]; order 48",
        ],
        8,
        gl2_3_gens(&[[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 0], [0, 1]]]),
    )
}

pub fn a5() -> Recipe {
    recipe("A5", &["Alt(5)"], 5, vec![cycles(5, &[&[1, 2, 3]]), cycles(5, &[&[3, 4, 5]])])
}

pub fn s5() -> Recipe {
    recipe("S5", &["Sym(5)"], 5, vec![cycles(5, &[&[1, 2]]), cycles(5, &[&[1, 2, 3, 4, 5]])])
}

pub fn f21() -> Recipe {
    recipe(
        "F21",
        &["Frobenius group of order 21: x+1 and 2x on the integers mod 7, point 1+x"],
        7,
        vec![from_fn(7, |x| (x + 1) % 7), from_fn(7, |x| 2 * x % 7)],
    )
}

pub fn all() -> Vec<Recipe> {
    vec![
        s4(),
        w96(),
        g1053(),
        psl2_17(),
        sl2_16(),
        c2(),
        c3(),
        c6(),
        s3(),
        a4(),
        d8(),
        sl2_3(),
        gl2_3(),
        a5(),
        s5(),
        f21(),
    ]
}
