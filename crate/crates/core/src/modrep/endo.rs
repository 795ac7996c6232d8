use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::meataxe::{is_irreducible, ThetaSpec};
use super::module::{GModule, StandardBasis};
use crate::error::{Error, Result};
use crate::ffalg::{poly_factor, row, FieldMatrix, Poly};

const SEARCH_SEED: u64 = 0x5eed;
const PEAK_TRIES: usize = 200;

/// Dimension of `End(M)` over the base field, for irreducible `M`.
pub fn endo_degree(m: &GModule) -> Result<usize> {
    if !is_irreducible(m, SEARCH_SEED)? {
        return Err(Error::NotIrreducible);
    }
    endo_degree_unchecked(m)
}

/// Solves the commutant system `Z X_j = X_j Z` through the image `u = b_0 Z`
/// of a cyclic vector: `Z` exists iff `u` replays the standard basis
/// relations of `b_0`.
pub(crate) fn endo_degree_unchecked(m: &GModule) -> Result<usize> {
    let n = m.dim();
    let field = m.field();
    if n <= 1 {
        return Ok(n);
    }
    let mut e0 = vec![0u32; m.stride()];
    row::set(field, &mut e0, 0, 1);
    let sb = StandardBasis::build(m, e0);
    let s = StandardBasis::conjugated_action(m, &sb.vectors).ok_or(Error::NotIrreducible)?;
    // w[k]: matrix of u -> u * word_k
    let mut w = vec![FieldMatrix::identity(field, n)];
    for &(i, j) in &sb.steps {
        let next = w[i].mul(&m.action()[j])?;
        w.push(next);
    }
    let mut creating = vec![vec![false; m.num_generators()]; n];
    for &(i, j) in &sb.steps {
        creating[i][j] = true;
    }
    let mut k = FieldMatrix::identity(field, n);
    for i in 0..n {
        for (j, x) in m.action().iter().enumerate() {
            if creating[i][j] {
                continue;
            }
            let mut t = w[i].mul(x)?;
            for (l, wl) in w.iter().enumerate() {
                let c = s[j].get(i, l);
                if c != 0 {
                    t = t.add_scaled(wl, field.neg(c))?;
                }
            }
            let kt = k.mul(&t)?;
            let l = kt.left_nullspace();
            k = l.mul(&k)?;
            if k.rows() == 1 {
                return Ok(1);
            }
        }
    }
    Ok(k.rows())
}

/// Min poly of a fixed algebra element; equal for isomorphic modules.
pub(crate) fn fingerprint(m: &GModule) -> Poly {
    let n = m.dim();
    let mut theta = FieldMatrix::zero(m.field(), n, n);
    let mut prod = FieldMatrix::identity(m.field(), n);
    for x in m.action() {
        theta = theta.add(x).expect("dims");
        prod = prod.mul(x).expect("dims");
    }
    if m.num_generators() > 1 {
        theta = theta.add(&prod).expect("dims");
    }
    theta.min_poly().expect("square")
}

/// An algebra element and irreducible factor `f` with `dim ker f(θ) = e`.
fn find_peak(m: &GModule, e: usize) -> Result<(ThetaSpec, Poly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    for _ in 0..PEAK_TRIES {
        let spec = ThetaSpec::random(m.field(), m.num_generators(), 6, &mut rng);
        let theta = spec.eval(m);
        for (f, _) in poly_factor(&theta.min_poly()?, &mut rng)? {
            if theta.eval_poly(&f)?.nullity() == e {
                return Ok((spec, f));
            }
        }
    }
    Err(Error::IterationLimit { attempts: PEAK_TRIES })
}

/// Isomorphism of irreducible modules by standard-basis comparison seeded
/// from the kernels of the same peak word in both modules.
pub fn module_isomorphic(a: &GModule, b: &GModule) -> Result<bool> {
    if a.field() != b.field() || a.dim() != b.dim() || a.num_generators() != b.num_generators() {
        return Ok(false);
    }
    for m in [a, b] {
        if !is_irreducible(m, SEARCH_SEED)? {
            return Err(Error::NotIrreducible);
        }
    }
    isomorphic_unchecked(a, b)
}

pub(crate) fn isomorphic_unchecked(a: &GModule, b: &GModule) -> Result<bool> {
    if a.field() != b.field() || a.dim() != b.dim() || a.num_generators() != b.num_generators() {
        return Ok(false);
    }
    if a.dim() == 0 {
        return Ok(true);
    }
    let e = endo_degree_unchecked(a)?;
    let (spec, f) = find_peak(a, e)?;
    let ka = spec.eval(a).eval_poly(&f)?.left_nullspace();
    let kb = spec.eval(b).eval_poly(&f)?.left_nullspace();
    if kb.rows() != ka.rows() {
        return Ok(false);
    }
    let sa = StandardBasis::build(a, ka.row(0).to_vec());
    let rows_b = sa.replay(b, kb.row(0).to_vec());
    let (Some(xa), Some(xb)) = (
        StandardBasis::conjugated_action(a, &sa.vectors),
        StandardBasis::conjugated_action(b, &rows_b),
    ) else {
        return Ok(false);
    };
    Ok(xa == xb)
}
