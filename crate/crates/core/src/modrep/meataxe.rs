use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::module::{pack, permute_row, spin, GModule};
use crate::error::{Error, Result};
use crate::ffalg::{distinct_degree, equal_degree_one, row, squarefree, Echelon, FieldCtx, FieldMatrix, Krylov, Poly};

/// Tuning for [`chop_with`].
#[derive(Debug, Clone)]
pub struct ChopConfig {
    /// Random algebra elements tried per module before giving up.
    pub retries: usize,
    pub max_word_len: usize,
    /// Largest degree of an irreducible factor used for splitting, until
    /// repeated misses lift the bound.
    pub factor_degree_bound: usize,
}

impl Default for ChopConfig {
    fn default() -> Self {
        ChopConfig { retries: 200, max_word_len: 6, factor_degree_bound: 12 }
    }
}

/// Algebra elements without a small factor before any degree is accepted.
const LARGE_FACTOR_AFTER: usize = 4;

/// Cap on cached word matrices per module.
const POOL_SIZE: usize = 12;

#[derive(Clone)]
enum Op {
    Perm(Vec<usize>),
    Dense(FieldMatrix),
}

/// A linear combination of words in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ThetaSpec {
    pub terms: Vec<(u32, Vec<usize>)>,
}

impl ThetaSpec {
    pub fn random<R: Rng>(field: &FieldCtx, gens: usize, max_len: usize, rng: &mut R) -> Self {
        if gens == 0 {
            return ThetaSpec { terms: Vec::new() };
        }
        let terms = (0..3)
            .map(|_| {
                let len = rng.gen_range(1..=max_len);
                let word = (0..len).map(|_| rng.gen_range(0..gens)).collect();
                (rng.gen_range(1..field.order()), word)
            })
            .collect();
        ThetaSpec { terms }
    }

    pub fn eval(&self, m: &GModule) -> FieldMatrix {
        let mut acc = FieldMatrix::zero(m.field(), m.dim(), m.dim());
        for (c, w) in &self.terms {
            acc = acc.add_scaled(&m.word_matrix(w), *c).expect("dims");
        }
        acc
    }
}

/// Random algebra element `θ` in a form cheap to apply to vectors.
enum Theta {
    PermSum(Vec<(u32, Vec<usize>)>),
    Dense(FieldMatrix),
}

impl Theta {
    fn apply(&self, field: &FieldCtx, v: &[u32]) -> Vec<u32> {
        match self {
            Theta::Dense(x) => x.vec_mul_raw(v),
            Theta::PermSum(terms) => {
                let mut out = vec![0u32; v.len()];
                let images: Vec<Vec<u32>> = terms.iter().map(|(_, p)| permute_row(field, v, p)).collect();
                row::combine(field, &mut out, terms.iter().zip(&images).map(|((c, _), r)| (*c, r.as_slice())));
                out
            }
        }
    }

    fn dense(&self, field: &FieldCtx, n: usize) -> FieldMatrix {
        match self {
            Theta::Dense(x) => x.clone(),
            Theta::PermSum(terms) => {
                let mut acc = FieldMatrix::zero(field, n, n);
                for (c, p) in terms {
                    acc = acc.add_scaled(&FieldMatrix::permutation(field, p), *c).expect("dims");
                }
                acc
            }
        }
    }

    fn transpose(&self) -> Theta {
        match self {
            Theta::Dense(x) => Theta::Dense(x.transpose()),
            Theta::PermSum(terms) => Theta::PermSum(
                terms
                    .iter()
                    .map(|(c, p)| {
                        let mut inv = vec![0; p.len()];
                        for (i, &j) in p.iter().enumerate() {
                            inv[j] = i;
                        }
                        (*c, inv)
                    })
                    .collect(),
            ),
        }
    }
}

/// Words built by extending earlier words by one generator, with their
/// action cached.
struct WordPool<'m> {
    m: &'m GModule,
    words: Vec<(Vec<usize>, Op)>,
}

impl<'m> WordPool<'m> {
    fn new(m: &'m GModule) -> Self {
        let words = (0..m.num_generators())
            .map(|j| {
                let op = match m.perms() {
                    Some(ps) => Op::Perm(ps[j].clone()),
                    None => Op::Dense(m.action()[j].clone()),
                };
                (vec![j], op)
            })
            .collect();
        WordPool { m, words }
    }

    fn grow<R: Rng>(&mut self, max_len: usize, rng: &mut R) {
        let short: Vec<usize> = (0..self.words.len()).filter(|&i| self.words[i].0.len() < max_len).collect();
        if short.is_empty() {
            return;
        }
        let i = short[rng.gen_range(0..short.len())];
        let j = rng.gen_range(0..self.m.num_generators());
        let (w, op) = &self.words[i];
        let mut word = w.clone();
        word.push(j);
        let op = match op {
            Op::Perm(p) => {
                let q = &self.m.perms().expect("permutation module")[j];
                Op::Perm(p.iter().map(|&k| q[k]).collect())
            }
            Op::Dense(x) => Op::Dense(match self.m.perms() {
                Some(ps) => {
                    let rows = x.row_iter().map(|r| permute_row(self.m.field(), r, &ps[j])).collect();
                    FieldMatrix::from_raw_rows(self.m.field(), self.m.dim(), rows)
                }
                None => x.mul(&self.m.action()[j]).expect("dims"),
            }),
        };
        if self.words.len() < POOL_SIZE {
            self.words.push((word, op));
        } else {
            let gens = self.m.num_generators();
            let k = rng.gen_range(gens..self.words.len().max(gens + 1));
            if k < self.words.len() {
                self.words[k] = (word, op);
            }
        }
    }

    fn theta<R: Rng>(&mut self, max_len: usize, rng: &mut R) -> Theta {
        let field = self.m.field();
        self.grow(max_len, rng);
        let picks: Vec<(u32, usize)> =
            (0..3).map(|_| (rng.gen_range(1..field.order()), rng.gen_range(0..self.words.len()))).collect();
        if picks.iter().all(|&(_, i)| matches!(self.words[i].1, Op::Perm(_))) {
            Theta::PermSum(
                picks
                    .iter()
                    .map(|&(c, i)| match &self.words[i].1 {
                        Op::Perm(p) => (c, p.clone()),
                        Op::Dense(_) => unreachable!(),
                    })
                    .collect(),
            )
        } else {
            let n = self.m.dim();
            let mut acc = FieldMatrix::zero(field, n, n);
            for (c, i) in picks {
                let x = match &self.words[i].1 {
                    Op::Perm(p) => FieldMatrix::permutation(field, p),
                    Op::Dense(x) => x.clone(),
                };
                acc = acc.add_scaled(&x, c).expect("dims");
            }
            Theta::Dense(acc)
        }
    }
}

fn random_vector<R: Rng>(field: &FieldCtx, n: usize, rng: &mut R) -> Vec<u32> {
    loop {
        let vals: Vec<u32> = (0..n).map(|_| rng.gen_range(0..field.order())).collect();
        if vals.iter().any(|&x| x != 0) {
            return pack(field, &vals);
        }
    }
}

/// Lowest-degree irreducible factor of `g` of degree at most `bound`.
fn small_factor<R: Rng>(g: &Poly, bound: usize, rng: &mut R) -> Option<Poly> {
    let field = g.field();
    let rad = squarefree(g).into_iter().fold(Poly::one(field), |acc, (h, _)| acc.mul(&h));
    let (part, d) = distinct_degree(&rad, bound).into_iter().next()?;
    Some(equal_degree_one(&part, d, rng))
}

/// Outcome of one MeatAxe step on a module.
pub(crate) enum Split {
    /// Reduced echelon basis and pivots of a proper nonzero submodule.
    Reducible(FieldMatrix, Vec<usize>),
    Irreducible,
}

fn proper(e: Echelon, n: usize) -> Option<Split> {
    if e.rank() > 0 && e.rank() < n {
        let mut e = e;
        e.make_reduced();
        let piv = e.pivots().to_vec();
        Some(Split::Reducible(e.to_matrix(), piv))
    } else {
        None
    }
}

/// Annihilator of a proper subspace invariant under the transposed action.
fn annihilator(e: &Echelon) -> Split {
    let (r, piv) = e.to_matrix().nullspace().rref();
    Split::Reducible(r, piv)
}

/// Finds a proper submodule or certifies irreducibility by Norton's
/// criterion with a kernel of dimension equal to the factor degree.
pub(crate) fn try_split<R: Rng>(m: &GModule, cfg: &ChopConfig, rng: &mut R) -> Result<Split> {
    let n = m.dim();
    let field = m.field().clone();
    if n <= 1 {
        return Ok(Split::Irreducible);
    }
    if m.num_generators() == 0 {
        let e = spin(m, [random_vector(&field, n, rng)]);
        return Ok(proper(e, n).expect("a line is proper"));
    }
    let mt = m.transposed();
    let mut pool = WordPool::new(m);
    let mut misses = 0;
    for _ in 0..cfg.retries {
        let theta = pool.theta(cfg.max_word_len, rng);
        let v = random_vector(&field, n, rng);
        let k = Krylov::run_with(&field, n, v, |x| theta.apply(&field, x));
        // Large endomorphism fields leave only high-degree factors.
        let bound = if misses < LARGE_FACTOR_AFTER { cfg.factor_degree_bound } else { k.poly.deg() };
        let Some(f) = small_factor(&k.poly, bound, rng) else {
            misses += 1;
            continue;
        };
        let w = k.apply(&field, &k.poly.div_exact(&f));
        if let Some(s) = proper(spin(m, [w]), n) {
            return Ok(s);
        }
        // a vector in the kernel of f(θ^T)
        let theta_t = theta.transpose();
        let mut dual = None;
        for _ in 0..5 {
            let u = random_vector(&field, n, rng);
            let kt = Krylov::run_with(&field, n, u, |x| theta_t.apply(&field, x));
            if let Ok((h, r)) = kt.poly.divrem(&f) {
                if r.is_zero() {
                    dual = Some(kt.apply(&field, &h));
                    break;
                }
            }
        }
        if let Some(u) = &dual {
            let e = spin(&mt, [u.clone()]);
            if e.rank() < n {
                return Ok(annihilator(&e));
            }
        }
        let ft = theta.dense(&field, n).eval_poly(&f)?;
        let kernel = ft.nullspace();
        if kernel.rows() != f.deg() {
            continue;
        }
        if dual.is_none() {
            let e = spin(&mt, [kernel.row(0).to_vec()]);
            if e.rank() < n {
                return Ok(annihilator(&e));
            }
        }
        return Ok(Split::Irreducible);
    }
    Err(Error::IterationLimit { attempts: cfg.retries })
}

/// Composition factors with the default configuration.
pub fn chop(m: &GModule, seed: u64) -> Result<Vec<GModule>> {
    chop_with(m, seed, &ChopConfig::default())
}

/// Composition factors in series order (bottom first), by recursive
/// splitting into submodule and quotient. Deterministic for a fixed seed.
pub fn chop_with(m: &GModule, seed: u64, cfg: &ChopConfig) -> Result<Vec<GModule>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    // explicit stack; the quotient is pushed first so the submodule is chopped first
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        match try_split(&x, cfg, &mut rng)? {
            Split::Irreducible => out.push(x),
            Split::Reducible(basis, piv) => {
                let (sub, quo) = x.split(&basis, &piv);
                stack.push(quo);
                stack.push(sub);
            }
        }
    }
    Ok(out)
}

/// Norton test with the default configuration.
pub fn is_irreducible(m: &GModule, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(matches!(try_split(m, &ChopConfig::default(), &mut rng)?, Split::Irreducible))
}
