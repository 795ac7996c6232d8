use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffalg::{row, stride_for, Echelon, FieldCtx, FieldMatrix};
use crate::permcore::{PermGroup, Permutation};

/// A right module over a group algebra: vectors are rows and generator `j`
/// acts by `v -> v X_j`.
#[derive(Clone)]
pub struct GModule {
    field: FieldCtx,
    dim: usize,
    action: Vec<FieldMatrix>,
    /// Present when every generator acts by a permutation of the basis.
    perms: Option<Vec<Vec<usize>>>,
}

impl GModule {
    /// Checks that every matrix is square of size `dim` and invertible.
    pub fn new(field: &FieldCtx, dim: usize, action: Vec<FieldMatrix>) -> Result<Self> {
        for x in &action {
            if x.rows() != dim || x.cols() != dim || x.field() != field {
                return Err(Error::DimensionMismatch(format!("{}x{} action on dimension {dim}", x.rows(), x.cols())));
            }
            if !x.is_invertible() {
                return Err(Error::DimensionMismatch("singular action matrix".into()));
            }
        }
        Ok(Self::new_unchecked(field, dim, action))
    }

    pub(crate) fn new_unchecked(field: &FieldCtx, dim: usize, action: Vec<FieldMatrix>) -> Self {
        GModule { field: field.clone(), dim, action, perms: None }
    }

    /// Permutation module: generator `j` sends `e_i` to `e_{perms[j][i]}`.
    pub fn from_permutations(field: &FieldCtx, dim: usize, perms: Vec<Vec<usize>>) -> Self {
        let action = perms.iter().map(|p| FieldMatrix::permutation(field, p)).collect();
        GModule { field: field.clone(), dim, action, perms: Some(perms) }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[FieldMatrix] {
        &self.action
    }

    pub fn num_generators(&self) -> usize {
        self.action.len()
    }

    pub(crate) fn perms(&self) -> Option<&[Vec<usize>]> {
        self.perms.as_deref()
    }

    pub(crate) fn stride(&self) -> usize {
        stride_for(&self.field, self.dim)
    }

    /// `v X_j` on a packed row.
    pub(crate) fn apply(&self, j: usize, v: &[u32]) -> Vec<u32> {
        match &self.perms {
            Some(ps) => permute_row(&self.field, v, &ps[j]),
            None => self.action[j].vec_mul_raw(v),
        }
    }

    /// Matrices acting as the transposes; spans invariant under these are
    /// annihilators of submodules.
    pub fn transposed(&self) -> GModule {
        let perms = self.perms.as_ref().map(|ps| {
            ps.iter()
                .map(|p| {
                    let mut inv = vec![0; p.len()];
                    for (i, &j) in p.iter().enumerate() {
                        inv[j] = i;
                    }
                    inv
                })
                .collect()
        });
        GModule {
            field: self.field.clone(),
            dim: self.dim,
            action: self.action.iter().map(|x| x.transpose()).collect(),
            perms,
        }
    }

    /// Product of the generator matrices along `word`.
    pub fn word_matrix(&self, word: &[usize]) -> FieldMatrix {
        let mut acc = FieldMatrix::identity(&self.field, self.dim);
        for &j in word {
            acc = acc.mul(&self.action[j]).expect("square action");
        }
        acc
    }

    /// Action on the submodule with the given basis (rows of `basis`, in
    /// reduced echelon form with pivot columns `pivots`), and on the
    /// quotient by it.
    pub(crate) fn split(&self, basis: &FieldMatrix, pivots: &[usize]) -> (GModule, GModule) {
        let n = self.dim;
        let mut is_piv = vec![false; n];
        for &c in pivots {
            is_piv[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_piv[c]).collect();
        let all: Vec<usize> = (0..n).collect();
        let s_free = basis.select(&(0..basis.rows()).collect::<Vec<_>>(), &free);
        let mut sub = Vec::new();
        let mut quo = Vec::new();
        let basis_rows: Vec<&[u32]> = basis.row_iter().collect();
        for (j, x) in self.action.iter().enumerate() {
            // coordinates of a vector in the row space are its pivot entries
            let images = basis_rows.iter().map(|r| self.apply(j, r)).collect();
            let sx = FieldMatrix::from_raw_rows(&self.field, n, images);
            sub.push(sx.select(&(0..basis.rows()).collect::<Vec<_>>(), pivots));
            let x_free = x.select(&free, &all);
            let a = x_free.select(&(0..free.len()).collect::<Vec<_>>(), &free);
            let b = x_free.select(&(0..free.len()).collect::<Vec<_>>(), pivots);
            quo.push(a.sub(&b.mul(&s_free).expect("dims")).expect("dims"));
        }
        (
            GModule::new_unchecked(&self.field, pivots.len(), sub),
            GModule::new_unchecked(&self.field, free.len(), quo),
        )
    }
}

impl std::fmt::Debug for GModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GModule(dim {}, {} generators over {:?})", self.dim, self.action.len(), self.field)
    }
}

pub(crate) fn permute_row(field: &FieldCtx, v: &[u32], p: &[usize]) -> Vec<u32> {
    let mut out = vec![0u32; v.len()];
    for (i, &j) in p.iter().enumerate() {
        let x = row::get(field, v, i);
        if x != 0 {
            row::set(field, &mut out, j, x);
        }
    }
    out
}

pub(crate) fn pack(field: &FieldCtx, values: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; stride_for(field, values.len())];
    for (j, &x) in values.iter().enumerate() {
        if x != 0 {
            row::set(field, &mut out, j, x);
        }
    }
    out
}

/// The regular module `GF(p)G`: basis indexed by the sorted element list,
/// generator `g` acting by right multiplication.
pub fn regular_module(g: &PermGroup, p: u64, cap: u128) -> Result<GModule> {
    if g.order() > cap {
        return Err(Error::CapExceeded { order: g.order(), cap });
    }
    let field = FieldCtx::new(p, 1)?;
    let elems = g.elements()?;
    let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let perms = g
        .generators()
        .iter()
        .map(|s| elems.iter().map(|x| index[&(x * s)]).collect())
        .collect();
    Ok(GModule::from_permutations(&field, elems.len(), perms))
}

/// Smallest invariant subspace containing the packed rows `seeds`, as a
/// semi-echelon basis. Stops as soon as the whole space is reached.
pub(crate) fn spin(m: &GModule, seeds: impl IntoIterator<Item = Vec<u32>>) -> Echelon {
    let mut e = Echelon::new(&m.field, m.dim);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for s in seeds {
        if e.insert(s) {
            queue.push(e.raw_rows().last().unwrap().clone());
        }
    }
    let mut k = 0;
    while k < queue.len() && e.rank() < m.dim {
        for j in 0..m.num_generators() {
            let w = m.apply(j, &queue[k]);
            if e.insert(w) {
                queue.push(e.raw_rows().last().unwrap().clone());
                if e.rank() == m.dim {
                    break;
                }
            }
        }
        k += 1;
    }
    e
}

/// Invariant subspace spanned by `vectors` (field values), in reduced
/// echelon form.
pub fn spin_up(m: &GModule, vectors: &[Vec<u32>]) -> Result<FieldMatrix> {
    if let Some(v) = vectors.iter().find(|v| v.len() != m.dim) {
        return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", v.len(), m.dim)));
    }
    let mut e = spin(m, vectors.iter().map(|v| pack(&m.field, v)));
    e.make_reduced();
    Ok(e.to_matrix())
}

/// A basis `b_0 = v, b_k = b_i X_j` built breadth first, with the steps
/// `(i, j)` that produced each new vector.
pub(crate) struct StandardBasis {
    pub vectors: Vec<Vec<u32>>,
    pub steps: Vec<(usize, usize)>,
}

impl StandardBasis {
    pub fn build(m: &GModule, v: Vec<u32>) -> StandardBasis {
        let mut e = Echelon::new(&m.field, m.dim);
        let mut vectors = Vec::new();
        let mut steps = Vec::new();
        if e.insert(v.clone()) {
            vectors.push(v);
        }
        let mut k = 0;
        while k < vectors.len() && vectors.len() < m.dim {
            for j in 0..m.num_generators() {
                let w = m.apply(j, &vectors[k]);
                if e.insert(w.clone()) {
                    vectors.push(w);
                    steps.push((k, j));
                }
            }
            k += 1;
        }
        StandardBasis { vectors, steps }
    }

    /// Follows the recorded steps from `v` in another module.
    pub fn replay(&self, m: &GModule, v: Vec<u32>) -> Vec<Vec<u32>> {
        let mut out = vec![v];
        for &(i, j) in &self.steps {
            let w = m.apply(j, &out[i]);
            out.push(w);
        }
        out
    }

    /// The generator matrices written in the basis `rows`, or `None` if
    /// `rows` is not a basis.
    pub fn conjugated_action(m: &GModule, rows: &[Vec<u32>]) -> Option<Vec<FieldMatrix>> {
        if rows.len() != m.dim {
            return None;
        }
        let b = FieldMatrix::from_raw_rows(&m.field, m.dim, rows.to_vec());
        let inv = b.inverse()?;
        Some(
            m.action
                .iter()
                .map(|x| b.mul(x).and_then(|bx| bx.mul(&inv)).expect("dims"))
                .collect(),
        )
    }
}

/// Words for every element of `G` from a breadth-first walk over the
/// generators.
pub struct WordTree {
    index: HashMap<Permutation, usize>,
    parent: Vec<Option<(usize, usize)>>,
}

impl WordTree {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let id = g.identity();
        let mut index = HashMap::new();
        let mut elems = vec![id.clone()];
        let mut parent = vec![None];
        index.insert(id, 0);
        let mut k = 0;
        while k < elems.len() {
            for (j, s) in g.generators().iter().enumerate() {
                let y = &elems[k] * s;
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    parent.push(Some((k, j)));
                }
            }
            k += 1;
            if elems.len() as u128 > g.enum_cap() {
                return Err(Error::CapExceeded { order: g.order(), cap: g.enum_cap() });
            }
        }
        Ok(WordTree { index, parent })
    }

    /// Generator indices whose product is `x`.
    pub fn word(&self, x: &Permutation) -> Option<Vec<usize>> {
        let mut i = *self.index.get(x)?;
        let mut w = Vec::new();
        while let Some((up, j)) = self.parent[i] {
            w.push(j);
            i = up;
        }
        w.reverse();
        Some(w)
    }

    /// Matrix of `x` in the module.
    pub fn element_matrix(&self, m: &GModule, x: &Permutation) -> Option<FieldMatrix> {
        Some(m.word_matrix(&self.word(x)?))
    }
}

/// Whether `generator -> action matrix` extends to a homomorphism, tested
/// on `samples` random words: each word's matrix must equal the matrix of
/// the tree word of the same group element.
pub fn check_homomorphism<R: Rng>(g: &PermGroup, m: &GModule, samples: usize, rng: &mut R) -> Result<bool> {
    if g.generators().len() != m.num_generators() {
        return Ok(false);
    }
    let tree = WordTree::new(g)?;
    for _ in 0..samples {
        let len = rng.gen_range(1..=12);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..m.num_generators().max(1))).collect();
        if m.num_generators() == 0 {
            return Ok(true);
        }
        let x = word.iter().fold(g.identity(), |acc, &j| &acc * &g.generators()[j]);
        if tree.element_matrix(m, &x) != Some(m.word_matrix(&word)) {
            return Ok(false);
        }
    }
    Ok(true)
}
