use std::fmt;

use super::field::{FieldCtx, Kind};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Dense matrix over a finite field.
///
/// Rows are stored contiguously with a fixed word stride. Over GF(2) a row
/// packs 32 entries per word; otherwise each entry is one word. Prime-field
/// kernels accumulate unreduced products and reduce only when the next
/// accumulation could overflow.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: FieldCtx,
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u32>,
}

pub(crate) fn stride_for(field: &FieldCtx, cols: usize) -> usize {
    match field.kind() {
        Kind::Gf2 => cols.div_ceil(32),
        _ => cols,
    }
}

/// Row-level kernels shared by the matrix routines and the MeatAxe.
pub(crate) mod row {
    use super::*;

    /// How many unreduced `c * s` products fit on top of a reduced entry.
    pub fn budget(field: &FieldCtx) -> u32 {
        match field.kind() {
            Kind::Prime => {
                let p = field.characteristic() as u64;
                (((u32::MAX as u64) - p) / ((p - 1) * (p - 1))).clamp(1, u32::MAX as u64) as u32
            }
            _ => u32::MAX,
        }
    }

    #[inline]
    pub fn get(field: &FieldCtx, row: &[u32], j: usize) -> u32 {
        match field.kind() {
            Kind::Gf2 => (row[j >> 5] >> (j & 31)) & 1,
            Kind::Prime => row[j] % field.characteristic(),
            Kind::Ext => row[j],
        }
    }

    #[inline]
    pub fn set(field: &FieldCtx, row: &mut [u32], j: usize, v: u32) {
        match field.kind() {
            Kind::Gf2 => {
                let m = 1u32 << (j & 31);
                if v & 1 == 1 {
                    row[j >> 5] |= m;
                } else {
                    row[j >> 5] &= !m;
                }
            }
            _ => row[j] = v,
        }
    }

    /// Brings every entry into canonical range.
    pub fn reduce(field: &FieldCtx, row: &mut [u32]) {
        if field.kind() == Kind::Prime {
            let p = field.characteristic();
            for x in row {
                if *x >= p {
                    *x %= p;
                }
            }
        }
    }

    /// `dst += c * src` with `src` reduced and `c` in range. Over a prime
    /// field the result is left unreduced; callers track the budget.
    #[inline]
    pub fn axpy_lazy(field: &FieldCtx, dst: &mut [u32], src: &[u32], c: u32) {
        match field.kind() {
            Kind::Gf2 => {
                if c & 1 == 1 {
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= *s;
                    }
                }
            }
            Kind::Prime => {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = d.wrapping_add(c.wrapping_mul(*s));
                }
            }
            Kind::Ext => {
                for (d, s) in dst.iter_mut().zip(src) {
                    if *s != 0 {
                        *d = field.add(*d, field.mul(c, *s));
                    }
                }
            }
        }
    }

    /// Reduced `dst += c * src`.
    pub fn axpy(field: &FieldCtx, dst: &mut [u32], src: &[u32], c: u32) {
        axpy_lazy(field, dst, src, c);
        reduce(field, dst);
    }

    /// `row *= c` on a reduced row.
    pub fn scale(field: &FieldCtx, row: &mut [u32], c: u32) {
        match field.kind() {
            Kind::Gf2 => {
                if c == 0 {
                    row.fill(0);
                }
            }
            Kind::Prime => {
                let p = field.characteristic() as u64;
                for x in row {
                    *x = ((*x as u64 * c as u64) % p) as u32;
                }
            }
            Kind::Ext => {
                for x in row {
                    *x = field.mul(*x, c);
                }
            }
        }
    }

    /// First nonzero column of a reduced row.
    pub fn first_nonzero(field: &FieldCtx, row: &[u32], cols: usize) -> Option<usize> {
        match field.kind() {
            Kind::Gf2 => row
                .iter()
                .enumerate()
                .find(|(_, w)| **w != 0)
                .map(|(i, w)| i * 32 + w.trailing_zeros() as usize)
                .filter(|&j| j < cols),
            _ => row.iter().position(|&x| x != 0),
        }
    }

    pub fn is_zero(row: &[u32]) -> bool {
        row.iter().all(|&x| x == 0)
    }

    /// Accumulates `Σ coeffs[k] * rows_k` into `out` (reduced on return).
    /// `rows(k)` must yield reduced rows.
    pub fn combine<'a>(
        field: &FieldCtx,
        out: &mut [u32],
        coeffs: impl Iterator<Item = (u32, &'a [u32])>,
    ) {
        let budget = budget(field);
        let mut pending = 0;
        for (c, src) in coeffs {
            if c == 0 {
                continue;
            }
            if pending == budget {
                reduce(field, out);
                pending = 0;
            }
            axpy_lazy(field, out, src, c);
            pending += 1;
        }
        reduce(field, out);
    }
}

impl FieldMatrix {
    pub fn zero(field: &FieldCtx, rows: usize, cols: usize) -> Self {
        let stride = stride_for(field, cols);
        FieldMatrix { field: field.clone(), rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(field: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(field: &FieldCtx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Self::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// From nested rows of field values; all rows must have equal length.
    pub fn from_rows(field: &FieldCtx, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |i, j| rows[i][j]))
    }

    /// Permutation matrix sending basis vector `e_i` to `e_{images[i]}`
    /// under the row-vector convention.
    pub fn permutation(field: &FieldCtx, images: &[usize]) -> Self {
        let n = images.len();
        let mut m = Self::zero(field, n, n);
        for (i, &j) in images.iter().enumerate() {
            m.set(i, j, 1);
        }
        m
    }

    /// Companion matrix of a monic polynomial: `e_i -> e_{i+1}`, last row
    /// holds the negated low coefficients.
    pub fn companion(f: &Poly) -> Self {
        let field = f.field();
        let n = f.deg();
        let f = f.monic();
        Self::from_fn(field, n, n, |i, j| {
            if i + 1 < n {
                u32::from(j == i + 1)
            } else {
                field.neg(f.coeff(j))
            }
        })
    }

    pub(crate) fn from_raw_rows(field: &FieldCtx, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let stride = stride_for(field, cols);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * stride);
        for r in rows {
            debug_assert_eq!(r.len(), stride);
            data.extend(r);
        }
        FieldMatrix { field: field.clone(), rows: n, cols, stride, data }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        row::get(&self.field, self.row(i), j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        let field = self.field.clone();
        row::set(&field, self.row_mut(i), j, v);
    }

    pub(crate) fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub(crate) fn row_iter(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.stride.max(1)).take(self.rows)
    }

    /// Row `i` as field values.
    pub fn row_values(&self, i: usize) -> Vec<u32> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row_values(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        row::is_zero(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field, self.rows)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DimensionMismatch("different fields".into()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        let f = self.field.clone();
        for i in 0..self.rows {
            row::axpy(&f, out.row_mut(i), other.row(i), 1);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        let f = self.field.clone();
        let m1 = f.neg(1);
        for i in 0..self.rows {
            row::axpy(&f, out.row_mut(i), other.row(i), m1);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = self.clone();
        row::scale(&self.field, &mut out.data, c);
        out
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: u32) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        let f = self.field.clone();
        for i in 0..self.rows {
            row::axpy(&f, out.row_mut(i), other.row(i), c);
        }
        Ok(out)
    }

    /// Matrix product; zero entries of `self` are skipped, so products with
    /// permutation matrices on the left cost O(n^2).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            let a = self.row(i);
            let dst = &mut out.data[i * out.stride..(i + 1) * out.stride];
            row::combine(f, dst, (0..self.cols).map(|k| (row::get(f, a, k), other.row(k))));
        }
        Ok(out)
    }

    /// Row vector (given as a packed row) times `self`.
    pub(crate) fn vec_mul_raw(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.stride];
        row::combine(f, &mut out, (0..self.rows).map(|k| (row::get(f, v, k), self.row(k))));
        out
    }

    /// Row vector times `self`.
    pub fn vec_mul(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("vector of length {} vs {} rows", v.len(), self.rows)));
        }
        let mut packed = vec![0u32; stride_for(&self.field, self.rows)];
        for (j, &x) in v.iter().enumerate() {
            row::set(&self.field, &mut packed, j, x);
        }
        let out = self.vec_mul_raw(&packed);
        Ok((0..self.cols).map(|j| row::get(&self.field, &out, j)).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v != 0 {
                    out.set(j, i, v);
                }
            }
        }
        out
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let raw = rows.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_raw_rows(&self.field, self.cols, raw)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `f(self)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("polynomial of non-square matrix".into()));
        }
        let n = self.rows;
        let id = Self::identity(&self.field, n);
        let mut acc = Self::zero(&self.field, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?.add_scaled(&id, c)?;
        }
        Ok(acc)
    }

    /// Semi-echelon basis of the row space.
    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(&self.field, self.cols);
        for r in self.row_iter() {
            e.insert(r.to_vec());
        }
        e
    }

    /// Reduced row echelon form (nonzero rows only) and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut e = self.echelon();
        e.make_reduced();
        (e.to_matrix(), e.pivots().to_vec())
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis rows `v` with `self · vᵀ = 0`.
    pub fn nullspace(&self) -> Self {
        let f = &self.field;
        let (r, piv) = self.rref();
        let mut is_piv = vec![false; self.cols];
        for &c in &piv {
            is_piv[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_piv[c]).collect();
        let mut out = Self::zero(f, free.len(), self.cols);
        for (k, &c) in free.iter().enumerate() {
            out.set(k, c, 1);
            for (i, &pc) in piv.iter().enumerate() {
                let v = r.get(i, c);
                if v != 0 {
                    out.set(k, pc, f.neg(v));
                }
            }
        }
        out
    }

    /// Basis rows `v` with `v · self = 0`.
    pub fn left_nullspace(&self) -> Self {
        self.transpose().nullspace()
    }

    /// Dimension of the right nullspace.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let aug = Self::from_fn(f, n, 2 * n, |i, j| if j < n { self.get(i, j) } else { u32::from(j - n == i) });
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.select(&(0..n).collect::<Vec<_>>(), &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Minimal polynomial by Krylov iteration over the standard basis rows,
    /// skipping rows already inside the invariant subspace found so far.
    pub fn min_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("min_poly of non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut span = Echelon::new(f, n);
        let mut acc = Poly::one(f);
        for i in 0..n {
            let mut e = vec![0u32; self.stride];
            row::set(f, &mut e, i, 1);
            if span.reduce(&mut e.clone()).is_none() {
                continue;
            }
            let k = Krylov::run(self, e);
            acc = acc.lcm(&k.poly);
            for v in k.vectors {
                span.insert(v);
            }
            if span.rank() == n {
                break;
            }
        }
        Ok(acc)
    }

    /// Characteristic polynomial as a product of relative minimal
    /// polynomials along a Krylov flag.
    pub fn char_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("char_poly of non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut span = Echelon::new(f, n);
        let mut acc = Poly::one(f);
        for i in 0..n {
            let mut e = vec![0u32; self.stride];
            row::set(f, &mut e, i, 1);
            if span.reduce(&mut e).is_none() {
                continue;
            }
            // relative Krylov: iterate v, vA, .. modulo the current span
            let mut local = span.clone();
            let mut coords: Vec<Vec<u32>> = Vec::new();
            let mut v = e;
            loop {
                let mut w = v.clone();
                let tag = local.reduce_tracking(&mut w, coords.len());
                match tag {
                    Some(combo) => {
                        let mut c = vec![0u32; coords.len() + 1];
                        for (j, x) in combo.into_iter().enumerate().take(coords.len()) {
                            c[j] = f.neg(x);
                        }
                        c[coords.len()] = 1;
                        acc = acc.mul(&Poly::from_coeffs(f, c));
                        break;
                    }
                    None => {
                        coords.push(v.clone());
                        local.insert_tracked(v.clone(), coords.len() - 1);
                        v = self.vec_mul_raw(&v);
                    }
                }
            }
            span = local;
            span.track.clear();
            if span.rank() == n {
                break;
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", self.row_values(i).iter().take(16).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

/// Incrementally built semi-echelon basis. Each stored row is reduced, has
/// a 1 at its pivot column and zeros at the pivots of all earlier rows.
/// Rows may carry an optional tracking vector recording how they were
/// formed from inserted inputs.
#[derive(Clone)]
pub struct Echelon {
    field: FieldCtx,
    cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    track: Vec<Vec<u32>>,
}

impl Echelon {
    pub fn new(field: &FieldCtx, cols: usize) -> Self {
        Echelon { field: field.clone(), cols, rows: Vec::new(), pivots: Vec::new(), track: Vec::new() }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub(crate) fn raw_rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduces `v` in place against the basis. Returns the pivot column of
    /// the (normalized) residue, or `None` if `v` lies in the span.
    pub(crate) fn reduce(&self, v: &mut [u32]) -> Option<usize> {
        let f = &self.field;
        let budget = row::budget(f);
        let mut pending = 0;
        row::reduce(f, v);
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = row::get(f, v, pc);
            if c == 0 {
                continue;
            }
            if pending == budget {
                row::reduce(f, v);
                pending = 0;
            }
            let c = row::get(f, v, pc);
            if c == 0 {
                continue;
            }
            row::axpy_lazy(f, v, r, f.neg(c));
            pending += 1;
        }
        row::reduce(f, v);
        let pc = row::first_nonzero(f, v, self.cols)?;
        let inv = f.inv(row::get(f, v, pc));
        row::scale(f, v, inv);
        Some(pc)
    }

    /// Adds a packed row; returns `true` if the rank grew.
    pub(crate) fn insert(&mut self, mut v: Vec<u32>) -> bool {
        match self.reduce(&mut v) {
            Some(pc) => {
                self.rows.push(v);
                self.pivots.push(pc);
                true
            }
            None => false,
        }
    }

    /// Adds a row given as field values.
    pub fn insert_values(&mut self, v: &[u32]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} vs {}", v.len(), self.cols)));
        }
        let mut packed = vec![0u32; stride_for(&self.field, self.cols)];
        for (j, &x) in v.iter().enumerate() {
            row::set(&self.field, &mut packed, j, x);
        }
        Ok(self.insert(packed))
    }

    pub fn contains_values(&self, v: &[u32]) -> bool {
        let mut packed = vec![0u32; stride_for(&self.field, self.cols)];
        for (j, &x) in v.iter().enumerate() {
            row::set(&self.field, &mut packed, j, x);
        }
        self.reduce(&mut packed).is_none()
    }

    /// Like [`reduce`](Self::reduce) but over tracked rows: if `v` is in the
    /// span, returns its coordinates with respect to the tracked inputs
    /// `0..n_inputs`.
    fn reduce_tracking(&self, v: &mut [u32], n_inputs: usize) -> Option<Vec<u32>> {
        let f = &self.field;
        let mut coords = vec![0u32; n_inputs];
        row::reduce(f, v);
        let empty = Vec::new();
        for (i, (r, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = row::get(f, v, pc);
            if c == 0 {
                continue;
            }
            row::axpy(f, v, r, f.neg(c));
            let t = self.track.get(i).unwrap_or(&empty);
            for (k, &x) in t.iter().enumerate().take(n_inputs) {
                coords[k] = f.add(coords[k], f.mul(c, x));
            }
        }
        row::first_nonzero(f, v, self.cols).is_none().then_some(coords)
    }

    /// Inserts input number `idx`, keeping a tracking vector. Untracked
    /// rows already present contribute nothing to the tracking.
    fn insert_tracked(&mut self, v: Vec<u32>, idx: usize) {
        let f = self.field.clone();
        while self.track.len() < self.rows.len() {
            self.track.push(Vec::new());
        }
        let mut v = v;
        let mut t = vec![0u32; idx + 1];
        t[idx] = 1;
        row::reduce(&f, &mut v);
        for ((r, &pc), tr) in self.rows.iter().zip(&self.pivots).zip(&self.track) {
            let c = row::get(&f, &v, pc);
            if c == 0 {
                continue;
            }
            row::axpy(&f, &mut v, r, f.neg(c));
            for (k, &x) in tr.iter().enumerate() {
                t[k] = f.sub(t[k], f.mul(c, x));
            }
        }
        let pc = row::first_nonzero(&f, &v, self.cols).expect("independent input");
        let inv = f.inv(row::get(&f, &v, pc));
        row::scale(&f, &mut v, inv);
        for x in &mut t {
            *x = f.mul(*x, inv);
        }
        self.rows.push(v);
        self.pivots.push(pc);
        self.track.push(t);
    }

    /// Clears entries above pivots and sorts rows by pivot column.
    pub fn make_reduced(&mut self) {
        let f = self.field.clone();
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Vec<u32>> = order.iter().map(|&i| std::mem::take(&mut self.rows[i])).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        // back substitution from the bottom
        for i in (0..rows.len()).rev() {
            let (upper, lower) = rows.split_at_mut(i);
            let pr = &lower[0];
            for r in upper.iter_mut() {
                let c = row::get(&f, r, pivots[i]);
                if c != 0 {
                    row::axpy(&f, r, pr, f.neg(c));
                }
            }
        }
        self.rows = rows;
        self.pivots = pivots;
        self.track.clear();
    }

    pub fn to_matrix(&self) -> FieldMatrix {
        FieldMatrix::from_raw_rows(&self.field, self.cols, self.rows.clone())
    }
}

/// Krylov sequence `v, vA, vA^2, ..` up to the first dependency.
pub(crate) struct Krylov {
    /// The independent vectors `v A^i`, `i < deg poly`.
    pub vectors: Vec<Vec<u32>>,
    /// Monic minimal polynomial of `v` relative to `A`.
    pub poly: Poly,
}

impl Krylov {
    pub fn run(a: &FieldMatrix, v: Vec<u32>) -> Krylov {
        Self::run_with(a.field(), a.cols(), v, |x| a.vec_mul_raw(x))
    }

    /// Krylov sequence of `v` under an arbitrary linear map on packed rows
    /// of length `n`.
    pub fn run_with(field: &FieldCtx, n: usize, v: Vec<u32>, mut apply: impl FnMut(&[u32]) -> Vec<u32>) -> Krylov {
        let f = field.clone();
        // rows are [v A^i | e_i]; a residue with zero left part carries the relation
        let width = 2 * n + 1;
        let stride = stride_for(&f, width);
        let mut ech = Echelon::new(&f, width);
        let mut vectors: Vec<Vec<u32>> = Vec::new();
        let mut cur = v;
        row::reduce(&f, &mut cur);
        loop {
            let k = vectors.len();
            let mut aug = vec![0u32; stride];
            for j in 0..n {
                let x = row::get(&f, &cur, j);
                if x != 0 {
                    row::set(&f, &mut aug, j, x);
                }
            }
            row::set(&f, &mut aug, n + k, 1);
            match ech.reduce(&mut aug) {
                Some(pc) if pc < n => {
                    ech.rows.push(aug);
                    ech.pivots.push(pc);
                }
                _ => {
                    let c: Vec<u32> = (0..=k).map(|j| row::get(&f, &aug, n + j)).collect();
                    let poly = Poly::from_coeffs(&f, c).monic();
                    return Krylov { vectors, poly };
                }
            }
            vectors.push(cur.clone());
            cur = apply(&cur);
        }
    }

    /// `v · g(A)` from the stored vectors, for `deg g < len`.
    pub fn apply(&self, field: &FieldCtx, g: &Poly) -> Vec<u32> {
        let stride = self.vectors[0].len();
        let mut out = vec![0u32; stride];
        row::combine(field, &mut out, g.coeffs().iter().zip(&self.vectors).map(|(&c, v)| (c, v.as_slice())));
        out
    }
}

/// Free-function forms.
pub fn nullspace(m: &FieldMatrix) -> FieldMatrix {
    m.nullspace()
}

pub fn min_poly(m: &FieldMatrix) -> Result<Poly> {
    m.min_poly()
}

pub fn char_poly(m: &FieldMatrix) -> Result<Poly> {
    m.char_poly()
}

#[cfg(test)]
mod tests {
    use super::super::field::make_field;
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &FieldCtx, r: usize, c: usize, rng: &mut impl Rng) -> FieldMatrix {
        let q = f.order();
        let vals: Vec<Vec<u32>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..q)).collect()).collect();
        FieldMatrix::from_rows(f, &vals).unwrap()
    }

    /// Textbook reference product on plain values.
    fn naive_mul(a: &FieldMatrix, b: &FieldMatrix) -> Vec<Vec<u32>> {
        let f = a.field();
        (0..a.rows())
            .map(|i| {
                (0..b.cols())
                    .map(|j| (0..a.cols()).fold(0, |s, k| f.add(s, f.mul(a.get(i, k), b.get(k, j)))))
                    .collect()
            })
            .collect()
    }

    fn fields() -> Vec<FieldCtx> {
        vec![
            make_field(2, 1).unwrap(),
            make_field(3, 1).unwrap(),
            make_field(13, 1).unwrap(),
            make_field(65521, 1).unwrap(),
            make_field(2, 3).unwrap(),
            make_field(3, 2).unwrap(),
        ]
    }

    #[test]
    fn identity_nullspace_and_min_poly() {
        for f in fields() {
            let id = FieldMatrix::identity(&f, 4);
            assert_eq!(id.nullspace().rows(), 0);
            assert_eq!(id.min_poly().unwrap(), Poly::linear(&f, 1));
        }
    }

    #[test]
    fn zero_matrix_nullity_and_min_poly() {
        let f = make_field(5, 1).unwrap();
        let z = FieldMatrix::zero(&f, 3, 3);
        assert_eq!(z.nullspace().rows(), 3);
        assert_eq!(z.min_poly().unwrap(), Poly::x(&f));
    }

    #[test]
    fn companion_of_x2_x_1() {
        let f = make_field(2, 1).unwrap();
        let g = Poly::from_ints(&f, &[1, 1, 1]);
        let c = FieldMatrix::companion(&g);
        assert_eq!(c.min_poly().unwrap(), g);
        assert_eq!(c.char_poly().unwrap(), g);
    }

    #[test]
    fn products_match_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in fields() {
            for (r, k, c) in [(1, 1, 1), (5, 7, 3), (33, 40, 65), (8, 70, 9)] {
                let a = random_matrix(&f, r, k, &mut rng);
                let b = random_matrix(&f, k, c, &mut rng);
                assert_eq!(a.mul(&b).unwrap().to_rows(), naive_mul(&a, &b), "{f:?}");
            }
        }
    }

    #[test]
    fn long_lazy_accumulation_over_large_prime() {
        // forces periodic reduction: budget is 1 for p near 2^16
        let f = make_field(65521, 1).unwrap();
        let a = FieldMatrix::from_fn(&f, 2, 300, |_, _| 65520);
        let b = FieldMatrix::from_fn(&f, 300, 2, |_, _| 65520);
        assert_eq!(a.mul(&b).unwrap().get(0, 0), 300);
        let f = make_field(13, 1).unwrap();
        let a = FieldMatrix::from_fn(&f, 1, 3000, |_, _| 12);
        let b = FieldMatrix::from_fn(&f, 3000, 1, |_, _| 12);
        assert_eq!(a.mul(&b).unwrap().get(0, 0), 3000 % 13);
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for f in fields() {
            let mut found = 0;
            while found < 3 {
                let a = random_matrix(&f, 6, 6, &mut rng);
                if let Some(inv) = a.inverse() {
                    assert!(a.mul(&inv).unwrap().is_identity());
                    found += 1;
                } else {
                    assert!(!a.is_invertible());
                }
            }
        }
    }

    #[test]
    fn permutation_matrix_acts_on_rows() {
        let f = make_field(3, 1).unwrap();
        let m = FieldMatrix::permutation(&f, &[1, 2, 0]);
        assert_eq!(m.vec_mul(&[1, 2, 0]).unwrap(), vec![0, 1, 2]);
        assert_eq!(m.pow(3).unwrap(), FieldMatrix::identity(&f, 3));
    }

    #[test]
    fn gf2_packing_crosses_word_boundaries() {
        let f = make_field(2, 1).unwrap();
        let mut m = FieldMatrix::zero(&f, 2, 70);
        m.set(0, 31, 1);
        m.set(0, 32, 1);
        m.set(1, 69, 1);
        assert_eq!(m.get(0, 31) + m.get(0, 32) + m.get(1, 69), 3);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullspace().rows(), 68);
        m.set(0, 32, 0);
        assert_eq!(m.get(0, 32), 0);
    }

    #[test]
    fn mismatched_dimensions() {
        let f = make_field(5, 1).unwrap();
        let a = FieldMatrix::zero(&f, 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        assert!(a.min_poly().is_err());
    }

    fn arb_case() -> impl Strategy<Value = (usize, usize, usize, u64)> {
        (0usize..6, 1usize..9, 1usize..9, any::<u64>())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity_and_rref((fi, r, c, seed) in arb_case()) {
            let f = &fields()[fi];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(f, r, c, &mut rng);
            let (rr, piv) = m.rref();
            prop_assert_eq!(rr.rank(), m.rank());
            prop_assert_eq!(rr.rref().0, rr.clone());
            prop_assert_eq!(piv.len() + m.nullity(), c);
            let ns = m.nullspace();
            prop_assert!(m.mul(&ns.transpose()).unwrap().is_zero());
            let ls = m.left_nullspace();
            prop_assert!(ls.mul(&m).unwrap().is_zero());
            prop_assert_eq!(ls.rows() + piv.len(), r);
        }

        #[test]
        fn min_poly_annihilates_and_divides_char_poly((fi, n, _c, seed) in arb_case()) {
            let f = &fields()[fi];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // mix a random matrix with a low-rank one to get repeated factors
            let a = random_matrix(f, n, n, &mut rng);
            let a = if seed % 2 == 0 { a } else { a.mul(&FieldMatrix::from_fn(f, n, n, |i, j| u32::from(i == j && i % 2 == 0))).unwrap() };
            let mp = a.min_poly().unwrap();
            let cp = a.char_poly().unwrap();
            prop_assert!(a.eval_poly(&mp).unwrap().is_zero());
            prop_assert!(a.eval_poly(&cp).unwrap().is_zero());
            prop_assert_eq!(cp.deg(), n);
            prop_assert!(mp.deg() <= n);
            prop_assert!(cp.rem(&mp).unwrap().is_zero());
            // no proper monic divisor annihilates: check by each maximal divisor
            let mut r = ChaCha8Rng::seed_from_u64(seed ^ 1);
            for (g, _) in super::super::poly::poly_factor(&mp, &mut r).unwrap() {
                let smaller = mp.div_exact(&g);
                prop_assert!(!a.eval_poly(&smaller).unwrap().is_zero());
            }
        }
    }
}
