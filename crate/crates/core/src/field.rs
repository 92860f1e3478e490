//! Exact arithmetic over F_p and matrices over it.
//!
//! Matrices expose a dense interface (row-major JSON, `get`, `from_rows`) but are
//! stored column-compressed: the structural maps of the closed monoidal layer are
//! signed permutations on spaces with thousands of basis vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field F_p for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) || p > (1 << 30) {
            return Err(Error::BadModulus(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u32 {
        reduce(x, self.p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        add(a, b, self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        add(a, self.p - b % self.p, self.p)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        mul(a, b, self.p)
    }

    pub fn neg(&self, a: u32) -> u32 {
        neg(a, self.p)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        pow(a, e, self.p)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        inv(a, self.p)
    }

    /// The field element for a sign `s` in {+1, -1}.
    pub fn sign(&self, s: i8) -> u32 {
        if s >= 0 {
            1
        } else {
            self.p - 1
        }
    }

    /// Whether `a` is a nonzero square.
    pub fn is_square(&self, a: u32) -> bool {
        let a = a % self.p;
        a != 0 && self.pow(a, u64::from((self.p - 1) / 2)) == 1
    }

    /// The elements 0..p as a vector.
    pub fn elements(&self) -> Vec<u32> {
        (0..self.p).collect()
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub(crate) fn add(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

pub(crate) fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn neg(a: u32, p: u32) -> u32 {
    let a = a % p;
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1u32 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv(a: u32, p: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow(a, (p - 2) as u64, p))
    }
}

/// JSON shape of a matrix: dense rows with entries in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

/// A matrix over F_p acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    p: u32,
    colptr: Vec<usize>,
    rowidx: Vec<u32>,
    vals: Vec<u32>,
}

/// Accumulates (row, col, value) entries; duplicates are summed.
#[derive(Debug, Clone)]
pub struct TripletBuilder {
    rows: usize,
    cols: usize,
    p: u32,
    entries: Vec<(u32, u32, u32)>,
}

impl TripletBuilder {
    pub fn new(rows: usize, cols: usize, p: u32) -> Self {
        Self { rows, cols, p, entries: Vec::new() }
    }

    pub fn with_capacity(rows: usize, cols: usize, p: u32, cap: usize) -> Self {
        Self { rows, cols, p, entries: Vec::with_capacity(cap) }
    }

    /// Adds `v` at (r, c). Panics if out of bounds: callers compute indices from layouts.
    pub fn push(&mut self, r: usize, c: usize, v: u32) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) outside {}x{}", self.rows, self.cols);
        let v = v % self.p;
        if v != 0 {
            self.entries.push((c as u32, r as u32, v));
        }
    }

    /// Orders the entries by (column, row) with two stable counting passes, then sums duplicates.
    pub fn build(self) -> Matrix {
        let n = self.entries.len();
        let mut start = vec![0usize; self.rows + 1];
        for &(_, r, _) in &self.entries {
            start[r as usize + 1] += 1;
        }
        for r in 0..self.rows {
            start[r + 1] += start[r];
        }
        let mut by_row = vec![(0u32, 0u32, 0u32); n];
        for &e in &self.entries {
            let slot = &mut start[e.1 as usize];
            by_row[*slot] = e;
            *slot += 1;
        }
        let mut colstart = vec![0usize; self.cols + 1];
        for &(c, _, _) in &by_row {
            colstart[c as usize + 1] += 1;
        }
        for c in 0..self.cols {
            colstart[c + 1] += colstart[c];
        }
        let mut next = colstart.clone();
        let mut sorted = vec![(0u32, 0u32); n];
        for &(c, r, v) in &by_row {
            let slot = &mut next[c as usize];
            sorted[*slot] = (r, v);
            *slot += 1;
        }
        let mut colptr = Vec::with_capacity(self.cols + 1);
        colptr.push(0);
        let mut rowidx = Vec::with_capacity(n);
        let mut vals: Vec<u32> = Vec::with_capacity(n);
        for c in 0..self.cols {
            let col_begin = rowidx.len();
            for &(r, v) in &sorted[colstart[c]..colstart[c + 1]] {
                if rowidx.len() > col_begin && rowidx[rowidx.len() - 1] == r {
                    let last = vals.last_mut().expect("nonempty");
                    *last = add(*last, v, self.p);
                    if *last == 0 {
                        vals.pop();
                        rowidx.pop();
                    }
                } else {
                    rowidx.push(r);
                    vals.push(v);
                }
            }
            colptr.push(rowidx.len());
        }
        Matrix { rows: self.rows, cols: self.cols, p: self.p, colptr, rowidx, vals }
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Self { rows, cols, p, colptr: vec![0; cols + 1], rowidx: Vec::new(), vals: Vec::new() }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        Self::scalar(n, 1, p)
    }

    /// `c` times the identity.
    pub fn scalar(n: usize, c: u32, p: u32) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zeros(n, n, p);
        }
        Self {
            rows: n,
            cols: n,
            p,
            colptr: (0..=n).collect(),
            rowidx: (0..n as u32).collect(),
            vals: vec![c; n],
        }
    }

    /// Builds a matrix from dense rows of integers, reducing mod p.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let mut b = TripletBuilder::new(nrows, ncols, p);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                b.push(r, c, reduce(v, p));
            }
        }
        Ok(b.build())
    }

    /// Builds a `rows x cols` matrix with an explicit shape (allows 0-row or 0-column matrices).
    pub fn from_fn(rows: usize, cols: usize, p: u32, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut b = TripletBuilder::new(rows, cols, p);
        for r in 0..rows {
            for c in 0..cols {
                b.push(r, c, reduce(f(r, c), p));
            }
        }
        b.build()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.nnz() == self.rows
            && (0..self.cols).all(|c| {
                let (r, v) = self.column(c);
                r.len() == 1 && r[0] as usize == c && v[0] == 1
            })
    }

    /// Row indices and values of column `c`.
    pub fn column(&self, c: usize) -> (&[u32], &[u32]) {
        let (a, b) = (self.colptr[c], self.colptr[c + 1]);
        (&self.rowidx[a..b], &self.vals[a..b])
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        let (rows, vals) = self.column(c);
        match rows.binary_search(&(r as u32)) {
            Ok(k) => vals[k],
            Err(_) => 0,
        }
    }

    /// All nonzero entries as (row, col, value).
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.cols).flat_map(move |c| {
            let (rows, vals) = self.column(c);
            rows.iter().zip(vals).map(move |(&r, &v)| (r as usize, c, v))
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.cols]; self.rows];
        for (r, c, v) in self.nonzeros() {
            out[r][c] = v;
        }
        out
    }

    fn check_p(&self, other: &Matrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch(self.p, other.p));
        }
        Ok(())
    }

    /// The product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_p(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p;
        let mut acc = vec![0u32; self.rows];
        let mut mark = vec![false; self.rows];
        let mut touched: Vec<u32> = Vec::new();
        let mut colptr = Vec::with_capacity(other.cols + 1);
        colptr.push(0);
        let mut rowidx = Vec::new();
        let mut vals = Vec::new();
        for j in 0..other.cols {
            let (krows, kvals) = other.column(j);
            for (&k, &v) in krows.iter().zip(kvals) {
                let (irows, ivals) = self.column(k as usize);
                for (&i, &w) in irows.iter().zip(ivals) {
                    let i = i as usize;
                    if !mark[i] {
                        mark[i] = true;
                        touched.push(i as u32);
                    }
                    acc[i] = add(acc[i], mul(v, w, p), p);
                }
            }
            touched.sort_unstable();
            for &i in &touched {
                let i = i as usize;
                if acc[i] != 0 {
                    rowidx.push(i as u32);
                    vals.push(acc[i]);
                }
                acc[i] = 0;
                mark[i] = false;
            }
            touched.clear();
            colptr.push(rowidx.len());
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, p, colptr, rowidx, vals })
    }

    /// Applies the matrix to a dense column vector.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let mut out = vec![0u32; self.rows];
        for (c, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (rows, vals) = self.column(c);
            for (&r, &w) in rows.iter().zip(vals) {
                out[r as usize] = add(out[r as usize], mul(x, w, self.p), self.p);
            }
        }
        Ok(out)
    }

    /// Linear combination `a*self + b*other`.
    pub fn lincomb(&self, a: u32, other: &Matrix, b: u32) -> Result<Matrix> {
        self.check_p(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut t = TripletBuilder::with_capacity(self.rows, self.cols, self.p, self.nnz() + other.nnz());
        for (r, c, v) in self.nonzeros() {
            t.push(r, c, mul(v, a, self.p));
        }
        for (r, c, v) in other.nonzeros() {
            t.push(r, c, mul(v, b, self.p));
        }
        Ok(t.build())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.lincomb(1, other, 1)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.lincomb(1, other, self.p - 1)
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let c = c % self.p;
        if c == 0 {
            return Matrix::zeros(self.rows, self.cols, self.p);
        }
        let mut m = self.clone();
        for v in &mut m.vals {
            *v = mul(*v, c, self.p);
        }
        m
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.p - 1)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = TripletBuilder::with_capacity(self.cols, self.rows, self.p, self.nnz());
        for (r, c, v) in self.nonzeros() {
            t.push(c, r, v);
        }
        t.build()
    }

    /// Kronecker product: block (r, s) of the result is `self[r,s] * b`.
    pub fn kronecker(&self, b: &Matrix) -> Result<Matrix> {
        self.check_p(b)?;
        let mut t = TripletBuilder::with_capacity(self.rows * b.rows, self.cols * b.cols, self.p, self.nnz() * b.nnz());
        for (r, s, v) in self.nonzeros() {
            for (r2, s2, w) in b.nonzeros() {
                t.push(r * b.rows + r2, s * b.cols + s2, mul(v, w, self.p));
            }
        }
        Ok(t.build())
    }

    /// Block-diagonal assembly in the given order; the empty sequence gives a 0x0 matrix.
    pub fn block_direct_sum(parts: &[Matrix], p: u32) -> Result<Matrix> {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut t = TripletBuilder::new(rows, cols, p);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            if m.p != p {
                return Err(Error::FieldMismatch(p, m.p));
            }
            for (r, c, v) in m.nonzeros() {
                t.push(r0 + r, c0 + c, v);
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        Ok(t.build())
    }

    /// Each column has exactly one nonzero entry and distinct columns hit distinct rows.
    pub fn is_monomial(&self) -> bool {
        if !self.is_square() || self.nnz() != self.cols {
            return false;
        }
        let mut seen = vec![false; self.rows];
        for c in 0..self.cols {
            let (rows, _) = self.column(c);
            if rows.len() != 1 || seen[rows[0] as usize] {
                return false;
            }
            seen[rows[0] as usize] = true;
        }
        true
    }

    pub fn rank(&self) -> usize {
        if self.is_monomial() {
            return self.rows;
        }
        let mut m = self.to_dense();
        row_reduce(&mut m, self.p).len()
    }

    /// True iff square of full rank.
    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let p = self.p;
        if self.is_monomial() {
            let mut t = TripletBuilder::with_capacity(self.cols, self.rows, p, self.nnz());
            for (r, c, v) in self.nonzeros() {
                t.push(c, r, inv(v, p).expect("nonzero"));
            }
            return Ok(t.build());
        }
        let n = self.rows;
        let dense = self.to_dense();
        let mut aug: Vec<Vec<u32>> = (0..n)
            .map(|r| {
                let mut row = dense[r].clone();
                row.extend((0..n).map(|c| u32::from(c == r)));
                row
            })
            .collect();
        let pivots = row_reduce(&mut aug, p);
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return Err(Error::NotInvertible(format!("{n}x{n} matrix of rank < {n}")));
        }
        let mut t = TripletBuilder::new(n, n, p);
        for (r, row) in aug.iter().enumerate().take(n) {
            for c in 0..n {
                t.push(r, c, row[n + c]);
            }
        }
        Ok(t.build())
    }

    /// A basis of the right kernel, as dense column vectors.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut m = self.to_dense();
        nullspace_dense(&mut m, self.cols, self.p)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson { rows: self.rows, cols: self.cols, entries: self.to_dense() }
    }

    pub fn from_json(j: &MatrixJson, p: u32) -> Result<Matrix> {
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Shape("matrix JSON entries do not match rows/cols".into()));
        }
        if j.entries.iter().flatten().any(|&v| v >= p) {
            return Err(Error::Parse(format!("matrix entry outside [0,{p})")));
        }
        Ok(Matrix::from_fn(j.rows, j.cols, p, |r, c| j.entries[r][c] as i64))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows * self.cols <= 144 {
            write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, self.to_dense())
        } else {
            write!(f, "Matrix{}x{}(nnz={})", self.rows, self.cols, self.nnz())
        }
    }
}

/// Reduces `m` to reduced row echelon form in place; returns pivot columns.
pub(crate) fn row_reduce(m: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(k) = (r..nrows).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, k);
        let iv = inv(m[r][c], p).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = mul(*x, iv, p);
        }
        for k in 0..nrows {
            if k != r && m[k][c] != 0 {
                let factor = m[k][c];
                for j in 0..ncols {
                    let sub = mul(factor, m[r][j], p);
                    m[k][j] = add(m[k][j], neg(sub, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn nullspace_dense(m: &mut [Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let pivots = row_reduce(m, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = neg(m[r][fc], p);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_identity() {
        let k = Matrix::identity(2, 3).kronecker(&Matrix::identity(3, 3)).unwrap();
        assert_eq!(k, Matrix::identity(6, 3));
    }

    #[test]
    fn kronecker_hand_example() {
        let a = Matrix::from_rows(3, &[vec![1, 2], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(3, &[vec![1], vec![1]]).unwrap();
        let k = a.kronecker(&b).unwrap();
        assert_eq!(k.to_dense(), vec![vec![1, 2], vec![1, 2], vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn invertibility_examples() {
        assert!(Matrix::identity(4, 3).is_invertible());
        assert!(!Matrix::zeros(2, 2, 3).is_invertible());
        let m = Matrix::from_rows(5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(!m.is_invertible());
    }

    #[test]
    fn direct_sum_examples() {
        let a = Matrix::from_rows(3, &[vec![1]]).unwrap();
        let b = Matrix::from_rows(3, &[vec![2]]).unwrap();
        let c = Matrix::from_rows(3, &[vec![1]]).unwrap();
        let s = Matrix::block_direct_sum(&[a.clone(), b.clone()], 3).unwrap();
        assert_eq!(s.to_dense(), vec![vec![1, 0], vec![0, 2]]);
        assert_eq!(Matrix::block_direct_sum(std::slice::from_ref(&a), 3).unwrap(), a);
        let e = Matrix::block_direct_sum(&[], 3).unwrap();
        assert_eq!((e.rows(), e.cols()), (0, 0));
        let d = Matrix::block_direct_sum(&[a, b, c], 3).unwrap();
        assert_eq!(d.to_dense(), vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(7, &[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]).unwrap();
        let i = m.inverse().unwrap();
        assert_eq!(m.mul(&i).unwrap(), Matrix::identity(3, 7));
        let perm = Matrix::from_rows(3, &[vec![0, 2], vec![1, 0]]).unwrap();
        assert_eq!(perm.mul(&perm.inverse().unwrap()).unwrap(), Matrix::identity(2, 3));
    }

    #[test]
    fn nullspace_is_kernel() {
        let m = Matrix::from_rows(3, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).unwrap().iter().all(|&x| x == 0));
    }

    #[test]
    fn field_rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(7).is_ok());
        let f = PrimeField::new(5).unwrap();
        assert!(f.is_square(4));
        assert!(!f.is_square(2));
        assert_eq!(f.inv(2), Some(3));
    }
}
