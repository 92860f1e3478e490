//! Witt groups of F_p by brute force: anisotropic reduction of symmetric forms, the
//! group table, and transfers and products of forms computed through the
//! duality-preserving functors.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::duality::complexes::gram_of;
use crate::duality::{tensor_dp, transfer_form, SymmetricForm};
use crate::error::{Error, Result};
use crate::field::{Matrix, PrimeField};
use crate::monoidal::StructuralContext;
use crate::sites::{FiniteMap, FiniteSet, SheafComplex, Sites};

#[cfg(test)]
mod tests;

type Dense = Vec<Vec<u32>>;

/// A Witt class, stored as its canonical anisotropic representative `diag(1, .., disc)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WittClass {
    pub p: u32,
    /// Dimension of the anisotropic kernel (0, 1 or 2).
    pub dim: usize,
    /// Discriminant of the kernel, normalized to 1 or the least non-square.
    pub disc: u32,
}

impl WittClass {
    pub fn zero(p: u32) -> WittClass {
        WittClass { p, dim: 0, disc: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// The diagonal representative: empty, `<disc>` or `<1, disc>`.
    pub fn representative(&self) -> Matrix {
        let diag: Vec<u32> = match self.dim {
            0 => vec![],
            1 => vec![self.disc],
            _ => vec![1, self.disc],
        };
        Matrix::from_fn(diag.len(), diag.len(), self.p, |r, c| if r == c { diag[r] as i64 } else { 0 })
    }

    pub fn label(&self) -> String {
        match self.dim {
            0 => "0".into(),
            1 => format!("<{}>", self.disc),
            _ => format!("<1,{}>", self.disc),
        }
    }
}

fn least_nonsquare(f: &PrimeField) -> u32 {
    (2..f.p()).find(|&a| !f.is_square(a)).unwrap_or(1)
}

fn square_class(f: &PrimeField, a: u32) -> u32 {
    if f.is_square(a) {
        1
    } else {
        least_nonsquare(f)
    }
}

fn dense(g: &Matrix) -> Dense {
    g.to_dense()
}

fn bilinear(f: &PrimeField, g: &Dense, x: &[u32], y: &[u32]) -> u32 {
    let mut acc = 0;
    for (i, row) in g.iter().enumerate() {
        if x[i] == 0 {
            continue;
        }
        let mut s = 0;
        for (j, &v) in row.iter().enumerate() {
            s = f.add(s, f.mul(v, y[j]));
        }
        acc = f.add(acc, f.mul(x[i], s));
    }
    acc
}

fn det(f: &PrimeField, g: &Dense) -> u32 {
    let n = g.len();
    let mut m = g.clone();
    let mut d = 1;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
        if piv != c {
            m.swap(piv, c);
            d = f.neg(d);
        }
        d = f.mul(d, m[c][c]);
        let inv = f.inv(m[c][c]).expect("nonzero pivot");
        for r in c + 1..n {
            let factor = f.mul(m[r][c], inv);
            if factor == 0 {
                continue;
            }
            for k in c..n {
                m[r][k] = f.sub(m[r][k], f.mul(factor, m[c][k]));
            }
        }
    }
    d
}

fn check_form(f: &PrimeField, g: &Matrix) -> Result<Dense> {
    if !g.is_square() {
        return Err(Error::Shape("Gram matrix must be square".into()));
    }
    if g.p() != f.p() {
        return Err(Error::FieldMismatch(g.p(), f.p()));
    }
    if g != &g.transpose() {
        return Err(Error::NotSymmetric);
    }
    if g.rank() != g.rows() {
        return Err(Error::Degenerate);
    }
    Ok(dense(g))
}

/// Every vector of `F_p^k`, in lexicographic order, padded with zeros to length `n`.
fn vectors(p: u32, k: usize, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(k as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().take(k) {
            *slot = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        v
    })
}

/// A nonzero isotropic vector, searched exhaustively over the span of the first
/// `min(n, 3)` basis vectors. Every ternary quadratic form over F_p has a nontrivial zero,
/// so the search is complete.
pub fn find_isotropic(f: &PrimeField, g: &Matrix) -> Option<Vec<u32>> {
    let d = dense(g);
    let n = d.len();
    vectors(f.p(), n.min(3), n).find(|v| v.iter().any(|&x| x != 0) && bilinear(f, &d, v, v) == 0)
}

/// Gram matrix of `g` restricted to the span of `basis`.
fn restrict(f: &PrimeField, g: &Dense, basis: &[Vec<u32>]) -> Dense {
    basis.iter().map(|x| basis.iter().map(|y| bilinear(f, g, x, y)).collect()).collect()
}

fn to_matrix(p: u32, d: &Dense) -> Matrix {
    Matrix::from_fn(d.len(), d.len(), p, |r, c| d[r][c] as i64)
}

/// Splits off hyperbolic planes until the form is anisotropic and returns its class.
pub fn witt_reduce(p: u32, g: &Matrix) -> Result<WittClass> {
    let f = PrimeField::new(p)?;
    let mut cur = check_form(&f, g)?;
    loop {
        let n = cur.len();
        let m = to_matrix(p, &cur);
        let Some(v) = find_isotropic(&f, &m) else { break };
        let gv: Vec<u32> = (0..n).map(|j| bilinear(&f, &cur, &v, &unit_vec(n, j))).collect();
        let j = gv.iter().position(|&x| x != 0).ok_or(Error::Degenerate)?;
        let w = unit_vec(n, j);
        let constraints = Matrix::from_fn(2, n, p, |r, c| {
            let basis = if r == 0 { &v } else { &w };
            bilinear(&f, &cur, basis, &unit_vec(n, c)) as i64
        });
        cur = restrict(&f, &cur, &constraints.nullspace());
    }
    Ok(classify_anisotropic(&f, &cur))
}

fn unit_vec(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn classify_anisotropic(f: &PrimeField, g: &Dense) -> WittClass {
    let disc = if g.is_empty() { 1 } else { square_class(f, det(f, g)) };
    WittClass { p: f.p(), dim: g.len(), disc }
}

/// Invariants `(dim, disc)` of an arbitrary nondegenerate form, without reduction.
pub fn form_invariants(p: u32, g: &Matrix) -> Result<(usize, u32)> {
    let f = PrimeField::new(p)?;
    let d = check_form(&f, g)?;
    Ok((d.len(), if d.is_empty() { 1 } else { square_class(&f, det(&f, &d)) }))
}

/// `true` when some invertible `P` has `P^T a P = b`, by exhaustive search (`n <= 2`).
pub fn congruent(p: u32, a: &Matrix, b: &Matrix) -> Result<bool> {
    let f = PrimeField::new(p)?;
    let n = a.rows();
    if n > 2 || b.rows() != n {
        return Err(Error::Shape("exhaustive congruence is limited to equal sizes <= 2".into()));
    }
    let (da, db) = (dense(a), dense(b));
    for flat in vectors(p, n * n, n * n) {
        let cols: Vec<Vec<u32>> = (0..n).map(|c| (0..n).map(|r| flat[r * n + c]).collect()).collect();
        let pm: Dense = (0..n).map(|r| (0..n).map(|c| flat[r * n + c]).collect()).collect();
        if det(&f, &pm) == 0 {
            continue;
        }
        if restrict(&f, &da, &cols) == db {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Orthogonal sum of classes.
pub fn witt_add(a: &WittClass, b: &WittClass) -> Result<WittClass> {
    if a.p != b.p {
        return Err(Error::FieldMismatch(a.p, b.p));
    }
    let sum = Matrix::block_direct_sum(&[a.representative(), b.representative()], a.p)?;
    witt_reduce(a.p, &sum)
}

/// `-[g] = [-g]`.
pub fn witt_neg(a: &WittClass) -> Result<WittClass> {
    witt_reduce(a.p, &a.representative().neg())
}

/// The classes reachable from diagonal forms of dimension at most `maxdim`, with the
/// addition table on them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WittGroup {
    pub p: u32,
    pub classes: Vec<WittClass>,
    /// `table[i][j]` is the index of `classes[i] + classes[j]`.
    pub table: Vec<Vec<usize>>,
}

impl WittGroup {
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    pub fn index_of(&self, c: &WittClass) -> Option<usize> {
        self.classes.iter().position(|x| x == c)
    }

    /// Additive order of `classes[i]`.
    pub fn element_order(&self, i: usize) -> usize {
        let zero = self.index_of(&WittClass::zero(self.p)).expect("zero class present");
        let mut acc = i;
        let mut k = 1;
        while acc != zero {
            acc = self.table[acc][i];
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|i| self.element_order(i)).fold(1, lcm)
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order()).any(|i| self.element_order(i) == self.order())
    }

    /// Printable table with class labels.
    pub fn render(&self) -> String {
        let labels: Vec<String> = self.classes.iter().map(WittClass::label).collect();
        let w = labels.iter().map(String::len).max().unwrap_or(1).max(1);
        let mut out = format!("W(F_{}) : order {}, exponent {}\n", self.p, self.order(), self.exponent());
        out.push_str(&format!("{:>w$} |", "+"));
        for l in &labels {
            out.push_str(&format!(" {l:>w$}"));
        }
        out.push('\n');
        for (i, l) in labels.iter().enumerate() {
            out.push_str(&format!("{l:>w$} |"));
            for &j in &self.table[i] {
                out.push_str(&format!(" {:>w$}", labels[j]));
            }
            out.push('\n');
        }
        out
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Classifies `W(F_p)` from all nondegenerate diagonal forms of dimension at most `maxdim`.
pub fn witt_classify(p: u32, maxdim: usize) -> Result<WittGroup> {
    let f = PrimeField::new(p)?;
    let units: Vec<u32> = (1..p).collect();
    let mut seeds: Vec<Vec<u32>> = vec![vec![]];
    for d in 1..=maxdim {
        let count = units.len().pow(d as u32);
        for mut idx in 0..count {
            let mut diag = Vec::with_capacity(d);
            for _ in 0..d {
                diag.push(units[idx % units.len()]);
                idx /= units.len();
            }
            seeds.push(diag);
        }
    }
    let found: Vec<WittClass> = seeds
        .par_iter()
        .map(|diag| {
            let g = Matrix::from_fn(diag.len(), diag.len(), f.p(), |r, c| if r == c { diag[r] as i64 } else { 0 });
            witt_reduce(p, &g)
        })
        .collect::<Result<_>>()?;
    let classes: Vec<WittClass> = found.into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<&WittClass, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut table = vec![vec![0; classes.len()]; classes.len()];
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            let s = witt_add(a, b)?;
            table[i][j] = *index
                .get(&s)
                .ok_or_else(|| Error::Shape(format!("sum {} is outside the classified set", s.label())))?;
        }
    }
    Ok(WittGroup { p, classes, table })
}

/// Transfer along `f : X -> pt` of the degree-0 forms with Gram matrices `grams` (one per
/// point of `X`), computed as `rr_A o f_*(psi)` and reduced.
pub fn transfer_witt(sites: &Sites, f: &FiniteMap, grams: &[Matrix]) -> Result<WittClass> {
    let g = transfer_gram(sites, f, grams)?;
    witt_reduce(sites.p(), &g)
}

/// The Gram matrix of the transferred form `rr_A o f_*(psi)` at the point.
pub fn transfer_gram(sites: &Sites, f: &FiniteMap, grams: &[Matrix]) -> Result<Matrix> {
    if f.target().len() != 1 {
        return Err(Error::Shape("transfer needs a map to a point".into()));
    }
    for g in grams {
        check_form(&PrimeField::new(sites.p())?, g)?;
    }
    let psi = sites.form_from_grams(f.source(), grams)?;
    let one = SheafComplex::unit(f.target(), sites.p());
    let out = transfer_form(&sites.pushforward_dp(f, &one)?, &psi)?;
    Ok(gram_of(out.form.comp(0)))
}

/// The class of the orthogonal sum of `grams`.
pub fn orthogonal_sum_class(p: u32, grams: &[Matrix]) -> Result<WittClass> {
    witt_reduce(p, &Matrix::block_direct_sum(grams, p)?)
}

/// Gram matrix of the product form `dd o (psi (x) chi)` on degree-0 complexes.
pub fn product_gram(ctx: &StructuralContext, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let one = ctx.unit();
    let dp = tensor_dp(ctx, &one, &one)?;
    let psi = SymmetricForm::new(&dp.source, (ctx.form_from_gram(a)?.form, ctx.form_from_gram(b)?.form))?;
    Ok(gram_of(&transfer_form(&dp, &psi)?.form))
}

/// Both sides of the projection formula `f_*(x . f^* y) = f_*(x) . y` for `f : X -> pt`,
/// with `x` given by per-point Gram matrices and `y` by one Gram matrix.
pub fn projection_formula(sites: &Sites, f: &FiniteMap, x: &[Matrix], y: &Matrix) -> Result<(WittClass, WittClass)> {
    let p = sites.p();
    let base: &FiniteSet = f.source();
    let one_x = SheafComplex::unit(base, p);
    let one_pt = SheafComplex::unit(f.target(), p);
    let psi_y = sites.form_from_grams(f.target(), std::slice::from_ref(y))?;
    let fy = transfer_form(&sites.pullback_dp(f, &one_pt)?, &psi_y)?;
    let psi_x = sites.form_from_grams(base, x)?;
    let cx = sites.cat(base);
    let prod = tensor_dp(&cx, &one_x, &one_x)?;
    let xy = transfer_form(&prod, &SymmetricForm::new(&prod.source, (psi_x.form.clone(), fy.form))?)?;
    let lhs = transfer_form(&sites.pushforward_dp(f, &one_pt)?, &xy)?;
    let fx = transfer_gram(sites, f, x)?;
    let rhs = product_gram(sites.ctx(), &fx, y)?;
    Ok((witt_reduce(p, &gram_of(lhs.form.comp(0)))?, witt_reduce(p, &rhs)?))
}
