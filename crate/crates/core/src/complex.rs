//! Bounded chain complexes and chain maps over F_p (homological grading).

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{nullspace_dense, Matrix, MatrixJson, TripletBuilder};

#[derive(PartialEq, Eq, Hash)]
struct Inner {
    p: u32,
    min_degree: i64,
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
}

/// A bounded complex `... -> A_n -> A_{n-1} -> ...` with `d_n : A_n -> A_{n-1}`.
///
/// Zero pieces at either end are trimmed, so two complexes are equal iff they
/// have the same nonzero degree range, dimensions and differentials.
#[derive(Clone)]
pub struct Complex(Arc<Inner>);

impl Complex {
    /// A hash of the degree range, dimensions and differentials.
    pub(crate) fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Complex {}

impl std::hash::Hash for Complex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(p={}, min={}, dims={:?}", self.p(), self.min_degree(), self.dims())?;
        if self.dims().iter().sum::<usize>() <= 8 {
            write!(f, ", diffs={:?}", self.0.diffs)?;
        }
        write!(f, ")")
    }
}

/// JSON shape of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub p: u32,
    pub min_degree: i64,
    pub dims: Vec<usize>,
    pub diffs: Vec<MatrixJson>,
}

impl Complex {
    /// Builds and validates a complex; `diffs[i]` maps degree `min_degree+i+1` to `min_degree+i`.
    pub fn new(p: u32, min_degree: i64, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Complex> {
        let c = Self::from_parts_unchecked(p, min_degree, dims, diffs)?;
        if !c.validate() {
            return Err(Error::InvalidComplex("d o d != 0".into()));
        }
        Ok(c)
    }

    /// Builds a complex checking only shapes; `d o d = 0` is not checked.
    pub fn from_parts_unchecked(p: u32, min_degree: i64, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Complex> {
        let expected = dims.len().saturating_sub(1);
        if diffs.len() != expected {
            return Err(Error::InvalidComplex(format!("{} differentials for {} degrees", diffs.len(), dims.len())));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.p() != p {
                return Err(Error::FieldMismatch(p, d.p()));
            }
            if d.rows() != dims[i] || d.cols() != dims[i + 1] {
                return Err(Error::InvalidComplex(format!(
                    "differential out of degree {} is {}x{}, expected {}x{}",
                    min_degree + i as i64 + 1,
                    d.rows(),
                    d.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        Ok(Self::normalized(p, min_degree, dims, diffs))
    }

    /// Builds a complex over degrees `lo..=hi` from per-degree closures (unchecked).
    pub fn build(p: u32, lo: i64, hi: i64, dim: impl Fn(i64) -> usize, diff: impl Fn(i64) -> Matrix) -> Complex {
        if hi < lo {
            return Self::zero(p);
        }
        let dims: Vec<usize> = (lo..=hi).map(&dim).collect();
        let diffs: Vec<Matrix> = (lo + 1..=hi).map(&diff).collect();
        Self::normalized(p, lo, dims, diffs)
    }

    fn normalized(p: u32, mut min_degree: i64, mut dims: Vec<usize>, mut diffs: Vec<Matrix>) -> Complex {
        while dims.last() == Some(&0) {
            dims.pop();
            diffs.pop();
        }
        let lead = dims.iter().take_while(|&&d| d == 0).count();
        if lead == dims.len() {
            return Complex(Arc::new(Inner { p, min_degree: 0, dims: vec![], diffs: vec![] }));
        }
        if lead > 0 {
            dims.drain(..lead);
            diffs.drain(..lead);
            min_degree += lead as i64;
        }
        Complex(Arc::new(Inner { p, min_degree, dims, diffs }))
    }

    /// The zero complex.
    pub fn zero(p: u32) -> Complex {
        Self::normalized(p, 0, vec![], vec![])
    }

    /// F_p concentrated in degree 0.
    pub fn unit(p: u32) -> Complex {
        Self::line(p, 0)
    }

    /// F_p concentrated in degree `n`.
    pub fn line(p: u32, n: i64) -> Complex {
        Self::normalized(p, n, vec![1], vec![])
    }

    /// A complex with zero differentials.
    pub fn graded(p: u32, min_degree: i64, dims: Vec<usize>) -> Complex {
        let diffs = dims.windows(2).map(|w| Matrix::zeros(w[0], w[1], p)).collect();
        Self::normalized(p, min_degree, dims, diffs)
    }

    /// `F_p --1--> F_p` in degrees `n -> n-1`.
    pub fn disc(p: u32, n: i64) -> Complex {
        Self::normalized(p, n - 1, vec![1, 1], vec![Matrix::identity(1, p)])
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn min_degree(&self) -> i64 {
        self.0.min_degree
    }

    /// Highest degree; `min_degree - 1` for the zero complex.
    pub fn max_degree(&self) -> i64 {
        self.0.min_degree + self.0.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn is_zero(&self) -> bool {
        self.0.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    /// Dimension in degree `n` (0 outside the range).
    pub fn dim(&self, n: i64) -> usize {
        let k = n - self.0.min_degree;
        if k < 0 {
            0
        } else {
            self.0.dims.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// `d_n : A_n -> A_{n-1}` when both ends lie in the range.
    pub fn diff_ref(&self, n: i64) -> Option<&Matrix> {
        let k = n - self.0.min_degree - 1;
        if k < 0 {
            None
        } else {
            self.0.diffs.get(k as usize)
        }
    }

    /// `d_n : A_n -> A_{n-1}`, zero outside the range.
    pub fn diff(&self, n: i64) -> Matrix {
        self.diff_ref(n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(n - 1), self.dim(n), self.p()))
    }

    /// Degrees carrying nonzero pieces.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_degree()..=self.max_degree()
    }

    /// True iff shapes are consistent and `d_{n} d_{n+1} = 0` everywhere.
    pub fn validate(&self) -> bool {
        let inner = &self.0;
        for (i, d) in inner.diffs.iter().enumerate() {
            if d.p() != inner.p || d.rows() != inner.dims[i] || d.cols() != inner.dims[i + 1] {
                return false;
            }
        }
        inner.diffs.windows(2).all(|w| w[0].mul(&w[1]).map(|m| m.is_zero()).unwrap_or(false))
    }

    /// `TA` with `(TA)_n = A_{n-1}` and `d^{TA}_n = eps(n-1) d^A_{n-1}`.
    pub fn suspend_signed(&self, eps: impl Fn(i64) -> i8) -> Complex {
        self.shift_signed(1, |n| eps(n - 1))
    }

    /// `T^{-1}A` with `(T^{-1}A)_n = A_{n+1}` and `d_n = eps(n) d^A_{n+1}`.
    pub fn desuspend_signed(&self, eps: impl Fn(i64) -> i8) -> Complex {
        self.shift_signed(-1, eps)
    }

    /// Relabels degrees by `+k`; the differential out of new degree `n` is scaled by `sign(n)`.
    fn shift_signed(&self, k: i64, sign: impl Fn(i64) -> i8) -> Complex {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.p();
        let lo = self.min_degree() + k;
        let diffs = self
            .0
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| if sign(lo + i as i64 + 1) < 0 { d.neg() } else { d.clone() })
            .collect();
        Complex(Arc::new(Inner { p, min_degree: lo, dims: self.0.dims.clone(), diffs }))
    }

    /// Suspension with the standard sign `-1`.
    pub fn suspend(&self) -> Complex {
        self.suspend_signed(|_| -1)
    }

    /// Desuspension with the standard sign `-1`.
    pub fn desuspend(&self) -> Complex {
        self.desuspend_signed(|_| -1)
    }

    /// Direct sum in the given order with block-diagonal differentials.
    pub fn direct_sum(p: u32, parts: &[Complex]) -> Complex {
        let nonzero: Vec<&Complex> = parts.iter().filter(|c| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return Complex::zero(p);
        }
        let lo = nonzero.iter().map(|c| c.min_degree()).min().expect("nonempty");
        let hi = nonzero.iter().map(|c| c.max_degree()).max().expect("nonempty");
        Complex::build(
            p,
            lo,
            hi,
            |n| parts.iter().map(|c| c.dim(n)).sum(),
            |n| {
                let blocks: Vec<Matrix> = parts.iter().map(|c| c.diff(n)).collect();
                Matrix::block_direct_sum(&blocks, p).expect("same field")
            },
        )
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            p: self.p(),
            min_degree: self.min_degree(),
            dims: self.dims().to_vec(),
            diffs: self.0.diffs.iter().map(Matrix::to_json).collect(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Complex> {
        crate::field::PrimeField::new(j.p)?;
        let diffs = j.diffs.iter().map(|m| Matrix::from_json(m, j.p)).collect::<Result<Vec<_>>>()?;
        Complex::new(j.p, j.min_degree, j.dims.clone(), diffs)
    }
}

/// A family of matrices `f_n : A_n -> B_{n+degree}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    degree: i64,
    comps: Vec<Matrix>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("degree", &self.degree)
            .field("comps", &self.comps)
            .finish()
    }
}

/// JSON shape of a chain map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMapJson {
    pub source: ComplexJson,
    pub target: ComplexJson,
    pub degree: i64,
    pub components: Vec<MatrixJson>,
}

impl ChainMap {
    /// Builds a chain map and checks `d^B f = (-1)^degree f d^A`.
    pub fn new(source: Complex, target: Complex, degree: i64, comps: Vec<Matrix>) -> Result<ChainMap> {
        let m = Self::unchecked(source, target, degree, comps)?;
        if !m.is_chain_map() {
            return Err(Error::NotAChainMap(format!("{m:?}")));
        }
        Ok(m)
    }

    /// Builds from components indexed by source degree, checking shapes only.
    pub fn unchecked(source: Complex, target: Complex, degree: i64, comps: Vec<Matrix>) -> Result<ChainMap> {
        if source.p() != target.p() {
            return Err(Error::FieldMismatch(source.p(), target.p()));
        }
        if comps.len() != source.dims().len() {
            return Err(Error::Shape(format!("{} components for {} source degrees", comps.len(), source.dims().len())));
        }
        for (n, c) in source.degrees().zip(&comps) {
            if c.rows() != target.dim(n + degree) || c.cols() != source.dim(n) || c.p() != source.p() {
                return Err(Error::Shape(format!(
                    "component at degree {n} is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    target.dim(n + degree),
                    source.dim(n)
                )));
            }
        }
        Ok(ChainMap { source, target, degree, comps })
    }

    /// Degree-0 map from a per-degree closure (unchecked).
    pub fn from_fn(source: Complex, target: Complex, f: impl Fn(i64) -> Matrix) -> ChainMap {
        let comps = source.degrees().map(f).collect();
        ChainMap { source, target, degree: 0, comps }
    }

    /// Degree-0 map from a per-degree closure, certified as a chain map.
    pub fn certified(source: Complex, target: Complex, f: impl Fn(i64) -> Matrix) -> Result<ChainMap> {
        let comps: Vec<Matrix> = source.degrees().map(f).collect();
        ChainMap::new(source, target, 0, comps)
    }

    pub fn identity(a: &Complex) -> ChainMap {
        let comps = a.degrees().map(|n| Matrix::identity(a.dim(n), a.p())).collect();
        ChainMap { source: a.clone(), target: a.clone(), degree: 0, comps }
    }

    pub fn zero(a: &Complex, b: &Complex) -> ChainMap {
        let comps = a.degrees().map(|n| Matrix::zeros(b.dim(n), a.dim(n), a.p())).collect();
        ChainMap { source: a.clone(), target: b.clone(), degree: 0, comps }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn p(&self) -> u32 {
        self.source.p()
    }

    /// `f_n : A_n -> B_{n+degree}`, zero outside the source range.
    pub fn comp(&self, n: i64) -> Matrix {
        self.comp_ref(n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(n + self.degree), self.source.dim(n), self.p()))
    }

    pub fn comp_ref(&self, n: i64) -> Option<&Matrix> {
        let k = n - self.source.min_degree();
        if k < 0 {
            None
        } else {
            self.comps.get(k as usize)
        }
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    /// `d^B f = (-1)^degree f d^A` in every degree.
    pub fn is_chain_map(&self) -> bool {
        let p = self.p();
        let lo = self.source.min_degree().min(self.target.min_degree() - self.degree);
        let hi = self.source.max_degree().max(self.target.max_degree() - self.degree) + 1;
        (lo..=hi).all(|n| {
            let lhs = self.target.diff(n + self.degree).mul(&self.comp(n));
            let rhs = self.comp(n - 1).mul(&self.source.diff(n));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => {
                    let r = if self.degree % 2 != 0 { r.neg() } else { r };
                    l == r
                }
                _ => false,
            }
        }) && self.comps.iter().all(|c| c.p() == p)
    }

    /// `self o first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::Incomposable(format!(
                "target {:?} does not match source {:?}",
                first.target, self.source
            )));
        }
        let comps = first
            .source
            .degrees()
            .map(|n| self.comp(n + first.degree).mul(&first.comp(n)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainMap {
            source: first.source.clone(),
            target: self.target.clone(),
            degree: self.degree + first.degree,
            comps,
        })
    }

    fn check_parallel(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::Incomposable("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { comps, ..self.clone() })
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { comps, ..self.clone() })
    }

    pub fn scale(&self, c: u32) -> ChainMap {
        ChainMap { comps: self.comps.iter().map(|m| m.scale(c)).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap { comps: self.comps.iter().map(Matrix::neg).collect(), ..self.clone() }
    }

    /// Degreewise invertibility of a degree-0 map.
    pub fn is_invertible(&self) -> bool {
        self.degree == 0
            && self.source.dims() == self.target.dims()
            && self.source.min_degree() == self.target.min_degree()
            && self.comps.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Result<ChainMap> {
        if self.degree != 0 || self.source.dims() != self.target.dims() || self.source.min_degree() != self.target.min_degree() {
            return Err(Error::NotInvertible("source and target have different dimensions".into()));
        }
        let comps = self.comps.iter().map(Matrix::inverse).collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { source: self.target.clone(), target: self.source.clone(), degree: 0, comps })
    }

    pub fn is_identity(&self) -> bool {
        self.degree == 0 && self.source == self.target && self.comps.iter().all(Matrix::is_identity)
    }

    /// `Tf` between `TA` and `TB` (components reindexed, no sign).
    pub fn suspend_signed(&self, eps: impl Fn(i64) -> i8 + Clone) -> ChainMap {
        ChainMap {
            source: self.source.suspend_signed(eps.clone()),
            target: self.target.suspend_signed(eps),
            degree: self.degree,
            comps: self.comps.clone(),
        }
    }

    /// `T^{-1}f` between `T^{-1}A` and `T^{-1}B`.
    pub fn desuspend_signed(&self, eps: impl Fn(i64) -> i8 + Clone) -> ChainMap {
        ChainMap {
            source: self.source.desuspend_signed(eps.clone()),
            target: self.target.desuspend_signed(eps),
            degree: self.degree,
            comps: self.comps.clone(),
        }
    }

    pub fn to_json(&self) -> ChainMapJson {
        ChainMapJson {
            source: self.source.to_json(),
            target: self.target.to_json(),
            degree: self.degree,
            components: self.comps.iter().map(Matrix::to_json).collect(),
        }
    }

    pub fn from_json(j: &ChainMapJson) -> Result<ChainMap> {
        let source = Complex::from_json(&j.source)?;
        let target = Complex::from_json(&j.target)?;
        let p = source.p();
        let comps = j.components.iter().map(|m| Matrix::from_json(m, p)).collect::<Result<Vec<_>>>()?;
        ChainMap::new(source, target, j.degree, comps)
    }
}

/// A basis of the degree-0 chain maps `a -> b`.
pub fn chain_map_space(a: &Complex, b: &Complex) -> Vec<ChainMap> {
    let p = a.p();
    // Unknowns: f_n[r, s] for n in a's range, laid out degree by degree, row-major.
    let mut offsets = Vec::new();
    let mut nvars = 0usize;
    for n in a.degrees() {
        offsets.push(nvars);
        nvars += b.dim(n) * a.dim(n);
    }
    if nvars == 0 {
        return Vec::new();
    }
    let var = |n: i64, r: usize, s: usize| -> Option<usize> {
        let k = n - a.min_degree();
        if k < 0 || k as usize >= offsets.len() {
            return None;
        }
        Some(offsets[k as usize] + r * a.dim(n) + s)
    };
    let mut eqs: Vec<Vec<u32>> = Vec::new();
    // d^B_n f_n - f_{n-1} d^A_n = 0 as maps A_n -> B_{n-1}.
    for n in a.min_degree()..=a.max_degree() + 1 {
        let db = b.diff(n);
        let da = a.diff(n);
        for r in 0..b.dim(n - 1) {
            for s in 0..a.dim(n) {
                let mut row = vec![0u32; nvars];
                for k in 0..b.dim(n) {
                    let c = db.get(r, k);
                    if c != 0 {
                        if let Some(v) = var(n, k, s) {
                            row[v] = (row[v] + c) % p;
                        }
                    }
                }
                for k in 0..a.dim(n - 1) {
                    let c = da.get(k, s);
                    if c != 0 {
                        if let Some(v) = var(n - 1, r, k) {
                            row[v] = (row[v] + p - c) % p;
                        }
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    eqs.push(row);
                }
            }
        }
    }
    let basis = if eqs.is_empty() {
        (0..nvars)
            .map(|i| {
                let mut v = vec![0u32; nvars];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        nullspace_dense(&mut eqs, nvars, p)
    };
    basis
        .into_iter()
        .map(|v| {
            ChainMap::from_fn(a.clone(), b.clone(), |n| {
                Matrix::from_fn(b.dim(n), a.dim(n), p, |r, s| v[var(n, r, s).expect("in range")] as i64)
            })
        })
        .collect()
}

/// Uniform random matrix.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, p: u32) -> Matrix {
    let mut t = TripletBuilder::new(rows, cols, p);
    for r in 0..rows {
        for c in 0..cols {
            t.push(r, c, rng.gen_range(0..p));
        }
    }
    t.build()
}

/// Uniform random invertible matrix (rejection sampling).
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, p: u32) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n, p);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random valid complex: a direct sum of free summands and discs, with a random change of basis.
pub fn random_complex_with<R: Rng + ?Sized>(rng: &mut R, p: u32, max_len: usize, max_dim: usize) -> Complex {
    let max_len = max_len.max(1);
    let len = rng.gen_range(1..=max_len);
    let lo: i64 = rng.gen_range(-1..=1);
    let hi = lo + len as i64 - 1;
    let mut cap = vec![max_dim; len];
    // Pieces as (top degree, is_disc).
    let mut pieces: Vec<(i64, bool)> = Vec::new();
    for k in (0..len).rev() {
        if k > 0 {
            let room = cap[k].min(cap[k - 1]);
            let discs = rng.gen_range(0..=room);
            cap[k] -= discs;
            cap[k - 1] -= discs;
            pieces.extend(std::iter::repeat_n((lo + k as i64, true), discs));
        }
        let free = rng.gen_range(0..=cap[k]);
        cap[k] -= free;
        pieces.extend(std::iter::repeat_n((lo + k as i64, false), free));
    }
    for i in (1..pieces.len()).rev() {
        let j = rng.gen_range(0..=i);
        pieces.swap(i, j);
    }
    let parts: Vec<Complex> = pieces
        .iter()
        .map(|&(n, disc)| if disc { Complex::disc(p, n) } else { Complex::line(p, n) })
        .collect();
    let sum = Complex::direct_sum(p, &parts);
    let bases: Vec<Matrix> = (lo..=hi).map(|n| random_invertible(rng, sum.dim(n), p)).collect();
    let basis = |n: i64| -> &Matrix { &bases[(n - lo) as usize] };
    Complex::build(p, lo, hi, |n| sum.dim(n), |n| {
        let d = sum.diff(n);
        let inv = basis(n).inverse().expect("invertible");
        basis(n - 1).mul(&d).and_then(|m| m.mul(&inv)).expect("shapes agree")
    })
}

/// Deterministic random complex from a seed.
pub fn random_complex(seed: u64, p: u32, max_len: usize, max_dim: usize) -> Complex {
    random_complex_with(&mut ChaCha8Rng::seed_from_u64(seed), p, max_len, max_dim)
}

/// A uniformly random degree-0 chain map `a -> b`.
pub fn random_chain_map<R: Rng + ?Sized>(rng: &mut R, a: &Complex, b: &Complex) -> ChainMap {
    let basis = chain_map_space(a, b);
    let p = a.p();
    let mut acc = ChainMap::zero(a, b);
    for m in basis {
        let c = rng.gen_range(0..p);
        if c != 0 {
            acc = acc.add(&m.scale(c)).expect("parallel maps");
        }
    }
    acc
}

/// A random degree-0 chain automorphism of `a`.
pub fn random_automorphism<R: Rng + ?Sized>(rng: &mut R, a: &Complex) -> ChainMap {
    for _ in 0..64 {
        let m = random_chain_map(rng, a, a);
        if m.is_invertible() {
            return m;
        }
    }
    ChainMap::identity(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(Complex::graded(3, 0, vec![2, 1, 3]).validate());
        let bad = Complex::from_parts_unchecked(3, 0, vec![1, 1, 1], vec![m(3, &[&[1]]), m(3, &[&[1]])]).unwrap();
        assert!(!bad.validate());
        assert!(Complex::new(3, 0, vec![1, 1, 1], vec![m(3, &[&[1]]), m(3, &[&[1]])]).is_err());
    }

    #[test]
    fn suspend_negates_differential() {
        let a = Complex::disc(3, 1);
        let ta = a.suspend();
        assert_eq!(ta.min_degree(), 1);
        assert_eq!(ta.max_degree(), 2);
        assert_eq!(ta.diff(2).to_dense(), vec![vec![2]]);
        assert_eq!(ta.desuspend(), a);
        assert_eq!(ta.suspend().diff(3).to_dense(), vec![vec![1]]);
        let g = Complex::graded(3, 0, vec![1, 2]);
        assert!(g.suspend().diff(2).is_zero());
    }

    #[test]
    fn zero_ends_are_trimmed() {
        let c = Complex::graded(3, -2, vec![0, 1, 0]);
        assert_eq!(c.min_degree(), -1);
        assert_eq!(c.dims(), &[1]);
        assert!(Complex::graded(3, 4, vec![0, 0]).is_zero());
        assert_eq!(Complex::graded(3, 4, vec![0]), Complex::zero(3));
    }

    #[test]
    fn chain_map_space_examples() {
        let u = Complex::unit(3);
        assert_eq!(chain_map_space(&u, &u).len(), 1);
        // Disc in degrees 0 -> -1: projection onto degree 0.
        assert_eq!(chain_map_space(&Complex::disc(3, 0), &u).len(), 1);
        let d = Complex::disc(3, 1);
        assert_eq!(chain_map_space(&d, &u).len(), 0);
        assert_eq!(chain_map_space(&u, &d).len(), 1);
        assert_eq!(chain_map_space(&d, &d).len(), 1);
    }

    #[test]
    fn chain_map_space_matches_enumeration() {
        let cs = [
            Complex::unit(3),
            Complex::disc(3, 1),
            Complex::disc(3, 0),
            Complex::graded(3, 0, vec![1, 1]),
            Complex::zero(3),
        ];
        for a in &cs {
            for b in &cs {
                let nvars: usize = a.degrees().map(|n| a.dim(n) * b.dim(n)).sum();
                let mut count = 0u32;
                for code in 0..3u32.pow(nvars as u32) {
                    let mut c = code;
                    let comps: Vec<Matrix> = a
                        .degrees()
                        .map(|n| {
                            Matrix::from_fn(b.dim(n), a.dim(n), 3, |_, _| {
                                let v = c % 3;
                                c /= 3;
                                v as i64
                            })
                        })
                        .collect();
                    if ChainMap::new(a.clone(), b.clone(), 0, comps).is_ok() {
                        count += 1;
                    }
                }
                assert_eq!(count, 3u32.pow(chain_map_space(a, b).len() as u32), "{a:?} -> {b:?}");
            }
        }
    }

    #[test]
    fn random_complexes_are_valid_and_deterministic() {
        let mut saw_nonzero = false;
        let mut saw_zero_diff = false;
        for seed in 0..100 {
            let c = random_complex(seed, 3, 3, 3);
            assert!(c.validate());
            assert_eq!(c, random_complex(seed, 3, 3, 3));
            assert_eq!(c.suspend().desuspend(), c);
            if (c.min_degree() + 1..=c.max_degree()).any(|n| !c.diff(n).is_zero()) {
                saw_nonzero = true;
            } else {
                saw_zero_diff = true;
            }
        }
        assert!(saw_nonzero && saw_zero_diff);
    }

    #[test]
    fn compose_and_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_complex_with(&mut rng, 3, 3, 2);
            let b = random_complex_with(&mut rng, 3, 3, 2);
            let f = random_chain_map(&mut rng, &a, &b);
            assert!(f.is_chain_map());
            assert_eq!(ChainMap::identity(&b).compose(&f).unwrap(), f);
            let g = random_chain_map(&mut rng, &b, &a);
            assert!(g.compose(&f).unwrap().is_chain_map());
            assert!(f.compose(&f).is_err() || a == b);
        }
    }

    #[test]
    fn json_round_trip() {
        let c = random_complex(3, 5, 3, 2);
        let j = serde_json::to_string(&c.to_json()).unwrap();
        let back = Complex::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
