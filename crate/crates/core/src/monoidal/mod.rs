//! The closed symmetric monoidal structure on bounded complexes over F_p.
//!
//! `(A (x) B)_n` is the direct sum of `A_i (x) B_j` over `i + j = n` and `[A, B]_n` the
//! sum of `hom(A_i, B_j)` over `j - i = n`, both ordered by ascending `i`. Inside
//! `A_i (x) B_j` the basis vector `a (x) b` has index `a * dim B_j + b`; a map
//! `phi in hom(A_i, B_j)` is flattened column-major, entry `(r, s)` at `s * dim B_j + r`.
//! Every structural map is certified as a chain map when it is built.

pub mod category;
pub mod closed;
pub mod diagrams;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::field::{Matrix, PrimeField, TripletBuilder};
use crate::signs::{default_assignment, verify_table, SignAssignment, Symbol};

pub use category::{compose_all, nat, product_adjunction, Adjunction, Arrow, Functor, MateSquare, NatTrans};
pub use closed::ClosedMonoidal;

/// Offsets of the blocks `(i, j)` inside the graded pieces of `A (x) B` or `[A, B]`.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    a_lo: i64,
    a_len: usize,
    b_lo: i64,
    b_len: usize,
    lo: i64,
    off: Vec<usize>,
    dims: Vec<usize>,
}

impl Layout {
    fn build(a: &Complex, b: &Complex, hom: bool) -> Layout {
        let (a_lo, a_len) = (a.min_degree(), a.dims().len());
        let (b_lo, b_len) = (b.min_degree(), b.dims().len());
        let mut off = vec![0usize; a_len * b_len];
        if a_len == 0 || b_len == 0 {
            return Layout { a_lo, a_len, b_lo, b_len, lo: 0, off, dims: vec![] };
        }
        let (lo, hi) = if hom {
            (b.min_degree() - a.max_degree(), b.max_degree() - a.min_degree())
        } else {
            (a.min_degree() + b.min_degree(), a.max_degree() + b.max_degree())
        };
        let mut dims = Vec::with_capacity((hi - lo + 1) as usize);
        for n in lo..=hi {
            let mut cur = 0;
            for i in a.degrees() {
                let j = if hom { i + n } else { n - i };
                if j < b_lo || j > b.max_degree() {
                    continue;
                }
                off[(i - a_lo) as usize * b_len + (j - b_lo) as usize] = cur;
                cur += a.dim(i) * b.dim(j);
            }
            dims.push(cur);
        }
        Layout { a_lo, a_len, b_lo, b_len, lo, off, dims }
    }

    pub(crate) fn tensor(a: &Complex, b: &Complex) -> Layout {
        Self::build(a, b, false)
    }

    pub(crate) fn hom(a: &Complex, b: &Complex) -> Layout {
        Self::build(a, b, true)
    }

    /// Offset of block `(i, j)` inside its graded piece.
    pub(crate) fn off(&self, i: i64, j: i64) -> usize {
        debug_assert!(i >= self.a_lo && ((i - self.a_lo) as usize) < self.a_len);
        debug_assert!(j >= self.b_lo && ((j - self.b_lo) as usize) < self.b_len);
        self.off[(i - self.a_lo) as usize * self.b_len + (j - self.b_lo) as usize]
    }

    fn dim(&self, n: i64) -> usize {
        let k = n - self.lo;
        if k < 0 {
            0
        } else {
            self.dims.get(k as usize).copied().unwrap_or(0)
        }
    }

    fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }
}

/// The sign assignment and field that all constructions of this module use.
#[derive(Debug, Clone)]
pub struct StructuralContext {
    signs: Arc<SignAssignment>,
    field: PrimeField,
    memo: Arc<Mutex<Memo>>,
}

/// Tensor and Hom results bucketed by operand fingerprints.
#[derive(Debug, Default)]
struct Memo {
    entries: HashMap<(bool, u64, u64), Vec<(Complex, Complex, Complex)>>,
    len: usize,
}

const MEMO_CAP: usize = 4096;

impl StructuralContext {
    /// A context whose sign assignment passes the whole compatibility table.
    pub fn new(signs: SignAssignment, field: PrimeField) -> Result<StructuralContext> {
        if let Some(bad) = verify_table(&signs).into_iter().find(|r| !r.pass) {
            return Err(Error::SignTable(format!("{} fails at {:?}", bad.id, bad.counterexample.unwrap_or_default())));
        }
        Ok(Self::unchecked(signs, field))
    }

    /// A context with an arbitrary assignment, for perturbation studies.
    pub fn unchecked(signs: SignAssignment, field: PrimeField) -> StructuralContext {
        StructuralContext { signs: Arc::new(signs), field, memo: Arc::default() }
    }

    /// The standard signs over F_p.
    pub fn standard(p: u32) -> Result<StructuralContext> {
        StructuralContext::new(default_assignment(1, 1), PrimeField::new(p)?)
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn signs(&self) -> &SignAssignment {
        &self.signs
    }

    /// The field element of a sign symbol at the given indices.
    fn s(&self, sym: Symbol, x: &[i64]) -> u32 {
        self.field.sign(self.signs.sign(sym, x))
    }

    fn check(&self, a: &Complex) -> Result<()> {
        if a.p() != self.p() {
            return Err(Error::FieldMismatch(self.p(), a.p()));
        }
        Ok(())
    }

    fn certify(&self, m: ChainMap, name: &str) -> Result<ChainMap> {
        if m.is_chain_map() {
            Ok(m)
        } else {
            Err(Error::NotAChainMap(name.to_string()))
        }
    }

    pub fn unit(&self) -> Complex {
        Complex::unit(self.p())
    }

    pub fn suspend(&self, a: &Complex) -> Complex {
        let s = self.signs.clone();
        a.suspend_signed(move |n| s.sign(Symbol::T, &[n]))
    }

    pub fn desuspend(&self, a: &Complex) -> Complex {
        let s = self.signs.clone();
        a.desuspend_signed(move |n| s.sign(Symbol::T, &[n]))
    }

    /// `T^n A` for any integer `n`.
    pub fn shift(&self, a: &Complex, n: i64) -> Complex {
        let mut out = a.clone();
        for _ in 0..n.abs() {
            out = if n > 0 { self.suspend(&out) } else { self.desuspend(&out) };
        }
        out
    }

    pub fn suspend_map(&self, f: &ChainMap) -> ChainMap {
        let s = self.signs.clone();
        f.suspend_signed(move |n| s.sign(Symbol::T, &[n]))
    }

    pub fn desuspend_map(&self, f: &ChainMap) -> ChainMap {
        let s = self.signs.clone();
        f.desuspend_signed(move |n| s.sign(Symbol::T, &[n]))
    }

    fn memoized(&self, hom: bool, a: &Complex, b: &Complex, make: impl FnOnce() -> Result<Complex>) -> Result<Complex> {
        let key = (hom, a.fingerprint(), b.fingerprint());
        if let Some(bucket) = self.memo.lock().expect("memo lock").entries.get(&key) {
            if let Some((_, _, c)) = bucket.iter().find(|(x, y, _)| x == a && y == b) {
                return Ok(c.clone());
            }
        }
        let c = make()?;
        let mut memo = self.memo.lock().expect("memo lock");
        if memo.len >= MEMO_CAP {
            memo.entries.clear();
            memo.len = 0;
        }
        memo.entries.entry(key).or_default().push((a.clone(), b.clone(), c.clone()));
        memo.len += 1;
        Ok(c)
    }

    /// `A (x) B`; validity depends on the sign assignment and is not forced here.
    pub fn tensor(&self, a: &Complex, b: &Complex) -> Result<Complex> {
        self.memoized(false, a, b, || self.tensor_uncached(a, b))
    }

    /// `[A, B]`; validity depends on the sign assignment and is not forced here.
    pub fn hom(&self, a: &Complex, b: &Complex) -> Result<Complex> {
        self.memoized(true, a, b, || self.hom_uncached(a, b))
    }

    fn tensor_uncached(&self, a: &Complex, b: &Complex) -> Result<Complex> {
        self.check(a)?;
        self.check(b)?;
        let p = self.p();
        if a.is_zero() || b.is_zero() {
            return Ok(Complex::zero(p));
        }
        let lay = Layout::tensor(a, b);
        Ok(Complex::build(p, lay.lo, lay.hi(), |n| lay.dim(n), |n| {
            let mut t = TripletBuilder::new(lay.dim(n - 1), lay.dim(n), p);
            for i in a.degrees() {
                let j = n - i;
                if j < b.min_degree() || j > b.max_degree() {
                    continue;
                }
                let col0 = lay.off(i, j);
                if let Some(da) = a.diff_ref(i) {
                    let db_j = b.dim(j);
                    let row0 = lay.off(i - 1, j);
                    let e = self.s(Symbol::Tens1, &[i, j]);
                    for (r, s, v) in da.nonzeros() {
                        let v = crate::field::mul(v, e, p);
                        for x in 0..db_j {
                            t.push(row0 + r * db_j + x, col0 + s * db_j + x, v);
                        }
                    }
                }
                if let Some(db) = b.diff_ref(j) {
                    let (dj, dj1) = (b.dim(j), b.dim(j - 1));
                    let row0 = lay.off(i, j - 1);
                    let e = self.s(Symbol::Tens2, &[i, j]);
                    for (r, s, v) in db.nonzeros() {
                        let v = crate::field::mul(v, e, p);
                        for x in 0..a.dim(i) {
                            t.push(row0 + x * dj1 + r, col0 + x * dj + s, v);
                        }
                    }
                }
            }
            t.build()
        }))
    }

    fn hom_uncached(&self, a: &Complex, b: &Complex) -> Result<Complex> {
        self.check(a)?;
        self.check(b)?;
        let p = self.p();
        if a.is_zero() || b.is_zero() {
            return Ok(Complex::zero(p));
        }
        let lay = Layout::hom(a, b);
        Ok(Complex::build(p, lay.lo, lay.hi(), |n| lay.dim(n), |n| {
            let mut t = TripletBuilder::new(lay.dim(n - 1), lay.dim(n), p);
            for i in a.degrees() {
                let j = i + n;
                if j < b.min_degree() || j > b.max_degree() {
                    continue;
                }
                let col0 = lay.off(i, j);
                let dbj = b.dim(j);
                // phi |-> phi o d^A_{i+1}
                if let Some(da) = a.diff_ref(i + 1) {
                    let row0 = lay.off(i + 1, j);
                    let e = self.s(Symbol::Hom1, &[i, j]);
                    for (s, s2, v) in da.nonzeros() {
                        let v = crate::field::mul(v, e, p);
                        for r in 0..dbj {
                            t.push(row0 + s2 * dbj + r, col0 + s * dbj + r, v);
                        }
                    }
                }
                // phi |-> d^B_j o phi
                if let Some(db) = b.diff_ref(j) {
                    let dbj1 = b.dim(j - 1);
                    let row0 = lay.off(i, j - 1);
                    let e = self.s(Symbol::Hom2, &[i, j]);
                    for (r2, r, v) in db.nonzeros() {
                        let v = crate::field::mul(v, e, p);
                        for s in 0..a.dim(i) {
                            t.push(row0 + s * dbj1 + r2, col0 + s * dbj + r, v);
                        }
                    }
                }
            }
            t.build()
        }))
    }

    fn require_degree_zero(f: &ChainMap) -> Result<()> {
        if f.degree() != 0 {
            return Err(Error::Shape("expected a degree-0 map".into()));
        }
        Ok(())
    }

    /// `f (x) g` for degree-0 maps.
    pub fn tensor_map(&self, f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
        Self::require_degree_zero(f)?;
        Self::require_degree_zero(g)?;
        let (a, b) = (f.source(), g.source());
        let (a2, b2) = (f.target(), g.target());
        let src = self.tensor(a, b)?;
        let tgt = self.tensor(a2, b2)?;
        let (ls, lt) = (Layout::tensor(a, b), Layout::tensor(a2, b2));
        let p = self.p();
        let m = ChainMap::from_fn(src, tgt.clone(), |n| {
            let mut t = TripletBuilder::new(tgt.dim(n), ls.dim(n), p);
            for i in a.degrees() {
                let j = n - i;
                if j < b.min_degree() || j > b.max_degree() || a2.dim(i) == 0 || b2.dim(j) == 0 {
                    continue;
                }
                let (fi, gj) = (f.comp(i), g.comp(j));
                let (c0, r0) = (ls.off(i, j), lt.off(i, j));
                let (db, db2) = (b.dim(j), b2.dim(j));
                for (r, s, v) in fi.nonzeros() {
                    for (r2, s2, w) in gj.nonzeros() {
                        t.push(r0 + r * db2 + r2, c0 + s * db + s2, crate::field::mul(v, w, p));
                    }
                }
            }
            t.build()
        });
        Ok(m)
    }

    /// `[f, g] : [A, B] -> [A', B']` for `f : A' -> A` and `g : B -> B'`, i.e. `phi |-> g o phi o f`.
    pub fn hom_map(&self, f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
        Self::require_degree_zero(f)?;
        Self::require_degree_zero(g)?;
        let (a, a2) = (f.target(), f.source());
        let (b, b2) = (g.source(), g.target());
        let src = self.hom(a, b)?;
        let tgt = self.hom(a2, b2)?;
        let (ls, lt) = (Layout::hom(a, b), Layout::hom(a2, b2));
        let p = self.p();
        let m = ChainMap::from_fn(src, tgt.clone(), |n| {
            let mut t = TripletBuilder::new(tgt.dim(n), ls.dim(n), p);
            for i in a.degrees() {
                let j = i + n;
                if j < b.min_degree() || j > b.max_degree() || a2.dim(i) == 0 || b2.dim(j) == 0 {
                    continue;
                }
                let (fi, gj) = (f.comp(i), g.comp(j));
                let (c0, r0) = (ls.off(i, j), lt.off(i, j));
                let (db, db2) = (b.dim(j), b2.dim(j));
                for (s, s2, v) in fi.nonzeros() {
                    for (r2, r, w) in gj.nonzeros() {
                        t.push(r0 + s2 * db2 + r2, c0 + s * db + r, crate::field::mul(v, w, p));
                    }
                }
            }
            t.build()
        });
        Ok(m)
    }

    /// A degree-0 map built per degree from a filler of a triplet builder, then certified.
    fn build_map(
        &self,
        name: &str,
        src: Complex,
        tgt: Complex,
        fill: impl Fn(i64, &mut TripletBuilder),
    ) -> Result<ChainMap> {
        let p = self.p();
        let m = ChainMap::from_fn(src.clone(), tgt.clone(), |n| {
            let mut t = TripletBuilder::new(tgt.dim(n), src.dim(n), p);
            fill(n, &mut t);
            t.build()
        });
        self.certify(m, name)
    }

    /// `a_{A,B,C} : (A (x) B) (x) C -> A (x) (B (x) C)`.
    pub fn assoc(&self, a: &Complex, b: &Complex, c: &Complex) -> Result<ChainMap> {
        let ab = self.tensor(a, b)?;
        let bc = self.tensor(b, c)?;
        let src = self.tensor(&ab, c)?;
        let tgt = self.tensor(a, &bc)?;
        let (l_ab, l_abc) = (Layout::tensor(a, b), Layout::tensor(&ab, c));
        let (l_bc, l_a_bc) = (Layout::tensor(b, c), Layout::tensor(a, &bc));
        self.build_map("assoc", src, tgt, |n, t| {
            for i in a.degrees() {
                for j in b.degrees() {
                    let k = n - i - j;
                    if k < c.min_degree() || k > c.max_degree() {
                        continue;
                    }
                    let e = self.s(Symbol::Asso, &[i, j, k]);
                    let (db, dc, dbc) = (b.dim(j), c.dim(k), bc.dim(j + k));
                    let s0 = l_abc.off(i + j, k);
                    let ab0 = l_ab.off(i, j);
                    let t0 = l_a_bc.off(i, j + k);
                    let bc0 = l_bc.off(j, k);
                    for x in 0..a.dim(i) {
                        for y in 0..db {
                            for z in 0..dc {
                                let col = s0 + (ab0 + x * db + y) * dc + z;
                                let row = t0 + x * dbc + bc0 + y * dc + z;
                                t.push(row, col, e);
                            }
                        }
                    }
                }
            }
        })
    }

    pub fn assoc_inv(&self, a: &Complex, b: &Complex, c: &Complex) -> Result<ChainMap> {
        self.assoc(a, b, c)?.inverse()
    }

    /// `lambda_A : 1 (x) A -> A`.
    pub fn lunit(&self, a: &Complex) -> Result<ChainMap> {
        let src = self.tensor(&self.unit(), a)?;
        self.build_map("lunit", src, a.clone(), |n, t| {
            for x in 0..a.dim(n) {
                t.push(x, x, 1);
            }
        })
    }

    /// `rho_A : A (x) 1 -> A`.
    pub fn runit(&self, a: &Complex) -> Result<ChainMap> {
        let src = self.tensor(a, &self.unit())?;
        self.build_map("runit", src, a.clone(), |n, t| {
            for x in 0..a.dim(n) {
                t.push(x, x, 1);
            }
        })
    }

    /// `c_{A,B} : A (x) B -> B (x) A`.
    pub fn sym(&self, a: &Complex, b: &Complex) -> Result<ChainMap> {
        let src = self.tensor(a, b)?;
        let tgt = self.tensor(b, a)?;
        let (ls, lt) = (Layout::tensor(a, b), Layout::tensor(b, a));
        self.build_map("c", src, tgt, |n, t| {
            for i in a.degrees() {
                let j = n - i;
                if j < b.min_degree() || j > b.max_degree() {
                    continue;
                }
                let e = self.s(Symbol::C, &[i, j]);
                let (da, db) = (a.dim(i), b.dim(j));
                let (s0, t0) = (ls.off(i, j), lt.off(j, i));
                for x in 0..da {
                    for y in 0..db {
                        t.push(t0 + y * da + x, s0 + x * db + y, e);
                    }
                }
            }
        })
    }

    /// `tp1_{A,B} : TA (x) B -> T(A (x) B)`.
    pub fn tp1(&self, a: &Complex, b: &Complex) -> Result<ChainMap> {
        let ta = self.suspend(a);
        let src = self.tensor(&ta, b)?;
        let tgt = self.suspend(&self.tensor(a, b)?);
        let (ls, lt) = (Layout::tensor(&ta, b), Layout::tensor(a, b));
        self.build_map("tp1", src, tgt, |n, t| {
            for i in a.degrees() {
                let j = n - 1 - i;
                if j < b.min_degree() || j > b.max_degree() {
                    continue;
                }
                let e = self.s(Symbol::Tp1, &[i, j]);
                let (s0, t0) = (ls.off(i + 1, j), lt.off(i, j));
                for x in 0..a.dim(i) * b.dim(j) {
                    t.push(t0 + x, s0 + x, e);
                }
            }
        })
    }

    /// `tp2_{A,B} : A (x) TB -> T(A (x) B)`.
    pub fn tp2(&self, a: &Complex, b: &Complex) -> Result<ChainMap> {
        let tb = self.suspend(b);
        let src = self.tensor(a, &tb)?;
        let tgt = self.suspend(&self.tensor(a, b)?);
        let (ls, lt) = (Layout::tensor(a, &tb), Layout::tensor(a, b));
        self.build_map("tp2", src, tgt, |n, t| {
            for i in a.degrees() {
                let j = n - 1 - i;
                if j < b.min_degree() || j > b.max_degree() {
                    continue;
                }
                let e = self.s(Symbol::Tp2, &[i, j]);
                let (s0, t0) = (ls.off(i, j + 1), lt.off(i, j));
                for x in 0..a.dim(i) * b.dim(j) {
                    t.push(t0 + x, s0 + x, e);
                }
            }
        })
    }

    /// `th1_{A,B} : [T^{-1}A, B] -> T[A, B]`.
    pub fn th1(&self, a: &Complex, b: &Complex) -> Result<ChainMap> {
        let da = self.desuspend(a);
        let src = self.hom(&da, b)?;
        let tgt = self.suspend(&self.hom(a, b)?);
        let (ls, lt) = (Layout::hom(&da, b), Layout::hom(a, b));
        self.build_map("th1", src, tgt, |n, t| {
            for i in a.degrees() {
                let j = n - 1 + i;
                if j < b.min_degree() || j > b.max_degree() {
                    continue;
                }
                let e = self.s(Symbol::Th1, &[i, j]);
                let (s0, t0) = (ls.off(i - 1, j), lt.off(i, j));
                for x in 0..a.dim(i) * b.dim(j) {
                    t.push(t0 + x, s0 + x, e);
                }
            }
        })
    }

    /// `th2_{A,B} : [A, TB] -> T[A, B]`.
    pub fn th2(&self, a: &Complex, b: &Complex) -> Result<ChainMap> {
        let tb = self.suspend(b);
        let src = self.hom(a, &tb)?;
        let tgt = self.suspend(&self.hom(a, b)?);
        let (ls, lt) = (Layout::hom(a, &tb), Layout::hom(a, b));
        self.build_map("th2", src, tgt, |n, t| {
            for i in a.degrees() {
                let j = n - 1 + i;
                if j < b.min_degree() || j > b.max_degree() {
                    continue;
                }
                let e = self.s(Symbol::Th2, &[i, j]);
                let (s0, t0) = (ls.off(i, j + 1), lt.off(i, j));
                for x in 0..a.dim(i) * b.dim(j) {
                    t.push(t0 + x, s0 + x, e);
                }
            }
        })
    }

    /// The adjunction bijection: `phi : A (x) B -> C` to `A -> [B, C]`.
    pub fn ath(&self, a: &Complex, b: &Complex, phi: &ChainMap) -> Result<ChainMap> {
        Self::require_degree_zero(phi)?;
        let ab = self.tensor(a, b)?;
        if phi.source() != &ab {
            return Err(Error::Incomposable("ath: map does not start at A (x) B".into()));
        }
        let c = phi.target();
        let bc = self.hom(b, c)?;
        let (l_ab, l_bc) = (Layout::tensor(a, b), Layout::hom(b, c));
        let p = self.p();
        let m = ChainMap::from_fn(a.clone(), bc.clone(), |i| {
            let mut t = TripletBuilder::new(bc.dim(i), a.dim(i), p);
            for j in b.degrees() {
                if c.dim(i + j) == 0 {
                    continue;
                }
                let e = self.s(Symbol::Ath, &[i, j]);
                let (db, dc) = (b.dim(j), c.dim(i + j));
                let (s0, t0) = (l_ab.off(i, j), l_bc.off(j, i + j));
                let f = phi.comp(i + j);
                for x in 0..a.dim(i) {
                    for y in 0..db {
                        let (rows, vals) = f.column(s0 + x * db + y);
                        for (&r, &v) in rows.iter().zip(vals) {
                            t.push(t0 + y * dc + r as usize, x, crate::field::mul(v, e, p));
                        }
                    }
                }
            }
            t.build()
        });
        self.certify(m, "ath")
    }

    /// The inverse bijection: `psi : A -> [B, C]` to `A (x) B -> C`.
    pub fn ath_inv(&self, b: &Complex, c: &Complex, psi: &ChainMap) -> Result<ChainMap> {
        Self::require_degree_zero(psi)?;
        let bc = self.hom(b, c)?;
        if psi.target() != &bc {
            return Err(Error::Incomposable("ath_inv: map does not end at [B, C]".into()));
        }
        let a = psi.source();
        let ab = self.tensor(a, b)?;
        let (l_ab, l_bc) = (Layout::tensor(a, b), Layout::hom(b, c));
        let p = self.p();
        let m = ChainMap::from_fn(ab.clone(), c.clone(), |n| {
            let mut t = TripletBuilder::new(c.dim(n), ab.dim(n), p);
            for i in a.degrees() {
                let j = n - i;
                if j < b.min_degree() || j > b.max_degree() || c.dim(n) == 0 {
                    continue;
                }
                let e = self.s(Symbol::Ath, &[i, j]);
                let (db, dc) = (b.dim(j), c.dim(n));
                let (s0, t0) = (l_ab.off(i, j), l_bc.off(j, n));
                let g = psi.comp(i);
                for x in 0..a.dim(i) {
                    let (rows, vals) = g.column(x);
                    for (&row, &v) in rows.iter().zip(vals) {
                        let row = row as usize;
                        if row < t0 || row >= t0 + db * dc {
                            continue;
                        }
                        let (y, r) = ((row - t0) / dc, (row - t0) % dc);
                        t.push(r, s0 + x * db + y, crate::field::mul(v, e, p));
                    }
                }
            }
            t.build()
        });
        self.certify(m, "ath_inv")
    }

    /// Looks up a structural transformation by name.
    pub fn structural(&self, name: &str, objs: &[Complex]) -> Result<ChainMap> {
        let need = |k: usize| -> Result<()> {
            if objs.len() != k {
                return Err(Error::Shape(format!("{name} takes {k} objects, got {}", objs.len())));
            }
            Ok(())
        };
        match name {
            "assoc" | "assoc_inv" => {
                need(3)?;
                if name == "assoc" {
                    self.assoc(&objs[0], &objs[1], &objs[2])
                } else {
                    self.assoc_inv(&objs[0], &objs[1], &objs[2])
                }
            }
            "lunit" | "runit" => {
                need(1)?;
                if name == "lunit" {
                    self.lunit(&objs[0])
                } else {
                    self.runit(&objs[0])
                }
            }
            "c" | "tp1" | "tp2" | "th1" | "th2" | "ev_l" | "coev_l" | "ev_r" | "coev_r" | "bid" => {
                need(2)?;
                let (a, b) = (&objs[0], &objs[1]);
                match name {
                    "c" => self.sym(a, b),
                    "tp1" => self.tp1(a, b),
                    "tp2" => self.tp2(a, b),
                    "th1" => self.th1(a, b),
                    "th2" => self.th2(a, b),
                    "ev_l" => self.ev_l(a, b),
                    "coev_l" => self.coev_l(a, b),
                    "ev_r" => self.ev_r(a, b),
                    "coev_r" => self.coev_r(a, b),
                    _ => self.bid(a, b),
                }
            }
            "exch" | "dd" => {
                need(4)?;
                if name == "exch" {
                    self.exch(&objs[0], &objs[1], &objs[2], &objs[3])
                } else {
                    self.dd(&objs[0], &objs[1], &objs[2], &objs[3])
                }
            }
            other => Err(Error::NoSuchTransform(other.to_string())),
        }
    }
}

impl ClosedMonoidal for StructuralContext {
    type Obj = Complex;
    type Map = ChainMap;

    fn unit_obj(&self) -> Complex {
        self.unit()
    }

    fn tensor(&self, a: &Complex, b: &Complex) -> Result<Complex> {
        StructuralContext::tensor(self, a, b)
    }

    fn hom(&self, a: &Complex, b: &Complex) -> Result<Complex> {
        StructuralContext::hom(self, a, b)
    }

    fn tensor_map(&self, f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
        StructuralContext::tensor_map(self, f, g)
    }

    fn hom_map(&self, f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
        StructuralContext::hom_map(self, f, g)
    }

    fn assoc(&self, a: &Complex, b: &Complex, c: &Complex) -> Result<ChainMap> {
        StructuralContext::assoc(self, a, b, c)
    }

    fn lunit(&self, a: &Complex) -> Result<ChainMap> {
        StructuralContext::lunit(self, a)
    }

    fn runit(&self, a: &Complex) -> Result<ChainMap> {
        StructuralContext::runit(self, a)
    }

    fn sym(&self, a: &Complex, b: &Complex) -> Result<ChainMap> {
        StructuralContext::sym(self, a, b)
    }

    fn ath(&self, a: &Complex, b: &Complex, phi: &ChainMap) -> Result<ChainMap> {
        StructuralContext::ath(self, a, b, phi)
    }

    fn ath_inv(&self, b: &Complex, c: &Complex, psi: &ChainMap) -> Result<ChainMap> {
        StructuralContext::ath_inv(self, b, c, psi)
    }

    fn inverse(&self, f: &ChainMap) -> Result<ChainMap> {
        f.inverse()
    }

    fn is_invertible(&self, f: &ChainMap) -> bool {
        f.is_invertible()
    }
}

/// Matrix of a 1x1 map, for tests and examples.
pub fn scalar_of(m: &Matrix) -> Option<u32> {
    (m.rows() == 1 && m.cols() == 1).then(|| m.get(0, 0))
}

#[cfg(test)]
mod tests;
