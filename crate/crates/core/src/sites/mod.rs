//! Complexes of sheaves on finite discrete sets: pull-back, push-forward and
//! exceptional inverse image along set maps, with their adjunction data.

pub mod diagrams;
pub mod transforms;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{random_complex_with, ChainMap, Complex, ComplexJson};
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::monoidal::{nat, Adjunction, Arrow, ClosedMonoidal, Functor, StructuralContext};

/// A finite set given by distinct labels; element `i` is `labels[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    labels: Arc<[String]>,
}

impl FiniteSet {
    pub fn new(labels: Vec<String>) -> Result<FiniteSet> {
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Parse(format!("duplicate label {dup}")));
        }
        Ok(FiniteSet { labels: labels.into() })
    }

    /// `{0, 1, ..., n-1}` with decimal labels.
    pub fn of_size(n: usize) -> FiniteSet {
        FiniteSet { labels: (0..n).map(|i| i.to_string()).collect::<Vec<_>>().into() }
    }

    /// Same size as `of_size(n)` with labels carrying a prefix, to keep sets apart.
    pub fn named(prefix: &str, n: usize) -> FiniteSet {
        FiniteSet { labels: (0..n).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().into() }
    }

    pub fn point() -> FiniteSet {
        FiniteSet::new(vec!["*".into()]).expect("one label")
    }

    pub fn empty() -> FiniteSet {
        FiniteSet::of_size(0)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMapJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub map: BTreeMap<String, String>,
}

/// A total function between finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMap {
    source: FiniteSet,
    target: FiniteSet,
    map: Vec<usize>,
}

impl FiniteMap {
    pub fn new(source: FiniteSet, target: FiniteSet, map: Vec<usize>) -> Result<FiniteMap> {
        if map.len() != source.len() {
            return Err(Error::Shape(format!("map has {} values for {} elements", map.len(), source.len())));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::Shape(format!("value {bad} outside target of size {}", target.len())));
        }
        Ok(FiniteMap { source, target, map })
    }

    pub fn identity(set: &FiniteSet) -> FiniteMap {
        FiniteMap { source: set.clone(), target: set.clone(), map: (0..set.len()).collect() }
    }

    /// The unique map to a one-point set.
    pub fn to_point(source: &FiniteSet, point: &FiniteSet) -> Result<FiniteMap> {
        FiniteMap::new(source.clone(), point.clone(), vec![0; source.len()])
    }

    pub fn source(&self) -> &FiniteSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    /// Preimage of `y` in increasing order.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == y).collect()
    }

    /// `self o first`.
    pub fn compose(&self, first: &FiniteMap) -> Result<FiniteMap> {
        if first.target != self.source {
            return Err(Error::Incomposable("finite maps do not compose".into()));
        }
        FiniteMap::new(first.source.clone(), self.target.clone(), first.map.iter().map(|&y| self.map[y]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn to_json(&self) -> FiniteMapJson {
        FiniteMapJson {
            source: self.source.labels().to_vec(),
            target: self.target.labels().to_vec(),
            map: (0..self.map.len())
                .map(|x| (self.source.labels()[x].clone(), self.target.labels()[self.map[x]].clone()))
                .collect(),
        }
    }

    pub fn from_json(j: &FiniteMapJson) -> Result<FiniteMap> {
        let source = FiniteSet::new(j.source.clone())?;
        let target = FiniteSet::new(j.target.clone())?;
        let map = source
            .labels()
            .iter()
            .map(|x| {
                let y = j.map.get(x).ok_or_else(|| Error::Parse(format!("no value for {x}")))?;
                target.index_of(y).ok_or_else(|| Error::Parse(format!("unknown target label {y}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if j.map.len() != source.len() {
            return Err(Error::Parse("map mentions labels outside the source".into()));
        }
        FiniteMap::new(source, target, map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafComplexJson {
    pub base: Vec<String>,
    pub p: u32,
    pub stalks: Vec<ComplexJson>,
}

/// One complex per point of a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafComplex {
    base: FiniteSet,
    p: u32,
    stalks: Vec<Complex>,
}

impl SheafComplex {
    pub fn new(base: FiniteSet, p: u32, stalks: Vec<Complex>) -> Result<SheafComplex> {
        if stalks.len() != base.len() {
            return Err(Error::Shape(format!("{} stalks over a base of size {}", stalks.len(), base.len())));
        }
        if stalks.iter().any(|c| c.p() != p) {
            let q = stalks.iter().map(Complex::p).find(|&q| q != p).expect("some stalk differs");
            return Err(Error::FieldMismatch(p, q));
        }
        Ok(SheafComplex { base, p, stalks })
    }

    pub fn constant(base: &FiniteSet, c: &Complex) -> SheafComplex {
        SheafComplex { base: base.clone(), p: c.p(), stalks: vec![c.clone(); base.len()] }
    }

    /// The tensor unit `1_X`.
    pub fn unit(base: &FiniteSet, p: u32) -> SheafComplex {
        SheafComplex::constant(base, &Complex::unit(p))
    }

    pub fn base(&self) -> &FiniteSet {
        &self.base
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn stalk(&self, x: usize) -> &Complex {
        &self.stalks[x]
    }

    pub fn stalks(&self) -> &[Complex] {
        &self.stalks
    }

    pub fn is_zero(&self) -> bool {
        self.stalks.iter().all(Complex::is_zero)
    }

    pub fn total_dim(&self) -> usize {
        self.stalks.iter().map(Complex::total_dim).sum()
    }

    pub fn validate(&self) -> bool {
        self.stalks.iter().all(Complex::validate)
    }

    pub fn to_json(&self) -> SheafComplexJson {
        SheafComplexJson {
            base: self.base.labels().to_vec(),
            p: self.p,
            stalks: self.stalks.iter().map(Complex::to_json).collect(),
        }
    }

    pub fn from_json(j: &SheafComplexJson) -> Result<SheafComplex> {
        let stalks = j.stalks.iter().map(Complex::from_json).collect::<Result<Vec<_>>>()?;
        SheafComplex::new(FiniteSet::new(j.base.clone())?, j.p, stalks)
    }
}

/// A family of chain maps, one per point, between sheaf complexes on the same base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafMap {
    source: SheafComplex,
    target: SheafComplex,
    comps: Vec<ChainMap>,
}

impl SheafMap {
    pub fn new(source: SheafComplex, target: SheafComplex, comps: Vec<ChainMap>) -> Result<SheafMap> {
        if source.base != target.base {
            return Err(Error::BaseMismatch("source and target live on different sets".into()));
        }
        if comps.len() != source.base.len() {
            return Err(Error::Shape(format!("{} components over a base of size {}", comps.len(), source.base.len())));
        }
        for (x, m) in comps.iter().enumerate() {
            if m.source() != source.stalk(x) || m.target() != target.stalk(x) {
                return Err(Error::Shape(format!("component {x} has the wrong endpoints")));
            }
        }
        if let Some(d) = comps.first().map(ChainMap::degree) {
            if comps.iter().any(|m| m.degree() != d) {
                return Err(Error::Shape("components of different degrees".into()));
            }
        }
        Ok(SheafMap { source, target, comps })
    }

    /// Builds the map pointwise from stalk maps.
    pub fn pointwise(
        source: &SheafComplex,
        target: &SheafComplex,
        f: impl Fn(usize) -> Result<ChainMap>,
    ) -> Result<SheafMap> {
        let comps = (0..source.base.len()).map(f).collect::<Result<Vec<_>>>()?;
        SheafMap::new(source.clone(), target.clone(), comps)
    }

    pub fn identity(a: &SheafComplex) -> SheafMap {
        SheafMap { source: a.clone(), target: a.clone(), comps: a.stalks.iter().map(ChainMap::identity).collect() }
    }

    pub fn zero(a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        SheafMap::pointwise(a, b, |x| Ok(ChainMap::zero(a.stalk(x), b.stalk(x))))
    }

    pub fn source(&self) -> &SheafComplex {
        &self.source
    }

    pub fn target(&self) -> &SheafComplex {
        &self.target
    }

    pub fn comp(&self, x: usize) -> &ChainMap {
        &self.comps[x]
    }

    pub fn comps(&self) -> &[ChainMap] {
        &self.comps
    }

    pub fn compose(&self, first: &SheafMap) -> Result<SheafMap> {
        if first.target != self.source {
            return Err(Error::Incomposable("sheaf maps do not compose".into()));
        }
        let comps = self.comps.iter().zip(&first.comps).map(|(g, f)| g.compose(f)).collect::<Result<Vec<_>>>()?;
        Ok(SheafMap { source: first.source.clone(), target: self.target.clone(), comps })
    }

    pub fn is_chain_map(&self) -> bool {
        self.comps.iter().all(ChainMap::is_chain_map)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.comps.iter().all(ChainMap::is_identity)
    }

    pub fn is_invertible(&self) -> bool {
        self.comps.iter().all(ChainMap::is_invertible)
    }

    pub fn inverse(&self) -> Result<SheafMap> {
        let comps = self.comps.iter().map(ChainMap::inverse).collect::<Result<Vec<_>>>()?;
        Ok(SheafMap { source: self.target.clone(), target: self.source.clone(), comps })
    }

    pub fn neg(&self) -> SheafMap {
        SheafMap { comps: self.comps.iter().map(ChainMap::neg).collect(), ..self.clone() }
    }
}

impl Arrow for SheafMap {
    type Obj = SheafComplex;

    fn source(&self) -> SheafComplex {
        self.source.clone()
    }

    fn target(&self) -> SheafComplex {
        self.target.clone()
    }

    fn identity(obj: &SheafComplex) -> Self {
        SheafMap::identity(obj)
    }

    fn compose(&self, first: &Self) -> Result<Self> {
        SheafMap::compose(self, first)
    }
}

/// The closed symmetric monoidal category of sheaf complexes on one finite set,
/// with every structure map taken pointwise.
#[derive(Clone)]
pub struct SheafCategory {
    base: FiniteSet,
    ctx: StructuralContext,
}

impl SheafCategory {
    pub fn new(base: FiniteSet, ctx: StructuralContext) -> SheafCategory {
        SheafCategory { base, ctx }
    }

    pub fn base(&self) -> &FiniteSet {
        &self.base
    }

    fn on_base(&self, a: &SheafComplex) -> Result<()> {
        if a.base != self.base {
            return Err(Error::BaseMismatch(format!("object over {:?}, category over {:?}", a.base.labels(), self.base.labels())));
        }
        Ok(())
    }

    fn obj2(&self, a: &SheafComplex, b: &SheafComplex, op: impl Fn(&Complex, &Complex) -> Result<Complex>) -> Result<SheafComplex> {
        self.on_base(a)?;
        self.on_base(b)?;
        let stalks = (0..self.base.len()).map(|x| op(a.stalk(x), b.stalk(x))).collect::<Result<Vec<_>>>()?;
        SheafComplex::new(self.base.clone(), self.ctx.p(), stalks)
    }

    fn map_from(&self, comps: Vec<ChainMap>) -> Result<SheafMap> {
        let stalks_s = comps.iter().map(|m| m.source().clone()).collect();
        let stalks_t = comps.iter().map(|m| m.target().clone()).collect();
        SheafMap::new(
            SheafComplex::new(self.base.clone(), self.ctx.p(), stalks_s)?,
            SheafComplex::new(self.base.clone(), self.ctx.p(), stalks_t)?,
            comps,
        )
    }

    fn each(&self, f: impl Fn(usize) -> Result<ChainMap>) -> Result<SheafMap> {
        self.map_from((0..self.base.len()).map(f).collect::<Result<Vec<_>>>()?)
    }
}

impl ClosedMonoidal for SheafCategory {
    type Obj = SheafComplex;
    type Map = SheafMap;

    fn unit_obj(&self) -> SheafComplex {
        SheafComplex::unit(&self.base, self.ctx.p())
    }

    fn tensor(&self, a: &SheafComplex, b: &SheafComplex) -> Result<SheafComplex> {
        self.obj2(a, b, |x, y| self.ctx.tensor(x, y))
    }

    fn hom(&self, a: &SheafComplex, b: &SheafComplex) -> Result<SheafComplex> {
        self.obj2(a, b, |x, y| self.ctx.hom(x, y))
    }

    fn tensor_map(&self, f: &SheafMap, g: &SheafMap) -> Result<SheafMap> {
        self.on_base(&f.source)?;
        self.on_base(&g.source)?;
        self.each(|x| self.ctx.tensor_map(f.comp(x), g.comp(x)))
    }

    fn hom_map(&self, f: &SheafMap, g: &SheafMap) -> Result<SheafMap> {
        self.on_base(&f.source)?;
        self.on_base(&g.source)?;
        self.each(|x| self.ctx.hom_map(f.comp(x), g.comp(x)))
    }

    fn assoc(&self, a: &SheafComplex, b: &SheafComplex, c: &SheafComplex) -> Result<SheafMap> {
        for o in [a, b, c] {
            self.on_base(o)?;
        }
        self.each(|x| self.ctx.assoc(a.stalk(x), b.stalk(x), c.stalk(x)))
    }

    fn lunit(&self, a: &SheafComplex) -> Result<SheafMap> {
        self.on_base(a)?;
        self.each(|x| self.ctx.lunit(a.stalk(x)))
    }

    fn runit(&self, a: &SheafComplex) -> Result<SheafMap> {
        self.on_base(a)?;
        self.each(|x| self.ctx.runit(a.stalk(x)))
    }

    fn sym(&self, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        self.on_base(a)?;
        self.on_base(b)?;
        self.each(|x| self.ctx.sym(a.stalk(x), b.stalk(x)))
    }

    fn ath(&self, a: &SheafComplex, b: &SheafComplex, phi: &SheafMap) -> Result<SheafMap> {
        self.on_base(a)?;
        self.on_base(b)?;
        self.each(|x| self.ctx.ath(a.stalk(x), b.stalk(x), phi.comp(x)))
    }

    fn ath_inv(&self, b: &SheafComplex, c: &SheafComplex, psi: &SheafMap) -> Result<SheafMap> {
        self.on_base(b)?;
        self.on_base(c)?;
        self.each(|x| self.ctx.ath_inv(b.stalk(x), c.stalk(x), psi.comp(x)))
    }

    fn inverse(&self, f: &SheafMap) -> Result<SheafMap> {
        f.inverse()
    }

    fn is_invertible(&self, f: &SheafMap) -> bool {
        f.is_invertible()
    }
}

/// A commutative square of finite maps
///
/// ```text
///   V --gbar--> Y
///   |           |
///  fbar         f
///   v           v
///   X ---g----> Z
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommSquare {
    pub f: FiniteMap,
    pub g: FiniteMap,
    pub fbar: FiniteMap,
    pub gbar: FiniteMap,
}

impl CommSquare {
    pub fn new(f: FiniteMap, g: FiniteMap, fbar: FiniteMap, gbar: FiniteMap) -> Result<CommSquare> {
        let sq = CommSquare { f, g, fbar, gbar };
        if sq.f.compose(&sq.gbar)? != sq.g.compose(&sq.fbar)? {
            return Err(Error::Shape("square does not commute".into()));
        }
        Ok(sq)
    }

    /// The fibre product `X x_Z Y` with its projections, as a square.
    pub fn cartesian(f: &FiniteMap, g: &FiniteMap) -> Result<CommSquare> {
        if f.target != g.target {
            return Err(Error::BaseMismatch("f and g must share a target".into()));
        }
        let pairs: Vec<(usize, usize)> = (0..g.source.len())
            .flat_map(|x| (0..f.source.len()).map(move |y| (x, y)))
            .filter(|&(x, y)| g.apply(x) == f.apply(y))
            .collect();
        let v = FiniteSet::new(
            pairs.iter().map(|&(x, y)| format!("({},{})", g.source.labels()[x], f.source.labels()[y])).collect(),
        )?;
        let fbar = FiniteMap::new(v.clone(), g.source.clone(), pairs.iter().map(|p| p.0).collect())?;
        let gbar = FiniteMap::new(v, f.source.clone(), pairs.iter().map(|p| p.1).collect())?;
        CommSquare::new(f.clone(), g.clone(), fbar, gbar)
    }

    /// Whether `v -> (fbar v, gbar v)` is a bijection onto `X x_Z Y`.
    pub fn is_cartesian(&self) -> bool {
        let mut hit = std::collections::HashSet::new();
        for v in 0..self.fbar.source.len() {
            if !hit.insert((self.fbar.apply(v), self.gbar.apply(v))) {
                return false;
            }
        }
        let size = (0..self.g.source.len())
            .map(|x| (0..self.f.source.len()).filter(|&y| self.g.apply(x) == self.f.apply(y)).count())
            .sum::<usize>();
        hit.len() == size
    }
}

/// Places identity blocks at the `(row part, column part)` positions selected by `pick`.
fn block_identities(p: u32, rows: &[usize], cols: &[usize], pick: impl Fn(usize, usize) -> bool) -> Matrix {
    let mut b = crate::field::TripletBuilder::new(rows.iter().sum(), cols.iter().sum(), p);
    let mut r0 = 0;
    for (i, &r) in rows.iter().enumerate() {
        let mut c0 = 0;
        for (j, &c) in cols.iter().enumerate() {
            if pick(i, j) {
                debug_assert_eq!(r, c);
                for k in 0..r.min(c) {
                    b.push(r0 + k, c0 + k, 1);
                }
            }
            c0 += c;
        }
        r0 += r;
    }
    b.build()
}

/// The six-functor data on finite sets for one sign convention.
#[derive(Clone)]
pub struct Sites {
    ctx: StructuralContext,
}

impl Sites {
    pub fn new(ctx: StructuralContext) -> Sites {
        Sites { ctx }
    }

    pub fn standard(p: u32) -> Result<Sites> {
        Ok(Sites::new(StructuralContext::standard(p)?))
    }

    pub fn ctx(&self) -> &StructuralContext {
        &self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    pub fn cat(&self, base: &FiniteSet) -> SheafCategory {
        SheafCategory::new(base.clone(), self.ctx.clone())
    }

    fn expect_base(a: &SheafComplex, base: &FiniteSet, what: &str) -> Result<()> {
        if &a.base != base {
            return Err(Error::BaseMismatch(format!("{what}: expected base {:?}, got {:?}", base.labels(), a.base.labels())));
        }
        Ok(())
    }

    /// `f^* B`: the stalk at `x` is the stalk of `B` at `f(x)`.
    pub fn pullback(&self, f: &FiniteMap, b: &SheafComplex) -> Result<SheafComplex> {
        Self::expect_base(b, &f.target, "pullback")?;
        SheafComplex::new(f.source.clone(), b.p, f.map.iter().map(|&y| b.stalk(y).clone()).collect())
    }

    pub fn pullback_map(&self, f: &FiniteMap, m: &SheafMap) -> Result<SheafMap> {
        Self::expect_base(&m.source, &f.target, "pullback")?;
        SheafMap::new(
            self.pullback(f, &m.source)?,
            self.pullback(f, &m.target)?,
            f.map.iter().map(|&y| m.comp(y).clone()).collect(),
        )
    }

    /// `f_* A`: the stalk at `y` is the direct sum over the fibre, in source order.
    pub fn pushforward(&self, f: &FiniteMap, a: &SheafComplex) -> Result<SheafComplex> {
        Self::expect_base(a, &f.source, "pushforward")?;
        let stalks = (0..f.target.len())
            .map(|y| {
                let parts: Vec<Complex> = f.fiber(y).into_iter().map(|x| a.stalk(x).clone()).collect();
                Complex::direct_sum(a.p, &parts)
            })
            .collect();
        SheafComplex::new(f.target.clone(), a.p, stalks)
    }

    pub fn pushforward_map(&self, f: &FiniteMap, m: &SheafMap) -> Result<SheafMap> {
        Self::expect_base(&m.source, &f.source, "pushforward")?;
        let (s, t) = (self.pushforward(f, &m.source)?, self.pushforward(f, &m.target)?);
        let p = self.p();
        SheafMap::pointwise(&s, &t, |y| {
            let fib = f.fiber(y);
            let deg = fib.first().map_or(0, |&x| m.comp(x).degree());
            let comps = s
                .stalk(y)
                .degrees()
                .map(|n| {
                    let blocks: Vec<Matrix> = fib.iter().map(|&x| m.comp(x).comp(n)).collect();
                    Matrix::block_direct_sum(&blocks, p)
                })
                .collect::<Result<Vec<_>>>()?;
            ChainMap::new(s.stalk(y).clone(), t.stalk(y).clone(), deg, comps)
        })
    }

    /// `f^! B`, equal to `f^* B` on objects and maps.
    pub fn shriek(&self, f: &FiniteMap, b: &SheafComplex) -> Result<SheafComplex> {
        self.pullback(f, b)
    }

    pub fn shriek_map(&self, f: &FiniteMap, m: &SheafMap) -> Result<SheafMap> {
        self.pullback_map(f, m)
    }

    fn fiber_dims(a: &SheafComplex, fib: &[usize], n: i64) -> Vec<usize> {
        fib.iter().map(|&x| a.stalk(x).dim(n)).collect()
    }

    /// `B -> f_* f^* B`, the diagonal.
    pub fn unit_star(&self, f: &FiniteMap, b: &SheafComplex) -> Result<SheafMap> {
        let t = self.pushforward(f, &self.pullback(f, b)?)?;
        let p = self.p();
        SheafMap::pointwise(b, &t, |y| {
            let k = f.fiber(y).len();
            let s = b.stalk(y);
            ChainMap::certified(s.clone(), t.stalk(y).clone(), |n| {
                block_identities(p, &vec![s.dim(n); k], &[s.dim(n)], |_, _| true)
            })
        })
    }

    /// `f^* f_* A -> A`, projection onto the summand of the point.
    pub fn counit_star(&self, f: &FiniteMap, a: &SheafComplex) -> Result<SheafMap> {
        let s = self.pullback(f, &self.pushforward(f, a)?)?;
        let p = self.p();
        SheafMap::pointwise(&s, a, |x| {
            let fib = f.fiber(f.apply(x));
            let at = fib.iter().position(|&x2| x2 == x).expect("x lies in its own fibre");
            ChainMap::certified(s.stalk(x).clone(), a.stalk(x).clone(), |n| {
                block_identities(p, &[a.stalk(x).dim(n)], &Self::fiber_dims(a, &fib, n), |_, j| j == at)
            })
        })
    }

    /// `A -> f^! f_* A`, inclusion of the summand of the point.
    pub fn unit_shriek(&self, f: &FiniteMap, a: &SheafComplex) -> Result<SheafMap> {
        let t = self.shriek(f, &self.pushforward(f, a)?)?;
        let p = self.p();
        SheafMap::pointwise(a, &t, |x| {
            let fib = f.fiber(f.apply(x));
            let at = fib.iter().position(|&x2| x2 == x).expect("x lies in its own fibre");
            ChainMap::certified(a.stalk(x).clone(), t.stalk(x).clone(), |n| {
                block_identities(p, &Self::fiber_dims(a, &fib, n), &[a.stalk(x).dim(n)], |i, _| i == at)
            })
        })
    }

    /// `f_* f^! B -> B`, summation over the fibre.
    pub fn counit_shriek(&self, f: &FiniteMap, b: &SheafComplex) -> Result<SheafMap> {
        let s = self.pushforward(f, &self.shriek(f, b)?)?;
        let p = self.p();
        SheafMap::pointwise(&s, b, |y| {
            let k = f.fiber(y).len();
            let t = b.stalk(y);
            ChainMap::certified(s.stalk(y).clone(), t.clone(), |n| {
                block_identities(p, &[t.dim(n)], &vec![t.dim(n); k], |_, _| true)
            })
        })
    }

    /// `f^* A (x) f^* B -> f^*(A (x) B)`, the identity in each stalk.
    pub fn fp(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let cx = self.cat(&f.source);
        let cy = self.cat(&f.target);
        let s = cx.tensor(&self.pullback(f, a)?, &self.pullback(f, b)?)?;
        let t = self.pullback(f, &cy.tensor(a, b)?)?;
        SheafMap::pointwise(&s, &t, |x| {
            ChainMap::unchecked(s.stalk(x).clone(), t.stalk(x).clone(), 0, ChainMap::identity(s.stalk(x)).components().to_vec())
        })
    }

    pub fn fp_inv(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        self.fp(f, a, b)?.inverse()
    }

    /// `(f^*, f_*)` with the diagonal unit and projection counit.
    pub fn star_adjunction(&self, f: &FiniteMap) -> Adjunction<SheafMap, SheafMap> {
        let (s3, f3, s4, f4) = (self.clone(), f.clone(), self.clone(), f.clone());
        Adjunction {
            left: self.pullback_functor(f),
            right: self.pushforward_functor(f),
            unit: nat(move |b: &SheafComplex| s3.unit_star(&f3, b)),
            counit: nat(move |a: &SheafComplex| s4.counit_star(&f4, a)),
        }
    }

    /// `(f_*, f^!)` with the inclusion unit and summation counit.
    pub fn shriek_adjunction(&self, f: &FiniteMap) -> Adjunction<SheafMap, SheafMap> {
        let (s1, f1, s2, f2) = (self.clone(), f.clone(), self.clone(), f.clone());
        let (s3, f3, s4, f4) = (self.clone(), f.clone(), self.clone(), f.clone());
        Adjunction {
            left: self.pushforward_functor(f),
            right: Functor::new("f^!", move |b| s1.shriek(&f1, b), move |m| s2.shriek_map(&f2, m)),
            unit: nat(move |a: &SheafComplex| s3.unit_shriek(&f3, a)),
            counit: nat(move |b: &SheafComplex| s4.counit_shriek(&f4, b)),
        }
    }

    pub fn pullback_functor(&self, f: &FiniteMap) -> Functor<SheafMap, SheafMap> {
        let (s1, f1) = (self.clone(), f.clone());
        Functor::new("f^*", move |b| s1.pullback(&f1, b), {
            let (s2, f2) = (self.clone(), f.clone());
            move |m| s2.pullback_map(&f2, m)
        })
    }

    pub fn pushforward_functor(&self, f: &FiniteMap) -> Functor<SheafMap, SheafMap> {
        let (s1, f1) = (self.clone(), f.clone());
        Functor::new("f_*", move |a| s1.pushforward(&f1, a), {
            let (s2, f2) = (self.clone(), f.clone());
            move |m| s2.pushforward_map(&f2, m)
        })
    }
}

/// A random finite set of size `1..=max` (or `0..=max` when `allow_empty`).
pub fn random_set<R: Rng + ?Sized>(rng: &mut R, prefix: &str, max: usize, allow_empty: bool) -> FiniteSet {
    let lo = usize::from(!allow_empty);
    FiniteSet::named(prefix, rng.gen_range(lo..=max.max(lo)))
}

pub fn random_map<R: Rng + ?Sized>(rng: &mut R, source: &FiniteSet, target: &FiniteSet) -> FiniteMap {
    assert!(source.is_empty() || !target.is_empty(), "no map into the empty set");
    let map = (0..source.len()).map(|_| rng.gen_range(0..target.len())).collect();
    FiniteMap::new(source.clone(), target.clone(), map).expect("values in range")
}

pub fn random_sheaf<R: Rng + ?Sized>(rng: &mut R, base: &FiniteSet, p: u32, max_len: usize, max_dim: usize) -> SheafComplex {
    let stalks = (0..base.len()).map(|_| random_complex_with(rng, p, max_len, max_dim)).collect();
    SheafComplex::new(base.clone(), p, stalks).expect("consistent field")
}

pub fn random_sheaf_map<R: Rng + ?Sized>(rng: &mut R, a: &SheafComplex, b: &SheafComplex) -> SheafMap {
    let comps = (0..a.base.len()).map(|x| crate::complex::random_chain_map(rng, a.stalk(x), b.stalk(x))).collect();
    SheafMap::new(a.clone(), b.clone(), comps).expect("matching stalks")
}

#[cfg(test)]
mod tests;
