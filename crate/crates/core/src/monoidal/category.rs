//! Minimal category-theory vocabulary: arrows, functors, natural transformations,
//! adjunctions and mates, evaluated object by object.

use std::fmt::Debug;
use std::rc::Rc;

use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};

/// A morphism in some category, with exact equality.
pub trait Arrow: Clone + PartialEq + Debug {
    type Obj: Clone + PartialEq + Debug;
    fn source(&self) -> Self::Obj;
    fn target(&self) -> Self::Obj;
    fn identity(obj: &Self::Obj) -> Self;
    /// `self o first`.
    fn compose(&self, first: &Self) -> Result<Self>;
}

impl Arrow for ChainMap {
    type Obj = Complex;

    fn source(&self) -> Complex {
        ChainMap::source(self).clone()
    }

    fn target(&self) -> Complex {
        ChainMap::target(self).clone()
    }

    fn identity(obj: &Complex) -> Self {
        ChainMap::identity(obj)
    }

    fn compose(&self, first: &Self) -> Result<Self> {
        ChainMap::compose(self, first)
    }
}

impl<A: Arrow, B: Arrow> Arrow for (A, B) {
    type Obj = (A::Obj, B::Obj);

    fn source(&self) -> Self::Obj {
        (self.0.source(), self.1.source())
    }

    fn target(&self) -> Self::Obj {
        (self.0.target(), self.1.target())
    }

    fn identity(obj: &Self::Obj) -> Self {
        (A::identity(&obj.0), B::identity(&obj.1))
    }

    fn compose(&self, first: &Self) -> Result<Self> {
        Ok((self.0.compose(&first.0)?, self.1.compose(&first.1)?))
    }
}

/// Composes a chain of arrows given in application order (`fs[0]` first).
pub fn compose_all<M: Arrow>(fs: &[M]) -> Result<M> {
    let (first, rest) = fs.split_first().ok_or_else(|| Error::Incomposable("empty composite".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| f.compose(&acc))
}

type ObjFn<S, T> = Rc<dyn Fn(&<S as Arrow>::Obj) -> Result<<T as Arrow>::Obj>>;
type MapFn<S, T> = Rc<dyn Fn(&S) -> Result<T>>;

/// A functor given by its action on objects and on arrows.
pub struct Functor<S: Arrow, T: Arrow> {
    pub name: String,
    obj: ObjFn<S, T>,
    map: MapFn<S, T>,
}

impl<S: Arrow, T: Arrow> Clone for Functor<S, T> {
    fn clone(&self) -> Self {
        Functor { name: self.name.clone(), obj: self.obj.clone(), map: self.map.clone() }
    }
}

impl<S: Arrow + 'static, T: Arrow + 'static> Functor<S, T> {
    pub fn new(
        name: impl Into<String>,
        obj: impl Fn(&S::Obj) -> Result<T::Obj> + 'static,
        map: impl Fn(&S) -> Result<T> + 'static,
    ) -> Self {
        Functor { name: name.into(), obj: Rc::new(obj), map: Rc::new(map) }
    }

    pub fn obj(&self, x: &S::Obj) -> Result<T::Obj> {
        (self.obj)(x)
    }

    pub fn map(&self, f: &S) -> Result<T> {
        (self.map)(f)
    }

    /// `next o self`.
    pub fn then<U: Arrow + 'static>(&self, next: &Functor<T, U>) -> Functor<S, U> {
        let (a, b) = (self.clone(), next.clone());
        let (c, d) = (self.clone(), next.clone());
        Functor::new(
            format!("{}{}", next.name, self.name),
            move |x| b.obj(&a.obj(x)?),
            move |f| d.map(&c.map(f)?),
        )
    }
}

impl<S: Arrow + 'static> Functor<S, S> {
    pub fn identity() -> Self {
        Functor::new("Id", |x: &S::Obj| Ok(x.clone()), |f: &S| Ok(f.clone()))
    }
}

/// A natural transformation, given by its component at each object.
pub type NatTrans<O, M> = Rc<dyn Fn(&O) -> Result<M>>;

pub fn nat<O, M>(f: impl Fn(&O) -> Result<M> + 'static) -> NatTrans<O, M> {
    Rc::new(f)
}

/// An adjoint couple `left -| right` with unit `X -> R L X` and counit `L R Y -> Y`.
pub struct Adjunction<C: Arrow, D: Arrow> {
    pub left: Functor<C, D>,
    pub right: Functor<D, C>,
    pub unit: NatTrans<C::Obj, C>,
    pub counit: NatTrans<D::Obj, D>,
}

impl<C: Arrow, D: Arrow> Clone for Adjunction<C, D> {
    fn clone(&self) -> Self {
        Adjunction {
            left: self.left.clone(),
            right: self.right.clone(),
            unit: self.unit.clone(),
            counit: self.counit.clone(),
        }
    }
}

impl<C: Arrow + 'static, D: Arrow + 'static> Adjunction<C, D> {
    /// `counit_{LX} o L(unit_X) = id_{LX}`.
    pub fn left_triangle(&self, x: &C::Obj) -> Result<bool> {
        let lhs = (self.counit)(&self.left.obj(x)?)?.compose(&self.left.map(&(self.unit)(x)?)?)?;
        Ok(lhs == D::identity(&self.left.obj(x)?))
    }

    /// `R(counit_Y) o unit_{RY} = id_{RY}`.
    pub fn right_triangle(&self, y: &D::Obj) -> Result<bool> {
        let ry = self.right.obj(y)?;
        let lhs = self.right.map(&(self.counit)(y)?)?.compose(&(self.unit)(&ry)?)?;
        Ok(lhs == C::identity(&ry))
    }

    /// `(L2 L1, R1 R2)` for `self = (L1, R1)` followed by `next = (L2, R2)`.
    pub fn then<E: Arrow + 'static>(&self, next: &Adjunction<D, E>) -> Adjunction<C, E> {
        let left = self.left.then(&next.left);
        let right = next.right.then(&self.right);
        let (a, b) = (self.clone(), next.clone());
        let unit = nat(move |x: &C::Obj| {
            let eta1 = (a.unit)(x)?;
            let eta2 = (b.unit)(&a.left.obj(x)?)?;
            a.right.map(&eta2)?.compose(&eta1)
        });
        let (a, b) = (self.clone(), next.clone());
        let counit = nat(move |y: &E::Obj| {
            let eps1 = (a.counit)(&b.right.obj(y)?)?;
            (b.counit)(y)?.compose(&b.left.map(&eps1)?)
        });
        Adjunction { left, right, unit, counit }
    }
}

/// Product of two adjunctions, acting on pairs.
pub fn product_adjunction<C1, D1, C2, D2>(a: &Adjunction<C1, D1>, b: &Adjunction<C2, D2>) -> Adjunction<(C1, C2), (D1, D2)>
where
    C1: Arrow + 'static,
    D1: Arrow + 'static,
    C2: Arrow + 'static,
    D2: Arrow + 'static,
{
    let (a1, b1, a2, b2) = (a.clone(), b.clone(), a.clone(), b.clone());
    let left = Functor::new(
        format!("({},{})", a.left.name, b.left.name),
        move |x: &(C1::Obj, C2::Obj)| Ok((a1.left.obj(&x.0)?, b1.left.obj(&x.1)?)),
        move |f: &(C1, C2)| Ok((a2.left.map(&f.0)?, b2.left.map(&f.1)?)),
    );
    let (a1, b1, a2, b2) = (a.clone(), b.clone(), a.clone(), b.clone());
    let right = Functor::new(
        format!("({},{})", a.right.name, b.right.name),
        move |x: &(D1::Obj, D2::Obj)| Ok((a1.right.obj(&x.0)?, b1.right.obj(&x.1)?)),
        move |f: &(D1, D2)| Ok((a2.right.map(&f.0)?, b2.right.map(&f.1)?)),
    );
    let (a1, b1, a2, b2) = (a.clone(), b.clone(), a.clone(), b.clone());
    Adjunction {
        left,
        right,
        unit: nat(move |x: &(C1::Obj, C2::Obj)| Ok(((a1.unit)(&x.0)?, (b1.unit)(&x.1)?))),
        counit: nat(move |y: &(D1::Obj, D2::Obj)| Ok(((a2.counit)(&y.0)?, (b2.counit)(&y.1)?))),
    }
}

/// The data of the mate correspondence between `a : J2 H' -> H J1` and `b : H' K1 -> K2 H`,
/// where `J1 -| K1` (first) and `J2 -| K2` (second).
pub struct MateSquare<C1: Arrow, D1: Arrow, C2: Arrow, D2: Arrow> {
    pub first: Adjunction<C1, D1>,
    pub second: Adjunction<C2, D2>,
    pub h: Functor<D1, D2>,
    pub h_prime: Functor<C1, C2>,
}

impl<C1, D1, C2, D2> MateSquare<C1, D1, C2, D2>
where
    C1: Arrow + 'static,
    D1: Arrow + 'static,
    C2: Arrow + 'static,
    D2: Arrow + 'static,
{
    /// `b_X = K2(H(eps1_X)) o K2(a_{K1 X}) o eta2_{H' K1 X}`.
    pub fn mate(&self, a: &NatTrans<C1::Obj, D2>) -> NatTrans<D1::Obj, C2> {
        let (first, second, h, hp, a) =
            (self.first.clone(), self.second.clone(), self.h.clone(), self.h_prime.clone(), a.clone());
        nat(move |x: &D1::Obj| {
            let k1x = first.right.obj(x)?;
            let eta = (second.unit)(&hp.obj(&k1x)?)?;
            let ka = second.right.map(&a(&k1x)?)?;
            let khe = second.right.map(&h.map(&(first.counit)(x)?)?)?;
            compose_all(&[eta, ka, khe])
        })
    }

    /// `a_Y = eps2_{H J1 Y} o J2(b_{J1 Y}) o J2 H'(eta1_Y)`.
    pub fn mate_inverse(&self, b: &NatTrans<D1::Obj, C2>) -> NatTrans<C1::Obj, D2> {
        let (first, second, h, hp, b) =
            (self.first.clone(), self.second.clone(), self.h.clone(), self.h_prime.clone(), b.clone());
        nat(move |y: &C1::Obj| {
            let j1y = first.left.obj(y)?;
            let jhe = second.left.map(&hp.map(&(first.unit)(y)?)?)?;
            let jb = second.left.map(&b(&j1y)?)?;
            let eps = (second.counit)(&h.obj(&j1y)?)?;
            compose_all(&[jhe, jb, eps])
        })
    }

    /// Diagram H at `X`: `eps2_{HX} o J2(b_X) = H(eps1_X) o a_{K1 X}`.
    pub fn check_h(&self, a: &NatTrans<C1::Obj, D2>, b: &NatTrans<D1::Obj, C2>, x: &D1::Obj) -> Result<bool> {
        let lhs = (self.second.counit)(&self.h.obj(x)?)?.compose(&self.second.left.map(&b(x)?)?)?;
        let k1x = self.first.right.obj(x)?;
        let rhs = self.h.map(&(self.first.counit)(x)?)?.compose(&a(&k1x)?)?;
        Ok(lhs == rhs)
    }

    /// Diagram H' at `Y`: `b_{J1 Y} o H'(eta1_Y) = K2(a_Y) o eta2_{H' Y}`.
    pub fn check_h_prime(&self, a: &NatTrans<C1::Obj, D2>, b: &NatTrans<D1::Obj, C2>, y: &C1::Obj) -> Result<bool> {
        let j1y = self.first.left.obj(y)?;
        let lhs = b(&j1y)?.compose(&self.h_prime.map(&(self.first.unit)(y)?)?)?;
        let rhs = self.second.right.map(&a(y)?)?.compose(&(self.second.unit)(&self.h_prime.obj(y)?)?)?;
        Ok(lhs == rhs)
    }
}
