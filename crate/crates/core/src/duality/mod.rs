//! Categories with duality, duality-preserving functors, their composition and
//! morphisms, and the transfer of symmetric forms along them.

use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::monoidal::{nat, Arrow, ClosedMonoidal, Functor, NatTrans};

pub mod complexes;
pub mod sheaves;

#[cfg(test)]
mod tests;

type DualObj<M> = Rc<dyn Fn(&<M as Arrow>::Obj) -> Result<<M as Arrow>::Obj>>;
type DualMap<M> = Rc<dyn Fn(&M) -> Result<M>>;

/// A category with duality `(C, D, bid)`. `label` identifies the duality so that
/// duality-preserving functors can only be composed along matching endpoints.
pub struct Duality<M: Arrow> {
    pub label: String,
    dual: DualObj<M>,
    dual_map: DualMap<M>,
    bid: NatTrans<M::Obj, M>,
}

impl<M: Arrow> Clone for Duality<M> {
    fn clone(&self) -> Self {
        Duality { label: self.label.clone(), dual: self.dual.clone(), dual_map: self.dual_map.clone(), bid: self.bid.clone() }
    }
}

impl<M: Arrow> fmt::Debug for Duality<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Duality({})", self.label)
    }
}

impl<M: Arrow + 'static> Duality<M> {
    pub fn new(
        label: impl Into<String>,
        dual: impl Fn(&M::Obj) -> Result<M::Obj> + 'static,
        dual_map: impl Fn(&M) -> Result<M> + 'static,
        bid: NatTrans<M::Obj, M>,
    ) -> Self {
        Duality { label: label.into(), dual: Rc::new(dual), dual_map: Rc::new(dual_map), bid }
    }

    /// `(C, [-, K], bid_K)` in a closed symmetric monoidal category.
    pub fn of<C: ClosedMonoidal<Map = M, Obj = M::Obj>>(cat: &C, k: &M::Obj) -> Self {
        let (c1, k1, c2, k2, c3, k3) = (cat.clone(), k.clone(), cat.clone(), k.clone(), cat.clone(), k.clone());
        Duality::new(
            format!("D[{k:?}]"),
            move |a| c1.dual(a, &k1),
            move |f| c2.dual_map(f, &k2),
            nat(move |a: &M::Obj| c3.bid(a, &k3)),
        )
    }

    pub fn dual(&self, a: &M::Obj) -> Result<M::Obj> {
        (self.dual)(a)
    }

    pub fn dual_map(&self, f: &M) -> Result<M> {
        (self.dual_map)(f)
    }

    /// `bid_A : A -> D D A`.
    pub fn bid(&self, a: &M::Obj) -> Result<M> {
        (self.bid)(a)
    }

    /// `D(bid_A) o bid_{DA} = id_{DA}`.
    pub fn eq1(&self, a: &M::Obj) -> Result<bool> {
        let da = self.dual(a)?;
        let lhs = self.dual_map(&self.bid(a)?)?.compose(&self.bid(&da)?)?;
        Ok(lhs == M::identity(&da))
    }

    /// Both triangle identities of the self-adjoint couple `(D, D^o, bid, bid^o)` at `a`.
    ///
    /// The unit and counit are both `bid`, so each triangle is `eq1`.
    pub fn triangles(&self, a: &M::Obj) -> Result<bool> {
        self.eq1(a)
    }
}

/// `(C1 x C2, D1 x D2, bid1 x bid2)`.
pub fn product_duality<M1: Arrow + 'static, M2: Arrow + 'static>(d1: &Duality<M1>, d2: &Duality<M2>) -> Duality<(M1, M2)> {
    let (a1, a2, b1, b2, c1, c2) = (d1.clone(), d2.clone(), d1.clone(), d2.clone(), d1.clone(), d2.clone());
    Duality::new(
        format!("{}x{}", d1.label, d2.label),
        move |x: &(M1::Obj, M2::Obj)| Ok((a1.dual(&x.0)?, a2.dual(&x.1)?)),
        move |f: &(M1, M2)| Ok((b1.dual_map(&f.0)?, b2.dual_map(&f.1)?)),
        nat(move |x: &(M1::Obj, M2::Obj)| Ok((c1.bid(&x.0)?, c2.bid(&x.1)?))),
    )
}

/// A duality-preserving functor `<F, phi>` with `phi : F D1 -> D2 F`.
pub struct DPFunctor<S: Arrow, T: Arrow> {
    pub functor: Functor<S, T>,
    pub phi: NatTrans<S::Obj, T>,
    pub source: Duality<S>,
    pub target: Duality<T>,
}

impl<S: Arrow, T: Arrow> Clone for DPFunctor<S, T> {
    fn clone(&self) -> Self {
        DPFunctor { functor: self.functor.clone(), phi: self.phi.clone(), source: self.source.clone(), target: self.target.clone() }
    }
}

impl<S: Arrow, T: Arrow> fmt::Debug for DPFunctor<S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}> : {} -> {}", self.functor.name, self.source.label, self.target.label)
    }
}

impl<S: Arrow + 'static> DPFunctor<S, S> {
    /// `<Id, id>` on `d`.
    pub fn identity(d: &Duality<S>) -> Self {
        let d1 = d.clone();
        DPFunctor {
            functor: Functor::identity(),
            phi: nat(move |a: &S::Obj| Ok(S::identity(&d1.dual(a)?))),
            source: d.clone(),
            target: d.clone(),
        }
    }

    /// `I_iota = <Id, [-, iota]>` from `(C, D_K)` to `(C, D_M)` for `iota : K -> M`.
    pub fn induced<C: ClosedMonoidal<Map = S, Obj = S::Obj>>(cat: &C, iota: &S) -> Self {
        let (c, i) = (cat.clone(), iota.clone());
        DPFunctor {
            functor: Functor::new("I", |x: &S::Obj| Ok(x.clone()), |f: &S| Ok(f.clone())),
            phi: nat(move |a: &S::Obj| c.hom_map(&c.id(a), &i)),
            source: Duality::of(cat, &iota.source()),
            target: Duality::of(cat, &iota.target()),
        }
    }
}

impl<S: Arrow + 'static, T: Arrow + 'static> DPFunctor<S, T> {
    pub fn phi_at(&self, a: &S::Obj) -> Result<T> {
        (self.phi)(a)
    }

    /// Diagram P at `a`: `phi_{D1 A} o F(bid1_A) = D2(phi_A) o bid2_{FA}`.
    pub fn check_p(&self, a: &S::Obj) -> Result<bool> {
        let fa = self.functor.obj(a)?;
        let da = self.source.dual(a)?;
        let lhs = self.phi_at(&da)?.compose(&self.functor.map(&self.source.bid(a)?)?)?;
        let rhs = self.target.dual_map(&self.phi_at(a)?)?.compose(&self.target.bid(&fa)?)?;
        Ok(lhs == rhs)
    }

    /// `next o self = <F' F, phi'_F o F' phi>`.
    pub fn then<U: Arrow + 'static>(&self, next: &DPFunctor<T, U>) -> Result<DPFunctor<S, U>> {
        if self.target.label != next.source.label {
            return Err(Error::Shape(format!(
                "cannot compose duality-preserving functors: {} vs {}",
                self.target.label, next.source.label
            )));
        }
        let (first, second) = (self.clone(), next.clone());
        Ok(DPFunctor {
            functor: self.functor.then(&next.functor),
            phi: nat(move |a: &S::Obj| {
                let inner = second.functor.map(&first.phi_at(a)?)?;
                second.phi_at(&first.functor.obj(a)?)?.compose(&inner)
            }),
            source: self.source.clone(),
            target: next.target.clone(),
        })
    }

    /// Whether `phi` is invertible at `a`.
    pub fn is_strong_at(&self, a: &S::Obj, invertible: impl Fn(&T) -> bool) -> Result<bool> {
        Ok(invertible(&self.phi_at(a)?))
    }
}

/// `<F1 x F2, phi1 x phi2>`.
pub fn product_dp<S1, T1, S2, T2>(a: &DPFunctor<S1, T1>, b: &DPFunctor<S2, T2>) -> DPFunctor<(S1, S2), (T1, T2)>
where
    S1: Arrow + 'static,
    T1: Arrow + 'static,
    S2: Arrow + 'static,
    T2: Arrow + 'static,
{
    let (f1, f2, g1, g2) = (a.functor.clone(), b.functor.clone(), a.functor.clone(), b.functor.clone());
    let (p1, p2) = (a.phi.clone(), b.phi.clone());
    DPFunctor {
        functor: Functor::new(
            format!("{}x{}", a.functor.name, b.functor.name),
            move |x: &(S1::Obj, S2::Obj)| Ok((f1.obj(&x.0)?, f2.obj(&x.1)?)),
            move |m: &(S1, S2)| Ok((g1.map(&m.0)?, g2.map(&m.1)?)),
        ),
        phi: nat(move |x: &(S1::Obj, S2::Obj)| Ok((p1(&x.0)?, p2(&x.1)?))),
        source: product_duality(&a.source, &b.source),
        target: product_duality(&a.target, &b.target),
    }
}

/// `<- (x) -, dd_{K,M}>` from `(C x C, D_K x D_M)` to `(C, D_{K (x) M})`.
pub fn tensor_dp<C: ClosedMonoidal>(cat: &C, k: &C::Obj, m: &C::Obj) -> Result<DPFunctor<(C::Map, C::Map), C::Map>> {
    let (c1, c2, c3) = (cat.clone(), cat.clone(), cat.clone());
    let (k1, m1) = (k.clone(), m.clone());
    let km = cat.tensor(k, m)?;
    Ok(DPFunctor {
        functor: Functor::new(
            "(x)",
            move |x: &(C::Obj, C::Obj)| c1.tensor(&x.0, &x.1),
            move |f: &(C::Map, C::Map)| c2.tensor_map(&f.0, &f.1),
        ),
        phi: nat(move |x: &(C::Obj, C::Obj)| c3.dd(&x.0, &x.1, &k1, &m1)),
        source: product_duality(&Duality::of(cat, k), &Duality::of(cat, m)),
        target: Duality::of(cat, &km),
    })
}

/// Diagram M at `a` for `rho : F -> G`: `phi_A = D2(rho_A) o psi_A o rho_{D1 A}`.
pub fn check_m<S: Arrow + 'static, T: Arrow + 'static>(
    rho: &NatTrans<S::Obj, T>,
    f: &DPFunctor<S, T>,
    g: &DPFunctor<S, T>,
    a: &S::Obj,
) -> Result<bool> {
    if f.source.label != g.source.label || f.target.label != g.target.label {
        return Err(Error::Shape(format!("diagram M needs equal endpoints: {f:?} vs {g:?}")));
    }
    let da = f.source.dual(a)?;
    let lhs = f.phi_at(a)?;
    let rhs = f.target.dual_map(&rho(a)?)?.compose(&g.phi_at(a)?)?.compose(&rho(&da)?)?;
    Ok(lhs == rhs)
}

/// A form `psi : A -> D A`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricForm<M: Arrow> {
    pub obj: M::Obj,
    pub form: M,
}

impl<M: Arrow + 'static> SymmetricForm<M> {
    /// Validates the endpoints and symmetry `D(psi) o bid_A = psi`.
    pub fn new(d: &Duality<M>, form: M) -> Result<Self> {
        let obj = form.source();
        if form.target() != d.dual(&obj)? {
            return Err(Error::Shape(format!("form target is not the dual under {}", d.label)));
        }
        let out = SymmetricForm { obj, form };
        if !out.is_symmetric(d)? {
            return Err(Error::NotSymmetric);
        }
        Ok(out)
    }

    pub fn is_symmetric(&self, d: &Duality<M>) -> Result<bool> {
        Ok(d.dual_map(&self.form)?.compose(&d.bid(&self.obj)?)? == self.form)
    }
}

/// The form `phi_A o F(psi)` on `F A`, with its symmetry verified.
pub fn transfer_form<S: Arrow + 'static, T: Arrow + 'static>(
    f: &DPFunctor<S, T>,
    psi: &SymmetricForm<S>,
) -> Result<SymmetricForm<T>> {
    if !psi.is_symmetric(&f.source)? {
        return Err(Error::NotSymmetric);
    }
    let form = f.phi_at(&psi.obj)?.compose(&f.functor.map(&psi.form)?)?;
    SymmetricForm::new(&f.target, form)
}
