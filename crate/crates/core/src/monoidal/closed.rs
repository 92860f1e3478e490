//! Constructions shared by every closed symmetric monoidal category in the crate:
//! evaluations, coevaluations, the bidual map, the exchange map and `dd`.

use std::fmt::Debug;

use super::category::{compose_all, nat, Adjunction, Arrow, Functor};
use crate::error::Result;

/// A closed symmetric monoidal category given by explicit structure maps.
pub trait ClosedMonoidal: Clone + 'static {
    type Obj: Clone + PartialEq + Debug + 'static;
    type Map: Arrow<Obj = Self::Obj> + 'static;

    fn unit_obj(&self) -> Self::Obj;
    fn tensor(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;
    fn tensor_map(&self, f: &Self::Map, g: &Self::Map) -> Result<Self::Map>;
    /// `[f, g] : [A, B] -> [A', B']` for `f : A' -> A`, `g : B -> B'`.
    fn hom_map(&self, f: &Self::Map, g: &Self::Map) -> Result<Self::Map>;
    fn assoc(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Result<Self::Map>;
    fn lunit(&self, a: &Self::Obj) -> Result<Self::Map>;
    fn runit(&self, a: &Self::Obj) -> Result<Self::Map>;
    fn sym(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Map>;
    /// `phi : A (x) B -> C` to `A -> [B, C]`.
    fn ath(&self, a: &Self::Obj, b: &Self::Obj, phi: &Self::Map) -> Result<Self::Map>;
    /// `psi : A -> [B, C]` to `A (x) B -> C`.
    fn ath_inv(&self, b: &Self::Obj, c: &Self::Obj, psi: &Self::Map) -> Result<Self::Map>;
    fn inverse(&self, f: &Self::Map) -> Result<Self::Map>;
    fn is_invertible(&self, f: &Self::Map) -> bool;

    fn id(&self, a: &Self::Obj) -> Self::Map {
        Self::Map::identity(a)
    }

    fn assoc_inv(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Result<Self::Map> {
        self.inverse(&self.assoc(a, b, c)?)
    }

    /// `ev^l_{A,K} : [A, K] (x) A -> K`.
    fn ev_l(&self, a: &Self::Obj, k: &Self::Obj) -> Result<Self::Map> {
        let ak = self.hom(a, k)?;
        self.ath_inv(a, k, &self.id(&ak))
    }

    /// `coev^l_{A,K} : K -> [A, K (x) A]`.
    fn coev_l(&self, a: &Self::Obj, k: &Self::Obj) -> Result<Self::Map> {
        let ka = self.tensor(k, a)?;
        self.ath(k, a, &self.id(&ka))
    }

    /// `ev^r_{A,K} : A (x) [A, K] -> K`.
    fn ev_r(&self, a: &Self::Obj, k: &Self::Obj) -> Result<Self::Map> {
        let ak = self.hom(a, k)?;
        self.ev_l(a, k)?.compose(&self.sym(a, &ak)?)
    }

    /// `coev^r_{A,K} : K -> [A, A (x) K]`.
    fn coev_r(&self, a: &Self::Obj, k: &Self::Obj) -> Result<Self::Map> {
        self.hom_map(&self.id(a), &self.sym(k, a)?)?.compose(&self.coev_l(a, k)?)
    }

    /// The bidual map `A -> [[A, K], K]`.
    fn bid(&self, a: &Self::Obj, k: &Self::Obj) -> Result<Self::Map> {
        let ak = self.hom(a, k)?;
        self.ath(a, &ak, &self.ev_r(a, k)?)
    }

    /// `D_K A = [A, K]`.
    fn dual(&self, a: &Self::Obj, k: &Self::Obj) -> Result<Self::Obj> {
        self.hom(a, k)
    }

    /// `D_K f = [f, K]`.
    fn dual_map(&self, f: &Self::Map, k: &Self::Obj) -> Result<Self::Map> {
        self.hom_map(f, &self.id(k))
    }

    /// `(X (x) Y) (x) (Z (x) W) -> (X (x) Z) (x) (Y (x) W)`.
    fn exch(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj, w: &Self::Obj) -> Result<Self::Map> {
        let zw = self.tensor(z, w)?;
        let yw = self.tensor(y, w)?;
        let ix = self.id(x);
        compose_all(&[
            self.assoc(x, y, &zw)?,
            self.tensor_map(&ix, &self.assoc_inv(y, z, w)?)?,
            self.tensor_map(&ix, &self.tensor_map(&self.sym(y, z)?, &self.id(w))?)?,
            self.tensor_map(&ix, &self.assoc(z, y, w)?)?,
            self.assoc_inv(x, z, &yw)?,
        ])
    }

    /// `dd_{K,M} : [A, K] (x) [B, M] -> [A (x) B, K (x) M]`.
    fn dd(&self, a: &Self::Obj, b: &Self::Obj, k: &Self::Obj, m: &Self::Obj) -> Result<Self::Map> {
        let x = self.hom(a, k)?;
        let y = self.hom(b, m)?;
        let ab = self.tensor(a, b)?;
        let xy = self.tensor(&x, &y)?;
        let evs = self.tensor_map(&self.ev_l(a, k)?, &self.ev_l(b, m)?)?;
        let inner = evs.compose(&self.exch(&x, &y, a, b)?)?;
        self.hom_map(&self.id(&ab), &inner)?.compose(&self.coev_l(&ab, &xy)?)
    }

    /// `(- (x) A) -| [A, -]` with unit `coev^l` and counit `ev^l`.
    fn tensor_adjunction(&self, a: &Self::Obj) -> Adjunction<Self::Map, Self::Map> {
        let (c1, a1, c2, a2) = (self.clone(), a.clone(), self.clone(), a.clone());
        let left = Functor::new(
            "-(x)A",
            move |x: &Self::Obj| c1.tensor(x, &a1),
            move |f: &Self::Map| c2.tensor_map(f, &c2.id(&a2)),
        );
        let (c1, a1, c2, a2) = (self.clone(), a.clone(), self.clone(), a.clone());
        let right = Functor::new(
            "[A,-]",
            move |y: &Self::Obj| c1.hom(&a1, y),
            move |g: &Self::Map| c2.hom_map(&c2.id(&a2), g),
        );
        let (c1, a1, c2, a2) = (self.clone(), a.clone(), self.clone(), a.clone());
        Adjunction {
            left,
            right,
            unit: nat(move |x: &Self::Obj| c1.coev_l(&a1, x)),
            counit: nat(move |y: &Self::Obj| c2.ev_l(&a2, y)),
        }
    }

    /// `(A (x) -) -| [A, -]` with unit `coev^r` and counit `ev^r`.
    fn tensor_adjunction_r(&self, a: &Self::Obj) -> Adjunction<Self::Map, Self::Map> {
        let (c1, a1, c2, a2) = (self.clone(), a.clone(), self.clone(), a.clone());
        let left = Functor::new(
            "A(x)-",
            move |x: &Self::Obj| c1.tensor(&a1, x),
            move |f: &Self::Map| c2.tensor_map(&c2.id(&a2), f),
        );
        let (c1, a1, c2, a2) = (self.clone(), a.clone(), self.clone(), a.clone());
        let right = Functor::new(
            "[A,-]",
            move |y: &Self::Obj| c1.hom(&a1, y),
            move |g: &Self::Map| c2.hom_map(&c2.id(&a2), g),
        );
        let (c1, a1, c2, a2) = (self.clone(), a.clone(), self.clone(), a.clone());
        Adjunction {
            left,
            right,
            unit: nat(move |x: &Self::Obj| c1.coev_r(&a1, x)),
            counit: nat(move |y: &Self::Obj| c2.ev_r(&a2, y)),
        }
    }

    /// `D_K(bid_A) o bid_{D_K A} = id_{D_K A}`.
    fn eq1(&self, a: &Self::Obj, k: &Self::Obj) -> Result<bool> {
        let da = self.dual(a, k)?;
        let lhs = self.dual_map(&self.bid(a, k)?, k)?.compose(&self.bid(&da, k)?)?;
        Ok(lhs == self.id(&da))
    }
}
