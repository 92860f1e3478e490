//! Dualities on complexes: `D_K`, the suspended duality `T(C, D_K, bid_K)`, the
//! functor `<Id, th2>` relating it to `D_{TK}`, and Gram matrices of degree-0 forms.

use super::{DPFunctor, Duality, SymmetricForm};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::monoidal::{nat, ClosedMonoidal, Functor, StructuralContext};

/// Sign `s = -delta` in the bidual `s * th1_{T D A, K} o bid_A` of the suspended duality,
/// with `delta = 1` since `D_K` is exact.
pub const SUSPENDED_BID_SIGN: i8 = -1;

impl StructuralContext {
    /// `(C, D_K, bid_K)`.
    pub fn duality(&self, k: &Complex) -> Duality<ChainMap> {
        Duality::of(self, k)
    }

    /// `T(C, D_K, bid_K) = (C, T D_K, s * th1_{T D A, K} o bid_A)`.
    pub fn suspended_duality(&self, k: &Complex, sign: i8) -> Duality<ChainMap> {
        let (c1, k1, c2, k2, c3, k3) = (self.clone(), k.clone(), self.clone(), k.clone(), self.clone(), k.clone());
        Duality::new(
            format!("TD[{k:?}]"),
            move |a: &Complex| Ok(c1.suspend(&c1.hom(a, &k1)?)),
            move |f: &ChainMap| Ok(c2.suspend_map(&c2.dual_map(f, &k2)?)),
            nat(move |a: &Complex| {
                let tda = c3.suspend(&c3.hom(a, &k3)?);
                let m = c3.th1(&tda, &k3)?.compose(&c3.bid(a, &k3)?)?;
                Ok(if sign < 0 { m.neg() } else { m })
            }),
        )
    }

    /// `<Id, th2_{-,K}>` from `(C, D_{TK})` to `T(C, D_K)`.
    pub fn suspension_dp(&self, k: &Complex, sign: i8) -> DPFunctor<ChainMap, ChainMap> {
        let (c, k1) = (self.clone(), k.clone());
        DPFunctor {
            functor: Functor::identity(),
            phi: nat(move |a: &Complex| c.th2(a, &k1)),
            source: self.duality(&self.suspend(k)),
            target: self.suspended_duality(k, sign),
        }
    }

    /// A degree-0 complex of dimension `n`.
    pub fn degree_zero(&self, n: usize) -> Complex {
        if n == 0 {
            Complex::zero(self.p())
        } else {
            Complex::graded(self.p(), 0, vec![n])
        }
    }

    /// The form `A -> [A, 1]` on `A = F_p^n` in degree 0 with Gram matrix `g`.
    pub fn form_from_gram(&self, g: &Matrix) -> Result<SymmetricForm<ChainMap>> {
        if !g.is_square() {
            return Err(Error::Shape("Gram matrix must be square".into()));
        }
        let a = self.degree_zero(g.rows());
        let da = self.hom(&a, &self.unit())?;
        let gt = g.transpose();
        let form = ChainMap::certified(a, da, |_| gt.clone())?;
        SymmetricForm::new(&self.duality(&self.unit()), form)
    }
}

/// The Gram matrix `G[t][s] = psi(e_t)(e_s)` of a degree-0 form into the unit.
pub fn gram_of(form: &ChainMap) -> Matrix {
    form.comp(0).transpose()
}
