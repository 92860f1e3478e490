//! Coherence checks for the structure on complexes, each comparing two composites exactly.

use super::closed::ClosedMonoidal;
use super::StructuralContext;
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};

/// `lhs == rhs` when both sides exist.
pub fn agree(lhs: Result<ChainMap>, rhs: Result<ChainMap>) -> Result<bool> {
    Ok(lhs? == rhs?)
}

impl StructuralContext {
    fn inv(&self, f: Result<ChainMap>) -> Result<ChainMap> {
        f?.inverse()
    }

    /// The tp square on `TA (x) TC`: the two composites differ by the sign `-1`.
    pub fn tp_square_anticommutes(&self, a: &Complex, c: &Complex) -> Result<bool> {
        let ta = self.suspend(a);
        let tc = self.suspend(c);
        let one = self.suspend_map(&self.tp2(a, c)?).compose(&self.tp1(a, &tc)?)?;
        let two = self.suspend_map(&self.tp1(a, c)?).compose(&self.tp2(&ta, c)?)?;
        Ok(one == two.neg())
    }

    /// Pentagon for `((A B) C) D -> A (B (C D))`.
    pub fn pentagon(&self, a: &Complex, b: &Complex, c: &Complex, d: &Complex) -> Result<bool> {
        let ab = self.tensor(a, b)?;
        let cd = self.tensor(c, d)?;
        let bc = self.tensor(b, c)?;
        let bcd = self.tensor(&bc, d)?;
        let lhs = self.assoc(a, b, &cd)?.compose(&self.assoc(&ab, c, d)?)?;
        let rhs = super::compose_all(&[
            self.tensor_map(&self.assoc(a, b, c)?, &ChainMap::identity(d))?,
            self.assoc(a, &bc, d)?,
            self.tensor_map(&ChainMap::identity(a), &self.assoc(b, c, d)?)?,
        ])?;
        let _ = bcd;
        Ok(lhs == rhs)
    }

    /// First hexagon: `a_{B,C,A} c_{A,B(x)C} a_{A,B,C} = (id (x) c_{A,C}) a_{B,A,C} (c_{A,B} (x) id)`.
    pub fn hexagon1(&self, a: &Complex, b: &Complex, c: &Complex) -> Result<bool> {
        let bc = self.tensor(b, c)?;
        let lhs = super::compose_all(&[self.assoc(a, b, c)?, self.sym(a, &bc)?, self.assoc(b, c, a)?])?;
        let rhs = super::compose_all(&[
            self.tensor_map(&self.sym(a, b)?, &ChainMap::identity(c))?,
            self.assoc(b, a, c)?,
            self.tensor_map(&ChainMap::identity(b), &self.sym(a, c)?)?,
        ])?;
        Ok(lhs == rhs)
    }

    /// Second hexagon: `a^{-1}_{C,A,B} c_{A(x)B,C} a^{-1}_{A,B,C} = (c_{A,C} (x) id) a^{-1}_{A,C,B} (id (x) c_{B,C})`.
    pub fn hexagon2(&self, a: &Complex, b: &Complex, c: &Complex) -> Result<bool> {
        let ab = self.tensor(a, b)?;
        let lhs = super::compose_all(&[self.assoc_inv(a, b, c)?, self.sym(&ab, c)?, self.assoc_inv(c, a, b)?])?;
        let rhs = super::compose_all(&[
            self.tensor_map(&ChainMap::identity(a), &self.sym(b, c)?)?,
            self.assoc_inv(a, c, b)?,
            self.tensor_map(&self.sym(a, c)?, &ChainMap::identity(b))?,
        ])?;
        Ok(lhs == rhs)
    }

    /// `c_{B,A} c_{A,B} = id`.
    pub fn symmetry_involution(&self, a: &Complex, b: &Complex) -> Result<bool> {
        Ok(self.sym(b, a)?.compose(&self.sym(a, b)?)?.is_identity())
    }

    /// The tp/c square: `tp2_{B,A} c_{TA,B} = T(c_{A,B}) tp1_{A,B}`.
    pub fn square_s(&self, a: &Complex, b: &Complex) -> Result<bool> {
        let ta = self.suspend(a);
        let lhs = self.tp2(b, a)?.compose(&self.sym(&ta, b)?)?;
        let rhs = self.suspend_map(&self.sym(a, b)?).compose(&self.tp1(a, b)?)?;
        Ok(lhs == rhs)
    }

    /// tp against assoc, with the suspension on the first (`which = 0`), second or third factor.
    pub fn assoc_tp(&self, which: usize, a: &Complex, b: &Complex, c: &Complex) -> Result<bool> {
        let id = ChainMap::identity;
        match which {
            0 => {
                let ab = self.tensor(a, b)?;
                let ta = self.suspend(a);
                let lhs = super::compose_all(&[
                    self.tensor_map(&self.tp1(a, b)?, &id(c))?,
                    self.tp1(&ab, c)?,
                    self.suspend_map(&self.assoc(a, b, c)?),
                ])?;
                let bc = self.tensor(b, c)?;
                let rhs = self.tp1(a, &bc)?.compose(&self.assoc(&ta, b, c)?)?;
                Ok(lhs == rhs)
            }
            1 => {
                let ab = self.tensor(a, b)?;
                let tb = self.suspend(b);
                let bc = self.tensor(b, c)?;
                let lhs = super::compose_all(&[
                    self.tensor_map(&self.tp2(a, b)?, &id(c))?,
                    self.tp1(&ab, c)?,
                    self.suspend_map(&self.assoc(a, b, c)?),
                ])?;
                let rhs = super::compose_all(&[
                    self.assoc(a, &tb, c)?,
                    self.tensor_map(&id(a), &self.tp1(b, c)?)?,
                    self.tp2(a, &bc)?,
                ])?;
                Ok(lhs == rhs)
            }
            2 => {
                let ab = self.tensor(a, b)?;
                let tc = self.suspend(c);
                let bc = self.tensor(b, c)?;
                let lhs = self.suspend_map(&self.assoc(a, b, c)?).compose(&self.tp2(&ab, c)?)?;
                let rhs = super::compose_all(&[
                    self.assoc(a, b, &tc)?,
                    self.tensor_map(&id(a), &self.tp2(b, c)?)?,
                    self.tp2(a, &bc)?,
                ])?;
                Ok(lhs == rhs)
            }
            _ => Err(Error::UnknownDiagram(format!("assoc_tp {which}"))),
        }
    }

    /// Both triangle identities of `(- (x) A) -| [A, -]` at `X` (left) and `Y` (right).
    pub fn tensor_hom_triangles(&self, a: &Complex, x: &Complex, y: &Complex) -> Result<bool> {
        let adj = self.tensor_adjunction(a);
        Ok(adj.left_triangle(x)? && adj.right_triangle(y)?)
    }

    /// `ath` and `ath^{-1}` are mutually inverse on `phi : A (x) B -> C`, and `ath(ev^l)` is the identity.
    pub fn ath_round_trip(&self, a: &Complex, b: &Complex, phi: &ChainMap) -> Result<bool> {
        let psi = self.ath(a, b, phi)?;
        let back = self.ath_inv(b, phi.target(), &psi)?;
        let k = phi.target();
        let ev = self.ev_l(b, k)?;
        let bk = self.hom(b, k)?;
        Ok(back == *phi && self.ath(&bk, b, &ev)?.is_identity())
    }

    fn diag_ev_inner(&self, id: u32, a: &Complex, k: &Complex) -> Result<bool> {
        let tk = self.suspend(k);
        let ta = self.suspend(a);
        let ak = self.hom(a, k)?;
        let ida = ChainMap::identity(a);
        match id {
            4 => agree(
                super::compose_all(&[
                    self.tensor_map(&self.th2(a, k)?, &ida)?,
                    self.tp1(&ak, a)?,
                    self.suspend_map(&self.ev_l(a, k)?),
                ]),
                self.ev_l(a, &tk),
            ),
            5 => agree(
                super::compose_all(&[
                    self.tensor_map(&ida, &self.th2(a, k)?)?,
                    self.tp2(a, &ak)?,
                    self.suspend_map(&self.ev_r(a, k)?),
                ]),
                self.ev_r(a, &tk),
            ),
            6 => {
                let ka = self.tensor(k, a)?;
                agree(
                    self.hom_map(&ida, &self.tp1(k, a)?)?.compose(&self.coev_l(a, &tk)?),
                    self.inv(self.th2(a, &ka))?.compose(&self.suspend_map(&self.coev_l(a, k)?)),
                )
            }
            7 => {
                let ak2 = self.tensor(a, k)?;
                agree(
                    self.hom_map(&ida, &self.tp2(a, k)?)?.compose(&self.coev_r(a, &tk)?),
                    self.inv(self.th2(a, &ak2))?.compose(&self.suspend_map(&self.coev_r(a, k)?)),
                )
            }
            8 => {
                let x = self.desuspend(&ak);
                let lhs = super::compose_all(&[
                    self.tp2(&x, a)?,
                    self.inv(self.tp1(&x, a))?,
                    self.ev_l(a, k)?,
                ]);
                let th = self.desuspend_map(&self.th1(&ta, k)?);
                let rhs = self.ev_l(&ta, k)?.compose(&self.tensor_map(&th, &ChainMap::identity(&ta))?);
                agree(lhs, rhs)
            }
            9 => {
                let x = self.desuspend(&ak);
                let lhs = super::compose_all(&[
                    self.tp1(a, &x)?,
                    self.inv(self.tp2(a, &x))?,
                    self.ev_r(a, k)?,
                ]);
                let th = self.desuspend_map(&self.th1(&ta, k)?);
                let rhs = self.ev_r(&ta, k)?.compose(&self.tensor_map(&ChainMap::identity(&ta), &th)?);
                agree(lhs, rhs)
            }
            10 => {
                let kta = self.tensor(k, &ta)?;
                let ka = self.tensor(k, a)?;
                let lhs = self.desuspend_map(&self.inv(self.th1(&ta, &kta))?).compose(&self.coev_l(&ta, k)?);
                let rhs = super::compose_all(&[
                    self.coev_l(a, k)?,
                    self.desuspend_map(&self.inv(self.th2(a, &ka))?),
                    self.desuspend_map(&self.hom_map(&ida, &self.inv(self.tp2(k, a))?)?),
                ]);
                agree(lhs, rhs)
            }
            11 => {
                let tak = self.tensor(&ta, k)?;
                let ak2 = self.tensor(a, k)?;
                let lhs = self.desuspend_map(&self.inv(self.th1(&ta, &tak))?).compose(&self.coev_r(&ta, k)?);
                let rhs = super::compose_all(&[
                    self.coev_r(a, k)?,
                    self.desuspend_map(&self.inv(self.th2(a, &ak2))?),
                    self.desuspend_map(&self.hom_map(&ida, &self.inv(self.tp1(a, k))?)?),
                ]);
                agree(lhs, rhs)
            }
            other => Err(Error::UnknownDiagram(format!("D{other}"))),
        }
    }

    /// Diagrams 4 to 11 relating evaluations, coevaluations and suspension.
    ///
    /// A construction that fails along the way (for example under corrupted signs) is a
    /// failed check, not an error; unknown ids are errors.
    pub fn diag_ev_check(&self, id: u32, a: &Complex, k: &Complex) -> Result<bool> {
        if !(4..=11).contains(&id) {
            return Err(Error::UnknownDiagram(format!("D{id}")));
        }
        Ok(self.diag_ev_inner(id, a, k).unwrap_or(false))
    }

    /// Like [`diag_ev_check`](Self::diag_ev_check) but surfaces construction errors.
    pub fn diag_ev_eval(&self, id: u32, a: &Complex, k: &Complex) -> Result<bool> {
        self.diag_ev_inner(id, a, k)
    }
}
