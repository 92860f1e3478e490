//! Every derived transformation of the six-functor setup, built as an explicit
//! composite of units, counits, evaluations and the monoidal structure.

use super::{CommSquare, FiniteMap, SheafComplex, SheafMap, Sites};
use crate::error::{Error, Result};
use crate::monoidal::{compose_all, nat, product_adjunction, ClosedMonoidal, Functor, MateSquare, NatTrans};

fn id(a: &SheafComplex) -> SheafMap {
    SheafMap::identity(a)
}

fn assumption(name: &str, r: Result<SheafMap>) -> Result<SheafMap> {
    r.map_err(|e| match e {
        Error::NotInvertible(_) => Error::AssumptionViolated(name.to_string()),
        other => other,
    })
}

/// Endpoints and components of one base-change instance.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub eps: SheafMap,
    /// Present only when `eps` is invertible where `gam` needs it.
    pub gam: Option<SheafMap>,
}

impl Sites {
    /// `fh : f^*[A, B] -> [f^*A, f^*B]` for `A, B` over the target of `f`.
    pub fn fh(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let fa = self.pullback(f, a)?;
        let ab = cy.hom(a, b)?;
        let fab = self.pullback(f, &ab)?;
        compose_all(&[
            cx.coev_l(&fa, &fab)?,
            cx.hom_map(&id(&fa), &self.fp(f, &ab, a)?)?,
            cx.hom_map(&id(&fa), &self.pullback_map(f, &cy.ev_l(a, b)?)?)?,
        ])
    }

    /// `fg : f_*A (x) f_*B -> f_*(A (x) B)` for `A, B` over the source of `f`.
    pub fn fg(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let (pa, pb) = (self.pushforward(f, a)?, self.pushforward(f, b)?);
        let pab = cy.tensor(&pa, &pb)?;
        let counits = cx.tensor_map(&self.counit_star(f, a)?, &self.counit_star(f, b)?)?;
        compose_all(&[
            self.unit_star(f, &pab)?,
            self.pushforward_map(f, &self.fp_inv(f, &pa, &pb)?)?,
            self.pushforward_map(f, &counits)?,
        ])
    }

    /// `ff : f_*[A, B] -> [f_*A, f_*B]` for `A, B` over the source of `f`.
    pub fn ff(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let pa = self.pushforward(f, a)?;
        let ab = cx.hom(a, b)?;
        let pab = self.pushforward(f, &ab)?;
        compose_all(&[
            cy.coev_l(&pa, &pab)?,
            cy.hom_map(&id(&pa), &self.fg(f, &ab, a)?)?,
            cy.hom_map(&id(&pa), &self.pushforward_map(f, &cx.ev_l(a, b)?)?)?,
        ])
    }

    /// Projection morphism `q : f_*A (x) B -> f_*(A (x) f^*B)`, `A` over the source, `B` over the target.
    pub fn q(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let pa = self.pushforward(f, a)?;
        let pab = cy.tensor(&pa, b)?;
        let fb = self.pullback(f, b)?;
        compose_all(&[
            self.unit_star(f, &pab)?,
            self.pushforward_map(f, &self.fp_inv(f, &pa, b)?)?,
            self.pushforward_map(f, &cx.tensor_map(&self.counit_star(f, a)?, &id(&fb))?)?,
        ])
    }

    pub fn q_inv(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        assumption("projection formula: q is not invertible", self.q(f, a, b)?.inverse())
    }

    /// `qh : [A, f_*B] -> f_*[f^*A, B]`, `A` over the target, `B` over the source.
    pub fn qh(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let pb = self.pushforward(f, b)?;
        let hom = cy.hom(a, &pb)?;
        let fa = self.pullback(f, a)?;
        compose_all(&[
            self.unit_star(f, &hom)?,
            self.pushforward_map(f, &self.fh(f, a, &pb)?)?,
            self.pushforward_map(f, &cx.hom_map(&id(&fa), &self.counit_star(f, b)?)?)?,
        ])
    }

    /// `qh^{-1} : f_*[f^*A, B] -> [A, f_*B]` by its own composite.
    pub fn qh_inv(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let fa = self.pullback(f, a)?;
        let h = cx.hom(&fa, b)?;
        let ph = self.pushforward(f, &h)?;
        compose_all(&[
            cy.coev_l(a, &ph)?,
            cy.hom_map(&id(a), &self.q(f, &h, a)?)?,
            cy.hom_map(&id(a), &self.pushforward_map(f, &cx.ev_l(&fa, b)?)?)?,
        ])
    }

    /// `rr : f_*[A, f^!K] -> [f_*A, K]`, `A` over the source, `K` over the target.
    pub fn rr(&self, f: &FiniteMap, a: &SheafComplex, k: &SheafComplex) -> Result<SheafMap> {
        let cy = self.cat(f.target());
        let fk = self.shriek(f, k)?;
        let pa = self.pushforward(f, a)?;
        compose_all(&[self.ff(f, a, &fk)?, cy.hom_map(&id(&pa), &self.counit_shriek(f, k)?)?])
    }

    /// `sh' : [f^*A, f^!B] -> f^![A, B]` for `A, B` over the target.
    pub fn sh_prime(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let fb = self.shriek(f, b)?;
        let h = cx.hom(&self.pullback(f, a)?, &fb)?;
        compose_all(&[
            self.unit_shriek(f, &h)?,
            self.shriek_map(f, &self.qh_inv(f, a, &fb)?)?,
            self.shriek_map(f, &cy.hom_map(&id(a), &self.counit_shriek(f, b)?)?)?,
        ])
    }

    /// `sh : f^![A, B] -> [f^*A, f^!B]`, the inverse of `sh'`, defined when `q` is invertible.
    pub fn sh(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        assumption("projection formula: sh' is not invertible", self.sh_prime(f, a, b)?.inverse())
    }

    /// `sp : f^!A (x) f^*B -> f^!(A (x) B)` through `q^{-1}`.
    pub fn sp(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let fa = self.shriek(f, a)?;
        let s = cx.tensor(&fa, &self.pullback(f, b)?)?;
        compose_all(&[
            self.unit_shriek(f, &s)?,
            self.shriek_map(f, &self.q_inv(f, &fa, b)?)?,
            self.shriek_map(f, &cy.tensor_map(&self.counit_shriek(f, a)?, &id(b))?)?,
        ])
    }

    /// `sp` through `coev^l`, `sh` and `ev^l`.
    pub fn sp_alt(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let fb = self.pullback(f, b)?;
        let ab = cy.tensor(a, b)?;
        compose_all(&[
            cx.tensor_map(&self.shriek_map(f, &cy.coev_l(b, a)?)?, &id(&fb))?,
            cx.tensor_map(&self.sh(f, b, &ab)?, &id(&fb))?,
            cx.ev_l(&fb, &self.shriek(f, &ab)?)?,
        ])
    }

    /// `rr` as `counit^! o sh' o [counit^*, id]`.
    pub fn rr_alt(&self, f: &FiniteMap, a: &SheafComplex, k: &SheafComplex) -> Result<SheafMap> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let fk = self.shriek(f, k)?;
        let pa = self.pushforward(f, a)?;
        let hom = cy.hom(&pa, k)?;
        compose_all(&[
            self.pushforward_map(f, &cx.hom_map(&self.counit_star(f, a)?, &id(&fk))?)?,
            self.pushforward_map(f, &self.sh_prime(f, &pa, k)?)?,
            self.counit_shriek(f, &hom)?,
        ])
    }

    /// `q` as `fg o (id (x) unit^*)`.
    pub fn q_alt(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let cy = self.cat(f.target());
        let pa = self.pushforward(f, a)?;
        let fb = self.pullback(f, b)?;
        compose_all(&[cy.tensor_map(&id(&pa), &self.unit_star(f, b)?)?, self.fg(f, a, &fb)?])
    }

    /// `qh^{-1}` as `[unit^*, id] o ff`.
    pub fn qh_inv_alt(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let cy = self.cat(f.target());
        let fa = self.pullback(f, a)?;
        let pb = self.pushforward(f, b)?;
        compose_all(&[self.ff(f, &fa, b)?, cy.hom_map(&self.unit_star(f, a)?, &id(&pb))?])
    }

    /// The mate square giving `fh` from `fp` with parameter `X` over the target.
    pub fn fh_square(&self, f: &FiniteMap, x: &SheafComplex) -> Result<MateSquare<SheafMap, SheafMap, SheafMap, SheafMap>> {
        let fx = self.pullback(f, x)?;
        Ok(MateSquare {
            first: self.cat(f.target()).tensor_adjunction(x),
            second: self.cat(f.source()).tensor_adjunction(&fx),
            h: self.pullback_functor(f),
            h_prime: self.pullback_functor(f),
        })
    }

    /// `fh` at `(X, B)` computed as the mate of `fp`.
    pub fn fh_mate(&self, f: &FiniteMap, x: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let sq = self.fh_square(f, x)?;
        let (s, f2, x2) = (self.clone(), f.clone(), x.clone());
        let a = nat(move |y: &SheafComplex| s.fp(&f2, y, &x2));
        sq.mate(&a)(b)
    }

    /// The mate square giving `fg` from `fp^{-1}`.
    #[allow(clippy::type_complexity)]
    pub fn fg_square(
        &self,
        f: &FiniteMap,
    ) -> MateSquare<(SheafMap, SheafMap), (SheafMap, SheafMap), SheafMap, SheafMap> {
        let star = self.star_adjunction(f);
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let (cx2, cy2) = (cx.clone(), cy.clone());
        MateSquare {
            first: product_adjunction(&star, &star),
            second: star,
            h: Functor::new(
                "(x)",
                move |o: &(SheafComplex, SheafComplex)| cx.tensor(&o.0, &o.1),
                move |m: &(SheafMap, SheafMap)| cx2.tensor_map(&m.0, &m.1),
            ),
            h_prime: Functor::new(
                "(x)",
                move |o: &(SheafComplex, SheafComplex)| cy.tensor(&o.0, &o.1),
                move |m: &(SheafMap, SheafMap)| cy2.tensor_map(&m.0, &m.1),
            ),
        }
    }

    /// `fg` at `(A, B)` computed as the mate of `fp^{-1}`.
    pub fn fg_mate(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex) -> Result<SheafMap> {
        let sq = self.fg_square(f);
        let (s, f2) = (self.clone(), f.clone());
        let fp_inv = nat(move |o: &(SheafComplex, SheafComplex)| s.fp_inv(&f2, &o.0, &o.1));
        sq.mate(&fp_inv)(&(a.clone(), b.clone()))
    }

    /// `ea_{g,f} : f^* g^* A -> (gf)^* A`, the identity of stalks.
    pub fn ea(&self, g: &FiniteMap, f: &FiniteMap, a: &SheafComplex) -> Result<SheafMap> {
        let s = self.pullback(f, &self.pullback(g, a)?)?;
        let t = self.pullback(&g.compose(f)?, a)?;
        if s != t {
            return Err(Error::Shape("f^* g^* and (gf)^* disagree on objects".into()));
        }
        Ok(id(&s))
    }

    /// `eb_{g,f} : (gf)_* A -> g_* f_* A`, the canonical composite through both adjunctions.
    pub fn eb(&self, g: &FiniteMap, f: &FiniteMap, a: &SheafComplex) -> Result<SheafMap> {
        let gf = g.compose(f)?;
        let pa = self.pushforward(&gf, a)?;
        let gpa = self.pullback(g, &pa)?;
        let ea = self.ea(g, f, &pa)?;
        compose_all(&[
            self.unit_star(g, &pa)?,
            self.pushforward_map(g, &self.unit_star(f, &gpa)?)?,
            self.pushforward_map(g, &self.pushforward_map(f, &ea)?)?,
            self.pushforward_map(g, &self.pushforward_map(f, &self.counit_star(&gf, a)?)?)?,
        ])
    }

    /// `ec_{g,f} : f^! g^! A -> (gf)^! A`, the canonical composite through both adjunctions.
    pub fn ec(&self, g: &FiniteMap, f: &FiniteMap, a: &SheafComplex) -> Result<SheafMap> {
        let gf = g.compose(f)?;
        let ga = self.shriek(g, a)?;
        let fga = self.shriek(f, &ga)?;
        let eb = self.eb(g, f, &fga)?;
        compose_all(&[
            self.unit_shriek(&gf, &fga)?,
            self.shriek_map(&gf, &eb)?,
            self.shriek_map(&gf, &self.pushforward_map(g, &self.counit_shriek(f, &ga)?)?)?,
            self.shriek_map(&gf, &self.counit_shriek(g, a)?)?,
        ])
    }

    /// `xi : gbar^* f^* A -> fbar^* g^* A` through `(f gbar)^* = (g fbar)^*`.
    pub fn xi(&self, sq: &CommSquare, a: &SheafComplex) -> Result<SheafMap> {
        let to = self.ea(&sq.f, &sq.gbar, a)?;
        let back = self.ea(&sq.g, &sq.fbar, a)?.inverse()?;
        back.compose(&to)
    }

    /// The mate square producing `eps` from `xi`.
    pub fn eps_square(&self, sq: &CommSquare) -> MateSquare<SheafMap, SheafMap, SheafMap, SheafMap> {
        MateSquare {
            first: self.star_adjunction(&sq.g),
            second: self.star_adjunction(&sq.gbar),
            h: self.pullback_functor(&sq.fbar),
            h_prime: self.pullback_functor(&sq.f),
        }
    }

    pub fn xi_nat(&self, sq: &CommSquare) -> NatTrans<SheafComplex, SheafMap> {
        let (s, sq) = (self.clone(), sq.clone());
        nat(move |a: &SheafComplex| s.xi(&sq, a))
    }

    /// `eps : f^* g_* A -> gbar_* fbar^* A` for `A` over `X`, the mate of `xi`.
    pub fn eps(&self, sq: &CommSquare, a: &SheafComplex) -> Result<SheafMap> {
        self.eps_square(sq).mate(&self.xi_nat(sq))(a)
    }

    /// The mate square producing `gam` from `eps^{-1}`.
    pub fn gam_square(&self, sq: &CommSquare) -> MateSquare<SheafMap, SheafMap, SheafMap, SheafMap> {
        MateSquare {
            first: self.shriek_adjunction(&sq.g),
            second: self.shriek_adjunction(&sq.gbar),
            h: self.pullback_functor(&sq.f),
            h_prime: self.pullback_functor(&sq.fbar),
        }
    }

    pub fn eps_inv_nat(&self, sq: &CommSquare) -> NatTrans<SheafComplex, SheafMap> {
        let (s, sq) = (self.clone(), sq.clone());
        nat(move |a: &SheafComplex| assumption("base change: eps is not invertible", s.eps(&sq, a)?.inverse()))
    }

    /// `gam : fbar^* g^! K -> gbar^! f^* K` for `K` over `Z`, defined when `eps` is invertible at `g^! K`.
    pub fn gam(&self, sq: &CommSquare, k: &SheafComplex) -> Result<SheafMap> {
        self.gam_square(sq).mate(&self.eps_inv_nat(sq))(k)
    }

    /// `eps` at `b` (over `X`) and, when the assumption holds at `g^! k`, `gam` at `k` (over `Z`).
    pub fn base_change(&self, sq: &CommSquare, b: &SheafComplex, k: &SheafComplex) -> Result<BaseChange> {
        let eps = self.eps(sq, b)?;
        let gam = match self.gam(sq, k) {
            Ok(m) => Some(m),
            Err(Error::AssumptionViolated(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(BaseChange { eps, gam })
    }

    /// `omega'_f = f^!(1_Y)`.
    pub fn omega(&self, f: &FiniteMap) -> Result<SheafComplex> {
        self.shriek(f, &SheafComplex::unit(f.target(), self.p()))
    }

    /// `i'_{g,f} : omega'_f (x) f^* omega'_g -> omega'_{gf}`.
    pub fn i_prime(&self, g: &FiniteMap, f: &FiniteMap) -> Result<SheafMap> {
        let cy = self.cat(f.target());
        let one = SheafComplex::unit(f.target(), self.p());
        let wg = self.omega(g)?;
        let unit_z = SheafComplex::unit(g.target(), self.p());
        compose_all(&[
            self.sp(f, &one, &wg)?,
            self.shriek_map(f, &cy.lunit(&wg)?)?,
            self.ec(g, f, &unit_z)?,
        ])
    }

    /// Looks up a transformation by name. `maps` and `objs` follow the argument order of the method.
    pub fn transform(&self, name: &str, maps: &[FiniteMap], objs: &[SheafComplex]) -> Result<SheafMap> {
        let need = |m: usize, o: usize| -> Result<()> {
            if maps.len() != m || objs.len() != o {
                return Err(Error::Shape(format!(
                    "{name} takes {m} maps and {o} objects, got {} and {}",
                    maps.len(),
                    objs.len()
                )));
            }
            Ok(())
        };
        let square = || CommSquare::new(maps[0].clone(), maps[1].clone(), maps[2].clone(), maps[3].clone());
        match name {
            "fp" | "fh" | "fg" | "ff" | "q" | "qh" | "qh_inv" | "rr" | "sh_prime" | "sh" | "sp" | "sp_alt"
            | "rr_alt" | "q_alt" | "qh_inv_alt" | "fh_mate" | "fg_mate" => {
                need(1, 2)?;
                let (f, a, b) = (&maps[0], &objs[0], &objs[1]);
                match name {
                    "fp" => self.fp(f, a, b),
                    "fh" => self.fh(f, a, b),
                    "fg" => self.fg(f, a, b),
                    "ff" => self.ff(f, a, b),
                    "q" => self.q(f, a, b),
                    "qh" => self.qh(f, a, b),
                    "qh_inv" => self.qh_inv(f, a, b),
                    "rr" => self.rr(f, a, b),
                    "sh_prime" => self.sh_prime(f, a, b),
                    "sh" => self.sh(f, a, b),
                    "sp" => self.sp(f, a, b),
                    "sp_alt" => self.sp_alt(f, a, b),
                    "rr_alt" => self.rr_alt(f, a, b),
                    "q_alt" => self.q_alt(f, a, b),
                    "qh_inv_alt" => self.qh_inv_alt(f, a, b),
                    "fh_mate" => self.fh_mate(f, a, b),
                    _ => self.fg_mate(f, a, b),
                }
            }
            "unit_star" | "counit_star" | "unit_shriek" | "counit_shriek" => {
                need(1, 1)?;
                let (f, a) = (&maps[0], &objs[0]);
                match name {
                    "unit_star" => self.unit_star(f, a),
                    "counit_star" => self.counit_star(f, a),
                    "unit_shriek" => self.unit_shriek(f, a),
                    _ => self.counit_shriek(f, a),
                }
            }
            "dd" => {
                need(1, 4)?;
                self.cat(maps[0].source()).dd(&objs[0], &objs[1], &objs[2], &objs[3])
            }
            "ea" | "eb" | "ec" => {
                need(2, 1)?;
                let (g, f, a) = (&maps[0], &maps[1], &objs[0]);
                match name {
                    "ea" => self.ea(g, f, a),
                    "eb" => self.eb(g, f, a),
                    _ => self.ec(g, f, a),
                }
            }
            "i_prime" => {
                need(2, 0)?;
                self.i_prime(&maps[0], &maps[1])
            }
            "xi" | "eps" | "gam" => {
                need(4, 1)?;
                let sq = square()?;
                match name {
                    "xi" => self.xi(&sq, &objs[0]),
                    "eps" => self.eps(&sq, &objs[0]),
                    _ => self.gam(&sq, &objs[0]),
                }
            }
            other => Err(Error::NoSuchTransform(other.to_string())),
        }
    }
}
