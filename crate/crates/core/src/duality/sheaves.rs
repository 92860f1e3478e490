//! Duality-preserving functors of the sheaf model, `<f^*, fh>`, `<f_*, rr>` and
//! `<(x), dd>`, and the P- and M-diagrams relating them.

use rand::Rng;

use super::{check_m, product_dp, tensor_dp, DPFunctor, Duality, SymmetricForm};
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::monoidal::{nat, ClosedMonoidal, NatTrans};
use crate::sites::diagrams::{random_instance_with, Shape, SitesDiagram, SitesInstance, SitesSize};
use crate::sites::{CommSquare, FiniteMap, FiniteSet, SheafComplex, SheafMap, Sites};

type SheafDP = DPFunctor<SheafMap, SheafMap>;

const fn d(id: &'static str, shape: Shape, objs: &'static [usize]) -> SitesDiagram {
    SitesDiagram { id, shape, objs }
}

/// P-diagrams of the three basic duality-preserving functors and M-diagrams of the
/// comparison morphisms, on the same instance shapes as the sites registry.
pub const DP_DIAGRAMS: &[SitesDiagram] = &[
    d("P.pullback", Shape::Map, &[1, 1]),
    d("P.pushforward", Shape::Map, &[0, 1]),
    d("P.product", Shape::Map, &[0, 0, 0, 0]),
    d("M.ea", Shape::Chain2, &[2, 2]),
    d("M.eb", Shape::Chain2, &[0, 2]),
    d("M.eps", Shape::Square, &[1, 3]),
    d("M.fp", Shape::Map, &[1, 1, 1, 1]),
    d("M.q", Shape::Map, &[0, 1, 1, 1]),
];

/// Dualizing objects of the product diagrams are drawn from stalks of length and dimension
/// at most 1: the biduals of `[A (x) B, K (x) M]` grow with the fourth power of `K (x) M`.
pub fn dp_random_instance<R: Rng + ?Sized>(rng: &mut R, diagram: &SitesDiagram, p: u32, size: SitesSize) -> Result<SitesInstance> {
    let product = matches!(diagram.id, "P.product" | "M.fp" | "M.q");
    let small = SitesSize { max_set: size.max_set, max_len: 1, max_dim: 1 };
    random_instance_with(rng, diagram, p, size, |n| if product && n >= 2 { small } else { size })
}

pub fn dp_diagram(id: &str) -> Option<&'static SitesDiagram> {
    DP_DIAGRAMS.iter().find(|d| d.id == id)
}

impl Sites {
    /// `(C_X, D_K, bid_K)` for `K` over `X`.
    pub fn duality(&self, k: &SheafComplex) -> Duality<SheafMap> {
        Duality::of(&self.cat(k.base()), k)
    }

    /// `<f^*, fh_K>` from `(C_Y, D_K)` to `(C_X, D_{f^*K})`.
    pub fn pullback_dp(&self, f: &FiniteMap, k: &SheafComplex) -> Result<SheafDP> {
        let fk = self.pullback(f, k)?;
        let (s, f1, k1) = (self.clone(), f.clone(), k.clone());
        Ok(DPFunctor {
            functor: self.pullback_functor(f),
            phi: nat(move |a: &SheafComplex| s.fh(&f1, a, &k1)),
            source: self.duality(k),
            target: self.duality(&fk),
        })
    }

    /// `<f_*, rr_K>` from `(C_X, D_{f^!K})` to `(C_Y, D_K)`.
    pub fn pushforward_dp(&self, f: &FiniteMap, k: &SheafComplex) -> Result<SheafDP> {
        let sk = self.shriek(f, k)?;
        let (s, f1, k1) = (self.clone(), f.clone(), k.clone());
        Ok(DPFunctor {
            functor: self.pushforward_functor(f),
            phi: nat(move |a: &SheafComplex| s.rr(&f1, a, &k1)),
            source: self.duality(&sk),
            target: self.duality(k),
        })
    }

    /// `I_iota` for a map `iota : K -> M` of sheaf-complexes.
    pub fn induced_dp(&self, iota: &SheafMap) -> SheafDP {
        DPFunctor::induced(&self.cat(iota.source().base()), iota)
    }

    /// The degree-0 form into `1_X` whose stalk at `x` has Gram matrix `grams[x]`.
    pub fn form_from_grams(&self, base: &FiniteSet, grams: &[Matrix]) -> Result<SymmetricForm<SheafMap>> {
        if grams.len() != base.len() {
            return Err(Error::Shape(format!("{} Gram matrices for {} points", grams.len(), base.len())));
        }
        let stalks = grams.iter().map(|g| self.ctx().form_from_gram(g)).collect::<Result<Vec<_>>>()?;
        let a = SheafComplex::new(base.clone(), self.p(), stalks.iter().map(|s| s.obj.clone()).collect())?;
        let one = SheafComplex::unit(base, self.p());
        let da = self.cat(base).hom(&a, &one)?;
        let form = SheafMap::new(a, da, stalks.into_iter().map(|s| s.form).collect())?;
        SymmetricForm::new(&self.duality(&one), form)
    }

    /// Runs a P- or M-diagram of [`DP_DIAGRAMS`] on `inst`.
    pub fn check_dp_diagram(&self, diagram_id: &str, inst: &SitesInstance) -> Result<bool> {
        let diagram = dp_diagram(diagram_id).ok_or_else(|| Error::UnknownDiagram(diagram_id.to_string()))?;
        let want_maps = match diagram.shape {
            Shape::Map => 1,
            Shape::Chain2 => 2,
            Shape::Chain3 => 3,
            Shape::Square => 4,
        };
        if inst.maps.len() != want_maps || inst.objs.len() != diagram.objs.len() {
            return Err(Error::Shape(format!("{diagram_id}: wrong number of maps or objects")));
        }
        let (m, o) = (&inst.maps, &inst.objs);
        match diagram_id {
            "P.pullback" => self.pullback_dp(&m[0], &o[1])?.check_p(&o[0]),
            "P.pushforward" => self.pushforward_dp(&m[0], &o[1])?.check_p(&o[0]),
            "P.product" => {
                let cx = self.cat(m[0].source());
                tensor_dp(&cx, &o[2], &o[3])?.check_p(&(o[0].clone(), o[1].clone()))
            }
            "M.ea" => self.m_ea(&m[1], &m[0], &o[0], &o[1]),
            "M.eb" => self.m_eb(&m[1], &m[0], &o[0], &o[1]),
            "M.eps" => {
                let sq = CommSquare::new(m[0].clone(), m[1].clone(), m[2].clone(), m[3].clone())?;
                self.m_eps(&sq, &o[0], &o[1])
            }
            "M.fp" => self.m_fp(&m[0], &o[0], &o[1], &o[2], &o[3]),
            "M.q" => self.m_q(&m[0], &o[0], &o[1], &o[2], &o[3]),
            other => Err(Error::UnknownDiagram(other.to_string())),
        }
    }

    /// `ea` from `I_{ea_K} <f^*, fh_{g^*K}> <g^*, fh_K>` to `<(gf)^*, fh_K>`, at `a` over `Z`.
    pub fn m_ea(&self, g: &FiniteMap, f: &FiniteMap, a: &SheafComplex, k: &SheafComplex) -> Result<bool> {
        let gk = self.pullback(g, k)?;
        let lhs = self
            .pullback_dp(g, k)?
            .then(&self.pullback_dp(f, &gk)?)?
            .then(&self.induced_dp(&self.ea(g, f, k)?))?;
        let rhs = self.pullback_dp(&g.compose(f)?, k)?;
        let (s, g1, f1) = (self.clone(), g.clone(), f.clone());
        let rho: NatTrans<SheafComplex, SheafMap> = nat(move |x: &SheafComplex| s.ea(&g1, &f1, x));
        check_m(&rho, &lhs, &rhs, a)
    }

    /// `eb` from `<(gf)_*, rr_K> I_{ec_K}` to `<g_*, rr_K> <f_*, rr_{g^!K}>`, at `a` over `X`.
    pub fn m_eb(&self, g: &FiniteMap, f: &FiniteMap, a: &SheafComplex, k: &SheafComplex) -> Result<bool> {
        let gk = self.shriek(g, k)?;
        let lhs = self.induced_dp(&self.ec(g, f, k)?).then(&self.pushforward_dp(&g.compose(f)?, k)?)?;
        let rhs = self.pushforward_dp(f, &gk)?.then(&self.pushforward_dp(g, k)?)?;
        let (s, g1, f1) = (self.clone(), g.clone(), f.clone());
        let rho: NatTrans<SheafComplex, SheafMap> = nat(move |x: &SheafComplex| s.eb(&g1, &f1, x));
        check_m(&rho, &lhs, &rhs, a)
    }

    /// `eps` from `<f^*, fh_K> <g_*, rr_K>` to `<gbar_*, rr_{f^*K}> I_{gam_K} <fbar^*, fh_{g^!K}>`,
    /// at `a` over `X`, `k` over `Z`.
    pub fn m_eps(&self, sq: &CommSquare, a: &SheafComplex, k: &SheafComplex) -> Result<bool> {
        let gk = self.shriek(&sq.g, k)?;
        let fk = self.pullback(&sq.f, k)?;
        let lhs = self.pushforward_dp(&sq.g, k)?.then(&self.pullback_dp(&sq.f, k)?)?;
        let rhs = self
            .pullback_dp(&sq.fbar, &gk)?
            .then(&self.induced_dp(&self.gam(sq, k)?))?
            .then(&self.pushforward_dp(&sq.gbar, &fk)?)?;
        let (s, sq1) = (self.clone(), sq.clone());
        let rho: NatTrans<SheafComplex, SheafMap> = nat(move |x: &SheafComplex| s.eps(&sq1, x));
        check_m(&rho, &lhs, &rhs, a)
    }

    /// `fp` from `I_{fp_{K,M}} <(x), dd> <f^* x f^*, fh_K x fh_M>` to `<f^*, fh_{K(x)M}> <(x), dd_{K,M}>`,
    /// at `(a, b)` over `Y`.
    pub fn m_fp(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex, k: &SheafComplex, m: &SheafComplex) -> Result<bool> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let (fk, fm) = (self.pullback(f, k)?, self.pullback(f, m)?);
        let lhs = product_dp(&self.pullback_dp(f, k)?, &self.pullback_dp(f, m)?)
            .then(&tensor_dp(&cx, &fk, &fm)?)?
            .then(&self.induced_dp(&self.fp(f, k, m)?))?;
        let rhs = tensor_dp(&cy, k, m)?.then(&self.pullback_dp(f, &cy.tensor(k, m)?)?)?;
        let (s, f1) = (self.clone(), f.clone());
        let rho: NatTrans<(SheafComplex, SheafComplex), SheafMap> =
            nat(move |x: &(SheafComplex, SheafComplex)| s.fp(&f1, &x.0, &x.1));
        check_m(&rho, &lhs, &rhs, &(a.clone(), b.clone()))
    }

    /// `q` from `<(x), dd_{K,M}> <f_* x Id, rr_K x id>` to
    /// `<f_*, rr_{K(x)M}> I_{sp_{K,M}} <(x), dd_{f^!K, f^*M}> <Id x f^*, id x fh_M>`,
    /// at `a` over `X`, `b` over `Y`.
    pub fn m_q(&self, f: &FiniteMap, a: &SheafComplex, b: &SheafComplex, k: &SheafComplex, m: &SheafComplex) -> Result<bool> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        let (sk, fm) = (self.shriek(f, k)?, self.pullback(f, m)?);
        let km = cy.tensor(k, m)?;
        let lhs = product_dp(&self.pushforward_dp(f, k)?, &DPFunctor::identity(&self.duality(m))).then(&tensor_dp(&cy, k, m)?)?;
        let rhs = product_dp(&DPFunctor::identity(&self.duality(&sk)), &self.pullback_dp(f, m)?)
            .then(&tensor_dp(&cx, &sk, &fm)?)?
            .then(&self.induced_dp(&self.sp(f, k, m)?))?
            .then(&self.pushforward_dp(f, &km)?)?;
        let (s, f1) = (self.clone(), f.clone());
        let rho: NatTrans<(SheafComplex, SheafComplex), SheafMap> =
            nat(move |x: &(SheafComplex, SheafComplex)| s.q(&f1, &x.0, &x.1));
        check_m(&rho, &lhs, &rhs, &(a.clone(), b.clone()))
    }
}
