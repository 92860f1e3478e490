//! The commutative diagrams of the six-functor setup, each an exact comparison of two
//! composites on one instance of maps and sheaf-complexes.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{random_map, random_set, random_sheaf, CommSquare, FiniteMap, FiniteMapJson, FiniteSet, SheafComplex, SheafComplexJson, SheafMap, Sites};
use crate::error::{Error, Result};
use crate::monoidal::{compose_all, nat, ClosedMonoidal};

/// How the maps of an instance fit together.
///
/// * `Map`: `f : X -> Y`, sets `[X, Y]`.
/// * `Chain2`: `f : X -> Y`, `g : Y -> Z`, sets `[X, Y, Z]`.
/// * `Chain3`: `f : X -> Y`, `g : Y -> Z`, `h : Z -> V`, sets `[X, Y, Z, V]`.
/// * `Square`: `f : Y -> Z`, `g : X -> Z`, `fbar : V -> X`, `gbar : V -> Y` with `V` the fibre
///   product, sets `[V, X, Y, Z]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Map,
    Chain2,
    Chain3,
    Square,
}

/// A diagram of the registry: its id, the shape of its maps and the base set of each object.
#[derive(Clone, Copy, Debug)]
pub struct SitesDiagram {
    pub id: &'static str,
    pub shape: Shape,
    pub objs: &'static [usize],
}

const fn d(id: &'static str, shape: Shape, objs: &'static [usize]) -> SitesDiagram {
    SitesDiagram { id, shape, objs }
}

use Shape::{Chain2, Chain3, Map, Square};

pub const SITES_DIAGRAMS: &[SitesDiagram] = &[
    d("Happ0", Map, &[1, 1]),
    d("H'app0", Map, &[0, 0]),
    d("D12", Map, &[0, 0]),
    d("Happ1", Map, &[0, 0]),
    d("H'app1", Map, &[0, 0]),
    d("Rapp1", Map, &[0, 1]),
    d("R'app1", Map, &[0, 1]),
    d("G1app1", Map, &[1, 1]),
    d("G2app1", Map, &[0, 1]),
    d("F1app1", Map, &[1, 1]),
    d("F2app1", Map, &[0, 1]),
    d("F1app2", Map, &[0, 1]),
    d("F2app2", Map, &[1, 1]),
    d("Rapp2", Map, &[1, 1]),
    d("R'app2", Map, &[1, 1]),
    d("G1app2", Map, &[0, 1]),
    d("G2app2", Map, &[1, 1]),
    d("Happ4", Map, &[0, 0, 0, 0]),
    d("H'app4", Map, &[0, 0, 0, 0]),
    d("D18", Chain3, &[3]),
    d("D19", Chain2, &[2, 2]),
    d("D20", Chain2, &[0, 0]),
    d("compAdj1", Chain2, &[2]),
    d("compAdj2", Chain2, &[0]),
    d("D22", Map, &[1, 1, 1]),
    d("D23", Map, &[0, 0, 0]),
    d("D24", Map, &[0, 1, 1]),
    d("D25", Map, &[0, 0, 1]),
    d("D26", Chain2, &[0, 2]),
    d("Happ3", Square, &[3]),
    d("H'app3", Square, &[1]),
    d("D27", Square, &[1, 3]),
    d("D28", Square, &[1, 3]),
    d("D29", Square, &[3, 3]),
    d("D30", Map, &[1, 1, 1, 1]),
    d("D31", Map, &[0, 1, 1, 1]),
    d("D32", Map, &[0, 0, 1, 1]),
    d("cocycle", Chain3, &[]),
    d("mate.fh", Map, &[1, 1]),
    d("mate.fg", Map, &[0, 0]),
    d("alt.q", Map, &[0, 1]),
    d("alt.qh", Map, &[1, 0]),
    d("alt.rr", Map, &[0, 1]),
    d("alt.sp", Map, &[1, 1]),
    d("adj.star", Map, &[1, 0]),
    d("adj.shriek", Map, &[0, 1]),
    d("adj.duality", Map, &[0, 0]),
    d("inv.q", Map, &[0, 1]),
    d("inv.eps", Square, &[1]),
];

pub fn sites_diagram(id: &str) -> Option<&'static SitesDiagram> {
    SITES_DIAGRAMS.iter().find(|d| d.id == id)
}

/// Maps and objects of one instance, in the order fixed by the diagram's [`Shape`].
#[derive(Clone, Debug, PartialEq)]
pub struct SitesInstance {
    pub maps: Vec<FiniteMap>,
    pub objs: Vec<SheafComplex>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SitesInstanceJson {
    pub maps: Vec<FiniteMapJson>,
    pub objs: Vec<SheafComplexJson>,
}

impl SitesInstance {
    pub fn to_json(&self) -> SitesInstanceJson {
        SitesInstanceJson {
            maps: self.maps.iter().map(FiniteMap::to_json).collect(),
            objs: self.objs.iter().map(SheafComplex::to_json).collect(),
        }
    }

    pub fn from_json(j: &SitesInstanceJson) -> Result<SitesInstance> {
        Ok(SitesInstance {
            maps: j.maps.iter().map(FiniteMap::from_json).collect::<Result<_>>()?,
            objs: j.objs.iter().map(SheafComplex::from_json).collect::<Result<_>>()?,
        })
    }

    /// A short human-readable description: set sizes and total stalk dimensions.
    pub fn summary(&self) -> String {
        let maps: Vec<String> = self.maps.iter().map(|m| format!("{}->{}", m.source().len(), m.target().len())).collect();
        let objs: Vec<String> = self.objs.iter().map(|o| o.total_dim().to_string()).collect();
        format!("maps [{}], object dims [{}]", maps.join(", "), objs.join(", "))
    }
}

/// Size bounds for random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SitesSize {
    pub max_set: usize,
    pub max_len: usize,
    pub max_dim: usize,
}

fn shape_sets<R: Rng + ?Sized>(rng: &mut R, shape: Shape, max_set: usize) -> Result<(Vec<FiniteSet>, Vec<FiniteMap>)> {
    match shape {
        Map | Chain2 | Chain3 => {
            let n = match shape {
                Map => 2,
                Chain2 => 3,
                _ => 4,
            };
            let names = ["X", "Y", "Z", "V"];
            let sets: Vec<FiniteSet> = (0..n).map(|i| random_set(rng, names[i], max_set, i == 0)).collect();
            let maps = (0..n - 1).map(|i| random_map(rng, &sets[i], &sets[i + 1])).collect();
            Ok((sets, maps))
        }
        Square => {
            let z = random_set(rng, "Z", max_set, false);
            let x = random_set(rng, "X", max_set, true);
            let y = random_set(rng, "Y", max_set, true);
            let f = random_map(rng, &y, &z);
            let g = random_map(rng, &x, &z);
            let sq = CommSquare::cartesian(&f, &g)?;
            let v = sq.fbar.source().clone();
            Ok((vec![v, x, y, z], vec![sq.f, sq.g, sq.fbar, sq.gbar]))
        }
    }
}

/// A random instance for `diagram`.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, diagram: &SitesDiagram, p: u32, size: SitesSize) -> Result<SitesInstance> {
    random_instance_with(rng, diagram, p, size, |_| size)
}

/// Like [`random_instance`], with the size of object `n` given by `obj_size(n)`.
pub fn random_instance_with<R: Rng + ?Sized>(
    rng: &mut R,
    diagram: &SitesDiagram,
    p: u32,
    size: SitesSize,
    obj_size: impl Fn(usize) -> SitesSize,
) -> Result<SitesInstance> {
    let (sets, maps) = shape_sets(rng, diagram.shape, size.max_set)?;
    let objs = diagram
        .objs
        .iter()
        .enumerate()
        .map(|(n, &i)| {
            let s = obj_size(n);
            random_sheaf(rng, &sets[i], p, s.max_len, s.max_dim)
        })
        .collect();
    Ok(SitesInstance { maps, objs })
}

fn agree(lhs: Result<SheafMap>, rhs: Result<SheafMap>) -> Result<bool> {
    Ok(lhs? == rhs?)
}

fn id(a: &SheafComplex) -> SheafMap {
    SheafMap::identity(a)
}

impl Sites {
    /// Runs diagram `id` on `inst`.
    ///
    /// Construction failures propagate as errors; callers that score mutated structures
    /// treat any error other than an unknown id as a failed check.
    pub fn check_diagram(&self, diagram_id: &str, inst: &SitesInstance) -> Result<bool> {
        let diagram = sites_diagram(diagram_id).ok_or_else(|| Error::UnknownDiagram(diagram_id.to_string()))?;
        let want_maps = match diagram.shape {
            Map => 1,
            Chain2 => 2,
            Chain3 => 3,
            Square => 4,
        };
        if inst.maps.len() != want_maps || inst.objs.len() != diagram.objs.len() {
            return Err(Error::Shape(format!("{diagram_id}: wrong number of maps or objects")));
        }
        let m = &inst.maps;
        let o = &inst.objs;
        match diagram.shape {
            Map => self.check_map(diagram_id, &m[0], o),
            Chain2 => self.check_chain2(diagram_id, &m[0], &m[1], o),
            Chain3 => self.check_chain3(diagram_id, &m[0], &m[1], &m[2], o),
            Square => {
                let sq = CommSquare::new(m[0].clone(), m[1].clone(), m[2].clone(), m[3].clone())?;
                self.check_square(diagram_id, &sq, o)
            }
        }
    }

    fn check_map(&self, name: &str, f: &FiniteMap, o: &[SheafComplex]) -> Result<bool> {
        let (cx, cy) = (self.cat(f.source()), self.cat(f.target()));
        match name {
            "adj.star" => {
                let adj = self.star_adjunction(f);
                Ok(adj.left_triangle(&o[0])? && adj.right_triangle(&o[1])?)
            }
            "adj.shriek" => {
                let adj = self.shriek_adjunction(f);
                Ok(adj.left_triangle(&o[0])? && adj.right_triangle(&o[1])?)
            }
            "adj.duality" => self.duality(&o[1]).triangles(&o[0]),
            "inv.q" => Ok(self.q(f, &o[0], &o[1])?.is_invertible()),
            "Happ0" => {
                let (a, x) = (&o[0], &o[1]);
                let ax = cy.tensor(a, x)?;
                agree(
                    compose_all(&[
                        cy.tensor_map(&self.unit_star(f, a)?, &self.unit_star(f, x)?)?,
                        self.fg(f, &self.pullback(f, a)?, &self.pullback(f, x)?)?,
                    ]),
                    compose_all(&[self.unit_star(f, &ax)?, self.pushforward_map(f, &self.fp_inv(f, a, x)?)?]),
                )
            }
            "H'app0" => {
                let (a, x) = (&o[0], &o[1]);
                let (pa, px) = (self.pushforward(f, a)?, self.pushforward(f, x)?);
                agree(
                    compose_all(&[self.pullback_map(f, &self.fg(f, a, x)?)?, self.counit_star(f, &cx.tensor(a, x)?)?]),
                    compose_all(&[
                        self.fp_inv(f, &pa, &px)?,
                        cx.tensor_map(&self.counit_star(f, a)?, &self.counit_star(f, x)?)?,
                    ]),
                )
            }
            "D12" => {
                let (a, b) = (&o[0], &o[1]);
                let (pa, pb) = (self.pushforward(f, a)?, self.pushforward(f, b)?);
                agree(
                    compose_all(&[self.fg(f, a, b)?, self.pushforward_map(f, &cx.sym(a, b)?)?]),
                    compose_all(&[cy.sym(&pa, &pb)?, self.fg(f, b, a)?]),
                )
            }
            "Happ1" => {
                let (a, x) = (&o[0], &o[1]);
                let (pa, px) = (self.pushforward(f, a)?, self.pushforward(f, x)?);
                let ax = cx.tensor(a, x)?;
                agree(
                    compose_all(&[self.pushforward_map(f, &cx.coev_l(x, a)?)?, self.ff(f, x, &ax)?]),
                    compose_all(&[cy.coev_l(&px, &pa)?, cy.hom_map(&id(&px), &self.fg(f, a, x)?)?]),
                )
            }
            "H'app1" => {
                let (a, x) = (&o[0], &o[1]);
                let px = self.pushforward(f, x)?;
                let xa = cx.hom(x, a)?;
                agree(
                    compose_all(&[
                        cy.tensor_map(&self.ff(f, x, a)?, &id(&px))?,
                        cy.ev_l(&px, &self.pushforward(f, a)?)?,
                    ]),
                    compose_all(&[self.fg(f, &xa, x)?, self.pushforward_map(f, &cx.ev_l(x, a)?)?]),
                )
            }
            "Rapp1" => {
                let (a, x) = (&o[0], &o[1]);
                let pa = self.pushforward(f, a)?;
                let fx = self.pullback(f, x)?;
                agree(
                    compose_all(&[cy.coev_l(x, &pa)?, cy.hom_map(&id(x), &self.q(f, a, x)?)?]),
                    compose_all(&[
                        self.pushforward_map(f, &cx.coev_l(&fx, a)?)?,
                        self.qh_inv(f, x, &cx.tensor(a, &fx)?)?,
                    ]),
                )
            }
            "R'app1" => {
                let (a, x) = (&o[0], &o[1]);
                let fx = self.pullback(f, x)?;
                let h = cx.hom(&fx, a)?;
                agree(
                    compose_all(&[self.q(f, &h, x)?, self.pushforward_map(f, &cx.ev_l(&fx, a)?)?]),
                    compose_all(&[
                        cy.tensor_map(&self.qh_inv(f, x, a)?, &id(x))?,
                        cy.ev_l(x, &self.pushforward(f, a)?)?,
                    ]),
                )
            }
            "G1app1" => {
                let (a, x) = (&o[0], &o[1]);
                agree(
                    compose_all(&[
                        cy.tensor_map(&self.unit_star(f, a)?, &id(x))?,
                        self.q(f, &self.pullback(f, a)?, x)?,
                    ]),
                    compose_all(&[
                        self.unit_star(f, &cy.tensor(a, x)?)?,
                        self.pushforward_map(f, &self.fp_inv(f, a, x)?)?,
                    ]),
                )
            }
            "G2app1" => {
                let (a, x) = (&o[0], &o[1]);
                let fx = self.pullback(f, x)?;
                agree(
                    compose_all(&[
                        self.pullback_map(f, &self.q(f, a, x)?)?,
                        self.counit_star(f, &cx.tensor(a, &fx)?)?,
                    ]),
                    compose_all(&[
                        self.fp_inv(f, &self.pushforward(f, a)?, x)?,
                        cx.tensor_map(&self.counit_star(f, a)?, &id(&fx))?,
                    ]),
                )
            }
            "F1app1" => {
                let (a, x) = (&o[0], &o[1]);
                agree(
                    compose_all(&[
                        cy.hom_map(&id(x), &self.unit_star(f, a)?)?,
                        self.qh(f, x, &self.pullback(f, a)?)?,
                    ]),
                    compose_all(&[
                        self.unit_star(f, &cy.hom(x, a)?)?,
                        self.pushforward_map(f, &self.fh(f, x, a)?)?,
                    ]),
                )
            }
            "F2app1" => {
                let (a, x) = (&o[0], &o[1]);
                let fx = self.pullback(f, x)?;
                agree(
                    compose_all(&[
                        self.pullback_map(f, &self.qh(f, x, a)?)?,
                        self.counit_star(f, &cx.hom(&fx, a)?)?,
                    ]),
                    compose_all(&[
                        self.fh(f, x, &self.pushforward(f, a)?)?,
                        cx.hom_map(&id(&fx), &self.counit_star(f, a)?)?,
                    ]),
                )
            }
            "F1app2" => {
                let (a, x) = (&o[0], &o[1]);
                let fx = self.pullback(f, x)?;
                agree(
                    compose_all(&[
                        cx.hom_map(&id(&fx), &self.unit_shriek(f, a)?)?,
                        self.sh_prime(f, x, &self.pushforward(f, a)?)?,
                    ]),
                    compose_all(&[
                        self.unit_shriek(f, &cx.hom(&fx, a)?)?,
                        self.shriek_map(f, &self.qh_inv(f, x, a)?)?,
                    ]),
                )
            }
            "F2app2" => {
                let (a, x) = (&o[0], &o[1]);
                agree(
                    compose_all(&[
                        self.pushforward_map(f, &self.sh_prime(f, x, a)?)?,
                        self.counit_shriek(f, &cy.hom(x, a)?)?,
                    ]),
                    compose_all(&[
                        self.qh_inv(f, x, &self.shriek(f, a)?)?,
                        cy.hom_map(&id(x), &self.counit_shriek(f, a)?)?,
                    ]),
                )
            }
            "Rapp2" => {
                let (a, x) = (&o[0], &o[1]);
                let fx = self.pullback(f, x)?;
                agree(
                    compose_all(&[
                        cx.coev_l(&fx, &self.shriek(f, a)?)?,
                        cx.hom_map(&id(&fx), &self.sp(f, a, x)?)?,
                    ]),
                    compose_all(&[
                        self.shriek_map(f, &cy.coev_l(x, a)?)?,
                        self.sh(f, x, &cy.tensor(a, x)?)?,
                    ]),
                )
            }
            "R'app2" => {
                let (a, x) = (&o[0], &o[1]);
                let fx = self.pullback(f, x)?;
                let xa = cy.hom(x, a)?;
                agree(
                    compose_all(&[self.sp(f, &xa, x)?, self.shriek_map(f, &cy.ev_l(x, a)?)?]),
                    compose_all(&[
                        cx.tensor_map(&self.sh(f, x, a)?, &id(&fx))?,
                        cx.ev_l(&fx, &self.shriek(f, a)?)?,
                    ]),
                )
            }
            "G1app2" => {
                let (a, x) = (&o[0], &o[1]);
                let fx = self.pullback(f, x)?;
                agree(
                    compose_all(&[
                        cx.tensor_map(&self.unit_shriek(f, a)?, &id(&fx))?,
                        self.sp(f, &self.pushforward(f, a)?, x)?,
                    ]),
                    compose_all(&[
                        self.unit_shriek(f, &cx.tensor(a, &fx)?)?,
                        self.shriek_map(f, &self.q_inv(f, a, x)?)?,
                    ]),
                )
            }
            "G2app2" => {
                let (a, x) = (&o[0], &o[1]);
                agree(
                    compose_all(&[
                        self.pushforward_map(f, &self.sp(f, a, x)?)?,
                        self.counit_shriek(f, &cy.tensor(a, x)?)?,
                    ]),
                    compose_all(&[
                        self.q_inv(f, &self.shriek(f, a)?, x)?,
                        cy.tensor_map(&self.counit_shriek(f, a)?, &id(x))?,
                    ]),
                )
            }
            "Happ4" => {
                let (x1, x2, k, m) = (&o[0], &o[1], &o[2], &o[3]);
                let (x1k, x2m) = (cx.hom(x1, k)?, cx.hom(x2, m)?);
                let x12 = cx.tensor(x1, x2)?;
                let km = cx.tensor(k, m)?;
                agree(
                    compose_all(&[cx.tensor_map(&cx.dd(x1, x2, k, m)?, &id(&x12))?, cx.ev_l(&x12, &km)?]),
                    compose_all(&[
                        cx.exch(&x1k, &x2m, x1, x2)?,
                        cx.tensor_map(&cx.ev_l(x1, k)?, &cx.ev_l(x2, m)?)?,
                    ]),
                )
            }
            "H'app4" => {
                let (x1, x2, k, m) = (&o[0], &o[1], &o[2], &o[3]);
                let x12 = cx.tensor(x1, x2)?;
                let km = cx.tensor(k, m)?;
                let (kx1, mx2) = (cx.tensor(k, x1)?, cx.tensor(m, x2)?);
                agree(
                    compose_all(&[
                        cx.tensor_map(&cx.coev_l(x1, k)?, &cx.coev_l(x2, m)?)?,
                        cx.dd(x1, x2, &kx1, &mx2)?,
                    ]),
                    compose_all(&[cx.coev_l(&x12, &km)?, cx.hom_map(&id(&x12), &cx.exch(k, m, x1, x2)?)?]),
                )
            }
            "D22" => {
                let (a, b, c) = (&o[0], &o[1], &o[2]);
                let (fa, fb, fc) = (self.pullback(f, a)?, self.pullback(f, b)?, self.pullback(f, c)?);
                let (ab, bc) = (cy.tensor(a, b)?, cy.tensor(b, c)?);
                agree(
                    compose_all(&[
                        cx.tensor_map(&self.fp(f, a, b)?, &id(&fc))?,
                        self.fp(f, &ab, c)?,
                        self.pullback_map(f, &cy.assoc(a, b, c)?)?,
                    ]),
                    compose_all(&[
                        cx.assoc(&fa, &fb, &fc)?,
                        cx.tensor_map(&id(&fa), &self.fp(f, b, c)?)?,
                        self.fp(f, a, &bc)?,
                    ]),
                )
            }
            "D23" => {
                let (a, b, c) = (&o[0], &o[1], &o[2]);
                let (pa, pb, pc) = (self.pushforward(f, a)?, self.pushforward(f, b)?, self.pushforward(f, c)?);
                let (ab, bc) = (cx.tensor(a, b)?, cx.tensor(b, c)?);
                agree(
                    compose_all(&[
                        cy.tensor_map(&self.fg(f, a, b)?, &id(&pc))?,
                        self.fg(f, &ab, c)?,
                        self.pushforward_map(f, &cx.assoc(a, b, c)?)?,
                    ]),
                    compose_all(&[
                        cy.assoc(&pa, &pb, &pc)?,
                        cy.tensor_map(&id(&pa), &self.fg(f, b, c)?)?,
                        self.fg(f, a, &bc)?,
                    ]),
                )
            }
            "D24" => {
                let (a, b, c) = (&o[0], &o[1], &o[2]);
                let pa = self.pushforward(f, a)?;
                let (fb, fc) = (self.pullback(f, b)?, self.pullback(f, c)?);
                let afb = cx.tensor(a, &fb)?;
                let bc = cy.tensor(b, c)?;
                agree(
                    compose_all(&[cy.tensor_map(&self.q(f, a, b)?, &id(c))?, self.q(f, &afb, c)?]),
                    compose_all(&[
                        cy.assoc(&pa, b, c)?,
                        self.q(f, a, &bc)?,
                        self.pushforward_map(f, &cx.tensor_map(&id(a), &self.fp_inv(f, b, c)?)?)?,
                        self.pushforward_map(f, &cx.assoc_inv(a, &fb, &fc)?)?,
                    ]),
                )
            }
            "D25" => {
                let (a, b, c) = (&o[0], &o[1], &o[2]);
                let (pa, pb) = (self.pushforward(f, a)?, self.pushforward(f, b)?);
                let fc = self.pullback(f, c)?;
                let ab = cx.tensor(a, b)?;
                agree(
                    compose_all(&[cy.tensor_map(&self.fg(f, a, b)?, &id(c))?, self.q(f, &ab, c)?]),
                    compose_all(&[
                        cy.assoc(&pa, &pb, c)?,
                        cy.tensor_map(&id(&pa), &self.q(f, b, c)?)?,
                        self.fg(f, a, &cx.tensor(b, &fc)?)?,
                        self.pushforward_map(f, &cx.assoc_inv(a, b, &fc)?)?,
                    ]),
                )
            }
            "D30" => {
                let (a, b, k, m) = (&o[0], &o[1], &o[2], &o[3]);
                let (fa, fb, fk, fm) = (self.pullback(f, a)?, self.pullback(f, b)?, self.pullback(f, k)?, self.pullback(f, m)?);
                let fafb = cx.tensor(&fa, &fb)?;
                let fkm = self.pullback(f, &cy.tensor(k, m)?)?;
                let (ak, bm) = (cy.hom(a, k)?, cy.hom(b, m)?);
                agree(
                    compose_all(&[
                        cx.tensor_map(&self.fh(f, a, k)?, &self.fh(f, b, m)?)?,
                        cx.dd(&fa, &fb, &fk, &fm)?,
                        cx.hom_map(&id(&fafb), &self.fp(f, k, m)?)?,
                    ]),
                    compose_all(&[
                        self.fp(f, &ak, &bm)?,
                        self.pullback_map(f, &cy.dd(a, b, k, m)?)?,
                        self.fh(f, &cy.tensor(a, b)?, &cy.tensor(k, m)?)?,
                        cx.hom_map(&self.fp(f, a, b)?, &id(&fkm))?,
                    ]),
                )
            }
            "D31" => {
                let (a, b, k, m) = (&o[0], &o[1], &o[2], &o[3]);
                let pa = self.pushforward(f, a)?;
                let (fb, fm, sk) = (self.pullback(f, b)?, self.pullback(f, m)?, self.shriek(f, k)?);
                let bm = cy.hom(b, m)?;
                let ask = cx.hom(a, &sk)?;
                let afb = cx.tensor(a, &fb)?;
                let km = cy.tensor(k, m)?;
                agree(
                    compose_all(&[
                        cy.tensor_map(&self.rr(f, a, k)?, &id(&bm))?,
                        cy.dd(&pa, b, k, m)?,
                    ]),
                    compose_all(&[
                        self.q(f, &ask, &bm)?,
                        self.pushforward_map(f, &cx.tensor_map(&id(&ask), &self.fh(f, b, m)?)?)?,
                        self.pushforward_map(f, &cx.dd(a, &fb, &sk, &fm)?)?,
                        self.pushforward_map(f, &cx.hom_map(&id(&afb), &self.sp(f, k, m)?)?)?,
                        self.rr(f, &afb, &km)?,
                        cy.hom_map(&self.q(f, a, b)?, &id(&km))?,
                    ]),
                )
            }
            "D32" => {
                let (a, n, b, m) = (&o[0], &o[1], &o[2], &o[3]);
                let (pa, pn) = (self.pushforward(f, a)?, self.pushforward(f, n)?);
                let (fb, fm) = (self.pullback(f, b)?, self.pullback(f, m)?);
                let (an, bm) = (cx.hom(a, n)?, cy.hom(b, m)?);
                let afb = cx.tensor(a, &fb)?;
                let nfm = cx.tensor(n, &fm)?;
                let paf = self.pushforward(f, &afb)?;
                let pnm = cy.tensor(&pn, m)?;
                agree(
                    compose_all(&[cy.tensor_map(&self.ff(f, a, n)?, &id(&bm))?, cy.dd(&pa, b, &pn, m)?]),
                    compose_all(&[
                        self.q(f, &an, &bm)?,
                        self.pushforward_map(f, &cx.tensor_map(&id(&an), &self.fh(f, b, m)?)?)?,
                        self.pushforward_map(f, &cx.dd(a, &fb, n, &fm)?)?,
                        self.ff(f, &afb, &nfm)?,
                        cy.hom_map(&id(&paf), &self.q_inv(f, n, m)?)?,
                        cy.hom_map(&self.q(f, a, b)?, &id(&pnm))?,
                    ]),
                )
            }
            "mate.fh" => agree(self.fh(f, &o[0], &o[1]), self.fh_mate(f, &o[0], &o[1])),
            "mate.fg" => agree(self.fg(f, &o[0], &o[1]), self.fg_mate(f, &o[0], &o[1])),
            "alt.q" => agree(self.q(f, &o[0], &o[1]), self.q_alt(f, &o[0], &o[1])),
            "alt.qh" => agree(self.qh_inv(f, &o[0], &o[1]), self.qh_inv_alt(f, &o[0], &o[1])),
            "alt.rr" => agree(self.rr(f, &o[0], &o[1]), self.rr_alt(f, &o[0], &o[1])),
            "alt.sp" => agree(self.sp(f, &o[0], &o[1]), self.sp_alt(f, &o[0], &o[1])),
            other => Err(Error::UnknownDiagram(other.to_string())),
        }
    }

    fn check_chain2(&self, name: &str, f: &FiniteMap, g: &FiniteMap, o: &[SheafComplex]) -> Result<bool> {
        let gf = g.compose(f)?;
        let cx = self.cat(f.source());
        let cz = self.cat(g.target());
        match name {
            "D19" => {
                let (a, b) = (&o[0], &o[1]);
                let (ga, gb) = (self.pullback(g, a)?, self.pullback(g, b)?);
                let ab = cz.tensor(a, b)?;
                agree(
                    compose_all(&[
                        self.fp(f, &ga, &gb)?,
                        self.pullback_map(f, &self.fp(g, a, b)?)?,
                        self.ea(g, f, &ab)?,
                    ]),
                    compose_all(&[
                        cx.tensor_map(&self.ea(g, f, a)?, &self.ea(g, f, b)?)?,
                        self.fp(&gf, a, b)?,
                    ]),
                )
            }
            "D20" => {
                let (a, b) = (&o[0], &o[1]);
                let (pa, pb) = (self.pushforward(f, a)?, self.pushforward(f, b)?);
                let ab = cx.tensor(a, b)?;
                agree(
                    compose_all(&[self.fg(&gf, a, b)?, self.eb(g, f, &ab)?]),
                    compose_all(&[
                        cz.tensor_map(&self.eb(g, f, a)?, &self.eb(g, f, b)?)?,
                        self.fg(g, &pa, &pb)?,
                        self.pushforward_map(g, &self.fg(f, a, b)?)?,
                    ]),
                )
            }
            "compAdj1" => {
                let a = &o[0];
                let ga = self.pullback(g, a)?;
                agree(
                    compose_all(&[self.unit_star(&gf, a)?, self.eb(g, f, &self.pullback(&gf, a)?)?]),
                    compose_all(&[
                        self.unit_star(g, a)?,
                        self.pushforward_map(g, &self.unit_star(f, &ga)?)?,
                        self.pushforward_map(g, &self.pushforward_map(f, &self.ea(g, f, a)?)?)?,
                    ]),
                )
            }
            "compAdj2" => {
                let a = &o[0];
                let pa = self.pushforward(&gf, a)?;
                let pfa = self.pushforward(f, a)?;
                agree(
                    compose_all(&[
                        self.pullback_map(f, &self.pullback_map(g, &self.eb(g, f, a)?)?)?,
                        self.pullback_map(f, &self.counit_star(g, &pfa)?)?,
                        self.counit_star(f, a)?,
                    ]),
                    compose_all(&[self.ea(g, f, &pa)?, self.counit_star(&gf, a)?]),
                )
            }
            "D26" => {
                let (a, k) = (&o[0], &o[1]);
                let gk = self.shriek(g, k)?;
                let fgk = self.shriek(f, &gk)?;
                let pa = self.pushforward(f, a)?;
                agree(
                    compose_all(&[
                        self.pushforward_map(&gf, &cx.hom_map(&id(a), &self.ec(g, f, k)?)?)?,
                        self.rr(&gf, a, k)?,
                    ]),
                    compose_all(&[
                        self.eb(g, f, &cx.hom(a, &fgk)?)?,
                        self.pushforward_map(g, &self.rr(f, a, &gk)?)?,
                        self.rr(g, &pa, k)?,
                        cz.hom_map(&self.eb(g, f, a)?, &id(k))?,
                    ]),
                )
            }
            other => Err(Error::UnknownDiagram(other.to_string())),
        }
    }

    fn check_chain3(&self, name: &str, f: &FiniteMap, g: &FiniteMap, h: &FiniteMap, o: &[SheafComplex]) -> Result<bool> {
        let gf = g.compose(f)?;
        let hg = h.compose(g)?;
        match name {
            "D18" => {
                let a = &o[0];
                agree(
                    compose_all(&[self.ea(g, f, &self.pullback(h, a)?)?, self.ea(h, &gf, a)?]),
                    compose_all(&[self.pullback_map(f, &self.ea(h, g, a)?)?, self.ea(&hg, f, a)?]),
                )
            }
            "cocycle" => {
                let cx = self.cat(f.source());
                let (wf, wg, wh) = (self.omega(f)?, self.omega(g)?, self.omega(h)?);
                let fwg = self.pullback(f, &wg)?;
                let gwh = self.pullback(g, &wh)?;
                agree(
                    compose_all(&[
                        cx.tensor_map(&id(&wf), &self.pullback_map(f, &self.i_prime(h, g)?)?)?,
                        self.i_prime(&hg, f)?,
                    ]),
                    compose_all(&[
                        cx.tensor_map(&id(&wf), &self.fp_inv(f, &wg, &gwh)?)?,
                        cx.tensor_map(&id(&wf), &cx.tensor_map(&id(&fwg), &self.ea(g, f, &wh)?)?)?,
                        cx.assoc_inv(&wf, &fwg, &self.pullback(&gf, &wh)?)?,
                        cx.tensor_map(&self.i_prime(g, f)?, &id(&self.pullback(&gf, &wh)?))?,
                        self.i_prime(h, &gf)?,
                    ]),
                )
            }
            other => Err(Error::UnknownDiagram(other.to_string())),
        }
    }

    fn check_square(&self, name: &str, sq: &CommSquare, o: &[SheafComplex]) -> Result<bool> {
        let (f, g, fbar, gbar) = (&sq.f, &sq.g, &sq.fbar, &sq.gbar);
        let (cv, cy) = (self.cat(fbar.source()), self.cat(f.source()));
        match name {
            "inv.eps" => Ok(self.eps(sq, &o[0])?.is_invertible()),
            "Happ3" | "H'app3" => {
                let msq = self.gam_square(sq);
                let a = self.eps_inv_nat(sq);
                let (s, sq2) = (self.clone(), sq.clone());
                let b = nat(move |k: &SheafComplex| s.gam(&sq2, k));
                if name == "Happ3" {
                    msq.check_h(&a, &b, &o[0])
                } else {
                    msq.check_h_prime(&a, &b, &o[0])
                }
            }
            "D27" => {
                let (a, k) = (&o[0], &o[1]);
                let gk = self.shriek(g, k)?;
                let pa = self.pushforward(g, a)?;
                let fk = self.pullback(f, k)?;
                let fbar_a = self.pullback(fbar, a)?;
                agree(
                    compose_all(&[
                        self.pullback_map(f, &self.rr(g, a, k)?)?,
                        self.fh(f, &pa, k)?,
                    ]),
                    compose_all(&[
                        self.eps(sq, &self.cat(g.source()).hom(a, &gk)?)?,
                        self.pushforward_map(gbar, &self.fh(fbar, a, &gk)?)?,
                        self.pushforward_map(gbar, &cv.hom_map(&id(&fbar_a), &self.gam(sq, k)?)?)?,
                        self.rr(gbar, &fbar_a, &fk)?,
                        cy.hom_map(&self.eps(sq, a)?, &id(&fk))?,
                    ]),
                )
            }
            "D28" => {
                let (a, b) = (&o[0], &o[1]);
                let gb = self.pullback(g, b)?;
                let fb = self.pullback(f, b)?;
                let fbar_a = self.pullback(fbar, a)?;
                agree(
                    compose_all(&[
                        cy.tensor_map(&self.eps(sq, a)?, &id(&fb))?,
                        self.q(gbar, &fbar_a, &fb)?,
                        self.pushforward_map(gbar, &cv.tensor_map(&id(&fbar_a), &self.xi(sq, b)?)?)?,
                        self.pushforward_map(gbar, &self.fp(fbar, a, &gb)?)?,
                    ]),
                    compose_all(&[
                        self.fp(f, &self.pushforward(g, a)?, b)?,
                        self.pullback_map(f, &self.q(g, a, b)?)?,
                        self.eps(sq, &self.cat(g.source()).tensor(a, &gb)?)?,
                    ]),
                )
            }
            "D29" => {
                let (a, b) = (&o[0], &o[1]);
                let (ga, gb) = (self.shriek(g, a)?, self.pullback(g, b)?);
                let (fa, fb) = (self.pullback(f, a)?, self.pullback(f, b)?);
                agree(
                    compose_all(&[
                        cv.tensor_map(&self.gam(sq, a)?, &self.xi(sq, b)?.inverse()?)?,
                        self.sp(gbar, &fa, &fb)?,
                        self.shriek_map(gbar, &self.fp(f, a, b)?)?,
                    ]),
                    compose_all(&[
                        self.fp(fbar, &ga, &gb)?,
                        self.pullback_map(fbar, &self.sp(g, a, b)?)?,
                        self.gam(sq, &self.cat(g.target()).tensor(a, b)?)?,
                    ]),
                )
            }
            other => Err(Error::UnknownDiagram(other.to_string())),
        }
    }
}
