//! Checks on plain complexes: Eq1 and the duality functors on `C`, diagrams 4 to 11, the
//! monoidal coherence laws and the closure of tensor and internal Hom.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{random_chain_map, random_complex_with, ChainMap, ChainMapJson, Complex, ComplexJson};
use crate::duality::complexes::SUSPENDED_BID_SIGN;
use crate::duality::{tensor_dp, DPFunctor};
use crate::error::{Error, Result};
use crate::monoidal::StructuralContext;

/// A complex-level check: id, number of objects, and a one-line statement of what is compared.
#[derive(Clone, Copy, Debug)]
pub struct ComplexDiagram {
    pub id: &'static str,
    pub objs: usize,
    pub about: &'static str,
}

const fn d(id: &'static str, objs: usize, about: &'static str) -> ComplexDiagram {
    ComplexDiagram { id, objs, about }
}

pub const COMPLEX_DIAGRAMS: &[ComplexDiagram] = &[
    d("EQ1", 2, "D(bid_A) o bid_DA = id for D = [-, K]"),
    d("EQ1.suspended", 2, "Eq1 for the suspended duality T(C, D_K, bid)"),
    d("D4", 2, "ev^l against th2 and tp1"),
    d("D5", 2, "ev^r against th2 and tp2"),
    d("D6", 2, "coev^l against th2 and tp1"),
    d("D7", 2, "coev^r against th2 and tp2"),
    d("D8", 2, "ev^l against th1 and the tp square"),
    d("D9", 2, "ev^r against th1 and the tp square"),
    d("D10", 2, "coev^l against th1, th2 and tp2"),
    d("D11", 2, "coev^r against th1, th2 and tp1"),
    d("tp.anticommute", 2, "the two tp composites on TA (x) TC differ by -1"),
    d("pentagon", 4, "Mac Lane pentagon for asso"),
    d("hexagon1", 3, "first hexagon for asso and c"),
    d("hexagon2", 3, "second hexagon for asso and c"),
    d("symmetry", 2, "c_{B,A} o c_{A,B} = id"),
    d("square.s", 2, "tp2 o c = T(c) o tp1"),
    d("assoc.tp1", 3, "tp against asso, suspension on the first factor"),
    d("assoc.tp2", 3, "tp against asso, suspension on the second factor"),
    d("assoc.tp3", 3, "tp against asso, suspension on the third factor"),
    d("adj.tensor", 3, "triangle identities of (- (x) B) -| [B, -]"),
    d("ath.roundtrip", 3, "ath and its inverse are mutually inverse; ath(ev) = id"),
    d("closure", 2, "A (x) B and [A, B] are complexes"),
    d("P.DTK", 2, "<Id, th2> from D_{TK} to T(D_K) preserves the duality"),
    d("P.induced", 3, "<Id, [-, iota]> from D_K to D_M preserves the duality"),
    d("P.tensor", 4, "<(x), dd> preserves the duality on complexes"),
    d("I.compose", 4, "I_kappa I_iota = I_{kappa iota}"),
    d("inv.bid", 2, "bid_K is invertible for K a shifted unit"),
];

pub fn complex_diagram(id: &str) -> Option<&'static ComplexDiagram> {
    COMPLEX_DIAGRAMS.iter().find(|d| d.id == id)
}

/// Objects and auxiliary maps of one complex-level instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexInstance {
    pub objs: Vec<Complex>,
    pub maps: Vec<ChainMap>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexInstanceJson {
    pub objs: Vec<ComplexJson>,
    pub maps: Vec<ChainMapJson>,
}

impl ComplexInstance {
    pub fn to_json(&self) -> ComplexInstanceJson {
        ComplexInstanceJson {
            objs: self.objs.iter().map(Complex::to_json).collect(),
            maps: self.maps.iter().map(ChainMap::to_json).collect(),
        }
    }

    pub fn from_json(j: &ComplexInstanceJson) -> Result<ComplexInstance> {
        Ok(ComplexInstance {
            objs: j.objs.iter().map(Complex::from_json).collect::<Result<_>>()?,
            maps: j.maps.iter().map(ChainMap::from_json).collect::<Result<_>>()?,
        })
    }

    pub fn summary(&self) -> String {
        let objs: Vec<String> = self
            .objs
            .iter()
            .map(|o| if o.is_zero() { "0".to_string() } else { format!("{}@{}", o.total_dim(), o.min_degree()) })
            .collect();
        format!("object dims [{}], {} maps", objs.join(", "), self.maps.len())
    }
}

/// Objects past this index are dualizing objects drawn at length and dimension 1.
fn small_from(id: &str) -> usize {
    match id {
        "P.tensor" => 2,
        _ => usize::MAX,
    }
}

impl StructuralContext {
    /// A random instance of `diagram` with complexes of at most `max_len` degrees of dimension `max_dim`.
    pub fn random_complex_instance<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        diagram: &ComplexDiagram,
        max_len: usize,
        max_dim: usize,
    ) -> Result<ComplexInstance> {
        let p = self.p();
        let cut = small_from(diagram.id);
        let mut objs: Vec<Complex> = (0..diagram.objs)
            .map(|n| if n >= cut { random_complex_with(rng, p, 1, 1) } else { random_complex_with(rng, p, max_len, max_dim) })
            .collect();
        let mut maps = vec![];
        match diagram.id {
            "inv.bid" => objs[1] = Complex::line(p, rng.gen_range(-2..=2)),
            "ath.roundtrip" => {
                let ab = self.tensor(&objs[0], &objs[1])?;
                maps.push(random_chain_map(rng, &ab, &objs[2]));
            }
            "P.induced" => maps.push(random_chain_map(rng, &objs[1], &objs[2])),
            "I.compose" => {
                maps.push(random_chain_map(rng, &objs[1], &objs[2]));
                maps.push(random_chain_map(rng, &objs[2], &objs[3]));
            }
            _ => {}
        }
        Ok(ComplexInstance { objs, maps })
    }

    /// Runs complex-level check `id` on `inst`.
    pub fn check_complex_diagram(&self, id: &str, inst: &ComplexInstance) -> Result<bool> {
        let diagram = complex_diagram(id).ok_or_else(|| Error::UnknownDiagram(id.to_string()))?;
        let want_maps = match id {
            "ath.roundtrip" | "P.induced" => 1,
            "I.compose" => 2,
            _ => 0,
        };
        if inst.objs.len() != diagram.objs || inst.maps.len() != want_maps {
            return Err(Error::Shape(format!("{id}: wrong number of objects or maps")));
        }
        let o = &inst.objs;
        let m = &inst.maps;
        match id {
            "EQ1" => self.duality(&o[1]).eq1(&o[0]),
            "EQ1.suspended" => self.suspended_duality(&o[1], SUSPENDED_BID_SIGN).eq1(&o[0]),
            "D4" | "D5" | "D6" | "D7" | "D8" | "D9" | "D10" | "D11" => {
                let n: u32 = id[1..].parse().expect("registry id");
                self.diag_ev_eval(n, &o[0], &o[1])
            }
            "tp.anticommute" => self.tp_square_anticommutes(&o[0], &o[1]),
            "pentagon" => self.pentagon(&o[0], &o[1], &o[2], &o[3]),
            "hexagon1" => self.hexagon1(&o[0], &o[1], &o[2]),
            "hexagon2" => self.hexagon2(&o[0], &o[1], &o[2]),
            "symmetry" => self.symmetry_involution(&o[0], &o[1]),
            "square.s" => self.square_s(&o[0], &o[1]),
            "assoc.tp1" => self.assoc_tp(0, &o[0], &o[1], &o[2]),
            "assoc.tp2" => self.assoc_tp(1, &o[0], &o[1], &o[2]),
            "assoc.tp3" => self.assoc_tp(2, &o[0], &o[1], &o[2]),
            "adj.tensor" => self.tensor_hom_triangles(&o[0], &o[1], &o[2]),
            "ath.roundtrip" => self.ath_round_trip(&o[0], &o[1], &m[0]),
            "closure" => Ok(self.tensor(&o[0], &o[1])?.validate() && self.hom(&o[0], &o[1])?.validate()),
            "P.DTK" => self.suspension_dp(&o[1], SUSPENDED_BID_SIGN).check_p(&o[0]),
            "P.induced" => DPFunctor::induced(self, &m[0]).check_p(&o[0]),
            "P.tensor" => tensor_dp(self, &o[2], &o[3])?.check_p(&(o[0].clone(), o[1].clone())),
            "I.compose" => {
                let both = DPFunctor::induced(self, &m[0]).then(&DPFunctor::induced(self, &m[1]))?;
                let direct = DPFunctor::induced(self, &m[1].compose(&m[0])?);
                Ok(both.phi_at(&o[0])? == direct.phi_at(&o[0])? && both.check_p(&o[0])?)
            }
            "inv.bid" => Ok(self.duality(&o[1]).bid(&o[0])?.is_invertible()),
            other => Err(Error::UnknownDiagram(other.to_string())),
        }
    }
}
