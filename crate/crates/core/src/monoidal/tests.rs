use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::complex::{random_chain_map, random_complex, random_complex_with};
use crate::signs::Symbol;

fn ctx() -> StructuralContext {
    StructuralContext::standard(3).unwrap()
}

fn small(seed: u64) -> Complex {
    random_complex(seed, 3, 3, 2)
}

#[test]
fn tensor_dims_oracle() {
    let a = Complex::graded(3, 0, vec![2, 3]);
    let b = Complex::graded(3, 0, vec![1, 2]);
    let t = ctx().tensor(&a, &b).unwrap();
    assert_eq!(t.min_degree(), 0);
    assert_eq!(t.dims(), &[2, 7, 6]);
}

#[test]
fn tensor_sign_oracle() {
    let a = Complex::line(3, 1);
    let b = Complex::disc(3, 1);
    let t = ctx().tensor(&a, &b).unwrap();
    assert_eq!(t.diff(2), Matrix::from_rows(3, &[vec![-1]]).unwrap());
}

#[test]
fn hom_sign_oracle() {
    let a = Complex::line(3, 1);
    let b = Complex::disc(3, 1);
    let h = ctx().hom(&a, &b).unwrap();
    assert_eq!(h.min_degree(), -1);
    assert_eq!(h.diff(0), Matrix::from_rows(3, &[vec![-1]]).unwrap());
}

#[test]
fn symmetry_of_odd_lines_oracle() {
    let l = Complex::line(3, 1);
    let c = ctx().sym(&l, &l).unwrap();
    assert_eq!(c.comp(2), Matrix::from_rows(3, &[vec![2]]).unwrap());
}

#[test]
fn unit_is_neutral() {
    let s = ctx();
    let a = small(3);
    assert_eq!(s.tensor(&s.unit(), &a).unwrap(), a);
    assert!(s.lunit(&a).unwrap().is_identity());
    assert!(s.runit(&a).unwrap().is_identity());
}

#[test]
fn tensor_and_hom_are_complexes() {
    let s = ctx();
    for seed in 0..20 {
        let (a, b) = (small(seed), small(seed + 100));
        assert!(s.tensor(&a, &b).unwrap().validate());
        assert!(s.hom(&a, &b).unwrap().validate());
    }
}

#[test]
fn structural_maps_certify() {
    let s = ctx();
    for seed in 0..10 {
        let (a, b, c) = (small(seed), small(seed + 1), small(seed + 2));
        let names = ["lunit", "assoc", "c", "tp1", "tp2", "th1", "th2", "ev_l", "coev_l", "ev_r", "coev_r", "bid", "exch"];
        for name in names {
            let k = match name {
                "lunit" => 1,
                "assoc" => 3,
                "exch" => 4,
                _ => 2,
            };
            let objs = [a.clone(), b.clone(), c.clone(), a.clone()];
            let m = s.structural(name, &objs[..k]).unwrap();
            assert!(m.is_chain_map(), "{name} seed {seed}");
        }
    }
    assert!(matches!(s.structural("nope", &[]), Err(Error::NoSuchTransform(_))));
    assert!(matches!(s.structural("c", &[small(0)]), Err(Error::Shape(_))));
}

#[test]
fn coherence_on_random_complexes() {
    let s = ctx();
    for seed in 0..8 {
        let (a, b, c, d) = (small(seed), small(seed + 10), small(seed + 20), small(seed + 30));
        assert!(s.pentagon(&a, &b, &c, &d).unwrap(), "pentagon {seed}");
        assert!(s.hexagon1(&a, &b, &c).unwrap(), "hexagon1 {seed}");
        assert!(s.hexagon2(&a, &b, &c).unwrap(), "hexagon2 {seed}");
        assert!(s.symmetry_involution(&a, &b).unwrap());
        assert!(s.square_s(&a, &b).unwrap(), "square {seed}");
        assert!(s.tp_square_anticommutes(&a, &c).unwrap(), "tp square {seed}");
        for w in 0..3 {
            assert!(s.assoc_tp(w, &a, &b, &c).unwrap(), "assoc_tp {w} {seed}");
        }
    }
}

#[test]
fn diag_ev_all_hold() {
    let s = ctx();
    for seed in 0..6 {
        let (a, k) = (small(seed), small(seed + 50));
        for id in 4..=11 {
            assert!(s.diag_ev_eval(id, &a, &k).unwrap(), "D{id} seed {seed}");
        }
    }
    assert!(matches!(s.diag_ev_check(12, &small(0), &small(1)), Err(Error::UnknownDiagram(_))));
}

#[test]
fn flipped_th2_breaks_diagram_four() {
    let signs = s_flip(Symbol::Th2);
    let s = StructuralContext::unchecked(signs, PrimeField::new(3).unwrap());
    let broken = (0..10).any(|seed| !s.diag_ev_check(4, &small(seed), &small(seed + 7)).unwrap());
    assert!(broken);
}

fn s_flip(sym: Symbol) -> crate::signs::SignAssignment {
    default_assignment(1, 1).flipped(sym)
}

#[test]
fn triangles_and_ath_round_trip() {
    let s = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..6 {
        let (a, x, y) = (small(seed), small(seed + 3), small(seed + 6));
        assert!(s.tensor_hom_triangles(&a, &x, &y).unwrap());
        let adj = s.tensor_adjunction_r(&a);
        assert!(adj.left_triangle(&x).unwrap() && adj.right_triangle(&y).unwrap());
        let b = random_complex_with(&mut rng, 3, 2, 2);
        let ab = s.tensor(&a, &b).unwrap();
        let phi = random_chain_map(&mut rng, &ab, &y);
        assert!(s.ath_round_trip(&a, &b, &phi).unwrap());
    }
}

#[test]
fn eq1_and_bid_for_lines() {
    let s = ctx();
    for seed in 0..6 {
        let a = small(seed);
        for k in [Complex::unit(3), Complex::line(3, 1), Complex::line(3, -2), small(seed + 9)] {
            assert!(s.eq1(&a, &k).unwrap(), "eq1 seed {seed}");
        }
        for n in [-1, 0, 2] {
            assert!(s.bid(&a, &Complex::line(3, n)).unwrap().is_invertible());
        }
    }
}

#[test]
fn dd_is_invertible_for_lines() {
    let s = ctx();
    let (a, b) = (small(1), small(2));
    let dd = s.dd(&a, &b, &Complex::line(3, 1), &Complex::line(3, 0)).unwrap();
    assert!(dd.is_chain_map());
    assert!(dd.is_invertible());
}
