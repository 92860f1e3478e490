use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::diagrams::{random_instance, SitesSize, SITES_DIAGRAMS};
use super::*;
use crate::complex::Complex;
use crate::field::Matrix;

fn sites() -> Sites {
    Sites::standard(3).unwrap()
}

fn pt() -> FiniteSet {
    FiniteSet::named("*", 1)
}

fn two() -> FiniteSet {
    FiniteSet::named("x", 2)
}

fn collapse() -> FiniteMap {
    FiniteMap::to_point(&two(), &pt()).unwrap()
}

fn line(dim: usize) -> Complex {
    Complex::graded(3, 0, vec![dim])
}

fn small() -> SitesSize {
    SitesSize { max_set: 3, max_len: 2, max_dim: 2 }
}

#[test]
fn pushforward_sums_fibre() {
    let s = sites();
    let a = SheafComplex::new(two(), 3, vec![line(1), line(2)]).unwrap();
    let pa = s.pushforward(&collapse(), &a).unwrap();
    assert_eq!(pa.stalk(0).dim(0), 3);
}

#[test]
fn pullback_along_identity_is_identity() {
    let s = sites();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = two();
    let a = random_sheaf(&mut rng, &x, 3, 2, 2);
    assert_eq!(s.pullback(&FiniteMap::identity(&x), &a).unwrap(), a);
    let b = SheafComplex::new(pt(), 3, vec![line(2)]).unwrap();
    let fb = s.pullback(&collapse(), &b).unwrap();
    assert_eq!(fb.stalk(0), b.stalk(0));
    assert_eq!(fb.stalk(1), b.stalk(0));
}

#[test]
fn base_mismatch_is_an_error() {
    let s = sites();
    let a = SheafComplex::unit(&pt(), 3);
    assert!(matches!(s.pushforward(&collapse(), &a), Err(Error::BaseMismatch(_))));
}

#[test]
fn shriek_counit_is_summation() {
    let s = sites();
    let b = SheafComplex::new(pt(), 3, vec![line(1)]).unwrap();
    let e = s.counit_shriek(&collapse(), &b).unwrap();
    assert_eq!(e.comp(0).comp(0), Matrix::from_rows(3, &[vec![1, 1]]).unwrap());
}

#[test]
fn q_for_identity_is_identity() {
    let s = sites();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = two();
    let id = FiniteMap::identity(&x);
    for _ in 0..10 {
        let a = random_sheaf(&mut rng, &x, 3, 2, 2);
        let b = random_sheaf(&mut rng, &x, 3, 2, 2);
        assert!(s.q(&id, &a, &b).unwrap().is_identity());
    }
}

#[test]
fn q_on_two_points_is_invertible_4x4() {
    let s = sites();
    let a = SheafComplex::new(two(), 3, vec![line(1), line(1)]).unwrap();
    let b = SheafComplex::new(pt(), 3, vec![line(2)]).unwrap();
    let q = s.q(&collapse(), &a, &b).unwrap();
    let m = q.comp(0).comp(0);
    assert_eq!((m.rows(), m.cols()), (4, 4));
    assert!(q.is_invertible());
}

#[test]
fn adjunction_triangles() {
    let s = sites();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let x = random_set(&mut rng, "X", 3, true);
        let y = random_set(&mut rng, "Y", 3, false);
        let f = random_map(&mut rng, &x, &y);
        let a = random_sheaf(&mut rng, &x, 3, 2, 2);
        let b = random_sheaf(&mut rng, &y, 3, 2, 2);
        let star = s.star_adjunction(&f);
        assert!(star.left_triangle(&b).unwrap());
        assert!(star.right_triangle(&a).unwrap());
        let shriek = s.shriek_adjunction(&f);
        assert!(shriek.left_triangle(&a).unwrap());
        assert!(shriek.right_triangle(&b).unwrap());
    }
}

#[test]
fn transform_registry_errors() {
    let s = sites();
    let a = SheafComplex::unit(&two(), 3);
    assert!(matches!(s.transform("nope", &[collapse()], std::slice::from_ref(&a)), Err(Error::NoSuchTransform(_))));
    assert!(matches!(s.transform("q", &[collapse()], &[a]), Err(Error::Shape(_))));
}

#[test]
fn identity_square_has_identity_eps() {
    let s = sites();
    let x = two();
    let id = FiniteMap::identity(&x);
    let sq = CommSquare::new(id.clone(), id.clone(), id.clone(), id).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = random_sheaf(&mut rng, &x, 3, 2, 2);
    assert!(s.eps(&sq, &a).unwrap().is_identity());
}

#[test]
fn cartesian_square_has_invertible_eps() {
    let s = sites();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = FiniteMap::to_point(&FiniteSet::named("y", 1), &pt()).unwrap();
    let g = collapse();
    let sq = CommSquare::cartesian(&f, &g).unwrap();
    assert!(sq.is_cartesian());
    for _ in 0..20 {
        let a = random_sheaf(&mut rng, g.source(), 3, 2, 2);
        let k = random_sheaf(&mut rng, g.target(), 3, 2, 2);
        let bc = s.base_change(&sq, &a, &k).unwrap();
        assert!(bc.eps.is_invertible());
        assert!(bc.gam.is_some());
    }
}

#[test]
fn empty_corner_breaks_eps() {
    let s = sites();
    let (p, e) = (pt(), FiniteSet::empty());
    let id = FiniteMap::identity(&p);
    let from_empty = FiniteMap::new(e.clone(), p.clone(), vec![]).unwrap();
    let sq = CommSquare::new(id.clone(), id, from_empty.clone(), from_empty).unwrap();
    assert!(!sq.is_cartesian());
    let b = SheafComplex::new(p.clone(), 3, vec![line(1)]).unwrap();
    let bc = s.base_change(&sq, &b, &b).unwrap();
    assert!(!bc.eps.is_invertible());
    assert!(bc.gam.is_none());
    assert!(matches!(s.gam(&sq, &b), Err(Error::AssumptionViolated(_))));
}

#[test]
fn omega_is_unit() {
    let s = sites();
    let f = collapse();
    assert_eq!(s.omega(&f).unwrap(), SheafComplex::unit(f.source(), 3));
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let f = collapse();
    let j = serde_json::to_string(&f.to_json()).unwrap();
    let back = FiniteMap::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, f);
    let a = random_sheaf(&mut rng, &two(), 3, 2, 2);
    let back = SheafComplex::from_json(&a.to_json()).unwrap();
    assert_eq!(back, a);
}

#[test]
fn every_registered_diagram_commutes() {
    let s = sites();
    for d in SITES_DIAGRAMS {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..4 {
            let inst = random_instance(&mut rng, d, 3, small()).unwrap();
            let ok = s.check_diagram(d.id, &inst).unwrap_or_else(|e| panic!("{} trial {trial}: {e}", d.id));
            assert!(ok, "{} failed on {}", d.id, inst.summary());
        }
    }
}
