use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::complexes::{gram_of, SUSPENDED_BID_SIGN};
use super::sheaves::{dp_random_instance, DP_DIAGRAMS};
use super::*;
use crate::complex::{random_chain_map, random_complex_with, ChainMap, Complex};
use crate::field::Matrix;
use crate::monoidal::StructuralContext;
use crate::sites::diagrams::SitesSize;
use crate::sites::{FiniteMap, FiniteSet, Sites};

fn ctx() -> StructuralContext {
    StructuralContext::standard(3).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gram(rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_rows(3, rows).unwrap()
}

#[test]
fn degree_zero_bidual_is_plain_double_dual() {
    let c = ctx();
    let a = c.degree_zero(3);
    let bid = c.duality(&c.unit()).bid(&a).unwrap();
    assert!(bid.comp(0).is_identity());
}

#[test]
fn eq1_and_strongness_for_line_k() {
    let c = ctx();
    let mut r = rng(1);
    for n in -1..=1 {
        let d = c.duality(&Complex::line(3, n));
        for _ in 0..20 {
            let a = random_complex_with(&mut r, 3, 3, 2);
            assert!(d.eq1(&a).unwrap());
            assert!(d.bid(&a).unwrap().is_invertible());
        }
    }
}

#[test]
fn eq1_for_any_k_but_bid_not_always_invertible() {
    let c = ctx();
    let k = Complex::graded(3, 0, vec![2]);
    let d = c.duality(&k);
    let a = c.degree_zero(1);
    assert!(d.eq1(&a).unwrap());
    assert!(!d.bid(&a).unwrap().is_invertible());
}

#[test]
fn identity_functor_preserves_duality() {
    let c = ctx();
    let mut r = rng(2);
    let k = random_complex_with(&mut r, 3, 2, 2);
    let id = DPFunctor::identity(&c.duality(&k));
    for _ in 0..10 {
        assert!(id.check_p(&random_complex_with(&mut r, 3, 2, 2)).unwrap());
    }
}

#[test]
fn induced_functors_compose() {
    let c = ctx();
    let mut r = rng(3);
    for _ in 0..10 {
        let k = random_complex_with(&mut r, 3, 2, 2);
        let m = random_complex_with(&mut r, 3, 2, 2);
        let n = random_complex_with(&mut r, 3, 2, 2);
        let iota = random_chain_map(&mut r, &k, &m);
        let kappa = random_chain_map(&mut r, &m, &n);
        let a = random_complex_with(&mut r, 3, 2, 2);
        let ii = DPFunctor::induced(&c, &iota);
        assert!(ii.check_p(&a).unwrap());
        let both = ii.then(&DPFunctor::induced(&c, &kappa)).unwrap();
        let direct = DPFunctor::induced(&c, &kappa.compose(&iota).unwrap());
        assert_eq!(both.phi_at(&a).unwrap(), direct.phi_at(&a).unwrap());
        assert!(both.check_p(&a).unwrap());
    }
    let k = random_complex_with(&mut r, 3, 2, 2);
    let a = random_complex_with(&mut r, 3, 2, 2);
    assert!(DPFunctor::induced(&c, &ChainMap::identity(&k)).phi_at(&a).unwrap().is_identity());
}

#[test]
fn composing_across_different_dualities_is_an_error() {
    let c = ctx();
    let one = DPFunctor::identity(&c.duality(&c.unit()));
    let other = DPFunctor::identity(&c.duality(&Complex::line(3, 1)));
    assert!(matches!(one.then(&other), Err(Error::Shape(_))));
}

#[test]
fn tensor_preserves_duality_on_complexes() {
    let c = ctx();
    let mut r = rng(4);
    for _ in 0..15 {
        let k = Complex::line(3, r.gen_range(-1..=1));
        let m = random_complex_with(&mut r, 3, 1, 2);
        let a = random_complex_with(&mut r, 3, 2, 2);
        let b = random_complex_with(&mut r, 3, 2, 1);
        assert!(tensor_dp(&c, &k, &m).unwrap().check_p(&(a, b)).unwrap());
    }
}

#[test]
fn suspension_functor_sign() {
    let c = ctx();
    let mut r = rng(5);
    for _ in 0..20 {
        let k = random_complex_with(&mut r, 3, 2, 2);
        let a = random_complex_with(&mut r, 3, 2, 2);
        let dp = c.suspension_dp(&k, SUSPENDED_BID_SIGN);
        assert!(dp.check_p(&a).unwrap(), "k {k:?} a {a:?}");
        assert!(dp.phi_at(&a).unwrap().is_invertible());
        assert!(dp.target.eq1(&a).unwrap());
    }
}

#[test]
fn symmetric_forms_from_gram() {
    let c = ctx();
    let g = gram(&[vec![1, 2], vec![2, 0]]);
    let psi = c.form_from_gram(&g).unwrap();
    assert_eq!(gram_of(&psi.form), g);
    assert!(matches!(c.form_from_gram(&gram(&[vec![1, 1], vec![0, 1]])), Err(Error::NotSymmetric)));
}

#[test]
fn transfer_along_identity_is_trivial() {
    let c = ctx();
    let psi = c.form_from_gram(&gram(&[vec![1, 1], vec![1, 2]])).unwrap();
    let out = transfer_form(&DPFunctor::identity(&c.duality(&c.unit())), &psi).unwrap();
    assert_eq!(out, psi);
}

#[test]
fn pushforward_transfer_is_orthogonal_sum() {
    let s = Sites::standard(3).unwrap();
    let x = FiniteSet::named("x", 2);
    let pt = FiniteSet::point();
    let f = FiniteMap::to_point(&x, &pt).unwrap();
    let g1 = gram(&[vec![1]]);
    let g2 = gram(&[vec![2, 1], vec![1, 0]]);
    let psi = s.form_from_grams(&x, &[g1.clone(), g2.clone()]).unwrap();
    let one = crate::sites::SheafComplex::unit(&pt, 3);
    let out = transfer_form(&s.pushforward_dp(&f, &one).unwrap(), &psi).unwrap();
    assert_eq!(gram_of(out.form.comp(0)), Matrix::block_direct_sum(&[g1, g2], 3).unwrap());
}

#[test]
fn tensor_transfer_is_kronecker() {
    let c = ctx();
    let one = c.unit();
    let dp = tensor_dp(&c, &one, &one).unwrap();
    let g1 = gram(&[vec![1, 2], vec![2, 0]]);
    let g2 = gram(&[vec![2, 1], vec![1, 1]]);
    let psi = SymmetricForm::new(&dp.source, (c.form_from_gram(&g1).unwrap().form, c.form_from_gram(&g2).unwrap().form)).unwrap();
    let out = transfer_form(&dp, &psi).unwrap();
    assert_eq!(gram_of(&out.form), g1.kronecker(&g2).unwrap());
}

#[test]
fn every_dp_diagram_commutes() {
    let s = Sites::standard(3).unwrap();
    let size = SitesSize { max_set: 3, max_len: 2, max_dim: 2 };
    for d in DP_DIAGRAMS {
        let mut r = rng(6);
        for trial in 0..4 {
            let inst = dp_random_instance(&mut r, d, 3, size).unwrap();
            let ok = s.check_dp_diagram(d.id, &inst).unwrap_or_else(|e| panic!("{} trial {trial}: {e}", d.id));
            assert!(ok, "{} failed on {}", d.id, inst.summary());
        }
    }
}


