use dualities::complex::{random_automorphism, random_chain_map, random_complex, random_complex_with, random_matrix};
use dualities::harness::{self, trial_seed, Params, Verdict};
use dualities::signs::{default_assignment, verify_table, Symbol};
use dualities::witt::{witt_add, witt_neg, witt_reduce};
use dualities::{ChainMap, Complex, Matrix, StructuralContext};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(5), Just(7)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn matrix_product_is_associative(seed: u64, p in prime(), n in 1usize..5, m in 1usize..5, k in 1usize..5, l in 1usize..5) {
        let mut r = rng(seed);
        let (a, b, c) = (random_matrix(&mut r, n, m, p), random_matrix(&mut r, m, k, p), random_matrix(&mut r, k, l, p));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn rank_plus_nullity(seed: u64, p in prime(), n in 1usize..6, m in 1usize..6) {
        let a = random_matrix(&mut rng(seed), n, m, p);
        prop_assert_eq!(a.rank() + a.nullspace().len(), m);
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn inverse_is_two_sided(seed: u64, p in prime(), n in 1usize..5) {
        let a = random_matrix(&mut rng(seed), n, n, p);
        if a.is_invertible() {
            let inv = a.inverse().unwrap();
            prop_assert!(a.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&a).unwrap().is_identity());
        }
    }

    #[test]
    fn tensor_and_hom_are_complexes(seed: u64, p in prime()) {
        let ctx = StructuralContext::standard(p).unwrap();
        let mut r = rng(seed);
        let (a, b) = (random_complex_with(&mut r, p, 3, 2), random_complex_with(&mut r, p, 3, 2));
        prop_assert!(ctx.tensor(&a, &b).unwrap().validate());
        prop_assert!(ctx.hom(&a, &b).unwrap().validate());
    }

    #[test]
    fn constructions_depend_only_on_content(seed: u64) {
        let ctx = StructuralContext::standard(3).unwrap();
        let mut r = rng(seed);
        let (a, b) = (random_complex_with(&mut r, 3, 3, 2), random_complex_with(&mut r, 3, 3, 2));
        let a2 = Complex::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(ctx.tensor(&a, &b).unwrap(), ctx.tensor(&a2, &b).unwrap());
        prop_assert_eq!(ctx.hom(&b, &a).unwrap(), ctx.hom(&b, &a2).unwrap());
    }

    #[test]
    fn suspension_round_trips(seed: u64) {
        let ctx = StructuralContext::standard(3).unwrap();
        let a = random_complex(seed, 3, 3, 3);
        prop_assert_eq!(ctx.desuspend(&ctx.suspend(&a)), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(ctx.suspend(&a).min_degree(), a.min_degree() + 1);
        }
    }

    #[test]
    fn chain_maps_compose_and_invert(seed: u64) {
        let mut r = rng(seed);
        let (a, b, c) = (random_complex_with(&mut r, 3, 3, 2), random_complex_with(&mut r, 3, 3, 2), random_complex_with(&mut r, 3, 3, 2));
        let (f, g) = (random_chain_map(&mut r, &a, &b), random_chain_map(&mut r, &b, &c));
        prop_assert!(f.is_chain_map() && g.is_chain_map());
        prop_assert!(g.compose(&f).unwrap().is_chain_map());
        let u = random_automorphism(&mut r, &a);
        prop_assert!(u.inverse().unwrap().compose(&u).unwrap().is_identity());
        prop_assert_eq!(ChainMap::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn witt_classes_form_a_group(seed: u64, p in prop_oneof![Just(3u32), Just(5)], n in 1usize..4, m in 1usize..4) {
        let mut r = rng(seed);
        let form = |r: &mut ChaCha8Rng, n: usize| loop {
            let g = random_matrix(r, n, n, p);
            let s = g.add(&g.transpose()).unwrap();
            if s.is_invertible() {
                return s;
            }
        };
        let (x, y) = (witt_reduce(p, &form(&mut r, n)).unwrap(), witt_reduce(p, &form(&mut r, m)).unwrap());
        prop_assert_eq!(witt_add(&x, &y).unwrap(), witt_add(&y, &x).unwrap());
        prop_assert!(witt_add(&x, &witt_neg(&x).unwrap()).unwrap().is_zero());
        prop_assert_eq!(witt_reduce(p, &x.representative()).unwrap(), x);
    }

    #[test]
    fn flipping_twice_restores_the_table(a in prop_oneof![Just(1i8), Just(-1)], b in prop_oneof![Just(1i8), Just(-1)], sym in 0usize..12) {
        let s = default_assignment(a, b);
        let sym = Symbol::ALL[sym];
        prop_assert_eq!(verify_table(&s.clone().flipped(sym).flipped(sym)), verify_table(&s));
        prop_assert_eq!(Symbol::from_name(sym.name()).unwrap(), sym);
    }

    #[test]
    fn trial_seeds_are_stable(seed: u64, t in 0usize..64) {
        prop_assert_eq!(trial_seed(seed, "EQ1", t), trial_seed(seed, "EQ1", t));
        prop_assert_ne!(trial_seed(seed, "EQ1", t), trial_seed(seed, "EQ1", t + 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn runs_are_reproducible(seed: u64) {
        let params = Params { p: 3, max_dim: 2, max_len: 2, max_set: 2, trials: 2 };
        let one = harness::run_diagram("D12", seed, &params).unwrap();
        let two = harness::run_diagram("D12", seed, &params).unwrap();
        prop_assert_eq!(one.verdict, Verdict::Pass);
        prop_assert_eq!(one.instance, two.instance);
    }
}

#[test]
fn identity_matrix_is_neutral() {
    let a = Matrix::from_rows(5, &[vec![1, 2], vec![3, 4], vec![0, 1]]).unwrap();
    assert_eq!(Matrix::identity(3, 5).mul(&a).unwrap(), a);
}
