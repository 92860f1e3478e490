use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn m(p: u32, rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_rows(p, rows).unwrap()
}

fn diag(p: u32, d: &[i64]) -> Matrix {
    Matrix::from_fn(d.len(), d.len(), p, |r, c| if r == c { d[r] } else { 0 })
}

/// All nondegenerate symmetric `n x n` Gram matrices over F_p.
fn all_forms(p: u32, n: usize) -> Vec<Matrix> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|r| (r..n).map(move |c| (r, c))).collect();
    let total = (p as usize).pow(slots.len() as u32);
    (0..total)
        .filter_map(|mut idx| {
            let mut g = vec![vec![0i64; n]; n];
            for &(r, c) in &slots {
                let v = (idx % p as usize) as i64;
                idx /= p as usize;
                g[r][c] = v;
                g[c][r] = v;
            }
            let g = Matrix::from_rows(p, &g).unwrap();
            (g.rank() == n).then_some(g)
        })
        .collect()
}

fn random_form<R: Rng>(rng: &mut R, p: u32, max_dim: usize) -> Matrix {
    loop {
        let n = rng.gen_range(1..=max_dim);
        let mut g = vec![vec![0i64; n]; n];
        for r in 0..n {
            for c in r..n {
                let v = rng.gen_range(0..p) as i64;
                g[r][c] = v;
                g[c][r] = v;
            }
        }
        let g = Matrix::from_rows(p, &g).unwrap();
        if g.rank() == n {
            return g;
        }
    }
}

#[test]
fn hyperbolic_plane_is_zero() {
    assert!(witt_reduce(3, &diag(3, &[1, -1])).unwrap().is_zero());
    assert!(witt_reduce(5, &diag(5, &[1, 1])).unwrap().is_zero());
    assert!(witt_reduce(3, &m(3, &[vec![0, 1], vec![1, 0]])).unwrap().is_zero());
}

#[test]
fn lines_are_anisotropic() {
    let c = witt_reduce(3, &diag(3, &[1])).unwrap();
    assert_eq!((c.dim, c.disc), (1, 1));
    assert!(!c.is_zero());
    assert_eq!(witt_reduce(3, &diag(3, &[2])).unwrap().disc, 2);
}

#[test]
fn bad_forms_are_rejected() {
    assert_eq!(witt_reduce(3, &diag(3, &[1, 0])), Err(Error::Degenerate));
    assert_eq!(witt_reduce(3, &m(3, &[vec![1, 1], vec![0, 1]])), Err(Error::NotSymmetric));
}

#[test]
fn w_f3_is_cyclic_of_order_4() {
    let w = witt_classify(3, 4).unwrap();
    assert_eq!(w.order(), 4);
    assert!(w.is_cyclic());
    let one = w.index_of(&witt_reduce(3, &diag(3, &[1])).unwrap()).unwrap();
    assert_eq!(w.element_order(one), 4);
}

#[test]
fn w_f5_has_exponent_2() {
    let w = witt_classify(5, 4).unwrap();
    assert_eq!(w.order(), 4);
    assert_eq!(w.exponent(), 2);
    let one = w.index_of(&witt_reduce(5, &diag(5, &[1])).unwrap()).unwrap();
    assert_eq!(w.element_order(one), 2);
}

#[test]
fn adding_zero_and_negatives() {
    for p in [3, 5, 7] {
        let w = witt_classify(p, 2).unwrap();
        for c in &w.classes {
            assert_eq!(&witt_add(c, &WittClass::zero(p)).unwrap(), c);
            assert!(witt_add(c, &witt_neg(c).unwrap()).unwrap().is_zero());
        }
    }
}

#[test]
fn invariants_decide_congruence_in_small_dimension() {
    for p in [3, 5, 7] {
        for n in 1..=2 {
            let forms = all_forms(p, n);
            let reps: Vec<&Matrix> = {
                let mut seen: Vec<(usize, u32)> = vec![];
                let mut reps = vec![];
                for g in &forms {
                    let inv = form_invariants(p, g).unwrap();
                    if !seen.contains(&inv) {
                        seen.push(inv);
                        reps.push(g);
                    }
                }
                reps
            };
            for g in &forms {
                for r in &reps {
                    let same = form_invariants(p, g).unwrap() == form_invariants(p, r).unwrap();
                    assert_eq!(congruent(p, g, r).unwrap(), same, "p {p} {g:?} vs {r:?}");
                }
            }
        }
    }
}

#[test]
fn reduction_agrees_with_exhaustive_anisotropy() {
    for p in [3, 5, 7] {
        for n in 1..=2 {
            for g in all_forms(p, n) {
                let f = PrimeField::new(p).unwrap();
                let aniso = find_isotropic(&f, &g).is_none();
                let c = witt_reduce(p, &g).unwrap();
                assert_eq!(aniso, c.dim == n);
                if aniso {
                    assert_eq!(form_invariants(p, &g).unwrap(), (c.dim, c.disc));
                }
            }
        }
    }
}

#[test]
fn single_point_transfer_is_identity() {
    let s = Sites::standard(3).unwrap();
    let x = FiniteSet::named("x", 1);
    let f = FiniteMap::to_point(&x, &FiniteSet::point()).unwrap();
    for g in all_forms(3, 2) {
        assert_eq!(transfer_witt(&s, &f, std::slice::from_ref(&g)).unwrap(), witt_reduce(3, &g).unwrap());
    }
}

#[test]
fn transfer_of_opposite_lines_vanishes() {
    let s = Sites::standard(3).unwrap();
    let f = FiniteMap::to_point(&FiniteSet::named("x", 2), &FiniteSet::point()).unwrap();
    assert!(transfer_witt(&s, &f, &[diag(3, &[1]), diag(3, &[-1])]).unwrap().is_zero());
}

#[test]
fn transfer_matches_orthogonal_sum() {
    let s = Sites::standard(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let f = FiniteMap::to_point(&FiniteSet::named("x", n), &FiniteSet::point()).unwrap();
        let grams: Vec<Matrix> = (0..n).map(|_| random_form(&mut rng, 3, 3)).collect();
        assert_eq!(transfer_gram(&s, &f, &grams).unwrap(), Matrix::block_direct_sum(&grams, 3).unwrap());
        assert_eq!(transfer_witt(&s, &f, &grams).unwrap(), orthogonal_sum_class(3, &grams).unwrap());
    }
}

#[test]
fn product_is_kronecker() {
    let ctx = StructuralContext::standard(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let a = random_form(&mut rng, 3, 3);
        let b = random_form(&mut rng, 3, 3);
        assert_eq!(product_gram(&ctx, &a, &b).unwrap(), a.kronecker(&b).unwrap());
    }
}

#[test]
fn projection_formula_on_small_forms() {
    let s = Sites::standard(3).unwrap();
    let pt = FiniteSet::point();
    let small: Vec<Matrix> = all_forms(3, 1).into_iter().chain(all_forms(3, 2).into_iter().step_by(3)).collect();
    for n in 1..=2 {
        let f = FiniteMap::to_point(&FiniteSet::named("x", n), &pt).unwrap();
        for y in &small {
            for x0 in &small {
                let x: Vec<Matrix> = (0..n).map(|i| if i == 0 { x0.clone() } else { diag(3, &[1]) }).collect();
                let (lhs, rhs) = projection_formula(&s, &f, &x, y).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
