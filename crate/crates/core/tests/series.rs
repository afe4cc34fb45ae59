mod common;

use common::{identity_like, random_endo, rng};
use polyop::inversion::{invert_endo, invert_single, solve_inverse_oracle, solve_single_oracle, tree_count, PlanarTree};
use polyop::laurent::{LaurentPoly, Mode, Window};
use polyop::ncseries::substitute;
use proptest::prelude::*;

const WINDOW: Window = Window::new(0, 6);

fn mode_of(b: bool) -> Mode {
    if b {
        Mode::F2
    } else {
        Mode::Integers
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn substitution_is_associative(seed in any::<u64>(), f2 in any::<bool>(), colors in 1usize..=2) {
        let mode = mode_of(f2);
        let mut r = rng(seed);
        let (f, g, h) = (random_endo(&mut r, colors, 4, WINDOW, mode), random_endo(&mut r, colors, 4, WINDOW, mode), random_endo(&mut r, colors, 4, WINDOW, mode));
        let left = substitute(&substitute(&f, &g).unwrap(), &h).unwrap();
        let right = substitute(&f, &substitute(&g, &h).unwrap()).unwrap();
        prop_assert!(left.difference(&right).is_empty());
    }

    #[test]
    fn identity_is_a_unit(seed in any::<u64>(), f2 in any::<bool>(), colors in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_endo(&mut r, colors, 4, WINDOW, mode_of(f2));
        let id = identity_like(&f);
        prop_assert!(substitute(&f, &id).unwrap().difference(&f).is_empty());
        prop_assert!(substitute(&id, &f).unwrap().difference(&f).is_empty());
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), f2 in any::<bool>(), colors in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_endo(&mut r, colors, 4, WINDOW, mode_of(f2));
        let g = invert_endo(&f).unwrap();
        let id = identity_like(&f);
        prop_assert!(substitute(&f, &g).unwrap().difference(&id).is_empty());
        prop_assert!(substitute(&g, &f).unwrap().difference(&id).is_empty());
    }

    #[test]
    fn inversion_is_an_involution(seed in any::<u64>(), f2 in any::<bool>(), colors in 1usize..=2) {
        let mut r = rng(seed);
        let f = random_endo(&mut r, colors, 4, WINDOW, mode_of(f2));
        let back = invert_endo(&invert_endo(&f).unwrap()).unwrap();
        prop_assert!(back.difference(&f).is_empty());
    }

    #[test]
    fn tree_sum_agrees_with_oracle(seed in any::<u64>(), f2 in any::<bool>(), colors in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_endo(&mut r, colors, 4, WINDOW, mode_of(f2));
        prop_assert!(invert_endo(&f).unwrap().difference(&solve_inverse_oracle(&f).unwrap()).is_empty());
    }

    #[test]
    fn truncation_commutes_with_substitution(seed in any::<u64>(), f2 in any::<bool>(), colors in 1usize..=2) {
        let mode = mode_of(f2);
        let mut r = rng(seed);
        let (f, g) = (random_endo(&mut r, colors, 5, WINDOW, mode), random_endo(&mut r, colors, 5, WINDOW, mode));
        let small = Window::new(0, 3);
        let coarse = substitute(&f, &g).unwrap().restrict(3, small);
        let fine = substitute(&f.restrict(3, small), &g.restrict(3, small)).unwrap();
        prop_assert!(coarse.difference(&fine).is_empty());
    }
}

#[test]
fn single_variable_inverse_is_catalan_with_signs() {
    let f = [LaurentPoly::one(), LaurentPoly::one()];
    let g = invert_single(&f, 6, Mode::Integers).unwrap();
    let coeffs: Vec<i64> = g.iter().map(|p| p.coeff(0)).collect();
    assert_eq!(coeffs, [1, -1, 2, -5, 14, -42]);
    assert_eq!(g, solve_single_oracle(&f, 6, Mode::Integers).unwrap());
}

#[test]
fn single_variable_tree_sum_matches_oracle_on_dense_input() {
    let f: Vec<LaurentPoly> = (0..6).map(|k| if k == 0 { LaurentPoly::one() } else { LaurentPoly::from_terms([(k, 1), (0, -2)], Mode::Integers) }).collect();
    assert_eq!(invert_single(&f, 6, Mode::Integers).unwrap(), solve_single_oracle(&f, 6, Mode::Integers).unwrap());
}

/// Little Schröder numbers by the recursion over the root's children.
fn schroeder(n: usize) -> u64 {
    // forests[k][m]: ordered forests of k trees with m leaves in total
    let mut trees = vec![0u64; n + 1];
    trees[1] = 1;
    for m in 2..=n {
        let mut forests = vec![vec![0u64; m + 1]; m + 1];
        forests[0][0] = 1;
        for k in 1..=m {
            for total in 1..=m {
                for first in 1..=total {
                    forests[k][total] += trees[first] * forests[k - 1][total - first];
                }
            }
        }
        trees[m] = (2..=m).map(|k| forests[k][m]).sum();
    }
    trees[n]
}

#[test]
fn tree_enumeration_matches_schroeder_numbers() {
    for n in 1..=7 {
        assert_eq!(PlanarTree::enumerate(n).len() as u64, schroeder(n), "n = {n}");
        assert_eq!(tree_count(n), schroeder(n));
    }
    assert_eq!((1..=5).map(schroeder).collect::<Vec<_>>(), [1, 1, 3, 11, 45]);
}
