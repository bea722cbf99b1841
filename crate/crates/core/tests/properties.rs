//! Randomized invariants for the integer linear algebra kernels and the
//! monoid constructions. These complement the fixed oracles in the unit
//! tests: every property here must hold for all inputs, not just the
//! examples.

use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;

use repbar::matrix::{smith_normal_form, solve_integer, IntMat, PivotStrategy};
use repbar::monoid::{mat_apply, AffineMonoid};
use repbar::nerves::{dihedral_nerve, l1, monoid_window, norm_w, WindowSpec};

fn identity_rows(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0i64; n];
            r[i] = 1;
            r
        })
        .collect()
}

/// Arbitrary integer matrix with bounded shape and entries.
fn int_mat(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMat> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        vec(vec(-bound..=bound, c), r).prop_map(|rows| IntMat::from_rows_i64(&rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_recomposes_and_divides(a in int_mat(5, 15)) {
        let snf = smith_normal_form(&a, PivotStrategy::MinAbs);
        prop_assert_eq!(snf.u_inv.mul(&snf.d).mul(&snf.v_inv), a.clone());
        let factors = snf.invariant_factors();
        for w in factors.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
        let other = smith_normal_form(&a, PivotStrategy::FirstNonzero);
        prop_assert_eq!(factors, other.invariant_factors());
    }

    #[test]
    fn solve_integer_finds_exact_solutions(
        a in int_mat(4, 9),
        x in vec(-9i64..=9, 4),
    ) {
        let x = &x[..a.cols];
        let b = a.mul_vec_i64(x);
        let y = solve_integer(&a, &b);
        prop_assert!(y.is_some(), "a known solution exists");
        let y = y.unwrap();
        let yv: Vec<i64> = y.iter().map(|v| i64::try_from(v).unwrap()).collect();
        prop_assert_eq!(a.mul_vec_i64(&yv), b);
    }

    #[test]
    fn exactification_retracts_onto_the_original_map(
        rank in 1..=3usize,
        extra in vec(vec(-3i64..=3, 3), 0..3),
    ) {
        let mut gens = identity_rows(rank);
        for g in &extra {
            gens.push(g[..rank].to_vec());
        }
        let m = AffineMonoid::new(rank, gens, Some(identity_rows(rank))).unwrap();
        let ex = m.exactify().unwrap();
        // theta_ex composed with eta agrees with theta on the double
        let dbl = ex.theta.source.clone();
        for i in 0..dbl.ambient_rank {
            let mut e = vec![0i64; dbl.ambient_rank];
            e[i] = 1;
            let via = mat_apply(&ex.theta_ex.matrix, &mat_apply(&ex.eta.matrix, &e));
            prop_assert_eq!(via, mat_apply(&ex.theta.matrix, &e));
        }
        // the carrier involution is an involution
        let w = ex.carrier.involution.clone().unwrap();
        for i in 0..ex.carrier.ambient_rank {
            let mut e = vec![0i64; ex.carrier.ambient_rank];
            e[i] = 1;
            let back = mat_apply(&w, &mat_apply(&w, &e));
            prop_assert_eq!(back, e);
        }
    }

    #[test]
    fn monoid_window_is_closed_and_bounded(
        rank in 1..=3usize,
        budget in 1i64..=4,
    ) {
        let m = AffineMonoid::new(rank, identity_rows(rank), Some(identity_rows(rank))).unwrap();
        let window = monoid_window(&m, budget).unwrap();
        prop_assert!(window.contains(&vec![0i64; rank]));
        for x in &window {
            prop_assert!(norm_w(&m, x) <= budget);
            prop_assert!(m.contains(x).unwrap());
            prop_assert!(window.contains(&m.apply_involution(x)));
        }
        // closed under addition within the budget
        for x in &window {
            for y in &window {
                let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                if l1(&s) <= budget {
                    prop_assert!(window.contains(&s));
                }
            }
        }
    }

    #[test]
    fn involution_preserves_the_norm(x in vec(-6i64..=6, 2)) {
        let m = AffineMonoid::free2_swap();
        prop_assert_eq!(norm_w(&m, &x), norm_w(&m, &m.apply_involution(&x)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn weight_pieces_satisfy_the_operator_relations(w in 0i64..=3) {
        let m = AffineMonoid::new(1, vec![vec![1]], Some(vec![vec![1]])).unwrap();
        let x = dihedral_nerve(&m, 5, &WindowSpec::Weights(vec![vec![w]])).unwrap();
        prop_assert!(x.verify_relations().is_ok());
    }
}
