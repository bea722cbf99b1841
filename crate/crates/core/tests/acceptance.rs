//! Acceptance gate: one test per release criterion, so `cargo test --test
//! acceptance` prints one pass/fail line for each. Each test is deterministic
//! and carries its own time budget where the criterion has one.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use repbar::cube::invariance_check;
use repbar::matrix::{smith_normal_form, IntMat, PivotStrategy};
use repbar::monoid::AffineMonoid;
use repbar::nerves::{dihedral_nerve, replete_nerve, tensor_interval, WindowSpec};
use repbar::simpchecks::{
    check_interval_collapse, check_interval_pushout, check_replete_product,
    check_replete_splitting, check_weight_circles,
};
use repbar::verify::{check_exactification, run, VerifyConfig};
use repbar::Status;

fn nat() -> AffineMonoid {
    AffineMonoid::new(1, vec![vec![1]], Some(vec![vec![1]])).unwrap()
}

fn int() -> AffineMonoid {
    AffineMonoid::new(1, vec![vec![1], vec![-1]], Some(vec![vec![-1]])).unwrap()
}

fn nat2_swap() -> AffineMonoid {
    AffineMonoid::free2_swap()
}

/// Orthant weights of l1 norm at most `w` in `d` coordinates.
fn orthant_weights(d: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=w).map(move |c| {
                    let mut u = v.clone();
                    u.push(c);
                    u
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().sum::<i64>() <= w);
    out
}

#[test]
fn a1_structural_relations_of_the_three_nerves() {
    let start = Instant::now();
    let m = nat();
    let weights: Vec<Vec<i64>> = (0..=4).map(|w| vec![w]).collect();
    let di = dihedral_nerve(&m, 9, &WindowSpec::Weights(weights)).unwrap();
    di.verify_relations().unwrap();
    let rep = replete_nerve(&m, 5, 3).unwrap();
    rep.verify_relations().unwrap();
    let weights: Vec<Vec<i64>> = (0..=3).map(|w| vec![w]).collect();
    let ti = tensor_interval(&m, 9, &WindowSpec::Weights(weights)).unwrap();
    ti.verify_relations().unwrap();
    assert!(start.elapsed().as_secs() < 30, "relation audit exceeded 30s");
}

#[test]
fn a2_weight_pieces_are_circles_with_doubled_fixed_components() {
    let r = check_weight_circles(4, 3).unwrap();
    assert_eq!(r.status, Status::Pass, "witness: {:?}", r.witness);
}

#[test]
fn a3_interval_collapse_is_an_involutive_equivalence() {
    for m in [nat(), nat2_swap()] {
        let weights = orthant_weights(m.ambient_rank, 3);
        let r = check_interval_collapse(&m, &weights, 3).unwrap();
        assert_eq!(r.status, Status::Pass, "rank {}: {:?}", m.ambient_rank, r.witness);
    }
}

#[test]
fn a4_splitting_product_and_pushout_bijections() {
    for m in [nat(), int(), nat2_swap()] {
        let r = check_replete_splitting(&m, 5, 4).unwrap();
        assert_eq!(r.status, Status::Pass, "splitting rank {}: {:?}", m.ambient_rank, r.witness);
        let r = check_interval_pushout(&m, 5, &WindowSpec::Budget(4)).unwrap();
        assert_eq!(r.status, Status::Pass, "pushout rank {}: {:?}", m.ambient_rank, r.witness);
    }
    for (p, q) in [(nat(), int()), (nat(), nat2_swap()), (int(), nat2_swap())] {
        let r = check_replete_product(&p, &q, 5, 4).unwrap();
        assert_eq!(
            r.status,
            Status::Pass,
            "product ranks {}x{}: {:?}",
            p.ambient_rank,
            q.ambient_rank,
            r.witness
        );
    }
}

#[test]
fn a5_strictness_criteria_on_named_and_random_instances() {
    let config = VerifyConfig::default();
    let mut skipped = Vec::new();
    for id in ["strict.2", "strict.3"] {
        let reports = run(id, &config).unwrap();
        assert!(reports.len() >= 23, "{id}: expected named plus 20 random instances");
        for r in reports {
            match r.status {
                Status::Pass => {}
                // the doubling endomorphism is deliberately not an
                // isomorphism on units, so its square is out of scope
                Status::PreconditionFailed => skipped.push(r.check),
                other => panic!("{}: {other} {:?}", r.check, r.witness),
            }
        }
    }
    assert_eq!(
        skipped,
        vec!["strict.2::doubling::unit-base-change", "strict.3::doubling::exactification-squares"],
        "unexpected precondition-failed set"
    );
}

#[test]
fn a6_projective_invariance_cubes_and_negative_control() {
    let start = Instant::now();
    let r = invariance_check(1, 2, 4, false).unwrap();
    assert_eq!(r.status, Status::Pass, "n=1: {:?}", r.witness);
    let r = invariance_check(2, 1, 3, false).unwrap();
    assert_eq!(r.status, Status::Pass, "n=2: {:?}", r.witness);
    let r = invariance_check(1, 2, 4, true).unwrap();
    assert_eq!(r.status, Status::Fail, "sabotaged cube was not detected");
    assert!(start.elapsed().as_secs() < 300, "invariance check exceeded 5 minutes");
}

#[test]
fn a7_exactification_identities_on_sampled_elements() {
    for (i, m) in [nat(), int(), nat2_swap()].into_iter().enumerate() {
        let r = check_exactification(&m, 100, 1000 + i as u64).unwrap();
        assert_eq!(r.status, Status::Pass, "rank {}: {:?}", m.ambient_rank, r.witness);
    }
}

#[test]
fn a8_smith_form_recomposition_divisibility_and_strategy_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..200 {
        let rows = rng.gen_range(1..=8usize);
        let cols = rng.gen_range(1..=8usize);
        let entries: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let a = IntMat::from_rows_i64(&entries);
        let snf = smith_normal_form(&a, PivotStrategy::MinAbs);
        assert_eq!(snf.u_inv.mul(&snf.d).mul(&snf.v_inv), a, "case {case}: recomposition");
        let factors = snf.invariant_factors();
        for w in factors.windows(2) {
            assert!(
                (&w[1] % &w[0]) == num_bigint::BigInt::from(0),
                "case {case}: divisibility {factors:?}"
            );
        }
        let other = smith_normal_form(&a, PivotStrategy::FirstNonzero);
        assert_eq!(factors, other.invariant_factors(), "case {case}: strategies disagree");
    }
}

#[test]
fn a9_full_verification_suite_is_deterministic() {
    let config = VerifyConfig::default();
    let text = |reports: &[repbar::CheckReport]| serde_json::to_string_pretty(reports).unwrap();
    let a = run("all", &config).unwrap();
    let b = run("all", &config).unwrap();
    assert_eq!(text(&a), text(&b), "two runs with the same seed differ");
    for r in &a {
        assert!(
            matches!(r.status, Status::Pass | Status::PreconditionFailed),
            "{}: {} {:?}",
            r.check,
            r.status,
            r.witness
        );
    }
}
