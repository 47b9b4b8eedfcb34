mod common;

use common::Outcome;

fn check(o: Outcome) {
    assert!(o.passed, "{}", o.detail);
}

#[test]
fn legendre_rodrigues_equals_beta_sum() {
    check(common::legendre_identity());
}

#[test]
fn shimura_lift_matches_enumeration() {
    check(common::shimura_oracle());
}

#[test]
fn raising_table_matches_finite_differences() {
    check(common::raising_oracle());
}

#[test]
fn whittaker_seed_identity() {
    check(common::whittaker_seed());
}

#[test]
fn phi_expansion_matches_enumeration() {
    check(common::phi_oracle());
}

#[test]
fn weakly_holomorphic_input_has_zero_height() {
    check(common::weakly_holomorphic_zero());
}

#[test]
fn kronecker_agrees_with_factoring() {
    for d in [-3i64, -4, -7, -8, -15, -19, -23, -24, 5, 12] {
        for n in 1..300u64 {
            assert_eq!(hhc::vvforms::ops::kronecker(d, n), common::kronecker_by_factoring(d, n), "({d}/{n})");
        }
    }
}
