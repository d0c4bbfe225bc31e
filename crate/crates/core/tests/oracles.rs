//! Oracle-derived fixtures: values computed once by independent methods and
//! frozen here, then compared against the library.

mod common;

use num_bigint::BigInt;
use rrp_core::arith::primes_up_to;
use rrp_core::maillet_h_minus;

const H_MINUS_FIXTURES: &[(u64, u64)] = &[
    (5, 1),
    (7, 1),
    (11, 1),
    (13, 1),
    (17, 1),
    (19, 1),
    (23, 3),
    (29, 8),
    (31, 9),
    (37, 37),
    (41, 121),
    (43, 211),
    (47, 695),
    (53, 4889),
    (59, 41241),
];

#[test]
fn analytic_oracle_reproduces_fixtures() {
    for &(r, h) in H_MINUS_FIXTURES {
        assert_eq!(common::analytic_h_minus(r), BigInt::from(h), "r = {r}");
    }
}

#[test]
fn maillet_matches_fixtures() {
    for &(r, h) in H_MINUS_FIXTURES {
        assert_eq!(maillet_h_minus(r).unwrap().h_minus, BigInt::from(h), "r = {r}");
    }
}

#[test]
fn maillet_matches_oracle_beyond_fixtures() {
    for r in primes_up_to(97).into_iter().filter(|&r| r > 60) {
        assert_eq!(maillet_h_minus(r).unwrap().h_minus, common::analytic_h_minus(r), "r = {r}");
    }
}

#[test]
fn resultant_sanity() {
    // Res(x² + 1, x - 2) = 5
    assert_eq!(common::resultant(&[1, 0, 1], &[-2, 1]), num_rational::BigRational::from_integer(5.into()));
}
