mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rational_functions_form_a_field(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        field_laws(&a, &b, &c)?;
    }

    #[test]
    fn star_is_an_involutive_automorphism(f in symfunc(), g in symfunc()) {
        star_laws(&f, &g)?;
    }

    #[test]
    fn finite_specialization_is_a_homomorphism(f in symfunc(), g in symfunc(), n in 1usize..4) {
        phi_laws(&f, &g, n)?;
    }

    #[test]
    fn monomial_basis_round_trip(b in bipartition(3), f in small_symfunc()) {
        round_trip(&b, &f)?;
    }

    #[test]
    fn monomials_specialize_to_monomials(b in bipartition(3), extra in 0usize..2) {
        phi_of_monomial(&b, extra)?;
    }

    #[test]
    fn dominance_is_a_partial_order(a in bipartition(4), b in bipartition(4), c in bipartition(4)) {
        dominance_laws(&a, &b, &c)?;
    }
}

#[test]
fn dominance_axioms_exhaustive() {
    let n = dominance_exhaustive(4).unwrap();
    assert!(n > 0);
}
