use cms_laurent::finite::{
    check_specialization_jack, phi_mn, shifted_partition, FiniteLaurentPoly,
};
use cms_laurent::jack::{eigenvalue, eigenvalue_s, jacobi_trudy_det, jt_limit};
use cms_laurent::ops::{apply, OperatorKind};
use cms_laurent::pieri::{direct_product, pieri_p_minus_one};
use cms_laurent::{BiPartition, BigRational, Partition, RatFunc, SymFunc};

fn sym(s: &str) -> SymFunc<RatFunc> {
    s.parse().unwrap()
}

fn r(s: &str) -> RatFunc {
    s.parse().unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn eigenvalue_gap_is_the_denominator_of_the_second_example() {
    let gap = eigenvalue(&BiPartition::of(&[1, 1], &[1])) - eigenvalue(&BiPartition::of(&[1], &[]));
    assert_eq!(gap, r("2 + 4*k - 2*k*p0"));
    let third = eigenvalue_s(&BiPartition::of(&[1], &[]), 3).unwrap();
    assert_eq!(third, r("(1/2 + k/2 - k*p0/2)^2"));
}

#[test]
fn laurent_operator_on_the_simplest_product() {
    let got = apply(OperatorKind::Laurent, &sym("p_1*p_-1")).unwrap();
    assert_eq!(got, sym("(2 + 2*k - 2*k*p0)*p_1*p_-1 - 2*p0"));
}

#[test]
fn p_minus_one_rule_matches_direct_product() {
    for b in [
        BiPartition::of(&[1], &[1]),
        BiPartition::of(&[2], &[1]),
        BiPartition::of(&[1], &[1, 1]),
    ] {
        let rule: std::collections::BTreeMap<_, _> = pieri_p_minus_one(&b)
            .unwrap()
            .into_iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|t| (t.target, t.coeff))
            .collect();
        assert_eq!(rule, direct_product(-1, &b).unwrap(), "{b}");
    }
}

#[test]
fn schur_limit_of_a_hook() {
    let b = BiPartition::of(&[2, 1], &[]);
    let s21 = sym("1/3*p_1^3 - 1/3*p_3");
    assert_eq!(jacobi_trudy_det(&b).unwrap(), s21);
    assert_eq!(jt_limit(&b).unwrap(), s21);
}

#[test]
fn shifted_index_for_the_simplest_pair() {
    let b = BiPartition::of(&[1], &[1]);
    assert_eq!(
        shifted_partition(&b, 3, 1).unwrap(),
        Partition::new(vec![2, 1]).unwrap()
    );
    for a in [1, 2] {
        assert!(check_specialization_jack(&b, 3, a).unwrap().passed());
    }
}

#[test]
fn super_specialization_examples() {
    assert_eq!(
        phi_mn(&sym("p0"), 2, 1, &q(-1)).unwrap().poly,
        FiniteLaurentPoly::constant(3, q(1))
    );
    // (x - y)(1/x - 1/y) - 1 + x/y = 1 - y/x
    let e11 = phi_mn(&sym("p_1*p_-1 - 1 + w"), 1, 1, &q(-1)).unwrap();
    let mut want = FiniteLaurentPoly::constant(2, q(1));
    want.add_term(vec![-1, 1], q(-1));
    assert_eq!(e11.poly, want);
}
