use pcurv::accessory::*;
use pcurv::algebra::{Poly, RatFuncField};

fn ratpoly(f: &RatFuncField, coeffs: &[&[i64]]) -> Poly<RatFuncField> {
    Poly::new(
        f.clone(),
        coeffs.iter().map(|c| f.from_poly_ints(c)).collect(),
    )
    .monic()
}

#[test]
fn seven_family_degree_four_conic() {
    let f = RatFuncField::new(7, "L").unwrap();
    let e = existence_polynomial_r4(7, &[5, 5, 5, 5], 4).unwrap();
    assert_eq!(e, ratpoly(&f, &[&[1, 3, 1], &[1, 1], &[5]]));
}

#[test]
fn thirteen_family_degree_four_cubic() {
    let f = RatFuncField::new(13, "L").unwrap();
    let e = existence_polynomial_r4(13, &[11, 11, 11, 10], 4).unwrap();
    assert_eq!(e, ratpoly(&f, &[&[1, 9, 9, 1], &[2, 4, 2], &[8, 8], &[2]]));
}

#[test]
fn seven_fiber() {
    let rep = generic_fiber_counts(7, 2, &[5, 5, 5, 5], 3).unwrap();
    println!("{rep:?}");
    assert!(rep.agree);
    assert_eq!(rep.nonzero_by_strength.get(&8), Some(&3));
    assert_eq!(rep.zero_hits, 2);
}

#[test]
fn thirteen_fiber() {
    let rep = generic_fiber_counts(13, 2, &[11, 11, 11, 10], 3).unwrap();
    println!("{rep:?}");
    assert!(rep.agree);
    assert_eq!(rep.nonzero_by_strength.get(&22), Some(&2));
    assert_eq!(rep.nonzero_by_strength.get(&16), Some(&3));
}

#[test]
fn witnesses() {
    for (p, r, n) in [(7, 3, 0), (7, 5, 14), (5, 5, 10)] {
        let rep = nonempty_check(p, r, n, DEFAULT_BUDGET).unwrap();
        println!("{rep:?}");
        assert_eq!(rep.verdict, Verdict::ProvedNonemptyByWitness);
    }
    assert_eq!(
        nonempty_check(7, 4, 7, DEFAULT_BUDGET).unwrap().verdict,
        Verdict::ConstraintsViolated
    );
}
