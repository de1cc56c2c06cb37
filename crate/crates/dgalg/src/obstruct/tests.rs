use super::*;
use crate::dga::{formal_dga, GradedRingTable};
use crate::gring::{AlgebraPresentation, GeneratorKind, GeneratorSpec, SignRule};

fn algebra(ring: Ring, gens: Vec<(&str, u32, GeneratorKind)>, cap: u32) -> Arc<Algebra> {
    AlgebraPresentation::new(
        ring,
        gens.into_iter().map(|(n, d, k)| GeneratorSpec::new(n, d, k)).collect(),
        SignRule::Koszul,
    )
    .expand(cap)
    .unwrap()
}

#[test]
fn no_degree_one_elements_means_an_empty_search() {
    let b = algebra(Ring::Fp(2), vec![], 4);
    let v = square_obstruction_p2(&b, 4).unwrap();
    assert_eq!(v.status, Status::Unsolvable);
    // only the zero candidate exists
    assert_eq!(v.certificate.len(), 1);
    assert!(v.witness.is_none());
}

#[test]
fn polynomial_line_gives_a_two_candidate_refutation() {
    let b = algebra(Ring::Fp(2), vec![("y", 1, GeneratorKind::Polynomial)], 8);
    let v = square_obstruction_p2(&b, 4).unwrap();
    assert_eq!(v.status, Status::Unsolvable);
    assert_eq!(v.certificate.len(), 2);
    assert!(v.certificate.iter().all(|c| !c.matches));
}

#[test]
fn truncated_height_four_target_is_also_refused() {
    let b = algebra(Ring::Fp(2), vec![("x", 1, GeneratorKind::Truncated(4))], 8);
    let v = square_obstruction_p2(&b, 4).unwrap();
    assert_eq!(v.status, Status::Unsolvable);
}

#[test]
fn swapping_in_the_full_dual_algebra_finds_the_witness() {
    // with the whole dual algebra on the left, the first generator squares
    // onto the goal
    let a = dual_steenrod(2, Presentation::Xi, 4).unwrap();
    let target = Element::generator(&a.algebra, "xi1").unwrap().pow(2).unwrap();
    let b = algebra(Ring::Fp(2), vec![], 4);
    let v = square_obstruction_in(&a.algebra, &target, &b, 4).unwrap();
    assert_eq!(v.status, Status::SolvableWitness);
    assert_eq!(v.witness.as_deref(), Some("xi1"));
}

#[test]
fn square_caps_below_two_are_rejected() {
    let b = algebra(Ring::Fp(2), vec![], 4);
    assert!(matches!(
        square_obstruction_p2(&b, 1),
        Err(Error::CapTooSmall { need: 2, got: 1 })
    ));
}

#[test]
fn structural_square_verdict_is_unsolvable_with_no_witness() {
    let v = square_obstruction_p2_structural();
    assert_eq!(v.status, Status::Unsolvable);
    assert!(v.witness.is_none());
    assert!(!v.certificate.is_empty());
}

#[test]
fn bockstein_argument_refuses_every_candidate_symbolically() {
    // right factor with unknown power operations: the certificate works by
    // degree bookkeeping alone
    let b = algebra(Ring::Fp(3), vec![("y", 1, GeneratorKind::Exterior)], 8);
    let v = bockstein_q1_obstruction(3, &b, 8).unwrap();
    assert_eq!(v.status, Status::Unsolvable);
    assert!(!v.certificate.is_empty());
    // the symbolic right factor shows up in at least one recorded value
    assert!(v.certificate.iter().any(|c| c.value.contains("unevaluated")));
}

#[test]
fn bockstein_over_the_trivial_right_factor_is_unsolvable() {
    let b = algebra(Ring::Fp(3), vec![], 8);
    let v = bockstein_q1_obstruction(3, &b, 8).unwrap();
    assert_eq!(v.status, Status::Unsolvable);
}

#[test]
fn bockstein_control_finds_the_degree_one_witness() {
    // with the full dual algebra on the left the degree-1 generator works
    let ctx = dual_steenrod(3, Presentation::Zeta, 8).unwrap();
    let target = Element::generator(&ctx.algebra, "zeta1").unwrap().neg();
    let b = algebra(Ring::Fp(3), vec![], 8);
    let v = bockstein_obstruction_in(&ctx, &target, &b, 8).unwrap();
    assert_eq!(v.status, Status::SolvableWitness);
    assert!(v.witness.as_deref().unwrap().contains("taubar0"));
}

#[test]
fn bockstein_needs_an_odd_prime_and_enough_cap() {
    let b2 = algebra(Ring::Fp(2), vec![], 4);
    assert!(bockstein_q1_obstruction(2, &b2, 4).is_err());
    let b3 = algebra(Ring::Fp(3), vec![], 8);
    assert!(matches!(
        bockstein_q1_obstruction(3, &b3, 3),
        Err(Error::CapTooSmall { need: 4, got: 3 })
    ));
}

#[test]
fn height_four_truncation_forces_the_plain_unit_map() {
    let h = algebra(Ring::Fp(2), vec![("x", 1, GeneratorKind::Truncated(4))], 8);
    let survivors = forced_unit_map(
        &h,
        &["x".into()],
        &[MonomialRelation { generator: "x".into(), power: 4 }],
        2,
        8,
    )
    .unwrap();
    assert_eq!(survivors.len(), 1);
    // the survivor is exactly 1 (x) x
    let t = survivors[0].element.algebra();
    let expected = tensor_element(
        t,
        &Element::one(&dual_steenrod(2, Presentation::Xi, 8).unwrap().algebra),
        &Element::generator(&h, "x").unwrap(),
    )
    .unwrap();
    assert_eq!(survivors[0].element, expected);
}

#[test]
fn odd_prime_exterior_square_forces_the_plain_unit_map() {
    let h = algebra(
        Ring::Fp(3),
        vec![("x", 3, GeneratorKind::Exterior), ("y", 4, GeneratorKind::Exterior)],
        8,
    );
    let survivors = forced_unit_map(
        &h,
        &["y".into()],
        &[MonomialRelation { generator: "y".into(), power: 2 }],
        3,
        8,
    )
    .unwrap();
    assert_eq!(survivors.len(), 1);
    assert_eq!(survivors[0].element.to_string(), "y");
}

#[test]
fn without_relations_every_assignment_survives() {
    let h = algebra(Ring::Fp(2), vec![("x", 1, GeneratorKind::Truncated(4))], 8);
    let survivors = forced_unit_map(&h, &["x".into()], &[], 2, 8).unwrap();
    // degree-1 corrections: only the first dual generator tensor the unit
    assert_eq!(survivors.len(), 2);
}

#[test]
fn formal_truncated_algebra_splits_by_ground_ring() {
    let t = GradedRingTable::from_algebra(&algebra(
        Ring::Fp(2),
        vec![("x", 1, GeneratorKind::Truncated(4))],
        6,
    ))
    .unwrap();
    let x = formal_dga(&t).unwrap();
    let verdicts = extension_status(&x, true, true, SearchBudget::default()).unwrap();
    assert_eq!(verdicts.len(), 2);
    assert!(matches!(
        &verdicts[0],
        (Ring::Fp(2), ExtensionVerdict::CertifiedExtension(_))
    ));
    assert!(matches!(&verdicts[1], (Ring::Z, ExtensionVerdict::CertifiedNonExtension(v))
        if v.status == Status::Unsolvable));
}

#[test]
fn formal_integral_polynomial_ring_is_certified() {
    let t = GradedRingTable::from_algebra(&algebra(
        Ring::Z,
        vec![("x", 2, GeneratorKind::Polynomial)],
        8,
    ))
    .unwrap();
    let x = formal_dga(&t).unwrap();
    let verdicts = extension_status(&x, true, false, SearchBudget::default()).unwrap();
    assert_eq!(verdicts.len(), 1);
    assert!(matches!(&verdicts[0], (Ring::Z, ExtensionVerdict::CertifiedExtension(_))));
}

#[test]
fn no_applicable_route_reports_unknown() {
    let t = GradedRingTable::from_algebra(&algebra(Ring::Z, vec![], 4)).unwrap();
    let x = formal_dga(&t).unwrap();
    let verdicts = extension_status(&x, false, false, SearchBudget::default()).unwrap();
    assert_eq!(verdicts.len(), 1);
    assert!(matches!(&verdicts[0], (Ring::Z, ExtensionVerdict::Unknown)));
}

#[test]
fn certificates_replay_identically() {
    let b = algebra(Ring::Fp(2), vec![("y", 1, GeneratorKind::Polynomial)], 8);
    let v1 = square_obstruction_p2(&b, 4).unwrap();
    let v2 = square_obstruction_p2(&b, 4).unwrap();
    assert_eq!(v1, v2);
    let b3 = algebra(Ring::Fp(3), vec![("y", 1, GeneratorKind::Exterior)], 8);
    let w1 = bockstein_q1_obstruction(3, &b3, 8).unwrap();
    let w2 = bockstein_q1_obstruction(3, &b3, 8).unwrap();
    assert_eq!(w1, w2);
}
