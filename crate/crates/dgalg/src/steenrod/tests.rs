use num_bigint::BigInt;

use crate::error::Error;
use crate::gring::Element;

use super::{
    apply_dl, apply_dl_tensor, dual_steenrod, embed_into_dual, hfp_homology_of_hz,
    BFactor, DLWord, Presentation,
};

#[test]
fn generators_instantiated_at_two_through_seven() {
    let ctx = dual_steenrod(2, Presentation::Xi, 7).unwrap();
    let names: Vec<&str> = ctx.algebra.generators.iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, ["xi1", "xi2", "xi3"]);
    assert_eq!(
        ctx.algebra.generators.iter().map(|g| g.degree).collect::<Vec<_>>(),
        [1, 3, 7]
    );
    assert_eq!(ctx.algebra.dim(3), 2); // xi1^3 and xi2
}

#[test]
fn generators_instantiated_at_three_through_five() {
    let ctx = dual_steenrod(3, Presentation::Xi, 5).unwrap();
    let mut gens: Vec<(String, u32)> = ctx
        .algebra
        .generators
        .iter()
        .map(|g| (g.name.clone(), g.degree))
        .collect();
    gens.sort_by_key(|g| g.1);
    assert_eq!(
        gens,
        [("tau0".to_string(), 1), ("xi1".to_string(), 4), ("tau1".to_string(), 5)]
    );
}

#[test]
fn integral_homology_dimensions() {
    let h2 = hfp_homology_of_hz(2, 4).unwrap();
    let dims: Vec<usize> = (0..=4).map(|d| h2.algebra.dim(d)).collect();
    assert_eq!(dims, [1, 0, 1, 1, 1]);

    let h3 = hfp_homology_of_hz(3, 4).unwrap();
    let dims: Vec<usize> = (0..=4).map(|d| h3.algebra.dim(d)).collect();
    assert_eq!(dims, [1, 0, 0, 0, 1]);

    for p in [2u64, 3, 5] {
        let h = hfp_homology_of_hz(p, 6).unwrap();
        assert_eq!(h.algebra.dim(1), 0, "p = {p}");
    }
}

#[test]
fn shipped_formulas_at_two() {
    let ctx = dual_steenrod(2, Presentation::Zeta, 15).unwrap();
    let xi1 = ctx.element("xi1").unwrap(); // alias of zeta1 at p = 2
    for s in 1u32..=4 {
        let got = apply_dl(&DLWord::q(2, 2i64.pow(s) - 2), &xi1, &ctx).unwrap();
        let want = Element::generator(&ctx.algebra, &format!("zeta{s}")).unwrap();
        assert_eq!(got, want, "s = {s}");
    }
}

#[test]
fn shipped_formulas_at_odd_primes() {
    for p in [3u64, 5] {
        let cap = (2 * p.pow(2) - 1) as u32;
        let ctx = dual_steenrod(p, Presentation::Zeta, cap).unwrap();
        let tau0 = ctx.element("tau0").unwrap();
        for s in 1u32..=2 {
            let op = ((p.pow(s) - 1) / (p - 1)) as i64;
            let sign = BigInt::from(if s % 2 == 0 { 1 } else { -1 });

            let got = apply_dl(&DLWord::q(p, op), &tau0, &ctx).unwrap();
            let want = Element::generator(&ctx.algebra, &format!("taubar{s}"))
                .unwrap()
                .scale(&sign);
            assert_eq!(got, want, "Q at p = {p}, s = {s}");

            let got = apply_dl(&DLWord::beta_q(p, op).unwrap(), &tau0, &ctx).unwrap();
            let want = Element::generator(&ctx.algebra, &format!("zeta{s}"))
                .unwrap()
                .scale(&sign);
            assert_eq!(got, want, "beta Q at p = {p}, s = {s}");
        }
    }
}

#[test]
fn composed_bockstein_matches_the_table() {
    let ctx = dual_steenrod(3, Presentation::Zeta, 17).unwrap();
    let tau0 = ctx.element("tau0").unwrap();
    for s in 1u32..=2 {
        let op = ((3u64.pow(s) - 1) / 2) as i64;
        let table = apply_dl(&DLWord::beta_q(3, op).unwrap(), &tau0, &ctx).unwrap();
        let composed = ctx
            .apply_beta(&apply_dl(&DLWord::q(3, op), &tau0, &ctx).unwrap())
            .unwrap();
        assert_eq!(table, composed, "s = {s}");
    }
}

#[test]
fn top_operation_squares_at_two() {
    let ctx = dual_steenrod(2, Presentation::Xi, 7).unwrap();
    let xi1 = ctx.element("xi1").unwrap();
    let got = apply_dl(&DLWord::q(2, 1), &xi1, &ctx).unwrap();
    assert_eq!(got, xi1.pow(2).unwrap());
}

#[test]
fn operations_vanish_below_the_threshold() {
    let ctx = dual_steenrod(2, Presentation::Xi, 7).unwrap();
    let xi2 = ctx.element("xi2").unwrap();
    for s in [-2i64, 0, 2] {
        assert!(apply_dl(&DLWord::q(2, s), &xi2, &ctx).unwrap().is_zero(), "s = {s}");
    }
    let ctx3 = dual_steenrod(3, Presentation::Xi, 9).unwrap();
    let xi1 = ctx3.element("xi1").unwrap();
    assert!(apply_dl(&DLWord::q(3, 1), &xi1, &ctx3).unwrap().is_zero());
}

#[test]
fn untabulated_actions_are_refused() {
    let ctx = dual_steenrod(2, Presentation::Xi, 15).unwrap();
    let xi2 = ctx.element("xi2").unwrap();
    match apply_dl(&DLWord::q(2, 4), &xi2, &ctx) {
        Err(Error::MissingGeneratorAction { generator, .. }) => assert_eq!(generator, "xi2"),
        other => panic!("expected MissingGeneratorAction, got {other:?}"),
    }
    // at the threshold the p-th power is forced even without a table
    let hz = hfp_homology_of_hz(3, 16).unwrap();
    let xi1 = Element::generator(&hz.algebra, "xi1").unwrap();
    let got = apply_dl(&DLWord::q(3, 2), &xi1, &hz.dl).unwrap();
    assert_eq!(got, xi1.pow(3).unwrap());
    assert!(matches!(
        apply_dl(&DLWord::q(3, 3), &xi1, &hz.dl),
        Err(Error::MissingGeneratorAction { .. })
    ));
}

#[test]
fn leaving_the_cap_is_an_error() {
    let ctx = dual_steenrod(2, Presentation::Zeta, 3).unwrap();
    let xi1 = ctx.element("xi1").unwrap();
    match apply_dl(&DLWord::q(2, 6), &xi1, &ctx) {
        Err(Error::DegreeOverflow { needed, cap }) => {
            assert_eq!((needed, cap), (7, 3));
        }
        other => panic!("expected DegreeOverflow, got {other:?}"),
    }
}

#[test]
fn bockstein_flags_are_rejected_at_two() {
    assert!(DLWord::beta_q(2, 1).is_err());
    assert!(DLWord::new(3, vec![(1, 1), (0, 2)]).is_ok());
}

#[test]
fn cartan_expansion_on_a_square() {
    // Q^2(zeta1^2) = (Q^1 zeta1)^2 = zeta1^4; the cross terms cancel mod 2
    let ctx = dual_steenrod(2, Presentation::Zeta, 7).unwrap();
    let z1 = ctx.element("zeta1").unwrap();
    let got = apply_dl(&DLWord::q(2, 2), &z1.pow(2).unwrap(), &ctx).unwrap();
    assert_eq!(got, z1.pow(4).unwrap());
}

#[test]
fn bockstein_is_a_derivation_squaring_to_zero() {
    let ctx = dual_steenrod(3, Presentation::Zeta, 17).unwrap();
    let t0 = ctx.element("taubar0").unwrap();
    let t1 = ctx.element("taubar1").unwrap();
    let z1 = ctx.element("zeta1").unwrap();
    let samples = [
        t0.mul(&z1).unwrap(),
        t0.mul(&t1).unwrap(),
        z1.mul(&t1).unwrap(),
        t0.mul(&z1).unwrap().mul(&t1).unwrap(),
    ];
    for e in &samples {
        let b = ctx.apply_beta(e).unwrap();
        assert!(ctx.apply_beta(&b).unwrap().is_zero());
    }
    // the derivation rule itself on a product of two exterior classes:
    // beta(t0 t1) = t1 - t0 zeta1
    let got = ctx.apply_beta(&t0.mul(&t1).unwrap()).unwrap();
    let want = t1.sub(&t0.mul(&z1).unwrap()).unwrap();
    assert_eq!(got, want);
}

#[test]
fn inclusion_into_the_dual_commutes_with_forced_operations() {
    // p = 2: the top operation on xi1sq matches the Cartan square upstairs
    let hz = hfp_homology_of_hz(2, 8).unwrap();
    let dual = dual_steenrod(2, Presentation::Xi, 8).unwrap();
    let x = Element::generator(&hz.algebra, "xi1sq").unwrap();
    let down = apply_dl(&DLWord::q(2, 2), &x, &hz.dl).unwrap();
    let up = apply_dl(&DLWord::q(2, 2), &embed_into_dual(&x, &hz, &dual).unwrap(), &dual)
        .unwrap();
    assert_eq!(embed_into_dual(&down, &hz, &dual).unwrap(), up);

    // p = 3: top operation on xi1 and Bockstein on tau1
    let hz = hfp_homology_of_hz(3, 14).unwrap();
    let dual = dual_steenrod(3, Presentation::Xi, 14).unwrap();
    let xi1 = Element::generator(&hz.algebra, "xi1").unwrap();
    let down = apply_dl(&DLWord::q(3, 2), &xi1, &hz.dl).unwrap();
    let up = apply_dl(&DLWord::q(3, 2), &embed_into_dual(&xi1, &hz, &dual).unwrap(), &dual)
        .unwrap();
    assert_eq!(embed_into_dual(&down, &hz, &dual).unwrap(), up);
    let tau1 = Element::generator(&hz.algebra, "tau1").unwrap();
    let down = hz.dl.apply_beta(&tau1).unwrap();
    let up = dual
        .apply_beta(&embed_into_dual(&tau1, &hz, &dual).unwrap())
        .unwrap();
    assert_eq!(embed_into_dual(&down, &hz, &dual).unwrap(), up);
}

#[test]
fn tensor_bockstein_on_the_degree_one_generator() {
    use crate::gring::{AlgebraPresentation, Ring, SignRule};
    let ctx = dual_steenrod(3, Presentation::Zeta, 17).unwrap();
    let b_alg = AlgebraPresentation::new(Ring::Fp(3), vec![], SignRule::Koszul)
        .expand(4)
        .unwrap();
    let tau0 = ctx.element("tau0").unwrap();
    let one_b = Element::one(&b_alg);
    let got = apply_dl_tensor(
        &DLWord::beta_q(3, 1).unwrap(),
        &[(tau0, one_b.clone())],
        &ctx,
    )
    .unwrap();
    assert_eq!(got.len(), 1);
    // beta Q^1 (tau0 (x) 1) = -zeta1 (x) 1, and -zeta1 plays the role of xi1
    let want_a = ctx.element("zeta1").unwrap().neg();
    assert_eq!(got[0].a, want_a);
    match &got[0].b {
        BFactor::Known(e) => assert_eq!(e, &one_b),
        other => panic!("expected a known unit, got {other:?}"),
    }
}

#[test]
fn tensor_unit_left_factor_leaves_a_symbolic_marker() {
    use crate::gring::{AlgebraPresentation, GeneratorKind, GeneratorSpec, Ring, SignRule};
    let ctx = dual_steenrod(2, Presentation::Zeta, 7).unwrap();
    let b_alg = AlgebraPresentation::new(
        Ring::Fp(2),
        vec![GeneratorSpec::new("y", 1, GeneratorKind::Polynomial)],
        SignRule::Koszul,
    )
    .expand(6)
    .unwrap();
    let one_a = Element::one(&ctx.algebra);
    let y = Element::generator(&b_alg, "y").unwrap();
    let got = apply_dl_tensor(&DLWord::q(2, 3), &[(one_a.clone(), y.clone())], &ctx).unwrap();
    assert_eq!(got.len(), 1);
    assert_eq!(got[0].a, one_a);
    match &got[0].b {
        BFactor::Op { beta: false, q: Some(3), arg } => assert_eq!(arg, &y),
        other => panic!("expected a symbolic Q^3 marker, got {other:?}"),
    }
}

#[test]
fn tensor_cartan_grows_left_degrees() {
    use crate::gring::{AlgebraPresentation, GeneratorKind, GeneratorSpec, Ring, SignRule};
    // over the integral homology there is no table, so every surviving
    // left factor strictly gains degree
    let hz = hfp_homology_of_hz(3, 14).unwrap();
    let b_alg = AlgebraPresentation::new(
        Ring::Fp(3),
        vec![GeneratorSpec::new("y", 3, GeneratorKind::Exterior)],
        SignRule::Koszul,
    )
    .expand(12)
    .unwrap();
    let xi1 = Element::generator(&hz.algebra, "xi1").unwrap();
    let y = Element::generator(&b_alg, "y").unwrap();
    let got = apply_dl_tensor(&DLWord::q(3, 4), &[(xi1.clone(), y)], &hz.dl).unwrap();
    assert!(!got.is_empty());
    for t in &got {
        let d = t.a.degree().unwrap().unwrap();
        assert!(d > 4, "left degree {d} did not grow");
    }
}
