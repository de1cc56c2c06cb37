mod support;

use dgalg::dga::{formal_dga, GradedRingTable};
use dgalg::gring::{AlgebraPresentation, GeneratorKind, GeneratorSpec, Ring, SignRule};
use dgalg::hochschild::{hh, hh_over_z};
use proptest::prelude::*;

use support::{oracle_value, unnormalized_homology};

fn arb_ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Fp(2)), Just(Ring::Fp(3)), Just(Ring::Z)]
}

fn build_table(ring: Ring, deg: u32, h: u32) -> GradedRingTable {
    let a = AlgebraPresentation::new(
        ring,
        vec![GeneratorSpec::new("x", deg, GeneratorKind::Truncated(h))],
        SignRule::Koszul,
    )
    .expand(2 * deg * h)
    .unwrap();
    GradedRingTable::from_algebra(&a).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // the normalized complex computes the same homology as the raw one
    #[test]
    fn normalized_complex_agrees_with_unnormalized(
        ring in arb_ring(),
        deg in 1u32..=3,
        h in 2u32..=3,
        cap in 2i64..=4,
    ) {
        // odd-degree generators over odd characteristic or Z square to zero
        let deg = match ring {
            Ring::Fp(2) => deg,
            _ => 2 * deg,
        };
        let t = build_table(ring, deg, h);
        let result = match ring {
            Ring::Fp(_) => hh(&t, cap).unwrap(),
            _ => hh_over_z(&t, cap).unwrap(),
        };
        let oracle = unnormalized_homology(&formal_dga(&t).unwrap(), cap);
        for d in 0..=cap {
            prop_assert_eq!(&result.modules[&d], &oracle_value(&oracle, d), "degree {}", d);
        }
    }
}
