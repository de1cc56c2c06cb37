//! Structural laws: the cyclic bar differential squares to zero, invalid
//! differentials and products are rejected at construction, and torsion
//! products obey symmetry and the gcd rule.

use std::collections::BTreeMap;

use dgalg::dga::{formal_dga, Dga, GradedRingTable};
use dgalg::gring::{
    fga::normalize_invariant_factors, AlgebraPresentation, FgAbelianGroup, GeneratorKind,
    GeneratorSpec, IntMatrix, Ring, SignRule,
};
use dgalg::hochschild::hochschild_complex;
use dgalg::thh::tor_fg;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Fp(2)), Just(Ring::Fp(3)), Just(Ring::Z)]
}

fn build_table(ring: Ring, deg: u32, h: u32) -> GradedRingTable {
    let gens = vec![GeneratorSpec::new("x", deg, GeneratorKind::Truncated(h))];
    let a = AlgebraPresentation::new(ring, gens, SignRule::Koszul)
        .expand(deg * (h - 1))
        .unwrap();
    GradedRingTable::from_algebra(&a).unwrap()
}

/// Unit in degree 0, chains in degrees 1..=3, differentials only out of
/// degrees 2 and 3, and only unit products, so the Leibniz rule is automatic
/// and validity rests entirely on d o d.
fn chain_data(
    dims: (usize, usize, usize),
    m2: &[Vec<i64>],
    m3: &[Vec<i64>],
) -> (
    BTreeMap<i64, Vec<String>>,
    BTreeMap<i64, IntMatrix>,
    BTreeMap<((i64, usize), (i64, usize)), Vec<BigInt>>,
) {
    let mut names = BTreeMap::new();
    names.insert(0i64, vec!["1".to_string()]);
    for (d, n) in [(1i64, dims.0), (2, dims.1), (3, dims.2)] {
        names.insert(d, (0..n).map(|i| format!("e{d}_{i}")).collect());
    }
    let fill = |rows: usize, cols: usize, m: &[Vec<i64>]| {
        let mut im = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                im.set(i, j, BigInt::from(m[i % m.len()][j % m[0].len()]));
            }
        }
        im
    };
    let mut diff = BTreeMap::new();
    diff.insert(2i64, fill(dims.0, dims.1, m2));
    diff.insert(3i64, fill(dims.1, dims.2, m3));
    let mut products = BTreeMap::new();
    for (&d, ns) in &names {
        for i in 0..ns.len() {
            let mut e = vec![BigInt::zero(); ns.len()];
            e[i] = BigInt::one();
            products.insert(((0, 0), (d, i)), e.clone());
            products.insert(((d, i), (0, 0)), e);
        }
    }
    (names, diff, products)
}

fn arb_group() -> impl Strategy<Value = FgAbelianGroup> {
    (proptest::collection::vec(1u64..60, 0..4), 0usize..3).prop_map(|(factors, rank)| {
        let mut g = normalize_invariant_factors(factors.into_iter().map(BigUint::from).collect());
        g.free_rank += rank;
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cyclic_bar_differential_squares_to_zero(
        ring in arb_ring(),
        deg in 1u32..=2,
        h in 2u32..=3,
        cap in 2i64..=4,
    ) {
        // odd generators square to zero away from characteristic 2
        let deg = match ring {
            Ring::Fp(2) => deg,
            _ => 2 * deg,
        };
        let t = build_table(ring, deg, h);
        let x = formal_dga(&t).unwrap();
        let complex = hochschild_complex(&x, cap, None).unwrap().total_complex();
        let degrees: Vec<i64> = complex.d.keys().copied().collect();
        for n in degrees {
            if let (Some(dn), Some(dn1)) = (complex.d.get(&n), complex.d.get(&(n + 1))) {
                prop_assert!(dn.mul(dn1).is_zero(), "b o b != 0 out of degree {}", n + 1);
            }
        }
    }

    #[test]
    fn differentials_that_do_not_square_to_zero_are_rejected(
        ring in arb_ring(),
        m2 in proptest::collection::vec(proptest::collection::vec(-2i64..3, 2), 2),
        m3 in proptest::collection::vec(proptest::collection::vec(-2i64..3, 2), 2),
    ) {
        let (names, diff, products) = chain_data((2, 2, 2), &m2, &m3);
        let composite = diff[&2].mul(&diff[&3]);
        let squares = match ring {
            Ring::Fp(p) => composite.entries().all(|(_, v)| (v % BigInt::from(p)).is_zero()),
            _ => composite.is_zero(),
        };
        let built = Dga::new(ring, names, diff, products, vec![BigInt::one()]);
        prop_assert_eq!(built.is_ok(), squares);
    }

    #[test]
    fn products_violating_the_leibniz_rule_are_rejected(
        ring in arb_ring(),
        k in 1i64..6,
    ) {
        // d(a*b) = d(c) = k*a, while d(a)*b +/- a*d(b) = 0
        prop_assume!(match ring { Ring::Fp(p) => k % p as i64 != 0, _ => true });
        let mut names = BTreeMap::new();
        names.insert(0i64, vec!["1".to_string()]);
        names.insert(1, vec!["a".to_string(), "b".to_string()]);
        names.insert(2, vec!["c".to_string()]);
        let mut diff = BTreeMap::new();
        let mut d2 = IntMatrix::zero(2, 1);
        d2.set(0, 0, BigInt::from(k));
        diff.insert(2i64, d2);
        let mut products = BTreeMap::new();
        for (&d, ns) in &names {
            for i in 0..ns.len() {
                let mut e = vec![BigInt::zero(); ns.len()];
                e[i] = BigInt::one();
                products.insert(((0, 0), (d, i)), e.clone());
                products.insert(((d, i), (0, 0)), e);
            }
        }
        products.insert(((1, 0), (1, 1)), vec![BigInt::one()]);
        products.insert(((1, 1), (1, 0)), vec![-BigInt::one()]);
        prop_assert!(Dga::new(ring, names, diff, products, vec![BigInt::one()]).is_err());
    }

    #[test]
    fn torsion_product_is_symmetric(a in arb_group(), b in arb_group()) {
        prop_assert_eq!(tor_fg(&a, &b), tor_fg(&b, &a));
    }

    #[test]
    fn torsion_product_of_cyclic_groups_follows_the_gcd(m in 1u64..80, n in 1u64..80) {
        let zm = normalize_invariant_factors(vec![BigUint::from(m)]);
        let zn = normalize_invariant_factors(vec![BigUint::from(n)]);
        let g = gcd(m, n);
        let want = normalize_invariant_factors(vec![BigUint::from(g)]);
        prop_assert_eq!(tor_fg(&zm, &zn), want);
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}
