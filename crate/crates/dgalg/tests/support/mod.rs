//! Brute-force cross-check: the full (unnormalized) cyclic bar complex,
//! built by plain enumeration with no removal of unit factors.

use std::collections::BTreeMap;

use dgalg::dga::{complex_homology, BasisId, ChainComplex, Dga, HomologyResult, ModuleValue};
use dgalg::gring::fga::normalize_invariant_factors_with_rank;
use dgalg::gring::{IntMatrix, Ring};
use num_bigint::BigInt;
use num_traits::Zero;

type Tens = (BasisId, Vec<BasisId>);

fn tdeg(t: &Tens) -> i64 {
    t.0 .0 + t.1.iter().map(|id| id.0).sum::<i64>() + t.1.len() as i64
}

fn sgn(k: i64) -> BigInt {
    if k % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// Homology of the unnormalized complex through total degree `cap`.
pub fn unnormalized_homology(x: &Dga, cap: i64) -> HomologyResult {
    let build = cap + 1;
    let all: Vec<BasisId> = x
        .degrees()
        .flat_map(|d| (0..x.dim(d)).map(move |i| (d, i)))
        .collect();
    // grow slot lists one at a time; every slot raises the total degree
    let mut tensors: BTreeMap<i64, Vec<Tens>> = BTreeMap::new();
    let mut frontier: Vec<Tens> = all
        .iter()
        .map(|&h| (h, Vec::new()))
        .filter(|t| tdeg(t) <= build)
        .collect();
    let mut acc = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for t in &frontier {
            for &s in &all {
                let mut u = t.clone();
                u.1.push(s);
                if tdeg(&u) <= build {
                    next.push(u);
                }
            }
        }
        acc.extend(next.iter().cloned());
        frontier = next;
    }
    for t in acc {
        tensors.entry(tdeg(&t)).or_default().push(t);
    }
    for v in tensors.values_mut() {
        v.sort();
    }

    let dims: BTreeMap<i64, usize> = tensors.iter().map(|(&d, v)| (d, v.len())).collect();
    let pos = |t: &Tens| -> usize {
        tensors[&tdeg(t)].binary_search(t).expect("image tensor missing")
    };

    let mut d: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    for (&deg, ts) in &tensors {
        if deg == 0 {
            continue;
        }
        let rows = dims.get(&(deg - 1)).copied().unwrap_or(0);
        let mut m = IntMatrix::zero(rows, ts.len());
        for (col, t) in ts.iter().enumerate() {
            for (c, u) in boundary_terms(x, t) {
                if !c.is_zero() {
                    let v = m.get(pos(&u), col) + c;
                    m.set(pos(&u), col, v);
                }
            }
        }
        d.insert(deg, m);
    }

    complex_homology(&ChainComplex { ring: x.ring, dims, d }).unwrap()
}

fn boundary_terms(x: &Dga, t: &Tens) -> Vec<(BigInt, Tens)> {
    let (head, slots) = t;
    let n = slots.len();
    let mut out = Vec::new();
    if n >= 1 {
        let p = x.mul(&x.basis_chain(*head), &x.basis_chain(slots[0]));
        for (k, c) in p.coords.iter().enumerate() {
            out.push((c.clone(), ((p.degree, k), slots[1..].to_vec())));
        }
        for i in 1..n {
            let p = x.mul(&x.basis_chain(slots[i - 1]), &x.basis_chain(slots[i]));
            for (k, c) in p.coords.iter().enumerate() {
                let mut rest = slots.clone();
                rest[i - 1] = (p.degree, k);
                rest.remove(i);
                out.push((c * sgn(i as i64), (*head, rest)));
            }
        }
        let last = slots[n - 1];
        let rest_deg: i64 = head.0 + slots[..n - 1].iter().map(|id| id.0).sum::<i64>();
        let s = sgn(n as i64) * sgn(last.0 * rest_deg);
        let p = x.mul(&x.basis_chain(last), &x.basis_chain(*head));
        for (k, c) in p.coords.iter().enumerate() {
            out.push((c * &s, ((p.degree, k), slots[..n - 1].to_vec())));
        }
    }
    // internal differential, slotwise, weighted by the bar-length parity
    let outer = sgn(n as i64);
    let dh = x.apply_d(&x.basis_chain(*head));
    for (k, c) in dh.coords.iter().enumerate() {
        out.push((c * &outer, ((dh.degree, k), slots.clone())));
    }
    let mut prefix = head.0;
    for i in 0..n {
        let s = &outer * sgn(prefix);
        let di = x.apply_d(&x.basis_chain(slots[i]));
        for (k, c) in di.coords.iter().enumerate() {
            let mut rest = slots.clone();
            rest[i] = (di.degree, k);
            out.push((c * &s, (*head, rest)));
        }
        prefix += slots[i].0;
    }
    out
}

/// The value the oracle reports in one degree, zero when absent.
pub fn oracle_value(h: &HomologyResult, d: i64) -> ModuleValue {
    h.modules.get(&d).cloned().unwrap_or_else(|| match h.ring {
        Ring::Fp(_) => ModuleValue::FieldDim(0),
        _ => ModuleValue::Group(normalize_invariant_factors_with_rank(vec![], 0)),
    })
}
