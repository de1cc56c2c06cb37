//! Homogeneous bases closed under multiplication up to zero
//! ("monoid bases"), exhaustive search for them, and the wedge-format
//! multiplication model they induce.
//!
//! ```
//! use dgalg::basis::{check_monoid_basis, table_candidate, CheckOutcome};
//! use dgalg::dga::GradedRingTable;
//! use dgalg::gring::{AlgebraPresentation, GeneratorKind, GeneratorSpec, Ring, SignRule};
//!
//! let a = AlgebraPresentation::new(
//!     Ring::Z,
//!     vec![GeneratorSpec::new("x", 2, GeneratorKind::Truncated(2))],
//!     SignRule::Koszul,
//! )
//! .expand(4)
//! .unwrap();
//! let t = GradedRingTable::from_algebra(&a).unwrap();
//! match check_monoid_basis(&t, &table_candidate(&t)).unwrap() {
//!     CheckOutcome::Certified(b) => assert_eq!(b.elements.len(), 2),
//!     CheckOutcome::Violation(_) => unreachable!(),
//! }
//! ```


use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dga::{GradedRingTable, TableElement};
use crate::error::{Error, Result};
use crate::gring::{FpMatrix, IntMatrix, Ring};

/// One element of a certified monoid basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
    pub coords: Vec<BigInt>,
}

/// A homogeneous basis of a graded ring in which every product of two basis
/// elements is again a basis element or zero, together with the resulting
/// monoid-with-zero multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidBasis {
    pub elements: Vec<BasisElement>,
    pub unit_index: usize,
    /// `product[(i, j)] = Some(k)` when element i times element j is element
    /// k, `None` when the product is zero.
    pub product: BTreeMap<(usize, usize), Option<usize>>,
}

/// Witness that a candidate basis is not closed under multiplication: the
/// offending pair and its actual product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisViolation {
    pub left: usize,
    pub right: usize,
    pub product: TableElement,
}

/// Result of checking one candidate basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Certified(MonoidBasis),
    Violation(BasisViolation),
}

/// Result of searching for a monoid basis.
#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Found(MonoidBasis),
    /// The candidate space was provably exhausted without a hit.
    ProvenNone,
    /// The candidate space exceeds the budget and no heuristic candidate
    /// worked; existence is undecided.
    BudgetExhausted,
}

/// Bounds on the basis search.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Maximal number of basis combinations tried before giving up.
    pub max_candidates: u64,
    /// Entry bound for integral change-of-basis candidates in ranks > 1.
    pub entry_bound: i64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_candidates: 200_000, entry_bound: 2 }
    }
}

/// The wedge-format model of a monoid basis: one summand per basis element,
/// products given by the summand of the product element or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeModel {
    pub summands: Vec<(String, i64)>,
    pub unit_index: usize,
    pub multiplication: BTreeMap<(usize, usize), Option<usize>>,
}

/// A candidate basis: named homogeneous elements given by coordinates in the
/// table's degreewise bases.
pub type Candidate = Vec<(String, i64, Vec<BigInt>)>;

/// The table's own basis as a candidate (identity coordinates).
pub fn table_candidate(t: &GradedRingTable) -> Candidate {
    let mut out = Vec::new();
    for (&d, ns) in &t.names {
        for (i, n) in ns.iter().enumerate() {
            let mut coords = vec![BigInt::zero(); ns.len()];
            coords[i] = BigInt::one();
            out.push((n.clone(), d, coords));
        }
    }
    out
}

fn check_invertible(t: &GradedRingTable, d: i64, cols: &[&Vec<BigInt>]) -> Result<()> {
    let n = t.dim(d);
    if cols.len() != n {
        return Err(Error::NotABasis(format!(
            "degree {d} has {} candidate elements for dimension {n}",
            cols.len()
        )));
    }
    if n == 0 {
        return Ok(());
    }
    match t.ring {
        Ring::Fp(p) => {
            let mut m = FpMatrix::zero(p, n, n);
            let ring = Ring::Fp(p);
            for (j, c) in cols.iter().enumerate() {
                for (i, v) in c.iter().enumerate() {
                    use num_traits::ToPrimitive;
                    m.set(i, j, ring.reduce(v.clone()).to_u64().unwrap());
                }
            }
            if m.rank() != n {
                return Err(Error::NotABasis(format!(
                    "degree {d} change of basis is singular"
                )));
            }
        }
        Ring::Z => {
            let mut m = IntMatrix::zero(n, n);
            for (j, c) in cols.iter().enumerate() {
                for (i, v) in c.iter().enumerate() {
                    m.set(i, j, v.clone());
                }
            }
            let det = m.det();
            if !det.abs().is_one() {
                return Err(Error::NotABasis(format!(
                    "degree {d} change of basis has determinant {det}"
                )));
            }
        }
        Ring::Zm(m) => {
            return Err(Error::NotSupported(format!(
                "monoid-basis checking over Z/{m}"
            )))
        }
    }
    Ok(())
}

/// Check a candidate homogeneous basis for closure under multiplication.
///
/// The candidate must be a genuine degreewise basis (correct cardinality,
/// invertible change of basis over the coefficient ring) containing the
/// table unit; otherwise `NotABasis`.  Products are checked for every pair
/// whose degree-sum is tracked by the table.
pub fn check_monoid_basis(t: &GradedRingTable, candidate: &Candidate) -> Result<CheckOutcome> {
    if t.dim(0) == 0 || t.unit.iter().all(Zero::is_zero) {
        return Err(Error::NotABasis("table has a zero unit".into()));
    }
    if t.orders.values().flatten().any(|o| !o.is_zero()) {
        return Err(Error::NotSupported(
            "monoid-basis checking over torsion pieces".into(),
        ));
    }
    // group by degree and verify basis property
    let mut by_degree: BTreeMap<i64, Vec<&Vec<BigInt>>> = BTreeMap::new();
    for (_, d, coords) in candidate {
        if coords.len() != t.dim(*d) {
            return Err(Error::NotABasis(format!(
                "candidate element in degree {d} has {} coordinates, expected {}",
                coords.len(),
                t.dim(*d)
            )));
        }
        by_degree.entry(*d).or_default().push(coords);
    }
    for (&d, ns) in &t.names {
        if ns.is_empty() {
            continue;
        }
        let empty = Vec::new();
        let cols = by_degree.get(&d).unwrap_or(&empty);
        check_invertible(t, d, cols)?;
    }
    for &d in by_degree.keys() {
        if t.dim(d) == 0 {
            return Err(Error::NotABasis(format!(
                "candidate has elements in empty degree {d}"
            )));
        }
    }
    // the unit must literally be one of the candidate elements
    let unit = t.reduce_element(&t.unit_element());
    let elements: Vec<BasisElement> = candidate
        .iter()
        .map(|(n, d, c)| BasisElement {
            name: n.clone(),
            degree: *d,
            coords: t
                .reduce_element(&TableElement { degree: *d, coords: c.clone() })
                .coords,
        })
        .collect();
    let unit_index = elements
        .iter()
        .position(|e| e.degree == 0 && e.coords == unit.coords)
        .ok_or_else(|| Error::NotABasis("unit is not among the candidate elements".into()))?;
    // closure check on all tracked pairs
    let mut product = BTreeMap::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            if !t.product_tracked(a.degree, b.degree) {
                continue;
            }
            let p = t.mul(
                &TableElement { degree: a.degree, coords: a.coords.clone() },
                &TableElement { degree: b.degree, coords: b.coords.clone() },
            )?;
            if p.coords.iter().all(Zero::is_zero) {
                product.insert((i, j), None);
                continue;
            }
            match elements
                .iter()
                .position(|e| e.degree == p.degree && e.coords == p.coords)
            {
                Some(k) => {
                    product.insert((i, j), Some(k));
                }
                None => {
                    return Ok(CheckOutcome::Violation(BasisViolation {
                        left: i,
                        right: j,
                        product: p,
                    }))
                }
            }
        }
    }
    Ok(CheckOutcome::Certified(MonoidBasis { elements, unit_index, product }))
}

/// All linearly independent size-`n` subsets of F_p^n, in lexicographic
/// order of vector tuples.  Degree-0 candidates are filtered later so the
/// unit stays a literal basis element.
fn fp_bases(p: u64, n: usize) -> Vec<Vec<Vec<BigInt>>> {
    // enumerate nonzero vectors in lex order
    let mut vectors = Vec::new();
    let total = (p as u128).pow(n as u32);
    for code in 1..total {
        let mut v = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            v.push(BigInt::from((c % p as u128) as u64));
            c /= p as u128;
        }
        v.reverse();
        vectors.push(v);
    }
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn independent(p: u64, chosen: &[&Vec<BigInt>]) -> bool {
        let n = chosen[0].len();
        let mut m = FpMatrix::zero(p, n, chosen.len());
        for (j, c) in chosen.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                use num_traits::ToPrimitive;
                m.set(i, j, v.to_u64().unwrap());
            }
        }
        m.rank() == chosen.len()
    }
    fn rec(
        p: u64,
        n: usize,
        vectors: &[Vec<BigInt>],
        start: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<BigInt>>>,
    ) {
        if stack.len() == n {
            out.push(stack.iter().map(|&i| vectors[i].clone()).collect());
            return;
        }
        for i in start..vectors.len() {
            stack.push(i);
            let chosen: Vec<&Vec<BigInt>> = stack.iter().map(|&k| &vectors[k]).collect();
            if independent(p, &chosen) {
                rec(p, n, vectors, i + 1, stack, out);
            }
            stack.pop();
        }
    }
    rec(p, n, &vectors, 0, &mut stack, &mut out);
    out
}

/// Number of unordered bases of F_p^n.
fn fp_basis_count(p: u64, n: usize) -> u128 {
    let mut gl: u128 = 1;
    let pn = (p as u128).pow(n as u32);
    for i in 0..n {
        gl = gl.saturating_mul(pn - (p as u128).pow(i as u32));
    }
    let mut fact: u128 = 1;
    for i in 1..=n as u128 {
        fact *= i;
    }
    gl / fact
}

fn candidate_from_choice(
    t: &GradedRingTable,
    choice: &BTreeMap<i64, Vec<Vec<BigInt>>>,
) -> Candidate {
    let mut out = Vec::new();
    for (&d, vs) in choice {
        for (i, v) in vs.iter().enumerate() {
            out.push((format!("m{d}_{i}"), d, v.clone()));
        }
    }
    let _ = t;
    out
}

fn try_combinations(
    t: &GradedRingTable,
    per_degree: &BTreeMap<i64, Vec<Vec<Vec<BigInt>>>>,
) -> Result<Option<MonoidBasis>> {
    let degs: Vec<i64> = per_degree.keys().copied().collect();
    let mut idx = vec![0usize; degs.len()];
    loop {
        let choice: BTreeMap<i64, Vec<Vec<BigInt>>> = degs
            .iter()
            .zip(&idx)
            .map(|(&d, &i)| (d, per_degree[&d][i].clone()))
            .collect();
        let cand = candidate_from_choice(t, &choice);
        if let CheckOutcome::Certified(b) = check_monoid_basis(t, &cand)? {
            return Ok(Some(b));
        }
        // odometer step
        let mut k = degs.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_degree[&degs[k]].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Search for a monoid basis.
///
/// Over a prime field the degreewise basis space is enumerated exhaustively
/// when its size fits the budget, giving either a hit or `ProvenNone`.
/// Over Z exhaustion is only possible when every graded piece has rank at
/// most one (candidates are ±generator); for larger ranks a bounded family
/// of unimodular changes of basis is tried and failure is reported as
/// `BudgetExhausted`, never `ProvenNone`.
pub fn search_monoid_basis(t: &GradedRingTable, budget: SearchBudget) -> Result<SearchOutcome> {
    if t.dim(0) == 0 || t.unit.iter().all(Zero::is_zero) {
        return Err(Error::NotABasis("table has a zero unit".into()));
    }
    if t.orders.values().flatten().any(|o| !o.is_zero()) {
        return Err(Error::NotSupported(
            "monoid-basis search over torsion pieces".into(),
        ));
    }
    let dims: BTreeMap<i64, usize> = t
        .names
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(&d, v)| (d, v.len()))
        .collect();
    match t.ring {
        Ring::Fp(p) => {
            let mut total: u128 = 1;
            for (&d, &n) in &dims {
                let c = fp_basis_count(p, n);
                // degree 0 keeps only bases containing the unit; the count
                // only shrinks, so this stays a valid budget bound
                let _ = d;
                total = total.saturating_mul(c);
            }
            if total > budget.max_candidates as u128 {
                // heuristic: the table's own basis
                return Ok(match check_monoid_basis(t, &table_candidate(t))? {
                    CheckOutcome::Certified(b) => SearchOutcome::Found(b),
                    CheckOutcome::Violation(_) => SearchOutcome::BudgetExhausted,
                });
            }
            let unit = t.reduce_element(&t.unit_element()).coords;
            let mut per_degree = BTreeMap::new();
            for (&d, &n) in &dims {
                let mut bases = fp_bases(p, n);
                if d == 0 {
                    bases.retain(|b| b.contains(&unit));
                }
                if bases.is_empty() {
                    return Ok(SearchOutcome::ProvenNone);
                }
                per_degree.insert(d, bases);
            }
            Ok(match try_combinations(t, &per_degree)? {
                Some(b) => SearchOutcome::Found(b),
                None => SearchOutcome::ProvenNone,
            })
        }
        Ring::Z => {
            let rank_le_one = dims.values().all(|&n| n <= 1);
            if rank_le_one {
                let mut per_degree = BTreeMap::new();
                for (&d, _) in &dims {
                    if d == 0 {
                        per_degree.insert(d, vec![vec![t.unit.clone()]]);
                    } else {
                        per_degree.insert(
                            d,
                            vec![
                                vec![vec![BigInt::one()]],
                                vec![vec![BigInt::from(-1)]],
                            ],
                        );
                    }
                }
                let combos: u128 = per_degree.values().map(|v| v.len() as u128).product();
                if combos > budget.max_candidates as u128 {
                    return Ok(SearchOutcome::BudgetExhausted);
                }
                return Ok(match try_combinations(t, &per_degree)? {
                    Some(b) => SearchOutcome::Found(b),
                    None => SearchOutcome::ProvenNone,
                });
            }
            // bounded unimodular candidates in higher rank: try the table
            // basis and entry-bounded sign/permutation/shear images of it
            let mut per_degree: BTreeMap<i64, Vec<Vec<Vec<BigInt>>>> = BTreeMap::new();
            for (&d, &n) in &dims {
                let mut cands = Vec::new();
                let ident: Vec<Vec<BigInt>> = (0..n)
                    .map(|i| {
                        let mut v = vec![BigInt::zero(); n];
                        v[i] = BigInt::one();
                        v
                    })
                    .collect();
                cands.push(ident.clone());
                if d != 0 {
                    for i in 0..n {
                        for j in 0..n {
                            if i == j {
                                continue;
                            }
                            for c in 1..=budget.entry_bound {
                                let mut b = ident.clone();
                                b[i][j] = BigInt::from(c);
                                cands.push(b.clone());
                                b[i][j] = BigInt::from(-c);
                                cands.push(b);
                            }
                        }
                    }
                    for i in 0..n {
                        let mut b = ident.clone();
                        b[i][i] = BigInt::from(-1);
                        cands.push(b);
                    }
                }
                per_degree.insert(d, cands);
            }
            let combos: u128 = per_degree.values().map(|v| v.len() as u128).product();
            if combos > budget.max_candidates as u128 {
                per_degree = dims
                    .keys()
                    .map(|&d| (d, vec![per_degree[&d][0].clone()]))
                    .collect();
            }
            Ok(match try_combinations(t, &per_degree)? {
                Some(b) => SearchOutcome::Found(b),
                None => SearchOutcome::BudgetExhausted,
            })
        }
        Ring::Zm(m) => Err(Error::NotSupported(format!(
            "monoid-basis search over Z/{m}"
        ))),
    }
}

/// Build the wedge-format multiplication model of a certified basis and
/// re-verify that the monoid-with-zero it describes is associative and
/// unital.
pub fn wedge_model(b: &MonoidBasis) -> Result<WedgeModel> {
    let summands: Vec<(String, i64)> = b
        .elements
        .iter()
        .map(|e| (e.name.clone(), e.degree))
        .collect();
    let mul = |i: usize, j: usize| -> Option<Option<usize>> {
        b.product.get(&(i, j)).copied()
    };
    for (&(i, j), &val) in &b.product {
        if let Some(k) = val {
            let expect = summands[i].1 + summands[j].1;
            if summands[k].1 != expect {
                return Err(Error::AssociativityFailure(format!(
                    "degrees do not add on pair ({i},{j})"
                )));
            }
        }
    }
    for i in 0..summands.len() {
        if mul(b.unit_index, i) != Some(Some(i)) || mul(i, b.unit_index) != Some(Some(i)) {
            return Err(Error::AssociativityFailure(format!(
                "unit fails on summand {i}"
            )));
        }
    }
    for i in 0..summands.len() {
        for j in 0..summands.len() {
            for k in 0..summands.len() {
                let left = match mul(i, j) {
                    Some(Some(ij)) => mul(ij, k),
                    Some(None) => Some(None),
                    None => continue,
                };
                let right = match mul(j, k) {
                    Some(Some(jk)) => mul(i, jk),
                    Some(None) => Some(None),
                    None => continue,
                };
                match (left, right) {
                    (Some(l), Some(r)) if l != r => {
                        return Err(Error::AssociativityFailure(format!(
                            "({i}*{j})*{k} = {l:?} but {i}*({j}*{k}) = {r:?}"
                        )))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(WedgeModel {
        summands,
        unit_index: b.unit_index,
        multiplication: b.product.clone(),
    })
}

impl WedgeModel {
    /// The graded ring with 0/1 structure constants the model describes.
    pub fn to_table(&self, ring: Ring) -> GradedRingTable {
        let mut names: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut position = Vec::new();
        for (name, d) in &self.summands {
            let v = names.entry(*d).or_default();
            position.push((*d, v.len()));
            v.push(name.clone());
        }
        let orders: BTreeMap<i64, Vec<BigInt>> = names
            .iter()
            .map(|(&d, v)| (d, vec![BigInt::zero(); v.len()]))
            .collect();
        let max_degree = names.keys().max().copied().unwrap_or(0);
        let mut products = BTreeMap::new();
        for (&(i, j), &val) in &self.multiplication {
            if let Some(k) = val {
                let (dk, ik) = position[k];
                let mut coords = vec![BigInt::zero(); names[&dk].len()];
                coords[ik] = BigInt::one();
                products.insert((position[i], position[j]), coords);
            }
        }
        let mut unit = vec![BigInt::zero(); names.get(&0).map_or(0, Vec::len)];
        unit[position[self.unit_index].1] = BigInt::one();
        GradedRingTable { ring, max_degree, names, orders, products, unit, complete: true }
    }
}
