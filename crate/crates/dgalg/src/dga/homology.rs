use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::dga::table::{GradedRingTable, ModuleValue};
use crate::dga::{Chain, Dga};
use crate::error::{Error, Result};
use crate::gring::fga::normalize_invariant_factors_with_rank;
use crate::gring::{smith_normal_form, solve_integer, unimodular_inverse, FpMatrix, IntMatrix, Ring};

/// A plain chain complex: graded dimensions and differentials lowering
/// degree by one, with no multiplicative structure.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ring: Ring,
    pub dims: BTreeMap<i64, usize>,
    pub d: BTreeMap<i64, IntMatrix>,
}

impl ChainComplex {
    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// The differential out of degree `n`, a zero matrix when unset.
    pub fn d_matrix(&self, n: i64) -> IntMatrix {
        self.d
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zero(self.dim(n - 1), self.dim(n)))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    /// Check that consecutive differentials compose to zero.
    pub fn validate(&self) -> Result<()> {
        for n in self.degrees().collect::<Vec<_>>() {
            let prod = self.d_matrix(n - 1).mul(&self.d_matrix(n));
            let nonzero = prod
                .entries()
                .any(|(_, v)| !self.ring.reduce(v.clone()).is_zero());
            if nonzero {
                return Err(Error::InvalidDga(format!(
                    "d o d is nonzero out of degree {n}"
                )));
            }
        }
        Ok(())
    }
}

impl Dga {
    /// Forget the products: the underlying chain complex.
    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex {
            ring: self.ring,
            dims: self.degrees().map(|n| (n, self.dim(n))).collect(),
            d: self.d.clone(),
        }
    }
}

/// One homology generator: its additive order (zero = free, always zero over
/// a field) and a cycle representing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGenerator {
    pub order: BigInt,
    pub representative: Vec<BigInt>,
}

/// Per-degree homology of a DGA, with explicit cycle representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyResult {
    pub ring: Ring,
    pub modules: BTreeMap<i64, ModuleValue>,
    pub generators: BTreeMap<i64, Vec<HomologyGenerator>>,
}

/// Everything needed to project a cycle in one degree onto the chosen
/// homology generators.
enum Projector {
    Field {
        p: u64,
        /// columns: homology representatives, then an image basis
        reps: Vec<Vec<u64>>,
        image: Vec<Vec<u64>>,
        dim: usize,
    },
    Lattice {
        /// columns form a basis of the cycle lattice
        kernel: IntMatrix,
        /// row transform of the SNF of the boundary-in-kernel matrix
        ux: IntMatrix,
        /// full diagonal as orders (0 = free), one per kernel basis vector
        full_orders: Vec<BigInt>,
    },
}

impl Projector {
    /// Homology coordinates of a cycle, one per retained generator.
    fn project(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        match self {
            Projector::Field { p, reps, image, dim } => {
                let cols: Vec<&Vec<u64>> = reps.iter().chain(image.iter()).collect();
                let mut m = FpMatrix::zero(*p, *dim, cols.len());
                for (j, c) in cols.iter().enumerate() {
                    for (i, &v) in c.iter().enumerate() {
                        m.set(i, j, v);
                    }
                }
                let ring = Ring::Fp(*p);
                let t: Vec<u64> = z
                    .iter()
                    .map(|v| ring.reduce(v.clone()).to_u64().unwrap())
                    .collect();
                let sol = m.solve(&t).ok_or_else(|| {
                    Error::RepresentativeFailure("cycle not in span of representatives and boundaries".into())
                })?;
                Ok(sol[..reps.len()].iter().map(|&v| BigInt::from(v)).collect())
            }
            Projector::Lattice { kernel, ux, full_orders } => {
                let a = solve_integer(kernel, z).ok_or_else(|| {
                    Error::RepresentativeFailure("cycle not in the cycle lattice".into())
                })?;
                let w = ux.apply(&a);
                let mut out = Vec::new();
                for (i, ord) in full_orders.iter().enumerate() {
                    if ord.is_one() {
                        continue;
                    }
                    if ord.is_zero() {
                        out.push(w[i].clone());
                    } else {
                        out.push(num_integer::Integer::mod_floor(&w[i], ord));
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Reduce `v` against echelon rows (each with leading entry 1 at `pivot`).
fn reduce_mod_rows(p: u64, rows: &[(usize, Vec<u64>)], v: &mut Vec<u64>) {
    for (pivot, row) in rows {
        let f = v[*pivot];
        if f != 0 {
            for (x, r) in v.iter_mut().zip(row) {
                *x = (*x + p - (f as u128 * *r as u128 % p as u128) as u64) % p;
            }
        }
    }
}

fn insert_echelon(p: u64, rows: &mut Vec<(usize, Vec<u64>)>, mut v: Vec<u64>) -> bool {
    reduce_mod_rows(p, rows, &mut v);
    let Some(pivot) = v.iter().position(|&x| x != 0) else {
        return false;
    };
    // normalize leading entry to 1
    let inv = {
        let mut r = 1u64;
        let mut b = v[pivot] % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = (r as u128 * b as u128 % p as u128) as u64;
            }
            b = (b as u128 * b as u128 % p as u128) as u64;
            e >>= 1;
        }
        r
    };
    for x in v.iter_mut() {
        *x = (*x as u128 * inv as u128 % p as u128) as u64;
    }
    rows.push((pivot, v));
    rows.sort_by_key(|(pv, _)| *pv);
    true
}

fn field_degree_homology(x: &ChainComplex, p: u64, n: i64) -> (Vec<HomologyGenerator>, Projector) {
    let dim = x.dim(n);
    let dn = x.d_matrix(n);
    let dn = FpMatrix::from_bigint_entries(p, dn.rows, dn.cols, dn.entries().map(|(k, v)| (*k, v)));
    let dn1 = x.d_matrix(n + 1);
    let dn1 = FpMatrix::from_bigint_entries(p, dn1.rows, dn1.cols, dn1.entries().map(|(k, v)| (*k, v)));
    // echelon basis of the boundary space
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();
    for j in 0..dn1.cols {
        insert_echelon(p, &mut rows, dn1.column(j));
    }
    let image: Vec<Vec<u64>> = rows.iter().map(|(_, r)| r.clone()).collect();
    // kernel vectors surviving reduction against the boundaries become the
    // homology representatives, in the deterministic kernel-basis order
    let mut reps = Vec::new();
    let mut span = rows.clone();
    for v in dn.kernel() {
        let mut w = v.clone();
        reduce_mod_rows(p, &span, &mut w);
        if w.iter().any(|&x| x != 0) {
            insert_echelon(p, &mut span, v.clone());
            reps.push(v);
        }
    }
    let gens = reps
        .iter()
        .map(|r| HomologyGenerator {
            order: BigInt::zero(),
            representative: r.iter().map(|&v| BigInt::from(v)).collect(),
        })
        .collect();
    (gens, Projector::Field { p, reps, image, dim })
}

/// Basis of the column lattice spanned by the columns of `m`.
fn column_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let uinv = unimodular_inverse(&snf.u);
    let r = snf.rank();
    let mut out = IntMatrix::zero(m.rows, r);
    let diag = snf.diagonal();
    for j in 0..r {
        for i in 0..m.rows {
            out.set(i, j, uinv.get(i, j) * &diag[j]);
        }
    }
    out
}

/// Present the quotient (lattice spanned by `kernel` columns) / (lattice
/// spanned by `boundaries` columns expressed in ambient coordinates).
fn lattice_quotient(
    kernel: IntMatrix,
    boundary_cols: Vec<Vec<BigInt>>,
) -> Result<(Vec<HomologyGenerator>, Projector)> {
    let k = kernel.cols;
    let mut x = IntMatrix::zero(k, boundary_cols.len());
    for (j, b) in boundary_cols.iter().enumerate() {
        let a = solve_integer(&kernel, b).ok_or_else(|| {
            Error::RepresentativeFailure("boundary is not a cycle".into())
        })?;
        for (i, v) in a.into_iter().enumerate() {
            x.set(i, j, v);
        }
    }
    let snf = smith_normal_form(&x);
    let diag = snf.diagonal();
    let mut full_orders = vec![BigInt::zero(); k];
    for (i, d) in diag.iter().enumerate() {
        full_orders[i] = d.clone();
    }
    let gen_matrix = kernel.mul(&unimodular_inverse(&snf.u));
    let mut gens = Vec::new();
    for i in 0..k {
        if full_orders[i].is_one() {
            continue;
        }
        gens.push(HomologyGenerator {
            order: full_orders[i].clone(),
            representative: gen_matrix.column(i),
        });
    }
    Ok((gens, Projector::Lattice { kernel, ux: snf.u, full_orders }))
}

fn integer_degree_homology(x: &ChainComplex, n: i64) -> Result<(Vec<HomologyGenerator>, Projector)> {
    let dn = x.d_matrix(n);
    let snf = smith_normal_form(&dn);
    let r = snf.rank();
    // cycle lattice: trailing columns of V
    let mut kernel = IntMatrix::zero(dn.cols, dn.cols - r);
    for j in r..dn.cols {
        for i in 0..dn.cols {
            kernel.set(i, j - r, snf.v.get(i, j));
        }
    }
    let dn1 = x.d_matrix(n + 1);
    let boundaries: Vec<Vec<BigInt>> = (0..dn1.cols).map(|j| dn1.column(j)).collect();
    lattice_quotient(kernel, boundaries)
}

/// Homology over Z/m through the integral lattice of mod-m cycles:
/// ker_{Z/m}(d) is the projection of ker_Z([d | mI]).
fn modular_degree_homology(x: &ChainComplex, m: u64, n: i64) -> Result<(Vec<HomologyGenerator>, Projector)> {
    let c = x.dim(n);
    let cm1 = x.dim(n - 1);
    let dn = x.d_matrix(n);
    let mut aug = IntMatrix::zero(cm1, c + cm1);
    for ((i, j), v) in dn.entries() {
        aug.set(*i, *j, v.clone());
    }
    for i in 0..cm1 {
        aug.set(i, c + i, BigInt::from(m));
    }
    let snf = smith_normal_form(&aug);
    let r = snf.rank();
    // project kernel vectors to the first c coordinates and extract a basis
    let mut proj = IntMatrix::zero(c, aug.cols - r);
    for j in r..aug.cols {
        for i in 0..c {
            proj.set(i, j - r, snf.v.get(i, j));
        }
    }
    let kernel = column_lattice_basis(&proj);
    // boundaries: image of d_{n+1} plus m times the ambient basis
    let dn1 = x.d_matrix(n + 1);
    let mut boundaries: Vec<Vec<BigInt>> = (0..dn1.cols).map(|j| dn1.column(j)).collect();
    for i in 0..c {
        let mut v = vec![BigInt::zero(); c];
        v[i] = BigInt::from(m);
        boundaries.push(v);
    }
    lattice_quotient(kernel, boundaries)
}

fn degree_homology(x: &ChainComplex, n: i64) -> Result<(Vec<HomologyGenerator>, Projector)> {
    match x.ring {
        Ring::Fp(p) => Ok(field_degree_homology(x, p, n)),
        Ring::Z => integer_degree_homology(x, n),
        Ring::Zm(m) => modular_degree_homology(x, m, n),
    }
}

fn homology_with_projectors(
    x: &ChainComplex,
) -> Result<(HomologyResult, BTreeMap<i64, Projector>)> {
    let mut modules = BTreeMap::new();
    let mut generators = BTreeMap::new();
    let mut projectors = BTreeMap::new();
    for n in x.degrees().collect::<Vec<_>>() {
        let (gens, proj) = degree_homology(x, n)?;
        let value = match x.ring {
            Ring::Fp(_) => ModuleValue::FieldDim(gens.len()),
            _ => {
                let torsion = gens
                    .iter()
                    .filter(|g| !g.order.is_zero())
                    .map(|g| g.order.magnitude().clone())
                    .collect();
                let free = gens.iter().filter(|g| g.order.is_zero()).count();
                ModuleValue::Group(normalize_invariant_factors_with_rank(torsion, free))
            }
        };
        if !gens.is_empty() {
            modules.insert(n, value);
            generators.insert(n, gens);
            projectors.insert(n, proj);
        }
    }
    Ok((HomologyResult { ring: x.ring, modules, generators }, projectors))
}

/// Per-degree homology, with deterministically chosen cycle representatives.
pub fn homology(x: &Dga) -> Result<HomologyResult> {
    complex_homology(&x.chain_complex())
}

/// Homology of a bare chain complex.
pub fn complex_homology(c: &ChainComplex) -> Result<HomologyResult> {
    Ok(homology_with_projectors(c)?.0)
}

/// The graded ring structure induced on homology: products of the stored
/// cycle representatives, multiplied in the DGA and projected back onto the
/// homology generators.  The resulting table is re-verified for
/// associativity and unitality.
pub fn homology_ring(x: &Dga) -> Result<GradedRingTable> {
    let (h, projectors) = homology_with_projectors(&x.chain_complex())?;
    let mut names = BTreeMap::new();
    let mut orders = BTreeMap::new();
    for (&d, gens) in &h.generators {
        names.insert(
            d,
            (0..gens.len()).map(|i| format!("h{d}_{i}")).collect::<Vec<_>>(),
        );
        orders.insert(d, gens.iter().map(|g| g.order.clone()).collect::<Vec<_>>());
    }
    let max_degree = names.keys().max().copied().unwrap_or(0);
    let mut products = BTreeMap::new();
    let degs: Vec<i64> = names.keys().copied().collect();
    for &d1 in &degs {
        for &d2 in &degs {
            let target = d1 + d2;
            for (i, g1) in h.generators[&d1].iter().enumerate() {
                for (j, g2) in h.generators[&d2].iter().enumerate() {
                    let z = x.mul(
                        &Chain { degree: d1, coords: g1.representative.clone() },
                        &Chain { degree: d2, coords: g2.representative.clone() },
                    );
                    let coords = match projectors.get(&target) {
                        Some(p) => p.project(&z.coords)?,
                        None => {
                            // homology vanishes there; the product must be a
                            // boundary, which projecting to nothing asserts
                            Vec::new()
                        }
                    };
                    if coords.iter().any(|v| !v.is_zero()) {
                        products.insert(((d1, i), (d2, j)), coords);
                    }
                }
            }
        }
    }
    // an acyclic DGA yields the zero ring: empty table, empty unit
    let unit = match projectors.get(&0) {
        Some(p) => p.project(&x.unit)?,
        None => Vec::new(),
    };
    let t = GradedRingTable {
        ring: x.ring,
        max_degree,
        names,
        orders,
        products,
        unit,
        complete: true,
    };
    t.check_associative_unital()?;
    Ok(t)
}
