//! Differential graded algebras: homology as graded modules, the induced
//! homology ring, and formal (zero-differential) DGAs.
//!
//! ```
//! use dgalg::dga::{homology, DgaBuilder};
//! use dgalg::gring::Ring;
//!
//! let mut b = DgaBuilder::new(Ring::Z);
//! b.basis_element("e", 0)
//!     .basis_element("f", 1)
//!     .differential("f", &[("e", 2)])
//!     .product("e", "e", &[("e", 1)])
//!     .product("e", "f", &[("f", 1)])
//!     .product("f", "e", &[("f", 1)])
//!     .unit("e");
//! let x = b.build().unwrap();
//! let h = homology(&x).unwrap();
//! assert_eq!(h.modules[&0].to_string(), "Z/2");
//! ```

mod homology;
mod table;


pub use homology::{complex_homology, homology, homology_ring, ChainComplex, HomologyResult};
pub use table::{BasisId, GradedRingTable, ModuleValue, TableElement};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gring::{IntMatrix, Ring};

/// A differential graded algebra presented by free graded pieces.
///
/// Each degree carries a list of named module generators; `d` stores the
/// matrix of the degree-lowering differential `d_n: C_n -> C_{n-1}` (rows
/// indexed by the degree-(n-1) basis).  `products` holds coordinates of
/// products of basis pairs in the degree-sum; absent pairs multiply to zero.
/// Construction verifies d о d = 0, the graded Leibniz rule on all basis
/// pairs, and that `unit` is a two-sided identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Dga {
    pub ring: Ring,
    pub names: BTreeMap<i64, Vec<String>>,
    pub d: BTreeMap<i64, IntMatrix>,
    pub products: BTreeMap<(BasisId, BasisId), Vec<BigInt>>,
    /// Coordinates of the multiplicative unit in degree 0.
    pub unit: Vec<BigInt>,
    pub connective: bool,
}

/// A homogeneous chain, as coordinates against the basis of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: i64,
    pub coords: Vec<BigInt>,
}

impl Dga {
    pub fn dim(&self, degree: i64) -> usize {
        self.names.get(&degree).map_or(0, Vec::len)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.names
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&d, _)| d)
    }

    pub fn zero_chain(&self, degree: i64) -> Chain {
        Chain { degree, coords: vec![BigInt::zero(); self.dim(degree)] }
    }

    pub fn basis_chain(&self, id: BasisId) -> Chain {
        let mut c = self.zero_chain(id.0);
        c.coords[id.1] = BigInt::one();
        c
    }

    pub fn unit_chain(&self) -> Chain {
        Chain { degree: 0, coords: self.unit.clone() }
    }

    fn reduce(&self, c: Chain) -> Chain {
        Chain {
            degree: c.degree,
            coords: c.coords.into_iter().map(|v| self.ring.reduce(v)).collect(),
        }
    }

    /// Matrix of `d_n`; zero when no entry is stored.
    pub fn d_matrix(&self, n: i64) -> IntMatrix {
        self.d
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zero(self.dim(n - 1), self.dim(n)))
    }

    pub fn apply_d(&self, c: &Chain) -> Chain {
        let m = self.d_matrix(c.degree);
        self.reduce(Chain { degree: c.degree - 1, coords: m.apply(&c.coords) })
    }

    pub fn add(&self, a: &Chain, b: &Chain) -> Result<Chain> {
        if a.degree != b.degree {
            return Err(Error::Inhomogeneous(vec![a.degree, b.degree]));
        }
        Ok(self.reduce(Chain {
            degree: a.degree,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }))
    }

    pub fn scale(&self, a: &Chain, c: &BigInt) -> Chain {
        self.reduce(Chain {
            degree: a.degree,
            coords: a.coords.iter().map(|x| x * c).collect(),
        })
    }

    fn stored_product(&self, a: BasisId, b: BasisId) -> Vec<BigInt> {
        self.products
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| vec![BigInt::zero(); self.dim(a.0 + b.0)])
    }

    /// Bilinear extension of the product table.
    pub fn mul(&self, a: &Chain, b: &Chain) -> Chain {
        let target = a.degree + b.degree;
        let mut out = self.zero_chain(target);
        for (i, ca) in a.coords.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coords.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                for (k, v) in self
                    .stored_product((a.degree, i), (b.degree, j))
                    .iter()
                    .enumerate()
                {
                    out.coords[k] += ca * cb * v;
                }
            }
        }
        self.reduce(out)
    }

    /// Build and validate.  `names` keys with empty lists are dropped.
    pub fn new(
        ring: Ring,
        names: BTreeMap<i64, Vec<String>>,
        d: BTreeMap<i64, IntMatrix>,
        products: BTreeMap<(BasisId, BasisId), Vec<BigInt>>,
        unit: Vec<BigInt>,
    ) -> Result<Dga> {
        ring.validate()?;
        let names: BTreeMap<i64, Vec<String>> =
            names.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let connective = names.keys().all(|&d| d >= 0);
        let dga = Dga { ring, names, d, products, unit, connective };
        dga.validate()?;
        Ok(dga)
    }

    fn validate(&self) -> Result<()> {
        // shape checks
        for (&n, m) in &self.d {
            if m.rows != self.dim(n - 1) || m.cols != self.dim(n) {
                return Err(Error::InvalidDga(format!(
                    "differential in degree {n} has shape {}x{}, expected {}x{}",
                    m.rows,
                    m.cols,
                    self.dim(n - 1),
                    self.dim(n)
                )));
            }
        }
        for (&(a, b), v) in &self.products {
            if a.1 >= self.dim(a.0) || b.1 >= self.dim(b.0) || v.len() != self.dim(a.0 + b.0) {
                return Err(Error::InvalidDga(format!(
                    "product entry ({:?},{:?}) out of shape",
                    a, b
                )));
            }
        }
        if self.unit.len() != self.dim(0) {
            return Err(Error::InvalidDga("unit is not a degree-0 element".into()));
        }
        // d o d = 0
        for &n in self.d.keys() {
            let dd = self.d_matrix(n - 1).mul(&self.d_matrix(n));
            let zero = dd
                .entries()
                .all(|(_, v)| self.ring.reduce(v.clone()).is_zero());
            if !zero {
                return Err(Error::InvalidDga(format!(
                    "d o d is nonzero out of degree {n}"
                )));
            }
        }
        // unit is a two-sided identity
        let one = self.unit_chain();
        for d in self.degrees().collect::<Vec<_>>() {
            for i in 0..self.dim(d) {
                let e = self.basis_chain((d, i));
                if self.mul(&one, &e) != e || self.mul(&e, &one) != e {
                    return Err(Error::NonUnital(format!("unit fails on basis element ({d},{i})")));
                }
            }
        }
        // graded Leibniz rule on basis pairs
        for d1 in self.degrees().collect::<Vec<_>>() {
            for d2 in self.degrees().collect::<Vec<_>>() {
                for i in 0..self.dim(d1) {
                    for j in 0..self.dim(d2) {
                        let a = self.basis_chain((d1, i));
                        let b = self.basis_chain((d2, j));
                        let lhs = self.apply_d(&self.mul(&a, &b));
                        let sign = if d1.rem_euclid(2) == 1 {
                            BigInt::from(-1)
                        } else {
                            BigInt::one()
                        };
                        let rhs = self
                            .add(
                                &self.mul(&self.apply_d(&a), &b),
                                &self.scale(&self.mul(&a, &self.apply_d(&b)), &sign),
                            )
                            .expect("degrees agree");
                        if lhs != rhs {
                            return Err(Error::InvalidDga(format!(
                                "Leibniz rule fails on basis pair ({d1},{i})x({d2},{j})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The DGA with zero differential whose homology ring is the given table.
///
/// Requires every graded piece free (no torsion generators) so the table's
/// basis doubles as a chain basis.
pub fn formal_dga(t: &GradedRingTable) -> Result<Dga> {
    t.check_associative_unital()?;
    if t.orders.values().flatten().any(|o| !o.is_zero()) {
        return Err(Error::NonFreePieces("table has torsion generators".into()));
    }
    Dga::new(
        t.ring,
        t.names.clone(),
        BTreeMap::new(),
        t.products.clone(),
        t.unit.clone(),
    )
}

/// Incremental construction of a `Dga` by generator names.
#[derive(Debug, Default)]
pub struct DgaBuilder {
    ring: Option<Ring>,
    names: BTreeMap<i64, Vec<String>>,
    position: BTreeMap<String, BasisId>,
    d: Vec<(String, Vec<(String, BigInt)>)>,
    products: Vec<(String, String, Vec<(String, BigInt)>)>,
    unit: Option<String>,
}

impl DgaBuilder {
    pub fn new(ring: Ring) -> Self {
        DgaBuilder { ring: Some(ring), ..Default::default() }
    }

    pub fn basis_element(&mut self, name: &str, degree: i64) -> &mut Self {
        let v = self.names.entry(degree).or_default();
        self.position.insert(name.into(), (degree, v.len()));
        v.push(name.into());
        self
    }

    /// d(name) = the given linear combination.
    pub fn differential(&mut self, name: &str, image: &[(&str, i64)]) -> &mut Self {
        self.d.push((
            name.into(),
            image.iter().map(|&(n, c)| (n.into(), BigInt::from(c))).collect(),
        ));
        self
    }

    pub fn product(&mut self, a: &str, b: &str, value: &[(&str, i64)]) -> &mut Self {
        self.products.push((
            a.into(),
            b.into(),
            value.iter().map(|&(n, c)| (n.into(), BigInt::from(c))).collect(),
        ));
        self
    }

    pub fn unit(&mut self, name: &str) -> &mut Self {
        self.unit = Some(name.into());
        self
    }

    fn lookup(&self, name: &str) -> Result<BasisId> {
        self.position
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidDga(format!("unknown basis element '{name}'")))
    }

    pub fn build(&self) -> Result<Dga> {
        let ring = self.ring.expect("builder created via new");
        let mut d: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for (src, image) in &self.d {
            let (deg, col) = self.lookup(src)?;
            let rows = self.names.get(&(deg - 1)).map_or(0, Vec::len);
            let cols = self.names.get(&deg).map_or(0, Vec::len);
            let m = d.entry(deg).or_insert_with(|| IntMatrix::zero(rows, cols));
            for (tgt, c) in image {
                let (tdeg, row) = self.lookup(tgt)?;
                if tdeg != deg - 1 {
                    return Err(Error::InvalidDga(format!(
                        "d({src}) hits '{tgt}' outside degree {}",
                        deg - 1
                    )));
                }
                m.set(row, col, c.clone());
            }
        }
        let mut products = BTreeMap::new();
        for (a, b, value) in &self.products {
            let ia = self.lookup(a)?;
            let ib = self.lookup(b)?;
            let target = ia.0 + ib.0;
            let dim = self.names.get(&target).map_or(0, Vec::len);
            let mut v = vec![BigInt::zero(); dim];
            for (tgt, c) in value {
                let (tdeg, k) = self.lookup(tgt)?;
                if tdeg != target {
                    return Err(Error::InvalidDga(format!(
                        "product {a}*{b} hits '{tgt}' outside degree {target}"
                    )));
                }
                v[k] = c.clone();
            }
            products.insert((ia, ib), v);
        }
        let unit_name = self
            .unit
            .as_ref()
            .ok_or_else(|| Error::InvalidDga("no unit designated".into()))?;
        let (udeg, uidx) = self.lookup(unit_name)?;
        if udeg != 0 {
            return Err(Error::InvalidDga("unit must live in degree 0".into()));
        }
        let mut unit = vec![BigInt::zero(); self.names.get(&0).map_or(0, Vec::len)];
        unit[uidx] = BigInt::one();
        Dga::new(ring, self.names.clone(), d, products, unit)
    }
}
