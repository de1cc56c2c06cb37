use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gring::{Algebra, FgAbelianGroup, Ring};

/// Per-degree module value: dimension over a field, invariant factors over Z
/// or Z/m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleValue {
    FieldDim(usize),
    Group(FgAbelianGroup),
}

impl std::fmt::Display for ModuleValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModuleValue::FieldDim(n) => write!(f, "dim {n}"),
            ModuleValue::Group(g) => write!(f, "{g}"),
        }
    }
}

/// A graded ring described by explicit bases and structure constants.
///
/// Each degree `0..=max_degree` carries a list of named basis elements.  Over
/// Z a basis element may be a torsion generator; `orders[d][i]` is its
/// additive order (zero for a free generator, and always zero over a field).
/// `products` maps pairs of basis positions to coordinate vectors in the
/// degree-sum; absent pairs whose degree-sum is tracked multiply to zero.
/// When `complete` is false, products landing above `max_degree` were
/// truncated away and are unknown rather than zero.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedRingTable {
    pub ring: Ring,
    pub max_degree: i64,
    pub names: BTreeMap<i64, Vec<String>>,
    pub orders: BTreeMap<i64, Vec<BigInt>>,
    pub products: BTreeMap<(BasisId, BasisId), Vec<BigInt>>,
    /// Coordinates of the multiplicative unit in degree 0.
    pub unit: Vec<BigInt>,
    pub complete: bool,
}

/// Position of a basis element: (degree, index).
pub type BasisId = (i64, usize);

/// A homogeneous element of a `GradedRingTable`, as coordinates against the
/// basis of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableElement {
    pub degree: i64,
    pub coords: Vec<BigInt>,
}

impl GradedRingTable {
    pub fn dim(&self, d: i64) -> usize {
        self.names.get(&d).map_or(0, Vec::len)
    }

    pub fn module(&self, d: i64) -> ModuleValue {
        let orders = self.orders.get(&d).cloned().unwrap_or_default();
        if self.ring.is_field() {
            ModuleValue::FieldDim(orders.len())
        } else {
            let free = orders.iter().filter(|o| o.is_zero()).count();
            let torsion = orders
                .iter()
                .filter(|o| !o.is_zero())
                .map(|o| o.magnitude().clone())
                .collect();
            ModuleValue::Group(crate::gring::fga::normalize_invariant_factors_with_rank(
                torsion, free,
            ))
        }
    }

    pub fn zero_element(&self, degree: i64) -> TableElement {
        TableElement { degree, coords: vec![BigInt::zero(); self.dim(degree)] }
    }

    pub fn basis_element(&self, id: BasisId) -> TableElement {
        let mut e = self.zero_element(id.0);
        e.coords[id.1] = BigInt::one();
        e
    }

    pub fn unit_element(&self) -> TableElement {
        TableElement { degree: 0, coords: self.unit.clone() }
    }

    /// Reduce a coordinate to its canonical representative: modulo the ring
    /// characteristic and, over Z, modulo the generator's additive order.
    fn reduce_coord(&self, d: i64, i: usize, v: BigInt) -> BigInt {
        let v = self.ring.reduce(v);
        match self.orders.get(&d).and_then(|o| o.get(i)) {
            Some(ord) if !ord.is_zero() => {
                num_integer::Integer::mod_floor(&v, ord)
            }
            _ => v,
        }
    }

    pub fn reduce_element(&self, e: &TableElement) -> TableElement {
        TableElement {
            degree: e.degree,
            coords: e
                .coords
                .iter()
                .enumerate()
                .map(|(i, v)| self.reduce_coord(e.degree, i, v.clone()))
                .collect(),
        }
    }

    fn stored_product(&self, a: BasisId, b: BasisId) -> Vec<BigInt> {
        let target = a.0 + b.0;
        self.products
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| vec![BigInt::zero(); self.dim(target)])
    }

    /// Whether a product of basis elements in degrees `d1`, `d2` is tracked.
    pub fn product_tracked(&self, d1: i64, d2: i64) -> bool {
        self.complete || d1 + d2 <= self.max_degree
    }

    pub fn add(&self, a: &TableElement, b: &TableElement) -> Result<TableElement> {
        if a.degree != b.degree {
            return Err(Error::Inhomogeneous(vec![a.degree, b.degree]));
        }
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x + y)
            .collect();
        Ok(self.reduce_element(&TableElement { degree: a.degree, coords }))
    }

    pub fn scale(&self, a: &TableElement, c: &BigInt) -> TableElement {
        let coords = a.coords.iter().map(|x| x * c).collect();
        self.reduce_element(&TableElement { degree: a.degree, coords })
    }

    /// Bilinear extension of the structure constants.
    pub fn mul(&self, a: &TableElement, b: &TableElement) -> Result<TableElement> {
        let target = a.degree + b.degree;
        if !self.product_tracked(a.degree, b.degree) {
            return Err(Error::CapTooSmall { need: target, got: self.max_degree });
        }
        let mut out = self.zero_element(target);
        for (i, ca) in a.coords.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coords.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let sc = self.stored_product((a.degree, i), (b.degree, j));
                for (k, v) in sc.iter().enumerate() {
                    out.coords[k] += ca * cb * v;
                }
            }
        }
        Ok(self.reduce_element(&out))
    }

    fn degrees(&self) -> Vec<i64> {
        self.names
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&d, _)| d)
            .collect()
    }

    /// Verify that the structure constants are associative and that the
    /// stored unit is a two-sided identity, over all tracked products.
    pub fn check_associative_unital(&self) -> Result<()> {
        for (&d, ns) in &self.names {
            for i in 0..ns.len() {
                let e = self.basis_element((d, i));
                if self.product_tracked(0, d) {
                    let left = self.mul(&self.unit_element(), &e)?;
                    let right = self.mul(&e, &self.unit_element())?;
                    if left != self.reduce_element(&e) || right != self.reduce_element(&e) {
                        return Err(Error::NonUnital(format!("unit fails on basis element ({d},{i})")));
                    }
                }
            }
        }
        let degs = self.degrees();
        for &d1 in &degs {
            for &d2 in &degs {
                for &d3 in &degs {
                    if !(self.product_tracked(d1, d2)
                        && self.product_tracked(d1 + d2, d3)
                        && self.product_tracked(d2, d3)
                        && self.product_tracked(d1, d2 + d3))
                    {
                        continue;
                    }
                    for i in 0..self.dim(d1) {
                        for j in 0..self.dim(d2) {
                            for k in 0..self.dim(d3) {
                                let a = self.basis_element((d1, i));
                                let b = self.basis_element((d2, j));
                                let c = self.basis_element((d3, k));
                                let lhs = self.mul(&self.mul(&a, &b)?, &c)?;
                                let rhs = self.mul(&a, &self.mul(&b, &c)?)?;
                                if lhs != rhs {
                                    return Err(Error::NonAssociativeTable(format!(
                                        "(({d1},{i})*({d2},{j}))*({d3},{k}) differs"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The multiplication table of an expanded algebra's monomial basis.
    ///
    /// The table is marked complete when every product of two nonzero-degree
    /// basis monomials stays within the expansion cap, i.e. the algebra is
    /// genuinely zero above its top tracked degree.
    pub fn from_algebra(a: &Arc<Algebra>) -> Result<GradedRingTable> {
        let cap = a.cap as i64;
        let top = (0..=a.cap).rev().find(|&d| a.dim(d) > 0).unwrap_or(0) as i64;
        let complete = 2 * top <= cap;
        let max_degree = if complete { top } else { cap };
        let mut names = BTreeMap::new();
        let mut orders = BTreeMap::new();
        for d in 0..=max_degree {
            let ms = a.basis_of_degree(d as u32);
            if ms.is_empty() {
                continue;
            }
            names.insert(
                d,
                ms.iter().map(|m| a.monomial_string(m)).collect::<Vec<_>>(),
            );
            orders.insert(d, vec![BigInt::zero(); ms.len()]);
        }
        let mut products = BTreeMap::new();
        for (&d1, n1) in &names {
            for (&d2, n2) in &names {
                if d1 + d2 > max_degree {
                    continue;
                }
                for i in 0..n1.len() {
                    for j in 0..n2.len() {
                        let x = crate::gring::Element::monomial(
                            a,
                            a.basis_of_degree(d1 as u32)[i].clone(),
                        );
                        let y = crate::gring::Element::monomial(
                            a,
                            a.basis_of_degree(d2 as u32)[j].clone(),
                        );
                        let p = x.mul(&y)?;
                        if !p.is_zero() {
                            products.insert(
                                ((d1, i), (d2, j)),
                                p.coordinates((d1 + d2) as u32),
                            );
                        }
                    }
                }
            }
        }
        let mut unit = vec![BigInt::zero(); names.get(&0).map_or(0, Vec::len)];
        if unit.is_empty() {
            return Err(Error::InvalidPresentation("table has no degree-0 unit".into()));
        }
        unit[0] = BigInt::one();
        let t = GradedRingTable { ring: a.ring, max_degree, names, orders, products, unit, complete };
        t.check_associative_unital()?;
        Ok(t)
    }
}
