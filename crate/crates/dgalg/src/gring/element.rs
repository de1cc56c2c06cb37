//! Sparse elements of an expanded algebra.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gring::algebra::{format_terms, Algebra, Monomial};
use crate::gring::coeff::Coefficient;

/// A coefficient-weighted sum of basis monomials. Stored coefficients are
/// nonzero canonical representatives; monomials are in rewriting normal form.
#[derive(Clone, PartialEq)]
pub struct Element {
    algebra: Arc<Algebra>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Element {
    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Element { algebra: Arc::clone(algebra), terms: BTreeMap::new() }
    }

    pub fn one(algebra: &Arc<Algebra>) -> Self {
        Element::monomial(algebra, Monomial::unit(algebra.generators.len()))
    }

    /// A single (already reduced) basis monomial with coefficient 1.
    pub fn monomial(algebra: &Arc<Algebra>, m: Monomial) -> Self {
        let mut e = Element::zero(algebra);
        e.add_term(m, BigInt::one());
        e
    }

    pub fn generator(algebra: &Arc<Algebra>, name: &str) -> Result<Self> {
        let idx = algebra
            .generator_index(name)
            .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator {name}")))?;
        Ok(Element::monomial(
            algebra,
            Monomial::generator(algebra.generators.len(), idx),
        ))
    }

    /// Build from raw (monomial, coefficient) data; reduces everything.
    pub fn from_terms(
        algebra: &Arc<Algebra>,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self> {
        let mut acc = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != algebra.generators.len() {
                return Err(Error::InvalidPresentation(
                    "monomial length does not match the algebra".into(),
                ));
            }
            let c = algebra.ring.reduce(c);
            algebra.reduce_monomial(m, c, &mut acc)?;
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Element { algebra: Arc::clone(algebra), terms: acc })
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let c = self.algebra.ring.reduce(c);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry = self.algebra.ring.add(entry, &c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Coefficient)> + '_ {
        self.terms
            .iter()
            .map(|(m, c)| (m, Coefficient::new(self.algebra.ring.clone(), c.clone())))
    }

    pub fn raw_terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    /// Degree when homogeneous; `None` for 0; error when inhomogeneous.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut degs: Vec<i64> = self
            .terms
            .keys()
            .map(|m| self.algebra.monomial_degree(m) as i64)
            .collect();
        degs.sort_unstable();
        degs.dedup();
        match degs.len() {
            0 => Ok(None),
            1 => Ok(Some(degs[0])),
            _ => Err(Error::Inhomogeneous(degs)),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_ok()
    }

    /// Homogeneous components, lowest degree first.
    pub fn homogeneous_parts(&self) -> Vec<(u32, Element)> {
        let mut parts: BTreeMap<u32, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = self.algebra.monomial_degree(m);
            parts
                .entry(d)
                .or_insert_with(|| Element::zero(&self.algebra))
                .add_term(m.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let mut out = Element::zero(&self.algebra);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.algebra.ring.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Element {
        let mut out = Element::zero(&self.algebra);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), self.algebra.ring.mul(v, c));
        }
        out
    }

    /// Bilinear product with the Koszul sign convention of the algebra;
    /// kind bounds and relations applied.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                if let Some((sign, w)) = self.algebra.multiply_monomials(u, v) {
                    let mut c = self.algebra.ring.mul(cu, cv);
                    if sign < 0 {
                        c = self.algebra.ring.neg(&c);
                    }
                    self.algebra.reduce_monomial(w, c, &mut acc)?;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Element { algebra: Arc::clone(&self.algebra), terms: acc })
    }

    pub fn pow(&self, n: u32) -> Result<Element> {
        let mut out = Element::one(&self.algebra);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Coordinates against the canonical basis of a single degree.
    pub fn coordinates(&self, degree: u32) -> Vec<BigInt> {
        let basis = self.algebra.basis_of_degree(degree);
        basis
            .iter()
            .map(|m| self.terms.get(m).cloned().unwrap_or_else(BigInt::zero))
            .collect()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(&self.algebra, &self.terms))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(&self.algebra, &self.terms))
    }
}
