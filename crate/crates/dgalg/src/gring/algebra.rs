//! Free graded-commutative-style algebras presented by generators,
//! generator kinds and extra monomial relations, expanded to an explicit
//! monomial basis under a degree cap.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gring::coeff::Ring;

/// How a generator multiplies with itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// All powers are basis monomials.
    Polynomial,
    /// Square is zero regardless of degree parity.
    Exterior,
    /// `generator^h = 0`, lower powers are basis monomials. `h >= 2`.
    Truncated(u32),
}

/// A named homogeneous generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32, kind: GeneratorKind) -> Self {
        GeneratorSpec { name: name.into(), degree, kind }
    }

    /// Largest allowed exponent plus one, within a degree cap.
    fn exponent_bound(&self, cap: u32) -> u32 {
        match self.kind {
            GeneratorKind::Exterior => 2,
            GeneratorKind::Truncated(h) => h,
            GeneratorKind::Polynomial => cap / self.degree.max(1) + 1,
        }
    }

    pub fn exponent_in_bounds(&self, e: u32) -> bool {
        match self.kind {
            GeneratorKind::Exterior => e <= 1,
            GeneratorKind::Truncated(h) => e < h,
            GeneratorKind::Polynomial => true,
        }
    }
}

/// Sign convention used when commuting generators past one another.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    /// `ab = (-1)^{|a||b|} ba`.
    Koszul,
    /// Plain commutativity, no signs.
    Ungraded,
}

/// An exponent sequence aligned with the generator list of its algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn generator(n: usize, idx: usize) -> Self {
        let mut v = vec![0; n];
        v[idx] = 1;
        Monomial(v)
    }

    /// `self / other` when the quotient exists componentwise.
    fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

/// One oriented rewriting rule: `lhs -> rhs`, both homogeneous of the same
/// degree, every monomial of `rhs` strictly below `lhs` in (degree, lex)
/// order.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub lhs: Monomial,
    pub rhs: Vec<(Monomial, BigInt)>,
}

/// Generators-and-relations data before basis expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation {
    pub ring: Ring,
    pub generators: Vec<GeneratorSpec>,
    pub relations: Vec<Relation>,
    pub sign_rule: SignRule,
}

impl AlgebraPresentation {
    pub fn new(ring: Ring, generators: Vec<GeneratorSpec>, sign_rule: SignRule) -> Self {
        AlgebraPresentation { ring, generators, relations: Vec::new(), sign_rule }
    }

    pub fn with_relations(mut self, relations: Vec<Relation>) -> Self {
        self.relations = relations;
        self
    }

    /// Expand the monomial basis through total degree `cap`.
    ///
    /// Relations are applied as a terminating rewriting system oriented by
    /// the (degree, lex) monomial order; confluence is checked up to the cap
    /// by exhaustive normal-form comparison.
    pub fn expand(self, cap: u32) -> Result<Arc<Algebra>> {
        Algebra::expand(self, cap)
    }
}

/// An expanded algebra: presentation plus the canonical per-degree monomial
/// basis through a cap. Immutable after construction; elements hold an `Arc`.
#[derive(Debug)]
pub struct Algebra {
    pub ring: Ring,
    pub generators: Vec<GeneratorSpec>,
    pub relations: Vec<Relation>,
    pub sign_rule: SignRule,
    pub cap: u32,
    /// Canonical basis monomials per degree `0..=cap`, each list sorted lex.
    pub basis: BTreeMap<u32, Vec<Monomial>>,
    index: BTreeMap<Monomial, (u32, usize)>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.generators == other.generators
            && self.relations == other.relations
            && self.sign_rule == other.sign_rule
            && self.cap == other.cap
    }
}

impl Algebra {
    fn expand(pres: AlgebraPresentation, cap: u32) -> Result<Arc<Algebra>> {
        pres.ring.validate()?;
        let mut seen = std::collections::BTreeSet::new();
        for g in &pres.generators {
            if g.name.is_empty()
                || !g.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::InvalidPresentation(format!(
                    "generator name {:?} must be a nonempty alphanumeric identifier",
                    g.name
                )));
            }
            if !seen.insert(g.name.clone()) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate generator name {}",
                    g.name
                )));
            }
            if g.degree == 0 {
                return Err(Error::InvalidPresentation(format!(
                    "generator {} has degree 0; only positive degrees are supported",
                    g.name
                )));
            }
            if let GeneratorKind::Truncated(h) = g.kind {
                if h < 2 {
                    return Err(Error::InvalidPresentation(format!(
                        "truncation height of {} must be at least 2",
                        g.name
                    )));
                }
            }
            // An odd-degree generator with nonzero square breaks strict
            // graded commutativity unless the characteristic is 2.
            if pres.sign_rule == SignRule::Koszul
                && g.degree % 2 == 1
                && pres.ring.characteristic() != 2
                && !matches!(g.kind, GeneratorKind::Exterior)
            {
                return Err(Error::InvalidPresentation(format!(
                    "odd-degree generator {} must be exterior over {} under the koszul rule",
                    g.name, pres.ring
                )));
            }
        }

        let alg = Algebra {
            ring: pres.ring,
            generators: pres.generators,
            relations: pres.relations,
            sign_rule: pres.sign_rule,
            cap,
            basis: BTreeMap::new(),
            index: BTreeMap::new(),
        };
        alg.validate_relations()?;
        alg.check_confluence()?;
        let mut alg = alg;
        let mut basis: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
        for d in 0..=cap {
            basis.insert(d, Vec::new());
        }
        for m in alg.free_monomials_up_to(cap) {
            if alg.find_rule(&m).is_none() {
                basis.get_mut(&alg.monomial_degree(&m)).unwrap().push(m);
            }
        }
        for v in basis.values_mut() {
            v.sort();
        }
        let mut index = BTreeMap::new();
        for (&d, ms) in &basis {
            for (i, m) in ms.iter().enumerate() {
                index.insert(m.clone(), (d, i));
            }
        }
        alg.basis = basis;
        alg.index = index;
        Ok(Arc::new(alg))
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(self.generators.iter())
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    /// (degree, lex) comparison used to orient relations.
    fn mono_cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        self.monomial_degree(a)
            .cmp(&self.monomial_degree(b))
            .then_with(|| a.cmp(b))
    }

    fn validate_relations(&self) -> Result<()> {
        for r in &self.relations {
            if r.lhs.0.len() != self.generators.len() {
                return Err(Error::InvalidPresentation(
                    "relation monomial length mismatch".into(),
                ));
            }
            if r.lhs.is_unit() {
                return Err(Error::InvalidPresentation(
                    "relation left side may not be the unit monomial".into(),
                ));
            }
            let d = self.monomial_degree(&r.lhs);
            for (m, c) in &r.rhs {
                if m.0.len() != self.generators.len() {
                    return Err(Error::InvalidPresentation(
                        "relation monomial length mismatch".into(),
                    ));
                }
                if c.is_zero() {
                    return Err(Error::InvalidPresentation(
                        "relation right side stores a zero coefficient".into(),
                    ));
                }
                if self.monomial_degree(m) != d {
                    return Err(Error::InvalidPresentation(format!(
                        "relation sides are not homogeneous of equal degree ({} vs {})",
                        d,
                        self.monomial_degree(m)
                    )));
                }
                if self.mono_cmp(m, &r.lhs) != std::cmp::Ordering::Less {
                    return Err(Error::InvalidPresentation(format!(
                        "relation is not oriented: {} does not precede {} in (degree, lex) order",
                        self.monomial_string(m),
                        self.monomial_string(&r.lhs)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn monomial_string(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (e, g) in m.0.iter().zip(self.generators.iter()) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        parts.join("*")
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// All monomials within kind bounds of total degree <= cap,
    /// irrespective of relations.
    fn free_monomials_up_to(&self, cap: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.generators.len()];
        self.enumerate(0, 0, cap, &mut current, &mut out);
        out
    }

    fn enumerate(
        &self,
        idx: usize,
        degree: u32,
        cap: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if idx == self.generators.len() {
            out.push(Monomial(current.clone()));
            return;
        }
        let g = &self.generators[idx];
        let bound = g.exponent_bound(cap);
        let mut e = 0;
        while e < bound && degree + e * g.degree <= cap {
            current[idx] = e;
            self.enumerate(idx + 1, degree + e * g.degree, cap, current, out);
            e += 1;
        }
        current[idx] = 0;
    }

    /// Koszul sign for forming `u * v` with exponent vector `u + v`:
    /// each generator copy of `v` with index `j` is moved left past the
    /// copies of `u` with index `k > j`.
    fn product_sign(&self, u: &Monomial, v: &Monomial) -> i8 {
        if self.sign_rule == SignRule::Ungraded {
            return 1;
        }
        let mut swaps: u64 = 0;
        for j in 0..self.generators.len() {
            if v.0[j] == 0 || self.generators[j].degree % 2 == 0 {
                continue;
            }
            for k in (j + 1)..self.generators.len() {
                if u.0[k] == 0 || self.generators[k].degree % 2 == 0 {
                    continue;
                }
                swaps += (v.0[j] as u64) * (u.0[k] as u64);
            }
        }
        if swaps % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Multiply monomials before any relation rewriting. `None` means the
    /// product is zero by a kind bound (exterior square, truncation).
    pub fn multiply_monomials(&self, u: &Monomial, v: &Monomial) -> Option<(i8, Monomial)> {
        let mut w = Vec::with_capacity(u.0.len());
        for (i, (&a, &b)) in u.0.iter().zip(v.0.iter()).enumerate() {
            let s = a + b;
            if !self.generators[i].exponent_in_bounds(s) {
                return None;
            }
            w.push(s);
        }
        Some((self.product_sign(u, v), Monomial(w)))
    }

    fn find_rule(&self, m: &Monomial) -> Option<(usize, Monomial)> {
        for (i, r) in self.relations.iter().enumerate() {
            if let Some(q) = m.try_div(&r.lhs) {
                return Some((i, q));
            }
        }
        None
    }

    /// Fully reduce `coeff * m` to a map of irreducible monomials.
    /// Fuel-bounded; a genuinely non-terminating system surfaces as an error
    /// instead of a hang.
    pub fn reduce_monomial(
        &self,
        m: Monomial,
        coeff: BigInt,
        acc: &mut BTreeMap<Monomial, BigInt>,
    ) -> Result<()> {
        self.reduce_with_fuel(m, coeff, acc, &mut 1_000_000)
    }

    fn reduce_with_fuel(
        &self,
        m: Monomial,
        coeff: BigInt,
        acc: &mut BTreeMap<Monomial, BigInt>,
        fuel: &mut u64,
    ) -> Result<()> {
        if *fuel == 0 {
            return Err(Error::NonTerminatingRewrite(self.monomial_string(&m)));
        }
        *fuel -= 1;
        if coeff.is_zero() {
            return Ok(());
        }
        match self.find_rule(&m) {
            None => {
                let entry = acc.entry(m).or_insert_with(BigInt::zero);
                *entry = self.ring.add(entry, &coeff);
                Ok(())
            }
            Some((ri, q)) => {
                let rel = self.relations[ri].clone();
                // m = sign * (q . lhs); replacing lhs by rhs gives
                // coeff * sign * q * rhs.
                let (sign, _) = self
                    .multiply_monomials(&q, &rel.lhs)
                    .expect("quotient times lhs is within bounds by construction");
                for (rm, rc) in &rel.rhs {
                    if let Some((s2, prod)) = self.multiply_monomials(&q, rm) {
                        let mut c = self.ring.mul(&coeff, rc);
                        if sign * s2 < 0 {
                            c = self.ring.neg(&c);
                        }
                        self.reduce_with_fuel(prod, c, acc, fuel)?;
                    }
                }
                Ok(())
            }
        }
    }

    /// Normal form of a single monomial as a term map.
    fn normal_form(&self, m: &Monomial) -> Result<BTreeMap<Monomial, BigInt>> {
        let mut acc = BTreeMap::new();
        self.reduce_monomial(m.clone(), BigInt::one(), &mut acc)?;
        acc.retain(|_, c| !c.is_zero());
        Ok(acc)
    }

    /// Exhaustive local confluence check on every reducible monomial of
    /// degree <= cap: each applicable first rewrite step must lead to the
    /// same normal form.
    fn check_confluence(&self) -> Result<()> {
        if self.relations.is_empty() {
            return Ok(());
        }
        for m in self.free_monomials_up_to(self.cap) {
            let mut forms: Vec<(BTreeMap<Monomial, BigInt>, usize)> = Vec::new();
            for (ri, r) in self.relations.iter().enumerate() {
                let Some(q) = m.try_div(&r.lhs) else { continue };
                let (sign, _) = self.multiply_monomials(&q, &r.lhs).unwrap();
                let mut step: BTreeMap<Monomial, BigInt> = BTreeMap::new();
                for (rm, rc) in &r.rhs {
                    if let Some((s2, prod)) = self.multiply_monomials(&q, rm) {
                        let mut c = rc.clone();
                        if sign * s2 < 0 {
                            c = self.ring.neg(&c);
                        }
                        let e = step.entry(prod).or_insert_with(BigInt::zero);
                        *e = self.ring.add(e, &c);
                    }
                }
                let mut nf: BTreeMap<Monomial, BigInt> = BTreeMap::new();
                for (sm, sc) in step {
                    self.reduce_monomial(sm, sc, &mut nf)?;
                }
                nf.retain(|_, c| !c.is_zero());
                forms.push((nf, ri));
            }
            if let Some((first, _)) = forms.first() {
                for (other, _) in &forms[1..] {
                    if other != first {
                        return Err(Error::NonConfluentRelations {
                            monomial: self.monomial_string(&m),
                            left: format_terms(self, first),
                            right: format_terms(self, other),
                        });
                    }
                }
                // The one-step forms above skipped rules not applicable at
                // the top; also compare against the canonical normal form.
                let canon = self.normal_form(&m)?;
                if *first != canon {
                    return Err(Error::NonConfluentRelations {
                        monomial: self.monomial_string(&m),
                        left: format_terms(self, first),
                        right: format_terms(self, &canon),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn basis_of_degree(&self, d: u32) -> &[Monomial] {
        self.basis.get(&d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, d: u32) -> usize {
        self.basis_of_degree(d).len()
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<(u32, usize)> {
        self.index.get(m).copied()
    }
}

pub(crate) fn format_terms(alg: &Algebra, terms: &BTreeMap<Monomial, BigInt>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut sorted: Vec<_> = terms.iter().collect();
    sorted.sort_by(|a, b| alg.mono_cmp(a.0, b.0));
    sorted
        .iter()
        .map(|(m, c)| {
            if m.is_unit() {
                format!("{c}")
            } else if c.is_one() {
                alg.monomial_string(m)
            } else {
                format!("{}*{}", c, alg.monomial_string(m))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.ring)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", g.name, g.degree)?;
        }
        write!(f, "] cap {}", self.cap)
    }
}
