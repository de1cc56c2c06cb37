//! The dual Steenrod algebra, the mod-p homology of the integral
//! Eilenberg-MacLane spectrum, and the power-operation calculus on them.
//!
//! Generators at p = 2 are polynomial classes `xi_r` (or `zeta_r`) of degree
//! `2^r - 1`; at odd p, polynomial `xi_r` of degree `2(p^r - 1)` and exterior
//! `tau_s` of degree `2p^s - 1` (with barred names in the zeta presentation).
//!
//! Operations `Q^s` (and `beta Q^s` at odd p) are evaluated by, in order:
//! the shipped generator table, the vanishing rule below the degree threshold,
//! the top rule (p-th power) at the threshold, and the Cartan formula across
//! products.  The shipped table covers exactly the degree-one generator of
//! the zeta presentation; anything else above its threshold is refused with
//! `MissingGeneratorAction` rather than silently zeroed.
//!
//! The only cross-presentation identification implemented is
//! `zeta_1 = -xi_1`; all other conversions are out of scope.
//!
//! ```
//! use dgalg::gring::Element;
//! use dgalg::steenrod::{apply_dl, dual_steenrod, DLWord, Presentation};
//!
//! let ctx = dual_steenrod(2, Presentation::Zeta, 7).unwrap();
//! let z1 = ctx.element("zeta1").unwrap();
//! let got = apply_dl(&DLWord::q(2, 2), &z1, &ctx).unwrap();
//! assert_eq!(got, Element::generator(&ctx.algebra, "zeta2").unwrap());
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gring::{
    Algebra, AlgebraPresentation, Element, GeneratorKind, GeneratorSpec, Monomial, Ring,
    SignRule,
};

/// Which family of polynomial generator names is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    Xi,
    Zeta,
}

/// An expanded presentation together with its shipped operation tables.
#[derive(Clone, Debug)]
pub struct SteenrodContext {
    pub p: u64,
    pub presentation: Presentation,
    pub algebra: Arc<Algebra>,
    /// (generator index, bockstein flag, s) -> value of the operation
    q_table: BTreeMap<(usize, u8, i64), Element>,
    /// Bockstein value per generator index (odd p only)
    beta_table: Vec<Element>,
}

/// A composite of power operations; factors apply right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DLWord {
    pub p: u64,
    pub factors: Vec<(u8, i64)>,
}

impl DLWord {
    pub fn new(p: u64, factors: Vec<(u8, i64)>) -> Result<DLWord> {
        if p == 2 && factors.iter().any(|&(b, _)| b != 0) {
            return Err(Error::NotSupported(
                "Bockstein-composed operations are not defined at p = 2".into(),
            ));
        }
        if factors.iter().any(|&(b, _)| b > 1) {
            return Err(Error::NotSupported("the Bockstein flag must be 0 or 1".into()));
        }
        Ok(DLWord { p, factors })
    }

    pub fn q(p: u64, s: i64) -> DLWord {
        DLWord { p, factors: vec![(0, s)] }
    }

    pub fn beta_q(p: u64, s: i64) -> Result<DLWord> {
        DLWord::new(p, vec![(1, s)])
    }

    /// Degree shift of the whole word.
    pub fn degree_shift(&self) -> i64 {
        self.factors
            .iter()
            .map(|&(b, s)| {
                if self.p == 2 {
                    s
                } else {
                    2 * s * (self.p as i64 - 1) - b as i64
                }
            })
            .sum()
    }
}

fn xi_degree(p: u64, r: u32) -> u64 {
    if p == 2 {
        2u64.pow(r) - 1
    } else {
        2 * (p.pow(r) - 1)
    }
}

fn tau_degree(p: u64, s: u32) -> u64 {
    2 * p.pow(s) - 1
}

/// Generators of the free graded-commutative presentation, degree order.
fn milnor_generators(p: u64, presentation: Presentation, cap: u32) -> Vec<GeneratorSpec> {
    let (xi, tau) = match presentation {
        Presentation::Xi => ("xi", "tau"),
        Presentation::Zeta => ("zeta", "taubar"),
    };
    let mut gens = Vec::new();
    let mut r = 1u32;
    while xi_degree(p, r) <= cap as u64 {
        gens.push(GeneratorSpec::new(
            format!("{xi}{r}"),
            xi_degree(p, r) as u32,
            GeneratorKind::Polynomial,
        ));
        r += 1;
    }
    if p != 2 {
        let mut s = 0u32;
        while tau_degree(p, s) <= cap as u64 {
            gens.push(GeneratorSpec::new(
                format!("{tau}{s}"),
                tau_degree(p, s) as u32,
                GeneratorKind::Exterior,
            ));
            s += 1;
        }
    }
    gens.sort_by_key(|g| g.degree);
    gens
}

/// The dual Steenrod algebra through the degree cap, with the shipped
/// operation table when the zeta presentation is requested.
pub fn dual_steenrod(p: u64, presentation: Presentation, cap: u32) -> Result<SteenrodContext> {
    let algebra = AlgebraPresentation::new(
        Ring::Fp(p),
        milnor_generators(p, presentation, cap),
        SignRule::Koszul,
    )
    .expand(cap)?;
    let mut q_table = BTreeMap::new();
    if presentation == Presentation::Zeta {
        if p == 2 {
            if let Some(z1) = algebra.generator_index("zeta1") {
                let mut s = 1u32;
                while 2u64.pow(s) - 1 <= cap as u64 {
                    let val = Element::generator(&algebra, &format!("zeta{s}"))?;
                    q_table.insert((z1, 0, 2i64.pow(s) - 2), val);
                    s += 1;
                }
            }
        } else if let Some(t0) = algebra.generator_index("taubar0") {
            let mut s = 1u32;
            let mut sign = BigInt::from(-1);
            while 2 * (p.pow(s) - 1) <= cap as u64 {
                let op = ((p.pow(s) - 1) / (p - 1)) as i64;
                if tau_degree(p, s) <= cap as u64 {
                    let val = Element::generator(&algebra, &format!("taubar{s}"))?
                        .scale(&sign);
                    q_table.insert((t0, 0, op), val);
                }
                let val = Element::generator(&algebra, &format!("zeta{s}"))?.scale(&sign);
                q_table.insert((t0, 1, op), val);
                sign = -sign;
                s += 1;
            }
        }
    }
    let beta_table = bockstein_values(p, &algebra)?;
    Ok(SteenrodContext { p, presentation, algebra, q_table, beta_table })
}

/// Bockstein on each generator: 1 on the degree-one exterior class, the
/// matching polynomial class one degree below on the higher exterior ones,
/// zero on polynomial generators.
fn bockstein_values(p: u64, algebra: &Arc<Algebra>) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    if p == 2 {
        return Ok(out);
    }
    for g in &algebra.generators {
        let v = match g.kind {
            GeneratorKind::Exterior => {
                let s: u32 = g
                    .name
                    .trim_start_matches(|c: char| c.is_alphabetic())
                    .parse()
                    .map_err(|_| Error::InvalidPresentation(g.name.clone()))?;
                if s == 0 {
                    Element::one(algebra)
                } else {
                    let poly = if g.name.starts_with("taubar") { "zeta" } else { "xi" };
                    Element::generator(algebra, &format!("{poly}{s}"))?
                }
            }
            _ => Element::zero(algebra),
        };
        out.push(v);
    }
    Ok(out)
}

/// The mod-p homology of the integral Eilenberg-MacLane spectrum: the dual
/// Steenrod algebra without its degree-one generator.  At p = 2 the square
/// of the missing generator survives as the polynomial class `xi1sq`.
#[derive(Clone, Debug)]
pub struct HZHomologyContext {
    pub p: u64,
    pub algebra: Arc<Algebra>,
    /// the same algebra viewed as an operation context (no shipped table;
    /// everything follows from the vanishing/top rules or is refused)
    pub dl: SteenrodContext,
}

pub fn hfp_homology_of_hz(p: u64, cap: u32) -> Result<HZHomologyContext> {
    let mut gens = Vec::new();
    if p == 2 {
        if cap >= 2 {
            gens.push(GeneratorSpec::new("xi1sq", 2, GeneratorKind::Polynomial));
        }
        let mut r = 2u32;
        while xi_degree(2, r) <= cap as u64 {
            gens.push(GeneratorSpec::new(
                format!("xi{r}"),
                xi_degree(2, r) as u32,
                GeneratorKind::Polynomial,
            ));
            r += 1;
        }
    } else {
        let mut r = 1u32;
        while xi_degree(p, r) <= cap as u64 {
            gens.push(GeneratorSpec::new(
                format!("xi{r}"),
                xi_degree(p, r) as u32,
                GeneratorKind::Polynomial,
            ));
            r += 1;
        }
        let mut s = 1u32;
        while tau_degree(p, s) <= cap as u64 {
            gens.push(GeneratorSpec::new(
                format!("tau{s}"),
                tau_degree(p, s) as u32,
                GeneratorKind::Exterior,
            ));
            s += 1;
        }
        gens.sort_by_key(|g| g.degree);
    }
    let algebra =
        AlgebraPresentation::new(Ring::Fp(p), gens, SignRule::Koszul).expand(cap)?;
    let beta_table = bockstein_values(p, &algebra)?;
    let dl = SteenrodContext {
        p,
        presentation: Presentation::Xi,
        algebra: algebra.clone(),
        q_table: BTreeMap::new(),
        beta_table,
    };
    Ok(HZHomologyContext { p, algebra, dl })
}

impl SteenrodContext {
    /// Fetch a generator, accepting the cross-presentation aliases that are
    /// pinned down in scope: `xi1 = zeta1` at p = 2 and `tau0 = taubar0`.
    pub fn element(&self, name: &str) -> Result<Element> {
        if self.algebra.generator_index(name).is_some() {
            return Element::generator(&self.algebra, name);
        }
        if self.presentation == Presentation::Zeta {
            if self.p == 2 && name == "xi1" {
                return Element::generator(&self.algebra, "zeta1");
            }
            if self.p != 2 && name == "tau0" {
                return Element::generator(&self.algebra, "taubar0");
            }
        }
        Err(Error::InvalidPresentation(format!("unknown generator '{name}'")))
    }

    /// Every shipped table entry: (generator name, bockstein flag, s, value).
    pub fn shipped_actions(&self) -> Vec<(String, u8, i64, Element)> {
        self.q_table
            .iter()
            .map(|(&(g, b, s), v)| {
                (self.algebra.generators[g].name.clone(), b, s, v.clone())
            })
            .collect()
    }

    /// Bockstein of a generator by index (odd p).
    fn beta_of_generator(&self, idx: usize) -> Result<Element> {
        self.beta_table
            .get(idx)
            .cloned()
            .ok_or_else(|| Error::NotSupported("no Bockstein at p = 2".into()))
    }

    /// Degree below which `Q^s g` vanishes and at which it is the p-th power.
    fn threshold(&self, degree: i64) -> i64 {
        if self.p == 2 {
            degree
        } else {
            // smallest s with 2s >= degree
            degree.div_euclid(2) + degree.rem_euclid(2)
        }
    }

    /// Smallest s that can give a nonzero `Q^s` on the monomial, combining
    /// table entries with the vanishing threshold, Cartan-additively.
    fn q_lower_bound(&self, m: &Monomial) -> i64 {
        let mut lb = 0i64;
        for (idx, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let d = self.algebra.generators[idx].degree as i64;
            let mut g_lb = self.threshold(d);
            for (&(gi, b, s), _) in &self.q_table {
                if gi == idx && b == 0 {
                    g_lb = g_lb.min(s);
                }
            }
            lb += e as i64 * g_lb;
        }
        lb
    }

    fn q_generator(&self, s: i64, idx: usize) -> Result<Element> {
        if let Some(v) = self.q_table.get(&(idx, 0, s)) {
            return Ok(v.clone());
        }
        let g = &self.algebra.generators[idx];
        let d = g.degree as i64;
        let t = self.threshold(d);
        if s < t {
            return Ok(Element::zero(&self.algebra));
        }
        let is_top = if self.p == 2 { s == d } else { 2 * s == d };
        if is_top {
            return Element::generator(&self.algebra, &g.name)?.pow(self.p as u32);
        }
        Err(Error::MissingGeneratorAction {
            op: format!("Q^{s}"),
            generator: g.name.clone(),
        })
    }

    fn q_monomial(&self, s: i64, m: &Monomial) -> Result<Element> {
        if m.is_unit() {
            // the unit is its own p-th power, so only Q^0 survives on it
            return Ok(if s == 0 {
                Element::one(&self.algebra)
            } else {
                Element::zero(&self.algebra)
            });
        }
        let idx = m.0.iter().position(|&e| e > 0).unwrap();
        let mut rest = m.clone();
        rest.0[idx] -= 1;
        if rest.is_unit() {
            return self.q_generator(s, idx);
        }
        let head = Monomial::generator(m.0.len(), idx);
        let lo = self.q_lower_bound(&head);
        let hi = s - self.q_lower_bound(&rest);
        let mut acc = Element::zero(&self.algebra);
        for i in lo..=hi {
            // a missing action only matters when its cofactor is nonzero
            let a = match self.q_generator(i, idx) {
                Ok(a) => {
                    if a.is_zero() {
                        continue;
                    }
                    a
                }
                Err(e) => {
                    if self.q_monomial(s - i, &rest)?.is_zero() {
                        continue;
                    }
                    return Err(e);
                }
            };
            let b = self.q_monomial(s - i, &rest)?;
            if b.is_zero() {
                continue;
            }
            acc = acc.add(&a.mul(&b)?)?;
        }
        Ok(acc)
    }

    /// Additive extension of `Q^s` over an element.
    fn apply_q(&self, s: i64, e: &Element) -> Result<Element> {
        let mut acc = Element::zero(&self.algebra);
        for (m, c) in e.raw_terms() {
            acc = acc.add(&self.q_monomial(s, m)?.scale(c))?;
        }
        Ok(acc)
    }

    /// The Bockstein, extended over products as a graded derivation.
    pub fn apply_beta(&self, e: &Element) -> Result<Element> {
        if self.p == 2 {
            return Err(Error::NotSupported("no Bockstein at p = 2".into()));
        }
        let mut acc = Element::zero(&self.algebra);
        for (m, c) in e.raw_terms() {
            acc = acc.add(&self.beta_monomial(m)?.scale(c))?;
        }
        Ok(acc)
    }

    fn beta_monomial(&self, m: &Monomial) -> Result<Element> {
        // factor the monomial as an ordered product of single generators
        let mut factors = Vec::new();
        for (idx, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                factors.push(idx);
            }
        }
        let mut acc = Element::zero(&self.algebra);
        let mut sign = BigInt::one();
        for (i, &idx) in factors.iter().enumerate() {
            let mut term = self.beta_of_generator(idx)?.scale(&sign);
            for (j, &other) in factors.iter().enumerate() {
                if j == i {
                    continue;
                }
                let g = Element::generator(&self.algebra, &self.algebra.generators[other].name)?;
                term = if j < i { g.mul(&term)? } else { term.mul(&g)? };
            }
            acc = acc.add(&term)?;
            if self.algebra.generators[idx].degree % 2 == 1 {
                sign = -sign;
            }
        }
        Ok(acc)
    }
}

/// Evaluate a word of power operations on a homogeneous element, rightmost
/// factor first.
pub fn apply_dl(w: &DLWord, e: &Element, ctx: &SteenrodContext) -> Result<Element> {
    if w.p != ctx.p {
        return Err(Error::RingMismatch(format!(
            "word at p = {} applied in a p = {} context",
            w.p, ctx.p
        )));
    }
    let mut cur = e.clone();
    for &(beta, s) in w.factors.iter().rev() {
        if cur.is_zero() {
            return Ok(cur);
        }
        let d = cur
            .degree()?
            .ok_or_else(|| Error::Inhomogeneous(vec![]))?;
        let shift = if ctx.p == 2 {
            s
        } else {
            2 * s * (ctx.p as i64 - 1) - beta as i64
        };
        let needed = d + shift;
        if needed > ctx.algebra.cap as i64 {
            return Err(Error::DegreeOverflow { needed, cap: ctx.algebra.cap as i64 });
        }
        // a single tabulated generator evaluates directly, table first
        cur = match single_generator(&cur) {
            Some((idx, c)) if ctx.q_table.contains_key(&(idx, beta, s)) => {
                ctx.q_table[&(idx, beta, s)].scale(&c)
            }
            _ => {
                let q = ctx.apply_q(s, &cur)?;
                if beta == 1 {
                    ctx.apply_beta(&q)?
                } else {
                    q
                }
            }
        };
    }
    Ok(cur)
}

/// When the element is a scalar multiple of one generator, its index and
/// coefficient.
fn single_generator(e: &Element) -> Option<(usize, BigInt)> {
    let mut terms = e.raw_terms().iter();
    let (m, c) = terms.next()?;
    if terms.next().is_some() {
        return None;
    }
    let idx = m.0.iter().position(|&x| x > 0)?;
    if m.0.iter().map(|&x| x as u64).sum::<u64>() != 1 {
        return None;
    }
    Some((idx, c.clone()))
}

/// One summand of an element of a two-sided tensor: a fully evaluated left
/// factor and a right factor that may be an unevaluated operation marker.
#[derive(Clone, Debug)]
pub struct TensorTerm {
    pub a: Element,
    pub b: BFactor,
}

/// The right tensor factor of a term after applying operations.
#[derive(Clone, Debug)]
pub enum BFactor {
    /// evaluated inside the right-hand algebra
    Known(Element),
    /// an operation whose value on the right factor is not available:
    /// `beta^{beta} Q^{q}` applied to `arg` (no `q` means a bare Bockstein)
    Op { beta: bool, q: Option<i64>, arg: Element },
}

impl BFactor {
    fn is_zero(&self) -> bool {
        match self {
            BFactor::Known(e) => e.is_zero(),
            BFactor::Op { arg, .. } => arg.is_zero(),
        }
    }
}

/// Apply a word across a sum of tensors `a (x) b` by the Cartan formula,
/// evaluating the left factors in `ctx` and leaving unknown right-factor
/// operations as symbolic markers.
pub fn apply_dl_tensor(
    w: &DLWord,
    terms: &[(Element, Element)],
    ctx: &SteenrodContext,
) -> Result<Vec<TensorTerm>> {
    let mut cur: Vec<TensorTerm> = terms
        .iter()
        .map(|(a, b)| TensorTerm { a: a.clone(), b: BFactor::Known(b.clone()) })
        .collect();
    for &(beta, s) in w.factors.iter().rev() {
        let mut next = Vec::new();
        for t in &cur {
            let known = match &t.b {
                BFactor::Known(b) => b,
                BFactor::Op { .. } => {
                    return Err(Error::NotSupported(
                        "cannot compose operations past a symbolic factor".into(),
                    ))
                }
            };
            next.extend(tensor_step(ctx, beta, s, &t.a, known)?);
        }
        cur = next;
        cur.retain(|t| !t.a.is_zero() && !t.b.is_zero());
    }
    Ok(cur)
}

/// `Q^s` (optionally followed by the Bockstein) on a single tensor.
fn tensor_step(
    ctx: &SteenrodContext,
    beta: u8,
    s: i64,
    a: &Element,
    b: &Element,
) -> Result<Vec<TensorTerm>> {
    let da = a.degree()?.ok_or_else(|| Error::Inhomogeneous(vec![]))?;
    let db = b.degree()?.ok_or_else(|| Error::Inhomogeneous(vec![]))?;
    let b_threshold = if ctx.p == 2 {
        db
    } else {
        db.div_euclid(2) + db.rem_euclid(2)
    };
    // lower Cartan bound on the left: table entries may undercut vanishing
    let a_lo = a
        .raw_terms()
        .keys()
        .map(|m| ctx.q_lower_bound(m))
        .min()
        .unwrap_or(0);
    let mut out = Vec::new();
    for i in a_lo..=s {
        let j = s - i;
        // right factor: unit scalars only keep Q^0; below threshold vanishes;
        // at the threshold the p-th power is an honest product in B; above
        // it the value is unknown and stays symbolic
        let bv: Option<BFactor> = if db == 0 {
            if j == 0 {
                Some(BFactor::Known(b.clone()))
            } else {
                None
            }
        } else if j < b_threshold {
            None
        } else if (ctx.p == 2 && j == db) || (ctx.p != 2 && 2 * j == db) {
            Some(BFactor::Known(b.pow(ctx.p as u32)?))
        } else {
            Some(BFactor::Op { beta: false, q: Some(j), arg: b.clone() })
        };
        let Some(bv) = bv else { continue };
        if bv.is_zero() {
            continue;
        }
        let av = ctx.apply_q(i, a)?;
        if av.is_zero() {
            continue;
        }
        out.push(TensorTerm { a: av, b: bv });
    }
    if beta == 1 {
        let mut with_beta = Vec::new();
        for t in out {
            let da2 = t.a.degree()?.unwrap_or(da);
            // derivation: beta(a (x) b) = beta(a) (x) b +- a (x) beta(b)
            let ba = ctx.apply_beta(&t.a)?;
            if !ba.is_zero() && !t.b.is_zero() {
                with_beta.push(TensorTerm { a: ba, b: t.b.clone() });
            }
            let sign = if da2 % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let bb = match &t.b {
                BFactor::Known(e) => {
                    let ed = e.degree()?.unwrap_or(0);
                    if ed == 0 {
                        // Bockstein kills scalars
                        None
                    } else {
                        Some(BFactor::Op { beta: true, q: None, arg: e.clone() })
                    }
                }
                BFactor::Op { beta: false, q, arg } => {
                    Some(BFactor::Op { beta: true, q: *q, arg: arg.clone() })
                }
                BFactor::Op { beta: true, .. } => None, // beta^2 = 0
            };
            if let Some(bb) = bb {
                with_beta.push(TensorTerm { a: t.a.scale(&sign), b: bb });
            }
        }
        out = with_beta;
    }
    out.retain(|t| !t.a.is_zero() && !t.b.is_zero());
    Ok(out)
}

/// The name-preserving inclusion into the dual Steenrod algebra (xi
/// presentation): `xi1sq` lands on the square of the missing generator.
pub fn embed_into_dual(
    e: &Element,
    hz: &HZHomologyContext,
    target: &SteenrodContext,
) -> Result<Element> {
    if target.p != hz.p {
        return Err(Error::RingMismatch("different primes".into()));
    }
    if target.presentation != Presentation::Xi {
        return Err(Error::NotSupported(
            "only the xi presentation receives the inclusion".into(),
        ));
    }
    let mut acc = Element::zero(&target.algebra);
    for (m, c) in e.raw_terms() {
        let mut term = Element::one(&target.algebra);
        for (idx, &exp) in m.0.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            let name = &hz.algebra.generators[idx].name;
            let img = if name == "xi1sq" {
                Element::generator(&target.algebra, "xi1")?.pow(2)?
            } else {
                Element::generator(&target.algebra, name)?
            };
            term = term.mul(&img.pow(exp)?)?;
        }
        acc = acc.add(&term.scale(c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;
