//! Finite-search certificates for extension questions: exhaustive squares in
//! degree 1, Bockstein power-operation bookkeeping, and forced unit-map
//! assignments.
//!
//! ```
//! use dgalg::gring::{AlgebraPresentation, Ring, SignRule};
//! use dgalg::obstruct::{square_obstruction_p2, Status};
//!
//! let b = AlgebraPresentation::new(Ring::Fp(2), vec![], SignRule::Koszul)
//!     .expand(4)
//!     .unwrap();
//! let v = square_obstruction_p2(&b, 4).unwrap();
//! assert_eq!(v.status, Status::Unsolvable);
//! ```

use std::sync::Arc;

use num_traits::Zero;

use crate::basis::{check_monoid_basis, search_monoid_basis, table_candidate, CheckOutcome,
                   MonoidBasis, SearchBudget, SearchOutcome};
use crate::dga::{homology_ring, Dga};
use crate::error::{Error, Result};
use crate::gring::{tensor, tensor_element, Algebra, Element, Ring};
use crate::steenrod::{apply_dl_tensor, dual_steenrod, hfp_homology_of_hz, BFactor, DLWord,
                      Presentation, SteenrodContext};

/// Outcome of a finite obstruction search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// No candidate works; the certificate lists every one with its refutation.
    Unsolvable,
    /// A candidate works; it is recorded as the witness.
    SolvableWitness,
    /// The search space could not be exhausted.
    Incomplete,
}

/// One enumerated candidate with what happened to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateRecord {
    pub candidate: String,
    /// What the candidate evaluates to (its square, or its operation terms).
    pub value: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// Degrees, dimensions, and enumeration count of the searched space.
    pub search_space: String,
    pub certificate: Vec<CandidateRecord>,
    pub witness: Option<String>,
}

/// Every element of the degree-`d` slice of `t` over F_p, zero included, in
/// lexicographic coefficient order.
fn enumerate_degree(t: &Arc<Algebra>, d: u32, p: u64) -> Result<Vec<Element>> {
    let basis = t.basis_of_degree(d);
    let k = basis.len();
    let count = (p as u128).checked_pow(k as u32);
    if count.is_none() || count.unwrap() > 1 << 16 {
        return Err(Error::NotSupported(format!(
            "degree-{d} slice has {k} basis elements; the coefficient space is too large \
             to exhaust"
        )));
    }
    let mut out = Vec::new();
    let mut digits = vec![0u64; k];
    loop {
        let mut e = Element::zero(t);
        for (i, &c) in digits.iter().enumerate() {
            if c != 0 {
                let m = Element::monomial(t, basis[i].clone());
                e = e.add(&m.scale(&num_bigint::BigInt::from(c)))?;
            }
        }
        out.push(e);
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn fp_of(ring: &Ring) -> Result<u64> {
    match ring {
        Ring::Fp(p) => Ok(*p),
        r => Err(Error::NonFieldCoefficients(r.to_string())),
    }
}

/// Exhaust the degree-1 elements of `a (x) b` and compare each square against
/// `target (x) 1`.
pub fn square_obstruction_in(
    a: &Arc<Algebra>,
    target: &Element,
    b: &Arc<Algebra>,
    cap: u32,
) -> Result<Verdict> {
    if cap < 2 {
        return Err(Error::CapTooSmall { need: 2, got: cap as i64 });
    }
    let p = fp_of(&a.ring)?;
    if p != 2 {
        return Err(Error::NotSupported("the square argument is specific to p = 2".into()));
    }
    let t = tensor(a, b)?;
    let goal = tensor_element(&t, target, &Element::one(b))?;
    let candidates = enumerate_degree(&t, 1, p)?;
    let space = format!(
        "degree-1 slice of the tensor product: {} basis elements, {} candidates",
        t.basis_of_degree(1).len(),
        candidates.len()
    );
    let mut certificate = Vec::new();
    let mut witness = None;
    for z in &candidates {
        let sq = z.pow(2)?;
        let matches = sq == goal;
        certificate.push(CandidateRecord {
            candidate: z.to_string(),
            value: sq.to_string(),
            matches,
        });
        if matches && witness.is_none() {
            witness = Some(z.to_string());
        }
    }
    let status = if witness.is_some() { Status::SolvableWitness } else { Status::Unsolvable };
    Ok(Verdict { status, search_space: space, certificate, witness })
}

/// Exhaust the degree-1 squares in (homology of the integers) (x) B at p = 2
/// against the square of the first Milnor generator.
pub fn square_obstruction_p2(b: &Arc<Algebra>, cap: u32) -> Result<Verdict> {
    if cap < 2 {
        return Err(Error::CapTooSmall { need: 2, got: cap as i64 });
    }
    let hz = hfp_homology_of_hz(2, cap)?;
    let target = Element::generator(&hz.algebra, "xi1sq")?;
    square_obstruction_in(&hz.algebra, &target, b, cap)
}

/// The same conclusion by degree bookkeeping alone, valid for every right
/// factor: the left side of the tensor product has nothing in degree 1, so a
/// degree-1 element lives on the unit-(x)-B line, its square stays there,
/// and the goal has left degree 2.
pub fn square_obstruction_p2_structural() -> Verdict {
    Verdict {
        status: Status::Unsolvable,
        search_space: "all degree-1 elements of the tensor product, any right factor".into(),
        certificate: vec![CandidateRecord {
            candidate: "1 (x) y, y of degree 1 arbitrary".into(),
            value: "(1 (x) y)^2 = 1 (x) y^2 has left degree 0; the goal has left degree 2"
                .into(),
            matches: false,
        }],
        witness: None,
    }
}

/// A term produced by the tensor Cartan expansion, reduced to the degree data
/// the certificate needs.
fn term_summary(term: &crate::steenrod::TensorTerm, p: u64) -> String {
    let ad = term.a.degree().ok().flatten().unwrap_or(0);
    match &term.b {
        BFactor::Known(e) => {
            let bd = e.degree().ok().flatten().unwrap_or(0);
            format!("({}) (x) ({}) [left degree {ad}, right degree {bd}]", term.a, e)
        }
        BFactor::Op { beta, q, arg } => {
            let shift = q.map_or(0, |s| 2 * s * (p as i64 - 1)) - i64::from(*beta);
            let bd = arg.degree().ok().flatten().unwrap_or(0) + shift;
            format!(
                "({}) (x) <unevaluated operation on {}> [left degree {ad}, right degree {bd}]",
                term.a, arg
            )
        }
    }
}

/// Does `target (x) 1` appear as a summand of the given tensor terms?
/// Symbolic right factors cannot contribute: their degree is positive, but
/// the unit has degree 0.
fn coefficient_on(
    terms: &[crate::steenrod::TensorTerm],
    target: &Element,
    b: &Arc<Algebra>,
) -> bool {
    let Some(d) = target.degree().ok().flatten() else { return false };
    let t_coords = target.coordinates(d as u32);
    let Some(unit_pos) = b.basis_of_degree(0).iter().position(|m| m.is_unit()) else {
        return false;
    };
    let ring = target.algebra().ring;
    let mut acc = vec![num_bigint::BigInt::from(0); t_coords.len()];
    for t in terms {
        let BFactor::Known(e) = &t.b else { continue };
        let c = match e.coordinates(0).get(unit_pos).cloned() {
            Some(c) if !c.is_zero() => c,
            _ => continue,
        };
        if t.a.degree().ok().flatten() != Some(d) {
            continue;
        }
        for (acc_i, a_i) in acc.iter_mut().zip(t.a.coordinates(d as u32)) {
            *acc_i += c.clone() * a_i;
        }
    }
    t_coords
        .iter()
        .zip(&acc)
        .any(|(tc, ac)| !tc.is_zero() && !ring.reduce(ac.clone()).is_zero())
}

/// Search for a degree-1 element whose Bockstein-then-first-power-operation
/// image contains `target (x) 1`, expanding over the pure-tensor degree-1
/// basis.  Right-side operations may stay symbolic: their degree is positive,
/// so they cannot meet the goal line, and the certificate records exactly
/// that bookkeeping.
pub fn bockstein_obstruction_in(
    ctx: &SteenrodContext,
    target: &Element,
    b: &Arc<Algebra>,
    cap: u32,
) -> Result<Verdict> {
    let p = ctx.p;
    if (cap as i64) < 2 * (p as i64) - 2 {
        return Err(Error::CapTooSmall { need: 2 * p as i64 - 2, got: cap as i64 });
    }
    let word = DLWord::beta_q(p, 1)?;
    // pure-tensor degree-1 basis: left degree k, right degree 1 - k
    let mut pairs: Vec<(Element, Element, String)> = Vec::new();
    for k in 0..=1u32 {
        for am in ctx.algebra.basis_of_degree(k) {
            for bm in b.basis_of_degree(1 - k) {
                let ae = Element::monomial(&ctx.algebra, am.clone());
                let be = Element::monomial(b, bm.clone());
                if ae.degree()?.unwrap_or(0) == 0 && be.degree()?.unwrap_or(0) == 0 {
                    continue; // the unit line has degree 0, not 1
                }
                pairs.push((ae.clone(), be.clone(), format!("({ae}) (x) ({be})")));
            }
        }
    }
    let space = format!(
        "pure-tensor degree-1 basis of the tensor product: {} elements (the operation is \
         additive, so the basis exhausts all degree-1 elements)",
        pairs.len()
    );
    let mut certificate = Vec::new();
    let mut witness = None;
    for (ae, be, name) in &pairs {
        let terms = apply_dl_tensor(&word, &[(ae.clone(), be.clone())], ctx)?;
        let matches = coefficient_on(&terms, target, b);
        let value = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.iter().map(|t| term_summary(t, p)).collect::<Vec<_>>().join(" + ")
        };
        certificate.push(CandidateRecord { candidate: name.clone(), value, matches });
        if matches && witness.is_none() {
            witness = Some(name.clone());
        }
    }
    let status = if witness.is_some() { Status::SolvableWitness } else { Status::Unsolvable };
    Ok(Verdict { status, search_space: space, certificate, witness })
}

/// The odd-prime obstruction over (homology of the integers) (x) B: no
/// degree-1 element maps onto the first Milnor generator tensor the unit.
pub fn bockstein_q1_obstruction(p: u64, b: &Arc<Algebra>, cap: u32) -> Result<Verdict> {
    if p == 2 {
        return Err(Error::NotSupported("the Bockstein argument needs an odd prime".into()));
    }
    if (cap as i64) < 2 * (p as i64) - 2 {
        return Err(Error::CapTooSmall { need: 2 * p as i64 - 2, got: cap as i64 });
    }
    let hz = hfp_homology_of_hz(p, cap)?;
    let target = Element::generator(&hz.algebra, "xi1")?;
    bockstein_obstruction_in(&hz.dl, &target, b, cap)
}

/// An assignment for one designated generator: its image is the unit tensor
/// the generator plus positive-left-degree corrections.
#[derive(Clone, Debug)]
pub struct UnitMapCandidate {
    pub generator: String,
    /// Element of the tensor algebra; the leading term is `1 (x) generator`.
    pub element: Element,
}

/// A vanishing monomial relation `generator^power = 0` in the target.
#[derive(Clone, Debug)]
pub struct MonomialRelation {
    pub generator: String,
    pub power: u32,
}

/// Enumerate unit-map images `1 (x) x + corrections` for each designated
/// generator and keep those compatible with the supplied vanishing relations
/// after multiplying out in the tensor algebra.
pub fn forced_unit_map(
    h: &Arc<Algebra>,
    generators: &[String],
    relations: &[MonomialRelation],
    p: u64,
    cap: u32,
) -> Result<Vec<UnitMapCandidate>> {
    let a = dual_steenrod(p, Presentation::Xi, cap)?;
    let t = tensor(&a.algebra, h)?;
    let na = a.algebra.generators.len();
    let mut out = Vec::new();
    for gname in generators {
        let x = Element::generator(h, gname)?;
        let d = x.degree()?.ok_or_else(|| Error::InvalidPresentation(
            "designated generator is zero".into(),
        ))?;
        if d < 0 || d as u32 > cap {
            return Err(Error::DegreeOverflow { needed: d, cap: cap as i64 });
        }
        let lead = tensor_element(&t, &Element::one(&a.algebra), &x)?;
        // correction monomials: same degree, positive left-side degree
        let corrections: Vec<Element> = t
            .basis_of_degree(d as u32)
            .iter()
            .filter(|m| m.0[..na].iter().enumerate().any(|(i, &e)| {
                e > 0 && a.algebra.generators[i].degree > 0
            }))
            .map(|m| Element::monomial(&t, m.clone()))
            .collect();
        let k = corrections.len();
        if (p as u128).checked_pow(k as u32).is_none_or(|c| c > 1 << 16) {
            return Err(Error::NotSupported(format!(
                "{k} correction monomials for {gname}; the assignment space is too large"
            )));
        }
        let mut digits = vec![0u64; k];
        'assignments: loop {
            let mut cand = lead.clone();
            for (i, &c) in digits.iter().enumerate() {
                if c != 0 {
                    cand = cand.add(&corrections[i].scale(&num_bigint::BigInt::from(c)))?;
                }
            }
            let mut ok = true;
            for r in relations.iter().filter(|r| &r.generator == gname) {
                if (d * r.power as i64) as u32 <= cap && !cand.pow(r.power)?.is_zero() {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(UnitMapCandidate { generator: gname.clone(), element: cand });
            }
            let mut i = 0;
            loop {
                if i == k {
                    break 'assignments;
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
    Ok(out)
}

/// Ground-ring-tagged verdicts of the extension test.
#[derive(Clone, Debug)]
pub enum ExtensionVerdict {
    CertifiedExtension(MonoidBasis),
    CertifiedNonExtension(Verdict),
    Unknown,
}

/// Try the positive certification route (needs asserted formality) and, for
/// algebras carrying prime-field structure viewed integrally, the negative
/// obstruction route.  Each verdict names its ground ring; the two routes
/// apply to different ground rings, so they never contradict each other.
pub fn extension_status(
    x: &Dga,
    formality_asserted: bool,
    fp_algebra_over_z: bool,
    budget: SearchBudget,
) -> Result<Vec<(Ring, ExtensionVerdict)>> {
    let mut out = Vec::new();
    if formality_asserted {
        let h = homology_ring(x)?;
        let verdict = match check_monoid_basis(&h, &table_candidate(&h))? {
            CheckOutcome::Certified(b) => ExtensionVerdict::CertifiedExtension(b),
            CheckOutcome::Violation(_) => match search_monoid_basis(&h, budget)? {
                SearchOutcome::Found(b) => ExtensionVerdict::CertifiedExtension(b),
                SearchOutcome::ProvenNone | SearchOutcome::BudgetExhausted => {
                    ExtensionVerdict::Unknown
                }
            },
        };
        out.push((x.ring, verdict));
    }
    if fp_algebra_over_z {
        if let Ring::Fp(p) = x.ring {
            let verdict = if p == 2 {
                square_obstruction_p2_structural()
            } else {
                bockstein_q1_structural(p)
            };
            out.push((Ring::Z, ExtensionVerdict::CertifiedNonExtension(verdict)));
        }
    }
    if out.is_empty() {
        out.push((x.ring, ExtensionVerdict::Unknown));
    }
    // the two routes must not contradict each other over one ground ring
    for (i, (r, v)) in out.iter().enumerate() {
        for (s, w) in out.iter().skip(i + 1) {
            if r == s {
                let clash = matches!(v, ExtensionVerdict::CertifiedExtension(_))
                    && matches!(w, ExtensionVerdict::CertifiedNonExtension(_))
                    || matches!(v, ExtensionVerdict::CertifiedNonExtension(_))
                        && matches!(w, ExtensionVerdict::CertifiedExtension(_));
                assert!(!clash, "contradictory verdicts over {r}");
            }
        }
    }
    Ok(out)
}

/// Degree bookkeeping version of the odd-prime obstruction, valid for every
/// right factor: degree-1 elements live on the unit-(x)-B line because the
/// left side starts in degree at least 2; the operation keeps the left
/// degree at 0 on that line, while the goal has positive left degree.
pub fn bockstein_q1_structural(p: u64) -> Verdict {
    Verdict {
        status: Status::Unsolvable,
        search_space: "all degree-1 elements of the tensor product, any right factor".into(),
        certificate: vec![CandidateRecord {
            candidate: "1 (x) y, y of degree 1 arbitrary".into(),
            value: format!(
                "every resulting term keeps left degree 0; the goal has left degree {}",
                2 * (p - 1)
            ),
            matches: false,
        }],
        witness: None,
    }
}

#[cfg(test)]
mod tests;
