//! Graded tensor product of expanded algebras over a common field.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gring::algebra::{Algebra, AlgebraPresentation, Monomial, Relation};
use crate::gring::element::Element;

/// The graded tensor algebra `A (x) B` with the product
/// `(a (x) x)(b (x) y) = (-1)^{|x||b|} ab (x) xy`.
///
/// Realized as the algebra on the concatenated generator list, which gives
/// exactly that sign under the Koszul rule. The basis in each degree is the
/// set of pairs of basis monomials; generator names must not clash.
pub fn tensor(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Arc<Algebra>> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(format!(
            "tensor factors over {} and {}",
            a.ring, b.ring
        )));
    }
    if !a.ring.is_field() {
        return Err(Error::NonFieldCoefficients(a.ring.to_string()));
    }
    if a.sign_rule != b.sign_rule {
        return Err(Error::InvalidPresentation(
            "tensor factors use different sign rules".into(),
        ));
    }
    for g in &a.generators {
        if b.generator_index(&g.name).is_some() {
            return Err(Error::InvalidPresentation(format!(
                "generator name {} occurs in both tensor factors",
                g.name
            )));
        }
    }
    let mut generators = a.generators.clone();
    generators.extend(b.generators.iter().cloned());
    let na = a.generators.len();
    let nb = b.generators.len();
    let mut relations = Vec::new();
    for r in &a.relations {
        relations.push(Relation {
            lhs: pad_right(&r.lhs, nb),
            rhs: r.rhs.iter().map(|(m, c)| (pad_right(m, nb), c.clone())).collect(),
        });
    }
    for r in &b.relations {
        relations.push(Relation {
            lhs: pad_left(&r.lhs, na),
            rhs: r.rhs.iter().map(|(m, c)| (pad_left(m, na), c.clone())).collect(),
        });
    }
    let cap = a.cap.min(b.cap);
    AlgebraPresentation::new(a.ring.clone(), generators, a.sign_rule)
        .with_relations(relations)
        .expand(cap)
}

fn pad_right(m: &Monomial, extra: usize) -> Monomial {
    let mut v = m.0.clone();
    v.extend(std::iter::repeat(0).take(extra));
    Monomial(v)
}

fn pad_left(m: &Monomial, extra: usize) -> Monomial {
    let mut v = vec![0u32; extra];
    v.extend_from_slice(&m.0);
    Monomial(v)
}

/// Embed a pure tensor `a (x) b` into the tensor algebra.
pub fn tensor_element(
    t: &Arc<Algebra>,
    a_side: &Element,
    b_side: &Element,
) -> Result<Element> {
    let na = a_side.algebra().generators.len();
    let nb = b_side.algebra().generators.len();
    if na + nb != t.generators.len() {
        return Err(Error::MixedAlgebras);
    }
    let a_lift = Element::from_terms(
        t,
        a_side
            .raw_terms()
            .iter()
            .map(|(m, c)| (pad_right(m, nb), c.clone())),
    )?;
    let b_lift = Element::from_terms(
        t,
        b_side
            .raw_terms()
            .iter()
            .map(|(m, c)| (pad_left(m, na), c.clone())),
    )?;
    a_lift.mul(&b_lift)
}
