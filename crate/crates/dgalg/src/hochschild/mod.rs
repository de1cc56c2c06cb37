//! Hochschild homology of graded algebras and DGAs through a degree cap.
//!
//! The complex is the normalized bar-type complex: chains in bar length `n`
//! are tensors `a0 ⊗ ā1 ⊗ … ⊗ ān` whose middle factors avoid the unit line,
//! graded by total degree `n + Σ (internal degrees)`.  The boundary merges
//! adjacent factors with alternating signs; the wrap-around face carries the
//! sign for rotating the last factor past the others.  For a DGA source the
//! total differential adds the internal differential, with sign `(-1)^n` on
//! bar length `n`.
//!
//! ```
//! use dgalg::dga::{GradedRingTable, ModuleValue};
//! use dgalg::gring::{AlgebraPresentation, GeneratorKind, GeneratorSpec, Ring, SignRule};
//! use dgalg::hochschild::hh;
//!
//! let a = AlgebraPresentation::new(
//!     Ring::Fp(2),
//!     vec![GeneratorSpec::new("x", 2, GeneratorKind::Truncated(2))],
//!     SignRule::Koszul,
//! )
//! .expand(6)
//! .unwrap();
//! let t = GradedRingTable::from_algebra(&a).unwrap();
//! let h = hh(&t, 5).unwrap();
//! assert_eq!(h.modules[&5], ModuleValue::FieldDim(1));
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::dga::{
    complex_homology, formal_dga, BasisId, ChainComplex, Dga, GradedRingTable, ModuleValue,
};
use crate::error::{Error, Result};
use crate::gring::fga::normalize_invariant_factors_with_rank;
use crate::gring::{IntMatrix, Ring};

/// A normalized chain: the unrestricted factor, then the middle factors.
pub type Tensor = (BasisId, Vec<BasisId>);

/// Whether reported groups are exact or limited by the bar-length cut-off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    TruncationLimited,
}

/// Graded homology values together with the caps they were computed under.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedModuleResult {
    pub ring: Ring,
    pub modules: BTreeMap<i64, ModuleValue>,
    pub exactness: Exactness,
    pub degree_cap: i64,
    pub length_cap: usize,
}

/// The normalized complex itself, with its assembled total differential.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub ring: Ring,
    pub degree_cap: i64,
    pub length_cap: usize,
    pub connected: bool,
    /// Chain bases keyed by (bar length, total degree).
    pub chains: BTreeMap<(usize, i64), Vec<Tensor>>,
    /// Total differential per total degree, against the flattened bases.
    pub total_d: BTreeMap<i64, IntMatrix>,
    dims: BTreeMap<i64, usize>,
    index: BTreeMap<Tensor, (i64, usize)>,
}

fn total_degree(t: &Tensor) -> i64 {
    t.0 .0 + t.1.iter().map(|id| id.0).sum::<i64>() + t.1.len() as i64
}

/// Index of the unit among the degree-0 basis elements, which must carry it
/// with coefficient one.
fn unit_index(x: &Dga) -> Result<usize> {
    let mut hit = None;
    for (i, c) in x.unit.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !(c - BigInt::from(1)).is_zero() || hit.is_some() {
            return Err(Error::NotSupported(
                "the unit must be a single basis element".into(),
            ));
        }
        hit = Some(i);
    }
    hit.ok_or_else(|| Error::NonUnital("the unit is zero".into()))
}

struct Builder<'a> {
    x: &'a Dga,
    build_cap: i64,
    length_cap: usize,
    /// non-unit basis ids by degree, the complement of the unit line
    complement: Vec<BasisId>,
}

impl Builder<'_> {
    fn enumerate(&self) -> BTreeMap<(usize, i64), Vec<Tensor>> {
        let mut chains: BTreeMap<(usize, i64), Vec<Tensor>> = BTreeMap::new();
        let heads: Vec<BasisId> = self
            .x
            .degrees()
            .flat_map(|d| (0..self.x.dim(d)).map(move |i| (d, i)))
            .collect();
        for &head in &heads {
            let mut slots = Vec::new();
            self.extend(head, &mut slots, &mut chains);
        }
        chains
    }

    fn extend(
        &self,
        head: BasisId,
        slots: &mut Vec<BasisId>,
        chains: &mut BTreeMap<(usize, i64), Vec<Tensor>>,
    ) {
        let t: Tensor = (head, slots.clone());
        let total = total_degree(&t);
        if total > self.build_cap {
            return;
        }
        chains.entry((slots.len(), total)).or_default().push(t);
        if slots.len() == self.length_cap {
            return;
        }
        for &id in &self.complement {
            // every slot adds at least one to the total degree
            if total + id.0 + 1 > self.build_cap {
                continue;
            }
            slots.push(id);
            self.extend(head, slots, chains);
            slots.pop();
        }
    }
}

impl HochschildComplex {
    pub fn dim(&self, total: i64) -> usize {
        self.dims.get(&total).copied().unwrap_or(0)
    }

    /// Position of a tensor in the flattened basis of its total degree.
    pub fn flat_index(&self, t: &Tensor) -> Option<(i64, usize)> {
        self.index.get(t).copied()
    }

    /// The flattened complex graded by total degree.
    pub fn total_complex(&self) -> ChainComplex {
        ChainComplex {
            ring: self.ring,
            dims: self.dims.clone(),
            d: self.total_d.clone(),
        }
    }

    /// Homology of the total complex, reported through the degree cap.
    pub fn homology(&self) -> Result<GradedModuleResult> {
        let h = complex_homology(&self.total_complex())?;
        let mut modules = BTreeMap::new();
        for t in 0..=self.degree_cap {
            let v = h.modules.get(&t).cloned().unwrap_or_else(|| match self.ring {
                Ring::Fp(_) => ModuleValue::FieldDim(0),
                _ => ModuleValue::Group(normalize_invariant_factors_with_rank(vec![], 0)),
            });
            modules.insert(t, v);
        }
        Ok(GradedModuleResult {
            ring: self.ring,
            modules,
            exactness: if self.connected {
                Exactness::Exact
            } else {
                Exactness::TruncationLimited
            },
            degree_cap: self.degree_cap,
            length_cap: self.length_cap,
        })
    }
}

/// Build the normalized complex of a DGA through the given total degree.
///
/// `length_override` replaces the default bar-length cut-off (the degree cap
/// for a connected source, two more otherwise).
pub fn hochschild_complex(
    x: &Dga,
    degree_cap: i64,
    length_override: Option<usize>,
) -> Result<HochschildComplex> {
    if degree_cap < 0 {
        return Err(Error::CapTooSmall { need: 0, got: degree_cap });
    }
    if x.degrees().any(|d| d < 0) {
        return Err(Error::NotSupported(
            "negative-degree basis elements are not supported here".into(),
        ));
    }
    let unit0 = unit_index(x)?;
    let connected = x.dim(0) == 1;
    let length_cap = length_override.unwrap_or(if connected {
        degree_cap as usize
    } else {
        degree_cap as usize + 2
    });
    // one extra degree so the differential into the cap is present
    let build_cap = degree_cap + 1;
    let complement: Vec<BasisId> = x
        .degrees()
        .flat_map(|d| (0..x.dim(d)).map(move |i| (d, i)))
        .filter(|&(d, i)| !(d == 0 && i == unit0))
        .collect();
    let b = Builder { x, build_cap, length_cap, complement };
    let chains = b.enumerate();

    // flatten: within a total degree, bar length ascending then listing order
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    let mut index: BTreeMap<Tensor, (i64, usize)> = BTreeMap::new();
    for ((_, total), ts) in &chains {
        let base = dims.entry(*total).or_insert(0);
        for t in ts {
            index.insert(t.clone(), (*total, *base));
            *base += 1;
        }
    }

    let has_internal = x.d.values().any(|m| m.entries().next().is_some());
    let mut total_d: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    for (&total, &n) in &dims {
        if total == 0 || n == 0 {
            continue;
        }
        let rows = dims.get(&(total - 1)).copied().unwrap_or(0);
        let mut m = IntMatrix::zero(rows, n);
        for ((len, tdeg), ts) in &chains {
            if *tdeg != total {
                continue;
            }
            for t in ts {
                let col = index[t].1;
                boundary_column(x, unit0, has_internal, *len, t, &index, &mut m, col);
            }
        }
        total_d.insert(total, m);
    }

    let complex = HochschildComplex {
        ring: x.ring,
        degree_cap,
        length_cap,
        connected,
        chains,
        total_d,
        dims,
        index,
    };
    complex.total_complex().validate()?;
    Ok(complex)
}

/// Accumulate the boundary of one tensor into column `col` of `m`.
#[allow(clippy::too_many_arguments)]
fn boundary_column(
    x: &Dga,
    unit0: usize,
    has_internal: bool,
    n: usize,
    t: &Tensor,
    index: &BTreeMap<Tensor, (i64, usize)>,
    m: &mut IntMatrix,
    col: usize,
) {
    let (head, slots) = t;
    let mut add = |coeff: &BigInt, target: Tensor| {
        if coeff.is_zero() {
            return;
        }
        let (_, row) = index[&target];
        let v = m.get(row, col) + coeff;
        m.set(row, col, v);
    };
    let sign = |k: i64| if k % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };

    // face maps: merge adjacent factors, the last one wrapping around
    if n >= 1 {
        // d_0: head * slot_0
        let p = x.mul(&x.basis_chain(*head), &x.basis_chain(slots[0]));
        for (k, c) in p.coords.iter().enumerate() {
            add(c, ((p.degree, k), slots[1..].to_vec()));
        }
        // d_i, 0 < i < n: slot_{i-1} * slot_i, projected off the unit line
        for i in 1..n {
            let p = x.mul(&x.basis_chain(slots[i - 1]), &x.basis_chain(slots[i]));
            let s = sign(i as i64);
            for (k, c) in p.coords.iter().enumerate() {
                if p.degree == 0 && k == unit0 {
                    continue;
                }
                let mut rest = slots.clone();
                rest[i - 1] = (p.degree, k);
                rest.remove(i);
                add(&(c * &s), (*head, rest));
            }
        }
        // d_n: rotate the last factor to the front
        let last = slots[n - 1];
        let rest_deg: i64 = head.0 + slots[..n - 1].iter().map(|id| id.0).sum::<i64>();
        let s = sign(n as i64) * sign(last.0 * rest_deg);
        let p = x.mul(&x.basis_chain(last), &x.basis_chain(*head));
        for (k, c) in p.coords.iter().enumerate() {
            add(&(c * &s), ((p.degree, k), slots[..n - 1].to_vec()));
        }
    }

    // internal differential, applied slotwise with Koszul signs, the whole
    // term weighted by (-1)^n
    if has_internal {
        let outer = sign(n as i64);
        // head slot
        let dh = x.apply_d(&x.basis_chain(*head));
        for (k, c) in dh.coords.iter().enumerate() {
            add(&(c * &outer), ((dh.degree, k), slots.clone()));
        }
        let mut prefix = head.0;
        for i in 0..n {
            let s = &outer * sign(prefix);
            let di = x.apply_d(&x.basis_chain(slots[i]));
            for (k, c) in di.coords.iter().enumerate() {
                if di.degree == 0 && k == unit0 {
                    continue;
                }
                let mut rest = slots.clone();
                rest[i] = (di.degree, k);
                add(&(c * &s), (*head, rest));
            }
            prefix += slots[i].0;
        }
    }
}

fn require_field(ring: Ring) -> Result<()> {
    match ring {
        Ring::Fp(_) => Ok(()),
        r => Err(Error::NonFieldCoefficients(format!("{r:?}"))),
    }
}

/// The table must track every product appearing in chains through the cap.
fn check_table_reach(t: &GradedRingTable, degree_cap: i64) -> Result<()> {
    if !t.complete && t.max_degree < degree_cap + 1 {
        return Err(Error::CapTooSmall { need: degree_cap + 1, got: t.max_degree });
    }
    Ok(())
}

/// Hochschild homology of a graded algebra over a prime field.
pub fn hh(t: &GradedRingTable, degree_cap: i64) -> Result<GradedModuleResult> {
    require_field(t.ring)?;
    check_table_reach(t, degree_cap)?;
    hochschild_complex(&formal_dga(t)?, degree_cap, None)?.homology()
}

/// Hochschild homology of a DGA over a prime field: homology of the total
/// complex combining the bar boundary and the internal differential.
pub fn hh_dga(x: &Dga, degree_cap: i64) -> Result<GradedModuleResult> {
    require_field(x.ring)?;
    hochschild_complex(x, degree_cap, None)?.homology()
}

/// Integral Hochschild homology for graded rings with free graded pieces.
pub fn hh_over_z(t: &GradedRingTable, degree_cap: i64) -> Result<GradedModuleResult> {
    match t.ring {
        Ring::Z => {}
        Ring::Zm(m) => {
            return Err(Error::NotSupported(format!(
                "coefficients Z/{m} are not supported here"
            )))
        }
        Ring::Fp(_) => {
            return Err(Error::RingMismatch("expected integer coefficients".into()))
        }
    }
    check_table_reach(t, degree_cap)?;
    // formal_dga rejects torsion pieces, which enforces freeness
    hochschild_complex(&formal_dga(t)?, degree_cap, None)?.homology()
}
