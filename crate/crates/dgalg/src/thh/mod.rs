//! Graded Künneth arithmetic for topological Hochschild homology splittings:
//! combine a coefficient table of THH groups of the base with computed
//! Hochschild homology of the extension.
//!
//! ```
//! use dgalg::dga::{GradedRingTable, ModuleValue};
//! use dgalg::gring::{AlgebraPresentation, GeneratorKind, GeneratorSpec, Ring, SignRule};
//! use dgalg::thh::{thh_groups, thh_of_fp, SplitInput};
//!
//! let a = AlgebraPresentation::new(
//!     Ring::Fp(2),
//!     vec![GeneratorSpec::new("x", 2, GeneratorKind::Truncated(2))],
//!     SignRule::Koszul,
//! )
//! .expand(8)
//! .unwrap();
//! let x = GradedRingTable::from_algebra(&a).unwrap();
//! let t = thh_of_fp(2, 8).unwrap();
//! let r = thh_groups(SplitInput::Table(&x), &t, 8, false).unwrap();
//! assert_eq!(r.tensor_at(2), ModuleValue::FieldDim(2));
//! ```

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::basis::{check_monoid_basis, search_monoid_basis, table_candidate, CheckOutcome,
                   SearchBudget, SearchOutcome};
use crate::dga::{Dga, GradedRingTable, ModuleValue};
use crate::error::{Error, Result};
use crate::gring::fga::FgAbelianGroup;
use crate::gring::Ring;
use crate::hochschild::{hh, hh_dga, hh_over_z, GradedModuleResult};

/// Where the numbers in a coefficient table come from.  Tables are data, not
/// something this crate derives, so every table must say so.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ExternalLiterature,
    UserSupplied,
}

/// Per-degree THH groups of the base ring, valid through `degree_cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct THHTable {
    pub ring: Ring,
    /// Absent degrees are zero.
    pub modules: BTreeMap<i64, ModuleValue>,
    pub provenance: Provenance,
    pub degree_cap: i64,
    /// Multiplicative structure, when known.  Only consulted over a field.
    pub ring_structure: Option<GradedRingTable>,
}

fn is_unit_module(ring: Ring, v: &ModuleValue) -> bool {
    match (ring.is_field(), v) {
        (true, ModuleValue::FieldDim(n)) => *n == 1,
        (false, ModuleValue::Group(g)) => g.free_rank == 1 && g.torsion.is_empty(),
        _ => false,
    }
}

impl THHTable {
    pub fn new(
        ring: Ring,
        modules: BTreeMap<i64, ModuleValue>,
        provenance: Provenance,
        degree_cap: i64,
    ) -> Result<Self> {
        let zero = zero_module(ring);
        let deg0 = modules.get(&0).unwrap_or(&zero);
        if !is_unit_module(ring, deg0) {
            return Err(Error::NotSupported(
                "degree 0 of a THH table must be the base ring itself".into(),
            ));
        }
        for (d, v) in &modules {
            if *d < 0 || *d > degree_cap {
                return Err(Error::NotSupported(format!(
                    "table entry in degree {d} outside 0..={degree_cap}"
                )));
            }
            let field_value = matches!(v, ModuleValue::FieldDim(_));
            if field_value != ring.is_field() {
                return Err(Error::RingMismatch("module values do not match the base ring".into()));
            }
        }
        Ok(THHTable { ring, modules, provenance, degree_cap, ring_structure: None })
    }

    pub fn module(&self, d: i64) -> ModuleValue {
        self.modules.get(&d).cloned().unwrap_or_else(|| zero_module(self.ring))
    }

    /// True when every tabulated group is torsion-free.
    fn degreewise_free(&self) -> bool {
        self.modules.values().all(|v| match v {
            ModuleValue::FieldDim(_) => true,
            ModuleValue::Group(g) => g.torsion.is_empty(),
        })
    }
}

fn zero_module(ring: Ring) -> ModuleValue {
    if ring.is_field() {
        ModuleValue::FieldDim(0)
    } else {
        ModuleValue::Group(FgAbelianGroup::zero())
    }
}

/// THH of the integers: the base in degree 0 and cyclic groups of growing
/// order in odd degrees (degree 2i-1 has order i), zero elsewhere.
/// Transcribed from the published computation; carried as literature data.
pub fn thh_of_z(degree_cap: i64) -> THHTable {
    let mut modules = BTreeMap::new();
    modules.insert(0, ModuleValue::Group(FgAbelianGroup::free(1)));
    let mut i = 2i64;
    while 2 * i - 1 <= degree_cap {
        modules.insert(
            2 * i - 1,
            ModuleValue::Group(FgAbelianGroup {
                free_rank: 0,
                torsion: vec![BigUint::from(i as u64)],
            }),
        );
        i += 1;
    }
    THHTable {
        ring: Ring::Z,
        modules,
        provenance: Provenance::ExternalLiterature,
        degree_cap,
        ring_structure: None,
    }
}

/// THH of a prime field: a polynomial algebra on one degree-2 generator.
/// Transcribed from the published computation; carried as literature data.
pub fn thh_of_fp(p: u64, degree_cap: i64) -> Result<THHTable> {
    let ring = Ring::Fp(p);
    ring.validate()?;
    let mut modules = BTreeMap::new();
    let mut d = 0i64;
    while d <= degree_cap {
        modules.insert(d, ModuleValue::FieldDim(1));
        d += 2;
    }
    let pres = crate::gring::AlgebraPresentation::new(
        ring,
        vec![crate::gring::GeneratorSpec {
            name: "mu".into(),
            degree: 2,
            kind: crate::gring::GeneratorKind::Polynomial,
        }],
        crate::gring::SignRule::Koszul,
    );
    let alg = pres.expand(degree_cap.max(0) as u32)?;
    Ok(THHTable {
        ring,
        modules,
        provenance: Provenance::ExternalLiterature,
        degree_cap,
        ring_structure: Some(GradedRingTable::from_algebra(&alg)?),
    })
}

/// Whether the integral answer in each degree is pinned down or only known
/// up to extensions of the tensor part by the Tor part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitFlag {
    SplitDetermined,
    ExtensionAmbiguous,
}

/// Degreewise Künneth output: tensor part, Tor part (integral case only),
/// and whether extensions could still reassemble the groups differently.
#[derive(Clone, Debug, PartialEq)]
pub struct KunnethResult {
    pub ring: Ring,
    pub tensor: BTreeMap<i64, ModuleValue>,
    pub tor: BTreeMap<i64, ModuleValue>,
    pub flag: SplitFlag,
    pub degree_cap: i64,
    /// Present only over a field, when the table carries multiplication and
    /// the Hochschild side is the ground field alone.
    pub ring_structure: Option<GradedRingTable>,
}

impl KunnethResult {
    pub fn tensor_at(&self, d: i64) -> ModuleValue {
        self.tensor.get(&d).cloned().unwrap_or_else(|| zero_module(self.ring))
    }

    pub fn tor_at(&self, d: i64) -> ModuleValue {
        self.tor.get(&d).cloned().unwrap_or_else(|| zero_module(self.ring))
    }
}

/// The extension side of the splitting: a plain ring or one with a
/// differential.
#[derive(Clone, Copy, Debug)]
pub enum SplitInput<'a> {
    Table(&'a GradedRingTable),
    Dga(&'a Dga),
}

impl<'a> SplitInput<'a> {
    fn ring(&self) -> Ring {
        match self {
            SplitInput::Table(t) => t.ring,
            SplitInput::Dga(x) => x.ring,
        }
    }

    /// The underlying multiplication table, for certification.
    fn as_table(&self) -> GradedRingTable {
        match self {
            SplitInput::Table(t) => (*t).clone(),
            SplitInput::Dga(x) => {
                let orders = x
                    .names
                    .iter()
                    .map(|(&d, ns)| (d, vec![BigInt::zero(); ns.len()]))
                    .collect();
                GradedRingTable {
                    ring: x.ring,
                    max_degree: x.names.keys().next_back().copied().unwrap_or(0),
                    names: x.names.clone(),
                    orders,
                    products: x.products.clone(),
                    unit: x.unit.clone(),
                    complete: true,
                }
            }
        }
    }
}

/// Check that the extension admits a monomial-type basis: first against its
/// own basis, then by search within the default budget.
fn certify(x: &SplitInput) -> Result<()> {
    let t = x.as_table();
    if let CheckOutcome::Certified(_) = check_monoid_basis(&t, &table_candidate(&t))? {
        return Ok(());
    }
    match search_monoid_basis(&t, SearchBudget::default())? {
        SearchOutcome::Found(_) => Ok(()),
        _ => Err(Error::NotCertified),
    }
}

fn module_tensor(ring: Ring, a: &ModuleValue, b: &ModuleValue) -> Result<ModuleValue> {
    match (a, b) {
        (ModuleValue::FieldDim(m), ModuleValue::FieldDim(n)) => {
            debug_assert!(ring.is_field());
            Ok(ModuleValue::FieldDim(m * n))
        }
        (ModuleValue::Group(g), ModuleValue::Group(h)) => Ok(ModuleValue::Group(g.tensor(h))),
        _ => Err(Error::RingMismatch("mixed field and integral module values".into())),
    }
}

fn module_sum(ring: Ring, a: &ModuleValue, b: &ModuleValue) -> Result<ModuleValue> {
    match (a, b) {
        (ModuleValue::FieldDim(m), ModuleValue::FieldDim(n)) => {
            debug_assert!(ring.is_field());
            Ok(ModuleValue::FieldDim(m + n))
        }
        (ModuleValue::Group(g), ModuleValue::Group(h)) => Ok(ModuleValue::Group(g.direct_sum(h))),
        _ => Err(Error::RingMismatch("mixed field and integral module values".into())),
    }
}

fn hh_is_ground_field_only(h: &GradedModuleResult) -> bool {
    h.modules.iter().all(|(&d, v)| match v {
        ModuleValue::FieldDim(n) => if d == 0 { *n == 1 } else { *n == 0 },
        ModuleValue::Group(_) => false,
    })
}

/// Combine a THH coefficient table with the Hochschild homology of the
/// extension, degree by degree.
///
/// Over a field the answer in degree n is the direct sum of products
/// `T_i (x) HH_j` over `i + j = n`.  Over the integers the same tensor sum is
/// reported together with a Tor correction in the next degree up, and the
/// result is flagged ambiguous unless one side is degreewise free.  The
/// extension must pass the monomial-basis certification unless
/// `assume_certified` waives it.
pub fn thh_groups(
    x: SplitInput,
    t: &THHTable,
    degree_cap: i64,
    assume_certified: bool,
) -> Result<KunnethResult> {
    if t.ring != x.ring() {
        return Err(Error::RingMismatch("table and extension coefficients differ".into()));
    }
    if let Ring::Zm(_) = t.ring {
        return Err(Error::NotSupported(
            "splitting arithmetic over Z/m needs a Künneth theorem that does not hold; \
             use a field or the integers"
                .into(),
        ));
    }
    if t.degree_cap < degree_cap {
        return Err(Error::CapTooSmall { need: degree_cap, got: t.degree_cap });
    }
    if !assume_certified {
        certify(&x)?;
    }
    let h = match (x, t.ring) {
        (SplitInput::Dga(d), _) => hh_dga(d, degree_cap)?,
        (SplitInput::Table(table), Ring::Z) => hh_over_z(table, degree_cap)?,
        (SplitInput::Table(table), _) => hh(table, degree_cap)?,
    };
    let hh_at = |d: i64| h.modules.get(&d).cloned().unwrap_or_else(|| zero_module(t.ring));

    let mut tensor = BTreeMap::new();
    let mut tor = BTreeMap::new();
    for n in 0..=degree_cap {
        let mut acc = zero_module(t.ring);
        for i in 0..=n {
            let piece = module_tensor(t.ring, &t.module(i), &hh_at(n - i))?;
            acc = module_sum(t.ring, &acc, &piece)?;
        }
        tensor.insert(n, acc);
        if t.ring == Ring::Z && n >= 1 {
            let mut acc = zero_module(t.ring);
            for i in 0..=(n - 1) {
                let (ModuleValue::Group(a), ModuleValue::Group(b)) =
                    (t.module(i), hh_at(n - 1 - i))
                else {
                    return Err(Error::RingMismatch("integral case needs group values".into()));
                };
                acc = module_sum(t.ring, &acc, &ModuleValue::Group(a.tor(&b)))?;
            }
            tor.insert(n, acc);
        }
    }

    let hh_free = h.modules.values().all(|v| match v {
        ModuleValue::FieldDim(_) => true,
        ModuleValue::Group(g) => g.torsion.is_empty(),
    });
    let flag = if t.ring.is_field() || t.degreewise_free() || hh_free {
        SplitFlag::SplitDetermined
    } else {
        SplitFlag::ExtensionAmbiguous
    };

    let ring_structure = match (&t.ring_structure, t.ring.is_field()) {
        (Some(rs), true) if hh_is_ground_field_only(&h) => Some(rs.clone()),
        _ => None,
    };

    Ok(KunnethResult { ring: t.ring, tensor, tor, flag, degree_cap, ring_structure })
}

/// Tor of two finitely generated abelian groups from invariant factors.
pub fn tor_fg(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    a.tor(b)
}
