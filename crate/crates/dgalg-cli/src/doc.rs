//! Line-oriented input documents: presentations, DGAs, ring tables, THH
//! coefficient tables, and basis candidates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use dgalg::basis::Candidate;
use dgalg::dga::{Dga, DgaBuilder, GradedRingTable, ModuleValue};
use dgalg::gring::fga::FgAbelianGroup;
use dgalg::gring::{
    Algebra, AlgebraPresentation, GeneratorKind, GeneratorSpec, Monomial, Relation, Ring,
    SignRule,
};
use dgalg::thh::{Provenance, THHTable};

/// A parse failure with its 1-based line number.
#[derive(Debug, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// A parsed input document, still independent of any subcommand.
#[derive(Debug, PartialEq)]
pub enum InputDocument {
    Presentation(PresentationDoc),
    Dga(DgaDoc),
    RingTable(RingTableDoc),
    ThhTable(ThhTableDoc),
    BasisCandidate(CandidateDoc),
}

#[derive(Debug, PartialEq)]
pub struct PresentationDoc {
    pub ring: Ring,
    pub cap: u32,
    pub generators: Vec<GeneratorSpec>,
    /// relations as raw term lists, resolved against the generator order
    pub relations: Vec<Relation>,
}

#[derive(Debug, PartialEq)]
pub struct DgaDoc {
    pub builder_lines: Vec<DgaLine>,
    pub ring: Ring,
}

#[derive(Debug, PartialEq)]
pub enum DgaLine {
    Basis { degree: i64, names: Vec<String> },
    Differential { name: String, image: Vec<(String, BigInt)> },
    Product { left: String, right: String, value: Vec<(String, BigInt)> },
    Unit { name: String },
}

#[derive(Debug, PartialEq)]
pub struct RingTableDoc {
    pub ring: Ring,
    pub cap: i64,
    pub names: BTreeMap<i64, Vec<String>>,
    pub orders: BTreeMap<i64, Vec<BigInt>>,
    pub products: Vec<(String, String, Vec<(String, BigInt)>)>,
    pub unit: String,
    pub complete: bool,
}

#[derive(Debug, PartialEq)]
pub struct ThhTableDoc {
    pub ring: Ring,
    pub cap: i64,
    pub provenance: Provenance,
    pub modules: BTreeMap<i64, ModuleValue>,
}

#[derive(Debug, PartialEq)]
pub struct CandidateDoc {
    pub elements: Vec<(String, i64, Vec<BigInt>)>,
}

/// Parse a whole document; the first significant line must declare the kind.
pub fn parse(text: &str) -> Result<InputDocument, ParseError> {
    let mut lines = significant_lines(text);
    let Some((n, first)) = lines.first().cloned() else {
        return err(1, "empty document: expected a 'kind' line");
    };
    let kind = match first.strip_prefix("kind ") {
        Some(k) => k.trim().to_string(),
        None => return err(n, "expected 'kind presentation|dga|ring-table|thh-table|basis-candidate'"),
    };
    lines.remove(0);
    match kind.as_str() {
        "presentation" => parse_presentation(&lines).map(InputDocument::Presentation),
        "dga" => parse_dga(&lines).map(InputDocument::Dga),
        "ring-table" => parse_ring_table(&lines).map(InputDocument::RingTable),
        "thh-table" => parse_thh_table(&lines).map(InputDocument::ThhTable),
        "basis-candidate" => parse_candidate(&lines).map(InputDocument::BasisCandidate),
        other => err(n, format!("unknown document kind '{other}'")),
    }
}

fn significant_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim().to_string()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_ring(n: usize, s: &str) -> Result<Ring, ParseError> {
    if s == "Z" {
        return Ok(Ring::Z);
    }
    if let Some(m) = s.strip_prefix("Z/") {
        let m: u64 = m.parse().map_err(|_| ParseError {
            line: n,
            message: format!("bad modulus '{m}'"),
        })?;
        return Ok(Ring::Zm(m));
    }
    if let Some(p) = s.strip_prefix('F') {
        let p: u64 = p.parse().map_err(|_| ParseError {
            line: n,
            message: format!("bad prime '{p}'"),
        })?;
        return Ok(Ring::Fp(p));
    }
    err(n, format!("unknown ring '{s}': expected F<p>, Z, or Z/<m>"))
}

fn parse_int<T: std::str::FromStr>(n: usize, s: &str, what: &str) -> Result<T, ParseError> {
    s.parse().map_err(|_| ParseError { line: n, message: format!("bad {what} '{s}'") })
}

/// `[coeff*]name^e[*name^e...]` against a name resolver; returns exponent
/// vector and coefficient.
fn parse_monomial_term(
    n: usize,
    term: &str,
    index_of: &dyn Fn(&str) -> Option<usize>,
    width: usize,
) -> Result<(Monomial, BigInt), ParseError> {
    let mut coeff = BigInt::one();
    let mut exps = vec![0u32; width];
    for (i, factor) in term.split('*').enumerate() {
        let factor = factor.trim();
        if factor.is_empty() {
            return err(n, "empty factor in term");
        }
        if i == 0 {
            if let Ok(c) = factor.parse::<BigInt>() {
                coeff = c;
                continue;
            }
        }
        let (name, e) = match factor.split_once('^') {
            Some((name, e)) => (name.trim(), parse_int::<u32>(n, e.trim(), "exponent")?),
            None => (factor, 1),
        };
        let Some(idx) = index_of(name) else {
            return err(n, format!("unknown generator '{name}'"));
        };
        exps[idx] += e;
    }
    Ok((Monomial(exps), coeff))
}

fn parse_element_expr(
    n: usize,
    expr: &str,
    index_of: &dyn Fn(&str) -> Option<usize>,
    width: usize,
) -> Result<Vec<(Monomial, BigInt)>, ParseError> {
    let expr = expr.trim();
    if expr == "0" {
        return Ok(Vec::new());
    }
    expr.split('+')
        .map(|t| parse_monomial_term(n, t.trim(), index_of, width))
        .collect()
}

/// `name` or `coeff*name`, summed with `+`; `0` for zero.
fn parse_named_expr(n: usize, expr: &str) -> Result<Vec<(String, BigInt)>, ParseError> {
    let expr = expr.trim();
    if expr == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in expr.split('+') {
        let term = term.trim();
        match term.split_once('*') {
            Some((c, name)) => {
                let c = parse_int::<BigInt>(n, c.trim(), "coefficient")?;
                out.push((name.trim().to_string(), c));
            }
            None => out.push((term.to_string(), BigInt::one())),
        }
    }
    Ok(out)
}

fn parse_kind_spec(n: usize, s: &str) -> Result<GeneratorKind, ParseError> {
    match s {
        "poly" => Ok(GeneratorKind::Polynomial),
        "ext" => Ok(GeneratorKind::Exterior),
        other => match other.strip_prefix("trunc:") {
            Some(h) => Ok(GeneratorKind::Truncated(parse_int(n, h, "truncation height")?)),
            None => err(n, format!("unknown generator kind '{other}'")),
        },
    }
}

fn parse_presentation(lines: &[(usize, String)]) -> Result<PresentationDoc, ParseError> {
    let mut ring = None;
    let mut cap = None;
    let mut generators: Vec<GeneratorSpec> = Vec::new();
    let mut raw_relations: Vec<(usize, String, String)> = Vec::new();
    for (n, line) in lines {
        let n = *n;
        let mut words = line.split_whitespace();
        match words.next().unwrap() {
            "ring" => {
                if ring.is_some() {
                    return err(n, "duplicate 'ring' line");
                }
                ring = Some(parse_ring(n, line[4..].trim())?);
            }
            "cap" => {
                if cap.is_some() {
                    return err(n, "duplicate 'cap' line");
                }
                cap = Some(parse_int(n, line[3..].trim(), "cap")?);
            }
            "gen" => {
                // gen <name> deg <d> kind <kind>
                let name = words.next().ok_or(ParseError { line: n, message: "gen: missing name".into() })?;
                if generators.iter().any(|g| g.name == name) {
                    return err(n, format!("duplicate generator '{name}'"));
                }
                expect_word(n, &mut words, "deg")?;
                let d: u32 = parse_int(n, words.next().unwrap_or(""), "degree")?;
                expect_word(n, &mut words, "kind")?;
                let kind = parse_kind_spec(n, words.next().unwrap_or(""))?;
                generators.push(GeneratorSpec::new(name, d, kind));
            }
            "rel" => {
                let body = line[3..].trim();
                let Some((lhs, rhs)) = body.split_once('=') else {
                    return err(n, "rel: expected '<monomial> = <element-expr>'");
                };
                raw_relations.push((n, lhs.trim().to_string(), rhs.trim().to_string()));
            }
            other => return err(n, format!("unexpected line '{other} ...' in a presentation")),
        }
    }
    let ring = ring.ok_or(ParseError { line: 1, message: "missing 'ring' line".into() })?;
    let cap = cap.ok_or(ParseError { line: 1, message: "missing 'cap' line".into() })?;
    let width = generators.len();
    let index_of = {
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        move |s: &str| names.iter().position(|x| x == s)
    };
    let mut relations = Vec::new();
    for (n, lhs, rhs) in raw_relations {
        let (m, c) = parse_monomial_term(n, &lhs, &index_of, width)?;
        if !c.is_one() {
            return err(n, "rel: left side must be a bare monomial");
        }
        let rhs = parse_element_expr(n, &rhs, &index_of, width)?;
        relations.push(Relation { lhs: m, rhs });
    }
    Ok(PresentationDoc { ring, cap, generators, relations })
}

fn expect_word(
    n: usize,
    words: &mut std::str::SplitWhitespace<'_>,
    expected: &str,
) -> Result<(), ParseError> {
    match words.next() {
        Some(w) if w == expected => Ok(()),
        other => err(n, format!("expected '{expected}', found '{}'", other.unwrap_or(""))),
    }
}

fn parse_dga(lines: &[(usize, String)]) -> Result<DgaDoc, ParseError> {
    let mut ring = None;
    let mut out = Vec::new();
    let mut seen_unit = false;
    for (n, line) in lines {
        let n = *n;
        if let Some(rest) = line.strip_prefix("ring ") {
            if ring.is_some() {
                return err(n, "duplicate 'ring' line");
            }
            ring = Some(parse_ring(n, rest.trim())?);
        } else if let Some(rest) = line.strip_prefix("basis deg ") {
            let Some((d, names)) = rest.split_once(':') else {
                return err(n, "basis: expected 'basis deg <d>: <names>'");
            };
            let degree: i64 = parse_int(n, d.trim(), "degree")?;
            let names: Vec<String> =
                names.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return err(n, "basis: no names given");
            }
            out.push(DgaLine::Basis { degree, names });
        } else if let Some(rest) = line.strip_prefix("d ") {
            let Some((name, image)) = rest.split_once('=') else {
                return err(n, "d: expected 'd <name> = <expr>'");
            };
            out.push(DgaLine::Differential {
                name: name.trim().to_string(),
                image: parse_named_expr(n, image)?,
            });
        } else if let Some(rest) = line.strip_prefix("mul ") {
            let Some((lhs, value)) = rest.split_once('=') else {
                return err(n, "mul: expected 'mul <a>*<b> = <expr>'");
            };
            let Some((a, b)) = lhs.trim().split_once('*') else {
                return err(n, "mul: left side must be '<a>*<b>'");
            };
            out.push(DgaLine::Product {
                left: a.trim().to_string(),
                right: b.trim().to_string(),
                value: parse_named_expr(n, value)?,
            });
        } else if let Some(rest) = line.strip_prefix("unit ") {
            if seen_unit {
                return err(n, "duplicate 'unit' line");
            }
            seen_unit = true;
            out.push(DgaLine::Unit { name: rest.trim().to_string() });
        } else {
            return err(n, format!("unexpected line '{line}' in a dga document"));
        }
    }
    let ring = ring.ok_or(ParseError { line: 1, message: "missing 'ring' line".into() })?;
    if !seen_unit {
        return err(1, "missing 'unit' line");
    }
    Ok(DgaDoc { builder_lines: out, ring })
}

fn parse_ring_table(lines: &[(usize, String)]) -> Result<RingTableDoc, ParseError> {
    let mut ring = None;
    let mut cap = None;
    let mut names: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut orders: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    let mut products = Vec::new();
    let mut unit = None;
    let mut complete = true;
    for (n, line) in lines {
        let n = *n;
        if let Some(rest) = line.strip_prefix("ring ") {
            if ring.is_some() {
                return err(n, "duplicate 'ring' line");
            }
            ring = Some(parse_ring(n, rest.trim())?);
        } else if let Some(rest) = line.strip_prefix("cap ") {
            if cap.is_some() {
                return err(n, "duplicate 'cap' line");
            }
            cap = Some(parse_int(n, rest.trim(), "cap")?);
        } else if let Some(rest) = line.strip_prefix("basis deg ") {
            let Some((d, ns)) = rest.split_once(':') else {
                return err(n, "basis: expected 'basis deg <d>: <names>'");
            };
            let degree: i64 = parse_int(n, d.trim(), "degree")?;
            if names.contains_key(&degree) {
                return err(n, format!("duplicate basis declaration for degree {degree}"));
            }
            names.insert(degree, ns.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = line.strip_prefix("orders deg ") {
            let Some((d, os)) = rest.split_once(':') else {
                return err(n, "orders: expected 'orders deg <d>: <o1> <o2> ...'");
            };
            let degree: i64 = parse_int(n, d.trim(), "degree")?;
            let os: Result<Vec<BigInt>, _> =
                os.split_whitespace().map(|o| parse_int(n, o, "order")).collect();
            orders.insert(degree, os?);
        } else if let Some(rest) = line.strip_prefix("mul ") {
            let Some((lhs, value)) = rest.split_once('=') else {
                return err(n, "mul: expected 'mul <a>*<b> = <expr>'");
            };
            let Some((a, b)) = lhs.trim().split_once('*') else {
                return err(n, "mul: left side must be '<a>*<b>'");
            };
            products.push((
                a.trim().to_string(),
                b.trim().to_string(),
                parse_named_expr(n, value)?,
            ));
        } else if let Some(rest) = line.strip_prefix("unit ") {
            if unit.is_some() {
                return err(n, "duplicate 'unit' line");
            }
            unit = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("complete ") {
            complete = match rest.trim() {
                "true" => true,
                "false" => false,
                other => return err(n, format!("bad 'complete' value '{other}'")),
            };
        } else {
            return err(n, format!("unexpected line '{line}' in a ring-table document"));
        }
    }
    let ring = ring.ok_or(ParseError { line: 1, message: "missing 'ring' line".into() })?;
    let cap = cap.ok_or(ParseError { line: 1, message: "missing 'cap' line".into() })?;
    let unit = unit.ok_or(ParseError { line: 1, message: "missing 'unit' line".into() })?;
    for (&d, ns) in &names {
        let o = orders.entry(d).or_insert_with(|| vec![BigInt::zero(); ns.len()]);
        if o.len() != ns.len() {
            return err(1, format!("orders for degree {d} do not match its basis size"));
        }
    }
    Ok(RingTableDoc { ring, cap, names, orders, products, unit, complete })
}

fn parse_group_value(n: usize, s: &str) -> Result<FgAbelianGroup, ParseError> {
    // `0`, `Z^r`, `Z`, `Z/k`, summed with '+'
    let mut free_rank = 0usize;
    let mut torsion: Vec<BigUint> = Vec::new();
    if s.trim() == "0" {
        return Ok(FgAbelianGroup::zero());
    }
    for part in s.split('+') {
        let part = part.trim();
        if part == "Z" {
            free_rank += 1;
        } else if let Some(r) = part.strip_prefix("Z^") {
            free_rank += parse_int::<usize>(n, r, "free rank")?;
        } else if let Some(k) = part.strip_prefix("Z/") {
            torsion.push(parse_int::<BigUint>(n, k, "torsion order")?);
        } else {
            return err(n, format!("bad group summand '{part}'"));
        }
    }
    Ok(dgalg::gring::fga::normalize_invariant_factors_with_rank(torsion, free_rank))
}

fn parse_thh_table(lines: &[(usize, String)]) -> Result<ThhTableDoc, ParseError> {
    let mut ring = None;
    let mut cap = None;
    let mut provenance = None;
    let mut modules: BTreeMap<i64, ModuleValue> = BTreeMap::new();
    for (n, line) in lines {
        let n = *n;
        if let Some(rest) = line.strip_prefix("ring ") {
            ring = Some(parse_ring(n, rest.trim())?);
        } else if let Some(rest) = line.strip_prefix("cap ") {
            cap = Some(parse_int(n, rest.trim(), "cap")?);
        } else if let Some(rest) = line.strip_prefix("provenance ") {
            provenance = Some(match rest.trim() {
                "external-literature" => Provenance::ExternalLiterature,
                "user" => Provenance::UserSupplied,
                other => return err(n, format!("bad provenance '{other}'")),
            });
        } else if let Some(rest) = line.strip_prefix("dim ") {
            let Some((d, v)) = rest.split_once('=') else {
                return err(n, "dim: expected 'dim <d> = <n>'");
            };
            let d: i64 = parse_int(n, d.trim(), "degree")?;
            if modules.contains_key(&d) {
                return err(n, format!("duplicate module declaration for degree {d}"));
            }
            modules.insert(d, ModuleValue::FieldDim(parse_int(n, v.trim(), "dimension")?));
        } else if let Some(rest) = line.strip_prefix("group ") {
            let Some((d, v)) = rest.split_once('=') else {
                return err(n, "group: expected 'group <d> = Z^r + Z/k + ...'");
            };
            let d: i64 = parse_int(n, d.trim(), "degree")?;
            if modules.contains_key(&d) {
                return err(n, format!("duplicate module declaration for degree {d}"));
            }
            modules.insert(d, ModuleValue::Group(parse_group_value(n, v.trim())?));
        } else {
            return err(n, format!("unexpected line '{line}' in a thh-table document"));
        }
    }
    let ring = ring.ok_or(ParseError { line: 1, message: "missing 'ring' line".into() })?;
    let cap = cap.ok_or(ParseError { line: 1, message: "missing 'cap' line".into() })?;
    let provenance = provenance.ok_or(ParseError {
        line: 1,
        message: "missing 'provenance' line (external-literature or user)".into(),
    })?;
    Ok(ThhTableDoc { ring, cap, provenance, modules })
}

fn parse_candidate(lines: &[(usize, String)]) -> Result<CandidateDoc, ParseError> {
    let mut elements = Vec::new();
    for (n, line) in lines {
        let n = *n;
        let Some(rest) = line.strip_prefix("elem ") else {
            return err(n, "expected 'elem <name> deg <d> coords <c1> <c2> ...'");
        };
        let mut words = rest.split_whitespace();
        let name = words.next().ok_or(ParseError { line: n, message: "elem: missing name".into() })?;
        expect_word(n, &mut words, "deg")?;
        let d: i64 = parse_int(n, words.next().unwrap_or(""), "degree")?;
        expect_word(n, &mut words, "coords")?;
        let coords: Result<Vec<BigInt>, _> =
            words.map(|c| parse_int(n, c, "coordinate")).collect();
        elements.push((name.to_string(), d, coords?));
    }
    if elements.is_empty() {
        return err(1, "basis-candidate document has no 'elem' lines");
    }
    Ok(CandidateDoc { elements })
}

// conversions into library objects

impl PresentationDoc {
    pub fn expand(&self) -> dgalg::error::Result<Arc<Algebra>> {
        AlgebraPresentation::new(self.ring, self.generators.clone(), SignRule::Koszul)
            .with_relations(self.relations.clone())
            .expand(self.cap)
    }

    pub fn table(&self) -> dgalg::error::Result<GradedRingTable> {
        GradedRingTable::from_algebra(&self.expand()?)
    }
}

impl DgaDoc {
    pub fn build(&self) -> dgalg::error::Result<Dga> {
        let mut b = DgaBuilder::new(self.ring);
        for line in &self.builder_lines {
            match line {
                DgaLine::Basis { degree, names } => {
                    for name in names {
                        b.basis_element(name, *degree);
                    }
                }
                DgaLine::Differential { name, image } => {
                    let image: Vec<(&str, i64)> = image
                        .iter()
                        .map(|(n, c)| Ok((n.as_str(), bigint_to_i64(c)?)))
                        .collect::<dgalg::error::Result<_>>()?;
                    b.differential(name, &image);
                }
                DgaLine::Product { left, right, value } => {
                    let value: Vec<(&str, i64)> = value
                        .iter()
                        .map(|(n, c)| Ok((n.as_str(), bigint_to_i64(c)?)))
                        .collect::<dgalg::error::Result<_>>()?;
                    b.product(left, right, &value);
                }
                DgaLine::Unit { name } => {
                    b.unit(name);
                }
            }
        }
        b.build()
    }
}

fn bigint_to_i64(c: &BigInt) -> dgalg::error::Result<i64> {
    use num_traits::ToPrimitive;
    c.to_i64().ok_or_else(|| {
        dgalg::error::Error::NotSupported(format!("coefficient {c} exceeds the machine range"))
    })
}

impl RingTableDoc {
    pub fn table(&self) -> Result<GradedRingTable, String> {
        let mut products = BTreeMap::new();
        let pos = |name: &str| -> Result<(i64, usize), String> {
            for (&d, ns) in &self.names {
                if let Some(i) = ns.iter().position(|x| x == name) {
                    return Ok((d, i));
                }
            }
            Err(format!("unknown basis element '{name}'"))
        };
        for (a, b, value) in &self.products {
            let ia = pos(a)?;
            let ib = pos(b)?;
            let target = ia.0 + ib.0;
            let dim = self.names.get(&target).map_or(0, Vec::len);
            let mut v = vec![BigInt::zero(); dim];
            for (tgt, c) in value {
                let (td, k) = pos(tgt)?;
                if td != target {
                    return Err(format!("product {a}*{b} hits '{tgt}' outside degree {target}"));
                }
                v[k] = c.clone();
            }
            products.insert((ia, ib), v);
        }
        let (ud, ui) = pos(&self.unit)?;
        if ud != 0 {
            return Err(format!("unit '{}' is not in degree 0", self.unit));
        }
        let mut unit = vec![BigInt::zero(); self.names.get(&0).map_or(0, Vec::len)];
        unit[ui] = BigInt::one();
        Ok(GradedRingTable {
            ring: self.ring,
            max_degree: self.cap,
            names: self.names.clone(),
            orders: self.orders.clone(),
            products,
            unit,
            complete: self.complete,
        })
    }
}

impl ThhTableDoc {
    pub fn table(&self) -> dgalg::error::Result<THHTable> {
        THHTable::new(self.ring, self.modules.clone(), self.provenance, self.cap)
    }
}

impl CandidateDoc {
    pub fn candidate(&self) -> Candidate {
        self.elements.clone()
    }
}

/// Render a document back to canonical text; `parse(render(d)) == d`.
pub fn render(doc: &InputDocument) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match doc {
        InputDocument::Presentation(p) => {
            line("kind presentation".into());
            line(format!("ring {}", p.ring));
            line(format!("cap {}", p.cap));
            for g in &p.generators {
                let kind = match g.kind {
                    GeneratorKind::Polynomial => "poly".to_string(),
                    GeneratorKind::Exterior => "ext".to_string(),
                    GeneratorKind::Truncated(h) => format!("trunc:{h}"),
                };
                line(format!("gen {} deg {} kind {kind}", g.name, g.degree));
            }
            let names: Vec<&str> = p.generators.iter().map(|g| g.name.as_str()).collect();
            for r in &p.relations {
                line(format!(
                    "rel {} = {}",
                    monomial_text(&r.lhs, &names),
                    element_text(&r.rhs, &names)
                ));
            }
        }
        InputDocument::Dga(d) => {
            line("kind dga".into());
            line(format!("ring {}", d.ring));
            for l in &d.builder_lines {
                match l {
                    DgaLine::Basis { degree, names } => {
                        line(format!("basis deg {degree}: {}", names.join(" ")));
                    }
                    DgaLine::Differential { name, image } => {
                        line(format!("d {name} = {}", named_text(image)));
                    }
                    DgaLine::Product { left, right, value } => {
                        line(format!("mul {left}*{right} = {}", named_text(value)));
                    }
                    DgaLine::Unit { name } => line(format!("unit {name}")),
                }
            }
        }
        InputDocument::RingTable(t) => {
            line("kind ring-table".into());
            line(format!("ring {}", t.ring));
            line(format!("cap {}", t.cap));
            for (d, ns) in &t.names {
                line(format!("basis deg {d}: {}", ns.join(" ")));
            }
            for (d, os) in &t.orders {
                let os: Vec<String> = os.iter().map(BigInt::to_string).collect();
                line(format!("orders deg {d}: {}", os.join(" ")));
            }
            for (a, b, v) in &t.products {
                line(format!("mul {a}*{b} = {}", named_text(v)));
            }
            line(format!("unit {}", t.unit));
            line(format!("complete {}", t.complete));
        }
        InputDocument::ThhTable(t) => {
            line("kind thh-table".into());
            line(format!("ring {}", t.ring));
            line(format!("cap {}", t.cap));
            line(format!(
                "provenance {}",
                match t.provenance {
                    Provenance::ExternalLiterature => "external-literature",
                    Provenance::UserSupplied => "user",
                }
            ));
            for (d, v) in &t.modules {
                match v {
                    ModuleValue::FieldDim(n) => line(format!("dim {d} = {n}")),
                    ModuleValue::Group(g) => line(format!("group {d} = {}", group_text(g))),
                }
            }
        }
        InputDocument::BasisCandidate(c) => {
            line("kind basis-candidate".into());
            for (name, d, coords) in &c.elements {
                let cs: Vec<String> = coords.iter().map(BigInt::to_string).collect();
                line(format!("elem {name} deg {d} coords {}", cs.join(" ")));
            }
        }
    }
    out
}

fn monomial_text(m: &Monomial, names: &[&str]) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names[i].to_string() } else { format!("{}^{e}", names[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn element_text(terms: &[(Monomial, BigInt)], names: &[&str]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = terms
        .iter()
        .map(|(m, c)| {
            let mt = monomial_text(m, names);
            if c.is_one() {
                mt
            } else {
                format!("{c}*{mt}")
            }
        })
        .collect();
    parts.join(" + ")
}

fn named_text(terms: &[(String, BigInt)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = terms
        .iter()
        .map(|(n, c)| if c.is_one() { n.clone() } else { format!("{c}*{n}") })
        .collect();
    parts.join(" + ")
}

fn group_text(g: &dgalg::gring::FgAbelianGroup) -> String {
    let mut parts = Vec::new();
    if g.free_rank == 1 {
        parts.push("Z".to_string());
    } else if g.free_rank > 1 {
        parts.push(format!("Z^{}", g.free_rank));
    }
    for f in &g.torsion {
        parts.push(format!("Z/{f}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_after_render_is_the_identity_on_shipped_fixtures() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            let text = std::fs::read_to_string(&path).unwrap();
            let doc = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let reparsed = parse(&render(&doc)).unwrap();
            assert_eq!(doc, reparsed, "{}", path.display());
        }
    }

    #[test]
    fn empty_documents_fail_at_line_one() {
        let e = parse("").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse("# only a comment\n").unwrap_err();
        assert_eq!(e.line, 1);
    }
}
