//! Batch front end: parse line-oriented input documents, run one operation,
//! print a deterministic report (text or `--json`).
//!
//! Exit codes: 0 success (verdicts such as Unsolvable or Unknown are
//! answers, not failures); 1 parse or input validation error; 2 violated
//! mathematical precondition.

mod doc;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_traits::Zero;

use dgalg::basis::{
    check_monoid_basis, search_monoid_basis, table_candidate, wedge_model, Candidate,
    CheckOutcome, MonoidBasis, SearchBudget, SearchOutcome,
};
use dgalg::dga::{formal_dga, homology, homology_ring, Dga, GradedRingTable};
use dgalg::error::Error;
use dgalg::gring::{Algebra, Element};
use dgalg::hochschild::{hh, hh_dga, hh_over_z, hochschild_complex, Exactness,
                        GradedModuleResult};
use dgalg::obstruct::{
    bockstein_obstruction_in, bockstein_q1_obstruction, extension_status, forced_unit_map,
    square_obstruction_in, square_obstruction_p2, ExtensionVerdict, MonomialRelation, Status,
    Verdict,
};
use dgalg::steenrod::{apply_dl, dual_steenrod, DLWord, Presentation};
use dgalg::thh::{thh_groups, SplitFlag, SplitInput};

use doc::{InputDocument, ParseError};
use report::Report;

#[derive(Parser)]
#[command(name = "dgalg", version, about = "graded algebra batch calculator")]
struct Cli {
    /// emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reprint any input document in canonical form
    Canonicalize { input: PathBuf },
    /// Homology groups of a DGA document
    Homology { input: PathBuf },
    /// Homology of a DGA as a graded ring table
    HomologyRing { input: PathBuf },
    /// Check one candidate basis for closure under multiplication
    CheckBasis {
        input: PathBuf,
        /// basis-candidate document; defaults to the table's own basis
        candidate: Option<PathBuf>,
    },
    /// Search for a multiplicatively closed basis
    SearchBasis {
        input: PathBuf,
        #[arg(long)]
        max_candidates: Option<u64>,
        #[arg(long)]
        entry_bound: Option<i64>,
    },
    /// Wedge-format model of a certified basis
    WedgeModel {
        input: PathBuf,
        candidate: Option<PathBuf>,
    },
    /// Hochschild homology of a graded ring document
    Hh {
        input: PathBuf,
        #[arg(long)]
        cap: i64,
        #[arg(long)]
        length_cap: Option<usize>,
    },
    /// Hochschild homology of a DGA document
    HhDga {
        input: PathBuf,
        #[arg(long)]
        cap: i64,
        #[arg(long)]
        length_cap: Option<usize>,
    },
    /// Splitting arithmetic: coefficient table (x) Hochschild homology
    Thh {
        extension: PathBuf,
        table: PathBuf,
        #[arg(long)]
        cap: i64,
        /// skip the monomial-basis certification of the extension
        #[arg(long)]
        assume_certified: bool,
    },
    /// Generators and shipped operations of a dual algebra context
    SteenrodTable {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "zeta")]
        presentation: String,
        #[arg(long)]
        cap: u32,
    },
    /// Apply a composite power operation to an element
    ApplyDl {
        #[arg(long)]
        p: u64,
        /// e.g. Q2, bQ1, Q3Q1 (rightmost factor applies first)
        #[arg(long)]
        op: String,
        #[arg(long)]
        elt: String,
        #[arg(long, default_value = "zeta")]
        presentation: String,
        #[arg(long)]
        cap: u32,
    },
    /// Exhaustive degree-1 square search at p = 2
    ObstructSquare {
        input: PathBuf,
        #[arg(long)]
        cap: u32,
        /// swap in the full dual algebra on the left (negative control)
        #[arg(long)]
        control: bool,
    },
    /// Bockstein-power-operation search at an odd prime
    ObstructBockstein {
        input: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        cap: u32,
        #[arg(long)]
        control: bool,
    },
    /// Enumerate unit-map assignments surviving vanishing relations
    ForcedMap {
        input: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        cap: u32,
        /// designated generator (repeatable); defaults to relation generators
        #[arg(long = "gen")]
        gens: Vec<String>,
        /// vanishing relation such as x^4 (repeatable)
        #[arg(long = "rel")]
        rels: Vec<String>,
    },
    /// Extension verdicts per ground ring
    ExtensionStatus {
        input: PathBuf,
        /// assert that the DGA is formal
        #[arg(long)]
        formal: bool,
        /// also run the integral obstruction for prime-field DGAs
        #[arg(long)]
        fp_over_z: bool,
        #[arg(long)]
        max_candidates: Option<u64>,
    },
}

enum CliError {
    /// unreadable or unparseable input: exit 1
    Input(String),
    /// violated mathematical precondition: exit 2
    Math(Error),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Cmd::Canonicalize { input } = &cli.cmd {
        return match load(input) {
            Ok(d) => {
                let text = doc::render(&d);
                if cli.json {
                    let mut rep = Report::new();
                    rep.push("document", text);
                    print!("{}", rep.json());
                } else {
                    print!("{text}");
                }
                ExitCode::SUCCESS
            }
            Err(CliError::Input(m)) => {
                eprintln!("{m}");
                ExitCode::from(1)
            }
            Err(CliError::Math(e)) => {
                eprintln!("precondition failed: {e}");
                ExitCode::from(2)
            }
        };
    }
    match run(&cli.cmd) {
        Ok(rep) => {
            print!("{}", if cli.json { rep.json() } else { rep.text() });
            ExitCode::SUCCESS
        }
        Err(CliError::Input(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(CliError::Math(e)) => {
            eprintln!("precondition failed: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> CliResult<InputDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(doc::parse(&text)?)
}

/// A table from either a presentation or a ring-table document.
fn load_table(path: &Path) -> CliResult<GradedRingTable> {
    match load(path)? {
        InputDocument::Presentation(p) => Ok(p.table()?),
        InputDocument::RingTable(t) => t.table().map_err(CliError::Input),
        _ => Err(CliError::Input(format!(
            "{}: expected a presentation or ring-table document",
            path.display()
        ))),
    }
}

fn load_algebra(path: &Path) -> CliResult<Arc<Algebra>> {
    match load(path)? {
        InputDocument::Presentation(p) => Ok(p.expand()?),
        _ => Err(CliError::Input(format!(
            "{}: expected a presentation document",
            path.display()
        ))),
    }
}

fn load_dga(path: &Path) -> CliResult<Dga> {
    match load(path)? {
        InputDocument::Dga(d) => Ok(d.build()?),
        _ => Err(CliError::Input(format!("{}: expected a dga document", path.display()))),
    }
}

fn load_candidate(path: Option<&PathBuf>, t: &GradedRingTable) -> CliResult<Candidate> {
    match path {
        None => Ok(table_candidate(t)),
        Some(p) => match load(p)? {
            InputDocument::BasisCandidate(c) => Ok(c.candidate()),
            _ => Err(CliError::Input(format!(
                "{}: expected a basis-candidate document",
                p.display()
            ))),
        },
    }
}

fn parse_presentation_flag(s: &str) -> CliResult<Presentation> {
    match s {
        "zeta" => Ok(Presentation::Zeta),
        "xi" => Ok(Presentation::Xi),
        other => Err(CliError::Input(format!(
            "unknown presentation '{other}': expected zeta or xi"
        ))),
    }
}

fn parse_op(p: u64, s: &str) -> CliResult<DLWord> {
    let mut factors = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let beta = if let Some(r) = rest.strip_prefix('b') {
            rest = r;
            1u8
        } else {
            0
        };
        let Some(r) = rest.strip_prefix('Q') else {
            return Err(CliError::Input(format!("bad operation '{s}': expected [b]Q<s> factors")));
        };
        let digits: String = r.chars().take_while(|c| c.is_ascii_digit() || *c == '-').collect();
        if digits.is_empty() {
            return Err(CliError::Input(format!("bad operation '{s}': missing exponent")));
        }
        rest = &r[digits.len()..];
        let exp: i64 = digits
            .parse()
            .map_err(|_| CliError::Input(format!("bad exponent '{digits}'")))?;
        factors.push((beta, exp));
    }
    if factors.is_empty() {
        return Err(CliError::Input("empty operation".into()));
    }
    Ok(DLWord::new(p, factors)?)
}

fn named_value(t: &GradedRingTable, degree: i64, coords: &[num_bigint::BigInt]) -> String {
    let names = t.names.get(&degree).cloned().unwrap_or_default();
    let mut parts = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = names.get(i).cloned().unwrap_or_else(|| format!("?{degree}_{i}"));
        if c == &num_bigint::BigInt::from(1) {
            parts.push(name);
        } else {
            parts.push(format!("{c}*{name}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn push_graded_modules(rep: &mut Report, h: &GradedModuleResult) {
    for (d, v) in &h.modules {
        rep.push(&format!("H{d}"), v.to_string());
    }
    rep.push(
        "exactness",
        match h.exactness {
            Exactness::Exact => "exact",
            Exactness::TruncationLimited => "truncation-limited",
        },
    );
    rep.push("degree cap", h.degree_cap);
    rep.push("length cap", h.length_cap as i64);
}

fn push_verdict(rep: &mut Report, v: &Verdict) {
    rep.push(
        "status",
        match v.status {
            Status::Unsolvable => "Unsolvable",
            Status::SolvableWitness => "SolvableWitness",
            Status::Incomplete => "Incomplete",
        },
    );
    rep.push("search space", v.search_space.clone());
    if let Some(w) = &v.witness {
        rep.push("witness", w.clone());
    }
    rep.push_list(
        "certificate",
        v.certificate
            .iter()
            .map(|c| {
                format!(
                    "{} -> {} [{}]",
                    c.candidate,
                    c.value,
                    if c.matches { "match" } else { "no match" }
                )
            })
            .collect(),
    );
}

fn push_monoid_basis(rep: &mut Report, b: &MonoidBasis) {
    rep.push_list(
        "basis",
        b.elements.iter().map(|e| format!("{} (deg {})", e.name, e.degree)).collect(),
    );
    rep.push("unit", b.elements[b.unit_index].name.clone());
    rep.push_list(
        "products",
        b.product
            .iter()
            .map(|(&(i, j), k)| {
                let val = match k {
                    Some(k) => b.elements[*k].name.clone(),
                    None => "0".into(),
                };
                format!("{} * {} = {val}", b.elements[i].name, b.elements[j].name)
            })
            .collect(),
    );
}

fn budget(max_candidates: Option<u64>, entry_bound: Option<i64>) -> SearchBudget {
    let mut b = SearchBudget::default();
    if let Some(m) = max_candidates {
        b.max_candidates = m;
    }
    if let Some(e) = entry_bound {
        b.entry_bound = e;
    }
    b
}

fn run(cmd: &Cmd) -> CliResult<Report> {
    let mut rep = Report::new();
    match cmd {
        // handled in main before reaching here
        Cmd::Canonicalize { .. } => unreachable!(),
        Cmd::Homology { input } => {
            let x = load_dga(input)?;
            let h = homology(&x)?;
            rep.push("ring", x.ring.to_string());
            for (d, v) in &h.modules {
                rep.push(&format!("H{d}"), v.to_string());
            }
        }
        Cmd::HomologyRing { input } => {
            let x = load_dga(input)?;
            let t = homology_ring(&x)?;
            rep.push("ring", t.ring.to_string());
            for (d, ns) in &t.names {
                rep.push(&format!("basis deg {d}"), ns.join(" "));
            }
            let mut lines = Vec::new();
            for (&(a, b), v) in &t.products {
                let an = &t.names[&a.0][a.1];
                let bn = &t.names[&b.0][b.1];
                lines.push(format!("{an} * {bn} = {}", named_value(&t, a.0 + b.0, v)));
            }
            rep.push_list("products", lines);
        }
        Cmd::CheckBasis { input, candidate } => {
            let t = load_table(input)?;
            let cand = load_candidate(candidate.as_ref(), &t)?;
            match check_monoid_basis(&t, &cand)? {
                CheckOutcome::Certified(b) => {
                    rep.push("outcome", "Certified");
                    push_monoid_basis(&mut rep, &b);
                }
                CheckOutcome::Violation(v) => {
                    rep.push("outcome", "Violation");
                    rep.push(
                        "violation",
                        format!("at ({},{})", cand[v.left].0, cand[v.right].0),
                    );
                    rep.push(
                        "product",
                        named_value(&t, v.product.degree, &v.product.coords),
                    );
                }
            }
        }
        Cmd::SearchBasis { input, max_candidates, entry_bound } => {
            let t = load_table(input)?;
            match search_monoid_basis(&t, budget(*max_candidates, *entry_bound))? {
                SearchOutcome::Found(b) => {
                    rep.push("outcome", "Found");
                    push_monoid_basis(&mut rep, &b);
                }
                SearchOutcome::ProvenNone => {
                    rep.push("outcome", "ProvenNone");
                }
                SearchOutcome::BudgetExhausted => {
                    rep.push("outcome", "BudgetExhausted");
                }
            }
        }
        Cmd::WedgeModel { input, candidate } => {
            let t = load_table(input)?;
            let cand = load_candidate(candidate.as_ref(), &t)?;
            match check_monoid_basis(&t, &cand)? {
                CheckOutcome::Certified(b) => {
                    let w = wedge_model(&b)?;
                    rep.push("outcome", "Certified");
                    rep.push_list(
                        "summands",
                        w.summands.iter().map(|(n, d)| format!("{n} in degree {d}")).collect(),
                    );
                }
                CheckOutcome::Violation(v) => {
                    rep.push("outcome", "Violation");
                    rep.push(
                        "violation",
                        format!("at ({},{})", cand[v.left].0, cand[v.right].0),
                    );
                }
            }
        }
        Cmd::Hh { input, cap, length_cap } => {
            let t = load_table(input)?;
            let h = match length_cap {
                None => {
                    if t.ring.is_field() {
                        hh(&t, *cap)?
                    } else {
                        hh_over_z(&t, *cap)?
                    }
                }
                Some(l) => {
                    let x = formal_dga(&t)?;
                    hochschild_complex(&x, *cap, Some(*l))?.homology()?
                }
            };
            rep.push("ring", t.ring.to_string());
            push_graded_modules(&mut rep, &h);
        }
        Cmd::HhDga { input, cap, length_cap } => {
            let x = load_dga(input)?;
            let h = match length_cap {
                None => hh_dga(&x, *cap)?,
                Some(l) => hochschild_complex(&x, *cap, Some(*l))?.homology()?,
            };
            rep.push("ring", x.ring.to_string());
            push_graded_modules(&mut rep, &h);
        }
        Cmd::Thh { extension, table, cap, assume_certified } => {
            let thh_table = match load(table)? {
                InputDocument::ThhTable(t) => t.table()?,
                _ => {
                    return Err(CliError::Input(format!(
                        "{}: expected a thh-table document",
                        table.display()
                    )))
                }
            };
            let ext = load(extension)?;
            let result = match &ext {
                InputDocument::Presentation(p) => {
                    let t = p.table()?;
                    thh_groups(SplitInput::Table(&t), &thh_table, *cap, *assume_certified)?
                }
                InputDocument::RingTable(t) => {
                    let t = t.table().map_err(CliError::Input)?;
                    thh_groups(SplitInput::Table(&t), &thh_table, *cap, *assume_certified)?
                }
                InputDocument::Dga(d) => {
                    let x = d.build()?;
                    thh_groups(SplitInput::Dga(&x), &thh_table, *cap, *assume_certified)?
                }
                _ => {
                    return Err(CliError::Input(format!(
                        "{}: expected a presentation, ring-table, or dga document",
                        extension.display()
                    )))
                }
            };
            rep.push("ring", result.ring.to_string());
            rep.push(
                "flag",
                match result.flag {
                    SplitFlag::SplitDetermined => "split-determined",
                    SplitFlag::ExtensionAmbiguous => "extension-ambiguous",
                },
            );
            for (d, v) in &result.tensor {
                rep.push(&format!("tensor {d}"), v.to_string());
            }
            for (d, v) in &result.tor {
                rep.push(&format!("tor {d}"), v.to_string());
            }
            rep.push("ring structure", result.ring_structure.is_some());
        }
        Cmd::SteenrodTable { p, presentation, cap } => {
            let pres = parse_presentation_flag(presentation)?;
            let ctx = dual_steenrod(*p, pres, *cap)?;
            rep.push("p", *p);
            rep.push("presentation", presentation.clone());
            rep.push("cap", *cap);
            rep.push_list(
                "generators",
                ctx.algebra
                    .generators
                    .iter()
                    .map(|g| format!("{} (deg {})", g.name, g.degree))
                    .collect(),
            );
            let mut actions = ctx.shipped_actions();
            actions.sort_by(|a, b| (&a.0, a.1, a.2).cmp(&(&b.0, b.1, b.2)));
            rep.push_list(
                "shipped operations",
                actions
                    .iter()
                    .map(|(g, b, s, v)| {
                        let prefix = if *b == 1 { "bQ" } else { "Q" };
                        format!("{prefix}^{s} {g} = {v}")
                    })
                    .collect(),
            );
        }
        Cmd::ApplyDl { p, op, elt, presentation, cap } => {
            let pres = parse_presentation_flag(presentation)?;
            let ctx = dual_steenrod(*p, pres, *cap)?;
            let word = parse_op(*p, op)?;
            let e = ctx.element(elt.trim()).map_err(|_| {
                CliError::Input(format!("unknown element '{elt}' in this presentation"))
            })?;
            let result = apply_dl(&word, &e, &ctx)?;
            rep.push("op", op.clone());
            rep.push("element", elt.clone());
            rep.push("result", result.to_string());
        }
        Cmd::ObstructSquare { input, cap, control } => {
            let b = load_algebra(input)?;
            let v = if *control {
                let a = dual_steenrod(2, Presentation::Xi, *cap)?;
                let target = Element::generator(&a.algebra, "xi1")?.pow(2)?;
                square_obstruction_in(&a.algebra, &target, &b, *cap)?
            } else {
                square_obstruction_p2(&b, *cap)?
            };
            push_verdict(&mut rep, &v);
        }
        Cmd::ObstructBockstein { input, p, cap, control } => {
            let b = load_algebra(input)?;
            let v = if *control {
                let ctx = dual_steenrod(*p, Presentation::Zeta, *cap)?;
                let target = Element::generator(&ctx.algebra, "zeta1")?.neg();
                bockstein_obstruction_in(&ctx, &target, &b, *cap)?
            } else {
                bockstein_q1_obstruction(*p, &b, *cap)?
            };
            push_verdict(&mut rep, &v);
        }
        Cmd::ForcedMap { input, p, cap, gens, rels } => {
            let h = load_algebra(input)?;
            let mut relations = Vec::new();
            for r in rels {
                let (g, e) = match r.split_once('^') {
                    Some((g, e)) => (
                        g.trim().to_string(),
                        e.trim().parse::<u32>().map_err(|_| {
                            CliError::Input(format!("bad relation '{r}': expected name^power"))
                        })?,
                    ),
                    None => return Err(CliError::Input(format!(
                        "bad relation '{r}': expected name^power"
                    ))),
                };
                relations.push(MonomialRelation { generator: g, power: e });
            }
            let mut generators: Vec<String> = gens.clone();
            if generators.is_empty() {
                for r in &relations {
                    if !generators.contains(&r.generator) {
                        generators.push(r.generator.clone());
                    }
                }
            }
            if generators.is_empty() {
                return Err(CliError::Input(
                    "no designated generators: pass --gen or --rel".into(),
                ));
            }
            let survivors = forced_unit_map(&h, &generators, &relations, *p, *cap)?;
            rep.push("survivor count", survivors.len() as i64);
            rep.push_list(
                "survivors",
                survivors
                    .iter()
                    .map(|s| format!("{} -> {}", s.generator, s.element))
                    .collect(),
            );
        }
        Cmd::ExtensionStatus { input, formal, fp_over_z, max_candidates } => {
            let x = load_dga(input)?;
            let verdicts = extension_status(&x, *formal, *fp_over_z, budget(*max_candidates, None))?;
            let mut lines = Vec::new();
            for (ring, v) in &verdicts {
                let s = match v {
                    ExtensionVerdict::CertifiedExtension(b) => {
                        format!("CertifiedExtension ({} basis elements)", b.elements.len())
                    }
                    ExtensionVerdict::CertifiedNonExtension(v) => format!(
                        "CertifiedNonExtension ({})",
                        match v.status {
                            Status::Unsolvable => "no candidate solves the lifting equation",
                            _ => "obstruction verdict",
                        }
                    ),
                    ExtensionVerdict::Unknown => "Unknown".into(),
                };
                lines.push(format!("over {ring}: {s}"));
            }
            rep.push_list("verdicts", lines);
        }
    }
    Ok(rep)
}
