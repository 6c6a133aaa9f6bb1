//! The `oddform` command line: verify, ku1, reduce, enumerate, export.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{check_algebra_axioms, AlgebraDescriptor};
use crate::error::{Error, Result};
use crate::families::{build_example, FamilyKind};
use crate::oddform::{
    check_family, check_oddform_axioms, FaultInjection, GammaMode, OddFormIdeal, OddFormRing, RingJson, Sampler,
};
use crate::report::AxiomReport;
use crate::stability::{lambda_sr_at_most, reduce_to_smaller, sr_at_most, RankCheck};
use crate::unitary::{
    elementary_subgroup, enumerate_unitary, gluing_check, ku1, ku1_relative, verify_transvection_relations,
    GroupSet, Ku1Table, RelationOptions, StabilityMaps, UnitaryElem, CLOSURE_BUDGET, ENUM_BUDGET,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "oddform", version, about = "Odd form rings, unitary groups and KU₁-stability over ℤ/m")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the algebra, odd form, family and transvection-relation suites.
    Verify(VerifyArgs),
    /// Tabulate KU₁(n) = U(n)/EU(n) for n = 1..rank with stabilization verdicts.
    Ku1(Ku1Args),
    /// Emit verified reduction certificates U(n) → U(n−1).
    Reduce(ReduceArgs),
    /// Report the order of U(n) or EU(n), optionally dumping the set.
    Enumerate(EnumerateArgs),
    /// Write the ring descriptor or a group set.
    Export(ExportArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RingArgs {
    /// linear, symplectic, even-orth or odd-orth
    #[arg(long, value_parser = parse_family, required_unless_present = "descriptor", conflicts_with = "descriptor")]
    pub family: Option<FamilyKind>,
    /// JSON ring descriptor
    #[arg(long)]
    pub descriptor: Option<PathBuf>,
    #[arg(long = "mod", default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=65536))]
    pub modulus: u32,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=8))]
    pub rank: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RunArgs {
    #[arg(long, default_value_t = ENUM_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_enum: u64,
    #[arg(long, default_value_t = CLOSURE_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_closure: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Oddform,
    Family,
    Relations,
    Gluing,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    ActSign,
    DotplusSign,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Suite::Algebra, Suite::Oddform, Suite::Family, Suite::Relations])]
    pub suite: Vec<Suite>,
    /// check every relation parameter pair regardless of size
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, value_enum)]
    pub inject: Option<Fault>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Ku1Args {
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// relative groups for an ideal, e.g. "principal:2" or "principal:2:min"
    #[arg(long)]
    pub ideal: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// β coordinates as a JSON array, or "identity"
    #[arg(long, conflicts_with_all = ["all", "samples"])]
    pub element: Option<String>,
    /// every element of U(rank)
    #[arg(long, conflicts_with = "samples")]
    pub all: bool,
    /// random words in U(rank−1)-elements and transvections
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub word_length: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Unitary,
    Elementary,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, default_value_t = GroupKind::Unitary)]
    pub group: GroupKind,
    /// view rank; defaults to the ring rank
    #[arg(long)]
    pub n: Option<usize>,
    /// also write the set as JSON lines
    #[arg(long)]
    pub jsonl: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportWhat {
    Descriptor,
    Unitary,
    Elementary,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExportArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, default_value_t = ExportWhat::Descriptor)]
    pub what: ExportWhat,
}

fn parse_family(s: &str) -> std::result::Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
    Capacity,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub result: String,
    pub kind: String,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: String,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: Value,
    pub hypotheses: Vec<Hypothesis>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub results: Vec<Entry>,
    pub witnesses: Vec<Witness>,
}

impl Report {
    pub fn new(command: &str, config: &impl Serialize) -> Self {
        Report {
            meta: Meta {
                tool: env!("CARGO_PKG_NAME").into(),
                version: env!("CARGO_PKG_VERSION").into(),
                command: command.into(),
                config: serde_json::to_value(config).unwrap_or(Value::Null),
                hypotheses: Vec::new(),
            },
            results: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.results.iter().any(|e| e.status == Status::Fail) {
            EXIT_VIOLATION
        } else if self.results.iter().any(|e| e.status == Status::Capacity) {
            EXIT_CAPACITY
        } else {
            EXIT_PASS
        }
    }

    fn push(&mut self, name: impl Into<String>, status: Status, data: Value) {
        self.results.push(Entry { name: name.into(), status, data });
    }

    fn witness(&mut self, result: &str, kind: &str, detail: Value) {
        self.witnesses.push(Witness { result: result.into(), kind: kind.into(), detail });
    }

    fn axiom_report(&mut self, rep: &AxiomReport) {
        let status = if rep.is_clean() { Status::Pass } else { Status::Fail };
        self.push(
            rep.suite.clone(),
            status,
            json!({
                "mode": rep.mode,
                "checked": rep.checked,
                "violations": rep.violations.len() as u64 + rep.suppressed,
                "notes": rep.notes,
            }),
        );
        for v in &rep.violations {
            self.witness(&rep.suite, &v.axiom, Value::String(v.witness.clone()));
        }
    }

    fn hypothesis(&mut self, name: &str, check: &RankCheck) {
        let status = match check.holds {
            Some(true) => "verified",
            Some(false) => "fails",
            None => "not applicable",
        };
        self.meta.hypotheses.push(Hypothesis {
            name: name.into(),
            status: status.into(),
            detail: serde_json::to_value(check).unwrap_or(Value::Null),
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per result; nested values are JSON-encoded in their cell.
    pub fn to_csv(&self) -> Result<String> {
        let mut cols: Vec<String> = Vec::new();
        for e in &self.results {
            if let Value::Object(m) = &e.data {
                for k in m.keys() {
                    if !cols.contains(k) {
                        cols.push(k.clone());
                    }
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["name".to_string(), "status".to_string()];
        header.extend(cols.iter().cloned());
        w.write_record(&header).map_err(io_err)?;
        for e in &self.results {
            let status = serde_json::to_value(e.status).ok().and_then(|v| v.as_str().map(String::from));
            let mut row = vec![e.name.clone(), status.unwrap_or_default()];
            for c in &cols {
                row.push(match e.data.get(c) {
                    None | Some(Value::Null) => String::new(),
                    Some(Value::String(s)) => s.clone(),
                    Some(v) => v.to_string(),
                });
            }
            w.write_record(&row).map_err(io_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::internal(e.to_string()))
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::input(e.to_string())
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::Internal(_) => EXIT_VIOLATION,
        Error::Structural(_) | Error::Precondition(_) | Error::Input(_) => EXIT_INPUT,
    }
}

fn read_descriptor(path: &Path) -> Result<RingJson> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

pub fn load_ring(args: &RingArgs) -> Result<OddFormRing> {
    match (&args.family, &args.descriptor) {
        (Some(kind), None) => build_example(*kind, args.rank as usize, args.modulus),
        (None, Some(path)) => OddFormRing::from_json(&read_descriptor(path)?),
        _ => Err(Error::input("exactly one of --family and --descriptor is required")),
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::input(format!("{}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).map_err(io_err)
        }
    }
}

fn emit(report: &Report, run: &RunArgs) -> Result<i32> {
    let text = match run.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
    };
    write_output(&run.out, &text)?;
    Ok(report.exit_code())
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Report> {
    let mut rep = Report::new("verify", args);
    let ring = match (&args.ring.family, &args.ring.descriptor) {
        (None, Some(path)) => {
            let j = read_descriptor(path)?;
            let alg = AlgebraDescriptor::from_json(&j.algebra)?;
            if args.suite.contains(&Suite::Algebra) {
                rep.axiom_report(&check_algebra_axioms(&alg));
            }
            match OddFormRing::from_json(&j) {
                Ok(r) => r,
                Err(e @ (Error::Input(_) | Error::Precondition(_) | Error::Structural(_))) => {
                    rep.push("construction", Status::Fail, json!({ "error": e.to_string() }));
                    rep.witness("construction", "ring descriptor", Value::String(e.to_string()));
                    return Ok(rep);
                }
                Err(e) => return Err(e),
            }
        }
        _ => {
            let r = load_ring(&args.ring)?;
            if args.suite.contains(&Suite::Algebra) {
                rep.axiom_report(&check_algebra_axioms(r.alg()));
            }
            r
        }
    };
    let ring = match args.inject {
        Some(Fault::ActSign) => ring.with_faults(FaultInjection { act_sign: true, ..Default::default() }),
        Some(Fault::DotplusSign) => ring.with_faults(FaultInjection { dotplus_sign: true, ..Default::default() }),
        None => ring,
    };
    let rest: Vec<Suite> = args.suite.iter().copied().filter(|s| *s != Suite::Algebra).collect();
    match run_suites(&mut rep, &ring, &rest, args.run.seed, args.exhaustive) {
        Ok(()) => {}
        Err(e @ (Error::Precondition(_) | Error::Structural(_))) => {
            rep.push("suites", Status::Fail, json!({ "error": e.to_string() }));
            rep.witness("suites", "ring structure", Value::String(e.to_string()));
        }
        Err(e) => return Err(e),
    }
    Ok(rep)
}

/// Runs `suites` on `ring`, appending to `rep`.
pub fn run_suites(rep: &mut Report, ring: &OddFormRing, suites: &[Suite], seed: u64, exhaustive: bool) -> Result<()> {
    let sampler = Sampler::Auto { limit: 10_000_000, samples: 10_000, seed };
    for suite in suites {
        match suite {
            Suite::Algebra => rep.axiom_report(&check_algebra_axioms(ring.alg())),
            Suite::Oddform => rep.axiom_report(&check_oddform_axioms(ring, sampler)),
            Suite::Family => rep.axiom_report(&check_family(ring)),
            Suite::Relations => {
                let opts = RelationOptions {
                    pair_limit: if exhaustive { u64::MAX } else { RelationOptions::default().pair_limit },
                    seed,
                    ..Default::default()
                };
                match verify_transvection_relations(ring, opts) {
                    Ok(r) => rep.axiom_report(&r),
                    Err(e @ Error::Capacity(_)) => {
                        rep.push("relations", Status::Capacity, json!({ "error": e.to_string() }))
                    }
                    Err(e) => return Err(e),
                }
            }
            Suite::Gluing => {
                if ring.rank() >= 2 {
                    rep.axiom_report(&gluing_check(ring)?);
                } else {
                    rep.push("gluing", Status::Skipped, json!({ "reason": "needs rank ≥ 2" }));
                }
            }
        }
    }
    Ok(())
}

/// The default suites on an already constructed ring.
pub fn verify_ring(ring: &OddFormRing, seed: u64, exhaustive: bool) -> Result<Report> {
    let mut rep = Report::new("verify", &json!({ "ring": ring.name(), "seed": seed, "exhaustive": exhaustive }));
    run_suites(&mut rep, ring, &[Suite::Algebra, Suite::Oddform, Suite::Family, Suite::Relations], seed, exhaustive)?;
    Ok(rep)
}

fn parse_ideal(ring: &OddFormRing, spec: &str) -> Result<OddFormIdeal> {
    let parts: Vec<&str> = spec.split(':').collect();
    let (c, mode) = match parts.as_slice() {
        ["principal", c] => (*c, GammaMode::Max),
        ["principal", c, "max"] => (*c, GammaMode::Max),
        ["principal", c, "min"] => (*c, GammaMode::Min),
        _ => return Err(Error::input(format!("ideal spec `{spec}` is not principal:<c>[:min|max]"))),
    };
    let c: u32 = c.parse().map_err(|_| Error::input(format!("bad ideal generator `{c}`")))?;
    OddFormIdeal::principal(ring, c, mode)
}

fn verdict(observed: Option<bool>, hypothesis: Option<bool>) -> &'static str {
    match (observed, hypothesis) {
        (None, _) => "n/a",
        (Some(true), Some(true)) => "PASS",
        (Some(false), Some(true)) => "FAIL",
        _ => "unverified",
    }
}

fn hyp_label(h: Option<bool>) -> &'static str {
    match h {
        Some(true) => "verified",
        Some(false) => "fails",
        None => "n/a",
    }
}

pub fn cmd_ku1(args: &Ku1Args) -> Result<Report> {
    let mut rep = Report::new("ku1", args);
    let ring = load_ring(&args.ring)?;
    let ideal = args.ideal.as_deref().map(|s| parse_ideal(&ring, s)).transpose()?;
    let (eb, cb) = (args.run.budget_enum, args.run.budget_closure as usize);
    let top = ring.rank();
    let mut lsr = Vec::new();
    let mut sr = Vec::new();
    for k in 1..=top {
        let l = lambda_sr_at_most(&ring, k)?;
        let s = sr_at_most(&ring, k)?;
        rep.hypothesis(&format!("Λsr ≤ {}", k - 1), &l);
        rep.hypothesis(&format!("sr ≤ {}", k - 1), &s);
        lsr.push(l.holds);
        sr.push(s.holds);
    }
    let mut prev: Option<Ku1Table> = None;
    for n in 1..=top {
        let table = match &ideal {
            None => ku1(&ring, n, eb, cb),
            Some(id) => ku1_relative(&ring, id, n, eb, cb),
        };
        let table = match table {
            Ok(t) => t,
            Err(e @ Error::Capacity(_)) => {
                rep.push(format!("KU1({n})"), Status::Capacity, json!({ "n": n, "error": e.to_string() }));
                prev = None;
                continue;
            }
            Err(e) => return Err(e),
        };
        let maps = match &prev {
            Some(p) => Some(StabilityMaps::compute(&ring, p, &table)?),
            None => None,
        };
        // surjectivity at n needs Λsr ≤ n − 1, injectivity sr ≤ n − 2
        let (hs, hi) = if ideal.is_some() {
            (None, None)
        } else {
            (lsr[n - 1], if n >= 2 { sr[n - 2] } else { None })
        };
        let surj = verdict(maps.as_ref().map(|m| m.surjective), hs);
        let inj = verdict(maps.as_ref().map(|m| m.injective), hi);
        let status = if surj == "FAIL" || inj == "FAIL" { Status::Fail } else { Status::Pass };
        let hypotheses = if ideal.is_some() {
            "not checked for relative groups".to_string()
        } else {
            let inj = if n >= 2 { format!("sr≤{}: {}", n - 2, hyp_label(hi)) } else { "sr: n/a".to_string() };
            format!("Λsr≤{}: {}; {inj}", n - 1, hyp_label(hs))
        };
        let name = format!("KU1({n})");
        rep.push(
            name.clone(),
            status,
            json!({
                "family": ring.name(),
                "K": ring.alg().ring().label(),
                "n": n,
                "U": table.u_order,
                "EU": table.eu_order,
                "KU1": table.order(),
                "surjective": surj,
                "surjective_observed": maps.as_ref().map(|m| m.surjective),
                "injective": inj,
                "injective_observed": maps.as_ref().map(|m| m.injective),
                "hypotheses": hypotheses,
            }),
        );
        for row in &table.classes {
            rep.witness(&name, "coset", serde_json::to_value(row).unwrap_or(Value::Null));
        }
        prev = Some(table);
    }
    Ok(rep)
}

fn parse_element(ring: &OddFormRing, s: &str) -> Result<UnitaryElem> {
    if s.trim() == "identity" {
        return Ok(ring.identity());
    }
    let coords: Vec<i64> = serde_json::from_str(s).map_err(|e| Error::input(format!("element: {e}")))?;
    let beta = ring.alg().elem_signed(&coords)?;
    ring.unitary_membership(&beta).ok_or_else(|| Error::input("element is not unitary"))
}

fn random_words(ring: &OddFormRing, n: usize, count: usize, len: usize, seed: u64, args: &RunArgs) -> Result<Vec<UnitaryElem>> {
    let smaller = match enumerate_unitary(ring, n - 1, args.budget_enum) {
        Ok(u) => u,
        Err(Error::Capacity(_)) => elementary_subgroup(ring, n - 1, args.budget_closure as usize)?,
        Err(e) => return Err(e),
    };
    let gens: Vec<UnitaryElem> = ring.elementary_generators(n)?.into_iter().map(|(_, g)| g).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut g = ring.identity();
        for _ in 0..len {
            let h = if gens.is_empty() || rng.gen_bool(0.5) {
                smaller.get(rng.gen_range(0..smaller.len()))
            } else {
                gens[rng.gen_range(0..gens.len())].clone()
            };
            g = ring.compose(&g, &h);
        }
        out.push(g);
    }
    Ok(out)
}

pub fn cmd_reduce(args: &ReduceArgs) -> Result<Report> {
    let mut rep = Report::new("reduce", args);
    let ring = load_ring(&args.ring)?;
    let n = ring.rank();
    if n < 2 {
        return Err(Error::precondition("reduction needs rank n ≥ 2"));
    }
    let hyp = lambda_sr_at_most(&ring, n)?;
    rep.hypothesis(&format!("Λsr ≤ {}", n - 1), &hyp);
    let elems: Vec<UnitaryElem> = if args.all {
        enumerate_unitary(&ring, n, args.run.budget_enum)?.iter().collect()
    } else if let Some(count) = args.samples {
        random_words(&ring, n, count, args.word_length, args.run.seed, &args.run)?
    } else if let Some(s) = &args.element {
        vec![parse_element(&ring, s)?]
    } else {
        return Err(Error::input("one of --element, --all or --samples is required"));
    };
    let outcomes: Vec<Result<crate::stability::ReductionCertificate>> =
        elems.par_iter().map(|g| reduce_to_smaller(&ring, g, n)).collect();
    let annotate = hyp.holds != Some(true);
    for (idx, (g, out)) in elems.iter().zip(outcomes).enumerate() {
        let name = format!("element {idx}");
        match out {
            Ok(cert) => {
                let verified = cert.verify(&ring)?;
                rep.push(
                    name.clone(),
                    if verified { Status::Pass } else { Status::Fail },
                    json!({
                        "beta": ring.alg().label_of(g.beta()),
                        "left_word": cert.left_word.len(),
                        "h_plus": cert.h_plus.len(),
                        "h_minus": cert.h_minus.len(),
                        "verified": verified,
                        "hypothesis": if annotate { "unverified" } else { "verified" },
                    }),
                );
                rep.witness(&name, "certificate", serde_json::to_value(&cert).unwrap_or(Value::Null));
            }
            Err(e @ Error::Internal(_)) => {
                rep.push(name.clone(), Status::Fail, json!({ "beta": ring.alg().label_of(g.beta()), "error": e.to_string() }));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}

fn group_set(ring: &OddFormRing, group: GroupKind, n: usize, run: &RunArgs) -> Result<GroupSet> {
    match group {
        GroupKind::Unitary => enumerate_unitary(ring, n, run.budget_enum),
        GroupKind::Elementary => elementary_subgroup(ring, n, run.budget_closure as usize),
    }
}

pub fn cmd_enumerate(args: &EnumerateArgs) -> Result<Report> {
    let mut rep = Report::new("enumerate", args);
    let ring = load_ring(&args.ring)?;
    let n = args.n.unwrap_or(ring.rank());
    if n > ring.rank() {
        return Err(Error::input(format!("view rank {n} exceeds ring rank {}", ring.rank())));
    }
    match group_set(&ring, args.group, n, &args.run) {
        Ok(set) => {
            rep.push(
                set.label().to_string(),
                Status::Info,
                json!({ "family": ring.name(), "K": ring.alg().ring().label(), "n": n, "order": set.len() }),
            );
            if let Some(p) = &args.jsonl {
                let f = std::fs::File::create(p).map_err(|e| Error::input(format!("{}: {e}", p.display())))?;
                set.write_jsonl(std::io::BufWriter::new(f))?;
            }
        }
        Err(e @ Error::Capacity(_)) => rep.push("group", Status::Capacity, json!({ "n": n, "error": e.to_string() })),
        Err(e) => return Err(e),
    }
    Ok(rep)
}

pub fn cmd_export(args: &ExportArgs) -> Result<String> {
    let ring = load_ring(&args.ring)?;
    match args.what {
        ExportWhat::Descriptor => {
            let mut s = serde_json::to_string_pretty(&ring.to_json()?).map_err(|e| Error::internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        g => {
            let kind = if g == ExportWhat::Unitary { GroupKind::Unitary } else { GroupKind::Elementary };
            let set = group_set(&ring, kind, ring.rank(), &args.run)?;
            let mut buf = Vec::new();
            set.write_jsonl(&mut buf)?;
            String::from_utf8(buf).map_err(|e| Error::internal(e.to_string()))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Verify(a) => emit(&cmd_verify(a)?, &a.run),
        Command::Ku1(a) => emit(&cmd_ku1(a)?, &a.run),
        Command::Reduce(a) => emit(&cmd_reduce(a)?, &a.run),
        Command::Enumerate(a) => emit(&cmd_enumerate(a)?, &a.run),
        Command::Export(a) => {
            write_output(&a.run.out, &cmd_export(a)?)?;
            Ok(EXIT_PASS)
        }
    }
}

/// Parses `argv` and runs; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("oddform: {e}");
            error_code(&e)
        }
    }
}
