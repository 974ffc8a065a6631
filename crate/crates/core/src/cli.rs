//! The `centra` command line.
//!
//! Every subcommand produces an [`Outcome`]: a verdict, the exact checks it
//! made, a JSON payload and a text rendering. Exit codes are 0 when every
//! check passes, 1 when one fails and 2 on usage or input errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::boolean::{
    bounded_centralizer, maltsev_decompose, maltsev_op, verify_table4, RowStatus,
};
use crate::centralizer::{
    count_centralizer_members, count_essential_chain, count_essential_thm, count_essential_v,
    count_total_chain, count_total_v, machida_rosenberg, CentralizerSearch, DEFAULT_MAX_CELLS,
};
use crate::congruence::{
    all_lattices, build_fig2, build_lex_doubling, classify, corpus_check, distributive_lattices,
    CorpusCheck,
};
use crate::error::{Error, Result};
use crate::homs::{
    enumerate_homs, galois_left, galois_right, parse_hom, Flavor, HomMap, Preserves,
};
use crate::ops::{commutes, parse_op, write_op, OpTable};
use crate::order::{
    element_budget, parse_structure, Lattice, OrderedStructure, Semilattice, Structure,
};
use crate::suite::{run_suite, CheckRecord, Status};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "centra",
    version,
    about = "Centralizer clones of finite lattices, semilattices and Boolean functions"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether two operations commute; prints the first failing matrix.
    CheckCommute(CheckCommuteArgs),
    /// List the members of a centralizer of a given arity.
    Centralizer(CentralizerArgs),
    /// Count essentially n-ary members of the centralizer of the join.
    Count(CountArgs),
    /// Check that lower and upper adjoints of join-homomorphisms round-trip.
    Galois(GaloisArgs),
    /// Enumerate homomorphisms between two structures.
    Homs(HomsArgs),
    /// Decide (Ess), (Sub) and (Quo) for a lattice.
    Classify(ClassifyArgs),
    /// Check the (Ess)/(Sub)/(Quo) relationships over a corpus of lattices.
    Corpus(CorpusArgs),
    /// Boolean clones: the centralizer table, bounded centralizers, and
    /// decompositions over Z_k.
    Post(PostArgs),
    /// Run all reproduction criteria.
    PaperSuite(SuiteArgs),
}

#[derive(Args, Debug)]
pub struct CheckCommuteArgs {
    /// Structure file or builtin (chain:K, boolean:N, m3, n5, v, fig2, lex:N, m3pow:N).
    #[arg(long)]
    pub structure: Option<String>,
    /// Operation file, or `join` / `meet` of the structure, or `fig2` for the recomposed map.
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fundamental {
    Join,
    Meet,
}

#[derive(Args, Debug)]
pub struct CentralizerArgs {
    #[arg(long)]
    pub structure: String,
    /// Fundamental operations to centralize.
    #[arg(long, value_delimiter = ',', default_value = "join")]
    pub ops: Vec<Fundamental>,
    #[arg(long)]
    pub arity: usize,
    /// Keep only members that depend on every variable.
    #[arg(long)]
    pub essential_only: bool,
    /// Stop after this many members.
    #[arg(long, default_value_t = 100_000)]
    pub max: usize,
    /// Write each member as an operation file into this directory.
    #[arg(long)]
    pub out_dir: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    /// Sum over filters of the lattice.
    Thm28,
    /// Closed form on chains.
    Chain,
    /// Closed form on the V-shaped semilattice.
    Vprop,
    /// The Machida-Rosenberg double sum, evaluated term by term.
    Mr,
    /// Backtracking search.
    Brute,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long)]
    pub structure: Option<String>,
    #[arg(long, value_enum)]
    pub method: CountMethod,
    #[arg(long)]
    pub arity: usize,
}

#[derive(Args, Debug)]
pub struct GaloisArgs {
    /// Source join-semilattice.
    #[arg(long)]
    pub source: String,
    /// Target join-semilattice.
    #[arg(long)]
    pub target: String,
    /// A single map to check; every join-homomorphism otherwise.
    #[arg(long)]
    pub hom: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Join,
    Meet,
    Lattice,
    Monotone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PreservesArg {
    None,
    Bottom,
    Top,
    Both,
}

#[derive(Args, Debug)]
pub struct HomsArgs {
    #[arg(long)]
    pub source: String,
    #[arg(long)]
    pub target: String,
    #[arg(long, value_enum, default_value = "join")]
    pub flavor: FlavorArg,
    #[arg(long, value_enum, default_value = "none")]
    pub preserves: PreservesArg,
    /// Print only the number of maps.
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub lattice: String,
    #[arg(long)]
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CorpusKind {
    /// Down-set lattices of posets on at most `--max-points` points.
    Distributive,
    /// All lattices with at most `--max-size` elements.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CorpusCheckArg {
    /// (Ess), (Sub), (Quo) all agree.
    Thm34,
    /// (Ess) ⇒ (Sub), (Sub) ∧ (Quo) ⇒ (Ess), and (Quo) ⇒ (Sub) for n ≤ 3.
    Implications,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    #[arg(long, value_enum)]
    pub kind: CorpusKind,
    #[arg(long, default_value_t = 6)]
    pub max_size: usize,
    #[arg(long, default_value_t = 4)]
    pub max_points: usize,
    #[arg(long, value_enum, default_value = "thm34")]
    pub check: CorpusCheckArg,
    #[arg(long, default_value_t = 3)]
    pub max_arity: usize,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "mode")]
pub struct PostMode {
    /// Verify the centralizer table.
    #[arg(long)]
    pub verify: bool,
    /// List the bounded centralizer of a named clone.
    #[arg(long)]
    pub centralizer: Option<String>,
    /// Decompose `--op` over Z_k as a sum of unary maps.
    #[arg(long)]
    pub maltsev: bool,
}

#[derive(Args, Debug)]
pub struct PostArgs {
    #[command(flatten)]
    pub mode: PostMode,
    #[arg(long, default_value_t = 3)]
    pub max_arity: usize,
    #[arg(long)]
    pub base: Option<usize>,
    #[arg(long)]
    pub op: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<usize>,
}

/// What a subcommand reports.
pub struct Outcome {
    pub records: Vec<CheckRecord>,
    pub data: Value,
    pub text: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }
}

#[derive(Serialize)]
struct Report<'a> {
    schema: u32,
    command: &'a [String],
    passed: bool,
    records: &'a [CheckRecord],
    data: &'a Value,
}

/// Parses `argv`, runs the command and prints the report. Returns the exit code.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return 2;
        }
    }
    match dispatch(&cli.command) {
        Ok(outcome) => {
            let mut out = String::new();
            if cli.json {
                let report = Report {
                    schema: SCHEMA,
                    command: &argv[1..],
                    passed: outcome.passed(),
                    records: &outcome.records,
                    data: &outcome.data,
                };
                out = serde_json::to_string_pretty(&report).expect("report serializes");
                out.push('\n');
            } else {
                out.push_str(&outcome.text);
                for r in outcome.records.iter().filter(|r| r.status == Status::Fail) {
                    let _ = writeln!(
                        out,
                        "FAIL {}: {} (computed {}, expected {})",
                        r.id, r.claim, r.computed, r.expected
                    );
                }
            }
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            i32::from(!outcome.passed())
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::CheckCommute(a) => check_commute(a),
        Command::Centralizer(a) => centralizer(a),
        Command::Count(a) => count(a),
        Command::Galois(a) => galois(a),
        Command::Homs(a) => homs(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Corpus(a) => corpus(a),
        Command::Post(a) => post(a),
        Command::PaperSuite(a) => paper_suite(a),
    }
}

/// Reads a structure file, or builds one of the named structures.
pub fn load_structure(spec: &str) -> Result<Structure> {
    if Path::new(spec).is_file() {
        return Ok(parse_structure(&std::fs::read_to_string(spec)?)?.structure);
    }
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => {
            let p = p
                .parse()
                .map_err(|_| Error::Io(format!("bad parameter in {spec:?}")))?;
            (n, Some(p))
        }
        None => (spec, None),
    };
    let budget = element_budget();
    let check_size = |size: u128| {
        if size > budget as u128 {
            Err(Error::SizeOverflow { size, budget })
        } else {
            Ok(())
        }
    };
    Ok(match (name, param) {
        ("chain", Some(k)) => Structure::Lattice(Lattice::chain(k)),
        ("boolean", Some(n)) => {
            check_size(1u128.checked_shl(n as u32).unwrap_or(u128::MAX))?;
            Structure::Lattice(Lattice::boolean(n))
        }
        ("m3", None) => Structure::Lattice(Lattice::m3()),
        ("n5", None) => Structure::Lattice(Lattice::n5()),
        ("v", None) => Structure::Semilattice(Semilattice::v_shape()),
        ("fig2", None) => Structure::Lattice(build_fig2().lattice),
        ("lex", Some(n)) => {
            check_size(2u128.checked_shl(n as u32).unwrap_or(u128::MAX))?;
            Structure::Lattice(build_lex_doubling(n)?)
        }
        ("m3pow", Some(n)) => Structure::Lattice(Lattice::m3().power(n, budget)?),
        _ => {
            return Err(Error::Io(format!(
                "{spec:?} is neither a file nor a known structure"
            )))
        }
    })
}

fn load_lattice(spec: &str) -> Result<Lattice> {
    match load_structure(spec)? {
        Structure::Lattice(l) => Ok(l),
        _ => Err(Error::FlavorMismatch(format!("{spec} is not a lattice"))),
    }
}

fn load_semilattice(spec: &str) -> Result<Semilattice> {
    load_structure(spec)?
        .as_semilattice()
        .ok_or_else(|| Error::FlavorMismatch(format!("{spec} is not a join-semilattice")))
}

fn as_dyn(s: &Structure) -> &dyn OrderedStructure {
    match s {
        Structure::Poset(p) => p,
        Structure::Semilattice(s) => s,
        Structure::Lattice(l) => l,
    }
}

fn load_op(spec: &str, structure: Option<&Structure>) -> Result<OpTable> {
    let need = || structure.ok_or_else(|| Error::Io(format!("`{spec}` needs --structure")));
    match spec {
        "join" => {
            let s = need()?
                .as_semilattice()
                .ok_or_else(|| Error::FlavorMismatch("no join".into()))?;
            OpTable::binary(s.size(), s.join_table())
        }
        "meet" => {
            let l = need()?
                .as_lattice()
                .ok_or_else(|| Error::FlavorMismatch("no meet".into()))?;
            OpTable::binary(l.size(), l.meet_table())
        }
        "fig2" => Ok(build_fig2().f),
        path => parse_op(&std::fs::read_to_string(path)?),
    }
}

fn labeler(structure: Option<&Structure>) -> impl Fn(usize) -> String + '_ {
    move |x| structure.map_or_else(|| x.to_string(), |s| s.order().label(x))
}

fn check_commute(a: &CheckCommuteArgs) -> Result<Outcome> {
    let structure = a.structure.as_deref().map(load_structure).transpose()?;
    let f = load_op(&a.f, structure.as_ref())?;
    let g = load_op(&a.g, structure.as_ref())?;
    let witness = commutes(&f, &g)?;
    let label = labeler(structure.as_ref());
    let (text, data) = match &witness {
        None => ("commute\n".to_string(), json!({ "commute": true })),
        Some(w) => {
            let rows: Vec<String> = w
                .matrix
                .iter()
                .map(|r| {
                    format!(
                        "({})",
                        r.iter().map(|&x| label(x)).collect::<Vec<_>>().join(",")
                    )
                })
                .collect();
            let matrix = format!("({})", rows.join(","));
            (
                format!(
                    "fail\nwitness {matrix}\ncolumns first {}\nrows first {}\n",
                    label(w.columns_first),
                    label(w.rows_first)
                ),
                json!({
                    "commute": false,
                    "witness": {
                        "matrix": w.matrix,
                        "labels": matrix,
                        "columns_first": w.columns_first,
                        "rows_first": w.rows_first,
                    }
                }),
            )
        }
    };
    Ok(Outcome {
        records: vec![CheckRecord::new(
            "commute",
            "f and g commute",
            witness.is_none(),
            true,
        )],
        data,
        text,
    })
}

fn generators(structure: &Structure, ops: &[Fundamental]) -> Result<Vec<OpTable>> {
    let mut ops = ops.to_vec();
    ops.sort_by_key(|o| *o as u8);
    ops.dedup();
    ops.iter()
        .map(|o| {
            load_op(
                if *o == Fundamental::Join {
                    "join"
                } else {
                    "meet"
                },
                Some(structure),
            )
        })
        .collect()
}

fn centralizer(a: &CentralizerArgs) -> Result<Outcome> {
    let structure = load_structure(&a.structure)?;
    let gens = generators(&structure, &a.ops)?;
    let size = structure.order().size();
    let search = CentralizerSearch::new(size, &gens, a.arity, DEFAULT_MAX_CELLS)?;
    let mut members = Vec::new();
    let mut truncated = false;
    search.for_each(|values| {
        let f = OpTable::new(a.arity, size, values.to_vec()).expect("search yields valid tables");
        if !a.essential_only || f.essential_arity() == a.arity {
            if members.len() == a.max {
                truncated = true;
                return false;
            }
            members.push(f);
        }
        true
    });
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir)?;
        for (i, f) in members.iter().enumerate() {
            std::fs::write(dir.join(format!("member{i:06}.op")), write_op(f))?;
        }
    }
    let mut text = format!(
        "members {}{}\n",
        members.len(),
        if truncated { " (truncated)" } else { "" }
    );
    for f in &members {
        let values: Vec<String> = f.values().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(text, "{}", values.join(" "));
    }
    Ok(Outcome {
        records: vec![],
        data: json!({
            "arity": a.arity,
            "essential_only": a.essential_only,
            "count": members.len(),
            "truncated": truncated,
            "members": members.iter().map(|f| f.values()).collect::<Vec<_>>(),
        }),
        text,
    })
}

fn count(a: &CountArgs) -> Result<Outcome> {
    let structure = a.structure.as_deref().map(load_structure).transpose()?;
    let n = a.arity;
    let need = || {
        structure
            .as_ref()
            .ok_or_else(|| Error::Io("this method needs --structure".into()))
    };
    let (essential, total, summands) = match a.method {
        CountMethod::Thm28 => {
            let l = need()?
                .as_lattice()
                .ok_or_else(|| Error::FlavorMismatch("the filter sum needs a lattice".into()))?;
            let r = count_essential_thm(l, n)?;
            let summands: Vec<Value> = r
                .summands
                .iter()
                .map(|s| json!({ "element": l.label(s.element), "join_homs": s.join_homs, "meet_homs": s.meet_homs, "term": s.term.to_string() }))
                .collect();
            (r.total, None, Some(summands))
        }
        CountMethod::Chain => {
            let s = need()?;
            if !s.order().is_chain() {
                return Err(Error::FlavorMismatch("structure is not a chain".into()));
            }
            let l = s.order().size();
            (
                count_essential_chain(l, n),
                Some(count_total_chain(l, n)),
                None,
            )
        }
        CountMethod::Vprop => {
            if let Some(s) = &structure {
                let v = s.as_semilattice();
                if v.as_ref()
                    .is_none_or(|v| v.size() != 3 || v.least().is_some())
                {
                    return Err(Error::FlavorMismatch(
                        "structure is not the V-shaped semilattice".into(),
                    ));
                }
            }
            (count_essential_v(n), Some(count_total_v(n)), None)
        }
        CountMethod::Mr => (machida_rosenberg(n), None, None),
        CountMethod::Brute => {
            let s = need()?;
            let gens = generators(s, &[Fundamental::Join])?;
            let c = count_centralizer_members(s.order().size(), &gens, n)?;
            (c.essential.into(), Some(c.total.into()), None)
        }
    };
    let mut text = format!("{essential}\n");
    if let Some(t) = &total {
        let _ = writeln!(text, "total {t}");
    }
    Ok(Outcome {
        records: vec![],
        data: json!({
            "arity": n,
            "count": essential.to_string(),
            "total": total.map(|t| t.to_string()),
            "summands": summands,
        }),
        text,
    })
}

fn galois(a: &GaloisArgs) -> Result<Outcome> {
    let src = load_semilattice(&a.source)?;
    let dst = load_semilattice(&a.target)?;
    let maps = match &a.hom {
        Some(path) => {
            let (_, _, map) = parse_hom(&std::fs::read_to_string(path)?)?;
            vec![HomMap::new(map, &src, &dst, Flavor::Join, Preserves::NONE)?]
        }
        None => enumerate_homs(&src, &dst, Flavor::Join, Preserves::NONE)?,
    };
    let mut rows = Vec::new();
    let mut roundtrips = 0;
    // adjoints act between the structures with a fresh bottom adjoined, which is element 0
    let mut text = String::from("map -> adjoint (bottom-extended, 0 is the new bottom)\n");
    for f in &maps {
        let g = galois_left(f, &src, &dst)?;
        let back = galois_right(&g, &src, &dst)?;
        if back == *f {
            roundtrips += 1;
        }
        let _ = writeln!(
            text,
            "{:?} -> {:?}{}",
            f.map,
            g.map,
            if back == *f { "" } else { " (no roundtrip)" }
        );
        rows.push(json!({ "map": f.map, "adjoint": g.map, "roundtrip": back == *f }));
    }
    let _ = writeln!(text, "maps {} roundtrips {}", maps.len(), roundtrips);
    Ok(Outcome {
        records: vec![CheckRecord::new(
            "roundtrip",
            "every map is recovered from its adjoint",
            roundtrips,
            maps.len(),
        )],
        data: json!({ "maps": rows }),
        text,
    })
}

fn homs(a: &HomsArgs) -> Result<Outcome> {
    let src = load_structure(&a.source)?;
    let dst = load_structure(&a.target)?;
    let flavor = match a.flavor {
        FlavorArg::Join => Flavor::Join,
        FlavorArg::Meet => Flavor::Meet,
        FlavorArg::Lattice => Flavor::Lattice,
        FlavorArg::Monotone => Flavor::Monotone,
    };
    let preserves = match a.preserves {
        PreservesArg::None => Preserves::NONE,
        PreservesArg::Bottom => Preserves::BOTTOM,
        PreservesArg::Top => Preserves::TOP,
        PreservesArg::Both => Preserves::BOTH,
    };
    let maps = enumerate_homs(as_dyn(&src), as_dyn(&dst), flavor, preserves)?;
    let mut text = format!("homs {}\n", maps.len());
    if !a.count_only {
        for h in &maps {
            let values: Vec<String> = h.map.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(text, "{}", values.join(" "));
        }
    }
    let listed: Vec<&[usize]> = if a.count_only {
        vec![]
    } else {
        maps.iter().map(|h| h.map.as_slice()).collect()
    };
    Ok(Outcome {
        records: vec![],
        data: json!({ "count": maps.len(), "maps": listed }),
        text,
    })
}

fn classify_cmd(a: &ClassifyArgs) -> Result<Outcome> {
    let l = load_lattice(&a.lattice)?;
    let c = classify(&l, a.n)?;
    let text = format!(
        "size {} n {} distributive {}\ness {:?}\nsub {:?}\nquo {:?}\n",
        c.size, c.n, c.distributive, c.ess, c.sub, c.quo
    );
    Ok(Outcome {
        records: vec![],
        data: serde_json::to_value(&c).expect("classification serializes"),
        text,
    })
}

fn corpus(a: &CorpusArgs) -> Result<Outcome> {
    let lattices = match a.kind {
        CorpusKind::Distributive => distributive_lattices(a.max_points),
        CorpusKind::All => all_lattices(a.max_size),
    };
    let check = match a.check {
        CorpusCheckArg::Thm34 => CorpusCheck::Equivalence,
        CorpusCheckArg::Implications => CorpusCheck::Implications,
    };
    let report = corpus_check(&lattices, a.max_arity, check)?;
    let mut text = format!(
        "lattices {} max arity {}\n",
        report.lattices, report.max_arity
    );
    for e in report.entries.iter().filter(|e| !e.failures.is_empty()) {
        let _ = writeln!(
            text,
            "lattice {} (size {}): {}",
            e.index,
            e.size,
            e.failures.join("; ")
        );
    }
    Ok(Outcome {
        records: vec![CheckRecord::new(
            "corpus",
            "lattices violating the check",
            report.failures().count(),
            0,
        )],
        data: serde_json::to_value(&report).expect("corpus report serializes"),
        text,
    })
}

fn post(a: &PostArgs) -> Result<Outcome> {
    if a.mode.verify {
        let report = verify_table4(a.max_arity)?;
        let mut text = String::new();
        for r in &report.records {
            let _ = writeln!(text, "{:<16} {:?}", r.row, r.status);
        }
        let records = report
            .records
            .iter()
            .filter(|r| r.status != RowStatus::Skipped)
            .map(|r| {
                CheckRecord::new(
                    r.row.clone(),
                    "bounded centralizer matches",
                    format!("{:?}", r.status),
                    "Pass",
                )
            })
            .collect();
        return Ok(Outcome {
            records,
            data: serde_json::to_value(&report).expect("table report serializes"),
            text,
        });
    }
    if let Some(name) = &a.mode.centralizer {
        let c = bounded_centralizer(name, a.max_arity)?;
        let mut text = format!(
            "members {}{}\n",
            c.members.len(),
            if c.over_approximation {
                " (over-approximation)"
            } else {
                ""
            }
        );
        for f in &c.members {
            let values: Vec<String> = f.values().iter().map(|v| v.to_string()).collect();
            let _ = writeln!(text, "{} | {}", f.arity(), values.join(""));
        }
        return Ok(Outcome {
            records: vec![],
            data: json!({
                "clone": name,
                "max_arity": a.max_arity,
                "over_approximation": c.over_approximation,
                "members": c.members,
            }),
            text,
        });
    }
    let path =
        a.op.as_ref()
            .ok_or_else(|| Error::Io("--maltsev needs --op".into()))?;
    let f = parse_op(&std::fs::read_to_string(path)?)?;
    if let Some(k) = a.base {
        if k != f.base() {
            return Err(Error::BaseMismatch(k, f.base()));
        }
    }
    let parts = maltsev_decompose(&f);
    let commutes_with_m = commutes(&f, &maltsev_op(f.base()))?.is_none();
    let text = match &parts {
        Some(p) => p
            .iter()
            .enumerate()
            .map(|(i, u)| format!("u{} {:?}\n", i + 1, u.values()))
            .collect(),
        None => "not a sum of unary maps\n".to_string(),
    };
    Ok(Outcome {
        records: vec![CheckRecord::new(
            "maltsev",
            "decomposes iff commutes with x-y+z",
            parts.is_some(),
            commutes_with_m,
        )],
        data: json!({ "decomposable": parts.is_some(), "parts": parts }),
        text,
    })
}

fn paper_suite(a: &SuiteArgs) -> Result<Outcome> {
    let reports = run_suite(&a.only);
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{}", r.summary_line());
    }
    let records = reports
        .iter()
        .flat_map(|r| r.records.iter().cloned())
        .collect();
    Ok(Outcome {
        records,
        data: json!({ "criteria": reports }),
        text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome> {
        let argv: Vec<String> = std::iter::once("centra")
            .chain(args.iter().copied())
            .map(String::from)
            .collect();
        dispatch(&Cli::try_parse_from(argv).unwrap().command)
    }

    #[test]
    fn chain_count() {
        let o = run(&[
            "count",
            "--structure",
            "chain:3",
            "--method",
            "chain",
            "--arity",
            "2",
        ])
        .unwrap();
        assert_eq!(o.text.lines().next(), Some("29"));
        let brute = run(&[
            "count",
            "--structure",
            "chain:3",
            "--method",
            "brute",
            "--arity",
            "2",
        ])
        .unwrap();
        assert_eq!(brute.text, "29\ntotal 46\n");
    }

    #[test]
    fn fig2_fails_meet() {
        let o = run(&[
            "check-commute",
            "--structure",
            "fig2",
            "--f",
            "fig2",
            "--g",
            "meet",
        ])
        .unwrap();
        assert!(!o.passed());
        assert!(o.text.starts_with("fail\nwitness ((a,c),(c,0))"));
        assert!(run(&[
            "check-commute",
            "--structure",
            "fig2",
            "--f",
            "fig2",
            "--g",
            "join"
        ])
        .unwrap()
        .passed());
    }

    #[test]
    fn homs_and_galois() {
        let o = run(&[
            "homs",
            "--source",
            "m3pow:1",
            "--target",
            "chain:2",
            "--count-only",
        ])
        .unwrap();
        // constants plus one map per nonempty proper ideal
        assert_eq!(o.data["count"], 6);
        let g = run(&["galois", "--source", "v", "--target", "chain:3"]).unwrap();
        assert!(g.passed());
    }

    #[test]
    fn usage_errors() {
        assert!(Cli::try_parse_from(["centra", "frobnicate"]).is_err());
        assert!(Cli::try_parse_from(["centra", "post"]).is_err());
        assert!(load_structure("nonsense").is_err());
    }
}
