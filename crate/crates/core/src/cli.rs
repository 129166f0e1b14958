//! Command-line front end. [`run`] returns the process exit code:
//! `0` success, `1` verification failure, `2` usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::binf::{
    embedding_phi_lambda_mu, embedding_psi, project_pi_lambda, realize_binfinity, IndexSequence, SeqId, SequenceSpec,
};
use crate::cartan::{BorcherdsCartanDatum, DatumFile, Weight};
use crate::closed_form::{
    component_graph, monster_blambda_member, monster_member, oracle_compare, rank2_blambda_member, rank2_member,
    CharEntry, MonsterParams, MonsterToy, OracleReport, Rank2Params, Target,
};
use crate::crystal::{check_axioms, check_category_profile, to_dot, CrystalContext, CrystalGraph, GraphFile};
use crate::error::{CrystalError, Result};
use crate::report::Report;
use crate::sample::{random_crystal, random_factor};
use crate::tensor::verify_associativity;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gkm-crystals", version, about = "Crystals for quantum generalized Kac-Moody algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a datum file against the Borcherds-Cartan conditions.
    Validate {
        #[arg(long)]
        datum: PathBuf,
    },
    /// Write the graph of B(∞) or B(λ) explored to --depth.
    Gen(GenArgs),
    /// Print the weight multiplicities of B(∞) or B(λ) explored to --depth.
    Char(GenArgs),
    /// Run a verification suite.
    Check(CheckArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Datum JSON file.
    #[arg(long)]
    datum: Option<PathBuf>,
    /// Rank-2 datum [[2,-a],[-b,-c]] given as "a,b,c".
    #[arg(long)]
    rank2: Option<String>,
    /// Monster-shaped datum given by its multiplicities "m1,m2,…".
    #[arg(long)]
    monster: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Binf,
    Hw,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args, Debug, Clone)]
struct GenArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Mode::Binf)]
    mode: Mode,
    /// Highest weight as fundamental-weight coefficients "n1,n2,…".
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// cyclic | monster | monster:m1,m2,… | explicit:PREFIX;CYCLE (index names, comma separated)
    #[arg(long)]
    seq: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum CheckKind {
    Axioms,
    Assoc,
    OracleRank2,
    OracleMonster,
    Projection,
    Embedding,
    Profile,
}

#[derive(Args, Debug, Clone)]
struct CheckArgs {
    #[arg(value_enum)]
    what: CheckKind,
    #[command(flatten)]
    gen: GenArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random crystals or triples for the seeded suites.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Restrict the embedding check to one index, by name.
    #[arg(long)]
    index: Option<String>,
    /// Second highest weight for the tensor embedding check.
    #[arg(long)]
    mu: Option<String>,
}

/// Datum, context and the family-specific parameters, if any.
struct Setup {
    ctx: CrystalContext,
    seq: SeqId,
    rank2: Option<Rank2Params>,
    monster: Option<MonsterToy>,
}

fn usage(msg: impl Into<String>) -> CrystalError {
    CrystalError::Params(msg.into())
}

fn parse_ints<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| usage(format!("{what}: cannot parse {p:?}"))))
        .collect()
}

/// `(level, t)` multiplicities read off names of the form `(i,t)`.
fn monster_params_from_names(d: &BorcherdsCartanDatum) -> Result<MonsterParams> {
    let mut counts: Vec<u32> = Vec::new();
    let mut real = false;
    for name in d.names() {
        let inner = name.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(|| usage(format!("{name} is not a Monster-shaped index name")))?;
        let parts: Vec<i64> = parse_ints(inner, "index name")?;
        match parts[..] {
            [-1, 1] => real = true,
            [i, _] if i >= 1 => {
                let i = i as usize;
                if counts.len() < i {
                    counts.resize(i, 0);
                }
                counts[i - 1] += 1;
            }
            _ => return Err(usage(format!("{name} is not a Monster-shaped index name"))),
        }
    }
    if !real {
        return Err(usage("a Monster-shaped datum needs the index (-1,1)"));
    }
    let p = MonsterParams::new(counts)?;
    if p.datum().matrix() != d.matrix() || p.datum().names() != d.names() {
        return Err(usage("datum entries are not a_{(i,t),(j,s)} = -(i+j) in block order"));
    }
    Ok(p)
}

fn rank2_params_from_datum(d: &BorcherdsCartanDatum) -> Result<Rank2Params> {
    match d.matrix() {
        [r1, r2] if r1.len() == 2 && r1[0] == 2 => Rank2Params::new(-r1[1], -r2[0], -r2[1]),
        _ => Err(usage("the datum is not of the form [[2,-a],[-b,-c]]")),
    }
}

fn sequence_spec(text: &str, d: &BorcherdsCartanDatum) -> Result<SequenceSpec> {
    let names = |s: &str| -> Vec<String> { s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect() };
    if text == "cyclic" {
        Ok(SequenceSpec::Cyclic)
    } else if text == "monster" {
        let p = monster_params_from_names(d)?;
        Ok(SequenceSpec::Monster { level: p.level(), multiplicities: p.multiplicities().to_vec() })
    } else if let Some(m) = text.strip_prefix("monster:") {
        let multiplicities: Vec<u32> = parse_ints(m, "--seq")?;
        Ok(SequenceSpec::Monster { level: multiplicities.len(), multiplicities })
    } else if let Some(rest) = text.strip_prefix("explicit:") {
        let (prefix, cycle) = rest.split_once(';').ok_or_else(|| usage("explicit sequences are written explicit:PREFIX;CYCLE"))?;
        Ok(SequenceSpec::Explicit { prefix: names(prefix), cycle: names(cycle) })
    } else {
        Err(usage(format!("unknown sequence {text:?}")))
    }
}

fn setup(g: &GenArgs) -> Result<Setup> {
    let (datum, file_seq, rank2, monster) = if let Some(path) = &g.source.datum {
        let file = DatumFile::load(path)?;
        let d = BorcherdsCartanDatum::from_file(&file)?;
        (d, file.sequence, None, None)
    } else if let Some(s) = &g.source.rank2 {
        let v: Vec<i64> = parse_ints(s, "--rank2")?;
        let [a, b, c] = v[..] else { return Err(usage("--rank2 takes three integers a,b,c")) };
        let p = Rank2Params::new(a, b, c)?;
        (p.datum(), None, Some(p), None)
    } else if let Some(s) = &g.source.monster {
        let p = MonsterParams::new(parse_ints(s, "--monster")?)?;
        let spec = SequenceSpec::Monster { level: p.level(), multiplicities: p.multiplicities().to_vec() };
        let toy = MonsterToy::new(p);
        (toy.datum.clone(), Some(spec), None, Some(toy))
    } else {
        return Err(usage("one of --datum, --rank2, --monster is required"));
    };
    let spec = match &g.seq {
        Some(text) => sequence_spec(text, &datum)?,
        None => file_seq.unwrap_or(SequenceSpec::Cyclic),
    };
    let sequence = IndexSequence::from_spec(&spec, &datum)?;
    let mut ctx = CrystalContext::new(datum);
    let seq = ctx.add_sequence(sequence)?;
    Ok(Setup { ctx, seq, rank2, monster })
}

fn parse_weight(text: &str, rank: usize) -> Result<Weight> {
    let lam: Vec<i64> = parse_ints(text, "weight")?;
    if lam.len() != rank {
        return Err(usage(format!("weight {text:?} has {} entries, the datum has {rank} indices", lam.len())));
    }
    Ok(Weight::from_lambda(lam))
}

fn target(g: &GenArgs, rank: usize) -> Result<Target> {
    match (g.mode, &g.lambda) {
        (Mode::Binf, _) => Ok(Target::Infinity),
        (Mode::Hw, Some(l)) => Ok(Target::Highest(parse_weight(l, rank)?)),
        (Mode::Hw, None) => Err(usage("--mode hw needs --lambda")),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CrystalError::Io(path.display().to_string(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build(s: &Setup, g: &GenArgs) -> Result<CrystalGraph> {
    component_graph(&s.ctx, s.seq, &target(g, s.ctx.rank())?, g.depth)
}

fn cmd_validate(path: &std::path::Path) -> Result<i32> {
    let file = DatumFile::load(path)?;
    let report = crate::cartan::validate_datum(&file.cartan, &file.symmetrizers)?;
    if !report.is_valid() {
        for v in &report.violations {
            println!("{v}");
        }
        return Ok(EXIT_FAILED);
    }
    if file.indices.len() != file.cartan.len() {
        return Err(CrystalError::Dimension(format!("{} names for a rank-{} matrix", file.indices.len(), file.cartan.len())));
    }
    let d = BorcherdsCartanDatum::from_file(&file)?;
    if let Some(spec) = &file.sequence {
        IndexSequence::from_spec(spec, &d)?;
    }
    let real: Vec<&str> = d.real_indices().map(|i| d.name(i)).collect();
    let imaginary: Vec<&str> = d.imaginary_indices().map(|i| d.name(i)).collect();
    println!("valid: real [{}], imaginary [{}]", real.join(", "), imaginary.join(", "));
    Ok(EXIT_OK)
}

fn cmd_gen(g: &GenArgs) -> Result<i32> {
    let s = setup(g)?;
    let graph = build(&s, g)?;
    let text = match g.format.unwrap_or(Format::Json) {
        Format::Json => GraphFile::from_graph(&graph).to_json(),
        Format::Dot => to_dot(&graph),
        Format::Text => return Err(usage("gen writes json or dot")),
    };
    emit(&g.out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_char(g: &GenArgs) -> Result<i32> {
    let s = setup(g)?;
    let graph = build(&s, g)?;
    let table: Vec<CharEntry> = graph.character().into_iter().map(|(wt, mult)| CharEntry { wt, mult }).collect();
    let text = match g.format.unwrap_or(Format::Text) {
        Format::Json => serde_json::to_string_pretty(&table)? + "\n",
        Format::Text => {
            let mut out = String::new();
            for c in &table {
                writeln!(out, "{}\t{}", c.wt, c.mult).unwrap();
            }
            out
        }
        Format::Dot => return Err(usage("char writes json or text")),
    };
    emit(&g.out, &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Part {
    name: String,
    passed: bool,
    report: Option<Report>,
    oracle: Option<OracleReport>,
}

impl Part {
    fn report(name: impl Into<String>, report: Report) -> Self {
        Part { name: name.into(), passed: report.passed(), report: Some(report), oracle: None }
    }

    fn oracle(name: impl Into<String>, oracle: OracleReport) -> Self {
        Part { name: name.into(), passed: oracle.passed(), report: None, oracle: Some(oracle) }
    }
}

#[derive(Serialize)]
struct CheckOutput {
    check: String,
    seed: u64,
    passed: bool,
    parts: Vec<Part>,
}

fn run_check(c: &CheckArgs) -> Result<Vec<Part>> {
    let s = setup(&c.gen)?;
    let (ctx, rank) = (&s.ctx, s.ctx.rank());
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut parts = Vec::new();
    match c.what {
        CheckKind::Axioms => {
            parts.push(Part::report("graph", check_axioms(&build(&s, &c.gen)?)?));
            for k in 0..c.samples {
                parts.push(Part::report(format!("random {k}"), check_axioms(&random_crystal(ctx, &mut rng)?)?));
            }
        }
        CheckKind::Assoc => {
            for k in 0..c.samples {
                let t: Vec<CrystalGraph> = (0..3).map(|_| random_factor(ctx, &mut rng, 15)).collect::<Result<_>>()?;
                parts.push(Part::report(format!("triple {k}"), verify_associativity(ctx, &t[0], &t[1], &t[2])));
            }
        }
        CheckKind::OracleRank2 => {
            let p = match s.rank2 {
                Some(p) => p,
                None => rank2_params_from_datum(ctx.datum())?,
            };
            let (rctx, rseq) = crate::presets::rank2_context(&p);
            let t = target(&c.gen, 2)?;
            let report = match &t {
                Target::Infinity => oracle_compare(&rctx, rseq, &t, c.gen.depth, &|x| Ok(rank2_member(x, &p)))?,
                Target::Highest(l) => {
                    oracle_compare(&rctx, rseq, &t, c.gen.depth, &|x| Ok(rank2_blambda_member(x, &p, l)))?
                }
            };
            parts.push(Part::oracle("rank-2 oracle", report));
        }
        CheckKind::OracleMonster => {
            let toy = match s.monster {
                Some(t) => t,
                None => MonsterToy::new(monster_params_from_names(ctx.datum())?),
            };
            let (mctx, mseq, _) = crate::presets::monster_context(&toy.params);
            let t = target(&c.gen, mctx.rank())?;
            let report = match &t {
                Target::Infinity => oracle_compare(&mctx, mseq, &t, c.gen.depth, &|x| monster_member(x, &toy))?,
                Target::Highest(l) => {
                    oracle_compare(&mctx, mseq, &t, c.gen.depth, &|x| monster_blambda_member(x, &toy, l))?
                }
            };
            let mut positions = Report::default();
            let upto = crate::closed_form::support_bound(&toy.seq, c.gen.depth);
            positions.checked = (0..).take_while(|&n| toy.params.b(n) <= upto).count();
            for p in toy.params.misplaced_positions(&toy.seq, upto) {
                positions.violations.push(crate::report::Violation::new(p, Some(0), crate::report::Law::MorphismImage, "(-1,1)", toy.datum.name(toy.seq.index_at(p))));
            }
            parts.push(Part::oracle("Monster oracle", report));
            parts.push(Part::report("block positions", positions));
        }
        CheckKind::Projection => {
            let Target::Highest(l) = target(&Cli::hw(&c.gen), rank)? else { unreachable!() };
            let bl = crate::binf::realize_blambda(ctx, s.seq, &l, c.gen.depth)?;
            let bi = realize_binfinity(ctx, s.seq, c.gen.depth)?;
            parts.push(Part::report("projection", project_pi_lambda(&bl, &bi, &l).1));
        }
        CheckKind::Embedding => {
            let bi = realize_binfinity(ctx, s.seq, c.gen.depth)?;
            let indices: Vec<usize> = match &c.index {
                Some(name) => vec![ctx.datum().index_of(name).ok_or_else(|| CrystalError::UnknownIndexName(name.clone()))?],
                None => (0..rank).collect(),
            };
            for i in indices {
                let emb = embedding_psi(ctx, &bi, i)?;
                parts.push(Part::report(format!("embedding {}", ctx.datum().name(i)), emb.report));
            }
            if let Some(mu) = &c.mu {
                let l = c.gen.lambda.as_deref().ok_or_else(|| usage("--mu needs --lambda"))?;
                let (l, m) = (parse_weight(l, rank)?, parse_weight(mu, rank)?);
                let emb = embedding_phi_lambda_mu(ctx, s.seq, &l, &m, c.gen.depth)?;
                parts.push(Part::report("tensor embedding", emb.report));
            }
        }
        CheckKind::Profile => {
            parts.push(Part::report("profile", check_category_profile(&build(&s, &c.gen)?)));
        }
    }
    Ok(parts)
}

impl Cli {
    /// The same arguments in highest-weight mode.
    fn hw(g: &GenArgs) -> GenArgs {
        GenArgs { mode: Mode::Hw, ..g.clone() }
    }
}

fn cmd_check(c: &CheckArgs) -> Result<i32> {
    eprintln!("seed: {}", c.seed);
    let parts = run_check(c)?;
    let passed = parts.iter().all(|p| p.passed);
    let name = c.what.to_possible_value().unwrap().get_name().to_string();
    let text = match c.gen.format.unwrap_or(Format::Text) {
        Format::Json => {
            serde_json::to_string_pretty(&CheckOutput { check: name, seed: c.seed, passed, parts })? + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for p in &parts {
                let tag = if p.passed { "ok" } else { "FAILED" };
                match (&p.report, &p.oracle) {
                    (Some(r), _) => {
                        writeln!(out, "{tag} {}: {r}", p.name).unwrap();
                        for v in r.violations.iter().take(10) {
                            writeln!(out, "  {v}").unwrap();
                        }
                    }
                    (_, Some(o)) => writeln!(
                        out,
                        "{tag} {}: {} weights, {} missing in search, {} missing in predicate",
                        p.name,
                        o.char.len(),
                        o.missing_in_bfs.len(),
                        o.missing_in_predicate.len()
                    )
                    .unwrap(),
                    _ => {}
                }
            }
            writeln!(out, "{name}: {}", if passed { "passed" } else { "failed" }).unwrap();
            out
        }
        Format::Dot => return Err(usage("check writes json or text")),
    };
    emit(&c.gen.out, &text)?;
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

fn exit_code(e: &CrystalError) -> i32 {
    match e {
        CrystalError::Audit(_) | CrystalError::Coverage(_) | CrystalError::MalformedGraph(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Validate { datum } => cmd_validate(datum),
        Command::Gen(g) => cmd_gen(g),
        Command::Char(g) => cmd_char(g),
        Command::Check(c) => cmd_check(c),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let CrystalError::InvalidDatum(r) = &e {
                for v in &r.violations {
                    eprintln!("  {v}");
                }
            }
            exit_code(&e)
        }
    }
}
