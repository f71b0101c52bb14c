//! Command-line front end: parameter tables, group listing, search,
//! classification, constructions and verification.

pub mod report;
pub mod tables;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sedf_core::catalog::{catalog_groups, classify_mixed};
use sedf_core::constructions::{
    composite_pair, construct_cyclotomic, construct_dihedral_sedf, construct_even_k,
    construct_pa_st, construct_paley, construct_trivial, normalize_below, recursive_gsedf,
    recursive_lambda1, RecursionSpec,
};
use sedf_core::params::{enumerate_with_filters, GroupClass};
use sedf_core::search::{search_all_with, search_first_with, SearchOptions};
use sedf_core::{
    is_equivalent, verify_cosedf, verify_edf, verify_gsedf, verify_pds, verify_sedf, BlockFamily,
    Classifier, DifferenceCounter, Error, FamilyRecord, FiniteGroup, GsedfProfile,
};

use report::{
    ClassRecord, GroupRecord, HistogramRow, MemberRecord, Payload, RunReport, VerificationRecord,
    WitnessRecord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "sedf",
    version,
    about = "Strong external difference families: search, construct, classify"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads for search and table cells.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Reserved; every command is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Admissible parameter sets.
    Params {
        #[command(subcommand)]
        cmd: ParamsCmd,
    },
    /// Groups in the built-in catalog.
    Groups {
        #[command(subcommand)]
        cmd: GroupsCmd,
    },
    /// Exhaustive search in one group.
    Search(SearchArgs),
    /// Partition families into equivalence classes.
    Classify(ClassifyArgs),
    /// Build a family from a known construction.
    Construct {
        #[command(subcommand)]
        cmd: ConstructCmd,
    },
    /// Check a family against one of the difference conditions.
    Verify(VerifyArgs),
    /// Reproduce a results table.
    Tables(TablesArgs),
}

#[derive(Subcommand, Debug)]
pub enum ParamsCmd {
    Enumerate {
        #[arg(long, default_value_t = 64)]
        max_order: usize,
        #[arg(long)]
        include_trivial: bool,
        /// Annotate each row with the nonexistence results that apply to
        /// this class of group.
        #[arg(long, value_parser = parse_class)]
        filters: Option<GroupClass>,
    },
}

fn parse_class(s: &str) -> std::result::Result<GroupClass, String> {
    s.parse()
}

#[derive(Subcommand, Debug)]
pub enum GroupsCmd {
    List {
        #[arg(long, default_value_t = 24)]
        max_order: usize,
    },
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long = "m")]
    pub m: usize,
    #[arg(long = "k")]
    pub k: usize,
    #[arg(long)]
    pub lambda: usize,
    /// Return every family (the default).
    #[arg(long, conflicts_with = "first")]
    pub all: bool,
    /// Stop at the first family found.
    #[arg(long)]
    pub first: bool,
    /// Recount all differences at every node.
    #[arg(long)]
    pub naive_check: bool,
    /// Permit groups above the default order limit.
    #[arg(long)]
    pub allow_large: bool,
    #[arg(long, default_value_t = 3)]
    pub split_depth: usize,
    /// Also print the equivalence classes of the result.
    #[arg(long)]
    pub classify: bool,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// JSON array of families, or a report written by `--format json`.
    #[arg(long)]
    pub input: PathBuf,
    /// Keep block order fixed.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// Two-block λ=1 family in Z_{k²+1}
    PaSt {
        #[arg(long = "k")]
        k: usize,
    },
    /// Squares and non-squares of GF(q), q ≡ 1 mod 4
    Paley {
        #[arg(long)]
        q: u64,
    },
    /// Pairs of cyclotomic classes of GF(q) with index e (4 or 6)
    Cyclotomic {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 4)]
        e: u64,
    },
    /// Two-block λ=1 family with k = 2a in Z_{4a²+1}
    EvenK {
        #[arg(long)]
        a: usize,
    },
    /// Two-block λ=1 family in Z_{(ak)²+1} from one in Z_{k²+1}
    Recursive {
        /// Base family, e.g. "Z5: {0,1},{2,4}".
        #[arg(long)]
        base: String,
        #[arg(long)]
        a: usize,
        /// Replace the base by an equivalent one meeting the ordering
        /// requirement before recursing.
        #[arg(long)]
        normalize: bool,
    },
    /// Generalized family in a larger cyclic group from a two-block base
    GsedfRecursive {
        #[arg(long)]
        base: String,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        normalize: bool,
    },
    /// Two inequivalent families from different recursion paths
    CompositePair {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        a: usize,
    },
    /// Two-block λ=1 family in the dihedral group of order k²+1, k odd
    Dihedral {
        #[arg(long = "k")]
        k: usize,
    },
    /// Singleton blocks covering the whole group
    Trivial {
        #[arg(long)]
        group: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Edf,
    Sedf,
    Gsedf,
    Cosedf,
    Pds,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Family text, "<group>: {..},{..}" or just the blocks with --group.
    #[arg(long, conflicts_with = "input")]
    pub family: Option<String>,
    /// File holding a family as text or as a JSON record.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub lambda: Option<usize>,
    /// Per-block multiplicities for gsedf, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Vec<usize>,
    #[arg(long)]
    pub mu: Option<usize>,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long, value_parser = ["1", "4", "5", "6"])]
    pub which: String,
}

/// Captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                },
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(out) => out,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_INVALID,
        },
    }
}

fn emit(cli: &Cli, report: &RunReport, text: String) -> sedf_core::Result<String> {
    match cli.format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(report).map_err(|e| Error::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Table | Format::Text => Ok(text),
    }
}

fn words(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

fn dispatch(cli: &Cli) -> sedf_core::Result<Outcome> {
    match &cli.command {
        Command::Params {
            cmd:
                ParamsCmd::Enumerate {
                    max_order,
                    include_trivial,
                    filters,
                },
        } => {
            let rows = match filters {
                Some(class) => enumerate_with_filters(*max_order, *include_trivial, *class),
                None => sedf_core::enumerate_admissible(*max_order, *include_trivial),
            };
            let mut text = tables::format_params(&rows);
            if filters.is_some() {
                text = String::new();
                for p in &rows {
                    let hits: Vec<&str> = p.filters_hit.iter().map(|h| h.id.as_str()).collect();
                    writeln!(
                        text,
                        "({},{},{},{}) {}",
                        p.n,
                        p.m,
                        p.k,
                        p.lambda,
                        hits.join(" ")
                    )
                    .unwrap();
                }
            }
            let mut report = RunReport::new(
                vec![
                    "params".into(),
                    "enumerate".into(),
                    "--max-order".into(),
                    max_order.to_string(),
                ],
                Payload::Params { rows },
            );
            report.parameters =
                json!({ "max_order": max_order, "include_trivial": include_trivial });
            Ok(Outcome::ok(emit(cli, &report, text)?))
        }
        Command::Groups {
            cmd: GroupsCmd::List { max_order },
        } => {
            let mut groups = Vec::new();
            for n in 1..=*max_order {
                for g in catalog_groups(n)? {
                    groups.push(GroupRecord {
                        name: g.name().to_string(),
                        order: n,
                        abelian: g.is_abelian(),
                    });
                }
            }
            let mut text = String::new();
            for g in &groups {
                let kind = if g.abelian { "abelian" } else { "nonabelian" };
                writeln!(text, "{:>4}  {:<12} {kind}", g.order, g.name).unwrap();
            }
            let report = RunReport::new(
                vec![
                    "groups".into(),
                    "list".into(),
                    "--max-order".into(),
                    max_order.to_string(),
                ],
                Payload::Groups { groups },
            );
            Ok(Outcome::ok(emit(cli, &report, text)?))
        }
        Command::Search(args) => cmd_search(cli, args),
        Command::Classify(args) => cmd_classify(cli, args),
        Command::Construct { cmd } => cmd_construct(cli, cmd),
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Tables(args) => cmd_tables(cli, &args.which),
    }
}

fn cmd_search(cli: &Cli, args: &SearchArgs) -> sedf_core::Result<Outcome> {
    let g = Arc::new(FiniteGroup::from_spec(&args.group)?);
    let opts = SearchOptions {
        naive_check: args.naive_check,
        jobs: cli.jobs.max(1),
        split_depth: args.split_depth,
        allow_large: args.allow_large,
    };
    let start = Instant::now();
    let (families, nodes) = if args.first {
        let f = search_first_with(&g, args.m, args.k, args.lambda, &opts)?;
        (f.into_iter().collect::<Vec<_>>(), None)
    } else {
        let r = search_all_with(&g, args.m, args.k, args.lambda, &opts)?;
        (r.families, Some(r.nodes))
    };
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let tuple = format!("({},{},{},{})", g.order(), args.m, args.k, args.lambda);
    let mut text = String::new();
    writeln!(text, "{} {tuple}: {} families", g.name(), families.len()).unwrap();
    for f in &families {
        writeln!(text, "{f}").unwrap();
    }
    let mut command = words(&["search", "--group", &args.group]);
    command.extend([
        "--m".into(),
        args.m.to_string(),
        "--k".into(),
        args.k.to_string(),
        "--lambda".into(),
        args.lambda.to_string(),
        if args.first { "--first" } else { "--all" }.into(),
    ]);
    let payload = if args.classify {
        let classes = class_records(&families, false)?;
        writeln!(text, "{} classes", classes.len()).unwrap();
        for c in &classes {
            let rep = BlockFamily::from_record(&c.representative)?;
            writeln!(text, "  {} member(s): {rep}", c.size).unwrap();
        }
        Payload::Classes { classes }
    } else {
        Payload::Families {
            families: families.iter().map(BlockFamily::to_record).collect(),
            nodes,
            equivalent: None,
        }
    };
    let mut report = RunReport::new(command, payload);
    report.group = Some(g.name().to_string());
    report.parameters = json!({ "n": g.order(), "m": args.m, "k": args.k, "lambda": args.lambda });
    report.wall_time_ms = Some(elapsed);
    Ok(Outcome::ok(emit(cli, &report, text)?))
}

fn class_records(fams: &[BlockFamily], strict: bool) -> sedf_core::Result<Vec<ClassRecord>> {
    let Some(first) = fams.first() else {
        return Ok(Vec::new());
    };
    let same_group = fams.iter().all(|f| f.group() == first.group());
    let buckets = if same_group {
        let cl = Classifier::new(first.group().clone()).strict(strict);
        vec![(first.group().clone(), cl.classify(fams)?)]
    } else {
        if strict {
            return Err(Error::Parameter(
                "strict mode needs all families in one group".into(),
            ));
        }
        classify_mixed(fams)?
    };
    let mut out = Vec::new();
    for (group, classes) in buckets {
        let cl = Classifier::new(group.clone()).strict(strict);
        for class in classes {
            let mut members = Vec::new();
            for m in &class.members {
                let w = cl.equivalence(m, &class.representative)?.ok_or_else(|| {
                    Error::Internal("class member not equivalent to its representative".into())
                })?;
                members.push(MemberRecord {
                    family: m.to_record(),
                    witness: WitnessRecord::from_witness(&w),
                });
            }
            out.push(ClassRecord {
                group: group.name().to_string(),
                representative: class.representative.to_record(),
                size: class.members.len(),
                members,
            });
        }
    }
    Ok(out)
}

fn read_families(path: &PathBuf) -> sedf_core::Result<Vec<BlockFamily>> {
    let text = std::fs::read_to_string(path)?;
    let bad = |e: serde_json::Error| Error::FamilyFormat(e.to_string());
    let value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
    if value.is_array() {
        let records: Vec<FamilyRecord> = serde_json::from_value(value).map_err(bad)?;
        return records.iter().map(BlockFamily::from_record).collect();
    }
    let report: RunReport = serde_json::from_value(value).map_err(bad)?;
    report.families()
}

fn cmd_classify(cli: &Cli, args: &ClassifyArgs) -> sedf_core::Result<Outcome> {
    let fams = read_families(&args.input)?;
    let classes = class_records(&fams, args.strict)?;
    let mut text = String::new();
    writeln!(text, "{} families, {} classes", fams.len(), classes.len()).unwrap();
    for c in &classes {
        let rep = BlockFamily::from_record(&c.representative)?;
        writeln!(text, "{} member(s): {rep}", c.size).unwrap();
        for m in &c.members {
            let f = BlockFamily::from_record(&m.family)?;
            writeln!(
                text,
                "  {f}  via h={} g={} permutation={:?}",
                m.witness.h, m.witness.g, m.witness.permutation
            )
            .unwrap();
        }
    }
    let mut command = words(&["classify", "--input", &args.input.display().to_string()]);
    if args.strict {
        command.push("--strict".into());
    }
    let report = RunReport::new(command, Payload::Classes { classes });
    Ok(Outcome::ok(emit(cli, &report, text)?))
}

fn base_family(text: &str, normalize: bool) -> sedf_core::Result<BlockFamily> {
    let base = BlockFamily::parse_text(text)?;
    if !normalize {
        return Ok(base);
    }
    normalize_below(&base).ok_or_else(|| {
        Error::Precondition("no equivalent form has its first block below its second".into())
    })
}

fn cmd_construct(cli: &Cli, cmd: &ConstructCmd) -> sedf_core::Result<Outcome> {
    let mut equivalent = None;
    let (command, families): (Vec<String>, Vec<BlockFamily>) = match cmd {
        ConstructCmd::PaSt { k } => (
            words(&["pa-st", "--k", &k.to_string()]),
            vec![construct_pa_st(*k)?],
        ),
        ConstructCmd::Paley { q } => (
            words(&["paley", "--q", &q.to_string()]),
            vec![construct_paley(*q)?],
        ),
        ConstructCmd::Cyclotomic { q, e } => (
            words(&["cyclotomic", "--q", &q.to_string(), "--e", &e.to_string()]),
            construct_cyclotomic(*q, *e)?,
        ),
        ConstructCmd::EvenK { a } => (
            words(&["even-k", "--a", &a.to_string()]),
            vec![construct_even_k(*a)?],
        ),
        ConstructCmd::Recursive { base, a, normalize } => {
            let b = base_family(base, *normalize)?;
            (
                words(&["recursive", "--base", base, "--a", &a.to_string()]),
                vec![recursive_lambda1(&b, *a)?],
            )
        }
        ConstructCmd::GsedfRecursive {
            base,
            a,
            b,
            normalize,
        } => {
            let fam = base_family(base, *normalize)?;
            let spec = RecursionSpec::for_base(&fam, *a, *b)?;
            (
                words(&[
                    "gsedf-recursive",
                    "--base",
                    base,
                    "--a",
                    &a.to_string(),
                    "--b",
                    &b.to_string(),
                ]),
                vec![recursive_gsedf(&fam, spec)?],
            )
        }
        ConstructCmd::CompositePair { r, a } => {
            let (t1, t2) = composite_pair(*r, *a)?;
            equivalent = Some(is_equivalent(&t1, &t2)?);
            (
                words(&[
                    "composite-pair",
                    "--r",
                    &r.to_string(),
                    "--a",
                    &a.to_string(),
                ]),
                vec![t1, t2],
            )
        }
        ConstructCmd::Dihedral { k } => (
            words(&["dihedral", "--k", &k.to_string()]),
            vec![construct_dihedral_sedf(*k)?],
        ),
        ConstructCmd::Trivial { group } => {
            let g = Arc::new(FiniteGroup::from_spec(group)?);
            (
                words(&["trivial", "--group", group]),
                vec![construct_trivial(g)?],
            )
        }
    };
    let mut text = String::new();
    for f in &families {
        writeln!(text, "{f}").unwrap();
    }
    if let Some(eq) = equivalent {
        writeln!(text, "equivalent: {eq}").unwrap();
    }
    let mut full = vec!["construct".to_string()];
    full.extend(command);
    let mut report = RunReport::new(
        full,
        Payload::Families {
            families: families.iter().map(BlockFamily::to_record).collect(),
            nodes: None,
            equivalent,
        },
    );
    report.group = families.first().map(|f| f.group().name().to_string());
    Ok(Outcome::ok(emit(cli, &report, text)?))
}

fn read_family_arg(args: &VerifyArgs) -> sedf_core::Result<BlockFamily> {
    let text = match (&args.family, &args.input) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        (None, None) => return Err(Error::FamilyFormat("pass --family or --input".into())),
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') && trimmed.contains("\"blocks\"") {
        let record: FamilyRecord =
            serde_json::from_str(trimmed).map_err(|e| Error::FamilyFormat(e.to_string()))?;
        return BlockFamily::from_record(&record);
    }
    match &args.group {
        Some(spec) if trimmed.starts_with('{') => {
            BlockFamily::parse_blocks(Arc::new(FiniteGroup::from_spec(spec)?), trimmed)
        }
        _ => BlockFamily::parse_text(trimmed),
    }
}

fn histogram_row(g: &FiniteGroup, block: Option<usize>, c: &DifferenceCounter) -> HistogramRow {
    HistogramRow {
        block,
        counts: (1..g.order())
            .map(|x| (g.label(x).to_string(), c.get(x)))
            .collect(),
    }
}

fn need(v: Option<usize>, name: &str) -> sedf_core::Result<usize> {
    v.ok_or_else(|| Error::Parameter(format!("--{name} is required for this kind")))
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> sedf_core::Result<Outcome> {
    let fam = read_family_arg(args)?;
    let g = fam.group().clone();
    let per_block = |co: bool| -> Vec<HistogramRow> {
        (0..fam.num_blocks())
            .map(|i| {
                let c = if co {
                    fam.block_codifferences(i)
                } else {
                    fam.block_differences(i)
                };
                histogram_row(&g, Some(i), &c)
            })
            .collect()
    };
    let (kind, verdict, histogram) = match args.kind {
        Kind::Sedf => {
            let ok = verify_sedf(&fam, need(args.lambda, "lambda")?)?;
            ("sedf", ok, if ok { vec![] } else { per_block(false) })
        }
        Kind::Cosedf => {
            let ok = verify_cosedf(&fam, need(args.lambda, "lambda")?)?;
            ("cosedf", ok, if ok { vec![] } else { per_block(true) })
        }
        Kind::Gsedf => {
            let profile = GsedfProfile::new(fam.block_sizes(), args.lambdas.clone())?;
            let ok = verify_gsedf(&fam, &profile)?;
            ("gsedf", ok, if ok { vec![] } else { per_block(false) })
        }
        Kind::Edf => {
            let ok = verify_edf(&fam, need(args.lambda, "lambda")?)?;
            let hist = if ok {
                vec![]
            } else {
                let mut total = DifferenceCounter::new(g.order());
                for i in 0..fam.num_blocks() {
                    total.absorb(&fam.block_differences(i));
                }
                vec![histogram_row(&g, None, &total)]
            };
            ("edf", ok, hist)
        }
        Kind::Pds => {
            if fam.num_blocks() != 1 {
                return Err(Error::Shape(
                    "a partial difference set is a single block".into(),
                ));
            }
            let d = &fam.blocks()[0];
            let ok = verify_pds(
                d,
                &g,
                d.len(),
                need(args.lambda, "lambda")?,
                need(args.mu, "mu")?,
            )?;
            let hist = if ok {
                vec![]
            } else {
                let mut c = DifferenceCounter::new(g.order());
                for &x in d {
                    for &y in d {
                        if x != y {
                            c.increment(g.diff(x, y));
                        }
                    }
                }
                vec![histogram_row(&g, None, &c)]
            };
            ("pds", ok, hist)
        }
    };
    let mut text = format!("{kind} {fam}: {}\n", if verdict { "true" } else { "false" });
    for row in &histogram {
        match row.block {
            Some(i) => write!(text, "block {i}:").unwrap(),
            None => write!(text, "all:").unwrap(),
        }
        for (label, c) in &row.counts {
            write!(text, " {label}={c}").unwrap();
        }
        text.push('\n');
    }
    let mut command = words(&["verify", "--kind", kind]);
    if let Some(l) = args.lambda {
        command.extend(["--lambda".to_string(), l.to_string()]);
    }
    let mut report = RunReport::new(
        command,
        Payload::Verification(VerificationRecord {
            property: kind.to_string(),
            family: fam.to_record(),
            verdict,
            histogram,
        }),
    );
    report.group = Some(g.name().to_string());
    report.parameters = json!({ "lambda": args.lambda, "lambdas": args.lambdas, "mu": args.mu });
    let stdout = emit(cli, &report, text)?;
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if verdict { EXIT_OK } else { EXIT_INVALID },
    })
}

fn cmd_tables(cli: &Cli, which: &str) -> sedf_core::Result<Outcome> {
    let command = vec![
        "tables".to_string(),
        "--which".to_string(),
        which.to_string(),
    ];
    let workers = cli.jobs.max(1);
    let (payload, text) = match which {
        "1" => {
            let rows = tables::parameter_rows(64);
            let text = tables::format_params(&rows);
            (Payload::Params { rows }, text)
        }
        "4" => {
            let rows = tables::parameter_rows(24);
            let text = tables::format_params(&rows);
            (Payload::Params { rows }, text)
        }
        "5" => {
            let cells = tables::abelian_cells(24, workers)?;
            let text = tables::format_abelian_table(&cells);
            (Payload::Cells { cells }, text)
        }
        "6" => {
            let cells = tables::nonabelian_cells(24, workers)?;
            let text = tables::format_nonabelian_table(&cells);
            (Payload::Cells { cells }, text)
        }
        _ => {
            return Err(Error::Parameter(format!(
                "no table {which}; choose 1, 4, 5 or 6"
            )))
        }
    };
    let report = RunReport::new(command, payload);
    Ok(Outcome::ok(emit(cli, &report, text)?))
}
