//! Command-line surface for the finite-group toolkit: build tables from
//! descriptors, decide class membership with checkable witnesses, survey
//! families, and run the theorem harness.
//!
//! Machine contract: exit codes and the JSON output. Text output is not
//! stable.
//!
//! * `check`:  0 = in the class, 1 = not in the class (witness printed),
//!   2 = error.
//! * `verify`: 0 = verified, 1 = refuted, 2 = error, 3 = vacuous.
//! * everything else: 0 = success, 2 = error.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use selfcent::caps::{Caps, HARD_MAX_ORDER};
use selfcent::corpus::{self, CorpusEntry};
use selfcent::error::Error;
use selfcent::families::GroupDescriptor;
use selfcent::membership::{self, Verdict};
use selfcent::structure::{self, Nilpotency};
use selfcent::table::GroupTable;
use selfcent::theorems::{self, Scope, TheoremId, TheoremVerdict};

#[derive(Parser)]
#[command(
    name = "selfcent",
    about = "Finite-group toolkit for the class of groups whose non-abelian subgroups \
             all contain their own centralizers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Hard order cap for constructed tables (env: SELFCENT_MAX_ORDER).
    #[arg(long, global = true)]
    cap_order: Option<usize>,

    /// Cap for full subgroup-lattice enumeration.
    #[arg(long, global = true)]
    cap_enum: Option<usize>,

    /// Cap for quadratic non-commuting-pair scans.
    #[arg(long, global = true)]
    cap_pairs: Option<usize>,

    /// Worker threads for corpus runs (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Opt out of deterministic witness order for a parallel early-exit
    /// scan (verdicts are unaffected).
    #[arg(long, global = true, default_value_t = false)]
    fast: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group from a JSON descriptor and write its .tbl file.
    Construct {
        /// Path to the descriptor JSON, e.g. {"family":"quaternion","k":3}.
        descriptor: PathBuf,
        /// Output .tbl path.
        out: PathBuf,
    },
    /// Decide class membership for a .tbl file.
    Check {
        table: PathBuf,
        /// bruteforce | pairs | minimal | recursive | all
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// Stream per-group profile and membership records for a family.
    Survey {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        max_order: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a registered theorem verification over its default corpus.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        max_order: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Abelian,
    King,
    Maxclass,
    K2,
    K3,
    Products,
    Standard,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .ok();
    }
    let mut caps = Caps::from_env();
    if let Some(c) = cli.cap_order {
        caps.max_order = c;
    }
    if let Some(c) = cli.cap_enum {
        caps.enum_order = c;
    }
    if let Some(c) = cli.cap_pairs {
        caps.pair_order = c;
    }
    caps = caps.clamped();
    debug_assert!(caps.max_order <= HARD_MAX_ORDER);

    let result = match &cli.command {
        Command::Construct { descriptor, out } => cmd_construct(descriptor, out, &caps),
        Command::Check { table, method } => cmd_check(table, method, &caps, cli.fast),
        Command::Survey {
            family,
            p,
            max_order,
            format,
        } => cmd_survey(*family, *p, *max_order, *format, &caps),
        Command::Verify {
            theorem,
            p,
            n,
            max_order,
        } => cmd_verify(theorem, *p, *n, *max_order, &caps),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn cmd_construct(
    descriptor: &PathBuf,
    out: &PathBuf,
    caps: &Caps,
) -> Result<ExitCode, Error> {
    let file = File::open(descriptor)?;
    let desc: GroupDescriptor = serde_json::from_reader(BufReader::new(file))
        .map_err(|e| Error::input(format!("bad descriptor: {e}")))?;
    let table = desc.build(caps)?;
    let mut w = BufWriter::new(File::create(out)?);
    table.write_tbl(&mut w)?;
    w.flush()?;
    let class = match structure::nilpotency_class(&table) {
        Nilpotency::Class(c) => c.to_string(),
        Nilpotency::NotNilpotent => "-".to_string(),
    };
    println!(
        "order={} exponent={} class={}",
        table.order(),
        structure::exponent(&table),
        class
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(table: &PathBuf, method: &str, caps: &Caps, fast: bool) -> Result<ExitCode, Error> {
    let name = table
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "group".to_string());
    let file = File::open(table)?;
    let g = GroupTable::read_tbl(name, BufReader::new(file), caps)?;
    if method == "all" {
        let cc = membership::cross_check(&g, caps)?;
        println!("{}", serde_json::to_string_pretty(&cc).unwrap());
        return Ok(exit_for(cc.verdict));
    }
    let method: membership::Method = method.parse()?;
    let report = if fast && method == membership::Method::Pairs {
        membership::is_a_pairs_fast(&g, caps)?
    } else {
        membership::run_method(&g, method, caps)?
    };
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(exit_for(report.verdict))
}

fn exit_for(v: Verdict) -> ExitCode {
    match v {
        Verdict::InA => ExitCode::SUCCESS,
        Verdict::NotInA => ExitCode::from(1),
    }
}

fn survey_entries(
    family: Family,
    p: Option<u32>,
    max_order: u64,
    caps: &Caps,
) -> Result<Vec<CorpusEntry>, Error> {
    let ps = |fallback: Vec<u32>| p.map(|q| vec![q]).unwrap_or(fallback);
    let descriptors = match family {
        Family::Abelian => corpus::abelian_descriptors(max_order),
        Family::King => corpus::king_descriptors(&ps(vec![2, 3, 5]), max_order),
        Family::K2 => corpus::k2_descriptors(&ps(vec![2, 3, 5]), max_order),
        Family::K3 => corpus::k3_descriptors(&ps(vec![2, 3, 5]), max_order),
        Family::Products => corpus::product_descriptors(max_order),
        Family::Maxclass => {
            return Ok(corpus::maxclass_corpus(&ps(vec![2, 3, 5]), max_order, caps)?.entries)
        }
        Family::Standard => return Ok(corpus::standard_corpus(max_order, caps)?.entries),
    };
    let mut entries = Vec::new();
    for d in descriptors {
        let table = d.build(caps)?;
        entries.push(CorpusEntry {
            descriptor: d,
            table,
        });
    }
    Ok(entries)
}

fn cmd_survey(
    family: Family,
    p: Option<u32>,
    max_order: Option<u64>,
    format: Format,
    caps: &Caps,
) -> Result<ExitCode, Error> {
    let max_order = max_order.unwrap_or(256).min(caps.max_order as u64);
    let entries = survey_entries(family, p, max_order, caps)?;
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if format == Format::Csv {
        writeln!(
            out,
            "group,order,p,n,class,maximal_class,exponent,verdict,method,micros"
        )?;
    }
    for e in &entries {
        let profile = structure::profile(&e.table).ok();
        let membership = membership::is_a(&e.table, caps);
        match format {
            Format::Json => {
                let record = match &membership {
                    Ok(r) => serde_json::json!({
                        "group": corpus::entry_name(e),
                        "descriptor": e.descriptor,
                        "order": e.table.order(),
                        "profile": profile,
                        "verdict": r.verdict,
                        "method": r.method,
                        "witness": r.witness,
                        "micros": r.stats.micros,
                    }),
                    Err(err) => serde_json::json!({
                        "group": corpus::entry_name(e),
                        "descriptor": e.descriptor,
                        "order": e.table.order(),
                        "profile": profile,
                        "error": err.to_string(),
                    }),
                };
                writeln!(out, "{record}")?;
            }
            Format::Csv => {
                let (pstr, nstr, cstr, mstr, estr) = profile
                    .as_ref()
                    .map(|pr| {
                        (
                            pr.p.to_string(),
                            pr.n.to_string(),
                            pr.class.to_string(),
                            pr.is_maximal_class.to_string(),
                            pr.exponent.to_string(),
                        )
                    })
                    .unwrap_or_default();
                let (verdict, method, micros) = match &membership {
                    Ok(r) => (
                        r.verdict.as_str().to_string(),
                        r.method.name().to_string(),
                        r.stats.micros.to_string(),
                    ),
                    Err(e) => (format!("error: {e}"), String::new(), String::new()),
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    corpus::entry_name(e),
                    e.table.order(),
                    pstr,
                    nstr,
                    cstr,
                    mstr,
                    estr,
                    verdict,
                    method,
                    micros
                )?;
            }
            Format::Text => {
                let verdict = match &membership {
                    Ok(r) => r.verdict.as_str().to_string(),
                    Err(e) => format!("error: {e}"),
                };
                writeln!(
                    out,
                    "{:<24} order {:>5}  {}",
                    corpus::entry_name(e),
                    e.table.order(),
                    verdict
                )?;
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    theorem: &str,
    p: Option<u32>,
    n: Option<u32>,
    max_order: Option<u64>,
    caps: &Caps,
) -> Result<ExitCode, Error> {
    let id: TheoremId = theorem.parse()?;
    let scope = Scope { p, n, max_order };
    let corpus_obj = theorems::default_corpus(id, &scope, caps)?;
    let report = theorems::verify(id, &corpus_obj, caps)?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(match report.verdict {
        TheoremVerdict::Verified => ExitCode::SUCCESS,
        TheoremVerdict::Refuted => ExitCode::from(1),
        TheoremVerdict::Vacuous => ExitCode::from(3),
    })
}
