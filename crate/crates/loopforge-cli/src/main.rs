//! `loopforge` — command-line front end for the finite-loop library.
//!
//! Verbs: `classify`, `inner`, `check`, `isotopism`, `enumerate`,
//! `witness`. Reports are line-oriented plain text; `--json` emits a
//! structured mirror with identical content.
//!
//! Exit codes: 0 = all clauses pass / the query ran; 1 = some clause
//! failed (or the queried triple is not an isotopism); 2 = input error;
//! 3 = the theorem's precondition is violated on every instance.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use loopforge::deviation::isotopism_counterexample;
use loopforge::inner::{classify_loop, inner_group, InnerGroupKind, InnerKind};
use loopforge::perm::{permutations_fixing, MappingTriple, Permutation};
use loopforge::report::{LoopFlag, TheoremReport};
use loopforge::search::{
    enumerate_loops_parallel_with_cap, enumerate_loops_with_cap, find_witnesses,
    find_witnesses_with_workers, isomorphism_classes, InnerCondition, LoopEnumerator,
    WitnessQuery, DEFAULT_ENUMERATION_CAP, MAX_ENUMERATION_ORDER,
};
use loopforge::table::LoopTable;
use loopforge::theorems::{verify_theorem, Arrangement, TheoremId, TheoremInstance};

/// Largest order for which `check` will quantify over all
/// identity-fixing permutations when no `--phi` is given.
const PHI_QUANTIFY_CAP: usize = 6;

#[derive(Parser)]
#[command(
    name = "loopforge",
    version,
    about = "Inspect finite loops given as Cayley tables: classify them, grade \
             theorem instances, decide isotopisms, enumerate small orders, and \
             search for witness loops."
)]
struct Cli {
    /// Emit a structured JSON mirror of the report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one loop: family flags, inner group sizes, and counts.
    Classify {
        /// Cayley-table file.
        table: PathBuf,
    },
    /// Print an inner mapping group's size and generators.
    Inner {
        /// Cayley-table file.
        table: PathBuf,
        /// Which family: rho, lambda, mu, or full.
        #[arg(long, default_value = "full")]
        kind: String,
    },
    /// Grade a theorem on one instance or on all applicable instances.
    Check(CheckArgs),
    /// Decide whether a mapping triple is an isotopism between two loops.
    Isotopism {
        /// Source Cayley-table file.
        source: PathBuf,
        /// Target Cayley-table file.
        target: PathBuf,
        /// Mapping-triple file (three permutation lines).
        #[arg(long)]
        triple: PathBuf,
    },
    /// Stream every loop table of one order (normalized form).
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Collapse the stream to one representative per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
        /// Worker threads for the enumeration (0 = one per core).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Search a range of orders for loops matching the requirements.
    Witness {
        /// Inclusive order range, e.g. `5..6` or a single order `5`.
        #[arg(long)]
        orders: String,
        /// Comma-separated flags each witness must have; prefix with `!`
        /// to require absence (e.g. `a_rho,!cc,!extra`).
        #[arg(long)]
        require: Option<String>,
        /// Require some inner mapping of a family to have an exact order,
        /// as `family=k` (e.g. `rho=2`). Repeatable.
        #[arg(long = "inner-order")]
        inner_order: Vec<String>,
        /// Require some inner mapping of a family to satisfy the vanishing
        /// condition everywhere (rho, lambda, or mu). Repeatable.
        #[arg(long = "p-vanishes")]
        p_vanishes: Vec<String>,
        /// Attach a fully graded inner-triple instance of this arrangement
        /// (RLT, LRT, or TRL) to each witness when one exists.
        #[arg(long)]
        arrangement: Option<String>,
        /// Worker threads for the search (0 = one per core; omit for serial).
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Source Cayley-table file.
    table: PathBuf,
    /// Theorem to grade (see `--help` for the list).
    #[arg(long, value_name = "ID")]
    theorem: String,
    /// Permutation file for single-mapping theorems; omitted, the check
    /// quantifies over every permutation fixing the identity.
    #[arg(long)]
    phi: Option<PathBuf>,
    /// Target Cayley-table file for two-loop theorems (defaults to the
    /// source; requires --triple).
    #[arg(long)]
    target: Option<PathBuf>,
    /// Mapping-triple file for two-loop theorems; omitted, the check
    /// quantifies over every principal-isotope triple.
    #[arg(long)]
    triple: Option<PathBuf>,
}

fn main() {
    // Die quietly like other stream-producing tools when a downstream
    // pipe closes early, instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

/// Input errors surface as `Err` (exit 2); graded outcomes map to exit
/// codes 0, 1, and 3.
fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Classify { table } => classify_cmd(&table, cli.json),
        Command::Inner { table, kind } => inner_cmd(&table, &kind, cli.json),
        Command::Check(args) => check_cmd(&args, cli.json),
        Command::Isotopism {
            source,
            target,
            triple,
        } => isotopism_cmd(&source, &target, &triple, cli.json),
        Command::Enumerate {
            order,
            up_to_iso,
            workers,
        } => enumerate_cmd(order, up_to_iso, workers, cli.json),
        Command::Witness {
            orders,
            require,
            inner_order,
            p_vanishes,
            arrangement,
            workers,
        } => witness_cmd(
            &orders,
            require.as_deref(),
            &inner_order,
            &p_vanishes,
            arrangement.as_deref(),
            workers,
            cli.json,
        ),
    }
}

// ---------------------------------------------------------------------
// Input helpers
// ---------------------------------------------------------------------

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_table(path: &Path) -> Result<LoopTable, String> {
    LoopTable::parse_str(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_permutation(path: &Path) -> Result<Permutation, String> {
    let text = read_file(path)?;
    let mut found: Option<(usize, &str)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if found.is_some() {
            return Err(format!(
                "{}: parse error at line {}: expected exactly one permutation line",
                path.display(),
                idx + 1
            ));
        }
        found = Some((idx + 1, line));
    }
    let (line_no, line) = found.ok_or_else(|| {
        format!(
            "{}: parse error at line 1: expected one permutation line",
            path.display()
        )
    })?;
    Permutation::parse_line(line, line_no).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_triple(path: &Path) -> Result<MappingTriple, String> {
    MappingTriple::parse_str(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// The enumeration cap: the default unless `LOOPFORGE_MAX_ORDER` raises
/// (or lowers) it, clamped to the hard ceiling.
fn enumeration_cap() -> Result<usize, String> {
    match std::env::var("LOOPFORGE_MAX_ORDER") {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map(|n| n.min(MAX_ENUMERATION_ORDER))
            .map_err(|_| format!("invalid LOOPFORGE_MAX_ORDER value `{raw}`")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ENUMERATION_CAP),
        Err(e) => Err(format!("invalid LOOPFORGE_MAX_ORDER value: {e}")),
    }
}

// ---------------------------------------------------------------------
// classify / inner
// ---------------------------------------------------------------------

fn classify_cmd(path: &Path, as_json: bool) -> Result<i32, String> {
    let table = read_table(path)?;
    let report = classify_loop(&table).map_err(|e| e.to_string())?;
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
        );
    } else {
        print!("{report}");
    }
    Ok(0)
}

fn inner_cmd(path: &Path, kind: &str, as_json: bool) -> Result<i32, String> {
    let table = read_table(path)?;
    let kind: InnerGroupKind = kind.parse().map_err(|e: loopforge::Error| e.to_string())?;
    let group = inner_group(&table, kind).map_err(|e| e.to_string())?;
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "kind": format!("{kind}"),
                "size": group.size(),
                "generators": group.generators(),
            }))
            .map_err(|e| e.to_string())?
        );
    } else {
        println!("kind {kind}");
        println!("size {}", group.size());
        println!("generators {}", group.generators().len());
        for g in group.generators() {
            println!("  {g}");
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------
// check
// ---------------------------------------------------------------------

/// One graded instance plus the header identifying it.
struct GradedInstance {
    header: String,
    json_key: serde_json::Value,
    report: TheoremReport,
}

fn check_cmd(args: &CheckArgs, as_json: bool) -> Result<i32, String> {
    let theorem: TheoremId = args
        .theorem
        .parse()
        .map_err(|e: loopforge::Error| e.to_string())?;
    let source = read_table(&args.table)?;

    let mut graded: Vec<GradedInstance> = Vec::new();
    if theorem.takes_phi() {
        if args.target.is_some() || args.triple.is_some() {
            return Err(format!(
                "theorem `{theorem}` takes --phi, not --target/--triple"
            ));
        }
        let candidates = match &args.phi {
            Some(path) => vec![read_permutation(path)?],
            None => {
                if source.order() > PHI_QUANTIFY_CAP {
                    return Err(format!(
                        "order {} is too large to quantify over all identity-fixing \
                         permutations (limit {PHI_QUANTIFY_CAP}); provide --phi",
                        source.order()
                    ));
                }
                permutations_fixing(source.order(), source.identity())
            }
        };
        for phi in candidates {
            let inst = TheoremInstance::with_phi(theorem, source.clone(), phi.clone());
            let report = verify_theorem(&inst).map_err(|e| e.to_string())?;
            graded.push(GradedInstance {
                header: format!("instance phi={phi}"),
                json_key: json!({ "phi": phi }),
                report,
            });
        }
    } else {
        if args.phi.is_some() {
            return Err(format!(
                "theorem `{theorem}` takes --target/--triple, not --phi"
            ));
        }
        match &args.triple {
            Some(path) => {
                let triple = read_triple(path)?;
                let target = match &args.target {
                    Some(p) => read_table(p)?,
                    None => source.clone(),
                };
                let inst = TheoremInstance::with_triple(theorem, source.clone(), target, triple.clone());
                let report = verify_theorem(&inst).map_err(|e| e.to_string())?;
                graded.push(GradedInstance {
                    header: format!("instance triple={triple}"),
                    json_key: json!({ "triple": triple }),
                    report,
                });
            }
            None => {
                if args.target.is_some() {
                    return Err("--target requires --triple; without a triple the check \
                                quantifies over principal isotopes of the source"
                        .into());
                }
                let n = source.order();
                for f in 0..n {
                    for g in 0..n {
                        let (isotope, triple) = source
                            .principal_isotope(f, g)
                            .map_err(|e| e.to_string())?;
                        let inst = TheoremInstance::with_triple(
                            theorem,
                            source.clone(),
                            isotope,
                            triple,
                        );
                        let report = verify_theorem(&inst).map_err(|e| e.to_string())?;
                        graded.push(GradedInstance {
                            header: format!("instance isotope=({f},{g})"),
                            json_key: json!({ "isotope_at": [f, g] }),
                            report,
                        });
                    }
                }
            }
        }
    }

    let instances = graded.len();
    let violated = graded.iter().filter(|g| g.report.clauses.is_empty()).count();
    let failed_clauses: usize = graded
        .iter()
        .map(|g| g.report.clauses.iter().filter(|c| c.status == loopforge::ClauseStatus::Fail).count())
        .sum();

    if as_json {
        let payload = json!({
            "theorem": theorem.name(),
            "instances": graded
                .iter()
                .map(|g| {
                    let mut obj = g.json_key.clone();
                    obj["report"] = serde_json::to_value(&g.report).unwrap_or_default();
                    obj
                })
                .collect::<Vec<_>>(),
            "summary": {
                "instances": instances,
                "violated": violated,
                "failed_clauses": failed_clauses,
            },
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&payload).map_err(|e| e.to_string())?
        );
    } else {
        println!("theorem {theorem}");
        for g in &graded {
            println!("{}", g.header);
            print!("{}", g.report);
        }
        println!("summary instances={instances} violated={violated} failed-clauses={failed_clauses}");
    }

    if failed_clauses > 0 {
        Ok(1)
    } else if instances > 0 && violated == instances {
        Ok(3)
    } else {
        Ok(0)
    }
}

// ---------------------------------------------------------------------
// isotopism
// ---------------------------------------------------------------------

fn isotopism_cmd(
    source: &Path,
    target: &Path,
    triple: &Path,
    as_json: bool,
) -> Result<i32, String> {
    let g = read_table(source)?;
    let h = read_table(target)?;
    let t = read_triple(triple)?;
    let counterexample = isotopism_counterexample(&g, &h, &t).map_err(|e| e.to_string())?;
    let holds = counterexample.is_none();
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "isotopism": holds,
                "counterexample": counterexample.map(|(x, y)| json!({ "x": x, "y": y })),
            }))
            .map_err(|e| e.to_string())?
        );
    } else {
        println!("{holds}");
        if let Some((x, y)) = counterexample {
            println!("counterexample x={x} y={y}");
        }
    }
    Ok(if holds { 0 } else { 1 })
}

// ---------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------

fn enumerate_cmd(
    order: usize,
    up_to_iso: bool,
    workers: Option<usize>,
    as_json: bool,
) -> Result<i32, String> {
    let cap = enumeration_cap()?;
    if up_to_iso {
        if order > cap || order > DEFAULT_ENUMERATION_CAP {
            return Err(format!(
                "isomorphism classification is limited to order {} (requested {order})",
                cap.min(DEFAULT_ENUMERATION_CAP)
            ));
        }
        let loops = collect_loops(order, cap, workers)?;
        let classes = isomorphism_classes(&loops);
        if as_json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "order": order,
                    "classes": classes,
                }))
                .map_err(|e| e.to_string())?
            );
        } else {
            for class in &classes {
                print!("{}", class.representative);
                println!("# size {}", class.size);
                println!();
            }
            println!("# classes {}", classes.len());
        }
        return Ok(0);
    }

    if order == MAX_ENUMERATION_ORDER {
        if order > cap {
            return Err(format!(
                "order {order} exceeds the enumeration cap {cap} \
                 (set LOOPFORGE_MAX_ORDER to raise it)"
            ));
        }
        if as_json {
            return Err(format!(
                "order {order} is stream-only; the JSON mirror would materialize \
                 the full listing"
            ));
        }
        eprintln!(
            "warning: order {order} enumerates tens of millions of tables; streaming"
        );
        let mut count: u64 = 0;
        for table in LoopEnumerator::new(order).map_err(|e| e.to_string())? {
            print!("{table}");
            println!();
            count += 1;
        }
        println!("# count {count}");
        return Ok(0);
    }

    let loops = collect_loops(order, cap, workers)?;
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "order": order,
                "count": loops.len(),
                "tables": loops,
            }))
            .map_err(|e| e.to_string())?
        );
    } else {
        for table in &loops {
            print!("{table}");
            println!();
        }
        println!("# count {}", loops.len());
    }
    Ok(0)
}

fn collect_loops(
    order: usize,
    cap: usize,
    workers: Option<usize>,
) -> Result<Vec<LoopTable>, String> {
    match workers {
        Some(w) => enumerate_loops_parallel_with_cap(order, cap, w).map_err(|e| e.to_string()),
        None => enumerate_loops_with_cap(order, cap).map_err(|e| e.to_string()),
    }
}

// ---------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------

fn parse_order_range(spec: &str) -> Result<std::ops::RangeInclusive<usize>, String> {
    let spec = spec.trim();
    let parse_end = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid order `{s}` in range `{spec}`"))
    };
    if let Some((a, b)) = spec.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        Ok(parse_end(a)?..=parse_end(b)?)
    } else {
        let n = parse_end(spec)?;
        Ok(n..=n)
    }
}

fn parse_required(spec: &str) -> Result<Vec<(LoopFlag, bool)>, String> {
    spec.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            let (name, wanted) = match part.strip_prefix('!') {
                Some(rest) => (rest.trim(), false),
                None => (part, true),
            };
            let flag: LoopFlag = name
                .parse()
                .map_err(|e: loopforge::Error| e.to_string())?;
            Ok((flag, wanted))
        })
        .collect()
}

fn parse_inner_order(spec: &str) -> Result<InnerCondition, String> {
    let (family, order) = spec
        .split_once('=')
        .ok_or_else(|| format!("expected `family=k`, got `{spec}`"))?;
    let kind: InnerKind = family
        .trim()
        .parse()
        .map_err(|e: loopforge::Error| e.to_string())?;
    let order = order
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("invalid mapping order `{order}` in `{spec}`"))?;
    Ok(InnerCondition::ExponentOrder { kind, order })
}

#[allow(clippy::too_many_arguments)]
fn witness_cmd(
    orders: &str,
    require: Option<&str>,
    inner_order: &[String],
    p_vanishes: &[String],
    arrangement: Option<&str>,
    workers: Option<usize>,
    as_json: bool,
) -> Result<i32, String> {
    let orders = parse_order_range(orders)?;
    let cap = enumeration_cap()?;
    if *orders.end() > cap {
        return Err(format!(
            "order {} exceeds the enumeration cap {cap} \
             (set LOOPFORGE_MAX_ORDER to raise it)",
            orders.end()
        ));
    }

    let mut inner_conditions = Vec::new();
    for spec in inner_order {
        inner_conditions.push(parse_inner_order(spec)?);
    }
    for family in p_vanishes {
        let kind: InnerKind = family
            .trim()
            .parse()
            .map_err(|e: loopforge::Error| e.to_string())?;
        inner_conditions.push(InnerCondition::VanishesEverywhere { kind });
    }
    let arrangement = arrangement
        .map(|s| s.parse::<Arrangement>())
        .transpose()
        .map_err(|e| e.to_string())?;

    let query = WitnessQuery {
        orders,
        required: match require {
            Some(spec) => parse_required(spec)?,
            None => Vec::new(),
        },
        inner_conditions,
        arrangement,
    };
    let witnesses = match workers {
        Some(w) => find_witnesses_with_workers(&query, w),
        None => find_witnesses(&query),
    }
    .map_err(|e| e.to_string())?;

    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "count": witnesses.len(),
                "witnesses": witnesses,
            }))
            .map_err(|e| e.to_string())?
        );
    } else {
        for (idx, w) in witnesses.iter().enumerate() {
            println!("# witness {}", idx + 1);
            print!("{}", w.table);
            let mut classification = String::new();
            write!(classification, "{}", w.classification).expect("writing to a String");
            for line in classification.lines() {
                println!("# {line}");
            }
            match &w.instance {
                Some(inst) => println!(
                    "# instance arrangement={} isotope=({},{}) {}",
                    inst.arrangement, inst.isotope_at.0, inst.isotope_at.1, inst.labels
                ),
                None => {
                    if query.arrangement.is_some() {
                        println!("# instance none");
                    }
                }
            }
            println!();
        }
        println!("# witnesses {}", witnesses.len());
    }
    Ok(0)
}
