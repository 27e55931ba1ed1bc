use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use reconkit::caterpillar::{self, CaterpillarSeq, DaReduction};
use reconkit::deck;
use reconkit::families::{self, enumerate_connected, enumerate_graphs, enumerate_trees, parse_input};
use reconkit::recon::{adv_recon_number, recon_number, ReconResult};
use reconkit::store::{
    compute_record, format_witness, Filter, Needs, Record, Store, DEFAULT_STORE, STORE_ENV,
};
use reconkit::sweep::{run_sweep, Claim, Scope, SweepOptions, SweepReport, CLAIMS};
use reconkit::{write_graph6, Graph, Parallelism};

/// Edge-reconstruction numbers of small graphs.
///
/// Graphs are given as graph6 or in the family grammar: P:n, S:n, K:n,
/// C:n, N:n, Kpq:p,q, U:k*<spec>, cat:a1,..,an, spider:l1,..,lk, and
/// A+B for disjoint unions.
#[derive(Parser, Debug)]
#[command(name = "reconkit", version)]
struct Cli {
    /// Record store (JSON lines).
    #[arg(long, global = true, env = STORE_ENV, default_value = DEFAULT_STORE)]
    store: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the edge-deck, or the da-edeck with --da.
    Deck {
        input: String,
        #[arg(long)]
        da: bool,
    },
    /// Compute reconstruction numbers.
    Recon {
        input: String,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        /// Also append the result to the store.
        #[arg(long)]
        save: bool,
    },
    /// Adversary numbers with the graph sharing the most cards.
    Adv {
        input: String,
        #[arg(long)]
        da: bool,
    },
    /// Check a claim over a family, resuming from the store.
    Sweep(SweepArgs),
    /// Caterpillar sequence tools.
    #[command(subcommand)]
    Caterpillar(CatCommand),
    /// Family generators.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Read the record store.
    #[command(subcommand)]
    Store(StoreCommand),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Ern,
    Dern,
    AdvErn,
    AdvDern,
    All,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Free trees on exactly N vertices.
    #[arg(long, value_name = "N", group = "scope")]
    trees: Option<usize>,
    /// Caterpillars on exactly N vertices.
    #[arg(long, value_name = "N", group = "scope")]
    caterpillars: Option<usize>,
    /// k copies of every connected H on 2..=--max-component vertices.
    #[arg(long, value_name = "K", group = "scope", requires = "max_component")]
    disconnected: Option<usize>,
    /// All graphs with edges on exactly N vertices.
    #[arg(long, value_name = "N", group = "scope")]
    graphs: Option<usize>,
    #[arg(long, value_name = "N")]
    max_component: Option<usize>,
    /// Claim name, e.g. dern-le-2 or thm-4.3@2 (see `sweep --list-claims`).
    #[arg(long, default_value = "dern-le-2")]
    claim: String,
    /// List the registered claims and exit.
    #[arg(long)]
    list_claims: bool,
    /// Allow scopes past the default caps.
    #[arg(long)]
    force: bool,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
    /// Stop after computing this many new records.
    #[arg(long)]
    limit: Option<usize>,
    /// Print one line per record.
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum CatCommand {
    /// Sequences having both reductions, e.g. `reconstruct 1,7,3 1,6,3`.
    /// With --d1/--d2 the reductions are da-ecards and leaf multiplicities
    /// count.
    Reconstruct {
        r1: String,
        r2: String,
        #[arg(long, requires = "d2")]
        d1: Option<u32>,
        #[arg(long, requires = "d1")]
        d2: Option<u32>,
    },
    /// An identifying pair of positions (1-based).
    Pair { seq: String },
    /// The sequence of a tree, if it is a caterpillar.
    Seq { input: String },
    /// Every spine-preserving reduction with its d.
    Reductions { seq: String },
}

#[derive(Subcommand, Debug)]
enum FamilyCommand {
    /// Print one graph in graph6.
    Gen {
        spec: String,
        /// Print the canonical labelling instead of the family's own.
        #[arg(long)]
        canonical: bool,
    },
    /// Print every class of a family in graph6.
    List {
        #[arg(value_enum)]
        kind: ListKind,
        n: usize,
        /// Restrict graphs to m edges.
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ListKind {
    Trees,
    Graphs,
    Connected,
}

#[derive(Subcommand, Debug)]
enum StoreCommand {
    /// Print records, e.g. `scan --filter "dern>=3,n<=8"`.
    Scan {
        #[arg(long)]
        filter: Option<String>,
        /// Print JSON lines instead of a table.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn graph(input: &str) -> Result<Graph> {
    parse_input(input).with_context(|| format!("cannot read graph `{input}`"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Deck { input, da } => {
            let g = graph(&input)?;
            let d = deck::deck(&g, da)?;
            print!("{d}");
            println!("# {} cards, {} distinct", d.total(), d.distinct());
        }
        Command::Recon { input, which, save } => {
            let g = graph(&input)?;
            let wanted = match which {
                Which::All => vec![Which::Ern, Which::Dern, Which::AdvErn, Which::AdvDern],
                w => vec![w],
            };
            let mut rec = compute_record(&g, Needs::default())?;
            for w in wanted {
                let (name, r) = match w {
                    Which::Ern => ("ern", recon_number(&g, false)?),
                    Which::Dern => ("dern", recon_number(&g, true)?),
                    Which::AdvErn => ("adv-ern", adv_recon_number(&g, false)?),
                    Which::AdvDern => ("adv-dern", adv_recon_number(&g, true)?),
                    Which::All => unreachable!(),
                };
                print_result(name, &r);
                match w {
                    Which::Ern => {
                        rec.ern = Some(r.value);
                        if rec.witness.is_empty() {
                            rec.witness = format_witness(&r.witness);
                        }
                    }
                    Which::Dern => {
                        rec.dern = Some(r.value);
                        rec.witness = format_witness(&r.witness);
                    }
                    Which::AdvErn => rec.adv_ern = Some(r.value),
                    Which::AdvDern => rec.adv_dern = Some(r.value),
                    Which::All => {}
                }
            }
            if save {
                Store::open(&cli.store).append(&rec)?;
            }
        }
        Command::Adv { input, da } => {
            let g = graph(&input)?;
            let r = adv_recon_number(&g, da)?;
            print_result(if da { "adv-dern" } else { "adv-ern" }, &r);
            println!("shared: {}", r.max_shared);
        }
        Command::Sweep(args) => return sweep(&cli.store, args),
        Command::Caterpillar(c) => caterpillar_cmd(c)?,
        Command::Family(FamilyCommand::Gen { spec, canonical }) => {
            let g = families::parse_family(&spec)?;
            if canonical {
                println!("{}", reconkit::canonical_form(&g));
            } else {
                println!("{}", write_graph6(&g));
            }
        }
        Command::Family(FamilyCommand::List { kind, n, m }) => {
            let gs = match kind {
                ListKind::Trees => enumerate_trees(n)?,
                ListKind::Graphs => enumerate_graphs(n, m)?,
                ListKind::Connected => enumerate_connected(n)?,
            };
            for g in gs {
                println!("{}", reconkit::canonical_form(&g));
            }
        }
        Command::Store(StoreCommand::Scan { filter, json }) => {
            let filter = match filter {
                Some(f) => Filter::parse(&f)?,
                None => Filter::all(),
            };
            let store = Store::open(&cli.store);
            let scan = store.scan(&filter)?;
            for r in &scan.records {
                if json {
                    println!("{}", serde_json::to_string(r)?);
                } else {
                    println!("{}", row(r));
                }
            }
            eprintln!(
                "{} records, {} duplicate lines, {} corrupt lines skipped",
                scan.records.len(),
                scan.duplicates,
                scan.corrupt
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn row(r: &Record) -> String {
    let show = |v: Option<reconkit::ReconValue>| v.map_or("-".to_string(), |v| v.to_string());
    format!(
        "{:<12} n={:<2} m={:<2} ern={:<3} dern={:<3} adv-ern={:<3} adv-dern={:<3} {}",
        r.graph6,
        r.n,
        r.m,
        show(r.ern),
        show(r.dern),
        show(r.adv_ern),
        show(r.adv_dern),
        r.witness.join(" ")
    )
}

fn print_result(name: &str, r: &ReconResult) {
    println!("{name}: {}", r.value);
    for (k, c) in &r.witness {
        match k.d {
            Some(d) => println!("  witness: {c} x ({}, d={d})", k.card),
            None => println!("  witness: {c} x {}", k.card),
        }
    }
    if let Some(b) = &r.blocker_example {
        println!("  most shared: {} cards with {}", r.max_shared, write_graph6(b));
    }
}

fn sweep(store_path: &Path, args: SweepArgs) -> Result<ExitCode> {
    if args.list_claims {
        for c in CLAIMS {
            println!("{}", c.name());
        }
        return Ok(ExitCode::SUCCESS);
    }
    let scope = match (args.trees, args.caterpillars, args.disconnected, args.graphs) {
        (Some(n), ..) => Scope::Trees(n),
        (_, Some(n), ..) => Scope::Caterpillars(n),
        (_, _, Some(k), _) => Scope::Disconnected {
            k,
            max_component: args.max_component.expect("required by clap"),
        },
        (.., Some(n)) => Scope::Graphs(n),
        _ => bail!("choose a scope: --trees, --caterpillars, --disconnected or --graphs"),
    };
    let claim = Claim::by_name(&args.claim)?;
    let opts = SweepOptions {
        parallelism: if args.sequential {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        },
        force: args.force,
        limit: args.limit,
        batch: None,
    };
    let mut store = Store::open(store_path);
    let report = run_sweep(&scope, claim, &mut store, &opts)?;
    print_report(&report, args.verbose);
    Ok(if report.violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn print_report(r: &SweepReport, verbose: bool) {
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    if verbose {
        for rec in &r.records {
            println!("{}", row(rec));
        }
    }
    for rec in &r.listed {
        println!("listed: {}", row(rec));
    }
    for (rec, why) in &r.violations {
        println!("violation: {} {why}", rec.graph6);
    }
    println!(
        "{} [{}]: {} records ({} reused, {} computed), {} listed, {} skipped, {} violations{}, {:.2}s",
        r.claim,
        r.scope,
        r.records.len(),
        r.reused,
        r.computed,
        r.listed.len(),
        r.skipped,
        r.violations.len(),
        if r.complete { "" } else { ", incomplete" },
        r.elapsed.as_secs_f64()
    );
}

fn caterpillar_cmd(c: CatCommand) -> Result<()> {
    match c {
        CatCommand::Reconstruct { r1, r2, d1, d2 } => {
            let (r1, r2) = (CaterpillarSeq::parse(&r1)?, CaterpillarSeq::parse(&r2)?);
            let found = match (d1, d2) {
                (Some(d1), Some(d2)) => caterpillar::reconstruct_da(
                    &DaReduction { seq: r1, d: d1 },
                    &DaReduction { seq: r2, d: d2 },
                )?,
                _ => caterpillar::reconstruct(&r1, &r2)?,
            };
            for s in &found {
                println!("<{s}>");
            }
            if found.len() > 1 {
                eprintln!("{} candidates", found.len());
            }
        }
        CatCommand::Pair { seq } => {
            let s = CaterpillarSeq::parse(&seq)?;
            let (i, j) = caterpillar::identifying_pair(&s)?;
            let (a, b) = (s.da_reduce(i).expect("reducible"), s.da_reduce(j).expect("reducible"));
            println!("{} {}", i + 1, j + 1);
            println!("  {a}");
            println!("  {b}");
        }
        CatCommand::Seq { input } => match caterpillar::seq_of(&graph(&input)?)? {
            Some(s) => println!("<{s}>"),
            None => println!("not a caterpillar"),
        },
        CatCommand::Reductions { seq } => {
            let s = CaterpillarSeq::parse(&seq)?;
            for i in 0..s.len() {
                if let Some(r) = s.da_reduce(i) {
                    println!("{} {r}", i + 1);
                }
            }
        }
    }
    Ok(())
}
