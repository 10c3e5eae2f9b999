use clap::{Args, Parser, Subcommand, ValueEnum};
use cliquepack::biclique::{k_cover, verify_cover, BicliqueCover};
use cliquepack::bounds::{
    averaging_bound, chain_bound_from, find_disjoint_mono_k4, ramsey_chain, ramsey_upper_defaults,
    BoundsLedger,
};
use cliquepack::designs::{build_design, universe_lower_bound, verify_design, Design};
use cliquepack::graph::{canonical_form, graph6_decode, graph6_encode};
use cliquepack::packing::{f_exhaustive, nu_json, ObjectiveWeights, PackingLp};
use cliquepack::partition::{
    build_h, h_lower_bound, join_partition, min_clique_partition, verify_partition,
    CliquePartition, DEFAULT_MAX_EDGES,
};
use cliquepack::search::{
    certify_level_sequence, resume_search, run_search, table_csv, transcript_levels, SearchConfig,
};
use cliquepack::{ratio, Graph, Rational};
use std::collections::BTreeSet;
use std::fs;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "cliquepack",
    version,
    about = "Biclique covers, clique partitions and packing bounds"
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build or check biclique covers of K_n.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Build or check bounded-intersection set families.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Clique partitions: join construction, verification, exact oracle.
    #[command(subcommand)]
    Partition(PartitionCmd),
    /// Fractional clique packing value of one graph.
    Nu(NuArgs),
    /// Minimum of nu(G) + nu(complement) over all graphs of one order.
    Fexhaust(FexhaustArgs),
    /// Extension-method search for low packing values.
    Search(SearchArgs),
    /// Bound propagation.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Build H_l(G) and export it as graph6 with a part-label sidecar.
    Hbuild(HbuildArgs),
}

#[derive(Subcommand, Debug)]
enum CoverCmd {
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Verify the result and report the multiplicity histogram.
        #[arg(long)]
        verify: bool,
        /// Write the cover as JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: PathBuf,
        /// Allowed multiplicities, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum DesignCmd {
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum PartitionCmd {
    /// Partition of G joined with an independent set of size l.
    Join {
        #[arg(long)]
        graph6: String,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a partition (JSON list of vertex lists) of a graph.
    Verify {
        #[arg(long)]
        graph6: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact minimum clique partition.
    Oracle {
        #[arg(long)]
        graph6: String,
        /// Largest clique size allowed.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
    },
}

#[derive(Args, Debug)]
struct NuArgs {
    #[arg(long)]
    graph6: String,
    #[arg(long)]
    r: usize,
    /// Also add the complement's value.
    #[arg(long)]
    pair: bool,
    /// Write the LP in CPLEX LP format.
    #[arg(long)]
    lp_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FexhaustArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    r: usize,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value_t = 4)]
    r: usize,
    #[arg(long, default_value_t = 6)]
    n0: usize,
    #[arg(long, default_value_t = 11)]
    depth: usize,
    #[arg(long)]
    nmax: usize,
    /// Table CSV (rows: order statistic, columns: n).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "CLIQUEPACK_CHECKPOINT_DIR")]
    checkpoint: Option<PathBuf>,
    /// Continue from the checkpoint directory.
    #[arg(long, requires = "checkpoint")]
    resume: bool,
    #[arg(long, default_value_t = cliquepack::search::DEFAULT_POOL_CAP)]
    pool_cap: usize,
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// Derive c_4..c_7 and alpha from a seed value.
    Chain {
        /// Seed as f<r>_<n>=<value>, e.g. f4_20=64725/1000.
        #[arg(long, default_value = "f4_20=64725/1000")]
        seed: String,
        /// Use only the averaging bound at the seed, no recursions.
        #[arg(long)]
        no_recursions: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coefficient of the greedy Ramsey chain.
    Ramsey {
        #[arg(long)]
        r: usize,
        /// Overrides as k=R, comma separated.
        #[arg(long, value_delimiter = ',')]
        ramsey: Vec<String>,
    },
    /// Two vertex-disjoint monochromatic K_4 in a colouring of K_20 (red graph as graph6).
    K20 {
        #[arg(long)]
        graph6: String,
    },
}

#[derive(Args, Debug)]
struct HbuildArgs {
    #[arg(long)]
    graph6: String,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

/// Result of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

type CmdResult = Result<Outcome, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Cover(c) => cover(cli.format, c),
        Command::Design(c) => design(cli.format, c),
        Command::Partition(c) => partition(cli.format, c),
        Command::Nu(a) => nu_cmd(cli.format, a),
        Command::Fexhaust(a) => fexhaust(cli.format, a),
        Command::Search(a) => search(cli.format, a),
        Command::Bounds(c) => bounds(cli.format, c),
        Command::Hbuild(a) => hbuild(cli.format, a),
    }
}

fn parse_graph(s: &str) -> Result<Graph, cliquepack::Error> {
    graph6_decode(s.trim())
}

fn rational_json(r: &Rational) -> serde_json::Value {
    serde_json::json!({ "value": ratio::to_text(r), "float": round6(r) })
}

fn round6(r: &Rational) -> f64 {
    (ratio::to_f64(r) * 1e6).round() / 1e6
}

fn rational_text(r: &Rational) -> String {
    format!("{} ({:.6})", ratio::to_text(r), ratio::to_f64(r))
}

fn verdict(pass: bool) -> Outcome {
    if pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn cover(format: Format, cmd: &CoverCmd) -> CmdResult {
    let (cover, target, check) = match cmd {
        CoverCmd::Build { n, k, verify, out } => {
            let cover = k_cover(*n, *k)?;
            if let Some(path) = out {
                cover.write_jsonl(fs::File::create(path)?)?;
            }
            (cover, BTreeSet::from([*k as u32]), *verify)
        }
        CoverCmd::Verify { n, input, target } => {
            let cover = BicliqueCover::read_jsonl(*n, BufReader::new(fs::File::open(input)?))?;
            (cover, target.iter().copied().collect(), true)
        }
    };
    if !check {
        println!("built {} bicliques on {} vertices", cover.len(), cover.n);
        return Ok(Outcome::Pass);
    }
    let report = verify_cover(&cover, &target);
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Csv => print!("{}", report.histogram_csv()),
        Format::Text => {
            println!("size: {}", report.size);
            println!("design size bound breached: {}", report.design_breach);
            print!("{}", report.histogram_csv());
            for (i, j, c) in report.offending.iter().take(20) {
                println!("offending edge {i}-{j}: multiplicity {c}");
            }
            println!("{}", if report.pass { "PASS" } else { "FAIL" });
        }
    }
    Ok(verdict(report.pass))
}

fn design(format: Format, cmd: &DesignCmd) -> CmdResult {
    let design = match cmd {
        DesignCmd::Build { n, t, m, out } => {
            let d = build_design(*n, *t, *m)?;
            if let Some(path) = out {
                fs::write(path, serde_json::to_string_pretty(&d.to_json())?)?;
            }
            d
        }
        DesignCmd::Verify { input } => serde_json::from_slice::<Design>(&fs::read(input)?)?,
    };
    let report = verify_design(&design);
    let lower = universe_lower_bound(design.n, design.t, design.m).ok();
    match format {
        Format::Json | Format::Csv => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "n": design.n, "d": design.d, "t": design.t, "m": design.m,
                "primes": design.primes,
                "size_bound_breached": design.size_bound_breached,
                "universe_lower_bound": lower,
                "report": report,
            }))?
        ),
        Format::Text => {
            println!(
                "n = {}, d = {}, t = {}, m = {}",
                design.n, design.d, design.t, design.m
            );
            println!("primes: {:?}", design.primes);
            println!("size bound breached: {}", design.size_bound_breached);
            if let Some(l) = lower {
                println!("universe lower bound: {l}");
            }
            println!(
                "max intersection {}, set sizes {}..{}: {}",
                report.max_intersection,
                report.min_size,
                report.max_size,
                if report.pass { "PASS" } else { "FAIL" }
            );
        }
    }
    Ok(verdict(report.pass))
}

fn partition(format: Format, cmd: &PartitionCmd) -> CmdResult {
    match cmd {
        PartitionCmd::Join { graph6, l, out } => {
            let g = parse_graph(graph6)?;
            let p = join_partition(&g, *l)?;
            let report = verify_partition(&p.host, &p);
            if let Some(path) = out {
                fs::write(path, p.to_json().to_string())?;
            }
            match format {
                Format::Text | Format::Csv => {
                    println!("host: {}", graph6_encode(&p.host));
                    println!(
                        "size: {} (n*l - e = {})",
                        report.size,
                        g.n() * l - g.edge_count()
                    );
                    println!("{}", if report.valid { "PASS" } else { "FAIL" });
                }
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "host": graph6_encode(&p.host), "cliques": p.to_json(), "report": report })
                ),
            }
            Ok(verdict(report.valid))
        }
        PartitionCmd::Verify { graph6, input } => {
            let g = parse_graph(graph6)?;
            let lists: Vec<Vec<usize>> = serde_json::from_slice(&fs::read(input)?)?;
            if lists.iter().flatten().any(|&v| v >= g.n()) {
                return Err(format!("partition mentions a vertex outside 0..{}", g.n()).into());
            }
            let p = CliquePartition::from_vertex_lists(g.clone(), &lists);
            let report = verify_partition(&g, &p);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => {
                    println!("size: {}", report.size);
                    for (u, v) in &report.uncovered {
                        println!("uncovered edge {u}-{v}");
                    }
                    for (u, v) in &report.overcovered {
                        println!("edge {u}-{v} covered more than once");
                    }
                    for i in &report.bad_cliques {
                        println!("entry {i} is not a clique of the graph");
                    }
                    println!("{}", if report.valid { "PASS" } else { "FAIL" });
                }
            }
            Ok(verdict(report.valid))
        }
        PartitionCmd::Oracle {
            graph6,
            r,
            max_edges,
        } => {
            let g = parse_graph(graph6)?;
            let res = min_clique_partition(&g, *r, *max_edges)?;
            let lists: Vec<Vec<usize>> = res
                .cliques
                .iter()
                .map(|&c| (0..g.n()).filter(|v| c >> v & 1 == 1).collect())
                .collect();
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "cp": res.size, "cliques": lists })
                ),
                _ => {
                    println!("{}", res.size);
                    for l in lists {
                        println!("{l:?}");
                    }
                }
            }
            Ok(Outcome::Pass)
        }
    }
}

fn nu_cmd(format: Format, a: &NuArgs) -> CmdResult {
    let g = parse_graph(&a.graph6)?;
    let weights = ObjectiveWeights::clique_savings(a.r);
    let lp = PackingLp::new(&g, a.r, &weights);
    let cert = lp.solve();
    if !lp.verify(&cert) {
        return Ok(Outcome::Fail);
    }
    if let Some(path) = &a.lp_out {
        fs::write(path, lp.to_lp_format())?;
    }
    let mut value = cert.value;
    if a.pair {
        value += cliquepack::packing::nu(&g.complement(), a.r, &weights);
    }
    match format {
        Format::Json => {
            let mut v = nu_json(&g, &value);
            v["float"] = serde_json::json!(round6(&value));
            println!("{v}");
        }
        Format::Csv => println!(
            "graph,nu,float\n{},{},{:.6}",
            graph6_encode(&g),
            ratio::to_text(&value),
            ratio::to_f64(&value)
        ),
        Format::Text => println!("{}", ratio::to_text(&value)),
    }
    Ok(Outcome::Pass)
}

fn fexhaust(format: Format, a: &FexhaustArgs) -> CmdResult {
    let res = f_exhaustive(a.n, a.r, &ObjectiveWeights::clique_savings(a.r))?;
    let minimizers: Vec<&str> = res.minimizers.iter().map(|k| k.as_str()).collect();
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({ "n": a.n, "r": a.r, "f": rational_json(&res.value), "minimizers": minimizers })
        ),
        _ => {
            println!("f_{}({}) = {}", a.r, a.n, rational_text(&res.value));
            for m in minimizers {
                println!("{m}");
            }
        }
    }
    Ok(Outcome::Pass)
}

fn search(format: Format, a: &SearchArgs) -> CmdResult {
    let mut cfg = SearchConfig::new(a.r, a.n0, a.depth, a.nmax);
    cfg.pool_cap = a.pool_cap;
    cfg.checkpoint = a.checkpoint.clone();
    let state = if a.resume {
        resume_search(
            &cfg,
            a.checkpoint.as_deref().expect("clap enforces --checkpoint"),
        )?
    } else {
        run_search(&cfg)?
    };
    let csv = table_csv(&state.transcript, a.depth);
    if let Some(path) = &a.out {
        fs::write(path, &csv)?;
    }
    let (start, levels) = transcript_levels(&state.transcript);
    let certified = certify_level_sequence(start, &levels);
    match format {
        Format::Csv => print!("{csv}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&state.transcript)?),
        Format::Text => {
            print!("{csv}");
            println!("n,level,pool,lambda,exact");
            for r in &state.transcript {
                let level = r.level.as_ref().map_or("inf".to_string(), ratio::to_text);
                println!(
                    "{},{},{},{},{}",
                    r.n,
                    level,
                    r.pool_size,
                    ratio::to_text(&r.lambda),
                    r.exact
                );
            }
            println!("level sequence certified: {certified}");
        }
    }
    Ok(verdict(certified))
}

fn parse_seed(s: &str) -> Result<(usize, usize, Rational), String> {
    let bad = || format!("seed must look like f4_20=64725/1000, got {s:?}");
    let (lhs, value) = s.split_once('=').ok_or_else(bad)?;
    let (r, n) = lhs
        .strip_prefix('f')
        .and_then(|x| x.split_once('_'))
        .ok_or_else(bad)?;
    let r = r.parse().map_err(|_| bad())?;
    let n = n.parse().map_err(|_| bad())?;
    let value = ratio::parse(value).map_err(|e| e.to_string())?;
    Ok((r, n, value))
}

fn print_ledger(format: Format, ledger: &BoundsLedger) -> Result<(), Box<dyn std::error::Error>> {
    match format {
        Format::Json => println!("{}", ledger.to_json()?),
        _ => {
            if let Some(alpha) = ledger.best_alpha() {
                print!("{}", ledger.derivation_tree(alpha.id));
                println!("alpha <= {}", rational_text(&alpha.value));
                println!("alpha <= {:.4} (4 decimals)", ratio::to_f64(&alpha.value));
            }
            for r in 3..=7 {
                if let Some(c) = ledger.best_c(r) {
                    println!("c_{r} >= {}", rational_text(&c.value));
                }
            }
        }
    }
    Ok(())
}

fn bounds(format: Format, cmd: &BoundsCmd) -> CmdResult {
    match cmd {
        BoundsCmd::Chain {
            seed,
            no_recursions,
            out,
        } => {
            let (r, n, value) = parse_seed(seed)?;
            let ledger = if *no_recursions {
                averaging_bound(r, n, &value)?
            } else {
                if r != 4 {
                    return Err("the recursion chain starts from an f_4 seed".into());
                }
                chain_bound_from(n, &value)?
            };
            if let Some(path) = out {
                fs::write(path, ledger.to_json()?)?;
            }
            print_ledger(format, &ledger)?;
            Ok(verdict(ledger.is_dag()))
        }
        BoundsCmd::Ramsey { r, ramsey } => {
            let mut table = ramsey_upper_defaults();
            for item in ramsey {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| format!("expected k=R, got {item:?}"))?;
                table.insert(k.trim().parse()?, v.trim().parse()?);
            }
            let c = ramsey_chain(*r, &table)?;
            match format {
                Format::Json => println!("{}", rational_json(&c)),
                _ => println!("{}", rational_text(&c)),
            }
            Ok(Outcome::Pass)
        }
        BoundsCmd::K20 { graph6 } => {
            let g = parse_graph(graph6)?;
            let found = find_disjoint_mono_k4(&g)?;
            match (&found, format) {
                (Some((a, b)), Format::Json) => {
                    println!("{}", serde_json::json!({ "first": a, "second": b }))
                }
                (Some((a, b)), _) => println!("{a:?} {b:?}"),
                (None, Format::Json) => println!("null"),
                (None, _) => println!("none"),
            }
            Ok(verdict(found.is_some()))
        }
    }
}

fn hbuild(format: Format, a: &HbuildArgs) -> CmdResult {
    let g = parse_graph(&a.graph6)?;
    let h = build_h(&g, a.l)?;
    let text = graph6_encode(&h.graph);
    if let Some(path) = &a.out {
        let mut f = fs::File::create(path)?;
        writeln!(f, "{text}")?;
    }
    if let Some(path) = &a.sidecar {
        fs::write(path, serde_json::to_string_pretty(&h.sidecar_json())?)?;
    }
    let (x, y) = h.decompose();
    let self_complementary = canonical_form(&h.graph) == canonical_form(&h.graph.complement());
    let bound = h_lower_bound(g.n() as u64, a.l as u64).ok();
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "graph6": text,
                "parts": h.sidecar_json(),
                "x_edges": x.edge_count(),
                "y_edges": y.edge_count(),
                "self_complementary": self_complementary,
                "pair_lower_bound": bound.as_ref().map(rational_json),
            })
        ),
        _ => {
            println!("{text}");
            println!(
                "vertices {}, edges {} (X {}, Y {})",
                h.graph.n(),
                h.graph.edge_count(),
                x.edge_count(),
                y.edge_count()
            );
            println!("self-complementary: {self_complementary}");
            if let Some(b) = bound {
                println!("cp(H) + cp(complement) >= {}", rational_text(&b));
            }
        }
    }
    Ok(Outcome::Pass)
}
