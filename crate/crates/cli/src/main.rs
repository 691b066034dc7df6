//! `degseq` command-line front end.
//!
//! Exit codes: 0 success, 1 non-graphical input, 2 usage or input error,
//! 3 internal invariant breach.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use degseq::bench::{bench_eg, bench_gen, BenchError, BenchReport};
use degseq::degseq::parse_degrees;
use degseq::edgeswap::randomize;
use degseq::generator::{generate_with, GenError, GenOptions};
use degseq::metrics::{report, MetricsOptions, MetricsReport};
use degseq::rng::{stream_rng, Stream};
use degseq::synth::{from_graph, synthesize, SynthError, SynthKind};
use degseq::team::default_workers;
use degseq::{check_degrees, parse_sequence, DegreeSequence, Graph, GraphicalityReport, Mode, WorkerTeam};

#[derive(Parser)]
#[command(name = "degseq", version, about = "Graphicality tests and exact-degree random graphs")]
struct Cli {
    /// Worker threads for parallel mode.
    #[arg(long, global = true, env = "DEGSEQ_WORKERS")]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Seq)]
    mode: ModeArg,
    /// Report timings and extra diagnostics on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Seq,
    Par,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a degree sequence is graphical.
    Check { degfile: PathBuf },
    /// Generate a random simple graph with the given degrees.
    Generate {
        degfile: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        record: Option<PathBuf>,
        /// Disable connecting all candidates at once when they are forced.
        #[arg(long)]
        no_shortcut: bool,
    },
    /// Randomize a graph by degree-preserving edge swaps.
    Swap {
        edgefile: PathBuf,
        #[arg(long)]
        seed: u64,
        /// Accepted swaps to perform; defaults to ceil(m/2 * ln m).
        #[arg(long)]
        swaps: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural metrics of a graph.
    Metrics {
        edgefile: PathBuf,
        /// Metric families to skip (only `cliques` is skippable).
        #[arg(long, value_enum)]
        skip: Vec<Skippable>,
        /// Write the clustering histogram as `bin_lower,count` CSV.
        #[arg(long)]
        hist: Option<PathBuf>,
        /// Enumerate cliques even on very large graphs.
        #[arg(long)]
        allow_large: bool,
    },
    /// Strong-scaling benchmark of the graphicality test.
    BenchEg {
        degfile: PathBuf,
        #[command(flatten)]
        bench: BenchArgs,
    },
    /// Strong-scaling benchmark of graph generation.
    BenchGen {
        degfile: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        bench: BenchArgs,
    },
    /// Write a synthetic graphical degree sequence.
    Synth {
        #[command(subcommand)]
        kind: SynthCommand,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Skippable {
    Cliques,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated worker counts, ascending, starting at 1.
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 4])]
    list: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    header: bool,
}

#[derive(Subcommand)]
enum SynthCommand {
    Powerlaw {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2.5)]
        gamma: f64,
        /// Largest degree; defaults to floor(sqrt(n)).
        #[arg(long)]
        dmax: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
    },
    FromGraph { edgefile: PathBuf },
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 2,
            error: error.into(),
        }
    }

    fn internal(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 3,
            error: error.into(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::input)
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .with_context(|| format!("writing {}", p.display()))
            .map_err(Failure::input),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_sequence(path: &Path) -> Result<DegreeSequence, Failure> {
    parse_sequence(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::input)
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse_edge_list(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::input)
}

fn verdict_line(r: &GraphicalityReport) -> String {
    if r.graphical {
        format!("graphical (durfee={})", r.durfee)
    } else if !r.parity_ok {
        "not graphical: odd degree sum".to_string()
    } else {
        let v = r.failing.expect("a failing inequality");
        format!(
            "not graphical: inequality k={} fails ({} > {})",
            v.k, v.lhs, v.rhs
        )
    }
}

fn run(cli: Cli) -> Outcome {
    let workers = cli.workers.unwrap_or_else(default_workers);
    if workers == 0 {
        return Err(Failure::input(anyhow!("--workers must be at least 1")));
    }
    let team = match cli.mode {
        ModeArg::Par => Some(WorkerTeam::new(workers).map_err(Failure::internal)?),
        ModeArg::Seq => None,
    };
    let mode = team.as_ref().map_or(Mode::Sequential, Mode::Parallel);
    let verbose = cli.verbose;

    match cli.command {
        Command::Check { degfile } => {
            // Entries above n-1 are accepted here and simply fail the test.
            let text = read(&degfile)?;
            let degrees = parse_degrees(&text)
                .with_context(|| format!("parsing {}", degfile.display()))
                .map_err(Failure::input)?;
            if degrees.is_empty() {
                return Err(Failure::input(anyhow!("{}: no degrees", degfile.display())));
            }
            let start = Instant::now();
            let r = check_degrees(&degrees, mode);
            if verbose {
                eprintln!("check: n={} in {:?}", degrees.len(), start.elapsed());
            }
            println!("{}", verdict_line(&r));
            Ok(if r.graphical { 0 } else { 1 })
        }
        Command::Generate {
            degfile,
            seed,
            out,
            record,
            no_shortcut,
        } => {
            let seq = load_sequence(&degfile)?;
            let options = GenOptions {
                batch_shortcut: !no_shortcut,
            };
            let start = Instant::now();
            let (g, rec) = match generate_with(&seq, seed, mode, options) {
                Ok(x) => x,
                Err(GenError::NotGraphical(r)) => {
                    eprintln!("{}", verdict_line(&r));
                    return Ok(1);
                }
                Err(e) => return Err(Failure::internal(e)),
            };
            if verbose {
                eprintln!(
                    "generate: n={} m={} in {:?}",
                    g.vertex_count(),
                    g.edge_count(),
                    start.elapsed()
                );
            }
            if g.degrees() != seq.degrees() {
                return Err(Failure::internal(anyhow!("generated degrees differ from input")));
            }
            write_or_print(out.as_deref(), &g.to_edge_list())?;
            if let Some(path) = record {
                let doc = serde_json::json!({
                    "seed": rec.seed,
                    "n": g.vertex_count(),
                    "m": g.edge_count(),
                    "log_prob": rec.log_prob,
                    "shortcut_batches": rec.shortcut_batches,
                });
                let text = serde_json::to_string_pretty(&doc).map_err(Failure::internal)? + "\n";
                write_or_print(Some(&path), &text)?;
            }
            Ok(0)
        }
        Command::Swap {
            edgefile,
            seed,
            swaps,
            out,
        } => {
            let g = load_graph(&edgefile)?;
            let mut rng = stream_rng(seed, Stream::Swap);
            let start = Instant::now();
            let (h, stats) = randomize(&g, swaps, &mut rng).map_err(Failure::input)?;
            if verbose {
                eprintln!("swap: {:?}", start.elapsed());
            }
            if h.degrees() != g.degrees() {
                return Err(Failure::internal(anyhow!("edge swaps changed a degree")));
            }
            if stats.capped {
                eprintln!(
                    "warning: attempt cap reached after {} accepted swaps",
                    stats.accepted
                );
            }
            let lines = format!(
                "attempted {}\naccepted {}\nrejected_selfloop {}\nrejected_parallel {}\nrejected_degenerate {}\ncapped {}\n",
                stats.attempted,
                stats.accepted,
                stats.rejected_selfloop,
                stats.rejected_parallel,
                stats.rejected_degenerate,
                stats.capped
            );
            match out {
                Some(path) => {
                    write_or_print(Some(&path), &h.to_edge_list())?;
                    print!("{lines}");
                }
                None => {
                    // Edges go to stdout, so the stats move to stderr.
                    print!("{}", h.to_edge_list());
                    eprint!("{lines}");
                }
            }
            Ok(0)
        }
        Command::Metrics {
            edgefile,
            skip,
            hist,
            allow_large,
        } => {
            let g = load_graph(&edgefile)?;
            let options = MetricsOptions {
                skip_cliques: skip.contains(&Skippable::Cliques),
                allow_large,
            };
            let start = Instant::now();
            let r = report(&g, options, mode).map_err(Failure::input)?;
            if verbose {
                eprintln!("metrics: {:?}", start.elapsed());
            }
            print!("{}", format_metrics(&r, &g));
            if let Some(path) = hist {
                let mut csv = String::new();
                for (i, count) in r.clustering_histogram.iter().enumerate() {
                    csv.push_str(&format!("{:.2},{count}\n", i as f64 / 100.0));
                }
                write_or_print(Some(&path), &csv)?;
            }
            Ok(0)
        }
        Command::BenchEg { degfile, bench } => {
            let degrees = parse_degrees(&read(&degfile)?).map_err(Failure::input)?;
            let r = bench_eg(&degrees, &bench.list, bench.reps).map_err(bench_failure)?;
            emit_bench(&r, &bench, verbose)
        }
        Command::BenchGen {
            degfile,
            seed,
            bench,
        } => {
            let seq = load_sequence(&degfile)?;
            let r = bench_gen(&seq, seed, &bench.list, bench.reps).map_err(bench_failure)?;
            emit_bench(&r, &bench, verbose)
        }
        Command::Synth { kind, out } => {
            let seq = match kind {
                SynthCommand::Powerlaw {
                    n,
                    gamma,
                    dmax,
                    seed,
                } => synthesize(SynthKind::PowerLaw { gamma, dmax }, n, seed),
                SynthCommand::Regular { n, d } => synthesize(SynthKind::Regular { d }, n, 0),
                SynthCommand::FromGraph { edgefile } => Ok(from_graph(&load_graph(&edgefile)?)),
            };
            let seq = seq.map_err(|e| match e {
                SynthError::InvalidParameters(_) => Failure::input(e),
                SynthError::Ungraphable { .. } => Failure { code: 1, error: e.into() },
            })?;
            write_or_print(out.as_deref(), &seq.to_string())?;
            Ok(0)
        }
    }
}

fn bench_failure(e: BenchError) -> Failure {
    match e {
        BenchError::EquivalenceBreach { .. } | BenchError::Team(_) => Failure::internal(e),
        BenchError::Generation(GenError::NotGraphical(_)) => Failure { code: 1, error: e.into() },
        BenchError::Generation(_) => Failure::internal(e),
        _ => Failure::input(e),
    }
}

fn emit_bench(r: &BenchReport, args: &BenchArgs, verbose: bool) -> Outcome {
    if verbose {
        eprintln!("bench {} on {}, {} reps", r.target, r.input, r.reps);
        for row in &r.rows {
            eprintln!("  workers={} timings={:?}", row.workers, row.timings);
        }
    }
    write_or_print(args.csv.as_deref(), &r.to_csv(args.header))?;
    Ok(0)
}

fn format_metrics(r: &MetricsReport, g: &Graph) -> String {
    let mut degrees = g.degrees();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let mut histogram: Vec<(u64, usize)> = Vec::new();
    for &d in &degrees {
        match histogram.last_mut() {
            Some((value, count)) if *value == d => *count += 1,
            _ => histogram.push((d, 1)),
        }
    }
    let join = |items: Vec<String>| items.join(" ");
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".to_string());
    let rows: Vec<(&str, String)> = vec![
        ("vertices", r.n.to_string()),
        ("edges", r.m.to_string()),
        ("degree_sequence", join(degrees.iter().map(u64::to_string).collect())),
        (
            "degree_histogram",
            join(histogram.iter().map(|(d, c)| format!("{d}:{c}")).collect()),
        ),
        ("triangles", r.triangles.to_string()),
        ("maximal_cliques", opt(r.maximal_cliques.map(|c| c.to_string()))),
        ("components", r.components.to_string()),
        ("avg_shortest_path", opt(r.path.map(|p| format!("{:.6}", p.avg_shortest_path)))),
        ("diameter", opt(r.path.map(|p| p.diameter.to_string()))),
        ("avg_betweenness", format!("{:.6e}", r.avg_betweenness)),
        ("avg_closeness", format!("{:.6}", r.avg_closeness)),
        ("avg_clustering", format!("{:.6}", r.avg_clustering)),
    ];
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}
