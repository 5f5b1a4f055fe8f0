//! Batch verification driver for token-graph connectivity.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use tokengraph::engine::CaseKind;
use tokengraph::verify::{self, KSelection, Mode, Status, VerificationRecord};
use tokengraph::{emit_graph6, parse_graph6_lines};

#[derive(Debug, Parser)]
#[command(name = "tokengraph", version, about = "Connectivity sweeps over k-token graphs")]
struct Cli {
    /// Print JSON records only, without the summary table.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// κ = λ = δ for F_k of every tree up to N vertices.
    Theorem {
        #[arg(long, value_name = "N")]
        n_max: usize,
    },
    /// Disjoint-path engine on every distance-2 pair of F_k(T), trees up to N vertices.
    Paths {
        #[arg(long, value_name = "N")]
        n_max: usize,
    },
    /// F_2 of two K_m joined by an edge, m in A..=B.
    Hfamily {
        #[arg(long, value_name = "A")]
        m_min: usize,
        #[arg(long, value_name = "B")]
        m_max: usize,
    },
    /// κ(F_k(G)) against δ(F_k(G)) for connected graphs of girth at least 5.
    Conjecture(ConjectureArgs),
    /// Print connected graphs of girth at least G, as graph6.
    Generate {
        #[arg(long, value_name = "N", default_value_t = 1)]
        n_min: usize,
        #[arg(long, value_name = "N")]
        n_max: usize,
        #[arg(long, value_name = "G", default_value_t = 5)]
        min_girth: usize,
    },
}

#[derive(Debug, Args)]
struct ConjectureArgs {
    /// graph6 file, one graph per line.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Only this k.
    #[arg(long)]
    k: Option<usize>,
    /// Every k in 2..=n-2 (the default).
    #[arg(long, conflicts_with = "k")]
    all_k: bool,
}

enum Failure {
    Usage(anyhow::Error),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage<T>(r: Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j as usize);
    }
    let pool = usage(pool.build().context("building the worker pool"))?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());

    let records = match &cli.command {
        Command::Theorem { n_max } => usage(pool.install(|| verify::cmd_theorem(*n_max)).map_err(Into::into))?,
        Command::Paths { n_max } => usage(pool.install(|| verify::cmd_paths(*n_max)).map_err(Into::into))?,
        Command::Hfamily { m_min, m_max } => {
            usage(pool.install(|| verify::cmd_hfamily(*m_min, *m_max)).map_err(Into::into))?
        }
        Command::Conjecture(args) => {
            let graphs = usage(read_graphs(&args.input))?;
            let ks = match args.k {
                Some(k) => KSelection::Single(k),
                None => KSelection::All,
            };
            pool.install(|| verify::cmd_conjecture(&graphs, ks))
        }
        Command::Generate { n_min, n_max, min_girth } => {
            usage(generate(&mut out, *n_min, *n_max, *min_girth))?;
            out.flush()?;
            return Ok(ExitCode::SUCCESS);
        }
    };

    for r in &records {
        let line = serde_json::to_string(r).map_err(io::Error::other)?;
        writeln!(out, "{line}")?;
    }
    if !cli.json {
        writeln!(out)?;
        print_summary(&mut out, &records)?;
    }
    out.flush()?;

    let violated = records.iter().any(|r| r.status == Status::Violated);
    let gating = matches!(cli.command, Command::Theorem { .. } | Command::Paths { .. } | Command::Hfamily { .. });
    Ok(if violated && gating { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn read_graphs(path: &PathBuf) -> Result<Vec<tokengraph::Graph>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match parse_graph6_lines(&text) {
        Ok(g) => Ok(g),
        Err((line, e)) => bail!("{}:{}: {e}", path.display(), line),
    }
}

fn generate(out: &mut impl Write, n_min: usize, n_max: usize, min_girth: usize) -> Result<()> {
    if n_min < 1 || n_max > 9 || n_min > n_max {
        bail!("need 1 <= n_min <= n_max <= 9, got {n_min}..={n_max}");
    }
    for n in n_min..=n_max {
        for g in tokengraph::enumerate_graphs(n) {
            if g.is_connected() && g.girth().is_none_or(|girth| girth >= min_girth) {
                writeln!(out, "{}", emit_graph6(&g)?)?;
            }
        }
    }
    Ok(())
}

fn print_summary(out: &mut impl Write, records: &[VerificationRecord]) -> io::Result<()> {
    let s = verify::summarize(records);
    let mode = records.first().map(|r| r.mode);
    writeln!(out, "{:<12} {:>8} {:>10} {:>9} {:>8}", "mode", "records", "confirmed", "violated", "skipped")?;
    let name = match mode {
        Some(Mode::Theorem) => "theorem",
        Some(Mode::Paths) => "paths",
        Some(Mode::Hfamily) => "hfamily",
        Some(Mode::Conjecture) => "conjecture",
        None => "-",
    };
    writeln!(out, "{:<12} {:>8} {:>10} {:>9} {:>8}", name, s.records, s.confirmed, s.violated, s.skipped)?;

    match mode {
        Some(Mode::Paths) => {
            let p = verify::aggregate_paths(records);
            writeln!(out)?;
            writeln!(out, "distance-2 pairs  {} (case 1: {}, case 2: {})", p.pairs, p.case1_pairs, p.case2_pairs)?;
            writeln!(out, "paths audited     {} (trace failures: {})", p.traced_paths, p.trace_failures)?;
            writeln!(out, "step-1 size != m  {}", p.step1_mismatches)?;
            let used: Vec<String> = p.supplemental.iter().map(|(l, c)| format!("{l}:{c}")).collect();
            writeln!(out, "step-2 paths      {}", if used.is_empty() { "none".into() } else { used.join(" ") })?;
            for (case, hist, bound) in [(CaseKind::Case1, &p.slack_case1, 2), (CaseKind::Case2, &p.slack_case2, 1)] {
                let cells: Vec<String> = hist.iter().map(|(s, c)| format!("{s}:{c}")).collect();
                let max = p.max_slack(case).map_or("-".into(), |m| m.to_string());
                writeln!(out, "{case:?} δ-m      max {max} (bound {bound}); histogram {}", cells.join(" "))?;
            }
        }
        Some(Mode::Hfamily) => {
            writeln!(out)?;
            writeln!(out, "{:>3} {:>6} {:>6} {:>6}   expected κ λ δ", "m", "κ", "λ", "δ")?;
            for r in records {
                let e = r.expected.as_ref();
                writeln!(
                    out,
                    "{:>3} {:>6} {:>6} {:>6}   {} {} {}",
                    r.m.unwrap_or(0),
                    show(r.kappa),
                    show(r.lambda),
                    show(r.delta),
                    show(e.map(|e| e.kappa)),
                    show(e.map(|e| e.lambda)),
                    show(e.map(|e| e.delta)),
                )?;
            }
        }
        _ => {}
    }
    for r in records.iter().filter(|r| r.status == Status::Violated) {
        writeln!(out, "VIOLATED {} k={} {}", r.graph_id, r.k, r.reason.as_deref().unwrap_or(""))?;
    }
    Ok(())
}

fn show(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}
