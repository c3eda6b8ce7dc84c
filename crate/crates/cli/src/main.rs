//! `k2t` — construct extremal graphs, measure spectral radii, test minors,
//! search, audit, and emit CSV/JSONL. Every run is reproducible from its
//! argument vector; graphs travel as graph6 lines.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use k2t::numfmt::sig12;
use k2t::{
    apply_move, audit, bounds, build_ft, enumerate_connected, exhaustive_max_jobs, ft_mu_exact,
    has_minor, k2t_minor_test_opts, local_search, parse_graph6, spectral_radius, split_params,
    write_graph6, Graph, MinorWitness, Move, SearchRecord, DEFAULT_TOL,
};

#[derive(Parser)]
#[command(
    name = "k2t",
    version,
    about = "Spectral extremal toolkit for K_{2,t}-minor-free graphs",
    after_help = "Graphs are read as graph6 lines from stdin unless --input is given.\n\
                  Exit codes: 0 success, 1 check failure or processing error, 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the extremal graph F_t(n) as a graph6 line
    Construct {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Spectral radius: exact via the family cubic (--exact with --t/--n),
    /// or numerically per input graph
    Mu {
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Evaluate mu(F_t(n)) through the closed-form cubic
        #[arg(long)]
        exact: bool,
        /// Eigensolver tolerance for the numeric path
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Closed-form bounds for (t, n): upper, lower, and (t = 3) the
    /// K_{2,3} bound
    Bounds {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minor testing: K_{2,t} via --t (with shortcuts), or an arbitrary
    /// pattern graph6 via --pattern
    Minor {
        #[arg(long)]
        t: Option<usize>,
        /// Pattern as a graph6 line (at most 12 vertices)
        #[arg(long, conflicts_with = "t")]
        pattern: Option<String>,
        /// Force witness construction even when the density shortcut fires
        #[arg(long)]
        witness: bool,
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extremal searches
    #[command(subcommand)]
    Search(SearchCmd),
    /// Run the structural audit; exits 1 when an applicable check fails
    Audit {
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// CSV grid comparing the family cubic against the bounds
    Sweep {
        #[arg(long, default_value_t = 2)]
        t_min: usize,
        #[arg(long)]
        t_max: usize,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Maximize mu over the K_{2,t}-minor-free graphs in a stream
    Exhaustive {
        #[arg(long)]
        t: usize,
        /// Expected graph order; with --builtin also the generated order
        #[arg(long)]
        n: Option<usize>,
        /// Use the built-in connected-graph generator (n <= 8) instead of
        /// reading a stream
        #[arg(long, requires = "n")]
        builtin: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hill climb on mu with the structural moves from a start graph
    Local {
        #[arg(long)]
        t: usize,
        /// Order for the generated start kinds
        #[arg(long)]
        n: Option<usize>,
        /// Start kind: star | ft | hub-path | random
        #[arg(long, default_value = "star")]
        start: StartKind,
        /// Explicit start graph as a graph6 line (overrides --start)
        #[arg(long)]
        start_g6: Option<String>,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        /// Seed for the random start kind
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Table,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum StartKind {
    Star,
    Ft,
    HubPath,
    Random,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct { t, n, output } => {
            let g = build_ft(t, n)?;
            write_out(output.as_deref(), &format!("{}\n", write_graph6(&g)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mu {
            t,
            n,
            exact,
            tol,
            input,
            output,
        } => {
            if exact {
                let (Some(t), Some(n)) = (t, n) else {
                    usage_exit("--exact requires both --t and --n");
                };
                let mu = ft_mu_exact(t, n)?;
                write_out(output.as_deref(), &format!("{}\n", sig12(mu)))?;
            } else {
                let mut out = String::from("graph6,mu\n");
                for (line, g) in read_graphs(input.as_deref())? {
                    let r = spectral_radius(&g, tol)?;
                    out.push_str(&format!("{line},{}\n", sig12(r.mu)));
                }
                write_out(output.as_deref(), &out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { t, n, output } => {
            if t < 2 || n < 1 {
                usage_exit("bounds need t >= 2 and n >= 1");
            }
            let b = bounds(t, n);
            let mut text = format!("upper {}\n", sig12(b.upper));
            text.push_str(&format!("lower {}\n", sig12(b.lower)));
            text.push_str(&format!(
                "lower_stated_range {}\n",
                b.lower_in_stated_range
            ));
            if let Some(ysh) = b.ysh {
                text.push_str(&format!("ysh {}\n", sig12(ysh)));
            }
            write_out(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Minor {
            t,
            pattern,
            witness,
            input,
            output,
        } => {
            let pattern = match (&t, &pattern) {
                (Some(_), None) => None,
                (None, Some(p)) => Some(parse_graph6(p).context("pattern graph6")?),
                _ => usage_exit("minor needs exactly one of --t or --pattern"),
            };
            let mut out = String::new();
            for (line, g) in read_graphs(input.as_deref())? {
                let verdict = match (&pattern, t) {
                    (Some(p), _) => has_minor(&g, p)?,
                    (None, Some(t)) => k2t_minor_test_opts(&g, t, witness)?,
                    _ => unreachable!(),
                };
                let word = match &verdict {
                    MinorWitness::Present { .. } => "present",
                    MinorWitness::PresentByDensity => "present-by-density",
                    MinorWitness::Absent => "absent",
                };
                out.push_str(&format!("{line} {word}"));
                if witness {
                    if let MinorWitness::Present { branch_sets } = &verdict {
                        out.push(' ');
                        out.push_str(&serde_json::to_string(branch_sets)?);
                    }
                }
                out.push('\n');
            }
            write_out(output.as_deref(), &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search(cmd) => run_search(cmd),
        Command::Audit {
            t,
            format,
            input,
            output,
        } => {
            let mut out = String::new();
            let mut all_pass = true;
            for (_, g) in read_graphs(input.as_deref())? {
                let report = audit(&g, t)?;
                all_pass &= report.all_applicable_pass();
                match format {
                    ReportFormat::Table => out.push_str(&report.to_table()),
                    ReportFormat::Jsonl => {
                        out.push_str(&report.to_jsonl());
                        out.push('\n');
                    }
                }
            }
            write_out(output.as_deref(), &out)?;
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Sweep {
            t_min,
            t_max,
            n_min,
            n_max,
            output,
        } => {
            if t_min < 2 || t_min > t_max || n_min > n_max {
                usage_exit("sweep needs 2 <= t-min <= t-max and n-min <= n-max");
            }
            let mut out =
                String::from("t,n,p,s,mu_exact,bound_upper,gap_upper,bound_lower,bound_ysh,equality\n");
            for t in t_min..=t_max {
                for n in n_min.max(t + 1)..=n_max {
                    let params = split_params(t, n)?;
                    let mu = ft_mu_exact(t, n)?;
                    let b = bounds(t, n);
                    out.push_str(&format!(
                        "{t},{n},{},{},{},{},{},{},{},{}\n",
                        params.p,
                        params.s,
                        sig12(mu),
                        sig12(b.upper),
                        sig12(b.upper - mu),
                        sig12(b.lower),
                        b.ysh.map(sig12).unwrap_or_default(),
                        params.s == 0
                    ));
                }
            }
            write_out(output.as_deref(), &out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_search(cmd: SearchCmd) -> Result<ExitCode> {
    match cmd {
        SearchCmd::Exhaustive {
            t,
            n,
            builtin,
            jobs,
            format,
            input,
            output,
        } => {
            let graphs: Vec<Graph> = if builtin {
                enumerate_connected(n.expect("clap enforces --n with --builtin"))?
            } else {
                let graphs = read_graphs(input.as_deref())?;
                if let (Some(n), Some((line, g))) = (n, graphs.first()) {
                    if g.n() != n {
                        bail!("stream order {} (line {line}) does not match --n {n}", g.n());
                    }
                }
                graphs.into_iter().map(|(_, g)| g).collect()
            };
            let records = exhaustive_max_jobs(graphs, t, jobs)?;
            let mut out = String::new();
            match format {
                OutFormat::Csv => {
                    out.push_str(SearchRecord::csv_header());
                    out.push('\n');
                    for r in &records {
                        out.push_str(&r.csv_row());
                        out.push('\n');
                    }
                }
                OutFormat::Jsonl => {
                    for r in &records {
                        out.push_str(&r.to_jsonl());
                        out.push('\n');
                    }
                }
            }
            write_out(output.as_deref(), &out)?;
            Ok(ExitCode::SUCCESS)
        }
        SearchCmd::Local {
            t,
            n,
            start,
            start_g6,
            max_steps,
            seed,
            output,
        } => {
            let start_graph = match start_g6 {
                Some(line) => parse_graph6(&line).context("start graph6")?,
                None => {
                    let Some(n) = n else {
                        usage_exit("generated start kinds need --n");
                    };
                    build_start(start, t, n, seed)?
                }
            };
            let record = local_search(t, &start_graph, max_steps)?;
            write_out(output.as_deref(), &format!("{}\n", record.to_jsonl()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_start(kind: StartKind, t: usize, n: usize, seed: u64) -> Result<Graph> {
    if n < 2 {
        bail!("start graphs need n >= 2");
    }
    Ok(match kind {
        StartKind::Star => Graph::star(n)?,
        StartKind::Ft => build_ft(t, n)?,
        StartKind::HubPath => Graph::complete(1)?.join(&Graph::path(n - 1)?)?,
        StartKind::Random => {
            // seeded greedy fill: random feasible additions over a spanning star
            let mut g = Graph::star(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut non_edges: Vec<(usize, usize)> = (1..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            non_edges.shuffle(&mut rng);
            let keep = non_edges.len().min(3 * n);
            let w = vec![0.0; n];
            for &(u, v) in &non_edges[..keep] {
                let (candidate, _) = apply_move(&g, &w, &Move::AddEdge { u, v })?;
                if !k2t::k2t_minor_test(&candidate, t)?.is_present() {
                    g = candidate;
                }
            }
            g
        }
    })
}

fn usage_exit(msg: &str) -> ! {
    eprintln!("usage error: {msg}");
    std::process::exit(2);
}

/// Read graph6 lines (one graph per line) from a file or stdin. A leading
/// ">>graph6<<" file header is tolerated; blank lines are skipped.
fn read_graphs(input: Option<&std::path::Path>) -> Result<Vec<(String, Graph)>> {
    let text = match input {
        Some(path) => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        None => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            buf
        }
    };
    let mut out = Vec::new();
    for raw in text.lines() {
        let line = raw.strip_prefix(">>graph6<<").unwrap_or(raw).trim();
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line).with_context(|| format!("line {line:?}"))?;
        out.push((line.to_string(), g));
    }
    Ok(out)
}

fn write_out(output: Option<&std::path::Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
