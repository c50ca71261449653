use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use coordgame::catalogue::{build_census, enumerate_equilibrium_partitions};
use coordgame::dynamics::{run, RunParams, StrategyProfile};
use coordgame::experiments::{
    basin_sweep, connectedness_probability, cycle_census, estimate_basin, summarize_heatmap, trial_outcomes, Bins,
    SweepAxis, SweepConfig,
};
use coordgame::graph::Graph;
use coordgame::io::{
    census_json, emit_graph6, emit_partition_dot, fmt_g17, parse_graph6, write_class_table_csv, write_heatmap_csv,
    write_part_table_csv, write_sweep_csv,
};
use coordgame::rng::{derive_key, stream, DEFAULT_SEED, TRIAL_DOMAIN};

/// Best-response dynamics and equilibrium partitions of the coordination
/// game with neutral options.
#[derive(Parser, Debug)]
#[command(name = "coordgame", version)]
struct Cli {
    /// Master seed for every random stream.
    #[arg(long, global = true, env = "COORDGAME_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Equilibrium classes of every connected graph up to an order.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_n: u64,
        /// JSON output (default stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the class-count table as CSV.
        #[arg(long)]
        class_table: Option<PathBuf>,
        /// Also write the part-count table as CSV.
        #[arg(long)]
        part_table: Option<PathBuf>,
    },
    /// Equilibrium partition classes of one graph.
    Equilibria {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value_t = EqFormat::Json)]
        format: EqFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run trajectories and print each outcome.
    Simulate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Initial profile as comma-separated strategy ids; random when absent.
        #[arg(long, value_delimiter = ',')]
        init: Option<Vec<u32>>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate the consensus basin of one graph.
    Basin {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep random graphs over orders and a density or mean-degree grid.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<usize>,
        /// Expected mean degrees (p = d/(n-1)).
        #[arg(long, value_delimiter = ',', conflicts_with = "densities", required_unless_present = "densities")]
        mean_degrees: Option<Vec<f64>>,
        /// Edge probabilities.
        #[arg(long, value_delimiter = ',')]
        densities: Option<Vec<f64>>,
        #[arg(long, default_value_t = 10)]
        graphs: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Redraw disconnected graphs.
        #[arg(long)]
        connected_only: bool,
        #[arg(long, default_value_t = 100)]
        max_attempts: usize,
        #[command(flatten)]
        run: RunArgs,
        /// Record CSV (default stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Heatmap CSV over (order, unit mean-degree bin).
        #[arg(long)]
        heatmap: Option<PathBuf>,
        /// Explicit heatmap bin edges instead of unit-width bins.
        #[arg(long, value_delimiter = ',')]
        bin_edges: Option<Vec<f64>>,
        /// Cycle summary JSON.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Probability that G(n, p) is connected.
    Connectivity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphArg {
    /// Graph in graph6.
    #[arg(long)]
    graph6: Option<String>,
    /// File whose first line is a graph6 string.
    #[arg(long)]
    graph6_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Strategies in random initial profiles (default: graph order).
    #[arg(long)]
    strategies: Option<usize>,
    #[arg(long, default_value_t = coordgame::dynamics::DEFAULT_MAX_STEPS)]
    max_steps: usize,
    #[arg(long, default_value_t = coordgame::dynamics::DEFAULT_WINDOW)]
    window: usize,
    #[arg(long, default_value_t = coordgame::dynamics::DEFAULT_MAX_PERIOD)]
    max_period: usize,
}

impl RunArgs {
    fn params(&self) -> RunParams {
        RunParams {
            max_steps: self.max_steps,
            window: self.window,
            max_period: self.max_period,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EqFormat {
    Json,
    Dot,
}

/// Marks errors caused by the caller's input (exit code 2).
#[derive(Debug)]
struct Usage(anyhow::Error);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T, E: Into<anyhow::Error>>(r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| Usage(e.into()).into())
}

fn load_graph(arg: &GraphArg) -> Result<Graph> {
    let text = match (&arg.graph6, &arg.graph6_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => {
            let body = usage(fs::read_to_string(path).with_context(|| format!("reading {}", path.display())))?;
            body.lines().next().unwrap_or("").to_string()
        }
        (None, None) => unreachable!("clap requires one graph source"),
    };
    usage(parse_graph6(&text))
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn json_bytes<T: serde::Serialize + ?Sized>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s.into_bytes()
}

fn strategies(run: &RunArgs, g: &Graph) -> usize {
    run.strategies.unwrap_or(g.order())
}

fn execute(cli: Cli) -> Result<()> {
    let seed = cli.seed;
    match cli.command {
        Command::Census {
            max_n,
            out,
            class_table,
            part_table,
        } => {
            let census = usage(build_census(max_n as usize))?;
            if let Some(p) = class_table {
                let mut buf = Vec::new();
                write_class_table_csv(&mut buf, &census)?;
                emit(Some(&p), &buf)?;
            }
            if let Some(p) = part_table {
                let mut buf = Vec::new();
                write_part_table_csv(&mut buf, &census)?;
                emit(Some(&p), &buf)?;
            }
            let mut text = census_json(&census);
            text.push('\n');
            emit(out.as_deref(), text.as_bytes())
        }
        Command::Equilibria { graph, format, out } => {
            let g = load_graph(&graph)?;
            if !g.is_connected() {
                return Err(Usage(anyhow::anyhow!("equilibrium classes are catalogued for connected graphs only")).into());
            }
            let classes = enumerate_equilibrium_partitions(&g);
            let bytes = match format {
                EqFormat::Json => json_bytes(&json!({
                    "graph6": emit_graph6(&g),
                    "n": g.order(),
                    "indecomposable": classes.len() == 1,
                    "classes": classes,
                })),
                EqFormat::Dot => classes
                    .iter()
                    .map(|p| emit_partition_dot(&g, p))
                    .collect::<String>()
                    .into_bytes(),
            };
            emit(out.as_deref(), &bytes)
        }
        Command::Simulate {
            graph,
            trials,
            init,
            run: run_args,
            out,
        } => {
            let g = load_graph(&graph)?;
            let params = run_args.params();
            usage(params.validate())?;
            let outcomes = match init {
                Some(u) => {
                    let u0 = StrategyProfile::new(u);
                    (0..trials)
                        .map(|t| {
                            let mut rng = stream(derive_key(seed, TRIAL_DOMAIN, &[0, t]));
                            usage(run(&g, &u0, &params, &mut rng))
                        })
                        .collect::<Result<Vec<_>>>()?
                }
                None => usage(trial_outcomes(&g, 0, trials as usize, strategies(&run_args, &g), &params, seed))?,
            };
            emit(out.as_deref(), &json_bytes(&outcomes))
        }
        Command::Basin {
            graph,
            trials,
            run: run_args,
            out,
        } => {
            let g = load_graph(&graph)?;
            let est = usage(estimate_basin(
                &g,
                trials as usize,
                strategies(&run_args, &g),
                &run_args.params(),
                seed,
            ))?;
            emit(out.as_deref(), &json_bytes(&est))
        }
        Command::Sweep {
            orders,
            mean_degrees,
            densities,
            graphs,
            trials,
            connected_only,
            max_attempts,
            run: run_args,
            out,
            heatmap,
            bin_edges,
            summary,
        } => {
            let axis = match (mean_degrees, densities) {
                (Some(d), _) => SweepAxis::MeanDegree(d),
                (None, Some(p)) => SweepAxis::EdgeDensity(p),
                (None, None) => unreachable!("clap requires one grid"),
            };
            let mut cfg = SweepConfig::new(orders, axis, graphs, trials, seed);
            cfg.strategies = run_args.strategies;
            cfg.params = run_args.params();
            cfg.connected_only = connected_only;
            cfg.max_attempts = max_attempts;
            let records = usage(basin_sweep(&cfg))?;
            if let Some(p) = heatmap {
                let bins = bin_edges.map_or(Bins::UnitWidth, Bins::Edges);
                let cells = usage(summarize_heatmap(&records, &bins))?;
                let mut buf = Vec::new();
                write_heatmap_csv(&mut buf, &cells)?;
                emit(Some(&p), &buf)?;
            }
            if let Some(p) = summary {
                emit(Some(&p), &json_bytes(&cycle_census(&records)))?;
            }
            let mut buf = Vec::new();
            write_sweep_csv(&mut buf, &records)?;
            emit(out.as_deref(), &buf)
        }
        Command::Connectivity { n, p } => {
            let v = usage(connectedness_probability(n, p))?;
            emit(None, format!("{}\n", fmt_g17(v)).as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
