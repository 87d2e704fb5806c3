use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sudoku_phase::backbone::backbone_report;
use sudoku_phase::grid::serialize_cells;
use sudoku_phase::lp::{build_ilp, is_integral, solve_relaxation_with, LpOptions, LpStatus, DEFAULT_INTEGRALITY_TOL};
use sudoku_phase::spectral::ensemble_entropy;
use sudoku_phase::strategy::{strategy_profile, Strategy};
use sudoku_phase::{serialize_puzzle, BoardSpec, Puzzle, Solver, SolverConfig, Variant};
use sudoku_phase_lab::critical::{critical_point, kind_of, CriticalKind};
use sudoku_phase_lab::ensemble::solver_seed;
use sudoku_phase_lab::{
    generate_ensemble, ingest_dataset, parse_clue_counts, read_csv, sweep, write_csv, LabError, Metric, SweepConfig,
};

#[derive(Parser)]
#[command(
    name = "sudoku-lab",
    version,
    about = "Random Sudoku and partial Latin square experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Sudoku,
    Latin,
}

#[derive(Args, Clone)]
struct Board {
    #[arg(long, value_enum, default_value = "sudoku")]
    variant: VariantArg,
    /// Block size for Sudoku (3 gives 9×9), side for Latin squares.
    #[arg(long, default_value_t = 3)]
    order: usize,
}

impl Board {
    fn spec(&self) -> Result<BoardSpec, LabError> {
        let variant = match self.variant {
            VariantArg::Sudoku => Variant::Sudoku,
            VariantArg::Latin => Variant::LatinSquare,
        };
        BoardSpec::new(variant, self.order).map_err(|e| LabError::Config(e.to_string()))
    }
}

/// Puzzles read from a file, or a generated ensemble.
#[derive(Args, Clone)]
struct Source {
    #[command(flatten)]
    board: Board,
    /// Puzzle file, one puzzle per line.
    #[arg(long = "in", conflicts_with = "clues")]
    input: Option<PathBuf>,
    /// With `--in`, write the clue-count histogram of the file as CSV.
    #[arg(long, requires = "input")]
    histogram: Option<PathBuf>,
    #[arg(long)]
    clues: Option<usize>,
    #[arg(long)]
    ensemble: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Source {
    fn load(&self) -> Result<(BoardSpec, Vec<Puzzle>), LabError> {
        let spec = self.board.spec()?;
        let puzzles = match (&self.input, self.clues) {
            (Some(path), _) => {
                let data = ingest_dataset(path, spec)?;
                for (line, err) in &data.errors {
                    eprintln!("{}:{line}: {err}", path.display());
                }
                if let Some(out) = &self.histogram {
                    write_csv(out, &data.histogram_rows(spec))?;
                }
                data.puzzles
            }
            (None, Some(clues)) => {
                let size = self.ensemble.unwrap_or(1);
                generate_ensemble(spec, clues, size, self.seed)?
            }
            (None, None) => return Err(LabError::Config("give --in FILE or --clues N".into())),
        };
        Ok((spec, puzzles))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded ensemble of random puzzles, one per line.
    Generate {
        #[command(flatten)]
        board: Board,
        #[arg(long)]
        clues: usize,
        #[arg(long, default_value_t = 1)]
        ensemble: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve puzzles exactly and print solutions with search statistics.
    Solve {
        #[command(flatten)]
        source: Source,
        /// Also count solutions up to this cap.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Backbone size and fraction of each puzzle.
    Backbone {
        #[command(flatten)]
        source: Source,
    },
    /// Solve each puzzle's assignment relaxation and report integrality.
    Lp {
        #[command(flatten)]
        source: Source,
        /// Write the first puzzle's model in CPLEX LP format.
        #[arg(long)]
        export: Option<PathBuf>,
        /// Keep clue fixings as rows instead of substituting them out.
        #[arg(long)]
        full: bool,
    },
    /// Spectral entropy of the ensemble of solutions.
    Entropy {
        #[command(flatten)]
        source: Source,
    },
    /// Strategy frequencies over the puzzles.
    Strategies {
        #[command(flatten)]
        source: Source,
    },
    /// Run metrics over a range of clue counts and write the CSV table.
    Sweep {
        #[command(flatten)]
        board: Board,
        /// Clue counts, e.g. `17-50`, `5-60:5` or `0,10,20-25`.
        #[arg(long)]
        clues: String,
        /// Instances per clue count (default 1000 up to 9×9, 100 beyond).
        #[arg(long)]
        ensemble: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated subset of hardness,backbone,lp,entropy,strategies.
        #[arg(long, default_value = "hardness")]
        metrics: String,
        /// Count solutions up to this cap in the hardness metric.
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Also store the solved grids behind the entropy metric.
        #[arg(long)]
        grids_out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Solve relaxations without substituting clue fixings out.
        #[arg(long)]
        lp_full: bool,
    },
    /// Locate the critical clue count of a metric in a sweep CSV.
    Critical {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        metric: String,
        #[arg(long, default_value = "mean")]
        statistic: String,
        /// Restrict to one board, e.g. `sudoku-3`.
        #[arg(long)]
        spec_id: Option<String>,
    },
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|source| LabError::Write {
                path: path.clone(),
                source,
            })
            .map_err(Into::into),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate {
            board,
            clues,
            ensemble,
            seed,
            out,
        } => {
            let puzzles = generate_ensemble(board.spec()?, clues, ensemble, seed)?;
            let text: String = puzzles.iter().map(|p| serialize_puzzle(p) + "\n").collect();
            write_output(out.as_ref(), &text)?;
        }
        Command::Solve { source, cap } => {
            let (_, puzzles) = source.load()?;
            for (t, p) in puzzles.iter().enumerate() {
                let solver = Solver::new(SolverConfig::seeded(solver_seed(source.seed, t)));
                match solver.solve_one(p) {
                    Ok((grid, stats)) => {
                        print!(
                            "{}  backtracks={} nodes={}",
                            serialize_cells(&grid),
                            stats.backtracks,
                            stats.nodes
                        );
                        if let Some(cap) = cap {
                            let (count, _) = solver.count_solutions(p, cap);
                            let bound = if count >= cap { ">=" } else { "=" };
                            print!(" solutions{bound}{count}");
                        }
                        println!();
                    }
                    Err(e) => return Err(data_error(format!("puzzle {t}: {e}"))),
                }
            }
        }
        Command::Backbone { source } => {
            let (_, puzzles) = source.load()?;
            println!("puzzle,clues,empty,backbone_size,backbone_fraction");
            for (t, p) in puzzles.iter().enumerate() {
                let r = backbone_report(p).map_err(data_error)?;
                println!(
                    "{t},{},{},{},{}",
                    p.clue_count(),
                    r.empty_count,
                    r.backbone_size,
                    r.backbone_fraction
                );
            }
        }
        Command::Lp { source, export, full } => {
            let (_, puzzles) = source.load()?;
            if let (Some(path), Some(first)) = (&export, puzzles.first()) {
                write_output(Some(path), &build_ilp(first).to_lp_format())?;
            }
            let options = LpOptions {
                eliminate_fixings: !full,
                ..LpOptions::default()
            };
            println!("puzzle,clues,status,integral,max_fractionality,max_residual,pivots");
            for (t, p) in puzzles.iter().enumerate() {
                let sol = solve_relaxation_with(&build_ilp(p), options).map_err(internal_error)?;
                let (status, integral) = match sol.status {
                    LpStatus::Feasible => (
                        "feasible",
                        is_integral(&sol, DEFAULT_INTEGRALITY_TOL).map_err(internal_error)?,
                    ),
                    LpStatus::Infeasible => ("infeasible", false),
                };
                println!(
                    "{t},{},{status},{integral},{},{},{}",
                    p.clue_count(),
                    sol.max_fractionality,
                    sol.max_residual,
                    sol.pivots
                );
            }
        }
        Command::Entropy { source } => {
            let (_, puzzles) = source.load()?;
            let h = ensemble_entropy(&puzzles, source.seed).map_err(data_error)?;
            println!("entropy={h} samples={}", puzzles.len());
        }
        Command::Strategies { source } => {
            let (_, puzzles) = source.load()?;
            let profile = strategy_profile(&puzzles, source.seed).map_err(data_error)?;
            println!("strategy,frequency");
            for s in Strategy::ALL {
                println!("{},{}", s.name(), profile.frequency[s.index()]);
            }
            println!(
                "distinct_required mean={} variance={}",
                profile.distinct_mean, profile.distinct_variance
            );
        }
        Command::Sweep {
            board,
            clues,
            ensemble,
            seed,
            metrics,
            cap,
            out,
            grids_out,
            threads,
            lp_full,
        } => {
            let spec = board.spec()?;
            let mut selected: Vec<Metric> = metrics.split(',').map(|m| m.trim().parse()).collect::<Result<_, _>>()?;
            selected.sort();
            selected.dedup();
            let config = SweepConfig {
                solution_cap: cap,
                output: Some(out.clone()),
                grids_output: grids_out,
                lp_eliminate_fixings: !lp_full,
                ..SweepConfig::new(
                    spec,
                    parse_clue_counts(&clues)?,
                    ensemble.unwrap_or_else(|| SweepConfig::default_ensemble(spec)),
                    seed,
                    &selected,
                )
            };
            let rows = match threads {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| LabError::Config(e.to_string()))?
                    .install(|| sweep(&config))?,
                None => sweep(&config)?,
            };
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
        }
        Command::Critical {
            input,
            metric,
            statistic,
            spec_id,
        } => {
            let mut rows = read_csv(&input)?;
            if let Some(id) = &spec_id {
                rows.retain(|r| &r.spec_id == id);
            }
            let x = critical_point(&rows, &metric, &statistic)?;
            let how = match kind_of(&metric) {
                CriticalKind::Peak => "argmax",
                CriticalKind::HalfCrossing => "half_crossing",
            };
            println!("{metric},{statistic},{how},{x}");
        }
    }
    Ok(())
}

/// Failures caused by the input data (for example unsatisfiable puzzles).
#[derive(Debug)]
struct DataError(String);

impl std::fmt::Display for DataError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for DataError {}

fn data_error(e: impl std::fmt::Display) -> anyhow::Error {
    DataError(e.to_string()).into()
}

fn internal_error(e: impl std::fmt::Display) -> anyhow::Error {
    anyhow::anyhow!("internal failure: {e}")
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(lab) = err.downcast_ref::<LabError>() {
        lab.exit_code() as u8
    } else if err.downcast_ref::<DataError>().is_some() {
        2
    } else {
        3
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
