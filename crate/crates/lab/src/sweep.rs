use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use sudoku_phase::backbone::backbone_report;
use sudoku_phase::grid::serialize_cells;
use sudoku_phase::lp::{
    build_ilp, is_integral, solve_relaxation_with, LpOptions, LpStatus, DEFAULT_INTEGRALITY_TOL, DEFAULT_RESIDUAL_TOL,
};
use sudoku_phase::spectral::{mean_matrix, spectral_summary};
use sudoku_phase::strategy::{strategy_solve, Strategy};
use sudoku_phase::{count_solutions, BoardSpec, Grid, Puzzle, Solver, SolverConfig};

use crate::ensemble::{ensemble_grids, puncture_all, solver_seed};
use crate::error::InstanceError;
use crate::table::{write_csv, SweepRow};
use crate::LabError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Hardness,
    Backbone,
    Lp,
    Entropy,
    Strategies,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Hardness,
        Metric::Backbone,
        Metric::Lp,
        Metric::Entropy,
        Metric::Strategies,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Hardness => "hardness",
            Metric::Backbone => "backbone",
            Metric::Lp => "lp",
            Metric::Entropy => "entropy",
            Metric::Strategies => "strategies",
        }
    }
}

impl FromStr for Metric {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| LabError::Config(format!("unknown metric {s:?}")))
    }
}

/// Parses clue counts such as `17-50`, `5-60:5` or `0,10,20-25`.
pub fn parse_clue_counts(text: &str) -> Result<Vec<usize>, LabError> {
    let bad = || LabError::Config(format!("bad clue counts {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        let (range, step) = match part.split_once(':') {
            Some((r, s)) => (r, s.parse::<usize>().map_err(|_| bad())?),
            None => (part, 1),
        };
        if step == 0 {
            return Err(bad());
        }
        match range.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend((a..=b).step_by(step));
            }
            None => out.push(range.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub spec: BoardSpec,
    pub clue_counts: Vec<usize>,
    pub ensemble_size: usize,
    pub master_seed: u64,
    pub metrics: Vec<Metric>,
    /// Also count solutions up to this cap in the hardness metric.
    pub solution_cap: Option<u64>,
    pub output: Option<PathBuf>,
    /// Where to store the solved grids behind the entropy metric.
    pub grids_output: Option<PathBuf>,
    /// Substitute clue fixings out of the relaxation before pivoting.
    pub lp_eliminate_fixings: bool,
}

impl SweepConfig {
    pub fn new(
        spec: BoardSpec,
        clue_counts: Vec<usize>,
        ensemble_size: usize,
        master_seed: u64,
        metrics: &[Metric],
    ) -> Self {
        Self {
            spec,
            clue_counts,
            ensemble_size,
            master_seed,
            metrics: metrics.to_vec(),
            solution_cap: None,
            output: None,
            grids_output: None,
            lp_eliminate_fixings: true,
        }
    }

    /// Desk-scale ensemble size: 1000 up to 9×9 boards, 100 beyond.
    pub fn default_ensemble(spec: BoardSpec) -> usize {
        if spec.side() <= 9 {
            1000
        } else {
            100
        }
    }

    pub fn validate(&self) -> Result<(), LabError> {
        let cells = self.spec.cell_count();
        if self.ensemble_size == 0 {
            return Err(LabError::Config("ensemble size must be positive".into()));
        }
        if self.clue_counts.is_empty() {
            return Err(LabError::Config("no clue counts".into()));
        }
        if let Some(&c) = self.clue_counts.iter().find(|&&c| c > cells) {
            return Err(LabError::Config(format!("{c} clues on a board of {cells} cells")));
        }
        if self.metrics.is_empty() {
            return Err(LabError::Config("no metrics selected".into()));
        }
        if self.solution_cap == Some(0) {
            return Err(LabError::Config("solution cap must be positive".into()));
        }
        Ok(())
    }
}

/// Mean and unbiased sample variance (zero for a single sample).
pub fn mean_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var)
}

struct Emitter<'a> {
    config: &'a SweepConfig,
    clues: usize,
    rows: &'a mut Vec<SweepRow>,
}

impl Emitter<'_> {
    fn push(&mut self, metric: &str, statistic: &str, value: f64, n: usize) {
        self.rows.push(SweepRow::new(
            self.config.spec,
            self.clues,
            metric,
            statistic,
            value,
            n,
            self.config.master_seed,
        ));
    }

    fn moments(&mut self, metric: &str, xs: &[f64]) {
        let (mean, var) = mean_variance(xs);
        self.push(metric, "mean", mean, xs.len());
        self.push(metric, "variance", var, xs.len());
    }
}

fn measure<T: Send>(
    puzzles: &[Puzzle],
    clues: usize,
    f: impl Fn(usize, &Puzzle) -> Result<T, InstanceError> + Sync,
) -> Result<Vec<T>, LabError> {
    puzzles
        .par_iter()
        .enumerate()
        .map(|(t, p)| {
            f(t, p).map_err(|source| LabError::Instance {
                clues,
                instance: t,
                source,
            })
        })
        .collect()
}

/// Runs every configured metric on every clue count and returns the rows in
/// a fixed order (clue counts as given, then metrics). The table is also
/// written to `config.output` when set.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRow>, LabError> {
    config.validate()?;
    let seed = config.master_seed;
    let grids = ensemble_grids(config.spec, config.ensemble_size, seed);
    let mut rows = Vec::new();
    let mut solved_dump = String::new();
    for &clues in &config.clue_counts {
        let puzzles = puncture_all(&grids, clues, seed)?;
        let mut out = Emitter {
            config,
            clues,
            rows: &mut rows,
        };
        for &metric in &config.metrics {
            match metric {
                Metric::Hardness => {
                    let stats = measure(&puzzles, clues, |t, p| {
                        let (_, stats) = Solver::new(SolverConfig::seeded(solver_seed(seed, t))).solve_one(p)?;
                        Ok(stats)
                    })?;
                    out.moments(
                        "backtracks",
                        &stats.iter().map(|s| s.backtracks as f64).collect::<Vec<_>>(),
                    );
                    out.moments("nodes", &stats.iter().map(|s| s.nodes as f64).collect::<Vec<_>>());
                    if let Some(cap) = config.solution_cap {
                        let counts = measure(&puzzles, clues, |_, p| Ok(count_solutions(p, cap).0 as f64))?;
                        out.moments("solution_count", &counts);
                    }
                }
                Metric::Backbone => {
                    let reports = measure(&puzzles, clues, |_, p| Ok(backbone_report(p)?))?;
                    out.moments(
                        "backbone_size",
                        &reports.iter().map(|r| r.backbone_size as f64).collect::<Vec<_>>(),
                    );
                    out.moments(
                        "backbone_fraction",
                        &reports.iter().map(|r| r.backbone_fraction).collect::<Vec<_>>(),
                    );
                }
                Metric::Lp => {
                    let options = LpOptions {
                        tol: DEFAULT_RESIDUAL_TOL,
                        eliminate_fixings: config.lp_eliminate_fixings,
                    };
                    let sols = measure(&puzzles, clues, |_, p| {
                        let sol = solve_relaxation_with(&build_ilp(p), options)?;
                        let integral = sol.status == LpStatus::Feasible && is_integral(&sol, DEFAULT_INTEGRALITY_TOL)?;
                        Ok((
                            sol.status == LpStatus::Feasible,
                            integral,
                            sol.max_fractionality,
                            sol.max_residual,
                        ))
                    })?;
                    let n = sols.len();
                    out.moments(
                        "lp_integral",
                        &sols.iter().map(|s| s.1 as u8 as f64).collect::<Vec<_>>(),
                    );
                    out.push(
                        "lp_feasible",
                        "mean",
                        sols.iter().filter(|s| s.0).count() as f64 / n as f64,
                        n,
                    );
                    out.push(
                        "lp_max_fractionality",
                        "mean",
                        sols.iter().map(|s| s.2).sum::<f64>() / n as f64,
                        n,
                    );
                    out.push("lp_residual", "max", sols.iter().map(|s| s.3).fold(0.0, f64::max), n);
                }
                Metric::Entropy => {
                    let solved: Vec<Grid> = measure(&puzzles, clues, |t, p| {
                        let config = SolverConfig::seeded(solver_seed(seed, t));
                        Ok(Solver::new(config).solve_one(p)?.0)
                    })?;
                    let summary =
                        mean_matrix(&solved)
                            .and_then(|m| spectral_summary(&m))
                            .map_err(|e| LabError::Instance {
                                clues,
                                instance: 0,
                                source: e.into(),
                            })?;
                    out.push("entropy", "value", summary.entropy, solved.len());
                    if config.grids_output.is_some() {
                        for (t, g) in solved.iter().enumerate() {
                            let _ = writeln!(solved_dump, "{clues},{t},{}", serialize_cells(g));
                        }
                    }
                }
                Metric::Strategies => {
                    let traces = measure(&puzzles, clues, |t, p| {
                        let (_, trace) = strategy_solve(p, solver_seed(seed, t))?;
                        Ok((trace, p.empty_count()))
                    })?;
                    for s in Strategy::ALL {
                        let used: Vec<f64> = traces.iter().map(|(tr, _)| tr.used(s) as u8 as f64).collect();
                        out.moments(&format!("freq_{}", s.name()), &used);
                        let counts: Vec<f64> = traces.iter().map(|(tr, _)| tr.count(s) as f64).collect();
                        out.push(
                            &format!("count_{}", s.name()),
                            "mean",
                            mean_variance(&counts).0,
                            counts.len(),
                        );
                    }
                    let distinct: Vec<f64> = traces.iter().map(|(tr, _)| tr.distinct_required() as f64).collect();
                    out.moments("distinct_required", &distinct);
                    let per_empty = |x: u64, empty: usize| if empty == 0 { 0.0 } else { x as f64 / empty as f64 };
                    let singles: Vec<f64> = traces.iter().map(|(tr, e)| per_empty(tr.singles(), *e)).collect();
                    out.moments("singles_per_empty", &singles);
                    let guesses: Vec<f64> = traces
                        .iter()
                        .map(|(tr, e)| per_empty(tr.count(Strategy::Guess), *e))
                        .collect();
                    out.moments("guesses_per_empty", &guesses);
                }
            }
        }
    }
    if let Some(path) = &config.output {
        write_csv(path, &rows)?;
    }
    if let Some(path) = &config.grids_output {
        std::fs::write(path, solved_dump).map_err(|source| LabError::Write {
            path: path.clone(),
            source,
        })?;
    }
    Ok(rows)
}
