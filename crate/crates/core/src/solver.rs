//! Backtracking search over candidate states with deterministic
//! instrumentation.
//!
//! A *node* is one tentative branching assignment. A *backtrack* is the
//! retraction of such an assignment, either because its subtree failed or
//! because its subtree was exhausted during enumeration. Assignments forced by
//! propagation are undone together with the branching assignment that caused
//! them and are not counted separately.

use std::num::NonZeroU64;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::candidates::{values, CandidateState, Propagation};
use crate::grid::{Grid, Puzzle, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("puzzle has no solution")]
pub struct Unsatisfiable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueOrder {
    Ascending,
    SeededShuffle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellOrder {
    FirstEmpty,
    MinimumCandidates,
}

/// Inference run at every search node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropagationLevel {
    /// Assigned values are removed from neighbors; singleton cells are assigned.
    NakedSingles,
    /// Naked singles plus per-unit hidden singles and missing-symbol detection.
    Singles,
    /// Naked singles plus full arc consistency on each unit's all-different.
    AllDifferent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SolverConfig {
    pub seed: u64,
    pub propagation: PropagationLevel,
    pub value_order: ValueOrder,
    pub cell_order: CellOrder,
    /// `None` means unlimited.
    pub solution_cap: Option<NonZeroU64>,
}

impl SolverConfig {
    /// Minimum-candidates branching with seeded value shuffling.
    pub fn seeded(seed: u64) -> Self {
        Self {
            seed,
            propagation: PropagationLevel::AllDifferent,
            value_order: ValueOrder::SeededShuffle,
            cell_order: CellOrder::MinimumCandidates,
            solution_cap: None,
        }
    }

    /// Minimum-candidates branching with ascending values (no randomness).
    pub fn ascending() -> Self {
        Self {
            value_order: ValueOrder::Ascending,
            ..Self::seeded(0)
        }
    }

    pub fn with_propagation(mut self, propagation: PropagationLevel) -> Self {
        self.propagation = propagation;
        self
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.solution_cap = NonZeroU64::new(cap);
        self
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::seeded(0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SearchStats {
    pub backtracks: u64,
    pub nodes: u64,
    pub solutions_found: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

struct Search<'a> {
    config: &'a SolverConfig,
    rng: Option<ChaCha8Rng>,
    stats: SearchStats,
    cap: u64,
    collected: Option<Vec<Grid>>,
}

impl<'a> Search<'a> {
    fn new(config: &'a SolverConfig, cap: u64, collect: bool) -> Self {
        let rng = match config.value_order {
            ValueOrder::Ascending => None,
            ValueOrder::SeededShuffle => Some(ChaCha8Rng::seed_from_u64(config.seed)),
        };
        Self {
            config,
            rng,
            stats: SearchStats::default(),
            cap,
            collected: collect.then(Vec::new),
        }
    }

    fn run(&mut self, mut state: CandidateState<'_>) -> Flow {
        let outcome = match self.config.propagation {
            PropagationLevel::NakedSingles => state.propagate(),
            PropagationLevel::Singles => state.propagate_singles(),
            PropagationLevel::AllDifferent => state.propagate_all_different(),
        };
        if outcome == Propagation::Contradiction {
            return Flow::Continue;
        }
        let cell = match self.config.cell_order {
            CellOrder::MinimumCandidates => state.min_candidate_cell(),
            CellOrder::FirstEmpty => state.first_empty_cell(),
        };
        let Some(cell) = cell else {
            self.stats.solutions_found += 1;
            if let Some(out) = self.collected.as_mut() {
                out.push(state.to_grid());
            }
            return if self.stats.solutions_found >= self.cap {
                Flow::Stop
            } else {
                Flow::Continue
            };
        };
        let mut choices: Vec<u8> = values(state.candidates(cell)).collect();
        if let Some(rng) = self.rng.as_mut() {
            choices.shuffle(rng);
        }
        let last = choices.len().saturating_sub(1);
        let mut parent = Some(state);
        for (i, value) in choices.into_iter().enumerate() {
            self.stats.nodes += 1;
            let mut child = match (i == last, parent.as_ref()) {
                (false, Some(p)) => p.clone(),
                _ => parent.take().expect("parent is consumed only by the last branch"),
            };
            child.assign(cell, value);
            if self.run(child) == Flow::Stop {
                return Flow::Stop;
            }
            self.stats.backtracks += 1;
        }
        Flow::Continue
    }
}

/// Exact backtracking solver. Results and statistics are a deterministic
/// function of the puzzle and the configuration.
#[derive(Debug, Clone, Default)]
pub struct Solver {
    config: SolverConfig,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Self { config }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn solve_one(&self, puzzle: &Puzzle) -> Result<(Grid, SearchStats), Unsatisfiable> {
        let topology = Topology::for_spec(puzzle.spec());
        let state = CandidateState::from_puzzle(&topology, puzzle);
        self.solve_state(state)
    }

    /// Solves from an arbitrary candidate state (used by support probes).
    pub fn solve_state(&self, state: CandidateState<'_>) -> Result<(Grid, SearchStats), Unsatisfiable> {
        let mut search = Search::new(&self.config, 1, true);
        search.run(state);
        let stats = search.stats;
        search
            .collected
            .and_then(|mut grids| grids.pop())
            .map(|grid| (grid, stats))
            .ok_or(Unsatisfiable)
    }

    /// Number of completions, saturating at `cap` (which then means "at
    /// least `cap`").
    pub fn count_solutions(&self, puzzle: &Puzzle, cap: u64) -> (u64, SearchStats) {
        let cap = cap.max(1);
        let topology = Topology::for_spec(puzzle.spec());
        let mut search = Search::new(&self.config, cap, false);
        search.run(CandidateState::from_puzzle(&topology, puzzle));
        (search.stats.solutions_found, search.stats)
    }

    /// Up to `cap` completions in search order.
    pub fn enumerate_solutions(&self, puzzle: &Puzzle, cap: u64) -> Vec<Grid> {
        let cap = cap.max(1);
        let topology = Topology::for_spec(puzzle.spec());
        let mut search = Search::new(&self.config, cap, true);
        search.run(CandidateState::from_puzzle(&topology, puzzle));
        search.collected.unwrap_or_default()
    }

    /// Uses the configured cap, or unlimited.
    pub fn count_all(&self, puzzle: &Puzzle) -> (u64, SearchStats) {
        let cap = self.config.solution_cap.map_or(u64::MAX, NonZeroU64::get);
        self.count_solutions(puzzle, cap)
    }
}

pub fn solve_one(puzzle: &Puzzle, config: SolverConfig) -> Result<(Grid, SearchStats), Unsatisfiable> {
    Solver::new(config).solve_one(puzzle)
}

pub fn count_solutions(puzzle: &Puzzle, cap: u64) -> (u64, SearchStats) {
    Solver::new(SolverConfig::ascending()).count_solutions(puzzle, cap)
}

pub fn enumerate_solutions(puzzle: &Puzzle, cap: u64) -> Vec<Grid> {
    Solver::new(SolverConfig::ascending()).enumerate_solutions(puzzle, cap)
}
