//! Human-style elimination solver that records which strategies it needed.
//!
//! Strategies are tried cheapest first; after any change the scan restarts
//! from the cheapest one. When nothing applies the solver guesses a value for
//! a minimum-candidate cell and backtracks chronologically. Only applications
//! on the final, successful path are kept in the trace; work inside refuted
//! guesses is rolled back along with the guess.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::candidates::{bit, values, CandidateState, Contradiction, Mask};
use crate::generate::derive_seed;
use crate::grid::{Grid, Puzzle, Topology, UnitKind};
use crate::solver::Unsatisfiable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    NakedSingle,
    HiddenSingle,
    NakedPair,
    HiddenPair,
    PointingPairTriple,
    BoxLineReduction,
    Guess,
}

impl Strategy {
    /// Escalation order.
    pub const ALL: [Strategy; 7] = [
        Strategy::NakedSingle,
        Strategy::HiddenSingle,
        Strategy::NakedPair,
        Strategy::HiddenPair,
        Strategy::PointingPairTriple,
        Strategy::BoxLineReduction,
        Strategy::Guess,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::NakedSingle => "naked_single",
            Strategy::HiddenSingle => "hidden_single",
            Strategy::NakedPair => "naked_pair",
            Strategy::HiddenPair => "hidden_pair",
            Strategy::PointingPairTriple => "pointing_pair_triple",
            Strategy::BoxLineReduction => "box_line_reduction",
            Strategy::Guess => "guess",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Applied(Strategy),
    Stuck,
}

/// Per-strategy application counts on the solving path.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct StrategyTrace {
    pub counts: [u64; 7],
}

impl StrategyTrace {
    pub fn count(&self, s: Strategy) -> u64 {
        self.counts[s.index()]
    }

    pub fn used(&self, s: Strategy) -> bool {
        self.count(s) > 0
    }

    pub fn used_flags(&self) -> [bool; 7] {
        self.counts.map(|c| c > 0)
    }

    pub fn distinct_required(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn singles(&self) -> u64 {
        self.count(Strategy::NakedSingle) + self.count(Strategy::HiddenSingle)
    }
}

/// Applies the cheapest strategy that changes the board.
pub fn apply_step(board: &mut CandidateState<'_>) -> Result<Step, Contradiction> {
    let topo = board.topology();
    let blocks = topo.spec().has_blocks();
    if naked_single(board)? {
        return Ok(Step::Applied(Strategy::NakedSingle));
    }
    if hidden_single(board)? {
        return Ok(Step::Applied(Strategy::HiddenSingle));
    }
    if naked_pair(board)? {
        return Ok(Step::Applied(Strategy::NakedPair));
    }
    if hidden_pair(board)? {
        return Ok(Step::Applied(Strategy::HiddenPair));
    }
    if blocks && pointing(board)? {
        return Ok(Step::Applied(Strategy::PointingPairTriple));
    }
    if blocks && box_line(board)? {
        return Ok(Step::Applied(Strategy::BoxLineReduction));
    }
    Ok(Step::Stuck)
}

fn naked_single(board: &mut CandidateState<'_>) -> Result<bool, Contradiction> {
    let cells = board.topology().spec().cell_count();
    for cell in 0..cells {
        if !board.is_assigned(cell) {
            let m = board.candidates(cell);
            if m.count_ones() == 1 {
                board.place(cell, m.trailing_zeros() as u8 + 1)?;
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Placed-symbol mask and per-symbol candidate positions within one unit.
fn unit_summary(board: &CandidateState<'_>, unit: &[usize]) -> (Mask, Vec<Mask>) {
    let side = unit.len();
    let mut placed = 0;
    let mut positions = vec![0 as Mask; side];
    for (i, &cell) in unit.iter().enumerate() {
        if board.is_assigned(cell) {
            placed |= bit(board.value(cell));
        } else {
            for v in values(board.candidates(cell)) {
                positions[v as usize - 1] |= 1 << i;
            }
        }
    }
    (placed, positions)
}

fn hidden_single(board: &mut CandidateState<'_>) -> Result<bool, Contradiction> {
    let topo = board.topology();
    for unit in topo.units() {
        let (placed, positions) = unit_summary(board, unit);
        for (vi, &pos) in positions.iter().enumerate() {
            let v = vi as u8 + 1;
            if placed & bit(v) != 0 {
                continue;
            }
            match pos.count_ones() {
                0 => return Err(Contradiction),
                1 => {
                    board.place(unit[pos.trailing_zeros() as usize], v)?;
                    return Ok(true);
                }
                _ => {}
            }
        }
    }
    Ok(false)
}

fn naked_pair(board: &mut CandidateState<'_>) -> Result<bool, Contradiction> {
    let topo = board.topology();
    for unit in topo.units() {
        for (i, &a) in unit.iter().enumerate() {
            let m = board.candidates(a);
            if board.is_assigned(a) || m.count_ones() != 2 {
                continue;
            }
            for &b in &unit[i + 1..] {
                if board.is_assigned(b) || board.candidates(b) != m {
                    continue;
                }
                let mut changed = false;
                for &c in unit {
                    if c != a && c != b && !board.is_assigned(c) {
                        changed |= board.restrict(c, !m)?;
                    }
                }
                if changed {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn hidden_pair(board: &mut CandidateState<'_>) -> Result<bool, Contradiction> {
    let topo = board.topology();
    for unit in topo.units() {
        let (placed, positions) = unit_summary(board, unit);
        let side = unit.len();
        for a in 0..side {
            if placed & (1 << a) != 0 || positions[a].count_ones() != 2 {
                continue;
            }
            for b in a + 1..side {
                if placed & (1 << b) != 0 || positions[b] != positions[a] {
                    continue;
                }
                let keep: Mask = (1 << a) | (1 << b);
                let mut changed = false;
                let mut pos = positions[a];
                while pos != 0 {
                    let i = pos.trailing_zeros() as usize;
                    pos &= pos - 1;
                    changed |= board.restrict(unit[i], keep)?;
                }
                if changed {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Candidate cells for `v` in `unit` that are still open.
fn open_cells_with(board: &CandidateState<'_>, unit: &[usize], v: u8) -> Vec<usize> {
    unit.iter()
        .copied()
        .filter(|&c| !board.is_assigned(c) && board.candidates(c) & bit(v) != 0)
        .collect()
}

fn placed_in(board: &CandidateState<'_>, unit: &[usize], v: u8) -> bool {
    unit.iter().any(|&c| board.value(c) == v)
}

/// Removes `v` from the open cells of `target` outside `keep`.
fn eliminate_outside(
    board: &mut CandidateState<'_>,
    target: &[usize],
    keep: &[usize],
    v: u8,
) -> Result<bool, Contradiction> {
    let mut changed = false;
    for &c in target {
        if !keep.contains(&c) && !board.is_assigned(c) {
            changed |= board.eliminate(c, v)?;
        }
    }
    Ok(changed)
}

fn pointing(board: &mut CandidateState<'_>) -> Result<bool, Contradiction> {
    let topo: &Topology = board.topology();
    let side = topo.spec().side();
    for (u, block) in topo.units().iter().enumerate() {
        if topo.unit_kind(u) != UnitKind::Block {
            continue;
        }
        for v in 1..=side as u8 {
            if placed_in(board, block, v) {
                continue;
            }
            let cells = open_cells_with(board, block, v);
            if cells.len() < 2 {
                continue;
            }
            let row = topo.row_of(cells[0]);
            if cells.iter().all(|&c| topo.row_of(c) == row) && eliminate_outside(board, &topo.units()[row], block, v)? {
                return Ok(true);
            }
            let col = topo.col_of(cells[0]);
            if cells.iter().all(|&c| topo.col_of(c) == col)
                && eliminate_outside(board, &topo.units()[side + col], block, v)?
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn box_line(board: &mut CandidateState<'_>) -> Result<bool, Contradiction> {
    let topo: &Topology = board.topology();
    let side = topo.spec().side();
    for (u, line) in topo.units().iter().enumerate() {
        if topo.unit_kind(u) == UnitKind::Block {
            continue;
        }
        for v in 1..=side as u8 {
            if placed_in(board, line, v) {
                continue;
            }
            let cells = open_cells_with(board, line, v);
            if cells.len() < 2 {
                continue;
            }
            let block = topo.block_of(cells[0]).expect("block strategies need blocks");
            if cells.iter().all(|&c| topo.block_of(c) == Some(block))
                && eliminate_outside(board, &topo.units()[block], line, v)?
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Solves `puzzle` with the elimination strategies, guessing (seeded) when
/// stuck.
pub fn strategy_solve(puzzle: &Puzzle, seed: u64) -> Result<(Grid, StrategyTrace), Unsatisfiable> {
    let topology = Topology::for_spec(puzzle.spec());
    let board = CandidateState::placed(&topology, puzzle).map_err(|_| Unsatisfiable)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    solve_from(board, StrategyTrace::default(), &mut rng).ok_or(Unsatisfiable)
}

fn solve_from(
    mut board: CandidateState<'_>,
    mut trace: StrategyTrace,
    rng: &mut ChaCha8Rng,
) -> Option<(Grid, StrategyTrace)> {
    loop {
        if board.is_solved() {
            return Some((board.to_grid(), trace));
        }
        match apply_step(&mut board) {
            Err(Contradiction) => return None,
            Ok(Step::Applied(s)) => trace.counts[s.index()] += 1,
            Ok(Step::Stuck) => break,
        }
    }
    let cell = board.min_candidate_cell()?;
    let mut choices: Vec<u8> = values(board.candidates(cell)).collect();
    choices.shuffle(rng);
    for v in choices {
        let mut child = board.clone();
        if child.place(cell, v).is_err() {
            continue;
        }
        let mut child_trace = trace;
        child_trace.counts[Strategy::Guess.index()] += 1;
        if let Some(done) = solve_from(child, child_trace, rng) {
            return Some(done);
        }
    }
    None
}

/// Ensemble statistics over strategy traces.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile {
    /// Fraction of puzzles whose trace used each strategy at least once.
    pub frequency: [f64; 7],
    pub distinct_mean: f64,
    /// Unbiased sample variance of the distinct-required counts.
    pub distinct_variance: f64,
    pub traces: Vec<StrategyTrace>,
}

/// Solves each puzzle (puzzle `t` seeded with `derive_seed(seed, [t])`) and
/// aggregates the traces.
pub fn strategy_profile(puzzles: &[Puzzle], seed: u64) -> Result<StrategyProfile, Unsatisfiable> {
    let traces = puzzles
        .iter()
        .enumerate()
        .map(|(t, p)| strategy_solve(p, derive_seed(seed, &[t as u64])).map(|(_, tr)| tr))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(profile_of(traces))
}

pub fn profile_of(traces: Vec<StrategyTrace>) -> StrategyProfile {
    let n = traces.len().max(1) as f64;
    let mut frequency = [0.0; 7];
    for tr in &traces {
        for (f, used) in frequency.iter_mut().zip(tr.used_flags()) {
            if used {
                *f += 1.0;
            }
        }
    }
    frequency.iter_mut().for_each(|f| *f /= n);
    let distinct: Vec<f64> = traces.iter().map(|t| t.distinct_required() as f64).collect();
    let distinct_mean = distinct.iter().sum::<f64>() / n;
    let distinct_variance = if distinct.len() > 1 {
        distinct.iter().map(|d| (d - distinct_mean).powi(2)).sum::<f64>() / (distinct.len() - 1) as f64
    } else {
        0.0
    };
    StrategyProfile {
        frequency,
        distinct_mean,
        distinct_variance,
        traces,
    }
}
