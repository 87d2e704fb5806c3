//! Frozen cells: empty cells that take the same value in every completion.
//!
//! Supports are found by satisfiability probes rather than enumeration. Each
//! solution found along the way witnesses one supported value for every empty
//! cell, so only values never seen in a witness need their own probe.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::candidates::{bit, values, CandidateState, Mask, Propagation};
use crate::grid::{Grid, Puzzle, Topology};
use crate::solver::{Solver, SolverConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackboneError {
    #[error("puzzle has no solution")]
    UnsatisfiableInput,
    #[error("cell {0} is a clue")]
    ClueCell(usize),
    #[error("cell {cell} is outside a board of {cells} cells")]
    CellOutOfRange { cell: usize, cells: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackboneReport {
    pub frozen_cells: BTreeSet<usize>,
    pub empty_count: usize,
    pub backbone_size: usize,
    /// Frozen cells per empty cell; 1.0 when there are no empty cells.
    pub backbone_fraction: f64,
}

/// Supported values of every cell, as masks.
struct SupportProbe<'t> {
    root: CandidateState<'t>,
    solver: Solver,
    supported: Vec<Mask>,
}

impl<'t> SupportProbe<'t> {
    fn new(topology: &'t Topology, puzzle: &Puzzle) -> Result<Self, BackboneError> {
        let mut root = CandidateState::from_puzzle(topology, puzzle);
        if root.propagate_all_different() == Propagation::Contradiction {
            return Err(BackboneError::UnsatisfiableInput);
        }
        let solver = Solver::new(SolverConfig::ascending());
        let (first, _) = solver
            .solve_state(root.clone())
            .map_err(|_| BackboneError::UnsatisfiableInput)?;
        let mut probe = Self {
            root,
            solver,
            supported: vec![0; puzzle.spec().cell_count()],
        };
        probe.witness(&first);
        Ok(probe)
    }

    fn witness(&mut self, grid: &Grid) {
        for (s, &v) in self.supported.iter_mut().zip(grid.cells()) {
            *s |= bit(v);
        }
    }

    /// Resolves every open value of `cell` and returns its support.
    fn resolve(&mut self, cell: usize) -> Mask {
        let open = self.root.candidates(cell) & !self.supported[cell];
        for v in values(open) {
            let mut state = self.root.clone();
            state.assign(cell, v);
            if let Ok((grid, _)) = self.solver.solve_state(state) {
                self.witness(&grid);
            }
        }
        self.supported[cell]
    }
}

fn check_cell(puzzle: &Puzzle, cell: usize) -> Result<(), BackboneError> {
    let cells = puzzle.spec().cell_count();
    if cell >= cells {
        return Err(BackboneError::CellOutOfRange { cell, cells });
    }
    if puzzle.is_clue(cell) {
        return Err(BackboneError::ClueCell(cell));
    }
    Ok(())
}

/// Values `v` for which the puzzle with `cell = v` is still satisfiable.
pub fn cell_support(puzzle: &Puzzle, cell: usize) -> Result<BTreeSet<u8>, BackboneError> {
    check_cell(puzzle, cell)?;
    let topology = Topology::for_spec(puzzle.spec());
    let mut probe = SupportProbe::new(&topology, puzzle)?;
    Ok(values(probe.resolve(cell)).collect())
}

/// Supports of all empty cells, indexed by cell (clues get their own value).
pub fn all_supports(puzzle: &Puzzle) -> Result<Vec<BTreeSet<u8>>, BackboneError> {
    let topology = Topology::for_spec(puzzle.spec());
    let mut probe = SupportProbe::new(&topology, puzzle)?;
    Ok((0..puzzle.spec().cell_count())
        .map(|cell| values(probe.resolve(cell)).collect())
        .collect())
}

pub fn backbone_report(puzzle: &Puzzle) -> Result<BackboneReport, BackboneError> {
    let topology = Topology::for_spec(puzzle.spec());
    let mut probe = SupportProbe::new(&topology, puzzle)?;
    let mut frozen_cells = BTreeSet::new();
    for cell in (0..puzzle.spec().cell_count()).filter(|&c| !puzzle.is_clue(c)) {
        if probe.resolve(cell).count_ones() == 1 {
            frozen_cells.insert(cell);
        }
    }
    let empty_count = puzzle.empty_count();
    let backbone_size = frozen_cells.len();
    let backbone_fraction = if empty_count == 0 {
        1.0
    } else {
        backbone_size as f64 / empty_count as f64
    };
    Ok(BackboneReport {
        frozen_cells,
        empty_count,
        backbone_size,
        backbone_fraction,
    })
}
