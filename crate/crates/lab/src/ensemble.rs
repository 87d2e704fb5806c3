use rayon::prelude::*;
use sudoku_phase::{derive_seed, puncture, random_complete_grid, BoardSpec, Grid, Puzzle};

use crate::LabError;

/// Seed of the complete grid behind instance `t`.
pub fn grid_seed(master_seed: u64, t: usize) -> u64 {
    derive_seed(master_seed, &[t as u64])
}

/// Seed of the clue subset of instance `t`.
pub fn puncture_seed(master_seed: u64, t: usize) -> u64 {
    derive_seed(master_seed, &[t as u64, 1])
}

/// Seed of every randomized solver run on instance `t`.
pub fn solver_seed(master_seed: u64, t: usize) -> u64 {
    derive_seed(master_seed, &[t as u64, 2])
}

/// The complete grids behind instances `0..size`. They do not depend on the
/// clue count, so sweeps generate them once.
pub fn ensemble_grids(spec: BoardSpec, size: usize, master_seed: u64) -> Vec<Grid> {
    (0..size)
        .into_par_iter()
        .map(|t| random_complete_grid(spec, grid_seed(master_seed, t)))
        .collect()
}

pub fn puncture_all(grids: &[Grid], clue_count: usize, master_seed: u64) -> Result<Vec<Puzzle>, LabError> {
    grids
        .iter()
        .enumerate()
        .map(|(t, g)| puncture(g, clue_count, puncture_seed(master_seed, t)).map_err(LabError::from))
        .collect()
}

pub fn generate_ensemble(
    spec: BoardSpec,
    clue_count: usize,
    size: usize,
    master_seed: u64,
) -> Result<Vec<Puzzle>, LabError> {
    if clue_count > spec.cell_count() {
        return Err(LabError::Config(format!(
            "{clue_count} clues on a board of {} cells",
            spec.cell_count()
        )));
    }
    puncture_all(&ensemble_grids(spec, size, master_seed), clue_count, master_seed)
}
