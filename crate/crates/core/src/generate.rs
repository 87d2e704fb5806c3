//! Random instance generation: solve a blank board with shuffled value order,
//! then keep a uniformly random subset of cells as clues.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::grid::{BoardSpec, Grid, Puzzle, Topology};
use crate::solver::{Solver, SolverConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("clue count {clues} outside 0..={cells}")]
    ClueCount { clues: usize, cells: usize },
    #[error("puncture needs a complete, valid grid")]
    InvalidGrid,
}

/// Mixes a master seed with a sequence of indices (SplitMix64 finalizer
/// applied after each word). Used to derive per-instance seeds so results do
/// not depend on scheduling.
pub fn derive_seed(master: u64, indices: &[u64]) -> u64 {
    let mut state = splitmix(master);
    for &i in indices {
        state = splitmix(state ^ splitmix(i.wrapping_add(0x632b_e59b_d9b4_e019)));
    }
    state
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A valid complete grid, deterministic in `(spec, seed)`.
pub fn random_complete_grid(spec: BoardSpec, seed: u64) -> Grid {
    Solver::new(SolverConfig::seeded(seed))
        .solve_one(&Puzzle::empty(spec))
        .map(|(grid, _)| grid)
        .expect("blank boards are always completable")
}

/// Keeps `clue_count` cells of `grid`, chosen uniformly at random with `seed`.
pub fn puncture(grid: &Grid, clue_count: usize, seed: u64) -> Result<Puzzle, GenerateError> {
    let spec = grid.spec();
    let cells = spec.cell_count();
    if clue_count > cells {
        return Err(GenerateError::ClueCount {
            clues: clue_count,
            cells,
        });
    }
    let topology = Topology::for_spec(spec);
    if !crate::grid::is_valid_complete(grid, &topology) {
        return Err(GenerateError::InvalidGrid);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = vec![false; cells];
    for i in index::sample(&mut rng, cells, clue_count) {
        keep[i] = true;
    }
    Ok(Puzzle::from_solution_mask(grid, &keep))
}
