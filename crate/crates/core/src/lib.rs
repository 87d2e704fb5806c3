//! Solvers and measurements for random Sudoku and partial Latin square
//! instances: exact backtracking with instrumentation, human-style
//! elimination strategies, backbone detection, the 0/1 assignment LP
//! relaxation, and spectral entropy of solution ensembles.

pub mod backbone;
pub mod candidates;
pub mod generate;
pub mod grid;
pub mod lp;
pub mod simplex;
pub mod solver;
pub mod spectral;
pub mod strategy;

pub use candidates::{CandidateState, Contradiction, Propagation};
pub use generate::{derive_seed, puncture, random_complete_grid, GenerateError};
pub use grid::{
    hamiltonian, is_valid_complete, parse_puzzle, serialize_puzzle, to_coloring, BoardSpec, ColoringInstance, Grid,
    GridError, Puzzle, Topology, Variant,
};
pub use solver::{
    count_solutions, enumerate_solutions, solve_one, CellOrder, PropagationLevel, SearchStats, Solver, SolverConfig,
    Unsatisfiable, ValueOrder,
};
