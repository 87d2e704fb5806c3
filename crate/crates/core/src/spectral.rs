//! Shannon entropy of solution ensembles from the singular values of the
//! component-wise mean grid.

use thiserror::Error;

use crate::generate::derive_seed;
use crate::grid::{BoardSpec, Grid, Puzzle};
use crate::solver::{Solver, SolverConfig, Unsatisfiable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("ensemble is empty")]
    EmptyEnsemble,
    #[error("ensemble mixes board specs ({0} and {1})")]
    MixedSpecs(BoardSpec, BoardSpec),
    #[error("grid {0} of the ensemble is incomplete")]
    IncompleteGrid(usize),
    #[error("spectrum is empty or sums to zero")]
    ZeroSpectrum,
    #[error("spectrum contains a negative or non-finite value")]
    InvalidSpectrum,
    #[error(transparent)]
    Unsatisfiable(#[from] Unsatisfiable),
}

/// Component-wise mean of `samples` complete grids, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleMean {
    pub spec: BoardSpec,
    pub matrix: Vec<f64>,
    pub samples: usize,
}

impl EnsembleMean {
    pub fn side(&self) -> usize {
        self.spec.side()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.side() + col]
    }
}

pub fn mean_matrix(grids: &[Grid]) -> Result<EnsembleMean, SpectralError> {
    let first = grids.first().ok_or(SpectralError::EmptyEnsemble)?;
    let spec = first.spec();
    let mut sums = vec![0u64; spec.cell_count()];
    for (t, grid) in grids.iter().enumerate() {
        if grid.spec() != spec {
            return Err(SpectralError::MixedSpecs(spec, grid.spec()));
        }
        if !grid.is_complete() {
            return Err(SpectralError::IncompleteGrid(t));
        }
        for (s, &v) in sums.iter_mut().zip(grid.cells()) {
            *s += v as u64;
        }
    }
    // integer sums are exact, so a single division per entry is the only rounding
    let n = grids.len() as f64;
    Ok(EnsembleMean {
        spec,
        matrix: sums.into_iter().map(|s| s as f64 / n).collect(),
        samples: grids.len(),
    })
}

/// Eigenvalues of a symmetric `size × size` matrix (row-major) by cyclic
/// Jacobi rotations, in descending order.
pub fn symmetric_eigenvalues(matrix: &[f64], size: usize) -> Vec<f64> {
    assert_eq!(matrix.len(), size * size);
    let mut a = matrix.to_vec();
    let idx = |r: usize, c: usize| r * size + c;
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if scale == 0.0 {
        return vec![0.0; size];
    }
    for _sweep in 0..100 {
        let off: f64 = (0..size)
            .flat_map(|r| (0..size).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[idx(r, c)] * a[idx(r, c)])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..size {
            for q in p + 1..size {
                let apq = a[idx(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..size {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..size {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..size).map(|i| a[idx(i, i)]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    eig
}

/// Singular values of a square row-major matrix as square roots of the
/// eigenvalues of `AᵀA`, descending. Tiny negative eigenvalues from rounding
/// are clamped to zero.
pub fn singular_values(matrix: &[f64], size: usize) -> Vec<f64> {
    assert_eq!(matrix.len(), size * size);
    let mut gram = vec![0.0; size * size];
    for i in 0..size {
        for j in i..size {
            let dot: f64 = (0..size).map(|k| matrix[k * size + i] * matrix[k * size + j]).sum();
            gram[i * size + j] = dot;
            gram[j * size + i] = dot;
        }
    }
    symmetric_eigenvalues(&gram, size)
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect()
}

/// `-Σ p ln p` over the normalized spectrum, with `0 ln 0 = 0`.
pub fn shannon_entropy(sigma: &[f64]) -> Result<f64, SpectralError> {
    if sigma.iter().any(|&s| !s.is_finite() || s < 0.0) {
        return Err(SpectralError::InvalidSpectrum);
    }
    let total: f64 = sigma.iter().sum();
    if total <= 0.0 {
        return Err(SpectralError::ZeroSpectrum);
    }
    Ok(sigma
        .iter()
        .map(|&s| s / total)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    pub singular_values: Vec<f64>,
    pub normalized: Vec<f64>,
    pub entropy: f64,
}

pub fn spectral_summary(mean: &EnsembleMean) -> Result<SpectralSummary, SpectralError> {
    let singular_values = singular_values(&mean.matrix, mean.side());
    let entropy = shannon_entropy(&singular_values)?;
    let total: f64 = singular_values.iter().sum();
    let normalized = singular_values.iter().map(|s| s / total).collect();
    Ok(SpectralSummary {
        singular_values,
        normalized,
        entropy,
    })
}

/// Solves every puzzle once with the seeded exact solver (puzzle `t` uses
/// `derive_seed(seed, [t])`) and returns the solutions.
pub fn solve_ensemble(puzzles: &[Puzzle], seed: u64) -> Result<Vec<Grid>, SpectralError> {
    puzzles
        .iter()
        .enumerate()
        .map(|(t, p)| {
            Solver::new(SolverConfig::seeded(derive_seed(seed, &[t as u64])))
                .solve_one(p)
                .map(|(g, _)| g)
                .map_err(SpectralError::from)
        })
        .collect()
}

/// Entropy of the mean of one seeded solution per puzzle.
pub fn ensemble_entropy(puzzles: &[Puzzle], seed: u64) -> Result<f64, SpectralError> {
    let solutions = solve_ensemble(puzzles, seed)?;
    Ok(spectral_summary(&mean_matrix(&solutions)?)?.entropy)
}
