use std::collections::BTreeMap;
use std::path::Path;

use sudoku_phase::{parse_puzzle, BoardSpec, GridError, Puzzle};

use crate::table::SweepRow;
use crate::LabError;

#[derive(Debug, Clone)]
pub struct Dataset {
    pub puzzles: Vec<Puzzle>,
    /// One-based line numbers of lines that failed to parse.
    pub errors: Vec<(usize, GridError)>,
    /// Number of puzzles per clue count.
    pub clue_histogram: BTreeMap<usize, usize>,
}

impl Dataset {
    /// The clue-count histogram as table rows (`clue_histogram`/`count`),
    /// with `n_samples` holding the dataset size.
    pub fn histogram_rows(&self, spec: BoardSpec) -> Vec<SweepRow> {
        self.clue_histogram
            .iter()
            .map(|(&clues, &count)| {
                SweepRow::new(
                    spec,
                    clues,
                    "clue_histogram",
                    "count",
                    count as f64,
                    self.puzzles.len(),
                    0,
                )
            })
            .collect()
    }
}

/// Parses one puzzle per line. Blank lines and lines starting with `#` are
/// skipped; bad lines are collected rather than fatal.
pub fn parse_dataset(text: &str, spec: BoardSpec) -> Dataset {
    let mut puzzles = Vec::new();
    let mut errors = Vec::new();
    let mut clue_histogram = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_puzzle(line, spec) {
            Ok(p) => {
                *clue_histogram.entry(p.clue_count()).or_insert(0) += 1;
                puzzles.push(p);
            }
            Err(e) => errors.push((i + 1, e)),
        }
    }
    Dataset {
        puzzles,
        errors,
        clue_histogram,
    }
}

pub fn ingest_dataset(path: &Path, spec: BoardSpec) -> Result<Dataset, LabError> {
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let data = parse_dataset(&text, spec);
    if data.puzzles.is_empty() {
        return Err(LabError::EmptyDataset {
            path: path.to_path_buf(),
            errors: data.errors.len(),
        });
    }
    Ok(data)
}
