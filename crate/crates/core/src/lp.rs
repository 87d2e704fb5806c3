//! The 0/1 assignment program of a puzzle and its linear relaxation.
//!
//! Variable `x[(cell * S) + (k - 1)]` is one when `cell` holds symbol `k`.
//! Structural rows require exactly one symbol per cell and each symbol exactly
//! once per row, column and (for Sudoku) block; each clue adds a fixing row.
//! The objective is zero, so solving the relaxation means finding a vertex of
//! the feasible polytope.

use std::fmt::Write as _;

use thiserror::Error;

use crate::grid::{BoardSpec, Grid, Puzzle, Topology, UnitKind};
use crate::simplex::{find_vertex, max_residual, Feasibility};

pub const DEFAULT_INTEGRALITY_TOL: f64 = 1e-6;
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("simplex residual {residual:e} exceeds tolerance {tol:e}")]
    Numerical { residual: f64, tol: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("integrality is undefined for an infeasible relaxation")]
    InfeasibleInput,
    #[error("expected {expected} values, found {found}")]
    Length { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowFamily {
    Cell,
    RowSymbol,
    ColumnSymbol,
    BlockSymbol,
    Fixing,
}

impl RowFamily {
    pub fn prefix(self) -> &'static str {
        match self {
            RowFamily::Cell => "cell",
            RowFamily::RowSymbol => "row",
            RowFamily::ColumnSymbol => "col",
            RowFamily::BlockSymbol => "block",
            RowFamily::Fixing => "fix",
        }
    }
}

/// One equality row `Σ x[vars] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpRow {
    pub family: RowFamily,
    /// Cell index for cell rows and fixings, unit index within its family
    /// otherwise.
    pub index: usize,
    /// Symbol for symbol rows and fixings, 0 for cell rows.
    pub symbol: u8,
    pub vars: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub spec: BoardSpec,
    pub var_count: usize,
    /// Structural rows first, then one fixing per clue.
    pub rows: Vec<LpRow>,
    pub structural_rows: usize,
}

impl LpModel {
    pub fn fixing_rows(&self) -> usize {
        self.rows.len() - self.structural_rows
    }

    pub fn var_index(&self, cell: usize, symbol: u8) -> usize {
        var_index(self.spec.side(), cell, symbol)
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, f64)>> {
        self.rows
            .iter()
            .map(|r| r.vars.iter().map(|&v| (v, 1.0)).collect())
            .collect()
    }

    /// Largest `|A x − 1|` and largest bound violation of `x`.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let rhs = vec![1.0; self.rows.len()];
        let bounds = x.iter().map(|&v| (-v).max(v - 1.0).max(0.0)).fold(0.0, f64::max);
        max_residual(&self.sparse_rows(), &rhs, x).max(bounds)
    }

    /// The model in CPLEX LP text format. Variables are named `x_r_c_k` with
    /// zero-based row and column and one-based symbol.
    pub fn to_lp_format(&self) -> String {
        let side = self.spec.side();
        let name = |v: usize| {
            let cell = v / side;
            format!("x_{}_{}_{}", cell / side, cell % side, v % side + 1)
        };
        let mut out = String::new();
        let _ = writeln!(out, "\\ {} assignment relaxation", self.spec.id());
        out.push_str("Minimize\n obj: 0 ");
        out.push_str(&name(0));
        out.push_str("\nSubject To\n");
        for row in &self.rows {
            let label = match row.family {
                RowFamily::Cell => format!("{}_{}", row.family.prefix(), row.index),
                _ => format!("{}_{}_{}", row.family.prefix(), row.index, row.symbol),
            };
            let terms: Vec<String> = row.vars.iter().map(|&v| name(v)).collect();
            let _ = writeln!(out, " {label}: {} = 1", terms.join(" + "));
        }
        out.push_str("Bounds\n");
        for v in 0..self.var_count {
            let _ = writeln!(out, " 0 <= {} <= 1", name(v));
        }
        out.push_str("End\n");
        out
    }
}

fn var_index(side: usize, cell: usize, symbol: u8) -> usize {
    cell * side + symbol as usize - 1
}

pub fn build_ilp(puzzle: &Puzzle) -> LpModel {
    let spec = puzzle.spec();
    let side = spec.side();
    let topology = Topology::for_spec(spec);
    let mut rows = Vec::new();
    for cell in 0..spec.cell_count() {
        rows.push(LpRow {
            family: RowFamily::Cell,
            index: cell,
            symbol: 0,
            vars: (1..=side as u8).map(|k| var_index(side, cell, k)).collect(),
        });
    }
    for (family, kind) in [
        (RowFamily::RowSymbol, UnitKind::Row),
        (RowFamily::ColumnSymbol, UnitKind::Column),
        (RowFamily::BlockSymbol, UnitKind::Block),
    ] {
        let units = topology
            .units()
            .iter()
            .enumerate()
            .filter(|&(u, _)| topology.unit_kind(u) == kind);
        for (index, (_, unit)) in units.enumerate() {
            for k in 1..=side as u8 {
                rows.push(LpRow {
                    family,
                    index,
                    symbol: k,
                    vars: unit.iter().map(|&c| var_index(side, c, k)).collect(),
                });
            }
        }
    }
    let structural_rows = rows.len();
    for (cell, &k) in puzzle.grid().cells().iter().enumerate() {
        if k != 0 {
            rows.push(LpRow {
                family: RowFamily::Fixing,
                index: cell,
                symbol: k,
                vars: vec![var_index(side, cell, k)],
            });
        }
    }
    LpModel {
        spec,
        var_count: side * side * side,
        rows,
        structural_rows,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Empty when infeasible.
    pub values: Vec<f64>,
    pub max_fractionality: f64,
    /// Largest constraint or bound violation of `values`.
    pub max_residual: f64,
    pub pivots: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpOptions {
    pub tol: f64,
    /// Substitute clue fixings out of the model before pivoting: variables
    /// sharing a row with a fixed variable are zero, and those rows drop.
    pub eliminate_fixings: bool,
}

impl Default for LpOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_RESIDUAL_TOL,
            eliminate_fixings: false,
        }
    }
}

pub fn solve_relaxation(model: &LpModel, tol: f64) -> Result<LpSolution, LpError> {
    solve_relaxation_with(
        model,
        LpOptions {
            tol,
            ..LpOptions::default()
        },
    )
}

pub fn solve_relaxation_with(model: &LpModel, options: LpOptions) -> Result<LpSolution, LpError> {
    let tol = options.tol;
    if tol.is_nan() || tol <= 0.0 {
        return Err(LpError::BadTolerance(tol));
    }
    let infeasible = |pivots| LpSolution {
        status: LpStatus::Infeasible,
        values: Vec::new(),
        max_fractionality: 0.0,
        max_residual: 0.0,
        pivots,
    };
    let reduced = if options.eliminate_fixings {
        match eliminate_fixings(model) {
            Some(r) => r,
            None => return Ok(infeasible(0)),
        }
    } else {
        Reduced::identity(model)
    };
    let rhs = vec![1.0; reduced.rows.len()];
    let (x, pivots) = match find_vertex(&reduced.rows, &rhs, reduced.columns.len(), tol) {
        Feasibility::Infeasible { .. } => return Ok(infeasible(0)),
        Feasibility::Vertex { x, pivots } => (x, pivots),
    };
    let mut values = reduced.fixed.clone();
    for (&v, xv) in reduced.columns.iter().zip(x) {
        values[v] = xv;
    }
    let max_residual = model.violation(&values);
    if max_residual > tol {
        return Err(LpError::Numerical {
            residual: max_residual,
            tol,
        });
    }
    Ok(LpSolution {
        status: LpStatus::Feasible,
        max_fractionality: max_fractionality(&values),
        values,
        max_residual,
        pivots,
    })
}

struct Reduced {
    /// Model variable of each reduced column.
    columns: Vec<usize>,
    rows: Vec<Vec<(usize, f64)>>,
    /// Values of eliminated variables (0 or 1); free ones are overwritten.
    fixed: Vec<f64>,
}

impl Reduced {
    fn identity(model: &LpModel) -> Self {
        Self {
            columns: (0..model.var_count).collect(),
            rows: model.sparse_rows(),
            fixed: vec![0.0; model.var_count],
        }
    }
}

fn eliminate_fixings(model: &LpModel) -> Option<Reduced> {
    let n = model.var_count;
    let mut fixed = vec![None::<f64>; n];
    for row in &model.rows[model.structural_rows..] {
        fixed[row.vars[0]] = Some(1.0);
    }
    let mut zeroed = Vec::new();
    for row in &model.rows[..model.structural_rows] {
        let ones = row.vars.iter().filter(|&&v| fixed[v] == Some(1.0)).count();
        if ones > 1 {
            return None;
        }
        if ones == 1 {
            zeroed.extend(row.vars.iter().copied().filter(|&v| fixed[v] != Some(1.0)));
        }
    }
    for v in zeroed {
        if fixed[v] == Some(1.0) {
            return None;
        }
        fixed[v] = Some(0.0);
    }
    let mut column_of = vec![usize::MAX; n];
    let mut columns = Vec::new();
    for v in 0..n {
        if fixed[v].is_none() {
            column_of[v] = columns.len();
            columns.push(v);
        }
    }
    let mut rows = Vec::new();
    for row in &model.rows[..model.structural_rows] {
        if row.vars.iter().any(|&v| fixed[v] == Some(1.0)) {
            continue;
        }
        let free: Vec<(usize, f64)> = row
            .vars
            .iter()
            .filter(|&&v| fixed[v].is_none())
            .map(|&v| (column_of[v], 1.0))
            .collect();
        if free.is_empty() {
            return None;
        }
        rows.push(free);
    }
    Some(Reduced {
        columns,
        rows,
        fixed: fixed.into_iter().map(|f| f.unwrap_or(0.0)).collect(),
    })
}

fn max_fractionality(values: &[f64]) -> f64 {
    values.iter().map(|v| (v - v.round()).abs()).fold(0.0, f64::max)
}

pub fn is_integral(sol: &LpSolution, tol: f64) -> Result<bool, LpError> {
    if sol.status == LpStatus::Infeasible {
        return Err(LpError::InfeasibleInput);
    }
    Ok(sol.max_fractionality <= tol)
}

/// The 0/1 point of a (possibly partial) grid: `x = 1` for each filled cell's
/// symbol.
pub fn encode(grid: &Grid) -> Vec<f64> {
    let side = grid.spec().side();
    let mut x = vec![0.0; side * side * side];
    for (cell, &k) in grid.cells().iter().enumerate() {
        if k != 0 {
            x[var_index(side, cell, k)] = 1.0;
        }
    }
    x
}

/// Reads a grid off an integral point; `None` unless every cell has exactly
/// one symbol at 1 (within `tol`) and the rest at 0.
pub fn decode(spec: BoardSpec, values: &[f64], tol: f64) -> Result<Option<Grid>, LpError> {
    let side = spec.side();
    let expected = side * side * side;
    if values.len() != expected {
        return Err(LpError::Length {
            expected,
            found: values.len(),
        });
    }
    let mut cells = Vec::with_capacity(spec.cell_count());
    for chunk in values.chunks(side) {
        let mut symbol = None;
        for (i, &v) in chunk.iter().enumerate() {
            if (v - 1.0).abs() <= tol {
                if symbol.is_some() {
                    return Ok(None);
                }
                symbol = Some(i as u8 + 1);
            } else if v.abs() > tol {
                return Ok(None);
            }
        }
        match symbol {
            Some(k) => cells.push(k),
            None => return Ok(None),
        }
    }
    Ok(Grid::new(spec, cells).ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_puzzle;

    const SOLVED_9: &str = "534678912672195348198342567859761423426853791713924856961537284287419635345286179";

    fn spec9() -> BoardSpec {
        BoardSpec::sudoku(3).unwrap()
    }

    #[test]
    fn model_sizes() {
        let m = build_ilp(&Puzzle::empty(spec9()));
        assert_eq!((m.var_count, m.structural_rows, m.fixing_rows()), (729, 324, 0));
        assert!(m.rows.iter().all(|r| r.vars.len() == 9));

        let p = crate::generate::puncture(&crate::generate::random_complete_grid(spec9(), 4), 30, 4).unwrap();
        let m = build_ilp(&p);
        assert_eq!((m.structural_rows, m.fixing_rows()), (324, 30));

        let latin = build_ilp(&Puzzle::empty(BoardSpec::latin_square(10).unwrap()));
        assert_eq!((latin.var_count, latin.structural_rows), (1000, 300));
    }

    #[test]
    fn complete_grid_is_integral() {
        let small = parse_puzzle("1234341221434321", BoardSpec::sudoku(2).unwrap()).unwrap();
        let large = parse_puzzle(SOLVED_9, spec9()).unwrap();
        // the full 9×9 model is too degenerate for Bland pivoting in a unit test
        for (p, modes) in [(small, &[false, true][..]), (large, &[true][..])] {
            let model = build_ilp(&p);
            for &eliminate_fixings in modes {
                let sol = solve_relaxation_with(
                    &model,
                    LpOptions {
                        tol: 1e-7,
                        eliminate_fixings,
                    },
                )
                .unwrap();
                assert_eq!(sol.status, LpStatus::Feasible);
                assert!(is_integral(&sol, 1e-6).unwrap());
                assert_eq!(decode(p.spec(), &sol.values, 1e-6).unwrap().as_ref(), Some(p.grid()));
            }
        }
    }

    #[test]
    fn contradictory_fixings_are_infeasible() {
        let spec = BoardSpec::sudoku(2).unwrap();
        let mut model = build_ilp(&Puzzle::empty(spec));
        for k in [1u8, 2] {
            model.rows.push(LpRow {
                family: RowFamily::Fixing,
                index: 0,
                symbol: k,
                vars: vec![model.var_index(0, k)],
            });
        }
        for eliminate_fixings in [false, true] {
            let sol = solve_relaxation_with(
                &model,
                LpOptions {
                    tol: 1e-7,
                    eliminate_fixings,
                },
            )
            .unwrap();
            assert_eq!(sol.status, LpStatus::Infeasible);
            assert_eq!(is_integral(&sol, 1e-6), Err(LpError::InfeasibleInput));
        }
    }

    #[test]
    fn integrality_examples() {
        let sol = |values: Vec<f64>| LpSolution {
            status: LpStatus::Feasible,
            max_fractionality: max_fractionality(&values),
            values,
            max_residual: 0.0,
            pivots: 0,
        };
        assert!(is_integral(&sol(vec![0.0, 1.0, 1.0, 0.0]), 1e-6).unwrap());
        assert!(!is_integral(&sol(vec![0.0, 0.5, 1.0]), 1e-6).unwrap());
        assert!(solve_relaxation(&build_ilp(&Puzzle::empty(spec9())), 0.0).is_err());
    }

    #[test]
    fn encode_decode_round_trip() {
        let g = parse_puzzle(SOLVED_9, spec9()).unwrap().grid().clone();
        let x = encode(&g);
        assert_eq!(x.iter().sum::<f64>(), 81.0);
        assert_eq!(decode(spec9(), &x, 1e-9).unwrap(), Some(g.clone()));
        let model = build_ilp(&Puzzle::from_grid(g).unwrap());
        assert_eq!(model.violation(&x), 0.0);
        let mut half = x.clone();
        half[0] = 0.5;
        assert_eq!(decode(spec9(), &half, 1e-9).unwrap(), None);
    }

    #[test]
    fn lp_format_export() {
        let spec = BoardSpec::sudoku(2).unwrap();
        let p = parse_puzzle("1...............", spec).unwrap();
        let text = build_ilp(&p).to_lp_format();
        assert!(text.starts_with("\\ sudoku-2"));
        assert!(text.contains(" cell_0: x_0_0_1 + x_0_0_2 + x_0_0_3 + x_0_0_4 = 1\n"));
        assert!(text.contains(" fix_0_1: x_0_0_1 = 1\n"));
        assert!(text.contains(" block_3_4: "));
        assert_eq!(text.matches(" <= 1\n").count(), 64);
        assert!(text.ends_with("End\n"));
    }
}
