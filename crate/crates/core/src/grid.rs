//! Board geometry, unit topology, puzzle text I/O and the graph-coloring view.
//!
//! Cells are addressed row-major from 0. Units are stored rows first, then
//! columns, then (for Sudoku) blocks, each family indexed row-major.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

/// Largest supported side length. Candidate sets are stored as `u64` bitmasks.
pub const MAX_SIDE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("board order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("board side {0} exceeds the supported maximum of {MAX_SIDE}")]
    SideTooLarge(usize),
    #[error("expected {expected} cells, found {found}")]
    Length { expected: usize, found: usize },
    #[error("symbol {value:?} at cell {cell} is outside 1..={side}")]
    Symbol { cell: usize, value: String, side: usize },
    #[error("clues at cells {a} and {b} both hold {value} within one unit")]
    Conflict { a: usize, b: usize, value: u8 },
    #[error("grid is incomplete (cell {0} is empty)")]
    Incomplete(usize),
    #[error("spec mismatch: expected {expected}, found {found}")]
    SpecMismatch { expected: BoardSpec, found: BoardSpec },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Sudoku,
    LatinSquare,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Sudoku => "sudoku",
            Variant::LatinSquare => "latin",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Board geometry. For Sudoku `order` is the box size `n` (side `n²`); for a
/// Latin square it is the side itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoardSpec {
    variant: Variant,
    order: usize,
}

impl BoardSpec {
    pub fn new(variant: Variant, order: usize) -> Result<Self, GridError> {
        if order < 2 {
            return Err(GridError::OrderTooSmall(order));
        }
        let side = match variant {
            Variant::Sudoku => order.saturating_mul(order),
            Variant::LatinSquare => order,
        };
        if side > MAX_SIDE {
            return Err(GridError::SideTooLarge(side));
        }
        Ok(Self { variant, order })
    }

    pub fn sudoku(box_size: usize) -> Result<Self, GridError> {
        Self::new(Variant::Sudoku, box_size)
    }

    pub fn latin_square(side: usize) -> Result<Self, GridError> {
        Self::new(Variant::LatinSquare, side)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Side length S; also the number of symbols.
    pub fn side(&self) -> usize {
        match self.variant {
            Variant::Sudoku => self.order * self.order,
            Variant::LatinSquare => self.order,
        }
    }

    pub fn cell_count(&self) -> usize {
        self.side() * self.side()
    }

    /// Block edge length, `None` for Latin squares.
    pub fn box_size(&self) -> Option<usize> {
        match self.variant {
            Variant::Sudoku => Some(self.order),
            Variant::LatinSquare => None,
        }
    }

    pub fn has_blocks(&self) -> bool {
        self.variant == Variant::Sudoku
    }

    /// Stable identifier used in CSV output, e.g. `sudoku-3` or `latin-9`.
    pub fn id(&self) -> String {
        format!("{}-{}", self.variant.name(), self.order)
    }

    /// Bitmask with one bit per symbol (bit `v - 1` for symbol `v`).
    pub fn full_mask(&self) -> u64 {
        let s = self.side();
        if s == 64 {
            u64::MAX
        } else {
            (1u64 << s) - 1
        }
    }
}

impl fmt::Display for BoardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.side();
        write!(f, "{} {}x{}", self.variant, s, s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitKind {
    Row,
    Column,
    Block,
}

/// Units and cell neighborhoods for one board spec.
#[derive(Debug, Clone)]
pub struct Topology {
    spec: BoardSpec,
    units: Vec<Vec<usize>>,
    unit_kinds: Vec<UnitKind>,
    cell_units: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
}

static TOPOLOGY_CACHE: OnceLock<Mutex<HashMap<BoardSpec, Arc<Topology>>>> = OnceLock::new();

impl Topology {
    pub fn build(spec: BoardSpec) -> Self {
        let s = spec.side();
        let mut units = Vec::new();
        let mut unit_kinds = Vec::new();
        for r in 0..s {
            units.push((0..s).map(|c| r * s + c).collect());
            unit_kinds.push(UnitKind::Row);
        }
        for c in 0..s {
            units.push((0..s).map(|r| r * s + c).collect());
            unit_kinds.push(UnitKind::Column);
        }
        if let Some(n) = spec.box_size() {
            for br in 0..n {
                for bc in 0..n {
                    let mut unit = Vec::with_capacity(s);
                    for r in br * n..(br + 1) * n {
                        for c in bc * n..(bc + 1) * n {
                            unit.push(r * s + c);
                        }
                    }
                    units.push(unit);
                    unit_kinds.push(UnitKind::Block);
                }
            }
        }

        let cells = spec.cell_count();
        let mut cell_units = vec![Vec::new(); cells];
        for (u, unit) in units.iter().enumerate() {
            for &cell in unit {
                cell_units[cell].push(u);
            }
        }
        let mut neighbors = vec![Vec::new(); cells];
        let mut seen = vec![usize::MAX; cells];
        for cell in 0..cells {
            for &u in &cell_units[cell] {
                for &other in &units[u] {
                    if other != cell && seen[other] != cell {
                        seen[other] = cell;
                        neighbors[cell].push(other);
                    }
                }
            }
            neighbors[cell].sort_unstable();
        }
        Self {
            spec,
            units,
            unit_kinds,
            cell_units,
            neighbors,
        }
    }

    /// Shared, lazily built topology for `spec`.
    pub fn for_spec(spec: BoardSpec) -> Arc<Topology> {
        let cache = TOPOLOGY_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(spec)
            .or_insert_with(|| Arc::new(Topology::build(spec)))
            .clone()
    }

    pub fn spec(&self) -> BoardSpec {
        self.spec
    }

    pub fn units(&self) -> &[Vec<usize>] {
        &self.units
    }

    pub fn unit_kind(&self, unit: usize) -> UnitKind {
        self.unit_kinds[unit]
    }

    pub fn units_of(&self, cell: usize) -> &[usize] {
        &self.cell_units[cell]
    }

    pub fn neighbors(&self, cell: usize) -> &[usize] {
        &self.neighbors[cell]
    }

    pub fn row_of(&self, cell: usize) -> usize {
        cell / self.spec.side()
    }

    pub fn col_of(&self, cell: usize) -> usize {
        cell % self.spec.side()
    }

    /// Unit index of the block containing `cell`, if the board has blocks.
    pub fn block_of(&self, cell: usize) -> Option<usize> {
        let n = self.spec.box_size()?;
        let s = self.spec.side();
        let (r, c) = (cell / s, cell % s);
        Some(2 * s + (r / n) * n + c / n)
    }

    pub fn are_neighbors(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }
}

/// A (partially) filled board. Zero marks an empty cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    spec: BoardSpec,
    cells: Vec<u8>,
}

impl Grid {
    pub fn new(spec: BoardSpec, cells: Vec<u8>) -> Result<Self, GridError> {
        if cells.len() != spec.cell_count() {
            return Err(GridError::Length {
                expected: spec.cell_count(),
                found: cells.len(),
            });
        }
        let s = spec.side();
        if let Some((cell, &v)) = cells.iter().enumerate().find(|(_, &v)| v as usize > s) {
            return Err(GridError::Symbol {
                cell,
                value: v.to_string(),
                side: s,
            });
        }
        Ok(Self { spec, cells })
    }

    pub fn empty(spec: BoardSpec) -> Self {
        Self {
            spec,
            cells: vec![0; spec.cell_count()],
        }
    }

    pub fn spec(&self) -> BoardSpec {
        self.spec
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, cell: usize) -> u8 {
        self.cells[cell]
    }

    pub fn get_rc(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.spec.side() + col]
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|&v| v != 0)
    }

    pub fn filled_count(&self) -> usize {
        self.cells.iter().filter(|&&v| v != 0).count()
    }

    /// Applies `perm` to every nonzero symbol; `perm[v - 1]` is the image of `v`.
    pub fn relabeled(&self, perm: &[u8]) -> Grid {
        let cells = self
            .cells
            .iter()
            .map(|&v| if v == 0 { 0 } else { perm[v as usize - 1] })
            .collect();
        Grid { spec: self.spec, cells }
    }

    pub(crate) fn from_raw(spec: BoardSpec, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), spec.cell_count());
        Self { spec, cells }
    }
}

/// Conflict energy: the number of ordered neighbor pairs `(i, j)` holding the
/// same symbol. Each conflicting unordered pair contributes 2.
pub fn hamiltonian(grid: &Grid, topology: &Topology) -> Result<u64, GridError> {
    if let Some(cell) = grid.cells.iter().position(|&v| v == 0) {
        return Err(GridError::Incomplete(cell));
    }
    check_spec(topology.spec(), grid.spec())?;
    let mut energy = 0u64;
    for (i, &v) in grid.cells.iter().enumerate() {
        energy += topology.neighbors(i).iter().filter(|&&j| grid.cells[j] == v).count() as u64;
    }
    Ok(energy)
}

pub fn is_valid_complete(grid: &Grid, topology: &Topology) -> bool {
    matches!(hamiltonian(grid, topology), Ok(0))
}

fn check_spec(expected: BoardSpec, found: BoardSpec) -> Result<(), GridError> {
    if expected != found {
        return Err(GridError::SpecMismatch { expected, found });
    }
    Ok(())
}

/// A board with a clue mask; non-clue cells are empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Puzzle {
    grid: Grid,
    clue_mask: Vec<bool>,
}

impl Puzzle {
    /// Builds a puzzle whose clues are the nonzero cells of `grid`, rejecting
    /// clues that repeat a symbol within a unit.
    pub fn from_grid(grid: Grid) -> Result<Self, GridError> {
        let topology = Topology::for_spec(grid.spec);
        for (a, &v) in grid.cells.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if let Some(&b) = topology.neighbors(a).iter().find(|&&b| b > a && grid.cells[b] == v) {
                return Err(GridError::Conflict { a, b, value: v });
            }
        }
        let clue_mask = grid.cells.iter().map(|&v| v != 0).collect();
        Ok(Self { grid, clue_mask })
    }

    pub fn empty(spec: BoardSpec) -> Self {
        Self {
            grid: Grid::empty(spec),
            clue_mask: vec![false; spec.cell_count()],
        }
    }

    /// Keeps the values of `solution` at the cells where `keep` is true.
    /// `solution` is assumed conflict-free.
    pub(crate) fn from_solution_mask(solution: &Grid, keep: &[bool]) -> Self {
        let cells = solution
            .cells
            .iter()
            .zip(keep)
            .map(|(&v, &k)| if k { v } else { 0 })
            .collect();
        Self {
            grid: Grid::from_raw(solution.spec, cells),
            clue_mask: keep.to_vec(),
        }
    }

    pub fn spec(&self) -> BoardSpec {
        self.grid.spec
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn clue_mask(&self) -> &[bool] {
        &self.clue_mask
    }

    pub fn is_clue(&self, cell: usize) -> bool {
        self.clue_mask[cell]
    }

    pub fn clue_count(&self) -> usize {
        self.clue_mask.iter().filter(|&&c| c).count()
    }

    pub fn empty_count(&self) -> usize {
        self.clue_mask.len() - self.clue_count()
    }

    /// Returns a copy with `cell` fixed to `value`, or a conflict error.
    pub fn with_clue(&self, cell: usize, value: u8) -> Result<Puzzle, GridError> {
        let mut cells = self.grid.cells.clone();
        cells[cell] = value;
        Puzzle::from_grid(Grid::new(self.spec(), cells)?)
    }

    /// True when every clue of `self` holds the same value in `grid`.
    pub fn is_extended_by(&self, grid: &Grid) -> bool {
        grid.spec == self.grid.spec
            && self
                .grid
                .cells
                .iter()
                .zip(&grid.cells)
                .all(|(&clue, &v)| clue == 0 || clue == v)
    }
}

/// Parses one puzzle line. Boards with side ≤ 9 use one character per cell
/// (`.` or `0` empty); larger boards use comma-separated integers. Whitespace
/// is ignored.
pub fn parse_puzzle(text: &str, spec: BoardSpec) -> Result<Puzzle, GridError> {
    let side = spec.side();
    let expected = spec.cell_count();
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cells = Vec::with_capacity(expected);
    if side <= 9 {
        let found = compact.chars().count();
        if found != expected {
            return Err(GridError::Length { expected, found });
        }
        for (cell, ch) in compact.chars().enumerate() {
            let value = match ch {
                '.' => 0,
                d if d.is_ascii_digit() => d as u8 - b'0',
                other => {
                    return Err(GridError::Symbol {
                        cell,
                        value: other.to_string(),
                        side,
                    })
                }
            };
            if value as usize > side {
                return Err(GridError::Symbol {
                    cell,
                    value: ch.to_string(),
                    side,
                });
            }
            cells.push(value);
        }
    } else {
        let fields: Vec<&str> = compact.split(',').collect();
        if fields.len() != expected {
            return Err(GridError::Length {
                expected,
                found: fields.len(),
            });
        }
        for (cell, field) in fields.into_iter().enumerate() {
            let value = match field {
                "." => 0,
                f => f
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v <= side)
                    .ok_or_else(|| GridError::Symbol {
                        cell,
                        value: f.to_string(),
                        side,
                    })?,
            };
            cells.push(value as u8);
        }
    }
    Puzzle::from_grid(Grid::from_raw(spec, cells))
}

/// Canonical text form accepted by [`parse_puzzle`].
pub fn serialize_puzzle(puzzle: &Puzzle) -> String {
    serialize_cells(puzzle.grid())
}

/// Text form of any grid (complete or not) in the puzzle line format.
pub fn serialize_cells(grid: &Grid) -> String {
    if grid.spec.side() <= 9 {
        grid.cells
            .iter()
            .map(|&v| if v == 0 { '.' } else { (b'0' + v) as char })
            .collect()
    } else {
        grid.cells.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Graph-coloring form of a puzzle: one vertex per cell, one edge per
/// unordered neighbor pair, `colors = S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringInstance {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    /// Vertex to color (1-based).
    pub precolored: Vec<(usize, u8)>,
    pub colors: usize,
}

/// Translates a puzzle into a coloring instance. With `clique_gadget` set the
/// clues are encoded structurally instead of as precolorings: an auxiliary
/// S-clique is appended (vertex `cells + k - 1` stands for color `k`) and each
/// clue cell is linked to every clique vertex except the one of its value.
pub fn to_coloring(puzzle: &Puzzle, clique_gadget: bool) -> ColoringInstance {
    let spec = puzzle.spec();
    let topology = Topology::for_spec(spec);
    let cells = spec.cell_count();
    let side = spec.side();
    let mut edges = Vec::new();
    for i in 0..cells {
        for &j in topology.neighbors(i) {
            if i < j {
                edges.push((i, j));
            }
        }
    }
    let clues = puzzle
        .grid()
        .cells()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| (i, v));
    if !clique_gadget {
        return ColoringInstance {
            vertex_count: cells,
            edges,
            precolored: clues.collect(),
            colors: side,
        };
    }
    for a in 0..side {
        for b in a + 1..side {
            edges.push((cells + a, cells + b));
        }
    }
    for (cell, value) in clues {
        for k in 0..side {
            if k + 1 != value as usize {
                edges.push((cell, cells + k));
            }
        }
    }
    ColoringInstance {
        vertex_count: cells + side,
        edges,
        precolored: Vec::new(),
        colors: side,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SOLVED_9: &str = "534678912672195348198342567859761423426853791713924856961537284287419635345286179";

    fn sudoku(n: usize) -> BoardSpec {
        BoardSpec::sudoku(n).unwrap()
    }

    #[test]
    fn topology_closed_forms() {
        for n in 2..=5 {
            let spec = sudoku(n);
            let topo = Topology::build(spec);
            let s = n * n;
            assert_eq!(topo.units().len(), 3 * s);
            assert!(topo.units().iter().all(|u| u.len() == s));
            for cell in 0..spec.cell_count() {
                assert_eq!(topo.units_of(cell).len(), 3);
                assert_eq!(topo.neighbors(cell).len(), 3 * n * n - 2 * n - 1);
            }
        }
        for m in 2..=12 {
            let spec = BoardSpec::latin_square(m).unwrap();
            let topo = Topology::build(spec);
            assert_eq!(topo.units().len(), 2 * m);
            for cell in 0..spec.cell_count() {
                assert_eq!(topo.units_of(cell).len(), 2);
                assert_eq!(topo.neighbors(cell).len(), 2 * (m - 1));
            }
        }
    }

    #[test]
    fn topology_examples() {
        let t3 = Topology::build(sudoku(3));
        assert_eq!(t3.units().len(), 27);
        assert!((0..81).all(|c| t3.neighbors(c).len() == 20));
        let t2 = Topology::build(sudoku(2));
        assert_eq!(t2.units().len(), 12);
        assert!((0..16).all(|c| t2.neighbors(c).len() == 7));
        let l4 = Topology::build(BoardSpec::latin_square(4).unwrap());
        assert_eq!(l4.units().len(), 8);
        assert!((0..16).all(|c| l4.neighbors(c).len() == 6));
    }

    #[test]
    fn neighborhood_is_symmetric_and_irreflexive() {
        let topo = Topology::build(sudoku(3));
        for i in 0..81 {
            assert!(!topo.are_neighbors(i, i));
            for &j in topo.neighbors(i) {
                assert!(topo.are_neighbors(j, i));
            }
        }
    }

    #[test]
    fn rejects_small_orders() {
        assert_eq!(BoardSpec::sudoku(1), Err(GridError::OrderTooSmall(1)));
        assert_eq!(BoardSpec::latin_square(0), Err(GridError::OrderTooSmall(0)));
        assert!(matches!(BoardSpec::sudoku(9), Err(GridError::SideTooLarge(81))));
    }

    #[test]
    fn block_index_is_row_major() {
        let topo = Topology::build(sudoku(3));
        assert_eq!(topo.block_of(0), Some(18));
        assert_eq!(topo.block_of(8), Some(20));
        assert_eq!(topo.block_of(80), Some(26));
        assert_eq!(topo.unit_kind(26), UnitKind::Block);
        assert!(topo.units()[18 + 4].contains(&40));
    }

    #[test]
    fn hamiltonian_examples() {
        let spec = sudoku(3);
        let topo = Topology::build(spec);
        let solved = parse_puzzle(SOLVED_9, spec).unwrap();
        assert_eq!(hamiltonian(solved.grid(), &topo), Ok(0));

        // Swapping two cells of one row keeps that row a permutation but puts
        // duplicates into two columns; build a single-conflict grid instead.
        let mut cells = solved.grid().cells().to_vec();
        cells[0] = cells[1];
        let g = Grid::new(spec, cells).unwrap();
        // Cell 0 now conflicts with cell 1 (row and block) and with the
        // column/block holders of the same symbol.
        let conflicts: u64 = topo.neighbors(0).iter().filter(|&&j| g.get(j) == g.get(0)).count() as u64;
        assert_eq!(hamiltonian(&g, &topo), Ok(2 * conflicts));

        let s4 = sudoku(2);
        let t4 = Topology::build(s4);
        let constant = Grid::new(s4, vec![1; 16]).unwrap();
        assert_eq!(hamiltonian(&constant, &t4), Ok(112));

        assert!(matches!(
            hamiltonian(&Grid::empty(spec), &topo),
            Err(GridError::Incomplete(0))
        ));
    }

    #[test]
    fn hamiltonian_counts_each_unordered_pair_twice() {
        // Independent count: scan every unordered cell pair that shares a unit.
        let spec = sudoku(2);
        let topo = Topology::build(spec);
        let mut cells = vec![1, 2, 3, 4, 3, 4, 1, 2, 2, 1, 4, 3, 4, 3, 2, 1];
        assert_eq!(hamiltonian(&Grid::new(spec, cells.clone()).unwrap(), &topo), Ok(0));
        // cell 15 := 3 clashes with cell 13 (row and block, one pair) and
        // cell 11 (column and block, one pair).
        cells[15] = 3;
        let g = Grid::new(spec, cells).unwrap();
        let mut pairs = 0;
        for a in 0..16 {
            for b in a + 1..16 {
                let (ra, ca, rb, cb) = (a / 4, a % 4, b / 4, b % 4);
                let shared = ra == rb || ca == cb || (ra / 2 == rb / 2 && ca / 2 == cb / 2);
                if shared && g.get(a) == g.get(b) {
                    pairs += 1;
                }
            }
        }
        assert_eq!(pairs, 2);
        assert_eq!(hamiltonian(&g, &topo), Ok(2 * pairs));
    }

    #[test]
    fn validity() {
        let spec = sudoku(3);
        let topo = Topology::build(spec);
        let solved = parse_puzzle(SOLVED_9, spec).unwrap();
        assert!(is_valid_complete(solved.grid(), &topo));
        let mut cells = solved.grid().cells().to_vec();
        cells[40] = 0;
        assert!(!is_valid_complete(&Grid::new(spec, cells).unwrap(), &topo));
        let mut cells = solved.grid().cells().to_vec();
        // duplicate inside block 0: cell 10 takes cell 0's value
        cells[10] = cells[0];
        assert!(!is_valid_complete(&Grid::new(spec, cells).unwrap(), &topo));
    }

    #[test]
    fn parse_examples() {
        let spec = sudoku(3);
        let empty = parse_puzzle(&".".repeat(81), spec).unwrap();
        assert_eq!(empty.clue_count(), 0);
        let full = parse_puzzle(SOLVED_9, spec).unwrap();
        assert_eq!(full.clue_count(), 81);

        let s4 = sudoku(2);
        let err = parse_puzzle(&format!("11{}", ".".repeat(14)), s4).unwrap_err();
        assert!(matches!(err, GridError::Conflict { a: 0, b: 1, value: 1 }));
        assert!(matches!(
            parse_puzzle("...", s4),
            Err(GridError::Length { expected: 16, found: 3 })
        ));
        assert!(matches!(
            parse_puzzle(&format!("5{}", ".".repeat(15)), s4),
            Err(GridError::Symbol { cell: 0, .. })
        ));
        assert!(matches!(
            parse_puzzle(&format!("x{}", ".".repeat(15)), s4),
            Err(GridError::Symbol { cell: 0, .. })
        ));
    }

    #[test]
    fn zero_and_dot_are_equivalent() {
        let spec = sudoku(2);
        let a = parse_puzzle("1...............", spec).unwrap();
        let b = parse_puzzle("1000 0000 0000 0000", spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn serialize_examples() {
        let spec = sudoku(3);
        assert_eq!(serialize_puzzle(&Puzzle::empty(spec)), ".".repeat(81));
        let full = parse_puzzle(SOLVED_9, spec).unwrap();
        assert_eq!(serialize_puzzle(&full), SOLVED_9);

        let s16 = sudoku(4);
        let empty16 = Puzzle::empty(s16);
        let text = serialize_puzzle(&empty16);
        assert_eq!(text, vec!["0"; 256].join(","));
        let mut cells = vec![0u8; 256];
        cells[0] = 16;
        cells[255] = 10;
        let p = Puzzle::from_grid(Grid::new(s16, cells).unwrap()).unwrap();
        let text = serialize_puzzle(&p);
        assert!(text.starts_with("16,0,"));
        assert!(text.ends_with(",0,10"));
        assert_eq!(parse_puzzle(&text, s16).unwrap(), p);
    }

    #[test]
    fn large_board_parse_errors() {
        let s16 = sudoku(4);
        let mut fields = vec!["0".to_string(); 256];
        fields[3] = "17".into();
        assert!(matches!(
            parse_puzzle(&fields.join(","), s16),
            Err(GridError::Symbol { cell: 3, .. })
        ));
        fields[3] = "-1".into();
        assert!(matches!(
            parse_puzzle(&fields.join(","), s16),
            Err(GridError::Symbol { cell: 3, .. })
        ));
        assert!(matches!(
            parse_puzzle("1,2,3", s16),
            Err(GridError::Length {
                expected: 256,
                found: 3
            })
        ));
    }

    #[test]
    fn coloring_examples() {
        let c9 = to_coloring(&Puzzle::empty(sudoku(3)), false);
        assert_eq!((c9.vertex_count, c9.edges.len(), c9.colors), (81, 810, 9));
        let c4 = to_coloring(&Puzzle::empty(sudoku(2)), false);
        assert_eq!((c4.vertex_count, c4.edges.len(), c4.colors), (16, 56, 4));

        let one = parse_puzzle("3...............", sudoku(2)).unwrap();
        let plain = to_coloring(&one, false);
        assert_eq!(plain.precolored, vec![(0, 3)]);
        let gadget = to_coloring(&one, true);
        assert_eq!(gadget.vertex_count, 20);
        assert_eq!(gadget.edges.len(), 56 + 6 + 3);
        assert!(gadget.precolored.is_empty());
        // clue value 3 is linked to clique vertices of colors 1, 2 and 4
        assert!(gadget.edges.contains(&(0, 16)));
        assert!(gadget.edges.contains(&(0, 17)));
        assert!(!gadget.edges.contains(&(0, 18)));
        assert!(gadget.edges.contains(&(0, 19)));
    }

    #[test]
    fn coloring_edges_have_no_loops_or_duplicates() {
        let p = parse_puzzle(SOLVED_9, sudoku(3)).unwrap();
        let c = to_coloring(&p, true);
        let mut edges = c.edges.clone();
        edges.sort_unstable();
        edges.dedup();
        assert_eq!(edges.len(), c.edges.len());
        assert!(c.edges.iter().all(|&(a, b)| a != b));
    }
}
