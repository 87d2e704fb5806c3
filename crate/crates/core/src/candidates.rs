//! Per-cell candidate sets with naked-single propagation.

use crate::grid::{Grid, Puzzle, Topology};

/// Candidate bitmask; bit `v - 1` set means symbol `v` is still possible.
pub type Mask = u64;

#[inline]
pub fn bit(value: u8) -> Mask {
    1 << (value - 1)
}

/// Symbols contained in `mask`, ascending.
pub fn values(mut mask: Mask) -> impl Iterator<Item = u8> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as u8 + 1;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    Stable,
    Contradiction,
}

/// Raised when a candidate set empties or two neighbors receive the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contradiction;

/// Search state: candidate sets, the assignment, and the queue of
/// assignments whose consequences have not been pushed to neighbors yet.
#[derive(Debug, Clone)]
pub struct CandidateState<'t> {
    topology: &'t Topology,
    candidates: Vec<Mask>,
    values: Vec<u8>,
    pending: Vec<usize>,
}

impl<'t> CandidateState<'t> {
    /// All candidates open, nothing assigned.
    pub fn new(topology: &'t Topology) -> Self {
        let spec = topology.spec();
        Self {
            topology,
            candidates: vec![spec.full_mask(); spec.cell_count()],
            values: vec![0; spec.cell_count()],
            pending: Vec::new(),
        }
    }

    /// Clues assigned and queued; call [`propagate`](Self::propagate) or use
    /// [`placed`](Self::placed) to push them to neighbors.
    pub fn from_puzzle(topology: &'t Topology, puzzle: &Puzzle) -> Self {
        let mut state = Self::new(topology);
        for (cell, &v) in puzzle.grid().cells().iter().enumerate() {
            if v != 0 {
                state.assign(cell, v);
            }
        }
        state
    }

    /// Builds a state from explicit candidate sets, assigning nothing.
    pub fn from_candidates(topology: &'t Topology, candidates: Vec<Mask>) -> Self {
        assert_eq!(candidates.len(), topology.spec().cell_count());
        let cells = candidates.len();
        Self {
            topology,
            candidates,
            values: vec![0; cells],
            pending: Vec::new(),
        }
    }

    /// Clues placed with neighbor elimination but no further inference. This
    /// is the starting board of the strategy solver.
    pub fn placed(topology: &'t Topology, puzzle: &Puzzle) -> Result<Self, Contradiction> {
        let mut state = Self::new(topology);
        for (cell, &v) in puzzle.grid().cells().iter().enumerate() {
            if v != 0 {
                state.place(cell, v)?;
            }
        }
        Ok(state)
    }

    pub fn topology(&self) -> &'t Topology {
        self.topology
    }

    pub fn candidates(&self, cell: usize) -> Mask {
        self.candidates[cell]
    }

    pub fn value(&self, cell: usize) -> u8 {
        self.values[cell]
    }

    pub fn is_assigned(&self, cell: usize) -> bool {
        self.values[cell] != 0
    }

    pub fn is_solved(&self) -> bool {
        self.values.iter().all(|&v| v != 0)
    }

    pub fn unassigned_count(&self) -> usize {
        self.values.iter().filter(|&&v| v == 0).count()
    }

    /// Tentatively fixes `cell` to `value`; neighbors are updated on the next
    /// [`propagate`](Self::propagate).
    pub fn assign(&mut self, cell: usize, value: u8) {
        self.values[cell] = value;
        self.candidates[cell] = bit(value);
        self.pending.push(cell);
    }

    /// Fixes `cell` to `value` and removes `value` from every neighbor, without
    /// assigning neighbors that become singletons.
    pub fn place(&mut self, cell: usize, value: u8) -> Result<(), Contradiction> {
        if self.candidates[cell] & bit(value) == 0 {
            return Err(Contradiction);
        }
        self.values[cell] = value;
        self.candidates[cell] = bit(value);
        for &n in self.topology.neighbors(cell) {
            if self.values[n] == value {
                return Err(Contradiction);
            }
            self.eliminate(n, value)?;
        }
        Ok(())
    }

    /// Removes `value` from `cell`'s candidates. Returns whether anything
    /// changed.
    pub fn eliminate(&mut self, cell: usize, value: u8) -> Result<bool, Contradiction> {
        let b = bit(value);
        if self.candidates[cell] & b == 0 {
            return Ok(false);
        }
        self.candidates[cell] &= !b;
        if self.candidates[cell] == 0 {
            return Err(Contradiction);
        }
        Ok(true)
    }

    /// Restricts `cell`'s candidates to `mask`. Returns whether anything changed.
    pub fn restrict(&mut self, cell: usize, mask: Mask) -> Result<bool, Contradiction> {
        let next = self.candidates[cell] & mask;
        if next == self.candidates[cell] {
            return Ok(false);
        }
        self.candidates[cell] = next;
        if next == 0 {
            return Err(Contradiction);
        }
        Ok(true)
    }

    /// Naked-single propagation to fixpoint: every assigned value is removed
    /// from its neighbors and every unassigned singleton is assigned.
    pub fn propagate(&mut self) -> Propagation {
        for cell in 0..self.values.len() {
            if self.values[cell] == 0 {
                match self.candidates[cell].count_ones() {
                    0 => return Propagation::Contradiction,
                    1 => {
                        let v = self.candidates[cell].trailing_zeros() as u8 + 1;
                        self.assign(cell, v);
                    }
                    _ => {}
                }
            }
        }
        let topology = self.topology;
        while let Some(cell) = self.pending.pop() {
            let value = self.values[cell];
            let b = bit(value);
            for &n in topology.neighbors(cell) {
                let c = self.candidates[n];
                if c & b == 0 {
                    continue;
                }
                if self.values[n] != 0 {
                    self.pending.clear();
                    return Propagation::Contradiction;
                }
                let next = c & !b;
                self.candidates[n] = next;
                if next == 0 {
                    self.pending.clear();
                    return Propagation::Contradiction;
                }
                if next & (next - 1) == 0 {
                    self.values[n] = next.trailing_zeros() as u8 + 1;
                    self.pending.push(n);
                }
            }
        }
        Propagation::Stable
    }

    /// Naked-single propagation plus unit reasoning: a symbol with a single
    /// possible cell in a unit is assigned there, and a symbol with no
    /// possible cell in a unit is a contradiction. Runs to fixpoint.
    pub fn propagate_singles(&mut self) -> Propagation {
        loop {
            if self.propagate() == Propagation::Contradiction {
                return Propagation::Contradiction;
            }
            let full = self.topology.spec().full_mask();
            let mut assigned_any = false;
            for unit in self.topology.units() {
                let (mut once, mut twice) = (0, 0);
                for &cell in unit {
                    let m = self.candidates[cell];
                    twice |= once & m;
                    once |= m;
                }
                if once != full {
                    return Propagation::Contradiction;
                }
                let unique = once & !twice;
                if unique == 0 {
                    continue;
                }
                for &cell in unit {
                    let hit = self.candidates[cell] & unique;
                    if hit != 0 && self.values[cell] == 0 {
                        if hit & (hit - 1) != 0 {
                            return Propagation::Contradiction;
                        }
                        self.assign(cell, hit.trailing_zeros() as u8 + 1);
                        assigned_any = true;
                    }
                }
            }
            if !assigned_any {
                return Propagation::Stable;
            }
        }
    }

    /// Naked singles plus generalized arc consistency on every unit's
    /// all-different constraint: a symbol is removed from a cell when no
    /// perfect cell/symbol matching of the unit uses that pair.
    pub fn propagate_all_different(&mut self) -> Propagation {
        loop {
            if self.propagate() == Propagation::Contradiction {
                return Propagation::Contradiction;
            }
            let mut changed = false;
            for unit in self.topology.units() {
                match prune_unit(unit, &mut self.candidates) {
                    None => return Propagation::Contradiction,
                    Some(false) => {}
                    Some(true) => changed = true,
                }
            }
            if !changed {
                return Propagation::Stable;
            }
        }
    }

    /// Unassigned cell with the fewest candidates, lowest index on ties.
    pub fn min_candidate_cell(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for (cell, &v) in self.values.iter().enumerate() {
            if v == 0 {
                let count = self.candidates[cell].count_ones();
                if best.is_none_or(|(b, _)| count < b) {
                    best = Some((count, cell));
                    if count <= 1 {
                        break;
                    }
                }
            }
        }
        best.map(|(_, cell)| cell)
    }

    pub fn first_empty_cell(&self) -> Option<usize> {
        self.values.iter().position(|&v| v == 0)
    }

    /// Current assignment as a grid (zeros for unassigned cells).
    pub fn to_grid(&self) -> Grid {
        Grid::from_raw(self.topology.spec(), self.values.clone())
    }
}

/// Filters one unit's candidate sets to the pairs that occur in some perfect
/// matching. `None` when no perfect matching exists, otherwise whether any
/// candidate was removed.
fn prune_unit(unit: &[usize], candidates: &mut [Mask]) -> Option<bool> {
    let size = unit.len();
    let masks: Vec<Mask> = unit.iter().map(|&c| candidates[c]).collect();
    // match_of_value[v] = position in `unit` matched to symbol v + 1
    let mut match_of_value = vec![usize::MAX; size];
    let mut match_of_cell = vec![usize::MAX; size];
    for start in 0..size {
        let mut visited: Mask = 0;
        if !augment(start, &masks, &mut match_of_value, &mut match_of_cell, &mut visited) {
            return None;
        }
    }
    // reach[i]: positions reachable from position i through "take another
    // symbol, displace its owner" moves.
    let mut reach: Vec<Mask> = masks
        .iter()
        .map(|&m| values(m).fold(0, |acc, v| acc | 1 << match_of_value[v as usize - 1]))
        .collect();
    for k in 0..size {
        let kb = 1u64 << k;
        let rk = reach[k];
        for r in reach.iter_mut() {
            if *r & kb != 0 {
                *r |= rk;
            }
        }
    }
    let mut changed = false;
    for (i, &cell) in unit.iter().enumerate() {
        let mut keep = 0;
        for v in values(masks[i]) {
            let owner = match_of_value[v as usize - 1];
            let same_component = owner == i || (reach[i] >> owner & 1 == 1 && reach[owner] >> i & 1 == 1);
            if same_component {
                keep |= bit(v);
            }
        }
        if keep != masks[i] {
            candidates[cell] = keep;
            changed = true;
        }
    }
    Some(changed)
}

fn augment(
    pos: usize,
    masks: &[Mask],
    match_of_value: &mut [usize],
    match_of_cell: &mut [usize],
    visited: &mut Mask,
) -> bool {
    for v in values(masks[pos]) {
        let vi = v as usize - 1;
        if *visited >> vi & 1 == 1 {
            continue;
        }
        *visited |= 1 << vi;
        let owner = match_of_value[vi];
        if owner == usize::MAX || augment(owner, masks, match_of_value, match_of_cell, visited) {
            match_of_value[vi] = pos;
            match_of_cell[pos] = vi;
            return true;
        }
    }
    false
}
