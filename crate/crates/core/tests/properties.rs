use proptest::prelude::*;
use sudoku_phase::candidates::{CandidateState, Propagation};
use sudoku_phase::generate::derive_seed;
use sudoku_phase::spectral::{shannon_entropy, singular_values};
use sudoku_phase::{
    count_solutions, hamiltonian, is_valid_complete, parse_puzzle, puncture, random_complete_grid, serialize_puzzle,
    solve_one, to_coloring, BoardSpec, Grid, PropagationLevel, Solver, SolverConfig, Topology, Variant,
};

fn specs() -> impl Strategy<Value = BoardSpec> {
    prop_oneof![
        (2usize..=4).prop_map(|n| BoardSpec::sudoku(n).unwrap()),
        (2usize..=10).prop_map(|m| BoardSpec::latin_square(m).unwrap()),
    ]
}

fn small_specs() -> impl Strategy<Value = BoardSpec> {
    prop_oneof![
        (2usize..=3).prop_map(|n| BoardSpec::sudoku(n).unwrap()),
        (3usize..=7).prop_map(|m| BoardSpec::latin_square(m).unwrap()),
    ]
}

/// A random complete (possibly invalid) grid.
fn any_complete_grid() -> impl Strategy<Value = Grid> {
    small_specs().prop_flat_map(|spec| {
        proptest::collection::vec(1..=spec.side() as u8, spec.cell_count())
            .prop_map(move |cells| Grid::new(spec, cells).unwrap())
    })
}

fn permutation(side: usize) -> impl Strategy<Value = Vec<u8>> {
    Just((1..=side as u8).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neighbor_counts_follow_closed_forms(spec in specs()) {
        let topo = Topology::build(spec);
        let s = spec.side();
        let expected = match spec.variant() {
            Variant::Sudoku => { let n = spec.order(); 3 * n * n - 2 * n - 1 }
            Variant::LatinSquare => 2 * (s - 1),
        };
        for cell in 0..spec.cell_count() {
            prop_assert_eq!(topo.neighbors(cell).len(), expected);
        }
        let coloring = to_coloring(&sudoku_phase::Puzzle::empty(spec), false);
        prop_assert_eq!(coloring.edges.len(), spec.cell_count() * expected / 2);
    }

    #[test]
    fn hamiltonian_ignores_relabeling((grid, perm) in any_complete_grid()
        .prop_flat_map(|g| { let s = g.spec().side(); (Just(g), permutation(s)) }))
    {
        let topo = Topology::for_spec(grid.spec());
        prop_assert_eq!(
            hamiltonian(&grid, &topo).unwrap(),
            hamiltonian(&grid.relabeled(&perm), &topo).unwrap()
        );
    }

    #[test]
    fn zero_energy_iff_units_are_permutations(grid in any_complete_grid()) {
        let topo = Topology::for_spec(grid.spec());
        let distinct = topo.units().iter().all(|u| {
            let mut vals: Vec<u8> = u.iter().map(|&c| grid.get(c)).collect();
            vals.sort_unstable();
            vals.dedup();
            vals.len() == u.len()
        });
        let h = hamiltonian(&grid, &topo).unwrap();
        prop_assert_eq!(h == 0, distinct);
        prop_assert_eq!(h % 2, 0);
        prop_assert_eq!(is_valid_complete(&grid, &topo), distinct);
    }

    #[test]
    fn generated_grids_are_ground_states(spec in small_specs(), seed in any::<u64>()) {
        let topo = Topology::for_spec(spec);
        let g = random_complete_grid(spec, seed);
        prop_assert_eq!(hamiltonian(&g, &topo).unwrap(), 0);
        prop_assert_eq!(&g, &random_complete_grid(spec, seed));
    }

    #[test]
    fn parse_serialize_round_trip(spec in specs(), seed in any::<u64>(), frac in 0.0f64..=1.0) {
        let g = random_complete_grid(spec, seed);
        let clues = (frac * spec.cell_count() as f64) as usize;
        let p = puncture(&g, clues, derive_seed(seed, &[1])).unwrap();
        prop_assert_eq!(p.clue_count(), clues);
        let text = serialize_puzzle(&p);
        let back = parse_puzzle(&text, spec).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(serialize_puzzle(&back), text);
        prop_assert!(p.is_extended_by(&g));
    }

    #[test]
    fn propagation_keeps_state_invariants(spec in small_specs(), seed in any::<u64>(), clues in 0usize..30) {
        let g = random_complete_grid(spec, seed);
        let p = puncture(&g, clues.min(spec.cell_count()), seed).unwrap();
        let topo = Topology::for_spec(spec);
        let mut state = CandidateState::from_puzzle(&topo, &p);
        prop_assert_eq!(state.propagate(), Propagation::Stable);
        for cell in 0..spec.cell_count() {
            if state.is_assigned(cell) {
                let v = state.value(cell);
                prop_assert_eq!(state.candidates(cell).count_ones(), 1);
                for &nb in topo.neighbors(cell) {
                    prop_assert!(state.candidates(nb) & (1 << (v - 1)) == 0 || nb == cell);
                }
            }
            // the generating grid survives propagation
            prop_assert!(state.candidates(cell) & (1 << (g.get(cell) - 1)) != 0);
        }
    }

    #[test]
    fn solver_is_sound_and_deterministic(spec in small_specs(), seed in any::<u64>(), frac in 0.2f64..=1.0) {
        let g = random_complete_grid(spec, seed);
        let p = puncture(&g, (frac * spec.cell_count() as f64) as usize, seed).unwrap();
        let a = solve_one(&p, SolverConfig::seeded(seed)).unwrap();
        prop_assert_eq!(&a, &solve_one(&p, SolverConfig::seeded(seed)).unwrap());
        prop_assert!(is_valid_complete(&a.0, &Topology::for_spec(spec)));
        prop_assert!(p.is_extended_by(&a.0));
        prop_assert!(a.1.backtracks <= a.1.nodes);
    }

    #[test]
    fn propagation_strength_never_changes_counts(spec in small_specs(), seed in any::<u64>(), frac in 0.0f64..=0.6) {
        let g = random_complete_grid(spec, seed);
        let p = puncture(&g, (frac * spec.cell_count() as f64) as usize, seed).unwrap();
        let counts: Vec<u64> = [PropagationLevel::NakedSingles, PropagationLevel::Singles, PropagationLevel::AllDifferent]
            .into_iter()
            .map(|level| Solver::new(SolverConfig::seeded(seed).with_propagation(level)).count_solutions(&p, 500).0)
            .collect();
        prop_assert!(counts.iter().all(|&c| c == counts[0]), "{:?}", counts);
    }

    #[test]
    fn adding_a_clue_never_adds_solutions(seed in any::<u64>(), clues in 0usize..12, cell in 0usize..16) {
        let spec = BoardSpec::sudoku(2).unwrap();
        let g = random_complete_grid(spec, seed);
        let p = puncture(&g, clues, seed).unwrap();
        if !p.is_clue(cell) {
            let q = p.with_clue(cell, g.get(cell)).unwrap();
            prop_assert!(count_solutions(&q, u64::MAX).0 <= count_solutions(&p, u64::MAX).0);
        }
    }

    #[test]
    fn entropy_is_scale_invariant(sigma in proptest::collection::vec(0.0f64..100.0, 1..12), c in 1e-3f64..1e3) {
        prop_assume!(sigma.iter().sum::<f64>() > 1e-9);
        let h = shannon_entropy(&sigma).unwrap();
        let scaled: Vec<f64> = sigma.iter().map(|s| s * c).collect();
        prop_assert!((h - shannon_entropy(&scaled).unwrap()).abs() < 1e-10);
        prop_assert!(h >= 0.0 && h <= (sigma.len() as f64).ln() + 1e-12);
    }

    #[test]
    fn row_permutation_preserves_singular_values(
        (size, entries, perm) in (2usize..8).prop_flat_map(|n| (
            Just(n),
            proptest::collection::vec(1.0f64..9.0, n * n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        ))
    ) {
        let mut permuted = vec![0.0; size * size];
        for (r, &pr) in perm.iter().enumerate() {
            permuted[r * size..(r + 1) * size].copy_from_slice(&entries[pr * size..(pr + 1) * size]);
        }
        let a = singular_values(&entries, size);
        let b = singular_values(&permuted, size);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()));
        }
        prop_assert!((shannon_entropy(&a).unwrap() - shannon_entropy(&b).unwrap()).abs() < 1e-10);
    }
}
