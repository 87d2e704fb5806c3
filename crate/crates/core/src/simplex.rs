//! Dense phase-one simplex for feasibility of `A x = b, x ≥ 0`.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! leaving basic variable among ratio ties), so the returned vertex is a
//! deterministic function of the input. Artificial columns are not stored:
//! once an artificial leaves the basis it can never re-enter.

/// Entries below this magnitude are treated as zero when pivoting.
const PIVOT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    /// A basic feasible solution.
    Vertex { x: Vec<f64>, pivots: usize },
    /// The phase-one optimum is positive.
    Infeasible { infeasibility: f64 },
}

/// Finds a basic feasible point of `{x ≥ 0 : A x = b}` where `rows[i]` lists
/// the nonzero `(column, coefficient)` pairs of row `i` and `columns` is the
/// number of variables. Rows with a negative right-hand side are negated.
pub fn find_vertex(rows: &[Vec<(usize, f64)>], rhs: &[f64], columns: usize, tol: f64) -> Feasibility {
    assert_eq!(rows.len(), rhs.len());
    let m = rows.len();
    let width = columns + 1;
    let mut t = vec![0.0; m * width];
    for (i, row) in rows.iter().enumerate() {
        let sign = if rhs[i] < 0.0 { -1.0 } else { 1.0 };
        for &(j, a) in row {
            t[i * width + j] += sign * a;
        }
        t[i * width + columns] = sign * rhs[i];
    }
    // cost row of the phase-one objective Σ artificials, priced out
    let mut cost = vec![0.0; width];
    for i in 0..m {
        for (c, &a) in cost.iter_mut().zip(&t[i * width..(i + 1) * width]) {
            *c -= a;
        }
    }
    // artificial for row i has index columns + i
    let mut basis: Vec<usize> = (columns..columns + m).collect();
    let mut pivots = 0;

    while let Some(enter) = (0..columns).find(|&j| cost[j] < -PIVOT_EPS) {
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[i * width + enter];
            if a > PIVOT_EPS {
                let ratio = t[i * width + columns] / a;
                let better = match leave {
                    None => true,
                    Some((r, best)) => ratio < best - PIVOT_EPS || (ratio <= best + PIVOT_EPS && basis[i] < basis[r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded direction of the phase-one objective cannot occur
            // (it is bounded below by zero); treat as numerically stuck
            break;
        };
        pivot(&mut t, &mut cost, width, r, enter);
        basis[r] = enter;
        pivots += 1;
    }

    let infeasibility = -cost[columns];
    if infeasibility > tol {
        return Feasibility::Infeasible { infeasibility };
    }
    let mut x = vec![0.0; columns];
    for (i, &b) in basis.iter().enumerate() {
        if b < columns {
            x[b] = t[i * width + columns];
        }
    }
    Feasibility::Vertex { x, pivots }
}

fn pivot(t: &mut [f64], cost: &mut [f64], width: usize, r: usize, enter: usize) {
    let p = t[r * width + enter];
    let (before, rest) = t.split_at_mut(r * width);
    let (prow, after) = rest.split_at_mut(width);
    for v in prow.iter_mut() {
        *v /= p;
    }
    prow[enter] = 1.0;
    let nz: Vec<usize> = (0..width).filter(|&j| prow[j] != 0.0).collect();
    let eliminate = |row: &mut [f64]| {
        let f = row[enter];
        if f != 0.0 {
            for &j in &nz {
                row[j] -= f * prow[j];
            }
            row[enter] = 0.0;
        }
    };
    for row in before.chunks_mut(width).chain(after.chunks_mut(width)) {
        eliminate(row);
    }
    eliminate(cost);
}

/// Largest `|A x − b|` over the rows.
pub fn max_residual(rows: &[Vec<(usize, f64)>], rhs: &[f64], x: &[f64]) -> f64 {
    rows.iter()
        .zip(rhs)
        .map(|(row, &b)| (row.iter().map(|&(j, a)| a * x[j]).sum::<f64>() - b).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vertex(f: Feasibility) -> Vec<f64> {
        match f {
            Feasibility::Vertex { x, .. } => x,
            other => panic!("expected a vertex, got {other:?}"),
        }
    }

    #[test]
    fn simple_system() {
        // x + y = 1, x - y = 0.5 (negated to test sign handling as -x + y = -0.5)
        let rows = vec![vec![(0, 1.0), (1, 1.0)], vec![(0, -1.0), (1, 1.0)]];
        let rhs = [1.0, -0.5];
        let x = vertex(find_vertex(&rows, &rhs, 2, 1e-9));
        assert!((x[0] - 0.75).abs() < 1e-12 && (x[1] - 0.25).abs() < 1e-12);
        assert!(max_residual(&rows, &rhs, &x) < 1e-12);
    }

    #[test]
    fn inconsistent_rows_are_infeasible() {
        let rows = vec![vec![(0, 1.0), (1, 1.0)], vec![(0, 1.0), (1, 1.0)]];
        assert!(matches!(
            find_vertex(&rows, &[1.0, 2.0], 2, 1e-9),
            Feasibility::Infeasible { infeasibility } if (infeasibility - 1.0).abs() < 1e-9
        ));
        // x = -1 with x >= 0
        assert!(matches!(
            find_vertex(&[vec![(0, 1.0)]], &[-1.0], 1, 1e-9),
            Feasibility::Infeasible { .. }
        ));
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let rows = vec![
            vec![(0, 1.0), (1, 1.0), (2, 1.0)],
            vec![(0, 2.0), (1, 2.0), (2, 2.0)],
            vec![(2, 1.0)],
        ];
        let rhs = [1.0, 2.0, 0.25];
        let x = vertex(find_vertex(&rows, &rhs, 3, 1e-9));
        assert!(max_residual(&rows, &rhs, &x) < 1e-12);
        assert!(x.iter().all(|&v| v >= 0.0));
        // Bland picks column 0 first
        assert!((x[0] - 0.75).abs() < 1e-12 && x[1] == 0.0);
    }

    #[test]
    fn deterministic() {
        let rows: Vec<Vec<(usize, f64)>> = (0..6)
            .map(|i| {
                (0..10)
                    .filter(|j| (i + j) % 3 != 0)
                    .map(|j| (j, 1.0 + (i * j % 4) as f64))
                    .collect()
            })
            .collect();
        let rhs = [3.0, 4.0, 5.0, 3.0, 2.0, 6.0];
        assert_eq!(find_vertex(&rows, &rhs, 10, 1e-9), find_vertex(&rows, &rhs, 10, 1e-9));
    }
}
