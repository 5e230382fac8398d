//! Dense two-phase simplex for the tiny linear programs this crate solves.
//!
//! Shape: maximize `c.x` subject to `A x <= b` with free variables, at most
//! ~10 variables and a few dozen constraints. Free variables are split
//! `x = u - v`; Bland's rule guarantees termination; the final basis is
//! re-solved against the pristine column data to strip tableau drift, so
//! well-conditioned problems come back with near machine-precision optima.

// Tableau arithmetic reads clearest with explicit row/column indices.
#![allow(clippy::needless_range_loop)]

use crate::linalg;

const EPS: f64 = 1e-10;
const MAX_PIVOTS: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Optimal { value: f64, point: Vec<f64> },
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn optimal(&self) -> Option<(f64, Vec<f64>)> {
        match self {
            LpResult::Optimal { value, point } => Some((*value, point.clone())),
            _ => None,
        }
    }
}

/// Maximizes `objective . x` over `{x : rows[i].0 . x <= rows[i].1}`.
pub fn maximize(objective: &[f64], rows: &[(Vec<f64>, f64)]) -> LpResult {
    let n = objective.len();
    let m = rows.len();
    debug_assert!(rows.iter().all(|(a, _)| a.len() == n));
    if m == 0 {
        // No constraints: optimal only for a zero objective.
        return if objective.iter().all(|&c| c == 0.0) {
            LpResult::Optimal {
                value: 0.0,
                point: vec![0.0; n],
            }
        } else {
            LpResult::Unbounded
        };
    }

    // Row scaling by powers of two is exact and keeps pivots well ranged.
    let mut scaled: Vec<(Vec<f64>, f64)> = Vec::with_capacity(m);
    for (a, b) in rows {
        let maxabs = a
            .iter()
            .chain(std::iter::once(b))
            .fold(0.0f64, |acc, &x| acc.max(x.abs()));
        let s = pow2_scale(maxabs);
        scaled.push((linalg::scale(a, s), b * s));
    }
    let obj_scale = pow2_scale(objective.iter().fold(0.0f64, |a, &c| a.max(c.abs())));
    let obj: Vec<f64> = linalg::scale(objective, obj_scale);

    // Standardized columns: u_0..u_{n-1}, v_0..v_{n-1}, slack_0..slack_{m-1},
    // then one artificial per negative-rhs row. Rows with b < 0 are sign
    // flipped so every rhs is nonnegative.
    let mut flipped = vec![false; m];
    let mut rhs = vec![0.0; m];
    for i in 0..m {
        rhs[i] = scaled[i].1;
        if rhs[i] < 0.0 {
            flipped[i] = true;
            rhs[i] = -rhs[i];
        }
    }
    let n_art = flipped.iter().filter(|&&f| f).count();
    let ncols = 2 * n + m + n_art;

    // column(j, i): coefficient of standardized variable j in row i.
    let mut art_of_row = vec![usize::MAX; m];
    {
        let mut next = 2 * n + m;
        for i in 0..m {
            if flipped[i] {
                art_of_row[i] = next;
                next += 1;
            }
        }
    }
    let sign = |i: usize| if flipped[i] { -1.0 } else { 1.0 };
    let column = |j: usize, i: usize| -> f64 {
        if j < n {
            sign(i) * scaled[i].0[j]
        } else if j < 2 * n {
            -sign(i) * scaled[i].0[j - n]
        } else if j < 2 * n + m {
            if j - 2 * n == i {
                sign(i)
            } else {
                0.0
            }
        } else if art_of_row[i] == j {
            1.0
        } else {
            0.0
        }
    };

    // Build the working tableau: m rows x (ncols + 1).
    let mut tab: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut row: Vec<f64> = (0..ncols).map(|j| column(j, i)).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (0..m)
        .map(|i| if flipped[i] { art_of_row[i] } else { 2 * n + i })
        .collect();

    // Phase 1: maximize -sum(artificials).
    if n_art > 0 {
        let mut z: Vec<f64> = vec![0.0; ncols + 1];
        for j in 2 * n + m..ncols {
            z[j] = -1.0;
        }
        for i in 0..m {
            if basis[i] >= 2 * n + m {
                let coeff = z[basis[i]];
                for j in 0..=ncols {
                    z[j] -= coeff * tab[i][j];
                }
            }
        }
        if !run_simplex(&mut tab, &mut basis, &mut z, ncols, usize::MAX) {
            return LpResult::Unbounded; // cannot happen: phase 1 is bounded
        }
        // z[ncols] = -(phase-1 value) = sum of artificials at the optimum.
        if z[ncols] > 1e-7 {
            return LpResult::Infeasible;
        }
        // Drive remaining basic artificials out, or drop all-zero rows.
        let mut drop_rows = Vec::new();
        for i in 0..m {
            if basis[i] >= 2 * n + m {
                let pivot_col = (0..2 * n + m).find(|&j| tab[i][j].abs() > EPS);
                match pivot_col {
                    Some(j) => pivot(&mut tab, &mut basis, None, i, j),
                    None => drop_rows.push(i),
                }
            }
        }
        for &i in drop_rows.iter().rev() {
            tab.remove(i);
            basis.remove(i);
        }
    }

    // Phase 2 objective: rebuild reduced costs from the original objective.
    let mrows = tab.len();
    let mut z: Vec<f64> = vec![0.0; ncols + 1];
    for j in 0..n {
        z[j] = obj[j];
        z[j + n] = -obj[j];
    }
    for i in 0..mrows {
        if z[basis[i]].abs() > 0.0 {
            let coeff = z[basis[i]];
            for j in 0..=ncols {
                z[j] -= coeff * tab[i][j];
            }
        }
    }
    // Artificials are banned from entering in phase 2.
    if !run_simplex(&mut tab, &mut basis, &mut z, ncols, 2 * n + m) {
        return LpResult::Unbounded;
    }

    // Read the solution off the tableau, then polish it by re-solving the
    // basis system against the pristine standardized columns.
    let mut zvals = vec![0.0; ncols];
    for i in 0..mrows {
        zvals[basis[i]] = tab[i][ncols];
    }
    // Refinement only when no redundant rows were dropped, so tableau rows
    // still align with the pristine data.
    if mrows == m && m > 0 {
        let bmat: Vec<Vec<f64>> = (0..m)
            .map(|i| basis.iter().map(|&j| column(j, i)).collect())
            .collect();
        let brhs: Vec<f64> = rhs.clone();
        if let Some(xb) = linalg::solve(&bmat, &brhs, 1e-14) {
            if xb.iter().all(|&v| v >= -1e-7) {
                for (idx, &j) in basis.iter().enumerate() {
                    zvals[j] = xb[idx].max(0.0);
                }
            }
        }
    }
    let point: Vec<f64> = (0..n).map(|j| zvals[j] - zvals[j + n]).collect();
    let value = linalg::dot(objective, &point);
    LpResult::Optimal { value, point }
}

/// Rounds to the nearest power of two of 1/x, clamped; exact to multiply by.
fn pow2_scale(maxabs: f64) -> f64 {
    if maxabs <= 1e-300 {
        return 1.0;
    }
    let e = maxabs.log2().round() as i32;
    (2.0f64).powi(-e.clamp(-512, 512))
}

/// Bland's rule simplex on a max-form tableau. `z` is the reduced-cost row
/// (entering when > EPS); columns >= `ban_from` never enter. Returns false
/// on unboundedness.
fn run_simplex(
    tab: &mut [Vec<f64>],
    basis: &mut [usize],
    z: &mut [f64],
    ncols: usize,
    ban_from: usize,
) -> bool {
    for _ in 0..MAX_PIVOTS {
        let entering = (0..ncols).find(|&j| j < ban_from && z[j] > EPS);
        let Some(col) = entering else {
            return true;
        };
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[col] > EPS {
                let ratio = row[ncols] / row[col];
                match leave {
                    None => leave = Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br - EPS
                            || (ratio < br + EPS && basis[i] < basis[bi])
                        {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((row_i, _)) = leave else {
            return false;
        };
        pivot(tab, basis, Some(z), row_i, col);
    }
    // Pivot limit hit: treat as converged at the current (feasible) point
    // rather than looping forever. Bland's rule should never get here.
    true
}

fn pivot(
    tab: &mut [Vec<f64>],
    basis: &mut [usize],
    z: Option<&mut [f64]>,
    row_i: usize,
    col: usize,
) {
    let ncols = tab[row_i].len() - 1;
    let p = tab[row_i][col];
    for v in tab[row_i].iter_mut() {
        *v /= p;
    }
    for i in 0..tab.len() {
        if i != row_i && tab[i][col].abs() > 0.0 {
            let f = tab[i][col];
            for j in 0..=ncols {
                tab[i][j] -= f * tab[row_i][j];
            }
            tab[i][col] = 0.0;
        }
    }
    if let Some(z) = z {
        if z[col].abs() > 0.0 {
            let f = z[col];
            for j in 0..=ncols {
                z[j] -= f * tab[row_i][j];
            }
            z[col] = 0.0;
        }
    }
    basis[row_i] = col;
}
