//! Small dense vector/matrix helpers for dimensions 2..=8.
//!
//! Everything works on `&[f64]` slices; bodies are low-dimensional and
//! short-lived, so plain `Vec<f64>` beats a matrix library here.

// Elimination kernels read clearest with explicit row/column indices.
#![allow(clippy::needless_range_loop)]

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| -x).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

/// Normalizes `a` in place; returns the original norm. Leaves `a` untouched
/// when the norm is below `1e-300` and returns 0.
pub fn normalize(a: &mut [f64]) -> f64 {
    let n = norm(a);
    if n > 1e-300 {
        for x in a.iter_mut() {
            *x /= n;
        }
    }
    n
}

/// Rank of the row vectors within `tol`, by Gaussian elimination with
/// partial pivoting. Rows are consumed as a scratch copy.
pub fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let (mut best, mut best_abs) = (rank, 0.0);
        for (r, row) in m.iter().enumerate().skip(rank) {
            if row[col].abs() > best_abs {
                best = r;
                best_abs = row[col].abs();
            }
        }
        if best_abs <= tol {
            continue;
        }
        m.swap(rank, best);
        for r in rank + 1..m.len() {
            let f = m[r][col] / m[rank][col];
            for c in col..ncols {
                m[r][c] -= f * m[rank][c];
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Solves the square system `A x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` when the pivot falls below `tol`.
pub fn solve(a: &[Vec<f64>], b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let (mut best, mut best_abs) = (col, 0.0);
        for (r, row) in m.iter().enumerate().skip(col) {
            if row[col].abs() > best_abs {
                best = r;
                best_abs = row[col].abs();
            }
        }
        if best_abs <= tol {
            return None;
        }
        m.swap(col, best);
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col] / m[col][col];
            for c in col..=n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// A unit vector orthogonal to the span of `rows` (d-1 independent rows in
/// d-space), via elimination. Returns `None` when the rows are dependent.
pub fn orthogonal_complement(rows: &[Vec<f64>], tol: f64) -> Option<Vec<f64>> {
    let d = rows.first()?.len();
    if rows.len() + 1 != d {
        return None;
    }
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..d {
        let (mut best, mut best_abs) = (r, 0.0);
        for (i, row) in m.iter().enumerate().skip(r) {
            if row[col].abs() > best_abs {
                best = i;
                best_abs = row[col].abs();
            }
        }
        if best_abs <= tol {
            continue;
        }
        m.swap(r, best);
        for i in 0..m.len() {
            if i == r {
                continue;
            }
            let f = m[i][col] / m[r][col];
            for c in 0..d {
                m[i][c] -= f * m[r][c];
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if r != d - 1 {
        return None;
    }
    let free_col = (0..d).find(|c| !pivot_cols.contains(c))?;
    let mut v = vec![0.0; d];
    v[free_col] = 1.0;
    for (row, &pc) in m.iter().zip(&pivot_cols) {
        v[pc] = -row[free_col] / row[pc];
    }
    let n = normalize(&mut v);
    (n > tol).then_some(v)
}

/// Completes the unit vector `u` to an orthonormal basis; returns the d-1
/// tangent vectors.
pub fn tangent_basis(u: &[f64]) -> Vec<Vec<f64>> {
    let d = u.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d - 1);
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        // Gram-Schmidt against u and the tangents found so far.
        let mut v = sub(&e, &scale(u, dot(&e, u)));
        for t in &basis {
            v = sub(&v, &scale(t, dot(&v, t)));
        }
        if normalize(&mut v) > 1e-8 {
            basis.push(v);
            if basis.len() == d - 1 {
                break;
            }
        }
    }
    basis
}
