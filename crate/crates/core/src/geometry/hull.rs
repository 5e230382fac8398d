//! Convex hulls, vertex enumeration and facet enumeration for the small
//! polytopes this crate works with (dimension <= 8, a few dozen
//! vertices/facets).

use crate::error::{Error, Result};
use crate::linalg;

/// Counterclockwise convex hull by monotone chain. Duplicate and collinear
/// points are removed with a cross-product tolerance relative to the input
/// scale. Errors with `DegenerateHull` when the hull has no area.
pub fn convex_hull_2d(points: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if points.iter().any(|p| p.len() != 2) {
        return Err(Error::InvalidInput("expected 2d points".into()));
    }
    let scale = points
        .iter()
        .flat_map(|p| p.iter())
        .fold(1.0f64, |a, &x| a.max(x.abs()));
    let eps = 1e-12 * scale * scale;

    let mut pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() <= 1e-12 * scale && (a[1] - b[1]).abs() <= 1e-12 * scale);
    if pts.len() < 3 {
        return Err(Error::DegenerateHull(format!(
            "{} distinct points",
            pts.len()
        )));
    }

    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| -> f64 {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let build = |iter: &mut dyn Iterator<Item = [f64; 2]>| {
        let mut chain: Vec<[f64; 2]> = Vec::new();
        for p in iter {
            while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= eps
            {
                chain.pop();
            }
            chain.push(p);
        }
        chain.pop();
        chain
    };
    let mut lower = build(&mut pts.iter().copied());
    let upper = build(&mut pts.iter().rev().copied());
    lower.extend(upper);

    if lower.len() < 3 {
        return Err(Error::DegenerateHull("all points collinear".into()));
    }
    Ok(lower.into_iter().map(|p| vec![p[0], p[1]]).collect())
}

/// Signed area of a CCW polygon (positive for CCW).
pub fn polygon_area(verts: &[Vec<f64>]) -> f64 {
    let n = verts.len();
    let mut a = 0.0;
    for i in 0..n {
        let p = &verts[i];
        let q = &verts[(i + 1) % n];
        a += p[0] * q[1] - q[0] * p[1];
    }
    a / 2.0
}

/// Outward unit normals and offsets of a CCW polygon's edges.
pub fn polygon_halfspaces(verts: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = verts.len();
    let mut normals = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(n);
    for i in 0..n {
        let p = &verts[i];
        let q = &verts[(i + 1) % n];
        // CCW edge p->q has outward normal (dy, -dx).
        let mut nvec = vec![q[1] - p[1], p[0] - q[0]];
        if linalg::normalize(&mut nvec) > 1e-300 {
            offsets.push(linalg::dot(&nvec, p));
            normals.push(nvec);
        }
    }
    (normals, offsets)
}

/// All vertices of the (possibly lower-dimensional) region `a_i.x <= b_i` in
/// the plane, in CCW order when there are at least three. Pairwise line
/// intersections filtered by feasibility; may return 0, 1 or 2 points for
/// empty, point or segment regions.
pub fn vertices_from_halfspaces_2d(
    normals: &[Vec<f64>],
    offsets: &[f64],
    scale: f64,
) -> Vec<Vec<f64>> {
    let n = normals.len();
    let feas_tol = 1e-9 * scale.max(1.0);
    let mut pts: Vec<Vec<f64>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = vec![normals[i].clone(), normals[j].clone()];
            let Some(x) = linalg::solve(&a, &[offsets[i], offsets[j]], 1e-12) else {
                continue;
            };
            let ok = normals
                .iter()
                .zip(offsets)
                .all(|(nk, &bk)| linalg::dot(nk, &x) <= bk + feas_tol);
            if ok {
                pts.push(x);
            }
        }
    }
    dedupe_points(&mut pts, 1e-9 * scale.max(1.0));
    if pts.len() >= 3 {
        if let Ok(hull) = convex_hull_2d(&pts) {
            return hull;
        }
        // Collinear feasible set: keep the two extreme points.
        let dir = linalg::sub(&pts[1], &pts[0]);
        let mut best = (pts[0].clone(), pts[0].clone());
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &pts {
            let t = linalg::dot(&dir, p);
            if t < lo {
                lo = t;
                best.0 = p.clone();
            }
            if t > hi {
                hi = t;
                best.1 = p.clone();
            }
        }
        return vec![best.0, best.1];
    }
    pts
}

fn dedupe_points(pts: &mut Vec<Vec<f64>>, tol: f64) {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for p in pts.iter() {
        if !out.iter().any(|q| linalg::dist(p, q) <= tol) {
            out.push(p.clone());
        }
    }
    *pts = std::mem::take(&mut out);
}

/// Facets of the convex hull of a small point set in dimension d >= 2, by
/// brute force over d-subsets. Intended for generator-sized inputs
/// (<= ~12 points); cost grows as C(k, d).
pub fn facets_from_points(points: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let k = points.len();
    let d = points
        .first()
        .ok_or_else(|| Error::InvalidInput("no points".into()))?
        .len();
    let scale = points
        .iter()
        .flat_map(|p| p.iter())
        .fold(1.0f64, |a, &x| a.max(x.abs()));
    let tol = 1e-9 * scale;

    let mut normals: Vec<Vec<f64>> = Vec::new();
    let mut offsets: Vec<f64> = Vec::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        // Hyperplane through the d chosen points, if they are affinely
        // independent.
        let base = &points[subset[0]];
        let rows: Vec<Vec<f64>> = subset[1..]
            .iter()
            .map(|&i| linalg::sub(&points[i], base))
            .collect();
        if let Some(normal) = linalg::orthogonal_complement(&rows, 1e-10 * scale.max(1.0)) {
            let b = linalg::dot(&normal, base);
            let (mut above, mut below) = (false, false);
            for p in points {
                let v = linalg::dot(&normal, p) - b;
                if v > tol {
                    above = true;
                } else if v < -tol {
                    below = true;
                }
                if above && below {
                    break;
                }
            }
            for (n, bb, supporting) in [
                (normal.clone(), b, !above),
                (linalg::neg(&normal), -b, !below),
            ] {
                if supporting {
                    let dup = normals.iter().zip(&offsets).any(|(en, &eb)| {
                        linalg::dot(en, &n) > 1.0 - 1e-10 && (eb - bb).abs() <= tol
                    });
                    if !dup {
                        normals.push(n);
                        offsets.push(bb);
                    }
                }
            }
        }
        // Next d-combination of 0..k.
        let mut i = d;
        loop {
            if i == 0 {
                return finish_facets(normals, offsets, d);
            }
            i -= 1;
            if subset[i] != i + k - d {
                subset[i] += 1;
                for j in i + 1..d {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn finish_facets(
    normals: Vec<Vec<f64>>,
    offsets: Vec<f64>,
    d: usize,
) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    if normals.len() <= d {
        return Err(Error::DegenerateHull(
            "points do not span a full-dimensional hull".into(),
        ));
    }
    Ok((normals, offsets))
}

/// Vertices of a bounded halfspace intersection in dimension d >= 3, by brute
/// force over d-subsets of the constraints. Returns `None` when the subset
/// count exceeds `max_combinations`.
pub fn vertices_from_halfspaces_nd(
    normals: &[Vec<f64>],
    offsets: &[f64],
    scale: f64,
    max_combinations: usize,
) -> Option<Vec<Vec<f64>>> {
    let n = normals.len();
    let d = normals.first()?.len();
    if binomial(n, d) > max_combinations {
        return None;
    }
    let feas_tol = 1e-9 * scale.max(1.0);
    let mut pts: Vec<Vec<f64>> = Vec::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let a: Vec<Vec<f64>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let b: Vec<f64> = subset.iter().map(|&i| offsets[i]).collect();
        if let Some(x) = linalg::solve(&a, &b, 1e-10) {
            let ok = normals
                .iter()
                .zip(offsets)
                .all(|(nk, &bk)| linalg::dot(nk, &x) <= bk + feas_tol);
            if ok {
                pts.push(x);
            }
        }
        let mut i = d;
        loop {
            if i == 0 {
                dedupe_points(&mut pts, 1e-9 * scale.max(1.0));
                return Some(pts);
            }
            i -= 1;
            if subset[i] != i + n - d {
                subset[i] += 1;
                for j in i + 1..d {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Vec<f64>> {
        vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ]
    }

    #[test]
    fn hull_of_square_is_ccw() {
        let mut pts = square();
        pts.push(vec![0.5, 0.5]); // interior point dropped
        let hull = convex_hull_2d(&pts).unwrap();
        assert_eq!(hull.len(), 4);
        assert!(polygon_area(&hull) > 0.0);
        assert!((polygon_area(&hull) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn collinear_hull_is_degenerate() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert!(matches!(
            convex_hull_2d(&pts),
            Err(Error::DegenerateHull(_))
        ));
    }

    #[test]
    fn square_halfspaces_roundtrip() {
        let hull = convex_hull_2d(&square()).unwrap();
        let (normals, offsets) = polygon_halfspaces(&hull);
        let verts = vertices_from_halfspaces_2d(&normals, &offsets, 1.0);
        assert_eq!(verts.len(), 4);
        let area = polygon_area(&verts);
        assert!((area - 1.0).abs() < 1e-9, "area {area}");
    }

    #[test]
    fn segment_region_yields_two_points() {
        // x in [0,1], y = 0 (two opposing halfspaces).
        let normals = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ];
        let offsets = vec![1.0, 0.0, 0.0, 0.0];
        let verts = vertices_from_halfspaces_2d(&normals, &offsets, 1.0);
        assert_eq!(verts.len(), 2);
    }

    #[test]
    fn facets_of_3d_simplex() {
        let pts = vec![
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        let (normals, offsets) = facets_from_points(&pts).unwrap();
        assert_eq!(normals.len(), 4);
        // All original points satisfy every facet.
        for p in &pts {
            for (n, &b) in normals.iter().zip(&offsets) {
                assert!(linalg::dot(n, p) <= b + 1e-9);
            }
        }
    }

    #[test]
    fn vertices_of_3d_cube() {
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for i in 0..3 {
            for s in [1.0, -1.0] {
                let mut nv = vec![0.0; 3];
                nv[i] = s;
                normals.push(nv);
                offsets.push(0.5);
            }
        }
        let verts = vertices_from_halfspaces_nd(&normals, &offsets, 1.0, 100_000).unwrap();
        assert_eq!(verts.len(), 8);
    }
}
