//! Support values, directional widths, and minimal (relative) width search.
//!
//! In 2D the width of a polytope along `u(theta)` is piecewise sinusoidal in
//! `theta`, with breakpoints exactly at the edge-normal angles of the bodies
//! involved (mod pi). On each arc between breakpoints:
//! - a ratio of two sinusoidal widths has constant derivative sign, so its
//!   minimum sits at an arc endpoint;
//! - a ratio with one constant side (balls), or a difference of widths,
//!   has at most one interior extremum at a closed-form angle.
//!
//! Evaluating events, the per-arc analytic critical angles, a few interior
//! samples, and one golden-section polish therefore yields the global
//! minimum to machine precision.
//!
//! In dimension >= 3 the search samples the unit sphere (Fibonacci spiral in
//! 3D, a fixed-seed uniform cloud above) and refines with a tangent-space
//! pattern search; the reported tolerance is a heuristic grid-resolution
//! bound. Euclidean minimal width in 3D additionally probes the exact
//! combinatorial candidates (facet normals and edge-edge cross products).

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{BodyRep, ConvexBody, Direction, Halfspaces};
use crate::error::{Error, Result};
use crate::linalg;

/// Outcome of a minimal-width search.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WidthResult {
    pub value: f64,
    pub arg_direction: Direction,
    pub achieved_tolerance: f64,
}

/// Support evaluation backend: vertex max, ball formula, or LP.
#[derive(Debug, Clone)]
pub(crate) enum SupportProfile {
    Points(Vec<Vec<f64>>),
    Ball { center: Vec<f64>, radius: f64 },
    System(Halfspaces),
}

impl SupportProfile {
    pub(crate) fn of_body(body: &ConvexBody) -> SupportProfile {
        if let Some(vs) = body.vertices() {
            return SupportProfile::Points(vs.to_vec());
        }
        match body.rep() {
            BodyRep::Ball { center, radius } => SupportProfile::Ball {
                center: center.clone(),
                radius: *radius,
            },
            BodyRep::Vpoly(vs) => SupportProfile::Points(vs.clone()),
            BodyRep::Hpoly(hs) => SupportProfile::System(hs.clone()),
        }
    }

    /// Profile of a raw (possibly lower-dimensional) halfspace system.
    pub(crate) fn of_system(hs: &Halfspaces) -> SupportProfile {
        match hs.try_vertices() {
            Some(vs) if !vs.is_empty() => SupportProfile::Points(vs),
            _ => SupportProfile::System(hs.clone()),
        }
    }

    pub(crate) fn support(&self, u: &[f64]) -> Result<f64> {
        match self {
            SupportProfile::Points(vs) => vs
                .iter()
                .map(|v| linalg::dot(v, u))
                .fold(None, |acc: Option<f64>, x| {
                    Some(acc.map_or(x, |a| a.max(x)))
                })
                .ok_or_else(|| Error::InvalidBody("empty point set".into())),
            SupportProfile::Ball { center, radius } => {
                Ok(linalg::dot(center, u) + radius * linalg::norm(u))
            }
            SupportProfile::System(hs) => hs.support_lp(u).map(|(v, _)| v),
        }
    }

    pub(crate) fn support_point(&self, u: &[f64]) -> Result<(f64, Vec<f64>)> {
        match self {
            SupportProfile::Points(vs) => {
                let mut best: Option<(f64, &Vec<f64>)> = None;
                for v in vs {
                    let d = linalg::dot(v, u);
                    if best.is_none_or(|(bd, _)| d > bd) {
                        best = Some((d, v));
                    }
                }
                best.map(|(d, v)| (d, v.clone()))
                    .ok_or_else(|| Error::InvalidBody("empty point set".into()))
            }
            SupportProfile::Ball { center, radius } => {
                let n = linalg::norm(u);
                let p = linalg::add(center, &linalg::scale(u, *radius / n));
                Ok((linalg::dot(center, u) + radius * n, p))
            }
            SupportProfile::System(hs) => hs.support_lp(u),
        }
    }

    pub(crate) fn width(&self, u: &[f64]) -> Result<f64> {
        Ok(self.support(u)? + self.support(&linalg::neg(u))?)
    }
}

/// Largest `<x, u>` over the body: vertex max, `c.u + r`, or the support LP.
pub fn support_value(body: &ConvexBody, u: &Direction) -> Result<f64> {
    check_dim(body, u)?;
    SupportProfile::of_body(body).support(u.components())
}

/// Support value together with an attaining point.
pub fn support_point(body: &ConvexBody, u: &Direction) -> Result<(f64, Vec<f64>)> {
    check_dim(body, u)?;
    SupportProfile::of_body(body).support_point(u.components())
}

/// Distance between the two supporting hyperplanes normal to `u`.
pub fn width_parallel(body: &ConvexBody, u: &Direction) -> Result<f64> {
    check_dim(body, u)?;
    SupportProfile::of_body(body).width(u.components())
}

/// `width(K, u) / width(C, u)`; the gauge `C` is full-dimensional so the
/// denominator is positive.
pub fn relative_width_parallel(k: &ConvexBody, c: &ConvexBody, u: &Direction) -> Result<f64> {
    if k.dim() != c.dim() {
        return Err(Error::DimensionMismatch(k.dim(), c.dim()));
    }
    Ok(width_parallel(k, u)? / width_parallel(c, u)?)
}

fn check_dim(body: &ConvexBody, u: &Direction) -> Result<()> {
    if body.dim() != u.dim() {
        return Err(Error::DimensionMismatch(u.dim(), body.dim()));
    }
    Ok(())
}

/// Minimum over all directions of the relative width `w(K,u)/w(C,u)`.
pub fn minimal_relative_width(k: &ConvexBody, c: &ConvexBody) -> Result<WidthResult> {
    minimal_relative_width_with(k, c, &[])
}

/// Like [`minimal_relative_width`], with caller-supplied directions added to
/// the candidate set (deficit checks pass plank normals here so slab-tight
/// instances evaluate exactly).
pub fn minimal_relative_width_with(
    k: &ConvexBody,
    c: &ConvexBody,
    extra: &[Direction],
) -> Result<WidthResult> {
    if k.dim() != c.dim() {
        return Err(Error::DimensionMismatch(k.dim(), c.dim()));
    }
    let kp = SupportProfile::of_body(k);
    let cp = SupportProfile::of_body(c);
    let mut extra_dirs: Vec<Vec<f64>> = extra.iter().map(|d| d.components().to_vec()).collect();
    extra_dirs.extend(combinatorial_candidates(k, c));
    minimal_ratio_profiles(&kp, &cp, k.dim(), &extra_dirs)
}

/// Euclidean minimal width `w(K)` (gauge = unit ball, whose parallel width
/// is 2 in every direction).
pub fn minimal_width(body: &ConvexBody) -> Result<WidthResult> {
    minimal_width_with(body, &[])
}

/// Per-coordinate support intervals of the body.
pub fn bounding_box_of(body: &ConvexBody) -> Result<Vec<(f64, f64)>> {
    let p = SupportProfile::of_body(body);
    let d = body.dim();
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        let hi = p.support(&e)?;
        e[i] = -1.0;
        let lo = -p.support(&e)?;
        out.push((lo, hi));
    }
    Ok(out)
}

/// Euclidean minimal width with extra probe directions.
pub fn minimal_width_with(body: &ConvexBody, extra: &[Direction]) -> Result<WidthResult> {
    let ball = ConvexBody::ball(vec![0.0; body.dim()], 1.0)?;
    let r = minimal_relative_width_with(body, &ball, extra)?;
    Ok(WidthResult {
        value: 2.0 * r.value,
        arg_direction: r.arg_direction,
        achieved_tolerance: 2.0 * r.achieved_tolerance,
    })
}

/// Minimal relative width over raw support profiles; the engine calls this
/// on erosion systems directly.
pub(crate) fn minimal_ratio_profiles(
    kp: &SupportProfile,
    cp: &SupportProfile,
    dim: usize,
    extra_dirs: &[Vec<f64>],
) -> Result<WidthResult> {
    if dim == 2 {
        minimize_2d(kp, cp, Objective::Ratio, extra_dirs)
    } else {
        minimize_nd(kp, cp, Objective::Ratio, dim, extra_dirs)
    }
}

/// Minimum over directions of `w(E, u) - kappa * w(C, u)` (the linear
/// packing slack functional).
pub(crate) fn min_margin_profiles(
    ep: &SupportProfile,
    cp: &SupportProfile,
    kappa: f64,
    dim: usize,
    extra_dirs: &[Vec<f64>],
) -> Result<WidthResult> {
    if dim == 2 {
        minimize_2d(ep, cp, Objective::Margin(kappa), extra_dirs)
    } else {
        minimize_nd(ep, cp, Objective::Margin(kappa), dim, extra_dirs)
    }
}

#[derive(Clone, Copy)]
enum Objective {
    /// w_K / w_C
    Ratio,
    /// w_K - kappa * w_C
    Margin(f64),
}

impl Objective {
    fn eval(&self, wk: f64, wc: f64) -> f64 {
        match self {
            Objective::Ratio => wk / wc,
            Objective::Margin(kappa) => wk - kappa * wc,
        }
    }
}

// ---------------------------------------------------------------------------
// 2D exact search
// ---------------------------------------------------------------------------

fn angle_dir(theta: f64) -> Vec<f64> {
    vec![theta.cos(), theta.sin()]
}

/// Edge-normal event angles of a profile, folded into [0, pi).
fn profile_events(p: &SupportProfile) -> Vec<f64> {
    match p {
        SupportProfile::Ball { .. } => Vec::new(),
        SupportProfile::System(_) => Vec::new(),
        SupportProfile::Points(vs) => match vs.len() {
            0 | 1 => Vec::new(),
            2 => {
                let dx = vs[1][0] - vs[0][0];
                let dy = vs[1][1] - vs[0][1];
                // Support argmax switches at directions perpendicular to the
                // segment.
                vec![f64::atan2(dx, -dy).rem_euclid(PI)]
            }
            _ => {
                let n = vs.len();
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let p0 = &vs[i];
                    let p1 = &vs[(i + 1) % n];
                    // Outward normal of the CCW edge p0 -> p1.
                    let theta = f64::atan2(p0[0] - p1[0], p1[1] - p0[1]).rem_euclid(PI);
                    out.push(theta);
                }
                out
            }
        },
    }
}

/// Per-arc width model `A cos(theta) + B sin(theta) + E` for one profile,
/// reconstructed from two evaluations inside the arc (balls contribute the
/// constant term only).
fn arc_width_model(p: &SupportProfile, t0: f64, t1: f64) -> Result<(f64, f64, f64)> {
    if let SupportProfile::Ball { radius, .. } = p {
        return Ok((0.0, 0.0, 2.0 * radius));
    }
    let l = t1 - t0;
    let ta = t0 + l / 3.0;
    let tb = t0 + 2.0 * l / 3.0;
    let wa = p.width(&angle_dir(ta))?;
    let wb = p.width(&angle_dir(tb))?;
    let det = -(ta - tb).sin(); // sin(tb - ta)
    if det.abs() < 1e-14 {
        return Ok((0.0, 0.0, 0.0));
    }
    let a = (wa * tb.sin() - wb * ta.sin()) / det;
    let b = (wb * ta.cos() - wa * tb.cos()) / det;
    Ok((a, b, 0.0))
}

fn minimize_2d(
    kp: &SupportProfile,
    cp: &SupportProfile,
    obj: Objective,
    extra_dirs: &[Vec<f64>],
) -> Result<WidthResult> {
    let eval = |theta: f64| -> Result<f64> {
        let u = angle_dir(theta);
        Ok(obj.eval(kp.width(&u)?, cp.width(&u)?))
    };

    // Breakpoints of the merged normal fans, folded mod pi.
    let mut events: Vec<f64> = profile_events(kp);
    events.extend(profile_events(cp));
    for d in extra_dirs {
        if d.len() == 2 {
            events.push(f64::atan2(d[1], d[0]).rem_euclid(PI));
        }
    }
    if events.is_empty() {
        // Both sides rotation invariant: any direction attains the minimum.
        events.extend([0.0, PI / 4.0, PI / 2.0]);
    }
    events.sort_by(f64::total_cmp);
    events.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

    let mut evaluated: Vec<(f64, f64)> = Vec::new();
    for &t in &events {
        evaluated.push((t, eval(t)?));
    }

    let n = events.len();
    for i in 0..n {
        let t0 = events[i];
        let t1 = if i + 1 < n { events[i + 1] } else { events[0] + PI };
        let l = t1 - t0;
        if l < 1e-12 {
            continue;
        }
        // Interior samples guard the per-arc case analysis.
        for frac in [0.2, 0.4, 0.6, 0.8] {
            let t = t0 + frac * l;
            evaluated.push((t, eval(t)?));
        }
        if l < 1e-9 {
            continue;
        }
        let (ak, bk, _ek) = arc_width_model(kp, t0, t1)?;
        let (ac, bc, _ec) = arc_width_model(cp, t0, t1)?;
        let crit = match obj {
            Objective::Ratio => {
                let amp_k = ak.hypot(bk);
                let amp_c = ac.hypot(bc);
                if amp_k < 1e-13 && amp_c > 1e-13 {
                    // Constant numerator: minimum sits at the denominator
                    // peak.
                    Some(f64::atan2(bc, ac))
                } else if amp_c < 1e-13 && amp_k > 1e-13 {
                    Some(f64::atan2(bk, ak))
                } else {
                    // Sinusoid over sinusoid is monotone on the arc.
                    None
                }
            }
            Objective::Margin(kappa) => {
                let ag = ak - kappa * ac;
                let bg = bk - kappa * bc;
                (ag.hypot(bg) > 1e-13).then(|| f64::atan2(bg, ag))
            }
        };
        if let Some(psi) = crit {
            for base in [psi, psi + PI] {
                for k in -2..=2 {
                    let t = base + 2.0 * PI * k as f64;
                    if t > t0 + 1e-12 && t < t1 - 1e-12 {
                        evaluated.push((t, eval(t)?));
                    }
                }
            }
        }
    }

    // Golden-section polish around the incumbent.
    let (mut best_t, mut best_v) = evaluated
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one evaluation");
    let mut lo = best_t;
    let mut hi = best_t;
    let mut lo_gap = f64::INFINITY;
    let mut hi_gap = f64::INFINITY;
    for &(t, _) in &evaluated {
        if t < best_t && best_t - t < lo_gap {
            lo_gap = best_t - t;
            lo = t;
        }
        if t > best_t && t - best_t < hi_gap {
            hi_gap = t - best_t;
            hi = t;
        }
    }
    if lo_gap == f64::INFINITY {
        lo = best_t - 0.5;
    }
    if hi_gap == f64::INFINITY {
        hi = best_t + 0.5;
    }
    let (gt, gv) = golden_section(&|t| eval(t), lo, hi, 60)?;
    if gv < best_v {
        best_t = gt;
        best_v = gv;
    }
    evaluated.push((gt, gv));

    // Deterministic tie-break among minimizers: lexicographically smallest
    // canonical unit vector.
    let tie = 1e-9 * best_v.abs().max(1.0);
    let mut arg = Direction::new(angle_dir(best_t))?.canonical();
    for &(t, v) in &evaluated {
        if v <= best_v + tie {
            let cand = Direction::new(angle_dir(t))?.canonical();
            if lex_less(cand.components(), arg.components()) {
                arg = cand;
            }
        }
    }

    Ok(WidthResult {
        value: best_v,
        arg_direction: arg,
        achieved_tolerance: 1e-9,
    })
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > 1e-12 {
            return x < y;
        }
    }
    false
}

fn golden_section(
    f: &dyn Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    iters: usize,
) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let mid = 0.5 * (lo + hi);
    Ok((mid, f(mid)?))
}

// ---------------------------------------------------------------------------
// d >= 3 sampled search
// ---------------------------------------------------------------------------

/// Default sphere sample count for the d >= 3 direction search.
pub const DEFAULT_SPHERE_SAMPLES: usize = 4096;

fn sphere_samples(dim: usize, n: usize) -> Vec<Vec<f64>> {
    if dim == 3 {
        // Fibonacci spiral.
        let golden = PI * (3.0 - (5.0f64).sqrt());
        (0..n)
            .map(|i| {
                let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let phi = golden * i as f64;
                vec![r * phi.cos(), r * phi.sin(), z]
            })
            .collect()
    } else {
        // Fixed-seed Gaussian cloud, normalized: deterministic across runs.
        let mut rng = ChaCha8Rng::seed_from_u64(0x517c_c1b7_2722_0a95 ^ dim as u64);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let mut v: Vec<f64> = (0..dim).map(|_| standard_normal(&mut rng)).collect();
            if linalg::normalize(&mut v) > 1e-6 {
                out.push(v);
            }
        }
        out
    }
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; one value per call keeps the stream simple.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// Refinement starts kept from the initial grid: local minima can sit in
/// narrow funnels, so the search polishes several distinct incumbents.
const REFINE_STARTS: usize = 12;

fn minimize_nd(
    kp: &SupportProfile,
    cp: &SupportProfile,
    obj: Objective,
    dim: usize,
    extra_dirs: &[Vec<f64>],
) -> Result<WidthResult> {
    let eval = |u: &[f64]| -> Result<f64> { Ok(obj.eval(kp.width(u)?, cp.width(u)?)) };

    let n = DEFAULT_SPHERE_SAMPLES;
    let mut scored: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n + extra_dirs.len());
    for u in sphere_samples(dim, n) {
        scored.push((eval(&u)?, u));
    }
    for d in extra_dirs {
        if d.len() == dim {
            let mut u = d.clone();
            if linalg::normalize(&mut u) > 1e-12 {
                scored.push((eval(&u)?, u));
            }
        }
    }
    if scored.is_empty() {
        return Err(Error::InvalidBody("no sample directions".into()));
    }
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Keep the best starts, skipping near-duplicates of ones already kept
    // (antipodes count as duplicates: widths are even).
    let mut starts: Vec<(f64, Vec<f64>)> = Vec::with_capacity(REFINE_STARTS);
    for (v, u) in &scored {
        if starts.len() >= REFINE_STARTS {
            break;
        }
        let dup = starts
            .iter()
            .any(|(_, s)| linalg::dot(s, u).abs() > 0.995);
        if !dup {
            starts.push((*v, u.clone()));
        }
    }

    let mut best_v = f64::INFINITY;
    let mut best_u: Vec<f64> = starts[0].1.clone();
    let mut lipschitz: f64 = 0.0;
    for (v0, u0) in starts {
        let mut u = u0;
        let mut v_cur = v0;
        let mut step = 0.25;
        while step > 1e-7 {
            let mut improved = true;
            while improved {
                improved = false;
                let basis = linalg::tangent_basis(&u);
                for t in &basis {
                    for s in [step, -step] {
                        let mut cand = linalg::add(&u, &linalg::scale(t, s));
                        linalg::normalize(&mut cand);
                        let v = eval(&cand)?;
                        if v < v_cur - 1e-15 {
                            let dtheta = linalg::dist(&cand, &u).max(1e-300);
                            lipschitz = lipschitz.max((v_cur - v) / dtheta);
                            v_cur = v;
                            u = cand;
                            improved = true;
                        }
                    }
                }
            }
            step *= 0.5;
        }
        if v_cur < best_v {
            best_v = v_cur;
            best_u = u;
        }
    }

    // Heuristic resolution bound: observed local slope times the initial
    // grid gap.
    let grid_gap = if dim == 3 {
        2.6 / (n as f64).sqrt()
    } else {
        PI * (n as f64).powf(-1.0 / (dim as f64 - 1.0))
    };
    let tol = (0.5 * lipschitz * grid_gap).max(1e-7);

    Ok(WidthResult {
        value: best_v,
        arg_direction: Direction::new(best_u)?.canonical(),
        achieved_tolerance: tol,
    })
}

/// Exact candidate directions for widths of 3D polytopes (facet normals and
/// normalized edge-edge cross products), plus facet normals in any
/// dimension. Harmless extras for the sampled search; they make the
/// Euclidean 3D minimal width combinatorially exact.
fn combinatorial_candidates(k: &ConvexBody, c: &ConvexBody) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for body in [k, c] {
        if let Some(hs) = body.halfspaces() {
            out.extend(hs.normals.iter().cloned());
        }
    }
    if k.dim() == 3 {
        if let (Some(vs), Some(hs)) = (k.vertices(), k.halfspaces()) {
            let tol = 1e-9 * k.scale().max(1.0);
            let edges = polytope_edges_3d(vs, hs, tol);
            for i in 0..edges.len() {
                for j in i + 1..edges.len() {
                    let e1 = &edges[i];
                    let e2 = &edges[j];
                    let mut cr = vec![
                        e1[1] * e2[2] - e1[2] * e2[1],
                        e1[2] * e2[0] - e1[0] * e2[2],
                        e1[0] * e2[1] - e1[1] * e2[0],
                    ];
                    if linalg::normalize(&mut cr) > 1e-9 {
                        out.push(cr);
                    }
                }
            }
        }
    }
    out
}

/// Edge direction vectors of a 3-polytope: vertex pairs tight on at least
/// two common facets.
fn polytope_edges_3d(verts: &[Vec<f64>], hs: &Halfspaces, tol: f64) -> Vec<Vec<f64>> {
    let tight: Vec<Vec<usize>> = verts
        .iter()
        .map(|v| {
            hs.normals
                .iter()
                .zip(&hs.offsets)
                .enumerate()
                .filter(|(_, (n, &b))| (linalg::dot(n, v) - b).abs() <= tol)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let common = tight[i].iter().filter(|f| tight[j].contains(f)).count();
            if common >= 2 {
                edges.push(linalg::sub(&verts[j], &verts[i]));
            }
        }
    }
    edges
}
