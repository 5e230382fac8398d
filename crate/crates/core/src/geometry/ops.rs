//! Exact halfspace-form operations: erosion by a gauge body, hyperplane
//! slicing, and the C-inradius linear program.

use serde::{Deserialize, Serialize};

use super::width::SupportProfile;
use super::{ConvexBody, Halfspaces, Hyperplane};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, LpResult};

/// Result of an operation that can shrink a body below full dimension.
#[derive(Debug, Clone)]
pub enum Reduced {
    /// Still a valid convex body.
    Body(ConvexBody),
    /// Nonempty but lower-dimensional (point, segment, ...); the raw system
    /// still answers directional width queries.
    Flat {
        system: Halfspaces,
        /// Max inscribed margin, ~0 for flat sets.
        margin: f64,
        /// A feasible point.
        witness: Vec<f64>,
    },
    /// Empty; `margin < 0` is the infeasibility certificate of the margin LP.
    Empty { margin: f64 },
}

impl Reduced {
    pub fn body(&self) -> Option<&ConvexBody> {
        match self {
            Reduced::Body(b) => Some(b),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Reduced::Empty { .. })
    }

    /// Support backend for nonempty results (full or flat).
    pub(crate) fn support_profile(&self) -> Option<SupportProfile> {
        match self {
            Reduced::Body(b) => Some(SupportProfile::of_body(b)),
            Reduced::Flat { system, witness, .. } => {
                let p = SupportProfile::of_system(system);
                // A flat system's vertex enumeration can come back empty
                // (e.g. a single point defined by >2 constraints in 2D);
                // fall back to the witness.
                if let SupportProfile::Points(vs) = &p {
                    if vs.is_empty() {
                        return Some(SupportProfile::Points(vec![witness.clone()]));
                    }
                }
                Some(p)
            }
            Reduced::Empty { .. } => None,
        }
    }
}

/// Classifies a bounded halfspace system as full-dimensional, flat or empty
/// via its max inscribed margin.
pub(crate) fn classify(hs: Halfspaces) -> Reduced {
    let (margin, witness) = hs.max_margin();
    let tol = 1e-12 * hs.scale.max(1.0);
    if margin > tol {
        match ConvexBody::from_halfspaces_validated(hs) {
            Ok(b) => Reduced::Body(b),
            Err(_) => Reduced::Empty { margin: f64::NAN },
        }
    } else if margin >= -tol.max(1e-9 * hs.scale.max(1.0)) {
        Reduced::Flat {
            system: hs,
            margin,
            witness,
        }
    } else {
        Reduced::Empty { margin }
    }
}

/// Checks that the origin is interior to the gauge and returns the support
/// profile used for erosion offsets.
fn gauge_profile(c: &ConvexBody) -> Result<SupportProfile> {
    let margin = c.origin_interior_margin()?;
    if margin <= 1e-12 * c.scale() {
        return Err(Error::OriginNotInterior { margin });
    }
    Ok(SupportProfile::of_body(c))
}

/// Inner parallel body `{t : t + rho C subset K}`: every offset drops by
/// `rho * h_C(a_i)`, normals unchanged. Requires the origin interior to `C`.
pub fn erode(k: &ConvexBody, c: &ConvexBody, rho: f64) -> Result<Reduced> {
    if k.dim() != c.dim() {
        return Err(Error::DimensionMismatch(k.dim(), c.dim()));
    }
    if !(rho > 0.0) {
        return Err(Error::RhoOutOfRange {
            rho,
            max: f64::INFINITY,
        });
    }
    let cp = gauge_profile(c)?;
    let hs = k.require_halfspaces()?;
    let mut offsets = Vec::with_capacity(hs.len());
    for (n, &b) in hs.normals.iter().zip(&hs.offsets) {
        offsets.push(b - rho * cp.support(n)?);
    }
    Ok(classify(Halfspaces {
        dim: hs.dim,
        normals: hs.normals.clone(),
        offsets,
        scale: hs.scale,
    }))
}

/// Which side of a hyperplane to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// normal . x <= offset
    Below,
    /// normal . x >= offset
    Above,
}

/// Appends the halfspace for the chosen side, prunes constraints the rest
/// imply, and classifies the result.
pub fn slice_with_halfspace(k: &ConvexBody, h: &Hyperplane, side: Side) -> Result<Reduced> {
    if k.dim() != h.normal.dim() {
        return Err(Error::DimensionMismatch(h.normal.dim(), k.dim()));
    }
    let hs = k.require_halfspaces()?;
    let mut normals = hs.normals.clone();
    let mut offsets = hs.offsets.clone();
    match side {
        Side::Below => {
            normals.push(h.normal.components().to_vec());
            offsets.push(h.offset);
        }
        Side::Above => {
            normals.push(linalg::neg(h.normal.components()));
            offsets.push(-h.offset);
        }
    }
    let mut sys = Halfspaces {
        dim: hs.dim,
        normals,
        offsets,
        scale: hs.scale,
    };
    let (margin, witness) = sys.max_margin();
    let tol = 1e-12 * sys.scale.max(1.0);
    if margin > tol {
        sys.prune_redundant();
        match ConvexBody::from_halfspaces_validated(sys) {
            Ok(b) => Ok(Reduced::Body(b)),
            Err(e) => Err(e),
        }
    } else if margin >= -(1e-9 * sys.scale.max(1.0)) {
        Ok(Reduced::Flat {
            system: sys,
            margin,
            witness,
        })
    } else {
        Ok(Reduced::Empty { margin })
    }
}

/// Largest `lambda` (with witness translation `t`) such that
/// `t + lambda C subset K`, by the LP
/// `max lambda  s.t.  a_i . t + lambda h_C(a_i) <= b_i`.
pub fn c_inradius(k: &ConvexBody, c: &ConvexBody) -> Result<(f64, Vec<f64>)> {
    if k.dim() != c.dim() {
        return Err(Error::DimensionMismatch(k.dim(), c.dim()));
    }
    let hs = k.require_halfspaces()?;
    let cp = SupportProfile::of_body(c);
    let d = k.dim();
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::with_capacity(hs.len() + 1);
    for (n, &b) in hs.normals.iter().zip(&hs.offsets) {
        let mut row = n.clone();
        row.push(cp.support(n)?);
        rows.push((row, b));
    }
    // lambda >= 0
    let mut nonneg = vec![0.0; d + 1];
    nonneg[d] = -1.0;
    rows.push((nonneg, 0.0));
    // Validation box on (t, lambda).
    let bx = 1e7 * hs.scale.max(1.0);
    for i in 0..=d {
        for s in [1.0, -1.0] {
            let mut r = vec![0.0; d + 1];
            r[i] = s;
            rows.push((r, bx));
        }
    }
    let mut obj = vec![0.0; d + 1];
    obj[d] = 1.0;
    match lp::maximize(&obj, &rows) {
        LpResult::Optimal { value, mut point } => {
            point.truncate(d);
            Ok((value, point))
        }
        LpResult::Unbounded => Err(Error::InvalidBody("inradius LP unbounded".into())),
        LpResult::Infeasible => Err(Error::InvalidBody("inradius LP infeasible".into())),
    }
}

/// CCW vertex enumeration of a 2D halfspace-represented body.
pub fn enumerate_vertices_2d(body: &ConvexBody) -> Result<Vec<Vec<f64>>> {
    if body.dim() != 2 {
        return Err(Error::RepresentationUnavailable(
            "vertex enumeration is 2D-only".into(),
        ));
    }
    body.vertices()
        .map(|v| v.to_vec())
        .ok_or_else(|| Error::RepresentationUnavailable("no vertex cache".into()))
}

/// Convenience: slice and insist on a full-dimensional piece.
pub fn slice_to_body(k: &ConvexBody, h: &Hyperplane, side: Side) -> Result<Option<ConvexBody>> {
    Ok(slice_with_halfspace(k, h, side)?.body().cloned())
}

/// Intersection of a body with a whole list of halfspaces (used for
/// partition cells); prunes and classifies.
pub fn intersect_with_system(k: &ConvexBody, extra: &Halfspaces) -> Result<Reduced> {
    if k.dim() != extra.dim {
        return Err(Error::DimensionMismatch(extra.dim, k.dim()));
    }
    let hs = k.require_halfspaces()?;
    let mut normals = hs.normals.clone();
    let mut offsets = hs.offsets.clone();
    normals.extend(extra.normals.iter().cloned());
    offsets.extend(extra.offsets.iter().copied());
    let mut sys = Halfspaces {
        dim: hs.dim,
        normals,
        offsets,
        scale: hs.scale.max(extra.scale),
    };
    let (margin, _) = sys.max_margin();
    if margin > 1e-12 * sys.scale.max(1.0) {
        sys.prune_redundant();
    }
    Ok(classify(sys))
}
