//! Convex body representations and their validation.
//!
//! The canonical representation is a list of halfspaces `a_i . x <= b_i`
//! with unit normals; erosion and hyperplane slicing are exact offset
//! arithmetic in this form. 2D bodies additionally cache their vertex hull
//! (the cheap dual), and small higher-dimensional halfspace bodies cache an
//! enumerated vertex list so support queries avoid the LP.

pub mod hull;
pub mod ops;
pub mod width;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, LpResult};

/// Validation box factor: support values beyond `BOX_FACTOR * scale` flag an
/// unbounded input.
const BOX_FACTOR: f64 = 1e7;

/// Cap on the brute-force vertex enumeration work for d >= 3 caches.
const MAX_VERTEX_COMBINATIONS: usize = 200_000;

/// Supported dimension range.
pub const MAX_DIMENSION: usize = 8;

fn unit_vec(d: usize, i: usize, sign: f64) -> Vec<f64> {
    let mut v = vec![0.0; d];
    v[i] = sign;
    v
}

/// A unit vector in dimension >= 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Direction(Vec<f64>);

impl Direction {
    /// Normalizes `v`; rejects zero, non-finite or 1-dimensional input.
    pub fn new(mut v: Vec<f64>) -> Result<Self> {
        if v.len() < 2 {
            return Err(Error::InvalidDirection(format!(
                "dimension {} < 2",
                v.len()
            )));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidDirection("non-finite component".into()));
        }
        if linalg::normalize(&mut v) <= 1e-300 {
            return Err(Error::InvalidDirection("zero vector".into()));
        }
        Ok(Direction(v))
    }

    /// Wraps an already-unit vector, checking the norm to 1e-9.
    pub fn from_unit(v: Vec<f64>) -> Result<Self> {
        let n = linalg::norm(&v);
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDirection(format!("norm {n} deviates from 1")));
        }
        Self::new(v)
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn opposite(&self) -> Direction {
        Direction(linalg::neg(&self.0))
    }

    /// Flips the sign so the first component over 1e-12 in magnitude is
    /// positive, and snaps near-zero components; used for deterministic
    /// tie-breaking among minimizing directions.
    pub fn canonical(&self) -> Direction {
        let mut v = self.0.clone();
        for x in v.iter_mut() {
            if x.abs() < 1e-12 {
                *x = 0.0;
            }
        }
        if let Some(first) = v.iter().find(|x| x.abs() > 0.0) {
            if *first < 0.0 {
                v = linalg::neg(&v);
            }
        }
        linalg::normalize(&mut v);
        for x in v.iter_mut() {
            if *x == 0.0 {
                *x = 0.0; // clear any -0.0 left by negation
            }
        }
        Direction(v)
    }
}

impl TryFrom<Vec<f64>> for Direction {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Direction::new(v)
    }
}

impl From<Direction> for Vec<f64> {
    fn from(d: Direction) -> Vec<f64> {
        d.0
    }
}

/// Points `x` with `normal . x = offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Direction,
    pub offset: f64,
}

impl Hyperplane {
    pub fn new(normal: Direction, offset: f64) -> Self {
        Hyperplane { normal, offset }
    }
}

/// The closed slab `low <= normal . x <= high`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlankJson", into = "PlankJson")]
pub struct Plank {
    normal: Direction,
    low: f64,
    high: f64,
}

#[derive(Serialize, Deserialize)]
struct PlankJson {
    normal: Vec<f64>,
    low: f64,
    high: f64,
}

impl TryFrom<PlankJson> for Plank {
    type Error = Error;
    fn try_from(p: PlankJson) -> Result<Self> {
        Plank::new(Direction::new(p.normal)?, p.low, p.high)
    }
}

impl From<Plank> for PlankJson {
    fn from(p: Plank) -> PlankJson {
        PlankJson {
            normal: p.normal.components().to_vec(),
            low: p.low,
            high: p.high,
        }
    }
}

impl Plank {
    pub fn new(normal: Direction, low: f64, high: f64) -> Result<Self> {
        if !(low <= high) {
            return Err(Error::InvalidInput(format!(
                "plank offsets out of order: {low} > {high}"
            )));
        }
        Ok(Plank { normal, low, high })
    }

    pub fn normal(&self) -> &Direction {
        &self.normal
    }

    pub fn low(&self) -> f64 {
        self.low
    }

    pub fn high(&self) -> f64 {
        self.high
    }

    /// Euclidean width: distance between the two boundary hyperplanes.
    pub fn width(&self) -> f64 {
        self.high - self.low
    }

    /// Planks are closed: boundary points count as inside.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let t = linalg::dot(self.normal.components(), x);
        t >= self.low - tol && t <= self.high + tol
    }
}

/// Raw halfspace system `a_i . x <= b_i` with unit normals. Unlike
/// [`ConvexBody`] this makes no validity promises; erosions probed past the
/// inradius produce empty or lower-dimensional systems that still answer
/// support queries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspaces {
    pub dim: usize,
    pub normals: Vec<Vec<f64>>,
    pub offsets: Vec<f64>,
    /// Scale hint for tolerances and the validation box.
    pub scale: f64,
}

impl Halfspaces {
    /// Normalizes the rows (offsets divided alongside); rejects near-zero
    /// normals and inconsistent dimensions.
    pub fn new(normals: Vec<Vec<f64>>, offsets: Vec<f64>) -> Result<Self> {
        if normals.is_empty() || normals.len() != offsets.len() {
            return Err(Error::InvalidBody(
                "halfspace list empty or lengths differ".into(),
            ));
        }
        let dim = normals[0].len();
        if !(2..=MAX_DIMENSION).contains(&dim) {
            return Err(Error::InvalidBody(format!(
                "dimension {dim} outside [2, {MAX_DIMENSION}]"
            )));
        }
        let mut out_n = Vec::with_capacity(normals.len());
        let mut out_b = Vec::with_capacity(normals.len());
        for (mut n, mut b) in normals.into_iter().zip(offsets) {
            if n.len() != dim {
                return Err(Error::DimensionMismatch(n.len(), dim));
            }
            if n.iter().any(|x| !x.is_finite()) || !b.is_finite() {
                return Err(Error::InvalidBody("non-finite halfspace".into()));
            }
            let norm = linalg::normalize(&mut n);
            if norm <= 1e-12 {
                return Err(Error::InvalidBody("zero normal".into()));
            }
            b /= norm;
            out_n.push(n);
            out_b.push(b);
        }
        let scale = out_b.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
        Ok(Halfspaces {
            dim,
            normals: out_n,
            offsets: out_b,
            scale,
        })
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(n, &b)| linalg::dot(n, x) <= b + tol)
    }

    fn rows_with_box(&self) -> Vec<(Vec<f64>, f64)> {
        let bx = BOX_FACTOR * self.scale.max(1.0);
        let mut rows: Vec<(Vec<f64>, f64)> = self
            .normals
            .iter()
            .cloned()
            .zip(self.offsets.iter().copied())
            .collect();
        for i in 0..self.dim {
            rows.push((unit_vec(self.dim, i, 1.0), bx));
            rows.push((unit_vec(self.dim, i, -1.0), bx));
        }
        rows
    }

    /// Support value and an attaining point by LP, inside the validation
    /// box. Errors with `UnboundedBody` when the optimum escapes the box.
    pub fn support_lp(&self, u: &[f64]) -> Result<(f64, Vec<f64>)> {
        let bx = BOX_FACTOR * self.scale.max(1.0);
        match lp::maximize(u, &self.rows_with_box()) {
            LpResult::Optimal { value, point } => {
                if value >= 0.99 * bx {
                    Err(Error::UnboundedBody(u.to_vec()))
                } else {
                    Ok((value, point))
                }
            }
            LpResult::Infeasible => Err(Error::InvalidBody("infeasible system".into())),
            LpResult::Unbounded => Err(Error::UnboundedBody(u.to_vec())),
        }
    }

    /// Largest margin `s` with `a_i . x + s <= b_i`: positive for
    /// full-dimensional systems, ~0 for lower-dimensional nonempty ones,
    /// negative for empty ones (an infeasibility certificate).
    pub fn max_margin(&self) -> (f64, Vec<f64>) {
        let d = self.dim;
        let mut rows: Vec<(Vec<f64>, f64)> = Vec::with_capacity(self.len() + 2 * d);
        for (n, &b) in self.normals.iter().zip(&self.offsets) {
            let mut r = n.clone();
            r.push(1.0);
            rows.push((r, b));
        }
        let bx = BOX_FACTOR * self.scale.max(1.0);
        for i in 0..d {
            for s in [1.0, -1.0] {
                let mut r = unit_vec(d, i, s);
                r.push(1.0);
                rows.push((r, bx));
            }
        }
        let mut obj = vec![0.0; d + 1];
        obj[d] = 1.0;
        match lp::maximize(&obj, &rows) {
            LpResult::Optimal { value, mut point } => {
                point.truncate(d);
                (value, point)
            }
            // Unreachable: the margin LP is always feasible and box-bounded.
            _ => (f64::NEG_INFINITY, vec![0.0; d]),
        }
    }

    /// Removes constraints implied by the others (support LP against the
    /// remaining rows plus the validation box).
    #[allow(clippy::needless_range_loop)]
    pub fn prune_redundant(&mut self) {
        let tol = 1e-9 * self.scale.max(1.0);
        let mut keep: Vec<bool> = vec![true; self.len()];
        for i in 0..self.len() {
            let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
            for j in 0..self.len() {
                if j != i && keep[j] {
                    rows.push((self.normals[j].clone(), self.offsets[j]));
                }
            }
            if rows.is_empty() {
                continue;
            }
            let bx = BOX_FACTOR * self.scale.max(1.0);
            for k in 0..self.dim {
                rows.push((unit_vec(self.dim, k, 1.0), bx));
                rows.push((unit_vec(self.dim, k, -1.0), bx));
            }
            if let LpResult::Optimal { value, .. } = lp::maximize(&self.normals[i], &rows) {
                if value <= self.offsets[i] + tol {
                    keep[i] = false;
                }
            }
        }
        let mut n = Vec::new();
        let mut b = Vec::new();
        for i in 0..self.len() {
            if keep[i] {
                n.push(self.normals[i].clone());
                b.push(self.offsets[i]);
            }
        }
        self.normals = n;
        self.offsets = b;
    }

    /// Vertex list when cheap to enumerate: exact pairwise intersection in
    /// 2D, brute-force subsets in higher dimension under a work cap.
    pub fn try_vertices(&self) -> Option<Vec<Vec<f64>>> {
        if self.dim == 2 {
            Some(hull::vertices_from_halfspaces_2d(
                &self.normals,
                &self.offsets,
                self.scale,
            ))
        } else {
            hull::vertices_from_halfspaces_nd(
                &self.normals,
                &self.offsets,
                self.scale,
                MAX_VERTEX_COMBINATIONS,
            )
        }
    }
}

/// Geometric representation of a convex body.
#[derive(Debug, Clone, PartialEq)]
pub enum BodyRep {
    Hpoly(Halfspaces),
    Vpoly(Vec<Vec<f64>>),
    Ball { center: Vec<f64>, radius: f64 },
}

/// A validated convex body: bounded with non-empty interior.
///
/// Immutable after construction; all operations take `&self` and are safe to
/// share across threads.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "BodyJson", into = "BodyJson")]
pub struct ConvexBody {
    dim: usize,
    rep: BodyRep,
    /// Eager vertex cache: CCW hull in 2D, the input points for vertex
    /// bodies in d >= 3.
    verts: Option<Vec<Vec<f64>>>,
    /// Lazy vertex enumeration for halfspace bodies in d >= 3 (filled on
    /// the first support-profile request; None when the enumeration is too
    /// large).
    nd_verts: std::sync::OnceLock<Option<Vec<Vec<f64>>>>,
    /// Halfspace dual for vertex-represented bodies (2D always; d >= 3 for
    /// small vertex counts).
    hpoly_dual: Option<Halfspaces>,
    scale: f64,
}

impl PartialEq for ConvexBody {
    fn eq(&self, other: &Self) -> bool {
        // Caches are derived data; equality is representation equality.
        self.dim == other.dim && self.rep == other.rep
    }
}

/// On-disk schema for bodies. Normals need not be unit on input; they are
/// normalized on load.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum BodyJson {
    Hpoly {
        normals: Vec<Vec<f64>>,
        offsets: Vec<f64>,
    },
    Vpoly {
        vertices: Vec<Vec<f64>>,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
}

impl TryFrom<BodyJson> for ConvexBody {
    type Error = Error;
    fn try_from(j: BodyJson) -> Result<Self> {
        match j {
            BodyJson::Hpoly { normals, offsets } => ConvexBody::from_halfspaces(normals, offsets),
            BodyJson::Vpoly { vertices } => ConvexBody::from_vertices(vertices),
            BodyJson::Ball { center, radius } => ConvexBody::ball(center, radius),
        }
    }
}

impl From<ConvexBody> for BodyJson {
    fn from(b: ConvexBody) -> BodyJson {
        match b.rep {
            BodyRep::Hpoly(hs) => BodyJson::Hpoly {
                normals: hs.normals,
                offsets: hs.offsets,
            },
            BodyRep::Vpoly(vertices) => BodyJson::Vpoly { vertices },
            BodyRep::Ball { center, radius } => BodyJson::Ball { center, radius },
        }
    }
}

impl ConvexBody {
    /// Builds and validates a halfspace body: normalized rows, LP-bounded in
    /// each +-coordinate direction, and full-dimensional (positive maximal
    /// inscribed margin).
    pub fn from_halfspaces(normals: Vec<Vec<f64>>, offsets: Vec<f64>) -> Result<Self> {
        let mut hs = Halfspaces::new(normals, offsets)?;
        // Boundedness: support in +-e_i must stay inside the validation box.
        let mut coord_max = 0.0f64;
        for i in 0..hs.dim {
            for s in [1.0, -1.0] {
                let (v, _) = hs.support_lp(&unit_vec(hs.dim, i, s))?;
                coord_max = coord_max.max(v.abs());
            }
        }
        hs.scale = coord_max.max(1e-12);
        Self::from_halfspaces_validated(hs)
    }

    /// Wraps a system already known to be bounded (erosions and slices of
    /// bounded bodies); still checks full-dimensionality and builds caches.
    pub(crate) fn from_halfspaces_validated(hs: Halfspaces) -> Result<Self> {
        let (margin, _) = hs.max_margin();
        if margin <= 1e-12 * hs.scale.max(1.0) {
            return Err(Error::InvalidBody(format!(
                "halfspace body has empty interior (margin {margin:.3e})"
            )));
        }
        let verts = (hs.dim == 2).then(|| hs.try_vertices()).flatten();
        let scale = verts
            .as_ref()
            .filter(|v| !v.is_empty())
            .map(|v| {
                v.iter()
                    .flat_map(|p| p.iter())
                    .fold(0.0f64, |a, &x| a.max(x.abs()))
            })
            .unwrap_or(hs.scale)
            .max(1e-12);
        Ok(ConvexBody {
            dim: hs.dim,
            rep: BodyRep::Hpoly(hs),
            verts,
            nd_verts: Default::default(),
            hpoly_dual: None,
            scale,
        })
    }

    /// Builds a vertex body. In 2D the vertex list is canonicalized to the
    /// CCW hull and the halfspace dual is cached; in d >= 3 the points must
    /// affinely span the space, and small lists get a facet-enumerated dual.
    pub fn from_vertices(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidBody("no vertices".into()));
        }
        let dim = points[0].len();
        if !(2..=MAX_DIMENSION).contains(&dim) {
            return Err(Error::InvalidBody(format!(
                "dimension {dim} outside [2, {MAX_DIMENSION}]"
            )));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidBody("mixed vertex dimensions".into()));
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidBody("non-finite vertex".into()));
        }
        let scale = points
            .iter()
            .flat_map(|p| p.iter())
            .fold(1e-12f64, |a, &x| a.max(x.abs()));
        if dim == 2 {
            let hull = hull::convex_hull_2d(&points)
                .map_err(|e| Error::InvalidBody(format!("not full-dimensional: {e}")))?;
            let (n, b) = hull::polygon_halfspaces(&hull);
            let mut hs = Halfspaces::new(n, b)?;
            hs.scale = scale;
            Ok(ConvexBody {
                dim,
                rep: BodyRep::Vpoly(hull.clone()),
                verts: Some(hull),
                nd_verts: Default::default(),
                hpoly_dual: Some(hs),
                scale,
            })
        } else {
            let edges: Vec<Vec<f64>> = points[1..]
                .iter()
                .map(|p| linalg::sub(p, &points[0]))
                .collect();
            if linalg::rank(&edges, 1e-10 * scale) < dim {
                return Err(Error::InvalidBody(
                    "vertices do not span the space (empty interior)".into(),
                ));
            }
            let hpoly_dual = if points.len() <= 12 {
                hull::facets_from_points(&points).ok().and_then(|(n, b)| {
                    Halfspaces::new(n, b).ok().map(|mut hs| {
                        hs.scale = scale;
                        hs
                    })
                })
            } else {
                None
            };
            Ok(ConvexBody {
                dim,
                rep: BodyRep::Vpoly(points.clone()),
                verts: Some(points),
                nd_verts: Default::default(),
                hpoly_dual,
                scale,
            })
        }
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        let dim = center.len();
        if !(2..=MAX_DIMENSION).contains(&dim) {
            return Err(Error::InvalidBody(format!(
                "dimension {dim} outside [2, {MAX_DIMENSION}]"
            )));
        }
        if !(radius > 0.0) || center.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidBody("ball needs finite center, radius > 0".into()));
        }
        let scale = center
            .iter()
            .fold(radius, |a, &x| a.max(x.abs() + radius))
            .max(1e-12);
        Ok(ConvexBody {
            dim,
            rep: BodyRep::Ball { center, radius },
            verts: None,
            nd_verts: Default::default(),
            hpoly_dual: None,
            scale,
        })
    }

    /// Axis-aligned box given per-coordinate intervals.
    pub fn axis_box(intervals: &[(f64, f64)]) -> Result<Self> {
        let d = intervals.len();
        let mut normals = Vec::with_capacity(2 * d);
        let mut offsets = Vec::with_capacity(2 * d);
        for (i, &(lo, hi)) in intervals.iter().enumerate() {
            normals.push(unit_vec(d, i, 1.0));
            offsets.push(hi);
            normals.push(unit_vec(d, i, -1.0));
            offsets.push(-lo);
        }
        Self::from_halfspaces(normals, offsets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rep(&self) -> &BodyRep {
        &self.rep
    }

    /// Largest absolute coordinate: the scale all relative tolerances refer
    /// to.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Halfspace system, if this body has one (native or cached dual).
    pub fn halfspaces(&self) -> Option<&Halfspaces> {
        match &self.rep {
            BodyRep::Hpoly(hs) => Some(hs),
            _ => self.hpoly_dual.as_ref(),
        }
    }

    /// Like [`halfspaces`](Self::halfspaces) but an error naming the issue.
    pub fn require_halfspaces(&self) -> Result<&Halfspaces> {
        self.halfspaces().ok_or_else(|| {
            Error::RepresentationUnavailable(format!(
                "{}-dimensional {} body has no halfspace form",
                self.dim,
                match self.rep {
                    BodyRep::Ball { .. } => "ball",
                    BodyRep::Vpoly(_) => "vertex",
                    BodyRep::Hpoly(_) => "halfspace",
                }
            ))
        })
    }

    /// Hull vertices when known: always in 2D, lazily enumerated for
    /// halfspace bodies in d >= 3 when the subset count is affordable.
    pub fn vertices(&self) -> Option<&[Vec<f64>]> {
        if let Some(v) = self.verts.as_deref() {
            return Some(v);
        }
        if let BodyRep::Hpoly(hs) = &self.rep {
            if self.dim >= 3 {
                return self
                    .nd_verts
                    .get_or_init(|| hs.try_vertices().filter(|v| !v.is_empty()))
                    .as_deref();
            }
        }
        None
    }

    /// A deterministic interior point: the max-margin center for halfspace
    /// bodies, the vertex centroid for vertex bodies, the center for balls.
    pub fn interior_point(&self) -> Vec<f64> {
        match &self.rep {
            BodyRep::Hpoly(hs) => hs.max_margin().1,
            BodyRep::Vpoly(vs) => {
                let mut c = vec![0.0; self.dim];
                for v in vs {
                    for (ci, vi) in c.iter_mut().zip(v) {
                        *ci += vi;
                    }
                }
                linalg::scale(&c, 1.0 / vs.len() as f64)
            }
            BodyRep::Ball { center, .. } => center.clone(),
        }
    }

    /// Whether the origin is interior, with the certifying margin
    /// `min_i (b_i)` (halfspace form) or `radius - |center|` (balls).
    pub fn origin_interior_margin(&self) -> Result<f64> {
        match &self.rep {
            BodyRep::Ball { center, radius } => Ok(radius - linalg::norm(center)),
            _ => {
                let hs = self.require_halfspaces()?;
                Ok(hs
                    .offsets
                    .iter()
                    .fold(f64::INFINITY, |a, &b| a.min(b)))
            }
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        match &self.rep {
            BodyRep::Hpoly(hs) => hs.contains(x, tol),
            BodyRep::Ball { center, radius } => linalg::dist(center, x) <= radius + tol,
            BodyRep::Vpoly(vs) => match &self.hpoly_dual {
                Some(hs) => hs.contains(x, tol),
                // No cached dual: search for a separating functional
                // u.x - t > 0 with u.v_i - t <= 0 and |u|_inf <= 1.
                None => {
                    let d = self.dim;
                    let mut rows: Vec<(Vec<f64>, f64)> = vs
                        .iter()
                        .map(|v| {
                            let mut r = v.clone();
                            r.push(-1.0);
                            (r, 0.0)
                        })
                        .collect();
                    for i in 0..d {
                        for s in [1.0, -1.0] {
                            let mut r = unit_vec(d, i, s);
                            r.push(0.0);
                            rows.push((r, 1.0));
                        }
                    }
                    let mut obj = x.to_vec();
                    obj.push(-1.0);
                    match lp::maximize(&obj, &rows) {
                        LpResult::Optimal { value, .. } => value <= tol,
                        _ => false,
                    }
                }
            },
        }
    }

    /// Translate by `t`; exact on every representation and cache.
    pub fn translate(&self, t: &[f64]) -> Result<Self> {
        if t.len() != self.dim {
            return Err(Error::DimensionMismatch(t.len(), self.dim));
        }
        let shift_hs = |hs: &Halfspaces| -> Halfspaces {
            let offsets = hs
                .normals
                .iter()
                .zip(&hs.offsets)
                .map(|(n, &b)| b + linalg::dot(n, t))
                .collect();
            Halfspaces {
                dim: hs.dim,
                normals: hs.normals.clone(),
                offsets,
                scale: hs.scale + linalg::norm(t),
            }
        };
        let rep = match &self.rep {
            BodyRep::Hpoly(hs) => BodyRep::Hpoly(shift_hs(hs)),
            BodyRep::Vpoly(vs) => BodyRep::Vpoly(vs.iter().map(|v| linalg::add(v, t)).collect()),
            BodyRep::Ball { center, radius } => BodyRep::Ball {
                center: linalg::add(center, t),
                radius: *radius,
            },
        };
        Ok(ConvexBody {
            dim: self.dim,
            rep,
            verts: self
                .verts
                .as_ref()
                .map(|vs| vs.iter().map(|v| linalg::add(v, t)).collect()),
            nd_verts: Default::default(),
            hpoly_dual: self.hpoly_dual.as_ref().map(shift_hs),
            scale: self.scale + linalg::norm(t),
        })
    }

    /// Dilate about the origin by `factor > 0`.
    pub fn dilate(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(Error::InvalidInput(format!("dilation factor {factor}")));
        }
        let scale_hs = |hs: &Halfspaces| -> Halfspaces {
            Halfspaces {
                dim: hs.dim,
                normals: hs.normals.clone(),
                offsets: linalg::scale(&hs.offsets, factor),
                scale: hs.scale * factor,
            }
        };
        let rep = match &self.rep {
            BodyRep::Hpoly(hs) => BodyRep::Hpoly(scale_hs(hs)),
            BodyRep::Vpoly(vs) => {
                BodyRep::Vpoly(vs.iter().map(|v| linalg::scale(v, factor)).collect())
            }
            BodyRep::Ball { center, radius } => BodyRep::Ball {
                center: linalg::scale(center, factor),
                radius: radius * factor,
            },
        };
        Ok(ConvexBody {
            dim: self.dim,
            rep,
            verts: self
                .verts
                .as_ref()
                .map(|vs| vs.iter().map(|v| linalg::scale(v, factor)).collect()),
            nd_verts: Default::default(),
            hpoly_dual: self.hpoly_dual.as_ref().map(scale_hs),
            scale: self.scale * factor,
        })
    }

    /// The body translated so a deterministic interior point sits at the
    /// origin. Width and inradius functionals are translation invariant, so
    /// gauge bodies are recentered this way wherever the origin must be
    /// interior.
    pub fn recentered(&self) -> Result<Self> {
        let c = self.interior_point();
        self.translate(&linalg::neg(&c))
    }
}
