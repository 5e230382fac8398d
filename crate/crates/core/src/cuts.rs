//! Successive hyperplane cut trees, hyperplane arrangements, Voronoi
//! partitions, the optimal-cut construction, and the partition theorem
//! verifiers.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ops::{intersect_with_system, slice_with_halfspace, Reduced, Side};
use crate::geometry::width::minimal_relative_width;
use crate::geometry::{ConvexBody, Direction, Halfspaces, Hyperplane};
use crate::inradius::successive_inradius;
use crate::linalg;
use crate::randutil;

/// Binary tree of successive hyperplane cuts; every internal node splits one
/// piece, so n leaves come from n-1 cuts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CutTreeJson", into = "CutTreeJson")]
pub enum CutTree {
    Leaf,
    Cut {
        plane: Hyperplane,
        below: Box<CutTree>,
        above: Box<CutTree>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CutTreeJson {
    Leaf(String),
    Cut {
        cut: Hyperplane,
        below: Box<CutTreeJson>,
        above: Box<CutTreeJson>,
    },
}

impl TryFrom<CutTreeJson> for CutTree {
    type Error = Error;
    fn try_from(j: CutTreeJson) -> Result<Self> {
        match j {
            CutTreeJson::Leaf(s) if s == "leaf" => Ok(CutTree::Leaf),
            CutTreeJson::Leaf(s) => Err(Error::InvalidInput(format!(
                "expected \"leaf\", found {s:?}"
            ))),
            CutTreeJson::Cut { cut, below, above } => Ok(CutTree::Cut {
                plane: cut,
                below: Box::new(CutTree::try_from(*below)?),
                above: Box::new(CutTree::try_from(*above)?),
            }),
        }
    }
}

impl From<CutTree> for CutTreeJson {
    fn from(t: CutTree) -> CutTreeJson {
        match t {
            CutTree::Leaf => CutTreeJson::Leaf("leaf".into()),
            CutTree::Cut { plane, below, above } => CutTreeJson::Cut {
                cut: plane,
                below: Box::new((*below).into()),
                above: Box::new((*above).into()),
            },
        }
    }
}

impl CutTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            CutTree::Leaf => 1,
            CutTree::Cut { below, above, .. } => below.leaf_count() + above.leaf_count(),
        }
    }

    pub fn cut_count(&self) -> usize {
        self.leaf_count() - 1
    }

    /// Replaces the `index`-th leaf (preorder) by a cut node. Used by the
    /// random tree generator.
    fn split_leaf(&mut self, index: usize, plane: Hyperplane) -> bool {
        match self {
            CutTree::Leaf => {
                if index == 0 {
                    *self = CutTree::Cut {
                        plane,
                        below: Box::new(CutTree::Leaf),
                        above: Box::new(CutTree::Leaf),
                    };
                    true
                } else {
                    false
                }
            }
            CutTree::Cut { below, above, .. } => {
                let nb = below.leaf_count();
                if index < nb {
                    below.split_leaf(index, plane)
                } else {
                    above.split_leaf(index - nb, plane)
                }
            }
        }
    }
}

/// How a partition family was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    SuccessiveCuts,
    Voronoi,
    Arrangement,
    User,
}

impl Provenance {
    /// Successive cuts and Voronoi cells are the certified inductive
    /// families; everything else runs the inequality checks with the
    /// hypothesis marked unverified.
    pub fn certified_inductive(&self) -> bool {
        matches!(self, Provenance::SuccessiveCuts | Provenance::Voronoi)
    }
}

/// Closed convex cells with pairwise disjoint interiors, relative to a host
/// body.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PartitionFamily {
    pub cells: Vec<ConvexBody>,
    pub provenance: Provenance,
    pub host_body: ConvexBody,
}

impl PartitionFamily {
    /// Pairwise interior-disjointness check: the joint constraint system of
    /// two cells must have no interior. All pairs when few, a deterministic
    /// sample otherwise.
    pub fn check_disjoint_interiors(&self) -> Result<()> {
        let n = self.cells.len();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        if pairs.len() > 64 {
            let mut rng = randutil::trial_rng(0x9e37_79b9, 0);
            for k in (1..pairs.len()).rev() {
                pairs.swap(k, rng.gen_range(0..=k));
            }
            pairs.truncate(64);
        }
        for (i, j) in pairs {
            let (Some(a), Some(b)) = (self.cells[i].halfspaces(), self.cells[j].halfspaces())
            else {
                continue;
            };
            let mut normals = a.normals.clone();
            let mut offsets = a.offsets.clone();
            normals.extend(b.normals.iter().cloned());
            offsets.extend(b.offsets.iter().copied());
            let sys = Halfspaces {
                dim: a.dim,
                normals,
                offsets,
                scale: a.scale.max(b.scale),
            };
            let (margin, _) = sys.max_margin();
            if margin > 1e-7 * sys.scale.max(1.0) {
                return Err(Error::InvalidInput(format!(
                    "cells {i} and {j} share interior (margin {margin:.3e})"
                )));
            }
        }
        Ok(())
    }
}

/// Applies the successive cuts to K, yielding one piece per leaf. Every cut
/// must hit the interior of the region it splits.
pub fn apply_cut_tree(k: &ConvexBody, tree: &CutTree) -> Result<PartitionFamily> {
    let mut cells = Vec::with_capacity(tree.leaf_count());
    let mut node_index = 0usize;
    apply_rec(k, tree, &mut cells, &mut node_index)?;
    Ok(PartitionFamily {
        cells,
        provenance: Provenance::SuccessiveCuts,
        host_body: k.clone(),
    })
}

fn apply_rec(
    region: &ConvexBody,
    tree: &CutTree,
    out: &mut Vec<ConvexBody>,
    node_index: &mut usize,
) -> Result<()> {
    match tree {
        CutTree::Leaf => {
            out.push(region.clone());
            Ok(())
        }
        CutTree::Cut { plane, below, above } => {
            let index = *node_index;
            *node_index += 1;
            let lo = slice_with_halfspace(region, plane, Side::Below)?;
            let hi = slice_with_halfspace(region, plane, Side::Above)?;
            match (lo, hi) {
                (Reduced::Body(lo), Reduced::Body(hi)) => {
                    apply_rec(&lo, below, out, node_index)?;
                    apply_rec(&hi, above, out, node_index)
                }
                _ => Err(Error::CutMissesRegion { index }),
            }
        }
    }
}

/// Maximum number of hyperplanes the exact arrangement enumerator accepts.
pub const MAX_ARRANGEMENT_HYPERPLANES: usize = 16;

/// All full-dimensional cells of K sliced by a set of hyperplanes (general
/// position not required; cells are sign-vector intersections).
pub fn arrangement_pieces(k: &ConvexBody, hyperplanes: &[Hyperplane]) -> Result<PartitionFamily> {
    if hyperplanes.len() > MAX_ARRANGEMENT_HYPERPLANES {
        return Err(Error::TooManyHyperplanes(
            hyperplanes.len(),
            MAX_ARRANGEMENT_HYPERPLANES,
        ));
    }
    let mut cells = vec![k.clone()];
    for h in hyperplanes {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in &cells {
            for side in [Side::Below, Side::Above] {
                if let Reduced::Body(piece) = slice_with_halfspace(cell, h, side)? {
                    next.push(piece);
                }
            }
        }
        cells = next;
    }
    Ok(PartitionFamily {
        cells,
        provenance: Provenance::Arrangement,
        host_body: k.clone(),
    })
}

/// The optimal successive-cut tree: n-1 parallel hyperplanes normal to the
/// minimal C-width direction of the rho-rounded body (rho = r_C(K, mn)),
/// equally spaced along its support interval.
pub fn optimal_conway_cuts(
    k: &ConvexBody,
    c: &ConvexBody,
    n: u32,
    m: u32,
    tol: f64,
) -> Result<CutTree> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    if n == 1 {
        return Ok(CutTree::Leaf);
    }
    let rho = successive_inradius(k, c, m * n, tol)?.rho;
    let c0 = c.recentered()?;
    let eroded = match crate::geometry::ops::erode(k, &c0, rho)? {
        Reduced::Body(b) => b,
        _ => {
            return Err(Error::InvalidBody(
                "erosion degenerate at the optimal-cut radius".into(),
            ))
        }
    };
    let u = minimal_relative_width(&eroded, &c0)?.arg_direction;
    let uv = u.components();

    // Support interval of the rounded body along u: the erosion interval
    // widened by rho * h_C on each side.
    let ep = crate::geometry::width::SupportProfile::of_body(&eroded);
    let cp = crate::geometry::width::SupportProfile::of_body(&c0);
    let hi = ep.support(uv)? + rho * cp.support(uv)?;
    let lo = -(ep.support(&linalg::neg(uv))? + rho * cp.support(&linalg::neg(uv))?);

    // Each cut peels the bottom strip off; later cuts live in the `above`
    // subtree. Built innermost-first.
    let mut tree = CutTree::Leaf;
    for i in (1..n).rev() {
        let offset = lo + (hi - lo) * i as f64 / n as f64;
        tree = CutTree::Cut {
            plane: Hyperplane::new(u.clone(), offset),
            below: Box::new(CutTree::Leaf),
            above: Box::new(tree),
        };
    }
    Ok(tree)
}

/// Greatest m-th successive C-inradius over the pieces, with the attaining
/// index.
pub fn greatest_piece_inradius(
    pieces: &PartitionFamily,
    c: &ConvexBody,
    m: u32,
    tol: f64,
) -> Result<(f64, usize)> {
    if pieces.cells.is_empty() {
        return Err(Error::InvalidInput("no pieces".into()));
    }
    let mut best = (f64::NEG_INFINITY, 0usize);
    for (i, cell) in pieces.cells.iter().enumerate() {
        let r = successive_inradius(cell, c, m, tol)?.rho;
        if r > best.0 {
            best = (r, i);
        }
    }
    Ok(best)
}

/// Voronoi cells of the sites, clipped to `clip_box` (which must contain the
/// body of interest). Cells whose clipped interior is empty are dropped with
/// a log entry.
pub fn voronoi_partition(sites: &[Vec<f64>], clip_box: &ConvexBody) -> Result<PartitionFamily> {
    if sites.is_empty() {
        return Err(Error::InvalidInput("no sites".into()));
    }
    let d = clip_box.dim();
    if sites.iter().any(|s| s.len() != d) {
        return Err(Error::DimensionMismatch(sites[0].len(), d));
    }
    let scale = sites
        .iter()
        .flat_map(|s| s.iter())
        .fold(1.0f64, |a, &x| a.max(x.abs()));
    for i in 0..sites.len() {
        for j in i + 1..sites.len() {
            if linalg::dist(&sites[i], &sites[j]) <= 1e-12 * scale {
                return Err(Error::DuplicateSites(i, j));
            }
        }
    }
    let mut cells = Vec::with_capacity(sites.len());
    for (i, si) in sites.iter().enumerate() {
        if sites.len() == 1 {
            cells.push(clip_box.clone());
            break;
        }
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for (j, sj) in sites.iter().enumerate() {
            if i == j {
                continue;
            }
            // Perpendicular bisector: <x, s_j - s_i> <= (|s_j|^2 - |s_i|^2)/2.
            normals.push(linalg::sub(sj, si));
            offsets.push((linalg::dot(sj, sj) - linalg::dot(si, si)) / 2.0);
        }
        let sys = Halfspaces::new(normals, offsets)?;
        match intersect_with_system(clip_box, &sys)? {
            Reduced::Body(cell) => cells.push(cell),
            _ => {
                log::debug!("voronoi cell {i} has empty interior inside the clip box; dropped");
            }
        }
    }
    Ok(PartitionFamily {
        cells,
        provenance: Provenance::Voronoi,
        host_body: clip_box.clone(),
    })
}

/// Per-cell contribution to the partition inequality report.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CellContribution {
    pub cell: usize,
    pub inradius: f64,
    pub relative_width: f64,
}

/// Report for the inductive-partition inequalities: the successive-inradius
/// sum bound and its minimal C-width corollary.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PartitionReport {
    pub m: u32,
    pub per_cell: Vec<CellContribution>,
    pub sum_inradii: f64,
    pub host_inradius: f64,
    pub deficit: f64,
    pub sum_widths: f64,
    pub host_width: f64,
    pub width_deficit: f64,
    pub dropped_cells: Vec<usize>,
    pub violation: bool,
    pub hypothesis_certified: bool,
}

/// Checks `sum_i r_C(V_i cap K, m) >= r_C(K, m)` and the width corollary
/// over the cells of a partition. Cells meeting K without interior are
/// dropped, as the theorem hypothesis requires. Uncertified provenances run
/// only when `allow_uncertified` is set; the report then labels the
/// inductive hypothesis unverified.
pub fn verify_partition_inequality(
    k: &ConvexBody,
    c: &ConvexBody,
    partition: &PartitionFamily,
    m: u32,
    tol: f64,
    allow_uncertified: bool,
) -> Result<PartitionReport> {
    if !partition.provenance.certified_inductive() && !allow_uncertified {
        return Err(Error::InvalidInput(
            "partition provenance is not a certified inductive family; pass the override to run anyway".into(),
        ));
    }
    let mut per_cell = Vec::new();
    let mut dropped = Vec::new();
    for (i, cell) in partition.cells.iter().enumerate() {
        let Some(cell_hs) = cell.halfspaces() else {
            return Err(Error::RepresentationUnavailable(format!(
                "partition cell {i} has no halfspace form"
            )));
        };
        match intersect_with_system(k, cell_hs)? {
            Reduced::Body(piece) => {
                let r = successive_inradius(&piece, c, m, tol)?.rho;
                let w = minimal_relative_width(&piece, c)?.value;
                per_cell.push(CellContribution {
                    cell: i,
                    inradius: r,
                    relative_width: w,
                });
            }
            _ => {
                log::debug!("cell {i} meets the body without interior; dropped per hypothesis");
                dropped.push(i);
            }
        }
    }
    let sum_inradii: f64 = per_cell.iter().map(|c| c.inradius).sum();
    let sum_widths: f64 = per_cell.iter().map(|c| c.relative_width).sum();
    let host_inradius = successive_inradius(k, c, m, tol)?.rho;
    let host_width = minimal_relative_width(k, c)?.value;
    let deficit = sum_inradii - host_inradius;
    let width_deficit = sum_widths - host_width;
    let slack = (per_cell.len() as f64 + 1.0) * tol;
    Ok(PartitionReport {
        m,
        per_cell,
        sum_inradii,
        host_inradius,
        deficit,
        sum_widths,
        host_width,
        width_deficit,
        dropped_cells: dropped,
        violation: deficit < -slack || width_deficit < -slack,
        hypothesis_certified: partition.provenance.certified_inductive(),
    })
}

/// A random successive cut tree with `n_pieces` leaves: uniform piece
/// choice, uniform direction, offset uniform over the middle of the piece's
/// support interval (cuts closer than 1e-3 of the interval to either end
/// are rejected as near-tangent).
pub fn random_cut_tree<R: Rng>(
    k: &ConvexBody,
    n_pieces: u32,
    rng: &mut R,
) -> Result<(CutTree, PartitionFamily)> {
    let mut tree = CutTree::Leaf;
    let mut pieces = vec![k.clone()];
    for _ in 1..n_pieces {
        let idx = rng.gen_range(0..pieces.len());
        let piece = pieces[idx].clone();
        let profile = crate::geometry::width::SupportProfile::of_body(&piece);
        // Rejection loop for near-tangent cuts.
        let (plane, lo_piece, hi_piece) = loop {
            let u = Direction::new(randutil::random_unit_vector(rng, k.dim()))?;
            let hi = profile.support(u.components())?;
            let lo = -profile.support(&linalg::neg(u.components()))?;
            let span = hi - lo;
            let offset = rng.gen_range(0.0f64..1.0) * span + lo;
            if (offset - lo).min(hi - offset) < 1e-3 * span {
                continue;
            }
            let plane = Hyperplane::new(u, offset);
            let below = slice_with_halfspace(&piece, &plane, Side::Below)?;
            let above = slice_with_halfspace(&piece, &plane, Side::Above)?;
            if let (Reduced::Body(b), Reduced::Body(a)) = (below, above) {
                break (plane, b, a);
            }
        };
        // The preorder leaf index of `pieces[idx]` equals idx because leaves
        // are stored in preorder.
        let ok = tree.split_leaf(idx, plane);
        debug_assert!(ok);
        pieces.splice(idx..=idx, [lo_piece, hi_piece]);
    }
    Ok((
        tree,
        PartitionFamily {
            cells: pieces,
            provenance: Provenance::SuccessiveCuts,
            host_body: k.clone(),
        },
    ))
}

/// Check tolerance for the successive-cut theorem: exact 2D direction
/// searches support 1e-5; in d >= 3 the searches are sampled, so the
/// tolerance widens by a relative term reflecting the grid resolution.
pub(crate) fn conway_check_tolerance(dim: usize, tol: f64, bound: f64) -> f64 {
    let base = (10.0 * tol).max(1e-5);
    if dim == 2 {
        base
    } else {
        base.max(2e-4 * bound.abs())
    }
}

/// Conway-theorem verification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConwayReport {
    pub n: u32,
    pub m: u32,
    pub bound: f64,
    pub optimal_value: f64,
    pub optimal_tree: CutTree,
    /// Smallest `greatest piece inradius - bound` over the random trees
    /// (nonnegative up to tolerance, by the theorem).
    pub worst_margin: f64,
    pub trials: u32,
    pub violation: bool,
}

/// Checks the generalized successive-cut theorem on one (K, C) instance:
/// every random successive cut tree has greatest piece r_C(., m) at least
/// r_C(K, mn), and the constructed optimal tree attains it.
pub fn verify_conway_theorem(
    k: &ConvexBody,
    c: &ConvexBody,
    n: u32,
    m: u32,
    trials: u32,
    seed: u64,
    tol: f64,
) -> Result<ConwayReport> {
    let bound = successive_inradius(k, c, m * n, tol)?.rho;
    let opt_tree = optimal_conway_cuts(k, c, n, m, tol)?;
    let opt_pieces = apply_cut_tree(k, &opt_tree)?;
    let (optimal_value, _) = greatest_piece_inradius(&opt_pieces, c, m, tol)?;

    let margins = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<f64> {
            let mut rng = randutil::trial_rng(seed, t as u64);
            let (_, pieces) = random_cut_tree(k, n, &mut rng)?;
            let (g, _) = greatest_piece_inradius(&pieces, c, m, tol)?;
            Ok(g - bound)
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst_margin = if margins.is_empty() {
        0.0
    } else {
        margins.iter().copied().fold(f64::INFINITY, f64::min)
    };

    let check_tol = conway_check_tolerance(k.dim(), tol, bound);
    let violation = worst_margin < -check_tol || (optimal_value - bound).abs() > check_tol;
    if violation {
        let instance = serde_json::json!({
            "body": k,
            "gauge": c,
            "n": n,
            "m": m,
            "seed": seed,
            "bound": bound,
            "optimalValue": optimal_value,
            "worstMargin": worst_margin,
        });
        return Err(Error::ViolationFound(instance.to_string()));
    }
    Ok(ConwayReport {
        n,
        m,
        bound,
        optimal_value,
        optimal_tree: opt_tree,
        worst_margin,
        trials,
        violation,
    })
}
