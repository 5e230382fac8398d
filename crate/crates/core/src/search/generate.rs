//! Seeded random instance generators: bodies, plank coverings, hyperplane
//! bundles and partition families. Fixed seed means bitwise-identical
//! output.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::cuts::{voronoi_partition, PartitionFamily};
use crate::error::{Error, Result};
use crate::geometry::hull::facets_from_points;
use crate::geometry::width::SupportProfile;
use crate::geometry::{ConvexBody, Direction, Hyperplane, Plank};
use crate::linalg;
use crate::planks::{covers_body, PlankFamily};
use crate::randutil::{random_in_unit_ball, random_unit_vector};

const MAX_RETRIES: usize = 100;

/// Convex hull of `k` points drawn from the unit ball: vertex form with the
/// cached dual in 2D, facet-enumerated halfspace form in d >= 3. Resamples
/// (bounded retries) until the hull is full-dimensional.
pub fn random_body(seed: u64, d: usize, k: usize) -> Result<ConvexBody> {
    if d < 2 || k < d + 1 {
        return Err(Error::InvalidInput(format!(
            "need d >= 2 and k >= d+1, got d={d}, k={k}"
        )));
    }
    if d >= 3 && k > 12 {
        return Err(Error::InvalidInput(
            "facet enumeration caps generator points at 12 for d >= 3".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_body_with(&mut rng, d, k)
}

/// Same generator driven by an existing stream.
pub fn random_body_with<R: Rng>(rng: &mut R, d: usize, k: usize) -> Result<ConvexBody> {
    for _ in 0..MAX_RETRIES {
        let pts: Vec<Vec<f64>> = (0..k).map(|_| random_in_unit_ball(rng, d)).collect();
        if d == 2 {
            if let Ok(b) = ConvexBody::from_vertices(pts) {
                return Ok(b);
            }
        } else if let Ok((normals, offsets)) = facets_from_points(&pts) {
            if let Ok(b) = ConvexBody::from_halfspaces(normals, offsets) {
                return Ok(b);
            }
        }
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// Centrally symmetric random body: hull of `+-p_i`.
pub fn random_symmetric_body_with<R: Rng>(rng: &mut R, d: usize, k: usize) -> Result<ConvexBody> {
    for _ in 0..MAX_RETRIES {
        let mut pts: Vec<Vec<f64>> = Vec::with_capacity(2 * k);
        for _ in 0..k {
            let p = random_in_unit_ball(rng, d);
            pts.push(linalg::neg(&p));
            pts.push(p);
        }
        if d == 2 {
            if let Ok(b) = ConvexBody::from_vertices(pts) {
                return Ok(b);
            }
        } else if pts.len() <= 12 {
            if let Ok((normals, offsets)) = facets_from_points(&pts) {
                if let Ok(b) = ConvexBody::from_halfspaces(normals, offsets) {
                    return Ok(b);
                }
            }
        } else {
            return Err(Error::InvalidInput(
                "symmetric generator needs 2k <= 12 in d >= 3".into(),
            ));
        }
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// A certified plank covering of K: contiguous slabs along a random
/// direction with random proportions, then bounded random rotations,
/// shifts and widenings per plank, each accepted only if the family still
/// covers K.
pub fn random_plank_covering(
    k: &ConvexBody,
    c: &ConvexBody,
    seed: u64,
    n: usize,
) -> Result<PlankFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_plank_covering_with(k, c, &mut rng, n)
}

pub fn random_plank_covering_with<R: Rng>(
    k: &ConvexBody,
    _c: &ConvexBody,
    rng: &mut R,
    n: usize,
) -> Result<PlankFamily> {
    if n < 1 {
        return Err(Error::InvalidInput("need at least one plank".into()));
    }
    let d = k.dim();
    let u = Direction::new(random_unit_vector(rng, d))?;
    let kp = SupportProfile::of_body(k);
    let hi = kp.support(u.components())?;
    let lo = -kp.support(&linalg::neg(u.components()))?;
    let span = hi - lo;

    // Random proportions for the contiguous sub-slabs.
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2f64..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut planks = Vec::with_capacity(n);
    let mut at = lo;
    for (i, w) in weights.iter().enumerate() {
        let next = if i + 1 == n { hi } else { at + span * w / total };
        planks.push(Plank::new(u.clone(), at, next)?);
        at = next;
    }
    let mut family = PlankFamily::new(planks, k.clone())?;
    debug_assert!(covers_body(k, &family)?.covered);

    // Bounded random perturbations, kept only when coverage survives.
    for pass in 0..2 {
        for i in 0..family.planks.len() {
            let old = family.planks[i].clone();
            let angle: f64 = rng.gen_range(-0.15f64..0.15);
            let shift: f64 = rng.gen_range(-0.05f64..0.05) * span;
            let widen: f64 = rng.gen_range(0.0f64..0.15) * old.width().max(0.05 * span);
            let mut nv = old.normal().components().to_vec();
            let t = random_unit_vector(rng, d);
            for (x, ti) in nv.iter_mut().zip(&t) {
                *x += angle * ti;
            }
            let Ok(normal) = Direction::new(nv) else {
                continue;
            };
            // Rotating a slab about the body means re-expressing its
            // offsets along the new normal: carry the center across and
            // widen.
            let center = 0.5 * (old.low() + old.high());
            let half = 0.5 * old.width() + widen;
            let cand = Plank::new(normal, center + shift - half, center + shift + half)?;
            family.planks[i] = cand;
            if !covers_body(k, &family)?.covered {
                family.planks[i] = old;
            }
        }
        let _ = pass;
    }
    debug_assert!(covers_body(k, &family)?.covered);
    Ok(family)
}

/// `count` random hyperplanes through the middle of K (offsets in the
/// central 80% of the support interval).
pub fn random_hyperplanes_through<R: Rng>(
    k: &ConvexBody,
    rng: &mut R,
    count: usize,
) -> Result<Vec<Hyperplane>> {
    let kp = SupportProfile::of_body(k);
    let d = k.dim();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let u = Direction::new(random_unit_vector(rng, d))?;
        let hi = kp.support(u.components())?;
        let lo = -kp.support(&linalg::neg(u.components()))?;
        let span = hi - lo;
        let offset = rng.gen_range(0.1f64..0.9) * span + lo;
        out.push(Hyperplane::new(u, offset));
    }
    Ok(out)
}

/// Voronoi partition from `sites` random points inside K's bounding box,
/// clipped to an inflated copy of that box.
pub fn random_voronoi_partition<R: Rng>(
    k: &ConvexBody,
    rng: &mut R,
    sites: usize,
) -> Result<PartitionFamily> {
    let kp = SupportProfile::of_body(k);
    let d = k.dim();
    let mut intervals = Vec::with_capacity(d);
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        let hi = kp.support(&e)?;
        e[i] = -1.0;
        let lo = -kp.support(&e)?;
        let pad = 0.5 * (hi - lo).max(0.1);
        intervals.push((lo - pad, hi + pad));
    }
    let clip = ConvexBody::axis_box(&intervals)?;
    for _ in 0..MAX_RETRIES {
        let pts: Vec<Vec<f64>> = (0..sites)
            .map(|_| {
                (0..d)
                    .map(|i| {
                        let (lo, hi) = intervals[i];
                        // Sites concentrated around K itself.
                        let frac: f64 = rng.gen_range(0.25f64..0.75);
                        lo + frac * (hi - lo)
                    })
                    .collect()
            })
            .collect();
        match voronoi_partition(&pts, &clip) {
            Ok(p) if !p.cells.is_empty() => return Ok(p),
            _ => continue,
        }
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}
