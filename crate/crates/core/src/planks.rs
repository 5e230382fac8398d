//! Planks (slabs), coverage decision, and the plank inequality checkers.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::width::{
    minimal_relative_width_with, minimal_width_with, width_parallel, SupportProfile,
};
use crate::geometry::{ConvexBody, Direction, Hyperplane, Plank};
use crate::inradius::successive_inradius;
use crate::linalg;
use crate::lp::{self, LpResult};
use crate::randutil;

/// A family of planks proposed as a covering of a host body.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PlankFamily {
    pub planks: Vec<Plank>,
    pub host_body: ConvexBody,
}

impl PlankFamily {
    pub fn new(planks: Vec<Plank>, host_body: ConvexBody) -> Result<Self> {
        if planks.is_empty() {
            return Err(Error::InvalidInput("empty plank family".into()));
        }
        Ok(PlankFamily { planks, host_body })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverageMethod {
    CellEnumeration,
    Sampling,
}

/// Outcome of a coverage check. Sampling mode can only certify
/// "not covered"; a `covered` verdict from it means no witness was found.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverageVerdict {
    pub covered: bool,
    pub witness: Option<Vec<f64>>,
    pub method: CoverageMethod,
    pub cells_checked: u64,
}

/// Strict-outside slack: a point counts as uncovered only when it clears
/// every plank boundary by this margin (planks are closed sets).
const OUTSIDE_MARGIN: f64 = 1e-9;

/// Largest plank count for the exact sign-vector enumeration.
pub const MAX_EXACT_PLANKS: usize = 16;

/// C-width of a plank: Euclidean width over the gauge's width parallel to
/// the plank.
pub fn plank_relative_width(p: &Plank, c: &ConvexBody) -> Result<f64> {
    Ok(p.width() / width_parallel(c, p.normal())?)
}

/// Thickens a hyperplane into the plank swept by `-s C` along it:
/// `low = offset - s h_C(n)`, `high = offset + s h_C(-n)`. The result has
/// C-width exactly `s` and contains H in its interior (for s > 0).
pub fn thicken_hyperplane(h: &Hyperplane, c: &ConvexBody, s: f64) -> Result<Plank> {
    if s < 0.0 {
        return Err(Error::InvalidInput(format!("negative thickness {s}")));
    }
    let margin = c.origin_interior_margin()?;
    if margin <= 1e-12 * c.scale() {
        return Err(Error::OriginNotInterior { margin });
    }
    let cp = SupportProfile::of_body(c);
    let n = h.normal.components();
    let low = h.offset - s * cp.support(n)?;
    let high = h.offset + s * cp.support(&linalg::neg(n))?;
    Plank::new(h.normal.clone(), low, high)
}

/// Decides whether the planks cover K. Up to [`MAX_EXACT_PLANKS`] planks:
/// exact enumeration of all outside-sign cells by LP (a cell with an
/// interior point of margin > 1e-9 is an uncovered witness). Beyond that,
/// or for bodies without a halfspace form: seeded point sampling, which can
/// only certify "not covered".
pub fn covers_body(k: &ConvexBody, family: &PlankFamily) -> Result<CoverageVerdict> {
    let planks = &family.planks;
    if planks.iter().any(|p| p.normal().dim() != k.dim()) {
        return Err(Error::DimensionMismatch(planks[0].normal().dim(), k.dim()));
    }
    if planks.len() <= MAX_EXACT_PLANKS {
        if let Some(hs) = k.halfspaces() {
            let d = k.dim();
            let mut base_rows: Vec<(Vec<f64>, f64)> = Vec::with_capacity(hs.len());
            for (n, &b) in hs.normals.iter().zip(&hs.offsets) {
                let mut r = n.clone();
                r.push(0.0);
                base_rows.push((r, b));
            }
            let mut obj = vec![0.0; d + 1];
            obj[d] = 1.0;
            let mut cells_checked = 0u64;
            for mask in 0u64..(1u64 << planks.len()) {
                let mut rows = base_rows.clone();
                for (i, p) in planks.iter().enumerate() {
                    let n = p.normal().components();
                    let mut r;
                    let rhs;
                    if mask & (1 << i) == 0 {
                        // strictly below the plank: n.x + s <= low
                        r = n.to_vec();
                        rhs = p.low();
                    } else {
                        // strictly above: -n.x + s <= -high
                        r = linalg::neg(n);
                        rhs = -p.high();
                    }
                    r.push(1.0);
                    rows.push((r, rhs));
                }
                cells_checked += 1;
                if let LpResult::Optimal { value, mut point } = lp::maximize(&obj, &rows) {
                    if value >= OUTSIDE_MARGIN {
                        point.truncate(d);
                        return Ok(CoverageVerdict {
                            covered: false,
                            witness: Some(point),
                            method: CoverageMethod::CellEnumeration,
                            cells_checked,
                        });
                    }
                }
            }
            return Ok(CoverageVerdict {
                covered: true,
                witness: None,
                method: CoverageMethod::CellEnumeration,
                cells_checked,
            });
        }
    }
    sample_for_witness(k, family)
}

/// Falsification by sampling: draws points of K from a fixed-seed stream
/// and reports the first one strictly outside every plank.
fn sample_for_witness(k: &ConvexBody, family: &PlankFamily) -> Result<CoverageVerdict> {
    const SAMPLES: usize = 4096;
    let d = k.dim();
    let bbox = bounding_box(k)?;
    let mut rng = randutil::trial_rng(0x8ba2_44ff, 1);
    let mut checked = 0u64;
    let mut found = 0usize;
    let mut attempts = 0usize;
    while found < SAMPLES && attempts < 64 * SAMPLES {
        attempts += 1;
        let x: Vec<f64> = (0..d)
            .map(|i| rng.gen_range(0.0f64..1.0) * (bbox[i].1 - bbox[i].0) + bbox[i].0)
            .collect();
        if !k.contains(&x, 0.0) {
            continue;
        }
        found += 1;
        checked += 1;
        let outside_all = family
            .planks
            .iter()
            .all(|p| !p.contains(&x, OUTSIDE_MARGIN));
        if outside_all {
            return Ok(CoverageVerdict {
                covered: false,
                witness: Some(x),
                method: CoverageMethod::Sampling,
                cells_checked: checked,
            });
        }
    }
    Ok(CoverageVerdict {
        covered: true,
        witness: None,
        method: CoverageMethod::Sampling,
        cells_checked: checked,
    })
}

fn bounding_box(k: &ConvexBody) -> Result<Vec<(f64, f64)>> {
    crate::geometry::width::bounding_box_of(k)
}

fn require_covering(k: &ConvexBody, family: &PlankFamily) -> Result<()> {
    let verdict = covers_body(k, family)?;
    if !verdict.covered {
        return Err(Error::NotACovering {
            witness: verdict.witness.unwrap_or_default(),
        });
    }
    Ok(())
}

/// Bang deficit `sum_i w(P_i) - w(K)` of a verified covering; the minimal
/// width probes the plank normals too, so slab-tight instances come out
/// exactly nonnegative.
pub fn bang_deficit(k: &ConvexBody, family: &PlankFamily) -> Result<f64> {
    require_covering(k, family)?;
    let sum: f64 = family.planks.iter().map(|p| p.width()).sum();
    let extras: Vec<Direction> = family.planks.iter().map(|p| p.normal().clone()).collect();
    let w = minimal_width_with(k, &extras)?;
    Ok(sum - w.value)
}

/// Affine (relative-width) deficits of a verified covering.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AffineDeficitReport {
    pub sum_relative_widths: f64,
    pub host_relative_width: f64,
    /// `sum w_C(P_i) - w_C(K)`.
    pub deficit: f64,
    /// `sum w_C(P_i) - m r_C(K, m)` for the requested m.
    pub successive_deficit: Option<f64>,
    pub m: Option<u32>,
}

/// `sum_i w_C(P_i) - w_C(K)`, plus the successive variant against
/// `m * r_C(K, m)` when `m` is given.
pub fn affine_deficit(
    k: &ConvexBody,
    c: &ConvexBody,
    family: &PlankFamily,
    m: Option<u32>,
    tol: f64,
) -> Result<AffineDeficitReport> {
    require_covering(k, family)?;
    let mut sum = 0.0;
    for p in &family.planks {
        sum += plank_relative_width(p, c)?;
    }
    let extras: Vec<Direction> = family.planks.iter().map(|p| p.normal().clone()).collect();
    let host = minimal_relative_width_with(k, c, &extras)?.value;
    let successive = match m {
        Some(m) => {
            let r = successive_inradius(k, c, m, tol)?.rho;
            Some(sum - m as f64 * r)
        }
        None => None,
    };
    Ok(AffineDeficitReport {
        sum_relative_widths: sum,
        host_relative_width: host,
        deficit: sum - host,
        successive_deficit: successive,
        m,
    })
}

/// Two-plank lemma report: `w_C(P1) + w_C(P2) >= w_C(K)` for any covering
/// pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoPlankReport {
    pub width1: f64,
    pub width2: f64,
    pub host_width: f64,
    pub margin: f64,
    pub violation: bool,
}

pub fn two_plank_check(
    k: &ConvexBody,
    c: &ConvexBody,
    p1: &Plank,
    p2: &Plank,
) -> Result<TwoPlankReport> {
    let family = PlankFamily::new(vec![p1.clone(), p2.clone()], k.clone())?;
    require_covering(k, &family)?;
    let w1 = plank_relative_width(p1, c)?;
    let w2 = plank_relative_width(p2, c)?;
    let extras = vec![p1.normal().clone(), p2.normal().clone()];
    let host = minimal_relative_width_with(k, c, &extras)?.value;
    let margin = w1 + w2 - host;
    Ok(TwoPlankReport {
        width1: w1,
        width2: w2,
        host_width: host,
        margin,
        violation: margin < -1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> ConvexBody {
        ConvexBody::axis_box(&[(0.0, 1.0), (0.0, 1.0)]).unwrap()
    }

    fn dir(v: &[f64]) -> Direction {
        Direction::new(v.to_vec()).unwrap()
    }

    fn xplank(low: f64, high: f64) -> Plank {
        Plank::new(dir(&[1.0, 0.0]), low, high).unwrap()
    }

    #[test]
    fn plank_relative_width_examples() {
        let p = xplank(0.0, 0.3);
        assert!((plank_relative_width(&p, &unit_square()).unwrap() - 0.3).abs() < 1e-12);
        let disk = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
        assert!((plank_relative_width(&p, &disk).unwrap() - 0.15).abs() < 1e-12);
        let degenerate = xplank(0.3, 0.3);
        assert!(plank_relative_width(&degenerate, &disk).unwrap() == 0.0);
    }

    #[test]
    fn thicken_examples() {
        let h = Hyperplane::new(dir(&[1.0, 0.0]), 0.0);
        let disk = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
        let p = thicken_hyperplane(&h, &disk, 0.5).unwrap();
        assert!((p.low() + 0.5).abs() < 1e-12 && (p.high() - 0.5).abs() < 1e-12);
        assert!((plank_relative_width(&p, &disk).unwrap() - 0.5).abs() < 1e-12);

        // Asymmetric gauge: offsets differ but the C-width still equals s.
        let tri = ConvexBody::from_vertices(vec![
            vec![-0.3, -0.4],
            vec![1.0, -0.2],
            vec![-0.2, 1.0],
        ])
        .unwrap();
        let p = thicken_hyperplane(&h, &tri, 0.7).unwrap();
        assert!((plank_relative_width(&p, &tri).unwrap() - 0.7).abs() < 1e-12);
        assert!(p.low() < 0.0 && p.high() > 0.0);

        // s = 0 degenerates to a width-0 plank.
        let p = thicken_hyperplane(&h, &disk, 0.0).unwrap();
        assert_eq!(p.width(), 0.0);

        // Gauge without the origin interior is rejected.
        assert!(matches!(
            thicken_hyperplane(&h, &unit_square(), 0.5),
            Err(Error::OriginNotInterior { .. })
        ));
    }

    #[test]
    fn coverage_examples() {
        let k = unit_square();
        let covered = PlankFamily::new(vec![xplank(0.0, 0.5), xplank(0.5, 1.0)], k.clone()).unwrap();
        let v = covers_body(&k, &covered).unwrap();
        assert!(v.covered);
        assert_eq!(v.method, CoverageMethod::CellEnumeration);

        let gap = PlankFamily::new(vec![xplank(0.0, 0.4), xplank(0.6, 1.0)], k.clone()).unwrap();
        let v = covers_body(&k, &gap).unwrap();
        assert!(!v.covered);
        let w = v.witness.unwrap();
        assert!(w[0] > 0.4 && w[0] < 0.6, "witness {w:?}");
        assert!(k.contains(&w, 1e-12));

        let single = PlankFamily::new(vec![xplank(-1.0, 2.0)], k.clone()).unwrap();
        assert!(covers_body(&k, &single).unwrap().covered);
    }

    #[test]
    fn coverage_monotone_under_added_plank() {
        let k = unit_square();
        let mut rng = randutil::trial_rng(3, 0);
        for _ in 0..20 {
            let cutoff: f64 = rng.gen_range(0.2..0.8);
            let planks = vec![xplank(0.0, cutoff), xplank(cutoff, 1.0)];
            let fam = PlankFamily::new(planks.clone(), k.clone()).unwrap();
            let before = covers_body(&k, &fam).unwrap().covered;
            let mut more = planks;
            more.push(Plank::new(dir(&[0.0, 1.0]), rng.gen_range(-0.5..0.0), rng.gen_range(0.1..0.4)).unwrap());
            let fam2 = PlankFamily::new(more, k.clone()).unwrap();
            let after = covers_body(&k, &fam2).unwrap().covered;
            assert!(!before || after, "adding a plank uncovered the body");
        }
    }

    #[test]
    fn bang_deficit_examples() {
        let k = unit_square();
        // Two width-1/2 planks: sum = minimal width = 1, deficit 0.
        let fam = PlankFamily::new(vec![xplank(0.0, 0.5), xplank(0.5, 1.0)], k.clone()).unwrap();
        let d = bang_deficit(&k, &fam).unwrap();
        assert!(d.abs() < 1e-9, "deficit {d}");

        // One fat plank of width 2 -> deficit 1.
        let fat = PlankFamily::new(vec![xplank(-0.5, 1.5)], k.clone()).unwrap();
        let d = bang_deficit(&k, &fat).unwrap();
        assert!((d - 1.0).abs() < 1e-9);

        // Not a covering -> error.
        let gap = PlankFamily::new(vec![xplank(0.0, 0.4), xplank(0.6, 1.0)], k.clone()).unwrap();
        assert!(matches!(
            bang_deficit(&k, &gap),
            Err(Error::NotACovering { .. })
        ));
    }

    #[test]
    fn affine_deficit_square_axis_slabs() {
        let k = unit_square();
        let fam = PlankFamily::new(vec![xplank(0.0, 0.5), xplank(0.5, 1.0)], k.clone()).unwrap();
        let rep = affine_deficit(&k, &k, &fam, Some(1), 1e-8).unwrap();
        assert!(rep.deficit.abs() < 1e-9, "{}", rep.deficit);
        // m=1: sum w_C = 1 = 1 * r_C(K,1).
        assert!(rep.successive_deficit.unwrap().abs() < 1e-6);
    }

    #[test]
    fn affine_deficit_single_minimal_slab_is_zero() {
        // K = C: the slab along the minimal K-width direction has w_K = 1.
        let k = ConvexBody::from_vertices(vec![
            vec![0.0, 0.0],
            vec![2.0, 0.1],
            vec![1.4, 1.7],
            vec![0.2, 1.2],
        ])
        .unwrap();
        let w = crate::geometry::width::minimal_relative_width(&k, &k).unwrap();
        let u = w.arg_direction.clone();
        let kp = SupportProfile::of_body(&k);
        let hi = kp.support(u.components()).unwrap();
        let lo = -kp.support(&linalg::neg(u.components())).unwrap();
        let fam = PlankFamily::new(
            vec![Plank::new(u, lo, hi).unwrap()],
            k.clone(),
        )
        .unwrap();
        let rep = affine_deficit(&k, &k, &fam, None, 1e-8).unwrap();
        assert!(rep.deficit >= -1e-9, "{}", rep.deficit);
        assert!(rep.deficit < 1e-6, "slab along the minimizer should be tight");
    }

    #[test]
    fn two_plank_examples() {
        let k = unit_square();
        let r1 = two_plank_check(&k, &k, &xplank(0.0, 0.5), &xplank(0.5, 1.0)).unwrap();
        assert!(r1.margin.abs() < 1e-9);
        assert!(!r1.violation);

        // Crossing planks that jointly cover a small square.
        let small = ConvexBody::axis_box(&[(0.0, 0.4), (0.0, 0.4)]).unwrap();
        let p1 = Plank::new(dir(&[1.0, 0.0]), 0.0, 0.25).unwrap();
        let p2 = Plank::new(dir(&[0.0, 1.0]), -0.5, 0.9).unwrap();
        let r2 = two_plank_check(&small, &k, &p1, &p2).unwrap();
        assert!(r2.margin > 0.0);

        // Degenerate second plank, first covers everything.
        let r3 = two_plank_check(&k, &k, &xplank(-0.1, 1.1), &xplank(0.0, 0.0)).unwrap();
        assert!(r3.margin >= -1e-12);
    }
}
