//! Successive C-inradii.
//!
//! The m-th successive C-inradius of K is the unique `rho` with
//! `w_C(K^{rho C}) = m rho`, where `K^{rho C}` is the union of all translates
//! of `rho C` inside K. The rounded body is never materialized: its minimal
//! C-width equals the minimal C-width of the inner parallel body
//! (the erosion) plus `rho`, and the erosion is exact offset arithmetic.
//! So the defining equation becomes
//!
//!   w_C(K eroded by rho C) = (m - 1) rho
//!
//! whose left side decreases from w_C(K) to 0 while the right side grows:
//! a bisection locates the crossing. An independent second algorithm comes
//! from linear packings: `rho` is feasible iff for every direction l the
//! erosion is wide enough to hold m translates of `rho C` spaced along l,
//! i.e. `w(E, l) >= (m-1) rho w(C, l)`. The two routes share only the
//! erosion and width primitives.
//!
//! Gauge bodies are recentered internally (the functionals are translation
//! invariant in both arguments), so gauges need not contain the origin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ops::{c_inradius, erode, Reduced};
use crate::geometry::width::{
    min_margin_profiles, minimal_ratio_profiles, SupportProfile, WidthResult,
};
use crate::geometry::{ConvexBody, Direction};
use crate::linalg;

/// Which of the two algorithms produced a successive-inradius value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "fixed-point")]
    FixedPoint,
    #[serde(rename = "packing")]
    Packing,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuccessiveInradiusResult {
    pub rho: f64,
    pub m: u32,
    /// |w_C(K^{rho C}) - m rho| evaluated at the returned rho.
    pub residual: f64,
    pub iterations: u32,
    pub bracket: (f64, f64),
    pub method: Method,
}

/// A certified packing of `m` translates of `scale * C` along a line.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearPacking {
    pub base: Vec<f64>,
    pub direction_vector: Vec<f64>,
    /// Strictly increasing, first entry 0; center k is
    /// `base + shifts[k] * direction_vector`.
    pub shifts: Vec<f64>,
    pub scale: f64,
    pub separating_direction: Direction,
}

impl LinearPacking {
    pub fn centers(&self) -> Vec<Vec<f64>> {
        self.shifts
            .iter()
            .map(|&s| linalg::add(&self.base, &linalg::scale(&self.direction_vector, s)))
            .collect()
    }

    /// Re-checks the packing from scratch: every translate inside K
    /// (centers in the erosion) and projections onto the separating
    /// direction spaced at least `scale * w(C, l) - tol` apart.
    pub fn validate(&self, k: &ConvexBody, c: &ConvexBody, tol: f64) -> Result<()> {
        if self.shifts.is_empty() {
            return Err(Error::InvalidInput("empty packing".into()));
        }
        if self.shifts[0] != 0.0 || self.shifts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "packing shifts not strictly increasing from 0".into(),
            ));
        }
        let hs = k.require_halfspaces()?;
        let cp = SupportProfile::of_body(c);
        let l = self.separating_direction.components();
        let wc = cp.width(l)?;
        let centers = self.centers();
        for t in &centers {
            for (n, &b) in hs.normals.iter().zip(&hs.offsets) {
                let need = linalg::dot(n, t) + self.scale * cp.support(n)?;
                if need > b + tol {
                    return Err(Error::InvalidInput(format!(
                        "translate at {t:?} escapes the body by {:.3e}",
                        need - b
                    )));
                }
            }
        }
        for w in centers.windows(2) {
            let gap = linalg::dot(&linalg::sub(&w[1], &w[0]), l).abs();
            if gap < self.scale * wc - tol {
                return Err(Error::InvalidInput(format!(
                    "projection gap {gap:.3e} below {:.3e}",
                    self.scale * wc
                )));
            }
        }
        Ok(())
    }
}

/// Internal context: gauge recentered to put the origin inside, plus cached
/// pieces shared across the bisection.
struct Engine {
    k: ConvexBody,
    c: ConvexBody,
    /// Shift applied to the gauge: original C = c + gauge_shift.
    gauge_shift: Vec<f64>,
    c_profile: SupportProfile,
    inradius: f64,
    extra_dirs: Vec<Vec<f64>>,
}

impl Engine {
    fn new(k: &ConvexBody, c: &ConvexBody) -> Result<Engine> {
        if k.dim() != c.dim() {
            return Err(Error::DimensionMismatch(k.dim(), c.dim()));
        }
        let shift = c.interior_point();
        let c0 = c.translate(&linalg::neg(&shift))?;
        let (inradius, _) = c_inradius(k, &c0)?;
        let mut extra_dirs: Vec<Vec<f64>> = Vec::new();
        if k.dim() > 2 {
            if let Some(hs) = k.halfspaces() {
                extra_dirs.extend(hs.normals.iter().cloned());
            }
            if let Some(hs) = c0.halfspaces() {
                extra_dirs.extend(hs.normals.iter().cloned());
            }
        }
        Ok(Engine {
            k: k.clone(),
            c_profile: SupportProfile::of_body(&c0),
            c: c0,
            gauge_shift: shift,
            inradius,
            extra_dirs,
        })
    }

    /// Minimal C-width of the erosion at `rho` (0 for flat/empty erosions),
    /// which equals `w_C(K^{rho C}) - rho`.
    fn eroded_width(&self, rho: f64) -> Result<f64> {
        match erode(&self.k, &self.c, rho)? {
            Reduced::Body(e) => Ok(minimal_ratio_profiles(
                &SupportProfile::of_body(&e),
                &self.c_profile,
                self.k.dim(),
                &self.extra_dirs,
            )?
            .value),
            _ => Ok(0.0),
        }
    }

    /// Fixed-point defect `f(rho) = w_C(erosion) - (m-1) rho`, whose unique
    /// positive root is r_C(K, m).
    fn defect(&self, rho: f64, m: u32) -> Result<f64> {
        if m == 1 {
            // Sign is all bisection needs: positive iff the erosion still
            // has interior.
            return Ok(match erode(&self.k, &self.c, rho)? {
                Reduced::Body(_) => 1.0,
                _ => 0.0,
            });
        }
        Ok(self.eroded_width(rho)? - (m as f64 - 1.0) * rho)
    }
}

/// Minimal C-width of the rho-C-rounded body of K, through the erosion
/// identity; returns `rho` itself when the erosion has collapsed to a point.
pub fn rounded_relative_width(k: &ConvexBody, c: &ConvexBody, rho: f64) -> Result<f64> {
    let eng = Engine::new(k, c)?;
    if !(rho > 0.0) || rho > eng.inradius * (1.0 + 1e-9) + 1e-12 {
        return Err(Error::RhoOutOfRange {
            rho,
            max: eng.inradius,
        });
    }
    Ok(eng.eroded_width(rho)? + rho)
}

/// The m-th successive C-inradius by bisection on the fixed-point defect.
pub fn successive_inradius(
    k: &ConvexBody,
    c: &ConvexBody,
    m: u32,
    tol: f64,
) -> Result<SuccessiveInradiusResult> {
    if m < 1 {
        return Err(Error::InvalidInput("m must be >= 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance {tol}")));
    }
    let eng = Engine::new(k, c)?;
    let r1 = eng.inradius;

    // The root lies in [r1/m, r1]; certify positivity strictly below that.
    let rho0 = r1 / (1024.0f64).max(2.0 * m as f64);
    if eng.defect(rho0, m)? <= 0.0 {
        return Err(Error::NonBracketing(format!(
            "defect at rho0 = {rho0:.6e} is not positive"
        )));
    }
    let (mut lo, mut hi) = (rho0, r1);
    let mut iterations = 0u32;
    let target = tol * r1.max(1.0);
    while hi - lo > target && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if eng.defect(mid, m)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    // Enforce the residual contract directly: keep halving until
    // |w_C(K^{rho C}) - m rho| fits, not just the bracket width.
    let residual_cap = (m as f64 + 1.0) * tol * eng.k.scale().max(1.0);
    let mut rho = 0.5 * (lo + hi);
    let mut residual = (eng.eroded_width(rho)? + rho - m as f64 * rho).abs();
    while residual > residual_cap && iterations < 300 {
        if eng.defect(rho, m)? > 0.0 {
            lo = rho;
        } else {
            hi = rho;
        }
        rho = 0.5 * (lo + hi);
        residual = (eng.eroded_width(rho)? + rho - m as f64 * rho).abs();
        iterations += 1;
    }
    Ok(SuccessiveInradiusResult {
        rho,
        m,
        residual,
        iterations,
        bracket: (lo, hi),
        method: Method::FixedPoint,
    })
}

/// Whether m translates of `rho C` fit in K as a linear packing separated
/// along `l`; on success the witness places centers at equal spacing between
/// the erosion's support points along `+-l`.
pub fn packing_feasible(
    k: &ConvexBody,
    c: &ConvexBody,
    m: u32,
    rho: f64,
    l: &Direction,
) -> Result<(bool, Option<LinearPacking>)> {
    if m < 1 {
        return Err(Error::InvalidInput("m must be >= 1".into()));
    }
    if !(rho > 0.0) {
        return Err(Error::RhoOutOfRange {
            rho,
            max: f64::INFINITY,
        });
    }
    let eng = Engine::new(k, c)?;
    let eroded = erode(&eng.k, &eng.c, rho)?;
    let Some(ep) = eroded.support_profile() else {
        return Err(Error::RhoOutOfRange {
            rho,
            max: eng.inradius,
        });
    };
    let lv = l.components();
    let we = ep.width(lv)?;
    let wc = eng.c_profile.width(lv)?;
    let need = (m as f64 - 1.0) * rho * wc;
    if we < need - 1e-9 {
        return Ok((false, None));
    }

    let (_, p_hi) = ep.support_point(lv)?;
    let (_, p_lo) = ep.support_point(&linalg::neg(lv))?;
    // Witness centers are valid for the recentered gauge; shift them back so
    // they certify against the caller's C.
    let back = |p: &[f64]| linalg::sub(p, &linalg::scale(&eng.gauge_shift, rho));
    let (base, v, shifts) = if m == 1 {
        (back(&p_lo), lv.to_vec(), vec![0.0])
    } else {
        let span = linalg::sub(&p_hi, &p_lo);
        if linalg::norm(&span) > 1e-300 {
            let shifts = (0..m).map(|i| i as f64 / (m as f64 - 1.0)).collect();
            (back(&p_lo), span, shifts)
        } else {
            // Zero-slack degenerate case: all translates coincide.
            let shifts = (0..m).map(|i| i as f64 * 1e-300).collect();
            (back(&p_lo), lv.to_vec(), shifts)
        }
    };
    let witness = LinearPacking {
        base,
        direction_vector: v,
        shifts,
        scale: rho,
        separating_direction: l.clone(),
    };
    Ok((true, Some(witness)))
}

/// The m-th successive C-inradius via the linear-packing characterization:
/// the largest `rho` such that every direction admits a packing, found by
/// bisection on the worst-direction slack. Serves as the independent oracle
/// for [`successive_inradius`].
pub fn successive_inradius_via_packing(
    k: &ConvexBody,
    c: &ConvexBody,
    m: u32,
    tol: f64,
) -> Result<SuccessiveInradiusResult> {
    if m < 1 {
        return Err(Error::InvalidInput("m must be >= 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance {tol}")));
    }
    let eng = Engine::new(k, c)?;
    let r1 = eng.inradius;

    let feasible = |rho: f64| -> Result<bool> {
        match erode(&eng.k, &eng.c, rho)? {
            Reduced::Body(e) => {
                if m == 1 {
                    return Ok(true);
                }
                let margin = min_margin_profiles(
                    &SupportProfile::of_body(&e),
                    &eng.c_profile,
                    (m as f64 - 1.0) * rho,
                    eng.k.dim(),
                    &eng.extra_dirs,
                )?;
                Ok(margin.value >= 0.0)
            }
            // Flat erosions pack a single translate but never m >= 2:
            // the direction perpendicular to the flat gives zero width.
            Reduced::Flat { .. } => Ok(m == 1),
            Reduced::Empty { .. } => Ok(false),
        }
    };

    let rho0 = r1 / (1024.0f64).max(2.0 * m as f64);
    if !feasible(rho0)? {
        return Err(Error::NonBracketing(format!(
            "packing infeasible at rho0 = {rho0:.6e}"
        )));
    }
    let mut lo = rho0;
    // Just above the first inradius the erosion is empty, so the predicate
    // is false there for every m.
    let mut hi = r1 * (1.0 + 1e-6) + 1e-15;
    let mut iterations = 0u32;
    let target = tol * r1.max(1.0);
    while hi - lo > target && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let residual_cap = (m as f64 + 1.0) * tol * eng.k.scale().max(1.0);
    let mut rho = (0.5 * (lo + hi)).min(r1);
    let mut residual = (eng.eroded_width(rho)? + rho - m as f64 * rho).abs();
    while residual > residual_cap && iterations < 300 {
        if feasible(rho)? {
            lo = rho;
        } else {
            hi = rho;
        }
        rho = (0.5 * (lo + hi)).min(r1);
        residual = (eng.eroded_width(rho)? + rho - m as f64 * rho).abs();
        iterations += 1;
    }
    Ok(SuccessiveInradiusResult {
        rho,
        m,
        residual,
        iterations,
        bracket: (lo, hi),
        method: Method::Packing,
    })
}

/// The sequence `(m, r_C(K, m), m * r_C(K, m))` for `m = 1..=m_max`; the
/// third column is nondecreasing and converges to the minimal C-width.
pub fn inradius_sequence(
    k: &ConvexBody,
    c: &ConvexBody,
    m_max: u32,
    tol: f64,
) -> Result<Vec<(u32, f64, f64)>> {
    if m_max < 1 {
        return Err(Error::InvalidInput("m_max must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let r = successive_inradius(k, c, m, tol)?;
        out.push((m, r.rho, m as f64 * r.rho));
    }
    Ok(out)
}

/// Minimal C-width result for the same (K, C) pair, for reports that pair
/// the sequence with its limit.
pub fn sequence_limit(k: &ConvexBody, c: &ConvexBody) -> Result<WidthResult> {
    crate::geometry::width::minimal_relative_width(k, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn centered_square() -> ConvexBody {
        ConvexBody::axis_box(&[(-0.5, 0.5), (-0.5, 0.5)]).unwrap()
    }

    fn unit_square() -> ConvexBody {
        ConvexBody::axis_box(&[(0.0, 1.0), (0.0, 1.0)]).unwrap()
    }

    /// Equilateral triangle with side 2.
    fn triangle_side2() -> ConvexBody {
        ConvexBody::from_vertices(vec![
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![1.0, (3.0f64).sqrt()],
        ])
        .unwrap()
    }

    fn unit_disk() -> ConvexBody {
        ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap()
    }

    /// Closed form for the triangle/disk pair: eroding an equilateral
    /// triangle by a disk is a similar triangle, which gives
    /// r_C(K, m) = sqrt(3) / (2m + 1) for side length 2.
    fn triangle_disk_oracle(m: u32) -> f64 {
        (3.0f64).sqrt() / (2.0 * m as f64 + 1.0)
    }

    #[test]
    fn rounded_width_of_self_gauge_is_one() {
        let c = centered_square();
        for rho in [0.1, 0.5, 0.9, 1.0] {
            let w = rounded_relative_width(&c, &c, rho).unwrap();
            assert!((w - 1.0).abs() < 1e-9, "rho {rho}: {w}");
        }
    }

    #[test]
    fn rounded_width_at_inradius_equals_rho() {
        let k = unit_square();
        let c = unit_disk();
        let w = rounded_relative_width(&k, &c, 0.5).unwrap();
        assert!((w - 0.5).abs() < 1e-9, "{w}");
    }

    #[test]
    fn rounded_width_box_example() {
        // K=[0,2]x[0,1], C=[-1/2,1/2]^2, rho=0.25: erosion widths
        // (1.75, 0.75), min ratio 0.75, plus rho -> 1.
        let k = ConvexBody::axis_box(&[(0.0, 2.0), (0.0, 1.0)]).unwrap();
        let c = centered_square();
        let w = rounded_relative_width(&k, &c, 0.25).unwrap();
        assert!((w - 1.0).abs() < 1e-9, "{w}");
    }

    #[test]
    fn rounded_width_rejects_rho_out_of_range() {
        let k = unit_square();
        let c = unit_disk();
        assert!(matches!(
            rounded_relative_width(&k, &c, 0.7),
            Err(Error::RhoOutOfRange { .. })
        ));
    }

    #[test]
    fn cube_self_gauge_closed_form() {
        // K = C: eroding by rho C leaves (1-rho) C, so r_C(K, m) = 1/m.
        for body in [
            centered_square(),
            unit_square(),
            ConvexBody::axis_box(&[(0.0, 1.0), (0.0, 1.0), (0.0, 1.0)]).unwrap(),
        ] {
            for m in [1u32, 2, 3, 5] {
                let r = successive_inradius(&body, &body, m, 1e-9).unwrap();
                assert!(
                    (r.rho - 1.0 / m as f64).abs() < 1e-7,
                    "m={m}: rho {} (dim {})",
                    r.rho,
                    body.dim()
                );
                assert!(r.residual < 1e-6);
            }
        }
    }

    #[test]
    fn triangle_disk_closed_form() {
        let k = triangle_side2();
        let c = unit_disk();
        for m in [1u32, 2, 3] {
            let r = successive_inradius(&k, &c, m, 1e-9).unwrap();
            let want = triangle_disk_oracle(m);
            assert!(
                (r.rho - want).abs() < 1e-7,
                "m={m}: rho {} want {want}",
                r.rho
            );
        }
    }

    #[test]
    fn first_inradius_matches_lp() {
        let k = triangle_side2();
        let c = unit_disk();
        let (lp, _) = c_inradius(&k, &c).unwrap();
        let bis = successive_inradius(&k, &c, 1, 1e-9).unwrap();
        assert!((lp - bis.rho).abs() < 1e-7, "lp {lp} bisection {}", bis.rho);
        assert!((lp - 1.0 / (3.0f64).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn packing_feasibility_square_zero_slack() {
        let c = centered_square();
        let l = Direction::new(vec![1.0, 0.0]).unwrap();
        // m=2, rho=0.5: erosion is the half-square, width 0.5 along x,
        // exactly (m-1) * rho * w(C, x) = 0.5.
        let (ok, witness) = packing_feasible(&c, &c, 2, 0.5, &l).unwrap();
        assert!(ok);
        witness.unwrap().validate(&c, &c, 1e-7).unwrap();
        // Any rho above 0.5 fails.
        let (ok, _) = packing_feasible(&c, &c, 2, 0.5 + 1e-6, &l).unwrap();
        assert!(!ok);
    }

    #[test]
    fn packing_single_translate_always_fits() {
        let k = unit_square();
        let c = unit_disk();
        for l in [[1.0, 0.0], [0.0, 1.0], [0.6, -0.8]] {
            let (ok, w) = packing_feasible(&k, &c, 1, 0.4, &Direction::new(l.to_vec()).unwrap())
                .unwrap();
            assert!(ok);
            w.unwrap().validate(&k, &c, 1e-9).unwrap();
        }
    }

    #[test]
    fn packing_oracle_agrees_on_closed_forms() {
        let sq = centered_square();
        for m in [1u32, 2, 4] {
            let r = successive_inradius_via_packing(&sq, &sq, m, 1e-8).unwrap();
            assert!(
                (r.rho - 1.0 / m as f64).abs() < 1e-6,
                "m={m}: packing rho {}",
                r.rho
            );
        }
        let k = triangle_side2();
        let c = unit_disk();
        for m in [1u32, 2] {
            let r = successive_inradius_via_packing(&k, &c, m, 1e-8).unwrap();
            assert!(
                (r.rho - triangle_disk_oracle(m)).abs() < 1e-5,
                "m={m}: packing rho {}",
                r.rho
            );
        }
    }

    #[test]
    fn sequence_is_monotone_and_bounded() {
        let k = triangle_side2();
        let c = unit_disk();
        let seq = inradius_sequence(&k, &c, 6, 1e-9).unwrap();
        let wc = sequence_limit(&k, &c).unwrap().value;
        assert!((wc - (3.0f64).sqrt() / 2.0).abs() < 1e-9);
        for w in seq.windows(2) {
            assert!(w[1].2 >= w[0].2 - 1e-8, "{:?}", seq);
        }
        for (m, rho, mrho) in &seq {
            assert!((rho - triangle_disk_oracle(*m)).abs() < 1e-6);
            assert!(*mrho <= wc + 1e-7);
        }
    }

    #[test]
    fn gauge_without_origin_is_recentered() {
        // C = [0,1]^2 does not contain the origin; the engine recenters it.
        let k = unit_square();
        let c = unit_square();
        let r = successive_inradius(&k, &c, 3, 1e-9).unwrap();
        assert!((r.rho - 1.0 / 3.0).abs() < 1e-8, "{}", r.rho);
    }

    #[test]
    fn translation_invariance() {
        let k = triangle_side2();
        let c = unit_disk();
        let kt = k.translate(&[3.25, -1.5]).unwrap();
        let a = successive_inradius(&k, &c, 2, 1e-9).unwrap();
        let b = successive_inradius(&kt, &c, 2, 1e-9).unwrap();
        assert!((a.rho - b.rho).abs() < 2e-9 * 2.0);
    }

    #[test]
    fn four_dimensional_cube_closed_form() {
        let cube = ConvexBody::axis_box(&[(0.0, 1.0); 4]).unwrap();
        for m in [1u32, 2] {
            let r = successive_inradius(&cube, &cube, m, 1e-7).unwrap();
            assert!(
                (r.rho - 1.0 / m as f64).abs() < 1e-6,
                "m={m}: rho {}",
                r.rho
            );
        }
        // Cross-polytope gauge: r_C(cube, 1) is the plain LP inradius.
        let cross = ConvexBody::from_vertices(
            (0..4)
                .flat_map(|i| {
                    [1.0, -1.0].map(|s| {
                        let mut v = vec![0.0; 4];
                        v[i] = s;
                        v
                    })
                })
                .collect(),
        )
        .unwrap();
        let (lp, _) = c_inradius(&cube, &cross).unwrap();
        let bis = successive_inradius(&cube, &cross, 1, 1e-7).unwrap();
        assert!(
            (lp - bis.rho).abs() < 1e-5,
            "lp {lp} vs bisection {}",
            bis.rho
        );
    }
}
