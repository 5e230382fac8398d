//! Seeded randomized searches: conjecture probes (which can only report
//! "no counterexample found") and stress suites for the proved theorems
//! (where any violation signals an implementation bug).
//!
//! Determinism contract: per-trial work draws from independent ChaCha
//! streams keyed by (master seed, trial index), trials are aggregated in
//! index order, and reports carry no timing by default, so identical
//! configs produce byte-identical JSON across runs and thread counts.

pub mod generate;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cuts::{
    apply_cut_tree, arrangement_pieces, greatest_piece_inradius, optimal_conway_cuts,
    random_cut_tree, verify_partition_inequality, PartitionFamily, Provenance,
};
use crate::error::{Error, Result};
use crate::geometry::hull::{convex_hull_2d, polygon_area};
use crate::geometry::ops::{intersect_with_system, Reduced};
use crate::geometry::{ConvexBody, Hyperplane, Plank};
use crate::inradius::successive_inradius;
use crate::planks::{affine_deficit, bang_deficit, two_plank_check, PlankFamily};
use crate::randutil::trial_rng;

fn short_digest<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_vec(value).unwrap_or_default();
    let hash = Sha256::digest(&json);
    hash[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Open statements a probe can target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeTarget {
    /// sum w_C(P_i) >= w_C(K) over certified plank coverings.
    AffinePlank,
    /// sum w_C(P_i) >= m r_C(K, m).
    SuccessivePlank,
    /// greatest piece r_C(., m) of an (n-1)-hyperplane arrangement
    /// >= r_C(K, mn).
    CutConjecture,
    /// sum r_C(V_i cap K, m) >= r_C(K, m) over convex partitions.
    PartitionProblem,
    /// Same sum bound over overlapping convex coverings.
    CoveringProblem,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct GeneratorParams {
    pub vertex_count: usize,
    pub plank_count: usize,
    pub max_sites: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            vertex_count: 7,
            plank_count: 3,
            max_sites: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeConfig {
    pub target: ProbeTarget,
    pub dimension: usize,
    pub trials: u32,
    pub master_seed: u64,
    #[serde(default = "one")]
    pub m: u32,
    #[serde(default = "two")]
    pub n: u32,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub generator: GeneratorParams,
}

fn one() -> u32 {
    1
}
fn two() -> u32 {
    2
}
fn default_tolerance() -> f64 {
    1e-6
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidInput("trials must be >= 1".into()));
        }
        if !(2..=8).contains(&self.dimension) {
            return Err(Error::InvalidInput(format!(
                "dimension {} outside [2, 8]",
                self.dimension
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        if self.m < 1 || self.n < 1 {
            return Err(Error::InvalidInput("m and n must be >= 1".into()));
        }
        Ok(())
    }

    fn engine_tol(&self) -> f64 {
        (self.tolerance / 100.0).clamp(1e-12, 1e-8)
    }
}

/// A fully serialized, re-checkable instance. Reloading one and evaluating
/// it reproduces the reported deficit.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    #[serde(rename_all = "camelCase")]
    PlankCovering {
        body: ConvexBody,
        gauge: ConvexBody,
        planks: Vec<Plank>,
        m: Option<u32>,
        successive: bool,
    },
    #[serde(rename_all = "camelCase")]
    EuclideanCovering {
        body: ConvexBody,
        planks: Vec<Plank>,
    },
    #[serde(rename_all = "camelCase")]
    TwoPlank {
        body: ConvexBody,
        gauge: ConvexBody,
        plank1: Plank,
        plank2: Plank,
    },
    #[serde(rename_all = "camelCase")]
    CutArrangement {
        body: ConvexBody,
        gauge: ConvexBody,
        hyperplanes: Vec<Hyperplane>,
        m: u32,
        n: u32,
    },
    #[serde(rename_all = "camelCase")]
    Partition {
        body: ConvexBody,
        gauge: ConvexBody,
        partition: PartitionFamily,
        m: u32,
        use_width: bool,
    },
    #[serde(rename_all = "camelCase")]
    Covering {
        body: ConvexBody,
        gauge: ConvexBody,
        cells: Vec<ConvexBody>,
        m: u32,
    },
    #[serde(rename_all = "camelCase")]
    Conway {
        body: ConvexBody,
        gauge: ConvexBody,
        n: u32,
        m: u32,
        tree_seed: u64,
        trees: u32,
    },
}

/// Recomputes the deficit/margin of a serialized instance from scratch.
pub fn evaluate_instance(inst: &Instance, engine_tol: f64) -> Result<f64> {
    match inst {
        Instance::PlankCovering {
            body,
            gauge,
            planks,
            m,
            successive,
        } => {
            let family = PlankFamily::new(planks.clone(), body.clone())?;
            let rep = affine_deficit(body, gauge, &family, *m, engine_tol)?;
            if *successive {
                rep.successive_deficit
                    .ok_or_else(|| Error::InvalidInput("successive deficit needs m".into()))
            } else {
                Ok(rep.deficit)
            }
        }
        Instance::EuclideanCovering { body, planks } => {
            let family = PlankFamily::new(planks.clone(), body.clone())?;
            bang_deficit(body, &family)
        }
        Instance::TwoPlank {
            body,
            gauge,
            plank1,
            plank2,
        } => Ok(two_plank_check(body, gauge, plank1, plank2)?.margin),
        Instance::CutArrangement {
            body,
            gauge,
            hyperplanes,
            m,
            n,
        } => {
            let pieces = arrangement_pieces(body, hyperplanes)?;
            let (greatest, _) = greatest_piece_inradius(&pieces, gauge, *m, engine_tol)?;
            let target = successive_inradius(body, gauge, m * n, engine_tol)?.rho;
            Ok(greatest - target)
        }
        Instance::Partition {
            body,
            gauge,
            partition,
            m,
            use_width,
        } => {
            let rep = verify_partition_inequality(body, gauge, partition, *m, engine_tol, true)?;
            Ok(if *use_width { rep.width_deficit } else { rep.deficit })
        }
        Instance::Covering {
            body,
            gauge,
            cells,
            m,
        } => {
            let mut sum = 0.0;
            for cell in cells {
                let Some(hs) = cell.halfspaces() else {
                    return Err(Error::RepresentationUnavailable(
                        "covering cell lacks halfspace form".into(),
                    ));
                };
                if let Reduced::Body(piece) = intersect_with_system(body, hs)? {
                    sum += successive_inradius(&piece, gauge, *m, engine_tol)?.rho;
                }
            }
            let host = successive_inradius(body, gauge, *m, engine_tol)?.rho;
            Ok(sum - host)
        }
        Instance::Conway {
            body,
            gauge,
            n,
            m,
            tree_seed,
            trees,
        } => conway_margin(body, gauge, *n, *m, *tree_seed, *trees, engine_tol),
    }
}

/// Worst margin across the Conway bound and attainment checks: random trees
/// must stay above r_C(K, mn) and the constructed optimal tree must attain
/// it within the dimension-aware check tolerance (1e-5 in 2D, widened in
/// d >= 3 where direction searches are sampled).
fn conway_margin(
    k: &ConvexBody,
    c: &ConvexBody,
    n: u32,
    m: u32,
    tree_seed: u64,
    trees: u32,
    tol: f64,
) -> Result<f64> {
    let bound = successive_inradius(k, c, m * n, tol)?.rho;
    let opt = optimal_conway_cuts(k, c, n, m, tol)?;
    let opt_pieces = apply_cut_tree(k, &opt)?;
    let (opt_value, _) = greatest_piece_inradius(&opt_pieces, c, m, tol)?;
    let attain_tol = crate::cuts::conway_check_tolerance(k.dim(), tol, bound);
    let mut worst = attain_tol - (opt_value - bound).abs();
    for t in 0..trees {
        let mut rng = trial_rng(tree_seed, t as u64);
        let (_, pieces) = random_cut_tree(k, n, &mut rng)?;
        let (g, _) = greatest_piece_inradius(&pieces, c, m, tol)?;
        worst = worst.min(g - bound);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialOutcome {
    /// Per-trial stream id: the trial's generator is ChaCha(masterSeed,
    /// stream = seed).
    pub seed: u64,
    pub deficit: f64,
    pub digest: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub seed: u64,
    pub deficit: f64,
    pub recheck_deficit: f64,
    pub instance: Instance,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeReport {
    pub config: ProbeConfig,
    pub per_trial: Vec<TrialOutcome>,
    pub min_deficit: f64,
    pub arg_min_instance: Instance,
    pub violations: Vec<Violation>,
    /// Probes of open conjectures never "verify" anything.
    pub conclusion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl ProbeReport {
    pub fn csv(&self) -> String {
        let mut out = String::from("seed,deficit\n");
        for t in &self.per_trial {
            out.push_str(&format!("{},{}\n", t.seed, t.deficit));
        }
        out
    }
}

struct Aggregated {
    per_trial: Vec<TrialOutcome>,
    violations: Vec<Violation>,
    min_value: f64,
    arg_min: Instance,
}

/// Order-independent aggregation shared by probes and suites: min/argmin
/// plus re-verified violations (a flagged trial is recomputed once at 10x
/// tighter engine tolerance and reported only if it stays negative).
fn aggregate(
    outcomes: Vec<(u64, f64, Instance)>,
    tolerance: f64,
    recheck_tol: f64,
) -> Result<Aggregated> {
    let mut per_trial = Vec::with_capacity(outcomes.len());
    let mut violations = Vec::new();
    let mut min_value = f64::INFINITY;
    let mut arg_min: Option<Instance> = None;
    for (seed, value, inst) in &outcomes {
        per_trial.push(TrialOutcome {
            seed: *seed,
            deficit: *value,
            digest: short_digest(inst),
        });
        if *value < min_value {
            min_value = *value;
            arg_min = Some(inst.clone());
        }
        if *value < -tolerance {
            let recheck = evaluate_instance(inst, recheck_tol)?;
            if recheck < -tolerance {
                violations.push(Violation {
                    seed: *seed,
                    deficit: *value,
                    recheck_deficit: recheck,
                    instance: inst.clone(),
                });
            }
        }
    }
    Ok(Aggregated {
        per_trial,
        violations,
        min_value,
        arg_min: arg_min.ok_or_else(|| Error::InvalidInput("no trials".into()))?,
    })
}

/// Runs the configured number of seeded trials against the target
/// conjecture. Violations are re-verified once at 10x tighter engine
/// tolerance before being reported.
pub fn probe(config: &ProbeConfig) -> Result<ProbeReport> {
    config.validate()?;
    let outcomes: Vec<(u64, f64, Instance)> = (0..config.trials)
        .into_par_iter()
        .map(|t| -> Result<(u64, f64, Instance)> {
            let inst = build_probe_instance(config, t as u64)?;
            let deficit = evaluate_instance(&inst, config.engine_tol())?;
            Ok((t as u64, deficit, inst))
        })
        .collect::<Result<Vec<_>>>()?;
    let agg = aggregate(outcomes, config.tolerance, config.engine_tol() / 10.0)?;
    let conclusion = if agg.violations.is_empty() {
        format!("no counterexample found in {} trials", config.trials)
    } else {
        format!(
            "violation found in {} of {} trials",
            agg.violations.len(),
            config.trials
        )
    };
    Ok(ProbeReport {
        config: config.clone(),
        per_trial: agg.per_trial,
        min_deficit: agg.min_value,
        arg_min_instance: agg.arg_min,
        violations: agg.violations,
        conclusion,
        wall_time_ms: None,
    })
}

fn build_probe_instance(config: &ProbeConfig, trial: u64) -> Result<Instance> {
    let mut rng = trial_rng(config.master_seed, trial);
    let d = config.dimension;
    let kv = config.generator.vertex_count.max(d + 1);
    let body = generate::random_body_with(&mut rng, d, kv)?;
    let gauge = generate::random_body_with(&mut rng, d, kv)?;
    match config.target {
        ProbeTarget::AffinePlank | ProbeTarget::SuccessivePlank => {
            let n = config.generator.plank_count.max(1);
            let family = generate::random_plank_covering_with(&body, &gauge, &mut rng, n)?;
            let successive = config.target == ProbeTarget::SuccessivePlank;
            Ok(Instance::PlankCovering {
                body,
                gauge,
                planks: family.planks,
                m: Some(config.m),
                successive,
            })
        }
        ProbeTarget::CutConjecture => {
            let cuts = (config.n.max(1) - 1) as usize;
            let hyperplanes = generate::random_hyperplanes_through(&body, &mut rng, cuts)?;
            Ok(Instance::CutArrangement {
                body,
                gauge,
                hyperplanes,
                m: config.m,
                n: config.n,
            })
        }
        ProbeTarget::PartitionProblem => {
            let sites = rng.gen_range(2..=config.generator.max_sites.max(2));
            let mut partition = generate::random_voronoi_partition(&body, &mut rng, sites)?;
            // Odd trials: merge one convex-union pair of cells, which leaves
            // a convex partition outside the certified families.
            if !trial.is_multiple_of(2) && d == 2 {
                if let Some(merged) = merge_random_convex_pair(&partition, &mut rng) {
                    partition = merged;
                }
            }
            Ok(Instance::Partition {
                body,
                gauge,
                partition,
                m: config.m,
                use_width: false,
            })
        }
        ProbeTarget::CoveringProblem => {
            let sites = rng.gen_range(2..=config.generator.max_sites.max(2));
            let partition = generate::random_voronoi_partition(&body, &mut rng, sites)?;
            let mut cells = Vec::with_capacity(partition.cells.len());
            for cell in &partition.cells {
                let hs = cell.halfspaces().expect("voronoi cells are h-polys");
                let mut inflated = hs.clone();
                for b in inflated.offsets.iter_mut() {
                    *b += 0.05 * body.scale();
                }
                match crate::geometry::ops::classify(inflated) {
                    Reduced::Body(c) => cells.push(c),
                    _ => cells.push(cell.clone()),
                }
            }
            Ok(Instance::Covering {
                body,
                gauge,
                cells,
                m: config.m,
            })
        }
    }
}

/// Merges two cells whose union is convex (checked by hull area) into one;
/// returns a `User`-provenance family, or None when no mergeable pair shows
/// up.
fn merge_random_convex_pair<R: Rng>(
    partition: &PartitionFamily,
    rng: &mut R,
) -> Option<PartitionFamily> {
    let n = partition.cells.len();
    if n < 3 {
        return None;
    }
    for _ in 0..8 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let (vi, vj) = (partition.cells[i].vertices()?, partition.cells[j].vertices()?);
        let mut pts = vi.to_vec();
        pts.extend(vj.iter().cloned());
        let hull = convex_hull_2d(&pts).ok()?;
        let union_area = polygon_area(vi) + polygon_area(vj);
        let hull_area = polygon_area(&hull);
        let scale = partition.host_body.scale();
        if (hull_area - union_area).abs() <= 1e-9 * scale * scale {
            let merged = ConvexBody::from_vertices(hull).ok()?;
            let mut cells = Vec::with_capacity(n - 1);
            for (idx, c) in partition.cells.iter().enumerate() {
                if idx != i && idx != j {
                    cells.push(c.clone());
                }
            }
            cells.push(merged);
            return Some(PartitionFamily {
                cells,
                provenance: Provenance::User,
                host_body: partition.host_body.clone(),
            });
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Proved-theorem stress suites
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremSuite {
    Bang,
    Ball,
    TwoPlank,
    Conway,
    AkopyanKarasev,
    CorollaryWidth,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteConfig {
    pub dimension: usize,
    pub trials: u32,
    pub master_seed: u64,
    #[serde(default = "one")]
    pub m: u32,
    #[serde(default = "two")]
    pub n: u32,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub generator: GeneratorParams,
    /// Random cut trees per instance in the Conway suite.
    #[serde(default = "default_inner_trials")]
    pub inner_trials: u32,
}

fn default_inner_trials() -> u32 {
    50
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub suite: TheoremSuite,
    pub config: SuiteConfig,
    pub per_trial: Vec<TrialOutcome>,
    pub min_margin: f64,
    pub arg_min_instance: Instance,
    pub violations: Vec<Violation>,
    pub conclusion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

/// Runs a proved-theorem suite on random instances (or on explicit bodies
/// for every trial, when given). Violations here signal implementation
/// bugs, not mathematical discoveries.
pub fn run_suite(
    suite: TheoremSuite,
    config: &SuiteConfig,
    bodies: Option<(&ConvexBody, &ConvexBody)>,
) -> Result<SuiteReport> {
    if config.trials < 1 {
        return Err(Error::InvalidInput("trials must be >= 1".into()));
    }
    let engine_tol = (config.tolerance / 100.0).clamp(1e-12, 1e-8);
    let outcomes: Vec<(u64, f64, Instance)> = (0..config.trials)
        .into_par_iter()
        .map(|t| -> Result<(u64, f64, Instance)> {
            let inst = build_suite_instance(suite, config, t as u64, bodies)?;
            let value = evaluate_instance(&inst, engine_tol)?;
            Ok((t as u64, value, inst))
        })
        .collect::<Result<Vec<_>>>()?;
    let agg = aggregate(outcomes, config.tolerance, engine_tol / 10.0)?;
    let conclusion = if agg.violations.is_empty() {
        format!(
            "no violation in {} trials (proved statement; checks the implementation)",
            config.trials
        )
    } else {
        format!(
            "violation found in {} of {} trials: implementation bug",
            agg.violations.len(),
            config.trials
        )
    };
    Ok(SuiteReport {
        suite,
        config: config.clone(),
        per_trial: agg.per_trial,
        min_margin: agg.min_value,
        arg_min_instance: agg.arg_min,
        violations: agg.violations,
        conclusion,
        wall_time_ms: None,
    })
}

fn build_suite_instance(
    suite: TheoremSuite,
    config: &SuiteConfig,
    trial: u64,
    bodies: Option<(&ConvexBody, &ConvexBody)>,
) -> Result<Instance> {
    let mut rng = trial_rng(config.master_seed, trial);
    let d = config.dimension;
    let kv = config.generator.vertex_count.max(d + 1);
    let make_bodies = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<(ConvexBody, ConvexBody)> {
        match bodies {
            Some((k, c)) => Ok((k.clone(), c.clone())),
            None => Ok((
                generate::random_body_with(rng, d, kv)?,
                generate::random_body_with(rng, d, kv)?,
            )),
        }
    };
    match suite {
        TheoremSuite::Bang => {
            let (k, _) = make_bodies(&mut rng)?;
            let n = config.generator.plank_count.max(1);
            let fam = generate::random_plank_covering_with(&k, &k, &mut rng, n)?;
            Ok(Instance::EuclideanCovering {
                body: k,
                planks: fam.planks,
            })
        }
        TheoremSuite::Ball => {
            // Ball's theorem: centrally symmetric body covered by planks.
            let sym = match bodies {
                Some((k, _)) => k.clone(),
                None => generate::random_symmetric_body_with(&mut rng, d, kv.min(5))?,
            };
            let n = config.generator.plank_count.max(1);
            let fam = generate::random_plank_covering_with(&sym, &sym, &mut rng, n)?;
            Ok(Instance::PlankCovering {
                body: sym.clone(),
                gauge: sym,
                planks: fam.planks,
                m: None,
                successive: false,
            })
        }
        TheoremSuite::TwoPlank => {
            let (k, c) = make_bodies(&mut rng)?;
            let (p1, p2) = two_plank_covering(&k, &mut rng, trial.is_multiple_of(2))?;
            Ok(Instance::TwoPlank {
                body: k,
                gauge: c,
                plank1: p1,
                plank2: p2,
            })
        }
        TheoremSuite::Conway => {
            let (k, c) = make_bodies(&mut rng)?;
            Ok(Instance::Conway {
                body: k,
                gauge: c,
                n: config.n,
                m: config.m,
                tree_seed: config.master_seed ^ (trial.wrapping_mul(0x9e37_79b9_7f4a_7c15)),
                trees: config.inner_trials,
            })
        }
        TheoremSuite::AkopyanKarasev | TheoremSuite::CorollaryWidth => {
            let (k, c) = make_bodies(&mut rng)?;
            let sites = rng.gen_range(2..=config.generator.max_sites.max(2));
            let partition = generate::random_voronoi_partition(&k, &mut rng, sites)?;
            Ok(Instance::Partition {
                body: k,
                gauge: c,
                partition,
                m: config.m,
                use_width: suite == TheoremSuite::CorollaryWidth,
            })
        }
    }
}

/// Two planks that certifiably cover K: either complementary parallel slabs
/// split at a random fraction, or a partial slab plus a crossing slab that
/// covers the remainder.
fn two_plank_covering<R: Rng>(
    k: &ConvexBody,
    rng: &mut R,
    parallel: bool,
) -> Result<(Plank, Plank)> {
    use crate::geometry::width::SupportProfile;
    use crate::geometry::Direction;
    use crate::randutil::random_unit_vector;

    let d = k.dim();
    let kp = SupportProfile::of_body(k);
    let u1 = Direction::new(random_unit_vector(rng, d))?;
    let hi1 = kp.support(u1.components())?;
    let lo1 = -kp.support(&crate::linalg::neg(u1.components()))?;
    let cut = lo1 + rng.gen_range(0.2f64..0.8) * (hi1 - lo1);
    let p1 = Plank::new(u1.clone(), lo1, cut)?;
    if parallel {
        return Ok((p1, Plank::new(u1, cut, hi1)?));
    }
    // Crossing: the second plank spans the remainder piece along a fresh
    // direction.
    let rest = crate::geometry::ops::slice_with_halfspace(
        k,
        &Hyperplane::new(u1, cut),
        crate::geometry::ops::Side::Above,
    )?;
    let Reduced::Body(rest) = rest else {
        // Degenerate remainder: fall back to the parallel pair.
        return Ok((p1.clone(), Plank::new(p1.normal().clone(), cut, hi1)?));
    };
    let u2 = Direction::new(random_unit_vector(rng, d))?;
    let rp = SupportProfile::of_body(&rest);
    let hi2 = rp.support(u2.components())?;
    let lo2 = -rp.support(&crate::linalg::neg(u2.components()))?;
    Ok((p1, Plank::new(u2, lo2, hi2)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config(target: ProbeTarget, trials: u32) -> ProbeConfig {
        ProbeConfig {
            target,
            dimension: 2,
            trials,
            master_seed: 2024,
            m: 1,
            n: 2,
            tolerance: 1e-6,
            generator: GeneratorParams::default(),
        }
    }

    #[test]
    fn probe_affine_plank_no_counterexample() {
        let report = probe(&quick_config(ProbeTarget::AffinePlank, 8)).unwrap();
        assert_eq!(report.per_trial.len(), 8);
        assert!(report.min_deficit >= -1e-6, "min {}", report.min_deficit);
        assert!(report.violations.is_empty());
        assert!(report.conclusion.contains("no counterexample"));
        assert!(!report.conclusion.contains("verified"));
    }

    #[test]
    fn probe_reports_are_deterministic() {
        let cfg = quick_config(ProbeTarget::SuccessivePlank, 6);
        let a = serde_json::to_string(&probe(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&probe(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn probe_argmin_reproduces_deficit() {
        let cfg = quick_config(ProbeTarget::CutConjecture, 5);
        let report = probe(&cfg).unwrap();
        let json = serde_json::to_string(&report.arg_min_instance).unwrap();
        let inst: Instance = serde_json::from_str(&json).unwrap();
        let again = evaluate_instance(&inst, cfg.engine_tol()).unwrap();
        assert!(
            (again - report.min_deficit).abs() < 1e-9,
            "re-evaluated {again} vs {}",
            report.min_deficit
        );
    }

    #[test]
    fn partition_and_covering_probes_run() {
        for target in [ProbeTarget::PartitionProblem, ProbeTarget::CoveringProblem] {
            let report = probe(&quick_config(target, 6)).unwrap();
            assert!(report.min_deficit >= -1e-6, "{target:?}: {}", report.min_deficit);
            assert!(report.violations.is_empty());
        }
    }

    fn quick_suite(trials: u32) -> SuiteConfig {
        SuiteConfig {
            dimension: 2,
            trials,
            master_seed: 77,
            m: 1,
            n: 2,
            tolerance: 1e-6,
            generator: GeneratorParams::default(),
            inner_trials: 4,
        }
    }

    #[test]
    fn bang_suite_nonnegative() {
        let rep = run_suite(TheoremSuite::Bang, &quick_suite(10), None).unwrap();
        assert!(rep.min_margin >= -1e-9, "{}", rep.min_margin);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn ball_suite_nonnegative() {
        let rep = run_suite(TheoremSuite::Ball, &quick_suite(10), None).unwrap();
        assert!(rep.min_margin >= -1e-6, "{}", rep.min_margin);
    }

    #[test]
    fn two_plank_suite_nonnegative() {
        let rep = run_suite(TheoremSuite::TwoPlank, &quick_suite(10), None).unwrap();
        assert!(rep.min_margin >= -1e-6, "{}", rep.min_margin);
    }

    #[test]
    fn partition_suites_nonnegative() {
        for suite in [TheoremSuite::AkopyanKarasev, TheoremSuite::CorollaryWidth] {
            let rep = run_suite(suite, &quick_suite(8), None).unwrap();
            assert!(rep.min_margin >= -1e-6, "{suite:?}: {}", rep.min_margin);
        }
    }

    #[test]
    fn conway_suite_nonnegative() {
        let rep = run_suite(TheoremSuite::Conway, &quick_suite(3), None).unwrap();
        assert!(rep.min_margin >= -1e-5, "{}", rep.min_margin);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn equal_parallel_cuts_give_zero_cut_conjecture_deficit() {
        // K=C square sliced into thirds by two parallel hyperplanes:
        // greatest piece r_C(., 1) = 1/3 = r_C(K, 3).
        let k = ConvexBody::axis_box(&[(0.0, 1.0), (0.0, 1.0)]).unwrap();
        let u = crate::Direction::new(vec![1.0, 0.0]).unwrap();
        let inst = Instance::CutArrangement {
            body: k.clone(),
            gauge: k,
            hyperplanes: vec![
                Hyperplane::new(u.clone(), 1.0 / 3.0),
                Hyperplane::new(u, 2.0 / 3.0),
            ],
            m: 1,
            n: 3,
        };
        let d = evaluate_instance(&inst, 1e-9).unwrap();
        assert!(d.abs() < 1e-6, "deficit {d}");
    }

    #[test]
    fn handcrafted_undersized_covering_has_negative_deficit() {
        // A single tiny cell is not a covering of space; its inradius sum
        // falls short of r_C(K, m), so the deficit calculus must go
        // negative on such (invalid) input.
        let k = ConvexBody::axis_box(&[(0.0, 1.0), (0.0, 1.0)]).unwrap();
        let tiny = ConvexBody::axis_box(&[(0.0, 0.1), (0.0, 0.1)]).unwrap();
        let inst = Instance::Covering {
            body: k.clone(),
            gauge: k,
            cells: vec![tiny],
            m: 1,
        };
        let d = evaluate_instance(&inst, 1e-9).unwrap();
        assert!((d + 0.9).abs() < 1e-6, "deficit {d}");
    }

    #[test]
    fn aggregation_records_reverified_violations() {
        let k = ConvexBody::axis_box(&[(0.0, 1.0), (0.0, 1.0)]).unwrap();
        let tiny = ConvexBody::axis_box(&[(0.0, 0.1), (0.0, 0.1)]).unwrap();
        let bad = Instance::Covering {
            body: k.clone(),
            gauge: k.clone(),
            cells: vec![tiny],
            m: 1,
        };
        let good = Instance::Covering {
            body: k.clone(),
            gauge: k.clone(),
            cells: vec![k.clone()],
            m: 1,
        };
        let outcomes = vec![
            (0u64, evaluate_instance(&good, 1e-9).unwrap(), good),
            (1u64, evaluate_instance(&bad, 1e-9).unwrap(), bad),
        ];
        let agg = aggregate(outcomes, 1e-6, 1e-10).unwrap();
        assert_eq!(agg.violations.len(), 1);
        assert_eq!(agg.violations[0].seed, 1);
        assert!(agg.violations[0].recheck_deficit < -1e-6);
        assert!(agg.min_value < -0.5);
    }
}
