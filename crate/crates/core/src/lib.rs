//! Computational convex geometry for plank coverings and successive
//! inradii: widths and relative widths, gauge-body erosion, C-inradii and
//! their successive variants, optimal successive hyperplane cuts, Voronoi
//! partition verifiers, plank coverage checks, and seeded randomized
//! searches for counterexamples to the open covering conjectures.

// Negated comparisons like `!(x > 0.0)` are deliberate: they reject NaN
// where `x <= 0.0` would accept it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cuts;
pub mod error;
pub mod geometry;
pub mod inradius;
pub mod linalg;
pub mod lp;
pub mod planks;
pub mod randutil;
pub mod search;

pub use cuts::{
    apply_cut_tree, arrangement_pieces, greatest_piece_inradius, optimal_conway_cuts,
    random_cut_tree, verify_conway_theorem, verify_partition_inequality, voronoi_partition,
    ConwayReport, CutTree, PartitionFamily, PartitionReport, Provenance,
};
pub use error::{Error, Result};
pub use geometry::ops::{
    c_inradius, enumerate_vertices_2d, erode, intersect_with_system, slice_to_body,
    slice_with_halfspace, Reduced, Side,
};
pub use geometry::width::{
    minimal_relative_width, minimal_relative_width_with, minimal_width, minimal_width_with,
    relative_width_parallel, support_point, support_value, width_parallel, WidthResult,
};
pub use geometry::{BodyRep, ConvexBody, Direction, Halfspaces, Hyperplane, Plank};
pub use inradius::{
    inradius_sequence, packing_feasible, rounded_relative_width, successive_inradius,
    successive_inradius_via_packing, LinearPacking, SuccessiveInradiusResult,
};
pub use planks::{
    affine_deficit, bang_deficit, covers_body, plank_relative_width, thicken_hyperplane,
    two_plank_check, AffineDeficitReport, CoverageVerdict, PlankFamily, TwoPlankReport,
};
pub use search::{
    evaluate_instance, probe, run_suite, Instance, ProbeConfig, ProbeReport, ProbeTarget,
    SuiteConfig, SuiteReport, TheoremSuite,
};
