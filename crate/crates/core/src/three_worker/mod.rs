//! The three-worker constant-velocity line in reduced coordinates
//! `(x, y) = (x_2, x_3)` with `r1 = v1/v3`, `r2 = v2/v3`.

mod constants;
mod map;
mod region2;
mod region3;
mod sigma;

pub use constants::{
    c4_discriminant, c4_eigenvalues, c4_eigenvalues_escape, c4_piece, derived_constants, p_star,
    region3_hypothesis, C4Eigenvalues, DerivedConstants,
};
pub use map::{
    classify_cell, iterate3, region_of, reset_map3, step3, AffinePiece, Cell, Point, Region,
    ThreeWorkerParams,
};
pub(crate) use map::cell_from;
pub use region2::{region2_stable_segment, region2_two_cycle, QuadraticPoint, StableSegment};
pub use region3::{
    classify_region3, classify_region3_traced, standard_cycle, AsymptoticBehavior, Region3Trace,
};
pub use sigma::{
    sigma_contains, sigma_invariance_check, sigma_vertex_relations, SigmaReport, SigmaSet,
    SigmaViolation, VertexRelation, SIGMA_SAMPLE_GRID,
};
