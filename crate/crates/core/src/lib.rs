//! Exact-arithmetic classification of stable framed quiver representations:
//! path skeleta, moduli charts, normal forms, isomorphism decisions, and
//! Pluecker coordinates.

pub mod atlas;
pub mod chart;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod quiver;
pub mod random;
pub mod rep;
pub mod skeleton;

pub use atlas::{
    chart_dimension, classify_coordinates, coordinate_label, parse_coordinate_label, pluecker,
    verify_chart_membership, verify_relations, vertex_surplus, CoordinateClassification,
    PlueckerVector, RelationPoly, RelationReport, RelationTerm,
};
pub use chart::{
    complement_paths, iso_check, normal_form, project_chart, recover_arrow_maps, section,
    transition, ChartPoint, IsoDecision,
};
pub use error::Error;
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use oracle::{orbit_iso_bruteforce, stability_bruteforce, OracleBudget};
pub use quiver::{ExtendedQuiver, FramedPath, FramedShape, PlainPath, Quiver};
pub use random::{random_stable, RandomDraw};
pub use rep::{FramedRep, GradedSubspace, GroupElement, RowBundle};
pub use skeleton::{
    enumerate_abstract_skeleta, greedy_skeleton, skeleta_of_rep, skeleta_of_rep_among,
    skeleton_block, PathUniverse, Skeleton,
};
