//! Radius-optimal augmentation of a metric path by one edge.
//!
//! Given vertices `v_1, ..., v_n` in a metric space joined into a path, find
//! the edge `e(v_i, v_j)` whose addition minimizes the radius of the
//! resulting graph, where the center may be any point of the graph. The
//! [`solver`] does this in O(n); [`query`] reports the radius and center for
//! any given edge in O(log n) after O(n) preprocessing; [`oracle`] holds slow
//! brute-force counterparts used for verification.
//!
//! ```
//! use roap_core::{gen, solver, MetricKind, PathInstance};
//!
//! let inst: PathInstance<f64> = gen::line(4).build(MetricKind::Euclidean).unwrap();
//! assert_eq!(solver::solve(&inst).best.radius, 1.5);
//! ```

pub mod audit;
pub mod error;
pub mod gen;
pub mod io;
pub mod metric;
pub mod oracle;
pub mod query;
pub mod scalar;
pub mod scan;
pub mod solver;

pub use error::{Result, RoapError};
pub use metric::{
    validate_metric, MetricKind, MetricReport, PathInstance, SourceKind, ValidationMode,
};
pub use query::{QueryResult, QueryStructure, RangeMaxTree};
pub use scalar::{HalfInt, Scalar};
pub use scan::{compute_lambda_table, LambdaTable};
pub use solver::{solve, Candidate, CaseTag, CenterLocation, Solution};
