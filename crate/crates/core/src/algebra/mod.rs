//! Exact coefficient arithmetic and truncated graded algebra.
//!
//! Every value carries its own truncation degree; binary operations truncate
//! to the smaller of the two.

mod param;
mod partition;
mod scalar;
mod series;
mod torus;

pub use param::{ParamMonomial, ParamScalar};
pub use partition::{enumerate_partitions, partitions_of, Partition};
pub use scalar::{int, Coefficient, Scalar};
pub use series::{
    chern_monomial_label, homogeneous_part, series_invert, series_mul, substitute, substitute_with_unit,
    ChernSeries, GradedAlgebra,
};
pub use torus::{
    chern_images, euler_class, quotient_series, split_to_roots, total_chern, TorusMonomial,
    TorusPolynomial, WeightVector,
};
