//! Probability semantics for coherent systems with independent components.

mod model;
mod oracle;
mod reliability;
mod report;
mod signature;

pub use model::{Bernoulli, ProbModel, Symbolic, Value};
pub use oracle::{Oracle, MAX_COMPONENTS};
pub use reliability::{
    expectation, failure_count_distribution, failure_probability, generator_degree_histogram,
    masses_from_tails, mean_failures, moment, partial_sums, tail_probabilities,
    truncation_bounds,
};
pub use report::{histogram_csv, joint_csv, BoundsRow, DistributionReport, ToJson, TABLE_CSV_HEADER};
pub use signature::{
    degree_slice, failure_size_distribution, k_fold_signature, signature, slice_differences,
    slice_probabilities, SignatureRow, SignatureTable,
};
