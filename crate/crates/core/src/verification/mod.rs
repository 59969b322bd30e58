//! Independent checks of the samplers and invariants.
//!
//! Rejection oracles draw a tree and free angles (or directions) and keep the
//! draw only if a brute-force pairwise check finds no overlap; their
//! acceptance rates are the volume formulas and their accepted samples are
//! exactly uniform. The statistical helpers compare those samples with the
//! growth samplers, and [`suites`] bundles everything into named runs.

mod checks;
mod oracles;
mod report;
mod stats;
pub mod suites;

#[cfg(test)]
mod tests;

pub use checks::{
    acceptance_2d, acceptance_3d, acceptance_gpolymer, compare_2d_with_oracle,
    compare_gpolymer_with_oracle, compare_prefix_with_oracle, diameter_scaling,
    edge_angle_functional, inductive_fraction_oracle, inductive_fraction_sampler,
    is_label_increasing, projection_vs_b_law, projection_vs_rejection, random_projection_vectors,
    topology_key, type_volume_check, walk_return_exact, walk_return_probability, Comparison,
    DiameterSource, ProjectionComparison, ScalingFit, TypeVolumeReport, KS_THRESHOLD, P_THRESHOLD,
};
pub use oracles::{
    rejection_sample_2d, rejection_sample_3d, rejection_sample_gpolymer, GPolymerOracle,
};
pub use report::{collect_parallel, count_parallel, TrialReport, CHUNK};
pub use stats::{chi_square_two_sample, ks_two_sample, log_log_slope, ChiSquareResult, KsResult};
pub use suites::{run_suite, CheckOutcome, Suite, SuiteOptions};
