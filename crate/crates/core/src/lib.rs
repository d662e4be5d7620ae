//! Side-channel resistance metrics for S-boxes (CCV, TO, MTO, RTO), the
//! LS-HWF hill climber that maximizes CCV, and the trajectory experiment that
//! correlates CCV with the transparency-order family.

pub mod metrics;
pub mod report;
pub mod rng;
pub mod sbox;
pub mod search;
pub mod trajectory;
pub mod walsh;

pub use metrics::{
    ccv, ccv_incremental, ccv_key, cross_correlation, cross_correlation_fast,
    cross_correlation_naive, kappa_profile, mto, mto_beta, mto_beta_zero, rto, rto_beta,
    rto_beta_zero, transparency_order, CcvKey, CrossCorrelationTable, KappaProfile,
};
pub use rng::RngStream;
pub use sbox::{
    hamming_weight, hw_class_shuffle, hw_classes, parse_sbox, random_bijective_sbox, HwClasses,
    SBox, SBoxError,
};
pub use search::{ls_hwf, ClimbEvent, SearchResult};
pub use trajectory::{
    pearson, pearson_xy, run_experiment, sample_equal_ccv, summary_stats, trajectory_point,
    ExperimentConfig, ExperimentReport, ExperimentSummary, Metric, RunSummary, Trajectory,
    TrajectoryError, TrajectoryPoint,
};
