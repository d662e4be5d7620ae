//! S-box side-channel resistance metrics.

mod ccv;
mod cross;
mod transparency;

pub use ccv::{ccv, ccv_incremental, ccv_key, kappa_profile, CcvKey, IncrementalCcv, KappaProfile};
pub use cross::{
    cross_correlation, cross_correlation_fast, cross_correlation_naive, CrossCorrelationTable,
    NAIVE_MAX_BITS,
};
pub use transparency::{
    mto, mto_beta, mto_beta_from_table, mto_beta_zero, rto, rto_beta, rto_beta_from_table,
    rto_beta_zero, transparency_order, transparency_order_direct, transparency_order_from_table,
    ComponentSpectra,
};
