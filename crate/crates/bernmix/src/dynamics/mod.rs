//! Martingale predictive schemes and the experiments built on them:
//! order-dependence and c.i.d. diagnostics, asymptotic gap sweeps, and
//! stopping-value distortion.

mod experiments;
mod schemes;
mod stopping;

pub use experiments::{
    discrepancy_experiment, growing_horizon_experiment, ols_slope, slope_log_gap_vs_n,
    ExperimentSpec, KSpec, ResultRow,
};
pub use schemes::{
    cid_check, counterexample_coeff, initial_state, order_dependence_check, step_scheme,
    theta_on_path, CidReport, GammaSpec, OrderCheck, Scheme, SchemeState,
};
pub use stopping::{stopping_boundary_witness, stopping_value_gap, BoundaryWitness};
