//! Modular weights, twisted Chern characters and the twisted cocycle checks.

mod chain;
mod chern;
mod extrapolate;
mod report;
mod suite;
mod weight;

pub use chain::{pair_with_chain, TwistedChain};
pub use chern::{
    charge, check_hochschild, check_sigma_cyclicity, check_sigma_invariance, chern_vs_free_product,
    prefactor, twisted_trace_residual, CheckResult, ChernFunctional, Normalization,
};
pub use extrapolate::truncation_extrapolate;
pub use report::{round_sig, PairingReport, ReportParams, ReportValue};
pub use suite::{cocycle_suite, CheckSummary, SuiteReport};
pub use weight::{
    check_tail, diag_of_product, lambda_constant, level_sum, weight_eval, weight_eval_checked,
    weight_eval_with_margin, weight_full, weight_of_product, Estimate,
};

#[cfg(test)]
mod tests;
