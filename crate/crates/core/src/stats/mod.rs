//! Classical model of paired spin outcomes: independent single-particle
//! distributions post-selected on the total `M`, compared against squared
//! Clebsch-Gordan amplitudes.
//!
//! Conditioning is on `M` only. At `M = 0` the product states also overlap
//! lower multiplets; the comparison deliberately targets one multiplet
//! (normally the stretched one, `L = 2l`).

mod conditional;
mod distribution;
mod inference;
mod montecarlo;

pub use conditional::{cg_conditional_oracle, conditional_given_sum, sum_probability, ConditionalTable};
pub use distribution::SpinDistribution;
pub use inference::{
    fit_symmetric, infer_distribution, multiplet_targets, residual, InferenceMethod, InferenceResult, GRID_DENOMINATOR,
    MAX_TWO_L_INFERENCE,
};
pub use montecarlo::{simulate_conditional, singlet_sampler, SimEntry, SimReport, CHUNK_SIZE, GENERATOR, Z_THRESHOLD};
