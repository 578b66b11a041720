//! Exact combinatorics on Pascal's cube and pyramid.
//!
//! The crate evaluates extended binomial coefficients (the entries of the
//! three-dimensional analogue of Pascal's triangle) by three independent
//! routes, builds pyramid layers together with their cube coordinates,
//! computes the exact distribution of the trinomial random walk that lives on
//! those layers, simulates the walk by Monte Carlo, and numerically probes the
//! diffusion equation the walk's middle-row slice satisfies for large times.
//!
//! Coefficient and probability arithmetic is exact (arbitrary-precision
//! integers and rationals); floating point appears only in the [`heat`]
//! module, where derivatives of the Gamma-function extension are compared
//! against finite differences on the exact lattice.

#![forbid(unsafe_code)]

pub mod extbinom;
pub mod heat;
pub mod pyramid;
pub mod ratio;
pub mod special;
pub mod walk;

pub use extbinom::{
    binomial, ext_binom_closed, ext_binom_conv, ext_binom_rec, symmetry_pair, BigCount, CoeffIndex,
    ExtBinomError, RecurrenceTable,
};
pub use heat::{
    derivatives_digamma, derivatives_fd, gradient_digamma, p_continuous, residual_sweep,
    DerivMethod, DerivativeRecord, HeatError, ResidualPair, ResidualReport, TimeSummary,
};
pub use pyramid::{
    build_layer, coeff_at_cube, layer_position_to_cube, layer_sum, layer_to_cube, CubeCoord,
    LayerExport, LayerGrid, PyramidError,
};
pub use walk::{
    exact_distribution, prob_slice, prob_xy, simulate, tv_distance, EmpiricalDistribution,
    ExactDistribution, ExactProb, LayerCoord, StepCounts, WalkConfig, WalkError,
};
