//! Verifiers and estimators for the analytic properties of the six forms.
//!
//! Everything here is exact: values are [`Rational`](crate::Rational),
//! counts are integers, and dimensions are kept as ratios of logarithms until
//! they are rendered. Grid-based computations (box counts, Riemann sums,
//! invariant-set covers) reduce signed prefix integers over all digit cells of
//! a rank and are parallelized with rayon; the reductions are integer sums or
//! sorted sets, so the result does not depend on how the work is split.

mod boxcount;
mod cells;
mod dimension;
mod equations;
mod integral;
mod invariant;
mod limits;
mod quotient;
mod witness;

pub use boxcount::{box_count_series, graph_box_count, graph_samples, BoxCountEntry, BoxCountSeries, GraphSample};
pub use cells::{cell_offset, DEFAULT_CELL_BUDGET};
pub use dimension::LogDimension;
pub use equations::{check_fplus_complement, check_fplus_inv_complement, EquationCheck};
pub use integral::{lebesgue_integral_exact, riemann_midpoint, riemann_ranks, IntegralResult};
pub use invariant::{
    fplus_fixed_dimension, fplus_fixed_membership, invariant_set_box_count, invariant_set_fsk, InvariantBoxCount,
    InvariantClass, InvariantSetReport,
};
pub use limits::{dual_value, jump_closed_form, one_sided_limits, JumpReport};
pub use quotient::{difference_quotients, quotient_traces, QuotientEntry, QuotientTrace};
pub use witness::{
    dual_points, monotonicity_counterexample, noninjectivity_witness, welldefinedness_witness, MonotonicityWitness,
    NoninjectivityWitness, WelldefinednessWitness, DEFAULT_SEARCH_DEPTH,
};
