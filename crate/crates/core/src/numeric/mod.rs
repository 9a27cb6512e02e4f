//! QLM iterates for concrete potentials, sampled on the line `Im z = delta`.

pub mod fit;
pub mod ode;
pub mod sampled;
pub mod solver;

pub use fit::{asymptotic_residue_fit, inner_pole_fit, residue_fit, InnerFit, LeadingModel, ResidueFit};
pub use sampled::{convergence_orders, IterateHistory, SampledFunction};
pub use solver::{
    first_iterate_closed_form, k_squared, k_squared_derivative, qlm_step_numeric, solve_qlm, zeroth_iterate,
    SolveConfig,
};
