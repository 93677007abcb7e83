//! Problem registry, error norms, studies and CSV output.

pub mod csv;
pub mod norms;
pub mod problems;
pub mod runs;

pub use csv::{fmt_sci, Cell, CsvTable};
pub use norms::{convergence_order, error_norms, error_norms_2d, filtered_error_norms, ErrorNorms};
pub use problems::{problem_1d, problem_2d, Problem1D, Problem2D, ProblemId, SchemeName};
pub use runs::{
    run_cfl_sweep, run_convergence, run_mass_tracking, simulate, solve, CflRow, ConvergenceRow, MassRow, RunConfig,
    SimOutcome, SolveOutcome, SplitOrder, State,
};
