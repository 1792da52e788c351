//! Min-max relational equations: evaluation, exact solving, threshold
//! queries and one-input sensitivity curves.

mod exact;
mod sensitivity;
mod system;
mod threshold;

pub use exact::{lower_bound, solve_exact, Cap, Solution, SolutionSpace};
pub use sensitivity::{sensitivity_curve, Segment, SensitivityCurve};
pub use system::{eval_minmax, eval_row, satisfies_coupling, Coupling, Matrix, MinMaxSystem};
pub use threshold::{require_at_least, require_at_most, Atomic, Bound, ThresholdConstraint};
