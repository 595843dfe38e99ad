//! Numerical building blocks: quasi-Newton minimization, penalty schedules,
//! root bracketing and extrapolation.

pub mod extrapolate;
pub mod lbfgs;
pub mod penalty;
pub mod roots;

pub use extrapolate::{limit_at_infinity, richardson_even};
pub use lbfgs::{minimize, LbfgsOptions, Minimum};
pub use penalty::{ConstrainedProblem, PenaltyOptions, PenaltySolution};
