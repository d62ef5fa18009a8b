//! Solvers for the Δ-modular bounded multidimensional knapsack problem and
//! for bounded integer programs in standard form.
//!
//! * [`greedy`]: the LP-rounding 1/(m+1)-approximation.
//! * [`fptas`]: heavy/light split with a dynamic program over scaled costs.
//! * [`exactdp`]: exact pseudo-polynomial dynamic programs around an LP vertex.
//! * [`oracle`]: exhaustive enumeration used as ground truth.

pub mod error;
pub mod exactdp;
pub mod fptas;
pub mod greedy;
pub mod instance;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod proximity;
pub mod ratlp;
pub mod report;
mod state;

pub use error::{Error, Result};
pub use instance::{Instance, KnapsackInstance, StandardFormInstance, Violation};
pub use matrix::IntMatrix;
pub use report::{Mode, SolveReport, Stats, Status};
