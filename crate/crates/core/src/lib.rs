//! Two-party state discrimination bounds and a one-bit quantum data-hiding
//! scheme built from two-qubit orthogonal separable states.
//!
//! * [`linalg`]: dense Hermitian operators on `C^{d_A} ⊗ C^{d_B}`, partial
//!   transposition, Jacobi eigenvalues, trace norms.
//! * [`ensemble`]: two-state ensembles, `Λ_E`, parity coarse-graining and the
//!   `θ`-family of two-qubit examples.
//! * [`bounds`]: global value, certificate bounds on the PPT value and their
//!   exponential decay in the number of copies.
//! * [`ppt`]: the exact PPT value by trace-norm minimization.
//! * [`protocol`]: Monte Carlo simulation of the hiding protocol.

pub mod bounds;
pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod ppt;
pub mod protocol;
pub mod verify;

pub use bounds::{BoundReport, Certificate, DecayBound};
pub use ensemble::{example_ensemble, ThetaInstance, TwoStateEnsemble};
pub use error::{Error, Hypothesis, Result};
pub use linalg::{BipartiteDims, BipartiteOperator};
pub use ppt::{solve_ppt, SolverConfig, SolverResult};
pub use protocol::{HidingInstance, SimReport, Strategy};
pub use verify::{verify_example, VerifyReport};
