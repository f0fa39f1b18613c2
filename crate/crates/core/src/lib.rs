//! Two-qubit Werner states under non-Markovian amplitude damping, protected
//! by weak measurement and measurement reversal.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense 2×2 / 4×4 complex matrices, a cyclic Jacobi
//!   eigensolver for Hermitian matrices and the PSD square root.
//! * [`qstate`]: density matrices, Werner states, X-state and Bloch
//!   parameterisations.
//! * [`channel`]: the Lorentzian-reservoir decay factor, the amplitude
//!   damping channel and the weak measurement / reversal operations.
//! * [`measures`]: concurrence, the entropic steering functional, the
//!   conditional-entropy sum over Pauli bases and Bures fidelity.
//! * [`protocol`]: the two WM → damping → WMR scenarios, built both by
//!   channel composition and from closed forms, plus optimal reversal
//!   strengths.
//! * [`sweep`]: evaluation of protocol configurations over time grids.

pub mod channel;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod optimize;
pub mod protocol;
pub mod qstate;
pub mod sweep;

#[cfg(test)]
mod test_util;

pub use channel::{Regime, ReservoirParams, Target};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use measures::SteeringReport;
pub use protocol::{Case, MrPolicy, Objective, ProtocolOutcome, ScenarioConfig};
pub use qstate::{BlochXParams, DensityMatrix4, ValidationReport, XStateParams};
pub use sweep::SweepRow;
