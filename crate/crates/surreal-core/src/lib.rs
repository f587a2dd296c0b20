//! Exact symbolic kernel for surreal numbers as transfinite sign sequences.
//!
//! The crate is organized bottom-up:
//!
//! * [`ord`] — ordinal notations below the first fixed point of `α ↦ ε_α`,
//!   with the arithmetic fragment the formulas need (`∔`, `×̇`, `ω^·`,
//!   `ε_·`, left subtraction, `♭`).
//! * [`number`] — numbers as finite lists of sign runs and lazily expanded
//!   symbolic tails, with exact order, simplicity, and structural operations.
//! * [`maps`] — the parametrisation maps `ω̇^·`, `Ξ_Mo^ω`, `ι`, `κ`, and the
//!   fixed-point structures `V_a`.
//! * [`logatomic`] — the log-atomic grid: positions, the `ρ`/`λ` formulas
//!   under explicit reading conventions, and the piecewise `h`/`g` rewrites.
//! * [`audit`] — the machine audit of the formulas against independent
//!   oracles, with replayable counterexamples.
//!
//! Everything is exact: an answer is right, reported wrong, or refused with
//! [`Error::BudgetExceeded`] — never approximate.

pub mod audit;
pub mod error;
pub mod logatomic;
pub mod maps;
pub mod number;
pub mod ord;

pub use error::{Error, Result};
pub use number::{run_budget, set_run_budget, Number, Run, Segment, Sign, SignedNumber, Tail,
    TailDescriptor, DEFAULT_RUN_BUDGET};
pub use ord::{ExtOrdinal, OrdinalTerm};
