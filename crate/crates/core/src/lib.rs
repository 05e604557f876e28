//! Exact and Monte Carlo counting of height-restricted Dyck paths.
//!
//! A Dyck path of semilength `n` doubles as the trajectory of unmatched
//! socks when `n` pairs are drawn one sock at a time: an up-step is a sock
//! without a partner yet, a down-step completes a pair. `B_{n,k}` counts
//! paths that reach height `k`; `A_{n,t}` counts paths that stay at or below
//! `t`; `B_{n,k} = C_n - A_{n,k-1}`.
//!
//! Each quantity is reachable through several independent routes:
//!
//! * [`closedform`]: binomial alternating sums (two-barrier reflection,
//!   explicit `B` formulas, the power-sum reduction of `A`).
//! * [`recurrences`]: first-return and last-return dynamic programs.
//! * [`trigsum`]: trigonometric sums for `A_{n,t}` and the asymptotics of
//!   `P_{n,k} = B_{n,k} / C_n`.
//! * [`oracle`]: exhaustive enumeration and the exact drawing-process chain.
//! * [`sampler`]: seeded Monte Carlo under the uniform-path and physical
//!   drawing models.
//!
//! With the default `parallel` feature the enumeration, Monte Carlo and
//! table loops run on rayon; [`Execution::Sequential`] selects the plain
//! loop explicitly and produces identical results.

pub mod closedform;
pub mod error;
pub mod exec;
pub mod numeric;
pub mod oracle;
pub mod recurrences;
pub mod sampler;
pub mod table;
pub mod trigsum;

pub use closedform::WalkSpec;
pub use error::{Error, Result};
pub use exec::Execution;
pub use numeric::{Count, Fraction};
pub use oracle::{HeightDistribution, Trajectory};
pub use recurrences::CountTable;
pub use sampler::{Model, SimResult};
pub use table::Method;
pub use trigsum::TrigEvaluation;
