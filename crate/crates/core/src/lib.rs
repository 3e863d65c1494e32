//! Minimax risk classifiers (MRCs) learned under generalized maximum entropy.
//!
//! An MRC minimizes the worst-case expected loss over an uncertainty set of
//! distributions whose feature expectations lie in a box `[a, b]`. The
//! minimax value coincides with the maximum generalized entropy over the same
//! set, and the classifier is recovered from the solution of a convex dual
//! problem in the parameters `(mu, nu)`.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerical
//! core:
//!
//! - [`features`]: threshold feature maps fitted with decision stumps,
//!   expectation boxes and constraint atoms.
//! - [`entropy`]: scores, empirical risks and generalized entropies for the
//!   0-1, log, alpha and log-relative losses.
//! - [`dual`]: the reduced dual objective with `eta` and `nu` eliminated, a
//!   subgradient trainer for every loss and an exact LP trainer for 0-1.
//! - [`lp`]: a dense two-phase simplex solver.
//! - [`bounds`]: upper/lower risk bounds and worst-case risk of arbitrary rules.
//! - [`predict`]: prediction rules for trained models.
//! - [`marginal`]: learners with the instances' marginal fixed to the
//!   empirical one (adversarial 0-1 classification, L1 logistic regression).
//! - [`oracle`]: brute-force primal references for tiny instances.
//!
//! Class indices are 0-based throughout this crate. File formats and the CLI
//! (in the `mrc` crate) expose labels as `1..=|Y|`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod data;
pub mod dual;
pub mod entropy;
mod error;
pub mod features;
pub mod lattice;
pub mod loss;
pub mod lp;
pub mod marginal;
pub mod math;
pub mod model;
pub mod oracle;
pub mod predict;

pub use bounds::{BoundReport, EpsilonTable, SlackTerms};
pub use data::Dataset;
pub use dual::{ReducedObjective, SolverConfig, StepRule};
pub use entropy::ExplicitDistribution;
pub use error::{MrcError, Result};
pub use features::{ConstraintAtoms, ExpectationBox, FeatureMap, StumpSpec, Threshold};
pub use loss::{beta_of_alpha, Alpha, LossKind, Prior};
pub use model::{MrcModel, Variant};

/// Largest label count accepted by the exact 0-1 LP path (it enumerates
/// `2^|Y| - 1` label subsets per atom).
pub const MAX_EXACT_CLASSES: usize = 12;
