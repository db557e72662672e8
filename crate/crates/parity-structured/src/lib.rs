//! DAG decompositions, a frontier engine over nice decompositions, the
//! gadgets that turn S-DAG nodes into decompositions, and the structured
//! parity solver built on them.

mod dagdec;
mod engine;
mod gadget;
mod solve;

pub use dagdec::{nicefy_dagdec, validate_dagdec, DagDecReport, DagDecomposition, GuardViolation};
pub use engine::{expand_frontier, frontier_step_expand, frontier_step_introduce, frontier_step_split, propagate};
pub use gadget::{build_branch_gadget, deg_one_gadget, frontier_branch, frontier_deg_one, BranchGadget, DegOneGadget, SdagView};
pub use solve::{solve_parity_structured, solve_with_sdag, StructuredOutcome, StructuredSolution};

#[derive(Debug, thiserror::Error)]
pub enum StructError {
    #[error(transparent)]
    Parity(#[from] parity_core::ParityError),
    #[error(transparent)]
    Bridge(#[from] game_sdag_bridge::BridgeError),
    #[error("invalid DAG decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("decomposition is not nice: {0}")]
    NotNice(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}
