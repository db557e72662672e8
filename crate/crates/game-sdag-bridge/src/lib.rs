//! Conversions between winning cop strategies and S-DAGs, and the
//! minimum-width pipeline.

mod choice;
mod to_sdag;
mod to_strategy;
mod width;

pub use choice::{cop_choice_set, ChoiceIndex};
pub use to_sdag::{leaf_reach, strategy_to_sdag, BinaryTree};
pub use to_strategy::{check_forward_facing, sdag_to_strategy};
pub use width::{compute_sdag_width, robber_winning_start, WidthOutcome};

#[derive(Debug, thiserror::Error)]
pub enum BridgeError {
    #[error(transparent)]
    Game(#[from] cr_game::CrError),
    #[error(transparent)]
    Sdag(#[from] sdag::SdagError),
    #[error("key ({x}, {s}, {r}) does not arise from the strategy")]
    UnknownKey { x: graph_core::VertexSet, s: graph_core::VertexSet, r: usize },
    #[error("input S-DAG is not nice: {0}")]
    NotNice(String),
    #[error("S-DAG width {width} exceeds k = {k}")]
    TooWide { width: usize, k: usize },
    #[error("no forward-facing node for {0}")]
    ForwardFacing(String),
    #[error("internal error: {0}")]
    Internal(String),
}
