//! Deciding quaternionic multiplication.

pub mod decide;
pub mod tensor;
pub mod yu;

pub use decide::{
    factor_yu_block, qm_decide, qm_decide_direct_yu, qm_decide_direct_yu_with, qm_decide_factor,
    qm_decide_factor_with, qm_decide_totally_real, qm_decide_with, qm_surface_over_q, revalidate, CasePath,
    ClassRole, QmDecision, QmOptions, Witness,
};
pub use tensor::{decompose_tensor, decompose_tensor_with_cap, transported_class, PieceEmbedding, TensorDecomposition, TensorPiece};
pub use yu::{yu_feasible, YuBlock, YuFactor, YuInstance, YuOutcome};
