//! Block-matrix machinery for `det(I - uT)`: the 6×6 blocks, the truncated
//! matrices `M_{k,N}`, exact determinants, and the Schur-complement recursion
//! with its limits.

mod blocks;
mod matrix;
mod modular_det;
mod schur;

pub use blocks::{assemble_m, block_basis, block_matrices, direct_matrix, BlockSpec, BlockTridiagonal};
pub use matrix::{det_bareiss, det_exact, PolyMatrix};
pub use modular_det::det_modular;
pub use schur::{
    a_limit, a_limits, det_a_k0, det_of_i_minus_ut, depth_limits, geometric_tail, schur_iterate, ASource,
    Depth, DepthLimits, SchurState,
};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeterminantError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("exact division failed during elimination: {0}")]
    InexactDivision(#[from] AlgebraError),
    #[error("limit pipeline gives {pipeline}, closed form is {closed}")]
    ClosedFormMismatch { pipeline: String, closed: String },
    #[error("terms are not geometric: {0}")]
    NotGeometric(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
