//! Creation/diagonal/annihilation decomposition of reduced operators in a
//! graph product, the space `X_d` with the embedding `j_d`, the intertwining
//! with the free product, and Haagerup-inequality experiments.

mod decompose;
mod haagerup;
mod intertwine;
mod operator;
mod xd;

pub use decompose::{decompose_summand, sigma_count, summand_matrix, summed_decomposition, verify_decomposition};
pub use haagerup::{
    block_count_bound, haagerup_experiment, max_block_count, orthogonality_residual, paper_constant,
    random_homogeneous, HaagerupConfig, HaagerupReport, SampleRatio,
};
pub use intertwine::{
    intertwiner_check, intertwiner_check_all, intertwiner_lhs, map_q, map_r, partial_isometry_q, partial_isometry_r,
    pi_d, pi_f_entry, q_index, r_adjoint, reconstruction_check, reconstruction_check_hecke,
};
pub use operator::ReducedOperator;
pub use xd::{jd, jd_hecke, JdKey, XdElement};
