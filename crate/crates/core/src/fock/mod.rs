//! Truncated matrix models: the regular representation on a ball of
//! `l^2(W)`, graph and free product Fock spaces, and norm estimation.

pub mod norm;
pub mod regular;
pub mod space;
pub mod sparse;
pub mod vertex;

pub use norm::{
    norm_lower_bound, norm_lower_bound_seeded, NormEstimate, DEFAULT_MAX_ITER, DEFAULT_SEED, DEFAULT_TOLERANCE,
};
pub use regular::{
    hecke_generator_matrix, projection_ps, represent_by_generators, represent_element, vacuum_coefficient, BallBasis,
};
pub use space::{add_to, hecke_vertex_matrix, vector_diff, Factor, FockKey, FockSpace, FockVector, LocalMatrix, Proj};
pub use sparse::SparseOperator;
pub use vertex::AbelianVertexAlgebra;
