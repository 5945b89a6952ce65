//! The multi-parameter Hecke algebra `C_q[W]` and its deformation maps.

pub mod algebra;
pub mod literal;
pub mod maps;
pub mod param;

pub use algebra::{group_algebra, HeckeAlgebra, HeckeElement};
pub use literal::{
    format_element, format_element_exact, from_json, parse_element, parse_terms, to_json, to_json_exact,
};
pub use maps::{character_apply, character_value, deform, pi_1q, pi_q1, pi_q1_generator, sign_flip};
pub use param::MultiParameter;
