//! Coxeter systems, right-angled graphs and the combinatorics of reduced words.

pub mod ball;
pub mod classify;
pub mod free_abelian;
pub mod graph;
pub mod sigma;
pub mod system;
pub mod word;

pub use ball::{GrowthSeries, DEFAULT_BALL_CAP};
pub use classify::{Component, CoxeterType, GRAM_TOLERANCE};
pub use free_abelian::FreeAbelianProduct;
pub use graph::{default_labels, SimplicialGraph, VertexSet};
pub use sigma::{indices_with_sigma, sigma_permutation, split, summand_indices, Split, SplitRule, SummandIndex};
pub use system::{CoxeterSystem, Exponent, Letter, SystemFile, DEFAULT_REDUCE_CAP};
pub use word::{shuffle_normal_form, GroupElement};
