//! Simplicity and nuclearity verdicts for Hecke C*-algebras, character
//! certificates, and the averaging operators behind the simplicity
//! argument near `q = 1`.

mod ching;
mod powers;
mod simplicity;

pub use ching::{ching_inequality_test, parallelogram_identity_test, parallelogram_residual, ChingReport};
pub use powers::{
    averaging_compression, averaging_norm_estimate, averaging_units, deformed_averaging, find_powers_elements,
    powers_decay_experiment, validate_powers, PowersDecay, PowersElements, POWERS_VALIDATION_CAP,
};
pub use simplicity::{
    character_certificate, classify_free_abelian_product, classify_nuclearity, classify_simplicity,
    classify_spherical_affine, epsilon_normalize, CharacterCertificate, CharacterReport, Family, NuclearityReport,
    SimplicityVerdict, Verdict,
};
