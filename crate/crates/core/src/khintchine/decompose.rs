use super::operator::ReducedOperator;
use crate::coxeter::{indices_with_sigma, sigma_permutation, SummandIndex};
use crate::error::{Error, Result};
use crate::fock::{add_to, vector_diff, FockKey, FockSpace, FockVector, SparseOperator};
use crate::scalar::Scalar;

/// One summand of the creation/diagonal/annihilation decomposition applied
/// to a basis vector; zero when `sigma` does not exist for `idx`.
pub fn decompose_summand<S: Scalar>(
    space: &FockSpace,
    op: &ReducedOperator<S>,
    idx: &SummandIndex,
    key: &FockKey,
) -> Result<FockVector<S>> {
    if !idx.is_valid(space.graph(), op.degree()) {
        return Err(Error::InvalidParameter(format!("malformed index {idx:?}")));
    }
    Ok(match sigma_permutation(space.graph(), op.letters(), idx) {
        Some(split) => space.apply_factors_to_key(key, &op.summand_factors(&split)),
        None => FockVector::new(),
    })
}

/// Matrix of one summand on `basis`.
pub fn summand_matrix<S: Scalar>(
    space: &FockSpace,
    op: &ReducedOperator<S>,
    idx: &SummandIndex,
    basis: &[FockKey],
) -> Result<SparseOperator<S>> {
    if !idx.is_valid(space.graph(), op.degree()) {
        return Err(Error::InvalidParameter(format!("malformed index {idx:?}")));
    }
    let factors = sigma_permutation(space.graph(), op.letters(), idx).map(|s| op.summand_factors(&s));
    Ok(space.matrix(basis, basis, |k| match &factors {
        Some(f) => space.apply_factors_to_key(k, f),
        None => FockVector::new(),
    }))
}

/// The sum of every summand applied to a basis vector.
pub fn summed_decomposition<S: Scalar>(space: &FockSpace, op: &ReducedOperator<S>, key: &FockKey) -> FockVector<S> {
    let mut total = FockVector::new();
    for split in indices_with_sigma(space.graph(), op.letters()).values() {
        for (k, c) in space.apply_factors_to_key(key, &op.summand_factors(split)) {
            add_to(&mut total, k, c);
        }
    }
    total
}

/// Largest entrywise difference between the summed decomposition and
/// `a_1 ... a_d`, over inputs of length at most `n - d`.
pub fn verify_decomposition<S: Scalar>(
    space: &FockSpace,
    op: &ReducedOperator<S>,
    n: usize,
    cap: usize,
) -> Result<f64> {
    let d = op.degree();
    if d > n {
        return Err(Error::DegreeExceedsRadius { degree: d, radius: n });
    }
    let splits = indices_with_sigma(space.graph(), op.letters());
    let summands: Vec<_> = splits.values().map(|s| op.summand_factors(s)).collect();
    let product = op.product_factors();
    let mut worst = 0.0f64;
    for key in space.basis(n - d, cap)? {
        let mut total = FockVector::new();
        for f in &summands {
            for (k, c) in space.apply_factors_to_key(&key, f) {
                add_to(&mut total, k, c);
            }
        }
        let direct = space.apply_factors_to_key(&key, &product);
        worst = worst.max(vector_diff(&total, &direct));
    }
    Ok(worst)
}

/// Number of indices at which `sigma^v` exists.
pub fn sigma_count(space: &FockSpace, letters: &[crate::coxeter::Letter]) -> usize {
    indices_with_sigma(space.graph(), letters).len()
}
