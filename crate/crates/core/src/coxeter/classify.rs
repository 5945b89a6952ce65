use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::graph::VertexSet;
use super::system::{CoxeterSystem, Exponent, Letter};

/// Eigenvalues with absolute value below this count as zero.
pub const GRAM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoxeterType {
    Spherical,
    Affine,
    NonAffine,
}

impl CoxeterType {
    pub fn is_spherical_or_affine(self) -> bool {
        !matches!(self, CoxeterType::NonAffine)
    }
}

/// An irreducible component of the Coxeter diagram and its type.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Component {
    pub generators: Vec<usize>,
    pub kind: CoxeterType,
    pub gram_eigenvalues: Vec<f64>,
}

fn union_find_root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn partition_by(system: &CoxeterSystem, joined: impl Fn(Exponent) -> bool) -> Vec<Vec<usize>> {
    let n = system.rank();
    let mut parent: Vec<usize> = (0..n).collect();
    for s in 0..n {
        for t in s + 1..n {
            if joined(system.exponent(s as Letter, t as Letter)) {
                let (a, b) = (union_find_root(&mut parent, s), union_find_root(&mut parent, t));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for v in 0..n {
        let r = union_find_root(&mut parent, v);
        if index[r] == usize::MAX {
            index[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[index[r]].push(v);
    }
    classes
}

impl CoxeterSystem {
    /// Generators are conjugate iff joined by a chain of odd exponents.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        partition_by(self, |m| matches!(m, Exponent::Finite(m) if m % 2 == 1))
    }

    /// Class index of every generator.
    pub fn conjugacy_class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.rank()];
        for (i, class) in self.conjugacy_classes().iter().enumerate() {
            for &s in class {
                out[s] = i;
            }
        }
        out
    }

    /// Connected components of the Coxeter diagram (edges where `m >= 3`).
    pub fn diagram_components(&self) -> Vec<Vec<usize>> {
        partition_by(self, |m| m != Exponent::Finite(2))
    }

    pub fn is_irreducible(&self) -> bool {
        self.diagram_components().len() == 1
    }

    /// `B(s,t) = -cos(pi / m(s,t))` restricted to `gens`.
    pub fn gram_matrix(&self, gens: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(gens.len(), gens.len(), |i, j| {
            if i == j {
                1.0
            } else {
                -self.exponent(gens[i] as Letter, gens[j] as Letter).cos_pi_over()
            }
        })
    }

    pub fn classify_components(&self) -> Vec<Component> {
        self.diagram_components()
            .into_iter()
            .map(|generators| {
                let gram = self.gram_matrix(&generators);
                let mut eig: Vec<f64> = SymmetricEigen::new(gram).eigenvalues.iter().copied().collect();
                eig.sort_by(|a, b| a.total_cmp(b));
                let min = eig[0];
                let kind = if min > GRAM_TOLERANCE {
                    CoxeterType::Spherical
                } else if min.abs() <= GRAM_TOLERANCE {
                    CoxeterType::Affine
                } else {
                    CoxeterType::NonAffine
                };
                Component {
                    generators,
                    kind,
                    gram_eigenvalues: eig,
                }
            })
            .collect()
    }

    /// Every irreducible component is spherical or affine.
    pub fn is_nuclear_type(&self) -> bool {
        self.classify_components()
            .iter()
            .all(|c| c.kind.is_spherical_or_affine())
    }

    pub fn generator_set(&self, gens: &[usize]) -> VertexSet {
        VertexSet::from_indices(gens.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugacy_by_odd_exponents() {
        assert_eq!(
            CoxeterSystem::free(3).conjugacy_classes(),
            vec![vec![0], vec![1], vec![2]]
        );
        let a2 = CoxeterSystem::dihedral(Exponent::Finite(3)).unwrap();
        assert_eq!(a2.conjugacy_classes(), vec![vec![0, 1]]);
        let b2 = CoxeterSystem::dihedral(Exponent::Finite(4)).unwrap();
        assert_eq!(b2.conjugacy_classes(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn types() {
        let kinds =
            |sys: &CoxeterSystem| -> Vec<CoxeterType> { sys.classify_components().iter().map(|c| c.kind).collect() };
        assert_eq!(
            kinds(&CoxeterSystem::dihedral(Exponent::Infinite).unwrap()),
            vec![CoxeterType::Affine]
        );
        assert_eq!(
            kinds(&CoxeterSystem::dihedral(Exponent::Finite(3)).unwrap()),
            vec![CoxeterType::Spherical]
        );
        assert_eq!(kinds(&CoxeterSystem::free(3)), vec![CoxeterType::NonAffine]);
        // two commuting generators: two spherical components
        assert_eq!(
            kinds(&CoxeterSystem::dihedral(Exponent::Finite(2)).unwrap()),
            vec![CoxeterType::Spherical, CoxeterType::Spherical]
        );
    }

    #[test]
    fn affine_triangle() {
        // affine A2: all exponents 3
        let three = Exponent::Finite(3);
        let one = Exponent::Finite(1);
        let sys = CoxeterSystem::new(
            vec!["a", "b", "c"],
            vec![
                vec![one, three, three],
                vec![three, one, three],
                vec![three, three, one],
            ],
        )
        .unwrap();
        assert_eq!(sys.classify_components()[0].kind, CoxeterType::Affine);
        assert!(sys.is_nuclear_type());
    }
}
