use crate::scalar::GaussianRational;

use super::Matrix;

type Scalar = GaussianRational;

/// A linear subspace of ℚ(i)^n, stored as the nonzero rows of its reduced
/// row-echelon form. Two subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> SubspaceBasis {
        for v in &vectors {
            assert_eq!(v.len(), ambient_dim, "vector length");
        }
        let rref = Matrix::from_rows(ambient_dim, vectors).rref();
        SubspaceBasis {
            ambient_dim,
            vectors: rref.matrix.to_rows(),
            pivots: rref.pivots,
        }
    }

    pub fn zero(ambient_dim: usize) -> SubspaceBasis {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> SubspaceBasis {
        SubspaceBasis::from_vectors(ambient_dim, Matrix::identity(ambient_dim).to_rows())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient_dim, self.vectors.clone())
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    /// In RREF the coordinates are just the pivot entries of `v`.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim);
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r -= &(c * x);
                }
            }
        }
        residual.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        SubspaceBasis::from_vectors(self.ambient_dim, all)
    }

    /// Entrywise conjugate of every basis vector, re-echelonized.
    pub fn conjugate(&self) -> SubspaceBasis {
        SubspaceBasis::from_vectors(
            self.ambient_dim,
            self.vectors
                .iter()
                .map(|v| v.iter().map(Scalar::conj).collect())
                .collect(),
        )
    }

    /// Covectors vanishing on the subspace, as the null space of the
    /// evaluation matrix.
    pub fn annihilator(&self) -> SubspaceBasis {
        if self.vectors.is_empty() {
            return SubspaceBasis::full(self.ambient_dim);
        }
        self.to_matrix().kernel_basis()
    }

    /// Covectors vanishing on the subspace, built directly from the
    /// echelon form: one covector per non-pivot column.
    pub fn annihilator_by_complement(&self) -> SubspaceBasis {
        let vectors = (0..self.ambient_dim)
            .filter(|c| !self.pivots.contains(c))
            .map(|j| {
                let mut l = vec![Scalar::ZERO; self.ambient_dim];
                l[j] = Scalar::ONE;
                for (row, &p) in self.vectors.iter().zip(&self.pivots) {
                    l[p] = -&row[j];
                }
                l
            })
            .collect();
        SubspaceBasis::from_vectors(self.ambient_dim, vectors)
    }

    /// Extends this basis by vectors of `larger` to a basis of `larger`,
    /// returning only the added vectors.
    pub fn complement_in(&self, larger: &SubspaceBasis) -> Vec<Vec<Scalar>> {
        let mut current = self.clone();
        let mut added = Vec::new();
        for v in &larger.vectors {
            if !current.contains(v) {
                added.push(v.clone());
                let mut all = current.vectors.clone();
                all.push(v.clone());
                current = SubspaceBasis::from_vectors(self.ambient_dim, all);
            }
        }
        added
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gi;

    #[test]
    fn echelon_form_is_canonical() {
        let a = SubspaceBasis::from_vectors(
            3,
            vec![
                vec![gi(1, 0), gi(1, 0), gi(0, 0)],
                vec![gi(0, 0), gi(1, 0), gi(1, 0)],
            ],
        );
        let b = SubspaceBasis::from_vectors(
            3,
            vec![
                vec![gi(1, 0), gi(2, 0), gi(1, 0)],
                vec![gi(2, 0), gi(2, 0), gi(0, 0)],
            ],
        );
        assert_eq!(a, b);
    }

    #[test]
    fn annihilator_routes_agree() {
        let w = SubspaceBasis::from_vectors(4, vec![vec![gi(1, 1), gi(0, 0), gi(2, 0), gi(0, -1)]]);
        let a = w.annihilator();
        assert_eq!(a.dim(), 3);
        assert_eq!(a, w.annihilator_by_complement());
        for l in a.vectors() {
            let s: GaussianRational = l.iter().zip(&w.vectors()[0]).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
        assert_eq!(SubspaceBasis::zero(3).annihilator(), SubspaceBasis::full(3));
    }

    #[test]
    fn complement_extends_to_larger() {
        let small = SubspaceBasis::from_vectors(3, vec![vec![gi(0, 0), gi(1, 0), gi(1, 0)]]);
        let full = SubspaceBasis::full(3);
        let added = small.complement_in(&full);
        assert_eq!(added.len(), 2);
        let mut all = small.vectors().to_vec();
        all.extend(added);
        assert_eq!(SubspaceBasis::from_vectors(3, all), full);
    }
}
