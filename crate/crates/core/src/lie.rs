//! Lie algebras given by rational structure constants, complex structures,
//! and the eigenspace splitting `g_ℂ = g^{1,0} ⊕ g^{0,1}`.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::scalar::{GaussianRational, Rational};

type Scalar = GaussianRational;

/// A bracket `[e_i, e_j] = sum c_k e_k` as `(i, j, [(k, c_k)])`.
pub type Bracket = (usize, usize, Vec<(usize, Rational)>);

/// Largest supported real dimension.
pub const MAX_DIM: usize = 16;

/// A real Lie algebra with basis `e_0..e_{n-1}` and
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    constants: Vec<Rational>,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity. `constants` is the
    /// full table indexed `(i * n + j) * n + k`.
    pub fn new(names: Vec<String>, constants: Vec<Rational>) -> Result<LieAlgebra> {
        let n = names.len();
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge {
                dim: n,
                max: MAX_DIM,
            });
        }
        if constants.len() != n * n * n {
            return Err(Error::MalformedConstants(n * n * n));
        }
        let g = LieAlgebra { names, constants };
        g.verify()?;
        Ok(g)
    }

    /// Builds the table from the brackets `[e_i, e_j]` with `i < j`; the
    /// opposite orientation is filled in by antisymmetry.
    pub fn from_brackets(names: Vec<String>, brackets: &[Bracket]) -> Result<LieAlgebra> {
        let n = names.len();
        let mut c = vec![Rational::ZERO; n * n * n];
        for (i, j, terms) in brackets {
            for (k, v) in terms {
                c[(i * n + j) * n + k] += v;
                c[(j * n + i) * n + k] -= v;
            }
        }
        LieAlgebra::new(names, c)
    }

    /// Abelian algebra on the given names.
    pub fn abelian(names: Vec<String>) -> Result<LieAlgebra> {
        let n = names.len();
        LieAlgebra::new(names, vec![Rational::ZERO; n * n * n])
    }

    /// Re-checks antisymmetry and Jacobi on every basis triple.
    pub fn verify(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if self.c(i, j, k) != &-self.c(j, i, k) {
                        return Err(Error::AntisymmetryViolation(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    // Σ_cyclic [[e_i, e_j], e_k]
                    let cyclic = [(i, j, k), (j, k, i), (k, i, j)];
                    for m in 0..n {
                        let mut s = Rational::ZERO;
                        for &(a, b, c) in &cyclic {
                            for l in 0..n {
                                let x = self.c(a, b, l);
                                if !x.is_zero() {
                                    s += &(x * self.c(l, c, m));
                                }
                            }
                        }
                        if !s.is_zero() {
                            return Err(Error::JacobiViolation(i, j, k));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.dim();
        &self.constants[(i * n + j) * n + k]
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Rational::is_zero)
    }

    /// Bracket of two vectors of g_ℂ in basis coordinates.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::ZERO; n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &xy.scale(c);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; self.dim()];
        v[i] = Scalar::ONE;
        v
    }

    /// `[g, s]` for a subspace `s`.
    pub fn bracket_with(&self, s: &SubspaceBasis) -> SubspaceBasis {
        let n = self.dim();
        let mut vs = Vec::new();
        for i in 0..n {
            let e = self.unit(i);
            for v in s.vectors() {
                vs.push(self.bracket(&e, v));
            }
        }
        SubspaceBasis::from_vectors(n, vs)
    }

    /// g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …, ending at the first repeated term (or 0).
    pub fn lower_central_series(&self) -> Vec<SubspaceBasis> {
        let mut series = vec![SubspaceBasis::full(self.dim())];
        loop {
            let last = series.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self.bracket_with(last);
            if next == *last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    pub fn derived_algebra(&self) -> SubspaceBasis {
        self.bracket_with(&SubspaceBasis::full(self.dim()))
    }

    /// Vectors `z` with `[e_i, z] = 0` for every basis vector.
    pub fn center(&self) -> SubspaceBasis {
        let n = self.dim();
        // rows indexed by (i, k): Σ_j c[i][j][k] z_j = 0
        let m = Matrix::from_fn(n * n, n, |r, j| {
            Scalar::real(self.c(r / n, j, r % n).clone())
        });
        m.kernel_basis()
    }
}

/// A complex structure operator; column `j` of the matrix is `I e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    j: Matrix,
}

impl ComplexStructure {
    pub fn new(j: Matrix) -> Result<ComplexStructure> {
        if !j.is_square() {
            return Err(Error::NotComplexStructure);
        }
        if j.rows() % 2 == 1 {
            return Err(Error::OddDimension(j.rows()));
        }
        if !j.is_real() || j.mul(&j) != Matrix::identity(j.rows()).scale(&Scalar::from_int(-1)) {
            return Err(Error::NotComplexStructure);
        }
        Ok(ComplexStructure { j })
    }

    /// `I e_{2k} = e_{2k+1}`.
    pub fn standard(n: usize) -> Result<ComplexStructure> {
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        let mut j = Matrix::zeros(n, n);
        for k in 0..n / 2 {
            j[(2 * k + 1, 2 * k)] = Scalar::ONE;
            j[(2 * k, 2 * k + 1)] = Scalar::from_int(-1);
        }
        ComplexStructure::new(j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.j.mul_vec(v)
    }
}

/// Eigenspaces of I on g_ℂ, as echelon bases in real-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeSplit {
    pub holo: SubspaceBasis,
    pub antiholo: SubspaceBasis,
}

/// The +i and −i eigenspaces of `j`.
pub fn hodge_split(g: &LieAlgebra, j: &ComplexStructure) -> Result<HodgeSplit> {
    let n = g.dim();
    if j.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: j.dim(),
        });
    }
    let shift = |s: Scalar| j.matrix().sub(&Matrix::identity(n).scale(&s));
    let holo = shift(Scalar::I).kernel_basis();
    let antiholo = shift(-Scalar::I).kernel_basis();
    debug_assert_eq!(holo.dim(), n / 2);
    debug_assert_eq!(antiholo.dim(), n / 2);
    Ok(HodgeSplit { holo, antiholo })
}

/// True iff g^{1,0} is closed under the bracket.
pub fn is_integrable(g: &LieAlgebra, j: &ComplexStructure) -> Result<bool> {
    let split = hodge_split(g, j)?;
    Ok(subalgebra_closed(g, &split.holo))
}

fn subalgebra_closed(g: &LieAlgebra, s: &SubspaceBasis) -> bool {
    let vs = s.vectors();
    vs.iter()
        .enumerate()
        .all(|(a, v)| vs[a + 1..].iter().all(|w| s.contains(&g.bracket(v, w))))
}

/// The central series of g^{0,1} and the annihilators of its terms.
///
/// Both chains are expressed in coordinates relative to the echelon basis
/// of g^{0,1} held by the split (and its dual basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationChain {
    /// W_0 = g^{0,1} ⊋ W_1 = [W_0, W_0] ⊋ … ⊋ 0
    pub w_chain: Vec<SubspaceBasis>,
    /// A_k = Ann(W_k), ascending from 0 to all of (g^{0,1})*
    pub a_chain: Vec<SubspaceBasis>,
}

pub fn antiholo_central_series(split: &HodgeSplit, g: &LieAlgebra) -> Result<FiltrationChain> {
    if !subalgebra_closed(g, &split.holo) {
        return Err(Error::NotIntegrable);
    }
    let basis = split.antiholo.vectors();
    let h = basis.len();
    let n = g.dim();
    let to_real = |coords: &[Scalar]| -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; n];
        for (c, b) in coords.iter().zip(basis) {
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &(c * y);
                }
            }
        }
        v
    };
    let mut w_chain = vec![SubspaceBasis::full(h)];
    loop {
        let last = w_chain.last().unwrap();
        if last.is_zero() {
            break;
        }
        let mut vs = Vec::new();
        for x in basis {
            for w in last.vectors() {
                let br = g.bracket(x, &to_real(w));
                let coords = split
                    .antiholo
                    .coordinates(&br)
                    .ok_or(Error::NotIntegrable)?;
                vs.push(coords);
            }
        }
        let next = SubspaceBasis::from_vectors(h, vs);
        if next == *last {
            return Err(Error::NotNilpotent);
        }
        w_chain.push(next);
    }
    let a_chain = w_chain.iter().map(SubspaceBasis::annihilator).collect();
    Ok(FiltrationChain { w_chain, a_chain })
}

/// A basis of g_ℂ (columns of `basis`, in real-basis coordinates) with the
/// structure constants of g rewritten in it. When `holo_dim` is set, the
/// first `holo_dim` vectors span g^{1,0} and the rest span g^{0,1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    dim: usize,
    holo_dim: Option<usize>,
    basis: Matrix,
    inverse: Matrix,
    constants: Vec<Scalar>,
}

impl Frame {
    /// The real basis of g itself.
    pub fn real(g: &LieAlgebra) -> Frame {
        let n = g.dim();
        Frame {
            dim: n,
            holo_dim: None,
            basis: Matrix::identity(n),
            inverse: Matrix::identity(n),
            constants: g.constants().iter().cloned().map(Scalar::real).collect(),
        }
    }

    /// Frame adapted to the splitting: holo basis then antiholo basis.
    pub fn hodge(g: &LieAlgebra, split: &HodgeSplit) -> Frame {
        Frame::adapted(g, split.holo.vectors(), split.antiholo.vectors())
    }

    /// Frame from explicit bases of g^{1,0} and g^{0,1}.
    pub fn adapted(g: &LieAlgebra, holo: &[Vec<Scalar>], antiholo: &[Vec<Scalar>]) -> Frame {
        let n = g.dim();
        assert_eq!(holo.len() + antiholo.len(), n, "frame must be a basis");
        let cols: Vec<Vec<Scalar>> = holo.iter().chain(antiholo).cloned().collect();
        let basis = Matrix::from_cols(n, &cols);
        let inverse = basis.inverse().expect("frame vectors are independent");
        let mut constants = vec![Scalar::ZERO; n * n * n];
        for a in 0..n {
            for b in a + 1..n {
                let br = inverse.mul_vec(&g.bracket(&cols[a], &cols[b]));
                for (c, v) in br.into_iter().enumerate() {
                    constants[(b * n + a) * n + c] = -&v;
                    constants[(a * n + b) * n + c] = v;
                }
            }
        }
        Frame {
            dim: n,
            holo_dim: Some(holo.len()),
            basis,
            inverse,
            constants,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn holo_dim(&self) -> Option<usize> {
        self.holo_dim
    }

    /// Columns are the frame vectors in real coordinates.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    /// Coefficient of `f_c` in `[f_a, f_b]`.
    pub fn c(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.constants[(a * self.dim + b) * self.dim + c]
    }

    /// Covector given in the real dual basis, rewritten in the dual frame.
    pub fn covector_to_frame(&self, real: &[Scalar]) -> Vec<Scalar> {
        self.basis.transpose().mul_vec(real)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gi;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    fn one(k: usize) -> Vec<(usize, Rational)> {
        vec![(k, Rational::ONE)]
    }

    fn h3_x_r() -> LieAlgebra {
        let names = ["X", "Y", "Z", "T"].map(String::from).to_vec();
        LieAlgebra::from_brackets(names, &[(0, 1, one(2))]).unwrap()
    }

    fn heisenberg_j() -> ComplexStructure {
        // IX = Y, IY = -X, IZ = -T, IT = Z
        let mut j = Matrix::zeros(4, 4);
        j[(1, 0)] = gi(1, 0);
        j[(0, 1)] = gi(-1, 0);
        j[(3, 2)] = gi(-1, 0);
        j[(2, 3)] = gi(1, 0);
        ComplexStructure::new(j).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(LieAlgebra::abelian(names(4)).is_ok());
        let bad = LieAlgebra::from_brackets(names(3), &[(0, 1, one(2)), (0, 2, one(0))]);
        assert_eq!(bad, Err(Error::JacobiViolation(0, 1, 2)));
        let mut c = vec![Rational::ZERO; 8];
        c[1] = Rational::ONE; // [e0, e0] = e1
        assert_eq!(
            LieAlgebra::new(names(2), c),
            Err(Error::AntisymmetryViolation(0, 0, 1))
        );
        assert!(matches!(
            LieAlgebra::abelian(names(17)),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn central_series_examples() {
        let ab = LieAlgebra::abelian(names(3)).unwrap();
        let s = ab.lower_central_series();
        assert_eq!(s.len(), 2);
        assert!(s[1].is_zero());
        let h = h3_x_r();
        let s = h.lower_central_series();
        assert_eq!(
            s.iter().map(SubspaceBasis::dim).collect::<Vec<_>>(),
            vec![4, 1, 0]
        );
        assert!(s[1].contains(&[gi(0, 0), gi(0, 0), gi(1, 0), gi(0, 0)]));
        assert!(h.is_nilpotent());
        // [e1, e2] = e2 is solvable, not nilpotent
        let aff = LieAlgebra::from_brackets(names(2), &[(0, 1, one(1))]).unwrap();
        assert!(!aff.is_nilpotent());
    }

    #[test]
    fn center_of_heisenberg() {
        let z = h3_x_r().center();
        assert_eq!(z.dim(), 2);
        assert!(z.contains(&[gi(0, 0), gi(0, 0), gi(1, 0), gi(3, 0)]));
    }

    #[test]
    fn hodge_split_examples() {
        let r2 = LieAlgebra::abelian(names(2)).unwrap();
        let j = ComplexStructure::standard(2).unwrap();
        let s = hodge_split(&r2, &j).unwrap();
        assert_eq!(s.holo.vectors(), &[vec![gi(1, 0), gi(0, -1)]]);
        assert_eq!(s.holo.conjugate(), s.antiholo);

        let s = hodge_split(&h3_x_r(), &heisenberg_j()).unwrap();
        assert_eq!(
            s.holo.vectors(),
            &[
                vec![gi(1, 0), gi(0, -1), gi(0, 0), gi(0, 0)],
                vec![gi(0, 0), gi(0, 0), gi(1, 0), gi(0, 1)]
            ]
        );
        let r4 = LieAlgebra::abelian(names(4)).unwrap();
        let s = hodge_split(&r4, &ComplexStructure::standard(4).unwrap()).unwrap();
        assert_eq!(s.holo.dim(), 2);
    }

    #[test]
    fn integrability_examples() {
        let r4 = LieAlgebra::abelian(names(4)).unwrap();
        assert!(is_integrable(&r4, &ComplexStructure::standard(4).unwrap()).unwrap());
        assert!(is_integrable(&h3_x_r(), &heisenberg_j()).unwrap());
        // I'X = Z, I'Y = T: [X - iZ, Y - iT] = Z is not in span(X - iZ, Y - iT)
        let mut j = Matrix::zeros(4, 4);
        j[(2, 0)] = gi(1, 0);
        j[(0, 2)] = gi(-1, 0);
        j[(3, 1)] = gi(1, 0);
        j[(1, 3)] = gi(-1, 0);
        let swapped = ComplexStructure::new(j).unwrap();
        assert!(!is_integrable(&h3_x_r(), &swapped).unwrap());
    }

    #[test]
    fn rejects_bad_operators() {
        assert_eq!(ComplexStructure::standard(3), Err(Error::OddDimension(3)));
        assert_eq!(
            ComplexStructure::new(Matrix::identity(2)),
            Err(Error::NotComplexStructure)
        );
    }

    #[test]
    fn heisenberg_antiholo_series_is_abelian() {
        let s = hodge_split(&h3_x_r(), &heisenberg_j()).unwrap();
        let chain = antiholo_central_series(&s, &h3_x_r()).unwrap();
        assert_eq!(
            chain
                .w_chain
                .iter()
                .map(SubspaceBasis::dim)
                .collect::<Vec<_>>(),
            vec![2, 0]
        );
        assert_eq!(
            chain
                .a_chain
                .iter()
                .map(SubspaceBasis::dim)
                .collect::<Vec<_>>(),
            vec![0, 2]
        );
    }

    #[test]
    fn frame_constants_reproduce_brackets() {
        let g = h3_x_r();
        let s = hodge_split(&g, &heisenberg_j()).unwrap();
        let f = Frame::hodge(&g, &s);
        let cols: Vec<Vec<Scalar>> = (0..4).map(|k| f.basis().col(k)).collect();
        for a in 0..4 {
            for b in 0..4 {
                let direct = g.bracket(&cols[a], &cols[b]);
                let mut via = vec![Scalar::ZERO; 4];
                for (c, col) in cols.iter().enumerate() {
                    for (v, x) in via.iter_mut().zip(col) {
                        *v += &(f.c(a, b, c) * x);
                    }
                }
                assert_eq!(direct, via);
            }
        }
    }
}
