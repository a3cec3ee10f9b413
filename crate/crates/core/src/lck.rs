//! Hermitian metrics, locally conformally Kähler checks, and the
//! Heisenberg×ℝ structure detector.

use crate::cohomology::closed_real_11_forms;
use crate::differentials::{chevalley_d, dc_operator_upto, hodge_frame, twisted_d_upto};
use crate::error::{Error, Result};
use crate::exterior::{apply_i, basis, BasisMode, ExtForm};
use crate::lie::{is_integrable, ComplexStructure, LieAlgebra};
use crate::linalg::{symmetric_inertia, Inertia, Matrix, SubspaceBasis};
use crate::scalar::{GaussianRational, Rational};

type Scalar = GaussianRational;

const R: BasisMode = BasisMode::RealDual;

/// A positive definite inner product on g, given by its Gram matrix in
/// the real basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMetric {
    gram: Matrix,
}

impl HermitianMetric {
    pub fn new(gram: Matrix) -> Result<HermitianMetric> {
        if !gram.is_square() || !gram.is_real() || gram != gram.transpose() {
            return Err(Error::MetricNotSymmetric);
        }
        if symmetric_inertia(&gram)?.positive != gram.rows() {
            return Err(Error::MetricNotPositive);
        }
        Ok(HermitianMetric { gram })
    }

    pub fn identity(n: usize) -> HermitianMetric {
        HermitianMetric {
            gram: Matrix::identity(n),
        }
    }

    pub fn diag(entries: &[Rational]) -> Result<HermitianMetric> {
        let d: Vec<Scalar> = entries.iter().cloned().map(Scalar::real).collect();
        HermitianMetric::new(Matrix::diag(&d))
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// `h(x, y)` for real-basis coordinate vectors.
    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        x.iter()
            .zip(self.gram.mul_vec(y))
            .map(|(a, b)| a * &b)
            .sum()
    }

    /// `h(Ix, Iy) = h(x, y)`.
    pub fn is_compatible(&self, j: &ComplexStructure) -> bool {
        let m = j.matrix();
        m.transpose().mul(&self.gram).mul(m) == self.gram
    }

    /// The vector `v` with `h(v, ·) = λ` for a real 1-form `λ`.
    pub fn sharp(&self, lambda: &ExtForm) -> Vec<Scalar> {
        let inv = self.gram.inverse().expect("positive definite");
        inv.mul_vec(&lambda.to_dense())
    }

    /// `|λ|² = λ(λ^♯)`.
    pub fn norm_sqr(&self, lambda: &ExtForm) -> Rational {
        let v = self.sharp(lambda);
        let s: Scalar = lambda.to_dense().iter().zip(&v).map(|(a, b)| a * b).sum();
        s.re
    }
}

fn e(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::ZERO; n];
    v[i] = Scalar::ONE;
    v
}

/// Real 2-form with `ω(e_a, e_b) = w[a][b]` for antisymmetric `w`.
fn two_form_from_matrix(w: &Matrix) -> ExtForm {
    let n = w.rows();
    ExtForm::from_terms(
        n,
        2,
        R,
        basis(n, 2).into_iter().map(|m| {
            let ix: Vec<usize> = m.indices().collect();
            (m, w[(ix[0], ix[1])].clone())
        }),
    )
}

/// Antisymmetric matrix `ω(e_a, e_b)` of a real 2-form.
pub fn two_form_matrix(omega: &ExtForm) -> Matrix {
    let n = omega.dim();
    let mut w = Matrix::zeros(n, n);
    for (m, c) in omega.terms() {
        let ix: Vec<usize> = m.indices().collect();
        w[(ix[0], ix[1])] = c.clone();
        w[(ix[1], ix[0])] = -c;
    }
    w
}

/// `ω(x, y) = h(Ix, y)`.
pub fn fundamental_form(j: &ComplexStructure, h: &HermitianMetric) -> Result<ExtForm> {
    if j.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: j.dim(),
            found: h.dim(),
        });
    }
    if !h.is_compatible(j) {
        return Err(Error::IncompatibleMetric);
    }
    // ω(e_a, e_b) = Σ_k J[k][a] h[k][b]
    Ok(two_form_from_matrix(&j.matrix().transpose().mul(h.gram())))
}

/// Solves `dω = θ∧ω` together with `dθ = 0`.
pub fn extract_lee(g: &LieAlgebra, omega: &ExtForm) -> Result<ExtForm> {
    let n = g.dim();
    if omega.degree() != 2 || omega.dim() != n {
        return Err(Error::WrongDegree {
            expected: 2,
            found: omega.degree(),
        });
    }
    if two_form_matrix(omega).determinant().is_zero() {
        return Err(Error::Degenerate);
    }
    let d = chevalley_d(g);
    let d_omega = d.apply(omega)?;
    // columns: e^i ∧ ω and d e^i
    let wedge_cols: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            ExtForm::monomial(n, R, &[i])
                .wedge(omega)
                .map(|f| f.to_dense())
        })
        .collect::<Result<_>>()?;
    let system = Matrix::from_cols(wedge_cols[0].len(), &wedge_cols).vstack(d.block(1));
    let mut rhs = d_omega.to_dense();
    rhs.extend(vec![Scalar::ZERO; d.block(1).rows()]);
    let theta = system.solve(&rhs).ok_or(Error::NoSolution(
        "d(omega) is not theta ^ omega for a closed theta",
    ))?;
    Ok(ExtForm::covector(n, R, &theta))
}

/// Levi-Civita connection of a left-invariant metric: `∇_{e_a} e_b = Σ_c Γ[a][b][c] e_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    dim: usize,
    gamma: Vec<Rational>,
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.gamma[(a * self.dim + b) * self.dim + c]
    }

    /// `∇_x y` for coordinate vectors.
    pub fn nabla(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::ZERO; n];
        for a in (0..n).filter(|&a| !x[a].is_zero()) {
            for b in (0..n).filter(|&b| !y[b].is_zero()) {
                let xy = &x[a] * &y[b];
                for (c, o) in out.iter_mut().enumerate() {
                    let gm = self.gamma(a, b, c);
                    if !gm.is_zero() {
                        *o += &xy.scale(gm);
                    }
                }
            }
        }
        out
    }
}

/// Koszul formula `2h(∇_x y, z) = h([x,y],z) − h([y,z],x) + h([z,x],y)`.
pub fn levi_civita(g: &LieAlgebra, h: &HermitianMetric) -> Connection {
    let n = g.dim();
    let inv = h.gram().inverse().expect("positive definite");
    let half = Scalar::real(Rational::new(1, 2));
    let br: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|a| (0..n).map(|b| g.bracket(&e(n, a), &e(n, b))).collect())
        .collect();
    let mut gamma = vec![Rational::ZERO; n * n * n];
    for a in 0..n {
        for b in 0..n {
            let k: Vec<Scalar> = (0..n)
                .map(|z| {
                    let s = h.inner(&br[a][b], &e(n, z)) - h.inner(&br[b][z], &e(n, a))
                        + h.inner(&br[z][a], &e(n, b));
                    &s * &half
                })
                .collect();
            // Γ_ab = H⁻¹ k
            for (c, v) in inv.mul_vec(&k).into_iter().enumerate() {
                gamma[(a * n + b) * n + c] = v.re;
            }
        }
    }
    Connection { dim: n, gamma }
}

/// `∇θ^♯ = 0`.
pub fn is_vaisman(g: &LieAlgebra, h: &HermitianMetric, theta: &ExtForm) -> bool {
    let lc = levi_civita(g, h);
    let v = h.sharp(theta);
    (0..g.dim()).all(|a| lc.nabla(&e(g.dim(), a), &v).iter().all(Scalar::is_zero))
}

/// The constant `c` with `ω = c · d_θ d^c_θ(1)`.
pub fn potential_constant(
    g: &LieAlgebra,
    j: &ComplexStructure,
    theta: &ExtForm,
    omega: &ExtForm,
) -> Result<Rational> {
    if theta.is_zero() {
        return Err(Error::ThetaZero);
    }
    let one = ExtForm::constant(g.dim(), R, Scalar::ONE);
    let dct = dc_operator_upto(g, j, Some(theta), 0)?;
    let w = twisted_d_upto(g, theta, 1)?.apply(&dct.apply(&one)?)?;
    proportionality(omega, &w).ok_or(Error::NoSolution(
        "omega is not a multiple of d_theta d^c_theta(1)",
    ))
}

/// The rational `c` with `a = c · b`, if any; `b` must be nonzero unless `a` is.
pub(crate) fn proportionality(a: &ExtForm, b: &ExtForm) -> Option<Rational> {
    if a.is_zero() {
        return Some(Rational::ZERO);
    }
    let (m, bm) = b.terms().iter().next()?;
    let c = &a.coefficient(*m) * &bm.recip();
    (c.is_real() && b.scale(&c) == *a).then_some(c.re)
}

/// `ω₀ = −d(Iθ)`.
pub fn omega0(g: &LieAlgebra, j: &ComplexStructure, theta: &ExtForm) -> Result<ExtForm> {
    Ok(chevalley_d(g).apply(&apply_i(theta, j))?.neg())
}

/// Inertia of the Hermitian form `−i ω₀(Z_a, Z̄_b)` on g^{1,0}, which is
/// `η(x, y) = ω₀(x, Iy)` seen as a complex form.
pub fn omega0_inertia(g: &LieAlgebra, j: &ComplexStructure, theta: &ExtForm) -> Result<Inertia> {
    if !chevalley_d(g).apply(theta)?.is_zero() {
        return Err(Error::ThetaNotClosed);
    }
    let w0 = omega0(g, j, theta)?;
    let frame = hodge_frame(g, j)?;
    let hd = frame.holo_dim().expect("hodge frame");
    let cols: Vec<Vec<Scalar>> = (0..g.dim()).map(|k| frame.basis().col(k)).collect();
    let m = Matrix::from_fn(hd, hd, |a, b| {
        let v = w0.evaluate(&[cols[a].clone(), cols[hd + b].clone()]);
        &v * &Scalar::new(Rational::ZERO, Rational::from_integer(-1))
    });
    symmetric_inertia(&m)
}

/// Real symmetric form `η(e_a, e_b) = ω₀(e_a, I e_b)`.
pub fn omega0_real_form(g: &LieAlgebra, j: &ComplexStructure, theta: &ExtForm) -> Result<Matrix> {
    let w0 = omega0(g, j, theta)?;
    let n = g.dim();
    Ok(Matrix::from_fn(n, n, |a, b| {
        w0.evaluate(&[e(n, a), j.apply(&e(n, b))])
    }))
}

/// Quotient `g/s` by an ideal, on the standard basis vectors completing
/// `s`. Returns `None` when `s` is not an ideal.
pub fn quotient(g: &LieAlgebra, s: &SubspaceBasis) -> Option<LieAlgebra> {
    let n = g.dim();
    if !s.contains_subspace(&g.bracket_with(s)) {
        return None;
    }
    let comp = s.complement_in(&SubspaceBasis::full(n));
    let idx: Vec<usize> = comp
        .iter()
        .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero"))
        .collect();
    let all: Vec<Vec<Scalar>> = s.vectors().iter().chain(&comp).cloned().collect();
    let inv = Matrix::from_cols(n, &all).inverse().expect("basis");
    let m = comp.len();
    let off = s.dim();
    let mut brackets = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let coords = inv.mul_vec(&g.bracket(&comp[a], &comp[b]));
            let terms: Vec<(usize, Rational)> = (0..m)
                .filter(|&c| !coords[off + c].is_zero())
                .map(|c| (c, coords[off + c].re.clone()))
                .collect();
            if !terms.is_empty() {
                brackets.push((a, b, terms));
            }
        }
    }
    let names = idx.iter().map(|&i| g.names()[i].clone()).collect();
    Some(LieAlgebra::from_brackets(names, &brackets).expect("quotient of a Lie algebra"))
}

/// Whether `span(θ^♯, Iθ^♯)` is an ideal, with the quotient when it is.
pub fn lee_ideal_check(
    g: &LieAlgebra,
    j: &ComplexStructure,
    h: &HermitianMetric,
    theta: &ExtForm,
) -> (bool, Option<LieAlgebra>) {
    let v = h.sharp(theta);
    let s = SubspaceBasis::from_vectors(g.dim(), vec![v.clone(), j.apply(&v)]);
    let q = quotient(g, &s);
    (q.is_some(), q)
}

/// h_{2n−1}×ℝ up to isomorphism: one-dimensional derived algebra inside a
/// two-dimensional center, with a nondegenerate bracket form on g/center.
pub fn is_heisenberg_x_line(g: &LieAlgebra) -> bool {
    let derived = g.derived_algebra();
    let center = g.center();
    if derived.dim() != 1 || center.dim() != 2 || !center.contains_subspace(&derived) {
        return false;
    }
    let comp = center.complement_in(&SubspaceBasis::full(g.dim()));
    let b = Matrix::from_fn(comp.len(), comp.len(), |a, c| {
        derived
            .coordinates(&g.bracket(&comp[a], &comp[c]))
            .expect("in derived algebra")[0]
            .clone()
    });
    !b.determinant().is_zero()
}

/// Outcome of the classification pipeline. Flags stay false when the
/// pipeline stops before reaching them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LckCertificate {
    pub omega: ExtForm,
    pub lee: Option<ExtForm>,
    pub is_lck: bool,
    pub is_kahler: bool,
    pub lee_closed: bool,
    pub lee_unit_norm: bool,
    pub is_vaisman: bool,
    pub dc_theta_identity: bool,
    pub potential_constant: Option<Rational>,
    pub omega0_inertia: Option<Inertia>,
    pub lee_ideal_ok: bool,
    pub quotient_abelian: bool,
    pub is_heisenberg_x_line: bool,
}

impl LckCertificate {
    /// Every check passed on a strictly LCK (non-Kähler) input.
    pub fn is_green(&self) -> bool {
        self.is_lck
            && !self.is_kahler
            && self.lee_closed
            && self.is_vaisman
            && self
                .potential_constant
                .as_ref()
                .is_some_and(Rational::is_positive)
            && self.lee_ideal_ok
            && self.quotient_abelian
            && self.is_heisenberg_x_line
    }
}

pub fn classify_lck(
    g: &LieAlgebra,
    j: &ComplexStructure,
    h: &HermitianMetric,
) -> Result<LckCertificate> {
    if !g.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    if !is_integrable(g, j)? {
        return Err(Error::NotIntegrable);
    }
    let omega = fundamental_form(j, h)?;
    let mut cert = LckCertificate {
        omega: omega.clone(),
        lee: None,
        is_lck: false,
        is_kahler: false,
        lee_closed: false,
        lee_unit_norm: false,
        is_vaisman: false,
        dc_theta_identity: false,
        potential_constant: None,
        omega0_inertia: None,
        lee_ideal_ok: false,
        quotient_abelian: false,
        is_heisenberg_x_line: is_heisenberg_x_line(g),
    };
    let theta = match extract_lee(g, &omega) {
        Ok(t) => t,
        Err(Error::NoSolution(_)) => return Ok(cert),
        Err(e) => return Err(e),
    };
    let d = chevalley_d(g);
    cert.lee_closed = d.apply(&theta)?.is_zero();
    cert.is_lck = d.apply(&omega)? == theta.wedge(&omega)? && cert.lee_closed;
    cert.lee = Some(theta.clone());
    if theta.is_zero() {
        cert.is_kahler = true;
        return Ok(cert);
    }
    cert.lee_unit_norm = h.norm_sqr(&theta).is_one();
    cert.is_vaisman = is_vaisman(g, h, &theta);
    let tc = apply_i(&theta, j);
    cert.dc_theta_identity = d.apply(&tc)? == theta.wedge(&tc)?.sub(&omega)?;
    cert.potential_constant = match potential_constant(g, j, &theta, &omega) {
        Ok(c) => Some(c),
        Err(Error::NoSolution(_)) => None,
        Err(e) => return Err(e),
    };
    cert.omega0_inertia = Some(omega0_inertia(g, j, &theta)?);
    let (ok, q) = lee_ideal_check(g, j, h, &theta);
    cert.lee_ideal_ok = ok;
    cert.quotient_abelian = q.is_some_and(|q| q.is_abelian());
    Ok(cert)
}

/// A nondegenerate element of the span of 2-forms on a 4-dimensional
/// algebra, found by polarizing `σ ↦ σ∧σ` over a basis.
pub fn nondegenerate_element(forms: &[ExtForm]) -> Option<ExtForm> {
    for (a, s) in forms.iter().enumerate() {
        if !s.wedge(s).ok()?.is_zero() {
            return Some(s.clone());
        }
        for t in &forms[a + 1..] {
            // σ∧σ = 0 and τ∧τ = 0, so (σ+τ)² = 2σ∧τ
            if !s.wedge(t).ok()?.is_zero() {
                return s.add(t).ok();
            }
        }
    }
    None
}

/// A nonzero `z ∈ [g, g]` with `σ(z, Iz) = 0` for every closed real
/// (1,1)-form `σ`. Its existence rules out a Kähler metric, since a Kähler
/// form would have `σ(z, Iz) = h(Iz, Iz) > 0`.
pub fn kahler_obstruction(g: &LieAlgebra, j: &ComplexStructure) -> Option<Vec<Scalar>> {
    let sigmas = closed_real_11_forms(g, j, None).ok()?;
    g.derived_algebra()
        .vectors()
        .iter()
        .find(|z| {
            sigmas
                .iter()
                .all(|s| s.evaluate(&[z.to_vec(), j.apply(z)]).is_zero())
        })
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::q;

    fn form(g: &LieAlgebra, text: &str) -> ExtForm {
        ExtForm::parse(text, g.names(), R).unwrap()
    }

    fn parts(c: &catalog::CatalogEntry) -> (&LieAlgebra, &ComplexStructure, &HermitianMetric) {
        (
            &c.algebra,
            c.complex_structure.as_ref().unwrap(),
            c.metric.as_ref().unwrap(),
        )
    }

    #[test]
    fn fundamental_form_examples() {
        let c = catalog::heisenberg_x_line(1).unwrap();
        let (g, j, h) = parts(&c);
        assert_eq!(fundamental_form(j, h).unwrap(), form(g, "1 X^Y -1 Z^T"));
        let a = catalog::abelian(2).unwrap();
        let (ga, ja, ha) = parts(&a);
        assert_eq!(fundamental_form(ja, ha).unwrap(), form(ga, "1 e1^e2"));
        let h2 = HermitianMetric::diag(&vec![q(2, 1); 4]).unwrap();
        assert_eq!(fundamental_form(j, &h2).unwrap(), form(g, "2 X^Y -2 Z^T"));
        let bad = HermitianMetric::diag(&[q(1, 1), q(2, 1), q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(
            fundamental_form(j, &bad).unwrap_err(),
            Error::IncompatibleMetric
        );
    }

    #[test]
    fn metric_validation() {
        assert_eq!(
            HermitianMetric::new(Matrix::from_ints(&[&[1, 2], &[0, 1]])).unwrap_err(),
            Error::MetricNotSymmetric
        );
        assert_eq!(
            HermitianMetric::new(Matrix::from_ints(&[&[1, 2], &[2, 1]])).unwrap_err(),
            Error::MetricNotPositive
        );
    }

    #[test]
    fn lee_form_extraction() {
        let c = catalog::heisenberg_x_line(1).unwrap();
        let g = &c.algebra;
        assert_eq!(extract_lee(g, &c.omega().unwrap()).unwrap(), form(g, "1 T"));
        let a = catalog::abelian(4).unwrap();
        assert!(extract_lee(&a.algebra, &a.omega().unwrap())
            .unwrap()
            .is_zero());
        // on Iwasawa dω has an e1^e3^e6 term that no θ∧ω can produce
        let iw = catalog::iwasawa().algebra;
        let w = form(&iw, "1 e1^e2 1 e3^e4 1 e5^e6");
        assert!(matches!(extract_lee(&iw, &w), Err(Error::NoSolution(_))));
        assert_eq!(
            extract_lee(g, &form(g, "1 X^Y")).unwrap_err(),
            Error::Degenerate
        );
    }

    #[test]
    fn levi_civita_examples() {
        let c = catalog::heisenberg_x_line(1).unwrap();
        let (g, _, h) = parts(&c);
        let lc = levi_civita(g, h);
        let n = 4;
        for a in 0..n {
            assert!(lc.nabla(&e(n, a), &e(n, 3)).iter().all(Scalar::is_zero));
        }
        let half = Scalar::real(q(1, 2));
        assert_eq!(
            lc.nabla(&e(n, 0), &e(n, 1)),
            vec![Scalar::ZERO, Scalar::ZERO, half, Scalar::ZERO]
        );
        let a = catalog::abelian(4).unwrap();
        let la = levi_civita(&a.algebra, a.metric.as_ref().unwrap());
        assert!((0..64).all(|i| la.gamma(i / 16, (i / 4) % 4, i % 4).is_zero()));
    }

    #[test]
    fn torsion_free_and_metric_on_random_metric() {
        let g = catalog::iwasawa().algebra;
        let n = 6;
        let gram = Matrix::from_fn(n, n, |a, b| {
            if a == b {
                Scalar::from_int(3 + a as i64)
            } else {
                Scalar::real(q(1, (2 + a + b) as i64))
            }
        });
        let h = HermitianMetric::new(gram).unwrap();
        let lc = levi_civita(&g, &h);
        for a in 0..n {
            for b in 0..n {
                let t: Vec<Scalar> = lc
                    .nabla(&e(n, a), &e(n, b))
                    .iter()
                    .zip(lc.nabla(&e(n, b), &e(n, a)))
                    .map(|(x, y)| x - &y)
                    .collect();
                assert_eq!(t, g.bracket(&e(n, a), &e(n, b)));
                for c in 0..n {
                    let s = h.inner(&lc.nabla(&e(n, a), &e(n, b)), &e(n, c))
                        + h.inner(&e(n, b), &lc.nabla(&e(n, a), &e(n, c)));
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn heisenberg_pipeline() {
        for n in 1..=3 {
            let c = catalog::heisenberg_x_line(n).unwrap();
            let (g, j, h) = parts(&c);
            let cert = classify_lck(g, j, h).unwrap();
            assert!(cert.is_green(), "{cert:?}");
            assert_eq!(cert.lee, c.theta);
            assert_eq!(cert.potential_constant, Some(Rational::ONE));
            assert_eq!(cert.omega0_inertia, Some(Inertia::new(n, 1, 0)));
            assert!(cert.dc_theta_identity && cert.lee_unit_norm);
        }
    }

    #[test]
    fn omega0_is_semi_positive_and_real_form_agrees() {
        for n in 1..=3 {
            let c = catalog::heisenberg_x_line(n).unwrap();
            let (g, j, _) = parts(&c);
            let theta = c.theta.clone().unwrap();
            let w0 = omega0(g, j, &theta).unwrap();
            // ω₀ = Σ X_i*∧Y_i*
            let expected = (0..n).fold(ExtForm::zero(g.dim(), 2, R), |acc, i| {
                acc.add(&ExtForm::monomial(g.dim(), R, &[2 * i, 2 * i + 1]))
                    .unwrap()
            });
            assert_eq!(w0, expected);
            let real = symmetric_inertia(&omega0_real_form(g, j, &theta).unwrap()).unwrap();
            let cx = omega0_inertia(g, j, &theta).unwrap();
            assert_eq!(
                real,
                Inertia::new(2 * cx.positive, 2 * cx.zero, 2 * cx.negative)
            );
        }
        let a = catalog::abelian(4).unwrap();
        let (g, j, _) = parts(&a);
        assert_eq!(
            omega0_inertia(g, j, &form(g, "1 e1")).unwrap(),
            Inertia::new(0, 2, 0)
        );
    }

    #[test]
    fn potential_scales_linearly() {
        let c = catalog::heisenberg_x_line(1).unwrap();
        let (g, j, _) = parts(&c);
        let theta = c.theta.clone().unwrap();
        let w5 = c.omega().unwrap().scale(&Scalar::from_int(5));
        assert_eq!(potential_constant(g, j, &theta, &w5).unwrap(), q(5, 1));
        assert_eq!(
            potential_constant(g, j, &ExtForm::zero(4, 1, R), &w5).unwrap_err(),
            Error::ThetaZero
        );
    }

    #[test]
    fn lee_ideal_and_quotient() {
        let c = catalog::heisenberg_x_line(2).unwrap();
        let (g, j, h) = parts(&c);
        let (ok, q) = lee_ideal_check(g, j, h, c.theta.as_ref().unwrap());
        assert!(ok);
        let q = q.unwrap();
        assert_eq!(q.dim(), 4);
        assert!(q.is_abelian());
    }

    #[test]
    fn heisenberg_detector() {
        assert!(is_heisenberg_x_line(
            &catalog::heisenberg_x_line(1).unwrap().algebra
        ));
        assert!(is_heisenberg_x_line(
            &catalog::heisenberg_x_line(2).unwrap().algebra
        ));
        assert!(!is_heisenberg_x_line(&catalog::abelian(4).unwrap().algebra));
        assert!(!is_heisenberg_x_line(&catalog::iwasawa().algebra));
        // h3 ⊕ h3 has a two-dimensional derived algebra
        let names: Vec<String> = (1..=6).map(|i| format!("e{i}")).collect();
        let one = |k| vec![(k, Rational::ONE)];
        let hh = LieAlgebra::from_brackets(names, &[(0, 1, one(2)), (3, 4, one(5))]).unwrap();
        assert!(!is_heisenberg_x_line(&hh));
    }

    #[test]
    fn abelian_is_kahler_branch() {
        let a = catalog::abelian(4).unwrap();
        let (g, j, h) = parts(&a);
        let cert = classify_lck(g, j, h).unwrap();
        assert!(cert.is_lck && cert.is_kahler && !cert.is_green());
    }

    #[test]
    fn iwasawa_is_not_green() {
        let c = catalog::iwasawa();
        let g = &c.algebra;
        let j = c.complex_structure.as_ref().unwrap();
        let cert = classify_lck(g, j, &HermitianMetric::identity(6)).unwrap();
        assert!(!cert.is_green());
    }

    #[test]
    fn closed_11_forms_on_h3_x_r() {
        let c = catalog::heisenberg_x_line(1).unwrap();
        let (g, j, _) = parts(&c);
        let sigmas = closed_real_11_forms(g, j, None).unwrap();
        assert_eq!(sigmas.len(), 3);
        // X^Z − Y^T is closed, of type (1,1) and nondegenerate
        let witness = nondegenerate_element(&sigmas).unwrap();
        assert!(!witness.wedge(&witness).unwrap().is_zero());
        let s = form(g, "1 X^Z -1 Y^T");
        assert!(!s.wedge(&s).unwrap().is_zero());
        // but none of them is positive: σ(Z, IZ) = 0 on the whole space
        let z = kahler_obstruction(g, j).unwrap();
        assert_eq!(z, e(4, 2));
    }

    #[test]
    fn abelian_has_no_kahler_obstruction() {
        let a = catalog::abelian(4).unwrap();
        let (g, j, _) = parts(&a);
        assert!(kahler_obstruction(g, j).is_none());
    }
}
