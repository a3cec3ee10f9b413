//! Cochain complexes and the cohomologies built from the differentials:
//! Betti numbers, twisted (Morse–Novikov) cohomology, twisted Dolbeault
//! cohomology of Λ^{p,*}, the filtration spectral sequence up to E₁,
//! twisted Bott–Chern H^{1,1} and the Hodge-chasing solver.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;

use crate::differentials::{
    chevalley_d, dc_operator_upto, frame_d_upto, frame_twisted_d, hodge_components, twisted_d,
    twisted_d_upto, wedge_block, DifferentialOperator,
};
use crate::error::{Error, Result};
use crate::exterior::{
    apply_i, basis, bidegree_basis, colex_rank, BasisMode, Bidegree, ExtForm, MultiIndex,
};
use crate::lck::proportionality;
use crate::lie::{antiholo_central_series, hodge_split, ComplexStructure, Frame, LieAlgebra};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::scalar::{GaussianRational, Rational};

type Scalar = GaussianRational;

const R: BasisMode = BasisMode::RealDual;

/// `C^0 → C^1 → … → C^L` with `blocks[k]: C^k → C^{k+1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    label: String,
    dims: Vec<usize>,
    blocks: Vec<Matrix>,
}

impl CochainComplex {
    /// Checks shapes and that consecutive blocks compose to zero.
    pub fn new(
        label: impl Into<String>,
        dims: Vec<usize>,
        blocks: Vec<Matrix>,
    ) -> Result<CochainComplex> {
        if blocks.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch {
                expected: dims.len().saturating_sub(1),
                found: blocks.len(),
            });
        }
        for (k, b) in blocks.iter().enumerate() {
            if b.cols() != dims[k] || b.rows() != dims[k + 1] {
                return Err(Error::DimensionMismatch {
                    expected: dims[k],
                    found: b.cols(),
                });
            }
        }
        if !blocks.par_windows(2).all(|w| w[1].mul(&w[0]).is_zero()) {
            return Err(Error::ComposeNonzero);
        }
        Ok(CochainComplex {
            label: label.into(),
            dims,
            blocks,
        })
    }

    /// The complex of a differential operator on all of Λ*.
    pub fn from_operator(
        label: impl Into<String>,
        op: &DifferentialOperator,
    ) -> Result<CochainComplex> {
        let n = op.dim();
        let dims = (0..=n).map(|k| basis(n, k).len()).collect();
        CochainComplex::new(label, dims, op.blocks()[..n].to_vec())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    /// `dim H^k = dim C^k − rank D_k − rank D_{k−1}`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.blocks.par_iter().map(Matrix::rank).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                self.dims[k] - out - inc
            })
            .collect()
    }
}

pub fn betti(g: &LieAlgebra) -> Vec<usize> {
    CochainComplex::from_operator("d", &chevalley_d(g))
        .expect("d^2 = 0")
        .cohomology_dims()
}

pub fn twisted_betti(g: &LieAlgebra, theta: &ExtForm) -> Result<Vec<usize>> {
    let complex = CochainComplex::from_operator("d_theta", &twisted_d(g, theta)?)?;
    Ok(complex.cohomology_dims())
}

/// The complex `(Λ^{p,*}, ∂̄_θ)`; untwisted when `theta` is absent.
pub fn dolbeault_complex(
    g: &LieAlgebra,
    j: &ComplexStructure,
    theta: Option<&ExtForm>,
    p: usize,
) -> Result<CochainComplex> {
    let frame = Frame::hodge(g, &hodge_split(g, j)?);
    dolbeault_complex_in(&frame, theta, p)
}

fn dolbeault_complex_in(
    frame: &Frame,
    theta: Option<&ExtForm>,
    p: usize,
) -> Result<CochainComplex> {
    let h = frame.holo_dim().expect("hodge frame");
    if p > h {
        return Err(Error::InvalidParameter(format!(
            "p = {p} exceeds the complex dimension {h}"
        )));
    }
    let d = match theta {
        Some(t) => frame_twisted_d(frame, t)?,
        None => crate::differentials::frame_d(frame),
    };
    let (_, delbar) = hodge_components(&d)?;
    let n = frame.dim();
    let dims = (0..=h)
        .map(|q| bidegree_basis(n, h, Bidegree::new(p, q)).len())
        .collect();
    let blocks = (0..h)
        .map(|q| delbar.restrict(Bidegree::new(p, q), Bidegree::new(p, q + 1)))
        .collect();
    let label = if theta.is_some() {
        "delbar_theta"
    } else {
        "delbar"
    };
    CochainComplex::new(label, dims, blocks)
}

/// `dim H^q(Λ^{p,*}, ∂̄_θ)` for `q = 0..=n/2`.
pub fn twisted_dolbeault_pq(
    g: &LieAlgebra,
    j: &ComplexStructure,
    theta: Option<&ExtForm>,
    p: usize,
) -> Result<Vec<usize>> {
    Ok(dolbeault_complex(g, j, theta, p)?.cohomology_dims())
}

pub fn twisted_dolbeault_0q(
    g: &LieAlgebra,
    j: &ComplexStructure,
    theta: Option<&ExtForm>,
) -> Result<Vec<usize>> {
    twisted_dolbeault_pq(g, j, theta, 0)
}

/// Whether `(Λ*(V), e∧·)` is exact, by ranks.
pub fn koszul_exactness(covector: &[Scalar]) -> Result<bool> {
    if covector.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroCovector);
    }
    let n = covector.len();
    let dims = (0..=n).map(|k| basis(n, k).len()).collect();
    let blocks = (0..n).map(|k| wedge_block(covector, k)).collect();
    let complex = CochainComplex::new("koszul", dims, blocks)?;
    Ok(complex.cohomology_dims().iter().all(|&h| h == 0))
}

/// One graded piece `V_p ∩ Λ^{0,q} / V_{p−1} ∩ Λ^{0,q}` of the filtration
/// and the E₀ differential leaving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub p: usize,
    pub q: usize,
    /// Monomials of the piece, in the chain-adapted frame.
    pub monomials: Vec<MultiIndex>,
    /// Induced map to the piece `(p, q + 1)`.
    pub e0: Matrix,
}

/// The spectral sequence of `(Λ^{0,*}, ∂̄_θ)` filtered by weight, up to E₁.
///
/// The (0,1)-frame is adapted to the chain `W_0 = g^{0,1} ⊋ W_1 ⊋ … ⊋ 0`:
/// a frame vector has level `k` when it lies in `W_k` but not `W_{k+1}`,
/// and its dual covector then spans `A_{k+1}` modulo `A_k`. A monomial's
/// filtration degree is the sum of the levels of its covectors. Since
/// `[W_i, W_j] ⊆ W_{i+j+1}`, ∂̄ strictly lowers this degree while
/// `θ^{0,1}` has level 0, so `V_p` (degree ≤ p) is a subcomplex and E₀ is
/// multiplication by `−θ^{0,1}`.
#[derive(Clone, Debug)]
pub struct SpectralPages {
    pub frame: Frame,
    pub levels: Vec<usize>,
    pub w_dims: Vec<usize>,
    /// `filtration[q][p]` is `V_p ∩ Λ^{0,q}` in colex coordinates of Λ^{0,q}.
    pub filtration: Vec<Vec<SubspaceBasis>>,
    pub pieces: Vec<GradedPiece>,
    /// `E₁^{p,q}` dimensions keyed by `(p, q)`.
    pub e1_dims: BTreeMap<(usize, usize), usize>,
    /// ∂̄(A_k) ⊂ Λ²(A_{k−1}) for every k, checked on the annihilator chain.
    pub a_chain_ok: bool,
    /// Every E₀ block equals the matrix of `−θ^{0,1}∧` on its piece.
    pub e0_is_wedge: bool,
    /// The ∂̄_θ block on Λ^{0,*} preserves every `V_p`.
    pub filtration_preserved: bool,
}

impl SpectralPages {
    pub fn e1_total(&self) -> usize {
        self.e1_dims.values().sum()
    }
}

/// Adapted coordinates, their levels and the chain dimensions.
type AdaptedBasis = (Vec<Vec<Scalar>>, Vec<usize>, Vec<usize>);

/// Basis of g^{0,1} adapted to the W-chain, with levels, in real coordinates.
fn chain_adapted_basis(g: &LieAlgebra, j: &ComplexStructure) -> Result<AdaptedBasis> {
    let split = hodge_split(g, j)?;
    let chain = antiholo_central_series(&split, g)?;
    let echelon = split.antiholo.vectors();
    let n = g.dim();
    let mut coords: Vec<Vec<Scalar>> = Vec::new();
    let mut levels = Vec::new();
    // deepest nonzero term first, then extend outwards
    let mut current = SubspaceBasis::zero(echelon.len());
    for (k, w) in chain.w_chain.iter().enumerate().rev() {
        for v in current.complement_in(w) {
            coords.push(v);
            levels.push(k);
        }
        current = w.clone();
    }
    // the frame lists level 0 first
    coords.reverse();
    levels.reverse();
    let real = coords
        .iter()
        .map(|c| {
            let mut v = vec![Scalar::ZERO; n];
            for (x, b) in c.iter().zip(echelon) {
                if !x.is_zero() {
                    for (y, z) in v.iter_mut().zip(b) {
                        *y += &(x * z);
                    }
                }
            }
            v
        })
        .collect();
    let w_dims = chain.w_chain.iter().map(SubspaceBasis::dim).collect();
    Ok((real, levels, w_dims))
}

/// ∂̄(A_k) ⊂ Λ²(A_{k−1}) on the annihilator chain, in the echelon frame.
fn check_a_chain(g: &LieAlgebra, j: &ComplexStructure) -> Result<bool> {
    let split = hodge_split(g, j)?;
    let chain = antiholo_central_series(&split, g)?;
    let frame = Frame::hodge(g, &split);
    let (_, delbar) = hodge_components(&crate::differentials::frame_d(&frame))?;
    let n = g.dim();
    let h = n / 2;
    let mode = BasisMode::HodgeAdapted;
    let to_form = |a: &[Scalar]| {
        let mut c = vec![Scalar::ZERO; n];
        c[h..].clone_from_slice(a);
        ExtForm::covector(n, mode, &c)
    };
    for k in 1..chain.a_chain.len() {
        let prev: Vec<ExtForm> = chain.a_chain[k - 1]
            .vectors()
            .iter()
            .map(|a| to_form(a))
            .collect();
        let mut wedges = Vec::new();
        for (x, a) in prev.iter().enumerate() {
            for b in &prev[x + 1..] {
                wedges.push(a.wedge(b)?.to_dense());
            }
        }
        let target = SubspaceBasis::from_vectors(basis(n, 2).len(), wedges);
        for a in chain.a_chain[k].vectors() {
            let img = delbar.apply(&to_form(a))?;
            if !target.contains(&img.to_dense()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn spectral_pages(
    g: &LieAlgebra,
    j: &ComplexStructure,
    theta: &ExtForm,
) -> Result<SpectralPages> {
    if theta.is_zero() {
        return Err(Error::ThetaZero);
    }
    let a_chain_ok = check_a_chain(g, j)?;
    let split = hodge_split(g, j)?;
    let (anti, levels, w_dims) = chain_adapted_basis(g, j)?;
    let frame = Frame::adapted(g, split.holo.vectors(), &anti);
    let n = g.dim();
    let h = n / 2;
    let (_, delbar) = hodge_components(&frame_twisted_d(&frame, theta)?)?;
    // −θ^{0,1} in the adapted frame
    let phi: Vec<Scalar> = crate::exterior::to_frame(theta, &frame)
        .to_dense()
        .into_iter()
        .enumerate()
        .map(|(i, x)| if i < h { Scalar::ZERO } else { -x })
        .collect();
    let degree = |m: &MultiIndex| -> usize { m.indices().map(|i| levels[i - h]).sum() };
    let max_p = levels.iter().sum::<usize>();

    let mut pieces = Vec::new();
    let mut filtration = Vec::new();
    let mut e0_is_wedge = true;
    let mut filtration_preserved = true;
    for q in 0..=h {
        let src = bidegree_basis(n, h, Bidegree::new(0, q));
        filtration.push(
            (0..=max_p)
                .map(|p| {
                    let vs = src
                        .iter()
                        .enumerate()
                        .filter(|(_, m)| degree(m) <= p)
                        .map(|(i, _)| {
                            let mut v = vec![Scalar::ZERO; src.len()];
                            v[i] = Scalar::ONE;
                            v
                        })
                        .collect();
                    SubspaceBasis::from_vectors(src.len(), vs)
                })
                .collect(),
        );
        if q == h {
            for p in 0..=max_p {
                let monomials: Vec<MultiIndex> =
                    src.iter().copied().filter(|m| degree(m) == p).collect();
                pieces.push(GradedPiece {
                    p,
                    q,
                    monomials,
                    e0: Matrix::zeros(0, 0),
                });
            }
            continue;
        }
        let dst = bidegree_basis(n, h, Bidegree::new(0, q + 1));
        let block = delbar.block(q);
        let wedge = wedge_block(&phi, q);
        for m in &src {
            let col = colex_rank(*m);
            for r in &dst {
                let x = &block[(colex_rank(*r), col)];
                if !x.is_zero() && degree(r) > degree(m) {
                    filtration_preserved = false;
                }
            }
        }
        for p in 0..=max_p {
            let cols: Vec<MultiIndex> = src.iter().copied().filter(|m| degree(m) == p).collect();
            let rows: Vec<MultiIndex> = dst.iter().copied().filter(|m| degree(m) == p).collect();
            let ci: Vec<usize> = cols.iter().map(|m| colex_rank(*m)).collect();
            let ri: Vec<usize> = rows.iter().map(|m| colex_rank(*m)).collect();
            let e0 = block.select_rows(&ri).select_cols(&ci);
            if e0 != wedge.select_rows(&ri).select_cols(&ci) {
                e0_is_wedge = false;
            }
            pieces.push(GradedPiece {
                p,
                q,
                monomials: cols,
                e0,
            });
        }
    }

    let mut e1_dims = BTreeMap::new();
    let find = |p: usize, q: usize| pieces.iter().find(|x| x.p == p && x.q == q);
    for piece in &pieces {
        let out = if piece.q < h { piece.e0.rank() } else { 0 };
        let inc = match piece.q {
            0 => 0,
            q => find(piece.p, q - 1).map_or(0, |x| x.e0.rank()),
        };
        e1_dims.insert((piece.p, piece.q), piece.monomials.len() - out - inc);
    }
    Ok(SpectralPages {
        frame,
        levels,
        w_dims,
        filtration,
        pieces,
        e1_dims,
        a_chain_ok,
        e0_is_wedge,
        filtration_preserved,
    })
}

/// Real 2-forms `σ` with `Iσ = σ` and `d_θσ = 0` (`dσ = 0` without θ).
pub fn closed_real_11_forms(
    g: &LieAlgebra,
    j: &ComplexStructure,
    theta: Option<&ExtForm>,
) -> Result<Vec<ExtForm>> {
    let n = g.dim();
    let d = match theta {
        Some(t) => twisted_d_upto(g, t, 2)?,
        None => frame_d_upto(&Frame::real(g), 2),
    };
    let b2 = basis(n, 2);
    let cols: Vec<Vec<Scalar>> = b2
        .iter()
        .map(|m| {
            let f = ExtForm::from_terms(n, 2, R, [(*m, Scalar::ONE)]);
            apply_i(&f, j).sub(&f).map(|x| x.to_dense())
        })
        .collect::<Result<_>>()?;
    let fixed = Matrix::from_cols(b2.len(), &cols);
    Ok(d.block(2)
        .vstack(&fixed)
        .kernel_basis()
        .vectors()
        .iter()
        .map(|v| ExtForm::from_dense(n, 2, R, v))
        .collect())
}

/// `d_θ d^c_θ(1)` as a real 2-form.
pub fn ddc_theta_of_one(g: &LieAlgebra, j: &ComplexStructure, theta: &ExtForm) -> Result<ExtForm> {
    let one = ExtForm::constant(g.dim(), R, Scalar::ONE);
    let dct = dc_operator_upto(g, j, Some(theta), 0)?;
    twisted_d_upto(g, theta, 1)?.apply(&dct.apply(&one)?)
}

/// `dim(ker d_θ ∩ Λ^{1,1}) − rank(d_θ d^c_θ : Λ⁰ → Λ^{1,1})`.
pub fn bott_chern_11_dim(
    g: &LieAlgebra,
    j: &ComplexStructure,
    theta: Option<&ExtForm>,
) -> Result<usize> {
    let closed = closed_real_11_forms(g, j, theta)?.len();
    let image = match theta {
        Some(t) => usize::from(!ddc_theta_of_one(g, j, t)?.is_zero()),
        None => 0,
    };
    Ok(closed - image)
}

/// A 1-form `τ` with `ω = d_θτ` and `d_θ(Iτ) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChaseResult {
    pub tau: ExtForm,
    /// `f` with `ω = f · d_θ d^c_θ(1)`, so that `τ = d^c_θ f = −f θ^c`.
    pub constant: Option<Rational>,
    /// Set when the one-dimensional system failed and a general solve was used.
    pub fallback: bool,
}

pub fn hodge_chase(
    g: &LieAlgebra,
    j: &ComplexStructure,
    theta: &ExtForm,
    omega: &ExtForm,
) -> Result<ChaseResult> {
    let n = g.dim();
    if omega.degree() != 2 || !omega.is_real() || apply_i(omega, j) != *omega {
        return Err(Error::WrongBidegree { p: 1, q: 1 });
    }
    let dt = twisted_d_upto(g, theta, 2)?;
    if !dt.apply(omega)?.is_zero() {
        return Err(Error::NotClosed);
    }
    let works = |tau: &ExtForm| -> Result<bool> {
        Ok(dt.apply(tau)? == *omega && dt.apply(&apply_i(tau, j))?.is_zero())
    };
    let w1 = ddc_theta_of_one(g, j, theta)?;
    if let Some(f) = proportionality(omega, &w1) {
        let tau = apply_i(theta, j).scale(&Scalar::real(-f.clone()));
        if works(&tau)? {
            return Ok(ChaseResult {
                tau,
                constant: Some(f),
                fallback: false,
            });
        }
    }
    // general solve: [d_θ; d_θ∘I] τ = [ω; 0]
    let b1 = dt.block(1);
    let i_cols: Vec<Vec<Scalar>> = (0..n)
        .map(|k| apply_i(&ExtForm::monomial(n, R, &[k]), j).to_dense())
        .collect();
    let i_mat = Matrix::from_cols(n, &i_cols);
    let system = b1.vstack(&b1.mul(&i_mat));
    let mut rhs = omega.to_dense();
    rhs.extend(vec![Scalar::ZERO; b1.rows()]);
    let tau = system.solve(&rhs).ok_or(Error::NoSolution(
        "no tau with omega = d_theta tau and d_theta(I tau) = 0",
    ))?;
    let tau = ExtForm::covector(n, R, &tau);
    debug_assert!(works(&tau)?);
    Ok(ChaseResult {
        tau,
        constant: None,
        fallback: true,
    })
}

/// Closed real 1-forms, i.e. the annihilator of [g, g].
pub fn closed_one_forms(g: &LieAlgebra) -> SubspaceBasis {
    chevalley_d(g).block(1).kernel_basis()
}

/// `count` distinct nonzero closed real 1-forms with small rational
/// coefficients on a basis of closed forms.
pub fn sample_closed_thetas(g: &LieAlgebra, rng: &mut impl Rng, count: usize) -> Vec<ExtForm> {
    let closed = closed_one_forms(g);
    let n = g.dim();
    let mut out: Vec<ExtForm> = Vec::new();
    if closed.is_zero() {
        return out;
    }
    while out.len() < count {
        let mut v = vec![Scalar::ZERO; n];
        for b in closed.vectors() {
            let c = Scalar::real(Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
            for (x, y) in v.iter_mut().zip(b) {
                *x += &(&c * y);
            }
        }
        let theta = ExtForm::covector(n, R, &v);
        if !theta.is_zero() && !out.contains(&theta) {
            out.push(theta);
        }
    }
    out
}
