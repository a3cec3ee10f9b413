//! Exterior forms on g_ℂ with bidegree bookkeeping.
//!
//! A multi-index is a bitmask over the ordered dual basis; for a fixed
//! degree, numeric order of masks is colexicographic order, which is the
//! coordinate order used for every dense vector and operator matrix.
//!
//! Wedge products use the determinant convention:
//! `(α∧β)(x, y) = α(x)β(y) − α(y)β(x)` for 1-forms, with no `1/k!`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{ComplexStructure, Frame};
use crate::linalg::Matrix;
use crate::scalar::GaussianRational;

type Scalar = GaussianRational;

/// Strictly increasing list of basis indices, stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// `None` unless the indices are strictly increasing and < 32.
    pub fn from_indices(indices: &[usize]) -> Option<MultiIndex> {
        let mut bits = 0u32;
        let mut prev = None;
        for &i in indices {
            if i >= 32 || prev.is_some_and(|p| p >= i) {
                return None;
            }
            bits |= 1 << i;
            prev = Some(i);
        }
        Some(MultiIndex(bits))
    }

    pub fn single(i: usize) -> MultiIndex {
        MultiIndex(1 << i)
    }

    pub fn from_bits(bits: u32) -> MultiIndex {
        MultiIndex(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// (number of indices below `holo_dim`, number at or above it).
    pub fn bidegree(self, holo_dim: usize) -> Bidegree {
        let low = self.0 & ((1u32 << holo_dim) - 1);
        let p = low.count_ones() as usize;
        Bidegree {
            p,
            q: self.degree() - p,
        }
    }
}

/// The product `e^a ∧ e^b` as `(mask, negative)`, or `None` when it vanishes.
pub fn wedge_sign(a: MultiIndex, b: MultiIndex) -> Option<(MultiIndex, bool)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    // count pairs (i in a, j in b) with i > j
    let mut inversions = 0;
    let mut rest = b.0;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a.0 >> j).count_ones();
    }
    Some((MultiIndex(a.0 | b.0), inversions % 2 == 1))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All multi-indices of the given degree in colex order.
pub fn basis(dim: usize, degree: usize) -> Vec<MultiIndex> {
    if degree > dim {
        return Vec::new();
    }
    if degree == 0 {
        return vec![MultiIndex::EMPTY];
    }
    let mut out = Vec::with_capacity(binomial(dim, degree));
    let mut v: u32 = (1 << degree) - 1;
    let limit: u64 = 1 << dim;
    while (v as u64) < limit {
        out.push(MultiIndex(v));
        // Gosper's hack: next integer with the same popcount
        let t = v | (v - 1);
        let next =
            (t as u64 + 1) | (((!t & t.wrapping_add(1)) as u64 - 1) >> (v.trailing_zeros() + 1));
        if next >= limit {
            break;
        }
        v = next as u32;
    }
    out
}

/// Position of `m` in `basis(dim, m.degree())`.
pub fn colex_rank(m: MultiIndex) -> usize {
    m.indices()
        .enumerate()
        .map(|(t, i)| binomial(i, t + 1))
        .sum()
}

/// Number of multi-indices of degree `degree`.
pub fn basis_len(dim: usize, degree: usize) -> usize {
    binomial(dim, degree)
}

/// Multi-indices of bidegree (p, q) in colex order; the first `holo_dim`
/// dual basis vectors are of type (1,0).
pub fn bidegree_basis(dim: usize, holo_dim: usize, bd: Bidegree) -> Vec<MultiIndex> {
    basis(dim, bd.p + bd.q)
        .into_iter()
        .filter(|m| m.bidegree(holo_dim) == bd)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub fn new(p: usize, q: usize) -> Bidegree {
        Bidegree { p, q }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

/// Which dual basis the multi-indices refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisMode {
    /// The dual of the real basis of g.
    RealDual,
    /// The dual of a Hodge-adapted frame: `dim / 2` (1,0)-covectors first.
    HodgeAdapted,
}

/// A homogeneous form; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtForm {
    dim: usize,
    degree: usize,
    mode: BasisMode,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl ExtForm {
    pub fn zero(dim: usize, degree: usize, mode: BasisMode) -> ExtForm {
        ExtForm {
            dim,
            degree,
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, mode: BasisMode, c: Scalar) -> ExtForm {
        ExtForm::from_terms(dim, 0, mode, [(MultiIndex::EMPTY, c)])
    }

    pub fn covector(dim: usize, mode: BasisMode, coeffs: &[Scalar]) -> ExtForm {
        assert_eq!(coeffs.len(), dim);
        ExtForm::from_terms(
            dim,
            1,
            mode,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (MultiIndex::single(i), c.clone())),
        )
    }

    /// Real covector from rational components in the real dual basis.
    pub fn real_covector(coeffs: &[crate::scalar::Rational]) -> ExtForm {
        let c: Vec<Scalar> = coeffs.iter().cloned().map(Scalar::real).collect();
        ExtForm::covector(coeffs.len(), BasisMode::RealDual, &c)
    }

    /// Sums repeated indices; panics if an index has the wrong degree.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        mode: BasisMode,
        terms: impl IntoIterator<Item = (MultiIndex, Scalar)>,
    ) -> ExtForm {
        let mut f = ExtForm::zero(dim, degree, mode);
        for (m, c) in terms {
            f.add_term(m, &c);
        }
        f
    }

    pub fn monomial(dim: usize, mode: BasisMode, indices: &[usize]) -> ExtForm {
        let m = MultiIndex::from_indices(indices).expect("strictly increasing indices");
        ExtForm::from_terms(dim, indices.len(), mode, [(m, Scalar::ONE)])
    }

    fn add_term(&mut self, m: MultiIndex, c: &Scalar) {
        assert_eq!(m.degree(), self.degree, "term degree");
        assert!(m.bits() >> self.dim == 0, "index out of range");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mode(&self) -> BasisMode {
        self.mode
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, m: MultiIndex) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Real-dual mode with real coefficients.
    pub fn is_real(&self) -> bool {
        self.mode == BasisMode::RealDual && self.terms.values().all(Scalar::is_real)
    }

    fn check_compatible(&self, other: &ExtForm) -> Result<()> {
        if self.mode != other.mode || self.dim != other.dim {
            return Err(Error::BasisModeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ExtForm) -> Result<ExtForm> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ExtForm) -> Result<ExtForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExtForm {
        self.scale(&-Scalar::ONE)
    }

    pub fn scale(&self, c: &Scalar) -> ExtForm {
        let mut out = ExtForm::zero(self.dim, self.degree, self.mode);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        }
        out
    }

    pub fn wedge(&self, other: &ExtForm) -> Result<ExtForm> {
        self.check_compatible(other)?;
        let mut out = ExtForm::zero(self.dim, self.degree + other.degree, self.mode);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((m, neg)) = wedge_sign(*a, *b) {
                    let p = x * y;
                    out.add_term(m, &if neg { -p } else { p });
                }
            }
        }
        Ok(out)
    }

    /// Coordinates in `basis(dim, degree)`.
    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; basis_len(self.dim, self.degree)];
        for (m, c) in &self.terms {
            v[colex_rank(*m)] = c.clone();
        }
        v
    }

    pub fn from_dense(dim: usize, degree: usize, mode: BasisMode, coords: &[Scalar]) -> ExtForm {
        let b = basis(dim, degree);
        assert_eq!(b.len(), coords.len(), "coordinate length");
        ExtForm::from_terms(dim, degree, mode, b.into_iter().zip(coords.iter().cloned()))
    }

    /// Value on `degree` vectors given in the coordinates of the basis
    /// this form is written in.
    pub fn evaluate(&self, vectors: &[Vec<Scalar>]) -> Scalar {
        assert_eq!(vectors.len(), self.degree);
        self.terms
            .iter()
            .map(|(m, c)| {
                let idx: Vec<usize> = m.indices().collect();
                let minor =
                    Matrix::from_fn(self.degree, self.degree, |r, s| vectors[s][idx[r]].clone());
                c * &minor.determinant()
            })
            .sum()
    }

    /// Rewrites the form after substituting each old dual basis covector
    /// `ε^i = Σ_j m[i][j] η^j` in terms of a new dual basis `η`.
    pub fn pullback(&self, m: &Matrix, mode: BasisMode) -> ExtForm {
        assert_eq!(m.rows(), self.dim);
        let images: Vec<ExtForm> = (0..self.dim)
            .map(|i| ExtForm::covector(m.cols(), mode, m.row(i)))
            .collect();
        let mut out = ExtForm::zero(m.cols(), self.degree, mode);
        for (idx, c) in &self.terms {
            let mut prod = ExtForm::constant(m.cols(), mode, c.clone());
            for i in idx.indices() {
                prod = prod.wedge(&images[i]).expect("same mode");
            }
            for (mm, x) in prod.terms {
                out.add_term(mm, &x);
            }
        }
        out
    }

    /// Coefficientwise complex conjugate of a real-dual form.
    pub fn conj(&self) -> ExtForm {
        match self.mode {
            BasisMode::RealDual => ExtForm {
                dim: self.dim,
                degree: self.degree,
                mode: self.mode,
                terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
            },
            BasisMode::HodgeAdapted => {
                // conjugation swaps the (1,0) covector k with the (0,1) covector k
                let h = self.dim / 2;
                let swap: Matrix = Matrix::from_fn(self.dim, self.dim, |i, j| {
                    if j == (i + h) % self.dim {
                        Scalar::ONE
                    } else {
                        Scalar::ZERO
                    }
                });
                let c = ExtForm {
                    terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
                    ..self.clone()
                };
                c.pullback(&swap, BasisMode::HodgeAdapted)
            }
        }
    }

    /// Components by bidegree; only meaningful in Hodge-adapted mode.
    pub fn bidegree_components(&self) -> Result<BTreeMap<Bidegree, ExtForm>> {
        if self.mode != BasisMode::HodgeAdapted {
            return Err(Error::BasisModeMismatch);
        }
        let h = self.dim / 2;
        let mut out: BTreeMap<Bidegree, ExtForm> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree(h))
                .or_insert_with(|| ExtForm::zero(self.dim, self.degree, self.mode))
                .add_term(*m, c);
        }
        Ok(out)
    }

    /// Whether every term has bidegree `bd` (the zero form qualifies).
    pub fn is_of_bidegree(&self, bd: Bidegree) -> bool {
        self.mode == BasisMode::HodgeAdapted
            && self.terms.keys().all(|m| m.bidegree(self.dim / 2) == bd)
    }

    /// Renders terms as `+c a^b -c' d^e`; complex coefficients are
    /// parenthesized, the empty index is written `1`, the zero form `0`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let coef = if c.is_real() {
                if c.re.is_negative() {
                    format!("-{}", -&c.re)
                } else {
                    format!("+{}", c.re)
                }
            } else {
                format!("+({c})")
            };
            let mono = if m.degree() == 0 {
                "1".to_string()
            } else {
                m.indices()
                    .map(|i| names[i].as_str())
                    .collect::<Vec<_>>()
                    .join("^")
            };
            parts.push(format!("{coef} {mono}"));
        }
        parts.join(" ")
    }

    /// Inverse of [`ExtForm::render`]. A leading `+` on the first
    /// coefficient is optional; the degree is read off the terms.
    pub fn parse(text: &str, names: &[String], mode: BasisMode) -> Result<ExtForm, FormParseError> {
        let dim = names.len();
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(FormParseError::Empty);
        }
        if tokens == ["0"] {
            return Err(FormParseError::UnknownDegree);
        }
        if tokens.len() % 2 == 1 {
            return Err(FormParseError::Dangling);
        }
        let mut degree = None;
        let mut terms = Vec::new();
        for pair in tokens.chunks(2) {
            let raw = pair[0].strip_prefix('+').unwrap_or(pair[0]);
            let raw = match raw.strip_prefix("(").and_then(|r| r.strip_suffix(')')) {
                Some(inner) => inner.to_string(),
                None => match raw.strip_prefix("-(").and_then(|r| r.strip_suffix(')')) {
                    Some(inner) => format!("-({inner})"),
                    None => raw.to_string(),
                },
            };
            let coef: Scalar =
                if let Some(inner) = raw.strip_prefix("-(").and_then(|r| r.strip_suffix(')')) {
                    -inner
                        .parse::<Scalar>()
                        .map_err(|_| FormParseError::Coefficient(pair[0].to_string()))?
                } else {
                    raw.parse()
                        .map_err(|_| FormParseError::Coefficient(pair[0].to_string()))?
                };
            let idx: Vec<usize> = if pair[1] == "1" {
                Vec::new()
            } else {
                pair[1]
                    .split('^')
                    .map(|n| {
                        names
                            .iter()
                            .position(|x| x == n)
                            .ok_or_else(|| FormParseError::UnknownName(n.to_string()))
                    })
                    .collect::<Result<_, _>>()?
            };
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != idx.len() {
                continue; // repeated covector: the monomial vanishes
            }
            // sign of the permutation sorting idx
            let inversions = (0..idx.len())
                .flat_map(|a| (a + 1..idx.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| idx[a] > idx[b])
                .count();
            let coef = if inversions % 2 == 1 { -coef } else { coef };
            match degree {
                None => degree = Some(idx.len()),
                Some(d) if d != idx.len() => return Err(FormParseError::MixedDegree),
                _ => {}
            }
            terms.push((MultiIndex::from_indices(&sorted).unwrap(), coef));
        }
        Ok(ExtForm::from_terms(dim, degree.unwrap_or(0), mode, terms))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormParseError {
    #[error("empty form")]
    Empty,
    #[error("cannot infer the degree of `0`")]
    UnknownDegree,
    #[error("coefficient without a monomial")]
    Dangling,
    #[error("bad coefficient `{0}`")]
    Coefficient(String),
    #[error("unknown basis name `{0}`")]
    UnknownName(String),
    #[error("terms of different degrees")]
    MixedDegree,
}

/// Names `z1..zh, zb1..zbh` for the Hodge-adapted dual basis.
pub fn hodge_names(dim: usize) -> Vec<String> {
    let h = dim / 2;
    (1..=h)
        .map(|k| format!("z{k}"))
        .chain((1..=h).map(|k| format!("zb{k}")))
        .collect()
}

/// Real-dual form rewritten in the dual of `frame`.
pub fn to_frame(f: &ExtForm, frame: &Frame) -> ExtForm {
    assert_eq!(f.mode(), BasisMode::RealDual);
    let mode = if frame.holo_dim().is_some() {
        BasisMode::HodgeAdapted
    } else {
        BasisMode::RealDual
    };
    // e^i(f_j) = P[i][j]
    f.pullback(frame.basis(), mode)
}

/// Frame form rewritten in the real dual basis.
pub fn from_frame(f: &ExtForm, frame: &Frame) -> ExtForm {
    f.pullback(frame.inverse(), BasisMode::RealDual)
}

/// Splits into Λ^{p,q} components (in the adapted basis of `frame`).
pub fn bidegree_split(f: &ExtForm, frame: &Frame) -> Result<BTreeMap<Bidegree, ExtForm>> {
    if frame.holo_dim().is_none() {
        return Err(Error::BasisModeMismatch);
    }
    match f.mode() {
        BasisMode::RealDual => to_frame(f, frame).bidegree_components(),
        BasisMode::HodgeAdapted => f.bidegree_components(),
    }
}

/// `(I f)(x_1, …) = f(I⁻¹x_1, …)`. On a real-dual form this is the
/// pullback by `I⁻¹ = −I`; on an adapted form it multiplies Λ^{p,q} by
/// `i^{q−p}`.
pub fn apply_i(f: &ExtForm, j: &ComplexStructure) -> ExtForm {
    match f.mode() {
        BasisMode::RealDual => {
            // ε^k ∘ I⁻¹ = Σ_i (I⁻¹)[k][i] ε^i
            let inv = j.matrix().scale(&-Scalar::ONE);
            f.pullback(&inv, BasisMode::RealDual)
        }
        BasisMode::HodgeAdapted => apply_i_adapted(f),
    }
}

pub fn apply_i_adapted(f: &ExtForm) -> ExtForm {
    let h = f.dim() / 2;
    ExtForm::from_terms(
        f.dim(),
        f.degree(),
        f.mode(),
        f.terms().iter().map(|(m, c)| {
            let bd = m.bidegree(h);
            (*m, c.mul_i_pow(bd.q as i64 - bd.p as i64))
        }),
    )
}
