//! Example algebras with their complex structures, metrics and Lee forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::{BasisMode, ExtForm, MultiIndex};
use crate::lck::{fundamental_form, HermitianMetric};
use crate::lie::{is_integrable, ComplexStructure, LieAlgebra, MAX_DIM};
use crate::linalg::Matrix;
use crate::scalar::{GaussianRational, Rational};

type Scalar = GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub complex_structure: Option<ComplexStructure>,
    pub metric: Option<HermitianMetric>,
    pub theta: Option<ExtForm>,
    pub notes: String,
}

impl CatalogEntry {
    /// `ω(x, y) = h(Ix, y)` when both J and a metric are bundled.
    pub fn omega(&self) -> Option<ExtForm> {
        fundamental_form(self.complex_structure.as_ref()?, self.metric.as_ref()?).ok()
    }
}

fn one(k: usize) -> Vec<(usize, Rational)> {
    vec![(k, Rational::ONE)]
}

/// h_{2n+1}×ℝ on `X_i, Y_i, Z, T` with `[X_i, Y_i] = Z`, `I X_i = Y_i`,
/// `I Z = −T`, orthonormal metric and Lee form `T*`. Real dim `2n + 2`.
pub fn heisenberg_x_line(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::InvalidParameter("heisenberg needs n >= 1".into()));
    }
    let dim = 2 * n + 2;
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, max: MAX_DIM });
    }
    let mut names: Vec<String> = if n == 1 {
        vec!["X".into(), "Y".into()]
    } else {
        (1..=n)
            .flat_map(|i| [format!("X{i}"), format!("Y{i}")])
            .collect()
    };
    names.push("Z".into());
    names.push("T".into());
    let (z, t) = (2 * n, 2 * n + 1);
    let brackets: Vec<_> = (0..n).map(|i| (2 * i, 2 * i + 1, one(z))).collect();
    let algebra = LieAlgebra::from_brackets(names, &brackets)?;
    let mut j = Matrix::zeros(dim, dim);
    for i in 0..n {
        j[(2 * i + 1, 2 * i)] = Scalar::ONE;
        j[(2 * i, 2 * i + 1)] = -Scalar::ONE;
    }
    j[(t, z)] = -Scalar::ONE;
    j[(z, t)] = Scalar::ONE;
    Ok(CatalogEntry {
        name: "heisenberg".into(),
        algebra,
        complex_structure: Some(ComplexStructure::new(j)?),
        metric: Some(HermitianMetric::identity(dim)),
        theta: Some(ExtForm::monomial(dim, BasisMode::RealDual, &[t])),
        notes: if n == 1 {
            "Kodaira-Thurston algebra h3 x R; Vaisman with Lee form T*".into()
        } else {
            format!("h{} x R; Vaisman with Lee form T*", 2 * n + 1)
        },
    })
}

/// ℝⁿ with the standard J, identity metric and θ = 0.
pub fn abelian(n: usize) -> Result<CatalogEntry> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_DIM,
        });
    }
    let names = (1..=n).map(|i| format!("e{i}")).collect();
    Ok(CatalogEntry {
        name: "abelian".into(),
        algebra: LieAlgebra::abelian(names)?,
        complex_structure: Some(ComplexStructure::standard(n)?),
        metric: Some(HermitianMetric::identity(n)),
        theta: Some(ExtForm::zero(n, 1, BasisMode::RealDual)),
        notes: "Kähler torus algebra".into(),
    })
}

/// Real form of the complex Heisenberg algebra `[Z1, Z2] = 2 Z3`.
pub fn iwasawa() -> CatalogEntry {
    let names = (1..=6).map(|i| format!("e{i}")).collect();
    let neg = vec![(4, -Rational::ONE)];
    let algebra = LieAlgebra::from_brackets(
        names,
        &[(0, 2, one(4)), (1, 3, neg), (0, 3, one(5)), (1, 2, one(5))],
    )
    .expect("Iwasawa constants satisfy Jacobi");
    CatalogEntry {
        name: "iwasawa".into(),
        algebra,
        complex_structure: Some(ComplexStructure::standard(6).expect("even")),
        metric: None,
        theta: None,
        notes: "complex Heisenberg algebra; g^{0,1} is not abelian".into(),
    }
}

/// Catalog lookup by name; `n` is the Heisenberg index or the abelian dimension.
pub fn by_name(name: &str, n: Option<usize>) -> Result<CatalogEntry> {
    match name {
        "heisenberg" => heisenberg_x_line(n.unwrap_or(1)),
        "kodaira-thurston" => {
            let mut e = heisenberg_x_line(1)?;
            e.name = "kodaira-thurston".into();
            Ok(e)
        }
        "abelian" => abelian(n.unwrap_or(2)),
        "iwasawa" => Ok(iwasawa()),
        other => Err(Error::InvalidParameter(format!(
            "unknown catalog entry `{other}`"
        ))),
    }
}

pub const NAMES: [&str; 4] = ["heisenberg", "kodaira-thurston", "abelian", "iwasawa"];

fn random_coefficient(rng: &mut impl Rng) -> Scalar {
    let re = rng.gen_range(-2..=2);
    let im = if rng.gen_bool(0.3) {
        rng.gen_range(-1..=1)
    } else {
        0
    };
    Scalar::from_int(re) + Scalar::new(Rational::ZERO, Rational::from_integer(im))
}

/// One attempt at a nilpotent algebra of complex dimension `m` with an
/// integrable J: pick `dω^k` among `ω^i∧ω^j` and `ω^i∧ω̄^j` with
/// `i, j < k` (no (0,2) part), then read off real structure constants
/// in `e^{2k} = Re ω^k`, `e^{2k+1} = Im ω^k`. Jacobi may fail, in which
/// case the candidate is dropped.
fn random_candidate(rng: &mut impl Rng, m: usize) -> Option<LieAlgebra> {
    let n = 2 * m;
    let adapted = BasisMode::HodgeAdapted;
    // ω^k = e^{2k} + i e^{2k+1}, ω̄^k = e^{2k} − i e^{2k+1}
    let mut sub = Matrix::zeros(n, n);
    for k in 0..m {
        sub[(k, 2 * k)] = Scalar::ONE;
        sub[(k, 2 * k + 1)] = Scalar::I;
        sub[(m + k, 2 * k)] = Scalar::ONE;
        sub[(m + k, 2 * k + 1)] = -Scalar::I;
    }
    let mut constants = vec![Rational::ZERO; n * n * n];
    for k in 1..m {
        let mut terms = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i < j && rng.gen_bool(0.4) {
                    terms.push((
                        MultiIndex::from_indices(&[i, j]).unwrap(),
                        random_coefficient(rng),
                    ));
                }
                if rng.gen_bool(0.5) {
                    terms.push((
                        MultiIndex::from_indices(&[i, m + j]).unwrap(),
                        random_coefficient(rng),
                    ));
                }
            }
        }
        let real = ExtForm::from_terms(n, 2, adapted, terms).pullback(&sub, BasisMode::RealDual);
        // de^{2k} = Re dω^k, de^{2k+1} = Im dω^k, and c_ab^c = −coef of e^a∧e^b in de^c
        for (mask, coef) in real.terms() {
            let ix: Vec<usize> = mask.indices().collect();
            let (a, b) = (ix[0], ix[1]);
            for (c, part) in [(2 * k, &coef.re), (2 * k + 1, &coef.im)] {
                constants[(a * n + b) * n + c] = -part;
                constants[(b * n + a) * n + c] = part.clone();
            }
        }
    }
    let names = (1..=n).map(|i| format!("e{i}")).collect();
    LieAlgebra::new(names, constants).ok()
}

/// `count` non-abelian nilpotent algebras of real dimension 4, 6 or 8
/// (at most `max_dim`) with integrable standard J, reproducible from `seed`.
pub fn random_nilpotent_with_j(seed: u64, count: usize, max_dim: usize) -> Vec<CatalogEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = [4, 6, 8].into_iter().filter(|&d| d <= max_dim).collect();
    assert!(!dims.is_empty(), "max_dim must be at least 4");
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 100_000, "random search did not converge");
        let dim = dims[out.len() % dims.len()];
        let Some(g) = random_candidate(&mut rng, dim / 2) else {
            continue;
        };
        if g.is_abelian() || !g.is_nilpotent() || out.iter().any(|e: &CatalogEntry| e.algebra == g)
        {
            continue;
        }
        let j = ComplexStructure::standard(dim).expect("even");
        if !is_integrable(&g, &j).unwrap_or(false) {
            continue;
        }
        out.push(CatalogEntry {
            name: format!("random-{}", out.len() + 1),
            algebra: g,
            complex_structure: Some(j),
            metric: None,
            theta: None,
            notes: format!("random nilpotent complex structure, seed {seed}"),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::antiholo_central_series;
    use crate::lie::hodge_split;
    use crate::scalar::gi;

    #[test]
    fn heisenberg_shapes() {
        let h1 = heisenberg_x_line(1).unwrap();
        assert_eq!(h1.algebra.names(), ["X", "Y", "Z", "T"]);
        let h2 = heisenberg_x_line(2).unwrap();
        assert_eq!(h2.algebra.dim(), 6);
        assert_eq!(h2.algebra.c(0, 1, 4), &Rational::ONE);
        assert_eq!(h2.algebra.c(2, 3, 4), &Rational::ONE);
        assert!(heisenberg_x_line(7).is_ok());
        assert_eq!(
            heisenberg_x_line(8).unwrap_err(),
            Error::DimensionTooLarge { dim: 18, max: 16 }
        );
        for n in 1..=4 {
            let e = heisenberg_x_line(n).unwrap();
            assert!(is_integrable(&e.algebra, e.complex_structure.as_ref().unwrap()).unwrap());
            assert!(e.algebra.is_nilpotent());
        }
    }

    #[test]
    fn abelian_entries() {
        assert_eq!(abelian(3).unwrap_err(), Error::OddDimension(3));
        let a = abelian(4).unwrap();
        assert!(a.algebra.is_abelian());
        let w = a.omega().unwrap();
        assert_eq!(
            w,
            ExtForm::parse("1 e1^e2 1 e3^e4", a.algebra.names(), BasisMode::RealDual).unwrap()
        );
    }

    #[test]
    fn iwasawa_properties() {
        let c = iwasawa();
        let g = &c.algebra;
        let j = c.complex_structure.as_ref().unwrap();
        assert!(is_integrable(g, j).unwrap());
        assert!(g.is_nilpotent());
        // [e1 − i e2, e3 − i e4] = 2(e5 − i e6)
        let z1 = vec![gi(1, 0), gi(0, -1), gi(0, 0), gi(0, 0), gi(0, 0), gi(0, 0)];
        let z2 = vec![gi(0, 0), gi(0, 0), gi(1, 0), gi(0, -1), gi(0, 0), gi(0, 0)];
        let z3 = vec![gi(0, 0), gi(0, 0), gi(0, 0), gi(0, 0), gi(2, 0), gi(0, -2)];
        assert_eq!(g.bracket(&z1, &z2), z3);
        let chain = antiholo_central_series(&hodge_split(g, j).unwrap(), g).unwrap();
        assert_eq!(
            chain.w_chain.iter().map(|w| w.dim()).collect::<Vec<_>>(),
            vec![3, 1, 0]
        );
    }

    #[test]
    fn lookup() {
        assert_eq!(
            by_name("kodaira-thurston", None).unwrap().algebra,
            heisenberg_x_line(1).unwrap().algebra
        );
        assert!(by_name("nope", None).is_err());
    }

    #[test]
    fn random_search_is_reproducible() {
        let a = random_nilpotent_with_j(7, 5, 8);
        let b = random_nilpotent_with_j(7, 5, 8);
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        for e in &a {
            assert!(e.algebra.dim() <= 8);
            assert!(e.algebra.is_nilpotent() && !e.algebra.is_abelian());
        }
    }
}
