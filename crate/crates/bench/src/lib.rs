//! Shared inputs for the benchmarks.

use nilcoh::catalog;
use nilcoh::{CatalogEntry, ExtForm, Rational};

/// Heisenberg×ℝ of real dimension `2n + 2` with the Lee form `T*`.
pub fn heisenberg(n: usize) -> (CatalogEntry, ExtForm) {
    let e = catalog::heisenberg_x_line(n).expect("n in range");
    let theta = e.theta.clone().expect("catalog theta");
    (e, theta)
}

/// Iwasawa with a closed θ that has both real and imaginary (0,1) parts.
pub fn iwasawa() -> (CatalogEntry, ExtForm) {
    let e = catalog::iwasawa();
    let coeffs: Vec<Rational> = [1, -2, 0, 3, 0, 0]
        .into_iter()
        .map(Rational::from_integer)
        .collect();
    (e, ExtForm::real_covector(&coeffs))
}
