use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

use super::Matrix;

/// Sylvester inertia of a Hermitian form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Inertia {
    pub fn new(positive: usize, zero: usize, negative: usize) -> Inertia {
        Inertia {
            positive,
            zero,
            negative,
        }
    }
}

impl std::fmt::Display for Inertia {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.positive, self.zero, self.negative)
    }
}

/// Inertia by congruence: pivot on a nonzero diagonal entry and take the
/// Schur complement; when the diagonal vanishes but the matrix does not,
/// a congruence `row_i += c row_j` creates a positive diagonal entry first.
pub fn symmetric_inertia(s: &Matrix) -> Result<Inertia> {
    if !s.is_square() || *s != s.conj_transpose() {
        return Err(Error::NotHermitian);
    }
    let mut a = s.to_rows();
    let mut out = Inertia::new(0, 0, 0);
    while !a.is_empty() {
        let n = a.len();
        let k = match (0..n).find(|&i| !a[i][i].is_zero()) {
            Some(k) => k,
            None => {
                let Some((i, j)) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                else {
                    out.zero += n;
                    break;
                };
                // new a[i][i] = c a[j][i] + conj(c) a[i][j] = 2 |a[i][j]|^2
                let c = a[i][j].clone();
                let row_j = a[j].clone();
                for (x, y) in a[i].iter_mut().zip(&row_j) {
                    *x += &(&c * y);
                }
                let cc = c.conj();
                for row in a.iter_mut() {
                    let y = row[j].clone();
                    row[i] += &(&cc * &y);
                }
                i
            }
        };
        let pivot = a[k][k].clone();
        debug_assert!(pivot.is_real());
        if pivot.re.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        let pivot_inv = pivot.recip();
        let col: Vec<GaussianRational> = a.iter().map(|r| r[k].clone()).collect();
        let row_k = a[k].clone();
        let mut next = Vec::with_capacity(n - 1);
        for (i, row) in a.iter().enumerate() {
            if i == k {
                continue;
            }
            let f = &col[i] * &pivot_inv;
            let new_row: Vec<GaussianRational> = row
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(j, x)| {
                    if f.is_zero() || row_k[j].is_zero() {
                        x.clone()
                    } else {
                        x - &(&f * &row_k[j])
                    }
                })
                .collect();
            next.push(new_row);
        }
        a = next;
    }
    Ok(out)
}
