use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

use super::SubspaceBasis;

type Scalar = GaussianRational;

/// Dense row-major matrix over ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Builds from columns of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Integer entries, convenient in tests and catalogs.
    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn diag(entries: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Matrix product over the nonzero entries of both factors.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let sparse_rows: Vec<Vec<(usize, &Scalar)>> = (0..other.rows)
            .map(|k| {
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                row.iter()
                    .enumerate()
                    .filter(|(_, b)| !b.is_zero())
                    .collect()
            })
            .collect();
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &sparse_rows[k] {
                    let p = a * b;
                    out[(i, j)] += &p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination over ℚ(i).
    /// The result is canonical: it depends only on the row space.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<Scalar>> = self
            .to_rows()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            if !inv.is_one() {
                for x in rows[r][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let (head, tail) = rows.split_at_mut(r);
            let (pivot_row, below) = tail.split_first_mut().unwrap();
            for other in head.iter_mut().chain(below.iter_mut()) {
                eliminate(other, pivot_row, c);
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Rref {
            matrix: Matrix::from_rows(self.cols, rows),
            pivots,
        }
    }

    /// Exact rank by fraction-free elimination on Gaussian-integer rows.
    ///
    /// The lightest eligible row is chosen as pivot, only rows with a nonzero
    /// entry in the pivot column are touched, and every updated row is
    /// divided by its integer content. Unlike plain Bareiss this leaves
    /// sparse rows alone, which keeps exterior-algebra matrices sparse.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| self.row(i))
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .map(|row| {
                let s = Rational::from(row_denominator(row));
                row.iter().map(|x| x.scale(&s)).collect()
            })
            .collect();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c..].iter().filter(|x| !x.is_zero()).count())
            else {
                continue;
            };
            rows.swap(r, p);
            let (top, bottom) = rows.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = &pivot_row[c];
            for row in bottom.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    if pivot_row[j].is_zero() {
                        if !row[j].is_zero() {
                            row[j] = pivot * &row[j];
                        }
                    } else {
                        let mut v = if row[j].is_zero() {
                            Scalar::ZERO
                        } else {
                            pivot * &row[j]
                        };
                        v -= &(&factor * &pivot_row[j]);
                        row[j] = v;
                    }
                }
                remove_content(row);
            }
            r += 1;
        }
        r
    }

    /// Determinant of a square matrix, fraction-free.
    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        if self.rows == 0 {
            return Scalar::ONE;
        }
        let scales: Vec<BigInt> = (0..self.rows)
            .map(|i| row_denominator(self.row(i)))
            .collect();
        let (rank, last_pivot, swaps) = self.bareiss();
        if rank < self.rows {
            return Scalar::ZERO;
        }
        let denom: BigInt = scales.iter().product();
        let det = last_pivot.scale(&Rational::from_bigints(BigInt::one(), denom));
        if swaps % 2 == 1 {
            -det
        } else {
            det
        }
    }

    /// Returns (rank, last pivot, number of row swaps).
    fn bareiss(&self) -> (usize, Scalar, usize) {
        let mut a: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let s = Rational::from(row_denominator(row));
                row.iter().map(|x| x.scale(&s)).collect()
            })
            .collect();
        let mut prev = Scalar::ONE;
        let mut r = 0;
        let mut swaps = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(r, p);
                swaps += 1;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = &pivot_row[c];
            for row in bottom.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let mut v = if row[j].is_zero() {
                        Scalar::ZERO
                    } else {
                        pivot * &row[j]
                    };
                    if !factor.is_zero() && !pivot_row[j].is_zero() {
                        v -= &(&factor * &pivot_row[j]);
                    }
                    if !v.is_zero() && !prev.is_one() {
                        v = &v / &prev;
                    }
                    debug_assert!(v.is_gaussian_integer());
                    row[j] = v;
                }
            }
            prev = a[r][c].clone();
            r += 1;
        }
        (r, prev, swaps)
    }

    /// Canonical basis of the right null space.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::ZERO; self.cols];
                v[f] = Scalar::ONE;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&matrix[(r, f)];
                }
                v
            })
            .collect();
        SubspaceBasis::from_vectors(self.cols, vectors)
    }

    /// One exact solution of `self * x = b`, with all free variables set
    /// to zero, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = self.hstack(&Matrix::from_cols(self.rows, &[b.to_vec()]));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::ZERO; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let Rref { matrix, pivots } = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| matrix[(i, n + j)].clone()))
    }
}

/// Divides a Gaussian-integer row by the gcd of its real and imaginary parts.
fn remove_content(row: &mut [Scalar]) {
    let mut g = BigInt::zero();
    for x in row.iter().filter(|x| !x.is_zero()) {
        for part in [&x.re, &x.im] {
            if !part.is_zero() {
                g = g.gcd(&part.numer());
                if g.is_one() {
                    return;
                }
            }
        }
    }
    if g > BigInt::one() {
        let inv = Rational::from_bigints(BigInt::one(), g);
        for x in row.iter_mut().filter(|x| !x.is_zero()) {
            *x = x.scale(&inv);
        }
    }
}

fn row_denominator(row: &[Scalar]) -> BigInt {
    Rational::denom_lcm(row.iter().flat_map(|x| [x.re.clone(), x.im.clone()]))
}

/// `row -= row[c] * pivot_row`, where `pivot_row[c] == 1`.
fn eliminate(row: &mut [Scalar], pivot_row: &[Scalar], c: usize) {
    let factor = std::mem::take(&mut row[c]);
    if factor.is_zero() {
        return;
    }
    for j in c + 1..row.len() {
        if !pivot_row[j].is_zero() {
            row[j] -= &(&factor * &pivot_row[j]);
        }
    }
}

/// dim H = dim ker(d_out) - rank(d_in), after checking `d_out * d_in == 0`.
pub fn cohomology_dim(d_in: &Matrix, d_out: &Matrix) -> Result<usize> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch {
            expected: d_out.cols(),
            found: d_in.rows(),
        });
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::ComposeNonzero);
    }
    let kernel = d_out.cols() - d_out.rank();
    Ok(kernel - d_in.rank())
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
