//! Dense square matrices and rank-3 arrays over [`Scalar`], sized for chart
//! dimensions (a handful of coordinates).

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::expr::Scalar;

#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    n: usize,
    data: Vec<S>,
}

/// Real square matrix.
pub type Matrix = Mat<f64>;

impl<S> Mat<S> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Mat<S> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Mat { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }
}

impl<S: Clone> Mat<S> {
    pub fn transpose(&self) -> Mat<S> {
        Mat::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.n + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

impl Matrix {
    pub fn identity(n: usize) -> Matrix {
        Mat::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Matrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix rows must be square");
        Mat::from_fn(n, |i, j| rows[i][j])
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Succeeds iff every leading pivot of the Cholesky factorization is
    /// strictly positive. On failure returns the offending pivot index.
    pub fn cholesky_check(&self) -> Result<(), usize> {
        let n = self.n;
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = self[(j, j)];
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if d.is_nan() || d <= 0.0 {
                return Err(j);
            }
            let d = d.sqrt();
            l[j * n + j] = d;
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / d;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Mat<S> {
    pub fn mul_mat(&self, rhs: &Mat<S>) -> Mat<S> {
        let n = self.n;
        Mat::from_fn(n, |i, j| {
            let mut acc = self[(i, 0)].clone() * rhs[(0, j)].clone();
            for k in 1..n {
                acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        (0..self.n)
            .map(|i| {
                let mut acc = self[(i, 0)].clone() * v[0].clone();
                for k in 1..self.n {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    /// Gauss–Jordan inverse with partial pivoting on the real parts. Returns
    /// `None` when a pivot vanishes.
    pub fn inverse(&self) -> Option<Mat<S>> {
        let n = self.n;
        let zero = self.data[0].constant_like(0.0);
        let one = self.data[0].constant_like(1.0);
        let mut a = self.clone();
        let mut inv = Mat::from_fn(n, |i, j| if i == j { one.clone() } else { zero.clone() });
        let scale = self.data.iter().map(|v| v.re().abs()).fold(0.0, f64::max);
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&x, &y| a[(x, col)].re().abs().total_cmp(&a[(y, col)].re().abs()))
                .expect("non-empty range");
            if a[(piv, col)].re().abs() <= scale * 1e-15 || scale == 0.0 {
                return None;
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = a[(i, col)].clone();
                for j in 0..n {
                    a[(i, j)] = a[(i, j)].clone() - factor.clone() * a[(col, j)].clone();
                    inv[(i, j)] = inv[(i, j)].clone() - factor.clone() * inv[(col, j)].clone();
                }
            }
        }
        Some(inv)
    }

    pub fn map_re(&self) -> Matrix {
        Mat::from_fn(self.n, |i, j| self[(i, j)].re())
    }
}

/// Rank-3 array `Γ[k][i][j]` of connection coefficients: `k` is the output
/// index, `i` the differentiation direction, `j` the argument.
#[derive(Clone, PartialEq)]
pub struct Coefficients<S> {
    n: usize,
    data: Vec<S>,
}

impl<S> Coefficients<S> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> S) -> Coefficients<S> {
        let mut data = Vec::with_capacity(n * n * n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    data.push(f(k, i, j));
                }
            }
        }
        Coefficients { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }
}

impl<S: Scalar> Coefficients<S> {
    pub fn map_re(&self) -> Coefficients<f64> {
        Coefficients { n: self.n, data: self.data.iter().map(|v| v.re()).collect() }
    }
}

impl Coefficients<f64> {
    pub fn max_abs_diff(&self, other: &Coefficients<f64>) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

impl<S> Index<(usize, usize, usize)> for Coefficients<S> {
    type Output = S;
    fn index(&self, (k, i, j): (usize, usize, usize)) -> &S {
        &self.data[(k * self.n + i) * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize, usize)> for Coefficients<S> {
    fn index_mut(&mut self, (k, i, j): (usize, usize, usize)) -> &mut S {
        &mut self.data[(k * self.n + i) * self.n + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Coefficients<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks((self.n * self.n).max(1))).finish()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `g(a, b)` for a real metric matrix.
pub fn inner(g: &Matrix, a: &[f64], b: &[f64]) -> f64 {
    let n = g.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += g[(i, j)] * a[i] * b[j];
        }
    }
    s
}

pub fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(c: f64, a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| c * x).collect()
}

/// `Σ cᵢ vᵢ` over equal-length vectors.
pub fn combine(terms: &[(f64, &[f64])]) -> Vec<f64> {
    let n = terms.first().map_or(0, |t| t.1.len());
    let mut out = vec![0.0; n];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += c * x;
        }
    }
    out
}
