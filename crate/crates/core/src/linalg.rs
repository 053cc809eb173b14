//! Dense exact linear algebra over any [`Scalar`] field.

use std::ops::{Add, Index, IndexMut, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<T>(pub Vec<T>);

impl<T> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Vector(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }
}

impl<T: Scalar> Vector<T> {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![T::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = T::one();
        v
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Vector(self.0.iter().map(|x| x.clone() * k.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vector<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T: Scalar> Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, other: &Vector<T>) -> Vector<T> {
        assert_eq!(self.dim(), other.dim(), "vector dimensions differ");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
}

impl<T: Scalar> Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, other: &Vector<T>) -> Vector<T> {
        assert_eq!(self.dim(), other.dim(), "vector dimensions differ");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }
}

impl<T: Scalar> Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }
}

/// Row-major matrix; `ncols` is kept so that 0-row matrices still know their width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    ncols: usize,
    rows: Vec<Vector<T>>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(ncols: usize, rows: Vec<Vector<T>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != ncols) {
            return Err(Error::DimensionMismatch { expected: ncols, found: bad.dim() });
        }
        Ok(Matrix { ncols, rows })
    }

    /// Panics on ragged input; intended for literals in tests and generators.
    pub fn from_vecs(rows: Vec<Vec<T>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        Self::from_rows(ncols, rows.into_iter().map(Vector).collect()).expect("ragged matrix")
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { ncols, rows: vec![Vector::zeros(ncols); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { ncols: n, rows: (0..n).map(|i| Vector::unit(n, i)).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vector<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Vector<T> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols)
            .map(|j| Vector(self.rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        Matrix { ncols: self.nrows(), rows }
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Result<Vector<T>> {
        if v.dim() != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: v.dim() });
        }
        Ok(Vector(self.rows.iter().map(|r| r.dot(v)).collect()))
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if other.nrows() != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: other.nrows() });
        }
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| Vector(t.rows.iter().map(|c| r.dot(c)).collect()))
            .collect();
        Ok(Matrix { ncols: other.ncols, rows })
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut a: Vec<Vec<T>> = self.rows.iter().map(|r| r.0.clone()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = T::one() / a[r][c].clone();
            for x in a[r].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..self.ncols {
                        let delta = f.clone() * a[r][j].clone();
                        a[i][j] = a[i][j].clone() - delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rows = a.into_iter().map(Vector).collect();
        (Matrix { ncols: self.ncols, rows }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact determinant by Gaussian elimination with row swaps.
    pub fn determinant(&self) -> Result<T> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(Error::NotSquare { rows: n, cols: self.ncols });
        }
        let mut a: Vec<Vec<T>> = self.rows.iter().map(|r| r.0.clone()).collect();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(T::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det = det * pivot.clone();
            for i in (c + 1)..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone() / pivot.clone();
                for j in c..n {
                    let delta = f.clone() * a[c][j].clone();
                    a[i][j] = a[i][j].clone() - delta;
                }
            }
        }
        Ok(det)
    }

    /// One solution of `self * x = b`, free variables set to zero; `None` when inconsistent.
    pub fn solve(&self, b: &Vector<T>) -> Result<Option<Vector<T>>> {
        if b.dim() != self.nrows() {
            return Err(Error::DimensionMismatch { expected: self.nrows(), found: b.dim() });
        }
        let augmented = Matrix {
            ncols: self.ncols + 1,
            rows: self
                .rows
                .iter()
                .zip(b.iter())
                .map(|(r, bi)| {
                    let mut row = r.0.clone();
                    row.push(bi.clone());
                    Vector(row)
                })
                .collect(),
        };
        let (red, pivots) = augmented.rref();
        if pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = Vector::zeros(self.ncols);
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = red.rows[i][self.ncols].clone();
        }
        Ok(Some(x))
    }

    /// A basis of the kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vector<T>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Vector::zeros(self.ncols);
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -red.rows[i][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Option<Matrix<T>>> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(Error::NotSquare { rows: n, cols: self.ncols });
        }
        let augmented = Matrix {
            ncols: 2 * n,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut row = r.0.clone();
                    row.extend(Vector::<T>::unit(n, i).0);
                    Vector(row)
                })
                .collect(),
        };
        let (red, pivots) = augmented.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        let rows = red.rows.into_iter().map(|r| Vector(r.0[n..].to_vec())).collect();
        Ok(Some(Matrix { ncols: n, rows }))
    }
}

/// Dual basis under the standard inner product: `<b_i, dual_j> = delta_ij`.
///
/// For linearly independent vectors that do not span the ambient space the
/// dual is taken inside their span, i.e. `dual = (B B^T)^{-1} B`.
pub fn dual_basis<T: Scalar>(basis: &[Vector<T>]) -> Result<Vec<Vector<T>>> {
    let Some(first) = basis.first() else {
        return Err(Error::NotABasis);
    };
    let b = Matrix::from_rows(first.dim(), basis.to_vec())?;
    let gram = b.mul(&b.transpose())?;
    let inv = gram.inverse()?.ok_or(Error::NotABasis)?;
    Ok(inv.mul(&b)?.rows)
}
