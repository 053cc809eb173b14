//! Integer-lattice helpers: primitive generators, fraction-free determinants,
//! saturated sublattice bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::{IntVector, RatVector, Rational};

/// `v / gcd(v)`: the first nonzero lattice point on the ray through `v`.
pub fn primitive<I: Integer + Signed + Clone>(v: &Vector<I>) -> Result<Vector<I>> {
    let g = v.iter().fold(I::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(Vector(v.iter().map(|x| x.clone() / g.clone()).collect()))
}

/// Bareiss fraction-free elimination; every intermediate stays integral.
pub fn det_bareiss<I: Integer + Signed + Clone>(rows: &[Vector<I>]) -> Result<I> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.dim() != n) {
        return Err(Error::NotSquare { rows: n, cols: bad.dim() });
    }
    if n == 0 {
        return Ok(I::one());
    }
    let mut a: Vec<Vec<I>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut sign = I::one();
    let mut prev = I::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(I::zero());
            };
            a.swap(k, p);
            sign = I::zero() - sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * a[n - 1][n - 1].clone())
}

pub fn lcm_all<'a, I: Integer + Clone + 'a>(xs: impl IntoIterator<Item = &'a I>) -> I {
    xs.into_iter().fold(I::one(), |acc, x| acc.lcm(x))
}

pub fn to_rational(v: &IntVector) -> RatVector {
    Vector(v.iter().map(|x| Ratio::from_integer(x.clone())).collect())
}

/// Smallest positive multiple of a rational vector that is integral, made primitive.
pub fn clear_denominators(v: &RatVector) -> Result<IntVector> {
    let l: BigInt = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = Vector(v.iter().map(|x| (x * Ratio::from_integer(l.clone())).to_integer()).collect());
    primitive(&ints)
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Basis of the integer kernel of an integer matrix, by unimodular column operations.
pub fn integer_kernel(a: &[IntVector], ncols: usize) -> Vec<IntVector> {
    let mut w: Vec<Vec<BigInt>> = a.iter().map(|r| r.0.clone()).collect();
    // u is stored column-major: u[j] is column j of the transform
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| (0..ncols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut col_op = |w: &mut Vec<Vec<BigInt>>, c: usize, j: usize, m: [[BigInt; 2]; 2]| {
        // (col_c, col_j) <- (m00 col_c + m01 col_j, m10 col_c + m11 col_j)
        for row in w.iter_mut() {
            let (x, y) = (row[c].clone(), row[j].clone());
            row[c] = &m[0][0] * &x + &m[0][1] * &y;
            row[j] = &m[1][0] * &x + &m[1][1] * &y;
        }
        for i in 0..ncols {
            let (x, y) = (u[c][i].clone(), u[j][i].clone());
            u[c][i] = &m[0][0] * &x + &m[0][1] * &y;
            u[j][i] = &m[1][0] * &x + &m[1][1] * &y;
        }
    };
    let mut c = 0;
    for i in 0..w.len() {
        if c == ncols {
            break;
        }
        for j in c + 1..ncols {
            if w[i][j].is_zero() {
                continue;
            }
            let (x, y) = (w[i][c].clone(), w[i][j].clone());
            let (g, s, t) = ext_gcd(&x, &y);
            let m = [[s, t], [-(&y / &g), &x / &g]];
            col_op(&mut w, c, j, m);
        }
        if !w[i][c].is_zero() {
            c += 1;
        }
    }
    (c..ncols).map(|j| Vector(u[j].clone())).collect()
}

/// A basis of `span(directions) ∩ Z^n`, the saturated lattice of the direction space.
pub fn saturated_basis(directions: &[RatVector], n: usize) -> Result<Vec<IntVector>> {
    let span = Matrix::from_rows(n, directions.to_vec())?;
    let complement = span.nullspace();
    let constraints: Vec<IntVector> = complement
        .iter()
        .map(clear_denominators)
        .collect::<Result<_>>()?;
    Ok(integer_kernel(&constraints, n))
}

/// Coordinates of `v` in the given (linearly independent) basis, if `v` lies in its span.
pub fn coordinates(basis: &[RatVector], v: &RatVector) -> Result<Option<RatVector>> {
    let cols = Matrix::from_rows(v.dim(), basis.to_vec())?.transpose();
    cols.solve(v)
}

pub fn int_dot(a: &IntVector, b: &IntVector) -> BigInt {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

pub fn rat_dot_int(a: &RatVector, b: &IntVector) -> Rational {
    a.iter()
        .zip(b.iter())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * Ratio::from_integer(y.clone()))
}

pub fn int_vec(xs: &[i64]) -> IntVector {
    Vector(xs.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn rat_vec(xs: &[i64]) -> RatVector {
    Vector(xs.iter().map(|&x| Ratio::from_integer(BigInt::from(x))).collect())
}
