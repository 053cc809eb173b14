//! Dense truncated power series over an exact field.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// `c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})` with `N = order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Series<T> {
    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![T::one()], order)
    }

    pub fn x(order: usize) -> Self {
        Self::new(vec![T::zero(), T::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order()))
    }

    pub fn scale(&self, k: &T) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect() }
    }

    /// Quotient by a series with invertible constant term.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let order = self.order().min(other.order());
        let c0 = other.coeff(0);
        if c0.is_zero() {
            return None;
        }
        let mut q: Vec<T> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeff(n);
            for k in 1..=n {
                acc = acc - other.coeff(k) * q[n - k].clone();
            }
            q.push(acc / c0.clone());
        }
        Some(Series { coeffs: q })
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `sum_k poly[k] s^k`, by Horner's rule.
    pub fn compose_poly(poly: &[T], s: &Self) -> Self {
        let mut acc = Self::zero(s.order());
        for c in poly.iter().rev() {
            acc = &(&acc * s) + &Self::new(vec![c.clone()], s.order());
        }
        acc
    }
}

impl<T: Scalar> Add for &Series<T> {
    type Output = Series<T>;
    fn add(self, other: &Series<T>) -> Series<T> {
        let order = self.order().min(other.order());
        Series::new((0..=order).map(|i| self.coeff(i) + other.coeff(i)).collect(), order)
    }
}

impl<T: Scalar> Sub for &Series<T> {
    type Output = Series<T>;
    fn sub(self, other: &Series<T>) -> Series<T> {
        let order = self.order().min(other.order());
        Series::new((0..=order).map(|i| self.coeff(i) - other.coeff(i)).collect(), order)
    }
}

impl<T: Scalar> Neg for &Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        Series { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<T: Scalar> Mul for &Series<T> {
    type Output = Series<T>;
    fn mul(self, other: &Series<T>) -> Series<T> {
        let order = self.order().min(other.order());
        let mut out = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type S = Series<Ratio<i64>>;

    fn r(p: i64, q: i64) -> Ratio<i64> {
        Ratio::new(p, q)
    }

    #[test]
    fn geometric_series() {
        let one_minus_x = &S::one(5) - &S::x(5);
        let g = S::one(5).checked_div(&one_minus_x).unwrap();
        assert_eq!(g.coefficients(), &[r(1, 1); 6]);
        assert_eq!(&g * &one_minus_x, S::one(5));
    }

    #[test]
    fn truncation_is_consistent() {
        let a = S::new(vec![r(1, 1), r(2, 1), r(3, 1)], 2);
        let b = S::new(vec![r(1, 1), r(1, 1)], 4);
        let p = &a * &b;
        assert_eq!(p.order(), 2);
        assert_eq!(p.coefficients(), &[r(1, 1), r(3, 1), r(5, 1)]);
        assert!(S::x(3).checked_div(&S::x(3)).is_none());
    }

    #[test]
    fn horner_composition() {
        // 1 + 2s + s^2 at s = x is (1 + x)^2
        let s = S::compose_poly(&[r(1, 1), r(2, 1), r(1, 1)], &S::x(3));
        assert_eq!(s, (&S::one(3) + &S::x(3)).pow(2));
    }
}
