//! Face-count calculus, σ, the Bernoulli series and the lower bounds built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::ConvexityClass;
use crate::io::display_string;
use crate::{Rational, RationalSeries};

/// `(f_0, ..., f_d)`: `f_i` is the number of `i`-dimensional faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn new(counts: Vec<u64>) -> Self {
        FVector(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// `f(P, t) = sum f_i t^i`.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, &c| acc * t + BigInt::from(c))
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.eval(&BigInt::from(-1))
    }

    /// f-vector of a product: `f(P x Q, t) = f(P, t) f(Q, t)`.
    pub fn product(&self, other: &FVector) -> FVector {
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FVector(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HVector(Vec<BigInt>);

impl HVector {
    pub fn new(counts: Vec<BigInt>) -> Self {
        HVector(counts)
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.0
    }

    pub fn alternating_sum(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .map(|(i, h)| if i % 2 == 0 { h.clone() } else { -h })
            .sum()
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn q(n: impl Into<BigInt>) -> Rational {
    Ratio::from_integer(n.into())
}

/// Coefficients of `h(t) = f(t - 1)`.
pub fn h_vector(f: &FVector) -> HVector {
    let d = f.counts().len();
    let h = (0..d)
        .map(|j| {
            f.counts()
                .iter()
                .enumerate()
                .skip(j)
                .map(|(i, &fi)| {
                    let term = BigInt::from(fi) * binomial(i as u64, j as u64);
                    if (i - j) % 2 == 0 { term } else { -term }
                })
                .sum()
        })
        .collect();
    HVector(h)
}

/// `σ(P) = f(P, -2)`.
pub fn sigma(f: &FVector) -> BigInt {
    f.eval(&BigInt::from(-2))
}

pub fn dehn_sommerville_ok(h: &HVector) -> bool {
    let c = h.counts();
    c.iter().eq(c.iter().rev())
}

/// `1 - x / tan x` truncated at `x^order`; only even powers are nonzero.
pub fn one_minus_x_cot_x(order: usize) -> RationalSeries {
    // x / tan x = cos x / (sin x / x)
    let mut cos = vec![Rational::zero(); order + 1];
    let mut sinc = vec![Rational::zero(); order + 1];
    for k in (0..=order).step_by(2) {
        let sign = if k % 4 == 0 { 1 } else { -1 };
        cos[k] = Ratio::new(BigInt::from(sign), factorial(k as u64));
        sinc[k] = Ratio::new(BigInt::from(sign), factorial(k as u64 + 1));
    }
    let cos = RationalSeries::new(cos, order);
    let sinc = RationalSeries::new(sinc, order);
    let x_cot_x = cos.checked_div(&sinc).expect("sin x / x has constant term 1");
    &RationalSeries::one(order) - &x_cot_x
}

/// `b_n`, the coefficient of `x^{2n}` in `1 - x / tan x`.
pub fn bernoulli_b(n: usize) -> Rational {
    assert!(n >= 1, "b_n is defined for n >= 1");
    one_minus_x_cot_x(2 * n).coeff(2 * n)
}

/// Bernoulli numbers in the modern convention (`B_1 = -1/2`), from the
/// recurrence `sum_{k <= m} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(count: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(count);
    for m in 0..count {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        let s: Rational = (0..m).map(|k| q(binomial(m as u64 + 1, k as u64)) * &b[k]).sum();
        b.push(-s / q(m as u64 + 1));
    }
    b
}

/// `2^{2n} B_n / (2n)!` with `B_n` in Hirzebruch's convention
/// (`B_1 = 1/6, B_2 = 1/30, ...`), i.e. `|B_{2n}|` in modern indexing.
pub fn b_from_bernoulli(n: usize) -> Rational {
    let modern = bernoulli_numbers(2 * n + 1);
    let bn = modern[2 * n].abs();
    bn * q(BigInt::from(2).pow(2 * n as u32)) / q(factorial(2 * n as u64))
}

/// Which of the three lower bounds a report uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremCase {
    #[serde(rename = "none-applicable")]
    None,
    I,
    Ii,
    Iii,
}

impl TheoremCase {
    /// Weakest fan class under which the bound holds.
    pub fn required_class(self) -> ConvexityClass {
        match self {
            TheoremCase::None => ConvexityClass::NotLocallyConvex,
            TheoremCase::I => ConvexityClass::LocallyConvex,
            TheoremCase::Ii => ConvexityClass::LocallyPointedConvex,
            TheoremCase::Iii => ConvexityClass::LocallyStronglyConvex,
        }
    }

    /// Strongest case licensed by a classification.
    pub fn strongest_for(class: ConvexityClass) -> TheoremCase {
        match class {
            ConvexityClass::NotLocallyConvex => TheoremCase::None,
            ConvexityClass::LocallyConvex => TheoremCase::I,
            ConvexityClass::LocallyPointedConvex => TheoremCase::Ii,
            ConvexityClass::LocallyStronglyConvex => TheoremCase::Iii,
        }
    }

    pub fn licensed_by(self, class: ConvexityClass) -> bool {
        class >= self.required_class()
    }

    pub fn parse(s: &str) -> Result<TheoremCase> {
        match s {
            "i" => Ok(TheoremCase::I),
            "ii" => Ok(TheoremCase::Ii),
            "iii" => Ok(TheoremCase::Iii),
            "none" | "none-applicable" => Ok(TheoremCase::None),
            _ => Err(Error::Parse(format!("unknown case `{s}`, expected i, ii or iii"))),
        }
    }
}

/// Right-hand side of a lower bound for `(-1)^{d/2} σ`.
///
/// Case ii is `f_{d-1} / (3 m^{d-1})`; case iii is the `x^d` coefficient of
/// `sum_p f_{d-p} T^p / m^{d-1}` with `T = 1 - x / tan x`. Case i is 0.
pub fn bound_rhs(f: &FVector, m: &BigInt, case: TheoremCase) -> Result<Rational> {
    let d = f.dim();
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    if d == 0 {
        return Ok(Rational::zero());
    }
    let scale = q(m.pow(d as u32 - 1));
    match case {
        TheoremCase::None | TheoremCase::I => Ok(Rational::zero()),
        TheoremCase::Ii => Ok(q(f.counts()[d - 1]) / (q(3) * scale)),
        TheoremCase::Iii => {
            let t = one_minus_x_cot_x(d);
            // sum_p f_{d-p} t^p
            let poly: Vec<Rational> = (0..=d).map(|p| q(f.counts()[d - p])).collect();
            let s = RationalSeries::compose_poly(&poly, &t);
            Ok(s.coeff(d) / scale)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub theorem_case: TheoremCase,
    /// `(-1)^{d/2} σ`
    #[serde(serialize_with = "display_string")]
    pub lhs: BigInt,
    #[serde(serialize_with = "display_string")]
    pub rhs: Rational,
    pub satisfied: bool,
    pub classification: ConvexityClass,
    #[serde(serialize_with = "display_string")]
    pub m: BigInt,
}

/// Applies the strongest bound the classification licenses, or `forced`
/// when given. A forced case the classification does not license reports
/// `none` with a vacuous right-hand side.
pub fn bound_report(
    f: &FVector,
    m: &BigInt,
    classification: ConvexityClass,
    forced: Option<TheoremCase>,
) -> Result<BoundReport> {
    let d = f.dim();
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    let s = sigma(f);
    let lhs = if (d / 2).is_multiple_of(2) { s } else { -s };
    let wanted = forced.unwrap_or_else(|| TheoremCase::strongest_for(classification));
    let case = if wanted.licensed_by(classification) { wanted } else { TheoremCase::None };
    let rhs = bound_rhs(f, m, case)?;
    let satisfied = case == TheoremCase::None || q(lhs.clone()) >= rhs;
    Ok(BoundReport { theorem_case: case, lhs, rhs, satisfied, classification, m: m.clone() })
}

/// `12 / (3 - 1/m)`: the least vertex count of a polygon whose fan is
/// locally pointed convex with singularity index `m`.
pub fn polygon_inequality_rhs(m: &BigInt) -> Rational {
    q(12) / (q(3) - Ratio::new(BigInt::one(), m.clone()))
}

pub fn kappa(sigma: &BigInt, d: usize) -> Rational {
    Ratio::new(sigma.clone(), BigInt::from(2).pow(d as u32))
}

/// Euler characteristic of the mirror manifold, `2^{n-d} σ`.
pub fn mirror_euler(sigma: &BigInt, n_facets: usize, d: usize) -> BigInt {
    sigma * BigInt::from(2).pow((n_facets - d) as u32)
}

pub fn corner_euler(sigmas: &[BigInt], d: usize) -> Rational {
    Ratio::new(sigmas.iter().sum(), BigInt::from(2).pow(d as u32))
}

/// `n! [x^n] tanh x`, from the exact quotient `sinh / cosh`.
pub fn tanh_sigma(n: usize) -> BigInt {
    let mut sinh = vec![Rational::zero(); n + 1];
    let mut cosh = vec![Rational::zero(); n + 1];
    for k in 0..=n {
        let c = Ratio::new(BigInt::one(), factorial(k as u64));
        if k % 2 == 0 {
            cosh[k] = c;
        } else {
            sinh[k] = c;
        }
    }
    let tanh = RationalSeries::new(sinh, n)
        .checked_div(&RationalSeries::new(cosh, n))
        .expect("cosh has constant term 1");
    let v = tanh.coeff(n) * q(factorial(n as u64));
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// `C_k = binom(2k - 2, k - 1) / k`, so `C_1 = 1, C_2 = 1, C_3 = 2`.
pub fn catalan(k: u64) -> BigInt {
    assert!(k >= 1);
    binomial(2 * k - 2, k - 1).div_floor(&BigInt::from(k))
}

/// 0 for even `n`, `(-1)^{(n-3)/2} C_{(n-1)/2}` for odd `n`.
pub fn associahedron_sigma(n: usize) -> BigInt {
    assert!(n >= 3);
    if n.is_multiple_of(2) {
        return BigInt::zero();
    }
    let c = catalan((n as u64 - 1) / 2);
    if ((n - 3) / 2).is_multiple_of(2) { c } else { -c }
}
