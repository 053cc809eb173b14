use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

use crate::error::{Error, Result};
use crate::Rational;

/// An exact ordered field.
///
/// Every geometric predicate in this crate is a sign test, so only exact
/// fields qualify. `Ratio<BigInt>` is the production instance; fixed-width
/// ratios such as `Ratio<i64>` are useful in tests on small inputs.
pub trait Scalar: Clone + Debug + Num + Signed + Ord {}

impl<T> Scalar for Ratio<T> where T: Clone + Debug + Integer + Signed {}

/// Canonical string form: `p/q` in lowest terms, `p` when `q = 1`.
pub fn rational_to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
        let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
        if q == BigInt::from(0) {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        Ok(Ratio::new(p, q))
    } else {
        let p: BigInt = t.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
        Ok(Ratio::from_integer(p))
    }
}

pub fn parse_integer(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

pub fn int_to_rational(n: &BigInt) -> Rational {
    Ratio::from_integer(n.clone())
}
