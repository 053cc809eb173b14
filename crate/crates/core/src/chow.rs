//! Intersection numbers of torus-invariant divisors on the toric variety of a
//! complete simplicial fan, and the L-class signature built from them.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::invariants::bernoulli_b;
use crate::io::display_string;
use crate::lattice::{rat_dot_int, to_rational};
use crate::linalg::Matrix;
use crate::fan::Fan;
use crate::{RatVector, Rational};

/// `prod_i D_i^{e_i}` with every exponent positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorMonomial {
    exponents: BTreeMap<usize, u32>,
}

impl DivisorMonomial {
    pub fn new(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut exponents = BTreeMap::new();
        for (i, e) in pairs {
            if e > 0 {
                *exponents.entry(i).or_insert(0) += e;
            }
        }
        DivisorMonomial { exponents }
    }

    pub fn power(ray: usize, e: u32) -> Self {
        Self::new([(ray, e)])
    }

    pub fn exponents(&self) -> &BTreeMap<usize, u32> {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.exponents.keys().copied().collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.values().all(|&e| e == 1)
    }

    fn times(&self, ray: usize) -> Self {
        let mut m = self.clone();
        *m.exponents.entry(ray).or_insert(0) += 1;
        m
    }

    fn lowered(&self, ray: usize) -> Self {
        let mut m = self.clone();
        let e = m.exponents.get_mut(&ray).expect("ray in support");
        *e -= 1;
        if *e == 0 {
            m.exponents.remove(&ray);
        }
        m
    }
}

impl std::fmt::Display for DivisorMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts = self
            .exponents
            .iter()
            .map(|(i, e)| if *e == 1 { format!("D{i}") } else { format!("D{i}^{e}") });
        write!(f, "{}", parts.format("*"))
    }
}

impl Serialize for DivisorMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, u32> = self.exponents.iter().map(|(i, e)| (i.to_string(), *e)).collect();
        map.serialize(s)
    }
}

/// How the evaluator picks the repeated divisor to move and the functional
/// `u` that moves it.
#[derive(Debug)]
enum Pivot {
    Canonical,
    Random(Box<StdRng>),
}

/// Moving-lemma evaluator with a memo table shared across monomials.
#[derive(Debug)]
pub struct ChowEvaluator<'a> {
    fan: &'a Fan,
    memo: HashMap<DivisorMonomial, Rational>,
    pivot: Pivot,
}

impl<'a> ChowEvaluator<'a> {
    pub fn new(fan: &'a Fan) -> Self {
        ChowEvaluator { fan, memo: HashMap::new(), pivot: Pivot::Canonical }
    }

    /// Picks the pivot ray uniformly among admissible ones and perturbs `u`
    /// by a random element of its solution space.
    pub fn with_random_pivots(fan: &'a Fan, seed: u64) -> Self {
        ChowEvaluator { fan, memo: HashMap::new(), pivot: Pivot::Random(Box::new(StdRng::seed_from_u64(seed))) }
    }

    pub fn evaluate(&mut self, mono: &DivisorMonomial) -> Result<Rational> {
        let d = self.fan.dim();
        if mono.degree() as usize != d {
            return Err(Error::WrongDegree { degree: mono.degree(), dim: d });
        }
        Ok(self.eval(mono))
    }

    fn eval(&mut self, mono: &DivisorMonomial) -> Rational {
        if let Some(v) = self.memo.get(mono) {
            return v.clone();
        }
        let v = self.reduce(mono);
        self.memo.insert(mono.clone(), v.clone());
        v
    }

    fn reduce(&mut self, mono: &DivisorMonomial) -> Rational {
        let fan = self.fan;
        let support = mono.support();
        if !fan.is_cone(&support) {
            return Rational::zero();
        }
        if mono.is_squarefree() {
            let cone = crate::fan::Cone::new(support);
            return Ratio::new(BigInt::one(), fan.multiplicity(&cone));
        }
        let repeated: Vec<usize> = mono.exponents().iter().filter(|(_, &e)| e >= 2).map(|(&i, _)| i).collect();
        let j0 = match &mut self.pivot {
            Pivot::Canonical => repeated[0],
            Pivot::Random(rng) => *repeated.choose(rng).expect("nonempty"),
        };
        let u = self.functional(j0, &support);
        let rest = mono.lowered(j0);
        let mut total = Rational::zero();
        for j in 0..fan.num_rays() {
            if mono.exponents().contains_key(&j) {
                continue;
            }
            let c = rat_dot_int(&u, fan.ray(j));
            if c.is_zero() {
                continue;
            }
            let mut next_support = support.clone();
            next_support.push(j);
            if !fan.is_cone(&next_support) {
                continue;
            }
            total -= c * self.eval(&rest.times(j));
        }
        total
    }

    /// `u` with `<u, n_j0> = 1` and `<u, n_j> = 0` on the rest of the support.
    fn functional(&mut self, j0: usize, support: &[usize]) -> RatVector {
        let fan = self.fan;
        let d = fan.dim();
        let rows: Vec<RatVector> = support.iter().map(|&j| to_rational(fan.ray(j))).collect();
        let b: RatVector = crate::linalg::Vector(
            support.iter().map(|&j| if j == j0 { Rational::one() } else { Rational::zero() }).collect(),
        );
        let m = Matrix::from_rows(d, rows).expect("dims");
        let mut u = m.solve(&b).expect("dims").expect("support rays are independent");
        if let Pivot::Random(rng) = &mut self.pivot {
            for k in m.nullspace() {
                let t = Ratio::from_integer(BigInt::from(rng.gen_range(-3i64..=3)));
                u = &u + &k.scale(&t);
            }
        }
        u
    }
}

/// Intersection number of a degree-`d` monomial, by the canonical reduction.
pub fn evaluate(fan: &Fan, mono: &DivisorMonomial) -> Result<Rational> {
    ChowEvaluator::new(fan).evaluate(mono)
}

pub fn self_intersection(fan: &Fan, ray: usize) -> Rational {
    evaluate(fan, &DivisorMonomial::power(ray, fan.dim() as u32)).expect("degree matches")
}

/// One summand `b_{n_1} ... b_{n_p} (-1)^p D_{i_1}^{2n_1} ... D_{i_p}^{2n_p}` of
/// the degree-`d` part of the L-class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialTerm {
    pub monomial: DivisorMonomial,
    #[serde(serialize_with = "display_string")]
    pub coefficient: Rational,
    #[serde(serialize_with = "display_string")]
    pub value: Rational,
    /// `(-1)^p value >= 0`
    pub sign_ok: bool,
}

impl MonomialTerm {
    pub fn support_size(&self) -> usize {
        self.monomial.exponents().len()
    }

    pub fn contribution(&self) -> Rational {
        &self.coefficient * &self.value
    }
}

/// Compositions of `total` into `parts` positive integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts as u32 - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Sets of pairwise adjacent rays of size `1..=max`, in increasing index order.
fn cliques(fan: &Fan, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..fan.num_rays()).rev().map(|r| vec![r]).collect();
    while let Some(c) = stack.pop() {
        if c.len() < max {
            let last = *c.last().expect("nonempty");
            for next in (last + 1..fan.num_rays()).rev() {
                if c.iter().all(|&x| fan.adjacent(x, next)) {
                    let mut n = c.clone();
                    n.push(next);
                    stack.push(n);
                }
            }
        }
        out.push(c);
    }
    out
}

/// Every term of the degree-`d` L-class expansion whose support spans a cone.
pub fn monomial_sign_report(fan: &Fan) -> Result<Vec<MonomialTerm>> {
    let d = fan.dim();
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    let half = (d / 2) as u32;
    let mut eval = ChowEvaluator::new(fan);
    let mut terms = Vec::new();
    for set in cliques(fan, d / 2) {
        if !fan.is_cone(&set) {
            continue;
        }
        let p = set.len();
        let sign = if p % 2 == 0 { Rational::one() } else { -Rational::one() };
        for parts in compositions(half, p) {
            let coefficient = parts.iter().fold(sign.clone(), |acc, &n| acc * bernoulli_b(n as usize));
            let monomial = DivisorMonomial::new(set.iter().zip(&parts).map(|(&i, &n)| (i, 2 * n)));
            let value = eval.evaluate(&monomial)?;
            let sign_ok = !(&sign * &value).is_negative();
            terms.push(MonomialTerm { monomial, coefficient, value, sign_ok });
        }
    }
    terms.sort_by(|a, b| a.monomial.cmp(&b.monomial));
    Ok(terms)
}

/// σ of the toric variety, from `(-1)^{d/2} σ = sum of the L-class terms`.
pub fn signature_via_l(fan: &Fan) -> Result<Rational> {
    let terms = monomial_sign_report(fan)?;
    let total: Rational = terms.iter().map(MonomialTerm::contribution).sum();
    Ok(if (fan.dim() / 2).is_multiple_of(2) { total } else { -total })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChowSignature {
    #[serde(serialize_with = "display_string")]
    pub sigma: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<MonomialTerm>>,
}
