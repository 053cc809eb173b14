//! Complete simplicial fans in a lattice `N = Z^d`.

mod arrangement;
mod classify;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use arrangement::arrangement_fan;
pub use classify::{classify, classify_ray, Classification};

use crate::error::{Error, Result};
use crate::lattice::{coordinates, det_bareiss, int_dot, lcm_all, primitive, to_rational};
use crate::linalg::Vector;
use crate::polytope::Polytope;
use crate::{IntVector, RatVector};

/// A simplicial cone, identified by the sorted indices of its rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub ray_indices: Vec<usize>,
}

impl Cone {
    pub fn new(mut ray_indices: Vec<usize>) -> Self {
        ray_indices.sort_unstable();
        ray_indices.dedup();
        Cone { ray_indices }
    }

    pub fn len(&self) -> usize {
        self.ray_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ray_indices.is_empty()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.ray_indices.binary_search(&ray).is_ok()
    }
}

/// Local convexity of ray stars, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConvexityClass {
    NotLocallyConvex,
    LocallyConvex,
    LocallyPointedConvex,
    LocallyStronglyConvex,
}

#[derive(Debug, Clone)]
pub struct Fan {
    dim: usize,
    rays: Vec<IntVector>,
    max_cones: Vec<Cone>,
    /// `ray_cones[r]` = max cones containing ray `r`
    ray_cones: Vec<FixedBitSet>,
}

impl Fan {
    /// Validates rays (nonzero, made primitive, pairwise non-parallel) and
    /// max cones (`dim` independent rays each). Completeness is checked
    /// separately by [`Fan::check_complete`].
    pub fn new(dim: usize, rays: Vec<IntVector>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        if dim == 0 {
            return Err(Error::InvalidFan("dimension must be positive".into()));
        }
        let mut prim = Vec::with_capacity(rays.len());
        for r in &rays {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
            }
            prim.push(primitive(r)?);
        }
        let mut seen = HashSet::new();
        for r in &prim {
            if !seen.insert(r.clone()) {
                return Err(Error::InvalidFan(format!("duplicate ray {:?}", r.0)));
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        let mut cone_set = HashSet::new();
        for c in max_cones {
            let cone = Cone::new(c);
            if cone.len() != dim {
                return Err(Error::NotSimplicial(format!("cone {:?} does not have {dim} rays", cone.ray_indices)));
            }
            if let Some(&bad) = cone.ray_indices.iter().find(|&&i| i >= prim.len()) {
                return Err(Error::InvalidFan(format!("ray index {bad} out of range")));
            }
            let rows: Vec<IntVector> = cone.ray_indices.iter().map(|&i| prim[i].clone()).collect();
            if det_bareiss(&rows)?.is_zero() {
                return Err(Error::NotSimplicial(format!("cone {:?} has dependent rays", cone.ray_indices)));
            }
            if !cone_set.insert(cone.clone()) {
                return Err(Error::InvalidFan(format!("duplicate cone {:?}", cone.ray_indices)));
            }
            cones.push(cone);
        }
        let mut ray_cones = vec![FixedBitSet::with_capacity(cones.len()); prim.len()];
        for (ci, c) in cones.iter().enumerate() {
            for &r in &c.ray_indices {
                ray_cones[r].insert(ci);
            }
        }
        if let Some(r) = ray_cones.iter().position(|s| s.is_clear()) {
            return Err(Error::InvalidFan(format!("ray {r} lies in no maximal cone")));
        }
        Ok(Fan { dim, rays: prim, max_cones: cones, ray_cones })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &IntVector {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn cone_rays(&self, cone: &Cone) -> Vec<IntVector> {
        cone.ray_indices.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Max cones containing all of `rays`.
    pub fn max_cones_containing(&self, rays: &[usize]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.max_cones.len());
        acc.insert_range(..);
        for &r in rays {
            acc.intersect_with(&self.ray_cones[r]);
        }
        acc
    }

    /// Whether the rays span a cone of the fan (a face of some max cone).
    pub fn is_cone(&self, rays: &[usize]) -> bool {
        match rays {
            [] => true,
            [r] => *r < self.rays.len(),
            _ => !self.max_cones_containing(rays).is_clear(),
        }
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.ray_cones[a].intersection(&self.ray_cones[b]).next().is_some()
    }

    /// `|det|` of the rays of a max cone, the index `[N : N_σ]`.
    pub fn multiplicity(&self, cone: &Cone) -> BigInt {
        det_bareiss(&self.cone_rays(cone)).expect("square").abs()
    }

    /// Least common multiple of all max-cone multiplicities; 1 iff smooth.
    pub fn m(&self) -> BigInt {
        let dets: Vec<BigInt> = self.max_cones.iter().map(|c| self.multiplicity(c)).collect();
        lcm_all(dets.iter())
    }

    /// Checks that every wall lies in exactly two max cones that sit on
    /// opposite sides of it.
    pub fn check_complete(&self) -> Result<()> {
        if self.dim == 1 {
            let signs: BTreeSet<bool> = self.rays.iter().map(|r| r[0].is_positive()).collect();
            return if self.max_cones.len() == 2 && signs.len() == 2 {
                Ok(())
            } else {
                Err(Error::IncompleteFan("a complete 1-dimensional fan has the two rays +1 and -1".into()))
            };
        }
        let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for c in &self.max_cones {
            for out in &c.ray_indices {
                let wall: Vec<usize> = c.ray_indices.iter().copied().filter(|r| r != out).collect();
                walls.entry(wall).or_default().push(*out);
            }
        }
        for (wall, opposite) in &walls {
            if opposite.len() != 2 {
                return Err(Error::IncompleteFan(format!(
                    "wall {wall:?} lies in {} maximal cones",
                    opposite.len()
                )));
            }
            let normal = self.wall_normal(wall);
            let a = int_dot(&normal, &self.rays[opposite[0]]);
            let b = int_dot(&normal, &self.rays[opposite[1]]);
            if a.signum() * b.signum() != -BigInt::one() {
                return Err(Error::IncompleteFan(format!("the two cones on wall {wall:?} overlap")));
            }
        }
        // the wall condition makes the cones a covering of some degree; a
        // generic interior point of one cone measures that degree
        for t in 1..=16u32 {
            let c0 = &self.max_cones[0];
            let point: RatVector = c0
                .ray_indices
                .iter()
                .enumerate()
                .map(|(k, &r)| to_rational(&self.rays[r]).scale(&Ratio::from_integer(BigInt::from(1 + k as u32 * t))))
                .fold(Vector::zeros(self.dim), |acc, v| &acc + &v);
            let mut degree = 0;
            let mut generic = true;
            for c in &self.max_cones {
                let basis: Vec<RatVector> = c.ray_indices.iter().map(|&r| to_rational(&self.rays[r])).collect();
                let coords = coordinates(&basis, &point)?.expect("max cones span the space");
                if coords.iter().any(|x| x.is_zero()) {
                    generic = false;
                    break;
                }
                if coords.iter().all(|x| x.is_positive()) {
                    degree += 1;
                }
            }
            if generic {
                return if degree == 1 {
                    Ok(())
                } else {
                    Err(Error::IncompleteFan(format!("the maximal cones cover space {degree} times")))
                };
            }
        }
        Err(Error::IncompleteFan("no generic point found to test coverage".into()))
    }

    /// A normal vector to the hyperplane spanned by `dim - 1` independent rays.
    pub(crate) fn wall_normal(&self, wall: &[usize]) -> IntVector {
        let d = self.dim;
        Vector(
            (0..d)
                .map(|k| {
                    let minor: Vec<IntVector> = wall
                        .iter()
                        .map(|&r| Vector(self.rays[r].iter().enumerate().filter(|&(i, _)| i != k).map(|(_, x)| x.clone()).collect()))
                        .collect();
                    let det = det_bareiss(&minor).expect("square minor");
                    if k % 2 == 0 { det } else { -det }
                })
                .collect(),
        )
    }

    /// Max cones containing `ray`.
    pub fn star_max_cones(&self, ray: usize) -> Vec<usize> {
        self.ray_cones[ray].ones().collect()
    }

    /// All nonempty cones lying in a common cone with `ray`.
    pub fn star(&self, ray: usize) -> Vec<Cone> {
        let mut out = BTreeSet::new();
        for ci in self.ray_cones[ray].ones() {
            let rays = &self.max_cones[ci].ray_indices;
            for k in 1..=rays.len() {
                for sub in rays.iter().copied().combinations(k) {
                    out.insert(Cone::new(sub));
                }
            }
        }
        out.into_iter().collect()
    }

    /// Cones of the star that meet `ray` only at the origin.
    pub fn link(&self, ray: usize) -> Vec<Cone> {
        self.star(ray).into_iter().filter(|c| !c.contains(ray)).collect()
    }

    /// Rays appearing in the star of `ray`, including `ray` itself.
    pub fn star_rays(&self, ray: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .ray_cones[ray]
            .ones()
            .flat_map(|ci| self.max_cones[ci].ray_indices.iter().copied())
            .collect();
        set.into_iter().collect()
    }

    pub fn neighbors(&self, ray: usize) -> Vec<usize> {
        self.star_rays(ray).into_iter().filter(|&r| r != ray).collect()
    }

    /// Whether every set of pairwise adjacent rays spans a cone.
    pub fn is_flag(&self) -> bool {
        let n = self.rays.len();
        let nbrs: Vec<FixedBitSet> = (0..n)
            .map(|r| {
                let mut s = FixedBitSet::with_capacity(n);
                for x in self.neighbors(r) {
                    s.insert(x);
                }
                s
            })
            .collect();
        // grow cliques in increasing index order; every clique found must be a cone
        let mut stack: Vec<(Vec<usize>, FixedBitSet)> = (0..n)
            .map(|r| {
                let mut cand = nbrs[r].clone();
                cand.set_range(..r + 1, false);
                (vec![r], cand)
            })
            .collect();
        while let Some((clique, cand)) = stack.pop() {
            if clique.len() >= 3 && !self.is_cone(&clique) {
                return false;
            }
            if clique.len() > self.dim {
                continue;
            }
            for next in cand.ones() {
                let mut c = clique.clone();
                c.push(next);
                let mut nc = cand.clone();
                nc.intersect_with(&nbrs[next]);
                nc.set_range(..next + 1, false);
                stack.push((c, nc));
            }
        }
        true
    }

    /// Product fan in `Z^{d1 + d2}`; rays of `self` come first.
    pub fn product(&self, other: &Fan) -> Result<Fan> {
        let (d1, d2) = (self.dim, other.dim);
        let zeros = |k: usize| std::iter::repeat_n(BigInt::zero(), k);
        let mut rays: Vec<IntVector> =
            self.rays.iter().map(|r| Vector(r.iter().cloned().chain(zeros(d2)).collect())).collect();
        rays.extend(other.rays.iter().map(|r| Vector(zeros(d1).chain(r.iter().cloned()).collect())));
        let off = self.rays.len();
        let mut cones = Vec::new();
        for a in &self.max_cones {
            for b in &other.max_cones {
                cones.push(a.ray_indices.iter().copied().chain(b.ray_indices.iter().map(|i| i + off)).collect());
            }
        }
        Fan::new(d1 + d2, rays, cones)
    }

    /// Image under a lattice automorphism given by an integer matrix acting on columns.
    pub fn transform(&self, a: &[IntVector]) -> Result<Fan> {
        if a.len() != self.dim || det_bareiss(a)?.abs() != BigInt::one() {
            return Err(Error::NotABasis);
        }
        let rays = self
            .rays
            .iter()
            .map(|r| Vector(a.iter().map(|row| int_dot(row, r)).collect()))
            .collect();
        Fan::new(self.dim, rays, self.max_cones.iter().map(|c| c.ray_indices.clone()).collect())
    }
}

/// Normal fan of a full-dimensional simple polytope: rays are the primitive
/// inner facet normals, one max cone per vertex.
pub fn normal_fan(p: &Polytope) -> Result<Fan> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional { intrinsic: p.intrinsic_dim(), ambient: p.ambient_dim() });
    }
    if let Some(v) = p.first_non_simple_vertex() {
        return Err(Error::NotSimple { vertex: v, facets: p.vertex_facets(v).count_ones(..), dim: p.intrinsic_dim() });
    }
    let rays = p.facets().iter().map(|f| f.normal.clone()).collect();
    let cones = (0..p.num_vertices()).map(|v| p.vertex_facets(v).ones().collect()).collect();
    Fan::new(p.ambient_dim(), rays, cones)
}
