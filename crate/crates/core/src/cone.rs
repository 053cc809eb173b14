//! Polyhedral cones: H-descriptions of positive hulls and a small
//! double-description routine for intersections with simplicial cones.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::{clear_denominators, det_bareiss, int_dot, primitive, to_rational};
use crate::linalg::{Matrix, Vector};
use crate::IntVector;

/// `{ x : <x, n> >= 0 for all n in facet_normals }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeH {
    pub dim: usize,
    pub facet_normals: Vec<IntVector>,
    pub lineality_basis: Vec<IntVector>,
}

impl ConeH {
    pub fn is_whole_space(&self) -> bool {
        self.facet_normals.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_basis.is_empty()
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.facet_normals.iter().all(|n| !int_dot(n, x).is_negative())
    }
}

/// Normal of the hyperplane through `d - 1` vectors in `Z^d` via signed
/// maximal minors; zero when the vectors are dependent.
fn cofactor_normal(vectors: &[&IntVector], d: usize) -> IntVector {
    Vector(
        (0..d)
            .map(|k| {
                let minor: Vec<IntVector> = vectors
                    .iter()
                    .map(|v| Vector(v.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, x)| x.clone()).collect()))
                    .collect();
                let det = det_bareiss(&minor).expect("square minor");
                if (d - 1 + k).is_multiple_of(2) { det } else { -det }
            })
            .collect(),
    )
}

/// Facets of the positive hull of `rays` by brute force over hyperplanes
/// spanned by rank-minus-one subsets.
pub fn cone_hull(rays: &[IntVector]) -> ConeH {
    let d = rays.first().map_or(0, |r| r.dim());
    let rat_rays: Vec<_> = rays.iter().map(to_rational).collect();
    let span = Matrix::from_rows(d, rat_rays).expect("rays share a dimension");
    let rank = span.rank();
    let complement: Vec<IntVector> = span
        .nullspace()
        .iter()
        .map(|v| clear_denominators(v).expect("nonzero kernel vector"))
        .collect();

    let mut normals: BTreeSet<IntVector> = BTreeSet::new();
    for w in &complement {
        normals.insert(w.clone());
        normals.insert(-w);
    }

    if rank > 0 {
        for subset in (0..rays.len()).combinations(rank - 1) {
            let candidate = if complement.is_empty() {
                let vs: Vec<&IntVector> = subset.iter().map(|&i| &rays[i]).collect();
                let n = cofactor_normal(&vs, d);
                if n.is_zero() {
                    continue;
                }
                primitive(&n).expect("nonzero")
            } else {
                let mut rows: Vec<_> = subset.iter().map(|&i| to_rational(&rays[i])).collect();
                rows.extend(complement.iter().map(to_rational));
                let ns = Matrix::from_rows(d, rows).expect("dims").nullspace();
                if ns.len() != 1 {
                    continue;
                }
                clear_denominators(&ns[0]).expect("nonzero")
            };
            let (mut pos, mut neg) = (false, false);
            for r in rays {
                let s = int_dot(&candidate, r);
                pos |= s.is_positive();
                neg |= s.is_negative();
                if pos && neg {
                    break;
                }
            }
            match (pos, neg) {
                (true, false) => {
                    normals.insert(candidate);
                }
                (false, true) => {
                    normals.insert(-&candidate);
                }
                _ => {}
            }
        }
    }

    let facet_normals: Vec<IntVector> = normals.into_iter().collect();
    let normal_matrix = Matrix::from_rows(d, facet_normals.iter().map(to_rational).collect()).expect("dims");
    let lineality_basis = normal_matrix
        .nullspace()
        .iter()
        .map(|v| clear_denominators(v).expect("nonzero kernel vector"))
        .collect();
    ConeH { dim: d, facet_normals, lineality_basis }
}

/// Extreme rays of `cone(generators) ∩ { x : <a, x> >= 0 for a in constraints }`
/// where `generators` are linearly independent and span the space.
pub fn simplicial_intersection_rays(generators: &[IntVector], constraints: &[IntVector]) -> Vec<IntVector> {
    let d = generators.len();
    let total = d + constraints.len();
    // the simplicial cone's own facets are implicit constraints 0..d: generator i
    // is tight on every facet except the one opposite to it
    let mut rays: Vec<(IntVector, FixedBitSet)> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut z = FixedBitSet::with_capacity(total);
            z.insert_range(0..d);
            z.set(i, false);
            (g.clone(), z)
        })
        .collect();

    for (k, a) in constraints.iter().enumerate() {
        let idx = d + k;
        let values: Vec<BigInt> = rays.iter().map(|(r, _)| int_dot(a, r)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for ((_, z), v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    z.insert(idx);
                }
            }
            continue;
        }
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut next: Vec<(IntVector, FixedBitSet)> = Vec::new();
        for &p in &plus {
            for &m in &minus {
                let common = &rays[p].1 & &rays[m].1;
                if common.count_ones(..) + 2 < d {
                    continue;
                }
                let blocked = (0..rays.len()).any(|o| o != p && o != m && common.is_subset(&rays[o].1));
                if blocked {
                    continue;
                }
                let (vp, vm) = (&values[p], &values[m]);
                let combo = &rays[m].0.scale_int(vp) - &rays[p].0.scale_int(vm);
                let mut z = common;
                z.insert(idx);
                next.push((primitive(&combo).expect("positive combination is nonzero"), z));
            }
        }
        for (i, (r, mut z)) in rays.into_iter().enumerate() {
            if values[i].is_positive() {
                next.push((r, z));
            } else if values[i].is_zero() {
                z.insert(idx);
                next.push((r, z));
            }
        }
        rays = next;
    }
    rays.into_iter().map(|(r, _)| r).collect()
}

/// Whether `cone(generators) ∩ hull` has nonempty interior.
pub fn intersection_is_full_dim(generators: &[IntVector], hull: &ConeH) -> bool {
    let d = generators.len();
    if hull.is_whole_space() {
        return true;
    }
    if generators.iter().all(|g| hull.contains(g)) {
        return true;
    }
    // a normal that is nonpositive on every generator pins the intersection
    // inside its hyperplane
    if hull
        .facet_normals
        .iter()
        .any(|n| generators.iter().all(|g| !int_dot(n, g).is_positive()))
    {
        return false;
    }
    let rays = simplicial_intersection_rays(generators, &hull.facet_normals);
    if rays.len() < d {
        return false;
    }
    let m = Matrix::from_rows(d, rays.iter().map(to_rational).collect()).expect("dims");
    m.rank() == d
}

impl Vector<BigInt> {
    pub fn scale_int(&self, k: &BigInt) -> IntVector {
        Vector(self.iter().map(|x| x * k).collect())
    }
}

impl std::ops::Sub for &Vector<BigInt> {
    type Output = Vector<BigInt>;
    fn sub(self, other: &Vector<BigInt>) -> Vector<BigInt> {
        Vector(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }
}

impl std::ops::Neg for &Vector<BigInt> {
    type Output = Vector<BigInt>;
    fn neg(self) -> Vector<BigInt> {
        Vector(self.iter().map(|a| -a).collect())
    }
}

impl Vector<BigInt> {
    pub fn is_zero(&self) -> bool {
        self.iter().all(Zero::is_zero)
    }
}
