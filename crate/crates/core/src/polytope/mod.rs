//! Rational polytopes with explicit vertex/facet incidence.

mod faces;
mod hull;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub use faces::{AngleClass, Face};
pub use hull::{step_limit, DEFAULT_STEP_LIMIT, STEP_LIMIT_ENV};

use crate::error::{Error, Result};
use crate::lattice::{clear_denominators, coordinates, primitive, rat_dot_int, saturated_basis, to_rational};
use crate::linalg::{Matrix, Vector};
use crate::{IntVector, RatVector, Rational};

/// An inequality `<x, normal> >= offset` whose boundary meets the polytope in a facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: IntVector,
    pub offset: Rational,
}

impl Facet {
    pub fn new(normal: IntVector, offset: Rational) -> Self {
        Facet { normal, offset }
    }

    /// Divides normal and offset by the gcd of the normal.
    pub fn normalized(&self) -> Result<Facet> {
        let p = primitive(&self.normal)?;
        let k = self
            .normal
            .iter()
            .zip(p.iter())
            .find(|(_, b)| !b.is_zero())
            .map(|(a, b)| a / b)
            .expect("nonzero normal");
        Ok(Facet { normal: p, offset: &self.offset / Ratio::from_integer(k) })
    }

    pub fn slack(&self, x: &RatVector) -> Rational {
        rat_dot_int(x, &self.normal) - &self.offset
    }
}

#[derive(Debug, Clone)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<RatVector>,
    facets: Vec<Facet>,
    /// `vertex_facets[v]` = facets through vertex `v`
    vertex_facets: Vec<FixedBitSet>,
    /// `facet_vertices[f]` = vertices on facet `f`
    facet_vertices: Vec<FixedBitSet>,
    intrinsic_dim: usize,
}

impl Polytope {
    /// Assembles a polytope from vertices and facets that are already known,
    /// recomputing and validating the incidence.
    ///
    /// Every vertex must satisfy every inequality, and every facet must touch
    /// an affinely `(dim - 1)`-dimensional set of vertices.
    pub fn from_parts(vertices: Vec<RatVector>, facets: Vec<Facet>) -> Result<Polytope> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidPolytope("no vertices".into()));
        };
        let ambient_dim = first.dim();
        if let Some(v) = vertices.iter().find(|v| v.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.dim() });
        }
        if let Some(f) = facets.iter().find(|f| f.normal.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: f.normal.dim() });
        }
        let facets = facets.iter().map(Facet::normalized).collect::<Result<Vec<_>>>()?;
        let intrinsic_dim = affine_rank(vertices.iter());
        let n = vertices.len();
        let m = facets.len();
        let mut vertex_facets = vec![FixedBitSet::with_capacity(m); n];
        let mut facet_vertices = vec![FixedBitSet::with_capacity(n); m];
        for (fi, f) in facets.iter().enumerate() {
            for (vi, v) in vertices.iter().enumerate() {
                let s = f.slack(v);
                if s.is_negative() {
                    return Err(Error::InvalidPolytope(format!("vertex {vi} violates facet {fi}")));
                }
                if s.is_zero() {
                    vertex_facets[vi].insert(fi);
                    facet_vertices[fi].insert(vi);
                }
            }
        }
        if intrinsic_dim > 0 {
            for (fi, on) in facet_vertices.iter().enumerate() {
                let r = affine_rank(on.ones().map(|v| &vertices[v]));
                if on.count_ones(..) == 0 || r + 1 != intrinsic_dim {
                    return Err(Error::InvalidPolytope(format!("facet {fi} does not support a facet")));
                }
            }
        }
        Ok(Polytope { ambient_dim, vertices, facets, vertex_facets, facet_vertices, intrinsic_dim })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn intrinsic_dim(&self) -> usize {
        self.intrinsic_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.intrinsic_dim == self.ambient_dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn vertex_facets(&self, v: usize) -> &FixedBitSet {
        &self.vertex_facets[v]
    }

    pub fn facet_vertices(&self, f: usize) -> &FixedBitSet {
        &self.facet_vertices[f]
    }

    pub fn incident(&self, v: usize, f: usize) -> bool {
        self.vertex_facets[v].contains(f)
    }

    /// Every vertex lies on exactly `intrinsic_dim` facets.
    pub fn is_simple(&self) -> bool {
        self.vertex_facets.iter().all(|s| s.count_ones(..) == self.intrinsic_dim)
    }

    pub fn first_non_simple_vertex(&self) -> Option<usize> {
        (0..self.num_vertices()).find(|&v| self.vertex_facets[v].count_ones(..) != self.intrinsic_dim)
    }

    /// Rewrites the polytope in coordinates of its own affine hull.
    ///
    /// The new lattice is the saturation of the direction space; facet normals
    /// are restricted to it, so lattice invariants (cone indices) survive.
    /// Returns the basis of that saturated lattice. Full-dimensional inputs are
    /// returned unchanged with the standard basis.
    pub fn project_full_dim(&self) -> Result<(Polytope, Vec<IntVector>)> {
        let d = self.ambient_dim;
        if self.is_full_dimensional() {
            let basis = (0..d).map(|i| Vector::unit_int(d, i)).collect();
            return Ok((self.clone(), basis));
        }
        let origin = &self.vertices[0];
        let directions: Vec<RatVector> = self.vertices.iter().map(|v| v - origin).collect();
        let basis = saturated_basis(&directions, d)?;
        let rat_basis: Vec<RatVector> = basis.iter().map(to_rational).collect();
        let vertices = directions
            .iter()
            .map(|x| {
                coordinates(&rat_basis, x)?
                    .ok_or_else(|| Error::InvalidPolytope("vertex outside its affine hull".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let restricted = Vector(basis.iter().map(|b| crate::lattice::int_dot(&f.normal, b)).collect());
                Facet::new(restricted, &f.offset - rat_dot_int(origin, &f.normal)).normalized()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Polytope::from_parts(vertices, facets)?, basis))
    }

    /// Cartesian product; facets are the pulled-back facets of each factor.
    pub fn product(&self, other: &Polytope) -> Result<Polytope> {
        let (d1, d2) = (self.ambient_dim, other.ambient_dim);
        let mut vertices = Vec::with_capacity(self.num_vertices() * other.num_vertices());
        for p in &self.vertices {
            for q in &other.vertices {
                let mut c = p.0.clone();
                c.extend(q.0.iter().cloned());
                vertices.push(Vector(c));
            }
        }
        let zeros = |k: usize| std::iter::repeat_n(num_bigint::BigInt::zero(), k);
        let mut facets: Vec<Facet> = self
            .facets
            .iter()
            .map(|f| Facet::new(Vector(f.normal.iter().cloned().chain(zeros(d2)).collect()), f.offset.clone()))
            .collect();
        facets.extend(other.facets.iter().map(|f| {
            Facet::new(Vector(zeros(d1).chain(f.normal.iter().cloned()).collect()), f.offset.clone())
        }));
        Polytope::from_parts(vertices, facets)
    }

    /// Applies `x -> A x` to a full-dimensional polytope, with `A` unimodular.
    /// Inner normals transform by the inverse transpose.
    pub fn transform_unimodular(&self, a: &Matrix<Rational>) -> Result<Polytope> {
        let inv_t = a
            .inverse()?
            .ok_or(Error::NotABasis)?
            .transpose();
        let vertices = self.vertices.iter().map(|v| a.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let n = inv_t.mul_vec(&to_rational(&f.normal))?;
                Facet::new(clear_denominators(&n)?, f.offset.clone()).normalized_against(&n)
            })
            .collect::<Result<Vec<_>>>()?;
        Polytope::from_parts(vertices, facets)
    }
}

impl Facet {
    /// Rescales the offset after the normal was replaced by a positive
    /// multiple of `original`.
    fn normalized_against(self, original: &RatVector) -> Result<Facet> {
        let (i, x) = original
            .iter()
            .enumerate()
            .find(|(_, x)| !x.is_zero())
            .ok_or(Error::ZeroVector)?;
        let k = Ratio::from_integer(self.normal[i].clone()) / x;
        Ok(Facet { offset: self.offset * k, normal: self.normal })
    }
}

impl Vector<num_bigint::BigInt> {
    pub fn unit_int(dim: usize, i: usize) -> IntVector {
        Vector((0..dim).map(|j| num_bigint::BigInt::from((i == j) as i32)).collect())
    }
}

/// Incremental row echelon basis used for affine and linear ranks.
#[derive(Debug, Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, RatVector)>,
}

impl Echelon {
    /// Reduces `v` against the basis; returns true when it was independent.
    pub(crate) fn insert(&mut self, mut v: RatVector) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = &v[*p] / &row[*p];
                v = &v - &row.scale(&f);
            }
        }
        match (0..v.dim()).find(|&i| !v[i].is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Dimension of the affine hull of a point set (0 for a single point; 0 for none).
pub fn affine_rank<'a>(points: impl Iterator<Item = &'a RatVector>) -> usize {
    let mut points = points;
    let Some(origin) = points.next() else {
        return 0;
    };
    let dim = origin.dim();
    let mut e = Echelon::default();
    for p in points {
        e.insert(p - origin);
        if e.rank() == dim {
            break;
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int_vec, rat_vec};

    fn q(n: i64) -> Rational {
        Ratio::from_integer(n.into())
    }

    fn square() -> Polytope {
        Polytope::from_parts(
            vec![rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[1, 1]), rat_vec(&[0, 1])],
            vec![
                Facet::new(int_vec(&[1, 0]), q(0)),
                Facet::new(int_vec(&[0, 1]), q(0)),
                Facet::new(int_vec(&[-1, 0]), q(-1)),
                Facet::new(int_vec(&[0, -1]), q(-1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn from_parts_rejects_bad_facets() {
        let verts = vec![rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 1])];
        let violated = Polytope::from_parts(verts.clone(), vec![Facet::new(int_vec(&[1, 0]), q(1))]);
        assert!(matches!(violated, Err(Error::InvalidPolytope(_))));
        // x + y >= -1 touches nothing
        let loose = Polytope::from_parts(verts, vec![Facet::new(int_vec(&[1, 1]), q(-1))]);
        assert!(matches!(loose, Err(Error::InvalidPolytope(_))));
    }

    #[test]
    fn normalization_divides_offsets() {
        let f = Facet::new(int_vec(&[-2, -2]), q(-2)).normalized().unwrap();
        assert_eq!(f, Facet::new(int_vec(&[-1, -1]), q(-1)));
    }

    #[test]
    fn square_is_simple_and_incident() {
        let s = square();
        assert!(s.is_simple());
        assert!(s.incident(0, 0) && s.incident(0, 1));
        assert!(!s.incident(0, 2));
    }

    #[test]
    fn project_segment() {
        let seg = Polytope::from_vertices(vec![rat_vec(&[0, 0]), rat_vec(&[1, 1])]).unwrap();
        assert_eq!(seg.intrinsic_dim(), 1);
        let (p, basis) = seg.project_full_dim().unwrap();
        assert_eq!(p.ambient_dim(), 1);
        assert_eq!(basis.len(), 1);
        let b: Vec<_> = basis[0].iter().map(|x| x.abs()).collect();
        assert_eq!(b, vec![1.into(), 1.into()]);
        let mut coords: Vec<_> = p.vertices().iter().map(|v| v[0].abs()).collect();
        coords.sort();
        assert_eq!(coords, vec![q(0), q(1)]);
    }

    #[test]
    fn project_full_dim_is_identity_on_full_dim() {
        let s = square();
        let (p, basis) = s.project_full_dim().unwrap();
        assert_eq!(p.vertices(), s.vertices());
        assert_eq!(basis, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);
    }

    #[test]
    fn project_hexagon_keeps_combinatorics() {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let hex = Polytope::from_vertices(perms.iter().map(|p| rat_vec(p)).collect()).unwrap();
        assert_eq!(hex.intrinsic_dim(), 2);
        assert_eq!(hex.num_facets(), 6);
        let (flat, basis) = hex.project_full_dim().unwrap();
        assert_eq!(flat.ambient_dim(), 2);
        assert_eq!(flat.num_vertices(), 6);
        assert_eq!(flat.num_facets(), 6);
        assert_eq!(basis.len(), 2);
        assert_eq!(flat.f_vector().counts(), hex.f_vector().counts());
    }

    #[test]
    fn square_times_segment_is_a_cube() {
        let seg = Polytope::from_vertices(vec![rat_vec(&[0]), rat_vec(&[1])]).unwrap();
        let cube = square().product(&seg).unwrap();
        assert_eq!(cube.f_vector().counts(), &[8, 12, 6, 1]);
        assert!(cube.is_simple());
    }

    #[test]
    fn unimodular_shear_preserves_validity() {
        let shear = Matrix::from_vecs(vec![vec![q(1), q(1)], vec![q(0), q(1)]]);
        let t = square().transform_unimodular(&shear).unwrap();
        assert_eq!(t.num_facets(), 4);
        assert!(t.is_simple());
    }
}
