//! Brute-force hull conversions for small ad-hoc inputs.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::{affine_rank, Echelon, Facet, Polytope};
use crate::cone::cone_hull;
use crate::error::{Error, Result};
use crate::lattice::{clear_denominators, coordinates, rat_dot_int, to_rational};
use crate::linalg::{Matrix, Vector};
use crate::{IntVector, RatVector, Rational};

pub const DEFAULT_STEP_LIMIT: u128 = 100_000_000;
pub const STEP_LIMIT_ENV: &str = "TORSIG_STEP_LIMIT";

/// The brute-force guard, overridable through `TORSIG_STEP_LIMIT`.
pub fn step_limit() -> u128 {
    std::env::var(STEP_LIMIT_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_STEP_LIMIT)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_budget(n: usize, d: usize, limit: u128) -> Result<()> {
    let steps = binomial(n, d).saturating_mul(n as u128);
    if steps > limit {
        return Err(Error::TooLarge { steps, limit });
    }
    Ok(())
}

impl Polytope {
    /// Convex hull of a point set. Interior and duplicate points are dropped.
    pub fn from_vertices(points: Vec<RatVector>) -> Result<Polytope> {
        Self::from_vertices_with_limit(points, step_limit())
    }

    pub fn from_vertices_with_limit(points: Vec<RatVector>, limit: u128) -> Result<Polytope> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidPolytope("no points".into()));
        };
        let d = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
        let points: Vec<RatVector> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let k = affine_rank(points.iter());
        if k == 0 {
            return Polytope::from_parts(points, vec![]);
        }
        if k == d {
            return full_dim_hull(points, limit);
        }

        // hull inside the affine span, then lift the facet normals back
        let origin = points[0].clone();
        let mut span = Echelon::default();
        for p in &points {
            span.insert(p - &origin);
        }
        let basis: Vec<RatVector> = span.rows.into_iter().map(|(_, r)| r).collect();
        let local = points
            .iter()
            .map(|p| coordinates(&basis, &(p - &origin)).map(|c| c.expect("point lies in its span")))
            .collect::<Result<Vec<_>>>()?;
        let local_hull = full_dim_hull(local, limit)?;
        let b = Matrix::from_rows(d, basis.clone())?;
        let gram_inv = b.mul(&b.transpose())?.inverse()?.expect("basis is independent");
        let bt = b.transpose();
        let vertices: Vec<RatVector> = local_hull
            .vertices()
            .iter()
            .map(|y| {
                let shift = bt.mul_vec(y).expect("dims");
                &origin + &shift
            })
            .collect();
        let facets = local_hull
            .facets()
            .iter()
            .map(|f| {
                let w = gram_inv.mul_vec(&to_rational(&f.normal))?;
                let normal = clear_denominators(&bt.mul_vec(&w)?)?;
                let tight = local_hull.facet_vertices(index_of(&local_hull, f)).ones().next().expect("facet has a vertex");
                let offset = rat_dot_int(&vertices[tight], &normal);
                Ok(Facet::new(normal, offset))
            })
            .collect::<Result<Vec<_>>>()?;
        Polytope::from_parts(vertices, facets)
    }

    /// Intersection of halfspaces `<x, normal> >= offset` in `R^ambient_dim`.
    pub fn from_halfspaces(facets: Vec<Facet>, ambient_dim: usize) -> Result<Polytope> {
        Self::from_halfspaces_with_limit(facets, ambient_dim, step_limit())
    }

    pub fn from_halfspaces_with_limit(facets: Vec<Facet>, ambient_dim: usize, limit: u128) -> Result<Polytope> {
        let d = ambient_dim;
        if let Some(f) = facets.iter().find(|f| f.normal.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: f.normal.dim() });
        }
        let facets: Vec<Facet> = facets
            .iter()
            .map(Facet::normalized)
            .collect::<Result<BTreeSet<_>>>()?
            .into_iter()
            .collect();
        if facets.is_empty() || !cone_hull(&facets.iter().map(|f| f.normal.clone()).collect::<Vec<_>>()).is_whole_space() {
            return Err(Error::Unbounded);
        }
        check_budget(facets.len(), d, limit)?;

        let mut vertices: BTreeSet<RatVector> = BTreeSet::new();
        for subset in (0..facets.len()).combinations(d) {
            let a = Matrix::from_rows(d, subset.iter().map(|&i| to_rational(&facets[i].normal)).collect())?;
            if a.rank() < d {
                continue;
            }
            let b = Vector(subset.iter().map(|&i| facets[i].offset.clone()).collect());
            let Some(x) = a.solve(&b)? else { continue };
            if facets.iter().all(|f| !f.slack(&x).is_negative()) {
                vertices.insert(x);
            }
        }
        if vertices.is_empty() {
            return Err(Error::Empty);
        }
        let vertices: Vec<RatVector> = vertices.into_iter().collect();
        let k = affine_rank(vertices.iter());
        if k < d {
            // degenerate: the facet list does not describe relative facets
            return Polytope::from_vertices_with_limit(vertices, limit);
        }
        let kept: Vec<Facet> = facets
            .into_iter()
            .filter(|f| {
                let on: Vec<&RatVector> = vertices.iter().filter(|v| f.slack(v).is_zero()).collect();
                !on.is_empty() && affine_rank(on.into_iter()) + 1 == d
            })
            .collect();
        Polytope::from_parts(vertices, kept)
    }
}

fn index_of(p: &Polytope, f: &Facet) -> usize {
    p.facets().iter().position(|g| g == f).expect("facet of this polytope")
}

fn full_dim_hull(points: Vec<RatVector>, limit: u128) -> Result<Polytope> {
    let d = points[0].dim();
    let n = points.len();
    check_budget(n, d, limit)?;

    let mut found: BTreeSet<(IntVector, Rational)> = BTreeSet::new();
    for subset in (0..n).combinations(d) {
        let base = &points[subset[0]];
        let rows: Vec<RatVector> = subset[1..].iter().map(|&i| &points[i] - base).collect();
        let ns = Matrix::from_rows(d, rows)?.nullspace();
        if ns.len() != 1 {
            continue;
        }
        let normal = clear_denominators(&ns[0])?;
        let offset = rat_dot_int(base, &normal);
        let (mut pos, mut neg) = (false, false);
        for p in &points {
            let s = rat_dot_int(p, &normal) - &offset;
            pos |= s.is_positive();
            neg |= s.is_negative();
        }
        match (pos, neg) {
            (_, false) => {
                found.insert((normal, offset));
            }
            (false, true) => {
                found.insert((-&normal, -offset));
            }
            _ => {}
        }
    }
    let facets: Vec<Facet> = found.into_iter().map(|(n, c)| Facet::new(n, c)).collect();

    // a point is a vertex iff the normals of the facets through it have full rank
    let vertices: Vec<RatVector> = points
        .into_iter()
        .filter(|p| {
            let mut e = Echelon::default();
            for f in facets.iter().filter(|f| f.slack(p).is_zero()) {
                e.insert(to_rational(&f.normal));
            }
            e.rank() == d
        })
        .collect();
    Polytope::from_parts(vertices, facets)
}

#[cfg(test)]
mod tests {
    use num_rational::Ratio;

    use super::*;
    use crate::lattice::{int_vec, rat_vec};

    fn q(n: i64) -> Rational {
        Ratio::from_integer(n.into())
    }

    #[test]
    fn unit_square_from_vertices() {
        let sq = Polytope::from_vertices(vec![rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[1, 1])]).unwrap();
        assert_eq!(sq.num_facets(), 4);
        assert_eq!(sq.intrinsic_dim(), 2);
    }

    #[test]
    fn triangle_inner_normals() {
        let tri = Polytope::from_vertices(vec![rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 1])]).unwrap();
        let facets: BTreeSet<Facet> = tri.facets().iter().cloned().collect();
        let expected: BTreeSet<Facet> = [
            Facet::new(int_vec(&[1, 0]), q(0)),
            Facet::new(int_vec(&[0, 1]), q(0)),
            Facet::new(int_vec(&[-1, -1]), q(-1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(facets, expected);
    }

    #[test]
    fn cube_barycenter_is_discarded() {
        let mut pts: Vec<RatVector> = (0..8).map(|i| rat_vec(&[i & 1, (i >> 1) & 1, (i >> 2) & 1])).collect();
        pts.push(Vector(vec![Ratio::new(1.into(), 2.into()); 3]));
        let cube = Polytope::from_vertices(pts).unwrap();
        assert_eq!(cube.num_vertices(), 8);
        assert_eq!(cube.num_facets(), 6);
    }

    #[test]
    fn edge_midpoint_is_discarded() {
        let pts = vec![rat_vec(&[0, 0]), rat_vec(&[2, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 2])];
        let tri = Polytope::from_vertices(pts).unwrap();
        assert_eq!(tri.num_vertices(), 3);
    }

    #[test]
    fn square_from_halfspaces() {
        let sq = Polytope::from_halfspaces(
            vec![
                Facet::new(int_vec(&[1, 0]), q(0)),
                Facet::new(int_vec(&[0, 1]), q(0)),
                Facet::new(int_vec(&[-1, 0]), q(-1)),
                Facet::new(int_vec(&[0, -1]), q(-1)),
            ],
            2,
        )
        .unwrap();
        let verts: BTreeSet<_> = sq.vertices().iter().cloned().collect();
        let expected: BTreeSet<_> = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|v| rat_vec(v)).collect();
        assert_eq!(verts, expected);
    }

    #[test]
    fn triangle_from_halfspaces_drops_redundant() {
        let tri = Polytope::from_halfspaces(
            vec![
                Facet::new(int_vec(&[1, 0]), q(0)),
                Facet::new(int_vec(&[0, 1]), q(0)),
                Facet::new(int_vec(&[-1, -1]), q(-1)),
                Facet::new(int_vec(&[-2, -2]), q(-5)),
                Facet::new(int_vec(&[1, 1]), q(0)),
            ],
            2,
        )
        .unwrap();
        assert_eq!(tri.num_vertices(), 3);
        assert_eq!(tri.num_facets(), 3);
    }

    #[test]
    fn halfspace_errors() {
        let quadrant = vec![Facet::new(int_vec(&[1, 0]), q(0)), Facet::new(int_vec(&[0, 1]), q(0))];
        assert_eq!(Polytope::from_halfspaces(quadrant, 2).unwrap_err(), Error::Unbounded);
        let empty = vec![
            Facet::new(int_vec(&[1, 0]), q(1)),
            Facet::new(int_vec(&[0, 1]), q(0)),
            Facet::new(int_vec(&[-1, -1]), q(0)),
        ];
        assert_eq!(Polytope::from_halfspaces(empty, 2).unwrap_err(), Error::Empty);
    }

    #[test]
    fn budget_guard() {
        let pts: Vec<RatVector> = (0..8).map(|i| rat_vec(&[i & 1, (i >> 1) & 1, (i >> 2) & 1])).collect();
        let err = Polytope::from_vertices_with_limit(pts, 100).unwrap_err();
        assert!(matches!(err, Error::TooLarge { steps: 448, limit: 100 }));
    }
}
