use num_traits::Zero;

use super::{ConvexityClass, Fan};
use crate::cone::{cone_hull, intersection_is_full_dim, ConeH};
use crate::error::Result;
use crate::lattice::int_dot;
use crate::IntVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub per_ray: Vec<ConvexityClass>,
    pub overall: ConvexityClass,
}

/// Classifies every ray star of a complete simplicial fan; the overall
/// class is the weakest ray class.
pub fn classify(fan: &Fan) -> Result<Classification> {
    fan.check_complete()?;
    let per_ray: Vec<ConvexityClass> = (0..fan.num_rays()).map(|r| classify_ray(fan, r)).collect();
    let overall = per_ray.iter().copied().min().unwrap_or(ConvexityClass::LocallyStronglyConvex);
    Ok(Classification { per_ray, overall })
}

/// Convexity class of the support of one ray star. Assumes the fan is complete.
pub fn classify_ray(fan: &Fan, ray: usize) -> ConvexityClass {
    let star_cones = fan.star_max_cones(ray);
    let star_rays = fan.star_rays(ray);
    let vectors: Vec<IntVector> = star_rays.iter().map(|&r| fan.ray(r).clone()).collect();
    let hull = cone_hull(&vectors);

    if !star_covers_hull(fan, &star_cones, &hull) {
        return ConvexityClass::NotLocallyConvex;
    }
    if !hull.is_pointed() {
        return ConvexityClass::LocallyConvex;
    }
    let exposed = fan.link(ray).iter().all(|sigma| {
        let on_facets: Vec<&IntVector> = hull
            .facet_normals
            .iter()
            .filter(|n| sigma.ray_indices.iter().all(|&r| int_dot(n, fan.ray(r)).is_zero()))
            .collect();
        if on_facets.is_empty() {
            return false;
        }
        let face: Vec<usize> = star_rays
            .iter()
            .copied()
            .filter(|&r| on_facets.iter().all(|n| int_dot(n, fan.ray(r)).is_zero()))
            .collect();
        face == sigma.ray_indices
    });
    if exposed {
        ConvexityClass::LocallyStronglyConvex
    } else {
        ConvexityClass::LocallyPointedConvex
    }
}

/// The star's support equals its hull iff no max cone outside the star
/// meets the hull in a full-dimensional set.
fn star_covers_hull(fan: &Fan, star_cones: &[usize], hull: &ConeH) -> bool {
    if hull.is_whole_space() {
        return star_cones.len() == fan.max_cones().len();
    }
    fan.max_cones().iter().enumerate().all(|(ci, cone)| {
        star_cones.binary_search(&ci).is_ok() || !intersection_is_full_dim(&fan.cone_rays(cone), hull)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::tests::fan2;
    use crate::lattice::int_vec;
    use ConvexityClass::*;

    #[test]
    fn polygon_fans() {
        assert_eq!(classify(&fan2(&[[1, 0], [0, 1], [-1, -1]])).unwrap().overall, NotLocallyConvex);
        let sq = classify(&fan2(&[[1, 0], [0, 1], [-1, 0], [0, -1]])).unwrap();
        assert_eq!(sq.per_ray, vec![LocallyConvex; 4]);
        let hex = fan2(&[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]);
        assert_eq!(classify(&hex).unwrap().overall, LocallyStronglyConvex);
    }

    #[test]
    fn hexagon_star_is_a_135_degree_sector() {
        let hex = fan2(&[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]);
        let vectors: Vec<IntVector> = hex.star_rays(0).iter().map(|&r| hex.ray(r).clone()).collect();
        let h = cone_hull(&vectors);
        assert_eq!(h.facet_normals, vec![int_vec(&[1, -1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn mixed_polygon() {
        // the ray (1,0) has neighbours (1,1) and (0,-1): sector of 135 degrees;
        // the ray (0,1) sits between (1,1) and (-1,0): 135 degrees too;
        // (-1,0) sits between (0,1) and (0,-1): a halfplane
        let f = fan2(&[[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]]);
        let c = classify(&f).unwrap();
        assert_eq!(c.per_ray[0], LocallyStronglyConvex);
        assert_eq!(c.per_ray[3], LocallyConvex);
        assert_eq!(c.overall, LocallyConvex);
    }

    #[test]
    fn cube_fan_is_convex_not_pointed() {
        let mut rays = Vec::new();
        for i in 0..3 {
            let mut e = [0i64; 3];
            e[i] = 1;
            rays.push(int_vec(&e));
            e[i] = -1;
            rays.push(int_vec(&e));
        }
        let mut cones = Vec::new();
        for s in 0..8 {
            cones.push((0..3).map(|i| 2 * i + ((s >> i) & 1)).collect());
        }
        let f = Fan::new(3, rays, cones).unwrap();
        assert_eq!(classify(&f).unwrap().per_ray, vec![LocallyConvex; 6]);
    }

    #[test]
    fn incomplete_fans_are_rejected() {
        let half = Fan::new(2, vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[-1, 0])], vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(classify(&half).is_err());
    }
}
