use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::Fan;
use crate::error::{Error, Result};
use crate::lattice::{clear_denominators, coordinates, int_dot, saturated_basis, to_rational};
use crate::linalg::{Matrix, Vector};
use crate::IntVector;

/// Fan of chambers of the central arrangement `{ <a, x> = 0 }`.
///
/// When the normals do not span the ambient space, the arrangement is
/// essentialized: normals are rewritten in a basis of the saturated lattice
/// they span, so the fan lives in the quotient by the common lineality.
pub fn arrangement_fan(normals: &[IntVector]) -> Result<Fan> {
    let Some(first) = normals.first() else {
        return Err(Error::InvalidFan("empty arrangement".into()));
    };
    let d = first.dim();
    if let Some(bad) = normals.iter().find(|a| a.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.dim() });
    }
    if normals.iter().any(|a| a.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let rat: Vec<_> = normals.iter().map(to_rational).collect();
    let r = Matrix::from_rows(d, rat.clone())?.rank();
    let normals: Vec<IntVector> = if r < d {
        let basis: Vec<_> = saturated_basis(&rat, d)?.iter().map(to_rational).collect();
        rat.iter()
            .map(|a| {
                let c = coordinates(&basis, a)?.expect("normal lies in its own span");
                Ok(Vector(c.iter().map(|x| x.to_integer()).collect()))
            })
            .collect::<Result<_>>()?
    } else {
        normals.to_vec()
    };

    // rays: lines cut out by rank r-1 subsets of hyperplanes
    let mut rays: Vec<IntVector> = Vec::new();
    for subset in (0..normals.len()).combinations(r - 1) {
        let rows = subset.iter().map(|&i| to_rational(&normals[i])).collect();
        let ns = Matrix::from_rows(r, rows)?.nullspace();
        if ns.len() != 1 {
            continue;
        }
        let v = clear_denominators(&ns[0])?;
        for w in [v.clone(), -&v] {
            if !rays.contains(&w) {
                rays.push(w);
            }
        }
    }
    rays.sort();

    let signs = |x: &IntVector| -> Vec<i8> {
        normals.iter().map(|a| int_dot(a, x).signum().try_into().expect("sign")).collect()
    };
    let ray_signs: Vec<Vec<i8>> = rays.iter().map(signs).collect();

    // a chamber contains the sum of any spanning set of its rays in its interior
    let mut chambers: BTreeMap<Vec<i8>, Vec<usize>> = BTreeMap::new();
    for subset in (0..rays.len()).combinations(r) {
        let p = subset
            .iter()
            .fold(Vector(vec![Zero::zero(); r]), |acc: IntVector, &i| Vector(acc.iter().zip(rays[i].iter()).map(|(a, b)| a + b).collect()));
        let s = signs(&p);
        if s.contains(&0) || chambers.contains_key(&s) {
            continue;
        }
        let members: Vec<usize> = (0..rays.len())
            .filter(|&i| ray_signs[i].iter().zip(&s).all(|(a, b)| *a == 0 || a == b))
            .collect();
        if members.len() != r {
            return Err(Error::NotSimplicial(format!("a chamber has {} rays in rank {r}", members.len())));
        }
        chambers.insert(s, members);
    }
    let fan = Fan::new(r, rays, chambers.into_values().collect())?;
    fan.check_complete().map_err(|e| Error::NotSimplicial(e.to_string()))?;
    Ok(fan)
}
