use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Echelon, Polytope};
use crate::invariants::FVector;

/// A nonempty face, identified by its vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertices: FixedBitSet,
    pub dim: usize,
}

/// Sign pattern of the corner angles of all 2-faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AngleClass {
    /// every 2-face corner angle is > 90 degrees
    Obtuse,
    /// every corner angle is >= 90 degrees, some exactly 90
    NonAcuteOnly,
    Neither,
}

impl AngleClass {
    pub fn is_non_acute(self) -> bool {
        matches!(self, AngleClass::Obtuse | AngleClass::NonAcuteOnly)
    }
}

impl Polytope {
    /// All nonempty faces, including the polytope itself, sorted by dimension.
    ///
    /// Faces are the closed vertex sets of the incidence relation: the
    /// intersections of facet vertex sets.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.num_vertices();
        let mut top = FixedBitSet::with_capacity(n);
        top.insert_range(..);
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        seen.insert(top.clone());
        let mut queue = vec![top];
        while let Some(face) = queue.pop() {
            for facet in &self.facet_vertices {
                if facet.is_superset(&face) {
                    continue;
                }
                let mut sub = face.clone();
                sub.intersect_with(facet);
                if sub.is_clear() {
                    continue;
                }
                if seen.insert(sub.clone()) {
                    queue.push(sub);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|vertices| {
                let dim = self.face_dim(&vertices);
                Face { vertices, dim }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.ones().cmp(b.vertices.ones())));
        faces
    }

    fn face_dim(&self, vertices: &FixedBitSet) -> usize {
        let count = vertices.count_ones(..);
        if count == self.num_vertices() {
            return self.intrinsic_dim;
        }
        // a proper face has dimension at most intrinsic_dim - 1
        let cap = self.intrinsic_dim.saturating_sub(1);
        let mut it = vertices.ones();
        let origin = &self.vertices[it.next().expect("nonempty face")];
        let mut e = Echelon::default();
        for v in it {
            if e.rank() == cap {
                break;
            }
            e.insert(&self.vertices[v] - origin);
        }
        e.rank()
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0u64; self.intrinsic_dim + 1];
        for f in self.faces() {
            counts[f.dim] += 1;
        }
        FVector::new(counts)
    }

    /// Classifies the corner angles of every 2-face using only signs of
    /// inner products of edge vectors, in the ambient metric.
    pub fn angle_class(&self) -> AngleClass {
        let faces = self.faces();
        let edges: Vec<(usize, usize)> = faces
            .iter()
            .filter(|f| f.dim == 1)
            .map(|f| {
                let mut it = f.vertices.ones();
                (it.next().expect("edge"), it.next().expect("edge"))
            })
            .collect();
        let mut saw_right = false;
        for face in faces.iter().filter(|f| f.dim == 2) {
            let inside: Vec<(usize, usize)> = edges
                .iter()
                .copied()
                .filter(|&(a, b)| face.vertices.contains(a) && face.vertices.contains(b))
                .collect();
            for v in face.vertices.ones() {
                let nbrs: Vec<usize> = inside
                    .iter()
                    .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
                    .collect();
                if nbrs.len() != 2 {
                    continue;
                }
                let x = &self.vertices[v];
                let s = (&self.vertices[nbrs[0]] - x).dot(&(&self.vertices[nbrs[1]] - x));
                if s.is_positive() {
                    return AngleClass::Neither;
                }
                saw_right |= s.is_zero();
            }
        }
        if saw_right {
            AngleClass::NonAcuteOnly
        } else {
            AngleClass::Obtuse
        }
    }
}
