//! Named polytopes with their facet structure supplied analytically.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::ConvexityClass;
use crate::lattice::{int_vec, rat_vec};
use crate::linalg::Vector;
use crate::polytope::{Facet, Polytope};
use crate::{IntVector, Rational};

fn q(n: i64) -> Rational {
    Ratio::from_integer(BigInt::from(n))
}

/// `[0,1]^d`.
pub fn cube(d: usize) -> Result<Polytope> {
    if d == 0 {
        return Err(Error::InvalidPolytope("cube needs d >= 1".into()));
    }
    let vertices = (0..1u64 << d)
        .map(|bits| rat_vec(&(0..d).map(|i| ((bits >> i) & 1) as i64).collect::<Vec<_>>()))
        .collect();
    let mut facets = Vec::with_capacity(2 * d);
    for i in 0..d {
        let e = Vector::unit_int(d, i);
        facets.push(Facet::new(e.clone(), q(0)));
        facets.push(Facet::new(-&e, q(-1)));
    }
    Polytope::from_parts(vertices, facets)
}

/// Permutations of `(0, ..., n-1)` in `R^n`, one facet per proper nonempty
/// subset `S`: `sum_{i in S} x_i >= 0 + 1 + ... + (|S| - 1)`.
pub fn permutohedron_lifted(n: usize) -> Result<Polytope> {
    if n < 2 {
        return Err(Error::InvalidPolytope("permutohedron needs n >= 2".into()));
    }
    let vertices = (0..n as i64).permutations(n).map(|p| rat_vec(&p)).collect();
    let facets = (1..(1u64 << n) - 1)
        .map(|s| {
            let normal: Vec<i64> = (0..n).map(|i| ((s >> i) & 1) as i64).collect();
            let k = s.count_ones() as i64;
            Facet::new(int_vec(&normal), q(k * (k - 1) / 2))
        })
        .collect();
    Polytope::from_parts(vertices, facets)
}

/// The type-A Coxeter zonotope on `n` letters, in coordinates of its own
/// lattice; `n = 3` is the Delzant hexagon.
pub fn permutohedron(n: usize) -> Result<Polytope> {
    Ok(permutohedron_lifted(n)?.project_full_dim()?.0)
}

/// Loday coordinates of all binary trees whose internal nodes are `lo..=hi`.
fn loday_points(lo: usize, hi: usize, k: usize) -> Vec<Vec<i64>> {
    if lo > hi {
        return vec![vec![0; k]];
    }
    let mut out = Vec::new();
    for root in lo..=hi {
        let left = if root > lo { loday_points(lo, root - 1, k) } else { vec![vec![0; k]] };
        let right = loday_points(root + 1, hi, k);
        for l in &left {
            for r in &right {
                let mut x: Vec<i64> = l.iter().zip(r).map(|(a, b)| a + b).collect();
                x[root - 1] = ((root - lo + 1) * (hi - root + 1)) as i64;
                out.push(x);
            }
        }
    }
    out
}

/// Proper intervals `[i, j]` of `1..=n-2`, in the facet order used by the associahedron.
pub fn associahedron_intervals(n: usize) -> Vec<(usize, usize)> {
    let k = n - 2;
    (1..=k)
        .flat_map(|i| (i..=k).map(move |j| (i, j)))
        .filter(|&(i, j)| (i, j) != (1, k))
        .collect()
}

/// Loday's realization in `R^{n-2}`: one vertex per binary tree with `n - 1`
/// leaves, one facet `sum_{l in [i,j]} x_l >= binom(j - i + 2, 2)` per proper interval.
pub fn associahedron_lifted(n: usize) -> Result<Polytope> {
    if n < 4 {
        return Err(Error::InvalidPolytope("associahedron needs n >= 4".into()));
    }
    let k = n - 2;
    let vertices = loday_points(1, k, k).into_iter().map(|p| rat_vec(&p)).collect();
    let facets = associahedron_intervals(n)
        .into_iter()
        .map(|(i, j)| {
            let normal: Vec<i64> = (1..=k).map(|l| (i <= l && l <= j) as i64).collect();
            let len = (j - i + 1) as i64;
            Facet::new(int_vec(&normal), q(len * (len + 1) / 2))
        })
        .collect();
    Polytope::from_parts(vertices, facets)
}

/// The `(n-3)`-dimensional associahedron, vertices = triangulations of an `n`-gon.
pub fn associahedron(n: usize) -> Result<Polytope> {
    Ok(associahedron_lifted(n)?.project_full_dim()?.0)
}

pub const POLYGON_PRESETS: [&str; 5] = ["triangle", "square", "rectangle-2x1", "delzant-hexagon", "obtuse-pentagon"];

/// A rational pentagon all of whose angles exceed 90 degrees.
pub const OBTUSE_PENTAGON: [[i64; 2]; 5] = [[0, 1], [3, 0], [4, 2], [2, 4], [0, 3]];

pub fn polygon(preset: &str) -> Result<Polytope> {
    let from = |pts: &[[i64; 2]]| Polytope::from_vertices(pts.iter().map(|p| rat_vec(p)).collect());
    match preset {
        "triangle" => from(&[[0, 0], [1, 0], [0, 1]]),
        "square" => cube(2),
        "rectangle-2x1" | "rectangle" => from(&[[0, 0], [2, 0], [2, 1], [0, 1]]),
        "delzant-hexagon" | "hexagon" => permutohedron(3),
        "obtuse-pentagon" | "pentagon" => from(&OBTUSE_PENTAGON),
        _ => Err(Error::UnknownPreset(preset.to_string())),
    }
}

/// Hyperplane normals of the rank-2 reflection arrangements and the coordinate arrangement.
pub fn arrangement_preset(name: &str) -> Result<Vec<IntVector>> {
    let v = |xs: &[&[i64]]| xs.iter().map(|x| int_vec(x)).collect();
    match name {
        "coordinate" => Ok(v(&[&[1, 0], &[0, 1]])),
        "a2" => Ok(v(&[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]])),
        "b2" => Ok(v(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]])),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

pub const ARRANGEMENT_PRESETS: [&str; 3] = ["coordinate", "a2", "b2"];

/// Looks up a generator by name: polygon presets, `cube`, `permutohedron`,
/// `associahedron` (sized by `n` / `d` or a `-<k>` suffix), and corpus names.
pub fn by_name(name: &str, n: Option<usize>, d: Option<usize>) -> Result<Polytope> {
    if let Some(e) = corpus_entry(name)? {
        return Ok(e.polytope);
    }
    let (base, suffix) = match name.rsplit_once('-') {
        Some((b, s)) if s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty() => (b, s.parse::<usize>().ok()),
        _ => (name, None),
    };
    match base {
        "cube" => cube(suffix.or(d).unwrap_or(3)),
        "permutohedron" => permutohedron(suffix.or(n).unwrap_or(4)),
        "associahedron" => associahedron(suffix.or(n).unwrap_or(6)),
        _ => polygon(name),
    }
}

/// The realization whose angles are the intended ones, for generators that
/// are otherwise rewritten in lattice coordinates; `None` when the named
/// polytope is already given in its Euclidean form.
pub fn euclidean_realization(name: &str) -> Result<Option<Polytope>> {
    let sized = |n: &str| n.parse::<usize>().map_err(|_| Error::UnknownPreset(name.to_string()));
    Ok(match name {
        "delzant-hexagon" | "hexagon" => Some(permutohedron_lifted(3)?),
        "hexagon-x-hexagon" => Some(permutohedron_lifted(3)?.product(&permutohedron_lifted(3)?)?),
        _ => match name.rsplit_once('-') {
            Some(("permutohedron", n)) => Some(permutohedron_lifted(sized(n)?)?),
            Some(("associahedron", n)) => Some(associahedron_lifted(sized(n)?)?),
            _ => None,
        },
    })
}

/// Values known independently of the pipeline that computes them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convexity: Option<ConvexityClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub polytope: Polytope,
    /// Euclidean realization for angle measurements when `polytope` is a
    /// lattice projection of it.
    pub metric: Option<Polytope>,
    pub expected: Expected,
}

impl CorpusEntry {
    pub fn metric_polytope(&self) -> &Polytope {
        self.metric.as_ref().unwrap_or(&self.polytope)
    }
}

fn expected(f: Option<&[u64]>, sigma: Option<i64>, convexity: Option<ConvexityClass>, m: Option<u64>) -> Expected {
    Expected { f: f.map(<[u64]>::to_vec), sigma, convexity, m }
}

const CORPUS_NAMES: [&str; 15] = [
    "square",
    "cube-3",
    "cube-4",
    "triangle",
    "rectangle-2x1",
    "delzant-hexagon",
    "obtuse-pentagon",
    "permutohedron-4",
    "permutohedron-5",
    "associahedron-5",
    "associahedron-6",
    "associahedron-7",
    "square-x-square",
    "triangle-x-triangle",
    "hexagon-x-hexagon",
];

fn corpus_entry(name: &str) -> Result<Option<CorpusEntry>> {
    use ConvexityClass::*;
    let (polytope, exp) = match name {
        "square" => (cube(2)?, expected(Some(&[4, 4, 1]), Some(0), Some(LocallyConvex), Some(1))),
        "cube-3" => (cube(3)?, expected(Some(&[8, 12, 6, 1]), Some(0), Some(LocallyConvex), Some(1))),
        "cube-4" => (cube(4)?, expected(Some(&[16, 32, 24, 8, 1]), Some(0), Some(LocallyConvex), Some(1))),
        "triangle" => (polygon("triangle")?, expected(Some(&[3, 3, 1]), Some(1), Some(NotLocallyConvex), Some(1))),
        "rectangle-2x1" => (polygon("rectangle-2x1")?, expected(Some(&[4, 4, 1]), Some(0), Some(LocallyConvex), Some(1))),
        "delzant-hexagon" => (
            polygon("delzant-hexagon")?,
            expected(Some(&[6, 6, 1]), Some(-2), Some(LocallyStronglyConvex), Some(1)),
        ),
        // inner normals (1,3), (-2,1), (-1,-1), (1,-2), (1,0); adjacent dets 7, 3, 3, 2, 3
        "obtuse-pentagon" => (
            polygon("obtuse-pentagon")?,
            expected(Some(&[5, 5, 1]), Some(-1), Some(LocallyStronglyConvex), Some(42)),
        ),
        // faces are ordered set partitions; the braid fan is unimodular
        "permutohedron-4" => (permutohedron(4)?, expected(Some(&[24, 36, 14, 1]), Some(0), None, Some(1))),
        "permutohedron-5" => (permutohedron(5)?, expected(Some(&[120, 240, 150, 30, 1]), Some(16), None, Some(1))),
        "associahedron-5" => (associahedron(5)?, expected(Some(&[5, 5, 1]), Some(-1), None, None)),
        "associahedron-6" => (associahedron(6)?, expected(Some(&[14, 21, 9, 1]), Some(0), None, None)),
        "associahedron-7" => (associahedron(7)?, expected(Some(&[42, 84, 56, 14, 1]), Some(2), None, None)),
        "square-x-square" => (
            cube(2)?.product(&cube(2)?)?,
            expected(Some(&[16, 32, 24, 8, 1]), Some(0), Some(LocallyConvex), Some(1)),
        ),
        "triangle-x-triangle" => {
            let t = polygon("triangle")?;
            (t.product(&t)?, expected(Some(&[9, 18, 15, 6, 1]), Some(1), Some(NotLocallyConvex), Some(1)))
        }
        "hexagon-x-hexagon" => {
            let h = polygon("delzant-hexagon")?;
            (h.product(&h)?, expected(Some(&[36, 72, 48, 12, 1]), Some(4), Some(LocallyConvex), Some(1)))
        }
        _ => return Ok(None),
    };
    let metric = euclidean_realization(name)?;
    Ok(Some(CorpusEntry { name: name.to_string(), polytope, metric, expected: exp }))
}

/// The labelled example suite.
pub fn corpus() -> Vec<CorpusEntry> {
    CORPUS_NAMES
        .iter()
        .map(|n| corpus_entry(n).expect("corpus generators are valid").expect("known name"))
        .collect()
}

pub fn corpus_names() -> &'static [&'static str] {
    &CORPUS_NAMES
}
