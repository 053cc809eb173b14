//! JSON forms of polytopes and fans. Rationals are strings `p/q` (or `p`),
//! integers are decimal strings.

use std::fmt::Display;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::Vector;
use crate::polytope::{Facet, Polytope};
use crate::scalar::{parse_integer, parse_rational};

/// Serializes any `Display` value as a JSON string.
pub fn display_string<T: Display, S: Serializer>(value: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn display_string_opt<T: Display, S: Serializer>(
    value: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<FacetJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub dim: usize,
    pub rays: Vec<Vec<String>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeJson {
            dim: p.ambient_dim(),
            vertices: p.vertices().iter().map(|v| v.iter().map(ToString::to_string).collect()).collect(),
            facets: Some(
                p.facets()
                    .iter()
                    .map(|f| FacetJson {
                        normal: f.normal.iter().map(ToString::to_string).collect(),
                        offset: f.offset.to_string(),
                    })
                    .collect(),
            ),
        }
    }

    /// Builds the polytope; with facets present the hull is skipped and the
    /// incidence is recomputed and validated.
    pub fn to_polytope(&self) -> Result<Polytope> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                if v.len() != self.dim {
                    return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
                }
                v.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>().map(Vector)
            })
            .collect::<Result<Vec<_>>>()?;
        match &self.facets {
            Some(facets) => {
                let facets = facets
                    .iter()
                    .map(|f| {
                        let normal = f.normal.iter().map(|x| parse_integer(x)).collect::<Result<Vec<_>>>()?;
                        Ok(Facet::new(Vector(normal), parse_rational(&f.offset)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Polytope::from_parts(vertices, facets)
            }
            None => {
                if vertices.is_empty() {
                    return Err(Error::InvalidPolytope("no vertices".into()));
                }
                Polytope::from_vertices(vertices)
            }
        }
    }
}

impl FanJson {
    pub fn from_fan(f: &Fan) -> Self {
        FanJson {
            dim: f.dim(),
            rays: f.rays().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            max_cones: f.max_cones().iter().map(|c| c.ray_indices.clone()).collect(),
        }
    }

    pub fn to_fan(&self) -> Result<Fan> {
        let rays = self
            .rays
            .iter()
            .map(|r| r.iter().map(|x| parse_integer(x)).collect::<Result<Vec<_>>>().map(Vector))
            .collect::<Result<Vec<_>>>()?;
        Fan::new(self.dim, rays, self.max_cones.clone())
    }
}

/// Either input shape accepted by commands that take a fan or a polytope.
#[derive(Debug, Clone)]
pub enum Input {
    Polytope(PolytopeJson),
    Fan(FanJson),
}

pub fn parse_input(text: &str) -> Result<Input> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("rays").is_some() {
        serde_json::from_value(value).map(Input::Fan).map_err(|e| Error::Parse(e.to_string()))
    } else {
        serde_json::from_value(value).map(Input::Polytope).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    let json: PolytopeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    json.to_polytope()
}
