//! Polytope JSON: `{"dim": d, "vertices": [[...], ...]}`. The writer adds a
//! `derived` block for inspection; the reader ignores it.

use serde::{Deserialize, Serialize};

use super::lattice::{Facet, Polytope};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_deserializing, skip_serializing_if = "Option::is_none")]
    pub derived: Option<Derived>,
}

#[derive(Debug, Serialize)]
pub struct Derived {
    pub f_vector: Vec<usize>,
    pub volume: f64,
    pub facets: Vec<Facet>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &Polytope) -> Self {
        Self {
            dim: p.dim(),
            vertices: p.vertices().to_vec(),
            derived: Some(Derived { f_vector: p.f_vector(), volume: p.volume(), facets: p.facets().to_vec() }),
        }
    }

    pub fn build(self) -> Result<Polytope> {
        if self.vertices.iter().any(|v| v.len() != self.dim) {
            return Err(Error::DimMismatch(format!("vertices must have length {}", self.dim)));
        }
        Polytope::new(self.vertices)
    }
}

pub fn to_json(p: &Polytope) -> Result<String> {
    crate::json::to_string(&PolytopeJson::from_polytope(p))
}

pub fn from_json(s: &str) -> Result<Polytope> {
    serde_json::from_str::<PolytopeJson>(s)?.build()
}
