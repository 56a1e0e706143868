//! The interchange format: one JSON object per cone, or an array of them.
//!
//! ```json
//! { "name": "wedge-rp3", "rank": 2, "rays": [[0, 1], [2, -1]] }
//! ```

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::cone::Cone;
use crate::error::Result;
use crate::lattice::LatticeVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    #[serde(flatten)]
    pub generators: Generators,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winding: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Generators {
    Normals(Vec<Vec<i64>>),
    Rays(Vec<Vec<i64>>),
}

impl Generators {
    pub fn vectors(&self) -> &[Vec<i64>] {
        match self {
            Generators::Normals(v) | Generators::Rays(v) => v,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    name: Option<String>,
    rank: usize,
    normals: Option<Vec<Vec<i64>>>,
    rays: Option<Vec<Vec<i64>>>,
    winding: Option<i64>,
}

impl TryFrom<RawDocument> for ConeDocument {
    type Error = String;

    fn try_from(raw: RawDocument) -> std::result::Result<Self, String> {
        let generators = match (raw.normals, raw.rays) {
            (Some(n), None) => Generators::Normals(n),
            (None, Some(r)) => Generators::Rays(r),
            (Some(_), Some(_)) => return Err("give exactly one of `normals` and `rays`, not both".into()),
            (None, None) => return Err("missing `normals` or `rays`".into()),
        };
        if let Some(bad) = generators.vectors().iter().position(|v| v.len() != raw.rank) {
            return Err(format!(
                "vector {} has length {}, expected rank {}",
                bad,
                generators.vectors()[bad].len(),
                raw.rank
            ));
        }
        let winding = match raw.winding {
            Some(w) if w < 1 => return Err(format!("winding must be at least 1, got {w}")),
            w => w.map(|w| w as u64),
        };
        Ok(ConeDocument {
            name: raw.name,
            rank: raw.rank,
            generators,
            winding,
        })
    }
}

impl<'de> Deserialize<'de> for ConeDocument {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_map(DocumentVisitor)
    }
}

/// Validates inside `visit_map`, so the parser attaches its position to
/// validation errors as well.
struct DocumentVisitor;

impl<'de> Visitor<'de> for DocumentVisitor {
    type Value = ConeDocument;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a cone document object")
    }

    fn visit_map<A: MapAccess<'de>>(self, map: A) -> std::result::Result<ConeDocument, A::Error> {
        let raw = RawDocument::deserialize(de::value::MapAccessDeserializer::new(map))?;
        ConeDocument::try_from(raw).map_err(de::Error::custom)
    }
}

impl ConeDocument {
    pub fn from_normals(name: &str, rank: usize, normals: &[&[i64]]) -> Self {
        ConeDocument {
            name: Some(name.to_string()),
            rank,
            generators: Generators::Normals(normals.iter().map(|v| v.to_vec()).collect()),
            winding: None,
        }
    }

    pub fn from_rays(name: &str, rank: usize, rays: &[&[i64]]) -> Self {
        ConeDocument {
            name: Some(name.to_string()),
            rank,
            generators: Generators::Rays(rays.iter().map(|v| v.to_vec()).collect()),
            winding: None,
        }
    }

    pub fn vectors(&self) -> Vec<LatticeVector> {
        self.generators
            .vectors()
            .iter()
            .map(|v| LatticeVector::from_i64s(v))
            .collect()
    }

    pub fn to_cone(&self) -> Result<Cone> {
        match &self.generators {
            Generators::Normals(_) => Cone::from_normals(self.rank, &self.vectors()),
            Generators::Rays(_) => Cone::from_rays(self.rank, &self.vectors()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Parses one document or an array of documents.
pub fn parse_documents(text: &str) -> std::result::Result<Vec<ConeDocument>, ParseError> {
    let trimmed = text.trim_start();
    // Dispatch on the first token: an untagged enum would lose the error
    // position.
    let parsed = if trimmed.starts_with('[') {
        serde_json::from_str::<Vec<ConeDocument>>(text)
    } else {
        serde_json::from_str::<ConeDocument>(text).map(|d| vec![d])
    };
    parsed.map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}
