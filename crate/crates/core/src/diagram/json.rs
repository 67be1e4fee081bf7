//! Diagram JSON:
//!
//! ```json
//! {"vertices": [{"id": "v0", "label": "S(2,3)"}],
//!  "edges": [{"id": "e0", "ends": [["v0","f0"],["v1","s1"]], "orient": "to1"}],
//!  "externals": {"*": ["v1","f0"]}}
//! ```
//!
//! `orient` is `none` (unoriented), `to0` or `to1`, and absent while the
//! edge is unmarked. Edge `signs` and top-level `external_signs` are only
//! written when some sign is negative.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Edge, End, Orientation, SpliceDiagram};
use crate::atomdb::AtomDb;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexJson {
    id: String,
    label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    id: String,
    ends: [[String; 2]; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orient: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signs: Option<[i8; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    externals: BTreeMap<String, [String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    external_signs: Option<BTreeMap<String, i8>>,
}

fn end_json(e: &End) -> [String; 2] {
    [e.vertex.clone(), e.comp.clone()]
}

fn parse_orient(s: &str) -> Result<Orientation> {
    match s {
        "none" => Ok(Orientation::Unoriented),
        "to0" => Ok(Orientation::To0),
        "to1" => Ok(Orientation::To1),
        _ => Err(Error::Json(format!("unknown orientation {s:?}"))),
    }
}

fn check_sign(s: i8) -> Result<i8> {
    if s.abs() == 1 {
        Ok(s)
    } else {
        Err(Error::Json(format!("signs must be 1 or -1, got {s}")))
    }
}

pub fn to_json(d: &SpliceDiagram) -> String {
    let ext_signs: BTreeMap<String, i8> = d
        .externals()
        .iter()
        .map(|(l, x)| (l.clone(), x.sign))
        .collect();
    let doc = DiagramJson {
        vertices: d
            .vertices()
            .iter()
            .map(|(id, l)| VertexJson {
                id: id.clone(),
                label: l.to_string(),
            })
            .collect(),
        edges: d
            .edges()
            .values()
            .map(|e| EdgeJson {
                id: e.id.clone(),
                ends: [end_json(&e.ends[0]), end_json(&e.ends[1])],
                orient: e.orient.map(|o| o.as_str().to_owned()),
                signs: (e.signs != [1, 1]).then_some(e.signs),
            })
            .collect(),
        externals: d
            .externals()
            .iter()
            .map(|(l, x)| (l.clone(), end_json(&x.end)))
            .collect(),
        external_signs: ext_signs.values().any(|&s| s != 1).then_some(ext_signs),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("diagram serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str, db: &AtomDb) -> Result<SpliceDiagram> {
    let doc: DiagramJson = serde_json::from_str(text)?;
    let mut vertices = Vec::new();
    for v in doc.vertices {
        vertices.push((v.id, crate::dsl::parse_label(&v.label, db)?));
    }
    let mut edges = Vec::new();
    for e in doc.edges {
        let [a, b] = e.ends;
        let mut edge = Edge::new(e.id, End::new(&a[0], &a[1]), End::new(&b[0], &b[1]));
        edge.orient = e.orient.as_deref().map(parse_orient).transpose()?;
        if let Some([s0, s1]) = e.signs {
            edge.signs = [check_sign(s0)?, check_sign(s1)?];
        }
        edges.push(edge);
    }
    let externals = doc
        .externals
        .into_iter()
        .map(|(l, [v, c])| (l, End::new(v, c)))
        .collect();
    let mut d = SpliceDiagram::build(vertices, edges, externals)?;
    if let Some(signs) = doc.external_signs {
        for (l, s) in signs {
            d.external(&l)?;
            d.set_external_sign(&l, check_sign(s)?);
        }
    }
    Ok(d)
}
