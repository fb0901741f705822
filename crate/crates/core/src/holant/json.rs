//! JSON form of signature grids.
//!
//! ```json
//! {"kappa": 3,
//!  "signatures": [{"kind": "tau3", "values": ["0", "0", "1"]}],
//!  "vertices": [{"sig": 0, "edges": [0, 1, 2]}, {"sig": 0, "edges": [0, 2, 1]}],
//!  "edges": [[[0, 0], [1, 0]], [[0, 1], [1, 2]], [[0, 2], [1, 1]]]}
//! ```
//!
//! An edge is `[[v, slot], [w, slot]]`, `[[v, slot], "dangling", d]`, or a
//! bare edge `["dangling", d1, "dangling", d2]`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{End, GridVertex, HolantError, SignatureGrid};
use crate::signatures::SignatureDescriptor;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridJson {
    pub kappa: usize,
    pub signatures: Vec<SignatureDescriptor>,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexJson {
    pub sig: usize,
    pub edges: Vec<usize>,
}

fn bad(m: impl Into<String>) -> HolantError {
    HolantError::InvalidGrid(m.into())
}

fn slot(v: &Value) -> Result<End, HolantError> {
    let a = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad(format!("expected [vertex, slot], got {v}")))?;
    let n = |x: &Value| x.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("expected index, got {x}")));
    Ok(End::Slot { vertex: n(&a[0])?, slot: n(&a[1])? })
}

fn dangling_index(v: &Value) -> Result<usize, HolantError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("expected dangling index, got {v}")))
}

fn is_dangling_tag(v: &Value) -> bool {
    v.as_str() == Some("dangling")
}

fn parse_edge(v: &Value) -> Result<[End; 2], HolantError> {
    let a = v.as_array().ok_or_else(|| bad(format!("edge must be an array, got {v}")))?;
    match a.len() {
        2 => Ok([slot(&a[0])?, slot(&a[1])?]),
        3 if is_dangling_tag(&a[1]) => Ok([slot(&a[0])?, End::Dangling(dangling_index(&a[2])?)]),
        4 if is_dangling_tag(&a[0]) && is_dangling_tag(&a[2]) => {
            Ok([End::Dangling(dangling_index(&a[1])?), End::Dangling(dangling_index(&a[3])?)])
        }
        _ => Err(bad(format!("unrecognized edge {v}"))),
    }
}

fn edge_value(ends: &[End; 2]) -> Value {
    match *ends {
        [End::Slot { vertex: a, slot: s }, End::Slot { vertex: b, slot: t }] => json!([[a, s], [b, t]]),
        [End::Slot { vertex, slot }, End::Dangling(d)] | [End::Dangling(d), End::Slot { vertex, slot }] => {
            json!([[vertex, slot], "dangling", d])
        }
        [End::Dangling(d1), End::Dangling(d2)] => json!(["dangling", d1, "dangling", d2]),
    }
}

impl SignatureGrid {
    pub fn from_json_value(g: &GridJson) -> Result<Self, HolantError> {
        let signatures = g.signatures.iter().map(|s| s.to_dense(g.kappa)).collect::<Result<Vec<_>, _>>()?;
        let edges = g.edges.iter().map(parse_edge).collect::<Result<Vec<_>, _>>()?;
        let n_d = edges
            .iter()
            .flatten()
            .filter_map(|e| match e {
                End::Dangling(d) => Some(d + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let mut dangling = vec![usize::MAX; n_d];
        for (e, ends) in edges.iter().enumerate() {
            for end in ends {
                if let End::Dangling(d) = end {
                    if dangling[*d] != usize::MAX {
                        return Err(bad(format!("dangling index {d} used twice")));
                    }
                    dangling[*d] = e;
                }
            }
        }
        if dangling.contains(&usize::MAX) {
            return Err(bad("dangling indices must be 0..n without gaps"));
        }
        let grid = SignatureGrid {
            kappa: g.kappa,
            signatures,
            vertices: g.vertices.iter().map(|v| GridVertex { sig: v.sig, edges: v.edges.clone() }).collect(),
            edges,
            dangling,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn from_json(s: &str) -> Result<Self, HolantError> {
        let g: GridJson = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
        Self::from_json_value(&g)
    }

    pub fn to_json_value(&self) -> GridJson {
        GridJson {
            kappa: self.kappa,
            signatures: self.signatures.iter().map(SignatureDescriptor::from_dense).collect(),
            vertices: self.vertices.iter().map(|v| VertexJson { sig: v.sig, edges: v.edges.clone() }).collect(),
            edges: self.edges.iter().map(edge_value).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("grid serializes")
    }
}
