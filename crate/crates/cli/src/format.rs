//! JSON formats: embedded graphs in, representations and drawings out.
//!
//! Graph format:
//!
//! ```json
//! {
//!   "vertices": [1, 2],
//!   "edges": [{"id": 7, "u": 1, "v": 2}],
//!   "rotation": {"1": [7], "2": [7]},
//!   "external_face_edge": {"edge": 7, "side": "left"},
//!   "reference_edge": 7
//! }
//! ```
//!
//! Rotations list edge ids clockwise as drawn. The canonical form written
//! by [`serialize_graph`] sorts vertices and edges by id and starts every
//! rotation list at its smallest edge id.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use orthobend_core::budget::Analysis;
use orthobend_core::compact::GridDrawing;
use orthobend_core::graph::{EdgeSide, GraphInput, PlaneGraph};
use orthobend_core::rep::{OrthogonalRepresentation, Turn};
use orthobend_core::spqtree::NodeKind;

#[derive(Debug, Serialize, Deserialize)]
struct EdgeJson {
    id: u64,
    u: u64,
    v: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ExternalJson {
    edge: u64,
    side: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    edges: Vec<EdgeJson>,
    external_face_edge: ExternalJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_edge: Option<u64>,
    rotation: BTreeMap<String, Vec<u64>>,
    vertices: Vec<u64>,
}

/// Parses the JSON graph format into a validated plane graph.
pub fn parse_graph(source: &str) -> Result<PlaneGraph> {
    let raw: GraphJson = serde_json::from_str(source).context("malformed graph JSON")?;
    let side = match raw.external_face_edge.side.as_str() {
        "left" => EdgeSide::Left,
        "right" => EdgeSide::Right,
        other => bail!("external face side must be \"left\" or \"right\", got {other:?}"),
    };
    let mut rotations = Vec::with_capacity(raw.rotation.len());
    for (k, v) in &raw.rotation {
        let vid: u64 = k.parse().with_context(|| format!("rotation key {k:?}"))?;
        rotations.push((vid, v.clone()));
    }
    let input = GraphInput {
        vertices: raw.vertices,
        edges: raw.edges.iter().map(|e| (e.id, e.u, e.v)).collect(),
        rotations,
        external: (raw.external_face_edge.edge, side),
        reference: raw.reference_edge,
    };
    let g = PlaneGraph::from_input(&input).context("invalid plane graph")?;
    Ok(g)
}

/// Serializes a graph canonically: sorted ids, rotations rotated to start
/// at their smallest edge id, external face named by the smallest external
/// half.
pub fn serialize_graph(g: &PlaneGraph) -> String {
    let mut vertices: Vec<u64> = (0..g.vertex_count() as u32).map(|v| g.vertex_id(v)).collect();
    vertices.sort_unstable();
    let mut edges: Vec<EdgeJson> = (0..g.edge_count() as u32)
        .map(|e| {
            let [u, v] = g.endpoints(e);
            EdgeJson { id: g.edge_id(e), u: g.vertex_id(u), v: g.vertex_id(v) }
        })
        .collect();
    edges.sort_by_key(|e| e.id);
    let mut rotation = BTreeMap::new();
    for v in 0..g.vertex_count() as u32 {
        let ids: Vec<u64> = g.rotation(v).iter().map(|&e| g.edge_id(e)).collect();
        let start = ids
            .iter()
            .enumerate()
            .min_by_key(|&(_, id)| *id)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let rotated: Vec<u64> =
            (0..ids.len()).map(|k| ids[(start + k) % ids.len()]).collect();
        rotation.insert(g.vertex_id(v).to_string(), rotated);
    }
    // External face: the half on it with the smallest (edge id, side).
    let ext = g
        .faces()[g.external_face() as usize]
        .iter()
        .min_by_key(|h| (g.edge_id(h.edge()), h.is_rev()))
        .copied()
        .expect("external face nonempty");
    let json = GraphJson {
        edges,
        external_face_edge: ExternalJson {
            edge: g.edge_id(ext.edge()),
            side: if ext.is_rev() { "right".into() } else { "left".into() },
        },
        reference_edge: g.reference_edge().map(|e| g.edge_id(e)),
        rotation,
        vertices,
    };
    serde_json::to_string_pretty(&json).expect("serialization cannot fail")
}

#[derive(Debug, Serialize)]
struct RepVertexJson {
    angles: Vec<u16>,
    id: u64,
}

#[derive(Debug, Serialize)]
struct RepEdgeJson {
    bends: usize,
    id: u64,
    turns: String,
    u: u64,
    v: u64,
}

#[derive(Debug, Serialize)]
struct RepJson {
    bends: usize,
    edges: Vec<RepEdgeJson>,
    vertices: Vec<RepVertexJson>,
}

/// Serializes an orthogonal representation: per-corner angles in rotation
/// order and per-edge turn strings, everything ordered by id.
pub fn serialize_representation(rep: &OrthogonalRepresentation) -> String {
    let g = rep.graph();
    let mut vertices: Vec<RepVertexJson> = (0..g.vertex_count() as u32)
        .map(|v| RepVertexJson { angles: rep.angles_at(v).to_vec(), id: g.vertex_id(v) })
        .collect();
    vertices.sort_by_key(|v| v.id);
    let mut edges: Vec<RepEdgeJson> = (0..g.edge_count() as u32)
        .map(|e| {
            let [u, v] = g.endpoints(e);
            let turns: String = rep
                .turns(e)
                .iter()
                .map(|t| match t {
                    Turn::L => 'L',
                    Turn::R => 'R',
                })
                .collect();
            RepEdgeJson {
                bends: rep.turns(e).len(),
                id: g.edge_id(e),
                turns,
                u: g.vertex_id(u),
                v: g.vertex_id(v),
            }
        })
        .collect();
    edges.sort_by_key(|e| e.id);
    let json = RepJson { bends: rep.total_bends(), edges, vertices };
    serde_json::to_string_pretty(&json).expect("serialization cannot fail")
}

#[derive(Debug, Serialize)]
struct DrawVertexJson {
    id: u64,
    x: i64,
    y: i64,
}

#[derive(Debug, Serialize)]
struct DrawEdgeJson {
    id: u64,
    points: Vec<[i64; 2]>,
}

#[derive(Debug, Serialize)]
struct DrawJson {
    edges: Vec<DrawEdgeJson>,
    vertices: Vec<DrawVertexJson>,
}

/// Serializes a grid drawing: integer coordinates and polylines by id.
pub fn serialize_drawing(g: &PlaneGraph, d: &GridDrawing) -> String {
    let mut vertices: Vec<DrawVertexJson> = (0..g.vertex_count() as u32)
        .map(|v| DrawVertexJson {
            id: g.vertex_id(v),
            x: d.coords[v as usize].0,
            y: d.coords[v as usize].1,
        })
        .collect();
    vertices.sort_by_key(|v| v.id);
    let mut edges: Vec<DrawEdgeJson> = (0..g.edge_count() as u32)
        .map(|e| DrawEdgeJson {
            id: g.edge_id(e),
            points: d.polylines[e as usize].iter().map(|&(x, y)| [x, y]).collect(),
        })
        .collect();
    edges.sort_by_key(|e| e.id);
    serde_json::to_string_pretty(&DrawJson { edges, vertices }).expect("serialization")
}

#[derive(Debug, Serialize)]
struct TreeNodeJson {
    children: Vec<u32>,
    id: u32,
    kind: String,
    poles: [u64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    chain: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    node_type: Option<String>,
}

/// Serializes the decomposition tree (node kinds, poles, ordered children)
/// for golden tests and debugging.
pub fn serialize_tree(a: &Analysis) -> String {
    let t = &a.tree;
    let g = &a.graph;
    let mut nodes = Vec::new();
    for id in t.ids() {
        let node = t.node(id);
        let kind = match node.kind {
            NodeKind::QStar => "Q*",
            NodeKind::S => "S",
            NodeKind::P => "P",
            NodeKind::PRoot => "P^r",
        };
        nodes.push(TreeNodeJson {
            children: node.children.clone(),
            id,
            kind: kind.into(),
            poles: node.poles.map(|p| g.vertex_id(p)),
            chain: if node.kind == NodeKind::QStar {
                Some(node.chain.iter().map(|&e| g.edge_id(e)).collect())
            } else {
                None
            },
            node_type: node.ty.as_ref().map(|ty| format!("{ty:?}")),
        });
    }
    #[derive(Serialize)]
    struct TreeJson {
        nodes: Vec<TreeNodeJson>,
        root: u32,
    }
    serde_json::to_string_pretty(&TreeJson { nodes, root: t.root() }).expect("serialization")
}
