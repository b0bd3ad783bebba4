#![allow(dead_code)]

//! Shared fixtures for integration tests.

use orthobend_core::graph::{EdgeSide, GraphInput, PlaneGraph};

pub fn graph(
    vertices: &[u64],
    edges: &[(u64, u64, u64)],
    rotations: &[(u64, &[u64])],
    external: (u64, EdgeSide),
    reference: Option<u64>,
) -> PlaneGraph {
    PlaneGraph::from_input(&GraphInput {
        vertices: vertices.to_vec(),
        edges: edges.to_vec(),
        rotations: rotations.iter().map(|&(v, r)| (v, r.to_vec())).collect(),
        external,
        reference,
    })
    .expect("fixture is valid")
}

pub fn square() -> PlaneGraph {
    graph(
        &[1, 2, 3, 4],
        &[(1, 1, 2), (2, 2, 3), (3, 3, 4), (4, 4, 1)],
        &[(1, &[4, 1]), (2, &[1, 2]), (3, &[2, 3]), (4, &[3, 4])],
        (1, EdgeSide::Right),
        None,
    )
}

pub fn triangle() -> PlaneGraph {
    graph(
        &[1, 2, 3],
        &[(1, 1, 2), (2, 2, 3), (3, 3, 1)],
        &[(1, &[3, 1]), (2, &[1, 2]), (3, &[2, 3])],
        (1, EdgeSide::Right),
        None,
    )
}

pub fn digon() -> PlaneGraph {
    graph(
        &[1, 2],
        &[(1, 1, 2), (2, 1, 2)],
        &[(1, &[1, 2]), (2, &[2, 1])],
        (1, EdgeSide::Left),
        None,
    )
}

pub fn path(n: u64) -> PlaneGraph {
    let vertices: Vec<u64> = (1..=n).collect();
    let edges: Vec<(u64, u64, u64)> = (1..n).map(|i| (i, i, i + 1)).collect();
    let mut rotations: Vec<(u64, Vec<u64>)> = Vec::new();
    for v in 1..=n {
        let mut rot = Vec::new();
        if v > 1 {
            rot.push(v - 1);
        }
        if v < n {
            rot.push(v);
        }
        rotations.push((v, rot));
    }
    PlaneGraph::from_input(&GraphInput {
        vertices,
        edges,
        rotations,
        external: (1, EdgeSide::Left),
        reference: None,
    })
    .unwrap()
}

/// An 11-vertex stand-in for the paper-style worked example: reference edge
/// (1, 11); the parallel component at poles (2, 11) needs three bends (all
/// placeable on edge (2, 11)) and the root two more on (1, 11), five total.
///
/// Structure: edge (2,11) in parallel with the series
/// 2-4, theta(4..10), 10-11; that component in series with edge (1,2); all
/// in parallel with the path 1-3-11 and the reference edge.
pub fn worked_example() -> PlaneGraph {
    graph(
        &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        &[
            (1, 1, 11),  // reference edge
            (2, 1, 2),
            (3, 2, 11),
            (4, 2, 4),
            (5, 4, 5),
            (6, 5, 6),
            (7, 6, 7),
            (8, 7, 10),
            (9, 4, 8),
            (10, 8, 10),
            (11, 4, 9),
            (12, 9, 10),
            (13, 10, 11),
            (14, 1, 3),
            (15, 3, 11),
        ],
        &[
            // Terminal 1: reference edge, then the series component
            // (leftmost), then the 1-3-11 path.
            (1, &[1, 2, 14]),
            // Pole 2 of the inner P-node: chain up to 1; edge (2,11) is the
            // left child, the long series the right child.
            (2, &[2, 3, 4]),
            (3, &[14, 15]),
            // Theta poles: left chain (via 5,6,7), center (via 8), right
            // (via 9).
            (4, &[4, 5, 9, 11]),
            (5, &[5, 6]),
            (6, &[6, 7]),
            (7, &[7, 8]),
            (8, &[9, 10]),
            (9, &[11, 12]),
            // Sink-side rotations run right-to-left: theta's chains enter
            // vertex 10 as [right, center, left] before the exit edge.
            (10, &[12, 10, 8, 13]),
            // Terminal 11: reference edge, then the path (rightmost child
            // first at a sink), then the inner component's two ends.
            (11, &[1, 15, 13, 3]),
        ],
        (1, EdgeSide::Right),
        Some(1),
    )
}
