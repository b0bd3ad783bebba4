//! Independent verification oracle: bend minimization as a min-cost flow.
//!
//! The classical network has a node per vertex and per face. Vertices supply
//! `4 - deg(v)` units of free angle; an internal face consumes
//! `corners(f) - 4`, the external face `corners(f) + 4` (consumption may be
//! negative, making the face a supplier). Vertex-to-face arcs carry up to
//! three units per corner at cost zero; face-to-face arcs across each edge
//! cost one per unit, one unit per bend. The minimum cost equals the minimum
//! bend count over all embedding-preserving orthogonal representations.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::PlaneGraph;

struct Arc {
    to: u32,
    cap: i64,
    cost: i64,
    /// Index of the reverse arc in `to`'s list.
    rev: u32,
}

struct Network {
    adj: Vec<Vec<Arc>>,
}

impl Network {
    fn new(n: usize) -> Self {
        let mut adj = Vec::with_capacity(n);
        adj.resize_with(n, Vec::new);
        Network { adj }
    }

    fn add(&mut self, from: u32, to: u32, cap: i64, cost: i64) {
        let rev_f = self.adj[to as usize].len() as u32;
        let rev_t = self.adj[from as usize].len() as u32;
        self.adj[from as usize].push(Arc { to, cap, cost, rev: rev_f });
        self.adj[to as usize].push(Arc { to: from, cap: 0, cost: -cost, rev: rev_t });
    }

    /// Successive shortest augmenting paths with potentials; all original
    /// costs are non-negative. Returns (flow, cost).
    fn min_cost_max_flow(&mut self, s: u32, t: u32) -> (i64, i64) {
        let n = self.adj.len();
        let mut potential = vec![0i64; n];
        let mut flow = 0i64;
        let mut cost = 0i64;
        loop {
            const INF: i64 = i64::MAX / 4;
            let mut dist = vec![INF; n];
            let mut prev: Vec<(u32, u32)> = vec![(u32::MAX, 0); n];
            let mut heap: BinaryHeap<(i64, u32)> = BinaryHeap::new();
            dist[s as usize] = 0;
            heap.push((0, s));
            while let Some((nd, v)) = heap.pop() {
                let d = -nd;
                if d > dist[v as usize] {
                    continue;
                }
                for (i, a) in self.adj[v as usize].iter().enumerate() {
                    if a.cap <= 0 {
                        continue;
                    }
                    let w = a.to as usize;
                    let nd = d + a.cost + potential[v as usize] - potential[w];
                    if nd < dist[w] {
                        dist[w] = nd;
                        prev[w] = (v, i as u32);
                        heap.push((-nd, a.to));
                    }
                }
            }
            if dist[t as usize] >= INF {
                break;
            }
            for v in 0..n {
                if dist[v] < INF {
                    potential[v] += dist[v];
                }
            }
            // Bottleneck along the path.
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let (u, i) = prev[v as usize];
                push = push.min(self.adj[u as usize][i as usize].cap);
                v = u;
            }
            let mut v = t;
            while v != s {
                let (u, i) = prev[v as usize];
                let rev;
                {
                    let a = &mut self.adj[u as usize][i as usize];
                    a.cap -= push;
                    cost += push * a.cost;
                    rev = a.rev;
                }
                let to = v;
                self.adj[to as usize][rev as usize].cap += push;
                v = u;
            }
            flow += push;
        }
        (flow, cost)
    }
}

/// Exact minimum bend count of any embedding-preserving orthogonal
/// representation of `g`. Panics if the network is infeasible, which a
/// validated plane 4-graph cannot trigger.
pub fn flow_min_bends(g: &PlaneGraph) -> u64 {
    let nv = g.vertex_count();
    let nf = g.face_count();
    // Node layout: vertices, then faces, then super source/sink.
    let s = (nv + nf) as u32;
    let t = s + 1;
    let mut net = Network::new(nv + nf + 2);

    let mut supply_total = 0i64;
    let mut demand_total = 0i64;

    for v in 0..nv {
        let supply = 4 - g.degree(v as u32) as i64;
        if supply > 0 {
            net.add(s, v as u32, supply, 0);
            supply_total += supply;
        }
    }
    for (fi, walk) in g.faces().iter().enumerate() {
        let corners = walk.len() as i64;
        let demand = if fi as u32 == g.external_face() { corners + 4 } else { corners - 4 };
        let fnode = (nv + fi) as u32;
        if demand > 0 {
            net.add(fnode, t, demand, 0);
            demand_total += demand;
        } else if demand < 0 {
            net.add(s, fnode, -demand, 0);
            supply_total += -demand;
        }
        // One vertex-to-face arc per corner incidence.
        for &h in walk {
            let v = g.target(h);
            net.add(v, fnode, 3, 0);
        }
    }
    // Face-to-face arcs across every edge (both directions).
    for e in 0..g.edge_count() as u32 {
        let fl = g.face_of(crate::graph::Half::new(e, false));
        let fr = g.face_of(crate::graph::Half::new(e, true));
        if fl == fr {
            continue; // a bridge: bends across it cancel out
        }
        let a = (nv + fl as usize) as u32;
        let b = (nv + fr as usize) as u32;
        net.add(a, b, i64::MAX / 8, 1);
        net.add(b, a, i64::MAX / 8, 1);
    }

    let (flow, cost) = net.min_cost_max_flow(s, t);
    assert_eq!(flow, supply_total.max(demand_total), "angle network must be feasible");
    assert_eq!(supply_total, demand_total, "Euler consistency");
    cost as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeSide, GraphInput, PlaneGraph};
    use alloc::vec;

    fn graph(
        vertices: &[u64],
        edges: &[(u64, u64, u64)],
        rotations: &[(u64, &[u64])],
        external: (u64, EdgeSide),
    ) -> PlaneGraph {
        PlaneGraph::from_input(&GraphInput {
            vertices: vertices.to_vec(),
            edges: edges.to_vec(),
            rotations: rotations.iter().map(|&(v, r)| (v, r.to_vec())).collect(),
            external,
            reference: None,
        })
        .unwrap()
    }

    #[test]
    fn cycles() {
        let square = graph(
            &[1, 2, 3, 4],
            &[(1, 1, 2), (2, 2, 3), (3, 3, 4), (4, 4, 1)],
            &[(1, &[4, 1]), (2, &[1, 2]), (3, &[2, 3]), (4, &[3, 4])],
            (1, EdgeSide::Right),
        );
        assert_eq!(flow_min_bends(&square), 0);

        let triangle = graph(
            &[1, 2, 3],
            &[(1, 1, 2), (2, 2, 3), (3, 3, 1)],
            &[(1, &[3, 1]), (2, &[1, 2]), (3, &[2, 3])],
            (1, EdgeSide::Right),
        );
        assert_eq!(flow_min_bends(&triangle), 1);

        // k-cycles need no bends for k >= 4.
        for k in 4..9u64 {
            let vertices: Vec<u64> = (1..=k).collect();
            let edges: Vec<(u64, u64, u64)> =
                (0..k).map(|i| (i + 1, i + 1, (i + 1) % k + 1)).collect();
            let rot: Vec<(u64, Vec<u64>)> = (0..k)
                .map(|i| ((i + 1), vec![if i == 0 { k } else { i }, i + 1]))
                .collect();
            let g = PlaneGraph::from_input(&GraphInput {
                vertices,
                edges,
                rotations: rot,
                external: (1, EdgeSide::Right),
                reference: None,
            })
            .unwrap();
            assert_eq!(flow_min_bends(&g), 0, "cycle of length {k}");
        }
    }

    #[test]
    fn digon_and_path() {
        let digon = graph(
            &[1, 2],
            &[(1, 1, 2), (2, 1, 2)],
            &[(1, &[1, 2]), (2, &[2, 1])],
            (1, EdgeSide::Left),
        );
        assert_eq!(flow_min_bends(&digon), 2);

        let path = graph(
            &[1, 2, 3],
            &[(1, 1, 2), (2, 2, 3)],
            &[(1, &[1]), (2, &[1, 2]), (3, &[2])],
            (1, EdgeSide::Left),
        );
        assert_eq!(flow_min_bends(&path), 0);
    }
}
