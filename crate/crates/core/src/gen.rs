//! Seeded random generator of embedded two-terminal series-parallel
//! 4-graphs, used by the verification harness and the benchmarks.
//!
//! The generator grows a composition tree under degree budgets and then
//! emits vertices, edges and clockwise rotations directly from the tree, so
//! the embedding is valid by construction. Biconnected instances get a real
//! reference edge closing the outer parallel composition; the rest are
//! series compositions that need a dummy edge downstream.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::graph::{EdgeSide, GraphInput, PlaneGraph};
use crate::{Error, Result};

/// Knobs for the generator. Distributions are small weight tables.
#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    /// Rough number of vertices to aim for (>= 2).
    pub target_vertices: u32,
    /// Relative weights of two- and three-child parallel compositions.
    pub p_width: [u32; 2],
    /// Weights of chain lengths 1, 2, 3, ...
    pub q_len: Vec<u32>,
    /// Percentage of instances built biconnected (reference edge present).
    pub biconnected_pct: u32,
    /// Relative weight of choosing series over parallel expansion.
    pub series_bias: u32,
    pub seed: u64,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            target_vertices: 20,
            p_width: [3, 1],
            q_len: vec![3, 2, 1],
            biconnected_pct: 70,
            series_bias: 2,
            seed: 1,
        }
    }
}

#[derive(Debug)]
enum GNode {
    Chain(u32),
    Series(Vec<u32>),
    Parallel(Vec<u32>),
}

struct GenTree {
    nodes: Vec<GNode>,
    root: u32,
}

fn weighted(rng: &mut ChaCha8Rng, weights: &[u32]) -> usize {
    let total: u32 = weights.iter().sum::<u32>().max(1);
    let mut x = rng.next_u32() % total;
    for (i, &w) in weights.iter().enumerate() {
        if x < w {
            return i;
        }
        x -= w;
    }
    weights.len() - 1
}

/// Grows a composition tree. `avail` bounds the indegree the component may
/// use at its two poles; degree splits at junctions and parallel poles keep
/// every vertex within degree four.
fn grow(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> GenTree {
    struct Item {
        slot: u32,
        avail: [u32; 2],
        budget: u32,
    }

    let mut nodes: Vec<GNode> = Vec::new();
    let mut stack: Vec<Item> = Vec::new();
    nodes.push(GNode::Chain(1));
    let root = 0u32;
    stack.push(Item { slot: root, avail: [3, 3], budget: spec.target_vertices });

    while let Some(item) = stack.pop() {
        let chain_len = |rng: &mut ChaCha8Rng, budget: u32| -> u32 {
            // Small budgets draw from the length table; large ones are
            // consumed as long chains so instance sizes track the target.
            if budget > 16 {
                budget / 2 + rng.next_u32() % (budget / 2)
            } else {
                let len = weighted(rng, &spec.q_len) as u32 + 1;
                len.min(budget.max(1))
            }
        };
        let can_parallel = item.avail[0] >= 2 && item.avail[1] >= 2;
        if item.budget <= 3 {
            nodes[item.slot as usize] = GNode::Chain(chain_len(rng, item.budget));
            continue;
        }
        // Composite kinds keep the tree growing; chains close it off.
        let kind = {
            let w_par = if can_parallel { 2 } else { 0 };
            match weighted(rng, &[spec.series_bias, w_par, 1]) {
                0 => 0,
                1 => 1,
                _ => 2,
            }
        };
        match kind {
            0 => {
                // Series of 2..4 parts through fresh junction vertices.
                // Each junction's four degree slots are split between the
                // two components meeting there.
                let parts = 2 + (rng.next_u32() % 3) as usize;
                let mut splits = Vec::with_capacity(parts - 1);
                for _ in 0..parts - 1 {
                    let a = 1 + (rng.next_u32() % 3);
                    let b = 1 + rng.next_u32() % (4 - a).max(1).min(3);
                    splits.push((a.min(3), b.min(3)));
                }
                let mut kids = Vec::with_capacity(parts);
                let share = (item.budget / parts as u32).max(1);
                for i in 0..parts {
                    let slot = nodes.len() as u32;
                    nodes.push(GNode::Chain(1));
                    kids.push(slot);
                    let a = if i == 0 { item.avail[0] } else { splits[i - 1].1 };
                    let b = if i == parts - 1 { item.avail[1] } else { splits[i].0 };
                    stack.push(Item { slot, avail: [a, b], budget: share });
                }
                nodes[item.slot as usize] = GNode::Series(kids);
            }
            1 => {
                let three = item.avail[0] >= 3
                    && item.avail[1] >= 3
                    && weighted(rng, &spec.p_width) == 1;
                let parts = if three { 3 } else { 2 } as u32;
                // Split the pole slots among the children independently at
                // the two poles; a child granted two slots at a pole may
                // end there with a nested parallel composition.
                let split_pole = |rng: &mut ChaCha8Rng, avail: u32| -> Vec<u32> {
                    let mut left = avail.min(4);
                    let mut out = Vec::with_capacity(parts as usize);
                    for i in 0..parts {
                        let remaining_children = parts - i - 1;
                        let maxi = (left - remaining_children).min(2).max(1);
                        // Prefer granting both slots so nested parallel
                        // endings (and their node types) stay common.
                        let take = if rng.next_u32() % 2 == 0 {
                            maxi
                        } else {
                            1 + rng.next_u32() % maxi
                        };
                        out.push(take);
                        left -= take;
                    }
                    out
                };
                let at_u = split_pole(rng, item.avail[0]);
                let at_v = split_pole(rng, item.avail[1]);
                let mut kids = Vec::with_capacity(parts as usize);
                let share = (item.budget / parts).max(1);
                for i in 0..parts as usize {
                    let slot = nodes.len() as u32;
                    nodes.push(GNode::Chain(1));
                    kids.push(slot);
                    stack.push(Item { slot, avail: [at_u[i], at_v[i]], budget: share });
                }
                nodes[item.slot as usize] = GNode::Parallel(kids);
            }
            _ => {
                nodes[item.slot as usize] = GNode::Chain(chain_len(rng, item.budget));
            }
        }
    }
    GenTree { nodes, root }
}

/// Emitted component boundary: edge ids at the two poles, leftmost first.
struct Emitted {
    at_source: Vec<u64>,
    at_sink: Vec<u64>,
}

struct Emitter {
    vertices: Vec<u64>,
    edges: Vec<(u64, u64, u64)>,
    /// Rotation under construction, as (vertex, clockwise edge ids).
    rotations: Vec<Vec<u64>>,
    next_vertex: u64,
    next_edge: u64,
}

impl Emitter {
    fn new_vertex(&mut self) -> u64 {
        let id = self.next_vertex;
        self.next_vertex += 1;
        self.vertices.push(id);
        self.rotations.push(Vec::new());
        id
    }

    fn new_edge(&mut self, u: u64, v: u64) -> u64 {
        let id = self.next_edge;
        self.next_edge += 1;
        self.edges.push((id, u, v));
        id
    }

    fn rot_mut(&mut self, v: u64) -> &mut Vec<u64> {
        &mut self.rotations[(v - 1) as usize]
    }

    /// Emits the component of `slot` between existing vertices `u` and `v`.
    /// Rotations at interior vertices are written completely; the pole
    /// rotations are returned for the caller to assemble.
    fn emit(&mut self, tree: &GenTree, slot: u32, u: u64, v: u64) -> Emitted {
        match &tree.nodes[slot as usize] {
            GNode::Chain(len) => {
                let mut at = u;
                let mut first = 0;
                let mut prev_edge = 0;
                for i in 0..*len {
                    let next = if i + 1 == *len { v } else { self.new_vertex() };
                    let e = self.new_edge(at, next);
                    if i == 0 {
                        first = e;
                    } else {
                        // Interior vertex rotation: the two chain edges.
                        self.rot_mut(at).extend([prev_edge, e]);
                    }
                    prev_edge = e;
                    at = next;
                }
                Emitted { at_source: vec![first], at_sink: vec![prev_edge] }
            }
            GNode::Series(kids) => {
                let kids = kids.clone();
                let mut at = u;
                let mut first: Option<Vec<u64>> = None;
                let mut prev_sink: Vec<u64> = Vec::new();
                for (i, &k) in kids.iter().enumerate() {
                    let next = if i + 1 == kids.len() { v } else { self.new_vertex() };
                    let em = self.emit(tree, k, at, next);
                    if i == 0 {
                        first = Some(em.at_source);
                    } else {
                        // Junction rotation: the previous component's sink
                        // ends (already in clockwise order, rightmost
                        // first) then this component's source ends
                        // (leftmost first).
                        let mut rot: Vec<u64> = prev_sink.clone();
                        rot.extend(em.at_source.iter().copied());
                        *self.rot_mut(at) = rot;
                    }
                    prev_sink = em.at_sink;
                    at = next;
                }
                Emitted { at_source: first.unwrap(), at_sink: prev_sink }
            }
            GNode::Parallel(kids) => {
                let kids = kids.clone();
                let mut at_source = Vec::new();
                let mut at_sink_rev = Vec::new();
                for &k in &kids {
                    let em = self.emit(tree, k, u, v);
                    at_source.extend(em.at_source);
                    at_sink_rev.push(em.at_sink);
                }
                // At the sink the clockwise order reverses.
                let mut at_sink = Vec::new();
                for ends in at_sink_rev.into_iter().rev() {
                    at_sink.extend(ends);
                }
                Emitted { at_source, at_sink }
            }
        }
    }
}

/// Generates a random embedded SP 4-graph; deterministic per seed.
pub fn generate_sp(spec: &GeneratorSpec) -> Result<PlaneGraph> {
    if spec.target_vertices < 2 {
        return Err(Error::BadGeneratorSpec);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let biconnected = (rng.next_u32() % 100) < spec.biconnected_pct;

    let tree = grow(spec, &mut rng);
    // A biconnected instance must have a parallel root so that adding the
    // reference edge keeps the degree cap; wrap other roots.
    let mut emitter = Emitter {
        vertices: Vec::new(),
        edges: Vec::new(),
        rotations: Vec::new(),
        next_vertex: 1,
        next_edge: 1,
    };
    let s = emitter.new_vertex();
    let t = emitter.new_vertex();
    let em = emit_root(&mut emitter, &tree, s, t);

    let (external, reference) = if biconnected {
        // Reference edge to the right of the component: rotations at the
        // terminals are cyclically [e, leftmost .. rightmost] at the source
        // and [e, rightmost .. leftmost] at the sink.
        let e = emitter.new_edge(s, t);
        let mut rot_s = vec![e];
        rot_s.extend(em.at_source.iter().copied());
        *emitter.rot_mut(s) = rot_s;
        let mut rot_t = vec![e];
        rot_t.extend(em.at_sink.iter().copied());
        *emitter.rot_mut(t) = rot_t;
        ((e, EdgeSide::Right), Some(e))
    } else {
        *emitter.rot_mut(s) = em.at_source.clone();
        *emitter.rot_mut(t) = em.at_sink.clone();
        // The outer face touches the wrap corner at the source, between its
        // last and first rotation entries: the face left of the rightmost
        // end walking into the source.
        let rm = *em.at_source.last().unwrap();
        let (_, eu, _) = emitter.edges[(rm - 1) as usize];
        let side = if eu == s { EdgeSide::Right } else { EdgeSide::Left };
        ((rm, side), None)
    };

    let input = GraphInput {
        vertices: emitter.vertices,
        edges: emitter.edges,
        rotations: emitter
            .rotations
            .iter()
            .enumerate()
            .map(|(i, r)| ((i + 1) as u64, r.clone()))
            .collect(),
        external,
        reference,
    };
    PlaneGraph::from_input(&input)
}

fn emit_root(emitter: &mut Emitter, tree: &GenTree, s: u64, t: u64) -> Emitted {
    emitter.emit(tree, tree.root, s, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let spec = GeneratorSpec { target_vertices: 10, seed: 42, ..Default::default() };
        let a = generate_sp(&spec).unwrap();
        let b = generate_sp(&spec).unwrap();
        assert_eq!(a.vertex_count(), b.vertex_count());
        assert_eq!(a.edge_count(), b.edge_count());
        for e in 0..a.edge_count() as u32 {
            assert_eq!(a.endpoints(e), b.endpoints(e));
        }
    }

    #[test]
    fn valid_instances() {
        for seed in 0..200u64 {
            let spec = GeneratorSpec {
                target_vertices: 6 + (seed % 25) as u32,
                seed,
                ..Default::default()
            };
            let g = generate_sp(&spec).expect("generator emits valid embeddings");
            assert!(g.vertex_count() >= 2);
            for v in 0..g.vertex_count() as u32 {
                assert!(g.degree(v) <= 4);
            }
        }
    }
}
