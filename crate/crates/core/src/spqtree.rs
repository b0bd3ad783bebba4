//! SPQ*-decomposition trees of biconnected plane series-parallel 4-graphs.
//!
//! The tree is built for a reference edge `e = (s, t)` on the external face:
//! the root is a P-node over the Q*-node of `e` and the decomposition of the
//! rest. Normal form: no S-node has an S-node child, no non-root P-node has
//! a P-node child, and maximal edge chains are merged into single Q*-nodes.
//! Children of P-nodes are ordered left-to-right as embedded.

use alloc::vec;
use alloc::vec::Vec;
use alloc::string::String;
use core::fmt::Write as _;

use crate::graph::{Half, PlaneGraph};
use crate::interval::SpiralityInterval;
use crate::{Error, Result};

pub type NodeId = u32;
pub const NO_NODE: NodeId = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    QStar,
    S,
    P,
    PRoot,
}

/// Left or right side of a two-child P-node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

pub fn phi(side: Side) -> u8 {
    match side {
        Side::L => 0,
        Side::R => 1,
    }
}

/// Type of a P-node with two children, following the pole in/out-degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PNodeType {
    /// Both poles have indegree two; outdegrees `lambda <= beta`.
    Pio2 { lambda: u8, beta: u8, gamma: u8 },
    /// One pole indegree two, the other indegree three with its doubled
    /// side `d`; outdegrees `lambda <= beta`.
    Pio3 { d: Side, lambda: u8, beta: u8, gamma: u8, phi_d: u8 },
    /// Both poles indegree three; `d_u`, `d_v` are the doubled sides.
    Pin3 { d_u: Side, d_v: Side, phi_sum: u8 },
}

impl PNodeType {
    pub fn pio2(lambda: u8, beta: u8) -> Self {
        assert!(1 <= lambda && lambda <= beta && beta <= 2);
        PNodeType::Pio2 { lambda, beta, gamma: lambda + beta - 2 }
    }

    pub fn pio3(d: Side, lambda: u8, beta: u8) -> Self {
        assert!(1 <= lambda && lambda <= beta && beta <= 2);
        assert!(!(lambda == 2 && beta == 2), "Pio3 with both outdegrees 2 is impossible");
        PNodeType::Pio3 { d, lambda, beta, gamma: lambda + beta - 2, phi_d: phi(d) }
    }

    pub fn pin3(d_u: Side, d_v: Side) -> Self {
        PNodeType::Pin3 { d_u, d_v, phi_sum: phi(d_u) + phi(d_v) }
    }

    /// The window the children's spirality difference must meet, doubled.
    pub fn window(&self) -> SpiralityInterval {
        match *self {
            PNodeType::Pio2 { gamma, .. } => {
                SpiralityInterval::new(4, 8 - 2 * gamma as i32)
            }
            PNodeType::Pio3 { gamma, .. } => {
                SpiralityInterval::new(5, 7 - 2 * gamma as i32)
            }
            PNodeType::Pin3 { .. } => SpiralityInterval::new(6, 6),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpqNode {
    pub kind: NodeKind,
    /// Source and sink pole, as graph vertex indices.
    pub poles: [u32; 2],
    /// Children ordered source-to-sink (S) or left-to-right (P).
    pub children: Vec<NodeId>,
    pub parent: NodeId,
    /// Q*-nodes: the chain's edges in order from source to sink.
    pub chain: Vec<u32>,
    /// Pertinent edges incident to each pole (at most three).
    pub pole_edges: [PoleEdges; 2],
    /// Canonical exposed edge, if any.
    pub exposed: Option<u32>,
    /// Type of a non-root two-child P-node.
    pub ty: Option<PNodeType>,
}

/// Pertinent edges at a pole (up to four at the root).
#[derive(Debug, Clone, Copy, Default)]
pub struct PoleEdges {
    edges: [u32; 4],
    len: u8,
}

impl PoleEdges {
    fn push(&mut self, e: u32) {
        assert!(self.len < 4, "pole degree exceeds 4");
        self.edges[self.len as usize] = e;
        self.len += 1;
    }

    fn extend(&mut self, other: &PoleEdges) {
        for &e in other.as_slice() {
            self.push(e);
        }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.edges[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

impl SpqNode {
    pub fn indeg(&self, pole: usize) -> usize {
        self.pole_edges[pole].len()
    }

    pub fn qstar_len(&self) -> u32 {
        debug_assert_eq!(self.kind, NodeKind::QStar);
        self.chain.len() as u32
    }
}

/// The SPQ*-tree of a biconnected plane SP 4-graph for a reference edge.
#[derive(Debug, Clone)]
pub struct SpqTree {
    nodes: Vec<SpqNode>,
    root: NodeId,
    /// Root children: the Q*-node of the reference edge and the rest.
    ref_child: NodeId,
    eta: NodeId,
    reference: u32,
    /// Source and sink of the whole graph (poles of the root).
    terminals: [u32; 2],
}

impl SpqTree {
    pub fn node(&self, id: NodeId) -> &SpqNode {
        &self.nodes[id as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// The non-reference child of the root.
    pub fn eta(&self) -> NodeId {
        self.eta
    }

    pub fn ref_child(&self) -> NodeId {
        self.ref_child
    }

    pub fn reference_edge(&self) -> u32 {
        self.reference
    }

    pub fn terminals(&self) -> [u32; 2] {
        self.terminals
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> {
        0..self.nodes.len() as NodeId
    }

    /// Node ids in post order (children before parents), iteratively.
    pub fn post_order(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, 0usize)];
        while let Some(&mut (id, ref mut cursor)) = stack.last_mut() {
            let node = &self.nodes[id as usize];
            if *cursor < node.children.len() {
                let c = node.children[*cursor];
                *cursor += 1;
                stack.push((c, 0));
            } else {
                out.push(id);
                stack.pop();
            }
        }
        out
    }

    /// Outdegree of a pole of a node: edges at the pole outside the
    /// pertinent graph (the whole graph's degree minus the indegree).
    pub fn outdeg(&self, g: &PlaneGraph, id: NodeId, pole: usize) -> usize {
        let node = self.node(id);
        g.degree(node.poles[pole]) - node.indeg(pole)
    }

    /// Doubled `k` coefficient of a two-child P-node for `(pole, side)`:
    /// 2 stands for 1, 1 for one half.
    pub fn k2(&self, g: &PlaneGraph, id: NodeId, pole: usize, side: Side) -> i32 {
        let node = self.node(id);
        debug_assert_eq!(node.children.len(), 2);
        let child = node.children[if side == Side::L { 0 } else { 1 }];
        let child_indeg = self.node(child).indeg_at(node.poles[pole]);
        if child_indeg == 1 && self.outdeg(g, id, pole) == 1 {
            2
        } else {
            1
        }
    }

    /// Indented text dump for golden tests.
    pub fn dump_text(&self, g: &PlaneGraph) -> String {
        let mut out = String::new();
        let mut stack = vec![(self.root, 0u32)];
        while let Some((id, depth)) = stack.pop() {
            let node = self.node(id);
            for _ in 0..depth {
                out.push_str("  ");
            }
            let kind = match node.kind {
                NodeKind::QStar => "Q*",
                NodeKind::S => "S",
                NodeKind::P => "P",
                NodeKind::PRoot => "P^r",
            };
            let _ = write!(
                out,
                "{} poles=({},{})",
                kind,
                g.vertex_id(node.poles[0]),
                g.vertex_id(node.poles[1])
            );
            if node.kind == NodeKind::QStar {
                let _ = write!(out, " len={}", node.qstar_len());
            }
            if let Some(ty) = &node.ty {
                let _ = write!(out, " {ty:?}");
            }
            out.push('\n');
            for &c in node.children.iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        out
    }
}

impl SpqNode {
    /// Indegree at a given graph vertex (must be one of the poles).
    pub fn indeg_at(&self, v: u32) -> usize {
        if self.poles[0] == v {
            self.indeg(0)
        } else {
            debug_assert_eq!(self.poles[1], v);
            self.indeg(1)
        }
    }

    fn pole_edges_at(&self, v: u32) -> &PoleEdges {
        if self.poles[0] == v {
            &self.pole_edges[0]
        } else {
            debug_assert_eq!(self.poles[1], v);
            &self.pole_edges[1]
        }
    }

    /// Pertinent edges of this node at a pole given as a graph vertex.
    pub fn pole_edges_at_pub(&self, v: u32) -> &[u32] {
        self.pole_edges_at(v).as_slice()
    }
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
enum BinKind {
    Leaf(u32),
    Series(u32, u32),
    Parallel(u32, u32),
}

struct BinNode {
    kind: BinKind,
    /// Ends as composed; orientation is resolved during conversion.
    ends: [u32; 2],
}

/// Builds the normalized SPQ*-tree of `g` with respect to `ref_edge`.
///
/// The external face must border `ref_edge`; the tree is built so that the
/// external face is to the right of the reference edge from source to sink
/// (the stored direction of the edge is swapped when needed).
pub fn build_spq_tree(g: &PlaneGraph, ref_edge: u32) -> Result<SpqTree> {
    let [u, v] = g.endpoints(ref_edge);
    let left_face = g.face_of(Half::new(ref_edge, false));
    let right_face = g.face_of(Half::new(ref_edge, true));
    let (s, t) = if right_face == g.external_face() {
        (u, v)
    } else if left_face == g.external_face() {
        (v, u)
    } else {
        return Err(Error::ReferenceNotExternal);
    };

    let bins = reduce(g, ref_edge, s, t)?;
    let mut builder = TreeBuilder { g, bins: &bins.arena, nodes: Vec::new() };
    let eta = builder.convert(bins.top, s);
    let mut nodes = builder.nodes;

    // Q*-node for the reference edge and the P-root.
    let ref_child = nodes.len() as NodeId;
    nodes.push(SpqNode {
        kind: NodeKind::QStar,
        poles: [s, t],
        children: Vec::new(),
        parent: NO_NODE,
        chain: vec![ref_edge],
        pole_edges: Default::default(),
        exposed: Some(ref_edge),
        ty: None,
    });
    let root = nodes.len() as NodeId;
    nodes.push(SpqNode {
        kind: NodeKind::PRoot,
        poles: [s, t],
        children: vec![ref_child, eta],
        parent: NO_NODE,
        chain: Vec::new(),
        pole_edges: Default::default(),
        exposed: None,
        ty: None,
    });

    let mut tree = SpqTree {
        nodes,
        root,
        ref_child,
        eta,
        reference: ref_edge,
        terminals: [s, t],
    };
    finish_tree(g, &mut tree)?;
    Ok(tree)
}

struct Reduction {
    arena: Vec<BinNode>,
    top: u32,
}

/// Series-parallel reduction of `g` minus the reference edge, between the
/// poles `s` and `t`. Returns the binary composition tree.
fn reduce(g: &PlaneGraph, ref_edge: u32, s: u32, t: u32) -> Result<Reduction> {
    struct WEdge {
        bin: u32,
        ends: [u32; 2],
        alive: bool,
    }

    let nv = g.vertex_count();
    let mut arena: Vec<BinNode> = Vec::with_capacity(g.edge_count() * 2);
    let mut wedges: Vec<WEdge> = Vec::with_capacity(g.edge_count() * 2);
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); nv];

    for e in 0..g.edge_count() as u32 {
        if e == ref_edge {
            continue;
        }
        let ends = g.endpoints(e);
        let bin = arena.len() as u32;
        arena.push(BinNode { kind: BinKind::Leaf(e), ends });
        let w = wedges.len() as u32;
        wedges.push(WEdge { bin, ends, alive: true });
        incident[ends[0] as usize].push(w);
        incident[ends[1] as usize].push(w);
    }

    let mut live = wedges.len();
    let mut queue: Vec<u32> = (0..nv as u32).collect();
    let mut queued = vec![true; nv];

    while let Some(x) = queue.pop() {
        queued[x as usize] = false;
        loop {
            // Compact the incidence list of x.
            incident[x as usize].retain(|&w| {
                let we = &wedges[w as usize];
                we.alive && (we.ends[0] == x || we.ends[1] == x)
            });
            let list = &incident[x as usize];

            // Parallel pair at x?
            let mut merge: Option<(u32, u32)> = None;
            'outer: for i in 0..list.len() {
                for j in i + 1..list.len() {
                    let (a, b) = (list[i], list[j]);
                    let oa = other_end(&wedges[a as usize].ends, x);
                    let ob = other_end(&wedges[b as usize].ends, x);
                    if oa == ob {
                        merge = Some((a, b));
                        break 'outer;
                    }
                }
            }
            if let Some((a, b)) = merge {
                let y = other_end(&wedges[a as usize].ends, x);
                let ends = wedges[a as usize].ends;
                let bin = arena.len() as u32;
                arena.push(BinNode {
                    kind: BinKind::Parallel(wedges[a as usize].bin, wedges[b as usize].bin),
                    ends,
                });
                wedges[a as usize].alive = false;
                wedges[b as usize].alive = false;
                live -= 1;
                let w = wedges.len() as u32;
                wedges.push(WEdge { bin, ends, alive: true });
                incident[x as usize].push(w);
                incident[y as usize].push(w);
                if !queued[y as usize] {
                    queued[y as usize] = true;
                    queue.push(y);
                }
                continue;
            }

            // Series reduction at x (never at the terminals).
            if x != s && x != t && list.len() == 2 {
                let (a, b) = (list[0], list[1]);
                let pa = other_end(&wedges[a as usize].ends, x);
                let pb = other_end(&wedges[b as usize].ends, x);
                // Orient: a spans pa..x, b spans x..pb.
                let bin = arena.len() as u32;
                arena.push(BinNode {
                    kind: BinKind::Series(wedges[a as usize].bin, wedges[b as usize].bin),
                    ends: [pa, pb],
                });
                wedges[a as usize].alive = false;
                wedges[b as usize].alive = false;
                live -= 1;
                let w = wedges.len() as u32;
                wedges.push(WEdge { bin, ends: [pa, pb], alive: true });
                incident[pa as usize].push(w);
                incident[pb as usize].push(w);
                incident[x as usize].clear();
                for z in [pa, pb] {
                    if !queued[z as usize] {
                        queued[z as usize] = true;
                        queue.push(z);
                    }
                }
            }
            break;
        }
    }

    if live != 1 {
        return Err(Error::NotSeriesParallel);
    }
    let w = wedges.iter().find(|w| w.alive).unwrap();
    let mut ends = w.ends;
    ends.sort_unstable();
    let mut st = [s, t];
    st.sort_unstable();
    if ends != st {
        return Err(Error::NotSeriesParallel);
    }
    Ok(Reduction { arena, top: w.bin })
}

fn other_end(ends: &[u32; 2], x: u32) -> u32 {
    if ends[0] == x { ends[1] } else { ends[0] }
}

/// Orientation-resolved item gathered from a same-kind binary comb.
#[derive(Clone, Copy)]
enum Frag {
    Edge(u32),
    Node(u32, u32), // (bin id, source vertex)
}

struct TreeBuilder<'a> {
    g: &'a PlaneGraph,
    bins: &'a [BinNode],
    nodes: Vec<SpqNode>,
}

impl<'a> TreeBuilder<'a> {
    /// Converts the binary node `bin`, oriented with the given source, into
    /// a normalized n-ary node. Iterative over an explicit task stack.
    fn convert(&mut self, bin: u32, source: u32) -> NodeId {
        // Tasks are processed LIFO; a composite waits for its fragments.
        enum Task {
            Start { bin: u32, source: u32, dest: usize },
            FinishS { items: Vec<SFrag>, poles: [u32; 2], dest: usize },
            FinishP { kids: Vec<usize>, poles: [u32; 2], dest: usize },
        }
        enum SFrag {
            Chain(Vec<u32>),
            Sub(usize), // result slot
        }

        let mut results: Vec<NodeId> = Vec::new();
        let mut slot = || {
            results.push(NO_NODE);
            results.len() - 1
        };
        let root_slot = slot();
        let mut tasks = vec![Task::Start { bin, source, dest: root_slot }];

        while let Some(task) = tasks.pop() {
            match task {
                Task::Start { bin, source, dest } => {
                    let node = &self.bins[bin as usize];
                    let sink = other_end(&node.ends, source);
                    match node.kind {
                        BinKind::Leaf(e) => {
                            results[dest] = self.make_qstar(vec![e], [source, sink]);
                        }
                        BinKind::Series(..) => {
                            // Gather the series comb left-to-right; merge
                            // runs of leaf edges into chains.
                            let frags = self.gather_series(bin, source);
                            let mut items: Vec<SFrag> = Vec::new();
                            let mut run: Vec<u32> = Vec::new();
                            let mut subs: Vec<(u32, u32, usize)> = Vec::new();
                            for f in frags {
                                match f {
                                    Frag::Edge(e) => run.push(e),
                                    Frag::Node(b, src) => {
                                        if !run.is_empty() {
                                            items.push(SFrag::Chain(core::mem::take(&mut run)));
                                        }
                                        let sl = {
                                            results.push(NO_NODE);
                                            results.len() - 1
                                        };
                                        items.push(SFrag::Sub(sl));
                                        subs.push((b, src, sl));
                                    }
                                }
                            }
                            if !run.is_empty() {
                                items.push(SFrag::Chain(run));
                            }
                            tasks.push(Task::FinishS { items, poles: [source, sink], dest });
                            for (b, src, sl) in subs {
                                tasks.push(Task::Start { bin: b, source: src, dest: sl });
                            }
                        }
                        BinKind::Parallel(..) => {
                            let frags = self.gather_parallel(bin, source);
                            let mut kids: Vec<usize> = Vec::new();
                            let mut subs: Vec<(u32, u32, usize)> = Vec::new();
                            for f in frags {
                                match f {
                                    Frag::Edge(e) => {
                                        let sl = {
                                            results.push(NO_NODE);
                                            results.len() - 1
                                        };
                                        let q = self.make_qstar(vec![e], [source, sink]);
                                        results[sl] = q;
                                        kids.push(sl);
                                    }
                                    Frag::Node(b, src) => {
                                        let sl = {
                                            results.push(NO_NODE);
                                            results.len() - 1
                                        };
                                        kids.push(sl);
                                        subs.push((b, src, sl));
                                    }
                                }
                            }
                            tasks.push(Task::FinishP { kids, poles: [source, sink], dest });
                            for (b, src, sl) in subs {
                                tasks.push(Task::Start { bin: b, source: src, dest: sl });
                            }
                        }
                    }
                }
                Task::FinishS { items, poles, dest } => {
                    let mut kids: Vec<NodeId> = Vec::new();
                    // Walk items in order, tracking the running junction.
                    let mut at = poles[0];
                    for item in &items {
                        match item {
                            SFrag::Chain(edges) => {
                                let end = self.chain_far_end(edges, at);
                                let q = self.make_qstar(edges.clone(), [at, end]);
                                kids.push(q);
                                at = end;
                            }
                            SFrag::Sub(sl) => {
                                let id = results[*sl];
                                debug_assert_ne!(id, NO_NODE);
                                kids.push(id);
                                at = self.nodes[id as usize].poles[1];
                            }
                        }
                    }
                    debug_assert_eq!(at, poles[1]);
                    if kids.len() == 1 {
                        results[dest] = kids[0];
                    } else {
                        results[dest] = self.make_node(NodeKind::S, poles, kids);
                    }
                }
                Task::FinishP { kids, poles, dest } => {
                    let ids: Vec<NodeId> = kids.iter().map(|&sl| results[sl]).collect();
                    debug_assert!(ids.iter().all(|&id| id != NO_NODE));
                    results[dest] = self.make_node(NodeKind::P, poles, ids);
                }
            }
        }
        results[root_slot]
    }

    /// Leaves of the maximal series comb under `bin`, ordered from `source`.
    fn gather_series(&self, bin: u32, source: u32) -> Vec<Frag> {
        let mut out = Vec::new();
        let mut stack = vec![(bin, source)];
        while let Some((b, src)) = stack.pop() {
            let node = &self.bins[b as usize];
            match node.kind {
                BinKind::Series(l, r) => {
                    // Order the two children from src; the shared junction
                    // is the end of each child that the other child touches.
                    let le = self.bins[l as usize].ends;
                    let re = self.bins[r as usize].ends;
                    let (first, second, fe, se) = if le[0] == src || le[1] == src {
                        (l, r, le, re)
                    } else {
                        (r, l, re, le)
                    };
                    let junction = if fe[0] == src { fe[1] } else { fe[0] };
                    debug_assert!(se[0] == junction || se[1] == junction);
                    // LIFO: push the second half first.
                    stack.push((second, junction));
                    stack.push((first, src));
                }
                BinKind::Leaf(e) => out.push(Frag::Edge(e)),
                BinKind::Parallel(..) => out.push(Frag::Node(b, src)),
            }
        }
        out
    }

    /// Leaves of the maximal parallel comb under `bin` (unordered; the
    /// embedding fixes the order later).
    fn gather_parallel(&self, bin: u32, source: u32) -> Vec<Frag> {
        let mut out = Vec::new();
        let mut stack = vec![bin];
        while let Some(b) = stack.pop() {
            let node = &self.bins[b as usize];
            match node.kind {
                BinKind::Parallel(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
                BinKind::Leaf(e) => out.push(Frag::Edge(e)),
                BinKind::Series(..) => out.push(Frag::Node(b, source)),
            }
        }
        out
    }

    fn chain_far_end(&self, edges: &[u32], mut at: u32) -> u32 {
        for &e in edges {
            let [a, b] = self.g.endpoints(e);
            at = if a == at { b } else { a };
        }
        at
    }

    fn make_qstar(&mut self, chain: Vec<u32>, poles: [u32; 2]) -> NodeId {
        debug_assert_eq!(self.chain_far_end(&chain, poles[0]), poles[1]);
        let id = self.nodes.len() as NodeId;
        self.nodes.push(SpqNode {
            kind: NodeKind::QStar,
            poles,
            children: Vec::new(),
            parent: NO_NODE,
            chain,
            pole_edges: Default::default(),
            exposed: None,
            ty: None,
        });
        id
    }

    fn make_node(&mut self, kind: NodeKind, poles: [u32; 2], children: Vec<NodeId>) -> NodeId {
        let id = self.nodes.len() as NodeId;
        self.nodes.push(SpqNode {
            kind,
            poles,
            children,
            parent: NO_NODE,
            chain: Vec::new(),
            pole_edges: Default::default(),
            exposed: None,
            ty: None,
        });
        id
    }
}

/// Post-construction passes: parent links, pole edge lists, embedding order
/// of P-children, exposed edges, P-node types, and invariant checks.
fn finish_tree(g: &PlaneGraph, tree: &mut SpqTree) -> Result<()> {
    let order = tree.post_order();

    // Parent links.
    for &id in &order {
        for ci in 0..tree.nodes[id as usize].children.len() {
            let c = tree.nodes[id as usize].children[ci];
            tree.nodes[c as usize].parent = id;
        }
    }

    // Pole edge lists, bottom-up.
    for &id in &order {
        let node = &tree.nodes[id as usize];
        let mut pe: [PoleEdges; 2] = Default::default();
        match node.kind {
            NodeKind::QStar => {
                pe[0].push(*node.chain.first().unwrap());
                pe[1].push(*node.chain.last().unwrap());
            }
            NodeKind::S => {
                let first = node.children[0];
                let last = *node.children.last().unwrap();
                pe[0] = *tree.nodes[first as usize].pole_edges_at(node.poles[0]);
                pe[1] = *tree.nodes[last as usize].pole_edges_at(node.poles[1]);
            }
            NodeKind::P | NodeKind::PRoot => {
                let children = node.children.clone();
                let poles = node.poles;
                for c in children {
                    pe[0].extend(tree.nodes[c as usize].pole_edges_at(poles[0]));
                    pe[1].extend(tree.nodes[c as usize].pole_edges_at(poles[1]));
                }
            }
        }
        tree.nodes[id as usize].pole_edges = pe;
    }

    // Left-to-right order of P-children from the rotation at the source
    // pole: the pertinent edges occupy a contiguous clockwise block; the
    // first child after the non-pertinent block is leftmost.
    for &id in &order {
        let node = &tree.nodes[id as usize];
        if node.kind != NodeKind::P {
            continue;
        }
        if node.children.len() > 3 {
            return Err(Error::NotSeriesParallel);
        }
        let u = node.poles[0];
        let rot = g.rotation(u);
        let deg = rot.len();
        let mine = &node.pole_edges[0];
        let in_block = |e: u32| mine.as_slice().contains(&e);
        // Find the first rotation position whose predecessor is outside.
        let mut start = usize::MAX;
        for p in 0..deg {
            let prev = (p + deg - 1) % deg;
            if in_block(rot[p]) && !in_block(rot[prev]) {
                start = p;
                break;
            }
        }
        assert!(start != usize::MAX, "pertinent edges not a proper block at the pole");
        let offset = |e: u32| -> usize {
            let p = g.rot_pos(e, u) as usize;
            (p + deg - start) % deg
        };
        let mut kids: Vec<(usize, NodeId)> = tree.nodes[id as usize]
            .children
            .iter()
            .map(|&c| {
                let key = tree.nodes[c as usize]
                    .pole_edges_at(u)
                    .as_slice()
                    .iter()
                    .map(|&e| offset(e))
                    .min()
                    .expect("child has pertinent edges at the pole");
                (key, c)
            })
            .collect();
        kids.sort_unstable();
        tree.nodes[id as usize].children = kids.into_iter().map(|(_, c)| c).collect();
    }

    // Exposed edges and P-node types; structural invariants.
    for &id in &order {
        let node = &tree.nodes[id as usize];
        let exposed = match node.kind {
            NodeKind::QStar => Some(node.chain[0]),
            NodeKind::S => node
                .children
                .iter()
                .find(|&&c| tree.nodes[c as usize].kind == NodeKind::QStar)
                .map(|&c| tree.nodes[c as usize].chain[0]),
            _ => None,
        };
        tree.nodes[id as usize].exposed = exposed;
    }

    for &id in &order {
        let node = &tree.nodes[id as usize];
        match node.kind {
            NodeKind::S => {
                assert!(node.children.len() >= 2, "S-node with fewer than two children");
                for &c in &node.children {
                    assert_ne!(tree.nodes[c as usize].kind, NodeKind::S, "S child of S");
                }
            }
            NodeKind::P => {
                assert!((2..=3).contains(&node.children.len()));
                for &c in &node.children {
                    let k = tree.nodes[c as usize].kind;
                    assert!(k == NodeKind::QStar || k == NodeKind::S, "P child of P");
                }
                let ty = classify_p_node(tree, g, id);
                tree.nodes[id as usize].ty = ty;
            }
            _ => {}
        }
    }

    Ok(())
}

/// Classifies a non-root P-node with two children; three-child P-nodes
/// return `None` (they have a single composition rule).
pub fn classify_p_node(tree: &SpqTree, g: &PlaneGraph, id: NodeId) -> Option<PNodeType> {
    let node = tree.node(id);
    debug_assert_eq!(node.kind, NodeKind::P);
    if node.children.len() != 2 {
        return None;
    }
    let ind = [node.indeg(0), node.indeg(1)];
    let out = [tree.outdeg(g, id, 0), tree.outdeg(g, id, 1)];
    let doubled_side = |pole: usize| -> Side {
        let v = node.poles[pole];
        let left = tree.node(node.children[0]).indeg_at(v);
        if left == 2 { Side::L } else { Side::R }
    };
    match ind {
        [2, 2] => {
            let (l, b) = (out[0].min(out[1]) as u8, out[0].max(out[1]) as u8);
            Some(PNodeType::pio2(l, b))
        }
        [2, 3] => Some(PNodeType::pio3(doubled_side(1), out[0].min(out[1]) as u8, out[0].max(out[1]) as u8)),
        [3, 2] => Some(PNodeType::pio3(doubled_side(0), out[0].min(out[1]) as u8, out[0].max(out[1]) as u8)),
        [3, 3] => Some(PNodeType::pin3(doubled_side(0), doubled_side(1))),
        other => panic!("impossible P-node pole indegrees {other:?}"),
    }
}

/// Canonical exposed edge of a Q*- or S-node, if any.
pub fn exposed_edge(tree: &SpqTree, id: NodeId) -> Option<u32> {
    tree.node(id).exposed
}
