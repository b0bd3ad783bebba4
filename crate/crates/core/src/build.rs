//! Top-down construction of a bend-minimum orthogonal representation, the
//! spirality evaluator and the substitution operation.
//!
//! The construction runs in two passes once the bottom-up budgets exist:
//!
//! 1. *Targets*: walk down the tree assigning each node a target spirality
//!    inside its (possibly widened) interval, choosing the pole angle
//!    variables of P-nodes and routing extra bends onto exposed edges.
//! 2. *Emission*: write every corner angle and edge turn word. Q*-nodes
//!    realize their spirality as same-direction turns; S-nodes set junction
//!    corners from the flanking P-node's angle variables; P-nodes set the
//!    corner between their children; the root closes the internal face next
//!    to the reference edge.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::budget::{effective_breakpoints, Analysis};
use crate::graph::{Half, PlaneGraph};
use crate::interval::{Spirality2, SpiralityInterval};
use crate::rep::{OrthogonalRepresentation, Turn};
use crate::spqtree::{NodeId, NodeKind, Side, SpqTree};
use crate::{Error, Result};

/// Optional variation knob: a seed randomizes tie-breaking among equally
/// valid choices (angle-variable candidates, series slack distribution)
/// without changing any budget. Used to produce alternative representations
/// of the same optimum.
#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    pub choice_seed: Option<u64>,
}

/// A constructed bend-minimum representation.
#[derive(Debug, Clone)]
pub struct Built {
    /// Representation of the input graph (dummy reference edge stripped).
    pub rep: OrthogonalRepresentation,
    /// Representation on the augmented graph with the dummy edge closed,
    /// kept only when a dummy was stripped; see [`Built::rep_aug`].
    aug: Option<OrthogonalRepresentation>,
    /// Target spirality per tree node, doubled.
    pub targets: Vec<Option<Spirality2>>,
    /// Chosen angle variables per P-node: `[a_u^l, a_u^r, a_v^l, a_v^r]`.
    pub alphas: Vec<Option<[u8; 4]>>,
    /// Bends placed on the reference edge.
    pub ref_bends: u32,
}

impl Built {
    /// Representation on the augmented graph; spirality measurement and
    /// compaction work on this one. Coincides with [`Built::rep`] when the
    /// reference edge is real.
    pub fn rep_aug(&self) -> &OrthogonalRepresentation {
        self.aug.as_ref().unwrap_or(&self.rep)
    }
}

/// Picks the root child's target spirality and the bends on the reference
/// edge. Inside the window the value closest to 4 wins (ties toward the
/// smaller); outside, the nearer interval end.
pub fn choose_root_spirality(
    i_eta: &SpiralityInterval,
    window: &SpiralityInterval,
    is_dummy: bool,
) -> (Spirality2, u32) {
    if is_dummy {
        return (i_eta.closest_to(0), 0);
    }
    if let Some(ix) = i_eta.intersect(window) {
        (ix.closest_to(8), 0)
    } else if i_eta.hi() < window.lo() {
        (i_eta.hi(), ((window.lo() - i_eta.hi()) / 2) as u32)
    } else {
        (i_eta.lo(), ((i_eta.lo() - window.hi()) / 2) as u32)
    }
}

/// Splits a series target into per-child targets inside their intervals.
pub fn distribute_series(
    sigma2: Spirality2,
    children: &[SpiralityInterval],
) -> Vec<Spirality2> {
    let sum_hi: i32 = children.iter().map(|i| i.hi()).sum();
    let sum_lo: i32 = children.iter().map(|i| i.lo()).sum();
    assert!(sum_lo <= sigma2 && sigma2 <= sum_hi, "series target out of range");
    let mut out: Vec<Spirality2> = children.iter().map(|i| i.hi()).collect();
    let mut slack = sum_hi - sigma2;
    for (i, iv) in children.iter().enumerate() {
        if slack == 0 {
            break;
        }
        let dec = slack.min(iv.hi() - iv.lo());
        out[i] -= dec;
        slack -= dec;
    }
    assert_eq!(slack, 0);
    out
}

struct Targeter<'a> {
    g: &'a PlaneGraph,
    tree: &'a SpqTree,
    ann: &'a crate::budget::Annotations,
    target: Vec<Option<Spirality2>>,
    widen: Vec<u32>,
    alpha: Vec<Option<[u8; 4]>>,
    rng: Option<ChaCha8Rng>,
}

impl<'a> Targeter<'a> {
    fn interval(&self, id: NodeId) -> SpiralityInterval {
        *self.ann.node_interval(id)
    }

    /// Effective breakpoint caps of a P-node child of an unexposed S-node,
    /// net of that node's own budget.
    fn caps(&self, p: NodeId) -> (u32, u32) {
        effective_breakpoints(self.tree, &self.ann.interval, &self.ann.budget, p)
    }

    fn run(&mut self, eta_sigma: Spirality2) {
        let eta = self.tree.eta();
        self.target[eta as usize] = Some(eta_sigma);
        let mut work = vec![eta];
        while let Some(id) = work.pop() {
            let node = self.tree.node(id);
            let sigma = self.target[id as usize].expect("target set before visit");
            let widen = self.widen[id as usize];
            debug_assert_eq!(
                self.interval(id).overflow(sigma),
                widen,
                "granted widening must match the target overflow"
            );
            match node.kind {
                NodeKind::QStar => {}
                NodeKind::S => {
                    self.distribute_s(id, sigma, widen);
                    work.extend(node.children.iter().copied());
                }
                NodeKind::P => {
                    if node.children.len() == 3 {
                        self.distribute_p3(id, sigma);
                    } else {
                        self.distribute_p2(id, sigma, widen);
                    }
                    work.extend(node.children.iter().copied());
                }
                NodeKind::PRoot => unreachable!("root handled by the caller"),
            }
        }
    }

    fn distribute_s(&mut self, id: NodeId, sigma: Spirality2, widen: u32) {
        let node = self.tree.node(id);
        let kids = &node.children;
        let ivs: Vec<SpiralityInterval> = kids.iter().map(|&c| self.interval(c)).collect();
        let sum_hi: i32 = ivs.iter().map(|i| i.hi()).sum();
        let sum_lo: i32 = ivs.iter().map(|i| i.lo()).sum();

        if sigma > sum_hi || sigma < sum_lo {
            // All the overflow rides on extra bends granted to this node;
            // park every child at the relevant extreme and route the bends.
            let raising = sigma > sum_hi;
            let mut need = if raising {
                (sigma - sum_hi) / 2
            } else {
                (sum_lo - sigma) / 2
            } as u32;
            assert_eq!(need, widen, "series overflow equals the granted widening");
            for (i, &c) in kids.iter().enumerate() {
                self.target[c as usize] =
                    Some(if raising { ivs[i].hi() } else { ivs[i].lo() });
            }
            if node.exposed.is_some() {
                // Send everything to the canonical exposed child.
                let qc = kids
                    .iter()
                    .copied()
                    .find(|&c| self.tree.node(c).kind == NodeKind::QStar)
                    .expect("exposed S-node has a Q* child");
                let t = self.target[qc as usize].unwrap();
                self.target[qc as usize] =
                    Some(if raising { t + 2 * need as i32 } else { t - 2 * need as i32 });
                self.widen[qc as usize] = need;
            } else {
                // Children are all Pio2(2,2) P-nodes; spread under their
                // flexibility breakpoints.
                for &c in kids {
                    if need == 0 {
                        break;
                    }
                    let (bp_plus, bp_minus) = self.caps(c);
                    let cap = if raising { bp_plus } else { bp_minus };
                    let take = need.min(cap);
                    if take > 0 {
                        let t = self.target[c as usize].unwrap();
                        self.target[c as usize] = Some(if raising {
                            t + 2 * take as i32
                        } else {
                            t - 2 * take as i32
                        });
                        self.widen[c as usize] = take;
                        need -= take;
                    }
                }
                assert_eq!(need, 0, "breakpoint capacity covers the overflow");
            }
            return;
        }

        // Plain greedy from the maxima, optionally in a seeded order.
        assert_eq!(widen, 0, "in-range series target needs no widening");
        let mut order: Vec<usize> = (0..kids.len()).collect();
        if let Some(rng) = &mut self.rng {
            for i in (1..order.len()).rev() {
                let j = (rng.next_u32() as usize) % (i + 1);
                order.swap(i, j);
            }
        }
        let mut out: Vec<Spirality2> = ivs.iter().map(|i| i.hi()).collect();
        let mut slack = sum_hi - sigma;
        for &i in &order {
            if slack == 0 {
                break;
            }
            let dec = slack.min(ivs[i].hi() - ivs[i].lo());
            out[i] -= dec;
            slack -= dec;
        }
        assert_eq!(slack, 0);
        for (i, &c) in kids.iter().enumerate() {
            self.target[c as usize] = Some(out[i]);
        }
    }

    fn distribute_p3(&mut self, id: NodeId, sigma: Spirality2) {
        let node = self.tree.node(id);
        assert_eq!(self.widen[id as usize], 0, "P-nodes with three children are never widened");
        let [l, c, r] = [node.children[0], node.children[1], node.children[2]];
        self.target[l as usize] = Some(sigma + 4);
        self.target[c as usize] = Some(sigma);
        self.target[r as usize] = Some(sigma - 4);
        let b = self.ann.budget[id as usize];
        if b == 0 {
            return;
        }
        let res = crate::budget::budget_p3(
            &self.interval(l),
            &self.interval(c),
            &self.interval(r),
        );
        let shifted = crate::interval::p3_shifted(
            &self.interval(l),
            &self.interval(c),
            &self.interval(r),
        );
        // Lower the z-side to sigma and raise the x-side to sigma, using
        // exactly the budget.
        let bz2 = shifted[res.z].lo() - sigma;
        assert!(bz2 >= 0 && bz2 % 2 == 0);
        let bz = (bz2 / 2) as u32;
        let bx = b - bz;
        let kids = [l, c, r];
        self.widen[kids[res.z] as usize] = bz;
        self.widen[kids[res.x] as usize] = bx;
        for (i, &k) in kids.iter().enumerate() {
            let w = self.widen[k as usize];
            if w > 0 {
                assert!(
                    self.tree.node(k).exposed.is_some(),
                    "bends land on children with exposed edges"
                );
                debug_assert_eq!((i == res.x) as u32 * bx + (i == res.z) as u32 * bz, w);
            }
        }
    }

    fn distribute_p2(&mut self, id: NodeId, sigma: Spirality2, widen: u32) {
        let node = self.tree.node(id);
        let [l, r] = [node.children[0], node.children[1]];
        let (il, ir) = (self.interval(l), self.interval(r));
        let total_extra = self.ann.budget[id as usize] + widen;
        let deg_u = self.g.degree(node.poles[0]);
        let deg_v = self.g.degree(node.poles[1]);
        let k_ul = self.tree.k2(self.g, id, 0, Side::L);
        let k_ur = self.tree.k2(self.g, id, 0, Side::R);
        let k_vl = self.tree.k2(self.g, id, 1, Side::L);
        let k_vr = self.tree.k2(self.g, id, 1, Side::R);

        let mut candidates: Vec<[u8; 4]> = Vec::with_capacity(16);
        for bits in 0..16u8 {
            let a = [bits >> 3 & 1, bits >> 2 & 1, bits >> 1 & 1, bits & 1];
            candidates.push(a);
        }
        if let Some(rng) = &mut self.rng {
            for i in (1..candidates.len()).rev() {
                let j = (rng.next_u32() as usize) % (i + 1);
                candidates.swap(i, j);
            }
        }

        for a in candidates {
            let [aul, aur, avl, avr] = a;
            if aul + aur < 1 || avl + avr < 1 {
                continue;
            }
            if deg_u == 4 && (aul, aur) != (1, 1) {
                continue;
            }
            if deg_v == 4 && (avl, avr) != (1, 1) {
                continue;
            }
            let hl = k_ul * aul as i32 + k_vl * avl as i32;
            let hr = k_ur * aur as i32 + k_vr * avr as i32;
            let (sl, sr) = (sigma + hl, sigma - hr);
            if (sl - il.lo()) & 1 != 0 || (sr - ir.lo()) & 1 != 0 {
                continue;
            }
            let (wl, wr) = (il.overflow(sl), ir.overflow(sr));
            if wl + wr != total_extra {
                continue;
            }
            // Bends must land on an exposed edge, or fit under the
            // breakpoints of an unexposed child.
            let ok = |child: NodeId, w: u32, target: Spirality2, iv: &SpiralityInterval| {
                if w == 0 {
                    return true;
                }
                if self.tree.node(child).exposed.is_some() {
                    return true;
                }
                let (bp_plus, bp_minus) = self.caps_of_s(child);
                if target > iv.hi() { w <= bp_plus } else { w <= bp_minus }
            };
            if !ok(l, wl, sl, &il) || !ok(r, wr, sr, &ir) {
                continue;
            }
            self.alpha[id as usize] = Some(a);
            self.target[l as usize] = Some(sl);
            self.target[r as usize] = Some(sr);
            self.widen[l as usize] = wl;
            self.widen[r as usize] = wr;
            return;
        }
        unreachable!("no admissible angle assignment at a two-child P-node");
    }

    /// Breakpoint sums of an S-node child (no exposed edge).
    fn caps_of_s(&self, s: NodeId) -> (u32, u32) {
        crate::budget::s_breakpoints(self.tree, &self.ann.interval, &self.ann.budget, s)
    }
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

struct Emitter<'a> {
    g: &'a PlaneGraph,
    tree: &'a SpqTree,
    angles: Vec<Vec<u16>>,
    turns: Vec<Vec<Turn>>,
}

impl<'a> Emitter<'a> {
    fn set_angle(&mut self, v: u32, corner: usize, value: u16) {
        let slot = &mut self.angles[v as usize][corner];
        assert!(
            *slot == 0 || *slot == value,
            "corner written twice with different values"
        );
        *slot = value;
    }

    /// Rotation position of a pertinent-block boundary at vertex `v` for a
    /// tree node: returns (block start position, block end position).
    fn block_bounds(&self, id: NodeId, v: u32) -> (usize, usize) {
        let node = self.tree.node(id);
        let mine = node.pole_edges_at_pub(v);
        let rot = self.g.rotation(v);
        let deg = rot.len();
        let contains = |e: u32| mine.contains(&e);
        if mine.len() == deg {
            // The whole rotation is pertinent (a stripped-dummy pole would
            // do this, but emission always runs on the augmented graph).
            unreachable!("pole always has an external edge during emission");
        }
        let mut start = usize::MAX;
        for p in 0..deg {
            if contains(rot[p]) && !contains(rot[(p + deg - 1) % deg]) {
                start = p;
                break;
            }
        }
        assert_ne!(start, usize::MAX);
        let mut end = start;
        while contains(rot[(end + 1) % deg]) {
            end = (end + 1) % deg;
        }
        (start, end)
    }

    fn emit_qstar(&mut self, id: NodeId, sigma: Spirality2, widen: u32) {
        let node = self.tree.node(id);
        let chain = &node.chain;
        let len = chain.len() as i32;
        assert_eq!(sigma % 2, 0, "chain spirality is integral");
        let s = sigma / 2;
        let slots = len - 1 + widen as i32;
        assert!(s.abs() <= slots, "chain target within turn capacity");
        if widen > 0 {
            assert_eq!(s.abs(), slots, "granted bends are always spent");
        }
        let turn = if s >= 0 { Turn::R } else { Turn::L };
        // Bends on the exposed first edge, walking source to sink.
        if widen > 0 {
            let e = chain[0];
            let [eu, _] = self.g.endpoints(e);
            let walk_forward = eu == node.poles[0];
            let word: Vec<Turn> = (0..widen)
                .map(|_| if walk_forward { turn } else { turn.flip() })
                .collect();
            self.turns[e as usize] = word;
        }
        // Turns at the first |s| - widen interior vertices.
        let mut remaining = s.abs() - widen as i32;
        let mut at = node.poles[0];
        for i in 0..(len - 1) as usize {
            let e_in = chain[i];
            let e_out = chain[i + 1];
            let [a, b] = self.g.endpoints(e_in);
            let w = if a == at { b } else { a };
            let t = if remaining > 0 {
                remaining -= 1;
                if turn == Turn::R { 1 } else { -1 }
            } else {
                0
            };
            // Left-of-walk corner spans from the arrival end to the
            // departure end; at a degree-2 vertex that is one corner.
            let pos_in = self.g.rot_pos(e_in, w) as usize;
            let pos_out = self.g.rot_pos(e_out, w) as usize;
            debug_assert_eq!(self.g.degree(w), 2);
            self.set_angle(w, pos_in, (180 + 90 * t) as u16);
            self.set_angle(w, pos_out, (180 - 90 * t) as u16);
            at = w;
        }
    }

    fn emit_s(&mut self, id: NodeId, alphas: &[Option<[u8; 4]>]) {
        let node = self.tree.node(id);
        for w in 0..node.children.len() - 1 {
            let ca = node.children[w];
            let cb = node.children[w + 1];
            let junction = self.tree.node(ca).poles[1];
            if self.g.degree(junction) == 4 {
                continue; // all four corners already 90
            }
            // Owner: the P-child with indegree two at the junction.
            let owner = if self.tree.node(ca).indeg_at(junction) == 2 {
                ca
            } else {
                debug_assert_eq!(self.tree.node(cb).indeg_at(junction), 2);
                cb
            };
            let a = alphas[owner as usize].expect("P-node has chosen angles");
            let pole = if self.tree.node(owner).poles[0] == junction { 0 } else { 1 };
            let (al, ar) = if pole == 0 { (a[0], a[1]) } else { (a[2], a[3]) };
            // jl sits at the clockwise boundary from ca's block to cb's.
            let (_, ca_end) = self.block_bounds(ca, junction);
            let (_, cb_end) = self.block_bounds(cb, junction);
            self.set_angle(junction, ca_end, 180 - 90 * al as u16);
            self.set_angle(junction, cb_end, 180 - 90 * ar as u16);
        }
    }

    fn emit_p(&mut self, id: NodeId, alphas: &[Option<[u8; 4]>]) {
        let node = self.tree.node(id);
        if node.children.len() != 2 {
            return; // three children force degree-4 poles, already written
        }
        let a = alphas[id as usize].expect("P-node has chosen angles");
        for pole in 0..2 {
            let v = node.poles[pole];
            if self.g.degree(v) == 4 {
                continue;
            }
            let (al, ar) = if pole == 0 { (a[0], a[1]) } else { (a[2], a[3]) };
            // The corner between the two child blocks.
            let l = node.children[0];
            let r = node.children[1];
            let (l_start, l_end) = self.block_bounds(l, v);
            let (r_start, r_end) = self.block_bounds(r, v);
            let rot_len = self.g.degree(v);
            let next = |p: usize| (p + 1) % rot_len;
            // Identify which block boundary is child-to-child.
            let corner = if next(l_end) == r_start {
                l_end
            } else {
                debug_assert_eq!(next(r_end), l_start);
                r_end
            };
            let value = 90u16 * (al + ar) as u16;
            assert!((90..=180).contains(&value));
            self.set_angle(v, corner, value);
        }
    }
}

fn subtree_edges(tree: &SpqTree, id: NodeId) -> Vec<u32> {
    let mut out = Vec::new();
    let mut stack = vec![id];
    while let Some(n) = stack.pop() {
        let node = tree.node(n);
        out.extend(node.chain.iter().copied());
        stack.extend(node.children.iter().copied());
    }
    out
}

/// Builds the representation for an analyzed instance.
pub fn build(analysis: &Analysis) -> Built {
    build_with(analysis, &BuildOptions::default())
}

pub fn build_with(analysis: &Analysis, opts: &BuildOptions) -> Built {
    let g = &analysis.graph;
    let tree = &analysis.tree;
    let ann = &analysis.ann;
    let is_dummy = g.dummy_edge() == Some(tree.reference_edge());

    // Phase 1: targets.
    let i_eta = *ann.node_interval(tree.eta());
    let (eta_sigma, ref_bends) = choose_root_spirality(&i_eta, &ann.window.0, is_dummy);
    assert_eq!(ref_bends, ann.budget[tree.root() as usize], "root budget consistency");
    let mut targeter = Targeter {
        g,
        tree,
        ann,
        target: vec![None; tree.len()],
        widen: vec![0; tree.len()],
        alpha: vec![None; tree.len()],
        rng: opts.choice_seed.map(ChaCha8Rng::seed_from_u64),
    };
    targeter.run(eta_sigma);
    let Targeter { target, widen, alpha, .. } = targeter;

    // Phase 2: emission.
    let mut em = Emitter {
        g,
        tree,
        angles: (0..g.vertex_count()).map(|v| vec![0u16; g.degree(v as u32)]).collect(),
        turns: vec![Vec::new(); g.edge_count()],
    };
    // Degree-4 vertices carry four right angles.
    for v in 0..g.vertex_count() as u32 {
        if g.degree(v) == 4 {
            for c in 0..4 {
                em.angles[v as usize][c] = 90;
            }
        }
    }
    for id in tree.post_order() {
        let node = tree.node(id);
        match node.kind {
            NodeKind::QStar if id != tree.ref_child() => {
                em.emit_qstar(id, target[id as usize].unwrap(), widen[id as usize]);
            }
            NodeKind::S => em.emit_s(id, &alpha),
            NodeKind::P => em.emit_p(id, &alpha),
            _ => {}
        }
    }
    close_root(g, tree, &mut em, ref_bends, is_dummy, &alpha);

    for v in 0..g.vertex_count() {
        for (c, &a) in em.angles[v].iter().enumerate() {
            assert!(a > 0, "corner {c} at vertex index {v} left unwritten");
        }
    }

    let rep_aug = OrthogonalRepresentation::new(g.clone(), em.angles, em.turns);
    debug_assert!(rep_aug.is_valid(), "construction violates H1/H2: {:?}", rep_aug.check());

    let (rep, aug) = if is_dummy {
        (strip_dummy(&rep_aug, tree.reference_edge()), Some(rep_aug))
    } else {
        (rep_aug, None)
    };
    assert_eq!(
        rep.total_bends() as u64,
        ann.total,
        "emitted bends equal the computed optimum"
    );

    Built { rep, aug, targets: target, alphas: alpha, ref_bends }
}

/// Closes the internal face beside the reference edge: solves for the two
/// pole corners and the edge's turn word, then fills the external corners
/// by the angle-sum residual.
fn close_root(
    g: &PlaneGraph,
    tree: &SpqTree,
    em: &mut Emitter<'_>,
    ref_bends: u32,
    is_dummy: bool,
    alphas: &[Option<[u8; 4]>],
) {
    let e = tree.reference_edge();
    let [s, t] = tree.terminals();
    let h_st = g.half_from(e, s);

    // Walk the internal face from the reference edge, summing everything
    // written so far; skip the unknown corners at the poles and the edge's
    // own (empty) word.
    let mut rest = 0i32;
    let mut h = g.face_next(h_st);
    loop {
        if h.edge() == e {
            break;
        }
        rest += turn_units_partial(em, h);
        let next = g.face_next(h);
        if next.edge() != e {
            rest += turn_through_partial(g, em, h, next);
        }
        h = next;
    }
    // Per-pole freedom for the internal-face corner. Coincident-alias poles
    // leave the corner free; otherwise the rightmost angle variable of the
    // flanking P-descendant pins it.
    let eta = tree.eta();
    let pole_range = |pole: usize, alphas: &[Option<[u8; 4]>]| -> (i32, i32) {
        if tree.node(eta).indeg(pole) == 1 {
            return (-1, 1);
        }
        let mut at = eta;
        let forced = loop {
            let node = tree.node(at);
            match node.kind {
                NodeKind::P if node.children.len() == 3 => break 1, // right angles forced
                NodeKind::P => {
                    let a = alphas[at as usize].expect("P-node angles chosen");
                    break if pole == 0 { a[1] } else { a[3] };
                }
                NodeKind::S => {
                    at = if pole == 0 {
                        node.children[0]
                    } else {
                        *node.children.last().unwrap()
                    };
                }
                _ => unreachable!("pole with indegree > 1 ends at a P-node"),
            }
        };
        let t = -(forced as i32);
        (t, t)
    };
    let (s_lo, s_hi) = pole_range(0, alphas);
    let (t_lo, t_hi) = pole_range(1, alphas);

    // corner turns t_s + t_t + word(e) + rest = -4 along the internal face.
    let needed = -4 - rest;
    let solve = |tsum: i32| -> Option<(i32, i32)> {
        for ts in s_lo..=s_hi {
            let tt = tsum - ts;
            if (t_lo..=t_hi).contains(&tt) {
                return Some((ts, tt));
            }
        }
        None
    };
    let (ts, tt, word_n) = if is_dummy {
        let tsum = needed.clamp(s_lo + t_lo, s_hi + t_hi);
        let (ts, tt) = solve(tsum).expect("per-pole ranges cover their sum");
        (ts, tt, needed - tsum)
    } else {
        let b = ref_bends as i32;
        let mut found = None;
        for n in if b == 0 { vec![0] } else { vec![-b, b] } {
            if let Some((ts, tt)) = solve(needed - n) {
                found = Some((ts, tt, n));
                break;
            }
        }
        found.expect("root closure admits the budgeted bend count")
    };

    // The internal-face corner at t follows the reference edge in the
    // trace; at s it precedes it.
    let deg_s = g.degree(s);
    let deg_t = g.degree(t);
    let pos_es = g.rot_pos(e, s) as usize;
    let pos_et = g.rot_pos(e, t) as usize;
    let int_corner_s = (pos_es + deg_s - 1) % deg_s;
    let int_corner_t = pos_et;
    em.set_angle(s, int_corner_s, (180 + 90 * ts) as u16);
    em.set_angle(t, int_corner_t, (180 + 90 * tt) as u16);
    // External corners absorb the angle-sum residual.
    for (v, corner) in [(s, pos_es), (t, (pos_et + deg_t - 1) % deg_t)] {
        let written: i32 =
            em.angles[v as usize].iter().enumerate().map(|(i, &a)| if i == corner { 0 } else { a as i32 }).sum();
        let rest = 360 - written;
        assert!((90..=360).contains(&rest), "external pole corner out of range");
        em.set_angle(v, corner, rest as u16);
    }

    // Turn word of the reference edge, canonical direction.
    if word_n != 0 {
        let ch = if word_n > 0 { Turn::R } else { Turn::L };
        let [eu, _] = g.endpoints(e);
        let forward = eu == s;
        let word: Vec<Turn> =
            (0..word_n.abs()).map(|_| if forward { ch } else { ch.flip() }).collect();
        em.turns[e as usize] = word;
    }
    if !is_dummy {
        assert_eq!(word_n.unsigned_abs(), ref_bends);
    }
}

fn turn_units_partial(em: &Emitter<'_>, h: Half) -> i32 {
    let raw: i32 = em.turns[h.edge() as usize].iter().map(|t| t.units()).sum();
    if h.is_rev() { -raw } else { raw }
}

fn turn_through_partial(g: &PlaneGraph, em: &Emitter<'_>, arrive: Half, depart: Half) -> i32 {
    let v = g.target(arrive);
    let from = g.rot_pos(arrive.edge(), v) as usize;
    let to = g.rot_pos(depart.edge(), v) as usize;
    let deg = g.degree(v);
    let mut sweep = 0i32;
    let mut i = from;
    if from == to {
        sweep = 360;
    } else {
        while i != to {
            let a = em.angles[v as usize][i];
            assert!(a > 0, "face walk crossed an unwritten corner");
            sweep += a as i32;
            i = (i + 1) % deg;
        }
    }
    (sweep - 180) / 90
}

/// Removes a dummy reference edge from a built representation, merging the
/// two corners at each endpoint.
fn strip_dummy(rep: &OrthogonalRepresentation, e: u32) -> OrthogonalRepresentation {
    let g = rep.graph();
    let [s, t] = g.endpoints(e);
    // External face hint: the half after the dummy's external side.
    let ext_side = if g.face_of(Half::new(e, false)) == g.external_face() {
        Half::new(e, false)
    } else {
        Half::new(e, true)
    };
    let mut hint = g.face_next(ext_side);
    if hint.edge() == e {
        hint = g.face_next(hint);
    }
    assert_ne!(hint.edge(), e);
    let stripped = g.remove_edge(e, hint).expect("dummy removal keeps the graph valid");

    let mut angles: Vec<Vec<u16>> = Vec::with_capacity(stripped.vertex_count());
    for v in 0..g.vertex_count() as u32 {
        let rot = g.rotation(v);
        if v != s && v != t {
            angles.push(rep.angles_at(v).to_vec());
            continue;
        }
        let deg = rot.len();
        let pos = g.rot_pos(e, v) as usize;
        // Corners pos-1 and pos merge.
        let mut merged = Vec::with_capacity(deg - 1);
        for i in 0..deg {
            if i == pos {
                continue;
            }
            let mut a = rep.angle(v, i) as u32;
            if i == (pos + deg - 1) % deg {
                a += rep.angle(v, pos) as u32;
            }
            merged.push(a.min(360) as u16);
        }
        // Rotate so the merged list aligns with the stripped rotation,
        // which simply removed the dummy entry.
        angles.push(merged);
    }
    let mut turns: Vec<Vec<Turn>> = Vec::with_capacity(stripped.edge_count());
    for old in 0..g.edge_count() as u32 {
        if old == e {
            continue;
        }
        turns.push(rep.turns(old).to_vec());
    }
    OrthogonalRepresentation::new(stripped, angles, turns)
}

// ---------------------------------------------------------------------------
// Spirality measurement and substitution
// ---------------------------------------------------------------------------

/// Measures the spirality of a component inside a full representation of
/// the augmented graph, by the alias-vertex definition. Doubled result.
pub fn measure_spirality(
    rep: &OrthogonalRepresentation,
    tree: &SpqTree,
    id: NodeId,
) -> Spirality2 {
    let g = rep.graph();
    let node = tree.node(id);
    let [u, v] = node.poles;

    // Left boundary path from u to v: start at the block's first end and
    // follow the face to its left.
    let (block_start_u, block_end_u) = block_bounds_of(g, tree, id, u);
    let lm_edge = g.rotation(u)[block_start_u];
    let mut path = Vec::new();
    let mut h = g.half_from(lm_edge, u);
    loop {
        path.push(h);
        if g.target(h) == v {
            break;
        }
        h = g.face_next(h);
    }
    let mut interior = 0i32;
    for (i, &ph) in path.iter().enumerate() {
        interior += rep.edge_turn_units(ph);
        if i + 1 < path.len() {
            interior += rep.turn_through(ph, path[i + 1]);
        }
    }

    let first = path[0];
    let last = *path.last().unwrap();

    // Entry corrections at u.
    let deg_u = g.degree(u);
    let ext_prev_u = g.rotation(u)[(block_start_u + deg_u - 1) % deg_u];
    let ext_next_u = g.rotation(u)[(block_end_u + 1) % deg_u];
    let entry = |ext: u32| -> i32 {
        let into = g.half_from(ext, u).reversed();
        rep.turn_through(into, first)
    };
    let cu: Vec<i32> = if node.indeg(0) == 1 {
        vec![0]
    } else if g.degree(u) - node.indeg(0) == 1 {
        vec![entry(ext_prev_u)]
    } else {
        vec![entry(ext_prev_u), entry(ext_next_u)]
    };

    // Exit corrections at v.
    let (block_start_v, block_end_v) = block_bounds_of(g, tree, id, v);
    let deg_v = g.degree(v);
    let ext_prev_v = g.rotation(v)[(block_start_v + deg_v - 1) % deg_v];
    let ext_next_v = g.rotation(v)[(block_end_v + 1) % deg_v];
    let exit = |ext: u32| -> i32 { rep.turn_through(last, g.half_from(ext, v)) };
    let cv: Vec<i32> = if node.indeg(1) == 1 {
        vec![0]
    } else if g.degree(v) - node.indeg(1) == 1 {
        vec![exit(ext_prev_v)]
    } else {
        // At the sink the block runs rightmost-to-leftmost, so the left
        // alias flanks the block end.
        vec![exit(ext_next_v), exit(ext_prev_v)]
    };

    match (cu.len(), cv.len()) {
        (1, 1) => 2 * (cu[0] + interior + cv[0]),
        (1, 2) => (cu[0] + interior + cv[0]) + (cu[0] + interior + cv[1]),
        (2, 1) => (cu[0] + interior + cv[0]) + (cu[1] + interior + cv[0]),
        (2, 2) => (cu[0] + interior + cv[0]) + (cu[1] + interior + cv[1]),
        _ => unreachable!(),
    }
}

fn block_bounds_of(g: &PlaneGraph, tree: &SpqTree, id: NodeId, v: u32) -> (usize, usize) {
    let node = tree.node(id);
    let mine = node.pole_edges_at_pub(v);
    let rot = g.rotation(v);
    let deg = rot.len();
    let contains = |e: u32| mine.contains(&e);
    let mut start = usize::MAX;
    for p in 0..deg {
        if contains(rot[p]) && !contains(rot[(p + deg - 1) % deg]) {
            start = p;
            break;
        }
    }
    assert_ne!(start, usize::MAX, "component fills the whole rotation");
    let mut end = start;
    while contains(rot[(end + 1) % deg]) {
        end = (end + 1) % deg;
    }
    (start, end)
}

/// Substitutes the component of `id` in `rep` by its counterpart in
/// `donor` (another representation of the same augmented graph). Fails when
/// the two components' spiralities differ.
pub fn substitute(
    rep: &OrthogonalRepresentation,
    tree: &SpqTree,
    id: NodeId,
    donor: &OrthogonalRepresentation,
) -> Result<OrthogonalRepresentation> {
    if measure_spirality(rep, tree, id) != measure_spirality(donor, tree, id) {
        return Err(Error::SpiralityMismatch);
    }
    let g = rep.graph();
    let node = tree.node(id);
    let mut out = rep.clone();
    let edges = subtree_edges(tree, id);
    let mut pertinent = vec![false; g.edge_count()];
    for &e in &edges {
        pertinent[e as usize] = true;
        out.set_turns(e, donor.turns(e).to_vec());
    }
    // Internal vertices: every corner from the donor.
    let mut internal = vec![false; g.vertex_count()];
    for &e in &edges {
        for x in g.endpoints(e) {
            internal[x as usize] = true;
        }
    }
    for p in node.poles {
        internal[p as usize] = false;
    }
    for x in 0..g.vertex_count() as u32 {
        if internal[x as usize] {
            for c in 0..g.degree(x) {
                out.set_angle(x, c, donor.angle(x, c));
            }
        }
    }
    // Poles: block-interior corners from the donor; flank corners from the
    // donor exactly when the indegree exceeds one.
    for (pole, &w) in node.poles.iter().enumerate() {
        let (start, end) = block_bounds_of(g, tree, id, w);
        let deg = g.degree(w);
        let mut p = start;
        while p != end {
            out.set_angle(w, p, donor.angle(w, p));
            p = (p + 1) % deg;
        }
        if node.indeg(pole) > 1 {
            let flank_l = (start + deg - 1) % deg;
            let flank_r = end;
            out.set_angle(w, flank_l, donor.angle(w, flank_l));
            out.set_angle(w, flank_r, donor.angle(w, flank_r));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_spirality_choice() {
        let win = SpiralityInterval::whole(2, 6);
        // Inside the window: the value closest to 4.
        assert_eq!(
            choose_root_spirality(&SpiralityInterval::whole(2, 6), &win, false),
            (8, 0)
        );
        // Below the window: the maximum, with the gap on the edge.
        assert_eq!(
            choose_root_spirality(&SpiralityInterval::whole(-1, -1), &win, false),
            (-2, 3)
        );
        // Above the window: the minimum.
        assert_eq!(
            choose_root_spirality(&SpiralityInterval::whole(7, 9), &win, false),
            (14, 1)
        );
        // Dummy reference edge: anything admissible, no bends; the value
        // closest to zero keeps drawings calm.
        assert_eq!(
            choose_root_spirality(&SpiralityInterval::whole(-3, 3), &win, true),
            (0, 0)
        );
    }

    #[test]
    fn series_distribution() {
        let kids = [
            SpiralityInterval::whole(0, 0),
            SpiralityInterval::whole(-1, -1),
            SpiralityInterval::whole(-2, 2),
        ];
        assert_eq!(distribute_series(2, &kids), vec![0, -2, 4]);
        // The sum of maxima and of minima hit the extremes exactly.
        assert_eq!(distribute_series(-6, &kids), vec![0, -2, -4]);
        assert_eq!(distribute_series(-2, &kids), vec![0, -2, 0]);
    }
}
